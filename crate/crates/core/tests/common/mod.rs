//! Seeded generators and independent brute-force oracles shared by the
//! integration tests and the acceptance runner.
//!
//! The oracles deliberately avoid the library's analysis code: they decode
//! states by hand, compare utilities pairwise and evaluate formulas through
//! their own interpreter.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sufficiency::tractable::{LinearUtility, TreeUtility};
use sufficiency::{CoordSet, DecisionProblem, Domain, Expr, Formula, Limits, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(n: i64) -> Rational {
    Rational::integer(n)
}

pub fn action_names(k: usize) -> Vec<String> {
    (0..k).map(|a| format!("a{a}")).collect()
}

/// Random explicit problem with `1..=max_coords` coordinates, domains of
/// size `1..=max_domain`, `1..=max_actions` actions and utilities in
/// `-spread..=spread`.
pub fn random_problem(
    rng: &mut impl Rng,
    max_coords: usize,
    max_domain: usize,
    max_actions: usize,
    spread: i64,
) -> DecisionProblem {
    let n = rng.gen_range(1..=max_coords);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_domain)).collect();
    let k = rng.gen_range(1..=max_actions);
    random_problem_with(rng, &sizes, k, spread)
}

pub fn random_problem_with(
    rng: &mut impl Rng,
    sizes: &[usize],
    actions: usize,
    spread: i64,
) -> DecisionProblem {
    let states: usize = sizes.iter().product();
    let table = (0..actions)
        .map(|_| {
            (0..states)
                .map(|_| r(rng.gen_range(-spread..=spread)))
                .collect()
        })
        .collect();
    DecisionProblem::from_table(
        action_names(actions),
        sizes.iter().map(|&s| Domain::new(s)).collect(),
        table,
    )
    .expect("well-formed random problem")
}

/// Mixed-radix decode, coordinate 0 most significant.
pub fn decode(sizes: &[usize], mut index: usize) -> Vec<usize> {
    let mut digits = vec![0; sizes.len()];
    for c in (0..sizes.len()).rev() {
        digits[c] = index % sizes[c];
        index /= sizes[c];
    }
    digits
}

pub fn sizes_of(p: &DecisionProblem) -> Vec<usize> {
    p.domains().iter().map(|d| d.size).collect()
}

/// Optimal actions at state `index`, by a direct scan.
pub fn naive_opt(p: &DecisionProblem, index: usize) -> Vec<usize> {
    let utils: Vec<Rational> = (0..p.num_actions()).map(|a| p.table()[a][index]).collect();
    let best = utils
        .iter()
        .copied()
        .fold(utils[0], |m, u| if u > m { u } else { m });
    (0..utils.len()).filter(|&a| utils[a] == best).collect()
}

fn agree_on(a: &[usize], b: &[usize], coords: &[usize]) -> bool {
    coords.iter().all(|&c| a[c] == b[c])
}

/// Quadratic pairwise check straight from the definition.
pub fn naive_sufficient(p: &DecisionProblem, coords: &[usize]) -> bool {
    let sizes = sizes_of(p);
    let n = p.num_states();
    let states: Vec<Vec<usize>> = (0..n).map(|i| decode(&sizes, i)).collect();
    let opts: Vec<Vec<usize>> = (0..n).map(|i| naive_opt(p, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if agree_on(&states[i], &states[j], coords) && opts[i] != opts[j] {
                return false;
            }
        }
    }
    true
}

/// Same question as [`naive_sufficient`], answered by bucketing states on
/// their hand-decoded projection.
pub fn grouped_sufficient(p: &DecisionProblem, coords: &[usize]) -> bool {
    let sizes = sizes_of(p);
    let mut seen: std::collections::HashMap<Vec<usize>, Vec<usize>> = Default::default();
    (0..p.num_states()).all(|i| {
        let s = decode(&sizes, i);
        let key: Vec<usize> = coords.iter().map(|&c| s[c]).collect();
        let opt = naive_opt(p, i);
        seen.entry(key).or_insert_with(|| opt.clone()) == &opt
    })
}

/// Coordinates `c` with two states differing only at `c` and different
/// optimal sets.
pub fn naive_relevant(p: &DecisionProblem) -> Vec<usize> {
    let sizes = sizes_of(p);
    let strides: Vec<usize> = (0..sizes.len())
        .map(|c| sizes[c + 1..].iter().product())
        .collect();
    let opts: Vec<Vec<usize>> = (0..p.num_states()).map(|i| naive_opt(p, i)).collect();
    (0..sizes.len())
        .filter(|&c| {
            (0..p.num_states()).any(|i| {
                let here = decode(&sizes, i)[c];
                (0..sizes[c]).any(|v| {
                    let j = i - here * strides[c] + v * strides[c];
                    opts[i] != opts[j]
                })
            })
        })
        .collect()
}

/// Every subset of `0..n` as a sorted index list, by size and then by mask.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    all.sort_by_key(|s: &Vec<usize>| s.len());
    all
}

/// All sufficient subsets of minimum cardinality.
pub fn smallest_sufficient_subsets(p: &DecisionProblem) -> Vec<Vec<usize>> {
    let mut found: Vec<Vec<usize>> = Vec::new();
    for s in subsets(p.num_coords()) {
        if found.first().is_some_and(|f| f.len() < s.len()) {
            break;
        }
        if naive_sufficient(p, &s) {
            found.push(s);
        }
    }
    found
}

/// Fraction of actions optimal somewhere in the class of `index`.
pub fn naive_dq(p: &DecisionProblem, coords: &[usize], index: usize) -> Rational {
    let sizes = sizes_of(p);
    let s = decode(&sizes, index);
    let mut seen = vec![false; p.num_actions()];
    for j in 0..p.num_states() {
        if agree_on(&s, &decode(&sizes, j), coords) {
            for a in naive_opt(p, j) {
                seen[a] = true;
            }
        }
    }
    let count = seen.iter().filter(|&&b| b).count() as i64;
    Rational::new(count, p.num_actions() as i64).unwrap()
}

pub fn coords(v: &[usize]) -> CoordSet {
    CoordSet::from(v.to_vec())
}

// ---------------------------------------------------------------------------
// Formulas

/// Own interpreter: truth value of `e` at assignment bitmask `bits`, where
/// variable `i` is bit `n - 1 - i` (x1 most significant).
pub fn truth(e: &Expr, n: usize, bits: u64) -> bool {
    match e {
        Expr::Const(b) => *b,
        Expr::Var(i) => bits >> (n - 1 - i) & 1 == 1,
        Expr::Not(x) => !truth(x, n, bits),
        Expr::And(a, b) => truth(a, n, bits) && truth(b, n, bits),
        Expr::Or(a, b) => truth(a, n, bits) || truth(b, n, bits),
        Expr::Implies(a, b) => !truth(a, n, bits) || truth(b, n, bits),
    }
}

pub fn truth_table(phi: &Formula) -> Vec<bool> {
    let n = phi.var_count;
    (0..1u64 << n)
        .map(|bits| truth(&phi.ast, n, bits))
        .collect()
}

pub fn oracle_tautology(phi: &Formula) -> bool {
    truth_table(phi).into_iter().all(|b| b)
}

/// First `x` (as a bit vector) with `∀y φ(x, y)`.
pub fn oracle_exists_forall(phi: &Formula, k: usize, m: usize) -> Option<Vec<bool>> {
    let table = truth_table(phi);
    (0..1usize << k)
        .find(|&x| (0..1usize << m).all(|y| table[x << m | y]))
        .map(|x| (0..k).map(|i| x >> (k - 1 - i) & 1 == 1).collect())
}

pub fn random_expr(rng: &mut impl Rng, vars: usize, depth: usize) -> Expr {
    let leaf = depth <= 1 || rng.gen_bool(0.25);
    if leaf {
        return if vars == 0 || rng.gen_bool(0.1) {
            Expr::Const(rng.gen())
        } else {
            Expr::var(rng.gen_range(0..vars))
        };
    }
    match rng.gen_range(0..4) {
        0 => Expr::not(random_expr(rng, vars, depth - 1)),
        1 => Expr::and(
            random_expr(rng, vars, depth - 1),
            random_expr(rng, vars, depth - 1),
        ),
        2 => Expr::or(
            random_expr(rng, vars, depth - 1),
            random_expr(rng, vars, depth - 1),
        ),
        _ => Expr::implies(
            random_expr(rng, vars, depth - 1),
            random_expr(rng, vars, depth - 1),
        ),
    }
}

pub fn random_formula(rng: &mut impl Rng, vars: usize, depth: usize) -> Formula {
    Formula::new(random_expr(rng, vars, depth), vars).unwrap()
}

/// A formula that is a tautology by construction: `ψ | ~ψ`, possibly
/// wrapped in further valid shapes.
pub fn random_tautology(rng: &mut impl Rng, vars: usize) -> Formula {
    let psi = random_expr(rng, vars, 3);
    let chi = random_expr(rng, vars, 2);
    let ast = match rng.gen_range(0..3) {
        0 => Expr::or(psi.clone(), Expr::not(psi)),
        1 => Expr::implies(Expr::and(psi.clone(), chi), psi),
        _ => Expr::or(chi, Expr::implies(psi.clone(), psi)),
    };
    Formula::new(ast, vars).unwrap()
}

/// Every formula over `vars` variables with depth at most `depth`
/// (leaves: both constants and every variable).
pub fn all_exprs(vars: usize, depth: usize) -> Vec<Expr> {
    let leaves: Vec<Expr> = [Expr::Const(true), Expr::Const(false)]
        .into_iter()
        .chain((0..vars).map(Expr::var))
        .collect();
    let mut level = leaves.clone();
    for _ in 1..depth {
        let mut next = leaves.clone();
        next.extend(level.iter().cloned().map(Expr::not));
        for a in &level {
            for b in &level {
                next.push(Expr::and(a.clone(), b.clone()));
                next.push(Expr::or(a.clone(), b.clone()));
                next.push(Expr::implies(a.clone(), b.clone()));
            }
        }
        level = next;
    }
    level
}

// ---------------------------------------------------------------------------
// Structured utilities

/// Random tree over `1..=max_coords` nodes with a shuffled root.
pub fn random_tree(
    rng: &mut impl Rng,
    max_coords: usize,
    max_domain: usize,
    max_actions: usize,
) -> TreeUtility {
    let n = rng.gen_range(1..=max_coords);
    let k = rng.gen_range(1..=max_actions);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_domain)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut parent = vec![None; n];
    for pos in 1..n {
        parent[order[pos]] = Some(order[rng.gen_range(0..pos)]);
    }
    let factors = (0..n)
        .map(|i| {
            let ps = parent[i].map_or(1, |p| sizes[p]);
            (0..k)
                .map(|_| {
                    (0..sizes[i])
                        .map(|_| (0..ps).map(|_| r(rng.gen_range(-2..=2))).collect())
                        .collect()
                })
                .collect()
        })
        .collect();
    TreeUtility::new(
        action_names(k),
        sizes.into_iter().map(Domain::new).collect(),
        parent,
        factors,
    )
    .expect("well-formed random tree")
}

/// Direct evaluation of a tree utility, independent of `expand_tree`.
pub fn tree_value(tu: &TreeUtility, a: usize, s: &[usize]) -> Rational {
    (0..tu.domains.len())
        .map(|i| tu.factors[i][a][s[i]][tu.parent[i].map_or(0, |p| s[p])])
        .fold(r(0), |acc, x| acc + x)
}

/// `U(a, s) = f(a) + g(s)` with random integer parts.
pub fn random_separable(rng: &mut impl Rng) -> (DecisionProblem, Vec<Rational>) {
    let n = rng.gen_range(1..=4);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let k = rng.gen_range(1..=4);
    let f: Vec<Rational> = (0..k).map(|_| r(rng.gen_range(-5..=5))).collect();
    let states: usize = sizes.iter().product();
    let g: Vec<Rational> = (0..states).map(|_| r(rng.gen_range(-9..=9))).collect();
    let table = f
        .iter()
        .map(|&fa| g.iter().map(|&gs| fa + gs).collect())
        .collect();
    let p = DecisionProblem::from_table(
        action_names(k),
        sizes.iter().map(|&s| Domain::new(s)).collect(),
        table,
    )
    .unwrap();
    (p, f)
}

pub fn random_linear(rng: &mut impl Rng) -> (LinearUtility, Vec<usize>) {
    let n = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=3);
    let mut weights: Vec<Vec<Rational>> = (0..k)
        .map(|_| (0..n).map(|_| r(rng.gen_range(-2..=2))).collect())
        .collect();
    // make some columns equal across actions so the bound is nontrivial
    for c in 0..n {
        if rng.gen_bool(0.3) {
            let w = weights[0][c];
            for row in weights.iter_mut() {
                row[c] = w;
            }
        }
    }
    let sizes = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    (LinearUtility::new(weights).unwrap(), sizes)
}

pub fn limits() -> Limits {
    Limits::default()
}
