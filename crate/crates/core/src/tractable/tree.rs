//! Tree-structured utilities `U(a, s) = Σ_i u_i(a, s_i, s_parent(i))`.
//!
//! Relevance is computed on the tree decomposition. Only differences
//! between actions matter to `Opt`, so every summary stores utility vectors
//! relative to action 0. For node `i`:
//!
//! * `inside[i][x]` is the set of achievable sums of the factors strictly
//!   below `i`, given `s_i = x`;
//! * `outside[i][y]` is the set of achievable sums of the factors outside
//!   the subtree of `i`, given its parent value `y`.
//!
//! Once `s_parent(i)` and the children's values are fixed the remaining
//! factors split into independent groups, so the set of achievable utility
//! matrices `M[v][a] = U(a, s with s_i = v)` is a Minkowski sum of per-group
//! sets. Coordinate `i` is relevant iff some achievable matrix has rows with
//! different argmax sets. Summaries larger than the configured budget abandon
//! the decomposition for explicit enumeration.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::analysis::OptTable;
use crate::error::{Error, Result};
use crate::problem::{CoordSet, DecisionProblem, Domain, Limits, OptSet, State};
use crate::rational::Rational;

/// Local factor tables. `factors[i][a][x_i][x_parent]`; the root's table
/// has a parent axis of length 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeUtility {
    pub actions: Vec<String>,
    pub domains: Vec<Domain>,
    pub parent: Vec<Option<usize>>,
    pub factors: Vec<Vec<Vec<Vec<Rational>>>>,
}

impl TreeUtility {
    pub fn new(
        actions: Vec<String>,
        domains: Vec<Domain>,
        parent: Vec<Option<usize>>,
        factors: Vec<Vec<Vec<Vec<Rational>>>>,
    ) -> Result<Self> {
        let tu = TreeUtility {
            actions,
            domains,
            parent,
            factors,
        };
        tu.validate()?;
        Ok(tu)
    }

    pub fn num_coords(&self) -> usize {
        self.domains.len()
    }

    fn parent_size(&self, i: usize) -> usize {
        self.parent[i].map_or(1, |p| self.domains[p].size)
    }

    /// Checks the parent array forms a single rooted tree and every factor
    /// table is fully populated.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_coords();
        let bad = |m: String| Err(Error::InvalidTree(m));
        if self.actions.is_empty() {
            return bad("at least one action is required".into());
        }
        if self.parent.len() != n || self.factors.len() != n {
            return bad(format!(
                "{n} domains, {} parents, {} factors",
                self.parent.len(),
                self.factors.len()
            ));
        }
        if n == 0 {
            return Ok(());
        }
        if let Some(i) = self.domains.iter().position(|d| d.size == 0) {
            return bad(format!("coordinate {i} has an empty domain"));
        }
        let roots: Vec<usize> = (0..n).filter(|&i| self.parent[i].is_none()).collect();
        if roots.len() != 1 {
            return bad(format!("expected exactly one root, found {}", roots.len()));
        }
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n || p == i {
                    return bad(format!("node {i} has invalid parent {p}"));
                }
            }
        }
        // every node must reach the root within n steps
        for start in 0..n {
            let mut node = start;
            let mut steps = 0;
            while let Some(p) = self.parent[node] {
                node = p;
                steps += 1;
                if steps > n {
                    return bad(format!("node {start} lies on a cycle"));
                }
            }
        }
        for (i, table) in self.factors.iter().enumerate() {
            let (di, dp) = (self.domains[i].size, self.parent_size(i));
            let ok = table.len() == self.actions.len()
                && table
                    .iter()
                    .all(|rows| rows.len() == di && rows.iter().all(|r| r.len() == dp));
            if !ok {
                return bad(format!(
                    "factor {i} must have shape [{}][{di}][{dp}]",
                    self.actions.len()
                ));
            }
        }
        Ok(())
    }

    #[inline]
    fn local(&self, i: usize, a: usize, xi: usize, xp: usize) -> Rational {
        self.factors[i][a][xi][xp]
    }

    fn value_at(&self, a: usize, s: &[usize]) -> Rational {
        (0..self.num_coords())
            .map(|i| self.local(i, a, s[i], self.parent[i].map_or(0, |p| s[p])))
            .sum()
    }

    fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.num_coords()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                ch[p].push(i);
            }
        }
        ch
    }

    /// Nodes with every parent before its children.
    fn preorder(&self, children: &[Vec<usize>]) -> Vec<usize> {
        let Some(root) = self.parent.iter().position(Option::is_none) else {
            return Vec::new();
        };
        let mut order = vec![root];
        let mut k = 0;
        while k < order.len() {
            order.extend(&children[order[k]]);
            k += 1;
        }
        order
    }
}

/// Materializes the full table `Σ_i u_i(a, s_i, s_parent(i))`.
pub fn expand_tree(tu: &TreeUtility, limits: &Limits) -> Result<DecisionProblem> {
    tu.validate()?;
    DecisionProblem::from_fn(tu.actions.clone(), tu.domains.clone(), limits, |a, s| {
        tu.value_at(a, s)
    })
}

/// `Opt(s)` from the factors, in `O(n·|A|)` without building the table.
pub fn tree_opt(tu: &TreeUtility, s: &State) -> Result<OptSet> {
    tu.validate()?;
    let v = s.values();
    if v.len() != tu.num_coords() {
        return Err(Error::InvalidState(format!(
            "state has {} values, tree has {} coordinates",
            v.len(),
            tu.num_coords()
        )));
    }
    if let Some(i) = (0..v.len()).find(|&i| v[i] >= tu.domains[i].size) {
        return Err(Error::InvalidState(format!(
            "coordinate {i} has value {}, domain size is {}",
            v[i], tu.domains[i].size
        )));
    }
    Ok(OptSet::argmax(
        (0..tu.actions.len()).map(|a| tu.value_at(a, v)),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Decomposition,
    Enumeration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeRelevance {
    pub coords: CoordSet,
    pub strategy: Strategy,
}

/// Exactly the relevant coordinates of [`expand_tree`]`(tu)`. Uses the tree
/// decomposition when its summaries fit `limits.tree_summary_budget`,
/// otherwise enumerates the expanded table.
pub fn tree_relevant_coordinates(tu: &TreeUtility, limits: &Limits) -> Result<TreeRelevance> {
    tu.validate()?;
    if let Some(coords) = tree_relevant_coordinates_decomposed(tu, limits.tree_summary_budget)? {
        return Ok(TreeRelevance {
            coords,
            strategy: Strategy::Decomposition,
        });
    }
    let p = expand_tree(tu, limits)?;
    let coords = OptTable::build(&p, limits)?.relevant_coordinates();
    Ok(TreeRelevance {
        coords,
        strategy: Strategy::Enumeration,
    })
}

/// Utility vectors relative to action 0 (entries for actions `1..`).
type Diff = Vec<Rational>;
type Summary = BTreeSet<Diff>;

struct Budget(usize);

impl Budget {
    fn admit(&self, size: usize) -> Option<()> {
        (size <= self.0).then_some(())
    }
}

fn add(a: &[Rational], b: &[Rational]) -> Diff {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

fn minkowski(a: &Summary, b: &Summary, budget: &Budget) -> Option<Summary> {
    budget.admit(a.len().saturating_mul(b.len()))?;
    Some(
        a.iter()
            .flat_map(|x| b.iter().map(move |y| add(x, y)))
            .collect(),
    )
}

fn zero_summary(width: usize) -> Summary {
    BTreeSet::from([vec![Rational::zero(); width]])
}

/// `Opt` of a relative vector: action 0 has value 0, action `a ≥ 1` has
/// `d[a-1]`.
fn argmax_diff(d: &[Rational]) -> OptSet {
    OptSet::argmax(std::iter::once(Rational::zero()).chain(d.iter().copied()))
}

/// The decomposition alone: `Ok(None)` when a summary would exceed
/// `budget` entries.
pub fn tree_relevant_coordinates_decomposed(
    tu: &TreeUtility,
    budget: usize,
) -> Result<Option<CoordSet>> {
    tu.validate()?;
    Ok(Decomposition::new(tu, Budget(budget)).run())
}

struct Decomposition<'t> {
    tu: &'t TreeUtility,
    budget: Budget,
    width: usize,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl<'t> Decomposition<'t> {
    fn new(tu: &'t TreeUtility, budget: Budget) -> Self {
        let children = tu.children();
        let order = tu.preorder(&children);
        Decomposition {
            tu,
            budget,
            width: tu.actions.len() - 1,
            children,
            order,
        }
    }

    /// `u_i(·, xi, xp)` relative to action 0.
    fn factor(&self, i: usize, xi: usize, xp: usize) -> Diff {
        let base = self.tu.local(i, 0, xi, xp);
        (1..self.tu.actions.len())
            .map(|a| self.tu.local(i, a, xi, xp) - base)
            .collect()
    }

    fn run(&self) -> Option<CoordSet> {
        let n = self.tu.num_coords();
        if self.width == 0 || n == 0 {
            return Some(CoordSet::empty());
        }
        let inside = self.inside()?;
        // hanging[c][y]: achievable contribution of child c's subtree,
        // including u_c itself, given its parent's value y
        let hanging: Vec<Vec<Summary>> = (0..n)
            .map(|c| match self.tu.parent[c] {
                None => Some(Vec::new()),
                Some(p) => (0..self.tu.domains[p].size)
                    .map(|y| self.hang(c, y, &inside[c]))
                    .collect(),
            })
            .collect::<Option<_>>()?;
        let outside = self.outside(&hanging)?;
        let relevant = (0..n)
            .map(|i| self.is_relevant(i, &inside, &outside).map(|r| (i, r)))
            .collect::<Option<Vec<_>>>()?;
        Some(
            relevant
                .into_iter()
                .filter(|&(_, r)| r)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    fn hang(&self, c: usize, y: usize, inside_c: &[Summary]) -> Option<Summary> {
        let mut out = Summary::new();
        for (xc, below) in inside_c.iter().enumerate() {
            let f = self.factor(c, xc, y);
            out.extend(below.iter().map(|d| add(&f, d)));
            self.budget.admit(out.len())?;
        }
        Some(out)
    }

    fn inside(&self) -> Option<Vec<Vec<Summary>>> {
        let n = self.tu.num_coords();
        let mut inside: Vec<Vec<Summary>> = vec![Vec::new(); n];
        for &i in self.order.iter().rev() {
            let mut per_value = Vec::with_capacity(self.tu.domains[i].size);
            for x in 0..self.tu.domains[i].size {
                let mut acc = zero_summary(self.width);
                for &c in &self.children[i] {
                    let h = self.hang(c, x, &inside[c])?;
                    acc = minkowski(&acc, &h, &self.budget)?;
                }
                per_value.push(acc);
            }
            inside[i] = per_value;
        }
        Some(inside)
    }

    #[allow(clippy::needless_range_loop)] // `y` also selects factor rows
    fn outside(&self, hanging: &[Vec<Summary>]) -> Option<Vec<Vec<Summary>>> {
        let n = self.tu.num_coords();
        let mut outside: Vec<Vec<Summary>> = vec![Vec::new(); n];
        for &p in &self.order {
            if self.tu.parent[p].is_none() {
                outside[p] = vec![zero_summary(self.width)];
            }
            for &j in &self.children[p] {
                let mut per_value = Vec::with_capacity(self.tu.domains[p].size);
                for y in 0..self.tu.domains[p].size {
                    // u_p and everything above p
                    let mut acc = Summary::new();
                    for (z, above) in outside[p].iter().enumerate() {
                        let f = self.factor(p, y, z);
                        acc.extend(above.iter().map(|d| add(&f, d)));
                        self.budget.admit(acc.len())?;
                    }
                    for &c in self.children[p].iter().filter(|&&c| c != j) {
                        acc = minkowski(&acc, &hanging[c][y], &self.budget)?;
                    }
                    per_value.push(acc);
                }
                outside[j] = per_value;
            }
        }
        Some(outside)
    }

    /// Searches achievable matrices `M[v] = U(·, s_i = v)` (rows relative to
    /// action 0, flattened) for two rows with different argmax sets.
    fn is_relevant(
        &self,
        i: usize,
        inside: &[Vec<Summary>],
        outside: &[Vec<Summary>],
    ) -> Option<bool> {
        let di = self.tu.domains[i].size;
        if di < 2 {
            return Some(false);
        }
        let w = self.width;
        for (y, above) in outside[i].iter().enumerate() {
            let rows: Vec<Diff> = (0..di).map(|v| self.factor(i, v, y)).collect();
            let mut acc: Summary = above
                .iter()
                .map(|o| rows.iter().flat_map(|r| add(r, o)).collect())
                .collect();
            for &c in &self.children[i] {
                let mut child = Summary::new();
                for (xc, below) in inside[c].iter().enumerate() {
                    let fs: Vec<Diff> = (0..di).map(|v| self.factor(c, xc, v)).collect();
                    child.extend(
                        below
                            .iter()
                            .map(|d| fs.iter().flat_map(|f| add(f, d)).collect::<Diff>()),
                    );
                    self.budget.admit(child.len())?;
                }
                acc = minkowski(&acc, &child, &self.budget)?;
            }
            let splits = acc.iter().any(|m| {
                let first = argmax_diff(&m[..w]);
                m.chunks(w).skip(1).any(|row| argmax_diff(row) != first)
            });
            if splits {
                return Some(true);
            }
        }
        Some(false)
    }
}
