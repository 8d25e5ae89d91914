//! Optimizer maps, sufficiency, relevance and the decision quotient over an
//! explicit state space.
//!
//! [`OptTable`] evaluates `Opt(s)` once per state and interns the distinct
//! optimal sets, so every later query compares small integer ids. The free
//! functions at the bottom build a table with default [`Limits`] for one-off
//! use.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::{CoordSet, DecisionProblem, Limits, OptSet, State};
use crate::rational::Rational;

/// `Opt(s)` for a single state, by exact comparison of the utility column.
pub fn opt(p: &DecisionProblem, s: &State) -> Result<OptSet> {
    let idx = p.state_index(s)?;
    Ok(opt_at(p, idx))
}

pub(crate) fn opt_at(p: &DecisionProblem, idx: usize) -> OptSet {
    OptSet::argmax((0..p.num_actions()).map(|a| p.utility_at(a, idx)))
}

/// A pair of states that agree on the checked coordinates but have different
/// optimal sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InsufficiencyWitness {
    pub s: State,
    pub s_prime: State,
    pub opt_s: OptSet,
    pub opt_s_prime: OptSet,
}

/// Precomputed optimizer map of a problem.
#[derive(Debug, Clone)]
pub struct OptTable<'p> {
    problem: &'p DecisionProblem,
    /// Interned optimal sets, in order of first appearance.
    distinct: Vec<OptSet>,
    /// `ids[state_index]` indexes into `distinct`.
    ids: Vec<u32>,
}

impl<'p> OptTable<'p> {
    pub fn build(problem: &'p DecisionProblem, limits: &Limits) -> Result<Self> {
        if problem.num_states() > limits.max_states {
            return Err(Error::StateSpaceTooLarge {
                states: problem.num_states().to_string(),
                cap: limits.max_states,
            });
        }
        let mut lookup: HashMap<OptSet, u32> = HashMap::new();
        let mut distinct = Vec::new();
        let ids = (0..problem.num_states())
            .map(|idx| {
                let set = opt_at(problem, idx);
                *lookup.entry(set).or_insert_with_key(|set| {
                    distinct.push(set.clone());
                    (distinct.len() - 1) as u32
                })
            })
            .collect();
        Ok(OptTable {
            problem,
            distinct,
            ids,
        })
    }

    pub fn problem(&self) -> &'p DecisionProblem {
        self.problem
    }

    pub fn opt_at(&self, state_index: usize) -> &OptSet {
        &self.distinct[self.ids[state_index] as usize]
    }

    pub fn opt(&self, s: &State) -> Result<&OptSet> {
        Ok(self.opt_at(self.problem.state_index(s)?))
    }

    /// Distinct optimal sets occurring anywhere in the state space.
    pub fn distinct_opts(&self) -> &[OptSet] {
        &self.distinct
    }

    fn check(&self, coords: &CoordSet) -> Result<()> {
        coords.check_within(self.problem.num_coords())
    }

    /// Smallest state whose projection class is not opt-constant.
    fn first_violation(&self, coords: &CoordSet) -> Option<usize> {
        let space = self.problem.space();
        let idx = coords.indices();
        // representative opt id per class, u32::MAX = unseen
        let mut rep = vec![u32::MAX; space.projected_len(idx)];
        let mut first = vec![usize::MAX; rep.len()];
        let mut best: Option<usize> = None;
        for s in 0..space.len() {
            let key = space.projection_key(s, idx);
            let id = self.ids[s];
            if rep[key] == u32::MAX {
                rep[key] = id;
                first[key] = s;
            } else if rep[key] != id {
                // the class representative is the smallest state of a
                // non-constant class, so it starts the first violating pair
                let r = first[key];
                best = Some(best.map_or(r, |b| b.min(r)));
                if r == 0 {
                    break;
                }
            }
        }
        best
    }

    /// Whether `coords` is sufficient: `Opt` is constant on every class of
    /// states with equal projection.
    pub fn is_sufficient(&self, coords: &CoordSet) -> Result<bool> {
        self.check(coords)?;
        let space = self.problem.space();
        let idx = coords.indices();
        let mut rep = vec![u32::MAX; space.projected_len(idx)];
        for s in 0..space.len() {
            let key = space.projection_key(s, idx);
            let id = self.ids[s];
            if rep[key] == u32::MAX {
                rep[key] = id;
            } else if rep[key] != id {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The lexicographically first violating pair `(s, s')`, `s < s'` in
    /// state order, or `None` when `coords` is sufficient.
    pub fn insufficiency_witness(&self, coords: &CoordSet) -> Result<Option<InsufficiencyWitness>> {
        self.check(coords)?;
        let Some(s) = self.first_violation(coords) else {
            return Ok(None);
        };
        let space = self.problem.space();
        let idx = coords.indices();
        let key = space.projection_key(s, idx);
        let s_prime = (s + 1..space.len())
            .find(|&t| space.projection_key(t, idx) == key && self.ids[t] != self.ids[s])
            .expect("violating class has a second opt set");
        Ok(Some(InsufficiencyWitness {
            s: self.problem.state_at(s),
            s_prime: self.problem.state_at(s_prime),
            opt_s: self.opt_at(s).clone(),
            opt_s_prime: self.opt_at(s_prime).clone(),
        }))
    }

    /// Coordinates `i` for which some pair of states differing only at `i`
    /// has different optimal sets.
    pub fn relevant_coordinates(&self) -> CoordSet {
        let space = self.problem.space();
        (0..space.dims())
            .filter(|&i| {
                let stride = space.stride(i);
                // adjacent values along each line suffice: if any two values
                // of coordinate i disagree, some neighbouring pair does
                (0..space.len()).any(|s| {
                    space.digit(s, i) + 1 < space.sizes()[i] && self.ids[s] != self.ids[s + stride]
                })
            })
            .collect()
    }

    /// The unique minimum sufficient set, which equals the relevant set.
    pub fn minimal_sufficient_set(&self) -> CoordSet {
        self.relevant_coordinates()
    }

    /// `DQ_I(s)`: the fraction of actions optimal at some state agreeing
    /// with `s` on `coords`.
    pub fn decision_quotient(&self, coords: &CoordSet, s: &State) -> Result<Rational> {
        self.check(coords)?;
        let target = self.problem.state_index(s)?;
        let space = self.problem.space();
        let idx = coords.indices();
        let key = space.projection_key(target, idx);
        let mut seen = vec![false; self.distinct.len()];
        for t in 0..space.len() {
            if space.projection_key(t, idx) == key {
                seen[self.ids[t] as usize] = true;
            }
        }
        let mut optimal = vec![false; self.problem.num_actions()];
        for (id, _) in seen.iter().enumerate().filter(|(_, &v)| v) {
            for &a in self.distinct[id].actions() {
                optimal[a] = true;
            }
        }
        let count = optimal.iter().filter(|&&b| b).count();
        Ok(ratio(count, self.problem.num_actions()))
    }

    /// Sufficiency decided through the quotient characterization:
    /// `coords` is sufficient iff `DQ_I(s) = |Opt(s)|/|A|` at every state.
    pub fn sufficiency_via_dq(&self, coords: &CoordSet) -> Result<bool> {
        self.check(coords)?;
        let space = self.problem.space();
        let idx = coords.indices();
        let n_actions = self.problem.num_actions();
        let classes = space.projected_len(idx);
        let mut optimal = vec![false; classes * n_actions];
        for s in 0..space.len() {
            let key = space.projection_key(s, idx);
            for &a in self.opt_at(s).actions() {
                optimal[key * n_actions + a] = true;
            }
        }
        let dq: Vec<Rational> = optimal
            .chunks(n_actions)
            .map(|row| ratio(row.iter().filter(|&&b| b).count(), n_actions))
            .collect();
        Ok((0..space.len())
            .all(|s| dq[space.projection_key(s, idx)] == ratio(self.opt_at(s).len(), n_actions)))
    }
}

fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(num as i64, den as i64).expect("action count is positive")
}

pub fn is_sufficient(p: &DecisionProblem, coords: &CoordSet) -> Result<bool> {
    OptTable::build(p, &Limits::default())?.is_sufficient(coords)
}

pub fn insufficiency_witness(
    p: &DecisionProblem,
    coords: &CoordSet,
) -> Result<Option<InsufficiencyWitness>> {
    OptTable::build(p, &Limits::default())?.insufficiency_witness(coords)
}

pub fn relevant_coordinates(p: &DecisionProblem) -> Result<CoordSet> {
    Ok(OptTable::build(p, &Limits::default())?.relevant_coordinates())
}

pub fn minimal_sufficient_set(p: &DecisionProblem) -> Result<CoordSet> {
    Ok(OptTable::build(p, &Limits::default())?.minimal_sufficient_set())
}

pub fn decision_quotient(p: &DecisionProblem, coords: &CoordSet, s: &State) -> Result<Rational> {
    OptTable::build(p, &Limits::default())?.decision_quotient(coords, s)
}

pub fn sufficiency_via_dq(p: &DecisionProblem, coords: &CoordSet) -> Result<bool> {
    OptTable::build(p, &Limits::default())?.sufficiency_via_dq(coords)
}
