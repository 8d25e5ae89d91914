use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{DecisionProblem, Domain, Limits, OptSet};
use crate::rational::Rational;

/// `U(a, s) = f(a) + g(s)`. `g` never affects the optimizer and may be
/// omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparableUtility {
    pub f: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Rational>>,
}

impl SeparableUtility {
    /// Rebuilds the full table `f(a) + g(s)`.
    pub fn materialize(
        &self,
        actions: Vec<String>,
        domains: Vec<Domain>,
        limits: &Limits,
    ) -> Result<DecisionProblem> {
        let g = self
            .g
            .as_ref()
            .ok_or_else(|| Error::InvalidProblem("separable utility has no g table".into()))?;
        if actions.len() != self.f.len() {
            return Err(Error::InvalidProblem(format!(
                "{} actions for {} f values",
                actions.len(),
                self.f.len()
            )));
        }
        let p = DecisionProblem::from_fn(actions, domains, limits, |_, _| Rational::zero())?;
        if g.len() != p.num_states() {
            return Err(Error::InvalidProblem(format!(
                "g has {} entries for {} states",
                g.len(),
                p.num_states()
            )));
        }
        let table = self
            .f
            .iter()
            .map(|&fa| g.iter().map(|&gs| fa + gs).collect())
            .collect();
        DecisionProblem::from_table(p.actions().to_vec(), p.domains().to_vec(), table)
    }
}

/// Recognizes tables of the form `f(a) + g(s)`: every action's utility
/// differs from the first action's by a state-independent constant. `f` is
/// anchored at the first state, `f(a) = U(a, s₀)`, and
/// `g(s) = U(a₀, s) − U(a₀, s₀)`.
pub fn detect_separable(p: &DecisionProblem, limits: &Limits) -> Result<Option<SeparableUtility>> {
    if p.num_states() > limits.max_states {
        return Err(Error::StateSpaceTooLarge {
            states: p.num_states().to_string(),
            cap: limits.max_states,
        });
    }
    let table = p.table();
    let base = &table[0];
    for row in &table[1..] {
        let offset = row[0] - base[0];
        if row.iter().zip(base).any(|(&u, &b)| u - b != offset) {
            return Ok(None);
        }
    }
    let f = table.iter().map(|row| row[0]).collect();
    let g = base.iter().map(|&u| u - base[0]).collect();
    Ok(Some(SeparableUtility { f, g: Some(g) }))
}

/// `argmax_a f(a)`, which is `Opt(s)` at every state.
pub fn solve_separable(sep: &SeparableUtility) -> OptSet {
    OptSet::argmax(sep.f.iter().copied())
}
