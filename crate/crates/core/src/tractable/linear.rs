use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{CoordSet, DecisionProblem, Domain, Limits};
use crate::rational::Rational;

/// `U(a, s) = Σ_i weights[a][i] · s_i`, with coordinate values read as the
/// integers `0..d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearUtility {
    pub weights: Vec<Vec<Rational>>,
}

impl LinearUtility {
    pub fn new(weights: Vec<Vec<Rational>>) -> Result<Self> {
        let lin = LinearUtility { weights };
        lin.validate()?;
        Ok(lin)
    }

    pub fn validate(&self) -> Result<()> {
        let Some(first) = self.weights.first() else {
            return Err(Error::InvalidProblem(
                "linear utility has no actions".into(),
            ));
        };
        if self.weights.iter().any(|w| w.len() != first.len()) {
            return Err(Error::InvalidProblem(
                "weight vectors have different lengths".into(),
            ));
        }
        Ok(())
    }

    pub fn num_coords(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    pub fn materialize(&self, sizes: &[usize], limits: &Limits) -> Result<DecisionProblem> {
        self.validate()?;
        if sizes.len() != self.num_coords() {
            return Err(Error::InvalidProblem(format!(
                "{} domains for {} weights",
                sizes.len(),
                self.num_coords()
            )));
        }
        DecisionProblem::from_fn(
            (0..self.weights.len()).map(|a| format!("a{a}")).collect(),
            sizes.iter().map(|&d| Domain::new(d)).collect(),
            limits,
            |a, s| {
                self.weights[a]
                    .iter()
                    .zip(s)
                    .map(|(&w, &v)| w * Rational::integer(v as i64))
                    .sum()
            },
        )
    }
}

/// Coordinates on which some two actions' weights differ. Every coordinate
/// outside this set is irrelevant; a coordinate inside it may still be
/// irrelevant (for instance when its domain has a single value).
pub fn linear_relevance(lin: &LinearUtility) -> CoordSet {
    (0..lin.num_coords())
        .filter(|&i| {
            let w0 = lin.weights[0][i];
            lin.weights.iter().any(|w| w[i] != w0)
        })
        .collect()
}
