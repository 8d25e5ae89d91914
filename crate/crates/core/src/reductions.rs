//! Gadget constructions that turn propositional formulas into explicit
//! decision problems, so each reduction's equivalence can be checked against
//! the brute-force formula deciders.
//!
//! * [`tautology_gadget`]: `∅` is sufficient iff `φ` is a tautology.
//! * [`all_coords_gadget`]: if `φ` is not a tautology, every coordinate is
//!   relevant; if it is, none is.
//! * [`anchor_gadget`]: the `x` coordinates admit a constant-`Opt` anchor
//!   iff `∃x ∀y φ(x, y)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{Assignment, Formula};
use crate::problem::{CoordSet, DecisionProblem, Domain, Limits};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetKind {
    Tautology,
    #[serde(rename = "allcoords")]
    AllCoords,
    Anchor,
}

impl GadgetKind {
    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Tautology => "tautology",
            GadgetKind::AllCoords => "allcoords",
            GadgetKind::Anchor => "anchor",
        }
    }
}

/// Where a gadget came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Provenance {
    pub kind: GadgetKind,
    /// Source formula in text form.
    pub formula: String,
    pub var_count: usize,
    /// `(k, m)` existential/universal split, anchor gadgets only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<[usize; 2]>,
    /// Whether a dummy universal variable was appended (`m = 0`).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub padded: bool,
}

/// A generated problem together with the coordinate set its reduction asks
/// about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub problem: DecisionProblem,
    pub query: CoordSet,
    pub provenance: Provenance,
}

fn int(v: i64) -> Rational {
    Rational::integer(v)
}

fn binary() -> Domain {
    Domain::labelled(["0", "1"])
}

/// Fails unless `vars` is within the variable cap and `2^vars` states fit
/// under the state cap.
fn check_binary_vars(vars: usize, limits: &Limits) -> Result<()> {
    let by_states = usize::BITS as usize - 1 - limits.max_states.max(1).leading_zeros() as usize;
    let cap = limits.max_vars.min(by_states);
    if vars > cap {
        return Err(Error::TooManyVariables { vars, cap });
    }
    Ok(())
}

/// Coordinates `(r, x1..xn)`, all binary; `r = 1` marks the reference
/// states. Actions `accept`, `reject`. At reference states accept earns 1
/// and reject 0; elsewhere accept earns `φ(x)` and reject 0. Query: `∅`.
pub fn tautology_gadget(phi: &Formula, limits: &Limits) -> Result<GadgetInstance> {
    let n = phi.var_count;
    check_binary_vars(n + 1, limits)?;
    let mut domains = vec![Domain::labelled(["assign", "ref"])];
    domains.extend((0..n).map(|_| binary()));
    let mut bits = vec![false; n];
    let problem = DecisionProblem::from_fn(
        vec!["accept".into(), "reject".into()],
        domains,
        limits,
        |a, s| {
            if a == 1 {
                return int(0);
            }
            if s[0] == 1 {
                return int(1);
            }
            for (b, &v) in bits.iter_mut().zip(&s[1..]) {
                *b = v == 1;
            }
            int(phi.ast.eval(&bits) as i64)
        },
    )?;
    Ok(GadgetInstance {
        problem,
        query: CoordSet::empty(),
        provenance: Provenance {
            kind: GadgetKind::Tautology,
            formula: phi.to_string(),
            var_count: n,
            split: None,
            padded: false,
        },
    })
}

/// Value index of the reference symbol in each all-coords domain; value
/// `1 + r` stands for the assignment of rank `r`.
pub const REF_VALUE: usize = 0;

/// `n` coordinates, each ranging over `{REF} ∪ {0,1}^n`. Coordinate `i`
/// passes its local test when it holds `REF` or an assignment satisfying
/// `φ`; accept earns 1 when every coordinate passes and 0 otherwise,
/// reject always earns 0. Query: `∅`.
pub fn all_coords_gadget(phi: &Formula, limits: &Limits) -> Result<GadgetInstance> {
    let n = phi.var_count;
    if n > limits.max_vars || n >= 32 {
        return Err(Error::TooManyVariables {
            vars: n,
            cap: limits.max_vars.min(31),
        });
    }
    let assignments = 1usize << n;
    let mut labels = vec!["REF".to_string()];
    let mut passes = vec![true];
    for r in 0..assignments {
        let a = Assignment::from_rank(r as u64, n);
        labels.push(
            a.bits()
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect(),
        );
        passes.push(phi.ast.eval(a.bits()));
    }
    let domains = vec![Domain::labelled(labels); n];
    let problem = DecisionProblem::from_fn(
        vec!["accept".into(), "reject".into()],
        domains,
        limits,
        |a, s| int((a == 0 && s.iter().all(|&v| passes[v])) as i64),
    )?;
    Ok(GadgetInstance {
        problem,
        query: CoordSet::empty(),
        provenance: Provenance {
            kind: GadgetKind::AllCoords,
            formula: phi.to_string(),
            var_count: n,
            split: None,
            padded: false,
        },
    })
}

/// Binary coordinates `(x1..xk, y1..ym)`, with one ignored dummy `y` added
/// when `m = 0`. `U(YES) = 2` where `φ` holds and 0 elsewhere;
/// `U(NO) = 1` where every `y` is 0 and 0 elsewhere. Query: the `x`
/// coordinates.
pub fn anchor_gadget(phi: &Formula, k: usize, m: usize, limits: &Limits) -> Result<GadgetInstance> {
    if k + m != phi.var_count {
        return Err(Error::SplitMismatch {
            exists: k,
            forall: m,
            vars: phi.var_count,
        });
    }
    let padded = m == 0;
    let m_eff = if padded { 1 } else { m };
    check_binary_vars(k + m_eff, limits)?;
    let lifted = if padded {
        pad_formula(phi)
    } else {
        phi.clone()
    };
    let mut bits = vec![false; k + m_eff];
    let problem = DecisionProblem::from_fn(
        vec!["YES".into(), "NO".into()],
        (0..k + m_eff).map(|_| binary()).collect(),
        limits,
        |a, s| {
            if a == 0 {
                for (b, &v) in bits.iter_mut().zip(s) {
                    *b = v == 1;
                }
                int(if lifted.ast.eval(&bits) { 2 } else { 0 })
            } else {
                int(s[k..].iter().all(|&v| v == 0) as i64)
            }
        },
    )?;
    Ok(GadgetInstance {
        problem,
        query: (0..k).collect(),
        provenance: Provenance {
            kind: GadgetKind::Anchor,
            formula: phi.to_string(),
            var_count: phi.var_count,
            split: Some([k, m]),
            padded,
        },
    })
}

impl Provenance {
    /// Re-parses the recorded source formula.
    pub fn source_formula(&self) -> Result<Formula> {
        Formula::parse_with_vars(&self.formula, self.var_count)
    }
}

/// Encodes configuration simplification as a sufficiency question: each
/// behavior is an action, each parameter a coordinate, and
/// `U(b, s) = 1` iff behavior `b` occurs under configuration `s`. A
/// parameter subset then preserves all behaviors exactly when it is a
/// sufficient coordinate set.
///
/// With 0/1 utilities alone, a configuration where nothing occurs would tie
/// every behavior and look like one where everything occurs. A final
/// sentinel action [`NO_BEHAVIOR`] worth 1/2 separates the two, so
/// `Opt(s)` is the set of occurring behaviors, or the sentinel alone.
pub fn configuration_problem<F>(
    mut behaviors: Vec<String>,
    parameters: Vec<Domain>,
    limits: &Limits,
    mut occurs: F,
) -> Result<DecisionProblem>
where
    F: FnMut(usize, &[usize]) -> bool,
{
    let sentinel = behaviors.len();
    behaviors.push(NO_BEHAVIOR.to_string());
    let half = Rational::new(1, 2)?;
    DecisionProblem::from_fn(behaviors, parameters, limits, |b, s| {
        if b == sentinel {
            half
        } else {
            int(occurs(b, s) as i64)
        }
    })
}

/// Name of the sentinel action appended by [`configuration_problem`].
pub const NO_BEHAVIOR: &str = "(none)";

/// Lifts `φ` to ignore one extra trailing variable.
pub fn pad_formula(phi: &Formula) -> Formula {
    Formula {
        var_count: phi.var_count + 1,
        ast: phi.ast.clone(),
    }
}
