//! ANCHOR-SUFFICIENCY: is there an assignment to a fixed coordinate set whose
//! subcube has a constant optimal-action set?

use serde::Serialize;

use crate::analysis::{opt_at, OptTable};
use crate::error::{Error, Result};
use crate::problem::{CoordSet, DecisionProblem, Limits, State};
use crate::space::Odometer;

/// Values for each coordinate of `coords`, in ascending coordinate order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnchorAssignment {
    pub coords: CoordSet,
    pub values: Vec<usize>,
}

impl AnchorAssignment {
    /// `(coordinate, value)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.coords
            .indices()
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }
}

/// Every state `s` with `s_I = α`, in state order.
fn subcube_states<'a>(
    p: &'a DecisionProblem,
    anchor: &'a AnchorAssignment,
) -> impl Iterator<Item = usize> + 'a {
    let space = p.space();
    let free: Vec<usize> = (0..p.num_coords())
        .filter(|&c| !anchor.coords.contains(c))
        .collect();
    let base: usize = anchor.pairs().map(|(c, v)| v * space.stride(c)).sum();
    let sizes = free.iter().map(|&c| space.sizes()[c]).collect();
    Odometer::new(sizes).map(move |digits| {
        base + free
            .iter()
            .zip(digits)
            .map(|(&c, v)| v * space.stride(c))
            .sum::<usize>()
    })
}

/// Lexicographically first anchor whose subcube has constant `Opt`, or
/// `None` if no assignment to `coords` qualifies.
pub fn anchor_sufficiency(
    p: &DecisionProblem,
    coords: &CoordSet,
    limits: &Limits,
) -> Result<Option<AnchorAssignment>> {
    coords.check_within(p.num_coords())?;
    let table = OptTable::build(p, limits)?;
    let sizes = coords
        .indices()
        .iter()
        .map(|&c| p.domains()[c].size)
        .collect();
    for values in Odometer::new(sizes) {
        let candidate = AnchorAssignment {
            coords: coords.clone(),
            values,
        };
        let constant = {
            let mut states = subcube_states(p, &candidate);
            let reference = table.opt_at(states.next().expect("subcube is nonempty"));
            states.all(|s| table.opt_at(s) == reference)
        };
        if constant {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Re-checks an anchor by evaluating `Opt` directly at every subcube state,
/// without a precomputed table.
pub fn subcube_is_constant(p: &DecisionProblem, anchor: &AnchorAssignment) -> Result<bool> {
    anchor.coords.check_within(p.num_coords())?;
    if anchor.values.len() != anchor.coords.len() {
        return Err(Error::InvalidCoordSet(format!(
            "{} anchor values for {} coordinates",
            anchor.values.len(),
            anchor.coords.len()
        )));
    }
    let mut probe = vec![0; p.num_coords()];
    for (c, v) in anchor.pairs() {
        probe[c] = v;
    }
    // validates the anchor values against their domains
    p.state_index(&State::new(probe))?;
    let mut states = subcube_states(p, anchor);
    let first = opt_at(p, states.next().expect("subcube is nonempty"));
    Ok(states.all(|s| opt_at(p, s) == first))
}
