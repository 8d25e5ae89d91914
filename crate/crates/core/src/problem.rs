//! Explicit-state decision problems and the small value types around them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::StateSpace;

pub const DEFAULT_MAX_STATES: usize = 1_000_000;
pub const DEFAULT_MAX_VARS: usize = 24;
pub const DEFAULT_TREE_SUMMARY_BUDGET: usize = 100_000;

/// Size guards shared by every exhaustive routine. Exceeding one is an
/// error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
    pub max_vars: usize,
    /// Maximum number of distinct entries a tree summary may hold before the
    /// tree solver falls back to explicit enumeration.
    pub tree_summary_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: DEFAULT_MAX_STATES,
            max_vars: DEFAULT_MAX_VARS,
            tree_summary_budget: DEFAULT_TREE_SUMMARY_BUDGET,
        }
    }
}

impl Limits {
    pub fn with_max_states(mut self, max_states: usize) -> Self {
        self.max_states = max_states;
        self
    }
}

/// One coordinate's value set `0..size`, optionally labelled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl Domain {
    pub fn new(size: usize) -> Self {
        Domain { size, labels: None }
    }

    pub fn labelled<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        Domain {
            size: labels.len(),
            labels: Some(labels),
        }
    }

    pub fn label(&self, value: usize) -> String {
        match &self.labels {
            Some(l) => l[value].clone(),
            None => value.to_string(),
        }
    }

    pub fn value_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }
}

/// A full state vector; `values[i]` lies in coordinate `i`'s domain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct State(pub Vec<usize>);

impl State {
    pub fn new(values: Vec<usize>) -> Self {
        State(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for State {
    fn from(values: Vec<usize>) -> Self {
        State(values)
    }
}

/// Sorted, duplicate-free set of coordinate indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct CoordSet(Vec<usize>);

impl CoordSet {
    pub fn empty() -> Self {
        CoordSet(Vec::new())
    }

    /// `{0, .., n-1}`.
    pub fn all(n: usize) -> Self {
        CoordSet((0..n).collect())
    }

    pub fn from_mask(mask: u64, n: usize) -> Self {
        CoordSet((0..n).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &CoordSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn union(&self, other: &CoordSet) -> CoordSet {
        self.0.iter().chain(&other.0).copied().collect()
    }

    pub fn intersection(&self, other: &CoordSet) -> CoordSet {
        self.0
            .iter()
            .copied()
            .filter(|&i| other.contains(i))
            .collect()
    }

    pub fn difference(&self, other: &CoordSet) -> CoordSet {
        self.0
            .iter()
            .copied()
            .filter(|&i| !other.contains(i))
            .collect()
    }

    pub fn without(&self, i: usize) -> CoordSet {
        CoordSet(self.0.iter().copied().filter(|&j| j != i).collect())
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Fails unless every index is below `n`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.max() {
            Some(i) if i >= n => Err(Error::InvalidCoordSet(format!(
                "index {i} not below coordinate count {n}"
            ))),
            _ => Ok(()),
        }
    }
}

impl From<Vec<usize>> for CoordSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl From<CoordSet> for Vec<usize> {
    fn from(c: CoordSet) -> Self {
        c.0
    }
}

impl FromIterator<usize> for CoordSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let set: BTreeSet<usize> = iter.into_iter().collect();
        CoordSet(set.into_iter().collect())
    }
}

impl fmt::Display for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Nonempty set of optimal action indices, ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OptSet(Vec<usize>);

impl OptSet {
    /// Argmax of `values` under exact comparison. `values` must be nonempty.
    pub fn argmax(values: impl IntoIterator<Item = Rational>) -> Self {
        let mut best: Option<Rational> = None;
        let mut set = Vec::new();
        for (a, u) in values.into_iter().enumerate() {
            match best {
                Some(b) if u < b => {}
                Some(b) if u == b => set.push(a),
                _ => {
                    best = Some(u);
                    set.clear();
                    set.push(a);
                }
            }
        }
        assert!(!set.is_empty(), "argmax over an empty action set");
        OptSet(set)
    }

    pub fn from_actions(mut actions: Vec<usize>) -> Self {
        actions.sort_unstable();
        actions.dedup();
        OptSet(actions)
    }

    pub fn actions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.0.binary_search(&a).is_ok()
    }
}

/// A decision problem `(A, X_1..X_n, U)` with the utility given as a full
/// table over actions × states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionProblem {
    actions: Vec<String>,
    domains: Vec<Domain>,
    space: StateSpace,
    /// `utility[a][state_index]`.
    utility: Vec<Vec<Rational>>,
}

impl DecisionProblem {
    /// Wraps an explicit table, validating its shape.
    pub fn from_table(
        actions: Vec<String>,
        domains: Vec<Domain>,
        utility: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let space = Self::space_for(&actions, &domains, usize::MAX)?;
        if utility.len() != actions.len() {
            return Err(Error::InvalidProblem(format!(
                "utility has {} rows, expected {} actions",
                utility.len(),
                actions.len()
            )));
        }
        if let Some((a, row)) = utility
            .iter()
            .enumerate()
            .find(|(_, row)| row.len() != space.len())
        {
            return Err(Error::InvalidProblem(format!(
                "utility row {a} has {} entries, expected {} states",
                row.len(),
                space.len()
            )));
        }
        Ok(DecisionProblem {
            actions,
            domains,
            space,
            utility,
        })
    }

    /// Tabulates `u(action, state)` over every state, in index order.
    pub fn from_fn<F>(
        actions: Vec<String>,
        domains: Vec<Domain>,
        limits: &Limits,
        mut u: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, &[usize]) -> Rational,
    {
        let space = Self::space_for(&actions, &domains, limits.max_states)?;
        let mut utility = vec![Vec::with_capacity(space.len()); actions.len()];
        for s in space.states() {
            for (a, row) in utility.iter_mut().enumerate() {
                row.push(u(a, &s));
            }
        }
        Ok(DecisionProblem {
            actions,
            domains,
            space,
            utility,
        })
    }

    fn space_for(actions: &[String], domains: &[Domain], cap: usize) -> Result<StateSpace> {
        if actions.is_empty() {
            return Err(Error::InvalidProblem(
                "at least one action is required".into(),
            ));
        }
        for (i, d) in domains.iter().enumerate() {
            if let Some(labels) = &d.labels {
                if labels.len() != d.size {
                    return Err(Error::InvalidProblem(format!(
                        "coordinate {i} has {} labels for domain size {}",
                        labels.len(),
                        d.size
                    )));
                }
            }
        }
        StateSpace::new(domains.iter().map(|d| d.size).collect(), cap)
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    /// Number of coordinates n.
    pub fn num_coords(&self) -> usize {
        self.domains.len()
    }

    /// Number of states N.
    pub fn num_states(&self) -> usize {
        self.space.len()
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn table(&self) -> &[Vec<Rational>] {
        &self.utility
    }

    pub fn state_index(&self, s: &State) -> Result<usize> {
        self.space.encode(s.values())
    }

    pub fn state_at(&self, index: usize) -> State {
        State(self.space.decode(index))
    }

    pub fn utility(&self, action: usize, s: &State) -> Result<Rational> {
        let idx = self.state_index(s)?;
        self.utility
            .get(action)
            .map(|row| row[idx])
            .ok_or_else(|| Error::InvalidProblem(format!("no action {action}")))
    }

    #[inline]
    pub fn utility_at(&self, action: usize, state_index: usize) -> Rational {
        self.utility[action][state_index]
    }

    /// Resolves a state given as label strings (or decimal values for
    /// unlabelled coordinates).
    pub fn state_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<State> {
        if labels.len() != self.num_coords() {
            return Err(Error::InvalidState(format!(
                "state has {} values, problem has {} coordinates",
                labels.len(),
                self.num_coords()
            )));
        }
        let values = labels
            .iter()
            .zip(&self.domains)
            .enumerate()
            .map(|(i, (l, d))| {
                let l = l.as_ref();
                d.value_of(l)
                    .or_else(|| l.parse().ok().filter(|&v| v < d.size))
                    .ok_or_else(|| {
                        Error::InvalidState(format!("coordinate {i} has no value {l:?}"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(State(values))
    }

    pub fn state_labels(&self, s: &State) -> Vec<String> {
        s.values()
            .iter()
            .zip(&self.domains)
            .map(|(&v, d)| d.label(v))
            .collect()
    }

    /// Applies `u ↦ scale·u + shift` to every entry.
    pub fn affine(&self, scale: Rational, shift: Rational) -> DecisionProblem {
        let utility = self
            .utility
            .iter()
            .map(|row| row.iter().map(|&u| scale * u + shift).collect())
            .collect();
        DecisionProblem {
            utility,
            ..self.clone()
        }
    }
}

/// Projection `s_I`: the subvector of `s` on the indices of `coords`, in
/// ascending index order.
pub fn project(s: &State, coords: &CoordSet) -> Result<Vec<usize>> {
    if let Some(i) = coords.max().filter(|&i| i >= s.values().len()) {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: s.values().len(),
        });
    }
    Ok(coords.indices().iter().map(|&i| s.values()[i]).collect())
}
