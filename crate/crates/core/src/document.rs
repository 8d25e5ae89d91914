//! JSON file formats.
//!
//! A problem document is
//!
//! ```json
//! {
//!   "actions": ["carry", "dont"],
//!   "domains": [{"size": 2, "labels": ["norain", "rain"]}, {"size": 7}],
//!   "utility": [[[-1, 1], [2, 1], ...], [[0, 1], ...]],
//!   "meta": {}
//! }
//! ```
//!
//! with `utility[action][state]` in mixed-radix state order (coordinate 0
//! most significant) and every rational written as `[numerator,
//! denominator]`. Gadget instances are problem documents whose `meta`
//! carries `queryI` and a `gadget` provenance block, so any analysis command
//! accepts them as-is.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::problem::{CoordSet, DecisionProblem, Domain, State};
use crate::rational::Rational;
use crate::reductions::{GadgetInstance, Provenance};
use crate::tractable::{LinearUtility, TreeUtility};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub actions: Vec<String>,
    pub domains: Vec<Domain>,
    pub utility: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

impl From<&DecisionProblem> for ProblemDocument {
    fn from(p: &DecisionProblem) -> Self {
        ProblemDocument {
            actions: p.actions().to_vec(),
            domains: p.domains().to_vec(),
            utility: p.table().to_vec(),
            meta: None,
        }
    }
}

impl ProblemDocument {
    pub fn to_problem(&self) -> Result<DecisionProblem> {
        DecisionProblem::from_table(
            self.actions.clone(),
            self.domains.clone(),
            self.utility.clone(),
        )
    }

    /// `meta.queryI`, if present.
    pub fn query(&self) -> Result<Option<CoordSet>> {
        match self.meta.as_ref().and_then(|m| m.get("queryI")) {
            None => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| Error::Format(format!("meta.queryI: {e}"))),
        }
    }

    /// `meta.gadget`, if present.
    pub fn provenance(&self) -> Result<Option<Provenance>> {
        match self.meta.as_ref().and_then(|m| m.get("gadget")) {
            None => Ok(None),
            Some(v) => serde_json::from_value(v.clone())
                .map(Some)
                .map_err(|e| Error::Format(format!("meta.gadget: {e}"))),
        }
    }

    /// Parses a problem document, or a report whose `outputs.instance` is
    /// one (the output of the `gadget` command).
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Format(format!("not JSON: {e}")))?;
        let doc = match value.pointer("/outputs/instance") {
            Some(inner) if value.get("actions").is_none() => inner.clone(),
            _ => value,
        };
        serde_json::from_value(doc).map_err(|e| Error::Format(format!("problem document: {e}")))
    }
}

impl From<&GadgetInstance> for ProblemDocument {
    fn from(g: &GadgetInstance) -> Self {
        let mut doc = ProblemDocument::from(&g.problem);
        doc.meta = Some(serde_json::json!({
            "queryI": g.query,
            "gadget": g.provenance,
        }));
        doc
    }
}

impl TryFrom<&ProblemDocument> for GadgetInstance {
    type Error = Error;

    fn try_from(doc: &ProblemDocument) -> Result<Self> {
        let missing = |k: &str| Error::Format(format!("gadget document lacks meta.{k}"));
        let query = doc.query()?.ok_or_else(|| missing("queryI"))?;
        let provenance = doc.provenance()?.ok_or_else(|| missing("gadget"))?;
        let problem = doc.to_problem()?;
        query.check_within(problem.num_coords())?;
        Ok(GadgetInstance {
            problem,
            query,
            provenance,
        })
    }
}

/// Reads a tree utility: `actions`, `domains`, `parent` (null for the
/// root) and `factors[i][action][x_i][x_parent]`.
pub fn tree_from_json(text: &str) -> Result<TreeUtility> {
    let tu: TreeUtility =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("tree document: {e}")))?;
    tu.validate()?;
    Ok(tu)
}

/// Linear utility document: a weight matrix `weights[action][coordinate]`,
/// with optional action names and domain sizes (needed to materialize).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<String>>,
    pub weights: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domains: Option<Vec<usize>>,
}

impl LinearDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("linear document: {e}")))
    }

    pub fn utility(&self) -> Result<LinearUtility> {
        LinearUtility::new(self.weights.clone())
    }
}

/// A state given as a JSON array of values or labels, or as a bare state
/// index.
pub fn parse_state(p: &DecisionProblem, text: &str) -> Result<State> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Format(format!("state {text:?} is not JSON: {e}")))?;
    match value {
        Value::Number(n) => {
            let idx = n
                .as_u64()
                .filter(|&i| (i as usize) < p.num_states())
                .ok_or_else(|| Error::InvalidState(format!("no state with index {n}")))?;
            Ok(p.state_at(idx as usize))
        }
        Value::Array(items) => {
            let labels = items
                .iter()
                .map(|v| match v {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    other => Err(Error::Format(format!("bad state entry {other}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let numeric = items.iter().all(Value::is_number);
            let s = if numeric {
                State::new(
                    labels
                        .iter()
                        .map(|l| l.parse().unwrap_or(usize::MAX))
                        .collect(),
                )
            } else {
                p.state_from_labels(&labels)?
            };
            p.state_index(&s)?;
            Ok(s)
        }
        other => Err(Error::Format(format!("bad state {other}"))),
    }
}

/// A coordinate set written as a JSON array (`[0,2]`) or a comma list
/// (`0,2`; empty string for `∅`).
pub fn parse_coords(text: &str) -> Result<CoordSet> {
    let t = text.trim();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| Error::Format(format!("coords {t:?}: {e}")));
    }
    t.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::Format(format!("bad coordinate {s:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::weather;
    use crate::formula::Formula;
    use crate::problem::Limits;
    use crate::reductions::anchor_gadget;

    #[test]
    fn problem_round_trip() {
        let w = weather();
        let text = serde_json::to_string(&ProblemDocument::from(&w)).unwrap();
        let back = ProblemDocument::from_json(&text)
            .unwrap()
            .to_problem()
            .unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn gadget_round_trip_keeps_provenance() {
        let phi = Formula::parse("x1 & ~x2 | x3").unwrap();
        let g = anchor_gadget(&phi, 1, 2, &Limits::default()).unwrap();
        let text = serde_json::to_string(&ProblemDocument::from(&g)).unwrap();
        let doc = ProblemDocument::from_json(&text).unwrap();
        let back = GadgetInstance::try_from(&doc).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn report_wrapped_instance_is_accepted() {
        let w = weather();
        let report = serde_json::json!({
            "command": "gadget",
            "outputs": {"instance": ProblemDocument::from(&w)},
        });
        let doc = ProblemDocument::from_json(&report.to_string()).unwrap();
        assert_eq!(doc.to_problem().unwrap(), w);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            ProblemDocument::from_json("{"),
            Err(Error::Format(_))
        ));
        let bad_den = r#"{"actions":["a"],"domains":[{"size":1}],"utility":[[[1,0]]]}"#;
        assert!(ProblemDocument::from_json(bad_den).is_err());
        let float = r#"{"actions":["a"],"domains":[{"size":1}],"utility":[[0.5]]}"#;
        assert!(ProblemDocument::from_json(float).is_err());
        let short = r#"{"actions":["a"],"domains":[{"size":2}],"utility":[[[1,1]]]}"#;
        let doc = ProblemDocument::from_json(short).unwrap();
        assert!(matches!(doc.to_problem(), Err(Error::InvalidProblem(_))));
    }

    #[test]
    fn state_forms() {
        let w = weather();
        let by_label = parse_state(&w, r#"["rain","hot","Mon"]"#).unwrap();
        assert_eq!(by_label.values(), &[1, 1, 0]);
        assert_eq!(parse_state(&w, "[1,1,0]").unwrap(), by_label);
        assert_eq!(parse_state(&w, "21").unwrap(), by_label);
        assert!(parse_state(&w, "28").is_err());
        assert!(parse_state(&w, r#"["snow","hot","Mon"]"#).is_err());
        assert!(parse_state(&w, "[1,1,9]").is_err());
    }

    #[test]
    fn coord_forms() {
        assert_eq!(parse_coords("[2,0]").unwrap(), CoordSet::from(vec![0, 2]));
        assert_eq!(parse_coords("2, 0").unwrap(), CoordSet::from(vec![0, 2]));
        assert_eq!(parse_coords("[]").unwrap(), CoordSet::empty());
        assert_eq!(parse_coords("").unwrap(), CoordSet::empty());
        assert!(parse_coords("a").is_err());
    }
}
