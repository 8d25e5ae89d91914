//! Small ready-made problems used by the examples, tests and CLI.

use crate::problem::{DecisionProblem, Domain, Limits};
use crate::rational::Rational;

pub const WEEKDAYS: [&str; 7] = ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"];

/// Umbrella decision: actions `carry`, `dont`; coordinates rain
/// (`norain`, `rain`), temperature (`cold`, `hot`) and day of week.
/// `U(carry) = -1 + 3·[rain]`, `U(dont) = -2·[rain]`.
pub fn weather() -> DecisionProblem {
    DecisionProblem::from_fn(
        vec!["carry".into(), "dont".into()],
        vec![
            Domain::labelled(["norain", "rain"]),
            Domain::labelled(["cold", "hot"]),
            Domain::labelled(WEEKDAYS),
        ],
        &Limits::default(),
        |a, s| {
            let rain = s[0] as i64;
            Rational::integer(if a == 0 { -1 + 3 * rain } else { -2 * rain })
        },
    )
    .expect("fixture is small")
}

/// Every action has utility 0 at every state.
pub fn constant_problem(actions: usize, sizes: Vec<usize>) -> DecisionProblem {
    DecisionProblem::from_fn(
        (0..actions).map(|a| format!("a{a}")).collect(),
        sizes.into_iter().map(Domain::new).collect(),
        &Limits::default(),
        |_, _| Rational::zero(),
    )
    .expect("fixture is small")
}
