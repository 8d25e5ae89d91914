//! The two closed-form tractable cases: separable utilities (nothing is
//! relevant) and linear utilities (relevance is bounded by weight
//! differences).
//!
//! ```text
//! cargo run --example separable_and_linear
//! ```

use sufficiency::tractable::{detect_separable, linear_relevance, solve_separable, LinearUtility};
use sufficiency::{
    fixtures, is_sufficient, relevant_coordinates, CoordSet, DecisionProblem, Domain, Limits,
    Rational,
};

fn r(n: i64) -> Rational {
    Rational::integer(n)
}

fn main() -> sufficiency::Result<()> {
    let limits = Limits::default();

    // Action bonus plus a state term shared by every action.
    let bonus = [r(3), r(5), r(5)];
    let p = DecisionProblem::from_fn(
        vec!["x".into(), "y".into(), "z".into()],
        vec![Domain::new(3), Domain::new(4)],
        &limits,
        |a, s| bonus[a] + r((s[0] * s[1]) as i64),
    )?;
    let sep = detect_separable(&p, &limits)?.expect("constructed separable");
    println!(
        "f = {:?}, Opt = {:?}",
        sep.f,
        solve_separable(&sep).actions()
    );
    println!(
        "empty set sufficient: {}",
        is_sufficient(&p, &CoordSet::empty())?
    );
    println!(
        "weather separable: {}",
        detect_separable(&fixtures::weather(), &limits)?.is_some()
    );

    // Coordinate 1 has equal weights for both actions, so it cannot matter.
    let lin = LinearUtility::new(vec![vec![r(1), r(2), r(0)], vec![r(-1), r(2), r(0)]])?;
    let bound = linear_relevance(&lin);
    let exact = relevant_coordinates(&lin.materialize(&[3, 3, 1], &limits)?)?;
    println!(
        "linear bound {bound}, exact {exact}, contained: {}",
        exact.is_subset(&bound)
    );
    Ok(())
}
