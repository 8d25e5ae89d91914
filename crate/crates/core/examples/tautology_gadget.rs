//! Tautology checking as a sufficiency question: the empty coordinate set is
//! sufficient for the gadget exactly when the formula is valid.
//!
//! ```text
//! cargo run --example tautology_gadget -- "x1 | ~x1" "x1 & x2 -> x1" "x1 -> x2"
//! ```

use sufficiency::formula::is_tautology_brute;
use sufficiency::reductions::tautology_gadget;
use sufficiency::{Formula, Limits, OptTable};

fn main() -> sufficiency::Result<()> {
    let mut inputs: Vec<String> = std::env::args().skip(1).collect();
    if inputs.is_empty() {
        inputs = ["x1 | ~x1", "(x1 -> x2) | (x2 -> x1)", "x1 -> x2"]
            .map(String::from)
            .to_vec();
    }
    let limits = Limits::default();
    for text in &inputs {
        let phi = Formula::parse(text)?;
        let g = tautology_gadget(&phi, &limits)?;
        let table = OptTable::build(&g.problem, &limits)?;
        let sufficient = table.is_sufficient(&g.query)?;
        let oracle = is_tautology_brute(&phi, limits.max_vars)?;
        println!(
            "{phi:<28} tautology={:<5} empty-set-sufficient={:<5} states={}",
            oracle.is_tautology(),
            sufficient,
            g.problem.num_states()
        );
        if let Some(w) = table.insufficiency_witness(&g.query)? {
            println!(
                "    witness {:?} vs {:?}",
                g.problem.state_labels(&w.s),
                g.problem.state_labels(&w.s_prime)
            );
        }
        assert_eq!(sufficient, oracle.is_tautology());
    }
    Ok(())
}
