//! The umbrella problem: only rain matters.
//!
//! ```text
//! cargo run --example weather
//! ```

use sufficiency::{CoordSet, Limits, OptTable, Rational};

fn main() -> sufficiency::Result<()> {
    let p = sufficiency::fixtures::weather();
    let table = OptTable::build(&p, &Limits::default())?;

    println!("{} states, actions {:?}", p.num_states(), p.actions());
    println!("relevant coordinates: {}", table.relevant_coordinates());
    println!("minimum sufficient set: {}", table.minimal_sufficient_set());

    for coords in [vec![0], vec![1, 2], vec![]] {
        let coords = CoordSet::from(coords);
        match table.insufficiency_witness(&coords)? {
            None => println!("{coords} is sufficient"),
            Some(w) => println!(
                "{coords} is not sufficient: {:?} -> {:?} but {:?} -> {:?}",
                p.state_labels(&w.s),
                names(&p, w.opt_s.actions()),
                p.state_labels(&w.s_prime),
                names(&p, w.opt_s_prime.actions()),
            ),
        }
    }

    // With nothing observed, every action is optimal somewhere in the class.
    let s = p.state_from_labels(&["norain", "hot", "Sat"])?;
    let dq: Rational = table.decision_quotient(&CoordSet::empty(), &s)?;
    println!("DQ_{{}}({:?}) = {dq}", p.state_labels(&s));
    Ok(())
}

fn names(p: &sufficiency::DecisionProblem, actions: &[usize]) -> Vec<String> {
    actions.iter().map(|&a| p.actions()[a].clone()).collect()
}
