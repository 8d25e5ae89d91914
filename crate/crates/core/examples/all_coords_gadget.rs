//! The all-coordinates gadget: a non-tautology makes every coordinate
//! relevant, a tautology makes none relevant.
//!
//! ```text
//! cargo run --example all_coords_gadget -- "x1 & x2 | x3"
//! ```

use sufficiency::reductions::all_coords_gadget;
use sufficiency::{relevant_coordinates, Formula, Limits};

fn main() -> sufficiency::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "x1 & x2 | x3".to_string());
    for phi in [
        Formula::parse(&text)?,
        Formula::parse("x1 | ~x1 | x2 & x3")?,
    ] {
        let g = all_coords_gadget(&phi, &Limits::default())?;
        let rel = relevant_coordinates(&g.problem)?;
        println!(
            "{phi}: {} coordinates, domain size {}, relevant {rel}",
            g.problem.num_coords(),
            g.problem.domains()[0].size
        );
    }
    Ok(())
}
