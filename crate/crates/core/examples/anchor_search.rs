//! Exists-forall satisfiability through anchor search. The existential
//! variables become the anchored coordinates; an anchor exists exactly when
//! some setting of them makes the formula true for every universal setting.
//!
//! ```text
//! cargo run --example anchor_search -- "x1 & (x2 | ~x2)" 1 1
//! ```

use sufficiency::formula::exists_forall_brute;
use sufficiency::reductions::anchor_gadget;
use sufficiency::{anchor_sufficiency, subcube_is_constant, Formula, Limits};

fn main() -> sufficiency::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cases: Vec<(String, usize, usize)> = if args.len() == 3 {
        vec![(
            args[0].clone(),
            args[1].parse().expect("k"),
            args[2].parse().expect("m"),
        )]
    } else {
        vec![
            ("x1 | x2".into(), 1, 1),
            ("x1 & x2".into(), 1, 1),
            ("(x1 -> x3) & (x2 -> ~x3)".into(), 2, 1),
            ("x1 & ~x2".into(), 2, 0),
        ]
    };
    let limits = Limits::default();
    for (text, k, m) in cases {
        let phi = Formula::parse_with_vars(&text, k + m)?;
        let g = anchor_gadget(&phi, k, m, &limits)?;
        let anchor = anchor_sufficiency(&g.problem, &g.query, &limits)?;
        let oracle = exists_forall_brute(&phi, k, m, limits.max_vars)?;
        print!("{phi} with k={k} m={m}");
        if g.provenance.padded {
            print!(" (padded)");
        }
        match &anchor {
            Some(a) => {
                assert!(subcube_is_constant(&g.problem, a)?);
                println!(
                    ": anchor {:?}, oracle {:?}",
                    a.values,
                    oracle.as_ref().map(|x| x.bits().to_vec())
                );
            }
            None => println!(": no anchor, oracle {oracle:?}"),
        }
        assert_eq!(anchor.is_some(), oracle.is_some());
    }
    Ok(())
}
