//! Cost arithmetic for a model that cannot express some required axes.
//!
//! ```text
//! cargo run --example econ_model
//! ```

use sufficiency::econ::{
    amortization_threshold, gap_report, hardness_report, overmodeling_comparison,
    total_external_work, EconModel, HardnessSplit, OverModelParams,
};
use sufficiency::{CoordSet, Rational};

fn main() -> sufficiency::Result<()> {
    // Six axes; the decision needs 0..=3, the tool handles 1 and 4.
    let m = EconModel::new(
        6,
        CoordSet::from(vec![0, 1, 2, 3]),
        CoordSet::from(vec![1, 4]),
    )?;
    let g = gap_report(&m);
    println!(
        "gap {} (tax {}), conservation holds: {}",
        g.gap, g.tax, g.conservation_holds
    );
    for sites in [1, 10, 1000] {
        println!(
            "external work at {sites} sites: {}",
            total_external_work(&m, sites)?
        );
    }
    let h = Rational::integer(40);
    println!(
        "a one-time cost of {h} pays off after {} sites",
        amortization_threshold(h, &m)?
    );

    let central = HardnessSplit::new(Rational::integer(40), Rational::integer(1))?;
    let scattered = HardnessSplit::new(Rational::integer(0), Rational::integer(3))?;
    for (name, split) in [("central", central), ("scattered", scattered)] {
        let rep = hardness_report(&split, 100)?;
        println!(
            "{name}: total {} over 100 sites, eta {}",
            rep.h_total, rep.eta
        );
    }

    let over = overmodeling_comparison(&OverModelParams {
        n: 20,
        k: 4,
        c_over_per_param: Rational::integer(1),
        c_under: Rational::integer(0),
    })?;
    println!(
        "n=20: brute-force search {} checks, over-modeling costs {}, wins: {}",
        over.c_find_brute, over.c_over, over.over_modeling_wins
    );
    Ok(())
}
