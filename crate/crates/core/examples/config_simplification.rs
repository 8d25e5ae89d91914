//! Which configuration parameters can be dropped without changing the set
//! of behaviors a configuration produces? Encode behaviors as actions with
//! utility 1 when they occur; a parameter set is safe to keep exactly when
//! it is sufficient.
//!
//! ```text
//! cargo run --example config_simplification
//! ```

use sufficiency::reductions::configuration_problem;
use sufficiency::{Domain, Limits, OptTable};

fn main() -> sufficiency::Result<()> {
    let params = vec![
        Domain::labelled(["off", "on"]),             // cache
        Domain::labelled(["debug", "info", "warn"]), // log level
        Domain::labelled(["small", "large"]),        // buffer
        Domain::labelled(["off", "on"]),             // compression
    ];
    let behaviors = vec![
        "fast_reads".into(),
        "verbose_logs".into(),
        "low_memory".into(),
    ];
    let limits = Limits::default();
    let p = configuration_problem(behaviors, params, &limits, |b, s| match b {
        0 => s[0] == 1,
        1 => s[1] == 0,
        2 => s[2] == 0,
        _ => unreachable!(),
    })?;
    let table = OptTable::build(&p, &limits)?;
    let keep = table.minimal_sufficient_set();
    println!("parameters to keep: {keep}");
    println!("compression can be dropped: {}", !keep.contains(3));
    Ok(())
}
