//! Relevance on a tree-structured utility without enumerating states.
//!
//! Star tree: a season root with three children. Only the forecast factor
//! separates the two actions, and it depends on the season.
//!
//! ```text
//! cargo run --example tree_relevance
//! ```

use sufficiency::tractable::{expand_tree, tree_opt, tree_relevant_coordinates, TreeUtility};
use sufficiency::{relevant_coordinates, Domain, Limits, Rational, State};

fn r(n: i64) -> Rational {
    Rational::integer(n)
}

fn main() -> sufficiency::Result<()> {
    let season = Domain::labelled(["dry", "wet"]);
    let forecast = Domain::labelled(["clear", "cloudy", "storm"]);
    let weekday = Domain::new(7);
    let mood = Domain::labelled(["calm", "grumpy"]);

    // factors[i][action][x_i][x_parent]
    let root = vec![vec![vec![r(0)], vec![r(0)]]; 2];
    let forecast_f = vec![
        vec![vec![r(0), r(0)], vec![r(0), r(1)], vec![r(1), r(3)]],
        vec![vec![r(1), r(1)]; 3],
    ];
    let same = |size: usize| vec![vec![vec![r(2); 2]; size]; 2];
    let tu = TreeUtility::new(
        vec!["walk".into(), "bus".into()],
        vec![season, forecast, weekday, mood],
        vec![None, Some(0), Some(0), Some(0)],
        vec![root, forecast_f, same(7), same(2)],
    )?;

    let limits = Limits::default();
    let rel = tree_relevant_coordinates(&tu, &limits)?;
    println!("relevant {} via {:?}", rel.coords, rel.strategy);

    let expanded = expand_tree(&tu, &limits)?;
    println!(
        "enumeration over {} states agrees: {}",
        expanded.num_states(),
        relevant_coordinates(&expanded)? == rel.coords
    );

    for s in [[0, 1, 3, 0], [1, 1, 3, 0], [0, 2, 0, 1]] {
        let opt = tree_opt(&tu, &State::new(s.to_vec()))?;
        let names: Vec<&str> = opt
            .actions()
            .iter()
            .map(|&a| tu.actions[a].as_str())
            .collect();
        println!("Opt{s:?} = {names:?}");
    }
    Ok(())
}
