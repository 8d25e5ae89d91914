mod common;

use common::*;
use rand::Rng;
use sufficiency::document::ProblemDocument;
use sufficiency::reductions::{all_coords_gadget, anchor_gadget, tautology_gadget};
use sufficiency::{
    anchor_sufficiency, is_sufficient, relevant_coordinates, subcube_is_constant, CoordSet, Error,
    Formula, GadgetInstance, Limits,
};

const SEED: u64 = 0x5eed_0100;

#[test]
fn interpreter_agrees_with_library_evaluation() {
    let mut rng = rng(SEED);
    for _ in 0..200 {
        let n = rng.gen_range(0..=5);
        let phi = random_formula(&mut rng, n, 5);
        for bits in 0..1u64 << n {
            let a = sufficiency::Assignment::from_rank(bits, n);
            assert_eq!(phi.eval(&a).unwrap(), truth(&phi.ast, n, bits), "{phi}");
        }
    }
}

#[test]
fn tautology_gadget_on_every_shallow_two_variable_formula() {
    let exprs = all_exprs(2, 3);
    assert_eq!(exprs.len(), 9_468);
    for e in exprs {
        let phi = Formula::new(e, 2).unwrap();
        let g = tautology_gadget(&phi, &limits()).unwrap();
        assert_eq!(
            is_sufficient(&g.problem, &g.query).unwrap(),
            oracle_tautology(&phi),
            "{phi}"
        );
    }
}

#[test]
fn tautology_gadget_random_formulas() {
    let mut rng = rng(SEED + 1);
    for i in 0..150 {
        let n = rng.gen_range(1..=6);
        let phi = if i % 3 == 0 {
            random_tautology(&mut rng, n)
        } else {
            random_formula(&mut rng, n, 4)
        };
        let g = tautology_gadget(&phi, &limits()).unwrap();
        assert_eq!(
            is_sufficient(&g.problem, &CoordSet::empty()).unwrap(),
            oracle_tautology(&phi),
            "{phi}"
        );
    }
}

#[test]
fn all_coords_gadget_is_all_or_nothing() {
    let mut rng = rng(SEED + 2);
    for i in 0..60 {
        let n = rng.gen_range(1..=3);
        let phi = if i % 2 == 0 {
            random_tautology(&mut rng, n)
        } else {
            random_formula(&mut rng, n, 3)
        };
        let g = all_coords_gadget(&phi, &limits()).unwrap();
        let rel = relevant_coordinates(&g.problem).unwrap();
        let expected = if oracle_tautology(&phi) {
            CoordSet::empty()
        } else {
            CoordSet::all(n)
        };
        assert_eq!(rel, expected, "{phi}");
    }
}

#[test]
fn anchor_gadget_matches_exists_forall() {
    let mut rng = rng(SEED + 3);
    for i in 0..120 {
        let total = rng.gen_range(1..=7);
        let m = if i % 5 == 0 {
            0
        } else {
            rng.gen_range(0..=total)
        };
        let k = total - m;
        let phi = random_formula(&mut rng, total, 4);
        let g = anchor_gadget(&phi, k, m, &limits()).unwrap();
        assert_eq!(g.provenance.padded, m == 0);
        let anchor = anchor_sufficiency(&g.problem, &g.query, &limits()).unwrap();
        let oracle = oracle_exists_forall(&phi, k, m);
        match (&anchor, &oracle) {
            (Some(a), Some(x)) => {
                let bits: Vec<bool> = a.values.iter().map(|&v| v == 1).collect();
                assert_eq!(&bits, x, "{phi} k={k} m={m}");
                assert!(subcube_is_constant(&g.problem, a).unwrap());
            }
            (None, None) => {}
            _ => panic!("{phi} k={k} m={m}: anchor {anchor:?}, oracle {oracle:?}"),
        }
    }
}

#[test]
fn gadgets_survive_a_json_round_trip() {
    let mut rng = rng(SEED + 4);
    for _ in 0..20 {
        let phi = random_formula(&mut rng, 3, 4);
        for g in [
            tautology_gadget(&phi, &limits()).unwrap(),
            all_coords_gadget(&phi, &limits()).unwrap(),
            anchor_gadget(&phi, 2, 1, &limits()).unwrap(),
        ] {
            let text = serde_json::to_string(&ProblemDocument::from(&g)).unwrap();
            let doc = ProblemDocument::from_json(&text).unwrap();
            let back = GadgetInstance::try_from(&doc).unwrap();
            assert_eq!(back, g);
            let source = back.provenance.source_formula().unwrap();
            assert_eq!(truth_table(&source), truth_table(&phi));
        }
    }
}

#[test]
fn variable_caps_are_reported() {
    let phi = Formula::parse("x1 & x12").unwrap();
    let tight = Limits::default().with_max_states(1 << 10);
    assert!(matches!(
        tautology_gadget(&phi, &tight),
        Err(Error::TooManyVariables { .. })
    ));
    assert!(matches!(
        anchor_gadget(&phi, 3, 3, &limits()),
        Err(Error::SplitMismatch { .. })
    ));
}
