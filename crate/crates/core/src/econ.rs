//! Cost arithmetic for expressive gaps and hardness placement.
//!
//! All quantities are exact; asymptotic cost statements are instantiated
//! with caller-supplied unit costs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::CoordSet;
use crate::rational::Rational;

/// Required axes `R(P)` and natively handled axes `A(M)` over a shared
/// universe `0..universe`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EconModel {
    universe: usize,
    required: CoordSet,
    native: CoordSet,
}

impl EconModel {
    pub fn new(universe: usize, required: CoordSet, native: CoordSet) -> Result<Self> {
        for (name, set) in [("required", &required), ("native", &native)] {
            if let Some(i) = set.max().filter(|&i| i >= universe) {
                return Err(Error::UniverseMismatch(format!(
                    "{name} axis {i} outside universe of size {universe}"
                )));
            }
        }
        Ok(EconModel {
            universe,
            required,
            native,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn required(&self) -> &CoordSet {
        &self.required
    }

    pub fn native(&self) -> &CoordSet {
        &self.native
    }

    /// `R(P) \ A(M)`.
    pub fn gap(&self) -> CoordSet {
        self.required.difference(&self.native)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapReport {
    pub gap: CoordSet,
    pub tax: usize,
    pub handled_natively: usize,
    pub conservation_holds: bool,
}

/// The expressive gap, its size, and the conservation identity
/// `|gap| + |R ∩ A| = |R|`.
pub fn gap_report(m: &EconModel) -> GapReport {
    let gap = m.gap();
    let handled = m.required.intersection(&m.native).len();
    GapReport {
        tax: gap.len(),
        handled_natively: handled,
        conservation_holds: gap.len() + handled == m.required.len(),
        gap,
    }
}

/// `n · |gap|`: external work across `sites` decision sites.
pub fn total_external_work(m: &EconModel, sites: u64) -> Result<u64> {
    sites
        .checked_mul(m.gap().len() as u64)
        .ok_or_else(|| Error::Overflow(format!("{sites} sites × gap")))
}

/// `n* = H_central / |gap|`; beyond it the complete model is cheaper.
pub fn amortization_threshold(h_central: Rational, m: &EconModel) -> Result<Rational> {
    let gap = m.gap().len();
    if gap == 0 {
        return Err(Error::ZeroGap);
    }
    h_central
        .checked_div(&Rational::integer(gap as i64))
        .ok_or_else(|| Error::Overflow("threshold".into()))
}

/// One-time versus per-site hardness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HardnessSplit {
    h_central: Rational,
    h_distributed: Rational,
}

impl HardnessSplit {
    pub fn new(h_central: Rational, h_distributed: Rational) -> Result<Self> {
        if h_central.is_negative() || h_distributed.is_negative() {
            return Err(Error::InvalidProblem(
                "hardness components must be nonnegative".into(),
            ));
        }
        Ok(HardnessSplit {
            h_central,
            h_distributed,
        })
    }

    pub fn h_central(&self) -> Rational {
        self.h_central
    }

    pub fn h_distributed(&self) -> Rational {
        self.h_distributed
    }

    /// `H_central + n · H_distributed`.
    pub fn total(&self, sites: u64) -> Result<Rational> {
        let n = site_count(sites)?;
        self.h_distributed
            .checked_mul(&n)
            .and_then(|d| d.checked_add(&self.h_central))
            .ok_or_else(|| Error::Overflow("total hardness".into()))
    }
}

fn site_count(sites: u64) -> Result<Rational> {
    i64::try_from(sites)
        .map(Rational::integer)
        .map_err(|_| Error::Overflow(format!("{sites} sites")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HardnessReport {
    pub h_total: Rational,
    pub eta: Rational,
}

/// Total realized hardness and the centralized fraction
/// `η = H_central / H_total`.
pub fn hardness_report(s: &HardnessSplit, sites: u64) -> Result<HardnessReport> {
    let h_total = s.total(sites)?;
    if h_total.is_zero() {
        return Err(Error::DegenerateSplit);
    }
    Ok(HardnessReport {
        h_total,
        eta: s.h_central / h_total,
    })
}

/// Whether `a` realizes strictly less total hardness than `b` at `sites`.
pub fn lower_total(a: &HardnessSplit, b: &HardnessSplit, sites: u64) -> Result<bool> {
    Ok(a.total(sites)? < b.total(sites)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverModelParams {
    /// Parameter count.
    pub n: u32,
    /// Extra parameters kept beyond the minimum.
    pub k: u64,
    pub c_over_per_param: Rational,
    pub c_under: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OverModelReport {
    pub c_over: Rational,
    pub c_find_brute: u64,
    pub over_modeling_wins: bool,
}

/// Maintenance of `k` extra parameters against exhaustive subset search:
/// `c_over = k · c_over_per_param`, `c_find = 2^n`, and over-modeling wins
/// when `c_over < c_find + c_under`.
pub fn overmodeling_comparison(p: &OverModelParams) -> Result<OverModelReport> {
    if p.n > 62 {
        return Err(Error::Overflow(format!("2^{} subsets", p.n)));
    }
    if p.c_over_per_param.is_negative() || p.c_under.is_negative() {
        return Err(Error::InvalidProblem("costs must be nonnegative".into()));
    }
    let c_find_brute = 1u64 << p.n;
    let overflow = || Error::Overflow("cost comparison".into());
    let k = i64::try_from(p.k).map_err(|_| overflow())?;
    let c_over = p
        .c_over_per_param
        .checked_mul(&Rational::integer(k))
        .ok_or_else(overflow)?;
    let find_plus_under = Rational::integer(c_find_brute as i64)
        .checked_add(&p.c_under)
        .ok_or_else(overflow)?;
    Ok(OverModelReport {
        c_over,
        c_find_brute,
        over_modeling_wins: c_over < find_plus_under,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> CoordSet {
        CoordSet::from(v.to_vec())
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn gap_examples() {
        let m = EconModel::new(3, set(&[0, 1, 2]), set(&[1])).unwrap();
        let g = gap_report(&m);
        assert_eq!(g.gap, set(&[0, 2]));
        assert_eq!(g.tax, 2);
        assert_eq!(g.handled_natively, 1);
        assert!(g.conservation_holds);

        let empty = EconModel::new(3, set(&[]), set(&[1])).unwrap();
        assert_eq!(gap_report(&empty).tax, 0);
        assert!(matches!(
            EconModel::new(2, set(&[2]), set(&[])),
            Err(Error::UniverseMismatch(_))
        ));
    }

    #[test]
    fn work_and_threshold() {
        let m = EconModel::new(4, set(&[0, 1, 2]), set(&[1])).unwrap();
        assert_eq!(total_external_work(&m, 4).unwrap(), 8);
        let none = EconModel::new(4, set(&[1]), set(&[1])).unwrap();
        assert_eq!(total_external_work(&none, 1000).unwrap(), 0);

        assert_eq!(amortization_threshold(r(10, 1), &m).unwrap(), r(5, 1));
        let three = EconModel::new(3, set(&[0, 1, 2]), set(&[])).unwrap();
        let t = amortization_threshold(r(7, 1), &three).unwrap();
        assert_eq!(t, r(7, 3));
        assert!(r(7, 1) < r(3 * 3, 1));
        assert_eq!(amortization_threshold(r(10, 1), &none), Err(Error::ZeroGap));
    }

    #[test]
    fn hardness_examples() {
        let s = HardnessSplit::new(r(10, 1), r(1, 1)).unwrap();
        let h = hardness_report(&s, 10).unwrap();
        assert_eq!(h.h_total, r(20, 1));
        assert_eq!(h.eta, r(1, 2));

        let central = HardnessSplit::new(r(3, 1), r(0, 1)).unwrap();
        for n in [0, 1, 17] {
            assert_eq!(hardness_report(&central, n).unwrap().eta, r(1, 1));
        }

        let worse = HardnessSplit::new(r(10, 1), r(3, 1)).unwrap();
        assert_eq!(s.total(5).unwrap(), r(15, 1));
        assert_eq!(worse.total(5).unwrap(), r(25, 1));
        assert!(lower_total(&s, &worse, 5).unwrap());

        let zero = HardnessSplit::new(r(0, 1), r(4, 1)).unwrap();
        assert_eq!(hardness_report(&zero, 0), Err(Error::DegenerateSplit));
        assert!(HardnessSplit::new(r(-1, 1), r(0, 1)).is_err());
    }

    #[test]
    fn overmodeling_examples() {
        let p = |n, k, c, u| OverModelParams {
            n,
            k,
            c_over_per_param: r(c, 1),
            c_under: r(u, 1),
        };
        assert_eq!(
            overmodeling_comparison(&p(20, 0, 1, 0))
                .unwrap()
                .c_find_brute,
            1_048_576
        );
        let empty = overmodeling_comparison(&p(0, 0, 1, 0)).unwrap();
        assert_eq!(empty.c_over, r(0, 1));
        assert_eq!(empty.c_find_brute, 1);
        let worked = overmodeling_comparison(&p(20, 5, 1, 0)).unwrap();
        assert_eq!(worked.c_over, r(5, 1));
        assert!(worked.over_modeling_wins);
        assert!(
            !overmodeling_comparison(&p(2, 10, 1, 0))
                .unwrap()
                .over_modeling_wins
        );
        assert!(matches!(
            overmodeling_comparison(&p(63, 0, 1, 0)),
            Err(Error::Overflow(_))
        ));
    }

    proptest! {
        #[test]
        fn work_grows_by_gap(req in 0u64..256, nat in 0u64..256, n in 0u64..10_000) {
            let m = EconModel::new(8, CoordSet::from_mask(req, 8), CoordSet::from_mask(nat, 8)).unwrap();
            let step = total_external_work(&m, n + 1).unwrap() - total_external_work(&m, n).unwrap();
            prop_assert_eq!(step, m.gap().len() as u64);
        }

        #[test]
        fn lower_distributed_hardness_dominates(c in 0i64..100, d1 in 0i64..50, d2 in 0i64..50, n in 1u64..100) {
            prop_assume!(d1 < d2);
            let a = HardnessSplit::new(r(c, 1), r(d1, 1)).unwrap();
            let b = HardnessSplit::new(r(c, 1), r(d2, 1)).unwrap();
            prop_assert!(lower_total(&a, &b, n).unwrap());
        }
    }
}
