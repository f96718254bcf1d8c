//! Weight distributions, MacWilliams transforms, power moments, the
//! parametric three-weight solver, feasibility scans and the arithmetic
//! s-sum / SWRG conditions on weights.

mod conditions;
mod distribution;
mod moments;

pub use conditions::{
    diophantine_form, eigenvalue, odd_s_family_check, passing_s, predicted_spectrum, ssum_condition,
    symmetric_spectrum, uniqueness_guard, SpectrumEntry, UniquenessReport,
};
pub use distribution::{
    macwilliams_coefficients, macwilliams_hom, macwilliams_nonnegative, weight_distribution, WeightDistribution,
};
pub use moments::{
    exceptional_scan, feasible_triples, parity_consistent, power_moments, predict_three_weight, ExceptionalTuple, FeasibleTriple,
    PowerMoments, SumFilter, TriplePrediction,
};

use thiserror::Error;

use crate::code::CodeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("weights must be strictly increasing")]
    WeightsNotIncreasing,
    #[error("weight {weight} exceeds the maximum {max}")]
    WeightOutOfRange { weight: u32, max: u32 },
    #[error("MacWilliams coefficient B_{index} is not an integer")]
    NonIntegral { index: u32 },
    #[error("MacWilliams coefficient B_{index} is negative")]
    Negative { index: u32 },
    #[error("value does not fit in 64 bits")]
    Overflow,
    #[error("inconsistent weight distribution: {0}")]
    Inconsistent(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::code::{LinearCode, DEFAULT_BUDGET};
    use crate::tables;
    use num_rational::BigRational;
    use num_bigint::BigInt;
    use std::sync::Arc;

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn table_one_distributions() {
        let g = tables::table1_matrix("G6_1").unwrap();
        let c = LinearCode::from_rows(Ring::z4(), g).unwrap();
        let wd = weight_distribution(&c, DEFAULT_BUDGET).unwrap();
        assert_eq!(wd.entries, vec![(0, 1), (4, 6), (6, 16), (8, 9)]);
        let g = tables::table1_matrix("G7_1").unwrap();
        let c = LinearCode::from_rows(Ring::z4(), g).unwrap();
        let wd = weight_distribution(&c, DEFAULT_BUDGET).unwrap();
        assert_eq!(wd.entries, vec![(0, 1), (6, 42), (8, 7), (10, 14)]);
        let zero = LinearCode::span(Arc::new(Ring::z4()), 3, vec![]).unwrap();
        assert_eq!(weight_distribution(&zero, DEFAULT_BUDGET).unwrap().entries, vec![(0, 1)]);
    }

    #[test]
    fn macwilliams_matches_brute_force() {
        let z4 = Arc::new(Ring::z4());
        let c = LinearCode::from_rows(z4.clone(), vec![vec![1, 1]]).unwrap();
        let wd = weight_distribution(&c, DEFAULT_BUDGET).unwrap();
        assert_eq!(macwilliams_hom(&wd).unwrap(), wd);
        let full = LinearCode::from_rows(z4.clone(), vec![vec![1, 0], vec![0, 1]]).unwrap();
        let wd = weight_distribution(&full, DEFAULT_BUDGET).unwrap();
        assert_eq!(macwilliams_hom(&wd).unwrap().entries, vec![(0, 1)]);
        for name in ["G6_2", "G8_2", "G5_1"] {
            let c = LinearCode::from_rows(z4.clone(), tables::table1_matrix(name).unwrap()).unwrap();
            let wd = weight_distribution(&c, DEFAULT_BUDGET).unwrap();
            let dual = weight_distribution(&c.dual(), DEFAULT_BUDGET).unwrap();
            let mw = macwilliams_hom(&wd).unwrap();
            assert_eq!(mw, dual, "{name}");
            assert_eq!(mw.frequency(1), 0);
            assert_eq!(mw.frequency(2), 0);
            assert_eq!(macwilliams_hom(&mw).unwrap(), wd);
        }
    }

    #[test]
    fn macwilliams_rejects_inconsistent_input() {
        let wd = WeightDistribution::new(2, [(0, 1), (1, 2)]);
        assert!(macwilliams_hom(&wd).is_err());
    }

    #[test]
    fn power_moments_agree_with_dual() {
        let z4 = Arc::new(Ring::z4());
        let c = LinearCode::from_rows(z4.clone(), tables::table1_matrix("G6_1").unwrap()).unwrap();
        let wd = weight_distribution(&c, DEFAULT_BUDGET).unwrap();
        let pm = power_moments(&wd).unwrap();
        let dual = weight_distribution(&c.dual(), DEFAULT_BUDGET).unwrap();
        assert_eq!(pm.b1, r(0));
        assert_eq!(pm.b2, r(dual.frequency(2) as i64));
        assert_eq!(pm.b3, r(dual.frequency(3) as i64));
        assert_eq!(pm.b3, r(8));
        let c = LinearCode::from_rows(z4.clone(), tables::table1_matrix("G6_2").unwrap()).unwrap();
        let pm = power_moments(&weight_distribution(&c, DEFAULT_BUDGET).unwrap()).unwrap();
        assert_eq!(pm.b2, r(0));
        // the zero code: the dual is all of R^n
        let wd = WeightDistribution::new(3, [(0, 1)]);
        let pm = power_moments(&wd).unwrap();
        assert_eq!((pm.b1, pm.b2), (r(6), r(15)));
        // an exceptional tuple
        let wd = WeightDistribution::from_nonzero(29, &[24, 31, 32], &[76, 128, 51]);
        assert_eq!(power_moments(&wd).unwrap().b3, r(164));
    }

    #[test]
    fn parametric_predictions() {
        let p = predict_three_weight(6, 16, [4, 6, 8]).unwrap();
        assert_eq!(p.a_u64(), Some([6, 16, 9]));
        assert_eq!(p.b3_u64(), Some(8));
        let p = predict_three_weight(29, 128, [24, 31, 32]).unwrap();
        assert_eq!(p.a_u64(), Some([76, 128, 51]));
        assert_eq!(p.b3_u64(), Some(164));
        let p = predict_three_weight(10, 32, [8, 10, 12]).unwrap();
        assert_eq!(p.a_u64(), Some([25, 8, 30]));
        assert!(predict_three_weight(10, 32, [8, 8, 12]).is_err());
    }

    #[test]
    fn example_one_triples() {
        let got: Vec<[u64; 3]> = feasible_triples(4, None, SumFilter::Exactly(12)).into_iter().map(|t| t.w).collect();
        let mut want = vec![[3, 4, 5], [2, 4, 6], [1, 5, 6], [2, 3, 7], [1, 4, 7], [1, 3, 8]];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn feasible_examples() {
        let t = feasible_triples(6, Some(1..=12), SumFilter::ThreeN);
        let classes: Vec<u32> = t.iter().filter(|t| t.w == [4, 6, 8]).map(|t| t.class.unwrap()).collect();
        assert!(classes.contains(&5) && classes.contains(&6));
        let t = feasible_triples(2, Some(3..=3), SumFilter::ThreeN);
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].w, t[0].a), ([1, 2, 3], Some([1, 3, 3])));
        for t in feasible_triples(8, Some(1..=16), SumFilter::AtLeastThreeN) {
            let c = t.class.unwrap();
            let p = predict_three_weight(8, 1 << (c - 1), t.w).unwrap();
            assert!(p.admissible());
            if c >= 2 {
                assert_eq!((t.w[0] * t.w[1] * t.w[2]) % (1 << (c - 2)), 0);
            }
        }
    }

    #[test]
    fn odd_lengths_fail_the_parity_conditions() {
        for n in (1..50).step_by(2) {
            for t in feasible_triples(n, Some(2..=(2 * n as u32).min(40)), SumFilter::ThreeN) {
                assert_eq!(t.parity_ok, Some(false), "n={n}: {t:?}");
            }
        }
        // the Table-1 codes pass
        assert!(parity_consistent(3, [2, 4, 6], [15, 15, 1], 16));
        assert!(parity_consistent(9, [8, 10, 12], [15, 12, 4], 16));
    }

    #[test]
    fn exceptional_scan_small() {
        assert!(exceptional_scan(28).is_empty());
        let got: Vec<u64> = exceptional_scan(33).iter().map(|t| t.n).collect();
        assert_eq!(got, vec![29, 33]);
    }

    #[test]
    fn spectrum_prediction() {
        let wd = WeightDistribution::from_nonzero(6, &[4, 6, 8], &[18, 24, 21]);
        let sp = predicted_spectrum(&wd, 2, 2, 0);
        let pairs: Vec<(i64, u64)> = sp.iter().map(|e| (e.eigenvalue, e.multiplicity)).collect();
        assert_eq!(pairs, vec![(12, 1), (4, 18), (0, 24), (-4, 21)]);
        let wd = WeightDistribution::from_nonzero(7, &[6, 8, 10], &[42, 7, 14]);
        let pairs: Vec<(i64, u64)> =
            predicted_spectrum(&wd, 2, 2, 2).iter().map(|e| (e.eigenvalue, e.multiplicity)).collect();
        assert_eq!(pairs, vec![(16, 1), (4, 42), (0, 7), (-4, 14)]);
        let zero = WeightDistribution::new(3, [(0, 1)]);
        assert_eq!(predicted_spectrum(&zero, 2, 2, 5)[0].eigenvalue, 5 + 6);
    }

    #[test]
    fn ssum_examples() {
        assert!(ssum_condition(12, 2, 2, 0, 5, [11, 12, 13]).unwrap());
        assert!(!ssum_condition(12, 2, 2, 0, 5, [10, 11, 15]).unwrap());
        assert!(ssum_condition(7, 2, 2, 2, 3, [6, 8, 10]).unwrap());
        assert!(ssum_condition(7, 2, 2, 2, 3, [6, 8, 8]).is_err());
        assert!(odd_s_family_check(6, 2, 2, [4, 6, 8]));
        assert!(!odd_s_family_check(7, 2, 2, [6, 8, 10]));
        assert!(odd_s_family_check(12, 2, 2, [11, 12, 13]));
    }

    #[test]
    fn s3_matches_weight_sum_rule() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for q in [2u64, 3] {
            for e in [1u32, 2, 3] {
                for _ in 0..300 {
                    let n = rng.gen_range(1..20u64);
                    let top = n * q.pow(e - 1);
                    if top < 3 {
                        continue;
                    }
                    let mut w = [0u64; 3];
                    loop {
                        for x in w.iter_mut() {
                            *x = rng.gen_range(1..=top);
                        }
                        w.sort();
                        if w[0] < w[1] && w[1] < w[2] {
                            break;
                        }
                    }
                    let s = w.iter().sum::<u64>();
                    let b0 = ssum_condition(n, q, e, 0, 3, w).unwrap();
                    // S·q = 3 n (q-1) q^(e-1)
                    assert_eq!(b0, s * q == 3 * n * (q - 1) * q.pow(e - 1));
                    let b1 = ssum_condition(n, q, e, 1, 3, w).unwrap();
                    assert_eq!(b1, s * q == 3 * (1 + n * (q - 1) * q.pow(e - 1)));
                }
            }
        }
    }

    #[test]
    fn diophantine_form_is_homogeneous() {
        for theta in [[4, 0, -4], [7, 2, -3], [9, -1, -5]] {
            for s in 2..8u32 {
                let base = diophantine_form(theta, s);
                for k in [2i64, 3, 5] {
                    let scaled = diophantine_form(theta.map(|t| t * k), s);
                    assert_eq!(scaled, base.clone() * BigInt::from(k).pow(s + 1));
                }
            }
        }
    }

    #[test]
    fn uniqueness() {
        let rep = uniqueness_guard(6, 2, 2, 0, [4, 6, 8], 15);
        assert!(rep.symmetric && rep.consistent);
        let rep = uniqueness_guard(12, 2, 2, 0, [10, 11, 15], 15);
        assert!(!rep.symmetric && rep.consistent);
    }
}
