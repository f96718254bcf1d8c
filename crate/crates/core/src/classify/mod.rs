//! Exhaustive classification of three-weight codes with `d⊥ >= 3` over the
//! order-4 chain rings `Z4` and `F2 + uF2`.
//!
//! A code of shape `(k1, k2)` is a set of `n` regular points of
//! `R^k1 ⊕ (γR)^k2` up to unit multiples. After row operations its point set
//! contains the `k1` points `(e_i, 0)` and `k2` points `(a_j, γe_j)` with
//! `a_j` a nonzero binary vector, which may be taken nondecreasing. The
//! remaining points are chosen in increasing order, and a partial choice is
//! cut as soon as some message's partial weight `P` has no target in
//! `[P, P + 2r]` with `r` points still to place.

mod invariant;
mod points;
mod report;
mod search;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::code::CodeError;
use crate::spectral::SpectralError;

pub use invariant::canonical_invariant;
pub use points::{projective_points, projective_points_free, ProjectivePoint, MAX_MESSAGES};
pub use report::{run_table, ShapeResult, TableId, TableReport};
pub use search::{
    brute_force_search, search, search_with, witness_invariants, ClassificationRecord, Mode, RingChoice, SearchSpec,
    Status, SubtreeRecord, Witness, BATCH, DEFAULT_NODE_BUDGET,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("classification needs an order-4 chain ring, got {0}")]
    UnsupportedRing(String),
    #[error("shape ({k1}, {k2}) is too large to enumerate")]
    TooLarge { k1: usize, k2: usize },
    #[error("shape {0:?} needs k1 >= 1")]
    BadShape((u32, u32)),
    #[error("infeasible target: {0}")]
    Infeasible(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn spec(ring: RingChoice, n: usize, shape: (u32, u32), w: [u32; 3], mode: Mode) -> SearchSpec {
        SearchSpec { ring, n, shape, w, a: None, mode, budget_nodes: DEFAULT_NODE_BUDGET }
    }

    #[test]
    fn finds_small_codes() {
        let r = search(&spec(RingChoice::Z4, 3, (2, 1), [2, 4, 6], Mode::Decide)).unwrap();
        assert_eq!(r.status, Status::Realized);
        assert!(r.witnesses[0].verified);
        let r = search(&spec(RingChoice::Z4, 3, (1, 3), [2, 4, 6], Mode::Exhaust)).unwrap();
        assert_eq!(r.status, Status::Empty);
        let r = search(&spec(RingChoice::Z4, 7, (3, 0), [6, 8, 10], Mode::Decide)).unwrap();
        assert_eq!(r.status, Status::Realized);
        let r = search(&spec(RingChoice::F2u, 7, (3, 0), [6, 8, 10], Mode::Exhaust)).unwrap();
        assert_eq!(r.status, Status::Empty);
    }

    #[test]
    fn infeasible_targets_are_rejected() {
        assert!(matches!(
            search(&spec(RingChoice::Z4, 5, (2, 1), [2, 3, 4], Mode::Decide)),
            Err(ClassifyError::Infeasible(_))
        ));
        let mut s = spec(RingChoice::Z4, 3, (2, 1), [2, 4, 6], Mode::Decide);
        s.a = Some([15, 15, 2]);
        assert!(search(&s).is_err());
        assert!(matches!(search(&spec(RingChoice::Z4, 3, (0, 5), [2, 4, 6], Mode::Decide)), Err(ClassifyError::BadShape(_))));
    }

    #[test]
    fn budget_gives_undecided_and_resume_completes() {
        let mut s = spec(RingChoice::Z4, 6, (3, 0), [4, 6, 8], Mode::Exhaust);
        let full = search(&s).unwrap();
        assert_eq!(full.status, Status::Realized);
        s.budget_nodes = 5;
        let mut saved = HashMap::new();
        let part = search_with(&s, &HashMap::new(), &mut |r| {
            saved.insert(r.index, r.clone());
        })
        .unwrap();
        assert_ne!(part.subtrees_done, part.subtrees);
        s.budget_nodes = DEFAULT_NODE_BUDGET;
        let mut fresh = 0;
        let resumed = search_with(&s, &saved, &mut |_| fresh += 1).unwrap();
        assert_eq!(fresh + saved.len(), resumed.subtrees);
        let mut a = resumed.clone();
        a.elapsed_ms = 0;
        let mut b = full.clone();
        b.elapsed_ms = 0;
        assert_eq!(a, b);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let s = spec(RingChoice::Z4, 8, (2, 1), [4, 8, 12], Mode::Exhaust);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| search(&s).unwrap());
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| search(&s).unwrap());
        assert!(one.same_outcome(&four));
        assert_eq!(one.status, Status::Realized);
    }

    #[test]
    fn budget_cut_is_deterministic_across_thread_counts() {
        let mut s = spec(RingChoice::Z4, 8, (2, 1), [4, 8, 12], Mode::Exhaust);
        s.budget_nodes = 50;
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| search(&s).unwrap());
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| search(&s).unwrap());
        assert!(one.same_outcome(&four));
        assert_eq!(one.status, Status::Undecided);
        assert!(one.nodes <= s.budget_nodes);
    }

    #[test]
    fn exhaust_finds_kerdock_and_table_code() {
        use crate::algebra::Ring;
        use crate::code::{LinearCode, DEFAULT_BUDGET};
        let s = spec(RingChoice::Z4, 7, (3, 0), [6, 8, 10], Mode::Exhaust);
        let found = witness_invariants(&search(&s).unwrap());
        let g = LinearCode::from_rows(Ring::z4(), crate::tables::table1_matrix("G7_1").unwrap()).unwrap();
        let k = crate::families::kerdock(3).unwrap().k_minus;
        let (gi, ki) = (canonical_invariant(&g, DEFAULT_BUDGET).unwrap(), canonical_invariant(&k, DEFAULT_BUDGET).unwrap());
        assert!(found.contains(&gi) && found.contains(&ki));
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        use crate::spectral::{feasible_triples, SumFilter};
        let mut compared = 0;
        for ring in [RingChoice::Z4, RingChoice::F2u] {
            for n in 2..=5u64 {
                for (k1, k2) in [(1u32, 1u32), (2, 0), (1, 2), (2, 1), (1, 3)] {
                    if k1 + k2 > 3 || n < (k1 + k2) as u64 {
                        continue;
                    }
                    let class = 2 * k1 + k2;
                    for t in feasible_triples(n, Some(class..=class), SumFilter::Any) {
                        let w = t.w.map(|x| x as u32);
                        let s = spec(ring, n as usize, (k1, k2), w, Mode::Exhaust);
                        let Ok(rec) = search(&s) else { continue };
                        let brute = brute_force_search(&s).unwrap();
                        assert_eq!(witness_invariants(&rec), brute, "{ring:?} n={n} {k1},{k2} {w:?}");
                        compared += 1;
                    }
                }
            }
        }
        assert!(compared > 10, "{compared}");
    }
}
