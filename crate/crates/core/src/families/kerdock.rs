use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use super::FamilyError;
use crate::algebra::{Elem, GaloisTrace, Ring};
use crate::code::{gray_preimage, gray_word, LinearCode, DEFAULT_BUDGET};
use crate::graph::{syndrome_graph, CayleyGraph};
use crate::spectral::{weight_distribution, WeightDistribution};

/// The Kerdock code `K` of length `2^s` and its cyclic relative `K⁻` of
/// length `2^s - 1`, both over `Z4`.
#[derive(Clone, Debug)]
pub struct KerdockInstance {
    pub s: u32,
    pub galois: Ring,
    /// `{(Tr(λξ^t))_{t < 2^s - 1} : λ ∈ GR(4, s)}`.
    pub k_minus: LinearCode,
    /// `Q = {(Tr(λx))_{x ∈ T} : λ ∈ GR(4, s)}` over the Teichmüller set `T`.
    pub q_code: LinearCode,
    /// `K = Z4·j ⊕ Q`.
    pub k_full: LinearCode,
    pub wd_minus: WeightDistribution,
    pub wd_full: WeightDistribution,
}

impl KerdockInstance {
    pub fn n(&self) -> usize {
        self.k_minus.len()
    }

    /// `2^s - 2^((s-1)/2), 2^s, 2^s + 2^((s-1)/2)`.
    pub fn expected_weights(&self) -> [u32; 3] {
        let (c, d) = (1u32 << self.s, 1u32 << ((self.s - 1) / 2));
        [c - d, c, c + d]
    }

    /// Syndrome graph with the generator matrix of `K⁻` as check matrix.
    pub fn syndrome_graph(&self, b: u32) -> Result<CayleyGraph, FamilyError> {
        Ok(syndrome_graph(self.k_minus.ring_arc().clone(), self.k_minus.rows(), b)?)
    }
}

/// Build `K⁻` as a trace code (cyclic by construction) and `K` from `Q`.
pub fn kerdock(s: u32) -> Result<KerdockInstance, FamilyError> {
    if s % 2 == 0 || !(3..=7).contains(&s) {
        return Err(FamilyError::BadParameters(format!("Kerdock needs odd 3 <= s <= 7, got {s}")));
    }
    let gr = Ring::gr4(s)?;
    let gt = GaloisTrace::new(&gr)?;
    let t = gt.teichmuller_set();
    let period = t.len() - 1;
    let basis: Vec<Elem> = (0..s).map(|i| gr.pow(gt.xi(), i as u64)).collect();
    let z4 = Arc::new(Ring::z4());
    let minus_rows: Vec<Vec<Elem>> = basis
        .iter()
        .map(|&l| (0..period).map(|k| gt.trace(&gr, gr.mul(l, t[1 + k])) as Elem).collect())
        .collect();
    let q_rows: Vec<Vec<Elem>> =
        basis.iter().map(|&l| t.iter().map(|&x| gt.trace(&gr, gr.mul(l, x)) as Elem).collect()).collect();
    let mut full_rows = vec![vec![1; t.len()]];
    full_rows.extend(q_rows.iter().cloned());
    let k_minus = LinearCode::from_rows(z4.clone(), minus_rows)?;
    let q_code = LinearCode::span(z4.clone(), t.len(), q_rows)?;
    let k_full = LinearCode::from_rows(z4, full_rows)?;
    let budget = DEFAULT_BUDGET;
    Ok(KerdockInstance {
        s,
        wd_minus: weight_distribution(&k_minus, budget)?,
        wd_full: weight_distribution(&k_full, budget)?,
        galois: gr,
        k_minus,
        q_code,
        k_full,
    })
}

/// Two codewords whose Gray images sum outside the Gray image of the code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrayWitness {
    pub a: Vec<Elem>,
    pub b: Vec<Elem>,
    /// `φ(a) + φ(b)` over `F_2`.
    pub image_sum: Vec<u8>,
}

impl GrayWitness {
    /// Re-encode: `a, b` are codewords and the preimage of the binary sum is not.
    pub fn revalidate(&self, code: &LinearCode) -> bool {
        let ring = code.ring();
        let fresh: Option<Vec<u8>> = (|| {
            let (ga, gb) = (gray_word(ring, &self.a).ok()?, gray_word(ring, &self.b).ok()?);
            Some(ga.iter().zip(&gb).map(|(x, y)| x ^ y).collect())
        })();
        fresh.as_ref() == Some(&self.image_sum)
            && code.contains(&self.a)
            && code.contains(&self.b)
            && gray_preimage(ring, &self.image_sum).map_or(false, |w| !code.contains(&w))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrayScan {
    /// Ordered pairs examined, `|C|^2`.
    pub pairs: u64,
    /// Pairs whose binary sum leaves the image.
    pub failing_pairs: u64,
    pub witness: Option<GrayWitness>,
}

impl GrayScan {
    pub fn image_is_linear(&self) -> bool {
        self.failing_pairs == 0
    }
}

/// Test closure of the Gray image under binary addition over all pairs.
pub fn gray_closure_scan(code: &LinearCode, budget: u128) -> Result<GrayScan, FamilyError> {
    let ring = code.ring();
    let words = code.codewords(budget)?;
    let images: Vec<Vec<u8>> = words.iter().map(|w| gray_word(ring, w)).collect::<Result<_, _>>()?;
    let set: HashSet<&[u8]> = images.iter().map(|w| w.as_slice()).collect();
    let mut failing = 0u64;
    let mut witness = None;
    let mut sum = Vec::new();
    for (i, a) in images.iter().enumerate() {
        for (j, b) in images.iter().enumerate() {
            sum.clear();
            sum.extend(a.iter().zip(b).map(|(x, y)| x ^ y));
            if !set.contains(sum.as_slice()) {
                failing += 1;
                if witness.is_none() {
                    witness = Some(GrayWitness { a: words[i].clone(), b: words[j].clone(), image_sum: sum.clone() });
                }
            }
        }
    }
    Ok(GrayScan { pairs: (images.len() as u64).pow(2), failing_pairs: failing, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_swrg;

    #[test]
    fn kerdock_three() {
        let k = kerdock(3).unwrap();
        assert_eq!(k.n(), 7);
        assert_eq!(k.wd_minus.entries, vec![(0, 1), (6, 42), (8, 7), (10, 14)]);
        assert_eq!(k.k_minus.shape2(), (3, 0));
        assert_eq!(k.k_minus.size(), 64);
        assert!(k.k_minus.is_projective() && k.k_minus.is_regular());
        assert_eq!(k.expected_weights().iter().sum::<u32>(), 3 * 8);
        // K = Z4 j ⊕ Q with Q free of size 4^s
        assert_eq!(k.q_code.shape2(), (3, 0));
        assert_eq!(k.k_full.size(), 256);
        assert_eq!(k.k_full.len(), 8);
    }

    #[test]
    fn kerdock_minus_is_cyclic() {
        let k = kerdock(3).unwrap();
        for row in k.k_minus.rows() {
            let mut shifted = row.clone();
            shifted.rotate_right(1);
            assert!(k.k_minus.contains(&shifted));
        }
    }

    #[test]
    fn kerdock_five_weights() {
        let k = kerdock(5).unwrap();
        assert_eq!(k.wd_minus.nonzero_weights(), vec![28, 32, 36]);
        assert_eq!(k.k_minus.size(), 1024);
    }

    #[test]
    fn kerdock_graph_and_gray() {
        let k = kerdock(3).unwrap();
        let g = k.syndrome_graph(2).unwrap();
        assert_eq!(g.vertex_count(), 64);
        assert!(is_swrg(&g, 3).unwrap().holds());
        assert!(!is_swrg(&k.syndrome_graph(0).unwrap(), 3).unwrap().holds());
        let scan = gray_closure_scan(&k.k_minus, DEFAULT_BUDGET).unwrap();
        assert_eq!(scan.pairs, 4096);
        assert!(!scan.image_is_linear());
        assert!(scan.witness.unwrap().revalidate(&k.k_minus));
    }

    #[test]
    fn linear_gray_image_has_no_witness() {
        // {0, 2}^n maps to a linear binary code
        let c = LinearCode::from_rows(Ring::z4(), vec![vec![2, 0], vec![0, 2]]).unwrap();
        let scan = gray_closure_scan(&c, DEFAULT_BUDGET).unwrap();
        assert!(scan.image_is_linear() && scan.witness.is_none());
    }

    #[test]
    fn rejects_bad_s() {
        assert!(kerdock(4).is_err());
        assert!(kerdock(1).is_err());
        assert!(kerdock(9).is_err());
    }
}
