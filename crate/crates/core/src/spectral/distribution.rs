use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::SpectralError;
use crate::code::LinearCode;

/// Homogeneous weight distribution: sorted `(weight, frequency)` pairs,
/// including `(0, 1)` for the zero word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    pub n: usize,
    pub entries: Vec<(u32, u64)>,
    /// Rational factor `(num, den)` by which printed weights differ from the
    /// internal normalization; `(1, 1)` unless a caller records otherwise.
    pub scale: (u64, u64),
}

impl WeightDistribution {
    pub fn new(n: usize, entries: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut map: BTreeMap<u32, u64> = BTreeMap::new();
        for (w, a) in entries {
            *map.entry(w).or_default() += a;
        }
        WeightDistribution { n, entries: map.into_iter().filter(|&(_, a)| a > 0).collect(), scale: (1, 1) }
    }

    /// `{0: 1, w_1: A_1, …}` from nonzero weights and frequencies.
    pub fn from_nonzero(n: usize, weights: &[u32], freqs: &[u64]) -> Self {
        Self::new(n, std::iter::once((0, 1)).chain(weights.iter().copied().zip(freqs.iter().copied())))
    }

    pub fn code_size(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn frequency(&self, w: u32) -> u64 {
        self.entries.iter().find(|e| e.0 == w).map_or(0, |e| e.1)
    }

    /// Nonzero weights in increasing order.
    pub fn nonzero_weights(&self) -> Vec<u32> {
        self.entries.iter().filter(|e| e.0 > 0).map(|e| e.0).collect()
    }

    pub fn nonzero_frequencies(&self) -> Vec<u64> {
        self.entries.iter().filter(|e| e.0 > 0).map(|e| e.1).collect()
    }

    /// Exactly three nonzero weights occur.
    pub fn is_three_weight(&self) -> bool {
        self.nonzero_weights().len() == 3
    }

    pub fn min_nonzero_weight(&self) -> Option<u32> {
        self.nonzero_weights().first().copied()
    }
}

/// Exact homogeneous weight distribution by enumeration.
pub fn weight_distribution(code: &LinearCode, budget: u128) -> Result<WeightDistribution, SpectralError> {
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    code.for_each_codeword(budget, |w| *counts.entry(code.weight(w)).or_default() += 1)?;
    Ok(WeightDistribution::new(code.len(), counts))
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut c = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = BigInt::from(1);
        for j in 1..=i {
            c[i][j] = &c[i - 1][j - 1] + &c[i - 1][j];
        }
    }
    c
}

/// Krawtchouk polynomial `K_j(i)` for length `big_n`.
fn krawtchouk(binom: &[Vec<BigInt>], big_n: usize, j: usize, i: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for h in 0..=j.min(i) {
        if j - h > big_n - i {
            continue;
        }
        let term = &binom[i][h] * &binom[big_n - i][j - h];
        if h % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `B_j = (1/|C|) Σ_i A_i K_j(i)` over the binary image of length `2n`, as
/// exact integers (possibly negative), for `j = 0..=2n`.
pub fn macwilliams_coefficients(wd: &WeightDistribution) -> Result<Vec<BigInt>, SpectralError> {
    let big_n = 2 * wd.n;
    if let Some(&(w, _)) = wd.entries.iter().find(|e| e.0 as usize > big_n) {
        return Err(SpectralError::WeightOutOfRange { weight: w, max: big_n as u32 });
    }
    let binom = binomials(big_n);
    let size = BigInt::from(wd.code_size());
    (0..=big_n)
        .map(|j| {
            let mut total = BigInt::zero();
            for &(w, a) in &wd.entries {
                total += BigInt::from(a) * krawtchouk(&binom, big_n, j, w as usize);
            }
            let (q, r) = total.div_rem(&size);
            if !r.is_zero() {
                return Err(SpectralError::NonIntegral { index: j as u32 });
            }
            Ok(q)
        })
        .collect()
}

/// Dual weight distribution over `Z_4` or `F_2 + uF_2`, where homogeneous
/// weight equals the Hamming weight of the Gray image.
pub fn macwilliams_hom(wd: &WeightDistribution) -> Result<WeightDistribution, SpectralError> {
    let coeffs = macwilliams_coefficients(wd)?;
    let mut entries = Vec::new();
    for (j, b) in coeffs.iter().enumerate() {
        if b.is_negative() {
            return Err(SpectralError::Negative { index: j as u32 });
        }
        if !b.is_zero() {
            entries.push((j as u32, b.to_u64().ok_or(SpectralError::Overflow)?));
        }
    }
    Ok(WeightDistribution::new(wd.n, entries))
}

/// All MacWilliams coefficients are non-negative integers.
pub fn macwilliams_nonnegative(wd: &WeightDistribution) -> bool {
    macwilliams_coefficients(wd).map_or(false, |c| c.iter().all(|b| !b.is_negative()))
}
