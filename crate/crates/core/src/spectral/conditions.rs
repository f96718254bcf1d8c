use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{SpectralError, WeightDistribution};

/// Eigenvalue attached to weight `w`: `b + n(q-1)q^(e-1) - q·w`.
pub fn eigenvalue(n: u64, q: u64, e: u32, b: i64, w: u64) -> i64 {
    b + (n * (q - 1) * q.pow(e - 1)) as i64 - (q * w) as i64
}

/// One eigenvalue of the loop-augmented coset graph with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub eigenvalue: i64,
    pub multiplicity: u64,
}

/// Spectrum of `Γ(C^⊥)` with `b` loops per vertex predicted from the weight
/// distribution of `C`, in decreasing eigenvalue order.
pub fn predicted_spectrum(wd: &WeightDistribution, q: u64, e: u32, b: i64) -> Vec<SpectrumEntry> {
    let mut out: Vec<SpectrumEntry> = wd
        .entries
        .iter()
        .map(|&(w, a)| SpectrumEntry { eigenvalue: eigenvalue(wd.n as u64, q, e, b, w as u64), multiplicity: a })
        .collect();
    out.sort_by(|x, y| y.eigenvalue.cmp(&x.eigenvalue));
    out
}

/// `(θ2-θ3)θ1^s + (θ3-θ1)θ2^s + (θ1-θ2)θ3^s` in exact arithmetic.
pub fn diophantine_form(theta: [i64; 3], s: u32) -> BigInt {
    let t: Vec<BigInt> = theta.iter().map(|&x| BigInt::from(x)).collect();
    (&t[1] - &t[2]) * t[0].pow(s) + (&t[2] - &t[0]) * t[1].pow(s) + (&t[0] - &t[1]) * t[2].pow(s)
}

/// Arithmetic s-sum (equivalently s-SWRG with `b` loops) condition for a
/// three-weight code with nonzero weights `w`.
pub fn ssum_condition(n: u64, q: u64, e: u32, b: i64, s: u32, w: [u64; 3]) -> Result<bool, SpectralError> {
    if !(w[0] < w[1] && w[1] < w[2]) {
        return Err(SpectralError::WeightsNotIncreasing);
    }
    if s < 2 {
        return Err(SpectralError::Inconsistent("s must be at least 2".into()));
    }
    let theta = w.map(|x| eigenvalue(n, q, e, b, x));
    Ok(diophantine_form(theta, s).is_zero())
}

/// `w2 = n(q-1)q^(e-2)` and `w1 + w3 = 2·w2`: the shape for which the
/// condition holds at every odd `s`.
pub fn odd_s_family_check(n: u64, q: u64, e: u32, w: [u64; 3]) -> bool {
    if e < 2 {
        return false;
    }
    let mid = n * (q - 1) * q.pow(e - 2);
    w[1] == mid && w[0] + w[2] == 2 * mid
}

/// The values of `s` in `range` at which [`ssum_condition`] holds.
pub fn passing_s(n: u64, q: u64, e: u32, b: i64, w: [u64; 3], range: std::ops::RangeInclusive<u32>) -> Vec<u32> {
    range.filter(|&s| ssum_condition(n, q, e, b, s, w).unwrap_or(false)).collect()
}

/// `θ2 = 0` and `θ1 = -θ3`: the loop-shifted form of [`odd_s_family_check`]
/// (they agree at `b = 0`). The condition then holds for every odd `s`.
pub fn symmetric_spectrum(n: u64, q: u64, e: u32, b: i64, w: [u64; 3]) -> bool {
    let t = w.map(|x| eigenvalue(n, q, e, b, x));
    t[1] == 0 && t[0] == -t[2]
}

/// Report of the uniqueness guard over `s in 2..=s_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub symmetric: bool,
    pub passing: Vec<u32>,
    /// Symmetric triples pass every odd `s`; any other triple passes at most once.
    pub consistent: bool,
}

pub fn uniqueness_guard(n: u64, q: u64, e: u32, b: i64, w: [u64; 3], s_max: u32) -> UniquenessReport {
    let symmetric = symmetric_spectrum(n, q, e, b, w);
    let passing = passing_s(n, q, e, b, w, 2..=s_max);
    let consistent = if symmetric {
        (3..=s_max).step_by(2).all(|s| passing.contains(&s))
    } else {
        passing.len() <= 1
    };
    UniquenessReport { symmetric, passing, consistent }
}
