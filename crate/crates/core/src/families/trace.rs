use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::FamilyError;
use crate::algebra::{fqu_trace, Elem, Ring};
use crate::code::{LinearCode, DEFAULT_BUDGET};
use crate::graph::{ssum_set_check, unit_expansion, SsumResult};
use crate::spectral::{weight_distribution, WeightDistribution};

/// The trace code `C(m, p)` over `F_p + uF_p` and its reductions.
#[derive(Clone, Debug)]
pub struct TraceCodeInstance {
    pub p: u32,
    pub m: u32,
    /// `{(Tr(ax))_{x ∈ L} : a ∈ F_{p^m} + uF_{p^m}}`, `L = Q + uF_{p^m}`.
    pub c: LinearCode,
    /// `C` with columns deduplicated up to `F_p^×`.
    pub p_code: LinearCode,
    /// Multiplicity of each `F_p^×` column class in `C`.
    pub replication: u32,
    /// `C` with columns deduplicated up to all units of `F_p + uF_p`.
    pub associate_code: LinearCode,
    pub associate_replication: u32,
    pub wd_c: WeightDistribution,
    pub wd_p: WeightDistribution,
    pub wd_associate: WeightDistribution,
}

/// Weight data of one code in the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceWeights {
    pub n: usize,
    pub weights: Vec<u32>,
    pub frequencies: Vec<u64>,
    pub weight_sum: u64,
    /// `3(1 - 1/p) n` as `(num, den)`.
    pub target_sum: (u64, u64),
    pub projective: bool,
}

impl TraceCodeInstance {
    /// `|L| = (p^{2m} - p^m) / 2`.
    pub fn expected_length(&self) -> u64 {
        let pm = (self.p as u64).pow(self.m);
        (pm * pm - pm) / 2
    }

    /// The closed-form weights of the projective code, as printed:
    /// `p^{2m-1} - p^{m-1}` and that value `∓ p^{m-1}(p^{m/2} ± 1)`.
    pub fn closed_form_weights(&self) -> [i64; 3] {
        let p = self.p as i64;
        let base = p.pow(2 * self.m - 1) - p.pow(self.m - 1);
        let h = p.pow(self.m / 2);
        [base - p.pow(self.m - 1) * (h + 1), base, base + p.pow(self.m - 1) * (h - 1)]
    }

    pub fn weights_of(&self, code: &LinearCode, wd: &WeightDistribution) -> TraceWeights {
        let n = code.len() as u64;
        let target = BigRational::new(BigInt::from(3 * (self.p as u64 - 1) * n), BigInt::from(self.p));
        TraceWeights {
            n: code.len(),
            weights: wd.nonzero_weights(),
            frequencies: wd.nonzero_frequencies(),
            weight_sum: wd.nonzero_weights().iter().map(|&w| w as u64).sum(),
            target_sum: (
                u64::try_from(target.numer().clone()).unwrap_or(0),
                u64::try_from(target.denom().clone()).unwrap_or(0),
            ),
            projective: code.is_projective(),
        }
    }

    /// Every weight of `C` is `replication` times the corresponding weight
    /// of `P`, with equal frequencies.
    pub fn c_is_scaled_p(&self) -> bool {
        let t = self.replication;
        self.wd_c.entries == self.wd_p.entries.iter().map(|&(w, a)| (w * t, a)).collect::<Vec<_>>()
    }

    /// s-sum check for the unit-closed set of columns of `C`.
    pub fn ssum(&self, s: u32) -> Result<SsumResult, FamilyError> {
        let omega = unit_expansion(self.c.ring(), &self.c.columns());
        Ok(ssum_set_check(self.c.ring(), &omega, s, false)?)
    }
}

/// Build `C(m, p)`; requires an odd prime `p`, `m ≡ 2 (mod 4)` and
/// `p^{2m} <= 3^10`.
pub fn trace_code(p: u32, m: u32) -> Result<TraceCodeInstance, FamilyError> {
    if p % 2 == 0 || !crate::algebra::prime_power(p).map_or(false, |(_, f)| f == 1) {
        return Err(FamilyError::BadParameters(format!("p = {p} must be an odd prime")));
    }
    if m % 4 != 2 {
        return Err(FamilyError::BadParameters(format!("m = {m} must be 2 mod 4")));
    }
    if (p as u64).checked_pow(2 * m).map_or(true, |x| x > 3u64.pow(10)) {
        return Err(FamilyError::BadParameters(format!("p^(2m) = {p}^{} exceeds 3^10", 2 * m)));
    }
    let q = p.pow(m);
    let big = Ring::fqu(q)?;
    let small = Arc::new(Ring::fqu(p)?);
    let field = big.residue_field().expect("F_q + uF_q has a residue field").clone();
    let squares: Vec<Elem> = field.elements().filter(|&a| a != 0 && field.is_square(a)).collect();
    // x = s + u f with s a nonzero square
    let l: Vec<Elem> = squares.iter().flat_map(|&s| (0..q).map(move |f| s + q * f)).collect();
    // F_{p^m} + uF_{p^m} is free over F_p + uF_p on an F_p-basis of F_{p^m}
    let basis: Vec<Elem> = (0..m).map(|i| p.pow(i)).collect();
    let rows: Vec<Vec<Elem>> = basis
        .iter()
        .map(|&a| l.iter().map(|&x| fqu_trace(&big, &small, big.mul(a, x))).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let c = LinearCode::from_rows(small.clone(), rows)?;
    let prime_units: Vec<Elem> = (1..p).collect();
    let (replication, p_code) = c.replication_factor_by(&prime_units);
    let (associate_replication, associate_code) = c.replication_factor();
    Ok(TraceCodeInstance {
        p,
        m,
        wd_c: weight_distribution(&c, DEFAULT_BUDGET)?,
        wd_p: weight_distribution(&p_code, DEFAULT_BUDGET)?,
        wd_associate: weight_distribution(&associate_code, DEFAULT_BUDGET)?,
        c,
        p_code,
        replication,
        associate_code,
        associate_replication,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_and_replication() {
        let t = trace_code(3, 2).unwrap();
        assert_eq!(t.c.len() as u64, t.expected_length());
        assert_eq!((t.c.len(), t.p_code.len()), (36, 18));
        assert_eq!(t.replication, 2);
        assert_eq!(t.c.size(), 81);
        assert!(t.c_is_scaled_p());
        assert_eq!(t.closed_form_weights(), [12, 24, 30]);
    }

    #[test]
    fn associates_remain_after_prime_field_dedup() {
        // (1 + ud) L = L, so columns x and (1 + ud)x are associate in P
        let t = trace_code(3, 2).unwrap();
        assert!(!t.p_code.is_projective());
        assert_eq!(t.associate_replication, 6);
        assert!(t.associate_code.is_projective());
    }

    #[test]
    fn parameter_checks() {
        assert!(trace_code(2, 2).is_err());
        assert!(trace_code(3, 4).is_err());
        assert!(trace_code(3, 6).is_err());
        assert!(trace_code(9, 2).is_err());
    }
}
