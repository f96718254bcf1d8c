use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::FamilyError;

/// Published parameters of the generalized Teichmüller code `T_{q,k,s}`
/// over `GR(4, r)`, `q = 2^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TeichmullerParams {
    pub q: u64,
    pub r: u32,
    pub k: u32,
    pub s: u32,
    /// `2^s (q^k - 1)/(q - 1)`.
    pub n: u64,
    /// Weights in the printed scale.
    pub w: [u64; 3],
    #[serde(rename = "A")]
    pub a: [u64; 3],
    /// `1 + ΣA = q^(2k)`.
    pub code_size: u64,
    /// Factor `q^(r-2)` relating the printed weights to the scale of the
    /// sum identity, as `(num, den)`.
    pub scale: (u64, u64),
    /// `q^(r-2) (w1 + w2 + w3)`, as `(num, den)` in lowest terms.
    #[serde(rename = "S")]
    pub s_sum: (u64, u64),
    /// `2^s q^(r-1)` (an integer when `r >= 1`).
    pub b: u64,
    /// Loops making the sum condition hold for the printed weights read as
    /// homogeneous weights on the depth-2 ring `GR(4, r)`: `q·2^s`.
    pub b_module: u64,
    /// `S = (3/q)(b + n(q-1)q^(r-1))` exactly.
    pub identity_holds: bool,
    /// Some frequency is zero.
    pub degenerate: bool,
}

fn pow2(e: u32) -> Result<u64, FamilyError> {
    1u64.checked_shl(e).filter(|_| e < 64).ok_or_else(|| FamilyError::BadParameters("parameters too large".into()))
}

fn rat(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Evaluate the parameter formulas and check the weight-sum identity.
pub fn teichmuller_params(q: u64, k: u32, s: u32) -> Result<TeichmullerParams, FamilyError> {
    if q < 2 || !q.is_power_of_two() {
        return Err(FamilyError::BadParameters(format!("q = {q} is not a power of two")));
    }
    if k < 2 {
        return Err(FamilyError::BadParameters(format!("k = {k} < 2")));
    }
    let r = q.trailing_zeros();
    let top = (k - 1) * r;
    let legal = if k % 2 == 1 { s % 2 == 0 && s <= top } else { s % 2 == r % 2 && s >= r && s <= top };
    if !legal {
        return Err(FamilyError::BadParameters(format!("s = {s} is not legal for q = {q}, k = {k}")));
    }
    let big = || FamilyError::BadParameters("parameters too large".into());
    let qk = q.checked_pow(k).ok_or_else(big)?;
    let two_s = pow2(s)?;
    let n = two_s.checked_mul((qk - 1) / (q - 1)).ok_or_else(big)?;
    // 2^(s/2) q^((k∓1)/2) = 2^((s + r(k∓1))/2); both exponents are integers on legal input
    let d = pow2((s + r * (k - 1)) / 2)?;
    let e = pow2((s + r * (k + 1)) / 2)?;
    let c = two_s.checked_mul(qk).ok_or_else(big)?;
    let w = [c - d, c, c + d];
    let a1 = (qk - 1).checked_mul(qk + e).ok_or_else(big)? / 2;
    let a3 = (qk - 1).checked_mul(qk - e).ok_or_else(big)? / 2;
    let a = [a1, qk - 1, a3];
    let code_size = 1 + a.iter().sum::<u64>();
    let scale_r = if r >= 2 { rat(q.pow(r - 2)) } else { BigRational::new(1.into(), BigInt::from(q.pow(2 - r))) };
    let sum_w = rat(w.iter().sum());
    let s_sum = &scale_r * &sum_w;
    let b = two_s.checked_mul(q.pow(r - 1)).ok_or_else(big)?;
    let rhs = BigRational::new(3.into(), BigInt::from(q)) * (rat(b) + rat(n) * rat(q - 1) * rat(q.pow(r - 1)));
    let to_pair = |x: &BigRational| {
        let (num, den) = (x.numer().clone(), x.denom().clone());
        (u64::try_from(num).unwrap_or(u64::MAX), u64::try_from(den).unwrap_or(u64::MAX))
    };
    Ok(TeichmullerParams {
        q,
        r,
        k,
        s,
        n,
        w,
        a,
        code_size,
        scale: to_pair(&scale_r),
        s_sum: to_pair(&s_sum),
        b,
        b_module: q * two_s,
        identity_holds: s_sum == rhs && code_size == qk * qk,
        degenerate: a.contains(&0),
    })
}

/// `(q, k, s)` with `q ∈ qs`, `2 <= k <= k_max` and every legal `s`.
pub fn legal_parameters(qs: &[u64], k_max: u32) -> Vec<(u64, u32, u32)> {
    let mut out = Vec::new();
    for &q in qs {
        let r = q.trailing_zeros();
        for k in 2..=k_max {
            let start = if k % 2 == 1 { 0 } else { r };
            out.extend((start..=(k - 1) * r).step_by(2).map(|s| (q, k, s)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kerdock_coincidence() {
        let t = teichmuller_params(2, 3, 0).unwrap();
        assert_eq!((t.n, t.w, t.a), (7, [6, 8, 10], [42, 7, 14]));
        assert!(t.identity_holds && !t.degenerate);
        assert_eq!(t.b_module, 2);
    }

    #[test]
    fn q4_example() {
        let t = teichmuller_params(4, 3, 0).unwrap();
        assert_eq!((t.n, t.a), (21, [2520, 63, 1512]));
        assert_eq!(t.scale, (1, 1));
        assert_eq!(t.b, t.b_module);
    }

    #[test]
    fn degenerate_flag() {
        let t = teichmuller_params(2, 3, 2).unwrap();
        assert_eq!(t.a[2], 0);
        assert!(t.degenerate);
    }

    #[test]
    fn identity_on_all_legal_small_parameters() {
        let all = legal_parameters(&[2, 4, 8], 4);
        assert!(all.len() > 10);
        for (q, k, s) in all {
            let t = teichmuller_params(q, k, s).unwrap();
            assert!(t.identity_holds, "{q} {k} {s}");
            assert_eq!(t.code_size, q.pow(2 * k));
        }
    }

    #[test]
    fn illegal_parameters() {
        assert!(teichmuller_params(3, 3, 0).is_err());
        assert!(teichmuller_params(2, 1, 0).is_err());
        assert!(teichmuller_params(2, 3, 1).is_err());
        assert!(teichmuller_params(4, 2, 0).is_err());
        assert!(teichmuller_params(4, 2, 2).is_ok());
        assert!(teichmuller_params(2, 3, 4).is_err());
    }
}
