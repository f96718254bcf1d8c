//! Hensel lifting of binary primitive polynomials to `Z_4` (Graeffe's method).

use super::{AlgebraError, Field};

fn mul_mod4(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % 4;
        }
    }
    out
}

fn check_primitive(f: &[u8]) -> Result<(), AlgebraError> {
    Field::with_modulus(2, f.iter().map(|&c| c as u32).collect()).map(|_| ())
}

/// Lift a primitive binary polynomial `f` (coefficients low-degree first) to
/// the monic `h` over `Z_4` with `h ≡ f (mod 2)` and `h(x^2) = ±f(x)f(-x)`.
pub fn hensel_lift(f: &[u8]) -> Result<Vec<u8>, AlgebraError> {
    if f.iter().any(|&c| c > 1) {
        return Err(AlgebraError::BadModulus("binary polynomial expected".into()));
    }
    check_primitive(f)?;
    let s = f.len() - 1;
    let even: Vec<u8> = f.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c } else { 0 }).collect();
    let odd: Vec<u8> = f.iter().enumerate().map(|(i, &c)| if i % 2 == 1 { c } else { 0 }).collect();
    let e2 = mul_mod4(&even, &even);
    let o2 = mul_mod4(&odd, &odd);
    let diff: Vec<u8> = e2.iter().zip(&o2).map(|(a, b)| (4 + a - b) % 4).collect();
    let sign = if diff[2 * s] == 1 { 1 } else { 3 };
    let h: Vec<u8> = (0..=s).map(|j| (diff[2 * j] * sign) % 4).collect();
    debug_assert!(diff.iter().skip(1).step_by(2).all(|&c| c == 0));
    Ok(h)
}

/// `h(x^2) = ±f(x)·f(-x)` over `Z_4`, with `f` read as a 0/1 polynomial.
pub fn graeffe_identity_holds(h: &[u8], f: &[u8]) -> bool {
    if h.len() != f.len() {
        return false;
    }
    let f_neg: Vec<u8> = f
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 1 { (4 - c % 4) % 4 } else { c % 4 })
        .collect();
    let prod = mul_mod4(f, &f_neg);
    let mut hx2 = vec![0u8; 2 * h.len() - 1];
    for (j, &c) in h.iter().enumerate() {
        hx2[2 * j] = c % 4;
    }
    let negated: Vec<u8> = prod.iter().map(|&c| (4 - c) % 4).collect();
    hx2 == prod || hx2 == negated
}

#[cfg(test)]
mod tests {
    use super::*;

    // Expand h(x^2) and f(x)f(-x) independently, coefficient by coefficient.
    fn oracle_identity(h: &[u8], f: &[u8]) -> bool {
        let n = f.len();
        let mut lhs = vec![0i32; 2 * n - 1];
        for (j, &c) in h.iter().enumerate() {
            lhs[2 * j] += c as i32;
        }
        let mut rhs = vec![0i32; 2 * n - 1];
        for i in 0..n {
            for j in 0..n {
                let sign = if j % 2 == 1 { -1 } else { 1 };
                rhs[i + j] += f[i] as i32 * f[j] as i32 * sign;
            }
        }
        let same = lhs.iter().zip(&rhs).all(|(a, b)| (a - b).rem_euclid(4) == 0);
        let opposite = lhs.iter().zip(&rhs).all(|(a, b)| (a + b).rem_euclid(4) == 0);
        same || opposite
    }

    #[test]
    fn lift_of_x3_x_1() {
        let f = [1, 1, 0, 1];
        let h = hensel_lift(&f).unwrap();
        // x^3 + 2x^2 + x + 3
        assert_eq!(h, vec![3, 1, 2, 1]);
        assert!(oracle_identity(&h, &f));
        assert!(graeffe_identity_holds(&h, &f));
    }

    #[test]
    fn lift_of_x5_x2_1() {
        let f = [1, 0, 1, 0, 0, 1];
        let h = hensel_lift(&f).unwrap();
        assert_eq!(h.len(), 6);
        assert_eq!(h[5], 1);
        assert!(oracle_identity(&h, &f));
        let reduced: Vec<u8> = h.iter().map(|c| c % 2).collect();
        assert_eq!(reduced, f.to_vec());
    }

    #[test]
    fn all_builtin_binary_moduli_lift() {
        for deg in 1..=8 {
            let fld = Field::new(2, deg).unwrap();
            let f: Vec<u8> = fld.modulus().iter().map(|&c| c as u8).collect();
            let h = hensel_lift(&f).unwrap();
            assert!(oracle_identity(&h, &f), "degree {deg}");
            assert_eq!(h.iter().map(|c| c % 2).collect::<Vec<_>>(), f);
        }
    }

    #[test]
    fn rejects_non_primitive() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible but of order 5
        assert_eq!(hensel_lift(&[1, 1, 1, 1, 1]), Err(AlgebraError::NotPrimitive));
        assert_eq!(hensel_lift(&[1, 0, 1]), Err(AlgebraError::Reducible));
    }

    #[test]
    fn identity_check_rejects_other_lifts() {
        // x^3 + x + 1 lifted naively is basic primitive but not the Hensel lift
        assert!(!graeffe_identity_holds(&[1, 1, 0, 1], &[1, 1, 0, 1]));
    }
}
