//! Teichmüller sets, Frobenius and traces for `GR(4, r)`; trace of `F_q + uF_q`.

use super::{AlgebraError, Elem, Ring, RingFamily};

/// Teichmüller structure and trace map `GR(4, r) -> Z_4`.
#[derive(Clone, Debug)]
pub struct GaloisTrace {
    r: u32,
    xi: Elem,
    teichmuller: Vec<Elem>,
    by_residue: Vec<Elem>,
    basis_trace: Vec<u8>,
}

impl GaloisTrace {
    pub fn new(ring: &Ring) -> Result<Self, AlgebraError> {
        let r = match ring.family() {
            RingFamily::Gr4 { r, .. } => *r,
            _ => return Err(AlgebraError::WrongFamily("a Galois ring GR(4, r)")),
        };
        let xi = ring.gr4_from_poly(&[0, 1])?;
        let order = (1u32 << r) - 1;
        let mut teichmuller = vec![0];
        let mut cur = 1;
        for _ in 0..order {
            teichmuller.push(cur);
            cur = ring.mul(cur, xi);
        }
        if cur != 1 {
            return Err(AlgebraError::HenselCheck);
        }
        let mut by_residue = vec![u32::MAX; 1 << r];
        for &t in &teichmuller {
            let res = residue_bits(ring, t);
            if by_residue[res as usize] != u32::MAX {
                return Err(AlgebraError::HenselCheck);
            }
            by_residue[res as usize] = t;
        }
        let mut gt = GaloisTrace { r, xi, teichmuller, by_residue, basis_trace: Vec::new() };
        gt.basis_trace = (0..r)
            .map(|i| {
                let basis = ring.pow(xi, i as u64);
                let s = gt.conjugate_sum(ring, basis);
                debug_assert!(s < 4, "trace must land in Z_4");
                s as u8
            })
            .collect();
        Ok(gt)
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    /// The root `ξ` of the defining polynomial, of order `2^r - 1`.
    pub fn xi(&self) -> Elem {
        self.xi
    }

    /// `T = {0, 1, ξ, …, ξ^(2^r - 2)}`.
    pub fn teichmuller_set(&self) -> &[Elem] {
        &self.teichmuller
    }

    /// Write `x = a + 2b` with `a, b` Teichmüller.
    pub fn decompose(&self, ring: &Ring, x: Elem) -> (Elem, Elem) {
        let a = self.by_residue[residue_bits(ring, x) as usize];
        let d = ring.sub(x, a);
        // d lies in 2R; halve digit-wise
        let half: Vec<u8> = ring.gr4_coefficients(d).unwrap().iter().map(|c| c / 2).collect();
        let h = ring.gr4_from_poly(&half).unwrap();
        let b = self.by_residue[residue_bits(ring, h) as usize];
        (a, b)
    }

    /// Frobenius `a + 2b -> a^2 + 2b^2`.
    pub fn frobenius(&self, ring: &Ring, x: Elem) -> Elem {
        let (a, b) = self.decompose(ring, x);
        ring.add(ring.mul(a, a), ring.mul(2, ring.mul(b, b)))
    }

    fn conjugate_sum(&self, ring: &Ring, x: Elem) -> Elem {
        let mut acc = 0;
        let mut cur = x;
        for _ in 0..self.r {
            acc = ring.add(acc, cur);
            cur = self.frobenius(ring, cur);
        }
        acc
    }

    /// `Tr(x) = Σ_i φ^i(x)`, as a `Z_4` value in `0..4`.
    pub fn trace(&self, ring: &Ring, x: Elem) -> u8 {
        ring.gr4_coefficients(x)
            .unwrap()
            .iter()
            .zip(&self.basis_trace)
            .fold(0u8, |acc, (c, t)| (acc + c * t) % 4)
    }

    /// Trace computed directly as the sum of Frobenius conjugates.
    pub fn trace_by_conjugates(&self, ring: &Ring, x: Elem) -> u8 {
        self.conjugate_sum(ring, x) as u8
    }
}

fn residue_bits(ring: &Ring, x: Elem) -> u32 {
    ring.gr4_coefficients(x)
        .unwrap()
        .iter()
        .enumerate()
        .map(|(i, c)| ((c & 1) as u32) << i)
        .sum()
}

/// `Tr(a + ub) = tr(a) + u·tr(b)` from `F_q + uF_q` onto `F_p + uF_p`.
pub fn fqu_trace(big: &Ring, small: &Ring, x: Elem) -> Result<Elem, AlgebraError> {
    let p = match big.family() {
        RingFamily::Fqu { p, .. } => *p,
        _ => return Err(AlgebraError::WrongFamily("a ring F_q + uF_q")),
    };
    match small.family() {
        RingFamily::Fqu { p: sp, f: 1 } if *sp == p => {}
        _ => return Err(AlgebraError::WrongFamily("F_p + uF_p over the same prime")),
    }
    big.check(x)?;
    let field = big.residue_field().unwrap();
    let q = big.q();
    Ok(field.trace(x % q) + p * field.trace(x / q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_is_z4_linear_and_matches_conjugates() {
        for r in 1..=4 {
            let ring = Ring::gr4(r).unwrap();
            let gt = GaloisTrace::new(&ring).unwrap();
            for x in ring.elements() {
                assert_eq!(gt.trace(&ring, x), gt.trace_by_conjugates(&ring, x), "r={r}");
            }
            assert_eq!(gt.trace(&ring, 1) as u32, r % 4);
            for x in ring.elements().step_by(3) {
                for y in ring.elements().step_by(5) {
                    let lhs = gt.trace(&ring, ring.add(x, y));
                    assert_eq!(lhs, (gt.trace(&ring, x) + gt.trace(&ring, y)) % 4);
                    let l2 = gt.trace(&ring, ring.mul(3, x));
                    assert_eq!(l2, (3 * gt.trace(&ring, x)) % 4);
                }
            }
        }
    }

    #[test]
    fn teichmuller_set_properties() {
        for r in 1..=5 {
            let ring = Ring::gr4(r).unwrap();
            let gt = GaloisTrace::new(&ring).unwrap();
            let t = gt.teichmuller_set();
            assert_eq!(t.len(), 1 << r);
            for &x in t {
                assert_eq!(ring.pow(x, 1 << r), x);
                assert_eq!(gt.frobenius(&ring, x), ring.mul(x, x));
            }
            assert_eq!(ring.pow(gt.xi(), (1 << r) - 1), 1);
            for s in 1..((1u64 << r) - 1) {
                assert_ne!(ring.pow(gt.xi(), s), 1);
            }
        }
    }

    #[test]
    fn frobenius_is_ring_automorphism_of_order_r() {
        let ring = Ring::gr4(3).unwrap();
        let gt = GaloisTrace::new(&ring).unwrap();
        for x in ring.elements() {
            let mut y = x;
            for _ in 0..3 {
                y = gt.frobenius(&ring, y);
            }
            assert_eq!(y, x);
            for z in ring.elements().step_by(7) {
                assert_eq!(
                    gt.frobenius(&ring, ring.mul(x, z)),
                    ring.mul(gt.frobenius(&ring, x), gt.frobenius(&ring, z))
                );
                assert_eq!(
                    gt.frobenius(&ring, ring.add(x, z)),
                    ring.add(gt.frobenius(&ring, x), gt.frobenius(&ring, z))
                );
            }
        }
    }

    #[test]
    fn additive_character_orthogonality() {
        // Σ_x i^{Tr(ax)} vanishes for a != 0
        let ring = Ring::gr4(3).unwrap();
        let gt = GaloisTrace::new(&ring).unwrap();
        for a in ring.elements().skip(1) {
            let mut re = 0i64;
            let mut im = 0i64;
            for x in ring.elements() {
                match gt.trace(&ring, ring.mul(a, x)) {
                    0 => re += 1,
                    1 => im += 1,
                    2 => re -= 1,
                    _ => im -= 1,
                }
            }
            assert_eq!((re, im), (0, 0), "a={a}");
        }
    }

    #[test]
    fn fqu_trace_splits_componentwise() {
        let big = Ring::fqu(9).unwrap();
        let small = Ring::fqu(3).unwrap();
        let f9 = big.residue_field().unwrap();
        for x in big.elements() {
            let t = fqu_trace(&big, &small, x).unwrap();
            assert_eq!(t % 3, f9.trace(x % 9));
            assert_eq!(t / 3, f9.trace(x / 9));
        }
        // additive
        for x in big.elements().step_by(4) {
            for y in big.elements().step_by(5) {
                let lhs = fqu_trace(&big, &small, big.add(x, y)).unwrap();
                let rhs = small.add(fqu_trace(&big, &small, x).unwrap(), fqu_trace(&big, &small, y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        assert!(fqu_trace(&small, &Ring::z4(), 1).is_err());
    }
}
