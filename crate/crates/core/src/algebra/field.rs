//! Finite fields `F_{p^f}` given by a fixed primitive modulus.
//!
//! Elements are encoded as the integer `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`
//! of their coefficient vector in the polynomial basis, so the prime subfield
//! occupies the encodings `0..p`.

use super::{is_prime, AlgebraError, Elem};

/// Published primitive polynomials (Conway polynomials), low-degree
/// coefficient first, monic.
fn default_modulus(p: u32, f: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, f) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (2, 7) => &[1, 1, 0, 0, 0, 0, 0, 1],
        (2, 8) => &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (3, 5) => &[1, 2, 0, 0, 0, 1],
        (3, 6) => &[2, 2, 1, 0, 2, 0, 1],
        (5, 1) => &[3, 1],
        (5, 2) => &[2, 4, 1],
        (5, 3) => &[3, 3, 0, 1],
        (5, 4) => &[2, 4, 4, 0, 1],
        (7, 1) => &[4, 1],
        (7, 2) => &[3, 6, 1],
        (7, 3) => &[4, 0, 6, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

/// `F_{p^f}` with log/antilog tables over a primitive modulus.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    f: u32,
    size: u32,
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl Field {
    /// The field of order `p^f` with the built-in primitive modulus.
    pub fn new(p: u32, f: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let modulus = default_modulus(p, f).ok_or(AlgebraError::UnsupportedField { p, f })?;
        Self::with_modulus(p, modulus)
    }

    /// Build from an explicit monic modulus (low-degree coefficient first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(AlgebraError::BadModulus("modulus must be monic of degree >= 1 over F_p".into()));
        }
        let f = (modulus.len() - 1) as u32;
        let size = p
            .checked_pow(f)
            .filter(|&s| s <= 1 << 20)
            .ok_or(AlgebraError::UnsupportedField { p, f })?;
        let mut field = Field { p, f, size, modulus, exp: Vec::new(), log: Vec::new() };
        let xi = field.reduce_poly(&[0, 1]);
        let order = size - 1;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; size as usize];
        let mut cur: Elem = 1;
        for i in 0..order {
            if log[cur as usize] != u32::MAX || cur == 0 {
                break;
            }
            log[cur as usize] = i;
            exp.push(cur);
            cur = field.mul_poly(cur, xi);
        }
        if exp.len() as u32 != order || cur != 1 {
            return Err(if field.is_irreducible() {
                AlgebraError::NotPrimitive
            } else {
                AlgebraError::Reducible
            });
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.f
    }
    pub fn size(&self) -> u32 {
        self.size
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The residue of the polynomial variable; it generates the multiplicative group.
    pub fn generator(&self) -> Elem {
        self.exp[1 % self.exp.len()]
    }

    fn digits(&self, x: Elem) -> Vec<u32> {
        let mut d = vec![0; self.f as usize];
        let mut x = x;
        for slot in d.iter_mut() {
            *slot = x % self.p;
            x /= self.p;
        }
        d
    }

    fn from_digits(&self, d: &[u32]) -> Elem {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn reduce_poly(&self, poly: &[u32]) -> Elem {
        let p = self.p as u64;
        let f = self.f as usize;
        let mut c: Vec<u64> = poly.iter().map(|&x| x as u64 % p).collect();
        for deg in (f..c.len()).rev() {
            let lead = c[deg];
            if lead == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = deg - f + i;
                c[idx] = (c[idx] + (p - lead) * m as u64) % p;
            }
        }
        c.resize(f, 0);
        let d: Vec<u32> = c.into_iter().map(|x| x as u32).collect();
        self.from_digits(&d)
    }

    fn mul_poly(&self, a: Elem, b: Elem) -> Elem {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; da.len() + db.len()];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.reduce_poly(&prod)
    }

    fn is_irreducible(&self) -> bool {
        // a zero divisor exists iff the modulus factors
        (1..self.size).all(|a| (1..self.size).all(|b| self.mul_poly(a, b) != 0))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.f == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&s)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.f == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.size - 1;
        let e = (self.log[a as usize] + self.log[b as usize]) % order;
        self.exp[e as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let order = self.size - 1;
        Some(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        let order = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (k % order)) % order) as usize]
    }

    /// Discrete logarithm to the base [`Field::generator`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn is_square(&self, a: Elem) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }

    /// Absolute trace `F_{p^f} -> F_p`; the result is a prime-subfield encoding.
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = 0;
        let mut cur = a;
        for _ in 0..self.f {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.p as u64);
        }
        debug_assert!(acc < self.p);
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtin_moduli_are_primitive() {
        for (p, fmax) in [(2, 8), (3, 6), (5, 4), (7, 3)] {
            for f in 1..=fmax {
                let fld = Field::new(p, f).unwrap_or_else(|e| panic!("({p},{f}): {e}"));
                assert_eq!(fld.size(), p.pow(f));
            }
        }
    }

    #[test]
    fn rejects_reducible_and_non_primitive() {
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(matches!(Field::with_modulus(2, vec![1, 0, 1]), Err(AlgebraError::Reducible)));
        // x^2 + 1 is irreducible over F_3 but x has order 4 < 8
        assert!(matches!(Field::with_modulus(3, vec![1, 0, 1]), Err(AlgebraError::NotPrimitive)));
        assert!(matches!(Field::new(4, 1), Err(AlgebraError::NotPrime(4))));
    }

    #[test]
    fn f9_trace_of_one_and_additivity() {
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.trace(1), 2);
        for x in f9.elements() {
            for y in f9.elements() {
                assert_eq!(f9.add(f9.trace(x), f9.trace(y)), f9.trace(f9.add(x, y)));
            }
        }
    }

    #[test]
    fn field_axioms_f8_f9() {
        for fld in [Field::new(2, 3).unwrap(), Field::new(3, 2).unwrap()] {
            let els: Vec<_> = fld.elements().collect();
            for &a in &els {
                if a != 0 {
                    assert_eq!(fld.mul(a, fld.inv(a).unwrap()), 1);
                }
                for &b in &els {
                    assert_eq!(fld.mul(a, b), fld.mul_poly(a, b));
                    for &c in &els {
                        assert_eq!(fld.mul(a, fld.add(b, c)), fld.add(fld.mul(a, b), fld.mul(a, c)));
                    }
                }
            }
        }
    }
}
