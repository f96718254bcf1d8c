//! Exact arithmetic over finite fields and the finite chain rings used as
//! code alphabets: `Z_{p^m}`, `F_q + uF_q` and the Galois rings `GR(4, r)`.

mod field;
mod galois;
mod poly;
mod ring;

pub use field::Field;
pub use galois::{fqu_trace, GaloisTrace};
pub use poly::{graeffe_identity_holds, hensel_lift};
pub use ring::{Ring, RingFamily};

use thiserror::Error;

/// Dense index of a ring or field element.
pub type Elem = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("no built-in primitive modulus for F_{{{p}^{f}}}")]
    UnsupportedField { p: u32, f: u32 },
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("modulus is reducible")]
    Reducible,
    #[error("modulus is irreducible but not primitive")]
    NotPrimitive,
    #[error("polynomial fails the Hensel (Graeffe) identity check")]
    HenselCheck,
    #[error("invalid ring parameters: {0}")]
    BadParameters(String),
    #[error("element {elem} is not in a ring of size {size}")]
    NotAnElement { elem: Elem, size: u32 },
    #[error("cannot parse element {0:?}")]
    Parse(String),
    #[error("operation requires {0}")]
    WrongFamily(&'static str),
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Split `q = p^f`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut f = 0;
    let mut x = q;
    while x % p == 0 {
        x /= p;
        f += 1;
    }
    (x == 1).then_some((p, f))
}
