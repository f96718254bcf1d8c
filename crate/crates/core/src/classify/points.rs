use serde::Serialize;

use super::ClassifyError;
use crate::algebra::{Elem, Ring};

/// Largest `|R|^k1 · 2^k2` message space the search will handle.
pub const MAX_MESSAGES: u64 = 1 << 12;

/// A regular point of `R^k1 ⊕ (γR)^k2`: the top part `a` contains a unit and
/// its first unit coordinate is `1`; the bottom part is `γ·b` with `b` binary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectivePoint {
    pub a: Vec<Elem>,
    pub b: Vec<u8>,
    /// The generator-matrix column `(a, γb)`.
    pub column: Vec<Elem>,
}

pub(crate) fn require_order_four(ring: &Ring) -> Result<(), ClassifyError> {
    if ring.is_order_four() && ring.depth() == 2 {
        Ok(())
    } else {
        Err(ClassifyError::UnsupportedRing(ring.name()))
    }
}

pub(crate) fn digits(mut x: u64, base: u64, len: usize) -> Vec<Elem> {
    (0..len)
        .map(|_| {
            let d = (x % base) as Elem;
            x /= base;
            d
        })
        .collect()
}

/// Regular points of shape `(k1, k2)` up to unit multiples, ordered by `b`
/// and then by `a` (first coordinate most significant).
pub fn projective_points(ring: &Ring, k1: usize, k2: usize) -> Result<Vec<ProjectivePoint>, ClassifyError> {
    require_order_four(ring)?;
    if k1 == 0 {
        return Ok(Vec::new());
    }
    let size = ring.size() as u64;
    let messages = size.checked_pow(k1 as u32).and_then(|x| x.checked_mul(1 << k2));
    if k1 + k2 > 8 || messages.map_or(true, |m| m > MAX_MESSAGES) {
        return Err(ClassifyError::TooLarge { k1, k2 });
    }
    let mut tops: Vec<Vec<Elem>> = (0..size.pow(k1 as u32))
        .map(|x| {
            let mut d = digits(x, size, k1);
            d.reverse();
            d
        })
        .filter(|a| a.iter().find(|&&x| ring.is_unit(x)) == Some(&1))
        .collect();
    tops.sort();
    let gamma = ring.gamma();
    let mut out = Vec::new();
    for bits in 0..(1u64 << k2) {
        let b: Vec<u8> = (0..k2).map(|j| ((bits >> (k2 - 1 - j)) & 1) as u8).collect();
        for a in &tops {
            let mut column = a.clone();
            column.extend(b.iter().map(|&x| if x == 1 { gamma } else { 0 }));
            out.push(ProjectivePoint { a: a.clone(), b: b.clone(), column });
        }
    }
    Ok(out)
}

/// [`projective_points`] of the free module `R^ℓ`.
pub fn projective_points_free(ring: &Ring, ell: usize) -> Result<Vec<ProjectivePoint>, ClassifyError> {
    projective_points(ring, ell, 0)
}
