//! Row reduction over chain rings: standard form (rows + column swaps) and
//! Smith-style diagonalization for kernels.

use crate::algebra::{Elem, Ring};

pub(crate) struct Echelon {
    /// Nonzero rows after reduction, columns in `perm` order.
    pub rows: Vec<Vec<Elem>>,
    /// Pivot valuation of each row, non-decreasing.
    pub vals: Vec<u32>,
    /// `perm[j]` is the original index of column `j`.
    pub perm: Vec<usize>,
}

fn min_valuation_entry(ring: &Ring, m: &[Vec<Elem>], t: usize, n: usize) -> Option<(usize, usize, u32)> {
    let mut best: Option<(usize, usize, u32)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, &x) in row.iter().enumerate().take(n).skip(t) {
            let v = ring.valuation(x);
            if v < ring.depth() && best.map_or(true, |b| v < b.2) {
                best = Some((i, j, v));
                if v == 0 {
                    return best;
                }
            }
        }
    }
    best
}

fn axpy(ring: &Ring, dst: &mut [Elem], s: Elem, src: &[Elem]) {
    // dst -= s * src
    for (d, &x) in dst.iter_mut().zip(src) {
        *d = ring.sub(*d, ring.mul(s, x));
    }
}

fn normalize_pivot(ring: &Ring, row: &mut [Elem], t: usize, v: u32) {
    let unit = ring.div_exact(row[t], ring.gamma_pow(v)).expect("pivot has valuation v");
    let inv = ring.inv(unit).expect("cofactor of a pivot is a unit");
    for x in row.iter_mut() {
        *x = ring.mul(*x, inv);
    }
}

/// Standard form: pivots of minimal valuation first, entries below pivots
/// cleared, entries above reduced modulo `gamma^v`.
pub(crate) fn standard_form(ring: &Ring, rows: &[Vec<Elem>], n: usize) -> Echelon {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut vals = Vec::new();
    let mut t = 0;
    while let Some((i, j, v)) = min_valuation_entry(ring, &m, t, n) {
        m.swap(t, i);
        if j != t {
            for row in m.iter_mut() {
                row.swap(t, j);
            }
            perm.swap(t, j);
        }
        normalize_pivot(ring, &mut m[t], t, v);
        let g = ring.gamma_pow(v);
        let pivot_row = m[t].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == t || row[t] == 0 {
                continue;
            }
            let s = if i > t {
                ring.div_exact(row[t], g).expect("minimal valuation pivot divides column")
            } else {
                ring.reduce_mod_gamma_pow(row[t], v).1
            };
            axpy(ring, row, s, &pivot_row);
        }
        vals.push(v);
        t += 1;
    }
    m.truncate(t);
    Echelon { rows: m, vals, perm }
}

/// Generators of `{x : G x^T = 0}` via `G = P D Q^{-1}`.
pub(crate) fn kernel_generators(ring: &Ring, rows: &[Vec<Elem>], n: usize) -> Vec<Vec<Elem>> {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    // q is stored column-major: q[c] is column c of the transform
    let mut q: Vec<Vec<Elem>> = (0..n).map(|c| (0..n).map(|r| (r == c) as Elem).collect()).collect();
    let mut vals = Vec::new();
    let mut t = 0;
    while let Some((i, j, v)) = min_valuation_entry(ring, &m, t, n) {
        m.swap(t, i);
        if j != t {
            for row in m.iter_mut() {
                row.swap(t, j);
            }
            q.swap(t, j);
        }
        normalize_pivot(ring, &mut m[t], t, v);
        let g = ring.gamma_pow(v);
        let pivot_row = m[t].clone();
        for row in m.iter_mut().skip(t + 1) {
            if row[t] != 0 {
                let s = ring.div_exact(row[t], g).expect("pivot divides column");
                axpy(ring, row, s, &pivot_row);
            }
        }
        for c in t + 1..n {
            let a = m[t][c];
            if a != 0 {
                let s = ring.div_exact(a, g).expect("pivot divides row");
                m[t][c] = 0;
                let qt = q[t].clone();
                axpy(ring, &mut q[c], s, &qt);
            }
        }
        vals.push(v);
        t += 1;
    }
    let e = ring.depth();
    let mut gens = Vec::new();
    for (k, &v) in vals.iter().enumerate() {
        if v > 0 {
            let g = ring.gamma_pow(e - v);
            gens.push(q[k].iter().map(|&x| ring.mul(g, x)).collect());
        }
    }
    gens.extend(q.into_iter().skip(t));
    gens
}
