use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{CayleyGraph, GraphError, FULL_CHECK_LIMIT};
use crate::spectral::SpectrumEntry;

/// Base vertices whose rows are examined: all of them for small graphs,
/// otherwise vertex 0 and an evenly spread sample (sufficient because Cayley
/// graphs are vertex-transitive; the sample guards the construction).
fn base_vertices(g: &CayleyGraph) -> (Vec<u32>, bool) {
    let nv = g.vertex_count();
    if nv <= FULL_CHECK_LIMIT {
        ((0..nv as u32).collect(), true)
    } else {
        let mut v: Vec<u32> = (0..16).map(|i| (i * nv / 16) as u32).collect();
        v.dedup();
        (v, false)
    }
}

/// `v ↦ v(A + bI)` for a row vector `v`.
fn step(g: &CayleyGraph, v: &[u128]) -> Result<Vec<u128>, GraphError> {
    let b = g.loops() as u128;
    (0..g.vertex_count() as u32)
        .map(|z| {
            // A is symmetric, so column z of A lists the neighbours of z.
            let mut acc = v[z as usize].checked_mul(b).ok_or(GraphError::Overflow)?;
            for &y in g.neighbors_of(z) {
                acc = acc.checked_add(v[y as usize]).ok_or(GraphError::Overflow)?;
            }
            Ok(acc)
        })
        .collect()
}

fn step_signed(g: &CayleyGraph, v: &[i128], theta: i128) -> Result<Vec<i128>, GraphError> {
    let b = g.loops() as i128 - theta;
    (0..g.vertex_count() as u32)
        .map(|z| {
            let mut acc = v[z as usize].checked_mul(b).ok_or(GraphError::Overflow)?;
            for &y in g.neighbors_of(z) {
                acc = acc.checked_add(v[y as usize]).ok_or(GraphError::Overflow)?;
            }
            Ok(acc)
        })
        .collect()
}

/// Row `base` of `(A + bI)^s`: the number of walks of length `s` from `base`
/// to each vertex, a loop counting as a step.
pub fn walk_counts_from(g: &CayleyGraph, base: u32, s: u32) -> Result<Vec<u128>, GraphError> {
    let mut v = vec![0u128; g.vertex_count()];
    v[base as usize] = 1;
    for _ in 0..s {
        v = step(g, &v)?;
    }
    Ok(v)
}

/// `trace((A + bI)^t)`.
pub fn trace_power(g: &CayleyGraph, t: u32) -> Result<u128, GraphError> {
    let (bases, full) = base_vertices(g);
    let diag: Vec<u128> =
        bases.par_iter().map(|&x| walk_counts_from(g, x, t).map(|r| r[x as usize])).collect::<Result<_, _>>()?;
    if full {
        diag.iter().try_fold(0u128, |a, &d| a.checked_add(d)).ok_or(GraphError::Overflow)
    } else {
        if diag.iter().any(|&d| d != diag[0]) {
            return Err(GraphError::NotSymmetric);
        }
        diag[0].checked_mul(g.vertex_count() as u128).ok_or(GraphError::Overflow)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SwrgConstants {
    pub lambda: u128,
    /// `None` when no two distinct vertices are non-adjacent.
    pub mu: Option<u128>,
    pub nu: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SrgParameters {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStatus {
    Equal,
    Adjacent,
    NonAdjacent,
}

/// Two vertex pairs with the same adjacency status and different walk
/// counts (for adjacent pairs, counts per edge).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwrgWitness {
    pub status: PairStatus,
    pub first: (u32, u32, u128),
    pub second: (u32, u32, u128),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwrgCertificate {
    pub s: u32,
    pub b: u32,
    pub vertices: usize,
    pub degree: usize,
    pub connected: bool,
    pub rows_checked: usize,
    /// Every row of `(A + bI)^s` was computed.
    pub exhaustive: bool,
    pub constants: Option<SwrgConstants>,
    pub witness: Option<SwrgWitness>,
    /// For `s = 2`, `b = 0` on a simple graph.
    pub srg: Option<SrgParameters>,
}

impl SwrgCertificate {
    pub fn holds(&self) -> bool {
        self.constants.is_some()
    }
}

#[derive(Default)]
struct Slot {
    value: Option<(u32, u32, u128)>,
}

impl Slot {
    fn offer(&mut self, x: u32, y: u32, c: u128, status: PairStatus) -> Option<SwrgWitness> {
        match self.value {
            None => {
                self.value = Some((x, y, c));
                None
            }
            Some(first) if first.2 != c => Some(SwrgWitness { status, first, second: (x, y, c) }),
            _ => None,
        }
    }
}

/// Decide whether `(A + bI)^s = λA + μ(J - I - A) + νI`.
pub fn is_swrg(g: &CayleyGraph, s: u32) -> Result<SwrgCertificate, GraphError> {
    if s < 2 {
        return Err(GraphError::BadS { s, min: 2 });
    }
    let (bases, exhaustive) = base_vertices(g);
    let rows: Vec<(u32, Vec<u128>)> = bases
        .par_iter()
        .map(|&x| walk_counts_from(g, x, s).map(|r| (x, r)))
        .collect::<Result<_, _>>()?;
    let mut slots: [Slot; 3] = Default::default();
    let mut witness = None;
    'outer: for (x, row) in &rows {
        let mut adj = vec![0u32; g.vertex_count()];
        for &y in g.neighbors_of(*x) {
            adj[y as usize] += 1;
        }
        for (y, &count) in row.iter().enumerate() {
            let y = y as u32;
            let (status, value) = if y == *x {
                (PairStatus::Equal, count)
            } else if adj[y as usize] > 0 {
                let a = adj[y as usize] as u128;
                // λ·A_xy must reproduce the count; a non-multiple is its own witness
                if count % a != 0 {
                    witness = Some(SwrgWitness { status: PairStatus::Adjacent, first: (*x, y, count), second: (*x, y, count) });
                    break 'outer;
                }
                (PairStatus::Adjacent, count / a)
            } else {
                (PairStatus::NonAdjacent, count)
            };
            if let Some(w) = slots[status as usize].offer(*x, y, value, status) {
                witness = Some(w);
                break 'outer;
            }
        }
    }
    let constants = if witness.is_none() {
        Some(SwrgConstants {
            lambda: slots[PairStatus::Adjacent as usize].value.map_or(0, |v| v.2),
            mu: slots[PairStatus::NonAdjacent as usize].value.map(|v| v.2),
            nu: slots[PairStatus::Equal as usize].value.map_or(0, |v| v.2),
        })
    } else {
        None
    };
    let srg = match constants {
        Some(c) if s == 2 && g.loops() == 0 && g.is_simple() => c.mu.map(|mu| SrgParameters {
            v: g.vertex_count() as u64,
            k: g.degree() as u64,
            lambda: c.lambda as u64,
            mu: mu as u64,
        }),
        _ => None,
    };
    Ok(SwrgCertificate {
        s,
        b: g.loops(),
        vertices: g.vertex_count(),
        degree: g.degree(),
        connected: g.is_connected(),
        rows_checked: rows.len(),
        exhaustive,
        constants,
        witness,
        srg,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumCertificate {
    /// Predicted spectrum with equal eigenvalues merged, decreasing.
    pub spectrum: Vec<SpectrumEntry>,
    /// `Π (M - θI)` vanished on every checked row, `M = A + bI`.
    pub annihilator_zero: bool,
    /// Largest absolute entry of the annihilator on the checked rows.
    pub residual_max: u128,
    /// `trace(M^t)` for `t = 0..#θ`.
    pub traces: Vec<u128>,
    /// Solution of `Σ m_i θ_i^t = trace(M^t)`, when integral and non-negative.
    pub solved_multiplicities: Option<Vec<u64>>,
    pub multiplicities_match: bool,
    pub rows_checked: usize,
    pub exhaustive: bool,
    pub verified: bool,
}

/// Solve a square system over the rationals; `None` if singular.
fn solve(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let k = rhs.len();
    for col in 0..k {
        let piv = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = BigRational::one() / &m[col][col];
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for c in col..k {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
                let d = &f * &rhs[col];
                rhs[r] -= d;
            }
        }
    }
    Some((0..k).map(|i| &rhs[i] / &m[i][i]).collect())
}

/// Certify a predicted spectrum of `A + bI` exactly: the product of
/// `M - θI` over the predicted eigenvalues must vanish, and the trace
/// moments must determine the predicted multiplicities.
pub fn verify_spectrum(g: &CayleyGraph, predicted: &[SpectrumEntry]) -> Result<SpectrumCertificate, GraphError> {
    let mut spectrum: Vec<SpectrumEntry> = Vec::new();
    let mut sorted = predicted.to_vec();
    sorted.sort_by(|a, b| b.eigenvalue.cmp(&a.eigenvalue));
    for e in sorted {
        match spectrum.last_mut() {
            Some(last) if last.eigenvalue == e.eigenvalue => last.multiplicity += e.multiplicity,
            _ => spectrum.push(e),
        }
    }
    let k = spectrum.len();
    let (bases, exhaustive) = base_vertices(g);
    let thetas: Vec<i128> = spectrum.iter().map(|e| e.eigenvalue as i128).collect();
    let per_row: Vec<(u128, Vec<u128>)> = bases
        .par_iter()
        .map(|&x| {
            let mut v = vec![0i128; g.vertex_count()];
            v[x as usize] = 1;
            for &t in &thetas {
                v = step_signed(g, &v, t)?;
            }
            let residual = v.iter().map(|a| a.unsigned_abs()).max().unwrap_or(0);
            let mut w = vec![0u128; g.vertex_count()];
            w[x as usize] = 1;
            let mut diag = Vec::with_capacity(k);
            for _ in 0..k {
                diag.push(w[x as usize]);
                w = step(g, &w)?;
            }
            Ok((residual, diag))
        })
        .collect::<Result<_, GraphError>>()?;
    let residual_max = per_row.iter().map(|r| r.0).max().unwrap_or(0);
    let nv = g.vertex_count() as u128;
    let traces: Vec<u128> = (0..k)
        .map(|t| {
            if exhaustive {
                per_row.iter().try_fold(0u128, |a, r| a.checked_add(r.1[t])).ok_or(GraphError::Overflow)
            } else {
                per_row[0].1[t].checked_mul(nv).ok_or(GraphError::Overflow)
            }
        })
        .collect::<Result<_, _>>()?;
    let vander: Vec<Vec<BigRational>> = (0..k)
        .map(|t| thetas.iter().map(|&th| BigRational::from_integer(BigInt::from(th).pow(t as u32))).collect())
        .collect();
    let rhs: Vec<BigRational> = traces.iter().map(|&t| BigRational::from_integer(BigInt::from(t))).collect();
    let solved_multiplicities = solve(vander, rhs).and_then(|sol| {
        sol.iter()
            .map(|x| if x.is_integer() && !x.is_negative() { x.to_integer().to_u64() } else { None })
            .collect::<Option<Vec<u64>>>()
    });
    let multiplicities_match = solved_multiplicities
        .as_ref()
        .map_or(false, |m| m.iter().zip(&spectrum).all(|(&a, e)| a == e.multiplicity));
    let annihilator_zero = residual_max == 0;
    Ok(SpectrumCertificate {
        spectrum,
        annihilator_zero,
        residual_max,
        traces,
        solved_multiplicities,
        multiplicities_match,
        rows_checked: per_row.len(),
        exhaustive,
        verified: annihilator_zero && multiplicities_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::graph::syndrome_graph;

    #[test]
    fn pentagon() {
        let c5 = CayleyGraph::cyclic(5, &[1, 4], 0).unwrap();
        let cert = is_swrg(&c5, 2).unwrap();
        assert_eq!(cert.constants, Some(SwrgConstants { lambda: 0, mu: Some(1), nu: 2 }));
        assert_eq!(cert.srg, Some(SrgParameters { v: 5, k: 2, lambda: 0, mu: 1 }));
    }

    #[test]
    fn hexagon_is_not_srg() {
        let c6 = CayleyGraph::cyclic(6, &[1, 5], 0).unwrap();
        let cert = is_swrg(&c6, 2).unwrap();
        assert!(!cert.holds());
        let w = cert.witness.unwrap();
        assert_eq!(w.status, PairStatus::NonAdjacent);
        assert_ne!(w.first.2, w.second.2);
        assert!(is_swrg(&c6, 1).is_err());
    }

    #[test]
    fn complete_graph_has_no_mu() {
        let k4 = CayleyGraph::cyclic(4, &[1, 2, 3], 0).unwrap();
        let cert = is_swrg(&k4, 3).unwrap();
        assert_eq!(cert.constants.unwrap().mu, None);
        assert_eq!(cert.srg, None);
    }

    #[test]
    fn four_cycle_spectrum() {
        let g = syndrome_graph(Ring::z4(), &[vec![1]], 0).unwrap();
        let predicted = [
            SpectrumEntry { eigenvalue: 2, multiplicity: 1 },
            SpectrumEntry { eigenvalue: 0, multiplicity: 2 },
            SpectrumEntry { eigenvalue: -2, multiplicity: 1 },
        ];
        let cert = verify_spectrum(&g, &predicted).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.traces, vec![4, 0, 8]);
        let wrong = [SpectrumEntry { eigenvalue: 2, multiplicity: 1 }, SpectrumEntry { eigenvalue: -2, multiplicity: 3 }];
        let cert = verify_spectrum(&g, &wrong).unwrap();
        assert!(!cert.annihilator_zero && !cert.verified);
        // right eigenvalues, wrong multiplicities
        let skewed = [
            SpectrumEntry { eigenvalue: 2, multiplicity: 2 },
            SpectrumEntry { eigenvalue: 0, multiplicity: 1 },
            SpectrumEntry { eigenvalue: -2, multiplicity: 1 },
        ];
        let cert = verify_spectrum(&g, &skewed).unwrap();
        assert!(cert.annihilator_zero && !cert.multiplicities_match);
    }

    #[test]
    fn loops_shift_walks() {
        let g = syndrome_graph(Ring::z4(), &[vec![1]], 0).unwrap();
        assert_eq!(walk_counts_from(&g, 0, 2).unwrap(), vec![2, 0, 2, 0]);
        let g1 = g.with_loops(1);
        // (A + I)^2 = A^2 + 2A + I
        assert_eq!(walk_counts_from(&g1, 0, 2).unwrap(), vec![3, 2, 2, 2]);
        assert_eq!(trace_power(&g1, 2).unwrap(), 12);
    }

    #[test]
    fn spot_checked_large_graph() {
        // Z4^7 with the 7 standard basis columns: 4^7 = 16384 vertices
        let h: Vec<Vec<u32>> = (0..7).map(|i| (0..7).map(|j| (i == j) as u32).collect()).collect();
        let g = syndrome_graph(Ring::z4(), &h, 0).unwrap();
        let cert = is_swrg(&g, 2).unwrap();
        assert!(!cert.exhaustive);
        assert_eq!(cert.rows_checked, 16);
        assert_eq!(trace_power(&g, 2).unwrap(), 16384 * 14);
    }
}
