use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::GraphError;
use crate::algebra::{Elem, Ring};
use crate::code::{LinearCode, DEFAULT_BUDGET};
use crate::spectral::weight_distribution;

/// Default cap on `|R|^k` for convolution over `R^k`.
pub const DEFAULT_GROUP_BUDGET: usize = 1 << 20;

/// Every unit multiple of every column, sorted and without repeats.
pub fn unit_expansion(ring: &Ring, columns: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut out: Vec<Vec<Elem>> = columns
        .iter()
        .flat_map(|c| ring.units().iter().map(move |&u| c.iter().map(|&x| ring.mul(u, x)).collect::<Vec<_>>()))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `k × n` matrix whose columns are one representative (the smallest) of
/// each unit class of nonzero vectors in `omega`, in increasing order.
pub fn check_matrix_from_omega(ring: &Ring, omega: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut reps: Vec<Vec<Elem>> = omega
        .iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|v| ring.units().iter().map(|&u| v.iter().map(|&x| ring.mul(u, x)).collect::<Vec<_>>()).min().unwrap())
        .collect();
    reps.sort_unstable();
    reps.dedup();
    let k = omega.first().map_or(0, |v| v.len());
    (0..k).map(|i| reps.iter().map(|c| c[i]).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SsumRefutation {
    /// Whether both offending targets lie in `Ω`.
    pub in_omega: bool,
    pub first: (Vec<Elem>, u128),
    pub second: (Vec<Elem>, u128),
}

/// Representation counts of `h = x_1 + … + x_s`, `x_i ∈ Ω` (or `Ω ∪ 0`),
/// over nonzero `h` in the submodule generated by `Ω`: the vertex set of
/// the corresponding Cayley graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SsumResult {
    pub s: u32,
    pub include_zero: bool,
    pub ambient_size: usize,
    pub span_size: usize,
    pub spans_ambient: bool,
    /// Count for `h ∈ Ω`.
    pub sigma0: Option<u128>,
    /// Count for nonzero `h ∉ Ω` in the span; `None` if there is none.
    pub sigma1: Option<u128>,
    pub refutation: Option<SsumRefutation>,
    /// Two-valued on all of `R^k \ {0}` as well (vectors outside the span
    /// have no representation).
    pub ambient_sum_set: bool,
}

impl SsumResult {
    pub fn is_sum_set(&self) -> bool {
        self.refutation.is_none()
    }
}

struct Ambient<'a> {
    ring: &'a Ring,
    k: usize,
    size: usize,
}

impl Ambient<'_> {
    fn encode(&self, v: &[Elem]) -> usize {
        let base = self.ring.size() as usize;
        v.iter().rev().fold(0usize, |acc, &d| acc * base + d as usize)
    }
    fn decode(&self, mut x: usize) -> Vec<Elem> {
        let base = self.ring.size() as usize;
        (0..self.k)
            .map(|_| {
                let d = (x % base) as Elem;
                x /= base;
                d
            })
            .collect()
    }
}

fn validate(ring: &Ring, omega: &[Vec<Elem>]) -> Result<(usize, HashSet<Vec<Elem>>), GraphError> {
    let k = omega.first().ok_or(GraphError::Empty)?.len();
    if k == 0 || omega.iter().any(|v| v.len() != k) {
        return Err(GraphError::Ragged);
    }
    for &x in omega.iter().flatten() {
        ring.check(x)?;
    }
    let set: HashSet<Vec<Elem>> = omega.iter().cloned().collect();
    if set.iter().any(|v| v.iter().all(|&x| x == 0)) {
        return Err(GraphError::ZeroInSet);
    }
    for v in &set {
        for &u in ring.units() {
            let w: Vec<Elem> = v.iter().map(|&x| ring.mul(u, x)).collect();
            if !set.contains(&w) {
                return Err(GraphError::NotUnitStable(w));
            }
        }
    }
    Ok((k, set))
}

/// Decide whether `Ω` (or `Ω ∪ 0` with `include_zero`) is an s-sum set by
/// `s`-fold convolution of its indicator over `R^k`.
pub fn ssum_set_check(ring: &Ring, omega: &[Vec<Elem>], s: u32, include_zero: bool) -> Result<SsumResult, GraphError> {
    ssum_set_check_with_budget(ring, omega, s, include_zero, DEFAULT_GROUP_BUDGET)
}

pub fn ssum_set_check_with_budget(
    ring: &Ring,
    omega: &[Vec<Elem>],
    s: u32,
    include_zero: bool,
    budget: usize,
) -> Result<SsumResult, GraphError> {
    if s < 1 {
        return Err(GraphError::BadS { s, min: 1 });
    }
    let (k, set) = validate(ring, omega)?;
    let size = (ring.size() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(GraphError::VertexBudget { vertices: size, budget: budget as u128 });
    }
    let amb = Ambient { ring, k, size: size as usize };
    let mut summands: Vec<Vec<Elem>> = set.iter().cloned().collect();
    summands.sort_unstable();
    if include_zero {
        summands.push(vec![0; k]);
    }
    let negs: Vec<Vec<Elem>> = summands.iter().map(|v| v.iter().map(|&x| ring.neg(x)).collect()).collect();
    let mut counts = vec![0u128; amb.size];
    for v in &summands {
        counts[amb.encode(v)] += 1;
    }
    for _ in 1..s {
        counts = (0..amb.size)
            .into_par_iter()
            .map(|h| {
                let hv = amb.decode(h);
                let mut acc = 0u128;
                for nx in &negs {
                    let d: Vec<Elem> = hv.iter().zip(nx).map(|(&a, &b)| ring.add(a, b)).collect();
                    acc = acc.checked_add(counts[amb.encode(&d)]).ok_or(GraphError::Overflow)?;
                }
                Ok(acc)
            })
            .collect::<Result<_, GraphError>>()?;
    }
    // the submodule generated by Ω is its additive closure, since Ω is unit-stable
    let mut in_span = vec![false; amb.size];
    in_span[0] = true;
    let mut stack = vec![0usize];
    let gens: Vec<Vec<Elem>> = set.iter().cloned().collect();
    while let Some(h) = stack.pop() {
        let hv = amb.decode(h);
        for g in &gens {
            let t = amb.encode(&hv.iter().zip(g).map(|(&a, &b)| ring.add(a, b)).collect::<Vec<_>>());
            if !in_span[t] {
                in_span[t] = true;
                stack.push(t);
            }
        }
    }
    let span_size = in_span.iter().filter(|&&b| b).count();
    let mut slots: [Option<(usize, u128)>; 2] = [None, None];
    let mut refutation = None;
    for h in 1..amb.size {
        if !in_span[h] {
            continue;
        }
        let member = set.contains(&amb.decode(h));
        let slot = &mut slots[usize::from(!member)];
        match *slot {
            None => *slot = Some((h, counts[h])),
            Some((h0, c0)) if c0 != counts[h] => {
                refutation = Some(SsumRefutation {
                    in_omega: member,
                    first: (amb.decode(h0), c0),
                    second: (amb.decode(h), counts[h]),
                });
                break;
            }
            _ => {}
        }
    }
    let sigma0 = slots[0].map(|x| x.1);
    let sigma1 = slots[1].map(|x| x.1);
    let spans_ambient = span_size == amb.size;
    let ambient_sum_set = refutation.is_none() && (spans_ambient || sigma1.unwrap_or(0) == 0);
    Ok(SsumResult {
        s,
        include_zero,
        ambient_size: amb.size,
        span_size,
        spans_ambient,
        sigma0: if refutation.is_none() { sigma0 } else { None },
        sigma1: if refutation.is_none() { sigma1 } else { None },
        refutation,
        ambient_sum_set,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualWeightReport {
    /// Length of `C(Ω)`: the number of unit classes in `Ω`.
    pub n: usize,
    /// Nonzero weights of `C(Ω)^⊥`, the row space of the check matrix.
    pub nonzero_weights: Vec<u32>,
    /// `s ∈ 2..=5` for which `Ω` is an s-sum set.
    pub passing_s: Vec<u32>,
    /// The same for `Ω ∪ 0`.
    pub passing_s_with_zero: Vec<u32>,
    /// An s-sum set forces at most three nonzero dual weights.
    pub consistent: bool,
}

/// Count the nonzero weights of `C(Ω)^⊥` and compare with the s-sum verdicts.
pub fn dual_weight_count_check(ring: &Ring, omega: &[Vec<Elem>]) -> Result<DualWeightReport, GraphError> {
    validate(ring, omega)?;
    let h = check_matrix_from_omega(ring, omega);
    let n = h[0].len();
    let code = LinearCode::span(Arc::new(ring.clone()), n, h)?;
    let wd = weight_distribution(&code, DEFAULT_BUDGET)?;
    let nonzero_weights = wd.nonzero_weights();
    let mut passing_s = Vec::new();
    let mut passing_s_with_zero = Vec::new();
    for s in 2..=5 {
        if ssum_set_check(ring, omega, s, false)?.is_sum_set() {
            passing_s.push(s);
        }
        if ssum_set_check(ring, omega, s, true)?.is_sum_set() {
            passing_s_with_zero.push(s);
        }
    }
    let consistent = (passing_s.is_empty() && passing_s_with_zero.is_empty()) || nonzero_weights.len() <= 3;
    Ok(DualWeightReport { n, nonzero_weights, passing_s, passing_s_with_zero, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_swrg, syndrome_graph};
    use crate::tables;

    fn all_nonzero(ring: &Ring, k: usize) -> Vec<Vec<Elem>> {
        let size = ring.size() as usize;
        (1..size.pow(k as u32))
            .map(|mut x| {
                (0..k)
                    .map(|_| {
                        let d = (x % size) as Elem;
                        x /= size;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn table_code_is_triple_sum_set() {
        let z4 = Ring::z4();
        let g = tables::table1_matrix("G6_2").unwrap();
        let cols: Vec<Vec<Elem>> = (0..g[0].len()).map(|j| g.iter().map(|r| r[j]).collect()).collect();
        let omega = unit_expansion(&z4, &cols);
        let r = ssum_set_check(&z4, &omega, 3, false).unwrap();
        assert!(r.is_sum_set(), "{r:?}");
        assert!(r.sigma0.is_some() && r.sigma1.is_some());
    }

    #[test]
    fn punctured_space_is_sum_set() {
        for ring in [Ring::z4(), Ring::f2u(), Ring::zpm(3, 1).unwrap()] {
            for k in 1..=3 {
                let omega = all_nonzero(&ring, k);
                for s in 2..=4 {
                    let r = ssum_set_check(&ring, &omega, s, false).unwrap();
                    assert!(r.is_sum_set() && r.spans_ambient, "{} k={k} s={s}", ring.name());
                    let big_n = (ring.size() as u128).pow(k as u32);
                    let sigma = r.sigma0.unwrap();
                    // closed form: ((N-1)^s - (-1)^s) / N for h != 0
                    let sign: i128 = if s % 2 == 0 { 1 } else { -1 };
                    assert_eq!(sigma as i128, ((big_n - 1).pow(s) as i128 - sign) / big_n as i128);
                }
            }
        }
    }

    #[test]
    fn hypercube_set_is_refuted() {
        let z4 = Ring::z4();
        let omega = unit_expansion(&z4, &[vec![1, 0], vec![0, 1]]);
        let r = ssum_set_check(&z4, &omega, 3, false).unwrap();
        assert!(!r.is_sum_set());
        let w = r.refutation.unwrap();
        assert_ne!(w.first.1, w.second.1);
        // ±(1,0) alone: the 4-cycle, which is 3-walk-regular
        let omega = unit_expansion(&z4, &[vec![1, 0]]);
        let r = ssum_set_check(&z4, &omega, 3, false).unwrap();
        assert!(r.is_sum_set() && !r.spans_ambient && r.ambient_sum_set);
        assert_eq!((r.sigma0, r.sigma1), (Some(4), Some(0)));
    }

    #[test]
    fn input_validation() {
        let z4 = Ring::z4();
        assert_eq!(ssum_set_check(&z4, &[vec![1, 0]], 3, false).unwrap_err(), GraphError::NotUnitStable(vec![3, 0]));
        assert_eq!(ssum_set_check(&z4, &[vec![0, 0]], 3, false).unwrap_err(), GraphError::ZeroInSet);
        assert_eq!(ssum_set_check(&z4, &[], 3, false).unwrap_err(), GraphError::Empty);
        assert_eq!(ssum_set_check(&z4, &[vec![1], vec![3, 0]], 3, false).unwrap_err(), GraphError::Ragged);
    }

    #[test]
    fn convolution_matches_graph_walks() {
        let z4 = Ring::z4();
        for name in ["G6_1", "G6_2", "G7_1"] {
            let g = tables::table1_matrix(name).unwrap();
            let cols: Vec<Vec<Elem>> = (0..g[0].len()).map(|j| g.iter().map(|r| r[j]).collect()).collect();
            let omega = unit_expansion(&z4, &cols);
            for b in 0..=1 {
                let graph = syndrome_graph(z4.clone(), &g, b).unwrap();
                for s in 2..=5 {
                    let by_graph = is_swrg(&graph, s).unwrap().holds();
                    let by_conv = ssum_set_check(&z4, &omega, s, b == 1).unwrap().is_sum_set();
                    assert_eq!(by_graph, by_conv, "{name} b={b} s={s}");
                }
            }
        }
    }

    #[test]
    fn dual_weight_counts() {
        let f3 = Ring::zpm(3, 1).unwrap();
        let r = dual_weight_count_check(&f3, &all_nonzero(&f3, 2)).unwrap();
        assert_eq!(r.nonzero_weights, vec![3]);
        assert_eq!(r.passing_s, vec![2, 3, 4, 5]);
        assert!(r.consistent);
        // regular points of Z4^2: a two-weight code, so s-sum for every s
        let z4 = Ring::z4();
        let regular: Vec<Vec<Elem>> = all_nonzero(&z4, 2).into_iter().filter(|v| v.iter().any(|&x| x % 2 == 1)).collect();
        let r = dual_weight_count_check(&z4, &regular).unwrap();
        assert_eq!(r.n, 6);
        assert_eq!(r.nonzero_weights.len(), 2);
        assert_eq!(r.passing_s, vec![2, 3, 4, 5]);
        assert_eq!(r.passing_s_with_zero, vec![2, 3, 4, 5]);
    }
}
