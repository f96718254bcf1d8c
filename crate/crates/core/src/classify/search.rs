use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::invariant::canonical_invariant;
use super::points::{digits, projective_points, require_order_four, ProjectivePoint};
use super::ClassifyError;
use crate::algebra::{Elem, Ring};
use crate::code::{LinearCode, DEFAULT_BUDGET};
use crate::spectral::{predict_three_weight, weight_distribution};

/// Subtrees evaluated per parallel batch; fixed so results do not depend on
/// the thread count.
pub const BATCH: usize = 256;
/// Default node budget per search.
pub const DEFAULT_NODE_BUDGET: u64 = 400_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingChoice {
    Z4,
    F2u,
}

impl RingChoice {
    pub fn ring(self) -> Ring {
        match self {
            RingChoice::Z4 => Ring::z4(),
            RingChoice::F2u => Ring::f2u(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().replace(['_', ' '], "").as_str() {
            "z4" => Some(RingChoice::Z4),
            "f2u" | "f2+uf2" => Some(RingChoice::F2u),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Stop at the first witness.
    Decide,
    /// Visit the whole tree and keep one witness per invariant.
    Exhaust,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub ring: RingChoice,
    pub n: usize,
    pub shape: (u32, u32),
    pub w: [u32; 3],
    /// Expected frequencies; checked against the moment prediction.
    pub a: Option<[u64; 3]>,
    pub mode: Mode,
    pub budget_nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Realized,
    Empty,
    Undecided,
}

/// Outcome of one subtree, the unit of checkpointing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtreeRecord {
    pub index: usize,
    pub nodes: u64,
    pub pruned: u64,
    pub leaves: u64,
    /// Point-index sets of the solutions found.
    pub solutions: Vec<Vec<usize>>,
    /// Budget ran out inside this subtree.
    pub aborted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub generator: Vec<Vec<Elem>>,
    pub points: Vec<usize>,
    pub invariant_hex: String,
    /// Weight distribution, shape, projectivity and `d⊥ >= 3` recomputed
    /// from the generator matrix.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub spec: SearchSpec,
    pub status: Status,
    pub a_predicted: [u64; 3],
    pub points: usize,
    pub subtrees: usize,
    pub subtrees_done: usize,
    pub nodes: u64,
    pub pruned: u64,
    /// Point sets reaching the three target weights with the forced frequencies.
    pub solutions: u64,
    /// Distinct invariants among the solutions (one witness each).
    pub witnesses: Vec<Witness>,
    pub elapsed_ms: u128,
}

impl ClassificationRecord {
    /// Equality ignoring wall-clock time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        let mut a = self.clone();
        a.elapsed_ms = other.elapsed_ms;
        &a == other
    }
}

/// Precomputed weight tables for one `(ring, shape, n, w)` search.
pub(crate) struct Tables {
    pub ring: Ring,
    pub points: Vec<ProjectivePoint>,
    classes: usize,
    /// `wt[p * classes + c]`: homogeneous weight of message class `c` at point `p`.
    wt: Vec<u8>,
    orbit: Vec<u64>,
    pub n: usize,
    targets: [u32; 3],
    /// `ok[r][P]`: some target lies in `[P, P + 2r]`.
    ok: Vec<Vec<bool>>,
}

impl Tables {
    pub fn new(ring: Ring, k1: usize, k2: usize, n: usize, targets: [u32; 3]) -> Result<Self, ClassifyError> {
        let points = projective_points(&ring, k1, k2)?;
        let size = ring.size() as u64;
        let gamma = ring.gamma();
        // messages (m1, m2), m1 ∈ R^k1, m2 ∈ {0,1}^k2, grouped by m1 up to units
        let mut orbit: BTreeMap<(Vec<Elem>, u64), u64> = BTreeMap::new();
        for x in 0..size.pow(k1 as u32) {
            let m1 = digits(x, size, k1);
            for m2 in 0..(1u64 << k2) {
                if x == 0 && m2 == 0 {
                    continue;
                }
                let rep = ring
                    .units()
                    .iter()
                    .map(|&u| m1.iter().map(|&v| ring.mul(u, v)).collect::<Vec<_>>())
                    .min()
                    .unwrap();
                *orbit.entry((rep, m2)).or_default() += 1;
            }
        }
        let classes = orbit.len();
        let mut wt = vec![0u8; points.len() * classes];
        for (p, pt) in points.iter().enumerate() {
            for (c, (m1, m2)) in orbit.keys().enumerate() {
                let mut v = 0;
                for (i, &m) in m1.iter().enumerate() {
                    v = ring.add(v, ring.mul(m, pt.a[i]));
                }
                let dot = (0..k2).filter(|&j| (m2 >> j) & 1 == 1 && pt.b[j] == 1).count();
                if dot % 2 == 1 {
                    v = ring.add(v, gamma);
                }
                wt[p * classes + c] = ring.hom_weight(v) as u8;
            }
        }
        let max_p = 2 * n + 1;
        let ok = (0..=n)
            .map(|r| (0..=max_p).map(|p| targets.iter().any(|&w| p as u32 <= w && w <= p as u32 + 2 * r as u32)).collect())
            .collect();
        Ok(Tables { ring, points, classes, wt, orbit: orbit.into_values().collect(), n, targets, ok })
    }

    fn row(&self, p: usize) -> &[u8] {
        &self.wt[p * self.classes..(p + 1) * self.classes]
    }

    /// `next = cur + wt[p]` with `r` points still to place; fails when some
    /// message can no longer reach a target.
    fn extend(&self, cur: &[u16], p: usize, r: usize, next: &mut [u16]) -> bool {
        let ok = &self.ok[r];
        for ((x, &w), out) in cur.iter().zip(self.row(p)).zip(next.iter_mut()) {
            let v = x + w as u16;
            if !ok[v as usize] {
                return false;
            }
            *out = v;
        }
        true
    }

    /// Frequencies of the three targets for a complete point set.
    fn frequencies(&self, weights: &[u16]) -> [u64; 3] {
        let mut f = [0u64; 3];
        for (&w, &o) in weights.iter().zip(&self.orbit) {
            if let Some(t) = self.targets.iter().position(|&x| x == w as u32) {
                f[t] += o;
            }
        }
        f
    }

    pub fn generator(&self, pts: &[usize]) -> Vec<Vec<Elem>> {
        let rows = self.points.first().map_or(0, |p| p.column.len());
        (0..rows).map(|i| pts.iter().map(|&p| self.points[p].column[i]).collect()).collect()
    }

    fn weights_of(&self, pts: &[usize]) -> Vec<u16> {
        let mut acc = vec![0u16; self.classes];
        for &p in pts {
            for (a, &w) in acc.iter_mut().zip(self.row(p)) {
                *a += w as u16;
            }
        }
        acc
    }

    /// Whether a point set gives the three targets with frequencies `a`.
    pub fn accepts(&self, pts: &[usize], a: [u64; 3]) -> bool {
        let w = self.weights_of(pts);
        w.iter().all(|&x| self.targets.contains(&(x as u32))) && self.frequencies(&w) == a
    }

    fn index_of(&self, a: &[Elem], b: &[u8]) -> usize {
        self.points.iter().position(|p| p.a == a && p.b == b).expect("standard point exists")
    }
}

/// A fixed standard-form prefix plus the first free point.
#[derive(Clone, Debug)]
struct Subtree {
    prefix: Vec<usize>,
    first: Option<usize>,
}

fn subtrees(t: &Tables, k1: usize, k2: usize) -> Vec<Subtree> {
    if t.n < k1 + k2 {
        return Vec::new();
    }
    let unit = |i: usize, len: usize| (0..len).map(|j| (j == i) as Elem).collect::<Vec<_>>();
    let zero_b = vec![0u8; k2];
    let tops: Vec<usize> = (0..k1).map(|i| t.index_of(&unit(i, k1), &zero_b)).collect();
    // binary a_j, nondecreasing: rows of the γ-block may be permuted freely
    let binary: Vec<Vec<Elem>> = (1..(1u64 << k1)).map(|x| digits(x, 2, k1)).collect();
    let mut prefixes = Vec::new();
    let mut choice = vec![0usize; k2];
    loop {
        let mut prefix = tops.clone();
        for (j, &c) in choice.iter().enumerate() {
            let b: Vec<u8> = (0..k2).map(|i| (i == j) as u8).collect();
            prefix.push(t.index_of(&binary[c], &b));
        }
        prefixes.push(prefix);
        // next nondecreasing sequence
        let mut j = k2;
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            if choice[j] + 1 < binary.len() {
                choice[j] += 1;
                for x in j + 1..k2 {
                    choice[x] = choice[j];
                }
                j = usize::MAX;
                break;
            }
        }
        if j != usize::MAX {
            break;
        }
    }
    let free = t.n - k1 - k2;
    let mut out = Vec::new();
    for prefix in prefixes {
        if free == 0 {
            out.push(Subtree { prefix, first: None });
        } else {
            for f in 0..t.points.len() {
                if !prefix.contains(&f) {
                    out.push(Subtree { prefix: prefix.clone(), first: Some(f) });
                }
            }
        }
    }
    out
}

struct Walker<'a> {
    t: &'a Tables,
    a: [u64; 3],
    taken: Vec<bool>,
    chosen: Vec<usize>,
    levels: Vec<u16>,
    nodes: u64,
    pruned: u64,
    leaves: u64,
    guard: Guard<'a>,
    decide: bool,
    solutions: Vec<Vec<usize>>,
}

/// Cancellation that never changes the merged result: a subtree stops only
/// when it is certain to fall outside the in-order prefix that is kept.
struct Guard<'a> {
    index: usize,
    /// Nodes charged to subtrees before this batch.
    used: u64,
    budget: u64,
    /// Live node counts of the subtrees of this batch (they only grow).
    counts: &'a [AtomicU64],
    /// Lowest batch position that has found a witness (DECIDE only).
    found: &'a AtomicUsize,
}

impl Guard<'_> {
    fn cancelled(&self, nodes: u64) -> bool {
        if self.used.saturating_add(nodes) > self.budget || self.found.load(Ordering::Relaxed) < self.index {
            return true;
        }
        self.counts[self.index].store(nodes, Ordering::Relaxed);
        let lower: u64 = self.counts[..self.index].iter().map(|c| c.load(Ordering::Relaxed)).sum();
        self.used.saturating_add(lower).saturating_add(nodes) > self.budget
    }
}

impl Walker<'_> {
    fn leaf(&mut self, depth: usize) {
        let c = self.t.classes;
        let w = &self.levels[depth * c..(depth + 1) * c];
        self.leaves += 1;
        if self.t.frequencies(w) == self.a {
            let mut s = self.chosen.clone();
            s.sort_unstable();
            self.solutions.push(s);
        }
    }

    /// Place `r` more points with index `>= start`; `Err` on budget exhaustion.
    fn dfs(&mut self, start: usize, r: usize, depth: usize) -> Result<bool, ()> {
        let c = self.t.classes;
        for p in start..self.t.points.len() {
            if self.taken[p] {
                continue;
            }
            self.nodes += 1;
            if self.nodes & 0xfff == 0 && self.guard.cancelled(self.nodes) {
                return Err(());
            }
            let (cur, rest) = self.levels.split_at_mut((depth + 1) * c);
            if !self.t.extend(&cur[depth * c..], p, r - 1, &mut rest[..c]) {
                self.pruned += 1;
                continue;
            }
            self.chosen.push(p);
            let stop = if r == 1 {
                self.leaf(depth + 1);
                self.decide && !self.solutions.is_empty()
            } else {
                self.dfs(p + 1, r - 1, depth + 1)?
            };
            self.chosen.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn run_subtree(t: &Tables, a: [u64; 3], index: usize, st: &Subtree, guard: Guard, decide: bool) -> SubtreeRecord {
    let c = t.classes;
    let mut w = Walker {
        t,
        a,
        taken: vec![false; t.points.len()],
        chosen: Vec::new(),
        levels: vec![0u16; (t.n + 1) * c],
        nodes: 1,
        pruned: 0,
        leaves: 0,
        guard,
        decide,
        solutions: Vec::new(),
    };
    let mut placed = 0usize;
    let mut ok = true;
    for &p in st.prefix.iter().chain(st.first.iter()) {
        let r = t.n - placed - 1;
        let (cur, rest) = w.levels.split_at_mut((placed + 1) * c);
        if !t.extend(&cur[placed * c..], p, r, &mut rest[..c]) {
            ok = false;
            break;
        }
        w.taken[p] = true;
        w.chosen.push(p);
        placed += 1;
    }
    let mut aborted = false;
    if !ok {
        w.pruned += 1;
    } else if placed == t.n {
        w.leaf(placed);
    } else {
        // free points after the first are taken in increasing order
        let start = st.first.map_or(0, |f| f + 1);
        aborted = w.dfs(start, t.n - placed, placed).is_err();
    }
    w.guard.counts[w.guard.index].store(w.nodes, Ordering::Relaxed);
    if decide && !w.solutions.is_empty() {
        w.guard.found.fetch_min(w.guard.index, Ordering::Relaxed);
    }
    SubtreeRecord { index, nodes: w.nodes, pruned: w.pruned, leaves: w.leaves, solutions: w.solutions, aborted }
}

/// Verify a witness from scratch with [`LinearCode`].
pub(crate) fn verify_witness(
    ring: &Ring,
    generator: &[Vec<Elem>],
    shape: (u32, u32),
    w: [u32; 3],
    a: [u64; 3],
) -> Result<bool, ClassifyError> {
    let code = LinearCode::from_rows(ring.clone(), generator.to_vec())?;
    let wd = weight_distribution(&code, DEFAULT_BUDGET)?;
    Ok(code.shape2() == shape
        && wd.nonzero_weights() == w.to_vec()
        && wd.nonzero_frequencies() == a.to_vec()
        && code.is_projective()
        && code.dual_distance_at_least(3, DEFAULT_BUDGET)?)
}

fn predicted(spec: &SearchSpec) -> Result<[u64; 3], ClassifyError> {
    let (k1, k2) = spec.shape;
    let class = 2 * k1 + k2;
    if k1 == 0 || class == 0 {
        return Err(ClassifyError::BadShape(spec.shape));
    }
    let w = spec.w.map(|x| x as u64);
    let pred = predict_three_weight(spec.n as u64, 1u64 << (class - 1), w)?;
    let a = pred
        .a_u64()
        .filter(|_| pred.admissible())
        .ok_or_else(|| ClassifyError::Infeasible(format!("n = {}, class {class}, w = {:?}", spec.n, spec.w)))?;
    if let Some(given) = spec.a {
        if given != a {
            return Err(ClassifyError::Infeasible(format!("frequencies {given:?} differ from the forced {a:?}")));
        }
    }
    Ok(a)
}

/// Pruned search over standard-form point sets.
pub fn search(spec: &SearchSpec) -> Result<ClassificationRecord, ClassifyError> {
    search_with(spec, &HashMap::new(), &mut |_| {})
}

/// [`search`] reusing completed subtrees from `resume` and reporting every
/// newly completed subtree to `on_record`, in index order.
pub fn search_with(
    spec: &SearchSpec,
    resume: &HashMap<usize, SubtreeRecord>,
    on_record: &mut dyn FnMut(&SubtreeRecord),
) -> Result<ClassificationRecord, ClassifyError> {
    let start = Instant::now();
    let a = predicted(spec)?;
    let ring = spec.ring.ring();
    require_order_four(&ring)?;
    let (k1, k2) = (spec.shape.0 as usize, spec.shape.1 as usize);
    let t = Tables::new(ring, k1, k2, spec.n, spec.w)?;
    let trees = subtrees(&t, k1, k2);
    let decide = spec.mode == Mode::Decide;
    let mut records: Vec<SubtreeRecord> = Vec::new();
    let mut nodes = 0u64;
    'batches: for (b, batch) in trees.chunks(BATCH).enumerate() {
        let base = b * BATCH;
        if nodes >= spec.budget_nodes {
            break;
        }
        let counts: Vec<AtomicU64> = (0..batch.len()).map(|_| AtomicU64::new(0)).collect();
        let found = AtomicUsize::new(usize::MAX);
        for (i, c) in counts.iter().enumerate() {
            if let Some(r) = resume.get(&(base + i)).filter(|r| !r.aborted) {
                c.store(r.nodes, Ordering::Relaxed);
            }
        }
        let batch_records: Vec<SubtreeRecord> = batch
            .par_iter()
            .enumerate()
            .map(|(i, st)| match resume.get(&(base + i)) {
                Some(r) if !r.aborted => r.clone(),
                _ => {
                    let guard =
                        Guard { index: i, used: nodes, budget: spec.budget_nodes, counts: &counts, found: &found };
                    run_subtree(&t, a, base + i, st, guard, decide)
                }
            })
            .collect();
        // keep the longest in-order prefix that fits the budget
        for r in batch_records {
            if r.aborted || nodes.saturating_add(r.nodes) > spec.budget_nodes {
                break 'batches;
            }
            nodes += r.nodes;
            if !resume.get(&r.index).map_or(false, |x| !x.aborted) {
                on_record(&r);
            }
            let found = !r.solutions.is_empty();
            records.push(r);
            if decide && found {
                break 'batches;
            }
        }
    }
    let solutions: Vec<&Vec<usize>> = records.iter().flat_map(|r| r.solutions.iter()).collect();
    let mut witnesses: Vec<Witness> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for pts in &solutions {
        let generator = t.generator(pts);
        let code = LinearCode::from_rows(t.ring.clone(), generator.clone())?;
        let inv = canonical_invariant(&code, DEFAULT_BUDGET)?;
        if seen.insert(inv.clone()) {
            let verified = verify_witness(&t.ring, &generator, spec.shape, spec.w, a)?;
            witnesses.push(Witness { generator, points: pts.to_vec(), invariant_hex: hex(&inv), verified });
        }
        if decide {
            break;
        }
    }
    let status = if !witnesses.is_empty() {
        Status::Realized
    } else if records.len() == trees.len() {
        Status::Empty
    } else {
        Status::Undecided
    };
    Ok(ClassificationRecord {
        spec: spec.clone(),
        status,
        a_predicted: a,
        points: t.points.len(),
        subtrees: trees.len(),
        subtrees_done: records.len(),
        nodes: records.iter().map(|r| r.nodes).sum(),
        pruned: records.iter().map(|r| r.pruned).sum(),
        solutions: solutions.len() as u64,
        witnesses,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Invariants of every code found by trying all `n`-subsets of points,
/// without standard form or pruning.
pub fn brute_force_search(spec: &SearchSpec) -> Result<Vec<Vec<u8>>, ClassifyError> {
    let a = predicted(spec)?;
    let (k1, k2) = (spec.shape.0 as usize, spec.shape.1 as usize);
    let t = Tables::new(spec.ring.ring(), k1, k2, spec.n, spec.w)?;
    let m = t.points.len();
    let mut out = std::collections::BTreeSet::new();
    if spec.n > m {
        return Ok(Vec::new());
    }
    let mut idx: Vec<usize> = (0..spec.n).collect();
    loop {
        if t.accepts(&idx, a) {
            let code = LinearCode::from_rows(t.ring.clone(), t.generator(&idx))?;
            // subsets spanning a smaller module are codes of another shape
            if code.shape2() == spec.shape {
                out.insert(canonical_invariant(&code, DEFAULT_BUDGET)?);
            }
        }
        let mut i = spec.n;
        loop {
            if i == 0 {
                return Ok(out.into_iter().collect());
            }
            i -= 1;
            if idx[i] < m - spec.n + i {
                idx[i] += 1;
                for j in i + 1..spec.n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Invariants of the witnesses of an exhaustive [`search`].
pub fn witness_invariants(record: &ClassificationRecord) -> Vec<Vec<u8>> {
    let mut v: Vec<Vec<u8>> = record
        .witnesses
        .iter()
        .map(|w| (0..w.invariant_hex.len()).step_by(2).map(|i| u8::from_str_radix(&w.invariant_hex[i..i + 2], 16).unwrap()).collect())
        .collect();
    v.sort();
    v
}
