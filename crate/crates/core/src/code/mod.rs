//! Linear codes over finite chain rings.

mod echelon;
mod gray;
mod matrix;

pub use gray::{gray_image, gray_preimage, gray_word, is_binary_linear};
pub use matrix::{format_matrix, parse_matrix};

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, Ring};

/// Default cap on the number of codewords an enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("generator matrix is empty")]
    EmptyMatrix,
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("column {0} is all-zero")]
    ZeroColumn(usize),
    #[error("code has {size} words, over the budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("operation needs {0}")]
    UnsupportedRing(&'static str),
    #[error("matrix parse error: {0}")]
    Parse(String),
    #[error("coordinate {index} out of range for length {n}")]
    BadCoordinate { index: usize, n: usize },
}

/// Standard-form generator matrix `[I A B; 0 γI γD]` (general depth: one
/// block row per pivot valuation), up to the recorded column permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    /// `shape[v]` is the number of pivots equal to `gamma^v`.
    pub shape: Vec<u32>,
    /// Rows with columns in `column_order`.
    pub rows: Vec<Vec<Elem>>,
    /// `column_order[j]` is the original index of column `j`.
    pub column_order: Vec<usize>,
}

/// An `R`-linear code given by generator rows.
#[derive(Clone, Debug)]
pub struct LinearCode {
    ring: Arc<Ring>,
    n: usize,
    rows: Vec<Vec<Elem>>,
    /// Reduced generators in original coordinates, one per pivot.
    basis: Vec<Vec<Elem>>,
    basis_vals: Vec<u32>,
    standard: StandardForm,
}

impl LinearCode {
    /// Code spanned by the rows of a generator matrix. Empty matrices and
    /// all-zero columns (which would shorten the effective length) are rejected.
    pub fn from_rows(ring: impl Into<Arc<Ring>>, rows: Vec<Vec<Elem>>) -> Result<Self, CodeError> {
        let ring = ring.into();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.is_empty() || n == 0 {
            return Err(CodeError::EmptyMatrix);
        }
        let code = Self::span(ring, n, rows)?;
        if let Some(j) = (0..n).find(|&j| code.rows.iter().all(|r| r[j] == 0)) {
            return Err(CodeError::ZeroColumn(j));
        }
        Ok(code)
    }

    /// Submodule of `R^n` spanned by `rows`, which may be empty (the zero code)
    /// and may leave zero columns.
    pub fn span(ring: impl Into<Arc<Ring>>, n: usize, rows: Vec<Vec<Elem>>) -> Result<Self, CodeError> {
        let ring = ring.into();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CodeError::RaggedRows);
        }
        for &x in rows.iter().flatten() {
            ring.check(x)?;
        }
        let ech = echelon::standard_form(&ring, &rows, n);
        let mut shape = vec![0u32; ring.depth() as usize];
        for &v in &ech.vals {
            shape[v as usize] += 1;
        }
        let basis = ech
            .rows
            .iter()
            .map(|r| {
                let mut orig = vec![0; n];
                for (j, &x) in r.iter().enumerate() {
                    orig[ech.perm[j]] = x;
                }
                orig
            })
            .collect();
        Ok(LinearCode {
            n,
            rows,
            basis,
            basis_vals: ech.vals,
            standard: StandardForm { shape, rows: ech.rows, column_order: ech.perm },
            ring,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn ring_arc(&self) -> &Arc<Ring> {
        &self.ring
    }
    /// Length `n`.
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    /// Generator rows as supplied.
    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }
    /// Reduced generators (one per pivot) in original coordinates.
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }
    pub fn standard_form(&self) -> &StandardForm {
        &self.standard
    }
    /// Pivot counts per valuation `(k_1, …, k_e)`.
    pub fn shape(&self) -> &[u32] {
        &self.standard.shape
    }
    /// `(k1, k2)` for a depth-2 ring.
    pub fn shape2(&self) -> (u32, u32) {
        let s = self.shape();
        (s[0], s.get(1).copied().unwrap_or(0))
    }
    /// `log_q |C| = Σ_v (e - v) k_v`.
    pub fn log_q_size(&self) -> u32 {
        let e = self.ring.depth();
        self.shape().iter().enumerate().map(|(v, &k)| (e - v as u32) * k).sum()
    }
    /// `|C|`, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        (self.ring.q() as u128).checked_pow(self.log_q_size()).unwrap_or(u128::MAX)
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        self.rows.iter().map(|r| r[j]).collect()
    }
    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    /// Homogeneous weight of a word.
    pub fn weight(&self, word: &[Elem]) -> u32 {
        word.iter().map(|&x| self.ring.hom_weight(x)).sum()
    }

    fn check_budget(&self, budget: u128) -> Result<(), CodeError> {
        let size = self.size();
        if size > budget {
            Err(CodeError::BudgetExceeded { size, budget })
        } else {
            Ok(())
        }
    }

    /// Visit every codeword exactly once.
    pub fn for_each_codeword(&self, budget: u128, mut f: impl FnMut(&[Elem])) -> Result<(), CodeError> {
        self.check_budget(budget)?;
        let r = &self.ring;
        let coeffs: Vec<Vec<Elem>> =
            self.basis_vals.iter().map(|&v| r.coefficient_transversal(v)).collect();
        let multiples: Vec<Vec<Vec<Elem>>> = self
            .basis
            .iter()
            .zip(&coeffs)
            .map(|(row, cs)| cs.iter().map(|&c| row.iter().map(|&x| r.mul(c, x)).collect()).collect())
            .collect();
        let mut digits = vec![0usize; self.basis.len()];
        let mut word = vec![0; self.n];
        loop {
            f(&word);
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return Ok(());
                }
                let old = digits[i];
                let new = (old + 1) % coeffs[i].len();
                for (w, (&a, &b)) in word.iter_mut().zip(multiples[i][old].iter().zip(&multiples[i][new])) {
                    *w = r.add(r.sub(*w, a), b);
                }
                digits[i] = new;
                if new != 0 {
                    break;
                }
                i += 1;
            }
        }
    }

    /// All codewords, starting with zero.
    pub fn codewords(&self, budget: u128) -> Result<Vec<Vec<Elem>>, CodeError> {
        let mut out = Vec::with_capacity(self.size().min(budget) as usize);
        self.for_each_codeword(budget, |w| out.push(w.to_vec()))?;
        Ok(out)
    }

    /// Whether `word` lies in the code.
    pub fn contains(&self, word: &[Elem]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(word.to_vec());
        match Self::span(self.ring.clone(), self.n, rows) {
            Ok(c) => c.log_q_size() == self.log_q_size(),
            Err(_) => false,
        }
    }

    /// `C^⊥` under the standard dot product.
    pub fn dual(&self) -> LinearCode {
        let gens = echelon::kernel_generators(&self.ring, &self.basis, self.n);
        Self::span(self.ring.clone(), self.n, gens).expect("kernel generators are valid")
    }

    /// `C^⊥` by testing every vector of `R^n`; an oracle for small cases.
    pub fn brute_force_dual(&self, budget: u128) -> Result<LinearCode, CodeError> {
        let r = &self.ring;
        let total = (r.size() as u128).checked_pow(self.n as u32).unwrap_or(u128::MAX);
        if total > budget {
            return Err(CodeError::BudgetExceeded { size: total, budget });
        }
        let mut members = Vec::new();
        let mut x = vec![0; self.n];
        loop {
            let orth = self.basis.iter().all(|g| {
                g.iter().zip(&x).fold(0, |acc, (&a, &b)| r.add(acc, r.mul(a, b))) == 0
            });
            if orth {
                members.push(x.clone());
            }
            let mut i = 0;
            while i < self.n {
                x[i] += 1;
                if x[i] < r.size() {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
            if i == self.n {
                break;
            }
        }
        Self::span(r.clone(), self.n, members)
    }

    /// Minimum nonzero weight, `None` for the zero code.
    pub fn min_weight(&self, budget: u128) -> Result<Option<u32>, CodeError> {
        let mut best: Option<u32> = None;
        self.for_each_codeword(budget, |w| {
            let wt = self.weight(w);
            if wt > 0 && best.map_or(true, |b| wt < b) {
                best = Some(wt);
            }
        })?;
        Ok(best)
    }

    /// Minimum homogeneous weight of `C^⊥` (`None` if the dual is zero).
    pub fn dual_distance(&self, budget: u128) -> Result<Option<u32>, CodeError> {
        self.dual().min_weight(budget)
    }

    pub fn dual_distance_at_least(&self, d: u32, budget: u128) -> Result<bool, CodeError> {
        Ok(self.dual_distance(budget)?.map_or(true, |m| m >= d))
    }

    /// Nonzero codewords all have nonzero weight.
    pub fn is_proper(&self) -> bool {
        self.ring.elements().skip(1).all(|x| self.ring.hom_weight(x) > 0)
    }

    /// Every column contains a unit.
    pub fn is_regular(&self) -> bool {
        (0..self.n).all(|j| self.rows.iter().any(|r| self.ring.is_unit(r[j])))
    }

    fn column_module_key(&self, col: &[Elem]) -> Vec<Vec<Elem>> {
        let mut set: Vec<Vec<Elem>> = self
            .ring
            .elements()
            .map(|a| col.iter().map(|&x| self.ring.mul(a, x)).collect())
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    /// Columns generate pairwise distinct cyclic submodules.
    pub fn is_projective(&self) -> bool {
        let mut seen = HashSet::new();
        (0..self.n).all(|j| seen.insert(self.column_module_key(&self.column(j))))
    }

    /// Dual distance bound `(2q - 1) q^(e-2)` equivalent to regular and projective.
    pub fn projective_dual_bound(&self) -> u32 {
        let (q, e) = (self.ring.q(), self.ring.depth());
        if e >= 2 {
            (2 * q - 1) * q.pow(e - 2)
        } else {
            3
        }
    }

    /// Code spanned by the even-weight codewords.
    pub fn even_weight_subcode(&self, budget: u128) -> Result<LinearCode, CodeError> {
        let mut span: HashSet<Vec<Elem>> = HashSet::new();
        span.insert(vec![0; self.n]);
        let mut gens: Vec<Vec<Elem>> = Vec::new();
        let r = &self.ring;
        self.for_each_codeword(budget, |w| {
            if self.weight(w) % 2 == 0 && !span.contains(w) {
                gens.push(w.to_vec());
                let current: Vec<Vec<Elem>> = span.iter().cloned().collect();
                for s in current {
                    for a in r.elements() {
                        let v: Vec<Elem> = s.iter().zip(w).map(|(&x, &y)| r.add(x, r.mul(a, y))).collect();
                        span.insert(v);
                    }
                }
            }
        })?;
        Self::span(r.clone(), self.n, gens)
    }

    /// Delete coordinate `index`.
    pub fn punctured(&self, index: usize) -> Result<LinearCode, CodeError> {
        if index >= self.n {
            return Err(CodeError::BadCoordinate { index, n: self.n });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(j, _)| j != index).map(|(_, &x)| x).collect())
            .collect();
        Self::span(self.ring.clone(), self.n - 1, rows)
    }

    /// Restrict to the given coordinates, in order.
    pub fn restricted(&self, coords: &[usize]) -> Result<LinearCode, CodeError> {
        if let Some(&index) = coords.iter().find(|&&c| c >= self.n) {
            return Err(CodeError::BadCoordinate { index, n: self.n });
        }
        let rows = self.rows.iter().map(|r| coords.iter().map(|&c| r[c]).collect()).collect();
        Self::span(self.ring.clone(), coords.len(), rows)
    }

    /// Group columns up to multiplication by elements of `scalars` (a
    /// multiplicative group of units) and return the gcd `t` of the class
    /// multiplicities with the code keeping `multiplicity / t` columns per class.
    pub fn replication_factor_by(&self, scalars: &[Elem]) -> (u32, LinearCode) {
        let r = &self.ring;
        let mut classes: HashMap<Vec<Elem>, Vec<usize>> = HashMap::new();
        let mut order: Vec<Vec<Elem>> = Vec::new();
        for j in 0..self.n {
            let col = self.column(j);
            let key = scalars
                .iter()
                .map(|&s| col.iter().map(|&x| r.mul(s, x)).collect::<Vec<_>>())
                .min()
                .unwrap_or(col);
            let entry = classes.entry(key.clone()).or_default();
            if entry.is_empty() {
                order.push(key);
            }
            entry.push(j);
        }
        let t = classes.values().fold(0usize, |g, v| g.gcd(&v.len())) as u32;
        let mut keep: Vec<usize> = order
            .iter()
            .flat_map(|k| classes[k].iter().copied().take(classes[k].len() / t as usize))
            .collect();
        keep.sort_unstable();
        (t, self.restricted(&keep).expect("valid coordinates"))
    }

    /// [`LinearCode::replication_factor_by`] over the full unit group.
    pub fn replication_factor(&self) -> (u32, LinearCode) {
        let units = self.ring.units().to_vec();
        self.replication_factor_by(&units)
    }
}

impl PartialEq for LinearCode {
    /// Equality as submodules of `R^n`.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.n == other.n
            && self.shape() == other.shape()
            && other.basis.iter().all(|w| self.contains(w))
    }
}
