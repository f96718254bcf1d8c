//! Syndrome (coset) graphs as Cayley graphs, exact walk counting with loops,
//! spectrum certification and s-sum sets by group convolution.

mod sumset;
mod walks;

pub use sumset::{
    check_matrix_from_omega, dual_weight_count_check, ssum_set_check, ssum_set_check_with_budget, unit_expansion,
    DualWeightReport,
    SsumRefutation, SsumResult, DEFAULT_GROUP_BUDGET,
};
pub use walks::{
    is_swrg, trace_power, verify_spectrum, walk_counts_from, PairStatus, SpectrumCertificate, SrgParameters,
    SwrgCertificate,
    SwrgConstants, SwrgWitness,
};

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, Ring};
use crate::code::{CodeError, LinearCode};
use crate::spectral::{SpectralError, SpectrumEntry};

/// Default cap on the number of vertices of a constructed graph.
pub const DEFAULT_VERTEX_BUDGET: usize = 1 << 16;

/// Graphs up to this many vertices have every walk-count row computed;
/// larger ones use base vertex 0 plus spread spot checks.
pub const FULL_CHECK_LIMIT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("graph would have {vertices} vertices, over the budget of {budget}")]
    VertexBudget { vertices: u128, budget: u128 },
    #[error("connection set is not closed under negation")]
    NotSymmetric,
    #[error("walk count overflowed 128 bits")]
    Overflow,
    #[error("set is not stable under multiplication by units (missing {0:?})")]
    NotUnitStable(Vec<Elem>),
    #[error("the zero vector lies in the set")]
    ZeroInSet,
    #[error("vectors have inconsistent lengths")]
    Ragged,
    #[error("s must be at least {min}, got {s}")]
    BadS { s: u32, min: u32 },
    #[error("empty set")]
    Empty,
}

/// A Cayley graph `Cay(G, S)` on a finite abelian group with `b` loops at
/// every vertex. `S` is kept as a multiset so that non-projective check
/// matrices give the multigraph whose spectrum still follows the weights.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    ring: Option<Arc<Ring>>,
    /// Group elements, vertex 0 is the identity.
    vertices: Vec<Vec<Elem>>,
    /// Connection multiset as vertex indices.
    connection: Vec<u32>,
    /// `neighbors[v * |S| + t] = v + S[t]`.
    neighbors: Vec<u32>,
    loops: u32,
    regular_columns: bool,
    projective_columns: bool,
}

/// JSON header accompanying an edge-list export.
#[derive(Clone, Debug, Serialize)]
pub struct GraphHeader {
    pub vertices: usize,
    pub degree: usize,
    pub b: u32,
    pub simple: bool,
    pub connected: bool,
    pub spectrum: Option<Vec<SpectrumEntry>>,
}

fn encode(digits: &[Elem], base: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * base + d as u64)
}

impl CayleyGraph {
    /// Syndrome graph of the code with check matrix `h` (rows of length `n`):
    /// vertices are the column space `{Hx}`, and `S` is every unit multiple
    /// of every column.
    pub fn syndrome(ring: impl Into<Arc<Ring>>, h: &[Vec<Elem>], b: u32) -> Result<Self, GraphError> {
        Self::syndrome_with_budget(ring, h, b, DEFAULT_VERTEX_BUDGET)
    }

    pub fn syndrome_with_budget(
        ring: impl Into<Arc<Ring>>,
        h: &[Vec<Elem>],
        b: u32,
        budget: usize,
    ) -> Result<Self, GraphError> {
        let ring: Arc<Ring> = ring.into();
        let ell = h.len();
        let n = h.first().map_or(0, |r| r.len());
        if ell == 0 || n == 0 {
            return Err(CodeError::EmptyMatrix.into());
        }
        if h.iter().any(|r| r.len() != n) {
            return Err(GraphError::Ragged);
        }
        let columns: Vec<Vec<Elem>> = (0..n).map(|j| h.iter().map(|r| r[j]).collect()).collect();
        let space = LinearCode::span(ring.clone(), ell, columns.clone())?;
        if space.size() > budget as u128 {
            return Err(GraphError::VertexBudget { vertices: space.size(), budget: budget as u128 });
        }
        let vertices = space.codewords(budget as u128)?;
        let mut connection_vecs = Vec::with_capacity(n * ring.units().len());
        for col in &columns {
            for &u in ring.units() {
                connection_vecs.push(col.iter().map(|&x| ring.mul(u, x)).collect::<Vec<_>>());
            }
        }
        let regular_columns = columns.iter().all(|c| c.iter().any(|&x| ring.is_unit(x)));
        let mut classes = HashSet::new();
        let projective_columns = columns.iter().all(|c| {
            let key = ring.units().iter().map(|&u| c.iter().map(|&x| ring.mul(u, x)).collect::<Vec<_>>()).min();
            classes.insert(key)
        });
        let r = ring.clone();
        let mut g = Self::build(vertices, &connection_vecs, b, ring.size() as u64, move |x, y| {
            x.iter().zip(y).map(|(&a, &c)| r.add(a, c)).collect()
        })?;
        g.ring = Some(ring);
        g.regular_columns = regular_columns;
        g.projective_columns = projective_columns;
        Ok(g)
    }

    /// `Cay(Z_m, S)` with `S` given as residues.
    pub fn cyclic(m: u32, connection: &[u32], b: u32) -> Result<Self, GraphError> {
        if m == 0 {
            return Err(GraphError::Empty);
        }
        let vertices: Vec<Vec<Elem>> = (0..m).map(|k| vec![k]).collect();
        let conn: Vec<Vec<Elem>> = connection.iter().map(|&s| vec![s % m]).collect();
        let mut g = Self::build(vertices, &conn, b, m as u64, move |x, y| vec![(x[0] + y[0]) % m])?;
        g.regular_columns = true;
        g.projective_columns = true;
        Ok(g)
    }

    fn build(
        vertices: Vec<Vec<Elem>>,
        connection: &[Vec<Elem>],
        loops: u32,
        base: u64,
        add: impl Fn(&[Elem], &[Elem]) -> Vec<Elem> + Sync,
    ) -> Result<Self, GraphError> {
        let index: HashMap<u64, u32> =
            vertices.iter().enumerate().map(|(i, v)| (encode(v, base), i as u32)).collect();
        let lookup = |v: &[Elem]| index.get(&encode(v, base)).copied();
        let conn: Vec<u32> = connection.iter().map(|s| lookup(s).ok_or(GraphError::NotSymmetric)).collect::<Result<_, _>>()?;
        let neighbors: Vec<u32> = vertices
            .par_iter()
            .flat_map_iter(|v| connection.iter().map(|s| lookup(&add(v, s)).expect("group is closed")).collect::<Vec<_>>())
            .collect();
        let g = CayleyGraph {
            ring: None,
            vertices,
            connection: conn,
            neighbors,
            loops,
            regular_columns: true,
            projective_columns: true,
        };
        // -S = S as multisets: the multiset of neighbours of 0 must equal the
        // multiset of vertices having 0 as a neighbour.
        let mut out_of_zero: Vec<u32> = g.connection.clone();
        let mut into_zero: Vec<u32> =
            (0..g.vertices.len() as u32).flat_map(|v| g.neighbors_of(v).iter().filter(|&&w| w == 0).map(move |_| v)).collect();
        out_of_zero.sort_unstable();
        into_zero.sort_unstable();
        if out_of_zero != into_zero {
            return Err(GraphError::NotSymmetric);
        }
        Ok(g)
    }

    pub fn ring(&self) -> Option<&Ring> {
        self.ring.as_deref()
    }
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    /// `|S|` counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.connection.len()
    }
    pub fn loops(&self) -> u32 {
        self.loops
    }
    /// Same graph with a different number of loops.
    pub fn with_loops(&self, b: u32) -> Self {
        CayleyGraph { loops: b, ..self.clone() }
    }
    pub fn vertex(&self, v: u32) -> &[Elem] {
        &self.vertices[v as usize]
    }
    pub fn connection_set(&self) -> &[u32] {
        &self.connection
    }
    pub fn neighbors_of(&self, v: u32) -> &[u32] {
        let d = self.degree();
        &self.neighbors[v as usize * d..(v as usize + 1) * d]
    }
    /// Every check column contains a unit.
    pub fn regular_columns(&self) -> bool {
        self.regular_columns
    }
    /// Check columns are pairwise non-associate.
    pub fn projective_columns(&self) -> bool {
        self.projective_columns
    }
    /// `0 ∉ S` and no element of `S` repeats.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        self.connection.iter().all(|&s| s != 0 && seen.insert(s))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors_of(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count()
    }

    /// Entry `(x, y)` of the adjacency matrix `A` (loops excluded).
    pub fn adjacency(&self, x: u32, y: u32) -> u32 {
        self.neighbors_of(x).iter().filter(|&&w| w == y).count() as u32
    }

    /// Dense adjacency matrix `A` (loops excluded).
    pub fn adjacency_matrix(&self) -> Vec<Vec<u32>> {
        let nv = self.vertex_count();
        (0..nv as u32)
            .map(|x| {
                let mut row = vec![0u32; nv];
                for &y in self.neighbors_of(x) {
                    row[y as usize] += 1;
                }
                row
            })
            .collect()
    }

    /// Edge list `x y` with `x <= y`, one line per edge (multi-edges repeat;
    /// loops are reported in the header, not listed).
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for x in 0..self.vertex_count() as u32 {
            for &y in self.neighbors_of(x) {
                if x < y || (x == y && self.connection.contains(&0)) {
                    writeln!(out, "{x} {y}").expect("string write");
                }
            }
        }
        out
    }

    pub fn header(&self, spectrum: Option<Vec<SpectrumEntry>>) -> GraphHeader {
        GraphHeader {
            vertices: self.vertex_count(),
            degree: self.degree(),
            b: self.loops,
            simple: self.is_simple(),
            connected: self.is_connected(),
            spectrum,
        }
    }
}

/// [`CayleyGraph::syndrome`] with the default budget.
pub fn syndrome_graph(ring: impl Into<Arc<Ring>>, h: &[Vec<Elem>], b: u32) -> Result<CayleyGraph, GraphError> {
    CayleyGraph::syndrome(ring, h, b)
}
