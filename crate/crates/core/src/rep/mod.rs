//! Quiver representations over `F_p`.

mod decompose;
mod homext;

pub use decompose::{
    decompose, end_radical, is_isomorphic, iso_between, loewy_length, radical_layers, Decomposition, EndRadical, Summand, ENGINE_SEED,
};
pub use homext::{
    cocycle_blocks, ext1_classes, ext_class_of, factor_morphism, flatten_blocks, hom_basis, middle_term,
    middle_term_of_cocycle, pullback_cocycle, pushout_cocycle, ExtClass, ExtData, Factorization, HomExt, MiddleTerm,
};

use crate::linalg::FieldMatrix;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid representation: {0}")]
    Invalid(String),
    #[error("truncation {given} too small, need at least {required}")]
    TruncationTooSmall { given: u32, required: u32 },
    #[error("input is not a semibrick: {0}")]
    NotSemibrick(String),
    #[error("endomorphism ring is not the base field: {0}")]
    NonSplitDivisionRing(String),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
}

/// A quiver; loops and parallel arrows are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    /// `(source, target)` as vertex indices.
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self, RepError> {
        for &(s, t) in &arrows {
            if s >= vertices.len() || t >= vertices.len() {
                return Err(RepError::Invalid(format!("arrow ({s},{t}) leaves the vertex set")));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Linear `A_n` with arrows `i -> i+1`, vertices named `1..n`.
    pub fn linear_a(n: usize) -> Self {
        Quiver {
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            arrows: (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        }
    }

    /// Cyclic quiver of rank `r` with arrows `i -> i-1` (indices mod r).
    pub fn cyclic(r: usize) -> Self {
        Quiver {
            vertices: (1..=r).map(|i| i.to_string()).collect(),
            arrows: (0..r).map(|i| (i, (i + r - 1) % r)).collect(),
        }
    }

    /// Loop at vertex 1 and one arrow `1 -> 2`.
    pub fn loop_and_arrow() -> Self {
        Quiver { vertices: vec!["1".into(), "2".into()], arrows: vec![(0, 0), (0, 1)] }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// True if some oriented cycle (including a loop) exists.
    pub fn has_cycle(&self) -> bool {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen < n
    }
}

/// A quiver together with an optional radical truncation `J^N = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub quiver: Quiver,
    pub truncation: Option<u32>,
    /// Objects are nilpotent representations.
    #[serde(default)]
    pub nilpotent: bool,
}

impl AlgebraSpec {
    pub fn hereditary(quiver: Quiver) -> Self {
        AlgebraSpec { quiver, truncation: None, nilpotent: false }
    }

    pub fn nilpotent(quiver: Quiver) -> Self {
        AlgebraSpec { quiver, truncation: None, nilpotent: true }
    }

    pub fn validate(&self) -> Result<(), RepError> {
        if self.quiver.has_cycle() && self.truncation.is_none() && !self.nilpotent {
            return Err(RepError::Invalid(
                "quiver has an oriented cycle: give a truncation or flag objects nilpotent".into(),
            ));
        }
        if self.truncation == Some(0) {
            return Err(RepError::Invalid("truncation must be at least 1".into()));
        }
        Ok(())
    }
}

/// A finite-dimensional representation: one space per vertex and one matrix
/// (`dim target x dim source`) per arrow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    pub quiver: Arc<Quiver>,
    pub p: u32,
    pub dims: Vec<usize>,
    pub mats: Vec<FieldMatrix>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rep{:?}", self.dims)
    }
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, p: u32, dims: Vec<usize>, mats: Vec<FieldMatrix>) -> Result<Self, RepError> {
        if dims.len() != quiver.vertex_count() {
            return Err(RepError::Invalid(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if mats.len() != quiver.arrows.len() {
            return Err(RepError::Invalid(format!(
                "{} matrices for {} arrows",
                mats.len(),
                quiver.arrows.len()
            )));
        }
        for (k, (&(s, t), m)) in quiver.arrows.iter().zip(&mats).enumerate() {
            m.check_modulus(p)?;
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(RepError::Invalid(format!(
                    "arrow {k} matrix is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[t],
                    dims[s]
                )));
            }
        }
        Ok(Representation { quiver, p, dims, mats })
    }

    pub fn zero(quiver: Arc<Quiver>, p: u32) -> Self {
        let n = quiver.vertex_count();
        let mats = quiver.arrows.iter().map(|_| FieldMatrix::zeros(p, 0, 0)).collect();
        Representation { quiver, p, dims: vec![0; n], mats }
    }

    pub fn simple(quiver: Arc<Quiver>, p: u32, vertex: usize) -> Self {
        let mut dims = vec![0; quiver.vertex_count()];
        dims[vertex] = 1;
        let mats = quiver
            .arrows
            .iter()
            .map(|&(s, t)| FieldMatrix::zeros(p, dims[t], dims[s]))
            .collect();
        Representation { quiver, p, dims, mats }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Offsets of each vertex space inside the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            off.push(acc);
            acc += d;
        }
        off
    }

    pub fn same_algebra(&self, other: &Self) -> Result<(), RepError> {
        if self.p != other.p {
            return Err(RepError::Linalg(crate::linalg::LinalgError::ModulusMismatch(self.p, other.p)));
        }
        if !Arc::ptr_eq(&self.quiver, &other.quiver) && self.quiver != other.quiver {
            return Err(RepError::AlgebraMismatch("representations over different quivers".into()));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.direct_sum(b)).collect();
        Representation { quiver: self.quiver.clone(), p: self.p, dims, mats }
    }

    pub fn direct_sum_all<'a>(quiver: Arc<Quiver>, p: u32, parts: impl IntoIterator<Item = &'a Representation>) -> Self {
        parts.into_iter().fold(Self::zero(quiver, p), |acc, r| acc.direct_sum(r))
    }

    /// The total arrow action on `⊕ V_i` as a square matrix.
    pub fn total_operator(&self) -> FieldMatrix {
        let n = self.total_dim();
        let off = self.offsets();
        let mut m = FieldMatrix::zeros(self.p, n, n);
        for (&(s, t), a) in self.quiver.arrows.iter().zip(&self.mats) {
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    let v = crate::linalg::add(m.get(off[t] + i, off[s] + j), a.get(i, j), self.p);
                    m.set(off[t] + i, off[s] + j, v);
                }
            }
        }
        m
    }

    pub fn is_nilpotent(&self) -> bool {
        self.total_operator().is_nilpotent()
    }

    /// Transports the structure along vertexwise invertible matrices `g_i`:
    /// the result has arrow maps `g_t a g_s^{-1}`.
    pub fn conjugate(&self, g: &[FieldMatrix]) -> Option<Self> {
        let inv: Option<Vec<_>> = g.iter().map(|m| m.inverse()).collect();
        let inv = inv?;
        let mats = self
            .quiver
            .arrows
            .iter()
            .zip(&self.mats)
            .map(|(&(s, t), a)| g[t].mul(a).mul(&inv[s]))
            .collect();
        Some(Representation { quiver: self.quiver.clone(), p: self.p, dims: self.dims.clone(), mats })
    }

    /// Subrepresentation on the vertexwise column spaces of `basis[i]`
    /// (assumed invariant); returns the sub and its inclusion blocks.
    pub fn restrict(&self, basis: &[FieldMatrix]) -> (Self, Vec<FieldMatrix>) {
        let dims: Vec<usize> = basis.iter().map(|b| b.cols()).collect();
        let lefts: Vec<FieldMatrix> = basis
            .iter()
            .map(|b| b.left_inverse().unwrap_or_else(|| FieldMatrix::zeros(self.p, b.cols(), b.rows())))
            .collect();
        let mats = self
            .quiver
            .arrows
            .iter()
            .zip(&self.mats)
            .map(|(&(s, t), a)| lefts[t].mul(&a.mul(&basis[s])))
            .collect();
        (
            Representation { quiver: self.quiver.clone(), p: self.p, dims, mats },
            basis.to_vec(),
        )
    }

    pub fn to_json(&self) -> RepresentationJson {
        RepresentationJson {
            quiver: (*self.quiver).clone(),
            dims: self.dims.clone(),
            matrices: self.mats.iter().map(|m| m.to_rows()).collect(),
            p: self.p,
        }
    }

    pub fn from_json(j: &RepresentationJson) -> Result<Self, RepError> {
        let q = Arc::new(Quiver::new(j.quiver.vertices.clone(), j.quiver.arrows.clone())?);
        let mut mats = Vec::new();
        for (k, &(s, t)) in q.arrows.iter().enumerate() {
            let rows = j.matrices.get(k).ok_or_else(|| RepError::Invalid(format!("missing matrix {k}")))?;
            let (r, c) = (*j.dims.get(t).unwrap_or(&0), *j.dims.get(s).unwrap_or(&0));
            let m = if r == 0 || c == 0 {
                FieldMatrix::zeros(j.p, r, c)
            } else {
                FieldMatrix::from_rows(j.p, r, c, rows)?
            };
            mats.push(m);
        }
        Representation::new(q, j.p, j.dims.clone(), mats)
    }
}

/// Serialized representation: quiver, dimension vector, integer matrices, modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub quiver: Quiver,
    pub dims: Vec<usize>,
    pub matrices: Vec<Vec<Vec<i64>>>,
    pub p: u32,
}

/// A morphism of representations, one block per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct RepMorphism {
    pub source: Arc<Representation>,
    pub target: Arc<Representation>,
    pub blocks: Vec<FieldMatrix>,
}

impl std::fmt::Debug for RepMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} -> {:?} {:?}", self.source, self.target, self.blocks)
    }
}

impl RepMorphism {
    pub fn zero(source: Arc<Representation>, target: Arc<Representation>) -> Self {
        let blocks = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| FieldMatrix::zeros(source.p, t, s))
            .collect();
        RepMorphism { source, target, blocks }
    }

    pub fn identity(m: Arc<Representation>) -> Self {
        let blocks = m.dims.iter().map(|&d| FieldMatrix::identity(m.p, d)).collect();
        RepMorphism { source: m.clone(), target: m, blocks }
    }

    /// Builds a morphism from a flat coordinate vector (vertex blocks
    /// concatenated, each row-major).
    pub fn from_flat(source: Arc<Representation>, target: Arc<Representation>, flat: &[u32]) -> Self {
        let mut blocks = Vec::with_capacity(source.dims.len());
        let mut k = 0;
        for (&s, &t) in source.dims.iter().zip(&target.dims) {
            blocks.push(FieldMatrix::from_flat(source.p, t, s, flat[k..k + s * t].to_vec()));
            k += s * t;
        }
        RepMorphism { source, target, blocks }
    }

    pub fn to_flat(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    pub fn is_commuting(&self) -> bool {
        self.source.quiver.arrows.iter().enumerate().all(|(k, &(s, t))| {
            self.blocks[t].mul(&self.source.mats[k]) == self.target.mats[k].mul(&self.blocks[s])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &RepMorphism) -> RepMorphism {
        let blocks = self.blocks.iter().zip(&first.blocks).map(|(g, f)| g.mul(f)).collect();
        RepMorphism { source: first.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn add(&self, o: &RepMorphism) -> RepMorphism {
        let blocks = self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect();
        RepMorphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn scale(&self, c: u32) -> RepMorphism {
        let blocks = self.blocks.iter().map(|a| a.scale(c)).collect();
        RepMorphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.blocks.iter().all(|b| b.rows() == 0 || b.inverse().is_some())
    }

    pub fn is_mono(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    /// The whole map as a block-diagonal matrix on total spaces.
    pub fn total_matrix(&self) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.source.p, self.target.total_dim(), self.source.total_dim());
        let (so, to) = (self.source.offsets(), self.target.offsets());
        for (i, b) in self.blocks.iter().enumerate() {
            m.set_block(to[i], so[i], b);
        }
        m
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        let blocks: Option<Vec<_>> = self
            .blocks
            .iter()
            .map(|b| if b.rows() == 0 && b.cols() == 0 { Some(b.clone()) } else { b.inverse() })
            .collect();
        Some(RepMorphism { source: self.target.clone(), target: self.source.clone(), blocks: blocks? })
    }
}
