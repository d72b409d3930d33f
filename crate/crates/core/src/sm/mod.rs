//! Simple-minded collections and systems: axioms, approximations, mutation,
//! simple tilts, setups, mutation pairs and adjacency certificates.

pub mod adjacency;
pub mod approx;
pub mod checks;
pub mod mutate;
pub mod theorem1;
pub mod tilt;

use crate::derived::{Indec, Triangle};
use crate::models::{CategoryModel, ModelError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("duplicate member {0:?}")]
    DuplicateMember(Indec),
    #[error("subset index {0} is not a member")]
    NotSubset(usize),
    #[error("no minimal approximation for {member:?}: {outcome}")]
    ApproximationMissing { member: Indec, outcome: String, chain: Vec<Indec> },
    #[error("mutation of {0:?} is not indecomposable")]
    NotIndecomposable(Indec),
    #[error("setup fails: {note}")]
    SetupFails { note: String, witness: Vec<Indec> },
    #[error("no unique shift in the reduction for {0:?}")]
    ReductionShift(Indec),
}

impl From<crate::derived::DerivedError> for SmError {
    fn from(e: crate::derived::DerivedError) -> Self {
        SmError::Model(e.into())
    }
}

impl From<crate::rep::RepError> for SmError {
    fn from(e: crate::rep::RepError) -> Self {
        SmError::Model(e.into())
    }
}

impl SmError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        use crate::derived::DerivedError as D;
        use crate::rep::RepError as R;
        match self {
            SmError::Model(ModelError::Rep(R::NotSemibrick(_)))
            | SmError::Model(ModelError::Derived(D::Rep(R::NotSemibrick(_)))) => "NotSemibrick",
            SmError::Model(ModelError::Rep(R::TruncationTooSmall { .. })) => "TruncationTooSmall",
            SmError::Model(ModelError::Derived(D::MixedDegreeCone(_))) => "MixedDegreeCone",
            SmError::Model(ModelError::WindowAbsent) => "WindowAbsent",
            SmError::Model(ModelError::NoSerreFunctor(_)) => "NoSerreFunctor",
            SmError::Model(ModelError::UnknownLabel(_)) => "UnknownLabel",
            SmError::Model(_) => "ModelError",
            SmError::DuplicateMember(_) => "DuplicateMember",
            SmError::NotSubset(_) => "NotSubset",
            SmError::ApproximationMissing { .. } => "ApproximationMissing",
            SmError::NotIndecomposable(_) => "NotIndecomposable",
            SmError::SetupFails { .. } => "SetupFails",
            SmError::ReductionShift(_) => "ReductionShift",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CollectionKind {
    Smc,
    Sms { w: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

/// Outcome of a check. `Fails` carries the objects that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Vec<Indec>,
    pub note: String,
    pub window: Option<(i32, i32)>,
    pub cap: Option<usize>,
}

impl Verdict {
    pub fn holds(note: impl Into<String>) -> Self {
        Verdict { status: Status::Holds, witness: Vec::new(), note: note.into(), window: None, cap: None }
    }

    pub fn fails(witness: Vec<Indec>, note: impl Into<String>) -> Self {
        Verdict { status: Status::Fails, witness, note: note.into(), window: None, cap: None }
    }

    pub fn inconclusive(note: impl Into<String>) -> Self {
        Verdict { status: Status::Inconclusive, witness: Vec::new(), note: note.into(), window: None, cap: None }
    }

    pub fn with_window(mut self, window: Option<(i32, i32)>) -> Self {
        self.window = window;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = Some(cap);
        self
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    /// First non-holding verdict, or a holding one with the joined notes.
    pub fn all(verdicts: Vec<Verdict>) -> Verdict {
        if let Some(v) = verdicts.iter().find(|v| v.is_fails()) {
            return v.clone();
        }
        if let Some(v) = verdicts.iter().find(|v| v.status == Status::Inconclusive) {
            return v.clone();
        }
        let notes: Vec<&str> = verdicts.iter().map(|v| v.note.as_str()).filter(|n| !n.is_empty()).collect();
        let mut out = Verdict::holds(notes.join("; "));
        out.window = verdicts.iter().find_map(|v| v.window);
        out.cap = verdicts.iter().find_map(|v| v.cap);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationStep {
    pub direction: Direction,
    /// Indices into the members of the collection that was mutated.
    pub subset: Vec<usize>,
    pub triangles: Vec<Triangle>,
}

/// A finite collection of pairwise non-isomorphic indecomposables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collection {
    pub members: Vec<Indec>,
    pub kind: CollectionKind,
    pub history: Vec<MutationStep>,
}

impl Collection {
    /// Normalizes members in the model and rejects duplicates.
    pub fn new(model: &CategoryModel, members: Vec<Indec>, kind: CollectionKind) -> Result<Self, SmError> {
        let mut out: Vec<Indec> = Vec::with_capacity(members.len());
        for m in members {
            let n = model.normalize(m);
            if out.contains(&n) {
                return Err(SmError::DuplicateMember(n));
            }
            out.push(n);
        }
        Ok(Collection { members: out, kind, history: Vec::new() })
    }

    pub fn from_labels(model: &CategoryModel, labels: &[&str], kind: CollectionKind) -> Result<Self, SmError> {
        let members = labels.iter().map(|l| model.parse(l)).collect::<Result<Vec<_>, _>>()?;
        Collection::new(model, members, kind)
    }

    /// Members at the given indices.
    pub fn subset(&self, idx: &[usize]) -> Result<Vec<Indec>, SmError> {
        idx.iter().map(|&i| self.members.get(i).copied().ok_or(SmError::NotSubset(i))).collect()
    }

    /// Indices of the given members.
    pub fn indices_of(&self, model: &CategoryModel, objs: &[Indec]) -> Result<Vec<usize>, SmError> {
        objs.iter()
            .map(|&o| {
                let n = model.normalize(o);
                self.members.iter().position(|&m| m == n).ok_or(SmError::NotSubset(usize::MAX))
            })
            .collect()
    }

    /// Sorted members; equal keys mean equal collections.
    pub fn key(&self) -> Vec<Indec> {
        let mut k = self.members.clone();
        k.sort();
        k
    }

    pub fn same_members(&self, other: &Collection) -> bool {
        self.key() == other.key()
    }

    pub fn w(&self) -> Option<u32> {
        match self.kind {
            CollectionKind::Smc => None,
            CollectionKind::Sms { w } => Some(w),
        }
    }
}

/// Members of `all` outside `sub`.
pub fn complement(all: &[Indec], sub: &[Indec]) -> Vec<Indec> {
    all.iter().copied().filter(|x| !sub.contains(x)).collect()
}
