//! The bounded derived category of a hereditary heart: objects are finite sums
//! of shifted indecomposable modules, morphisms have degree-0 (module map)
//! and degree-1 (extension class) components.

use crate::heart::{ClosureDepth, HeartCatalog};
use crate::linalg::{self, FieldMatrix};
use crate::rep::{self, RepError, RepMorphism, Representation};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivedError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("morphism shape does not match its source and target")]
    BadMorphism,
    #[error("cone of a mixed-degree morphism cannot be separated: {0}")]
    MixedDegreeCone(String),
}

/// An indecomposable object `M[shift]`, `M` a catalog module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Indec {
    pub module: usize,
    pub shift: i32,
}

impl Indec {
    pub fn new(module: usize, shift: i32) -> Self {
        Indec { module, shift }
    }

    pub fn shifted(self, k: i32) -> Self {
        Indec { module: self.module, shift: self.shift + k }
    }
}

/// A finite direct sum of indecomposables, kept in the given order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DObject {
    pub summands: Vec<Indec>,
}

impl DObject {
    pub fn zero() -> Self {
        DObject { summands: Vec::new() }
    }

    pub fn single(x: Indec) -> Self {
        DObject { summands: vec![x] }
    }

    pub fn from_vec(summands: Vec<Indec>) -> Self {
        DObject { summands }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn shifted(&self, k: i32) -> Self {
        DObject { summands: self.summands.iter().map(|x| x.shifted(k)).collect() }
    }

    /// Summands sorted; two objects are isomorphic iff these agree.
    pub fn sorted(&self) -> Self {
        let mut s = self.summands.clone();
        s.sort();
        DObject { summands: s }
    }

    pub fn direct_sum(&self, o: &DObject) -> Self {
        let mut s = self.summands.clone();
        s.extend(o.summands.iter().copied());
        DObject { summands: s }
    }
}

/// A morphism as a matrix of graded components: `components[i][j]` are the
/// coordinates of the map from source summand `j` to target summand `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DMorphism {
    pub source: DObject,
    pub target: DObject,
    pub components: Vec<Vec<Vec<u32>>>,
}

impl DMorphism {
    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().flatten().all(|&c| c == 0)
    }

    /// All coordinates concatenated (for span computations).
    pub fn flat(&self) -> Vec<u32> {
        self.components.iter().flatten().flatten().copied().collect()
    }
}

/// A distinguished triangle `x -f-> y -> z -> x[1]` produced by the cone constructor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub x: DObject,
    pub y: DObject,
    pub z: DObject,
    pub f: DMorphism,
}

impl Triangle {
    /// Rotation `y -> z -> x[1] -> y[1]` at object level.
    pub fn rotated_objects(&self) -> (DObject, DObject, DObject) {
        (self.y.clone(), self.z.clone(), self.x.shifted(1))
    }
}

/// `D^b` of the heart described by a module catalog.
#[derive(Debug)]
pub struct Derived {
    pub heart: HeartCatalog,
    pub truncation: Option<u32>,
    pub depth: ClosureDepth,
}

/// Extension closure result at the derived level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DClosure {
    pub members: Vec<Indec>,
    pub capped: bool,
}

impl Derived {
    pub fn new(heart: HeartCatalog, truncation: Option<u32>, depth: ClosureDepth) -> Self {
        Derived { heart, truncation, depth }
    }

    pub fn p(&self) -> u32 {
        self.heart.p
    }

    pub fn length(&self, x: Indec) -> usize {
        self.heart.length(x.module)
    }

    pub fn object_length(&self, x: &DObject) -> usize {
        x.summands.iter().map(|&s| self.length(s)).sum()
    }

    /// Degree of maps `x -> y`: 0 for equal shifts, 1 for an Ext class, else none.
    pub fn degree(x: Indec, y: Indec) -> Option<u8> {
        match y.shift - x.shift {
            0 => Some(0),
            1 => Some(1),
            _ => None,
        }
    }

    pub fn hom_dim(&self, x: Indec, y: Indec) -> usize {
        match Self::degree(x, y) {
            Some(0) => self.heart.hom_dim(x.module, y.module),
            Some(_) => self.heart.ext_dim(x.module, y.module),
            None => 0,
        }
    }

    pub fn hom_dim_obj(&self, x: &DObject, y: &DObject) -> usize {
        x.summands.iter().map(|&a| y.summands.iter().map(|&b| self.hom_dim(a, b)).sum::<usize>()).sum()
    }

    /// Unit-vector basis of `Hom(x, y)`.
    pub fn basis(&self, x: Indec, y: Indec) -> Vec<Vec<u32>> {
        let d = self.hom_dim(x, y);
        (0..d)
            .map(|k| {
                let mut v = vec![0; d];
                v[k] = 1;
                v
            })
            .collect()
    }

    pub fn zero_morphism(&self, source: &DObject, target: &DObject) -> DMorphism {
        let components = target
            .summands
            .iter()
            .map(|&t| source.summands.iter().map(|&s| vec![0; self.hom_dim(s, t)]).collect())
            .collect();
        DMorphism { source: source.clone(), target: target.clone(), components }
    }

    pub fn identity(&self, x: &DObject) -> DMorphism {
        let mut m = self.zero_morphism(x, x);
        for (i, &s) in x.summands.iter().enumerate() {
            let id = rep::RepMorphism::identity(self.heart.module(s.module));
            m.components[i][i] = self.heart.hom_coords(s.module, s.module, &id);
        }
        m
    }

    /// Single-component morphism `x -> y` with given coordinates.
    pub fn elementary(&self, x: Indec, y: Indec, coords: Vec<u32>) -> DMorphism {
        DMorphism { source: DObject::single(x), target: DObject::single(y), components: vec![vec![coords]] }
    }

    /// `g ∘ f` for components `f: x -> y`, `g: y -> z`.
    pub fn compose_pair(&self, x: Indec, y: Indec, z: Indec, g: &[u32], f: &[u32]) -> Vec<u32> {
        let out = self.hom_dim(x, z);
        if out == 0 {
            return Vec::new();
        }
        let (Some(df), Some(dg)) = (Self::degree(x, y), Self::degree(y, z)) else {
            return vec![0; out];
        };
        let h = &self.heart;
        match (df, dg) {
            (0, 0) => h.compose_hom(x.module, y.module, z.module, g, f),
            (0, 1) => h.pullback(x.module, y.module, z.module, g, f),
            (1, 0) => h.pushout(x.module, y.module, z.module, f, g),
            _ => vec![0; out],
        }
    }

    pub fn compose(&self, g: &DMorphism, f: &DMorphism) -> DMorphism {
        debug_assert_eq!(f.target, g.source);
        let mut out = self.zero_morphism(&f.source, &g.target);
        let p = self.p();
        for (k, &z) in g.target.summands.iter().enumerate() {
            for (j, &x) in f.source.summands.iter().enumerate() {
                let acc = &mut out.components[k][j];
                if acc.is_empty() {
                    continue;
                }
                for (i, &y) in f.target.summands.iter().enumerate() {
                    let c = self.compose_pair(x, y, z, &g.components[k][i], &f.components[i][j]);
                    for (a, b) in acc.iter_mut().zip(c) {
                        *a = linalg::add(*a, b, p);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &DMorphism, b: &DMorphism) -> DMorphism {
        let p = self.p();
        let mut out = a.clone();
        for (ra, rb) in out.components.iter_mut().zip(&b.components) {
            for (ca, cb) in ra.iter_mut().zip(rb) {
                for (x, y) in ca.iter_mut().zip(cb) {
                    *x = linalg::add(*x, *y, p);
                }
            }
        }
        out
    }

    fn validate(&self, f: &DMorphism) -> Result<(), DerivedError> {
        if f.components.len() != f.target.len() {
            return Err(DerivedError::BadMorphism);
        }
        for (i, row) in f.components.iter().enumerate() {
            if row.len() != f.source.len() {
                return Err(DerivedError::BadMorphism);
            }
            for (j, c) in row.iter().enumerate() {
                if c.len() != self.hom_dim(f.source.summands[j], f.target.summands[i]) {
                    return Err(DerivedError::BadMorphism);
                }
            }
        }
        Ok(())
    }

    fn level_rep(&self, obj: &DObject, idx: &[usize]) -> Arc<Representation> {
        let parts: Vec<Arc<Representation>> = idx.iter().map(|&i| self.heart.module(obj.summands[i].module)).collect();
        Arc::new(Representation::direct_sum_all(
            self.heart.quiver.clone(),
            self.p(),
            parts.iter().map(|r| r.as_ref()),
        ))
    }

    /// Degree-0 part of `f` between the level-`k` pieces as a module map.
    fn level_map(&self, f: &DMorphism, src: &[usize], tgt: &[usize], s_rep: &Arc<Representation>, t_rep: &Arc<Representation>) -> RepMorphism {
        let p = self.p();
        let nv = s_rep.dims.len();
        let mut blocks: Vec<FieldMatrix> = (0..nv).map(|v| FieldMatrix::zeros(p, t_rep.dims[v], s_rep.dims[v])).collect();
        let mut roff = vec![0usize; nv];
        for &i in tgt {
            let ti = f.target.summands[i];
            let mut coff = vec![0usize; nv];
            for &j in src {
                let sj = f.source.summands[j];
                let m = self.heart.hom_morphism(sj.module, ti.module, &f.components[i][j]);
                for v in 0..nv {
                    blocks[v].set_block(roff[v], coff[v], &m.blocks[v]);
                    coff[v] += m.blocks[v].cols();
                }
            }
            let dims = self.heart.dims(ti.module);
            for v in 0..nv {
                roff[v] += dims[v];
            }
        }
        RepMorphism { source: s_rep.clone(), target: t_rep.clone(), blocks }
    }

    /// Degree-1 part of `f` from level `k` sources to level `k+1` targets as a cocycle.
    fn level_cocycle(&self, f: &DMorphism, src: &[usize], tgt: &[usize], s_rep: &Representation, t_rep: &Representation) -> Vec<u32> {
        let p = self.p();
        let arrows = &self.heart.quiver.arrows;
        let mut blocks: Vec<FieldMatrix> = arrows
            .iter()
            .map(|&(s, t)| FieldMatrix::zeros(p, t_rep.dims[t], s_rep.dims[s]))
            .collect();
        let nv = s_rep.dims.len();
        let mut roff = vec![0usize; nv];
        for &i in tgt {
            let ti = f.target.summands[i];
            let tdims = self.heart.dims(ti.module);
            let mut coff = vec![0usize; nv];
            for &j in src {
                let sj = f.source.summands[j];
                let sdims = self.heart.dims(sj.module);
                let coords = &f.components[i][j];
                if coords.iter().any(|&c| c != 0) {
                    let he = self.heart.homext(sj.module, ti.module);
                    let cocycle = he.ext.cocycle(coords, p);
                    let cb = rep::cocycle_blocks(&self.heart.module(sj.module), &self.heart.module(ti.module), &cocycle);
                    for (a, &(s, t)) in arrows.iter().enumerate() {
                        blocks[a].set_block(roff[t], coff[s], &cb[a]);
                    }
                }
                for v in 0..nv {
                    coff[v] += sdims[v];
                }
            }
            for v in 0..nv {
                roff[v] += tdims[v];
            }
        }
        rep::flatten_blocks(&blocks)
    }

    /// Cone of `f: X -> Y`. Level by level, `H_k(cone)` is the extension of
    /// `ker f⁰_{k-1}` by `coker f⁰_k` classified by the degree-1 part of `f`.
    pub fn cone(&self, f: &DMorphism) -> Result<Triangle, DerivedError> {
        self.validate(f)?;
        let shifts: Vec<i32> = f.source.summands.iter().chain(&f.target.summands).map(|x| x.shift).collect();
        let mut z = Vec::new();
        if let (Some(&lo), Some(&hi)) = (shifts.iter().min(), shifts.iter().max()) {
            let at = |obj: &DObject, k: i32| -> Vec<usize> {
                (0..obj.len()).filter(|&i| obj.summands[i].shift == k).collect()
            };
            let mut prev: Option<(Vec<usize>, Arc<Representation>, rep::Factorization)> = None;
            for k in lo..=hi + 1 {
                let (xs, ys) = (at(&f.source, k), at(&f.target, k));
                let (xr, yr) = (self.level_rep(&f.source, &xs), self.level_rep(&f.target, &ys));
                let f0 = self.level_map(f, &xs, &ys, &xr, &yr);
                let fac = rep::factor_morphism(&f0);
                let coker = fac.cokernel.clone();
                let middle = match &prev {
                    Some((pxs, pxr, pfac)) if pfac.kernel.total_dim() > 0 || coker.total_dim() > 0 => {
                        let c = self.level_cocycle(f, pxs, &ys, pxr, &yr);
                        let pulled = rep::pullback_cocycle(pxr, &yr, &c, &pfac.kernel_inclusion);
                        let pushed = rep::pushout_cocycle(&pfac.kernel, &yr, &pulled, &fac.cokernel_projection);
                        Some(rep::middle_term_of_cocycle(&pfac.kernel, &coker, &pushed).middle)
                    }
                    None if coker.total_dim() > 0 => Some(coker.clone()),
                    _ => None,
                };
                if let Some(m) = middle {
                    for id in self.heart.intern_decomposed(&m)? {
                        z.push(Indec::new(id, k));
                    }
                }
                prev = Some((xs, xr, fac));
            }
        }
        z.sort();
        Ok(Triangle { x: f.source.clone(), y: f.target.clone(), z: DObject::from_vec(z), f: f.clone() })
    }

    /// Cocone `W -> X -f-> Y`: returns `W = cone(f)[-1]`.
    pub fn cocone(&self, f: &DMorphism) -> Result<DObject, DerivedError> {
        Ok(self.cone(f)?.z.shifted(-1))
    }

    /// Checks that the generators are pairwise Hom-orthogonal bricks.
    pub fn check_semibrick(&self, gens: &[Indec]) -> Result<(), RepError> {
        for (i, &a) in gens.iter().enumerate() {
            if self.hom_dim(a, a) != 1 {
                return Err(RepError::NotSemibrick(format!("{a:?} is not a brick")));
            }
            for &b in &gens[i + 1..] {
                if a == b || self.hom_dim(a, b) + self.hom_dim(b, a) > 0 {
                    return Err(RepError::NotSemibrick(format!("{a:?} and {b:?} are not orthogonal")));
                }
            }
        }
        Ok(())
    }

    /// Extension closure `⟨gens⟩` in `D`, up to total module length `cap`.
    pub fn closure(&self, gens: &[Indec], cap: usize) -> Result<DClosure, DerivedError> {
        if gens.is_empty() {
            return Ok(DClosure { members: Vec::new(), capped: false });
        }
        let k = gens[0].shift;
        if gens.iter().all(|g| g.shift == k) {
            let mods: Vec<usize> = gens.iter().map(|g| g.module).collect();
            let c = self.heart.extension_closure(&mods, cap, self.depth)?;
            return Ok(DClosure {
                members: c.members.into_iter().map(|m| Indec::new(m, k)).collect(),
                capped: c.capped,
            });
        }
        self.check_semibrick(gens)?;
        let mut members: Vec<Indec> = gens.to_vec();
        let mut capped = false;
        let mut done: HashSet<(Indec, Indec)> = HashSet::new();
        loop {
            let mut fresh = Vec::new();
            for &g in gens {
                for &x in &members {
                    if !done.insert((g, x)) {
                        continue;
                    }
                    for (a, b) in [(g, x), (x, g)] {
                        // Extensions a -> e -> b -> a[1].
                        let a1 = a.shifted(1);
                        let d = self.hom_dim(b, a1);
                        if d == 0 {
                            continue;
                        }
                        if self.length(a) + self.length(b) > cap {
                            capped = true;
                            continue;
                        }
                        let mut classes: Vec<Vec<u32>> = self.basis(b, a1);
                        if d > 1 {
                            classes.push(vec![1; d]);
                        }
                        for c in classes {
                            let e = self.cocone(&self.elementary(b, a1, c))?;
                            for &s in &e.summands {
                                if !members.contains(&s) && !fresh.contains(&s) {
                                    fresh.push(s);
                                }
                            }
                        }
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            members.extend(fresh);
        }
        members.sort_by_key(|&x| (self.length(x), x));
        Ok(DClosure { members, capped })
    }
}
