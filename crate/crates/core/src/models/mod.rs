//! Computable triangulated categories: derived categories of hereditary path
//! algebras, negative Calabi–Yau orbit categories of type A, and derived
//! categories of tubes and of nilpotent representations.

pub mod ar;
pub mod label;
pub mod preset;

use crate::derived::{DClosure, DMorphism, DObject, Derived, DerivedError, Indec, Triangle};
use crate::heart::{Closure, ClosureDepth, HeartCatalog};
use crate::linalg::{self, DEFAULT_MODULUS};
use crate::rep::{self, radical_layers, Quiver, RepError, Representation};
use ar::ArData;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Derived(#[from] DerivedError),
    #[error("no shift window set on an infinite-type model")]
    WindowAbsent,
    #[error("model has no Serre functor: {0}")]
    NoSerreFunctor(String),
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("unknown object label: {0}")]
    UnknownLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelKind {
    DerivedHereditary {
        quiver: Quiver,
    },
    OrbitCy {
        n: usize,
        w: u32,
    },
    Tube {
        rank: usize,
    },
    Nil {
        quiver: Quiver,
        #[serde(default)]
        truncation: Option<u32>,
    },
}

fn default_cap() -> usize {
    8
}

fn default_p() -> u32 {
    DEFAULT_MODULUS
}

/// Model definition, as read from a model file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    #[serde(flatten)]
    pub kind: ModelKind,
    #[serde(default)]
    pub window: Option<(i32, i32)>,
    /// Bound on module length when enumerating or closing under extensions.
    #[serde(default = "default_cap")]
    pub cap: usize,
    #[serde(default = "default_p")]
    pub p: u32,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        ModelSpec { kind, window: None, cap: default_cap(), p: default_p() }
    }

    pub fn with_window(mut self, lo: i32, hi: i32) -> Self {
        self.window = Some((lo, hi));
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_p(mut self, p: u32) -> Self {
        self.p = p;
        self
    }
}

/// A category model with its module catalog and cached structure.
#[derive(Debug)]
pub struct CategoryModel {
    pub spec: ModelSpec,
    /// For the orbit model this is the covering `D^b(A_n)`.
    pub derived: Derived,
    base: Vec<usize>,
    base_capped: bool,
    ar: Option<ArData>,
    aliases: Vec<(String, Indec)>,
}

impl CategoryModel {
    pub fn new(spec: ModelSpec) -> Result<Self, ModelError> {
        if !linalg::is_prime(spec.p) {
            return Err(ModelError::Invalid(format!("modulus {} is not prime", spec.p)));
        }
        if let Some((lo, hi)) = spec.window {
            if lo > hi {
                return Err(ModelError::Invalid(format!("empty window [{lo}, {hi}]")));
            }
        }
        let (quiver, depth) = match &spec.kind {
            ModelKind::DerivedHereditary { quiver } => {
                if quiver.has_cycle() {
                    return Err(ModelError::Invalid("hereditary model needs an acyclic quiver".into()));
                }
                (quiver.clone(), ClosureDepth::Pairs)
            }
            ModelKind::OrbitCy { n, w } => {
                if *n == 0 || *w == 0 {
                    return Err(ModelError::Invalid("orbit model needs n >= 1 and w >= 1".into()));
                }
                (Quiver::linear_a(*n), ClosureDepth::Single)
            }
            ModelKind::Tube { rank } => {
                if *rank == 0 {
                    return Err(ModelError::Invalid("tube rank must be positive".into()));
                }
                (Quiver::cyclic(*rank), ClosureDepth::Single)
            }
            ModelKind::Nil { quiver, .. } => (quiver.clone(), ClosureDepth::Single),
        };
        let truncation = match &spec.kind {
            ModelKind::Nil { truncation, .. } => *truncation,
            _ => None,
        };
        let heart = HeartCatalog::new(Arc::new(quiver), spec.p);
        let simples: Vec<usize> = (0..heart.quiver.vertex_count()).map(|v| heart.simple(v)).collect();
        let closure = if depth == ClosureDepth::Pairs {
            // Pair sums reach 2·cap + 1 before any indecomposable exceeds the cap.
            let mut c = heart.extension_closure(&simples, 2 * spec.cap + 1, depth)?;
            if c.members.iter().any(|&m| heart.length(m) > spec.cap) {
                c.members.retain(|&m| heart.length(m) <= spec.cap);
                c.capped = true;
            }
            c
        } else if matches!(spec.kind, ModelKind::OrbitCy { .. }) {
            heart.extension_closure(&simples, spec.cap, depth)?
        } else {
            uniserial_catalog(&heart, &simples, spec.cap)?
        };
        let mut base = closure.members;
        if let Some(t) = truncation {
            base.retain(|&m| heart.loewy(m) <= t as usize);
        }
        let ar = match &spec.kind {
            ModelKind::DerivedHereditary { .. } | ModelKind::OrbitCy { .. } if !closure.capped => {
                Some(ArData::compute(&heart, &base)?)
            }
            ModelKind::OrbitCy { .. } => {
                return Err(ModelError::Invalid(format!("cap {} is below the A_n module lengths", spec.cap)));
            }
            _ => None,
        };
        Ok(CategoryModel {
            derived: Derived::new(heart, truncation, depth),
            spec,
            base,
            base_capped: closure.capped,
            ar,
            aliases: Vec::new(),
        })
    }

    pub fn heart(&self) -> &HeartCatalog {
        &self.derived.heart
    }

    pub fn kind_name(&self) -> &'static str {
        match self.spec.kind {
            ModelKind::DerivedHereditary { .. } => "derived-hereditary",
            ModelKind::OrbitCy { .. } => "orbit-cy",
            ModelKind::Tube { .. } => "tube",
            ModelKind::Nil { .. } => "nil",
        }
    }

    /// Calabi–Yau parameter of the orbit model.
    pub fn orbit_w(&self) -> Option<u32> {
        match self.spec.kind {
            ModelKind::OrbitCy { w, .. } => Some(w),
            _ => None,
        }
    }

    pub fn is_orbit(&self) -> bool {
        self.orbit_w().is_some()
    }

    pub fn tube_rank(&self) -> Option<usize> {
        match self.spec.kind {
            ModelKind::Tube { rank } => Some(rank),
            _ => None,
        }
    }

    /// Indecomposable heart modules up to the length cap.
    pub fn base_modules(&self) -> &[usize] {
        &self.base
    }

    /// True when the heart has modules beyond the length cap.
    pub fn base_capped(&self) -> bool {
        self.base_capped
    }

    pub fn ar(&self) -> Option<&ArData> {
        self.ar.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.heart().quiver.vertex_count()
    }

    pub fn simple(&self, vertex: usize) -> Indec {
        Indec::new(self.heart().simple(vertex), 0)
    }

    pub fn simples(&self) -> Vec<Indec> {
        (0..self.vertex_count()).map(|v| self.simple(v)).collect()
    }

    pub fn length(&self, x: Indec) -> usize {
        self.derived.length(x)
    }

    pub fn window(&self) -> Result<(i32, i32), ModelError> {
        match (&self.spec.kind, self.spec.window) {
            (_, Some(w)) => Ok(w),
            (ModelKind::OrbitCy { w, .. }, None) => Ok((0, *w as i32)),
            (ModelKind::DerivedHereditary { .. }, None) if !self.base_capped => Ok((-1, 1)),
            _ => Err(ModelError::WindowAbsent),
        }
    }

    /// Catalog of indecomposable objects: shifted modules inside the window,
    /// or one representative per orbit for the orbit model.
    pub fn enumerate_indecs(&self) -> Result<Vec<Indec>, ModelError> {
        let mut out = Vec::new();
        if let Some(w) = self.orbit_w() {
            for k in 0..=w as i32 {
                for &m in &self.base {
                    let x = Indec::new(m, k);
                    if self.normalize(x) == x {
                        out.push(x);
                    }
                }
            }
        } else {
            let (lo, hi) = self.window()?;
            for k in lo..=hi {
                out.extend(self.base.iter().map(|&m| Indec::new(m, k)));
            }
        }
        out.sort_by_key(|&x| (x.shift, self.length(x), x.module));
        Ok(out)
    }

    /// Orbit functor `F = S[w]` applied `times` times (negative for inverse).
    pub fn orbit_functor(&self, x: Indec, times: i32) -> Indec {
        let (Some(w), Some(ar)) = (self.orbit_w(), self.ar.as_ref()) else {
            return x;
        };
        let mut y = x;
        for _ in 0..times.max(0) {
            y = ar.serre(y).shifted(w as i32);
        }
        for _ in 0..(-times).max(0) {
            y = ar.serre_inv(y.shifted(-(w as i32)));
        }
        y
    }

    /// Canonical representative: on the orbit model, the translate with the
    /// least non-negative shift.
    pub fn normalize(&self, x: Indec) -> Indec {
        if !self.is_orbit() {
            return x;
        }
        let mut y = x;
        while y.shift < 0 {
            y = self.orbit_functor(y, 1);
        }
        loop {
            let down = self.orbit_functor(y, -1);
            if down.shift < 0 {
                return y;
            }
            y = down;
        }
    }

    pub fn normalize_obj(&self, x: &DObject) -> DObject {
        DObject::from_vec(x.summands.iter().map(|&s| self.normalize(s)).collect()).sorted()
    }

    /// Translates `F^i x` for `i` in `range` (just `x` outside the orbit model).
    pub fn lifts(&self, x: Indec, range: std::ops::RangeInclusive<i32>) -> Vec<Indec> {
        if !self.is_orbit() {
            return vec![x];
        }
        let base = self.normalize(x);
        range.map(|i| self.orbit_functor(base, i)).collect()
    }

    pub fn shift(&self, x: Indec, k: i32) -> Indec {
        self.normalize(x.shifted(k))
    }

    /// `dim Hom(x, y)`; on the orbit model the sum over all translates of `y`.
    pub fn hom_dim(&self, x: Indec, y: Indec) -> usize {
        if !self.is_orbit() {
            return self.derived.hom_dim(x, y);
        }
        let (x0, y0) = (self.normalize(x), self.normalize(y));
        (-3..=3).map(|i| self.derived.hom_dim(x0, self.orbit_functor(y0, i))).sum()
    }

    pub fn hom_dim_obj(&self, x: &DObject, y: &DObject) -> usize {
        x.summands.iter().map(|&a| y.summands.iter().map(|&b| self.hom_dim(a, b)).sum::<usize>()).sum()
    }

    /// Graded Hom: `d ↦ dim Hom(x, y[d])` for the degrees where it is nonzero.
    pub fn hom_space(&self, x: Indec, y: Indec) -> BTreeMap<i32, usize> {
        let span = self.orbit_w().map_or(1, |w| w as i32 + 2);
        let centre = x.shift - y.shift;
        (centre - span..=centre + span)
            .filter_map(|d| {
                let dim = self.hom_dim(x, y.shifted(d));
                (dim > 0).then_some((d, dim))
            })
            .collect()
    }

    /// AR translate on heart modules where defined.
    pub fn tau_module(&self, m: usize) -> Option<usize> {
        if let Some(r) = self.tube_rank() {
            return Some(self.rotate_tube(m, r, 1));
        }
        self.ar.as_ref().and_then(|ar| ar.tau.get(&m).copied())
    }

    fn rotate_tube(&self, m: usize, r: usize, steps: usize) -> usize {
        let rep = self.heart().module(m);
        let s = steps % r;
        let dims = (0..r).map(|v| rep.dims[(v + s) % r]).collect();
        let mats = (0..r).map(|a| rep.mats[(a + s) % r].clone()).collect();
        let rotated = Representation::new(rep.quiver.clone(), rep.p, dims, mats).expect("rotation preserves shape");
        self.heart().intern(Arc::new(rotated))
    }

    /// Serre functor on objects.
    pub fn serre(&self, x: Indec) -> Result<Indec, ModelError> {
        match &self.spec.kind {
            ModelKind::OrbitCy { w, .. } => Ok(self.shift(x, -(*w as i32))),
            ModelKind::Tube { rank } => Ok(Indec::new(self.rotate_tube(x.module, *rank, 1), x.shift + 1)),
            ModelKind::DerivedHereditary { .. } => match &self.ar {
                Some(ar) => Ok(ar.serre(x)),
                None => Err(ModelError::NoSerreFunctor("algebra is not representation-finite within the cap".into())),
            },
            ModelKind::Nil { .. } => {
                Err(ModelError::NoSerreFunctor("nilpotent representations have no Serre functor".into()))
            }
        }
    }

    /// Extension closure in the underlying derived category; on the orbit
    /// model the generators are replaced by their nearby translates.
    pub fn closure(&self, gens: &[Indec], cap: usize) -> Result<DClosure, ModelError> {
        let mut lifted: Vec<Indec> = Vec::new();
        for &g in gens {
            for l in self.lifts(g, -2..=2) {
                if !lifted.contains(&l) {
                    lifted.push(l);
                }
            }
        }
        if self.ar.is_none() {
            return self.base_closure(&lifted, cap);
        }
        // Finite type: every indecomposable is in the base, so the closure is
        // computed with the same reach as the base and is never cut.
        let longest = self.base.iter().map(|&m| self.heart().length(m)).max().unwrap_or(1);
        let mut c = self.derived.closure(&lifted, 2 * longest + 1)?;
        c.members.retain(|&x| self.length(x) <= longest);
        c.capped = false;
        Ok(c)
    }

    /// Closure restricted to the base catalog. With all generators in one
    /// shift, a base module belongs to the closure iff it is filtered by the
    /// generators; the result is cut when some member still extends a
    /// generator beyond `cap`.
    fn base_closure(&self, gens: &[Indec], cap: usize) -> Result<DClosure, ModelError> {
        let heart = self.heart();
        let Some(k) = gens.first().map(|g| g.shift) else {
            return Ok(DClosure { members: Vec::new(), capped: false });
        };
        if gens.iter().any(|g| g.shift != k) {
            let mut c = self.derived.closure(gens, cap)?;
            c.members.retain(|x| self.base.contains(&x.module));
            return Ok(c);
        }
        let mods: Vec<usize> = gens.iter().map(|g| g.module).collect();
        heart.check_semibrick(&mods)?;
        let mut members: Vec<usize> = mods.clone();
        for &m in &self.base {
            if heart.length(m) <= cap && !members.contains(&m) && heart.is_filtered_by(m, &mods) {
                members.push(m);
            }
        }
        let longest_gen = mods.iter().map(|&g| heart.length(g)).max().unwrap_or(0);
        let capped = members.iter().any(|&m| {
            heart.length(m) + longest_gen > cap
                && mods.iter().any(|&g| {
                    heart.length(m) + heart.length(g) > cap && (heart.ext_dim(g, m) > 0 || heart.ext_dim(m, g) > 0)
                })
        });
        members.sort_by_key(|&m| (heart.length(m), m));
        Ok(DClosure { members: members.into_iter().map(|m| Indec::new(m, k)).collect(), capped })
    }

    /// Closure members as canonical objects of the model.
    pub fn closure_members(&self, gens: &[Indec], cap: usize) -> Result<(Vec<Indec>, bool), ModelError> {
        let c = self.closure(gens, cap)?;
        let mut out: Vec<Indec> = Vec::new();
        for m in c.members {
            let n = self.normalize(m);
            if !out.contains(&n) {
                out.push(n);
            }
        }
        Ok((out, c.capped))
    }

    /// Cone in the underlying derived category (the cover for the orbit model).
    pub fn cone(&self, f: &DMorphism) -> Result<Triangle, ModelError> {
        Ok(self.derived.cone(f)?)
    }

    pub fn set_alias(&mut self, name: &str, x: Indec) {
        self.aliases.retain(|(n, _)| n != name);
        self.aliases.push((name.to_string(), self.normalize(x)));
    }

    pub fn aliases(&self) -> &[(String, Indec)] {
        &self.aliases
    }
}

/// Uniserial modules up to length `cap`, grown by adding a simple top to a
/// shorter uniserial module.
fn uniserial_catalog(heart: &HeartCatalog, simples: &[usize], cap: usize) -> Result<Closure, ModelError> {
    let mut members: Vec<usize> = simples.to_vec();
    let mut frontier = members.clone();
    let mut capped = false;
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for &m in &frontier {
            for &s in simples {
                let he = heart.homext(s, m);
                let d = he.ext_dim();
                if d == 0 {
                    continue;
                }
                if heart.length(m) + 1 > cap {
                    capped = true;
                    continue;
                }
                let mut classes: Vec<Vec<u32>> = (0..d).map(|k| (0..d).map(|i| u32::from(i == k)).collect()).collect();
                if d > 1 {
                    classes.push(vec![1; d]);
                }
                for c in classes {
                    let cocycle = he.ext.cocycle(&c, heart.p);
                    let e = rep::middle_term_of_cocycle(&heart.module(s), &heart.module(m), &cocycle).middle;
                    if radical_layers(&e).iter().all(|l| l.iter().sum::<usize>() == 1) {
                        let id = heart.intern(e);
                        if !members.contains(&id) && !fresh.contains(&id) {
                            fresh.push(id);
                        }
                    }
                }
            }
        }
        members.extend(fresh.iter().copied());
        frontier = fresh;
    }
    members.sort_by_key(|&id| (heart.length(id), id));
    Ok(Closure { members, capped })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_json_round_trip() {
        let spec = ModelSpec::new(ModelKind::OrbitCy { n: 5, w: 2 }).with_cap(6);
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"kind\":\"orbit-cy\""));
        assert_eq!(serde_json::from_str::<ModelSpec>(&text).unwrap(), spec);
        let tube: ModelSpec = serde_json::from_str(r#"{"kind":"tube","rank":3,"window":[0,0],"cap":3}"#).unwrap();
        assert_eq!(tube.kind, ModelKind::Tube { rank: 3 });
    }

    #[test]
    fn catalog_sizes() {
        let a2 = CategoryModel::new(
            ModelSpec::new(ModelKind::DerivedHereditary { quiver: Quiver::linear_a(2) }).with_window(-1, 1),
        )
        .unwrap();
        assert_eq!(a2.enumerate_indecs().unwrap().len(), 9);
        let tube = CategoryModel::new(ModelSpec::new(ModelKind::Tube { rank: 3 }).with_cap(3).with_window(0, 0)).unwrap();
        assert_eq!(tube.enumerate_indecs().unwrap().len(), 9);
        let open = CategoryModel::new(ModelSpec::new(ModelKind::Tube { rank: 3 }).with_cap(3)).unwrap();
        assert_eq!(open.enumerate_indecs(), Err(ModelError::WindowAbsent));
    }

    #[test]
    fn orbit_representatives_are_canonical() {
        let m = CategoryModel::new(ModelSpec::new(ModelKind::OrbitCy { n: 3, w: 1 }).with_cap(3)).unwrap();
        let cat = m.enumerate_indecs().unwrap();
        for &x in &cat {
            assert_eq!(m.normalize(m.orbit_functor(x, 2)), x);
            assert_eq!(m.normalize(m.orbit_functor(x, -1)), x);
            assert_eq!(m.orbit_functor(m.orbit_functor(x, 1), -1), x);
        }
    }

    #[test]
    fn tube_serre_rotates_simples() {
        let m = CategoryModel::new(ModelSpec::new(ModelKind::Tube { rank: 3 }).with_cap(3).with_window(0, 0)).unwrap();
        let s = m.simples();
        assert_eq!(m.serre(s[1]).unwrap(), s[0].shifted(1));
        assert_eq!(m.serre(s[0]).unwrap(), s[2].shifted(1));
    }
}
