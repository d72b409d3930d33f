//! An interning catalog of indecomposable modules of one abelian heart, with
//! memoized Hom/Ext¹ data and extension closures.

use crate::linalg::{self, FieldMatrix};
use crate::rep::{
    self, decompose, is_isomorphic, loewy_length, HomExt, Quiver, RepError, RepMorphism, Representation,
};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, PoisonError, RwLock};

/// Catalog of pairwise non-isomorphic indecomposable modules.
#[derive(Debug)]
pub struct HeartCatalog {
    pub quiver: Arc<Quiver>,
    pub p: u32,
    store: RwLock<Store>,
    homext: Mutex<HashMap<(usize, usize), Arc<HomExt>>>,
    radicals: Mutex<HashMap<usize, Arc<Vec<Vec<u32>>>>>,
}

#[derive(Debug, Default)]
struct Store {
    modules: Vec<Arc<Representation>>,
    by_dims: HashMap<Vec<usize>, Vec<usize>>,
}

impl Store {
    fn lookup(&self, m: &Arc<Representation>) -> Option<usize> {
        let ids = self.by_dims.get(&m.dims)?;
        ids.iter().copied().find(|&id| is_isomorphic(&self.modules[id], m))
    }
}

/// Result of an extension closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    /// Member ids sorted by (composition length, id).
    pub members: Vec<usize>,
    pub capped: bool,
}

/// Which pairs an extension closure explores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureDepth {
    /// Extensions between a generator and one member.
    Single,
    /// Also extensions between a generator and a sum of two members.
    Pairs,
}

impl HeartCatalog {
    pub fn new(quiver: Arc<Quiver>, p: u32) -> Self {
        HeartCatalog {
            quiver,
            p,
            store: RwLock::new(Store::default()),
            homext: Mutex::new(HashMap::new()),
            radicals: Mutex::new(HashMap::new()),
        }
    }

    fn read(&self) -> std::sync::RwLockReadGuard<'_, Store> {
        self.store.read().unwrap_or_else(PoisonError::into_inner)
    }

    pub fn len(&self) -> usize {
        self.read().modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn module(&self, id: usize) -> Arc<Representation> {
        self.read().modules[id].clone()
    }

    pub fn dims(&self, id: usize) -> Vec<usize> {
        self.read().modules[id].dims.clone()
    }

    pub fn length(&self, id: usize) -> usize {
        self.read().modules[id].total_dim()
    }

    pub fn loewy(&self, id: usize) -> usize {
        loewy_length(&self.module(id))
    }

    pub fn simple(&self, vertex: usize) -> usize {
        self.intern(Arc::new(Representation::simple(self.quiver.clone(), self.p, vertex)))
    }

    /// Finds an existing id for a module isomorphic to `m`.
    pub fn lookup(&self, m: &Arc<Representation>) -> Option<usize> {
        self.read().lookup(m)
    }

    /// Interns an indecomposable module, returning its stable id.
    pub fn intern(&self, m: Arc<Representation>) -> usize {
        if let Some(id) = self.lookup(&m) {
            return id;
        }
        let mut st = self.store.write().unwrap_or_else(PoisonError::into_inner);
        if let Some(id) = st.lookup(&m) {
            return id;
        }
        let id = st.modules.len();
        st.by_dims.entry(m.dims.clone()).or_default().push(id);
        st.modules.push(m);
        id
    }

    /// Decomposes and interns every summand (with multiplicity).
    pub fn intern_decomposed(&self, m: &Arc<Representation>) -> Result<Vec<usize>, RepError> {
        if m.total_dim() == 0 {
            return Ok(Vec::new());
        }
        let dec = decompose(m)?;
        let mut out = Vec::new();
        for s in dec.summands {
            out.push(self.intern(s.rep));
        }
        out.sort();
        Ok(out)
    }

    pub fn homext(&self, a: usize, b: usize) -> Arc<HomExt> {
        if let Some(h) = self.homext.lock().unwrap_or_else(PoisonError::into_inner).get(&(a, b)) {
            return h.clone();
        }
        let h = Arc::new(HomExt::compute(&self.module(a), &self.module(b)));
        self.homext.lock().unwrap_or_else(PoisonError::into_inner).insert((a, b), h.clone());
        h
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.homext(a, b).hom_dim()
    }

    pub fn ext_dim(&self, a: usize, b: usize) -> usize {
        self.homext(a, b).ext_dim()
    }

    pub fn hom_morphism(&self, a: usize, b: usize, coords: &[u32]) -> RepMorphism {
        let he = self.homext(a, b);
        RepMorphism::from_flat(self.module(a), self.module(b), &he.hom_from_coords(coords, self.p))
    }

    pub fn hom_coords(&self, a: usize, b: usize, f: &RepMorphism) -> Vec<u32> {
        self.homext(a, b).hom_coords(&f.to_flat())
    }

    /// `g ∘ f` for `f ∈ Hom(a, b)`, `g ∈ Hom(b, c)` in basis coordinates.
    pub fn compose_hom(&self, a: usize, b: usize, c: usize, g: &[u32], f: &[u32]) -> Vec<u32> {
        if g.iter().all(|&x| x == 0) || f.iter().all(|&x| x == 0) {
            return vec![0; self.hom_dim(a, c)];
        }
        let fm = self.hom_morphism(a, b, f);
        let gm = self.hom_morphism(b, c, g);
        self.hom_coords(a, c, &gm.after(&fm))
    }

    /// Pullback of a class in `Ext¹(b, c)` along `f ∈ Hom(a, b)`.
    pub fn pullback(&self, a: usize, b: usize, c: usize, class: &[u32], f: &[u32]) -> Vec<u32> {
        if class.iter().all(|&x| x == 0) || f.iter().all(|&x| x == 0) {
            return vec![0; self.ext_dim(a, c)];
        }
        let he = self.homext(b, c);
        let cocycle = he.ext.cocycle(class, self.p);
        let fm = self.hom_morphism(a, b, f);
        let pulled = rep::pullback_cocycle(&self.module(b), &self.module(c), &cocycle, &fm);
        self.homext(a, c).ext.class_of(&pulled)
    }

    /// Pushout of a class in `Ext¹(a, b)` along `g ∈ Hom(b, c)`.
    pub fn pushout(&self, a: usize, b: usize, c: usize, class: &[u32], g: &[u32]) -> Vec<u32> {
        if class.iter().all(|&x| x == 0) || g.iter().all(|&x| x == 0) {
            return vec![0; self.ext_dim(a, c)];
        }
        let he = self.homext(a, b);
        let cocycle = he.ext.cocycle(class, self.p);
        let gm = self.hom_morphism(b, c, g);
        let pushed = rep::pushout_cocycle(&self.module(a), &self.module(b), &cocycle, &gm);
        self.homext(a, c).ext.class_of(&pushed)
    }

    /// Basis of `rad End(a)` in Hom-basis coordinates (trace-zero part of a
    /// local endomorphism ring).
    pub fn radical(&self, a: usize) -> Arc<Vec<Vec<u32>>> {
        if let Some(r) = self.radicals.lock().unwrap_or_else(PoisonError::into_inner).get(&a) {
            return r.clone();
        }
        let he = self.homext(a, a);
        let m = self.module(a);
        let traces: Vec<u32> = he
            .hom
            .iter()
            .map(|f| {
                RepMorphism::from_flat(m.clone(), m.clone(), f)
                    .blocks
                    .iter()
                    .fold(0, |s, b| linalg::add(s, b.trace(), self.p))
            })
            .collect();
        let rad = if traces.is_empty() {
            Vec::new()
        } else {
            FieldMatrix::from_flat(self.p, 1, traces.len(), traces).kernel_basis()
        };
        let rad = Arc::new(rad);
        self.radicals.lock().unwrap_or_else(PoisonError::into_inner).insert(a, rad.clone());
        rad
    }

    /// Whether `gens` are pairwise Hom-orthogonal bricks.
    pub fn check_semibrick(&self, gens: &[usize]) -> Result<(), RepError> {
        for (i, &a) in gens.iter().enumerate() {
            let e = self.hom_dim(a, a);
            if e != 1 {
                return Err(RepError::NotSemibrick(format!("module {a} has End of dimension {e}")));
            }
            for &b in &gens[i + 1..] {
                if a == b {
                    return Err(RepError::NotSemibrick(format!("module {a} repeated")));
                }
                if self.hom_dim(a, b) + self.hom_dim(b, a) > 0 {
                    return Err(RepError::NotSemibrick(format!("modules {a} and {b} have nonzero Hom")));
                }
            }
        }
        Ok(())
    }

    /// Middle terms (as interned summand lists) of the basis classes and of
    /// the sum of all basis classes in `Ext¹(m, n)`.
    fn extension_middles(
        &self,
        m: &Arc<Representation>,
        n: &Arc<Representation>,
    ) -> Result<Vec<Vec<usize>>, RepError> {
        let he = HomExt::compute(m, n);
        let d = he.ext_dim();
        let mut coord_sets: Vec<Vec<u32>> = (0..d)
            .map(|j| {
                let mut c = vec![0u32; d];
                c[j] = 1;
                c
            })
            .collect();
        if d > 1 {
            coord_sets.push(vec![1; d]);
        }
        let mut out = Vec::new();
        for c in coord_sets {
            let cocycle = he.ext.cocycle(&c, self.p);
            let mt = rep::middle_term_of_cocycle(m, n, &cocycle);
            out.push(self.intern_decomposed(&mt.middle)?);
        }
        Ok(out)
    }

    /// Extension closure of semibrick generators, up to composition length `cap`.
    pub fn extension_closure(&self, gens: &[usize], cap: usize, depth: ClosureDepth) -> Result<Closure, RepError> {
        self.check_semibrick(gens)?;
        let mut members: Vec<usize> = Vec::new();
        for &g in gens {
            if !members.contains(&g) {
                members.push(g);
            }
        }
        let mut capped = false;
        let mut frontier: Vec<usize> = members.clone();
        let mut seen_pairs: std::collections::HashSet<(usize, usize, usize)> = Default::default();
        while !frontier.is_empty() {
            let mut fresh: Vec<usize> = Vec::new();
            let current = members.clone();
            let mut bases: Vec<(Vec<usize>, Arc<Representation>)> = Vec::new();
            for &x in &current {
                bases.push((vec![x], self.module(x)));
            }
            if depth == ClosureDepth::Pairs {
                for (i, &x) in current.iter().enumerate() {
                    for &y in &current[i..] {
                        if frontier.contains(&x) || frontier.contains(&y) {
                            let sum = Arc::new(self.module(x).direct_sum(&self.module(y)));
                            bases.push((vec![x, y], sum));
                        }
                    }
                }
            }
            for &g in gens {
                let gm = self.module(g);
                for (parts, k) in &bases {
                    let key = (g, parts[0], *parts.get(1).unwrap_or(&usize::MAX));
                    if parts.iter().all(|x| !frontier.contains(x)) || !seen_pairs.insert(key) {
                        continue;
                    }
                    let total = gm.total_dim() + k.total_dim();
                    for (m, n) in [(&gm, k), (k, &gm)] {
                        if HomExt::compute(m, n).ext_dim() == 0 {
                            continue;
                        }
                        if total > cap {
                            capped = true;
                            continue;
                        }
                        for summands in self.extension_middles(m, n)? {
                            for s in summands {
                                if !members.contains(&s) && !fresh.contains(&s) {
                                    fresh.push(s);
                                }
                            }
                        }
                    }
                }
            }
            members.extend(fresh.iter().copied());
            frontier = fresh;
        }
        members.sort_by_key(|&id| (self.length(id), id));
        Ok(Closure { members, capped })
    }

    /// Whether module `a` has a filtration by the (semibrick) generators,
    /// decided by peeling generator quotients: `a` is filtered iff some
    /// epimorphism onto a generator has a filtered kernel.
    pub fn is_filtered_by(&self, a: usize, gens: &[usize]) -> bool {
        let m = self.module(a);
        self.filtered_rep(&m, gens, &mut HashMap::new())
    }

    fn filtered_rep(&self, m: &Arc<Representation>, gens: &[usize], memo: &mut HashMap<Vec<usize>, bool>) -> bool {
        if m.total_dim() == 0 {
            return true;
        }
        let Ok(parts) = self.intern_decomposed(m) else { return false };
        if parts.len() > 1 {
            return parts.iter().all(|&x| {
                let xm = self.module(x);
                self.filtered_rep(&xm, gens, memo)
            });
        }
        if let Some(&v) = memo.get(&parts) {
            return v;
        }
        let id = parts[0];
        let mut result = gens.contains(&id);
        if !result {
            for &g in gens {
                let he = self.homext(id, g);
                for f in &he.hom {
                    let fm = RepMorphism::from_flat(self.module(id), self.module(g), f);
                    if !fm.is_epi() {
                        continue;
                    }
                    let ker = rep::factor_morphism(&fm).kernel;
                    if self.filtered_rep(&ker, gens, memo) {
                        result = true;
                        break;
                    }
                }
                if result {
                    break;
                }
            }
        }
        memo.insert(parts, result);
        result
    }
}
