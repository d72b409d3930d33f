//! Hom and Ext¹ between representations via the standard two-term complex
//! `⊕_i Hom(M_i, N_i) -> ⊕_a Hom(M_s(a), N_t(a))`, `φ ↦ (N_a φ_s − φ_t M_a)_a`.
//!
//! Its kernel is `Hom(M, N)` and its cokernel is `Ext¹(M, N)` in the
//! category of all representations of the quiver, which contains the
//! nilpotent representations as an extension-closed subcategory.

use super::{loewy_length, RepError, RepMorphism, Representation};
use crate::linalg::{neg, FieldMatrix};
use std::sync::Arc;

/// Hom and Ext¹ data for an ordered pair `(M, N)`.
#[derive(Debug, Clone)]
pub struct HomExt {
    /// Flat coordinates (vertex blocks, row-major) of a Hom basis.
    pub hom: Vec<Vec<u32>>,
    /// `dim Hom x flat-length` matrix turning a morphism into basis coordinates.
    hom_coords: FieldMatrix,
    pub ext: ExtData,
}

/// Ext¹ data: class projection on cocycles and one section cocycle per basis class.
#[derive(Debug, Clone)]
pub struct ExtData {
    pub projection: FieldMatrix,
    pub sections: Vec<Vec<u32>>,
    pub cocycle_len: usize,
}

impl ExtData {
    pub fn dim(&self) -> usize {
        self.sections.len()
    }

    pub fn class_of(&self, cocycle: &[u32]) -> Vec<u32> {
        if self.projection.rows() == 0 {
            return Vec::new();
        }
        self.projection.mul_vec(cocycle)
    }

    pub fn cocycle(&self, coords: &[u32], p: u32) -> Vec<u32> {
        let mut c = vec![0u32; self.cocycle_len];
        for (k, &x) in coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (ci, &s) in c.iter_mut().zip(&self.sections[k]) {
                *ci = crate::linalg::add(*ci, crate::linalg::mul(x, s, p), p);
            }
        }
        c
    }
}

impl HomExt {
    pub fn compute(m: &Representation, n: &Representation) -> Self {
        let p = m.p;
        let q = &m.quiver;
        let nv = m.dims.len();
        let mut col_off = Vec::with_capacity(nv);
        let mut cols = 0;
        for i in 0..nv {
            col_off.push(cols);
            cols += n.dims[i] * m.dims[i];
        }
        let mut row_off = Vec::with_capacity(q.arrows.len());
        let mut rows = 0;
        for &(s, t) in &q.arrows {
            row_off.push(rows);
            rows += n.dims[t] * m.dims[s];
        }
        let mut delta = FieldMatrix::zeros(p, rows, cols);
        for (a, &(s, t)) in q.arrows.iter().enumerate() {
            let (na, ma) = (&n.mats[a], &m.mats[a]);
            let (ms, mt) = (m.dims[s], m.dims[t]);
            for r in 0..n.dims[t] {
                for c in 0..ms {
                    let row = row_off[a] + r * ms + c;
                    for k in 0..n.dims[s] {
                        let v = na.get(r, k);
                        if v != 0 {
                            let col = col_off[s] + k * ms + c;
                            delta.set(row, col, crate::linalg::add(delta.get(row, col), v, p));
                        }
                    }
                    for k in 0..mt {
                        let v = ma.get(k, c);
                        if v != 0 {
                            let col = col_off[t] + r * mt + k;
                            delta.set(row, col, crate::linalg::add(delta.get(row, col), neg(v, p), p));
                        }
                    }
                }
            }
        }
        let hom = delta.kernel_basis();
        let hom_coords = if hom.is_empty() {
            FieldMatrix::zeros(p, 0, cols)
        } else {
            FieldMatrix::from_columns(p, cols, &hom).left_inverse().expect("kernel basis is independent")
        };
        let (_, projection) = delta.kernel_cokernel();
        let sections = (0..projection.rows())
            .map(|j| {
                let mut e = vec![0u32; projection.rows()];
                e[j] = 1;
                projection.solve(&e).expect("cokernel projection is surjective")
            })
            .collect();
        HomExt { hom, hom_coords, ext: ExtData { projection, sections, cocycle_len: rows } }
    }

    pub fn hom_dim(&self) -> usize {
        self.hom.len()
    }

    pub fn ext_dim(&self) -> usize {
        self.ext.dim()
    }

    /// Coordinates of a morphism (given flat) in the Hom basis.
    pub fn hom_coords(&self, flat: &[u32]) -> Vec<u32> {
        if self.hom.is_empty() {
            return Vec::new();
        }
        self.hom_coords.mul_vec(flat)
    }

    pub fn hom_from_coords(&self, coords: &[u32], p: u32) -> Vec<u32> {
        let len = self.hom_coords.cols();
        let mut out = vec![0u32; len];
        for (k, &x) in coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(&self.hom[k]) {
                *o = crate::linalg::add(*o, crate::linalg::mul(x, b, p), p);
            }
        }
        out
    }
}

/// A basis of `Hom(M, N)`.
pub fn hom_basis(m: &Arc<Representation>, n: &Arc<Representation>) -> Result<Vec<RepMorphism>, RepError> {
    m.same_algebra(n)?;
    let he = HomExt::compute(m, n);
    Ok(he.hom.iter().map(|f| RepMorphism::from_flat(m.clone(), n.clone(), f)).collect())
}

/// An element of `Ext¹(M, N)` in the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtClass {
    pub source: Arc<Representation>,
    pub target: Arc<Representation>,
    pub coords: Vec<u32>,
}

impl ExtClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// A cocycle representing the class.
    pub fn cocycle(&self) -> Vec<u32> {
        HomExt::compute(&self.source, &self.target).ext.cocycle(&self.coords, self.source.p)
    }
}

/// `dim Ext¹(M, N)` and a basis. For a truncated algebra with cycles the
/// truncation must be at least `ll(M) + ll(N)`.
pub fn ext1_classes(
    m: &Arc<Representation>,
    n: &Arc<Representation>,
    truncation: Option<u32>,
) -> Result<(usize, Vec<ExtClass>), RepError> {
    m.same_algebra(n)?;
    if let Some(t) = truncation {
        if m.quiver.has_cycle() {
            let required = (loewy_length(m) + loewy_length(n)) as u32;
            if t < required {
                return Err(RepError::TruncationTooSmall { given: t, required });
            }
        }
    }
    let he = HomExt::compute(m, n);
    let d = he.ext_dim();
    let classes = (0..d)
        .map(|j| {
            let mut coords = vec![0u32; d];
            coords[j] = 1;
            ExtClass { source: m.clone(), target: n.clone(), coords }
        })
        .collect();
    Ok((d, classes))
}

/// Class of an explicit cocycle.
pub fn ext_class_of(m: &Arc<Representation>, n: &Arc<Representation>, cocycle: &[u32]) -> ExtClass {
    let he = HomExt::compute(m, n);
    ExtClass { source: m.clone(), target: n.clone(), coords: he.ext.class_of(cocycle) }
}

/// Splits a flat cocycle into one matrix per arrow.
pub fn cocycle_blocks(m: &Representation, n: &Representation, cocycle: &[u32]) -> Vec<FieldMatrix> {
    let mut k = 0;
    m.quiver
        .arrows
        .iter()
        .map(|&(s, t)| {
            let len = n.dims[t] * m.dims[s];
            let b = FieldMatrix::from_flat(m.p, n.dims[t], m.dims[s], cocycle[k..k + len].to_vec());
            k += len;
            b
        })
        .collect()
}

pub fn flatten_blocks(blocks: &[FieldMatrix]) -> Vec<u32> {
    blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
}

/// Pullback of a cocycle for `(M, N)` along `h: L -> M`.
pub fn pullback_cocycle(m: &Representation, n: &Representation, cocycle: &[u32], h: &RepMorphism) -> Vec<u32> {
    let blocks = cocycle_blocks(m, n, cocycle);
    let out: Vec<FieldMatrix> = m
        .quiver
        .arrows
        .iter()
        .zip(&blocks)
        .map(|(&(s, _), c)| c.mul(&h.blocks[s]))
        .collect();
    flatten_blocks(&out)
}

/// Pushout of a cocycle for `(M, N)` along `g: N -> P`.
pub fn pushout_cocycle(m: &Representation, n: &Representation, cocycle: &[u32], g: &RepMorphism) -> Vec<u32> {
    let blocks = cocycle_blocks(m, n, cocycle);
    let out: Vec<FieldMatrix> = m
        .quiver
        .arrows
        .iter()
        .zip(&blocks)
        .map(|(&(_, t), c)| g.blocks[t].mul(c))
        .collect();
    flatten_blocks(&out)
}

/// A short exact sequence `0 -> N -> E -> M -> 0`.
#[derive(Debug, Clone)]
pub struct MiddleTerm {
    pub middle: Arc<Representation>,
    pub inclusion: RepMorphism,
    pub projection: RepMorphism,
}

/// Realizes a cocycle for `(M, N)` as an extension with `E_a = [[N_a, c_a], [0, M_a]]`.
pub fn middle_term_of_cocycle(m: &Arc<Representation>, n: &Arc<Representation>, cocycle: &[u32]) -> MiddleTerm {
    let p = m.p;
    let blocks = cocycle_blocks(m, n, cocycle);
    let dims: Vec<usize> = m.dims.iter().zip(&n.dims).map(|(a, b)| a + b).collect();
    let mats = m
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let mut e = FieldMatrix::zeros(p, dims[t], dims[s]);
            e.set_block(0, 0, &n.mats[a]);
            e.set_block(0, n.dims[s], &blocks[a]);
            e.set_block(n.dims[t], n.dims[s], &m.mats[a]);
            e
        })
        .collect();
    let middle = Arc::new(Representation { quiver: m.quiver.clone(), p, dims: dims.clone(), mats });
    let inc = (0..dims.len())
        .map(|i| {
            let mut b = FieldMatrix::zeros(p, dims[i], n.dims[i]);
            b.set_block(0, 0, &FieldMatrix::identity(p, n.dims[i]));
            b
        })
        .collect();
    let proj = (0..dims.len())
        .map(|i| {
            let mut b = FieldMatrix::zeros(p, m.dims[i], dims[i]);
            b.set_block(0, n.dims[i], &FieldMatrix::identity(p, m.dims[i]));
            b
        })
        .collect();
    MiddleTerm {
        inclusion: RepMorphism { source: n.clone(), target: middle.clone(), blocks: inc },
        projection: RepMorphism { source: middle.clone(), target: m.clone(), blocks: proj },
        middle,
    }
}

pub fn middle_term(e: &ExtClass) -> MiddleTerm {
    middle_term_of_cocycle(&e.source, &e.target, &e.cocycle())
}

/// Kernel, image and cokernel of a morphism with their canonical maps.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub kernel: Arc<Representation>,
    pub kernel_inclusion: RepMorphism,
    pub image: Arc<Representation>,
    pub image_inclusion: RepMorphism,
    pub cokernel: Arc<Representation>,
    pub cokernel_projection: RepMorphism,
}

pub fn factor_morphism(f: &RepMorphism) -> Factorization {
    let p = f.source.p;
    let src = &f.source;
    let tgt = &f.target;
    let ker_basis: Vec<FieldMatrix> = f
        .blocks
        .iter()
        .zip(&src.dims)
        .map(|(b, &d)| FieldMatrix::from_columns(p, d, &b.kernel_basis()))
        .collect();
    let (kernel, kinc) = src.restrict(&ker_basis);
    let kernel = Arc::new(kernel);
    let im_basis: Vec<FieldMatrix> = f
        .blocks
        .iter()
        .zip(&tgt.dims)
        .map(|(b, &d)| FieldMatrix::from_columns(p, d, &b.column_space_basis()))
        .collect();
    let (image, iinc) = tgt.restrict(&im_basis);
    let image = Arc::new(image);
    let projs: Vec<FieldMatrix> = f.blocks.iter().map(|b| b.kernel_cokernel().1).collect();
    let rights: Vec<FieldMatrix> = projs
        .iter()
        .map(|q| {
            q.transpose()
                .left_inverse()
                .map(|l| l.transpose())
                .unwrap_or_else(|| FieldMatrix::zeros(p, q.cols(), q.rows()))
        })
        .collect();
    let coker_dims: Vec<usize> = projs.iter().map(|q| q.rows()).collect();
    let coker_mats = tgt
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| projs[t].mul(&tgt.mats[a]).mul(&rights[s]))
        .collect();
    let cokernel = Arc::new(Representation { quiver: tgt.quiver.clone(), p, dims: coker_dims, mats: coker_mats });
    Factorization {
        kernel_inclusion: RepMorphism { source: kernel.clone(), target: src.clone(), blocks: kinc },
        kernel,
        image_inclusion: RepMorphism { source: image.clone(), target: tgt.clone(), blocks: iinc },
        image,
        cokernel_projection: RepMorphism { source: tgt.clone(), target: cokernel.clone(), blocks: projs },
        cokernel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Quiver;

    const P: u32 = 32003;

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::linear_a(2))
    }

    fn p1(q: &Arc<Quiver>) -> Arc<Representation> {
        Arc::new(Representation::new(q.clone(), P, vec![1, 1], vec![FieldMatrix::identity(P, 1)]).unwrap())
    }

    #[test]
    fn simple_homs_and_exts() {
        let q = a2();
        let s1 = Arc::new(Representation::simple(q.clone(), P, 0));
        let s2 = Arc::new(Representation::simple(q.clone(), P, 1));
        assert_eq!(hom_basis(&s1, &s1).unwrap().len(), 1);
        assert!(hom_basis(&s1, &s2).unwrap().is_empty());
        assert_eq!(ext1_classes(&s1, &s1, None).unwrap().0, 0);
        assert_eq!(ext1_classes(&s1, &s2, None).unwrap().0, 1);
        assert_eq!(ext1_classes(&s2, &s1, None).unwrap().0, 0);
    }

    #[test]
    fn middle_terms_over_a2() {
        let q = a2();
        let s1 = Arc::new(Representation::simple(q.clone(), P, 0));
        let s2 = Arc::new(Representation::simple(q.clone(), P, 1));
        let (_, cls) = ext1_classes(&s1, &s2, None).unwrap();
        let mt = middle_term(&cls[0]);
        assert_eq!(mt.middle.dims, vec![1, 1]);
        assert_eq!(hom_basis(&mt.middle, &mt.middle).unwrap().len(), 1);
        assert!(mt.inclusion.is_commuting() && mt.projection.is_commuting());
        assert!(mt.projection.after(&mt.inclusion).is_zero());
        let split = middle_term_of_cocycle(&s1, &s2, &[0]);
        assert_eq!(hom_basis(&split.middle, &split.middle).unwrap().len(), 2);
    }

    #[test]
    fn factor_projective_cover() {
        let q = a2();
        let p = p1(&q);
        let s1 = Arc::new(Representation::simple(q.clone(), P, 0));
        let f = hom_basis(&p, &s1).unwrap().remove(0);
        let fac = factor_morphism(&f);
        assert_eq!(fac.kernel.dims, vec![0, 1]);
        assert_eq!(fac.cokernel.total_dim(), 0);
        assert_eq!(fac.image.dims, vec![1, 0]);
        assert!(fac.kernel_inclusion.is_commuting());
        let id = RepMorphism::identity(p.clone());
        let fi = factor_morphism(&id);
        assert_eq!((fi.kernel.total_dim(), fi.cokernel.total_dim()), (0, 0));
        let z = RepMorphism::zero(p.clone(), s1.clone());
        let fz = factor_morphism(&z);
        assert_eq!((fz.kernel.dims.clone(), fz.cokernel.dims.clone()), (vec![1, 1], vec![1, 0]));
    }

    #[test]
    fn pushout_and_pullback_preserve_classes() {
        let q = a2();
        let s1 = Arc::new(Representation::simple(q.clone(), P, 0));
        let s2 = Arc::new(Representation::simple(q.clone(), P, 1));
        let he = HomExt::compute(&s1, &s2);
        let c = he.ext.cocycle(&[1], P);
        let id2 = RepMorphism::identity(s2.clone());
        let pushed = pushout_cocycle(&s1, &s2, &c, &id2.scale(3));
        assert_eq!(he.ext.class_of(&pushed), vec![3]);
        let id1 = RepMorphism::identity(s1.clone());
        let pulled = pullback_cocycle(&s1, &s2, &c, &id1.scale(5));
        assert_eq!(he.ext.class_of(&pulled), vec![5]);
    }
}
