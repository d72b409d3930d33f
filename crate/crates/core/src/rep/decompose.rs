//! Krull–Schmidt decomposition by Fitting splitting, endomorphism radicals,
//! isomorphism tests and Loewy lengths.

use super::homext::HomExt;
use super::{RepError, RepMorphism, Representation};
use crate::linalg::{self, poly_roots, FieldMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Seed for every randomized choice made by the engine.
pub const ENGINE_SEED: u64 = 0x5eed_2024;

const RANDOM_TRIES: usize = 12;
const BOX_SEARCH_MAX_END_DIM: usize = 6;

/// One indecomposable summand `L` of `M` with split maps `L -> M -> L`.
#[derive(Debug, Clone)]
pub struct Summand {
    pub rep: Arc<Representation>,
    pub inclusion: RepMorphism,
    pub projection: RepMorphism,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Summands in the order found; isomorphic summands are adjacent.
    pub summands: Vec<Summand>,
    /// `classes[k]` lists the indices of summands isomorphic to each other.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn multiplicities(&self) -> Vec<(Arc<Representation>, usize)> {
        self.classes.iter().map(|c| (self.summands[c[0]].rep.clone(), c.len())).collect()
    }
}

fn random_combination(basis: &[Vec<u32>], p: u32, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let len = basis.first().map_or(0, |b| b.len());
    let mut out = vec![0u32; len];
    for b in basis {
        let c: u32 = rng.gen_range(0..p);
        for (o, &x) in out.iter_mut().zip(b) {
            *o = linalg::add(*o, linalg::mul(c, x, p), p);
        }
    }
    out
}

fn combination(basis: &[Vec<u32>], coeffs: &[u32], p: u32) -> Vec<u32> {
    let len = basis.first().map_or(0, |b| b.len());
    let mut out = vec![0u32; len];
    for (b, &c) in basis.iter().zip(coeffs) {
        for (o, &x) in out.iter_mut().zip(b) {
            *o = linalg::add(*o, linalg::mul(c, x, p), p);
        }
    }
    out
}

/// True if a random element of `Hom(M, N)` is invertible at every vertex.
pub fn is_isomorphic(m: &Arc<Representation>, n: &Arc<Representation>) -> bool {
    iso_between(m, n).is_some()
}

/// An isomorphism `M -> N` if one exists (found by random sampling).
pub fn iso_between(m: &Arc<Representation>, n: &Arc<Representation>) -> Option<RepMorphism> {
    if m.dims != n.dims || m.same_algebra(n).is_err() {
        return None;
    }
    if m.total_dim() == 0 {
        return Some(RepMorphism::zero(m.clone(), n.clone()));
    }
    let he = HomExt::compute(m, n);
    if he.hom.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ENGINE_SEED);
    for _ in 0..3 {
        let f = RepMorphism::from_flat(m.clone(), n.clone(), &random_combination(&he.hom, m.p, &mut rng));
        if f.is_iso() {
            return Some(f);
        }
    }
    None
}

/// Loewy length: least `k` with `rad^k M = 0`, where the radical is spanned
/// by arrow images. Non-nilpotent representations report `total_dim + 1`.
pub fn loewy_length(m: &Representation) -> usize {
    let n = m.total_dim();
    if n == 0 {
        return 0;
    }
    let off = m.offsets();
    let arrow_ops: Vec<FieldMatrix> = m
        .quiver
        .arrows
        .iter()
        .zip(&m.mats)
        .map(|(&(s, t), a)| {
            let mut e = FieldMatrix::zeros(m.p, n, n);
            e.set_block(off[t], off[s], a);
            e
        })
        .collect();
    let mut w = FieldMatrix::identity(m.p, n);
    for k in 1..=n {
        let images: Vec<Vec<u32>> = arrow_ops.iter().flat_map(|e| e.mul(&w).columns()).collect();
        let r = linalg::span_rank(m.p, n, &images);
        if r == 0 {
            return k;
        }
        let basis = FieldMatrix::from_columns(m.p, n, &images).column_space_basis();
        w = FieldMatrix::from_columns(m.p, n, &basis);
    }
    n + 1
}

/// Dimension vectors of the radical layers `rad^k M / rad^(k+1) M`, top first.
pub fn radical_layers(m: &Representation) -> Vec<Vec<usize>> {
    let n = m.total_dim();
    let off = m.offsets();
    let vertex_dims = |w: &FieldMatrix| -> Vec<usize> {
        let rows: Vec<usize> = (0..n).collect();
        (0..m.dims.len())
            .map(|v| {
                if w.cols() == 0 {
                    return 0;
                }
                let sel: Vec<usize> = rows[off[v]..off[v] + m.dims[v]].to_vec();
                w.select_rows(&sel).rank()
            })
            .collect()
    };
    let arrow_ops: Vec<FieldMatrix> = m
        .quiver
        .arrows
        .iter()
        .zip(&m.mats)
        .map(|(&(s, t), a)| {
            let mut e = FieldMatrix::zeros(m.p, n, n);
            e.set_block(off[t], off[s], a);
            e
        })
        .collect();
    let mut w = FieldMatrix::identity(m.p, n);
    let mut dims = vertex_dims(&w);
    let mut layers = Vec::new();
    while dims.iter().any(|&d| d > 0) && layers.len() <= n {
        let images: Vec<Vec<u32>> = arrow_ops.iter().flat_map(|e| e.mul(&w).columns()).collect();
        let basis = FieldMatrix::from_columns(m.p, n, &images).column_space_basis();
        w = FieldMatrix::from_columns(m.p, n, &basis);
        let next = vertex_dims(&w);
        layers.push(dims.iter().zip(&next).map(|(a, b)| a - b).collect());
        dims = next;
    }
    layers
}

/// Vertex blocks of an endomorphism given by flat coordinates.
fn end_blocks(m: &Arc<Representation>, flat: &[u32]) -> Vec<FieldMatrix> {
    RepMorphism::from_flat(m.clone(), m.clone(), flat).blocks
}

/// Splits `M` along generalized eigenspaces of `phi`. Returns per-piece
/// vertex bases, or `None` if `phi` has a single eigenvalue or its
/// characteristic polynomial does not split over `F_p`.
fn eigen_split(m: &Representation, phi: &[FieldMatrix]) -> Option<Vec<Vec<FieldMatrix>>> {
    let p = m.p;
    let mut eigen: Vec<u32> = Vec::new();
    for b in phi {
        if b.rows() == 0 {
            continue;
        }
        for r in poly_roots(&b.char_poly(), p) {
            if !eigen.contains(&r) {
                eigen.push(r);
            }
        }
    }
    if eigen.len() < 2 {
        return None;
    }
    let mut pieces: Vec<Vec<FieldMatrix>> = Vec::new();
    let mut covered = vec![0usize; m.dims.len()];
    for &lam in &eigen {
        let bases: Vec<FieldMatrix> = phi
            .iter()
            .zip(&m.dims)
            .map(|(b, &d)| {
                if d == 0 {
                    return FieldMatrix::zeros(p, 0, 0);
                }
                let shifted = b.sub(&FieldMatrix::scalar(p, d, lam)).pow(d);
                FieldMatrix::from_columns(p, d, &shifted.kernel_basis())
            })
            .collect();
        for (c, b) in covered.iter_mut().zip(&bases) {
            *c += b.cols();
        }
        if bases.iter().any(|b| b.cols() > 0) {
            pieces.push(bases);
        }
    }
    if covered != m.dims || pieces.len() < 2 {
        return None;
    }
    Some(pieces)
}

/// Checks that `End(M)` is local with residue field `F_p`: every trace-zero
/// endomorphism must be nilpotent.
fn is_local(m: &Arc<Representation>, end: &[Vec<u32>]) -> bool {
    let p = m.p;
    let d = m.total_dim();
    if d == 0 || d as u64 % p as u64 == 0 {
        return false;
    }
    let traces: Vec<u32> = end
        .iter()
        .map(|f| end_blocks(m, f).iter().fold(0, |s, b| linalg::add(s, b.trace(), p)))
        .collect();
    let tr_row = FieldMatrix::from_flat(p, 1, traces.len(), traces);
    let kernel = tr_row.kernel_basis();
    let total = |coeffs: &[u32]| RepMorphism::from_flat(m.clone(), m.clone(), &combination(end, coeffs, p)).total_matrix();
    if !kernel.iter().all(|c| total(c).is_nilpotent()) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ENGINE_SEED ^ 1);
    kernel.len() < 2 || total(&random_combination(&kernel, p, &mut rng)).is_nilpotent()
}

/// One splitting step: vertex bases of at least two pieces, `Ok(None)` when
/// `M` is certified indecomposable.
fn split_step(m: &Arc<Representation>) -> Result<Option<Vec<Vec<FieldMatrix>>>, RepError> {
    let end = HomExt::compute(m, m).hom;
    if end.len() <= 1 || is_local(m, &end) {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ENGINE_SEED);
    for _ in 0..RANDOM_TRIES {
        let phi = end_blocks(m, &random_combination(&end, m.p, &mut rng));
        if let Some(pieces) = eigen_split(m, &phi) {
            return Ok(Some(pieces));
        }
    }
    if end.len() <= BOX_SEARCH_MAX_END_DIM {
        let k = end.len() as u32;
        for code in 0..3u64.pow(k) {
            let mut c = code;
            let coeffs: Vec<u32> = (0..k)
                .map(|_| {
                    let d = (c % 3) as u32;
                    c /= 3;
                    d
                })
                .collect();
            let phi = end_blocks(m, &combination(&end, &coeffs, m.p));
            if let Some(pieces) = eigen_split(m, &phi) {
                return Ok(Some(pieces));
            }
        }
    }
    Err(RepError::NonSplitDivisionRing(format!(
        "could not split or certify the representation with dimensions {:?}",
        m.dims
    )))
}

/// Krull–Schmidt decomposition.
pub fn decompose(m: &Arc<Representation>) -> Result<Decomposition, RepError> {
    let mut found: Vec<Summand> = Vec::new();
    if m.total_dim() > 0 {
        let id = RepMorphism::identity(m.clone());
        let mut stack = vec![Summand { rep: m.clone(), inclusion: id.clone(), projection: id }];
        while let Some(part) = stack.pop() {
            match split_step(&part.rep)? {
                None => found.push(part),
                Some(pieces) => {
                    let p = m.p;
                    let combined: Vec<FieldMatrix> = (0..part.rep.dims.len())
                        .map(|i| {
                            let mut acc = FieldMatrix::zeros(p, part.rep.dims[i], 0);
                            for pc in &pieces {
                                acc = acc.hstack(&pc[i]);
                            }
                            acc
                        })
                        .collect();
                    let inverses: Vec<FieldMatrix> = combined
                        .iter()
                        .map(|c| if c.rows() == 0 { c.clone() } else { c.inverse().expect("eigenspaces span") })
                        .collect();
                    let mut row = vec![0usize; part.rep.dims.len()];
                    for pc in pieces.iter() {
                        let (sub, inc) = part.rep.restrict(pc);
                        let sub = Arc::new(sub);
                        let proj: Vec<FieldMatrix> = (0..pc.len())
                            .map(|i| {
                                let rows: Vec<usize> = (row[i]..row[i] + pc[i].cols()).collect();
                                row[i] += pc[i].cols();
                                inverses[i].select_rows(&rows)
                            })
                            .collect();
                        let inc_m = RepMorphism { source: sub.clone(), target: part.rep.clone(), blocks: inc };
                        let proj_m = RepMorphism { source: part.rep.clone(), target: sub.clone(), blocks: proj };
                        stack.push(Summand {
                            rep: sub,
                            inclusion: part.inclusion.after(&inc_m),
                            projection: proj_m.after(&part.projection),
                        });
                    }
                }
            }
        }
    }
    // Group by isomorphism class, keeping first-found order.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut ordered: Vec<Summand> = Vec::new();
    let mut buckets: Vec<Vec<Summand>> = Vec::new();
    for s in found {
        match buckets.iter().position(|b| is_isomorphic(&b[0].rep, &s.rep)) {
            Some(k) => buckets[k].push(s),
            None => buckets.push(vec![s]),
        }
    }
    for b in buckets {
        let start = ordered.len();
        classes.push((start..start + b.len()).collect());
        ordered.extend(b);
    }
    Ok(Decomposition { summands: ordered, classes })
}

/// `End(M)` and its Jacobson radical.
#[derive(Debug, Clone)]
pub struct EndRadical {
    pub end_basis: Vec<RepMorphism>,
    pub radical: Vec<RepMorphism>,
}

/// Radical of `End(M)` as the kernel of the projection onto the semisimple
/// quotient, read off through a Krull–Schmidt decomposition.
pub fn end_radical(m: &Arc<Representation>) -> Result<EndRadical, RepError> {
    let p = m.p;
    let end = HomExt::compute(m, m).hom;
    let end_basis: Vec<RepMorphism> = end.iter().map(|f| RepMorphism::from_flat(m.clone(), m.clone(), f)).collect();
    if end.is_empty() {
        return Ok(EndRadical { end_basis, radical: Vec::new() });
    }
    let dec = decompose(m)?;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for class in &dec.classes {
        let base = &dec.summands[class[0]];
        let dim = base.rep.total_dim() as u32 % p;
        let dinv = linalg::inv(dim, p);
        for &k in class {
            let to_base = iso_between(&dec.summands[k].rep, &base.rep).expect("class members are isomorphic");
            for &l in class {
                let from_base = iso_between(&base.rep, &dec.summands[l].rep).expect("class members are isomorphic");
                let row = end_basis
                    .iter()
                    .map(|f| {
                        let block = to_base
                            .after(&dec.summands[k].projection)
                            .after(f)
                            .after(&dec.summands[l].inclusion)
                            .after(&from_base);
                        let tr = block.blocks.iter().fold(0, |s, b| linalg::add(s, b.trace(), p));
                        linalg::mul(tr, dinv, p)
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    let fm = FieldMatrix::from_rows(
        p,
        rows.len(),
        end.len(),
        &rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<_>>(),
    )?;
    let radical = fm
        .kernel_basis()
        .iter()
        .map(|c| RepMorphism::from_flat(m.clone(), m.clone(), &combination(&end, c, p)))
        .collect::<Vec<_>>();
    debug_assert!(radical.iter().all(|r| r.total_matrix().is_nilpotent()));
    Ok(EndRadical { end_basis, radical })
}
