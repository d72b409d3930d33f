//! Auslander–Reiten data of a representation-finite hereditary heart: the
//! translate, projective and injective indecomposables, the Serre functor on
//! `D^b`, and mesh coordinates in `ℤQ`.

use super::ModelError;
use crate::derived::Indec;
use crate::heart::HeartCatalog;
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct ArData {
    /// `τM` for each non-projective module.
    pub tau: HashMap<usize, usize>,
    pub tau_inv: HashMap<usize, usize>,
    /// `P_j` and `I_j` indexed by vertex.
    pub projective: Vec<usize>,
    pub injective: Vec<usize>,
    /// Position `(k, j)` with `M = τ^{-k} P_j`.
    pub zq: HashMap<usize, (i32, usize)>,
    /// `I_j = τ^{-m_j} P_{σ(j)}` as `(m_j, σ(j))`.
    nakayama: Vec<(i32, usize)>,
    /// Twice the horizontal offset of `P_j` in the mesh.
    proj_x2: Vec<i32>,
}

impl ArData {
    /// Derives AR data from a complete list of indecomposables, using the AR
    /// formula `dim Hom(X, τM) = dim Ext¹(M, X)`.
    pub fn compute(heart: &HeartCatalog, base: &[usize]) -> Result<Self, ModelError> {
        let nv = heart.quiver.vertex_count();
        let find = |pred: &dyn Fn(usize) -> bool, what: &str| -> Result<usize, ModelError> {
            let hits: Vec<usize> = base.iter().copied().filter(|&n| pred(n)).collect();
            match hits.as_slice() {
                [one] => Ok(*one),
                _ => Err(ModelError::Invalid(format!("{what} not determined by the catalog"))),
            }
        };
        let mut projective = Vec::with_capacity(nv);
        let mut injective = Vec::with_capacity(nv);
        for j in 0..nv {
            projective.push(find(&|n| base.iter().all(|&x| heart.hom_dim(n, x) == heart.dims(x)[j]), "projective")?);
            injective.push(find(&|n| base.iter().all(|&x| heart.hom_dim(x, n) == heart.dims(x)[j]), "injective")?);
        }
        let mut tau = HashMap::new();
        let mut tau_inv = HashMap::new();
        for &m in base {
            if projective.contains(&m) {
                continue;
            }
            let t = find(&|n| base.iter().all(|&x| heart.hom_dim(x, n) == heart.ext_dim(m, x)), "translate")?;
            tau.insert(m, t);
            tau_inv.insert(t, m);
        }
        let mut zq = HashMap::new();
        for (j, &pj) in projective.iter().enumerate() {
            let (mut k, mut m) = (0, pj);
            loop {
                zq.insert(m, (k, j));
                match tau_inv.get(&m) {
                    Some(&next) => {
                        m = next;
                        k += 1;
                    }
                    None => break,
                }
            }
        }
        if zq.len() != base.len() {
            return Err(ModelError::Invalid("preprojective component does not cover the catalog".into()));
        }
        let nakayama = injective.iter().map(|i| zq[i]).collect();
        let mut proj_x2: Vec<Option<i32>> = vec![None; nv];
        if nv > 0 {
            proj_x2[0] = Some(0);
        }
        let arrows = &heart.quiver.arrows;
        for _ in 0..nv {
            for &(s, t) in arrows {
                match (proj_x2[s], proj_x2[t]) {
                    (None, Some(xt)) => proj_x2[s] = Some(xt + 1),
                    (Some(xs), None) => proj_x2[t] = Some(xs - 1),
                    _ => {}
                }
            }
        }
        let proj_x2 = proj_x2.into_iter().map(|x| x.unwrap_or(0)).collect();
        Ok(ArData { tau, tau_inv, projective, injective, zq, nakayama, proj_x2 })
    }

    pub fn is_projective(&self, m: usize) -> bool {
        self.projective.contains(&m)
    }

    pub fn is_injective(&self, m: usize) -> bool {
        self.injective.contains(&m)
    }

    /// Serre functor `S = τ[1]` on `D^b`, with `S(P_j) = I_j`.
    pub fn serre(&self, x: Indec) -> Indec {
        match self.projective.iter().position(|&p| p == x.module) {
            Some(j) => Indec::new(self.injective[j], x.shift),
            None => Indec::new(self.tau[&x.module], x.shift + 1),
        }
    }

    pub fn serre_inv(&self, x: Indec) -> Indec {
        match self.injective.iter().position(|&i| i == x.module) {
            Some(j) => Indec::new(self.projective[j], x.shift),
            None => Indec::new(self.tau_inv[&x.module], x.shift - 1),
        }
    }

    /// Mesh position `(k, j)` of `M[s]` in `ℤQ`, using `[1] = τ^{-1} S`.
    pub fn zq_position(&self, x: Indec) -> (i32, usize) {
        let (mut k, mut j) = self.zq[&x.module];
        for _ in 0..x.shift.max(0) {
            let (m, sigma) = self.nakayama[j];
            k += m + 1;
            j = sigma;
        }
        for _ in 0..(-x.shift).max(0) {
            let j0 = self.nakayama.iter().position(|&(_, s)| s == j).expect("Nakayama permutation");
            k -= self.nakayama[j0].0 + 1;
            j = j0;
        }
        (k, j)
    }

    /// Layout point `(2x, y)`: `x` grows along `τ^{-1}`, rows are vertices.
    pub fn layout(&self, x: Indec) -> (i32, i32) {
        let (k, j) = self.zq_position(x);
        let rows = self.projective.len() as i32;
        (2 * k + self.proj_x2[j], rows - 1 - j as i32)
    }
}
