//! Right and left approximations by an extension closure: evaluation maps,
//! minimization, and detection of approximations that do not exist within a
//! length cap.

use super::SmError;
use crate::derived::{DMorphism, DObject, Derived, Indec};
use crate::linalg;
use crate::models::CategoryModel;

/// Candidate objects of a subcategory `⟨S⟩`, sorted by (length, id).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidates {
    pub members: Vec<Indec>,
    /// True when the closure was cut at `cap`.
    pub capped: bool,
    pub cap: usize,
}

impl Candidates {
    pub fn closure(model: &CategoryModel, gens: &[Indec], cap: usize) -> Result<Self, SmError> {
        let c = model.closure(gens, cap)?;
        Ok(Candidates::from_list(model, c.members, c.capped, cap))
    }

    pub fn from_list(model: &CategoryModel, mut members: Vec<Indec>, capped: bool, cap: usize) -> Self {
        members.sort_by_key(|&x| (model.length(x), x));
        members.dedup();
        Candidates { members, capped, cap }
    }

    pub fn shifted(&self, k: i32) -> Self {
        Candidates { members: self.members.iter().map(|x| x.shifted(k)).collect(), capped: self.capped, cap: self.cap }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApproxOutcome {
    Found(DMorphism),
    /// No approximation within the cap, without a detected pattern.
    NotFound { cap: usize },
    /// Minimal approximations need ever longer summands; `chain` lists the
    /// longest summand at each length bound.
    Diverging { chain: Vec<Indec> },
}

impl ApproxOutcome {
    pub fn found(&self) -> Option<&DMorphism> {
        match self {
            ApproxOutcome::Found(m) => Some(m),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ApproxOutcome::Found(_) => "found".into(),
            ApproxOutcome::NotFound { cap } => format!("not found within cap {cap}"),
            ApproxOutcome::Diverging { chain } => format!("diverging chain of {} summands", chain.len()),
        }
    }

    pub fn chain(&self) -> Vec<Indec> {
        match self {
            ApproxOutcome::Diverging { chain } => chain.clone(),
            _ => Vec::new(),
        }
    }
}

/// Evaluation map `⊕ L^{dim Hom(L, d)} -> d` (right) or coevaluation
/// `d -> ⊕ L^{dim Hom(d, L)}` (left).
pub fn evaluation(derived: &Derived, members: &[Indec], d: &DObject, side: Side) -> DMorphism {
    let mut big = Vec::new();
    let mut slots: Vec<(usize, usize, usize)> = Vec::new();
    for &l in members {
        for (i, &di) in d.summands.iter().enumerate() {
            let dim = match side {
                Side::Right => derived.hom_dim(l, di),
                Side::Left => derived.hom_dim(di, l),
            };
            for k in 0..dim {
                big.push(l);
                slots.push((i, k, dim));
            }
        }
    }
    let x = DObject::from_vec(big);
    match side {
        Side::Right => {
            let mut m = derived.zero_morphism(&x, d);
            for (j, &(i, k, _)) in slots.iter().enumerate() {
                m.components[i][j][k] = 1;
            }
            m
        }
        Side::Left => {
            let mut m = derived.zero_morphism(d, &x);
            for (t, &(i, k, _)) in slots.iter().enumerate() {
                m.components[t][i][k] = 1;
            }
            m
        }
    }
}

fn unit_basis(dim: usize) -> Vec<Vec<u32>> {
    (0..dim).map(|k| (0..dim).map(|i| u32::from(i == k)).collect()).collect()
}

/// Removes summands of an approximation that factor through the others
/// modulo the radical, lowest index first, until none does.
pub fn minimize(derived: &Derived, f: &DMorphism, side: Side) -> DMorphism {
    let mut cur = f.clone();
    'outer: loop {
        let n = match side {
            Side::Right => cur.source.len(),
            Side::Left => cur.target.len(),
        };
        for t in 0..n {
            if removable(derived, &cur, side, t) {
                cur = drop_summand(&cur, side, t);
                continue 'outer;
            }
        }
        return cur;
    }
}

fn removable(derived: &Derived, f: &DMorphism, side: Side, t: usize) -> bool {
    let p = derived.p();
    let (xs, ds) = match side {
        Side::Right => (&f.source.summands, &f.target.summands),
        Side::Left => (&f.target.summands, &f.source.summands),
    };
    let comp = |u: usize, i: usize| -> &Vec<u32> {
        match side {
            Side::Right => &f.components[i][u],
            Side::Left => &f.components[u][i],
        }
    };
    let xt = xs[t];
    let v: Vec<u32> = (0..ds.len()).flat_map(|i| comp(t, i).clone()).collect();
    if v.iter().all(|&c| c == 0) {
        return true;
    }
    let mut span: Vec<Vec<u32>> = Vec::new();
    for (u, &xu) in xs.iter().enumerate() {
        if u == t {
            continue;
        }
        let maps = match side {
            Side::Right => unit_basis(derived.hom_dim(xt, xu)),
            Side::Left => unit_basis(derived.hom_dim(xu, xt)),
        };
        for g in maps {
            let w: Vec<u32> = ds
                .iter()
                .enumerate()
                .flat_map(|(i, &di)| match side {
                    Side::Right => derived.compose_pair(xt, xu, di, comp(u, i), &g),
                    Side::Left => derived.compose_pair(di, xu, xt, &g, comp(u, i)),
                })
                .collect();
            span.push(w);
        }
    }
    for r in derived.heart.radical(xt.module).iter() {
        let w: Vec<u32> = ds
            .iter()
            .enumerate()
            .flat_map(|(i, &di)| match side {
                Side::Right => derived.compose_pair(xt, xt, di, comp(t, i), r),
                Side::Left => derived.compose_pair(di, xt, xt, r, comp(t, i)),
            })
            .collect();
        span.push(w);
    }
    !span.is_empty() && linalg::in_span(p, &v, &span)
}

fn drop_summand(f: &DMorphism, side: Side, t: usize) -> DMorphism {
    let mut g = f.clone();
    match side {
        Side::Right => {
            g.source.summands.remove(t);
            for row in &mut g.components {
                row.remove(t);
            }
        }
        Side::Left => {
            g.target.summands.remove(t);
            g.components.remove(t);
        }
    }
    g
}

/// The minimal approximation built from the given candidates only.
///
/// Each candidate `L` appears with multiplicity equal to the dimension of
/// `Hom(L, d)` modulo the maps that factor through a radical morphism
/// `L -> L'` between candidates (dually on the left), and the chosen maps
/// are unit vectors spanning a complement of that subspace.
pub fn minimal(derived: &Derived, members: &[Indec], d: &DObject, side: Side) -> DMorphism {
    let p = derived.p();
    let hom = |a: Indec, b: Indec| match side {
        Side::Right => derived.hom_dim(a, b),
        Side::Left => derived.hom_dim(b, a),
    };
    let mut big = Vec::new();
    let mut chosen: Vec<Vec<Vec<u32>>> = Vec::new();
    for &l in members {
        let dims: Vec<usize> = d.summands.iter().map(|&di| hom(l, di)).collect();
        let total: usize = dims.iter().sum();
        if total == 0 {
            continue;
        }
        let mut span: Vec<Vec<u32>> = Vec::new();
        for &l2 in members {
            let rad: Vec<Vec<u32>> = if l2 == l {
                derived.heart.radical(l.module).to_vec()
            } else {
                let n = hom(l, l2);
                unit_basis(n)
            };
            if rad.is_empty() {
                continue;
            }
            for (i, &di) in d.summands.iter().enumerate() {
                for h in unit_basis(hom(l2, di)) {
                    for g in &rad {
                        let v = match side {
                            Side::Right => derived.compose_pair(l, l2, di, &h, g),
                            Side::Left => derived.compose_pair(di, l2, l, g, &h),
                        };
                        let offset: usize = dims[..i].iter().sum();
                        let mut full = vec![0u32; total];
                        full[offset..offset + v.len()].copy_from_slice(&v);
                        span.push(full);
                    }
                }
            }
        }
        let mut basis = span;
        let start = linalg::span_rank(p, total, &basis);
        let mut rank = start;
        for k in 0..total {
            if rank == total {
                break;
            }
            let e: Vec<u32> = (0..total).map(|i| u32::from(i == k)).collect();
            basis.push(e.clone());
            let r = linalg::span_rank(p, total, &basis);
            if r > rank {
                rank = r;
                big.push(l);
                let mut comps = Vec::with_capacity(d.summands.len());
                let mut offset = 0;
                for &n in &dims {
                    comps.push(e[offset..offset + n].to_vec());
                    offset += n;
                }
                chosen.push(comps);
            } else {
                basis.pop();
            }
        }
    }
    let x = DObject::from_vec(big);
    match side {
        Side::Right => {
            let mut m = derived.zero_morphism(&x, d);
            for (j, comps) in chosen.into_iter().enumerate() {
                for (i, c) in comps.into_iter().enumerate() {
                    m.components[i][j] = c;
                }
            }
            m
        }
        Side::Left => {
            let mut m = derived.zero_morphism(d, &x);
            for (t, comps) in chosen.into_iter().enumerate() {
                m.components[t] = comps;
            }
            m
        }
    }
}

fn is_iso(derived: &Derived, f: &DMorphism) -> bool {
    f.source.sorted() == f.target.sorted() && derived.cone(f).map(|t| t.z.is_zero()).unwrap_or(false)
}

/// Minimal approximation of `d` by the candidates. When the candidate list
/// was cut at a length cap, the minimal approximations over growing length
/// bounds decide between a stable answer, divergence, and not-found.
pub fn approximate(derived: &Derived, cands: &Candidates, d: &DObject, side: Side) -> ApproxOutcome {
    let full = minimal(derived, &cands.members, d, side);
    if !cands.capped || is_iso(derived, &full) {
        return ApproxOutcome::Found(full);
    }
    let summands = |f: &DMorphism| -> Vec<Indec> {
        match side {
            Side::Right => f.source.summands.clone(),
            Side::Left => f.target.summands.clone(),
        }
    };
    let mut lengths: Vec<usize> = cands.members.iter().map(|&x| derived.length(x)).collect();
    lengths.dedup();
    let top = lengths.last().copied().unwrap_or(0);
    let mut ladder: Vec<(usize, Option<Indec>)> = Vec::new();
    for &k in &lengths {
        let sub: Vec<Indec> = cands.members.iter().copied().filter(|&x| derived.length(x) <= k).collect();
        let f = minimal(derived, &sub, d, side);
        let longest = summands(&f).into_iter().max_by_key(|&x| (derived.length(x), x));
        ladder.push((longest.map_or(0, |x| derived.length(x)), longest));
    }
    let mut start = ladder.len().saturating_sub(1);
    while start > 0 && ladder[start - 1].0 < ladder[start].0 && ladder[start - 1].0 > 0 {
        start -= 1;
    }
    let tail = &ladder[start..];
    if tail.len() >= 3 && tail.last().map(|t| t.0) == Some(top) {
        return ApproxOutcome::Diverging { chain: tail.iter().filter_map(|t| t.1).collect() };
    }
    let need = summands(&full).iter().map(|&x| derived.length(x)).max().unwrap_or(0);
    if need < top {
        ApproxOutcome::Found(full)
    } else {
        ApproxOutcome::NotFound { cap: cands.cap }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{preset, ModelKind, ModelSpec};
    use crate::rep::Quiver;

    #[test]
    fn a2_minimal_approximation_drops_projective() {
        let m = CategoryModel::new(
            ModelSpec::new(ModelKind::DerivedHereditary { quiver: Quiver::linear_a(2) }).with_window(-1, 1),
        )
        .unwrap();
        let s1 = m.parse("s1").unwrap();
        let s2 = m.parse("s2").unwrap();
        let p1 = m.parse("[s1;s2]").unwrap();
        let d = DObject::single(s2.shifted(1));
        let f = minimal(&m.derived, &[s1, p1], &d, Side::Right);
        assert_eq!(f.source.summands, vec![s1]);
        // Adding a zero summand by hand still minimizes away.
        let mut padded = f.clone();
        padded.source.summands.push(p1);
        padded.components[0].push(vec![]);
        assert_eq!(minimize(&m.derived, &padded, Side::Right), f);
    }

    #[test]
    fn tube_approximation_matches_triangle() {
        let m = CategoryModel::from_preset(&preset::lookup("tube 3").unwrap()).unwrap();
        let s: Vec<Indec> = ["s1", "s2"].iter().map(|l| m.parse(l).unwrap()).collect();
        let c = Candidates::closure(&m, &s, m.spec.cap).unwrap();
        let d = DObject::single(m.parse("s3[1]").unwrap());
        let f = approximate(&m.derived, &c, &d, Side::Right);
        let f = f.found().unwrap();
        assert_eq!(m.label_obj(&f.source), "[s2;s1]");
        assert_eq!(m.label_obj(&m.cone(f).unwrap().z), "[s2;s1;s3][1]");
    }

    #[test]
    fn loop_approximation_diverges() {
        let m = CategoryModel::from_preset(&preset::lookup("ky-counterexample").unwrap()).unwrap();
        let s1 = m.parse("s1").unwrap();
        let c = Candidates::closure(&m, &[s1], 8).unwrap();
        assert!(c.capped);
        let d = DObject::single(m.parse("s2[1]").unwrap());
        match approximate(&m.derived, &c, &d, Side::Right) {
            ApproxOutcome::Diverging { chain } => {
                let lens: Vec<usize> = chain.iter().map(|&x| m.length(x)).collect();
                assert_eq!(lens, (1..=8).collect::<Vec<_>>());
            }
            other => panic!("{other:?}"),
        }
    }
}
