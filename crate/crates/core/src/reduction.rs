//! Simple-minded reduction: the perpendicular category `Z` of a subset, its
//! shift `⟨1⟩`, the reduce-shift-lift comparison and iterated mutation.

use crate::derived::{DObject, Indec};
use crate::models::CategoryModel;
use crate::sm::checks::{check_collection, check_setup, vanishing_bound};
use crate::sm::mutate::{candidates, mutate};
use crate::sm::{complement, Collection, CollectionKind, Direction, SmError, Verdict};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Windowed members of `Z` with the tables of `⟨1⟩` and `⟨-1⟩`. A table entry
/// is `None` when the image leaves the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionContext {
    pub subset: Vec<Indec>,
    pub kind: CollectionKind,
    pub setup: Verdict,
    pub members: Vec<Indec>,
    pub window: (i32, i32),
    pub up: Vec<(Indec, Option<Indec>)>,
    pub down: Vec<(Indec, Option<Indec>)>,
}

impl ReductionContext {
    pub fn shift_up(&self, z: Indec) -> Option<Indec> {
        self.up.iter().find(|(a, _)| *a == z).and_then(|(_, b)| *b)
    }

    pub fn shift_down(&self, z: Indec) -> Option<Indec> {
        self.down.iter().find(|(a, _)| *a == z).and_then(|(_, b)| *b)
    }

    /// Iterates `⟨1⟩` (k > 0) or `⟨-1⟩` (k < 0), stopping at the window edge.
    pub fn shift_by(&self, z: Indec, k: i32) -> Option<Indec> {
        let mut cur = z;
        for _ in 0..k.unsigned_abs() {
            cur = if k > 0 { self.shift_up(cur)? } else { self.shift_down(cur)? };
        }
        Some(cur)
    }
}

/// Whether `z` lies in `^⊥(S[≤0]) ∩ (S[≥0])^⊥` (SMC) or `S^{⊥_w}` (SMS),
/// with shifts checked up to `bound`.
pub fn in_reduction(model: &CategoryModel, s: &[Indec], kind: CollectionKind, bound: i32, z: Indec) -> bool {
    s.iter().all(|&x| match kind {
        CollectionKind::Smc => {
            (0..=bound).all(|k| model.hom_dim(z, x.shifted(-k)) == 0 && model.hom_dim(x.shifted(k), z) == 0)
        }
        CollectionKind::Sms { w } => (0..=w as i32).all(|k| model.hom_dim(x.shifted(k), z) == 0),
    })
}

fn closure_contains(model: &CategoryModel, closure: &[Indec], k: i32, obj: &DObject) -> bool {
    obj.summands.iter().all(|&x| closure.contains(&model.normalize(x.shifted(-k))))
}

/// `z⟨1⟩` (up) or `z⟨-1⟩` (down) found directly from its defining triangle:
/// the unique `y ∈ Z` with a map `z[1] → y` whose cone lies in `⟨S⟩[1]`, or
/// with a map `y → z[-1]` whose cone lies in `⟨S⟩`.
pub fn z_shift(
    model: &CategoryModel,
    pool: &[Indec],
    closure: &[Indec],
    z: Indec,
    up: bool,
) -> Result<Option<Indec>, SmError> {
    let anchor = if up { z.shifted(1) } else { z.shifted(-1) };
    let mut found: Vec<Indec> = Vec::new();
    for &y in pool {
        let (src, dst, k) = if up { (anchor, y, 1) } else { (y, anchor, 0) };
        let hit = model.lifts(src, -2..=2).into_iter().any(|lift| {
            let basis = model.derived.basis(lift, dst);
            let mut trials = basis.clone();
            if basis.len() > 1 {
                trials.push(basis.iter().fold(vec![0; basis[0].len()], |acc, b| {
                    acc.iter().zip(b).map(|(x, y)| x + y).collect()
                }));
            }
            trials.into_iter().any(|coords| {
                let f = model.derived.elementary(lift, dst, coords);
                model.cone(&f).is_ok_and(|t| closure_contains(model, closure, k, &model.normalize_obj(&t.z)))
            })
        });
        if hit && !found.contains(&y) {
            found.push(y);
        }
    }
    match found.as_slice() {
        [] => Ok(None),
        [y] => Ok(Some(*y)),
        _ => Err(SmError::ReductionShift(z)),
    }
}

/// Builds the reduction at `s`. A failing setup is an error; an inconclusive
/// one is recorded in the context.
pub fn reduce(model: &CategoryModel, s: &[Indec], kind: CollectionKind) -> Result<ReductionContext, SmError> {
    let s: Vec<Indec> = s.iter().map(|&x| model.normalize(x)).collect();
    let setup = check_setup(model, &s, kind);
    if setup.is_fails() {
        return Err(SmError::SetupFails { note: setup.note, witness: setup.witness });
    }
    let window = model.window()?;
    let catalog = model.enumerate_indecs()?;
    let bound = vanishing_bound(model, &catalog);
    let members: Vec<Indec> =
        catalog.iter().copied().filter(|&z| !s.contains(&z) && in_reduction(model, &s, kind, bound, z)).collect();
    let mut pool: Vec<Indec> = Vec::new();
    for &c in &catalog {
        for k in -1..=1 {
            let y = model.normalize(c.shifted(k));
            if !pool.contains(&y) && !s.contains(&y) && in_reduction(model, &s, kind, bound, y) {
                pool.push(y);
            }
        }
    }
    let closure = candidates(model, &s)?.members;
    let inside = |y: Option<Indec>| y.filter(|y| members.contains(y));
    let mut up = Vec::with_capacity(members.len());
    let mut down = Vec::with_capacity(members.len());
    for &z in &members {
        up.push((z, inside(z_shift(model, &pool, &closure, z, true)?)));
        down.push((z, inside(z_shift(model, &pool, &closure, z, false)?)));
    }
    Ok(ReductionContext { subset: s, kind, setup, members, window, up, down })
}

/// `⟨1⟩` and `⟨-1⟩` are inverse wherever both are defined inside the window.
pub fn check_shift_inverse(ctx: &ReductionContext) -> Verdict {
    for &z in &ctx.members {
        if let Some(y) = ctx.shift_up(z) {
            if let Some(back) = ctx.shift_down(y) {
                if back != z {
                    return Verdict::fails(vec![z, y, back], "⟨-1⟩ does not invert ⟨1⟩");
                }
            }
        }
    }
    Verdict::holds(format!("{} members", ctx.members.len())).with_window(Some(ctx.window))
}

/// Orthogonality of `V ⊆ Z` measured with Hom in `Z` and its own shift:
/// `Hom(a⟨k⟩, b) = 0` for `k > 0` and `Hom(a, b) = δ`.
pub fn check_orthogonal_in_reduction(model: &CategoryModel, ctx: &ReductionContext, v: &[Indec]) -> Verdict {
    let steps = ctx.members.len() as i32;
    for &a in v {
        if !ctx.members.contains(&a) {
            return Verdict::fails(vec![a], "not in the reduction");
        }
        for &b in v {
            let own = model.hom_dim(a, b);
            if (a == b && own != 1) || (a != b && own != 0) {
                return Verdict::fails(vec![a, b], "not a semibrick in the reduction");
            }
            let mut cur = a;
            for _ in 0..steps {
                let Some(next) = ctx.shift_up(cur) else { break };
                cur = next;
                if ctx.kind == CollectionKind::Smc && model.hom_dim(cur, b) != 0 {
                    return Verdict::fails(vec![a, b], "positive shift in the reduction maps to the collection");
                }
            }
        }
    }
    Verdict::holds("orthogonal in the reduction").with_window(Some(ctx.window))
}

/// Compares `ρ_S(U) ∖ S` with `(U ∖ S)⟨1⟩` and `λ_S(U) ∖ S` with `(U ∖ S)⟨-1⟩`.
pub fn verify_reduce_shift_lift(model: &CategoryModel, u: &Collection, subset: &[usize]) -> Result<Verdict, SmError> {
    let s = u.subset(subset)?;
    let rest = complement(&u.members, &s);
    if rest.is_empty() {
        return Ok(Verdict::holds("nothing outside the subset"));
    }
    let ctx = reduce(model, &s, u.kind)?;
    let mut checks = Vec::new();
    for (direction, up) in [(Direction::Right, true), (Direction::Left, false)] {
        let mutated = mutate(model, u, subset, direction, false)?;
        let mut lifted = complement(&mutated.members, &s);
        let mut shifted = Vec::new();
        for &z in &rest {
            let image = if up { ctx.shift_up(z) } else { ctx.shift_down(z) };
            match image {
                Some(y) => shifted.push(y),
                None => {
                    checks.push(Verdict::inconclusive(format!("{z:?} shifts out of the window")));
                    continue;
                }
            }
        }
        lifted.sort();
        shifted.sort();
        if shifted.len() == rest.len() && lifted != shifted {
            let witness = lifted.iter().filter(|x| !shifted.contains(x)).copied().collect();
            checks.push(Verdict::fails(witness, format!("{direction:?} mutation differs from the shift in the reduction")));
        } else if shifted.len() == rest.len() {
            checks.push(Verdict::holds(format!("{direction:?} mutation equals the shift in the reduction")));
        }
    }
    Ok(Verdict::all(checks).with_window(Some(ctx.window)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub steps: Vec<Collection>,
    pub verdicts: Vec<Verdict>,
    /// `(first, length)`: step `first + length` repeats step `first`.
    pub period: Option<(usize, usize)>,
    pub error: Option<(String, String)>,
}

/// Mutates `n` times at the same subset, re-checking each step and noting
/// the first repeated member set.
pub fn iterate_mutation(
    model: &CategoryModel,
    u: &Collection,
    subset: &[usize],
    direction: Direction,
    n: usize,
) -> Result<IterationTrace, SmError> {
    let s = u.subset(subset)?;
    let mut seen: HashMap<Vec<Indec>, usize> = HashMap::new();
    seen.insert(u.key(), 0);
    let mut trace = IterationTrace { steps: vec![u.clone()], verdicts: Vec::new(), period: None, error: None };
    let mut cur = u.clone();
    for step in 1..=n {
        let idx = cur.indices_of(model, &s)?;
        match mutate(model, &cur, &idx, direction, false) {
            Ok(next) => {
                trace.verdicts.push(check_collection(model, &next));
                if trace.period.is_none() {
                    if let Some(&first) = seen.get(&next.key()) {
                        trace.period = Some((first, step - first));
                    }
                }
                seen.entry(next.key()).or_insert(step);
                trace.steps.push(next.clone());
                cur = next;
            }
            Err(e) => {
                trace.error = Some((e.code().to_string(), e.to_string()));
                break;
            }
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::preset;
    use crate::sm::Status;

    fn load(name: &str) -> CategoryModel {
        CategoryModel::from_preset(&preset::lookup(name).unwrap()).unwrap()
    }

    #[test]
    fn empty_subset_reduces_to_everything() {
        let m = load("a_2");
        let ctx = reduce(&m, &[], CollectionKind::Smc).unwrap();
        assert_eq!(ctx.members, m.enumerate_indecs().unwrap());
        for &z in &ctx.members {
            if let Some(y) = ctx.shift_up(z) {
                assert_eq!(y, z.shifted(1));
            }
        }
        assert!(check_shift_inverse(&ctx).is_holds());
    }

    #[test]
    fn a2_reduction_at_first_simple() {
        let m = load("a_2");
        let s1 = m.parse("s1").unwrap();
        let ctx = reduce(&m, &[s1], CollectionKind::Smc).unwrap();
        let brute: Vec<Indec> = m
            .enumerate_indecs()
            .unwrap()
            .into_iter()
            .filter(|&z| {
                z != s1
                    && (-6..=0).all(|k| m.hom_dim(z, s1.shifted(k)) == 0)
                    && (0..=6).all(|k| m.hom_dim(s1.shifted(k), z) == 0)
            })
            .collect();
        assert_eq!(ctx.members, brute);
        assert!(check_shift_inverse(&ctx).is_holds());
    }

    #[test]
    fn tube_shift_matches_mutation() {
        let m = load("tube 3");
        let s: Vec<Indec> = ["s1", "s2"].iter().map(|l| m.parse(l).unwrap()).collect();
        let ctx = reduce(&m, &s, CollectionKind::Smc).unwrap();
        let s3 = m.parse("s3").unwrap();
        assert_eq!(ctx.shift_up(s3), Some(m.parse("[s2;s1;s3][1]").unwrap()));
        let u = Collection::new(&m, m.simples(), CollectionKind::Smc).unwrap();
        assert!(verify_reduce_shift_lift(&m, &u, &[0, 1]).unwrap().is_holds());
        assert!(verify_reduce_shift_lift(&m, &u, &[0, 1, 2]).unwrap().is_holds());
    }

    #[test]
    fn orbit_shift_matches_mutation() {
        let m = load("orbit a5 2");
        let u = Collection::from_labels(&m, &["s1", "s2", "x1", "x2", "x3"], CollectionKind::Sms { w: 2 }).unwrap();
        let v = verify_reduce_shift_lift(&m, &u, &[0, 1]).unwrap();
        assert_eq!(v.status, Status::Holds, "{}", v.note);
        let ctx = reduce(&m, &u.members[..2], u.kind).unwrap();
        assert!(check_shift_inverse(&ctx).is_holds());
        assert!(check_orthogonal_in_reduction(&m, &ctx, &u.members[2..]).is_holds());
    }

    #[test]
    fn iteration_and_periodicity() {
        let m = load("tube 3");
        let u = Collection::new(&m, m.simples(), CollectionKind::Smc).unwrap();
        let zero = iterate_mutation(&m, &u, &[0, 1], Direction::Right, 0).unwrap();
        assert_eq!(zero.steps, vec![u.clone()]);
        let two = iterate_mutation(&m, &u, &[0, 1], Direction::Right, 2).unwrap();
        assert_eq!(two.steps.len(), 3);
        assert!(two.verdicts.iter().all(|v| v.status != Status::Fails));
        let ky = load("ky-counterexample");
        let u = Collection::new(&ky, ky.simples(), CollectionKind::Smc).unwrap();
        let broken = iterate_mutation(&ky, &u, &[0], Direction::Right, 3).unwrap();
        assert_eq!(broken.error.unwrap().0, "ApproximationMissing");
        assert!(reduce(&ky, &u.members[..1], u.kind).is_err());
    }
}
