//! Torsion pairs generated by a subset of simples, and simple tilts.

use super::approx::{approximate, Candidates, Side};
use super::mutate::{candidates, mutate};
use super::{Collection, CollectionKind, Direction, SmError, Verdict};
use crate::derived::{DObject, Indec};
use crate::models::CategoryModel;
use serde::{Deserialize, Serialize};

/// The torsion pair of a heart with `⟨S⟩` as torsion class (right) or as
/// torsionfree class (left).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionPairSpec {
    pub simples: Vec<Indec>,
    pub subset: Vec<Indec>,
    pub torsion: Vec<Indec>,
    pub torsionfree: Vec<Indec>,
    pub verdict: Verdict,
}

/// Indecomposables of the heart whose simples are `simples`, up to the cap.
pub fn heart_catalog(model: &CategoryModel, simples: &[Indec]) -> Result<(Vec<Indec>, bool), SmError> {
    let c = candidates(model, simples)?;
    let mut members: Vec<Indec> = Vec::new();
    for m in c.members {
        let n = model.normalize(m);
        if !members.contains(&n) {
            members.push(n);
        }
    }
    Ok((members, c.capped))
}

pub fn torsion_pair(
    model: &CategoryModel,
    u: &Collection,
    subset: &[usize],
    direction: Direction,
) -> Result<TorsionPairSpec, SmError> {
    let s = u.subset(subset)?;
    let (heart, capped) = heart_catalog(model, &u.members)?;
    let (closure, _) = heart_catalog(model, &s)?;
    let outside: Vec<Indec> = match direction {
        Direction::Right => {
            heart.iter().copied().filter(|&h| s.iter().all(|&x| model.hom_dim(x, h) == 0)).collect()
        }
        Direction::Left => {
            heart.iter().copied().filter(|&h| s.iter().all(|&x| model.hom_dim(h, x) == 0)).collect()
        }
    };
    let (torsion, torsionfree) = match direction {
        Direction::Right => (closure, outside),
        Direction::Left => (outside, closure),
    };
    let verdict = verify_torsion_pair(model, &heart, &torsion, &torsionfree);
    let verdict = if capped && verdict.is_holds() {
        Verdict::inconclusive(format!("{}; heart catalog cut at the cap", verdict.note)).with_cap(model.spec.cap)
    } else {
        verdict
    };
    Ok(TorsionPairSpec { simples: u.members.clone(), subset: s, torsion, torsionfree, verdict })
}

fn verify_torsion_pair(model: &CategoryModel, heart: &[Indec], torsion: &[Indec], torsionfree: &[Indec]) -> Verdict {
    for &t in torsion {
        for &f in torsionfree {
            if model.hom_dim(t, f) != 0 {
                return Verdict::fails(vec![t, f], "nonzero map from torsion to torsionfree");
            }
        }
    }
    let cands = Candidates::from_list(model, torsion.to_vec(), false, model.spec.cap);
    for &h in heart {
        let Some(f) = approximate(&model.derived, &cands, &DObject::single(h), Side::Right).found().cloned() else {
            return Verdict::inconclusive("torsion approximation missing");
        };
        let z = match model.cone(&f) {
            Ok(t) => model.normalize_obj(&t.z),
            Err(e) => return Verdict::inconclusive(e.to_string()),
        };
        if let Some(&bad) = z.summands.iter().find(|x| !torsionfree.contains(x)) {
            return Verdict::fails(vec![h, bad], "torsionfree quotient outside the torsionfree class");
        }
    }
    Verdict::holds(format!("{} heart objects split into torsion and torsionfree parts", heart.len()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltReport {
    pub direction: Direction,
    pub new_simples: Vec<Indec>,
    pub torsion_pair: TorsionPairSpec,
    pub verdict: Verdict,
}

/// Right tilt: simples `S[-1] ∪ ρ_S(U∖S)[-1]` of `F ∗ T[-1]`. Left tilt:
/// simples `S[1] ∪ λ_S(U∖S)[1]` of `F[1] ∗ T`.
pub fn simple_tilt(
    model: &CategoryModel,
    u: &Collection,
    subset: &[usize],
    direction: Direction,
) -> Result<TiltReport, SmError> {
    let mutated = mutate(model, u, subset, direction, true)?;
    let tp = torsion_pair(model, u, subset, direction)?;
    let s = u.subset(subset)?;
    let k = match direction {
        Direction::Right => -1,
        Direction::Left => 1,
    };
    let allowed: Vec<Indec> = match direction {
        Direction::Right => tp.torsionfree.iter().copied().chain(tp.torsion.iter().map(|&t| model.shift(t, -1))).collect(),
        Direction::Left => tp.torsionfree.iter().map(|&f| model.shift(f, 1)).chain(tp.torsion.iter().copied()).collect(),
    };
    let mut checks = Vec::new();
    let stray: Vec<Indec> = mutated.members.iter().copied().filter(|x| !allowed.contains(x)).collect();
    checks.push(if stray.is_empty() {
        Verdict::holds("new simples lie in the tilted heart")
    } else if tp.verdict.is_holds() {
        Verdict::fails(stray, "new simple outside the tilted heart")
    } else {
        Verdict::inconclusive("new simple outside the capped tilted heart")
    });
    let (tilted, _) = heart_catalog(model, &mutated.members)?;
    for &x in &s {
        checks.push(shifted_simple_is_simple(model, &tilted, model.shift(x, k)));
    }
    Ok(TiltReport { direction, new_simples: mutated.members, torsion_pair: tp, verdict: Verdict::all(checks) })
}

/// No object of `heart` has a basis map to `x` that is a proper nonzero
/// subobject inclusion, i.e. whose nonzero cone lies in the heart.
pub fn shifted_simple_is_simple(model: &CategoryModel, heart: &[Indec], x: Indec) -> Verdict {
    for &a in heart {
        for lift in model.lifts(a, -2..=2) {
            for coords in model.derived.basis(lift, x) {
                let f = model.derived.elementary(lift, x, coords);
                let Ok(t) = model.cone(&f) else { continue };
                let z = model.normalize_obj(&t.z);
                if !z.is_zero() && z.summands.iter().all(|s| heart.contains(s)) {
                    return Verdict::fails(vec![a, x], "proper subobject in the tilted heart");
                }
            }
        }
    }
    Verdict::holds("shifted simple has no proper subobject")
}

/// Tilted collection of simples as a collection.
pub fn tilted_collection(model: &CategoryModel, report: &TiltReport) -> Result<Collection, SmError> {
    Collection::new(model, report.new_simples.clone(), CollectionKind::Smc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::preset;
    use crate::sm::Status;

    fn load(name: &str) -> CategoryModel {
        CategoryModel::from_preset(&preset::lookup(name).unwrap()).unwrap()
    }

    fn labels(m: &CategoryModel, xs: &[Indec]) -> Vec<String> {
        xs.iter().map(|&x| m.label(x)).collect()
    }

    #[test]
    fn a2_right_tilt() {
        let m = load("a_2");
        let u = Collection::new(&m, m.simples(), CollectionKind::Smc).unwrap();
        let r = simple_tilt(&m, &u, &[0], Direction::Right).unwrap();
        assert_eq!(labels(&m, &r.new_simples), ["s1[-1]", "[s1;s2]"]);
        assert_eq!(r.verdict.status, Status::Holds, "{}", r.verdict.note);
        assert_eq!(r.torsion_pair.verdict.status, Status::Holds);
        let same = simple_tilt(&m, &u, &[], Direction::Right).unwrap();
        assert!(Collection::new(&m, same.new_simples, CollectionKind::Smc).unwrap().same_members(&u));
    }

    #[test]
    fn tube_torsion_pair_and_tilt() {
        let m = load("tube 3");
        let u = Collection::new(&m, m.simples(), CollectionKind::Smc).unwrap();
        let tp = torsion_pair(&m, &u, &[0, 1], Direction::Right).unwrap();
        assert_eq!(labels(&m, &tp.torsion), ["s1", "s2", "[s2;s1]"]);
        assert!(tp.torsionfree.iter().all(|&f| m.hom_dim(m.parse("s1").unwrap(), f) == 0));
        assert_eq!(tp.verdict.status, Status::Inconclusive);
        let r = simple_tilt(&m, &u, &[0, 1], Direction::Right).unwrap();
        assert_eq!(labels(&m, &r.new_simples), ["s1[-1]", "s2[-1]", "[s2;s1;s3]"]);
        assert_ne!(r.verdict.status, Status::Fails, "{}", r.verdict.note);
    }

    #[test]
    fn degenerate_torsion_pairs() {
        let m = load("a_3");
        let u = Collection::new(&m, m.simples(), CollectionKind::Smc).unwrap();
        let all = torsion_pair(&m, &u, &[0, 1, 2], Direction::Right).unwrap();
        assert_eq!((all.torsion.len(), all.torsionfree.len()), (6, 0));
        let none = torsion_pair(&m, &u, &[], Direction::Right).unwrap();
        assert_eq!((none.torsion.len(), none.torsionfree.len()), (0, 6));
        assert!(none.verdict.is_holds());
    }
}
