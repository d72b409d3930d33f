//! Axiom checks: orthogonality, generation, setups and mutation pairs.

use super::approx::{approximate, ApproxOutcome, Candidates, Side};
use super::mutate::candidates;
use super::{Collection, CollectionKind, SmError, Verdict};
use crate::derived::{DObject, Indec};
use crate::linalg;
use crate::models::CategoryModel;
use num_rational::Ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orthogonality {
    Semibrick,
    /// `Hom(u[m], v) = 0` for `0 < m < w`.
    W(u32),
    /// `Hom(u[m], v) = 0` for every `m > 0`.
    Infinity,
}

/// Largest shift difference at which Homs between the given objects can be
/// nonzero, plus a margin.
pub fn vanishing_bound(model: &CategoryModel, objs: &[Indec]) -> i32 {
    if let Some(w) = model.orbit_w() {
        return 2 * (w as i32 + 2);
    }
    let lo = objs.iter().map(|x| x.shift).min().unwrap_or(0);
    let hi = objs.iter().map(|x| x.shift).max().unwrap_or(0);
    hi - lo + 2
}

pub fn check_orthogonality(model: &CategoryModel, members: &[Indec], mode: Orthogonality) -> Verdict {
    for (i, &a) in members.iter().enumerate() {
        if members[..i].contains(&a) {
            return Verdict::fails(vec![a], "duplicate member");
        }
        let end = model.hom_dim(a, a);
        if end != 1 {
            return Verdict::fails(vec![a], format!("endomorphism space has dimension {end}"));
        }
        for &b in members {
            if a != b && model.hom_dim(a, b) != 0 {
                return Verdict::fails(vec![a, b], "nonzero morphism between distinct members");
            }
        }
    }
    let top = match mode {
        Orthogonality::Semibrick => return Verdict::holds("semibrick"),
        Orthogonality::W(w) => w as i32 - 1,
        Orthogonality::Infinity => vanishing_bound(model, members),
    };
    for m in 1..=top {
        for &a in members {
            for &b in members {
                if model.hom_dim(a.shifted(m), b) != 0 {
                    return Verdict::fails(vec![a.shifted(m), b], format!("Hom(u[{m}], v) is nonzero"));
                }
            }
        }
    }
    Verdict::holds(format!("orthogonal for shifts 1..={top}")).with_window(Some((1, top.max(1))))
}

/// Class in the Grothendieck group of the standard heart.
pub fn k0_class(model: &CategoryModel, x: Indec) -> Vec<i64> {
    let sign = if x.shift.rem_euclid(2) == 0 { 1 } else { -1 };
    model.heart().dims(x.module).iter().map(|&d| sign * d as i64).collect()
}

/// Coordinates of `x` in the basis given by the classes of `basis`.
pub fn k0_coordinates(model: &CategoryModel, basis: &[Indec], x: Indec) -> Option<Vec<Ratio<i128>>> {
    let cols: Vec<Vec<i64>> = basis.iter().map(|&b| k0_class(model, b)).collect();
    linalg::solve_rational(&cols, &k0_class(model, x))
}

/// Necessary condition for generation: the classes of the members span the
/// Grothendieck group over the integers.
pub fn check_k0(model: &CategoryModel, members: &[Indec]) -> Verdict {
    if model.is_orbit() {
        return Verdict::holds("skipped on the orbit model");
    }
    for v in 0..model.vertex_count() {
        let s = model.simple(v);
        match k0_coordinates(model, members, s) {
            None => return Verdict::fails(vec![s], "class outside the span of the members"),
            Some(c) if members.len() == model.vertex_count() && c.iter().any(|q| !q.is_integer()) => {
                return Verdict::fails(vec![s], "class outside the integer span of the members")
            }
            _ => {}
        }
    }
    if members.len() == model.vertex_count() {
        let rows: Vec<Vec<i64>> = members.iter().map(|&m| k0_class(model, m)).collect();
        let det = linalg::det_integer(&rows);
        if det.abs() != 1 {
            return Verdict::fails(Vec::new(), format!("member classes have determinant {det}"));
        }
    }
    Verdict::holds("classes span the Grothendieck group")
}

/// Peels `d` by minimal right approximations from the highest layer down.
/// Returns the remainder and the layers that contributed, or the layer where
/// an approximation was missing.
pub fn peel(
    model: &CategoryModel,
    cands: &Candidates,
    d: Indec,
    layers: &[i32],
) -> Result<(DObject, Vec<i32>), (i32, ApproxOutcome)> {
    let mut cur = DObject::single(d);
    let mut used = Vec::new();
    for &a in layers {
        if cur.is_zero() {
            break;
        }
        let shifted = cands.shifted(a);
        let outcome = approximate(&model.derived, &shifted, &cur, Side::Right);
        let Some(f) = outcome.found() else {
            return Err((a, outcome));
        };
        if f.source.is_zero() {
            continue;
        }
        let t = model.cone(f).map_err(|_| (a, ApproxOutcome::NotFound { cap: cands.cap }))?;
        cur = model.normalize_obj(&t.z);
        used.push(a);
    }
    Ok((cur, used))
}

/// Layers tried when peeling `d` by a collection with the given member shifts.
pub fn smc_layers(d: Indec, members: &[Indec]) -> Vec<i32> {
    let umin = members.iter().map(|x| x.shift).min().unwrap_or(0);
    let umax = members.iter().map(|x| x.shift).max().unwrap_or(0);
    (d.shift - umax - 2..=d.shift - umin + 2).rev().collect()
}

/// Every catalog object lies in the iterated extension of shifted copies of
/// `⟨U⟩`: layers `w-1..0` for a system, all relevant layers for a collection.
pub fn check_generation(model: &CategoryModel, u: &Collection) -> Verdict {
    let catalog = match model.enumerate_indecs() {
        Ok(c) => c,
        Err(e) => return Verdict::inconclusive(e.to_string()),
    };
    let window = model.window().ok();
    let k0 = check_k0(model, &u.members);
    if k0.is_fails() {
        return k0.with_window(window);
    }
    let cands = match candidates(model, &u.members) {
        Ok(c) => c,
        Err(e) => return Verdict::inconclusive(e.to_string()),
    };
    for d in catalog {
        let layers: Vec<i32> = match u.kind {
            CollectionKind::Sms { w } => (0..w as i32).rev().collect(),
            CollectionKind::Smc => smc_layers(d, &u.members),
        };
        match peel(model, &cands, d, &layers) {
            Ok((rest, _)) if rest.is_zero() => {}
            Ok((rest, _)) => {
                let mut witness = vec![d];
                witness.extend(rest.summands);
                return Verdict::fails(witness, "object not filtered by the layers").with_window(window);
            }
            Err((a, outcome)) => {
                return Verdict::inconclusive(format!("layer {a}: approximation {}", outcome.describe()))
                    .with_window(window)
                    .with_cap(cands.cap);
            }
        }
    }
    Verdict::holds("every catalog object is filtered").with_window(window)
}

pub fn check_smc(model: &CategoryModel, u: &Collection) -> Verdict {
    let o = check_orthogonality(model, &u.members, Orthogonality::Infinity);
    if !o.is_holds() {
        return o;
    }
    Verdict::all(vec![o, check_generation(model, u)])
}

pub fn check_sms(model: &CategoryModel, u: &Collection, w: u32) -> Verdict {
    let o = check_orthogonality(model, &u.members, Orthogonality::W(w));
    if !o.is_holds() {
        return o;
    }
    let mut as_sms = u.clone();
    as_sms.kind = CollectionKind::Sms { w };
    Verdict::all(vec![o, check_generation(model, &as_sms)])
}

/// Checks the axioms of the collection's own kind.
pub fn check_collection(model: &CategoryModel, u: &Collection) -> Verdict {
    match u.kind {
        CollectionKind::Smc => check_smc(model, u),
        CollectionKind::Sms { w } => check_sms(model, u, w),
    }
}

pub fn approximation_verdict(
    model: &CategoryModel,
    cands: &Candidates,
    objs: impl Iterator<Item = Indec>,
    side: Side,
) -> Verdict {
    let mut count = 0;
    for d in objs {
        count += 1;
        let outcome = approximate(&model.derived, cands, &DObject::single(d), side);
        match outcome {
            ApproxOutcome::Found(_) => {}
            ApproxOutcome::Diverging { chain } => {
                let mut witness = vec![d];
                witness.extend(chain);
                return Verdict::fails(witness, format!("{side:?} approximation of the first witness diverges"))
                    .with_cap(cands.cap);
            }
            ApproxOutcome::NotFound { cap } => {
                return Verdict::inconclusive(format!("{side:?} approximation not found within cap")).with_cap(cap)
            }
        }
    }
    Verdict::holds(format!("{side:?} approximations exist for {count} objects"))
}

/// Functorial finiteness conditions under which `S` can be mutated
/// indefinitely.
pub fn check_setup(model: &CategoryModel, s: &[Indec], kind: CollectionKind) -> Verdict {
    let semibrick = check_orthogonality(model, s, Orthogonality::Semibrick);
    if !semibrick.is_holds() {
        return semibrick;
    }
    let catalog = match model.enumerate_indecs() {
        Ok(c) => c,
        Err(e) => return Verdict::inconclusive(e.to_string()),
    };
    let window = model.window().ok();
    let cands = match candidates(model, s) {
        Ok(c) => c,
        Err(e) => return Verdict::inconclusive(e.to_string()),
    };
    let bound = vanishing_bound(model, &catalog);
    let verdict = match kind {
        CollectionKind::Smc => {
            let right_domain = catalog
                .iter()
                .copied()
                .filter(|&d| s.iter().all(|&x| (1..=bound).all(|m| model.hom_dim(x.shifted(m), d) == 0)));
            let left_domain = catalog
                .iter()
                .copied()
                .filter(|&d| s.iter().all(|&x| (1..=bound).all(|m| model.hom_dim(d, x.shifted(-m)) == 0)));
            Verdict::all(vec![
                approximation_verdict(model, &cands, right_domain, Side::Right),
                approximation_verdict(model, &cands, left_domain, Side::Left),
            ])
        }
        CollectionKind::Sms { w } => {
            let mut image = Vec::new();
            for &x in s {
                match model.serre(x) {
                    Ok(y) => image.push(model.shift(y, w as i32)),
                    Err(e) => return Verdict::inconclusive(e.to_string()).with_window(window),
                }
            }
            if let Some(&bad) = image.iter().find(|y| !s.contains(y)) {
                return Verdict::fails(vec![bad], "Serre image shifted by w leaves S").with_window(window);
            }
            Verdict::all(vec![
                approximation_verdict(model, &cands, catalog.iter().copied(), Side::Right),
                approximation_verdict(model, &cands, catalog.iter().copied(), Side::Left),
            ])
        }
    };
    verdict.with_window(window)
}

fn in_add(model: &CategoryModel, set: &[Indec], z: &DObject) -> bool {
    z.summands.iter().all(|&x| set.contains(&model.normalize(x)))
}

fn perpendicular(model: &CategoryModel, s: &[Indec], c: Indec, extra: i32) -> bool {
    s.iter().all(|&x| model.hom_dim(c, x) == 0 && model.hom_dim(x, c) == 0)
        && s.iter().all(|&x| {
            if extra < 0 {
                model.hom_dim(c, x.shifted(extra)) == 0
            } else {
                model.hom_dim(x.shifted(extra), c) == 0
            }
        })
}

/// Whether `c` satisfies the defining condition of the first half of an
/// `S`-mutation pair with second half `b`.
pub fn in_first_half(model: &CategoryModel, cands: &Candidates, s: &[Indec], b: &[Indec], c: Indec) -> bool {
    if !perpendicular(model, s, c, -1) {
        return false;
    }
    match approximate(&model.derived, cands, &DObject::single(c.shifted(1)), Side::Right) {
        ApproxOutcome::Found(f) => model.cone(&f).map(|t| in_add(model, b, &t.z)).unwrap_or(false),
        _ => false,
    }
}

/// Dual of [`in_first_half`].
pub fn in_second_half(model: &CategoryModel, cands: &Candidates, s: &[Indec], a: &[Indec], c: Indec) -> bool {
    if !perpendicular(model, s, c, 1) {
        return false;
    }
    match approximate(&model.derived, cands, &DObject::single(c.shifted(-1)), Side::Left) {
        ApproxOutcome::Found(f) => model.cone(&f).map(|t| in_add(model, a, &t.z.shifted(-1))).unwrap_or(false),
        _ => false,
    }
}

/// Double inclusion of both defining equalities over the catalog.
pub fn check_mutation_pair(model: &CategoryModel, a: &[Indec], b: &[Indec], s: &[Indec]) -> Verdict {
    let a: Vec<Indec> = a.iter().map(|&x| model.normalize(x)).collect();
    let b: Vec<Indec> = b.iter().map(|&x| model.normalize(x)).collect();
    let catalog = match model.enumerate_indecs() {
        Ok(c) => c,
        Err(e) => return Verdict::inconclusive(e.to_string()),
    };
    let window = model.window().ok();
    let cands = match candidates(model, s) {
        Ok(c) => c,
        Err(e) => return Verdict::inconclusive(e.to_string()),
    };
    for &c in a.iter().chain(&catalog) {
        if in_first_half(model, &cands, s, &b, c) != a.contains(&c) {
            return Verdict::fails(vec![c], "first half differs from its defining set").with_window(window);
        }
    }
    for &c in b.iter().chain(&catalog) {
        if in_second_half(model, &cands, s, &a, c) != b.contains(&c) {
            return Verdict::fails(vec![c], "second half differs from its defining set").with_window(window);
        }
    }
    Verdict::holds("both defining equalities hold on the catalog").with_window(window)
}

/// The S-mutation pair condition as an error-returning guard.
pub fn require_semibrick(model: &CategoryModel, s: &[Indec]) -> Result<(), SmError> {
    let v = check_orthogonality(model, s, Orthogonality::Semibrick);
    if v.is_holds() {
        Ok(())
    } else {
        Err(SmError::Model(crate::models::ModelError::Rep(crate::rep::RepError::NotSemibrick(v.note))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::preset;
    use crate::sm::mutate::mutate;
    use crate::sm::{Direction, Status};

    fn load(name: &str) -> CategoryModel {
        CategoryModel::from_preset(&preset::lookup(name).unwrap()).unwrap()
    }

    #[test]
    fn standard_hearts_are_smcs() {
        for name in ["a_2", "a_3", "tube 3", "ky-counterexample"] {
            let m = load(name);
            let u = Collection::new(&m, m.simples(), CollectionKind::Smc).unwrap();
            assert_eq!(check_smc(&m, &u).status, Status::Holds, "{name}");
        }
    }

    #[test]
    fn tube_partial_collection_fails_generation() {
        let m = load("tube 3");
        let u = Collection::from_labels(&m, &["s1", "s2"], CollectionKind::Smc).unwrap();
        let v = check_smc(&m, &u);
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.witness, vec![m.parse("s3").unwrap()]);
    }

    #[test]
    fn shifted_copy_is_not_orthogonal() {
        let m = load("a_2");
        let s1 = m.parse("s1").unwrap();
        let v = check_orthogonality(&m, &[s1, s1.shifted(1)], Orthogonality::Infinity);
        assert!(v.is_fails());
        assert!(check_orthogonality(&m, &[s1, s1], Orthogonality::Semibrick).is_fails());
    }

    #[test]
    fn setups() {
        let a = load("a_2");
        assert!(check_setup(&a, &[a.parse("s1").unwrap()], CollectionKind::Smc).is_holds());
        let o = load("orbit a5 2");
        let s = [o.parse("s1").unwrap(), o.parse("s2").unwrap()];
        assert!(check_setup(&o, &s, CollectionKind::Sms { w: 2 }).is_holds());
        let k = load("ky-counterexample");
        let v = check_setup(&k, &[k.parse("s1").unwrap()], CollectionKind::Smc);
        assert_eq!(v.status, Status::Fails);
    }

    #[test]
    fn orbit_collection_is_a_system() {
        let o = load("orbit a5 2");
        let u = Collection::from_labels(&o, &["s1", "s2", "x1", "x2", "x3"], CollectionKind::Sms { w: 2 }).unwrap();
        assert_eq!(check_collection(&o, &u).status, Status::Holds);
    }

    #[test]
    fn tube_mutation_pairs() {
        let m = load("tube 3");
        let u = Collection::from_labels(&m, &["s1", "s2", "s3"], CollectionKind::Smc).unwrap();
        let r = mutate(&m, &u, &[0, 1], Direction::Right, false).unwrap();
        let s = &u.members[..2];
        let a = [u.members[2]];
        let b = [r.members[2]];
        assert!(check_mutation_pair(&m, &a, &b, s).is_holds());
        assert!(check_mutation_pair(&m, &a, &[a[0].shifted(2)], s).is_fails());
        assert!(check_mutation_pair(&m, &[], &[], &u.members).is_holds());
    }
}
