//! Right and left mutation of a collection at a subset.

use super::approx::{approximate, ApproxOutcome, Candidates, Side};
use super::{Collection, Direction, MutationStep, SmError};
use crate::derived::{DObject, Indec, Triangle};
use crate::models::CategoryModel;

/// One mutated member together with the triangle that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutatedMember {
    pub object: Indec,
    pub triangle: Triangle,
}

/// Candidates for `⟨S⟩` at the model's cap.
pub fn candidates(model: &CategoryModel, s: &[Indec]) -> Result<Candidates, SmError> {
    Candidates::closure(model, s, model.spec.cap)
}

/// Minimal right `⟨S⟩`-approximation of `d`.
pub fn right_approximation(model: &CategoryModel, cands: &Candidates, d: Indec) -> ApproxOutcome {
    approximate(&model.derived, cands, &DObject::single(d), Side::Right)
}

/// Minimal left `⟨S⟩`-approximation of `d`.
pub fn left_approximation(model: &CategoryModel, cands: &Candidates, d: Indec) -> ApproxOutcome {
    approximate(&model.derived, cands, &DObject::single(d), Side::Left)
}

fn missing(member: Indec, outcome: &ApproxOutcome) -> SmError {
    SmError::ApproximationMissing { member, outcome: outcome.describe(), chain: outcome.chain() }
}

fn single(model: &CategoryModel, member: Indec, z: &DObject) -> Result<Indec, SmError> {
    match z.summands.as_slice() {
        [x] => Ok(model.normalize(*x)),
        _ => Err(SmError::NotIndecomposable(member)),
    }
}

/// `ρ_S(u)`: the cone of a minimal right `⟨S⟩`-approximation of `u[1]`.
pub fn rho(model: &CategoryModel, cands: &Candidates, u: Indec) -> Result<MutatedMember, SmError> {
    let target = u.shifted(1);
    let outcome = right_approximation(model, cands, target);
    let alpha = outcome.found().ok_or_else(|| missing(u, &outcome))?;
    let triangle = model.cone(alpha)?;
    Ok(MutatedMember { object: single(model, u, &triangle.z)?, triangle })
}

/// `λ_S(u)`: the cocone of a minimal left `⟨S⟩`-approximation of `u[-1]`.
pub fn lambda(model: &CategoryModel, cands: &Candidates, u: Indec) -> Result<MutatedMember, SmError> {
    let source = u.shifted(-1);
    let outcome = left_approximation(model, cands, source);
    let beta = outcome.found().ok_or_else(|| missing(u, &outcome))?;
    let triangle = model.cone(beta)?;
    let cocone = triangle.z.shifted(-1);
    Ok(MutatedMember { object: single(model, u, &cocone)?, triangle })
}

/// Mutates every member outside the subset and fixes the subset.
///
/// With `shifted_view` the whole result is shifted by `[-1]` (right) or
/// `[1]` (left), which turns the right mutation of the simples of a heart
/// into the simples of the right simple tilt.
pub fn mutate(
    model: &CategoryModel,
    u: &Collection,
    subset: &[usize],
    direction: Direction,
    shifted_view: bool,
) -> Result<Collection, SmError> {
    let s = u.subset(subset)?;
    let cands = candidates(model, &s)?;
    let mut members = Vec::with_capacity(u.members.len());
    let mut triangles = Vec::new();
    for &x in &u.members {
        if s.contains(&x) {
            members.push(x);
            continue;
        }
        let m = match direction {
            Direction::Right => rho(model, &cands, x)?,
            Direction::Left => lambda(model, &cands, x)?,
        };
        members.push(m.object);
        triangles.push(m.triangle);
    }
    if shifted_view {
        let k = match direction {
            Direction::Right => -1,
            Direction::Left => 1,
        };
        members = members.into_iter().map(|x| model.shift(x, k)).collect();
    }
    let mut out = Collection::new(model, members, u.kind)?;
    out.history = u.history.clone();
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    out.history.push(MutationStep { direction, subset, triangles });
    Ok(out)
}
