//! Silting and cosilting certificates: existence of the adjacent
//! co-t-structures, tested by approximations inside a shift window.

use super::approx::{Candidates, Side};
use super::checks::{approximation_verdict, peel, smc_layers};
use super::mutate::candidates;
use super::{Collection, SmError, Status, Verdict};
use crate::derived::Indec;
use crate::models::CategoryModel;
use serde::{Deserialize, Serialize};

/// Aisle and coaisle of the t-structure of an SMC, restricted to the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aisles {
    pub aisle: Vec<Indec>,
    pub coaisle: Vec<Indec>,
    pub window: (i32, i32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyReport {
    pub silting: Verdict,
    pub cosilting: Verdict,
    pub bisilting: Status,
    pub projective_coheart: Vec<Indec>,
    pub injective_coheart: Vec<Indec>,
}

/// Splits the window catalog by the layers of the filtration by `⟨U⟩[a]`:
/// the aisle uses layers `a >= 0` only, the coaisle layers `a <= -1` only.
pub fn aisles(model: &CategoryModel, u: &Collection) -> Result<Aisles, SmError> {
    let window = model.window()?;
    let cands = candidates(model, &u.members)?;
    let mut aisle = Vec::new();
    let mut coaisle = Vec::new();
    for d in model.enumerate_indecs()? {
        let Ok((rest, used)) = peel(model, &cands, d, &smc_layers(d, &u.members)) else {
            continue;
        };
        if !rest.is_zero() {
            continue;
        }
        if used.iter().all(|&a| a >= 0) {
            aisle.push(d);
        }
        if used.iter().all(|&a| a <= -1) {
            coaisle.push(d);
        }
    }
    Ok(Aisles { aisle, coaisle, window })
}

fn interior(model: &CategoryModel, window: (i32, i32)) -> Result<Vec<Indec>, SmError> {
    Ok(model.enumerate_indecs()?.into_iter().filter(|d| d.shift > window.0 && d.shift < window.1).collect())
}

pub fn check_adjacency(model: &CategoryModel, u: &Collection) -> Result<AdjacencyReport, SmError> {
    let a = aisles(model, u)?;
    let inner = interior(model, a.window)?;
    let capped = model.base_capped();
    let x = Candidates::from_list(model, a.aisle.clone(), capped, model.spec.cap);
    let y = Candidates::from_list(model, a.coaisle.clone(), capped, model.spec.cap);
    let silting = approximation_verdict(model, &x, inner.iter().copied(), Side::Left).with_window(Some(a.window));
    let cosilting = approximation_verdict(model, &y, inner.iter().copied(), Side::Right).with_window(Some(a.window));
    let bisilting = match (silting.status, cosilting.status) {
        (Status::Holds, Status::Holds) => Status::Holds,
        (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
        _ => Status::Inconclusive,
    };
    let projective_coheart = a
        .aisle
        .iter()
        .copied()
        .filter(|&c| a.aisle.iter().all(|&t| model.hom_dim(c, t.shifted(1)) == 0))
        .collect();
    let injective_coheart = a
        .coaisle
        .iter()
        .map(|&c| c.shifted(1))
        .filter(|&c| a.coaisle.iter().all(|&t| model.hom_dim(t, c) == 0))
        .map(|c| model.normalize(c))
        .collect();
    Ok(AdjacencyReport { silting, cosilting, bisilting, projective_coheart, injective_coheart })
}
