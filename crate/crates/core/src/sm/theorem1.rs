//! The six equivalent conditions for a simple tilt to stay a length heart,
//! evaluated side by side.

use super::approx::Side;
use super::checks::{approximation_verdict, check_orthogonality, check_smc, k0_coordinates, Orthogonality};
use super::mutate::{candidates, mutate};
use super::tilt::torsion_pair;
use super::{complement, Collection, Direction, SmError, Status, Verdict};
use crate::derived::Indec;
use crate::models::CategoryModel;
use crate::stability::phase_gap_check;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Report {
    /// Conditions `(i)` to `(vi)` in order.
    pub conditions: Vec<(String, Verdict)>,
    /// No condition holds while another fails.
    pub consistent: bool,
}

impl Theorem1Report {
    pub fn status(&self, i: usize) -> Status {
        self.conditions[i].1.status
    }
}

const NAMES: [&str; 6] = ["(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)"];

fn mutation_failure(e: &SmError) -> Verdict {
    match e {
        SmError::ApproximationMissing { member, chain, .. } if !chain.is_empty() => {
            let mut witness = vec![*member];
            witness.extend(chain.iter().copied());
            Verdict::fails(witness, e.to_string())
        }
        _ => Verdict::inconclusive(e.to_string()),
    }
}

pub fn check_theorem1(model: &CategoryModel, u: &Collection, subset: &[usize]) -> Result<Theorem1Report, SmError> {
    let s = u.subset(subset)?;
    let rest = complement(&u.members, &s);
    let cands = candidates(model, &s)?;
    let tp = torsion_pair(model, u, subset, Direction::Right)?;
    let tilted = mutate(model, u, subset, Direction::Right, true);

    let first = match &tilted {
        Err(e) => Verdict::inconclusive(format!("tilt not computed: {e}")),
        Ok(_) if model.is_orbit() => Verdict::inconclusive("no Grothendieck group coordinates on the orbit model"),
        Ok(k) => {
            let ortho = check_orthogonality(model, &k.members, Orthogonality::Infinity);
            let sample: Vec<Indec> =
                tp.torsionfree.iter().copied().chain(tp.torsion.iter().map(|&t| model.shift(t, -1))).collect();
            let negative = sample.iter().copied().find(|&x| match k0_coordinates(model, &k.members, x) {
                Some(c) => c.iter().any(|q| q.is_negative() || !q.is_integer()),
                None => true,
            });
            match negative {
                _ if !ortho.is_holds() => ortho,
                Some(x) => Verdict::fails(vec![x], "tilted heart object with a negative composition multiplicity"),
                None => Verdict::holds(format!("new simples are orthogonal and filter {} sample objects", sample.len())),
            }
        }
    };

    let f_shifted: Vec<Indec> = tp.torsionfree.iter().map(|&f| model.shift(f, 1)).collect();
    let second = approximation_verdict(
        model,
        &cands,
        f_shifted.iter().copied().chain(tp.torsion.iter().copied()),
        Side::Right,
    );
    let third = approximation_verdict(model, &cands, f_shifted.iter().copied(), Side::Right);
    let fourth = approximation_verdict(model, &cands, rest.iter().map(|&x| x.shifted(1)), Side::Right);

    let fifth = match mutate(model, u, subset, Direction::Right, false) {
        Err(e) => mutation_failure(&e),
        Ok(r) => check_smc(model, &r),
    };
    let sixth = phase_gap_check(model, u, &s)?.verdict;

    let conditions: Vec<(String, Verdict)> = NAMES
        .iter()
        .map(|n| n.to_string())
        .zip([first, second, third, fourth, fifth, sixth])
        .collect();
    let holds = conditions.iter().any(|c| c.1.status == Status::Holds);
    let fails = conditions.iter().any(|c| c.1.status == Status::Fails);
    Ok(Theorem1Report { conditions, consistent: !(holds && fails) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::preset;
    use crate::sm::CollectionKind;

    fn load(name: &str) -> (CategoryModel, Collection) {
        let m = CategoryModel::from_preset(&preset::lookup(name).unwrap()).unwrap();
        let u = Collection::new(&m, m.simples(), CollectionKind::Smc).unwrap();
        (m, u)
    }

    #[test]
    fn tube_all_hold() {
        let (m, u) = load("tube 3");
        let r = check_theorem1(&m, &u, &[0, 1]).unwrap();
        assert!(r.consistent);
        for (name, v) in &r.conditions {
            assert_ne!(v.status, Status::Fails, "{name}: {}", v.note);
        }
        assert_eq!(r.status(3), Status::Holds);
    }

    #[test]
    fn loop_fails_consistently() {
        let (m, u) = load("ky-counterexample");
        let r = check_theorem1(&m, &u, &[0]).unwrap();
        assert!(r.consistent);
        assert_eq!(r.status(3), Status::Fails);
        assert_eq!(r.status(5), Status::Fails);
    }

    #[test]
    fn full_subset_holds() {
        let (m, u) = load("a_2");
        let r = check_theorem1(&m, &u, &[0, 1]).unwrap();
        for (name, v) in &r.conditions {
            assert_eq!(v.status, Status::Holds, "{name}: {}", v.note);
        }
    }
}
