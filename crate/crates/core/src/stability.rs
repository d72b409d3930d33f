//! Stability functions on length hearts with exact rational charges:
//! phase comparison, subobjects, Harder-Narasimhan filtrations and the
//! phase-gap test for a subset of simples.

use crate::derived::{DMorphism, DObject, Indec};
use crate::models::CategoryModel;
use crate::sm::checks::k0_coordinates;
use crate::sm::tilt::heart_catalog;
use crate::sm::{Collection, SmError, Verdict};
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

pub type Q = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilityError {
    #[error("charge of {0} is not in the upper half plane")]
    OutsideHalfPlane(String),
    #[error("no charge given for simple {0}")]
    MissingCharge(String),
    #[error("unknown simple {0}")]
    UnknownSimple(String),
    #[error("malformed charge: {0}")]
    Malformed(String),
    #[error("object is not in the heart of the collection")]
    NotInHeart,
}

/// A point `x + iy` with exact rational coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Charge {
    pub x: Q,
    pub y: Q,
}

impl Charge {
    pub fn new(x: Q, y: Q) -> Self {
        Charge { x, y }
    }

    pub fn int(x: i128, y: i128) -> Self {
        Charge { x: Q::from_integer(x), y: Q::from_integer(y) }
    }

    pub fn zero() -> Self {
        Charge::int(0, 0)
    }

    pub fn add(self, o: Charge) -> Charge {
        Charge { x: self.x + o.x, y: self.y + o.y }
    }

    pub fn scale(self, c: Q) -> Charge {
        Charge { x: self.x * c, y: self.y * c }
    }

    /// In the strict upper half plane together with the negative real ray.
    pub fn in_half_plane(&self) -> bool {
        self.y.is_positive() || (self.y.is_zero() && self.x.is_negative())
    }

    /// Phase exactly one: on the negative real ray.
    pub fn is_phase_one(&self) -> bool {
        self.y.is_zero() && self.x.is_negative()
    }

    /// Approximate phase in `(0, 1]`, for display only.
    pub fn phase_approx(&self) -> f64 {
        let x = *self.x.numer() as f64 / *self.x.denom() as f64;
        let y = *self.y.numer() as f64 / *self.y.denom() as f64;
        y.atan2(x) / std::f64::consts::PI
    }
}

/// Compares phases of two charges in the half plane by the sign of their
/// cross product.
pub fn cmp_phase(a: Charge, b: Charge) -> Ordering {
    let cross = b.x * a.y - b.y * a.x;
    cross.cmp(&Q::zero())
}

impl Serialize for Charge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts = [*self.x.numer(), *self.x.denom(), *self.y.numer(), *self.y.denom()];
        let small: Vec<i64> = parts.iter().map(|&v| i64::try_from(v).unwrap_or(i64::MAX)).collect();
        small.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Charge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<i64> = Vec::deserialize(d)?;
        if v.len() != 4 || v[1] == 0 || v[3] == 0 {
            return Err(serde::de::Error::custom("charge must be [num_x, den_x, num_y, den_y] with nonzero denominators"));
        }
        Ok(Charge::new(Q::new(v[0] as i128, v[1] as i128), Q::new(v[2] as i128, v[3] as i128)))
    }
}

/// A stability function given by its values on the simples of a heart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharge {
    pub simples: Vec<Indec>,
    pub values: Vec<Charge>,
}

impl CentralCharge {
    pub fn new(model: &CategoryModel, simples: &[Indec], values: Vec<Charge>) -> Result<Self, StabilityError> {
        for (s, v) in simples.iter().zip(&values) {
            if !v.in_half_plane() {
                return Err(StabilityError::OutsideHalfPlane(model.label(*s)));
            }
        }
        Ok(CentralCharge { simples: simples.to_vec(), values })
    }

    /// Parses `{label: [nx, dx, ny, dy]}`.
    pub fn from_json(model: &CategoryModel, u: &Collection, json: &str) -> Result<Self, StabilityError> {
        let map: BTreeMap<String, Charge> =
            serde_json::from_str(json).map_err(|e| StabilityError::Malformed(e.to_string()))?;
        let mut values = vec![None; u.members.len()];
        for (label, c) in map {
            let x = model.parse(&label).map_err(|_| StabilityError::UnknownSimple(label.clone()))?;
            let i = u.members.iter().position(|&m| m == x).ok_or(StabilityError::UnknownSimple(label))?;
            values[i] = Some(c);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| StabilityError::MissingCharge(model.label(u.members[i]))))
            .collect::<Result<Vec<_>, _>>()?;
        CentralCharge::new(model, &u.members, values)
    }

    pub fn to_json(&self, model: &CategoryModel) -> serde_json::Value {
        let map: BTreeMap<String, Charge> =
            self.simples.iter().zip(&self.values).map(|(&s, &c)| (model.label(s), c)).collect();
        serde_json::to_value(map).unwrap_or_default()
    }

    /// `Z(s) = -1` on the subset, `Z(u) = i` on the other simples.
    pub fn canonical(simples: &[Indec], subset: &[Indec]) -> Self {
        let values = simples.iter().map(|s| if subset.contains(s) { Charge::int(-1, 0) } else { Charge::int(0, 1) }).collect();
        CentralCharge { simples: simples.to_vec(), values }
    }

    /// Composition multiplicities of a heart object in the simples.
    pub fn multiplicities(&self, model: &CategoryModel, x: &DObject) -> Result<Vec<Q>, StabilityError> {
        let mut total = vec![Q::zero(); self.simples.len()];
        for &s in &x.summands {
            let c = k0_coordinates(model, &self.simples, s).ok_or(StabilityError::NotInHeart)?;
            for (t, v) in total.iter_mut().zip(c) {
                *t += v;
            }
        }
        if total.iter().any(|v| v.is_negative()) {
            return Err(StabilityError::NotInHeart);
        }
        Ok(total)
    }

    pub fn charge(&self, model: &CategoryModel, x: &DObject) -> Result<Charge, StabilityError> {
        let m = self.multiplicities(model, x)?;
        Ok(m.iter().zip(&self.values).fold(Charge::zero(), |acc, (&c, &z)| acc.add(z.scale(c))))
    }

    pub fn charge_of(&self, model: &CategoryModel, x: Indec) -> Result<Charge, StabilityError> {
        self.charge(model, &DObject::single(x))
    }
}

/// The heart of a collection: its catalog of indecomposables.
#[derive(Debug, Clone)]
pub struct Heart {
    pub simples: Vec<Indec>,
    pub catalog: Vec<Indec>,
    pub capped: bool,
}

impl Heart {
    pub fn of(model: &CategoryModel, simples: &[Indec]) -> Result<Self, SmError> {
        let (catalog, capped) = heart_catalog(model, simples)?;
        Ok(Heart { simples: simples.to_vec(), catalog, capped })
    }

    pub fn contains_obj(&self, model: &CategoryModel, x: &DObject) -> bool {
        x.summands.iter().all(|&s| self.catalog.contains(&model.normalize(s)))
    }

    /// Composition length in the heart.
    pub fn length(&self, model: &CategoryModel, x: &DObject) -> Option<usize> {
        let mut n = 0i128;
        for &s in &x.summands {
            let c = k0_coordinates(model, &self.simples, s)?;
            n += c.iter().fold(Q::zero(), |a, &b| a + b).to_integer();
        }
        usize::try_from(n).ok()
    }
}

/// A subobject `a -> x` of a heart object, with its quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subobject {
    pub object: Indec,
    pub inclusion: DMorphism,
    pub quotient: DObject,
}

fn combinations(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    if dim <= 4 {
        return (1u32..(1 << dim)).map(|mask| (0..dim).map(|i| (mask >> i) & 1).collect()).collect();
    }
    let mut out: Vec<Vec<u32>> = (0..dim).map(|k| (0..dim).map(|i| u32::from(i == k)).collect()).collect();
    out.push(vec![1; dim]);
    for _ in 0..8 {
        out.push((0..dim).map(|_| rng.gen_range(0..3)).collect());
    }
    out
}

/// Indecomposable subobjects of a heart object, one per isomorphism class
/// of the quotient, found among combinations of basis morphisms.
pub fn subobjects(model: &CategoryModel, heart: &Heart, x: &DObject) -> Vec<Subobject> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out: Vec<Subobject> = Vec::new();
    for &a in &heart.catalog {
        for lift in model.lifts(a, -2..=2) {
            let dims: Vec<usize> = x.summands.iter().map(|&xi| model.derived.hom_dim(lift, xi)).collect();
            let total: usize = dims.iter().sum();
            if total == 0 {
                continue;
            }
            for coords in combinations(total, &mut rng) {
                let mut f = model.derived.zero_morphism(&DObject::single(lift), x);
                let mut offset = 0;
                for (i, &n) in dims.iter().enumerate() {
                    f.components[i][0] = coords[offset..offset + n].to_vec();
                    offset += n;
                }
                let Ok(t) = model.cone(&f) else { continue };
                let q = model.normalize_obj(&t.z);
                if !heart.contains_obj(model, &q) {
                    continue;
                }
                if !out.iter().any(|s| s.object == a && s.quotient == q) {
                    out.push(Subobject { object: a, inclusion: f, quotient: q });
                }
            }
        }
    }
    out
}

/// One HN factor: a semistable class of the given phase, recorded as the
/// subquotients that were merged into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnFactor {
    pub pieces: Vec<DObject>,
    pub charge: Charge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnFiltration {
    pub factors: Vec<HnFactor>,
}

impl HnFiltration {
    pub fn top_phase(&self) -> Option<Charge> {
        self.factors.first().map(|f| f.charge)
    }
}

/// Largest phase of a subobject (equal to the phase of the first HN factor),
/// together with the subobject realizing it.
pub fn max_subobject_phase(
    model: &CategoryModel,
    heart: &Heart,
    z: &CentralCharge,
    x: &DObject,
) -> Result<(Charge, Option<Subobject>), StabilityError> {
    let mut best = (z.charge(model, x)?, None);
    let mut best_len = heart.length(model, x).unwrap_or(0);
    for s in subobjects(model, heart, x) {
        if s.quotient.is_zero() {
            continue;
        }
        let c = z.charge_of(model, s.object)?;
        let len = model.length(s.object);
        match cmp_phase(c, best.0) {
            Ordering::Greater => {
                best = (c, Some(s));
                best_len = len;
            }
            Ordering::Equal if best.1.is_some() && len > best_len => {
                best = (c, Some(s));
                best_len = len;
            }
            _ => {}
        }
    }
    Ok(best)
}

/// Greedy HN filtration: split off a maximal-phase subobject of largest
/// length, recurse on the quotient, merge consecutive factors of equal phase.
pub fn hn_filtration(
    model: &CategoryModel,
    heart: &Heart,
    z: &CentralCharge,
    x: &DObject,
) -> Result<HnFiltration, StabilityError> {
    let mut factors: Vec<HnFactor> = Vec::new();
    let mut cur = model.normalize_obj(x);
    let limit = heart.length(model, &cur).unwrap_or(0) + 1;
    for _ in 0..limit {
        if cur.is_zero() {
            break;
        }
        let (charge, sub) = max_subobject_phase(model, heart, z, &cur)?;
        let (piece, rest) = match sub {
            Some(s) => (DObject::single(s.object), s.quotient),
            None => (cur.clone(), DObject::zero()),
        };
        let piece_charge = z.charge(model, &piece)?;
        debug_assert_eq!(cmp_phase(piece_charge, charge), Ordering::Equal);
        match factors.last_mut() {
            Some(last) if cmp_phase(last.charge, piece_charge) == Ordering::Equal => {
                last.pieces.push(piece);
                last.charge = last.charge.add(piece_charge);
            }
            _ => factors.push(HnFactor { pieces: vec![piece], charge: piece_charge }),
        }
        cur = rest;
    }
    Ok(HnFiltration { factors })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseGap {
    pub verdict: Verdict,
    /// Largest HN phase on `S^⊥ ∩ H`, as a charge.
    pub phi: Option<Charge>,
    /// Objects whose top phases increase strictly with length.
    pub family: Vec<(Indec, Charge)>,
}

/// Whether the canonical stability function of `(U, S)` has its phases on
/// `S^⊥ ∩ H` bounded away from one.
pub fn phase_gap_check(model: &CategoryModel, u: &Collection, subset: &[Indec]) -> Result<PhaseGap, SmError> {
    if model.is_orbit() {
        return Ok(PhaseGap {
            verdict: Verdict::inconclusive("no Grothendieck group coordinates on the orbit model"),
            phi: None,
            family: Vec::new(),
        });
    }
    let z = CentralCharge::canonical(&u.members, subset);
    let heart = Heart::of(model, &u.members)?;
    let torsionfree: Vec<Indec> =
        heart.catalog.iter().copied().filter(|&h| subset.iter().all(|&s| model.hom_dim(s, h) == 0)).collect();
    if torsionfree.is_empty() {
        return Ok(PhaseGap { verdict: Verdict::holds("torsionfree class is zero"), phi: None, family: Vec::new() });
    }
    let mut by_length: BTreeMap<usize, (Charge, Indec)> = BTreeMap::new();
    for &f in &torsionfree {
        let x = DObject::single(f);
        let (c, _) = max_subobject_phase(model, &heart, &z, &x).map_err(stability_to_sm)?;
        if c.is_phase_one() {
            return Ok(PhaseGap {
                verdict: Verdict::fails(vec![f], "torsionfree object with a subobject of phase one"),
                phi: Some(c),
                family: vec![(f, c)],
            });
        }
        let len = heart.length(model, &x).unwrap_or(0);
        let entry = by_length.entry(len).or_insert((c, f));
        if cmp_phase(c, entry.0) == Ordering::Greater {
            *entry = (c, f);
        }
    }
    let mut running: Vec<(usize, Charge, Indec)> = Vec::new();
    for (&len, &(c, f)) in &by_length {
        match running.last() {
            Some(&(_, best, _)) if cmp_phase(c, best) != Ordering::Greater => {}
            _ => running.push((len, c, f)),
        }
    }
    let (_, phi, _) = *running.last().expect("nonempty");
    if !heart.capped {
        return Ok(PhaseGap {
            verdict: Verdict::holds("largest torsionfree phase is below one"),
            phi: Some(phi),
            family: Vec::new(),
        });
    }
    let top = *by_length.keys().last().unwrap_or(&0);
    let entries: Vec<(Indec, Charge)> = by_length.values().map(|&(c, f)| (f, c)).collect();
    let mut start = entries.len() - 1;
    while start > 0 && cmp_phase(entries[start].1, entries[start - 1].1) == Ordering::Greater {
        start -= 1;
    }
    let increasing = entries[start..].to_vec();
    if increasing.len() >= 3 && running.last().map(|r| r.0) == Some(top) {
        let witness = increasing.iter().map(|p| p.0).collect();
        return Ok(PhaseGap {
            verdict: Verdict::fails(witness, "torsionfree phases increase strictly up to the cap")
                .with_cap(model.spec.cap),
            phi: None,
            family: increasing,
        });
    }
    let settled = running.last().map(|r| r.0).unwrap_or(0);
    let verdict = if 2 * settled <= top {
        Verdict::holds("largest torsionfree phase settled below one within the cap").with_cap(model.spec.cap)
    } else {
        Verdict::inconclusive("largest torsionfree phase still moving at the cap").with_cap(model.spec.cap)
    };
    Ok(PhaseGap { verdict, phi: Some(phi), family: Vec::new() })
}

fn stability_to_sm(e: StabilityError) -> SmError {
    SmError::Model(crate::models::ModelError::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::preset;
    use crate::sm::{CollectionKind, Status};

    fn load(name: &str) -> (CategoryModel, Collection) {
        let m = CategoryModel::from_preset(&preset::lookup(name).unwrap()).unwrap();
        let u = Collection::new(&m, m.simples(), CollectionKind::Smc).unwrap();
        (m, u)
    }

    #[test]
    fn phase_order() {
        let one = Charge::int(-1, 0);
        let half = Charge::int(0, 1);
        let three_quarters = Charge::int(-1, 1);
        assert_eq!(cmp_phase(one, half), Ordering::Greater);
        assert_eq!(cmp_phase(three_quarters, half), Ordering::Greater);
        assert_eq!(cmp_phase(one, three_quarters), Ordering::Greater);
        assert_eq!(cmp_phase(Charge::int(-2, 2), three_quarters), Ordering::Equal);
        assert!(!Charge::int(1, 0).in_half_plane());
    }

    #[test]
    fn charge_json_round_trip() {
        let (m, u) = load("a_2");
        let z = CentralCharge::from_json(&m, &u, r#"{"s1": [-1, 1, 0, 1], "s2": [1, 2, 3, 4]}"#).unwrap();
        assert_eq!(z.values[1], Charge::new(Q::new(1, 2), Q::new(3, 4)));
        let back = CentralCharge::from_json(&m, &u, &z.to_json(&m).to_string()).unwrap();
        assert_eq!(back, z);
        assert!(CentralCharge::from_json(&m, &u, r#"{"s1": [1, 1, 0, 1], "s2": [0, 1, 1, 1]}"#).is_err());
        assert!(CentralCharge::from_json(&m, &u, r#"{"s1": [-1, 1, 0, 1]}"#).is_err());
    }

    #[test]
    fn a2_subobjects_and_hn() {
        let (m, u) = load("a_2");
        let heart = Heart::of(&m, &u.members).unwrap();
        let p1 = DObject::single(m.parse("[s1;s2]").unwrap());
        let subs: Vec<String> = subobjects(&m, &heart, &p1).iter().map(|s| m.label(s.object)).collect();
        assert_eq!(subs, ["s2", "[s1;s2]"]);
        let z = CentralCharge::new(&m, &u.members, vec![Charge::int(-1, 0), Charge::int(0, 1)]).unwrap();
        let hn = hn_filtration(&m, &heart, &z, &p1).unwrap();
        assert_eq!(hn.factors.len(), 1);
        let z = CentralCharge::new(&m, &u.members, vec![Charge::int(0, 1), Charge::int(-1, 0)]).unwrap();
        let hn = hn_filtration(&m, &heart, &z, &p1).unwrap();
        let pieces: Vec<String> = hn.factors.iter().map(|f| m.label_obj(&f.pieces[0])).collect();
        assert_eq!(pieces, ["s2", "s1"]);
    }

    #[test]
    fn phase_gaps() {
        let (m, u) = load("a_2");
        let g = phase_gap_check(&m, &u, &[u.members[0]]).unwrap();
        assert_eq!(g.verdict.status, Status::Holds);
        assert_eq!(g.phi, Some(Charge::int(-1, 1)));
        let (m, u) = load("ky-counterexample");
        let g = phase_gap_check(&m, &u, &[u.members[0]]).unwrap();
        assert_eq!(g.verdict.status, Status::Fails);
        assert_eq!(g.family.len(), 8);
        for w in g.family.windows(2) {
            assert_eq!(cmp_phase(w[1].1, w[0].1), Ordering::Greater);
        }
        let (m, u) = load("tube 3");
        let g = phase_gap_check(&m, &u, &u.members[..2]).unwrap();
        assert_eq!(g.verdict.status, Status::Holds, "{}", g.verdict.note);
    }
}
