//! Built-in models: `a_n`, `orbit a_n w`, `tube r` and `ky-counterexample`.

use super::{CategoryModel, ModelError, ModelKind, ModelSpec};
use crate::derived::Indec;
use crate::rep::Quiver;

/// A preset model with named starting collections (member labels).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preset {
    pub name: String,
    pub spec: ModelSpec,
    /// `(collection name, member labels, w)`; `w = None` means a simple-minded collection.
    pub collections: Vec<(String, Vec<String>, Option<u32>)>,
}

/// Named positions `(2x, y)` in the mesh of the `A_5` orbit model with `w = 2`.
const ORBIT_A5_POINTS: [(&str, i32, i32); 6] =
    [("s1", 4, 2), ("s", 5, 3), ("s2", 8, 0), ("x1", 14, 0), ("x2", 16, 0), ("x3", 16, 4)];

fn parse_a(word: &str) -> Option<usize> {
    word.strip_prefix("a_").or_else(|| word.strip_prefix('a')).and_then(|n| n.parse().ok()).filter(|&n| n > 0)
}

pub fn lookup(name: &str) -> Result<Preset, ModelError> {
    let words: Vec<&str> = name.split_whitespace().collect();
    let bad = || ModelError::Invalid(format!("unknown preset '{name}'"));
    match words.as_slice() {
        [a] if parse_a(a).is_some() => {
            let n = parse_a(a).unwrap();
            let spec = ModelSpec::new(ModelKind::DerivedHereditary { quiver: Quiver::linear_a(n) })
                .with_cap(n.max(1))
                .with_window(-2, 2);
            let simples = (1..=n).map(|i| format!("s{i}")).collect();
            Ok(Preset { name: name.into(), spec, collections: vec![(format!("a{n}U"), simples, None)] })
        }
        ["orbit", a, w] if parse_a(a).is_some() => {
            let n = parse_a(a).unwrap();
            let w: u32 = w.parse().map_err(|_| bad())?;
            let spec = ModelSpec::new(ModelKind::OrbitCy { n, w }).with_cap(n.max(1));
            let mut collections = Vec::new();
            if (n, w) == (5, 2) {
                let members = ["s1", "s2", "x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
                collections.push(("a5U".to_string(), members, Some(2)));
            }
            Ok(Preset { name: name.into(), spec, collections })
        }
        ["tube", r] => {
            let r: usize = r.parse().map_err(|_| bad())?;
            let spec = ModelSpec::new(ModelKind::Tube { rank: r }).with_cap((2 * r).max(4)).with_window(-2, 2);
            let simples = (1..=r).map(|i| format!("s{i}")).collect();
            Ok(Preset { name: name.into(), spec, collections: vec![("tubeU".into(), simples, None)] })
        }
        ["ky-counterexample"] => {
            let spec = ModelSpec::new(ModelKind::Nil { quiver: Quiver::loop_and_arrow(), truncation: None })
                .with_cap(8)
                .with_window(-2, 2);
            let members = vec!["s1".to_string(), "s2".to_string()];
            Ok(Preset { name: name.into(), spec, collections: vec![("loopU".into(), members, None)] })
        }
        _ => Err(bad()),
    }
}

impl CategoryModel {
    /// Builds a preset model and attaches its aliases.
    pub fn from_preset(preset: &Preset) -> Result<Self, ModelError> {
        let mut model = CategoryModel::new(preset.spec.clone())?;
        if let ModelKind::OrbitCy { n: 5, w: 2 } = model.spec.kind {
            for (name, x2, y) in ORBIT_A5_POINTS {
                let x = model
                    .find_at_layout(x2, y)
                    .ok_or_else(|| ModelError::Invalid(format!("no object at mesh point of {name}")))?;
                model.set_alias(name, x);
            }
        }
        Ok(model)
    }

    /// The canonical object drawn at `(2x, y)`, searching nearby translates.
    pub fn find_at_layout(&self, x2: i32, y: i32) -> Option<Indec> {
        let cat = self.enumerate_indecs().ok()?;
        cat.into_iter().find(|&c| self.lifts(c, -3..=3).into_iter().any(|l| self.layout(l) == (x2, y)))
    }
}
