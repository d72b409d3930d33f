//! Human-readable names for objects and 2D positions for drawing them.

use super::{CategoryModel, ModelError};
use crate::derived::{DObject, Indec};
use crate::rep::radical_layers;

impl CategoryModel {
    fn parallel_arrows(&self) -> bool {
        let arrows = &self.heart().quiver.arrows;
        arrows.iter().enumerate().any(|(i, a)| arrows[i + 1..].contains(a))
    }

    /// `s1` for simples, `[s2;s1;s3]` (top first) for uniserial modules,
    /// otherwise the dimension vector tagged with the catalog id.
    pub fn module_label(&self, m: usize) -> String {
        let rep = self.heart().module(m);
        let names = &self.heart().quiver.vertices;
        let layers = radical_layers(&rep);
        let uniserial = layers.iter().all(|l| l.iter().sum::<usize>() == 1);
        if uniserial && !self.parallel_arrows() {
            let series: Vec<String> = layers
                .iter()
                .map(|l| format!("s{}", names[l.iter().position(|&d| d == 1).unwrap_or(0)]))
                .collect();
            if series.len() == 1 {
                return series[0].clone();
            }
            return format!("[{}]", series.join(";"));
        }
        let dims: Vec<String> = rep.dims.iter().map(|d| d.to_string()).collect();
        format!("<{}>#{m}", dims.join(","))
    }

    pub fn label(&self, x: Indec) -> String {
        let x = self.normalize(x);
        for (name, a) in self.aliases() {
            if a.module == x.module {
                let k = x.shift - a.shift;
                if self.normalize(a.shifted(k)) == x {
                    return with_shift(name, k);
                }
            }
        }
        with_shift(&self.display_module_label(x.module), x.shift)
    }

    /// Module label, bracketed when it would read as an alias.
    fn display_module_label(&self, m: usize) -> String {
        let l = self.module_label(m);
        if self.aliases().iter().any(|(n, _)| *n == l) {
            if l.starts_with('[') {
                format!("{l}#{m}")
            } else {
                format!("[{l}]")
            }
        } else {
            l
        }
    }

    pub fn label_obj(&self, x: &DObject) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.summands.iter().map(|&s| self.label(s)).collect::<Vec<_>>().join(" + ")
    }

    /// Inverse of [`label`](Self::label) on known objects.
    pub fn parse(&self, text: &str) -> Result<Indec, ModelError> {
        let text = text.trim();
        let (body, shift) = split_shift(text);
        if let Some((_, a)) = self.aliases().iter().find(|(n, _)| n == body) {
            return Ok(self.normalize(a.shifted(shift)));
        }
        let found = (0..self.heart().len()).find(|&m| self.display_module_label(m) == body || self.module_label(m) == body);
        match found {
            Some(m) => Ok(self.normalize(Indec::new(m, shift))),
            None => Err(ModelError::UnknownLabel(text.to_string())),
        }
    }

    /// Drawing position `(2x, y)` of an object.
    pub fn layout(&self, x: Indec) -> (i32, i32) {
        if let Some(ar) = self.ar() {
            let anchor = ar.layout(self.simple(0)).0 + 2;
            let (x2, y) = ar.layout(x);
            return (x2 - anchor, y);
        }
        let len = self.length(x) as i32;
        if let Some(r) = self.tube_rank() {
            let layers = radical_layers(&self.heart().module(x.module));
            let socle = layers.last().and_then(|l| l.iter().position(|&d| d > 0)).unwrap_or(0) as i32;
            return (2 * socle + len - 1 + x.shift * (2 * r as i32 + 2), len - 1);
        }
        let base = self.base_modules();
        let idx = base.iter().position(|&m| m == x.module).unwrap_or(base.len() + x.module) as i32;
        (2 * idx + x.shift * (2 * base.len() as i32 + 2), len - 1)
    }
}

fn with_shift(name: &str, k: i32) -> String {
    if k == 0 {
        name.to_string()
    } else {
        format!("{name}[{k}]")
    }
}

fn split_shift(text: &str) -> (&str, i32) {
    if let Some(stripped) = text.strip_suffix(']') {
        if let Some(open) = stripped.rfind('[') {
            if let Ok(k) = stripped[open + 1..].trim().parse::<i32>() {
                return (&text[..open], k);
            }
        }
    }
    (text, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{ModelKind, ModelSpec};

    #[test]
    fn labels_round_trip() {
        let m = CategoryModel::new(ModelSpec::new(ModelKind::Tube { rank: 3 }).with_cap(3).with_window(-1, 1)).unwrap();
        for x in m.enumerate_indecs().unwrap() {
            assert_eq!(m.parse(&m.label(x)).unwrap(), x);
        }
        let x = m.parse("[s2;s1][1]").unwrap();
        assert_eq!((m.length(x), x.shift), (2, 1));
        assert!(m.parse("[s1;s3]").is_ok());
        assert!(m.parse("[s1;s2]").is_err());
        assert!(m.parse("q7").is_err());
    }
}
