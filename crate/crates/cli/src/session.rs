//! Sessions: one model, an append-only registry of named collections and
//! the mutation edges between them, stored as a flat JSON file.

use crate::error::CliError;
use serde::{Deserialize, Serialize};
use smw::derived::Indec;
use smw::models::preset::{self, Preset};
use smw::models::{CategoryModel, ModelSpec};
use smw::sm::{Collection, CollectionKind, Direction};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

/// A model file: a preset name with optional overrides, or a full spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelFile {
    Preset {
        preset: String,
        #[serde(default)]
        window: Option<(i32, i32)>,
        #[serde(default)]
        cap: Option<usize>,
        #[serde(default)]
        p: Option<u32>,
    },
    Spec(ModelSpec),
}

/// Defaults read from the environment when a model file leaves them open.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnvDefaults {
    pub modulus: Option<u32>,
    pub window: Option<(i32, i32)>,
}

impl EnvDefaults {
    pub fn from_env() -> Result<Self, CliError> {
        let modulus = match std::env::var("SMW_MODULUS") {
            Ok(v) => Some(v.trim().parse().map_err(|_| CliError::invalid(format!("SMW_MODULUS={v}")))?),
            Err(_) => None,
        };
        let window = match std::env::var("SMW_WINDOW") {
            Ok(v) => Some(parse_window(&v)?),
            Err(_) => None,
        };
        Ok(EnvDefaults { modulus, window })
    }
}

/// Parses `lo,hi`.
pub fn parse_window(text: &str) -> Result<(i32, i32), CliError> {
    let bad = || CliError::invalid(format!("window '{text}' is not lo,hi"));
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    let lo: i32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDef {
    pub preset: Option<String>,
    pub spec: ModelSpec,
}

impl ModelDef {
    pub fn resolve(file: ModelFile, env: EnvDefaults) -> Result<(ModelDef, Vec<(String, Vec<String>, Option<u32>)>), CliError> {
        match file {
            ModelFile::Preset { preset, window, cap, p } => {
                let found = preset::lookup(&preset)?;
                let mut spec = found.spec.clone();
                if let Some(w) = window.or(env.window) {
                    spec.window = Some(w);
                }
                if let Some(c) = cap {
                    spec.cap = c;
                }
                if let Some(p) = p.or(env.modulus) {
                    spec.p = p;
                }
                Ok((ModelDef { preset: Some(preset), spec }, found.collections))
            }
            ModelFile::Spec(mut spec) => {
                if spec.window.is_none() {
                    spec.window = env.window;
                }
                if let Some(p) = env.modulus {
                    if spec.p == ModelSpec::new(spec.kind.clone()).p {
                        spec.p = p;
                    }
                }
                Ok((ModelDef { preset: None, spec }, Vec::new()))
            }
        }
    }

    pub fn build(&self) -> Result<CategoryModel, CliError> {
        let model = match &self.preset {
            Some(name) => CategoryModel::from_preset(&Preset {
                name: name.clone(),
                spec: self.spec.clone(),
                collections: Vec::new(),
            })?,
            None => CategoryModel::new(self.spec.clone())?,
        };
        Ok(model)
    }
}

/// How a registry entry was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub parent: String,
    pub action: String,
    pub subset: Vec<String>,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub members: Vec<String>,
    pub kind: CollectionKind,
    #[serde(default)]
    pub provenance: Option<Provenance>,
    #[serde(default)]
    pub tombstone: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionFile {
    pub version: u32,
    pub model: ModelDef,
    pub collections: Vec<Entry>,
}

pub struct Session {
    pub file: SessionFile,
    pub model: CategoryModel,
}

impl Session {
    pub fn define(file: ModelFile, env: EnvDefaults) -> Result<Session, CliError> {
        let (def, starters) = ModelDef::resolve(file, env)?;
        let model = def.build()?;
        let mut session =
            Session { file: SessionFile { version: SCHEMA_VERSION, model: def, collections: Vec::new() }, model };
        for (name, members, w) in starters {
            let kind = w.map_or(CollectionKind::Smc, |w| CollectionKind::Sms { w });
            session.add(&name, &members, kind, None)?;
        }
        Ok(session)
    }

    pub fn from_file(file: SessionFile) -> Result<Session, CliError> {
        if file.version != SCHEMA_VERSION {
            return Err(CliError::invalid(format!("session schema version {} is not {SCHEMA_VERSION}", file.version)));
        }
        let model = file.model.build()?;
        Ok(Session { file, model })
    }

    pub fn load(path: &Path) -> Result<Session, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::new("NoSession", format!("{}: {e}", path.display())))?;
        let file: SessionFile = serde_json::from_str(&text).map_err(|e| CliError::invalid(e.to_string()))?;
        Session::from_file(file)
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(&self.file).map_err(|e| CliError::invalid(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))
    }

    pub fn entry(&self, name: &str) -> Result<&Entry, CliError> {
        self.file
            .collections
            .iter()
            .find(|e| e.name == name && !e.tombstone)
            .ok_or_else(|| CliError::new("UnknownCollection", name))
    }

    pub fn collection(&self, name: &str) -> Result<Collection, CliError> {
        let e = self.entry(name)?;
        let labels: Vec<&str> = e.members.iter().map(String::as_str).collect();
        Ok(Collection::from_labels(&self.model, &labels, e.kind)?)
    }

    pub fn labels(&self, xs: &[Indec]) -> Vec<String> {
        xs.iter().map(|&x| self.model.label(x)).collect()
    }

    /// Registers a collection. Names are never reused; re-adding an equal
    /// collection under its existing name is a no-op.
    pub fn add(
        &mut self,
        name: &str,
        members: &[String],
        kind: CollectionKind,
        provenance: Option<Provenance>,
    ) -> Result<Collection, CliError> {
        if name.is_empty() {
            return Err(CliError::invalid("empty collection name"));
        }
        let labels: Vec<&str> = members.iter().map(String::as_str).collect();
        let c = Collection::from_labels(&self.model, &labels, kind)?;
        let canonical = self.labels(&c.members);
        if let Some(old) = self.file.collections.iter().find(|e| e.name == name) {
            if old.tombstone || old.kind != kind || old.members != canonical {
                return Err(CliError::new("NameTaken", name));
            }
            return Ok(c);
        }
        self.file.collections.push(Entry { name: name.to_string(), members: canonical, kind, provenance, tombstone: false });
        Ok(c)
    }

    pub fn remove(&mut self, name: &str) -> Result<(), CliError> {
        self.entry(name)?;
        for e in self.file.collections.iter_mut().filter(|e| e.name == name) {
            e.tombstone = true;
        }
        Ok(())
    }

    /// Indices in `c` of the members named in `labels`.
    pub fn subset_indices(&self, c: &Collection, labels: &[String]) -> Result<Vec<usize>, CliError> {
        labels
            .iter()
            .map(|l| {
                let x = self.model.normalize(self.model.parse(l)?);
                c.members.iter().position(|&m| m == x).ok_or_else(|| CliError::new("NotSubset", l.as_str()))
            })
            .collect()
    }
}

/// Name of a derived collection, e.g. `tubeU.R[s1,s2]`.
pub fn derived_name(parent: &str, action: &str, direction: Direction, subset: &[String]) -> String {
    let d = match direction {
        Direction::Right => "R",
        Direction::Left => "L",
    };
    format!("{parent}.{action}{d}[{}]", subset.join(","))
}
