//! Operations shared by the command line and the HTTP API. Each returns a
//! JSON value whose objects are named by their labels.

use crate::error::CliError;
use crate::export::{self, charge_json, triangle_json, verdict_json, Graph, GraphEdge, GraphNode, PlotPoint};
use crate::session::{derived_name, Provenance, Session};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use smw::derived::{DObject, Indec};
use smw::reduction::{check_shift_inverse, iterate_mutation, reduce, verify_reduce_shift_lift};
use smw::sm::adjacency::check_adjacency;
use smw::sm::checks::{check_collection, check_mutation_pair, check_setup};
use smw::sm::mutate::mutate as mutate_collection;
use smw::sm::theorem1::check_theorem1;
use smw::sm::tilt::simple_tilt;
use smw::sm::{complement, Collection, CollectionKind, Direction};
use smw::stability::{hn_filtration, phase_gap_check, CentralCharge, Heart};
use std::collections::{HashMap, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddRequest {
    pub name: String,
    pub members: Vec<String>,
    #[serde(default)]
    pub w: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetRequest {
    pub name: String,
    #[serde(default)]
    pub subset: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutateRequest {
    pub name: String,
    #[serde(default)]
    pub subset: Vec<String>,
    #[serde(default = "right")]
    pub dir: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterateRequest {
    pub name: String,
    #[serde(default)]
    pub subset: Vec<String>,
    #[serde(default = "right")]
    pub dir: Direction,
    pub n: usize,
}

fn right() -> Direction {
    Direction::Right
}

/// Splits `s1,s2` into labels; the empty string is the empty subset.
pub fn parse_subset(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn kind_json(kind: CollectionKind) -> Value {
    serde_json::to_value(kind).unwrap_or(Value::Null)
}

/// Indecomposables of the window with layout positions, and the arrows
/// between neighbouring mesh positions that carry a nonzero map.
pub fn catalog(s: &Session) -> Result<Value, CliError> {
    let m = &s.model;
    let indecs = m.enumerate_indecs()?;
    let layout: Vec<(i32, i32)> = indecs.iter().map(|&x| m.layout(x)).collect();
    let mut arrows = Vec::new();
    for (i, &a) in indecs.iter().enumerate() {
        for (j, &b) in indecs.iter().enumerate() {
            let (dx, dy) = (layout[j].0 - layout[i].0, layout[j].1 - layout[i].1);
            if dx == 1 && dy.abs() == 1 && m.hom_dim(a, b) != 0 {
                arrows.push(json!([m.label(a), m.label(b)]));
            }
        }
    }
    let items: Vec<Value> = indecs
        .iter()
        .zip(&layout)
        .map(|(&x, &(lx, ly))| {
            json!({ "label": m.label(x), "module": x.module, "shift": x.shift, "length": m.length(x), "layout": [lx, ly] })
        })
        .collect();
    Ok(json!({
        "model": m.kind_name(),
        "window": m.window().ok(),
        "cap": m.spec.cap,
        "p": m.spec.p,
        "capped": m.base_capped(),
        "indecs": items,
        "arrows": arrows,
    }))
}

pub fn collections(s: &Session) -> Value {
    json!({ "collections": s.file.collections })
}

pub fn add(s: &mut Session, req: &AddRequest) -> Result<Value, CliError> {
    let kind = req.w.map_or(CollectionKind::Smc, |w| CollectionKind::Sms { w });
    let c = s.add(&req.name, &req.members, kind, None)?;
    Ok(json!({ "name": req.name, "members": s.labels(&c.members), "kind": kind_json(kind) }))
}

pub fn check(s: &Session, name: &str) -> Result<Value, CliError> {
    let c = s.collection(name)?;
    let v = check_collection(&s.model, &c);
    Ok(json!({ "name": name, "members": s.labels(&c.members), "kind": kind_json(c.kind), "verdict": verdict_json(&s.model, &v) }))
}

/// Exported form of a collection; re-imports through [`add`].
pub fn export_collection(s: &Session, name: &str) -> Result<AddRequest, CliError> {
    let e = s.entry(name)?;
    Ok(AddRequest { name: e.name.clone(), members: e.members.clone(), w: match e.kind {
        CollectionKind::Smc => None,
        CollectionKind::Sms { w } => Some(w),
    } })
}

pub fn remove(s: &mut Session, name: &str) -> Result<Value, CliError> {
    s.remove(name)?;
    Ok(json!({ "name": name, "tombstone": true }))
}

fn register(
    s: &mut Session,
    parent: &str,
    action: &str,
    c: &Collection,
    subset: &[String],
    direction: Direction,
) -> Result<String, CliError> {
    let tag = if action == "mutate" { "" } else { action };
    let name = derived_name(parent, tag, direction, subset);
    let members = s.labels(&c.members);
    let provenance = Provenance { parent: parent.to_string(), action: action.to_string(), subset: subset.to_vec(), direction };
    s.add(&name, &members, c.kind, Some(provenance))?;
    Ok(name)
}

pub fn mutate(s: &mut Session, req: &MutateRequest) -> Result<Value, CliError> {
    let u = s.collection(&req.name)?;
    let idx = s.subset_indices(&u, &req.subset)?;
    let sub = u.subset(&idx)?;
    let m = &s.model;
    let setup = check_setup(m, &sub, u.kind);
    let out = mutate_collection(m, &u, &idx, req.dir, false)?;
    let verdict = check_collection(m, &out);
    let (a, b) = match req.dir {
        Direction::Right => (complement(&u.members, &sub), complement(&out.members, &sub)),
        Direction::Left => (complement(&out.members, &sub), complement(&u.members, &sub)),
    };
    let pair = check_mutation_pair(m, &a, &b, &sub);
    let step = out.history.last();
    let triangles: Vec<Value> = step.map(|h| h.triangles.iter().map(|t| triangle_json(m, t)).collect()).unwrap_or_default();
    let verdicts = json!({
        "collection": verdict_json(m, &verdict),
        "setup": verdict_json(m, &setup),
        "mutationPair": verdict_json(m, &pair),
    });
    let members = s.labels(&out.members);
    let new_name = register(s, &req.name, "mutate", &out, &req.subset, req.dir)?;
    Ok(json!({ "newName": new_name, "members": members, "triangles": triangles, "verdicts": verdicts }))
}

pub fn tilt(s: &mut Session, req: &MutateRequest) -> Result<Value, CliError> {
    let u = s.collection(&req.name)?;
    let idx = s.subset_indices(&u, &req.subset)?;
    let m = &s.model;
    let r = simple_tilt(m, &u, &idx, req.dir)?;
    let tp = &r.torsion_pair;
    let body = json!({
        "newSimples": s.labels(&r.new_simples),
        "torsion": s.labels(&tp.torsion),
        "torsionfree": s.labels(&tp.torsionfree),
        "torsionPair": verdict_json(m, &tp.verdict),
        "verdict": verdict_json(m, &r.verdict),
    });
    let tilted = Collection::new(m, r.new_simples.clone(), CollectionKind::Smc)?;
    let new_name = register(s, &req.name, "tilt", &tilted, &req.subset, req.dir)?;
    let mut body = body;
    body["newName"] = json!(new_name);
    Ok(body)
}

pub fn theorem1(s: &Session, req: &SubsetRequest) -> Result<Value, CliError> {
    let u = s.collection(&req.name)?;
    let idx = s.subset_indices(&u, &req.subset)?;
    let r = check_theorem1(&s.model, &u, &idx)?;
    let rows: Vec<Value> = r
        .conditions
        .iter()
        .map(|(name, v)| {
            let mut row = verdict_json(&s.model, v);
            row["condition"] = json!(name);
            row
        })
        .collect();
    Ok(json!({ "name": req.name, "subset": req.subset, "conditions": rows, "consistent": r.consistent }))
}

fn stability_data(s: &Session, name: &str, charge: &str) -> Result<(Heart, CentralCharge, Collection), CliError> {
    let u = s.collection(name)?;
    let z = CentralCharge::from_json(&s.model, &u, charge)?;
    let heart = Heart::of(&s.model, &u.members)?;
    Ok((heart, z, u))
}

/// Charges and HN filtrations of the heart objects under a central charge.
pub fn stability(s: &Session, name: &str, charge: &str) -> Result<Value, CliError> {
    let (heart, z, _) = stability_data(s, name, charge)?;
    let m = &s.model;
    let mut objects = Vec::new();
    for &x in &heart.catalog {
        let obj = DObject::single(x);
        let hn = hn_filtration(m, &heart, &z, &obj)?;
        let factors: Vec<Value> = hn
            .factors
            .iter()
            .map(|f| json!({ "pieces": f.pieces.iter().map(|p| export::obj_label(m, p)).collect::<Vec<_>>(), "charge": charge_json(f.charge) }))
            .collect();
        objects.push(json!({
            "label": m.label(x),
            "charge": charge_json(z.charge_of(m, x)?),
            "semistable": hn.factors.len() == 1,
            "hn": factors,
        }));
    }
    Ok(json!({ "name": name, "charge": z.to_json(m), "capped": heart.capped, "objects": objects }))
}

pub fn stability_svg(s: &Session, name: &str, charge: &str) -> Result<String, CliError> {
    let (heart, z, u) = stability_data(s, name, charge)?;
    let mut points = Vec::new();
    for &x in &heart.catalog {
        let c = z.charge_of(&s.model, x)?;
        let (x_f, y_f) = (ratio_f64(c.x), ratio_f64(c.y));
        points.push(PlotPoint { label: s.model.label(x), x: x_f, y: y_f, simple: u.members.contains(&x) });
    }
    Ok(export::charge_svg(&points))
}

fn ratio_f64(q: smw::stability::Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

pub fn phasegap(s: &Session, req: &SubsetRequest) -> Result<Value, CliError> {
    let u = s.collection(&req.name)?;
    let idx = s.subset_indices(&u, &req.subset)?;
    let sub = u.subset(&idx)?;
    let m = &s.model;
    let r = phase_gap_check(m, &u, &sub)?;
    let family: Vec<Value> =
        r.family.iter().map(|(x, c)| json!({ "label": m.label(*x), "charge": charge_json(*c) })).collect();
    Ok(json!({
        "name": req.name,
        "subset": req.subset,
        "verdict": verdict_json(m, &r.verdict),
        "phi": r.phi.map(charge_json),
        "family": family,
    }))
}

pub fn reduction(s: &Session, req: &SubsetRequest) -> Result<Value, CliError> {
    let u = s.collection(&req.name)?;
    let idx = s.subset_indices(&u, &req.subset)?;
    let sub = u.subset(&idx)?;
    let m = &s.model;
    let ctx = reduce(m, &sub, u.kind)?;
    let table = |t: &[(Indec, Option<Indec>)]| -> Vec<Value> {
        t.iter().map(|(a, b)| json!([m.label(*a), b.map(|b| m.label(b))])).collect()
    };
    let lift = verify_reduce_shift_lift(m, &u, &idx)?;
    Ok(json!({
        "name": req.name,
        "subset": req.subset,
        "setup": verdict_json(m, &ctx.setup),
        "window": ctx.window,
        "members": s.labels(&ctx.members),
        "shift": table(&ctx.up),
        "unshift": table(&ctx.down),
        "inverse": verdict_json(m, &check_shift_inverse(&ctx)),
        "reduceShiftLift": verdict_json(m, &lift),
    }))
}

/// Iteration trace as JSON plus its DOT rendering.
pub fn iterate(s: &Session, req: &IterateRequest) -> Result<(Value, String), CliError> {
    let u = s.collection(&req.name)?;
    let idx = s.subset_indices(&u, &req.subset)?;
    let m = &s.model;
    let t = iterate_mutation(m, &u, &idx, req.dir, req.n)?;
    let steps: Vec<Vec<String>> = t.steps.iter().map(|c| s.labels(&c.members)).collect();
    let dot = export::trace_dot(&steps, t.period);
    let body = json!({
        "name": req.name,
        "subset": req.subset,
        "direction": req.dir,
        "steps": steps,
        "verdicts": t.verdicts.iter().map(|v| verdict_json(m, v)).collect::<Vec<_>>(),
        "period": t.period.map(|(first, length)| json!({ "first": first, "length": length })),
        "error": t.error.map(|(code, message)| json!({ "code": code, "message": message })),
    });
    Ok((body, dot))
}

pub fn adjacency(s: &Session, name: &str) -> Result<Value, CliError> {
    let u = s.collection(name)?;
    if u.kind != CollectionKind::Smc {
        return Err(CliError::invalid("silting certificates need a simple-minded collection"));
    }
    let m = &s.model;
    let r = check_adjacency(m, &u)?;
    Ok(json!({
        "name": name,
        "silting": verdict_json(m, &r.silting),
        "cosilting": verdict_json(m, &r.cosilting),
        "bisilting": r.bisilting,
        "projectiveCoheart": s.labels(&r.projective_coheart),
        "injectiveCoheart": s.labels(&r.injective_coheart),
    }))
}

fn all_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1 << n)).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Breadth-first exploration of all subset mutations up to `depth`, with
/// nodes identified by their sorted member lists.
pub fn explore(s: &Session, name: &str, depth: usize) -> Result<Graph, CliError> {
    let start = s.collection(name)?;
    if start.members.len() > 8 {
        return Err(CliError::invalid("graph exploration is limited to collections of at most 8 members"));
    }
    let m = &s.model;
    let mut ids: HashMap<Vec<Indec>, usize> = HashMap::new();
    let mut nodes = vec![GraphNode { id: 0, members: s.labels(&start.members), depth: 0 }];
    let mut edges = Vec::new();
    ids.insert(start.key(), 0);
    let mut queue = VecDeque::from([(start, 0usize, 0usize)]);
    while let Some((u, id, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for subset in all_subsets(u.members.len()) {
            let labels = s.labels(&u.subset(&subset)?);
            for direction in [Direction::Right, Direction::Left] {
                match mutate_collection(m, &u, &subset, direction, false) {
                    Ok(next) => {
                        let key = next.key();
                        let to = match ids.get(&key) {
                            Some(&t) => t,
                            None => {
                                let t = nodes.len();
                                ids.insert(key, t);
                                nodes.push(GraphNode { id: t, members: s.labels(&next.members), depth: d + 1 });
                                queue.push_back((next, t, d + 1));
                                t
                            }
                        };
                        edges.push(GraphEdge { from: id, to: Some(to), subset: labels.clone(), direction, error: None });
                    }
                    Err(e) => edges.push(GraphEdge {
                        from: id,
                        to: None,
                        subset: labels.clone(),
                        direction,
                        error: Some(e.code().to_string()),
                    }),
                }
            }
        }
    }
    Ok(Graph { nodes, edges })
}
