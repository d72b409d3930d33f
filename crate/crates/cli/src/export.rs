//! JSON views with object labels, DOT graphs and SVG charge plots.

use crate::session::SessionFile;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use smw::derived::{DObject, Triangle};
use smw::models::CategoryModel;
use smw::sm::{Direction, Verdict};
use smw::stability::Charge;
use std::fmt::Write;

pub fn obj_label(model: &CategoryModel, x: &DObject) -> String {
    model.label_obj(&model.normalize_obj(x))
}

pub fn verdict_json(model: &CategoryModel, v: &Verdict) -> Value {
    json!({
        "status": v.status,
        "note": v.note,
        "witness": v.witness.iter().map(|&x| model.label(x)).collect::<Vec<_>>(),
        "window": v.window,
        "cap": v.cap,
    })
}

/// The triangle `x -> y -> z -> x[1]` of a mutation, by labels.
pub fn triangle_json(model: &CategoryModel, t: &Triangle) -> Value {
    json!({ "source": obj_label(model, &t.x), "target": obj_label(model, &t.y), "cone": obj_label(model, &t.z) })
}

pub fn charge_json(c: Charge) -> Value {
    json!({ "exact": c, "phase": c.phase_approx() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    pub members: Vec<String>,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: Option<usize>,
    pub subset: Vec<String>,
    pub direction: Direction,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn arrow_label(direction: Direction, subset: &[String]) -> String {
    let d = match direction {
        Direction::Right => "ρ",
        Direction::Left => "λ",
    };
    format!("{d}[{}]", subset.join(","))
}

pub fn graph_dot(g: &Graph) -> String {
    let mut out = String::from("digraph mutations {\n  node [shape=box];\n");
    for n in &g.nodes {
        let _ = writeln!(out, "  n{} [label={}];", n.id, quote(&format!("{{{}}}", n.members.join(", "))));
    }
    for (i, e) in g.edges.iter().enumerate() {
        let label = quote(&arrow_label(e.direction, &e.subset));
        match e.to {
            Some(to) => {
                let _ = writeln!(out, "  n{} -> n{} [label={label}];", e.from, to);
            }
            None => {
                let msg = e.error.as_deref().unwrap_or("failed");
                let _ = writeln!(out, "  f{i} [label={}, color=red];", quote(msg));
                let _ = writeln!(out, "  n{} -> f{i} [label={label}, style=dashed, color=red];", e.from);
            }
        }
    }
    out.push_str("}\n");
    out
}

/// History tree of a session registry, one node per collection.
pub fn registry_dot(file: &SessionFile) -> String {
    let mut out = String::from("digraph history {\n  node [shape=box];\n");
    for e in &file.collections {
        let style = if e.tombstone { ", style=dashed" } else { "" };
        let label = format!("{}\\n{{{}}}", e.name, e.members.join(", "));
        let _ = writeln!(out, "  {} [label=\"{}\"{style}];", quote(&e.name), label.replace('"', "\\\""));
    }
    for e in &file.collections {
        if let Some(p) = &e.provenance {
            let label = format!("{} {}", p.action, arrow_label(p.direction, &p.subset));
            let _ = writeln!(out, "  {} -> {} [label={}];", quote(&p.parent), quote(&e.name), quote(&label));
        }
    }
    out.push_str("}\n");
    out
}

/// Member sets of an iteration trace as a path.
pub fn trace_dot(steps: &[Vec<String>], period: Option<(usize, usize)>) -> String {
    let mut out = String::from("digraph iteration {\n  node [shape=box];\n");
    for (i, s) in steps.iter().enumerate() {
        let _ = writeln!(out, "  t{i} [label={}];", quote(&format!("{i}: {{{}}}", s.join(", "))));
        if i > 0 {
            let _ = writeln!(out, "  t{} -> t{i};", i - 1);
        }
    }
    if let Some((first, len)) = period {
        let _ = writeln!(out, "  t{} -> t{first} [style=dashed, label=\"period {len}\"];", first + len);
    }
    out.push_str("}\n");
    out
}

/// A labelled point of a charge plot; `simple` points are drawn larger.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotPoint {
    pub label: String,
    pub x: f64,
    pub y: f64,
    pub simple: bool,
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Charges in the closed upper half plane, with the origin at the bottom
/// centre and rays from the origin to each point.
pub fn charge_svg(points: &[PlotPoint]) -> String {
    const SIZE: f64 = 480.0;
    const PAD: f64 = 40.0;
    let reach = points.iter().map(|p| p.x.abs().max(p.y)).fold(1.0f64, f64::max);
    let scale = (SIZE / 2.0 - PAD) / reach;
    let (ox, oy) = (SIZE / 2.0, SIZE / 2.0 + PAD);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{h}\" viewBox=\"0 0 {SIZE} {h}\">",
        h = oy + PAD
    );
    let _ = writeln!(out, "  <line x1=\"{PAD}\" y1=\"{oy}\" x2=\"{}\" y2=\"{oy}\" stroke=\"#888\"/>", SIZE - PAD);
    let _ = writeln!(out, "  <line x1=\"{ox}\" y1=\"{oy}\" x2=\"{ox}\" y2=\"{PAD}\" stroke=\"#888\"/>");
    for p in points {
        let (px, py) = (ox + p.x * scale, oy - p.y * scale);
        let (r, fill) = if p.simple { (5.0, "#c0392b") } else { (3.0, "#2c3e50") };
        let _ = writeln!(
            out,
            "  <line x1=\"{ox}\" y1=\"{oy}\" x2=\"{px:.2}\" y2=\"{py:.2}\" stroke=\"#bbb\" stroke-width=\"0.5\"/>"
        );
        let _ = writeln!(out, "  <circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"{r}\" fill=\"{fill}\"/>");
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" font-family=\"monospace\">{}</text>",
            px + 6.0,
            py - 4.0,
            esc(&p.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_escapes_and_marks_failures() {
        let g = Graph {
            nodes: vec![GraphNode { id: 0, members: vec!["s1".into(), "[s2;s1]".into()], depth: 0 }],
            edges: vec![GraphEdge {
                from: 0,
                to: None,
                subset: vec!["s1".into()],
                direction: Direction::Right,
                error: Some("say \"no\"".into()),
            }],
        };
        let dot = graph_dot(&g);
        assert!(dot.contains("n0 [label=\"{s1, [s2;s1]}\"]"));
        assert!(dot.contains("say \\\"no\\\""));
        assert!(dot.contains("style=dashed"));
    }

    #[test]
    fn svg_has_one_marker_per_point() {
        let pts = vec![
            PlotPoint { label: "s1".into(), x: -1.0, y: 0.0, simple: true },
            PlotPoint { label: "<a>".into(), x: 0.0, y: 2.0, simple: false },
        ];
        let svg = charge_svg(&pts);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains("&lt;a&gt;"));
        assert!(svg.starts_with("<svg"));
    }
}
