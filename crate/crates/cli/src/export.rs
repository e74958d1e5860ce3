//! Point/line figures of the doilies and the heptagon configuration, as
//! bipartite DOT graphs or JSON.

use std::fmt::Write as _;

use clap::ValueEnum;
use doily_core::codes::{
    build_split_doily, context_sign, embedded_central_doily, heptagon_split, pentagon_split, SplitDoily,
};
use doily_core::pauli::PauliOperator;
use doily_core::polar::klein_real_doily;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Object {
    /// Pentagon doily with two-qubit labels.
    #[value(name = "doily-2q")]
    Doily2q,
    /// Pentagon doily with three-qubit labels.
    #[value(name = "doily-3q")]
    Doily3q,
    /// The 15 heptagon elements idle on qubit 7, with four-qubit labels.
    Troily,
    /// Plücker images of the doily lines joined by light rays.
    KleinDoily,
    /// All 63 heptagon elements and the 315 lines of W(5,2).
    Heptaly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Point {
    pub label: String,
    /// The other labeling of the same element, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alt_label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Line {
    pub points: Vec<usize>,
    pub negative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Figure {
    pub object: String,
    pub points: Vec<Point>,
    pub lines: Vec<Line>,
}

fn doily_figure(name: &str, d: &SplitDoily, primary_left: bool) -> Figure {
    let (primary, secondary) = if primary_left {
        (&d.left_labels, &d.right_labels)
    } else {
        (&d.right_labels, &d.left_labels)
    };
    let idx = |m: usize| d.points.iter().position(|&p| p == m).expect("line point");
    Figure {
        object: name.into(),
        points: primary
            .iter()
            .zip(secondary)
            .map(|(a, b)| Point {
                label: a.to_string(),
                alt_label: Some(b.to_string()),
                group: None,
            })
            .collect(),
        lines: d
            .lines
            .iter()
            .map(|l| Line {
                points: l.elements.iter().map(|&m| idx(m)).collect(),
                negative: if primary_left { l.left_sign } else { l.right_sign } < 0,
            })
            .collect(),
    }
}

fn heptaly() -> Figure {
    let s = heptagon_split();
    let points = (1..64)
        .map(|m| Point {
            label: s.right_labels[m].to_string(),
            alt_label: Some(s.left_labels[m].to_string()),
            group: Some(format!("identities-{}", 4 - s.right_labels[m].vec().weight())),
        })
        .collect();
    let mut lines = Vec::new();
    for a in 1..64usize {
        for b in a + 1..64 {
            let c = a ^ b;
            if c <= b || !s.left_labels[a].commutes_with(&s.left_labels[b]) {
                continue;
            }
            let right: Vec<PauliOperator> = [a, b, c].iter().map(|&m| s.right_labels[m]).collect();
            let sign = context_sign(&right).expect("elements of a commuting triple");
            lines.push(Line {
                points: vec![a - 1, b - 1, c - 1],
                negative: sign < 0,
            });
        }
    }
    Figure {
        object: "heptaly".into(),
        points,
        lines,
    }
}

fn klein() -> Figure {
    let k = klein_real_doily();
    Figure {
        object: "klein-doily".into(),
        points: k
            .points
            .iter()
            .map(|p| Point {
                label: format!("{:06b}", p.plucker),
                alt_label: Some(
                    p.source_line
                        .points()
                        .iter()
                        .map(|&v| PauliOperator::new(v, 0).to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                ),
                group: None,
            })
            .collect(),
        lines: k
            .structure
            .lines
            .iter()
            .map(|l| Line {
                points: l.clone(),
                negative: false,
            })
            .collect(),
    }
}

pub fn figure(object: Object) -> Figure {
    match object {
        Object::Doily2q | Object::Doily3q => {
            let d = build_split_doily(&pentagon_split()).expect("2+3 split of the pentagon code");
            let name = if object == Object::Doily2q {
                "doily-2q"
            } else {
                "doily-3q"
            };
            doily_figure(name, &d, object == Object::Doily2q)
        }
        Object::Troily => doily_figure("troily", &embedded_central_doily(), false),
        Object::KleinDoily => klein(),
        Object::Heptaly => heptaly(),
    }
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(f: &Figure) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "graph {} {{", quoted(&f.object)).unwrap();
    writeln!(w, "  node [shape=box];").unwrap();
    let point = |w: &mut String, i: usize, p: &Point| {
        write!(w, "  p{i} [label={}", quoted(&p.label)).unwrap();
        if let Some(a) = &p.alt_label {
            write!(w, ", alt_label={}", quoted(a)).unwrap();
        }
        if let Some(g) = &p.group {
            write!(w, ", group={}", quoted(g)).unwrap();
        }
        writeln!(w, "];").unwrap();
    };
    let mut groups: Vec<&str> = f.points.iter().filter_map(|p| p.group.as_deref()).collect();
    groups.sort_unstable();
    groups.dedup();
    for (i, p) in f.points.iter().enumerate().filter(|(_, p)| p.group.is_none()) {
        point(w, i, p);
    }
    for g in groups {
        writeln!(w, "  subgraph {} {{", quoted(&format!("cluster_{g}"))).unwrap();
        writeln!(w, "    label={};", quoted(g)).unwrap();
        for (i, p) in f
            .points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.group.as_deref() == Some(g))
        {
            w.push_str("  ");
            point(w, i, p);
        }
        writeln!(w, "  }}").unwrap();
    }
    for (j, l) in f.lines.iter().enumerate() {
        let style = if l.negative { ", color=red" } else { "" };
        writeln!(w, "  l{j} [shape=point, negative={}{style}];", l.negative).unwrap();
        for p in &l.points {
            writeln!(w, "  l{j} -- p{p};").unwrap();
        }
    }
    w.push_str("}\n");
    out
}

pub fn render(object: Object, format: Format) -> String {
    let f = figure(object);
    match format {
        Format::Dot => to_dot(&f),
        Format::Json => serde_json::to_string_pretty(&f).expect("plain data") + "\n",
    }
}
