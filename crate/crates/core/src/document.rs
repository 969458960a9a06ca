//! The line-oriented text format for biased graphs, its JSON mirror, and DOT export.
//!
//! ```text
//! # comment
//! vertices u v w
//! edge 0 u v
//! edge 1 v w
//! edge 2 w u
//! edge 3 u u
//! bias signature
//! class 0 3
//! ```
//!
//! The `bias` line takes one of `balanced`, `contrabalanced`, `cycles` or
//! `signature`. In `cycles` mode each following `cycle` line lists the edges
//! of a balanced cycle; in `signature` mode each `class` line lists one
//! class. Vertex names are any whitespace-free tokens; edge ids are integers
//! below 128.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bias::{BiasedGraph, Signature};
use crate::error::{Error, Result};
use crate::multigraph::MultiGraph;
use crate::sets::{EdgeId, EdgeSet, VertexId, EDGE_ID_LIMIT, VERTEX_ID_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocEdge {
    pub id: u32,
    pub ends: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum BiasSpec {
    Balanced,
    Contrabalanced,
    Cycles { cycles: Vec<Vec<u32>> },
    Signature { classes: Vec<Vec<u32>> },
}

/// A biased graph with named vertices. Vertex `i` of the biased graph is
/// `vertices[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub vertices: Vec<String>,
    pub edges: Vec<DocEdge>,
    pub bias: BiasSpec,
}

fn parse_err(line: usize, column: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, column, reason: reason.into() }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_id(line: usize, (col, tok): (usize, &str)) -> Result<u32> {
    let id: u32 = tok.parse().map_err(|_| parse_err(line, col, format!("expected an edge id, found `{tok}`")))?;
    if id >= EDGE_ID_LIMIT {
        return Err(parse_err(line, col, format!("edge id {id} is not below {EDGE_ID_LIMIT}")));
    }
    Ok(id)
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

impl Document {
    /// Parses either format; input whose first non-blank character is `{` is read as JSON.
    pub fn parse(input: &str) -> Result<Document> {
        if input.trim_start().starts_with('{') {
            return Document::from_json(input);
        }
        let mut vertices: Vec<String> = Vec::new();
        let mut edges: Vec<DocEdge> = Vec::new();
        let mut bias: Option<(usize, BiasSpec)> = None;
        for (i, raw) in input.lines().enumerate() {
            let ln = i + 1;
            let text = raw.split('#').next().unwrap_or("");
            let toks = tokens(text);
            let Some(&(col, head)) = toks.first() else { continue };
            let args = &toks[1..];
            match head {
                "vertices" => {
                    for &(c, name) in args {
                        if vertices.iter().any(|v| v == name) {
                            return Err(parse_err(ln, c, format!("vertex `{name}` declared twice")));
                        }
                        if vertices.len() as u32 >= VERTEX_ID_LIMIT {
                            return Err(parse_err(ln, c, format!("more than {VERTEX_ID_LIMIT} vertices")));
                        }
                        vertices.push(name.to_string());
                    }
                }
                "edge" => {
                    if args.len() != 3 {
                        return Err(parse_err(ln, col, "expected `edge <id> <end> <end>`"));
                    }
                    let id = parse_id(ln, args[0])?;
                    if edges.iter().any(|e| e.id == id) {
                        return Err(parse_err(ln, args[0].0, format!("edge id {id} used twice")));
                    }
                    for &(c, name) in &args[1..] {
                        if !vertices.iter().any(|v| v == name) {
                            return Err(parse_err(ln, c, format!("unknown vertex `{name}`")));
                        }
                    }
                    edges.push(DocEdge { id, ends: [args[1].1.to_string(), args[2].1.to_string()] });
                }
                "bias" => {
                    if bias.is_some() {
                        return Err(parse_err(ln, col, "bias given twice"));
                    }
                    let spec = match args {
                        [(_, "balanced")] => BiasSpec::Balanced,
                        [(_, "contrabalanced")] => BiasSpec::Contrabalanced,
                        [(_, "cycles")] => BiasSpec::Cycles { cycles: Vec::new() },
                        [(_, "signature")] => BiasSpec::Signature { classes: Vec::new() },
                        _ => {
                            return Err(parse_err(
                                ln,
                                args.first().map_or(col, |a| a.0),
                                "expected `bias balanced|contrabalanced|cycles|signature`",
                            ))
                        }
                    };
                    bias = Some((ln, spec));
                }
                "cycle" | "class" => {
                    let ids = args.iter().map(|&a| parse_id(ln, a)).collect::<Result<Vec<u32>>>()?;
                    if ids.is_empty() {
                        return Err(parse_err(ln, col, format!("empty `{head}`")));
                    }
                    match (&mut bias, head) {
                        (Some((_, BiasSpec::Cycles { cycles })), "cycle") => cycles.push(ids),
                        (Some((_, BiasSpec::Signature { classes })), "class") => classes.push(ids),
                        _ => return Err(parse_err(ln, col, format!("`{head}` outside a matching bias section"))),
                    }
                }
                other => return Err(parse_err(ln, col, format!("unknown directive `{other}`"))),
            }
        }
        let Some((_, bias)) = bias else {
            return Err(parse_err(input.lines().count().max(1), 1, "missing `bias` line"));
        };
        Ok(Document { vertices, edges, bias })
    }

    pub fn from_json(input: &str) -> Result<Document> {
        let doc: Document =
            serde_json::from_str(input).map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
        doc.check_names()?;
        Ok(doc)
    }

    fn check_names(&self) -> Result<()> {
        for (i, v) in self.vertices.iter().enumerate() {
            if v.is_empty() || v.chars().any(char::is_whitespace) || self.vertices[..i].contains(v) {
                return Err(parse_err(0, 0, format!("bad or repeated vertex name `{v}`")));
            }
        }
        for e in &self.edges {
            for end in &e.ends {
                if !self.vertices.contains(end) {
                    return Err(parse_err(0, 0, format!("unknown vertex `{end}` on edge {}", e.id)));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(|i| VertexId(i as u32))
    }

    pub fn graph(&self) -> Result<MultiGraph> {
        let mut g = MultiGraph::with_vertices(self.vertices.len() as u32);
        for e in &self.edges {
            let end = |n: &str| self.vertex_id(n).ok_or_else(|| parse_err(0, 0, format!("unknown vertex `{n}`")));
            g.add_edge(EdgeId(e.id), end(&e.ends[0])?, end(&e.ends[1])?)?;
        }
        Ok(g)
    }

    pub fn to_biased_graph(&self) -> Result<BiasedGraph> {
        let g = self.graph()?;
        let set = |ids: &Vec<u32>| -> EdgeSet { ids.iter().map(|&i| EdgeId(i)).collect() };
        match &self.bias {
            BiasSpec::Balanced => BiasedGraph::balanced(g),
            BiasSpec::Contrabalanced => BiasedGraph::contrabalanced(g),
            BiasSpec::Cycles { cycles } => BiasedGraph::from_balanced_cycles(g, cycles.iter().map(set)),
            BiasSpec::Signature { classes } => {
                for c in classes {
                    for &e in c {
                        if !g.has_edge(EdgeId(e)) {
                            return Err(Error::UnknownEdge(EdgeId(e)));
                        }
                    }
                }
                BiasedGraph::from_signature(g, &Signature::new(classes.iter().map(set).collect())?)
            }
        }
    }

    /// A document for `w`, naming vertex `v` by `names[v]` where given and
    /// `v<id>` otherwise. Vertices are listed in id order, so a graph with
    /// gaps in its vertex ids comes back renumbered. The bias is written as a
    /// signature when one built from the unbalancing classes reproduces it.
    pub fn from_biased_graph(w: &BiasedGraph, names: &[String]) -> Document {
        let g = w.graph();
        let mut vertices: Vec<String> = Vec::new();
        let mut by_id: BTreeMap<VertexId, usize> = BTreeMap::new();
        for v in g.vertices() {
            let i = v.0 as usize;
            let mut name = names.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
            while vertices.contains(&name) || names.iter().enumerate().any(|(j, n)| j != i && *n == name) {
                name.push('\'');
            }
            by_id.insert(v, vertices.len());
            vertices.push(name);
        }
        let edges = g
            .edges()
            .map(|(e, a, b)| DocEdge { id: e.0, ends: [vertices[by_id[&a]].clone(), vertices[by_id[&b]].clone()] })
            .collect();
        let ids = |s: EdgeSet| s.iter().map(|e| e.0).collect::<Vec<u32>>();
        let bias = if w.is_balanced() {
            BiasSpec::Balanced
        } else if w.is_contrabalanced() {
            BiasSpec::Contrabalanced
        } else if let Some(sig) = signature_of(w) {
            BiasSpec::Signature { classes: sig.classes.iter().map(|&c| ids(c)).collect() }
        } else {
            BiasSpec::Cycles { cycles: w.balanced_cycles().iter().map(|&c| ids(c)).collect() }
        };
        Document { vertices, edges, bias }
    }

    /// Same content with edges, cycles and classes in sorted order.
    pub fn normalized(&self) -> Document {
        let mut d = self.clone();
        d.edges.sort_by_key(|e| e.id);
        match &mut d.bias {
            BiasSpec::Cycles { cycles: l } | BiasSpec::Signature { classes: l } => {
                *l = l.drain(..).map(sorted).collect();
                l.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
            }
            _ => {}
        }
        if let BiasSpec::Signature { classes } = &mut d.bias {
            classes.sort();
        }
        d
    }

    pub fn to_text(&self) -> String {
        let d = self.normalized();
        let mut s = String::new();
        if !d.vertices.is_empty() {
            let _ = writeln!(s, "vertices {}", d.vertices.join(" "));
        }
        for e in &d.edges {
            let _ = writeln!(s, "edge {} {} {}", e.id, e.ends[0], e.ends[1]);
        }
        let join = |ids: &[u32]| ids.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        match &d.bias {
            BiasSpec::Balanced => s.push_str("bias balanced\n"),
            BiasSpec::Contrabalanced => s.push_str("bias contrabalanced\n"),
            BiasSpec::Cycles { cycles } => {
                s.push_str("bias cycles\n");
                for c in cycles {
                    let _ = writeln!(s, "cycle {}", join(c));
                }
            }
            BiasSpec::Signature { classes } => {
                s.push_str("bias signature\n");
                for c in classes {
                    let _ = writeln!(s, "class {}", join(c));
                }
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.normalized()).expect("document serializes")
    }
}

/// A signature reproducing the bias of `w`, if `w` is almost balanced or
/// signed. For almost balanced `w` it is the unbalancing classes at the
/// balancing vertex plus one class per unbalanced loop.
pub fn signature_of(w: &BiasedGraph) -> Option<Signature> {
    let almost = w.almost_balanced_witness().and_then(|(loops, u)| {
        let mut classes = w.delete_edges(loops).unbalancing_classes(u).ok()?.classes;
        classes.extend(loops.iter().map(EdgeSet::singleton));
        let sig = Signature::new(classes).ok()?;
        let again = BiasedGraph::from_signature(w.graph().clone(), &sig).ok()?;
        (again == *w).then_some(sig)
    });
    almost.or_else(|| w.is_signed())
}

const CLASS_STYLES: [&str; 4] = ["dashed", "dotted", "bold", "tapered"];

/// Graphviz source. Signature classes get distinct edge styles, unbalanced
/// loops are drawn red, balancing vertices are double circles.
pub fn to_dot(w: &BiasedGraph, names: &[String]) -> String {
    let doc = Document::from_biased_graph(w, names);
    let name: BTreeMap<VertexId, &String> = w.graph().vertices().zip(&doc.vertices).collect();
    let class_of: BTreeMap<EdgeId, usize> = match signature_of(w) {
        Some(sig) => sig
            .classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |e| (e, i)))
            .collect(),
        None => BTreeMap::new(),
    };
    let balancing = w.balancing_vertices();
    let unbalanced_loops = w.unbalanced_loops();
    let mut s = String::from("graph biased {\n");
    for v in w.graph().vertices() {
        let shape = if balancing.contains(v) { "doublecircle" } else { "circle" };
        let _ = writeln!(s, "  \"{}\" [shape={shape}];", name[&v]);
    }
    for (e, a, b) in w.graph().edges() {
        let mut attrs = vec![format!("label=\"{}\"", e.0)];
        if let Some(&i) = class_of.get(&e) {
            attrs.push(format!("style={}", CLASS_STYLES[i % CLASS_STYLES.len()]));
        }
        if unbalanced_loops.contains(e) {
            attrs.push("color=red".into());
        }
        let _ = writeln!(
            s,
            "  \"{}\" -- \"{}\" [{}];",
            name[&a],
            name[&b],
            attrs.join(", ")
        );
    }
    s.push_str("}\n");
    s
}
