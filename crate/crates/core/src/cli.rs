//! The `biasforge` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{committed_all, find_lobes, h_enlarge, CommitWitness};
use crate::bias::BiasedGraph;
use crate::census::{enumerate_representations, verify_theorem1, CensusOptions};
use crate::document::{to_dot, Document};
use crate::error::{Error, Result};
use crate::frame::{circuits, matroid_equal, Matroid};
use crate::limits;
use crate::sets::{EdgeId, EdgeSet, VertexId};
use crate::transforms::{pinch, rollup, simplify, split, unroll};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "biasforge", version, about = "Biased graphs and their frame matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the theta property and report balance structure.
    Validate(Input),
    /// List the circuits of the frame matroid.
    Circuits(Input),
    /// Rank of an edge subset (the whole ground set by default).
    Rank {
        #[command(flatten)]
        input: Input,
        /// Comma-separated edge ids.
        #[arg(long, value_delimiter = ',')]
        edges: Option<Vec<u32>>,
    },
    /// List the cocircuits of the frame matroid.
    Cocircuits(Input),
    /// Report which vertices are committed.
    Committed(Input),
    /// Enumerate every biased graph with the same frame matroid.
    Census {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = limits::CENSUS_MAX_VERTICES)]
        max_vertices: usize,
        #[arg(long, default_value_t = limits::CENSUS_MAX_GROUND)]
        max_ground: usize,
        /// Group representations into roll-up orbits.
        #[arg(long)]
        orbits: bool,
        /// Classify every representation as a roll-up or an enlargement.
        #[arg(long)]
        verify_theorem1: bool,
        /// Emit each representation as DOT instead of text.
        #[arg(long)]
        dot: bool,
    },
    /// Apply one transform and print the resulting document.
    Transform(TransformArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// Document to read (text or JSON).
    file: PathBuf,
    /// Write JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
#[group(id = "op", required = true, multiple = false, args = ["pinch", "split", "rollup", "unroll", "simplify", "reduce", "enlarge"])]
struct TransformArgs {
    #[command(flatten)]
    input: Input,
    /// Identify V into U; the signature is the links at U.
    #[arg(long, num_args = 2, value_names = ["U", "V"])]
    pinch: Option<Vec<String>>,
    /// Split the balancing vertex U of a signed graph.
    #[arg(long, value_name = "U")]
    split: Option<String>,
    /// Roll up unbalancing class I (0-based, ordered by smallest edge) at U.
    #[arg(long, num_args = 2, value_names = ["U", "I"])]
    rollup: Option<Vec<String>>,
    /// Unroll every unbalanced loop to U.
    #[arg(long, value_name = "U")]
    unroll: Option<String>,
    #[arg(long)]
    simplify: bool,
    /// Replace lobes by triangles.
    #[arg(long)]
    reduce: bool,
    /// Enlarge PSI, a representation of the reduction of the input.
    #[arg(long, value_name = "PSI")]
    enlarge: Option<PathBuf>,
    /// Check that the frame matroid is preserved.
    #[arg(long)]
    assert_matroid: bool,
    #[arg(long)]
    dot: bool,
}

/// Runs the command line on `args` (including the program name) and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &PathBuf) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| match e {
        Error::Parse { line, column, reason } => {
            Error::Parse { line, column, reason: format!("{}: {reason}", path.display()) }
        }
        other => other,
    })
}

fn vertex(doc: &Document, name: &str) -> Result<VertexId> {
    doc.vertex_id(name).ok_or_else(|| Error::Precondition(format!("no vertex named `{name}`")))
}

fn ids(s: EdgeSet) -> Vec<u32> {
    s.iter().map(|e| e.0).collect()
}

fn braces(s: EdgeSet) -> String {
    format!("{{{}}}", ids(s).iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
}

fn emit(out: &mut dyn Write, v: Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)
}

fn io(e: std::io::Error) -> Error {
    Error::Precondition(format!("write failed: {e}"))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Validate(input) => validate(&input, out),
        Command::Circuits(input) => {
            let w = load(&input.file)?.to_biased_graph()?;
            let list = circuits(&w);
            if input.json {
                emit(out, json!(list.iter().map(|(c, k)| json!({"kind": k, "edges": ids(*c)})).collect::<Vec<_>>()))?;
            } else {
                for (c, k) in list {
                    writeln!(out, "{k:?} {}", braces(c)).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Rank { input, edges } => {
            let w = load(&input.file)?.to_biased_graph()?;
            let x = match edges {
                Some(list) => list.into_iter().map(EdgeId).collect(),
                None => w.edge_set(),
            };
            let r = w.rank_checked(x)?;
            if input.json {
                emit(out, json!({"edges": ids(x), "rank": r}))?;
            } else {
                writeln!(out, "{r}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Cocircuits(input) => {
            let w = load(&input.file)?.to_biased_graph()?;
            let mut list = Matroid::frame(&w).cocircuits();
            list.sort();
            if input.json {
                emit(out, json!(list.iter().map(|c| ids(*c)).collect::<Vec<_>>()))?;
            } else {
                for c in list {
                    writeln!(out, "{}", braces(c)).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Committed(input) => committed(&input, out),
        Command::Census { input, max_vertices, max_ground, orbits, verify_theorem1, dot } => {
            census(&input, CensusOptions { max_vertices, max_ground }, orbits, verify_theorem1, dot, out)
        }
        Command::Transform(t) => transform(&t, out),
    }
}

fn validate(input: &Input, out: &mut dyn Write) -> Result<i32> {
    let doc = load(&input.file)?;
    let w = match doc.to_biased_graph() {
        Ok(w) => w,
        Err(e @ (Error::ThetaViolation(_) | Error::NotACycle(_) | Error::OverlappingSignature(_) | Error::UnknownEdge(_))) => {
            if input.json {
                emit(out, json!({"valid": false, "reason": e.to_string()}))?;
            } else {
                writeln!(out, "invalid: {e}").map_err(io)?;
            }
            return Ok(EXIT_INVALID);
        }
        Err(e) => return Err(e),
    };
    let name = |v: VertexId| doc.vertices[v.0 as usize].clone();
    let balancing: Vec<String> = w.balancing_vertices().iter().map(name).collect();
    let witness = w.almost_balanced_witness();
    let classes = witness.and_then(|(loops, u)| w.delete_edges(loops).unbalancing_classes(u).ok());
    let connectivity = format!("{:?}", w.graph().connectivity());
    if input.json {
        emit(
            out,
            json!({
                "valid": true,
                "vertices": w.graph().vertex_count(),
                "edges": w.graph().edge_count(),
                "balanced": w.is_balanced(),
                "balancing_vertices": balancing,
                "almost_balanced": witness.map(|(loops, u)| json!({"vertex": name(u), "unbalanced_loops": ids(loops)})),
                "unbalancing_classes": classes.as_ref().map(|p| p.classes.iter().map(|c| ids(*c)).collect::<Vec<_>>()),
                "connectivity": connectivity,
            }),
        )?;
    } else {
        writeln!(out, "valid: theta property holds").map_err(io)?;
        writeln!(out, "vertices: {}  edges: {}", w.graph().vertex_count(), w.graph().edge_count()).map_err(io)?;
        writeln!(out, "balanced: {}", w.is_balanced()).map_err(io)?;
        writeln!(out, "balancing vertices: {}", balancing.join(" ")).map_err(io)?;
        match witness {
            Some((loops, u)) => {
                writeln!(out, "almost balanced at {} (unbalanced loops {})", name(u), braces(loops)).map_err(io)?
            }
            None => writeln!(out, "almost balanced: no").map_err(io)?,
        }
        if let Some(p) = classes {
            let list: Vec<String> = p.classes.iter().map(|c| braces(*c)).collect();
            writeln!(out, "unbalancing classes at {}: {}", name(p.vertex), list.join(" ")).map_err(io)?;
        }
        writeln!(out, "connectivity: {connectivity}").map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn witness_text(w: &CommitWitness) -> String {
    match w {
        CommitWitness::Shortcut { theta, path } => {
            format!("theta {} {} {} shortcut {}", braces(theta[0]), braces(theta[1]), braces(theta[2]), braces(*path))
        }
        CommitWitness::Minor(m) => format!("contract {} delete {}", braces(m.contract), braces(m.delete)),
        CommitWitness::Nongraphic { hyperplane } => format!("hyperplane {}", braces(*hyperplane)),
    }
}

fn committed(input: &Input, out: &mut dyn Write) -> Result<i32> {
    let doc = load(&input.file)?;
    let w = doc.to_biased_graph()?;
    let reports = committed_all(&w)?;
    if input.json {
        let rows: Vec<Value> = reports
            .values()
            .map(|r| {
                json!({
                    "vertex": doc.vertices[r.vertex.0 as usize],
                    "committed": r.committed,
                    "route": format!("{:?}", r.route),
                    "witness": r.witness.as_ref().map(witness_text),
                })
            })
            .collect();
        emit(out, json!(rows))?;
    } else {
        for r in reports.values() {
            let verdict = if r.committed { "committed" } else { "not committed" };
            let witness = r.witness.as_ref().map(witness_text).unwrap_or_default();
            writeln!(out, "{} {verdict} {:?} {witness}", doc.vertices[r.vertex.0 as usize], r.route)
                .map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn render(w: &BiasedGraph, names: &[String], json_out: bool, dot: bool) -> String {
    if dot {
        to_dot(w, names)
    } else if json_out {
        Document::from_biased_graph(w, names).to_json() + "\n"
    } else {
        Document::from_biased_graph(w, names).to_text()
    }
}

fn census(
    input: &Input,
    opts: CensusOptions,
    orbits: bool,
    theorem: bool,
    dot: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let w = load(&input.file)?.to_biased_graph()?;
    if theorem {
        let rep = verify_theorem1(&w, opts)?;
        let unclassified = rep.unclassified();
        if input.json {
            emit(
                out,
                json!({
                    "lobes": rep.plan.lobes.len(),
                    "reduced_vertices": rep.reduced_vertices,
                    "reduced_representations": rep.reduced_reps.len(),
                    "enlargements": rep.enlargements.len(),
                    "enlargement_failures": rep.enlargement_failures.iter().map(|(i, e)| json!({"index": i, "error": e.to_string()})).collect::<Vec<_>>(),
                    "representations": rep.direct.reps.len(),
                    "orbits": rep.direct.orbits.len(),
                    "labeled_representations": rep.labeled.len(),
                    "classifications": rep.classifications.iter().map(|c| json!({"rollup": c.rollup, "enlargement": c.enlargement})).collect::<Vec<_>>(),
                    "unclassified": unclassified,
                    "enlargements_missing": rep.enlargements_missing,
                    "holds": rep.holds(),
                }),
            )?;
        } else {
            writeln!(out, "lobes: {}", rep.plan.lobes.len()).map_err(io)?;
            writeln!(out, "reduced vertices: {}", rep.reduced_vertices).map_err(io)?;
            writeln!(out, "reduced representations: {}", rep.reduced_reps.len()).map_err(io)?;
            writeln!(out, "enlargements: {}", rep.enlargements.len()).map_err(io)?;
            for (i, e) in &rep.enlargement_failures {
                writeln!(out, "  reduced representation {i} not enlarged: {e}").map_err(io)?;
            }
            writeln!(out, "representations: {}", rep.direct.reps.len()).map_err(io)?;
            writeln!(out, "orbits: {}", rep.direct.orbits.len()).map_err(io)?;
            writeln!(out, "labeled representations: {}", rep.labeled.len()).map_err(io)?;
            for (i, c) in rep.classifications.iter().enumerate() {
                let kind = match (c.rollup, c.enlargement) {
                    (true, true) => "roll-up, enlargement",
                    (true, false) => "roll-up",
                    (false, true) => "enlargement",
                    (false, false) => "UNCLASSIFIED",
                };
                writeln!(out, "  labeled representation {i}: {kind}").map_err(io)?;
            }
            writeln!(out, "verdict: {}", if rep.holds() { "holds" } else { "falsification candidate" }).map_err(io)?;
        }
        return Ok(if rep.holds() { EXIT_OK } else { EXIT_INVALID });
    }
    let set = enumerate_representations(&Matroid::frame(&w), opts)?;
    if input.json {
        let reps: Vec<Value> = set
            .reps
            .iter()
            .map(|r| serde_json::to_value(Document::from_biased_graph(r, &[]).normalized()).expect("json"))
            .collect();
        let mut v = json!({"count": set.reps.len(), "representations": reps});
        if orbits {
            v["orbits"] = json!(set.orbits);
        }
        emit(out, v)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "representations: {}", set.reps.len()).map_err(io)?;
    if orbits {
        writeln!(out, "orbits: {}", set.orbits.len()).map_err(io)?;
        for (i, o) in set.orbits.iter().enumerate() {
            let members: Vec<String> = o.iter().map(usize::to_string).collect();
            writeln!(out, "orbit {i}: {}", members.join(" ")).map_err(io)?;
        }
    }
    for (i, r) in set.reps.iter().enumerate() {
        writeln!(out, "# representation {i}").map_err(io)?;
        write!(out, "{}", render(r, &[], false, dot)).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn transform(t: &TransformArgs, out: &mut dyn Write) -> Result<i32> {
    let doc = load(&t.input.file)?;
    let mut names = doc.vertices.clone();
    let mut note: Option<String> = None;
    let result = if let Some(p) = &t.pinch {
        let g = doc.graph()?;
        let w = pinch(&g, vertex(&doc, &p[0])?, vertex(&doc, &p[1])?)?;
        if t.assert_matroid && !matroid_equal(&Matroid::frame(&w), &Matroid::cycle_matroid(&g)?)? {
            return Err(Error::MatroidMismatch("pinch".into()));
        }
        w
    } else {
        let w = doc.to_biased_graph()?;
        let result = if let Some(u) = &t.split {
            BiasedGraph::balanced(split(&w, vertex(&doc, u)?)?)?
        } else if let Some(r) = &t.rollup {
            let i: usize = r[1].parse().map_err(|_| Error::Precondition(format!("bad class index `{}`", r[1])))?;
            rollup(&w, vertex(&doc, &r[0])?, i)?
        } else if let Some(u) = &t.unroll {
            unroll(&w, vertex(&doc, u)?)?
        } else if t.simplify {
            simplify(&w)
        } else if t.reduce {
            let plan = find_lobes(&w)?;
            if t.assert_matroid {
                note = Some(match &plan.minor {
                    Some(m) => {
                        let expected = Matroid::frame(&w).minor(m.contract, m.delete)?;
                        let got = Matroid::frame(&plan.reduced).relabel(&m.rename_full(&plan.reduced));
                        if !matroid_equal(&got, &expected)? {
                            return Err(Error::MatroidMismatch("reduction is not the recorded minor".into()));
                        }
                        format!("# reduction equals F/{} \\ {}", braces(m.contract), braces(m.delete))
                    }
                    None => "# no minor recorded for this reduction".into(),
                });
            }
            plan.reduced
        } else if let Some(path) = &t.enlarge {
            let psi_doc = load(path)?;
            let plan = find_lobes(&w)?;
            names = psi_doc.vertices.clone();
            h_enlarge(&plan, &psi_doc.to_biased_graph()?)?
        } else {
            unreachable!("clap enforces one operation")
        };
        let preserved = t.simplify || t.reduce;
        if t.assert_matroid && !preserved && !matroid_equal(&Matroid::frame(&result), &Matroid::frame(&w))? {
            return Err(Error::MatroidMismatch("transform changed the frame matroid".into()));
        }
        result
    };
    if let Some(n) = note {
        writeln!(out, "{n}").map_err(io)?;
    }
    write!(out, "{}", render(&result, &names, t.input.json, t.dot)).map_err(io)?;
    Ok(EXIT_OK)
}
