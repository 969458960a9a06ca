//! Reports committed vertices and how each verdict was reached.

use biasforge::analysis::{committed_all, committed_by_definition};
use biasforge::fixtures::{apex, complete_graph, three_claws};

fn main() -> biasforge::Result<()> {
    for (name, w) in [("apex over K4", apex(&complete_graph(4), 3)), ("three claws", three_claws())] {
        println!("{name}:");
        for (v, r) in committed_all(&w)? {
            let direct = if w.edge_set().len() <= 12 {
                format!(" (definition: {})", committed_by_definition(&w, v)?.committed)
            } else {
                String::new()
            };
            println!("  {v}: {} via {:?}{direct}", r.committed, r.route);
        }
    }
    Ok(())
}
