//! Finds the lobes of a biased graph, reduces them to triangles, and
//! enlarges the reduction back.

use biasforge::analysis::{find_lobes, h_enlarge};
use biasforge::document::Document;
use biasforge::fixtures::{three_claws, two_class_pinch};
use biasforge::iso::biased_graph_isomorphic;

fn main() -> biasforge::Result<()> {
    for w in [three_claws(), two_class_pinch()] {
        let plan = find_lobes(&w)?;
        for lobe in &plan.lobes {
            println!("lobe {:?} on {:?} ({:?})", lobe.edges, lobe.boundary, lobe.kind);
        }
        print!("{}", Document::from_biased_graph(&plan.reduced, &[]).to_text());
        let back = h_enlarge(&plan, &plan.reduced)?;
        println!("enlarging the reduction recovers the input: {}\n", biased_graph_isomorphic(&back, &w).is_some());
    }
    Ok(())
}
