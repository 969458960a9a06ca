//! Pinches two vertices of K4 and splits the result back apart.

use biasforge::fixtures::complete_graph;
use biasforge::transforms::{pinch, split};
use biasforge::{matroid_equal, Matroid, VertexId};

fn main() -> biasforge::Result<()> {
    let k4 = complete_graph(4);
    let w = pinch(&k4, VertexId(0), VertexId(3))?;
    println!(
        "pinched: {} vertices, {} unbalanced loop(s), balancing vertices {:?}",
        w.graph().vertex_count(),
        w.unbalanced_loops().len(),
        w.balancing_vertices()
    );
    println!("F(pinch) = M(K4): {}", matroid_equal(&Matroid::frame(&w), &Matroid::cycle_matroid(&k4)?)?);
    let h = split(&w, VertexId(0))?;
    println!("split: {} vertices, {} edges", h.vertex_count(), h.edge_count());
    println!("M(split) = F(pinch): {}", matroid_equal(&Matroid::cycle_matroid(&h)?, &Matroid::frame(&w))?);
    Ok(())
}
