//! Rolls up each unbalancing class at the balancing vertex in turn and
//! checks that the frame matroid never changes.

use biasforge::document::Document;
use biasforge::fixtures::rollup_base;
use biasforge::transforms::{rollup_family, unroll};
use biasforge::{matroid_equal, Matroid, VertexId};

fn main() -> biasforge::Result<()> {
    let w = rollup_base();
    let names: Vec<String> = ["u", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let family = rollup_family(&w)?;
    println!("family at {} has {} members", names[family.vertex.0 as usize], family.len());
    for m in family.all() {
        assert!(matroid_equal(&Matroid::frame(m), &Matroid::frame(&w))?);
        println!("{}", Document::from_biased_graph(m, &names).to_text());
    }
    let back = unroll(family.members.last().unwrap(), VertexId(0))?;
    println!("unrolling the last member gives back a graph with {} loops", back.graph().loops().len());
    Ok(())
}
