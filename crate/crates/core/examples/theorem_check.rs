//! Classifies every representation of a frame matroid as a roll-up of the
//! input or an enlargement of a representation of its reduction.

use biasforge::census::{verify_theorem1, CensusOptions};
use biasforge::fixtures::{lobe_example, three_claws, two_class_pinch};

fn main() -> biasforge::Result<()> {
    for (name, w) in [("three claws", three_claws()), ("lobe example", lobe_example()), ("two-class pinch", two_class_pinch())] {
        let t = std::time::Instant::now();
        let report = verify_theorem1(&w, CensusOptions::default())?;
        println!(
            "{name}: reduced to {} vertices, {} representations ({} labeled), {} orbit(s), {} enlargement(s), {} unclassified [{:.2?}]",
            report.reduced_vertices,
            report.direct.reps.len(),
            report.labeled.len(),
            report.direct.orbits.len(),
            report.enlargements.len(),
            report.unclassified().len(),
            t.elapsed()
        );
    }
    Ok(())
}
