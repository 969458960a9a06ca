//! Enumerates every biased graph whose frame matroid is U(2,4).

use biasforge::census::{enumerate_representations, CensusOptions};
use biasforge::document::Document;
use biasforge::Matroid;

fn main() -> biasforge::Result<()> {
    let set = enumerate_representations(&Matroid::uniform(2, 4), CensusOptions::default())?;
    println!("{} representations in {} roll-up orbit(s)", set.reps.len(), set.orbits.len());
    for (i, w) in set.reps.iter().enumerate() {
        println!("-- representation {i} (contrabalanced: {})", w.is_contrabalanced());
        print!("{}", Document::from_biased_graph(w, &[]).to_text());
    }
    Ok(())
}
