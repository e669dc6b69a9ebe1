//! Maximum pattern frequencies: sliding-window occurrence counts, the
//! maximal n-window count over a shift, the exact maximum limiting
//! frequency (via maximum mean cycles), the measure center, and projecting
//! words into it.

use dbarlab::spectra::{big_gamma, gamma, lambda, measure_center, project_to_center};
use dbarlab::words::{Alphabet, Word};
use dbarlab::{LabeledGraph, SoficShift};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let u: Word = "0101010".parse()?;
    let w: Word = "01".parse()?;
    println!("occurrences of {w} in {u}: {}", gamma(&w, &u));

    let gm = SoficShift::new(LabeledGraph::golden_mean())?;
    for n in [4, 8, 12] {
        println!(
            "max occurrences of {w} in an {n}-window of the golden mean shift: {}",
            big_gamma(&gm, &w, n)?
        );
    }

    let report = lambda(&gm, &w)?;
    println!(
        "max limiting frequency of {w}: {} (witness cycle {})",
        report.value, report.witness_cycle
    );
    let report = lambda(&gm, &"00".parse()?)?;
    println!(
        "max limiting frequency of 00: {} (witness cycle {})",
        report.value, report.witness_cycle
    );

    // A shift with wandering edges: a path feeding into a loop.  Its
    // measure center keeps only the cycles.
    let graph = LabeledGraph::new(
        3,
        Alphabet::binary(),
        vec![
            dbarlab::sofic::Edge { src: 0, dst: 1, label: 1 },
            dbarlab::sofic::Edge { src: 1, dst: 2, label: 1 },
            dbarlab::sofic::Edge { src: 2, dst: 2, label: 0 },
            dbarlab::sofic::Edge { src: 0, dst: 0, label: 0 },
        ],
    )?;
    let shift = SoficShift::new(graph)?;
    let center = measure_center(&shift)?;
    println!(
        "wandering example: {} edges, center keeps {}",
        shift.presentation().edges().len(),
        center.presentation().edges().len()
    );
    println!(
        "11 in language: {}; in center language: {}",
        shift.presentation().accepts(&"11".parse()?),
        center.presentation().accepts(&"11".parse()?),
    );

    // Project words into the center blockwise, replacing off-center blocks.
    let words: Vec<Word> = vec!["0011000000".parse()?, "0000000000".parse()?];
    let filler: Word = "00".parse()?;
    let projection = project_to_center(&words, &shift, 2, &filler)?;
    for (before, after) in words.iter().zip(&projection.words) {
        println!("projected {before} -> {after}");
    }
    println!("replaced fraction: {}", projection.replaced_fraction);
    Ok(())
}
