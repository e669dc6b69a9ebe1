//! Best tracing of a target word by a shift's language: exact
//! dynamic-programming minimization of the normalized Hamming distance,
//! plus language-level Hausdorff distances between two shifts.

use dbarlab::metrics::{best_trace, eps_tracing_probe, lang_hausdorff_hamming, HausdorffMode};
use dbarlab::words::Word;
use dbarlab::{LabeledGraph, SoficShift};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gm = LabeledGraph::golden_mean();

    // How well does the golden mean shift trace the all-ones word?  The
    // optimum alternates 1s and 0s: cost floor(n/2)/n.
    for n in [1, 2, 5, 10, 14] {
        let target = Word::new(vec![1; n]);
        let (cost, witness) = best_trace(&gm, &target)?;
        println!("best trace of 1^{n}: cost {cost}, witness {witness}");
    }

    // Tracing a concatenation of in-language segments bounds the tracing
    // error of the infinite concatenation at the horizon.
    let segments: Vec<Word> = vec!["0101".parse()?, "0010".parse()?, "1010".parse()?];
    let cost = eps_tracing_probe(&gm, &segments, 12)?;
    println!("concatenation tracing cost at horizon 12: {cost}");

    // Hausdorff distance between the golden mean language and the full
    // shift language at a fixed level.
    let x = SoficShift::new(gm)?;
    let y = SoficShift::new(LabeledGraph::full_shift(dbarlab::words::Alphabet::binary()))?;
    let h = lang_hausdorff_hamming(&x, &y, 10, HausdorffMode::Exact, 100_000)?;
    println!(
        "Hausdorff(L_10(golden), L_10(full)) = {} (sides {} / {})",
        h.value, h.sup_x_side, h.sup_y_side
    );
    if let Some((far, best)) = h.witness {
        println!("  farthest word {far}, best approximation {best}");
    }
    Ok(())
}
