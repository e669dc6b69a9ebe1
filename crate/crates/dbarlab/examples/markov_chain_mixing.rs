//! Topological Markov approximations of a shift from a language oracle:
//! Rauzy graphs, and a finite-horizon probe for when the approximation
//! chain becomes mixing.

use dbarlab::markov::{chain_mixing_probe, markov_approximation, LanguageOracle};
use dbarlab::words::Alphabet;
use dbarlab::Word;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The golden mean shift as an SFT oracle: binary words avoiding 11.
    let forbidden: Word = "11".parse()?;
    let oracle = LanguageOracle::from_forbidden(Alphabet::binary(), &[forbidden])?;

    for n in 1..=4 {
        let approx = markov_approximation(&oracle, n, 100_000)?;
        println!(
            "order {n}: {} vertices, {} edges, connected={}, period={}",
            approx.presentation().vertex_count(),
            approx.presentation().edges().len(),
            approx.strongly_connected(),
            approx.period(),
        );
    }

    let report = chain_mixing_probe(&oracle, 6, 100_000)?;
    println!("mixing from order: {:?}", report.mixing_from);

    // A periodic sequence via a trusted prefix: the oracle reads factors
    // off the prefix, trusted up to the stated length.
    let prefix: Word = "011011011011011011011011".parse()?;
    let periodic = LanguageOracle::from_trusted_prefix(Alphabet::binary(), prefix, 8);
    let report = chain_mixing_probe(&periodic, 6, 100_000)?;
    for row in &report.rows {
        println!(
            "orbit of (011)^inf, order {}: {} vertices, period {}",
            row.n, row.vertices, row.period
        );
    }
    Ok(())
}
