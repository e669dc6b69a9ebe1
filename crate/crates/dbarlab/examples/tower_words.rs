//! The nested-word tower: each level repeats the previous level's word,
//! splices in the next enumerated word, and pads so the lengths divide.
//! Verifies the shrinking orbit distances and the cylinder lower bounds.

use dbarlab::constructions::tower::{
    canonical_enumeration, tower_build, tower_verify, TowerParams,
};
use dbarlab::words::{rat_usize, Alphabet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let depth = 3;
    let words = canonical_enumeration(Alphabet::binary(), depth + 1);
    println!("spliced words: {words:?}");

    let deltas = (1..=depth)
        .map(|k| {
            let mut acc = rat_usize(1, 1);
            for _ in 0..k {
                acc *= rat_usize(1, 4);
            }
            acc
        })
        .collect();
    let params = TowerParams::new(words, deltas)?;
    let tower = tower_build(&params, depth)?;

    for (k, level) in tower.levels.iter().enumerate() {
        println!(
            "level {k}: |V_{k}| = {} (a = {}, b = {}){}",
            level.v.len(),
            level.a,
            level.b,
            if level.v.len() <= 16 {
                format!(", V_{k} = {}", level.v)
            } else {
                String::new()
            }
        );
    }

    let report = tower_verify(&tower)?;
    for check in report.dbar_checks.iter().chain(&report.cylinder_checks) {
        println!("  {}: {} vs {}", check.label, check.lhs, check.rhs);
    }
    println!(
        "delta partial sums: {:?}",
        report
            .delta_partial_sums
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
    );
    println!("all bounds verified");
    Ok(())
}
