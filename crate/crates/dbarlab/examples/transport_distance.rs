//! Exact transportation distance between block distributions, good
//! joinings, the grid block distance, and Hausdorff distance between sets
//! of periodic-orbit measures.

use dbarlab::measures::{
    alpha_good_joining, cycle_measures, dstar_n, hausdorff_dbar_n, transport_dbar_n,
    BlockDistribution,
};
use dbarlab::words::{rat, Word};
use dbarlab::LabeledGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = BlockDistribution::from_periodic(&"01".parse::<Word>()?, 3)?;
    let b = BlockDistribution::from_periodic(&"011".parse::<Word>()?, 3)?;

    let (value, joining) = transport_dbar_n(&a, &b, 3)?;
    println!("transport distance between orbits of (01)^inf and (011)^inf at level 3: {value}");
    for ((u, w), mass) in joining.entries() {
        println!("  joining moves {mass} from {u} to {w}");
    }
    println!("  marginals check: {}", joining.check_marginals(&a, &b));

    // Grid block distance: least alpha admitting an alpha-good joining.
    let d = dstar_n(&a, &b, 3)?;
    println!("grid block distance: {d}");
    let (feasible, _witness) = alpha_good_joining(&a, &b, 3, &rat(1, 3))?;
    println!("1/3-good joining exists: {feasible}");

    // Hausdorff distance between the sets of short-cycle orbit measures of
    // two shifts.
    let gm = LabeledGraph::golden_mean();
    let full = LabeledGraph::full_shift(dbarlab::words::Alphabet::binary());
    let set1 = cycle_measures(&gm, 4, 3, 100_000)?;
    let set2 = cycle_measures(&full, 4, 3, 100_000)?;
    let h = hausdorff_dbar_n(&set1, &set2, 3)?;
    println!(
        "Hausdorff distance between cycle-measure sets ({} vs {}): {h}",
        set1.len(),
        set2.len()
    );
    Ok(())
}
