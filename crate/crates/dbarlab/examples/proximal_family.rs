//! The hereditary gap-graph family: level graphs with a safe symbol, their
//! mixing couplings, non-inclusion witnesses between consecutive levels,
//! and the zeroing shadow that pushes a point one level deeper with small
//! change density.

use dbarlab::constructions::proximal::{
    level_accepts, proximal_graph, proximal_intersection, proximal_noninclusion_witnesses,
    proximal_random_point, proximal_zeroing_shadow, ProximalParams,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = ProximalParams::defaults();

    for n in 1..=2 {
        let g = proximal_graph(&params, n)?;
        println!(
            "level {n}: {} vertices, {} edges, period {}, safe symbols {:?}",
            g.vertex_count(),
            g.edges().len(),
            g.period()?,
            g.safe_symbols()
        );
        let inter = proximal_intersection(&params, n, 1_000_000)?;
        println!(
            "  intersection of levels 1..={n}: connected={}, period={}",
            inter.strongly_connected(),
            inter.period()
        );
        let (deeper, shallower) = proximal_noninclusion_witnesses(&params, n)?;
        println!(
            "  witness lengths: in level {} not {n}: {}; in {n} not {}: {}",
            n + 1,
            deeper.len(),
            n + 1,
            shallower.len()
        );
    }

    // Zero out the next level's forbidden windows from a random point.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let x = proximal_random_point(&params, 1, 100_000, 1_000_000, &mut rng)?;
    let shadow = proximal_zeroing_shadow(&params, 1, &x, 0)?;
    println!(
        "shadow of a level-1 point of length {}: changed {} positions, density {} <= {}",
        x.len(),
        shadow.changed,
        shadow.density,
        shadow.bound
    );
    assert!(shadow.bound_holds);
    assert!(level_accepts(&params, 2, &shadow.y));
    println!("shadow verified in level 2");
    Ok(())
}
