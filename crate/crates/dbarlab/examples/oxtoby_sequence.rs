//! The layered parity sequence on a divisibility scale: generate a prefix,
//! count window hits per layer exactly, and verify the majority-frequency
//! and transport bounds when the scale grows fast enough.

use dbarlab::constructions::oxtoby::{
    oxtoby_prefix, oxtoby_verify, oxtoby_window_counts, OxtobyScale,
};
use dbarlab::words::rat;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let small = OxtobyScale::new(vec![1, 4, 16, 64])?;
    let prefix = oxtoby_prefix(&small, 16)?;
    println!("scale (1,4,16,64), first 16 symbols: {prefix}");
    for k in 1..=2 {
        for l in 1..=k {
            println!(
                "  positions of layer {l} in a window of length p_{}: {}",
                k + 1,
                oxtoby_window_counts(&small, l, k)?
            );
        }
    }

    // The slow scale fails the tail condition at delta = 1/10.
    match oxtoby_verify(&small, &rat(1, 10), 2) {
        Err(e) => println!("slow scale rejected: {e}"),
        Ok(_) => unreachable!("ratio-4 scale cannot satisfy delta = 1/10"),
    }

    // A ratio-100 scale passes with room to spare.
    let fast = OxtobyScale::geometric(100, 3)?;
    let report = oxtoby_verify(&fast, &rat(1, 10), 2)?;
    println!(
        "scale (1,100,10^4,10^6): tail sum {} < 1/10",
        report.scale_condition_sum
    );
    for row in &report.rows {
        println!(
            "  horizon {}: majority symbol {} with frequency {} >= {}, transport to majority {} < 1/10",
            row.horizon,
            row.majority_symbol,
            row.majority_freq,
            row.majority_lower_bound,
            row.transport_to_majority,
        );
    }
    println!("all bounds hold: {}", report.all_bounds_hold);
    Ok(())
}
