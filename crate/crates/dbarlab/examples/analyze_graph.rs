//! Structural analysis of labeled graph presentations: connectivity,
//! period, safe symbols, mixing, language growth, and entropy bounds.

use dbarlab::io::{graph_to_dot, graph_to_json_string};
use dbarlab::{LabeledGraph, SoficShift};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graph = LabeledGraph::golden_mean();
    let shift = SoficShift::new(graph)?;

    println!("golden mean shift");
    println!("  strongly connected: {}", shift.strongly_connected());
    println!("  period:             {}", shift.period());
    println!("  mixing:             {}", shift.is_mixing_presentation());
    println!("  safe symbols:       {:?}", shift.safe_symbols());

    for n in 1..=8 {
        let count = shift.language(n, 100_000)?.len();
        println!("  |L_{n}| = {count}");
    }

    let (lower, upper) = shift.presentation().entropy_bounds(12, 1_000_000)?;
    println!("  entropy in [{lower:.6}, {upper:.6}] (log golden ratio = 0.481212)");

    println!("\nJSON export:\n{}", graph_to_json_string(shift.presentation()));
    println!("DOT export:\n{}", graph_to_dot(shift.presentation()));
    Ok(())
}
