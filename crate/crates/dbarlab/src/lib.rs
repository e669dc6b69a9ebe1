//! A toolkit for computable symbolic dynamics: finite words and ultimately
//! periodic points with exact d-bar and frequency arithmetic, sofic shifts
//! presented by labeled multigraphs, Rauzy graphs and Markov approximations,
//! finite-horizon Hausdorff-Hamming metrics, block-distribution transportation
//! distances, maximum word frequencies via max-mean cycles, and generators plus
//! quantitative verifiers for several explicit shift-space constructions
//! (Oxtoby sequences, a periodic tower, a proximal hereditary family, and a
//! minimal coded system).
//!
//! All distances and verified bounds are exact rationals; floating point only
//! appears in report rendering (entropy estimates).
//!
//! See the `examples/` directory for one runnable example per major
//! capability, and the thin `dbarlab` binary for a JSON-reporting CLI.

pub mod words;
pub mod sofic;
pub mod markov;
pub mod metrics;
pub mod measures;
pub mod spectra;
pub mod constructions;
pub mod io;

pub use words::{Alphabet, Rational, UpPoint, Word};
pub use sofic::{LabeledGraph, SoficShift};
