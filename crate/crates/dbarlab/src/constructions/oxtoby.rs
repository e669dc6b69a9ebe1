//! Oxtoby sequences over a nested arithmetic-progression scale.
//!
//! A scale is an increasing sequence `p_0 = 1 | p_1 | p_2 | ...` with
//! `p_{k+1}/p_k >= 3`.  Position `i` belongs to the layer
//! `M_k = ([-p_k, p_k) + p_{k+1} N_0) ∩ N_0`, decided arithmetically by
//! `(i mod p_{k+1}) ∈ [0, p_k) ∪ [p_{k+1} - p_k, p_{k+1})`, and the sequence
//! reads `x_i = k(i) mod 2` for the least such layer `k(i) >= 1`.  The
//! verifier certifies, at the horizons `p_{k+1}`, that the prefix is
//! overwhelmingly constant and far (in mismatch density) from the fixed
//! point of the opposite parity.

use num::{One, Zero};
use thiserror::Error;

use crate::words::{rat_usize, Rational, Symbol, Word};

/// Hard cap on materialized prefix length.
pub const OXTOBY_PREFIX_CAP: usize = 10_000_000;

#[derive(Debug, Error)]
pub enum OxtobyError {
    #[error("scale must start with p_0 = 1")]
    BadStart,
    #[error("scale must be increasing with p_k | p_{{k+1}} and ratio >= 3 (index {0})")]
    BadRatio(usize),
    #[error("scale must have at least two entries")]
    TooShort,
    #[error("prefix length {0} exceeds the cap of {1}")]
    PrefixCap(usize, usize),
    #[error("position {0} is not covered by any layer of the supplied scale")]
    Uncovered(usize),
    #[error("layer indices must satisfy 1 <= l <= k <= {0}")]
    LayerRange(usize),
    #[error("scale condition fails: partial sum of 2 p_k / p_{{k+1}} is {sum} >= delta = {delta}")]
    ScaleCondition { sum: Rational, delta: Rational },
    #[error("verification horizon k = {0} needs scale entries up to p_{{k+1}}")]
    HorizonRange(usize),
}

/// A finite increasing scale `p_0 = 1, p_1, ...` with divisibility and
/// ratio-at-least-3 between consecutive entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OxtobyScale {
    p: Vec<u64>,
}

impl OxtobyScale {
    pub fn new(p: Vec<u64>) -> Result<Self, OxtobyError> {
        if p.len() < 2 {
            return Err(OxtobyError::TooShort);
        }
        if p[0] != 1 {
            return Err(OxtobyError::BadStart);
        }
        for i in 1..p.len() {
            if p[i] % p[i - 1] != 0 || p[i] / p[i - 1] < 3 {
                return Err(OxtobyError::BadRatio(i));
            }
        }
        Ok(OxtobyScale { p })
    }

    /// Powers of a single ratio: `p_k = r^k` for `k = 0..=depth`.
    pub fn geometric(ratio: u64, depth: usize) -> Result<Self, OxtobyError> {
        let mut p = Vec::with_capacity(depth + 1);
        let mut v = 1u64;
        for _ in 0..=depth {
            p.push(v);
            v = v.saturating_mul(ratio);
        }
        OxtobyScale::new(p)
    }

    pub fn entries(&self) -> &[u64] {
        &self.p
    }

    /// Largest layer index `k` for which `M_k` is defined (needs `p_{k+1}`).
    pub fn max_layer(&self) -> usize {
        self.p.len() - 2
    }

    /// Whether `i` belongs to layer `M_k`.
    pub fn in_layer(&self, i: u64, k: usize) -> bool {
        let pk = self.p[k];
        let pk1 = self.p[k + 1];
        let r = i % pk1;
        r < pk || r >= pk1 - pk
    }

    /// Least layer containing `i` among `1..=max`, or `None`.
    fn least_layer(&self, i: u64, max: usize) -> Option<usize> {
        (1..=max).find(|&k| self.in_layer(i, k))
    }
}

/// The length-`n` prefix of the Oxtoby sequence `x_i = k(i) mod 2`.
///
/// Every position must be covered by a layer of the supplied finite scale;
/// positions at or beyond `p_{last-1}` may fall between layers, in which
/// case the scale is too short for the requested length.
pub fn oxtoby_prefix(scale: &OxtobyScale, n: usize) -> Result<Word, OxtobyError> {
    if n > OXTOBY_PREFIX_CAP {
        return Err(OxtobyError::PrefixCap(n, OXTOBY_PREFIX_CAP));
    }
    let max = scale.max_layer();
    let mut symbols = Vec::with_capacity(n);
    for i in 0..n {
        let k = scale
            .least_layer(i as u64, max)
            .ok_or(OxtobyError::Uncovered(i))?;
        symbols.push((k % 2) as Symbol);
    }
    Ok(Word::new(symbols))
}

/// `|M_l ∩ [0, p_{k+1})|` in closed form: `2 p_l p_{k+1} / p_{l+1}`.
pub fn oxtoby_window_counts(scale: &OxtobyScale, l: usize, k: usize) -> Result<u64, OxtobyError> {
    let max = scale.max_layer();
    if l < 1 || l > k || k > max {
        return Err(OxtobyError::LayerRange(max));
    }
    // One period of M_l inside [0, p_{l+1}) has 2 p_l members and p_{l+1}
    // divides p_{k+1}.
    Ok(2 * scale.p[l] * (scale.p[k + 1] / scale.p[l + 1]))
}

/// Per-horizon row of an Oxtoby verification report.
#[derive(Debug, Clone)]
pub struct OxtobyHorizonRow {
    /// Layer index `k`; the horizon is `p_{k+1}`.
    pub k: usize,
    pub horizon: u64,
    /// The symbol `(k+1) mod 2` carried by every position left uncovered by
    /// layers `1..=k`.
    pub majority_symbol: Symbol,
    /// Exact frequency of the majority symbol on `[0, p_{k+1})`.
    pub majority_freq: Rational,
    /// Certified lower bound `1 - Σ_{l<=k} |M_l ∩ [0,p_{k+1})| / p_{k+1}`.
    pub majority_lower_bound: Rational,
    /// Exact mismatch densities of the prefix against `0^∞` and `1^∞`.
    pub mismatch_vs_zero: Rational,
    pub mismatch_vs_one: Rational,
    /// Mismatch density against the minority fixed point, required > 1 - δ.
    pub minority_mismatch: Rational,
    /// Transport distance (level 1) from the prefix-empirical distribution
    /// to the point mass at the majority fixed point, required < δ.
    pub transport_to_majority: Rational,
}

/// Report of `oxtoby_verify`: the scale condition partial sum and one row
/// per horizon `p_2, ..., p_{k+1}`.
#[derive(Debug, Clone)]
pub struct OxtobyReport {
    pub delta: Rational,
    /// Partial sum `Σ 2 p_l / p_{l+1}` over the supplied scale.
    pub scale_condition_sum: Rational,
    pub rows: Vec<OxtobyHorizonRow>,
    /// Whether every row passed both the `> 1 - δ` and `< δ` checks.
    pub all_bounds_hold: bool,
}

/// Verifies the quantitative skeleton of the Oxtoby construction at the
/// horizons `p_2, ..., p_{k+1}`: the prefix is within transport distance
/// `< δ` of one fixed point and at mismatch density `> 1 - δ` from the
/// other, with the parity alternating between consecutive horizons.
pub fn oxtoby_verify(
    scale: &OxtobyScale,
    delta: &Rational,
    k: usize,
) -> Result<OxtobyReport, OxtobyError> {
    if k < 1 || k > scale.max_layer() {
        return Err(OxtobyError::HorizonRange(k));
    }
    let mut sum = Rational::zero();
    for l in 1..scale.p.len() {
        sum += rat_usize(2 * scale.p[l - 1] as usize, scale.p[l] as usize);
    }
    if &sum >= delta {
        return Err(OxtobyError::ScaleCondition { sum, delta: delta.clone() });
    }

    let mut rows = Vec::new();
    let mut all_hold = true;
    for kk in 1..=k {
        let horizon = scale.p[kk + 1];
        // Positions of [0, p_{k+1}) not covered by layers 1..=kk carry the
        // symbol (kk+1) mod 2: they lie in M_{kk+1} under any valid
        // extension of the scale, since i < p_{kk+1}.
        let mut ones = 0u64;
        for i in 0..horizon {
            let layer = scale.least_layer(i, kk).unwrap_or(kk + 1);
            ones += (layer % 2) as u64;
        }
        let zeros = horizon - ones;
        let majority_symbol = ((kk + 1) % 2) as Symbol;
        let majority_count = if majority_symbol == 1 { ones } else { zeros };
        let majority_freq = rat_usize(majority_count as usize, horizon as usize);
        let mut covered = Rational::zero();
        for l in 1..=kk {
            covered += rat_usize(
                oxtoby_window_counts(scale, l, kk)? as usize,
                horizon as usize,
            );
        }
        let majority_lower_bound = Rational::one() - covered;
        let mismatch_vs_zero = rat_usize(ones as usize, horizon as usize);
        let mismatch_vs_one = rat_usize(zeros as usize, horizon as usize);
        let minority_mismatch = if majority_symbol == 1 {
            mismatch_vs_zero.clone()
        } else {
            mismatch_vs_one.clone()
        };
        // Level-1 transport to a point mass moves exactly the mass the
        // empirical distribution puts on the other symbol.
        let transport_to_majority = Rational::one() - majority_freq.clone();
        let threshold = Rational::one() - delta.clone();
        if minority_mismatch <= threshold || &transport_to_majority >= delta {
            all_hold = false;
        }
        rows.push(OxtobyHorizonRow {
            k: kk,
            horizon,
            majority_symbol,
            majority_freq,
            majority_lower_bound,
            mismatch_vs_zero,
            mismatch_vs_one,
            minority_mismatch,
            transport_to_majority,
        });
    }
    Ok(OxtobyReport {
        delta: delta.clone(),
        scale_condition_sum: sum,
        rows,
        all_bounds_hold: all_hold,
    })
}
