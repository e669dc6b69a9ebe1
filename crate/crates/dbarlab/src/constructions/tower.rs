//! A tower of periodic words `V_0, V_1, ...` built by
//! `V_{k+1} = V_k^{a_{k+1}} W_{k+1} 1^{b_{k+1}}`, where `b_{k+1}` pads
//! `W_{k+1}` to a multiple of `|V_k|` and `a_{k+1}` is minimal with the
//! non-`V_k` fraction of `V_{k+1}` below `δ_{k+1}`.
//!
//! The verifier certifies, in exact arithmetic, that consecutive periodic
//! points are `δ`-close in d-bar and that every enumerated word keeps a
//! guaranteed cylinder mass at every deeper level.

use num::{One, Zero};
use thiserror::Error;

use crate::measures::BlockDistribution;
use crate::words::{dbar_up, rat_usize, Alphabet, Rational, Symbol, UpPoint, Word};

/// Hard cap on the length of a built level word.
pub const TOWER_LENGTH_CAP: usize = 10_000_000;

#[derive(Debug, Error)]
pub enum TowerError {
    #[error("need at least {0} enumerated words, got {1}")]
    TooFewWords(usize, usize),
    #[error("need at least {0} deltas, got {1}")]
    TooFewDeltas(usize, usize),
    #[error("enumerated words must be nonempty")]
    EmptyWord,
    #[error("deltas must be positive with sum below 1/2, got sum {0}")]
    DeltaSum(Rational),
    #[error("d-bar bound fails at level {k}: distance {lhs} > delta {rhs}")]
    DbarBound { k: usize, lhs: Rational, rhs: Rational },
    #[error("cylinder bound fails for word {k} at level {n}: mass {lhs} < bound {rhs}")]
    CylinderBound { k: usize, n: usize, lhs: Rational, rhs: Rational },
}

/// Enumerated building blocks `W_0, W_1, ...` and the tolerance sequence
/// `δ_1, δ_2, ...` (with `Σ δ_k < 1/2`).
#[derive(Debug, Clone)]
pub struct TowerParams {
    pub words: Vec<Word>,
    pub deltas: Vec<Rational>,
}

impl TowerParams {
    pub fn new(words: Vec<Word>, deltas: Vec<Rational>) -> Result<Self, TowerError> {
        if words.iter().any(Word::is_empty) {
            return Err(TowerError::EmptyWord);
        }
        let sum: Rational = deltas.iter().sum();
        if deltas.iter().any(|d| d <= &Rational::zero()) || sum >= rat_usize(1, 2) {
            return Err(TowerError::DeltaSum(sum));
        }
        Ok(TowerParams { words, deltas })
    }
}

/// The first `count` nonempty words over `alphabet` in length-then-
/// lexicographic order: 0, 1, 00, 01, 10, 11, 000, ...
pub fn canonical_enumeration(alphabet: Alphabet, count: usize) -> Vec<Word> {
    let base = alphabet.size();
    let mut out = Vec::with_capacity(count);
    let mut len = 1usize;
    'outer: loop {
        let total = base.checked_pow(len as u32).expect("enumeration overflow");
        for idx in 0..total {
            if out.len() == count {
                break 'outer;
            }
            let mut symbols = vec![0 as Symbol; len];
            let mut rem = idx;
            for pos in (0..len).rev() {
                symbols[pos] = (rem % base) as Symbol;
                rem /= base;
            }
            out.push(Word::new(symbols));
        }
        len += 1;
    }
    out
}

/// One built level: the word `V_k` and the parameters that produced it
/// (`a_0`/`b_0` are 0 for the base level `V_0 = W_0`).
#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub v: Word,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone)]
pub struct Tower {
    pub params: TowerParams,
    pub levels: Vec<TowerLevel>,
    /// True when the length cap stopped the build before the requested depth.
    pub truncated: bool,
}

/// Builds levels `V_0..V_K`: `b_{k+1}` is the least padding making
/// `|W_{k+1}| + b` a multiple of `|V_k|`, and `a_{k+1}` is the least
/// repetition count with `(|W_{k+1}| + b_{k+1}) / |V_{k+1}| < δ_{k+1}`.
/// Exceeding the length cap returns the levels built so far with
/// `truncated` set.
pub fn tower_build(params: &TowerParams, depth: usize) -> Result<Tower, TowerError> {
    if params.words.len() < depth + 1 {
        return Err(TowerError::TooFewWords(depth + 1, params.words.len()));
    }
    if params.deltas.len() < depth {
        return Err(TowerError::TooFewDeltas(depth, params.deltas.len()));
    }
    let mut levels = vec![TowerLevel { v: params.words[0].clone(), a: 0, b: 0 }];
    let mut truncated = false;
    for k in 1..=depth {
        let prev = &levels[k - 1].v;
        let w = &params.words[k];
        let delta = &params.deltas[k - 1];
        let b = (prev.len() - w.len() % prev.len()) % prev.len();
        let tail = w.len() + b;
        // Least a >= 1 with tail / (a |V_{k-1}| + tail) < delta, i.e.
        // a > (tail/delta - tail) / |V_{k-1}|.
        let threshold =
            (rat_usize(tail, 1) / delta - rat_usize(tail, 1)) / rat_usize(prev.len(), 1);
        let a = (threshold.floor().to_integer() + 1u32).max(num::BigInt::from(1u32));
        let len = a.clone() * num::BigInt::from(prev.len()) + num::BigInt::from(tail);
        if len > num::BigInt::from(TOWER_LENGTH_CAP) {
            truncated = true;
            break;
        }
        let a = num::ToPrimitive::to_usize(&a).expect("under cap");
        let len = num::ToPrimitive::to_usize(&len).expect("under cap");
        debug_assert!(rat_usize(tail, len) < *delta);
        debug_assert!(a == 1 || rat_usize(tail, (a - 1) * prev.len() + tail) >= *delta);
        let ones = Word::new(vec![1 as Symbol; b]);
        let v = prev.repeat(a).concat(w).concat(&ones);
        debug_assert_eq!(v.len(), len);
        levels.push(TowerLevel { v, a, b });
    }
    Ok(Tower { params: params.clone(), levels, truncated })
}

/// One verified inequality, with both exact sides.
#[derive(Debug, Clone)]
pub struct TowerCheck {
    pub label: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone)]
pub struct TowerReport {
    /// d-bar distances dbar(V_k^∞, V_{k+1}^∞) <= δ_{k+1}.
    pub dbar_checks: Vec<TowerCheck>,
    /// Cylinder masses from_periodic(V_n)[W_k] >= (1/|V_k|) Π (1 - δ_j).
    pub cylinder_checks: Vec<TowerCheck>,
    /// Partial sums Σ_{j<=k} δ_j of the tolerance series.
    pub delta_partial_sums: Vec<Rational>,
}

/// Verifies the two quantitative guarantees of a built tower exactly, and
/// fails identifying the first violated bound.
pub fn tower_verify(tower: &Tower) -> Result<TowerReport, TowerError> {
    let depth = tower.levels.len() - 1;
    let mut dbar_checks = Vec::new();
    for k in 0..depth {
        let x = UpPoint::periodic(tower.levels[k].v.clone()).expect("nonempty level");
        let y = UpPoint::periodic(tower.levels[k + 1].v.clone()).expect("nonempty level");
        let lhs = dbar_up(&x, &y);
        let rhs = tower.params.deltas[k].clone();
        if lhs > rhs {
            return Err(TowerError::DbarBound { k, lhs, rhs });
        }
        dbar_checks.push(TowerCheck {
            label: format!("dbar(V_{k}^inf, V_{}^inf) <= delta_{}", k + 1, k + 1),
            lhs,
            rhs,
        });
    }

    let mut cylinder_checks = Vec::new();
    for n in 1..=depth {
        for k in 0..n {
            let w = &tower.params.words[k];
            let mu = BlockDistribution::from_periodic(&tower.levels[n].v, w.len())
                .expect("valid level");
            let lhs = mu.prob(w);
            let mut rhs = rat_usize(1, tower.levels[k].v.len());
            for j in (k + 1)..=n {
                rhs *= Rational::one() - tower.params.deltas[j - 1].clone();
            }
            if lhs < rhs {
                return Err(TowerError::CylinderBound { k, n, lhs, rhs });
            }
            cylinder_checks.push(TowerCheck {
                label: format!("mu_{n}[W_{k}] >= (1/|V_{k}|) prod_(j={}..{n}) (1-delta_j)", k + 1),
                lhs,
                rhs,
            });
        }
    }

    let mut delta_partial_sums = Vec::new();
    let mut acc = Rational::zero();
    for d in &tower.params.deltas {
        acc += d.clone();
        delta_partial_sums.push(acc.clone());
    }
    Ok(TowerReport { dbar_checks, cylinder_checks, delta_partial_sums })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::rat;

    fn demo_params(depth: usize) -> TowerParams {
        let words = canonical_enumeration(Alphabet::binary(), depth + 1);
        let deltas: Vec<Rational> = (1..=depth).map(|k| rat(1, 4i64.pow(k as u32))).collect();
        TowerParams::new(words, deltas).unwrap()
    }

    #[test]
    fn canonical_enumeration_order() {
        let words: Vec<String> = canonical_enumeration(Alphabet::binary(), 7)
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["0", "1", "00", "01", "10", "11", "000"]);
    }

    #[test]
    fn params_validation() {
        assert!(TowerParams::new(vec![Word::empty()], vec![]).is_err());
        let w = canonical_enumeration(Alphabet::binary(), 3);
        assert!(TowerParams::new(w.clone(), vec![rat(1, 4), rat(1, 3)]).is_err());
        assert!(TowerParams::new(w.clone(), vec![rat(1, 4), rat(0, 1)]).is_err());
        assert!(TowerParams::new(w, vec![rat(1, 4), rat(1, 16)]).is_ok());
    }

    #[test]
    fn build_demo_depth_three() {
        let tower = tower_build(&demo_params(3), 3).unwrap();
        assert!(!tower.truncated);
        assert_eq!(tower.levels[0].v.to_string(), "0");
        assert_eq!(tower.levels[1].v.to_string(), "00001");
        assert_eq!((tower.levels[1].a, tower.levels[1].b), (4, 0));
        assert_eq!(tower.levels[2].v.len(), 85);
        assert_eq!((tower.levels[2].a, tower.levels[2].b), (16, 3));
        assert_eq!(tower.levels[3].v.len(), 5525);
        assert_eq!((tower.levels[3].a, tower.levels[3].b), (64, 83));
        // Forced by the b-condition: each level length divides the next.
        for k in 0..3 {
            assert_eq!(tower.levels[k + 1].v.len() % tower.levels[k].v.len(), 0);
        }
        // Independent recheck of minimality of every a_k.
        for k in 1..=3 {
            let lvl = &tower.levels[k];
            let prev_len = tower.levels[k - 1].v.len();
            let tail = demo_params(3).words[k].len() + lvl.b;
            let delta = &demo_params(3).deltas[k - 1];
            assert!(rat_usize(tail, lvl.a * prev_len + tail) < *delta);
            if lvl.a > 1 {
                assert!(rat_usize(tail, (lvl.a - 1) * prev_len + tail) >= *delta);
            }
        }
    }

    #[test]
    fn verify_demo_depth_three() {
        let tower = tower_build(&demo_params(3), 3).unwrap();
        let report = tower_verify(&tower).unwrap();
        assert_eq!(report.dbar_checks.len(), 3);
        assert_eq!(report.cylinder_checks.len(), 1 + 2 + 3);
        // V_1 = 00001 differs from 0^inf in 1 of 5 positions; V_2 = V_1^16 00 111
        // differs from V_1^17 in exactly 2 of 85 positions.
        assert_eq!(report.dbar_checks[0].lhs, rat(1, 5));
        assert_eq!(report.dbar_checks[1].lhs, rat(2, 85));
        assert_eq!(report.delta_partial_sums[2], rat(1, 4) + rat(1, 16) + rat(1, 64));
    }

    #[test]
    fn verify_depth_one_trivial() {
        let tower = tower_build(&demo_params(1), 1).unwrap();
        let report = tower_verify(&tower).unwrap();
        assert_eq!(report.dbar_checks.len(), 1);
        assert_eq!(report.cylinder_checks.len(), 1);
    }

    #[test]
    fn verify_rejects_corrupted_level() {
        let mut tower = tower_build(&demo_params(3), 3).unwrap();
        let mut symbols = tower.levels[2].v.symbols().to_vec();
        symbols[0] ^= 1;
        tower.levels[2].v = Word::new(symbols);
        assert!(matches!(
            tower_verify(&tower),
            Err(TowerError::DbarBound { .. } | TowerError::CylinderBound { .. })
        ));
    }

    #[test]
    fn cylinder_mass_matches_direct_count() {
        let tower = tower_build(&demo_params(2), 2).unwrap();
        let v2 = &tower.levels[2].v;
        // Occurrences of "1" in the cyclic word V_2 = (00001)^16 00 111.
        let ones = v2.symbols().iter().filter(|&&s| s == 1).count();
        assert_eq!(ones, 19);
        let mu = BlockDistribution::from_periodic(v2, 1).unwrap();
        assert_eq!(mu.prob(&"1".parse().unwrap()), rat_usize(19, 85));
    }

    #[test]
    fn cap_truncates_build() {
        // Huge W_1 padding forces |V_1| over the cap by delta smallness.
        let words = canonical_enumeration(Alphabet::binary(), 3);
        let params = TowerParams::new(words, vec![rat(1, 100_000_000), rat(1, 16)]).unwrap();
        let tower = tower_build(&params, 2).unwrap();
        assert!(tower.truncated);
        assert_eq!(tower.levels.len(), 1);
    }
}
