//! Finite block distributions standing in for invariant measures, exact
//! n-block transportation (joining) distances, alpha-good joining
//! feasibility, and Hausdorff distances between finite sets of measures.
//!
//! Everything is a finite-level distribution with exact rational
//! probabilities; the level is always carried in outputs. The true Ornstein
//! distance (an infimum over shift-invariant joinings) is never computed,
//! only its finite-level transportation surrogate.

use std::collections::BTreeMap;

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use crate::sofic::LabeledGraph;
use crate::words::{rat_usize, Rational, Word};

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("probabilities must be nonnegative (word {0})")]
    Negative(Word),
    #[error("probabilities sum to {0}, expected 1")]
    BadTotal(String),
    #[error("distribution is not shift-consistent at word {0}")]
    Inconsistent(Word),
    #[error("level must be >= 1")]
    ZeroLevel,
    #[error("all words must have length equal to the level {level}, found {word}")]
    BadWordLength { level: usize, word: Word },
    #[error("requested level {requested} not available (have {available})")]
    LevelUnavailable { requested: usize, available: usize },
    #[error("empty set of distributions")]
    EmptySet,
    #[error("cycle enumeration exceeded cap of {0}")]
    CycleCap(usize),
    #[error("nonempty word required")]
    EmptyWord,
}

/// A level-`k` stationary cylinder distribution: exact rational probabilities
/// on length-`k` words, nonnegative, summing to 1, and shift-consistent
/// (prefix and suffix marginals agree), which is the finite-level trace of
/// sigma-invariance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDistribution {
    level: usize,
    probs: BTreeMap<Word, Rational>,
}

impl BlockDistribution {
    pub fn new(level: usize, probs: BTreeMap<Word, Rational>) -> Result<Self, MeasureError> {
        if level == 0 {
            return Err(MeasureError::ZeroLevel);
        }
        let mut total = Rational::zero();
        for (w, p) in &probs {
            if w.len() != level {
                return Err(MeasureError::BadWordLength {
                    level,
                    word: w.clone(),
                });
            }
            if p.is_negative() {
                return Err(MeasureError::Negative(w.clone()));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(MeasureError::BadTotal(total.to_string()));
        }
        let dist = BlockDistribution { level, probs };
        dist.check_consistency()?;
        Ok(dist)
    }

    fn check_consistency(&self) -> Result<(), MeasureError> {
        if self.level == 1 {
            return Ok(());
        }
        let mut prefix: BTreeMap<Word, Rational> = BTreeMap::new();
        let mut suffix: BTreeMap<Word, Rational> = BTreeMap::new();
        for (w, p) in &self.probs {
            if p.is_zero() {
                continue;
            }
            *prefix
                .entry(w.slice(0, self.level - 1))
                .or_insert_with(Rational::zero) += p;
            *suffix
                .entry(w.slice(1, self.level))
                .or_insert_with(Rational::zero) += p;
        }
        for (w, p) in &prefix {
            if suffix.get(w).map(|q| q == p) != Some(true) {
                return Err(MeasureError::Inconsistent(w.clone()));
            }
        }
        for (w, q) in &suffix {
            if prefix.get(w).map(|p| p == q) != Some(true) {
                return Err(MeasureError::Inconsistent(w.clone()));
            }
        }
        Ok(())
    }

    /// The periodic-orbit measure of `V^inf` at level `k`: cyclic occurrence
    /// counts of each `k`-word in one period, divided by `|V|`.
    pub fn from_periodic(period: &Word, level: usize) -> Result<Self, MeasureError> {
        if period.is_empty() {
            return Err(MeasureError::EmptyWord);
        }
        if level == 0 {
            return Err(MeasureError::ZeroLevel);
        }
        let n = period.len();
        // Read one period cyclically: V followed by its first level-1 symbols.
        let mut ext = period.symbols().to_vec();
        for i in 0..level.saturating_sub(1) {
            ext.push(period.symbols()[i % n]);
        }
        let mut probs: BTreeMap<Word, Rational> = BTreeMap::new();
        for j in 0..n {
            let w = Word::new(ext[j..j + level].to_vec());
            *probs.entry(w).or_insert_with(Rational::zero) += rat_usize(1, n);
        }
        BlockDistribution::new(level, probs)
    }

    /// Point mass at `w^inf` restricted to its own cylinder; convenience for
    /// fixed points.
    pub fn point_mass(word: &Word) -> Result<Self, MeasureError> {
        Self::from_periodic(word, word.len())
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn prob(&self, w: &Word) -> Rational {
        self.probs.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.probs.iter().filter(|(_, p)| !p.is_zero()).map(|(w, _)| w)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.probs.iter()
    }

    /// Marginal distribution at a lower level `j <= k` (prefix sums; the
    /// consistency invariant makes prefix and suffix marginals agree).
    pub fn marginalize(&self, j: usize) -> Result<BlockDistribution, MeasureError> {
        if j == 0 {
            return Err(MeasureError::ZeroLevel);
        }
        if j > self.level {
            return Err(MeasureError::LevelUnavailable {
                requested: j,
                available: self.level,
            });
        }
        if j == self.level {
            return Ok(self.clone());
        }
        let mut probs: BTreeMap<Word, Rational> = BTreeMap::new();
        for (w, p) in &self.probs {
            if p.is_zero() {
                continue;
            }
            *probs.entry(w.slice(0, j)).or_insert_with(Rational::zero) += p;
        }
        BlockDistribution::new(j, probs)
    }
}

/// A level-`n` joining: a nonnegative matrix on pairs of `n`-words with
/// prescribed row and column marginals.
#[derive(Debug, Clone)]
pub struct Joining {
    level: usize,
    entries: BTreeMap<(Word, Word), Rational>,
}

impl Joining {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Word, Word), &Rational)> {
        self.entries.iter()
    }

    pub fn mass(&self, u: &Word, w: &Word) -> Rational {
        self.entries
            .get(&(u.clone(), w.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn row_marginals(&self) -> BTreeMap<Word, Rational> {
        let mut out: BTreeMap<Word, Rational> = BTreeMap::new();
        for ((u, _), p) in &self.entries {
            *out.entry(u.clone()).or_insert_with(Rational::zero) += p;
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn col_marginals(&self) -> BTreeMap<Word, Rational> {
        let mut out: BTreeMap<Word, Rational> = BTreeMap::new();
        for ((_, w), p) in &self.entries {
            *out.entry(w.clone()).or_insert_with(Rational::zero) += p;
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Exact marginal verification against the joined distributions.
    pub fn check_marginals(
        &self,
        mu: &BlockDistribution,
        nu: &BlockDistribution,
    ) -> bool {
        let rows = self.row_marginals();
        let cols = self.col_marginals();
        let mu_support: BTreeMap<Word, Rational> = mu
            .support()
            .map(|w| (w.clone(), mu.prob(w)))
            .collect();
        let nu_support: BTreeMap<Word, Rational> = nu
            .support()
            .map(|w| (w.clone(), nu.prob(w)))
            .collect();
        rows == mu_support && cols == nu_support
    }

    /// Total mass on pairs with normalized Hamming distance at most `alpha`.
    pub fn mass_within(&self, alpha: &Rational) -> Rational {
        let mut total = Rational::zero();
        for ((u, w), p) in &self.entries {
            if p.is_zero() {
                continue;
            }
            let d = crate::words::hamming_normalized(u, w).expect("equal lengths");
            if &d <= alpha {
                total += p;
            }
        }
        total
    }
}

fn mismatches(u: &Word, w: &Word) -> usize {
    u.symbols()
        .iter()
        .zip(w.symbols())
        .filter(|(a, b)| a != b)
        .count()
}

/// Exact transportation problem on the supports of two level-`n`
/// distributions with integer costs, solved by successive shortest
/// augmenting paths (Bellman-Ford over the bipartite residual graph).
///
/// Returns the optimal total cost (sum of flow times integer cost) and the
/// optimal flow matrix. Sizes here are small (at most a few hundred words a
/// side), so the simple algorithm is exact and fast.
fn solve_transport(
    rows: &[(Word, Rational)],
    cols: &[(Word, Rational)],
    cost: impl Fn(&Word, &Word) -> i64,
) -> (Rational, Vec<Vec<Rational>>) {
    let m = rows.len();
    let k = cols.len();
    let costs: Vec<Vec<i64>> = rows
        .iter()
        .map(|(u, _)| cols.iter().map(|(w, _)| cost(u, w)).collect())
        .collect();
    let mut supply: Vec<Rational> = rows.iter().map(|(_, p)| p.clone()).collect();
    let mut demand: Vec<Rational> = cols.iter().map(|(_, p)| p.clone()).collect();
    let mut flow: Vec<Vec<Rational>> = vec![vec![Rational::zero(); k]; m];

    loop {
        let active_sources: Vec<usize> =
            (0..m).filter(|&i| !supply[i].is_zero()).collect();
        if active_sources.is_empty() {
            break;
        }
        // Bellman-Ford from all active sources simultaneously.
        const INF: i64 = i64::MAX / 4;
        let mut dist_s = vec![INF; m];
        let mut dist_t = vec![INF; k];
        // prev_t[j] = source feeding sink j; prev_s[i] = sink feeding source i
        let mut prev_t = vec![usize::MAX; k];
        let mut prev_s = vec![usize::MAX; m];
        for &i in &active_sources {
            dist_s[i] = 0;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..m {
                if dist_s[i] >= INF {
                    continue;
                }
                for j in 0..k {
                    let nd = dist_s[i] + costs[i][j];
                    if nd < dist_t[j] {
                        dist_t[j] = nd;
                        prev_t[j] = i;
                        changed = true;
                    }
                }
            }
            for j in 0..k {
                if dist_t[j] >= INF {
                    continue;
                }
                for i in 0..m {
                    if !flow[i][j].is_zero() {
                        let nd = dist_t[j] - costs[i][j];
                        if nd < dist_s[i] {
                            dist_s[i] = nd;
                            prev_s[i] = j;
                            changed = true;
                        }
                    }
                }
            }
        }
        let target = (0..k)
            .filter(|&j| !demand[j].is_zero() && dist_t[j] < INF)
            .min_by_key(|&j| dist_t[j])
            .expect("balanced problem always admits an augmenting path");

        // Backtrack the alternating path and find the bottleneck.
        let mut path: Vec<(usize, usize, bool)> = Vec::new(); // (i, j, forward)
        let mut j = target;
        loop {
            let i = prev_t[j];
            path.push((i, j, true));
            if dist_s[i] == 0 && !supply[i].is_zero() && prev_s[i] == usize::MAX {
                break;
            }
            if prev_s[i] == usize::MAX {
                break;
            }
            let back_j = prev_s[i];
            path.push((i, back_j, false));
            j = back_j;
        }
        let (first_i, _, _) = *path.last().unwrap();
        let mut bottleneck = supply[first_i].clone();
        if demand[target] < bottleneck {
            bottleneck = demand[target].clone();
        }
        for (i, j, forward) in &path {
            if !forward && flow[*i][*j] < bottleneck {
                bottleneck = flow[*i][*j].clone();
            }
        }
        for (i, j, forward) in &path {
            if *forward {
                flow[*i][*j] += bottleneck.clone();
            } else {
                flow[*i][*j] -= bottleneck.clone();
            }
        }
        supply[first_i] -= bottleneck.clone();
        demand[target] -= bottleneck;
    }

    let mut total = Rational::zero();
    for i in 0..m {
        for j in 0..k {
            if !flow[i][j].is_zero() {
                total += flow[i][j].clone() * Rational::from(BigInt::from(costs[i][j]));
            }
        }
    }
    (total, flow)
}

fn supports_at_level(
    mu: &BlockDistribution,
    nu: &BlockDistribution,
    n: usize,
) -> Result<(Vec<(Word, Rational)>, Vec<(Word, Rational)>), MeasureError> {
    let mu_n = mu.marginalize(n)?;
    let nu_n = nu.marginalize(n)?;
    let rows: Vec<(Word, Rational)> = mu_n.support().map(|w| (w.clone(), mu_n.prob(w))).collect();
    let cols: Vec<(Word, Rational)> = nu_n.support().map(|w| (w.clone(), nu_n.prob(w))).collect();
    Ok((rows, cols))
}

fn joining_from_flow(
    rows: &[(Word, Rational)],
    cols: &[(Word, Rational)],
    flow: Vec<Vec<Rational>>,
    level: usize,
) -> Joining {
    let mut entries = BTreeMap::new();
    for (i, (u, _)) in rows.iter().enumerate() {
        for (j, (w, _)) in cols.iter().enumerate() {
            if !flow[i][j].is_zero() {
                entries.insert((u.clone(), w.clone()), flow[i][j].clone());
            }
        }
    }
    Joining { level, entries }
}

/// Level-`n` transportation distance: minimum over joinings of the expected
/// normalized Hamming distance, solved exactly. Returns the value and an
/// optimal joining.
pub fn transport_dbar_n(
    mu: &BlockDistribution,
    nu: &BlockDistribution,
    n: usize,
) -> Result<(Rational, Joining), MeasureError> {
    let (rows, cols) = supports_at_level(mu, nu, n)?;
    let (total, flow) = solve_transport(&rows, &cols, |u, w| mismatches(u, w) as i64);
    let value = total / Rational::from(BigInt::from(n as i64));
    Ok((value, joining_from_flow(&rows, &cols, flow, n)))
}

/// Decides whether a joining exists putting mass at least `1 - alpha` on
/// pairs with normalized Hamming distance at most `alpha` (an exact linear
/// feasibility check: minimize mass outside the good set). Returns the
/// witness joining when feasible.
pub fn alpha_good_joining(
    mu: &BlockDistribution,
    nu: &BlockDistribution,
    n: usize,
    alpha: &Rational,
) -> Result<(bool, Option<Joining>), MeasureError> {
    let (rows, cols) = supports_at_level(mu, nu, n)?;
    let n_rat = Rational::from(BigInt::from(n as i64));
    let (outside_mass, flow) = solve_transport(&rows, &cols, |u, w| {
        let d = rat_usize(mismatches(u, w), 1) / n_rat.clone();
        if &d <= alpha {
            0
        } else {
            1
        }
    });
    if &outside_mass <= alpha {
        Ok((true, Some(joining_from_flow(&rows, &cols, flow, n))))
    } else {
        Ok((false, None))
    }
}

/// The least `alpha` on the grid of realizable Hamming values
/// `{0, 1/n, ..., 1}` for which an alpha-good joining exists. This is the
/// "exists a good joining" reading of the block distance; feasibility is
/// monotone in alpha so a linear scan finds the minimum.
pub fn dstar_n(
    mu: &BlockDistribution,
    nu: &BlockDistribution,
    n: usize,
) -> Result<Rational, MeasureError> {
    for a in 0..=n {
        let alpha = rat_usize(a, n);
        if alpha_good_joining(mu, nu, n, &alpha)?.0 {
            return Ok(alpha);
        }
    }
    Ok(Rational::one())
}

/// Hausdorff distance between two finite sets of distributions under the
/// level-`n` transportation distance.
pub fn hausdorff_dbar_n(
    set1: &[BlockDistribution],
    set2: &[BlockDistribution],
    n: usize,
) -> Result<Rational, MeasureError> {
    if set1.is_empty() || set2.is_empty() {
        return Err(MeasureError::EmptySet);
    }
    let mut matrix = vec![vec![Rational::zero(); set2.len()]; set1.len()];
    for (i, mu) in set1.iter().enumerate() {
        for (j, nu) in set2.iter().enumerate() {
            matrix[i][j] = transport_dbar_n(mu, nu, n)?.0;
        }
    }
    let sup1 = (0..set1.len())
        .map(|i| (0..set2.len()).map(|j| matrix[i][j].clone()).min().unwrap())
        .max()
        .unwrap();
    let sup2 = (0..set2.len())
        .map(|j| (0..set1.len()).map(|i| matrix[i][j].clone()).min().unwrap())
        .max()
        .unwrap();
    Ok(sup1.max(sup2))
}

/// Periodic-orbit measures of all simple label-cycles of length at most
/// `max_len`, deduplicated by rotation, each materialized at `level`.
pub fn cycle_measures(
    graph: &LabeledGraph,
    max_len: usize,
    level: usize,
    cap: usize,
) -> Result<Vec<BlockDistribution>, MeasureError> {
    let cycles = graph
        .simple_label_cycles(max_len, cap)
        .map_err(|_| MeasureError::CycleCap(cap))?;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for label in cycles {
        let canon = label.primitive_root().canonical_rotation();
        if seen.insert(canon.clone()) {
            out.push(BlockDistribution::from_periodic(&canon, level)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::rat;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn from_periodic_examples() {
        let d = BlockDistribution::from_periodic(&w("01"), 1).unwrap();
        assert_eq!(d.prob(&w("0")), rat(1, 2));
        assert_eq!(d.prob(&w("1")), rat(1, 2));

        let d = BlockDistribution::from_periodic(&w("0"), 2).unwrap();
        assert_eq!(d.prob(&w("00")), rat(1, 1));

        let d = BlockDistribution::from_periodic(&w("001"), 2).unwrap();
        assert_eq!(d.prob(&w("00")), rat(1, 3));
        assert_eq!(d.prob(&w("01")), rat(1, 3));
        assert_eq!(d.prob(&w("10")), rat(1, 3));
        assert_eq!(d.prob(&w("11")), rat(0, 1));
    }

    #[test]
    fn from_periodic_consistent_exhaustive() {
        // Consistency holds for all binary periods |V| <= 10 at levels <= 4
        // (constructor validates, so success is the assertion). Trimmed to
        // |V| <= 8 for test time.
        for len in 1..=8usize {
            for bits in 0..(1usize << len) {
                let period = Word::new((0..len).map(|k| ((bits >> k) & 1) as u8).collect());
                for level in 1..=4 {
                    BlockDistribution::from_periodic(&period, level).unwrap();
                }
            }
        }
    }

    #[test]
    fn marginalize_identity_and_uniform() {
        let d = BlockDistribution::from_periodic(&w("01"), 2).unwrap();
        assert_eq!(d.marginalize(2).unwrap(), d);
        let m = d.marginalize(1).unwrap();
        assert_eq!(m.prob(&w("0")), rat(1, 2));
        assert_eq!(m.prob(&w("1")), rat(1, 2));
    }

    #[test]
    fn transport_identical_is_zero() {
        let d = BlockDistribution::from_periodic(&w("011"), 3).unwrap();
        let (v, j) = transport_dbar_n(&d, &d, 3).unwrap();
        assert_eq!(v, rat(0, 1));
        assert!(j.check_marginals(&d.marginalize(3).unwrap(), &d.marginalize(3).unwrap()));
    }

    #[test]
    fn transport_opposite_point_masses() {
        for n in 1..=5 {
            let mu = BlockDistribution::from_periodic(&w("0"), n).unwrap();
            let nu = BlockDistribution::from_periodic(&w("1"), n).unwrap();
            let (v, _) = transport_dbar_n(&mu, &nu, n).unwrap();
            assert_eq!(v, rat(1, 1));
        }
    }

    #[test]
    fn transport_alternating_vs_zero_is_half() {
        for n in 1..=6 {
            let mu = BlockDistribution::from_periodic(&w("01"), n.max(2)).unwrap();
            let nu = BlockDistribution::from_periodic(&w("0"), n.max(2)).unwrap();
            let (v, joining) = transport_dbar_n(&mu, &nu, n).unwrap();
            assert_eq!(v, rat(1, 2), "level {n}");
            assert!(joining
                .check_marginals(&mu.marginalize(n).unwrap(), &nu.marginalize(n).unwrap()));
        }
    }

    /// Brute-force minimum over joinings on a discretized flow grid is not
    /// exact, so instead this oracle enumerates vertex solutions of the tiny
    /// transportation polytope via the north-west-corner style recursion on
    /// supports (exact for problems with <= 3 points a side).
    fn brute_force_transport(
        rows: &[(Word, Rational)],
        cols: &[(Word, Rational)],
        n: usize,
    ) -> Rational {
        // Recursive exact search: repeatedly saturate one row/column pair.
        fn go(
            rows: &mut Vec<(Word, Rational)>,
            cols: &mut Vec<(Word, Rational)>,
            n: usize,
        ) -> Rational {
            if rows.is_empty() {
                return Rational::zero();
            }
            let mut best: Option<Rational> = None;
            for i in 0..rows.len() {
                for j in 0..cols.len() {
                    let amount = rows[i].1.clone().min(cols[j].1.clone());
                    if amount.is_zero() {
                        continue;
                    }
                    let cost = rat_usize(mismatches(&rows[i].0, &cols[j].0), n) * amount.clone();
                    let mut r2 = rows.clone();
                    let mut c2 = cols.clone();
                    r2[i].1 -= amount.clone();
                    c2[j].1 -= amount;
                    r2.retain(|(_, p)| !p.is_zero());
                    c2.retain(|(_, p)| !p.is_zero());
                    let sub = cost + go(&mut r2, &mut c2, n);
                    best = Some(match best {
                        None => sub,
                        Some(b) => b.min(sub),
                    });
                }
            }
            best.unwrap_or_else(Rational::zero)
        }
        go(&mut rows.to_vec(), &mut cols.to_vec(), n)
    }

    #[test]
    fn transport_matches_brute_force_small() {
        for n in 1..=3usize {
            let mu = BlockDistribution::from_periodic(&w("01"), 3).unwrap();
            let nu = BlockDistribution::from_periodic(&w("001"), 3).unwrap();
            let (rows, cols) = supports_at_level(&mu, &nu, n).unwrap();
            let expect = brute_force_transport(&rows, &cols, n);
            let (v, _) = transport_dbar_n(&mu, &nu, n).unwrap();
            assert_eq!(v, expect, "level {n}");
        }
    }

    #[test]
    fn alpha_good_basics() {
        let mu = BlockDistribution::from_periodic(&w("010"), 3).unwrap();
        assert!(alpha_good_joining(&mu, &mu, 3, &rat(0, 1)).unwrap().0);

        let p0 = BlockDistribution::from_periodic(&w("0"), 3).unwrap();
        let p1 = BlockDistribution::from_periodic(&w("1"), 3).unwrap();
        assert!(!alpha_good_joining(&p0, &p1, 3, &rat(2, 3)).unwrap().0);
        assert!(alpha_good_joining(&p0, &p1, 3, &rat(1, 1)).unwrap().0);
    }

    #[test]
    fn alpha_good_markov_direction() {
        // transport value < alpha^2 implies an alpha-good joining exists.
        let pairs = [
            (w("01"), w("001")),
            (w("0011"), w("01")),
            (w("0001"), w("0")),
            (w("011"), w("0101")),
        ];
        for (a, b) in pairs {
            for n in 1..=4usize {
                let mu = BlockDistribution::from_periodic(&a, 4).unwrap();
                let nu = BlockDistribution::from_periodic(&b, 4).unwrap();
                let (v, _) = transport_dbar_n(&mu, &nu, n).unwrap();
                for num_a in 1..=n {
                    let alpha = rat_usize(num_a, n);
                    if v < alpha.clone() * alpha.clone() {
                        assert!(
                            alpha_good_joining(&mu, &nu, n, &alpha).unwrap().0,
                            "pair level {n} alpha {alpha}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dstar_basics() {
        let mu = BlockDistribution::from_periodic(&w("01"), 4).unwrap();
        assert_eq!(dstar_n(&mu, &mu, 4).unwrap(), rat(0, 1));
        let p0 = BlockDistribution::from_periodic(&w("0"), 4).unwrap();
        let p1 = BlockDistribution::from_periodic(&w("1"), 4).unwrap();
        assert_eq!(dstar_n(&p0, &p1, 4).unwrap(), rat(1, 1));
        // Cross-check the grid scan against an exhaustive alpha sweep.
        let nu = BlockDistribution::from_periodic(&w("0"), 4).unwrap();
        let least = dstar_n(&mu, &nu, 4).unwrap();
        for a in 0..=4usize {
            let alpha = rat_usize(a, 4);
            let feasible = alpha_good_joining(&mu, &nu, 4, &alpha).unwrap().0;
            assert_eq!(feasible, alpha >= least, "alpha {alpha}");
        }
    }

    #[test]
    fn hausdorff_sets() {
        let p0 = BlockDistribution::from_periodic(&w("0"), 2).unwrap();
        let p1 = BlockDistribution::from_periodic(&w("1"), 2).unwrap();
        let same = hausdorff_dbar_n(&[p0.clone(), p1.clone()], &[p0.clone(), p1.clone()], 2)
            .unwrap();
        assert_eq!(same, rat(0, 1));
        let far = hausdorff_dbar_n(&[p0.clone()], &[p1.clone()], 2).unwrap();
        assert_eq!(far, rat(1, 1));
    }

    #[test]
    fn level_monotonicity_of_transport() {
        // Coarsening a joining cannot increase the cost.
        let pairs = [(w("01"), w("001")), (w("0011"), w("000"))];
        for (a, b) in pairs {
            let mu = BlockDistribution::from_periodic(&a, 4).unwrap();
            let nu = BlockDistribution::from_periodic(&b, 4).unwrap();
            let mut prev: Option<Rational> = None;
            for n in 1..=4usize {
                let (v, _) = transport_dbar_n(&mu, &nu, n).unwrap();
                if let Some(p) = prev.clone() {
                    assert!(p <= v, "level {n}: {p} > {v}");
                }
                prev = Some(v);
            }
        }
    }

    #[test]
    fn pseudometric_axioms_random_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(1..=3usize);
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                let len = rng.gen_range(1..=5usize);
                let word = Word::new((0..len).map(|_| rng.gen_range(0..2u8)).collect());
                BlockDistribution::from_periodic(&word, 3).unwrap()
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let c = mk(&mut rng);
            let dab = transport_dbar_n(&a, &b, n).unwrap().0;
            let dba = transport_dbar_n(&b, &a, n).unwrap().0;
            let dac = transport_dbar_n(&a, &c, n).unwrap().0;
            let dcb = transport_dbar_n(&c, &b, n).unwrap().0;
            assert_eq!(dab, dba);
            assert!(dab <= dac + dcb);
        }
    }
}
