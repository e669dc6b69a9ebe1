//! Hausdorff pseudometrics on finite sets, finite-horizon Hausdorff-Hamming
//! distances between shift languages, and minimum-Hamming tracing: the best
//! approximation of a target word by a label path of a presentation.
//!
//! Distances between infinite shift spaces are not computable in general;
//! everything here is a finite-horizon surrogate and every output carries
//! its horizon.

use std::collections::BTreeSet;

use num::Zero;
use rand::SeedableRng;
use thiserror::Error;

use crate::sofic::{GraphError, LabeledGraph, SoficShift};
use crate::words::{rat_usize, Rational, Word};

#[derive(Debug, Error)]
pub enum MetricError {
    #[error("distance table must be square with a zero diagonal and symmetric")]
    BadTable,
    #[error("hausdorff distance requires nonempty subsets")]
    EmptySubset,
    #[error("index {0} out of range for a set of {1} elements")]
    BadIndex(usize, usize),
    #[error("target word must be nonempty")]
    EmptyTarget,
    #[error("segment {0} is not in the language of the graph")]
    SegmentNotInLanguage(usize),
    #[error("horizon {horizon} exceeds total segment length {total}")]
    HorizonTooLong { horizon: usize, total: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A finite indexed set with a symmetric rational distance table with zero
/// diagonal. The triangle inequality is not assumed; pseudometric axioms
/// beyond symmetry are the caller's concern.
pub struct FinitePseudometricSet<T> {
    elements: Vec<T>,
    table: Vec<Vec<Rational>>,
}

impl<T> FinitePseudometricSet<T> {
    pub fn new(
        elements: Vec<T>,
        dist: impl Fn(&T, &T) -> Rational,
    ) -> Result<Self, MetricError> {
        let n = elements.len();
        let mut table = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = dist(&elements[i], &elements[j]);
            }
        }
        for i in 0..n {
            if !table[i][i].is_zero() {
                return Err(MetricError::BadTable);
            }
            for j in 0..i {
                if table[i][j] != table[j][i] {
                    return Err(MetricError::BadTable);
                }
            }
        }
        Ok(FinitePseudometricSet { elements, table })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.table[i][j]
    }

    /// Exact Hausdorff distance between two index subsets:
    /// max(sup_a inf_b d(a,b), sup_b inf_a d(a,b)).
    pub fn hausdorff(&self, a: &[usize], b: &[usize]) -> Result<Rational, MetricError> {
        if a.is_empty() || b.is_empty() {
            return Err(MetricError::EmptySubset);
        }
        for &i in a.iter().chain(b) {
            if i >= self.len() {
                return Err(MetricError::BadIndex(i, self.len()));
            }
        }
        let one_side = |from: &[usize], to: &[usize]| {
            from.iter()
                .map(|&i| to.iter().map(|&j| self.table[i][j].clone()).min().unwrap())
                .max()
                .unwrap()
        };
        Ok(one_side(a, b).max(one_side(b, a)))
    }
}

/// Minimizes the normalized Hamming distance between `target` and the label
/// words of length-|target| paths, by dynamic programming over
/// (position, vertex). Ties are broken toward the lexicographically
/// smallest witness word. The graph must be pruned.
pub fn best_trace(
    graph: &LabeledGraph,
    target: &Word,
) -> Result<(Rational, Word), MetricError> {
    let n = target.len();
    if n == 0 {
        return Err(MetricError::EmptyTarget);
    }
    let v_count = graph.vertex_count();
    let mut out_adj = vec![Vec::new(); v_count];
    for e in graph.edges() {
        out_adj[e.src].push(e);
    }
    // cost[i][v]: fewest mismatches over length-(n - i) paths from v against
    // target[i..]. Pruned graphs have paths of every length, so all entries
    // are finite.
    let mut cost = vec![vec![0usize; v_count]; n + 1];
    for i in (0..n).rev() {
        let t = target.symbols()[i];
        for v in 0..v_count {
            cost[i][v] = out_adj[v]
                .iter()
                .map(|e| usize::from(e.label != t) + cost[i + 1][e.dst])
                .min()
                .expect("pruned graph has out-edges");
        }
    }
    let total = *cost[0].iter().min().expect("graph has vertices");

    // Forward greedy reconstruction: keep the frontier of vertices
    // compatible with an optimal completion of the chosen prefix, and take
    // the smallest extending symbol at each position.
    let mut frontier: BTreeSet<usize> =
        (0..v_count).filter(|&v| cost[0][v] == total).collect();
    let mut spent = 0usize;
    let mut witness = Vec::with_capacity(n);
    for i in 0..n {
        let t = target.symbols()[i];
        let mut chosen: Option<(u8, BTreeSet<usize>)> = None;
        for &v in &frontier {
            for e in &out_adj[v] {
                if spent + usize::from(e.label != t) + cost[i + 1][e.dst] != total {
                    continue;
                }
                match &mut chosen {
                    Some((a, next)) if *a == e.label => {
                        next.insert(e.dst);
                    }
                    Some((a, _)) if *a < e.label => {}
                    _ => chosen = Some((e.label, BTreeSet::from([e.dst]))),
                }
            }
        }
        let (a, next) = chosen.expect("optimal path exists");
        spent += usize::from(a != t);
        witness.push(a);
        frontier = next;
    }
    debug_assert_eq!(spent, total);
    Ok((rat_usize(total, n), Word::new(witness)))
}

/// How a language Hausdorff distance was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HausdorffMode {
    /// Full outer supremum over both languages (caps apply).
    Exact,
    /// Outer supremum over `samples` seeded random words per side; the
    /// result is a certified lower bound.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct LangHausdorff {
    pub horizon: usize,
    /// Hausdorff value in exact mode; a certified lower bound in sampled
    /// mode.
    pub value: Rational,
    pub exact: bool,
    /// sup over L_n(X) of the distance to L_n(Y), and vice versa.
    pub sup_x_side: Rational,
    pub sup_y_side: Rational,
    /// A farthest word and its best approximation on the opposing side.
    pub witness: Option<(Word, Word)>,
    pub seed: Option<u64>,
}

/// Hausdorff distance between `L_n(X)` and `L_n(Y)` under normalized
/// Hamming distance. Inner minima always use [`best_trace`], so the
/// opposing language is never enumerated; in exact mode the outer suprema
/// run over full language enumerations (capped at `cap` words).
pub fn lang_hausdorff_hamming(
    x: &SoficShift,
    y: &SoficShift,
    n: usize,
    mode: HausdorffMode,
    cap: usize,
) -> Result<LangHausdorff, MetricError> {
    let words_of = |shift: &SoficShift| -> Result<Vec<Word>, MetricError> {
        match mode {
            HausdorffMode::Exact => Ok(shift.language(n, cap)?.into_iter().collect()),
            HausdorffMode::Sampled { samples, seed } => {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                Ok((0..samples)
                    .map(|_| shift.presentation().random_word(n, &mut rng))
                    .collect())
            }
        }
    };
    let one_side = |words: &[Word],
                    opposite: &LabeledGraph|
     -> Result<(Rational, Option<(Word, Word)>), MetricError> {
        let mut sup = Rational::zero();
        let mut witness = None;
        for w in words {
            let (c, trace) = best_trace(opposite, w)?;
            if c > sup || witness.is_none() {
                sup = c;
                witness = Some((w.clone(), trace));
            }
        }
        Ok((sup, witness))
    };
    let x_words = words_of(x)?;
    let y_words = words_of(y)?;
    let (sup_x_side, wit_x) = one_side(&x_words, y.presentation())?;
    let (sup_y_side, wit_y) = one_side(&y_words, x.presentation())?;
    let (value, witness) = if sup_x_side >= sup_y_side {
        (sup_x_side.clone(), wit_x)
    } else {
        (sup_y_side.clone(), wit_y)
    };
    let (exact, seed) = match mode {
        HausdorffMode::Exact => (true, None),
        HausdorffMode::Sampled { seed, .. } => (false, Some(seed)),
    };
    Ok(LangHausdorff {
        horizon: n,
        value,
        exact,
        sup_x_side,
        sup_y_side,
        witness,
        seed,
    })
}

/// Cost of tracing the concatenation of in-language segments up to
/// `horizon`: each segment is first verified to label a path; the returned
/// value is the best-trace cost of the concatenation's length-`horizon`
/// prefix, an upper bound on the infimal tracing error at that horizon.
pub fn eps_tracing_probe(
    graph: &LabeledGraph,
    segments: &[Word],
    horizon: usize,
) -> Result<Rational, MetricError> {
    let mut concat = Vec::new();
    for (i, seg) in segments.iter().enumerate() {
        if !graph.accepts(seg) {
            return Err(MetricError::SegmentNotInLanguage(i));
        }
        concat.extend_from_slice(seg.symbols());
    }
    if horizon > concat.len() || horizon == 0 {
        return Err(MetricError::HorizonTooLong {
            horizon,
            total: concat.len(),
        });
    }
    concat.truncate(horizon);
    Ok(best_trace(graph, &Word::new(concat))?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sofic::Edge;
    use crate::words::{dbar_up, rat, Alphabet, UpPoint};
    use rand::Rng;

    const CAP: usize = 2_000_000;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn up_set(points: Vec<UpPoint>) -> FinitePseudometricSet<UpPoint> {
        FinitePseudometricSet::new(points, dbar_up).unwrap()
    }

    #[test]
    fn hausdorff_examples() {
        let set = up_set(vec![
            UpPoint::periodic(w("0")).unwrap(),
            UpPoint::periodic(w("1")).unwrap(),
        ]);
        assert_eq!(set.hausdorff(&[0, 1], &[0, 1]).unwrap(), rat(0, 1));
        assert_eq!(set.hausdorff(&[0], &[1]).unwrap(), rat(1, 1));
        // Asymmetric sup side: {0^inf, 1^inf} vs {0^inf}.
        assert_eq!(set.hausdorff(&[0, 1], &[0]).unwrap(), rat(1, 1));
        assert!(set.hausdorff(&[], &[0]).is_err());
    }

    #[test]
    fn hausdorff_zero_iff_mutual_zero_distance() {
        // x = 1 0^inf and y = 0^inf are distinct at dbar-distance 0.
        let set = up_set(vec![
            UpPoint::new(w("1"), w("0")).unwrap(),
            UpPoint::periodic(w("0")).unwrap(),
            UpPoint::periodic(w("01")).unwrap(),
        ]);
        assert_eq!(set.hausdorff(&[0], &[1]).unwrap(), rat(0, 1));
        assert!(set.hausdorff(&[0, 2], &[1]).unwrap() > rat(0, 1));
    }

    #[test]
    fn best_trace_in_language_is_identity() {
        let gm = LabeledGraph::golden_mean();
        for word in gm.language(7, CAP).unwrap() {
            let (c, witness) = best_trace(&gm, &word).unwrap();
            assert_eq!(c, rat(0, 1));
            assert_eq!(witness, word);
        }
    }

    #[test]
    fn best_trace_golden_mean_all_ones() {
        let gm = LabeledGraph::golden_mean();
        for n in 1..=14usize {
            let target = Word::new(vec![1; n]);
            let (c, witness) = best_trace(&gm, &target).unwrap();
            assert_eq!(c, rat_usize(n / 2, n), "n = {n}");
            assert!(gm.accepts(&witness));
            // Independent oracle: brute-force minimum over L_n.
            let brute = gm
                .language(n, CAP)
                .unwrap()
                .iter()
                .map(|u| crate::words::hamming_normalized(u, &target).unwrap())
                .min()
                .unwrap();
            assert_eq!(c, brute);
        }
    }

    #[test]
    fn best_trace_witness_is_lexicographically_smallest() {
        let gm = LabeledGraph::golden_mean();
        for n in 1..=10usize {
            let target = Word::new(vec![1; n]);
            let (c, witness) = best_trace(&gm, &target).unwrap();
            let best = gm
                .language(n, CAP)
                .unwrap()
                .into_iter()
                .filter(|u| {
                    crate::words::hamming_normalized(u, &target).unwrap() == c
                })
                .min()
                .unwrap();
            assert_eq!(witness, best);
        }
    }

    #[test]
    fn best_trace_far_from_fixed_point() {
        let orbit = LabeledGraph::cycle(&w("0"), Alphabet::binary()).unwrap();
        let (c, witness) = best_trace(&orbit, &w("11111")).unwrap();
        assert_eq!(c, rat(1, 1));
        assert_eq!(witness, w("00000"));
    }

    #[test]
    fn best_trace_monotone_under_edge_addition() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let v = rng.gen_range(2..5usize);
            // Random pruned graph: a Hamiltonian label cycle plus chaff.
            let base_labels = Word::new((0..v).map(|_| rng.gen_range(0..2u8)).collect());
            let mut edges: Vec<Edge> = (0..v)
                .map(|i| Edge {
                    src: i,
                    dst: (i + 1) % v,
                    label: base_labels.symbols()[i],
                })
                .collect();
            for _ in 0..rng.gen_range(0..3) {
                edges.push(Edge {
                    src: rng.gen_range(0..v),
                    dst: rng.gen_range(0..v),
                    label: rng.gen_range(0..2),
                });
            }
            let g = LabeledGraph::new(v, Alphabet::binary(), edges.clone()).unwrap();
            let mut extended = edges;
            extended.push(Edge {
                src: rng.gen_range(0..v),
                dst: rng.gen_range(0..v),
                label: rng.gen_range(0..2),
            });
            let g2 = LabeledGraph::new(v, Alphabet::binary(), extended).unwrap();
            let len = rng.gen_range(1..8usize);
            let target = Word::new((0..len).map(|_| rng.gen_range(0..2u8)).collect());
            let (c1, _) = best_trace(&g, &target).unwrap();
            let (c2, _) = best_trace(&g2, &target).unwrap();
            assert!(c2 <= c1);
        }
    }

    #[test]
    fn lang_hausdorff_examples() {
        let gm = SoficShift::new(LabeledGraph::golden_mean()).unwrap();
        let full = SoficShift::new(LabeledGraph::full_shift(Alphabet::binary())).unwrap();

        let same =
            lang_hausdorff_hamming(&gm, &gm, 6, HausdorffMode::Exact, CAP).unwrap();
        assert_eq!(same.value, rat(0, 1));

        let zeros = SoficShift::new(
            LabeledGraph::cycle(&w("0"), Alphabet::binary()).unwrap(),
        )
        .unwrap();
        let ones = SoficShift::new(
            LabeledGraph::cycle(&w("1"), Alphabet::binary()).unwrap(),
        )
        .unwrap();
        let far =
            lang_hausdorff_hamming(&zeros, &ones, 5, HausdorffMode::Exact, CAP).unwrap();
        assert_eq!(far.value, rat(1, 1));

        // Farthest full-shift word from the golden mean is 1^n.
        for n in [2usize, 4, 6, 8] {
            let r =
                lang_hausdorff_hamming(&full, &gm, n, HausdorffMode::Exact, CAP).unwrap();
            assert_eq!(r.value, rat_usize(n / 2, n), "n = {n}");
            assert_eq!(r.sup_y_side, rat(0, 1));
        }
    }

    #[test]
    fn lang_hausdorff_matches_brute_force() {
        let gm = SoficShift::new(LabeledGraph::golden_mean()).unwrap();
        let even = SoficShift::new(
            LabeledGraph::new(
                2,
                Alphabet::binary(),
                vec![
                    Edge { src: 0, dst: 0, label: 1 },
                    Edge { src: 0, dst: 1, label: 0 },
                    Edge { src: 1, dst: 0, label: 0 },
                ],
            )
            .unwrap(),
        )
        .unwrap();
        for n in 1..=10usize {
            let r =
                lang_hausdorff_hamming(&gm, &even, n, HausdorffMode::Exact, CAP).unwrap();
            let lx = gm.language(n, CAP).unwrap();
            let ly = even.language(n, CAP).unwrap();
            let side = |a: &BTreeSet<Word>, b: &BTreeSet<Word>| {
                a.iter()
                    .map(|u| {
                        b.iter()
                            .map(|v| crate::words::hamming_normalized(u, v).unwrap())
                            .min()
                            .unwrap()
                    })
                    .max()
                    .unwrap()
            };
            let brute = side(&lx, &ly).max(side(&ly, &lx));
            assert_eq!(r.value, brute, "n = {n}");
        }
    }

    #[test]
    fn lang_hausdorff_containment_side_is_zero() {
        let gm = SoficShift::new(LabeledGraph::golden_mean()).unwrap();
        let full = SoficShift::new(LabeledGraph::full_shift(Alphabet::binary())).unwrap();
        for n in 1..=8 {
            let r =
                lang_hausdorff_hamming(&gm, &full, n, HausdorffMode::Exact, CAP).unwrap();
            assert_eq!(r.sup_x_side, rat(0, 1), "n = {n}");
        }
    }

    #[test]
    fn lang_hausdorff_sampled_is_lower_bound() {
        let gm = SoficShift::new(LabeledGraph::golden_mean()).unwrap();
        let full = SoficShift::new(LabeledGraph::full_shift(Alphabet::binary())).unwrap();
        let n = 8;
        let exact =
            lang_hausdorff_hamming(&full, &gm, n, HausdorffMode::Exact, CAP).unwrap();
        let sampled = lang_hausdorff_hamming(
            &full,
            &gm,
            n,
            HausdorffMode::Sampled { samples: 50, seed: 5 },
            CAP,
        )
        .unwrap();
        assert!(!sampled.exact);
        assert!(sampled.value <= exact.value);
        // Determinism: same seed, same value.
        let again = lang_hausdorff_hamming(
            &full,
            &gm,
            n,
            HausdorffMode::Sampled { samples: 50, seed: 5 },
            CAP,
        )
        .unwrap();
        assert_eq!(sampled.value, again.value);
    }

    #[test]
    fn eps_tracing_probe_examples() {
        let gm = LabeledGraph::golden_mean();
        // A single in-language segment traces itself.
        assert_eq!(eps_tracing_probe(&gm, &[w("0101")], 4).unwrap(), rat(0, 1));

        let full = LabeledGraph::full_shift(Alphabet::binary());
        assert_eq!(
            eps_tracing_probe(&full, &[w("10"), w("01"), w("10")], 6).unwrap(),
            rat(0, 1)
        );

        // Junction errors: (01)(10) repeated creates 11 at odd junctions.
        let segments = [w("01"), w("10"), w("01"), w("10"), w("01"), w("10")];
        for horizon in 2..=12usize {
            let cost = eps_tracing_probe(&gm, &segments, horizon).unwrap();
            let junctions = rat_usize((horizon.saturating_sub(2) + 3) / 4, horizon);
            assert!(cost <= junctions, "horizon {horizon}: {cost} > {junctions}");
            // Oracle: direct best_trace of the concatenation prefix.
            let concat: Vec<u8> = segments
                .iter()
                .flat_map(|s| s.symbols().iter().copied())
                .take(horizon)
                .collect();
            let (direct, _) = best_trace(&gm, &Word::new(concat)).unwrap();
            assert_eq!(cost, direct);
        }

        // A bad segment is identified by index.
        assert!(matches!(
            eps_tracing_probe(&gm, &[w("00"), w("11")], 2),
            Err(MetricError::SegmentNotInLanguage(1))
        ));
    }
}
