//! Rauzy graphs and topological Markov (finite-type) approximations of a
//! shift supplied through a language oracle, plus a finite-horizon
//! chain-transitivity/chain-mixing probe.
//!
//! The order-n approximation is the shift of finite type forbidding exactly
//! the length-(n+1) non-words; it is presented by the n-th Rauzy graph,
//! whose vertices are the n-words and whose edges read off the (n+1)-words.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use serde::Serialize;
use thiserror::Error;

use crate::sofic::{Edge, GraphError, LabeledGraph, SoficShift};
use crate::words::{Alphabet, Word};

#[derive(Debug, Error)]
pub enum MarkovError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("oracle only trusted up to length {trusted}, requested {requested}")]
    Untrusted { requested: usize, trusted: usize },
    #[error("oracle cap of {cap} words exceeded at length {n}")]
    Cap { n: usize, cap: usize },
    #[error("forbidden words must be nonempty over the oracle alphabet")]
    BadForbidden,
    #[error("rauzy graph requires n >= 1")]
    ZeroOrder,
    #[error("the oracle language is empty at length {0}")]
    EmptyLanguage(usize),
}

enum Source {
    /// Presentation-backed: `L_n` enumerated from a pruned labeled graph.
    Graph(LabeledGraph),
    /// Factors of a finite prefix of a single sequence, trusted only up to
    /// `trusted`: the prefix is certified to contain every factor of the
    /// infinite sequence up to that length. Longer queries error.
    Prefix { prefix: Word, trusted: usize },
}

/// A function n -> L_n(X) with an internally synchronized cache, so probes
/// may share one oracle across threads and results never depend on call
/// order.
pub struct LanguageOracle {
    alphabet: Alphabet,
    source: Source,
    cache: Mutex<BTreeMap<usize, BTreeSet<Word>>>,
}

impl LanguageOracle {
    /// Oracle for the sofic shift presented by `graph` (pruned first).
    pub fn from_graph(graph: LabeledGraph) -> Result<Self, MarkovError> {
        let pruned = graph.prune()?;
        Ok(LanguageOracle {
            alphabet: pruned.alphabet(),
            source: Source::Graph(pruned),
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    /// Oracle for the shift of finite type forbidding `forbidden` over
    /// `alphabet`, built by pruning the de Bruijn-style presentation on
    /// windows of length max|f| - 1.
    pub fn from_forbidden(
        alphabet: Alphabet,
        forbidden: &[Word],
    ) -> Result<Self, MarkovError> {
        if forbidden.iter().any(|f| {
            f.is_empty() || f.symbols().iter().any(|&a| !alphabet.contains(a))
        }) {
            return Err(MarkovError::BadForbidden);
        }
        let m = forbidden.iter().map(Word::len).max().unwrap_or(1);
        let contains_forbidden = |w: &[u8]| {
            forbidden.iter().any(|f| {
                w.len() >= f.len() && w.windows(f.len()).any(|x| x == f.symbols())
            })
        };
        // Vertices: allowed windows of length m-1 (just the empty word when
        // m = 1); edge u -> v labeled u[0] when u and v overlap in a window
        // of length m avoiding every forbidden factor.
        let mut windows: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..m - 1 {
            let mut next = Vec::new();
            for w in &windows {
                for a in alphabet.symbols() {
                    let mut x = w.clone();
                    x.push(a);
                    if !contains_forbidden(&x) {
                        next.push(x);
                    }
                }
            }
            windows = next;
        }
        windows.sort();
        let index: BTreeMap<&Vec<u8>, usize> =
            windows.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut edges = Vec::new();
        for (i, u) in windows.iter().enumerate() {
            for a in alphabet.symbols() {
                let mut full = u.clone();
                full.push(a);
                if contains_forbidden(&full) {
                    continue;
                }
                let v: Vec<u8> = full[full.len().min(1)..].to_vec();
                if let Some(&j) = index.get(&v) {
                    let label = if m == 1 { a } else { u[0] };
                    edges.push(Edge { src: i, dst: j, label });
                }
            }
        }
        let graph = LabeledGraph::new(windows.len().max(1), alphabet, edges)?;
        Self::from_graph(graph)
    }

    /// Oracle reading factors off a finite prefix, trusted up to length
    /// `trusted` (the caller certifies the prefix exhibits all factors of
    /// the underlying sequence up to that length).
    pub fn from_trusted_prefix(
        alphabet: Alphabet,
        prefix: Word,
        trusted: usize,
    ) -> Self {
        LanguageOracle {
            alphabet,
            source: Source::Prefix { prefix, trusted },
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// The deduplicated language at length `n`, capped at `cap` words.
    pub fn language(&self, n: usize, cap: usize) -> Result<BTreeSet<Word>, MarkovError> {
        if let Some(hit) = self.cache.lock().unwrap().get(&n) {
            return Ok(hit.clone());
        }
        let lang = match &self.source {
            Source::Graph(g) => g.language(n, cap)?,
            Source::Prefix { prefix, trusted } => {
                if n > *trusted {
                    return Err(MarkovError::Untrusted {
                        requested: n,
                        trusted: *trusted,
                    });
                }
                let set = prefix.factors(n);
                if set.len() > cap {
                    return Err(MarkovError::Cap { n, cap });
                }
                set
            }
        };
        if lang.is_empty() {
            return Err(MarkovError::EmptyLanguage(n));
        }
        self.cache.lock().unwrap().insert(n, lang.clone());
        Ok(lang)
    }
}

/// The n-th Rauzy graph: vertices are the n-words of the oracle (indexed in
/// sorted order), with one edge per (n+1)-word `w` from `w[0,n)` to
/// `w[1,n+1)` labeled `w_0`. Returned unpruned, exactly as defined.
pub fn rauzy_graph(
    oracle: &LanguageOracle,
    n: usize,
    cap: usize,
) -> Result<LabeledGraph, MarkovError> {
    if n == 0 {
        return Err(MarkovError::ZeroOrder);
    }
    let vertices: Vec<Word> = oracle.language(n, cap)?.into_iter().collect();
    let index: BTreeMap<&Word, usize> =
        vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut edges = Vec::new();
    for w in oracle.language(n + 1, cap)? {
        let src_word = w.slice(0, n);
        let dst_word = w.slice(1, n + 1);
        // Both windows are n-words of the oracle by factoriality; a missing
        // vertex would mean the oracle is not factorial.
        let (&src, &dst) = (
            index.get(&src_word).expect("factorial oracle"),
            index.get(&dst_word).expect("factorial oracle"),
        );
        edges.push(Edge {
            src,
            dst,
            label: w.symbols()[0],
        });
    }
    Ok(LabeledGraph::new(vertices.len(), oracle.alphabet(), edges)?)
}

/// The order-n topological Markov approximation: the shift presented by the
/// (pruned) n-th Rauzy graph, i.e. the SFT forbidding the (n+1)-non-words.
pub fn markov_approximation(
    oracle: &LanguageOracle,
    n: usize,
    cap: usize,
) -> Result<SoficShift, MarkovError> {
    Ok(SoficShift::new(rauzy_graph(oracle, n, cap)?)?)
}

/// One row of the chain-mixing probe report.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeRow {
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub strongly_connected: bool,
    /// gcd of cycle lengths when strongly connected, 0 otherwise.
    pub period: usize,
}

/// Finite-horizon probe report: structural flags of the pruned Rauzy graphs
/// for n = 1..=n_max, and the least order from which every probed
/// approximation is mixing (if any).
#[derive(Debug, Clone, Serialize)]
pub struct ChainMixingReport {
    pub rows: Vec<ProbeRow>,
    pub mixing_from: Option<usize>,
}

/// Probes the Markov approximations up to order `n_max`. A `mixing_from`
/// verdict is a finite-horizon observation, not a proof about the limit.
pub fn chain_mixing_probe(
    oracle: &LanguageOracle,
    n_max: usize,
    cap: usize,
) -> Result<ChainMixingReport, MarkovError> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let shift = markov_approximation(oracle, n, cap)?;
        let g = shift.presentation();
        rows.push(ProbeRow {
            n,
            vertices: g.vertex_count(),
            edges: g.edges().len(),
            strongly_connected: shift.strongly_connected(),
            period: shift.period(),
        });
    }
    let mixing_from = rows
        .iter()
        .rev()
        .take_while(|r| r.strongly_connected && r.period == 1)
        .last()
        .map(|r| r.n);
    Ok(ChainMixingReport { rows, mixing_from })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sofic::Edge;

    const CAP: usize = 2_000_000;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Standard even-shift presentation: 0-runs between 1s have even length.
    fn even_shift_graph() -> LabeledGraph {
        LabeledGraph::new(
            2,
            Alphabet::binary(),
            vec![
                Edge { src: 0, dst: 0, label: 1 },
                Edge { src: 0, dst: 1, label: 0 },
                Edge { src: 1, dst: 0, label: 0 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn sft_oracle_matches_graph_oracle_golden_mean() {
        let from_f =
            LanguageOracle::from_forbidden(Alphabet::binary(), &[w("11")]).unwrap();
        let from_g = LanguageOracle::from_graph(LabeledGraph::golden_mean()).unwrap();
        for n in 1..=9 {
            assert_eq!(
                from_f.language(n, CAP).unwrap(),
                from_g.language(n, CAP).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn sft_oracle_single_symbol_forbidden() {
        let o = LanguageOracle::from_forbidden(Alphabet::binary(), &[w("1")]).unwrap();
        let l3 = o.language(3, CAP).unwrap();
        assert_eq!(l3, BTreeSet::from([w("000")]));
    }

    #[test]
    fn prefix_oracle_trust_boundary() {
        let o = LanguageOracle::from_trusted_prefix(Alphabet::binary(), w("00100"), 2);
        assert_eq!(
            o.language(2, CAP).unwrap(),
            BTreeSet::from([w("00"), w("01"), w("10")])
        );
        assert!(matches!(
            o.language(3, CAP),
            Err(MarkovError::Untrusted { requested: 3, trusted: 2 })
        ));
    }

    #[test]
    fn rauzy_graph_examples() {
        // Full 2-shift, n = 1: the de Bruijn graph on 2 vertices, 4 edges.
        let full =
            LanguageOracle::from_graph(LabeledGraph::full_shift(Alphabet::binary()))
                .unwrap();
        let g = rauzy_graph(&full, 1, CAP).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges().len(), 4);

        // Golden mean, n = 1: vertices {0, 1}, edges for 00, 01, 10.
        let gm = LanguageOracle::from_graph(LabeledGraph::golden_mean()).unwrap();
        let g = rauzy_graph(&gm, 1, CAP).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(
            g.edges(),
            &[
                Edge { src: 0, dst: 0, label: 0 },
                Edge { src: 0, dst: 1, label: 0 },
                Edge { src: 1, dst: 0, label: 1 },
            ]
        );

        // Fixed point 0^inf, n = 2: one vertex with a 0-labeled loop.
        let fix = LanguageOracle::from_trusted_prefix(Alphabet::binary(), w("00000"), 4);
        let g = rauzy_graph(&fix, 2, CAP).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges(), &[Edge { src: 0, dst: 0, label: 0 }]);
    }

    #[test]
    fn language_agreement_up_to_order_plus_one() {
        // L_j of the order-n approximation equals L_j of the shift for
        // j <= n + 1.
        let oracles = [
            LanguageOracle::from_graph(LabeledGraph::golden_mean()).unwrap(),
            LanguageOracle::from_graph(even_shift_graph()).unwrap(),
        ];
        for oracle in &oracles {
            for n in 1..=6 {
                let approx = markov_approximation(oracle, n, CAP).unwrap();
                for j in 1..=n + 1 {
                    assert_eq!(
                        approx.language(j, CAP).unwrap(),
                        oracle.language(j, CAP).unwrap(),
                        "n = {n}, j = {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn golden_mean_approximation_is_exact() {
        // An SFT with forbidden words of length <= n+1 equals its order-n
        // approximation at every tested length.
        let gm = LanguageOracle::from_graph(LabeledGraph::golden_mean()).unwrap();
        for n in 1..=4 {
            let approx = markov_approximation(&gm, n, CAP).unwrap();
            for j in 1..=10 {
                assert_eq!(
                    approx.language(j, CAP).unwrap(),
                    gm.language(j, CAP).unwrap()
                );
            }
        }
    }

    #[test]
    fn even_shift_order_one_is_strictly_larger() {
        let even = LanguageOracle::from_graph(even_shift_graph()).unwrap();
        let approx = markov_approximation(&even, 1, CAP).unwrap();
        let l3_x = even.language(3, CAP).unwrap();
        let l3_a = approx.language(3, CAP).unwrap();
        assert!(l3_x.is_subset(&l3_a));
        assert!(l3_a.len() > l3_x.len());
        // 101 is the shortest non-word of the even shift.
        assert!(l3_a.contains(&w("101")));
        assert!(!l3_x.contains(&w("101")));
    }

    #[test]
    fn approximations_are_decreasing() {
        let even = LanguageOracle::from_graph(even_shift_graph()).unwrap();
        for j in 1..=8usize {
            let mut prev: Option<BTreeSet<Word>> = None;
            for n in 1..=6 {
                let lang = markov_approximation(&even, n, CAP)
                    .unwrap()
                    .language(j, CAP)
                    .unwrap();
                if let Some(p) = &prev {
                    assert!(lang.is_subset(p), "j = {j}, n = {n}");
                }
                prev = Some(lang);
            }
        }
    }

    #[test]
    fn approximation_is_idempotent() {
        let even = LanguageOracle::from_graph(even_shift_graph()).unwrap();
        for n in 1..=5 {
            let once = markov_approximation(&even, n, CAP).unwrap();
            let once_oracle =
                LanguageOracle::from_graph(once.presentation().clone()).unwrap();
            let twice = markov_approximation(&once_oracle, n, CAP).unwrap();
            for j in 1..=8 {
                assert_eq!(
                    once.language(j, CAP).unwrap(),
                    twice.language(j, CAP).unwrap()
                );
            }
        }
    }

    #[test]
    fn chain_mixing_probe_examples() {
        let full =
            LanguageOracle::from_graph(LabeledGraph::full_shift(Alphabet::binary()))
                .unwrap();
        let report = chain_mixing_probe(&full, 5, CAP).unwrap();
        assert_eq!(report.mixing_from, Some(1));

        // The two-point orbit of (01)^inf: period 2 at every order.
        let cyc = LanguageOracle::from_graph(
            LabeledGraph::cycle(&w("01"), Alphabet::binary()).unwrap(),
        )
        .unwrap();
        let report = chain_mixing_probe(&cyc, 5, CAP).unwrap();
        assert_eq!(report.mixing_from, None);
        assert!(report.rows.iter().all(|r| r.period == 2));

        let gm = LanguageOracle::from_graph(LabeledGraph::golden_mean()).unwrap();
        let report = chain_mixing_probe(&gm, 8, CAP).unwrap();
        assert_eq!(report.mixing_from, Some(1));
    }
}
