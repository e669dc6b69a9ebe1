//! Occurrence counts and frequency spectra: the number of overlapping
//! occurrences gamma_w(u), its maximum Gamma_w(n) over the length-n language
//! of a sofic shift, the maximum limiting frequency Lambda_X(w) (equal to
//! the largest measure of the cylinder [w] over invariant measures), the
//! measure center X^+ of a presentation, and the block-replacement
//! projection of words into the center's language.
//!
//! Gamma and Lambda never enumerate languages: they run on the product of
//! the presentation with a single-pattern matching automaton, with weight 1
//! on occurrence-completing edges. Gamma is a longest-weighted-path layer
//! DP, Lambda an exact maximum mean cycle (Karp).

use num::BigInt;
use thiserror::Error;

use crate::sofic::{GraphError, LabeledGraph, SoficShift};
use crate::words::{failure_function, Alphabet, Rational, Symbol, Word};

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("pattern must be a nonempty word over the alphabet")]
    BadPattern,
    #[error("horizon {n} must be at least the pattern length {len}")]
    HorizonTooShort { n: usize, len: usize },
    #[error("filler must be a length-{m} word of the measure center")]
    BadFiller { m: usize },
    #[error("word {0} is shorter than the block length {1}")]
    WordTooShort(Word, usize),
    #[error("word {0} is not in the language of the shift")]
    NotInLanguage(Word),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Deterministic total automaton counting overlapping occurrences of one
/// pattern: states are the proper prefixes of the pattern, and a transition
/// completing the pattern reports a match and falls back to the longest
/// proper border.
pub struct OccurrenceAutomaton {
    pattern: Word,
    alphabet: Alphabet,
    /// delta[state][symbol] = (next state, completed a match).
    delta: Vec<Vec<(usize, bool)>>,
}

impl OccurrenceAutomaton {
    pub fn new(pattern: Word, alphabet: Alphabet) -> Result<Self, SpectraError> {
        if pattern.is_empty()
            || pattern.symbols().iter().any(|&a| !alphabet.contains(a))
        {
            return Err(SpectraError::BadPattern);
        }
        let w = pattern.symbols();
        let fail = failure_function(w);
        let m = w.len();
        let mut delta = vec![vec![(0usize, false); alphabet.size()]; m];
        for s in 0..m {
            for a in alphabet.symbols() {
                // fail is indexed by prefix length: fail[len] is the longest
                // proper border of the length-len prefix.
                let mut k = s;
                while k > 0 && w[k] != a {
                    k = fail[k];
                }
                if w[k] == a {
                    k += 1;
                }
                let matched = k == m;
                if matched {
                    k = fail[m];
                }
                delta[s][a as usize] = (k, matched);
            }
        }
        Ok(OccurrenceAutomaton {
            pattern,
            alphabet,
            delta,
        })
    }

    pub fn pattern(&self) -> &Word {
        &self.pattern
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn step(&self, state: usize, a: Symbol) -> (usize, bool) {
        self.delta[state][a as usize]
    }

    /// Overlapping occurrences of the pattern in `u`.
    pub fn count(&self, u: &Word) -> usize {
        let mut state = 0;
        let mut count = 0;
        for &a in u.symbols() {
            let (next, matched) = self.step(state, a);
            state = next;
            count += usize::from(matched);
        }
        count
    }
}

/// Overlapping occurrence count gamma_w(u); 0 whenever |u| < |w| or the
/// pattern is empty.
pub fn gamma(w: &Word, u: &Word) -> usize {
    if w.is_empty() || u.len() < w.len() {
        return 0;
    }
    let needed = w
        .symbols()
        .iter()
        .chain(u.symbols())
        .map(|&a| a as usize + 1)
        .max()
        .unwrap()
        .max(2);
    let automaton = OccurrenceAutomaton::new(
        w.clone(),
        Alphabet::new(needed).expect("size >= 2"),
    )
    .expect("nonempty pattern");
    automaton.count(u)
}

/// One edge of the presentation-automaton product.
struct ProductEdge {
    src: usize,
    dst: usize,
    label: Symbol,
    weight: u64,
}

/// Product of a presentation with an occurrence automaton; a path's weight
/// sum is exactly the overlapping occurrence count of its label word.
pub struct WeightedProduct {
    states: usize,
    edges: Vec<ProductEdge>,
    /// Product states (v, 0): occurrence counting starts at the empty
    /// prefix.
    start_states: Vec<usize>,
}

impl WeightedProduct {
    pub fn new(graph: &LabeledGraph, automaton: &OccurrenceAutomaton) -> Self {
        let s_count = automaton.states();
        let mut edges = Vec::with_capacity(graph.edges().len() * s_count);
        for e in graph.edges() {
            for s in 0..s_count {
                let (next, matched) = automaton.step(s, e.label);
                edges.push(ProductEdge {
                    src: e.src * s_count + s,
                    dst: e.dst * s_count + next,
                    label: e.label,
                    weight: u64::from(matched),
                });
            }
        }
        WeightedProduct {
            states: graph.vertex_count() * s_count,
            edges,
            start_states: (0..graph.vertex_count()).map(|v| v * s_count).collect(),
        }
    }

    pub fn states(&self) -> usize {
        self.states
    }

    /// Edges as (src state, dst state, weight), for oracle-style checks.
    pub fn weighted_edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.edges.iter().map(|e| (e.src, e.dst, e.weight))
    }
}

/// Gamma_w(n): the largest overlapping occurrence count of `w` over the
/// length-n language, via a longest-weighted-path DP on the product
/// unrolled to n layers.
pub fn big_gamma(shift: &SoficShift, w: &Word, n: usize) -> Result<u64, SpectraError> {
    if n < w.len() {
        return Err(SpectraError::HorizonTooShort { n, len: w.len() });
    }
    let automaton = OccurrenceAutomaton::new(w.clone(), shift.presentation().alphabet())?;
    let product = WeightedProduct::new(shift.presentation(), &automaton);
    const NEG: i64 = i64::MIN / 2;
    let mut best = vec![NEG; product.states];
    for &s in &product.start_states {
        best[s] = 0;
    }
    for _ in 0..n {
        let mut next = vec![NEG; product.states];
        for e in &product.edges {
            if best[e.src] > NEG {
                let cand = best[e.src] + e.weight as i64;
                if cand > next[e.dst] {
                    next[e.dst] = cand;
                }
            }
        }
        best = next;
    }
    Ok(*best.iter().max().expect("nonempty state set") as u64)
}

#[derive(Debug, Clone)]
pub struct LambdaReport {
    pub word: Word,
    pub value: Rational,
    /// Labels of a cycle realizing the maximum mean (the periodic orbit of
    /// this label word attains frequency `value` for the pattern).
    pub witness_cycle: Word,
}

/// Lambda_X(w): the maximum limiting frequency of `w` in X, equal to the
/// largest invariant-measure mass of the cylinder [w]. Computed as the
/// exact maximum mean cycle weight of the weighted product (Karp), with a
/// witness cycle.
pub fn lambda(shift: &SoficShift, w: &Word) -> Result<LambdaReport, SpectraError> {
    let automaton = OccurrenceAutomaton::new(w.clone(), shift.presentation().alphabet())?;
    let product = WeightedProduct::new(shift.presentation(), &automaton);
    let n = product.states;
    const NEG: i64 = i64::MIN / 2;
    // Karp with all states as sources: d[k][v] = max weight of a length-k
    // walk ending at v, with predecessor links for witness extraction.
    let mut d = vec![vec![NEG; n]; n + 1];
    let mut par: Vec<Vec<Option<(usize, Symbol)>>> = vec![vec![None; n]; n + 1];
    for v in 0..n {
        d[0][v] = 0;
    }
    for k in 1..=n {
        for e in &product.edges {
            if d[k - 1][e.src] > NEG {
                let cand = d[k - 1][e.src] + e.weight as i64;
                if cand > d[k][e.dst] {
                    d[k][e.dst] = cand;
                    par[k][e.dst] = Some((e.src, e.label));
                }
            }
        }
    }
    // lambda* = max_v min_k (d[n][v] - d[k][v]) / (n - k).
    let mut best: Option<(Rational, usize)> = None;
    for v in 0..n {
        if d[n][v] <= NEG {
            continue;
        }
        let mut worst: Option<Rational> = None;
        for k in 0..n {
            if d[k][v] <= NEG {
                continue;
            }
            let mean = Rational::new(
                BigInt::from(d[n][v] - d[k][v]),
                BigInt::from((n - k) as i64),
            );
            worst = Some(match worst {
                None => mean,
                Some(x) => x.min(mean),
            });
        }
        if let Some(worst) = worst {
            match &best {
                Some((b, _)) if *b >= worst => {}
                _ => best = Some((worst, v)),
            }
        }
    }
    let (value, critical) = best.expect("pruned presentations contain cycles");
    // The critical walk of length n ending at `critical` contains a cycle
    // of mean exactly lambda*; backtrack and extract it.
    let mut walk = vec![critical];
    let mut labels_rev: Vec<Symbol> = Vec::new();
    let mut v = critical;
    for k in (1..=n).rev() {
        let (prev, label) = par[k][v].expect("walk of length n exists");
        labels_rev.push(label);
        walk.push(prev);
        v = prev;
    }
    walk.reverse();
    labels_rev.reverse();
    let labels = labels_rev; // labels[i] reads walk[i] -> walk[i+1]
    let mut witness = None;
    'outer: for i in 0..walk.len() {
        for j in i + 1..walk.len() {
            if walk[i] == walk[j] {
                let seg = Word::new(labels[i..j].to_vec());
                let weight: u64 = labels[i..j]
                    .iter()
                    .zip(&walk[i..j])
                    .map(|(&label, &src)| {
                        // Recover the weight from the automaton component.
                        let s = src % automaton.states();
                        u64::from(automaton.step(s, label).1)
                    })
                    .sum();
                let mean = Rational::new(
                    BigInt::from(weight as i64),
                    BigInt::from((j - i) as i64),
                );
                if mean == value {
                    witness = Some(seg);
                    break 'outer;
                }
            }
        }
    }
    let witness_cycle = witness.expect("critical walk contains an optimal cycle");
    Ok(LambdaReport {
        word: w.clone(),
        value,
        witness_cycle,
    })
}

/// The measure center X^+: the smallest subshift carrying all invariant
/// measures, presented by the edges lying on cycles (the nontrivial
/// strongly connected pieces of the presentation). A word is in L(X^+) iff
/// its maximum limiting frequency in X is positive.
pub fn measure_center(shift: &SoficShift) -> Result<SoficShift, SpectraError> {
    let g = shift.presentation();
    let components = g.strongly_connected_components();
    let mut comp_of = vec![usize::MAX; g.vertex_count()];
    for (id, members) in components.iter().enumerate() {
        for &v in members {
            comp_of[v] = id;
        }
    }
    // An edge lies on a cycle iff both endpoints share a strongly connected
    // component (self-loops included).
    let edges: Vec<_> = g
        .edges()
        .iter()
        .filter(|e| comp_of[e.src] == comp_of[e.dst])
        .copied()
        .collect();
    let restricted = LabeledGraph::new(g.vertex_count(), g.alphabet(), edges)?;
    Ok(SoficShift::new(restricted)?)
}

#[derive(Debug, Clone)]
pub struct CenterProjection {
    pub words: Vec<Word>,
    /// Fraction of positions lying in replaced blocks, over all inputs.
    pub replaced_fraction: Rational,
}

/// Splits each word into blocks of length m (final block length in
/// [m, 2m)), keeps blocks already in L(X^+), replaces interior off-center
/// blocks by `filler` and a final off-center block by its best-trace
/// approximation in the center (an equal-length center word). Returns the
/// projected words and the replaced-position fraction.
pub fn project_to_center(
    words: &[Word],
    shift: &SoficShift,
    m: usize,
    filler: &Word,
) -> Result<CenterProjection, SpectraError> {
    let center = measure_center(shift)?;
    let cg = center.presentation();
    if filler.len() != m || m == 0 || !cg.accepts(filler) {
        return Err(SpectraError::BadFiller { m });
    }
    let mut out = Vec::with_capacity(words.len());
    let mut replaced = 0usize;
    let mut total = 0usize;
    for word in words {
        if word.len() < m {
            return Err(SpectraError::WordTooShort(word.clone(), m));
        }
        if !shift.presentation().accepts(word) {
            return Err(SpectraError::NotInLanguage(word.clone()));
        }
        total += word.len();
        let mut blocks: Vec<Word> = Vec::new();
        let mut rest = word.clone();
        while rest.len() >= 2 * m {
            blocks.push(rest.slice(0, m));
            rest = rest.slice(m, rest.len());
        }
        blocks.push(rest);
        let mut projected: Vec<Symbol> = Vec::with_capacity(word.len());
        for block in &blocks {
            if cg.accepts(block) {
                projected.extend_from_slice(block.symbols());
            } else {
                replaced += block.len();
                if block.len() == m {
                    projected.extend_from_slice(filler.symbols());
                } else {
                    // Final block: any equal-length center word; the
                    // best-trace witness is one (pruned presentations have
                    // paths of every length) and stays closest to the block.
                    let (_, witness) = crate::metrics::best_trace(cg, block)
                        .map_err(|_| SpectraError::BadFiller { m })?;
                    projected.extend_from_slice(witness.symbols());
                }
            }
        }
        // Blocks are individually in L(X^+); the concatenation need not be.
        let projected = Word::new(projected);
        debug_assert_eq!(projected.len(), word.len());
        out.push(projected);
    }
    Ok(CenterProjection {
        words: out,
        replaced_fraction: crate::words::rat_usize(replaced, total.max(1)),
    })
}
