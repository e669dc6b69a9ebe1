//! A hereditary family of sofic shifts with a common safe symbol 0.
//!
//! Level `n` is presented on `b^n` vertices by a full 0-labeled cycle, a
//! chain of 1-labeled edges parallel to most of it, and one 0-labeled skip
//! edge that creates a second cycle of coprime length `b^n - 1`, making
//! every level mixing.  The intersections `Y_n = Z_1 ∩ ... ∩ Z_n` stay
//! mixing, and zeroing out a sparse periodic window maps points of `Y_n`
//! into `Y_{n+1}` while changing at most a `(g/b)^{n+1}` fraction of
//! coordinates.

use rand::Rng;
use thiserror::Error;

use crate::sofic::{Edge, GraphError, LabeledGraph, SoficShift};
use crate::words::{rat_usize, Alphabet, Rational, Symbol, Word};

/// Hard cap on vertices of a single level presentation.
pub const PROXIMAL_VERTEX_CAP: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum ProximalError {
    #[error("base must be >= 3, got {0}")]
    BadBase(u64),
    #[error("gap must satisfy 2 <= g(n) < b^n up to the requested depth (level {0})")]
    BadGap(usize),
    #[error("level {0} needs {1} vertices, exceeding the cap of {2}")]
    VertexCap(usize, u64, usize),
    #[error("word is not in the language of level {0}")]
    NotInLevel(usize),
    #[error("zeroed word failed membership at level {0}; this would falsify the construction")]
    ShadowRejected(usize),
    #[error("non-inclusion witness failed: {0}")]
    WitnessFailed(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Base `b`, gap base (the gap function is `g(n) = gap_base^n`), and the
/// largest level the parameters are validated for.
#[derive(Debug, Clone, Copy)]
pub struct ProximalParams {
    pub base: u64,
    pub gap_base: u64,
    pub depth: usize,
}

impl ProximalParams {
    pub fn new(base: u64, gap_base: u64, depth: usize) -> Result<Self, ProximalError> {
        if base < 3 {
            return Err(ProximalError::BadBase(base));
        }
        let params = ProximalParams { base, gap_base, depth };
        for n in 1..=depth {
            let g = params.gap(n);
            if g < 2 || g >= params.size(n) {
                return Err(ProximalError::BadGap(n));
            }
        }
        Ok(params)
    }

    /// Defaults from the construction: base 10, gap `2^n`, depth 3.
    pub fn defaults() -> Self {
        ProximalParams::new(10, 2, 3).expect("valid defaults")
    }

    /// Number of vertices `b^n` of the level-`n` presentation.
    pub fn size(&self, n: usize) -> u64 {
        self.base.pow(n as u32)
    }

    /// Gap `g(n)`.
    pub fn gap(&self, n: usize) -> u64 {
        self.gap_base.pow(n as u32)
    }
}

/// The level-`n` presentation `G_n`: a 0-cycle `v_k -> v_{k+1 mod b^n}`
/// through all vertices, 1-edges `v_k -> v_{k+1}` for `1 <= k <= b^n - g(n)`,
/// and a 0-labeled skip edge `v_{b^n-g(n)} -> v_{b^n-g(n)+2 mod b^n}`.
pub fn proximal_graph(params: &ProximalParams, n: usize) -> Result<LabeledGraph, ProximalError> {
    let m = params.size(n);
    if m as usize > PROXIMAL_VERTEX_CAP {
        return Err(ProximalError::VertexCap(n, m, PROXIMAL_VERTEX_CAP));
    }
    let m = m as usize;
    let g = params.gap(n) as usize;
    let mut edges = Vec::with_capacity(2 * m);
    for k in 0..m {
        edges.push(Edge { src: k, dst: (k + 1) % m, label: 0 });
    }
    edges.push(Edge { src: m - g, dst: (m - g + 2) % m, label: 0 });
    for k in 1..=(m - g) {
        edges.push(Edge { src: k, dst: k + 1, label: 1 });
    }
    Ok(LabeledGraph::new(m, Alphabet::binary(), edges)?)
}

/// Membership of a finite word in the language of level `n`, computed by
/// alive-set propagation over bitsets.  Equivalent to
/// `proximal_graph(..).accepts(..)` (every vertex lies on the 0-cycle, so
/// path existence is language membership), but fast enough for words of
/// length 10^5 on thousand-vertex levels.
pub fn level_accepts(params: &ProximalParams, n: usize, word: &Word) -> bool {
    let m = params.size(n) as usize;
    let g = params.gap(n) as usize;
    let blocks = m.div_ceil(64);
    let top_mask: u64 = if m % 64 == 0 { !0 } else { (1u64 << (m % 64)) - 1 };
    let mut alive = vec![!0u64; blocks];
    alive[blocks - 1] &= top_mask;
    let get = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;
    for &a in word.symbols() {
        let mut next = vec![0u64; blocks];
        if a == 0 {
            // Rotate the alive set one step along the 0-cycle.
            let mut carry = get(&alive, m - 1) as u64;
            for i in 0..blocks {
                next[i] = alive[i] << 1 | carry;
                carry = alive[i] >> 63;
            }
            next[blocks - 1] &= top_mask;
            if get(&alive, m - g) {
                let t = (m - g + 2) % m;
                next[t / 64] |= 1u64 << (t % 64);
            }
        } else {
            // 1-edges run from vertices 1..=m-g, each to its successor.
            let mut masked = alive.clone();
            masked[0] &= !1u64;
            for i in (m - g + 1)..m {
                masked[i / 64] &= !(1u64 << (i % 64));
            }
            let mut carry = 0u64;
            for i in 0..blocks {
                next[i] = masked[i] << 1 | carry;
                carry = masked[i] >> 63;
            }
        }
        if next.iter().all(|&b| b == 0) {
            return false;
        }
        alive = next;
    }
    true
}

/// Membership in `L(Y_n) = L(Z_1) ∩ ... ∩ L(Z_n)`.  The intersection
/// language factors through the levels because every product vertex lies
/// on a 0-labeled cycle, so per-level acceptance already certifies an
/// extendable product path.
pub fn intersection_accepts(params: &ProximalParams, n: usize, word: &Word) -> bool {
    (1..=n).all(|k| level_accepts(params, k, word))
}

/// The coupling `Y_n` of levels `1..=n`, verified strongly connected and
/// aperiodic.
pub fn proximal_intersection(
    params: &ProximalParams,
    n: usize,
    max_vertices: usize,
) -> Result<SoficShift, ProximalError> {
    let graphs: Vec<LabeledGraph> = (1..=n)
        .map(|k| proximal_graph(params, k))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&LabeledGraph> = graphs.iter().collect();
    let product = LabeledGraph::couple(&refs, max_vertices)?;
    let shift = SoficShift::new(product)?;
    if !shift.strongly_connected() || shift.period() != 1 {
        return Err(ProximalError::WitnessFailed(
            "intersection presentation is not mixing",
        ));
    }
    Ok(shift)
}

/// A random point prefix of `Y_n`, drawn by a uniform walk on the coupled
/// presentation.
pub fn proximal_random_point<R: Rng>(
    params: &ProximalParams,
    n: usize,
    len: usize,
    max_vertices: usize,
    rng: &mut R,
) -> Result<Word, ProximalError> {
    let shift = proximal_intersection(params, n, max_vertices)?;
    Ok(shift.presentation().random_word(len, rng))
}

/// Words separating consecutive levels: the first is in
/// `L(Z_{n+1}) \ L(Z_n)` (a 1-run one longer than level `n` allows), the
/// second in `L(Z_n) \ L(Z_{n+1})` (periodic max-runs whose phase must
/// eventually cross the wider level-`n+1` gap).  Both claims are verified
/// before returning.
pub fn proximal_noninclusion_witnesses(
    params: &ProximalParams,
    n: usize,
) -> Result<(Word, Word), ProximalError> {
    let m = params.size(n) as usize;
    let g = params.gap(n) as usize;
    let run = m - g;
    let deeper = Word::new(vec![1; run + 1]);
    if level_accepts(params, n, &deeper) || !level_accepts(params, n + 1, &deeper) {
        return Err(ProximalError::WitnessFailed("long 1-run"));
    }
    let block = Word::new(vec![1; run]).concat(&Word::new(vec![0; g]));
    let shallower = block.repeat(params.base as usize + 2);
    if !level_accepts(params, n, &shallower) || level_accepts(params, n + 1, &shallower) {
        return Err(ProximalError::WitnessFailed("periodic max-run word"));
    }
    Ok((deeper, shallower))
}

/// Result of zeroing the periodic windows of level `n+1` out of a point
/// of `Y_n`.
#[derive(Debug, Clone)]
pub struct ZeroingShadow {
    pub y: Word,
    pub changed: usize,
    /// Exact fraction of changed coordinates.
    pub density: Rational,
    /// The target bound `g(n+1) / b^{n+1}`; guaranteed whenever the prefix
    /// length is a multiple of `b^{n+1}`.
    pub bound: Rational,
    pub bound_holds: bool,
}

/// Sets `y_j = 0` whenever `(j + offset) mod b^{n+1}` falls in the final
/// window of length `g(n+1)`, and `y_j = x_j` elsewhere.  The input must
/// be in `L(Y_n)`; the output is verified to be in `L(Y_{n+1})`.
pub fn proximal_zeroing_shadow(
    params: &ProximalParams,
    n: usize,
    x: &Word,
    offset: usize,
) -> Result<ZeroingShadow, ProximalError> {
    for k in 1..=n {
        if !level_accepts(params, k, x) {
            return Err(ProximalError::NotInLevel(k));
        }
    }
    let m1 = params.size(n + 1) as usize;
    let g1 = params.gap(n + 1) as usize;
    let mut symbols = x.symbols().to_vec();
    let mut changed = 0usize;
    for (j, s) in symbols.iter_mut().enumerate() {
        if (j + offset) % m1 >= m1 - g1 && *s != 0 {
            *s = 0 as Symbol;
            changed += 1;
        }
    }
    let y = Word::new(symbols);
    for k in 1..=(n + 1) {
        if !level_accepts(params, k, &y) {
            return Err(ProximalError::ShadowRejected(k));
        }
    }
    let density = if x.is_empty() { Rational::from_integer(0.into()) } else {
        rat_usize(changed, x.len())
    };
    let bound = rat_usize(g1, m1);
    let bound_holds = density <= bound;
    Ok(ZeroingShadow { y, changed, density, bound, bound_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn params_validation() {
        assert!(ProximalParams::new(2, 2, 1).is_err());
        assert!(ProximalParams::new(3, 3, 1).is_err()); // g(1) = 3 is not below b^1 = 3
        assert!(ProximalParams::new(3, 2, 2).is_ok());
        assert!(ProximalParams::new(10, 2, 3).is_ok());
    }

    #[test]
    fn level_one_shape() {
        let p = ProximalParams::defaults();
        let g = proximal_graph(&p, 1).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert!(g.is_strongly_connected());
        // Coprime cycle lengths 10 and 9 make the level aperiodic.
        assert_eq!(g.period().unwrap(), 1);
        assert!(g.safe_symbols().contains(&0));
        // Hereditary at edge level: every 1-edge has a parallel 0-edge.
        for e in g.edges().iter().filter(|e| e.label == 1) {
            assert!(g
                .edges()
                .iter()
                .any(|f| f.label == 0 && f.src == e.src && f.dst == e.dst));
        }
    }

    #[test]
    fn safe_symbol_every_level() {
        let p = ProximalParams::defaults();
        for n in 1..=2 {
            let g = proximal_graph(&p, n).unwrap();
            assert!(g.safe_symbols().contains(&0), "level {n}");
            assert_eq!(g.period().unwrap(), 1);
        }
    }

    #[test]
    fn bitset_acceptance_matches_graph() {
        let p = ProximalParams::defaults();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=2 {
            let g = proximal_graph(&p, n).unwrap();
            for len in [0usize, 1, 5, 20, 60] {
                for _ in 0..40 {
                    let w = Word::new(
                        (0..len).map(|_| rng.gen_range(0..2) as Symbol).collect(),
                    );
                    assert_eq!(
                        level_accepts(&p, n, &w),
                        g.accepts(&w),
                        "n={n} w={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn run_length_boundary() {
        let p = ProximalParams::defaults();
        assert!(level_accepts(&p, 1, &Word::new(vec![1; 8])));
        assert!(!level_accepts(&p, 1, &Word::new(vec![1; 9])));
        assert!(level_accepts(&p, 2, &Word::new(vec![1; 96])));
        assert!(!level_accepts(&p, 2, &Word::new(vec![1; 97])));
    }

    #[test]
    fn intersection_is_mixing() {
        let p = ProximalParams::defaults();
        for n in 1..=2 {
            let y = proximal_intersection(&p, n, 10_000).unwrap();
            assert!(y.strongly_connected());
            assert_eq!(y.period(), 1);
        }
    }

    #[test]
    fn intersection_level_one_matches_z1() {
        let p = ProximalParams::defaults();
        let y1 = proximal_intersection(&p, 1, 100).unwrap();
        let z1 = proximal_graph(&p, 1).unwrap();
        assert_eq!(
            y1.language(6, 10_000).unwrap(),
            z1.language(6, 10_000).unwrap()
        );
    }

    #[test]
    fn noninclusion_witnesses_verify() {
        let p = ProximalParams::defaults();
        let (deeper, shallower) = proximal_noninclusion_witnesses(&p, 1).unwrap();
        assert_eq!(deeper.len(), 9);
        assert_eq!(shallower.len(), 120);
        let (d2, s2) = proximal_noninclusion_witnesses(&p, 2).unwrap();
        assert_eq!(d2.len(), 97);
        assert_eq!(s2.len(), 1200);
    }

    #[test]
    fn shadow_of_zeros_is_identity() {
        let p = ProximalParams::defaults();
        let x = Word::new(vec![0; 500]);
        let s = proximal_zeroing_shadow(&p, 1, &x, 0).unwrap();
        assert_eq!(s.y, x);
        assert_eq!(s.changed, 0);
        assert!(s.bound_holds);
    }

    #[test]
    fn shadow_random_points() {
        let p = ProximalParams::defaults();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=2 {
            let x = proximal_random_point(&p, n, 10_000, 10_000, &mut rng).unwrap();
            let s = proximal_zeroing_shadow(&p, n, &x, 0).unwrap();
            assert!(s.bound_holds, "n={n} density {} bound {}", s.density, s.bound);
            assert_eq!(s.bound, rat_usize(
                p.gap(n + 1) as usize,
                p.size(n + 1) as usize,
            ));
            // Changed positions sit only inside the zeroing windows.
            let m1 = p.size(n + 1) as usize;
            let g1 = p.gap(n + 1) as usize;
            for j in 0..x.len() {
                if s.y.symbols()[j] != x.symbols()[j] {
                    assert!(j % m1 >= m1 - g1);
                }
            }
            assert!(intersection_accepts(&p, n + 1, &s.y));
        }
    }

    #[test]
    fn shadow_rejects_nonmember_input() {
        let p = ProximalParams::defaults();
        let x = Word::new(vec![1; 9]);
        assert!(matches!(
            proximal_zeroing_shadow(&p, 1, &x, 0),
            Err(ProximalError::NotInLevel(1))
        ));
    }

    #[test]
    fn vertex_cap() {
        let p = ProximalParams::new(10, 2, 8).unwrap();
        assert!(matches!(
            proximal_graph(&p, 7),
            Err(ProximalError::VertexCap(..))
        ));
    }
}
