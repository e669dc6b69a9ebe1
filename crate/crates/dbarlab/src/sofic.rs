//! Sofic shifts presented by labeled multigraphs: pruning, strong
//! connectivity, period, safe symbols, couplings (label products), language
//! enumeration with caps, entropy bounds, and fast word acceptance.
//!
//! A presentation is a triple (V, E, tau) encoded as a [`LabeledGraph`];
//! parallel edges with distinct labels are allowed and edge identity is
//! `(src, dst, label)`. All analysis runs on pruned graphs, in which every
//! vertex has positive in- and out-degree, so every vertex carries
//! bi-infinite label paths and vertex languages are extendable both ways.

use std::collections::{BTreeMap, BTreeSet};

use num::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{Alphabet, Symbol, Word};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("edge ({src},{dst}) has vertex id out of range (vertex_count {vertex_count})")]
    BadVertex { src: usize, dst: usize, vertex_count: usize },
    #[error("edge label {0} not in alphabet of size {1}")]
    BadLabel(Symbol, usize),
    #[error("graph presents the empty shift (pruning removed every vertex)")]
    EmptyShift,
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("couplings require at least one graph")]
    NoFactors,
    #[error("couplings require a common alphabet")]
    AlphabetMismatch,
    #[error("product would have {0} vertices, exceeding the cap of {1}")]
    VertexCap(usize, usize),
    #[error("language has at least {lower_bound} words of length {n}, exceeding the cap of {cap}")]
    WordCap { n: usize, lower_bound: usize, cap: usize },
    #[error("cycle enumeration exceeded the cap of {0}")]
    CycleCap(usize),
}

/// A single labeled edge; identity is the full triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: Symbol,
}

/// A labeled multigraph presenting a sofic shift. Edges are stored sorted by
/// `(src, label, dst)` with duplicate triples collapsed, so every iteration
/// order (and hence every output) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertex_count: usize,
    alphabet: Alphabet,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(
        vertex_count: usize,
        alphabet: Alphabet,
        mut edges: Vec<Edge>,
    ) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        for e in &edges {
            if e.src >= vertex_count || e.dst >= vertex_count {
                return Err(GraphError::BadVertex {
                    src: e.src,
                    dst: e.dst,
                    vertex_count,
                });
            }
            if !alphabet.contains(e.label) {
                return Err(GraphError::BadLabel(e.label, alphabet.size()));
            }
        }
        edges.sort_by_key(|e| (e.src, e.label, e.dst));
        edges.dedup();
        Ok(LabeledGraph {
            vertex_count,
            alphabet,
            edges,
        })
    }

    /// The full shift over `alphabet`: one vertex with a loop per symbol.
    pub fn full_shift(alphabet: Alphabet) -> Self {
        let edges = alphabet
            .symbols()
            .map(|a| Edge { src: 0, dst: 0, label: a })
            .collect();
        LabeledGraph::new(1, alphabet, edges).expect("valid by construction")
    }

    /// The golden-mean shift (binary words with no factor 11).
    pub fn golden_mean() -> Self {
        LabeledGraph::new(
            2,
            Alphabet::binary(),
            vec![
                Edge { src: 0, dst: 0, label: 0 },
                Edge { src: 0, dst: 1, label: 1 },
                Edge { src: 1, dst: 0, label: 0 },
            ],
        )
        .expect("valid by construction")
    }

    /// A pure cycle reading off `labels` in order.
    pub fn cycle(labels: &Word, alphabet: Alphabet) -> Result<Self, GraphError> {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let edges = (0..n)
            .map(|i| Edge {
                src: i,
                dst: (i + 1) % n,
                label: labels.symbols()[i],
            })
            .collect();
        LabeledGraph::new(n, alphabet, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    fn out_adj(&self) -> Vec<Vec<&Edge>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.src].push(e);
        }
        adj
    }

    fn in_adj(&self) -> Vec<Vec<&Edge>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.dst].push(e);
        }
        adj
    }

    /// Iteratively removes vertices with zero out-degree or zero in-degree
    /// (such vertices carry no bi-infinite paths), then renumbers the
    /// survivors in increasing order of their old ids. Errors when nothing
    /// survives.
    pub fn prune(&self) -> Result<LabeledGraph, GraphError> {
        let mut alive = vec![true; self.vertex_count];
        let mut out_deg = vec![0usize; self.vertex_count];
        let mut in_deg = vec![0usize; self.vertex_count];
        for e in &self.edges {
            out_deg[e.src] += 1;
            in_deg[e.dst] += 1;
        }
        let mut queue: Vec<usize> = (0..self.vertex_count)
            .filter(|&v| out_deg[v] == 0 || in_deg[v] == 0)
            .collect();
        let out_adj = self.out_adj();
        let in_adj = self.in_adj();
        while let Some(v) = queue.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for e in &out_adj[v] {
                if alive[e.dst] {
                    in_deg[e.dst] -= 1;
                    if in_deg[e.dst] == 0 {
                        queue.push(e.dst);
                    }
                }
            }
            for e in &in_adj[v] {
                if alive[e.src] {
                    out_deg[e.src] -= 1;
                    if out_deg[e.src] == 0 {
                        queue.push(e.src);
                    }
                }
            }
        }
        let survivors: Vec<usize> = (0..self.vertex_count).filter(|&v| alive[v]).collect();
        if survivors.is_empty() {
            return Err(GraphError::EmptyShift);
        }
        let mut remap = vec![usize::MAX; self.vertex_count];
        for (new_id, &v) in survivors.iter().enumerate() {
            remap[v] = new_id;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| alive[e.src] && alive[e.dst])
            .map(|e| Edge {
                src: remap[e.src],
                dst: remap[e.dst],
                label: e.label,
            })
            .collect();
        LabeledGraph::new(survivors.len(), self.alphabet, edges)
    }

    fn reachable_from(&self, start: usize, reversed: bool) -> Vec<bool> {
        let adj = if reversed { self.in_adj() } else { self.out_adj() };
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for e in &adj[v] {
                let next = if reversed { e.src } else { e.dst };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.reachable_from(0, false).iter().all(|&b| b)
            && self.reachable_from(0, true).iter().all(|&b| b)
    }

    /// Strongly connected components, iteratively (Kosaraju), as sorted
    /// vertex lists in a deterministic order.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let out_adj = self.out_adj();
        let in_adj = self.in_adj();
        // First pass: iterative DFS post-order on the forward graph.
        let mut order = Vec::with_capacity(self.vertex_count);
        let mut seen = vec![false; self.vertex_count];
        for root in 0..self.vertex_count {
            if seen[root] {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            seen[root] = true;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < out_adj[v].len() {
                    let e = out_adj[v][*next];
                    *next += 1;
                    if !seen[e.dst] {
                        seen[e.dst] = true;
                        stack.push((e.dst, 0));
                    }
                } else {
                    order.push(v);
                    stack.pop();
                }
            }
        }
        // Second pass: DFS on the reverse graph in reverse post-order.
        let mut component = vec![usize::MAX; self.vertex_count];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for &root in order.iter().rev() {
            if component[root] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![root];
            component[root] = id;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for e in &in_adj[v] {
                    if component[e.src] == usize::MAX {
                        component[e.src] = id;
                        members.push(e.src);
                        stack.push(e.src);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    /// Period of a strongly connected graph: the gcd of all cycle lengths,
    /// computed as the gcd of `level[u] + 1 - level[v]` over edges `u -> v`
    /// for any BFS leveling.
    pub fn period(&self) -> Result<usize, GraphError> {
        if !self.is_strongly_connected() {
            return Err(GraphError::NotStronglyConnected);
        }
        let out_adj = self.out_adj();
        let mut level = vec![usize::MAX; self.vertex_count];
        level[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for e in &out_adj[v] {
                if level[e.dst] == usize::MAX {
                    level[e.dst] = level[v] + 1;
                    queue.push_back(e.dst);
                }
            }
        }
        let mut g: i64 = 0;
        for e in &self.edges {
            let diff = level[e.src] as i64 + 1 - level[e.dst] as i64;
            g = g.gcd(&diff);
        }
        debug_assert!(g > 0, "strongly connected graphs have cycles");
        Ok(g as usize)
    }

    /// Periods of the nontrivial strongly connected components (those
    /// containing at least one edge), paired with their vertex sets.
    pub fn component_periods(&self) -> Vec<(Vec<usize>, usize)> {
        let mut out = Vec::new();
        for members in self.strongly_connected_components() {
            let inside: BTreeSet<usize> = members.iter().copied().collect();
            let edges: Vec<Edge> = self
                .edges
                .iter()
                .filter(|e| inside.contains(&e.src) && inside.contains(&e.dst))
                .map(|e| {
                    let pos = |v| members.binary_search(&v).unwrap();
                    Edge {
                        src: pos(e.src),
                        dst: pos(e.dst),
                        label: e.label,
                    }
                })
                .collect();
            if edges.is_empty() {
                continue;
            }
            let sub = LabeledGraph::new(members.len(), self.alphabet, edges)
                .expect("valid by construction");
            let p = sub.period().expect("components are strongly connected");
            out.push((members, p));
        }
        out
    }

    /// Symbols `b` such that every edge `(v, v', .)` has a parallel edge
    /// `(v, v', b)`.
    pub fn safe_symbols(&self) -> BTreeSet<Symbol> {
        let pairs: BTreeSet<(usize, usize)> =
            self.edges.iter().map(|e| (e.src, e.dst)).collect();
        let triples: BTreeSet<(usize, usize, Symbol)> = self
            .edges
            .iter()
            .map(|e| (e.src, e.dst, e.label))
            .collect();
        self.alphabet
            .symbols()
            .filter(|&b| pairs.iter().all(|&(s, d)| triples.contains(&(s, d, b))))
            .collect()
    }

    /// Coupling (label product) of presentations over a common alphabet: on
    /// the product vertex set, an `l`-labeled edge exists iff every factor
    /// has one; the result is pruned. The product vertex count must stay
    /// under `max_vertices`.
    pub fn couple(
        graphs: &[&LabeledGraph],
        max_vertices: usize,
    ) -> Result<LabeledGraph, GraphError> {
        let first = *graphs.first().ok_or(GraphError::NoFactors)?;
        if graphs.iter().any(|g| g.alphabet != first.alphabet) {
            return Err(GraphError::AlphabetMismatch);
        }
        let mut total: usize = 1;
        for g in graphs {
            total = total
                .checked_mul(g.vertex_count)
                .filter(|&t| t <= max_vertices)
                .ok_or(GraphError::VertexCap(usize::MAX, max_vertices))?;
        }
        // Per-factor successor maps (src, label) -> destinations.
        let succ: Vec<BTreeMap<(usize, Symbol), Vec<usize>>> = graphs
            .iter()
            .map(|g| {
                let mut m: BTreeMap<(usize, Symbol), Vec<usize>> = BTreeMap::new();
                for e in g.edges() {
                    m.entry((e.src, e.label)).or_default().push(e.dst);
                }
                m
            })
            .collect();
        // Mixed-radix encoding of vertex tuples, last factor fastest.
        let radices: Vec<usize> = graphs.iter().map(|g| g.vertex_count).collect();
        let encode = |tuple: &[usize]| -> usize {
            tuple
                .iter()
                .zip(&radices)
                .fold(0usize, |acc, (&v, &r)| acc * r + v)
        };
        let mut edges = Vec::new();
        let mut tuple = vec![0usize; graphs.len()];
        'outer: loop {
            let src = encode(&tuple);
            for label in first.alphabet.symbols() {
                let dests: Option<Vec<&Vec<usize>>> = tuple
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| succ[i].get(&(v, label)))
                    .collect();
                let Some(dests) = dests else { continue };
                // Cartesian product of per-factor destination lists.
                let mut idx = vec![0usize; dests.len()];
                loop {
                    let dst_tuple: Vec<usize> =
                        idx.iter().zip(&dests).map(|(&i, d)| d[i]).collect();
                    edges.push(Edge {
                        src,
                        dst: encode(&dst_tuple),
                        label,
                    });
                    let mut k = dests.len();
                    loop {
                        if k == 0 {
                            break;
                        }
                        k -= 1;
                        idx[k] += 1;
                        if idx[k] < dests[k].len() {
                            break;
                        }
                        idx[k] = 0;
                        if k == 0 {
                            break;
                        }
                    }
                    if idx.iter().all(|&i| i == 0) {
                        break;
                    }
                }
            }
            // Advance the vertex tuple.
            let mut k = graphs.len();
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                tuple[k] += 1;
                if tuple[k] < radices[k] {
                    break;
                }
                tuple[k] = 0;
                if k == 0 {
                    break 'outer;
                }
            }
        }
        LabeledGraph::new(total, first.alphabet, edges)?.prune()
    }

    /// True iff this (pruned) presentation is strongly connected with
    /// period 1. This certifies mixing of the presented shift; a `false`
    /// verdict speaks only about this presentation.
    pub fn is_mixing_presentation(&self) -> bool {
        self.is_strongly_connected() && self.period().map_or(false, |p| p == 1)
    }

    /// Exactly `L_n`: the labels of length-`n` paths, deduplicated and
    /// sorted. Errors when more than `cap` words appear at any layer; the
    /// error carries that layer's count, a lower bound on `|L_n|` since
    /// languages of pruned graphs are extendable.
    pub fn language(&self, n: usize, cap: usize) -> Result<BTreeSet<Word>, GraphError> {
        let blocks = self.vertex_count.div_ceil(64);
        let mut frontier: BTreeMap<Word, Vec<u64>> = BTreeMap::new();
        let mut all = vec![u64::MAX; blocks];
        if self.vertex_count % 64 != 0 {
            all[blocks - 1] = (1u64 << (self.vertex_count % 64)) - 1;
        }
        frontier.insert(Word::empty(), all);
        for step in 0..n {
            let mut next: BTreeMap<Word, Vec<u64>> = BTreeMap::new();
            for (word, ends) in &frontier {
                for e in &self.edges {
                    if ends[e.src / 64] >> (e.src % 64) & 1 == 1 {
                        let mut w = word.symbols().to_vec();
                        w.push(e.label);
                        let entry = next
                            .entry(Word::new(w))
                            .or_insert_with(|| vec![0u64; blocks]);
                        entry[e.dst / 64] |= 1 << (e.dst % 64);
                    }
                }
            }
            if next.len() > cap {
                return Err(GraphError::WordCap {
                    n,
                    lower_bound: next.len(),
                    cap,
                });
            }
            frontier = next;
            if frontier.is_empty() {
                debug_assert!(step < n, "pruned graphs have paths of every length");
                break;
            }
        }
        Ok(frontier.into_keys().collect())
    }

    /// Entropy bounds in nats: upper = ln|L_n|/n (valid for every n by
    /// submultiplicativity of |L_n|); lower = the best ln(m)/c over root
    /// vertices, where m distinct label words of simple cycles of one
    /// length c pass through that root (their free concatenations give
    /// m^k distinct words of length kc).
    pub fn entropy_bounds(&self, n: usize, cap: usize) -> Result<(f64, f64), GraphError> {
        let upper = (self.language(n, cap)?.len() as f64).ln() / n as f64;
        let mut lower = 0.0f64;
        let max_cycle_len = 12.min(self.vertex_count);
        for root in 0..self.vertex_count {
            let mut by_len: BTreeMap<usize, BTreeSet<Word>> = BTreeMap::new();
            let mut count = 0usize;
            self.rooted_cycles(root, max_cycle_len, cap, &mut count, |w| {
                by_len.entry(w.len()).or_default().insert(w);
            })
            .ok();
            for (c, words) in by_len {
                let cand = (words.len() as f64).ln() / c as f64;
                if cand > lower {
                    lower = cand;
                }
            }
        }
        Ok((lower.min(upper), upper))
    }

    /// DFS enumeration of label words of simple cycles through `root` (no
    /// vertex repeated, cycle closes at the root), calling `emit` per cycle.
    fn rooted_cycles(
        &self,
        root: usize,
        max_len: usize,
        cap: usize,
        count: &mut usize,
        mut emit: impl FnMut(Word),
    ) -> Result<(), GraphError> {
        let out_adj = self.out_adj();
        let mut on_path = vec![false; self.vertex_count];
        on_path[root] = true;
        // Stack of (vertex, next edge index); labels track the path word.
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        let mut labels: Vec<Symbol> = Vec::new();
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < out_adj[v].len() && labels.len() < max_len {
                let e = out_adj[v][*next];
                *next += 1;
                if e.dst == root {
                    let mut w = labels.clone();
                    w.push(e.label);
                    *count += 1;
                    if *count > cap {
                        return Err(GraphError::CycleCap(cap));
                    }
                    emit(Word::new(w));
                } else if !on_path[e.dst] {
                    on_path[e.dst] = true;
                    labels.push(e.label);
                    stack.push((e.dst, 0));
                }
            } else {
                stack.pop();
                if v != root {
                    on_path[v] = false;
                    labels.pop();
                }
            }
        }
        Ok(())
    }

    /// Label words of all simple cycles of length at most `max_len`,
    /// deduplicated per rooted enumeration (each simple cycle is reported
    /// once, rooted at its smallest vertex).
    pub fn simple_label_cycles(
        &self,
        max_len: usize,
        cap: usize,
    ) -> Result<Vec<Word>, GraphError> {
        let mut out = Vec::new();
        let mut count = 0usize;
        for root in 0..self.vertex_count {
            let out_adj = self.out_adj();
            // Restrict to vertices >= root so each cycle is found exactly
            // once, rooted at its minimum vertex.
            let mut on_path = vec![false; self.vertex_count];
            on_path[root] = true;
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            let mut labels: Vec<Symbol> = Vec::new();
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < out_adj[v].len() && labels.len() < max_len {
                    let e = out_adj[v][*next];
                    *next += 1;
                    if e.dst == root {
                        let mut w = labels.clone();
                        w.push(e.label);
                        count += 1;
                        if count > cap {
                            return Err(GraphError::CycleCap(cap));
                        }
                        out.push(Word::new(w));
                    } else if e.dst > root && !on_path[e.dst] {
                        on_path[e.dst] = true;
                        labels.push(e.label);
                        stack.push((e.dst, 0));
                    }
                } else {
                    stack.pop();
                    if v != root {
                        on_path[v] = false;
                        labels.pop();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Whether `word` labels some path, via bitset propagation of alive
    /// vertex sets (O(|word| * |E| / 64)).
    pub fn accepts(&self, word: &Word) -> bool {
        let blocks = self.vertex_count.div_ceil(64);
        let mut alive = vec![u64::MAX; blocks];
        if self.vertex_count % 64 != 0 {
            alive[blocks - 1] = (1u64 << (self.vertex_count % 64)) - 1;
        }
        for &a in word.symbols() {
            let mut next = vec![0u64; blocks];
            for e in &self.edges {
                if e.label == a && alive[e.src / 64] >> (e.src % 64) & 1 == 1 {
                    next[e.dst / 64] |= 1 << (e.dst % 64);
                }
            }
            alive = next;
            if alive.iter().all(|&b| b == 0) {
                return false;
            }
        }
        true
    }

    /// A uniformly random walk of `len` steps from a random vertex; on a
    /// pruned graph this always succeeds and the label word is in `L_len`.
    pub fn random_word<R: Rng>(&self, len: usize, rng: &mut R) -> Word {
        let out_adj = self.out_adj();
        let mut v = rng.gen_range(0..self.vertex_count);
        while out_adj[v].is_empty() {
            v = rng.gen_range(0..self.vertex_count);
        }
        let mut labels = Vec::with_capacity(len);
        for _ in 0..len {
            let e = out_adj[v][rng.gen_range(0..out_adj[v].len())];
            labels.push(e.label);
            v = e.dst;
        }
        Word::new(labels)
    }
}

/// A sofic shift with its presentation and cached structural flags. The
/// flags describe this presentation, not some canonical one: in particular a
/// period > 1 or disconnected verdict does not by itself prove the shift is
/// non-mixing.
#[derive(Debug, Clone)]
pub struct SoficShift {
    presentation: LabeledGraph,
    strongly_connected: bool,
    /// gcd of cycle lengths when strongly connected; 0 otherwise.
    period: usize,
    safe_symbols: BTreeSet<Symbol>,
}

impl SoficShift {
    /// Prunes the presentation and caches its flags.
    pub fn new(graph: LabeledGraph) -> Result<Self, GraphError> {
        let presentation = graph.prune()?;
        let strongly_connected = presentation.is_strongly_connected();
        let period = if strongly_connected {
            presentation.period()?
        } else {
            0
        };
        let safe_symbols = presentation.safe_symbols();
        Ok(SoficShift {
            presentation,
            strongly_connected,
            period,
            safe_symbols,
        })
    }

    pub fn presentation(&self) -> &LabeledGraph {
        &self.presentation
    }

    pub fn strongly_connected(&self) -> bool {
        self.strongly_connected
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn safe_symbols(&self) -> &BTreeSet<Symbol> {
        &self.safe_symbols
    }

    pub fn is_mixing_presentation(&self) -> bool {
        self.strongly_connected && self.period == 1
    }

    pub fn language(&self, n: usize, cap: usize) -> Result<BTreeSet<Word>, GraphError> {
        self.presentation.language(n, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 2_000_000;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn prune_keeps_loops_and_rejects_paths() {
        let loop1 = LabeledGraph::new(
            1,
            Alphabet::binary(),
            vec![Edge { src: 0, dst: 0, label: 0 }],
        )
        .unwrap();
        assert_eq!(loop1.prune().unwrap(), loop1);

        let path = LabeledGraph::new(
            2,
            Alphabet::binary(),
            vec![Edge { src: 0, dst: 1, label: 0 }],
        )
        .unwrap();
        assert!(matches!(path.prune(), Err(GraphError::EmptyShift)));

        let full = LabeledGraph::full_shift(Alphabet::binary());
        assert_eq!(full.prune().unwrap(), full);
    }

    #[test]
    fn prune_removes_dangling_tail() {
        // Loop at 0 plus a tail 0 -> 1 with no exit from 1.
        let g = LabeledGraph::new(
            2,
            Alphabet::binary(),
            vec![
                Edge { src: 0, dst: 0, label: 0 },
                Edge { src: 0, dst: 1, label: 1 },
            ],
        )
        .unwrap();
        let p = g.prune().unwrap();
        assert_eq!(p.vertex_count(), 1);
        assert_eq!(p.edges().len(), 1);
    }

    #[test]
    fn strong_connectivity() {
        let cyc = LabeledGraph::cycle(&w("01"), Alphabet::binary()).unwrap();
        assert!(cyc.is_strongly_connected());
        let two_loops = LabeledGraph::new(
            2,
            Alphabet::binary(),
            vec![
                Edge { src: 0, dst: 0, label: 0 },
                Edge { src: 1, dst: 1, label: 1 },
            ],
        )
        .unwrap();
        assert!(!two_loops.is_strongly_connected());
        assert_eq!(two_loops.strongly_connected_components().len(), 2);
    }

    #[test]
    fn periods() {
        let loop1 = LabeledGraph::full_shift(Alphabet::binary());
        assert_eq!(loop1.period().unwrap(), 1);
        let c8 = LabeledGraph::cycle(&w("00000000"), Alphabet::binary()).unwrap();
        assert_eq!(c8.period().unwrap(), 8);
        let c2 = LabeledGraph::cycle(&w("01"), Alphabet::binary()).unwrap();
        assert_eq!(c2.period().unwrap(), 2);
        assert_eq!(LabeledGraph::golden_mean().period().unwrap(), 1);
    }

    #[test]
    fn period_divides_all_simple_cycle_lengths() {
        let graphs = [
            LabeledGraph::golden_mean(),
            LabeledGraph::cycle(&w("0110"), Alphabet::binary()).unwrap(),
            LabeledGraph::full_shift(Alphabet::new(3).unwrap()),
        ];
        for g in &graphs {
            let p = g.period().unwrap();
            for cycle in g.simple_label_cycles(12, 100_000).unwrap() {
                assert_eq!(cycle.len() % p, 0);
            }
        }
    }

    #[test]
    fn safe_symbols_examples() {
        let full = LabeledGraph::full_shift(Alphabet::binary());
        assert_eq!(full.safe_symbols().len(), 2);
        // Golden mean: edge 0->1 labeled 1 has no parallel 0-edge, and edge
        // 0->0 labeled 0 has no parallel 1-edge.
        assert!(LabeledGraph::golden_mean().safe_symbols().is_empty());
        // A graph where every edge pair carries label 0.
        let hered = LabeledGraph::new(
            2,
            Alphabet::binary(),
            vec![
                Edge { src: 0, dst: 1, label: 0 },
                Edge { src: 0, dst: 1, label: 1 },
                Edge { src: 1, dst: 0, label: 0 },
            ],
        )
        .unwrap();
        assert_eq!(hered.safe_symbols(), BTreeSet::from([0u8]));
    }

    #[test]
    fn couple_identity_and_disconnection() {
        let gm = LabeledGraph::golden_mean();
        assert_eq!(LabeledGraph::couple(&[&gm], 1000).unwrap(), gm);

        // Coupling of cycles with non-coprime periods 8 and 2 over a shared
        // safe alphabet behaviour: labels all 0 so edges always match.
        let c8 = LabeledGraph::cycle(&w("00000000"), Alphabet::binary()).unwrap();
        let c2 = LabeledGraph::cycle(&w("00"), Alphabet::binary()).unwrap();
        let prod = LabeledGraph::couple(&[&c8, &c2], 1000).unwrap();
        assert!(!prod.is_strongly_connected());
    }

    #[test]
    fn couple_language_contained_in_intersection() {
        let gm = LabeledGraph::golden_mean();
        let even_ish = LabeledGraph::new(
            2,
            Alphabet::binary(),
            vec![
                Edge { src: 0, dst: 0, label: 0 },
                Edge { src: 0, dst: 1, label: 1 },
                Edge { src: 1, dst: 0, label: 1 },
            ],
        )
        .unwrap();
        let prod = LabeledGraph::couple(&[&gm, &even_ish], 1000).unwrap();
        for n in 1..=8 {
            let lp = prod.language(n, CAP).unwrap();
            let l1 = gm.language(n, CAP).unwrap();
            let l2 = even_ish.language(n, CAP).unwrap();
            let inter: BTreeSet<Word> = l1.intersection(&l2).cloned().collect();
            assert!(lp.is_subset(&inter), "n = {n}");
        }
    }

    #[test]
    fn couple_language_equals_intersection_for_cycles() {
        // For deterministic presentations of periodic orbits the coupling
        // language is exactly the intersection.
        let a = LabeledGraph::cycle(&w("011"), Alphabet::binary()).unwrap();
        let b = LabeledGraph::cycle(&w("01"), Alphabet::binary()).unwrap();
        match LabeledGraph::couple(&[&a, &b], 1000) {
            Ok(prod) => {
                for n in 1..=6 {
                    let lp = prod.language(n, CAP).unwrap();
                    let inter: BTreeSet<Word> = a
                        .language(n, CAP)
                        .unwrap()
                        .intersection(&b.language(n, CAP).unwrap())
                        .cloned()
                        .collect();
                    assert_eq!(lp, inter, "n = {n}");
                }
            }
            Err(GraphError::EmptyShift) => {
                // Empty intersection is also consistent; verify it directly.
                let inter: BTreeSet<Word> = a
                    .language(6, CAP)
                    .unwrap()
                    .intersection(&b.language(6, CAP).unwrap())
                    .cloned()
                    .collect();
                assert!(inter.is_empty());
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn mixing_presentation() {
        assert!(LabeledGraph::full_shift(Alphabet::binary()).is_mixing_presentation());
        assert!(!LabeledGraph::cycle(&w("01"), Alphabet::binary())
            .unwrap()
            .is_mixing_presentation());
        assert!(LabeledGraph::golden_mean().is_mixing_presentation());
    }

    #[test]
    fn language_examples() {
        let full = LabeledGraph::full_shift(Alphabet::binary());
        assert_eq!(full.language(3, CAP).unwrap().len(), 8);
        assert_eq!(full.language(0, CAP).unwrap(), BTreeSet::from([Word::empty()]));

        let gm = LabeledGraph::golden_mean();
        let l3 = gm.language(3, CAP).unwrap();
        let expect: BTreeSet<Word> =
            ["000", "001", "010", "100", "101"].iter().map(|s| w(s)).collect();
        assert_eq!(l3, expect);

        let c2 = LabeledGraph::cycle(&w("01"), Alphabet::binary()).unwrap();
        let l2 = c2.language(2, CAP).unwrap();
        assert_eq!(l2, BTreeSet::from([w("01"), w("10")]));
    }

    #[test]
    fn language_matches_brute_force_golden_mean() {
        // Independent oracle: 11-free words counted/enumerated directly.
        let gm = LabeledGraph::golden_mean();
        for n in 1..=10usize {
            let brute: BTreeSet<Word> = (0..1usize << n)
                .map(|bits| Word::new((0..n).map(|k| ((bits >> k) & 1) as u8).collect()))
                .filter(|word| {
                    !word.symbols().windows(2).any(|p| p == [1, 1])
                })
                .collect();
            assert_eq!(gm.language(n, CAP).unwrap(), brute, "n = {n}");
        }
    }

    #[test]
    fn language_cap_errors_with_lower_bound() {
        let full = LabeledGraph::full_shift(Alphabet::binary());
        match full.language(10, 100) {
            Err(GraphError::WordCap { lower_bound, .. }) => assert!(lower_bound > 100),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn language_factorial_and_extendable() {
        let graphs = [LabeledGraph::golden_mean(), LabeledGraph::full_shift(Alphabet::binary())];
        for g in &graphs {
            for j in 1..=6usize {
                let lj = g.language(j, CAP).unwrap();
                let ljm1 = g.language(j - 1, CAP).unwrap();
                let ljp1 = g.language(j + 1, CAP).unwrap();
                for word in &lj {
                    assert!(ljp1.iter().any(|x| x.slice(0, j) == *word));
                    if j >= 1 {
                        assert!(ljm1.contains(&word.slice(0, j - 1)));
                        assert!(ljm1.contains(&word.slice(1, j)));
                    }
                }
            }
        }
    }

    #[test]
    fn language_submultiplicative() {
        let g = LabeledGraph::golden_mean();
        let sizes: Vec<usize> = (0..=10)
            .map(|n| g.language(n, CAP).unwrap().len())
            .collect();
        for n in 1..=5 {
            for m in 1..=5 {
                assert!(sizes[n + m] <= sizes[n] * sizes[m]);
            }
        }
    }

    #[test]
    fn entropy_bounds_examples() {
        let full = LabeledGraph::full_shift(Alphabet::binary());
        let (lo, hi) = full.entropy_bounds(8, CAP).unwrap();
        assert!((hi - (2.0f64).ln()).abs() < 1e-12);
        assert!((lo - (2.0f64).ln()).abs() < 1e-12);

        let gm = LabeledGraph::golden_mean();
        let (_, hi) = gm.entropy_bounds(16, CAP).unwrap();
        let golden = ((1.0 + 5.0f64.sqrt()) / 2.0).ln();
        assert!((hi - golden).abs() < 0.05, "upper {hi} vs {golden}");

        // A single periodic orbit has entropy 0; at horizon n the upper
        // bound is ln|L_n|/n = ln(2)/n, shrinking with n.
        let orbit = LabeledGraph::cycle(&w("01"), Alphabet::binary()).unwrap();
        let (lo, hi) = orbit.entropy_bounds(8, CAP).unwrap();
        assert!(lo.abs() < 1e-12);
        assert!((hi - (2.0f64).ln() / 8.0).abs() < 1e-12);
    }

    #[test]
    fn accepts_agrees_with_language() {
        let gm = LabeledGraph::golden_mean();
        for n in 1..=8usize {
            let lang = gm.language(n, CAP).unwrap();
            for bits in 0..1usize << n {
                let word = Word::new((0..n).map(|k| ((bits >> k) & 1) as u8).collect());
                assert_eq!(gm.accepts(&word), lang.contains(&word));
            }
        }
    }

    #[test]
    fn random_word_is_in_language() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let gm = LabeledGraph::golden_mean();
        for _ in 0..50 {
            let word = gm.random_word(20, &mut rng);
            assert!(gm.accepts(&word));
        }
    }

    #[test]
    fn sofic_shift_flags() {
        let s = SoficShift::new(LabeledGraph::golden_mean()).unwrap();
        assert!(s.strongly_connected());
        assert_eq!(s.period(), 1);
        assert!(s.is_mixing_presentation());
        assert!(s.safe_symbols().is_empty());

        let c2 = SoficShift::new(
            LabeledGraph::cycle(&w("01"), Alphabet::binary()).unwrap(),
        )
        .unwrap();
        assert_eq!(c2.period(), 2);
        assert!(!c2.is_mixing_presentation());
    }
}
