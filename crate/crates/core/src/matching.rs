//! Bipartite graphs, perfect matching search and enumeration, and
//! unique-perfect-matching testing.
//!
//! Uniqueness is decided in polynomial time (find one matching, orient,
//! look for an alternating cycle); exhaustive backtracking and the
//! permanent of the support pattern are the two independent counting
//! routes used to cross-check each other.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::bits;
use crate::hypercube::{Bipartition, CubeVertex, SupportPattern};

/// Default cap on total vertices for exhaustive matching enumeration.
pub const DEFAULT_VERTEX_CAP: usize = 40;
/// Default cap on part size for the permanent computation.
pub const DEFAULT_PERMANENT_CAP: usize = 20;
/// Hard per-side limit of the bitmask search state.
pub const SEARCH_SIDE_LIMIT: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("graph has {vertices} vertices, above the cap of {cap}")]
    VertexCapExceeded { vertices: usize, cap: usize },
    #[error("part size {side} is above the permanent cap of {cap}")]
    PermanentCapExceeded { side: usize, cap: usize },
    #[error("part size {side} is above the search limit of {SEARCH_SIDE_LIMIT}")]
    SearchLimitExceeded { side: usize },
    #[error("{left} {right} is not an edge of the graph")]
    NotAnEdge { left: String, right: String },
    #[error("vertex `{0}` is covered more than once")]
    DoublyCovered(String),
    #[error("matching is not perfect: `{0}` is uncovered")]
    NotPerfect(String),
    #[error("{left} {right} is not an edge of the matching")]
    NotInMatching { left: String, right: String },
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("matching has {edges} edges, above the subset-search cap of {cap}")]
    EdgeCapExceeded { edges: usize, cap: usize },
    #[error("dimension {n} is above the exhaustive-sweep cap of {cap}")]
    DimensionCapExceeded { n: usize, cap: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Where a graph's vertices came from, when it is (an induced subgraph of)
/// a hypercube.
#[derive(Debug, Clone)]
pub struct CubeOrigin {
    pub n: usize,
    pub left: Vec<CubeVertex>,
    pub right: Vec<CubeVertex>,
}

/// A bipartite graph with labelled parts X (left) and Y (right).
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    left_labels: Vec<String>,
    right_labels: Vec<String>,
    left_index: HashMap<String, usize>,
    right_index: HashMap<String, usize>,
    support: SupportPattern,
    origin: Option<CubeOrigin>,
}

impl BipartiteGraph {
    pub fn new(
        left_labels: Vec<String>,
        right_labels: Vec<String>,
        edges: &[(usize, usize)],
    ) -> Result<BipartiteGraph, GraphError> {
        let mut support = SupportPattern::zeros(left_labels.len(), right_labels.len());
        for &(l, r) in edges {
            assert!(l < left_labels.len() && r < right_labels.len(), "edge out of range");
            support.set(l, r, true);
        }
        Self::with_support(left_labels, right_labels, support, None)
    }

    fn with_support(
        left_labels: Vec<String>,
        right_labels: Vec<String>,
        support: SupportPattern,
        origin: Option<CubeOrigin>,
    ) -> Result<BipartiteGraph, GraphError> {
        let index = |labels: &[String]| {
            let mut map = HashMap::with_capacity(labels.len());
            for (i, l) in labels.iter().enumerate() {
                if map.insert(l.clone(), i).is_some() {
                    return Err(GraphError::DuplicateLabel(l.clone()));
                }
            }
            Ok(map)
        };
        Ok(BipartiteGraph {
            left_index: index(&left_labels)?,
            right_index: index(&right_labels)?,
            left_labels,
            right_labels,
            support,
            origin,
        })
    }

    /// Q_n with the even part on the left and the odd part on the right,
    /// both in lexicographic order.
    pub fn hypercube(n: usize) -> BipartiteGraph {
        let bip = Bipartition::new(n);
        let labels = |part: &[CubeVertex]| part.iter().map(|v| v.to_string()).collect();
        BipartiteGraph::with_support(
            labels(bip.even_part()),
            labels(bip.odd_part()),
            crate::hypercube::support_matrix(n),
            Some(CubeOrigin {
                n,
                left: bip.even_part().to_vec(),
                right: bip.odd_part().to_vec(),
            }),
        )
        .expect("hypercube labels are distinct")
    }

    pub fn n_left(&self) -> usize {
        self.left_labels.len()
    }

    pub fn n_right(&self) -> usize {
        self.right_labels.len()
    }

    pub fn order(&self) -> usize {
        self.n_left() + self.n_right()
    }

    pub fn left_label(&self, i: usize) -> &str {
        &self.left_labels[i]
    }

    pub fn right_label(&self, j: usize) -> &str {
        &self.right_labels[j]
    }

    pub fn left_index(&self, label: &str) -> Option<usize> {
        self.left_index.get(label).copied()
    }

    pub fn right_index(&self, label: &str) -> Option<usize> {
        self.right_index.get(label).copied()
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.support.get(l, r)
    }

    pub fn edge_count(&self) -> usize {
        self.support.count_ones()
    }

    /// The 0/1 support of the bipartite adjacency matrix: rows = left part.
    pub fn support(&self) -> &SupportPattern {
        &self.support
    }

    pub fn origin(&self) -> Option<&CubeOrigin> {
        self.origin.as_ref()
    }

    /// Induced subgraph on the given vertex labels (either side).
    pub fn induced<'g, S: AsRef<str>>(
        &'g self,
        kept: &[S],
    ) -> Result<InducedSubgraph<'g>, GraphError> {
        let mut kept_left = vec![0u64; bits::words_for(self.n_left())];
        let mut kept_right = vec![0u64; bits::words_for(self.n_right())];
        for label in kept {
            let label = label.as_ref();
            if let Some(i) = self.left_index(label) {
                bits::set_bit(&mut kept_left, i, true);
            } else if let Some(j) = self.right_index(label) {
                bits::set_bit(&mut kept_right, j, true);
            } else {
                return Err(GraphError::UnknownVertex(label.to_owned()));
            }
        }
        Ok(InducedSubgraph {
            host: self,
            kept_left,
            kept_right,
        })
    }

    /// Induced subgraph from per-part index lists.
    pub fn induced_by_indices<'g>(
        &'g self,
        left: &[usize],
        right: &[usize],
    ) -> InducedSubgraph<'g> {
        let mut kept_left = vec![0u64; bits::words_for(self.n_left())];
        let mut kept_right = vec![0u64; bits::words_for(self.n_right())];
        for &i in left {
            assert!(i < self.n_left());
            bits::set_bit(&mut kept_left, i, true);
        }
        for &j in right {
            assert!(j < self.n_right());
            bits::set_bit(&mut kept_right, j, true);
        }
        InducedSubgraph {
            host: self,
            kept_left,
            kept_right,
        }
    }

    /// Serialize in the edge-list text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("graph {} {}\n", self.n_left(), self.n_right());
        for l in 0..self.n_left() {
            for r in bits::ones(self.support.row_words(l)) {
                writeln!(out, "edge {} {}", self.left_labels[l], self.right_labels[r]).unwrap();
            }
        }
        out
    }

    /// Parse either format: `graph <nleft> <nright>` with `edge <l> <r>`
    /// lines, or `hypercube <n>` with optional `keep <vertex>` lines.
    pub fn parse(text: &str) -> Result<BipartiteGraph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty graph file"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        match head[0] {
            "graph" => {
                if head.len() != 3 {
                    return Err(parse_err(line_no, "expected `graph <nleft> <nright>`"));
                }
                let n_left: usize = head[1]
                    .parse()
                    .map_err(|_| parse_err(line_no, "bad left part size"))?;
                let n_right: usize = head[2]
                    .parse()
                    .map_err(|_| parse_err(line_no, "bad right part size"))?;
                let mut left_labels: Vec<String> = Vec::new();
                let mut right_labels: Vec<String> = Vec::new();
                let mut edges = Vec::new();
                for (line_no, line) in lines {
                    let tok: Vec<&str> = line.split_whitespace().collect();
                    if tok.len() != 3 || tok[0] != "edge" {
                        return Err(parse_err(line_no, "expected `edge <left> <right>`"));
                    }
                    let mut intern = |labels: &mut Vec<String>, cap: usize, label: &str| {
                        if let Some(i) = labels.iter().position(|l| l == label) {
                            Ok(i)
                        } else if labels.len() == cap {
                            Err(parse_err(
                                line_no,
                                format!("label `{label}` exceeds the declared part size {cap}"),
                            ))
                        } else {
                            labels.push(label.to_owned());
                            Ok(labels.len() - 1)
                        }
                    };
                    let l = intern(&mut left_labels, n_left, tok[1])?;
                    let r = intern(&mut right_labels, n_right, tok[2])?;
                    edges.push((l, r));
                }
                // unreferenced vertices are isolated; give them placeholder names
                while left_labels.len() < n_left {
                    left_labels.push(format!("_left{}", left_labels.len()));
                }
                while right_labels.len() < n_right {
                    right_labels.push(format!("_right{}", right_labels.len()));
                }
                BipartiteGraph::new(left_labels, right_labels, &edges)
            }
            "hypercube" => {
                if head.len() != 2 {
                    return Err(parse_err(line_no, "expected `hypercube <n>`"));
                }
                let n: usize = head[1]
                    .parse()
                    .map_err(|_| parse_err(line_no, "bad dimension"))?;
                if n < 1 || n > crate::hypercube::MAX_DIMENSION {
                    return Err(parse_err(line_no, format!("dimension {n} out of range")));
                }
                let cube = BipartiteGraph::hypercube(n);
                let mut kept = Vec::new();
                for (line_no, line) in lines {
                    let tok: Vec<&str> = line.split_whitespace().collect();
                    if tok.len() != 2 || tok[0] != "keep" {
                        return Err(parse_err(line_no, "expected `keep <vertex>`"));
                    }
                    kept.push(tok[1].to_owned());
                }
                if kept.is_empty() {
                    Ok(cube)
                } else {
                    Ok(cube.induced(&kept)?.to_graph())
                }
            }
            other => Err(parse_err(
                line_no,
                format!("unknown header `{other}`, expected `graph` or `hypercube`"),
            )),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

/// A vertex-induced subgraph, kept as bitmasks over the host's parts.
#[derive(Debug, Clone)]
pub struct InducedSubgraph<'g> {
    host: &'g BipartiteGraph,
    kept_left: Vec<u64>,
    kept_right: Vec<u64>,
}

impl InducedSubgraph<'_> {
    pub fn host(&self) -> &BipartiteGraph {
        self.host
    }

    pub fn left_count(&self) -> usize {
        self.kept_left.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn right_count(&self) -> usize {
        self.kept_right.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn order(&self) -> usize {
        self.left_count() + self.right_count()
    }

    /// Materialize as a standalone graph; edges are exactly the host edges
    /// with both ends kept.
    pub fn to_graph(&self) -> BipartiteGraph {
        let left: Vec<usize> = bits::ones(&self.kept_left).collect();
        let right: Vec<usize> = bits::ones(&self.kept_right).collect();
        let mut support = SupportPattern::zeros(left.len(), right.len());
        for (i, &l) in left.iter().enumerate() {
            let row = self.host.support.row_words(l);
            for (j, &r) in right.iter().enumerate() {
                if bits::get_bit(row, r) {
                    support.set(i, j, true);
                }
            }
        }
        let origin = self.host.origin.as_ref().map(|o| CubeOrigin {
            n: o.n,
            left: left.iter().map(|&l| o.left[l]).collect(),
            right: right.iter().map(|&r| o.right[r]).collect(),
        });
        BipartiteGraph::with_support(
            left.iter().map(|&l| self.host.left_labels[l].clone()).collect(),
            right.iter().map(|&r| self.host.right_labels[r].clone()).collect(),
            support,
            origin,
        )
        .expect("host labels are distinct")
    }
}

/// A set of pairwise disjoint edges, stored as (left, right) index pairs
/// sorted by left index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    /// Validate that the pairs are edges of `g` and pairwise disjoint.
    pub fn new(g: &BipartiteGraph, pairs: Vec<(usize, usize)>) -> Result<Matching, GraphError> {
        let mut seen_left = vec![false; g.n_left()];
        let mut seen_right = vec![false; g.n_right()];
        for &(l, r) in &pairs {
            if l >= g.n_left() || r >= g.n_right() || !g.has_edge(l, r) {
                return Err(GraphError::NotAnEdge {
                    left: g
                        .left_labels
                        .get(l)
                        .cloned()
                        .unwrap_or_else(|| format!("#{l}")),
                    right: g
                        .right_labels
                        .get(r)
                        .cloned()
                        .unwrap_or_else(|| format!("#{r}")),
                });
            }
            if std::mem::replace(&mut seen_left[l], true) {
                return Err(GraphError::DoublyCovered(g.left_labels[l].clone()));
            }
            if std::mem::replace(&mut seen_right[r], true) {
                return Err(GraphError::DoublyCovered(g.right_labels[r].clone()));
            }
        }
        let mut edges = pairs;
        edges.sort_unstable();
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Err with the first uncovered vertex when not a perfect matching of `g`.
    pub fn check_perfect(&self, g: &BipartiteGraph) -> Result<(), GraphError> {
        if self.edges.len() == g.n_left() && g.n_left() == g.n_right() {
            return Ok(());
        }
        let covered_left: Vec<usize> = self.edges.iter().map(|e| e.0).collect();
        for l in 0..g.n_left() {
            if !covered_left.contains(&l) {
                return Err(GraphError::NotPerfect(g.left_labels[l].clone()));
            }
        }
        let covered_right: Vec<usize> = self.edges.iter().map(|e| e.1).collect();
        for r in 0..g.n_right() {
            if !covered_right.contains(&r) {
                return Err(GraphError::NotPerfect(g.right_labels[r].clone()));
            }
        }
        unreachable!("matching covers everything yet is not perfect");
    }

    /// One `<left> <right>` line per edge.
    pub fn to_text(&self, g: &BipartiteGraph) -> String {
        let mut out = String::new();
        for &(l, r) in &self.edges {
            writeln!(out, "{} {}", g.left_labels[l], g.right_labels[r]).unwrap();
        }
        out
    }

    /// Edges as `<left>-<right>` tokens separated by single spaces.
    pub fn format_edges(&self, g: &BipartiteGraph) -> String {
        self.edges
            .iter()
            .map(|&(l, r)| format!("{}-{}", g.left_labels[l], g.right_labels[r]))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parse a matching file against `g`: one edge per line, two labels
    /// separated by whitespace (either order).
    pub fn parse(g: &BipartiteGraph, text: &str) -> Result<Matching, GraphError> {
        let mut pairs = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let tok: Vec<&str> = line.split_whitespace().collect();
            if tok.len() != 2 {
                return Err(parse_err(line_no + 1, "expected two vertex labels"));
            }
            let pair = match (g.left_index(tok[0]), g.right_index(tok[1])) {
                (Some(l), Some(r)) => (l, r),
                _ => match (g.left_index(tok[1]), g.right_index(tok[0])) {
                    (Some(l), Some(r)) => (l, r),
                    _ => {
                        let unknown = if g.left_index(tok[0]).is_none()
                            && g.right_index(tok[0]).is_none()
                        {
                            tok[0]
                        } else {
                            tok[1]
                        };
                        return Err(GraphError::UnknownVertex(unknown.to_owned()));
                    }
                },
            };
            pairs.push(pair);
        }
        Matching::new(g, pairs)
    }
}

/// Per-side adjacency bitmasks for the search routines.
struct CompactAdj {
    left: Vec<u64>,
    right: Vec<u64>,
}

fn compact_adjacency(g: &BipartiteGraph) -> Result<CompactAdj, GraphError> {
    let side = g.n_left().max(g.n_right());
    if side > SEARCH_SIDE_LIMIT {
        return Err(GraphError::SearchLimitExceeded { side });
    }
    let mut left = vec![0u64; g.n_left()];
    let mut right = vec![0u64; g.n_right()];
    for l in 0..g.n_left() {
        for r in bits::ones(g.support.row_words(l)) {
            left[l] |= 1 << r;
            right[r] |= 1 << l;
        }
    }
    Ok(CompactAdj { left, right })
}

/// One perfect matching by augmenting-path search, or `None`.
///
/// Deterministic: vertices and candidate edges are tried in index order.
pub fn find_perfect_matching(g: &BipartiteGraph) -> Option<Matching> {
    if g.n_left() != g.n_right() {
        return None;
    }
    let n = g.n_left();
    let mut match_of_right: Vec<Option<usize>> = vec![None; n];
    for start in 0..n {
        let mut visited = vec![false; n];
        if !augment(g, start, &mut visited, &mut match_of_right) {
            return None;
        }
    }
    let pairs = match_of_right
        .iter()
        .enumerate()
        .map(|(r, l)| (l.unwrap(), r))
        .collect();
    Some(Matching::new(g, pairs).expect("augmenting search yields a valid matching"))
}

fn augment(
    g: &BipartiteGraph,
    l: usize,
    visited: &mut [bool],
    match_of_right: &mut [Option<usize>],
) -> bool {
    for r in bits::ones(g.support.row_words(l)) {
        if visited[r] {
            continue;
        }
        visited[r] = true;
        let free = match match_of_right[r] {
            None => true,
            Some(owner) => augment(g, owner, visited, match_of_right),
        };
        if free {
            match_of_right[r] = Some(l);
            return true;
        }
    }
    false
}

/// The unique perfect matching of `g`, or `None` when there are zero or
/// at least two.
///
/// Finds one matching M, then orients matched edges right-to-left and the
/// rest left-to-right; M is unique exactly when that digraph is acyclic,
/// since a second matching differs from M along an alternating cycle.
pub fn unique_perfect_matching(g: &BipartiteGraph) -> Option<Matching> {
    let m = find_perfect_matching(g)?;
    let n = g.n_left();
    let mut match_of_left = vec![0usize; n];
    let mut match_of_right = vec![0usize; n];
    for &(l, r) in m.edges() {
        match_of_left[l] = r;
        match_of_right[r] = l;
    }
    // contracted arcs between left vertices: u -> owner(w) for each
    // unmatched edge (u, w)
    let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, out) in arcs.iter_mut().enumerate() {
        for w in bits::ones(g.support.row_words(u)) {
            if w != match_of_left[u] {
                out.push(match_of_right[w]);
            }
        }
    }
    if digraph_has_cycle(&arcs) {
        None
    } else {
        Some(m)
    }
}

fn digraph_has_cycle(arcs: &[Vec<usize>]) -> bool {
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; arcs.len()];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..arcs.len() {
        if state[start] != 0 {
            continue;
        }
        state[start] = 1;
        stack.push((start, 0));
        while let Some(frame) = stack.last_mut() {
            let v = frame.0;
            if let Some(&w) = arcs[v].get(frame.1) {
                frame.1 += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

/// Exhaustive count of perfect matchings, with a callback per matching.
///
/// Branches on an uncovered vertex of minimum remaining degree and aborts
/// any branch containing a degree-zero uncovered vertex. The callback can
/// stop the enumeration early; the count covers matchings seen so far.
pub fn for_each_perfect_matching(
    g: &BipartiteGraph,
    vertex_cap: usize,
    mut callback: impl FnMut(&Matching) -> ControlFlow<()>,
) -> Result<u64, GraphError> {
    if g.order() > vertex_cap {
        return Err(GraphError::VertexCapExceeded {
            vertices: g.order(),
            cap: vertex_cap,
        });
    }
    if g.n_left() != g.n_right() {
        return Ok(0);
    }
    let n = g.n_left();
    if n == 0 {
        let empty = Matching { edges: Vec::new() };
        let _ = callback(&empty);
        return Ok(1);
    }
    let adj = compact_adjacency(g)?;
    let full = |k: usize| -> u64 {
        if k == 64 {
            !0
        } else {
            (1u64 << k) - 1
        }
    };
    let mut search = Search {
        adj: &adj,
        edges: Vec::with_capacity(n),
        count: 0,
        callback: &mut callback,
    };
    let _ = search.run(full(n), full(n));
    Ok(search.count)
}

struct Search<'a, F: FnMut(&Matching) -> ControlFlow<()>> {
    adj: &'a CompactAdj,
    edges: Vec<(usize, usize)>,
    count: u64,
    callback: &'a mut F,
}

impl<F: FnMut(&Matching) -> ControlFlow<()>> Search<'_, F> {
    fn run(&mut self, left_free: u64, right_free: u64) -> ControlFlow<()> {
        if left_free == 0 {
            self.count += 1;
            let mut edges = self.edges.clone();
            edges.sort_unstable();
            return (self.callback)(&Matching { edges });
        }
        // uncovered vertex of minimum remaining degree, left side and then
        // lower index winning ties; a zero-degree vertex kills the branch
        let mut best = (usize::MAX, true, 0usize);
        let mut scan = |free: u64, adj: &[u64], other_free: u64, is_left: bool, best: &mut (usize, bool, usize)| {
            let mut rest = free;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let deg = (adj[v] & other_free).count_ones() as usize;
                if deg < best.0 {
                    *best = (deg, is_left, v);
                }
            }
        };
        scan(left_free, &self.adj.left, right_free, true, &mut best);
        scan(right_free, &self.adj.right, left_free, false, &mut best);
        if best.0 == 0 {
            return ControlFlow::Continue(());
        }
        let (_, is_left, v) = best;
        let partners = if is_left {
            self.adj.left[v] & right_free
        } else {
            self.adj.right[v] & left_free
        };
        let mut rest = partners;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (l, r) = if is_left { (v, u) } else { (u, v) };
            self.edges.push((l, r));
            let flow = self.run(left_free & !(1 << l), right_free & !(1 << r));
            self.edges.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Exact number of perfect matchings by backtracking.
pub fn count_perfect_matchings(g: &BipartiteGraph, vertex_cap: usize) -> Result<u64, GraphError> {
    for_each_perfect_matching(g, vertex_cap, |_| ControlFlow::Continue(()))
}

/// Number of perfect matchings as the permanent of the 0/1 support matrix,
/// by inclusion-exclusion over column subsets. Independent of the
/// backtracking route.
pub fn permanent_count(g: &BipartiteGraph, side_cap: usize) -> Result<u64, GraphError> {
    if g.n_left() != g.n_right() {
        return Ok(0);
    }
    let n = g.n_left();
    if n > side_cap.min(63) {
        return Err(GraphError::PermanentCapExceeded { side: n, cap: side_cap.min(63) });
    }
    if n == 0 {
        return Ok(1);
    }
    // Ryser with Gray-code subset updates: row sums over the current
    // column subset, product accumulated per subset with alternating sign.
    let mut row_sums = vec![0i64; n];
    let mut total: i128 = 0;
    let mut prev: u64 = 0;
    for s in 1u64..1 << n {
        let gray = s ^ (s >> 1);
        let toggled = (gray ^ prev).trailing_zeros() as usize;
        let added = gray >> toggled & 1 == 1;
        prev = gray;
        for (r, sum) in row_sums.iter_mut().enumerate() {
            if g.support.get(r, toggled) {
                *sum += if added { 1 } else { -1 };
            }
        }
        let product: i128 = row_sums.iter().map(|&x| x as i128).product();
        if product != 0 {
            let sign_odd = (n as u32 - gray.count_ones()) % 2 == 1;
            total += if sign_odd { -product } else { product };
        }
    }
    Ok(u64::try_from(total).expect("permanent of a 0/1 matrix is nonnegative"))
}
