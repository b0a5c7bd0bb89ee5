//! Undirected simple graphs, independent sets, and partitioned
//! independent-set instances with exact brute-force solvers.
//!
//! Vertices are dense integers `1..=n`; external names are mapped at the
//! format layer.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use thiserror::Error;

/// Brute-force vertex cap for [`max_independent_set`].
pub const DEFAULT_IS_CAP: usize = 24;
/// Brute-force cap on the number of per-part selections in [`solve_pis`].
pub const DEFAULT_PIS_CAP: u128 = 1 << 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("parts must be disjoint: vertex {0} appears twice")]
    OverlappingParts(usize),
    #[error("parts must cover all vertices: vertex {0} is missing")]
    UncoveredVertex(usize),
    #[error("parts must have equal cardinality")]
    UnequalParts,
    #[error("part {0} is not an independent set")]
    DependentPart(usize),
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("instance needs at least one part")]
    NoParts,
    #[error("brute-force cap exceeded: {reason}")]
    CapExceeded { reason: String },
    #[error("malformed {what} at line {line}: {message}")]
    Format {
        what: &'static str,
        line: usize,
        message: String,
    },
}

impl GraphError {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, GraphError::CapExceeded { .. })
    }
}

/// An undirected simple graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, normalizing each edge to `(min, max)`. Rejects loops,
    /// duplicates and out-of-range endpoints.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(GraphError::VertexOutOfRange(v, n));
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as normalized `(u, v)` pairs with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Whether `set` contains no edge of the graph.
    pub fn is_independent(&self, set: &BTreeSet<usize>) -> Result<bool, GraphError> {
        for &v in set {
            if v < 1 || v > self.n {
                return Err(GraphError::VertexOutOfRange(v, self.n));
            }
        }
        Ok(self
            .edges
            .iter()
            .all(|(u, v)| !(set.contains(u) && set.contains(v))))
    }

    /// Per-vertex neighbor bitmasks (bit `v-1` for vertex `v`); `None` when
    /// the graph has more than 64 vertices.
    fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        let mut adj = vec![0u64; self.n + 1];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << (v - 1);
            adj[v] |= 1 << (u - 1);
        }
        Some(adj)
    }

    /// Line-oriented graph format: `n m`, then one `u v` line per edge with
    /// `u < v`, in sorted order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().enumerate();
        let (n, m) = match lines.next() {
            Some((_, header)) => parse_pair("graph", 1, header)?,
            None => return Err(format_err("graph", 1, "missing `n m` header")),
        };
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line_idx, line) = lines
                .next()
                .ok_or_else(|| format_err("graph", m + 1, "fewer edge lines than m"))?;
            let (u, v) = parse_pair("graph", line_idx + 1, line)?;
            if u >= v {
                return Err(format_err("graph", line_idx + 1, "edges must satisfy u < v"));
            }
            edges.push((u, v));
        }
        if let Some((line_idx, line)) = lines.next() {
            if !line.trim().is_empty() {
                return Err(format_err("graph", line_idx + 1, "trailing content"));
            }
        }
        Graph::new(n, edges)
    }
}

fn format_err(what: &'static str, line: usize, message: &str) -> GraphError {
    GraphError::Format {
        what,
        line,
        message: message.to_string(),
    }
}

fn parse_pair(what: &'static str, line_no: usize, line: &str) -> Result<(usize, usize), GraphError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [a, b] = fields[..] else {
        return Err(format_err(what, line_no, "expected two integers"));
    };
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| format_err(what, line_no, &format!("not an integer: `{s}`")))
    };
    Ok((parse(a)?, parse(b)?))
}

/// A partitioned independent-set instance: a graph, `k` equal-size
/// independent parts covering all vertices, and a multiplicity `p`.
///
/// The question the instance poses: is there an independent set meeting every
/// part in exactly `p` vertices?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedInstance {
    graph: Graph,
    parts: Vec<BTreeSet<usize>>,
    multiplicity: usize,
}

impl PartitionedInstance {
    pub fn new(
        graph: Graph,
        parts: Vec<BTreeSet<usize>>,
        multiplicity: usize,
    ) -> Result<Self, GraphError> {
        if multiplicity == 0 {
            return Err(GraphError::ZeroMultiplicity);
        }
        if parts.is_empty() {
            return Err(GraphError::NoParts);
        }
        let mut seen = BTreeSet::new();
        for part in &parts {
            for &v in part {
                if v < 1 || v > graph.vertex_count() {
                    return Err(GraphError::VertexOutOfRange(v, graph.vertex_count()));
                }
                if !seen.insert(v) {
                    return Err(GraphError::OverlappingParts(v));
                }
            }
        }
        for v in 1..=graph.vertex_count() {
            if !seen.contains(&v) {
                return Err(GraphError::UncoveredVertex(v));
            }
        }
        let size = parts[0].len();
        if parts.iter().any(|p| p.len() != size) {
            return Err(GraphError::UnequalParts);
        }
        for (i, part) in parts.iter().enumerate() {
            if !graph.is_independent(part)? {
                return Err(GraphError::DependentPart(i + 1));
            }
        }
        Ok(PartitionedInstance {
            graph,
            parts,
            multiplicity,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn parts(&self) -> &[BTreeSet<usize>] {
        &self.parts
    }

    /// Number of parts (k).
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Common cardinality of the parts.
    pub fn part_size(&self) -> usize {
        self.parts[0].len()
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Combined instance format: the graph section, then `k p` and one line of
    /// space-separated vertices per part.
    pub fn to_text(&self) -> String {
        let mut out = self.graph.to_text();
        let _ = writeln!(out, "{} {}", self.parts.len(), self.multiplicity);
        for part in &self.parts {
            let mut first = true;
            for v in part {
                if !first {
                    out.push(' ');
                }
                let _ = write!(out, "{v}");
                first = false;
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let lines: Vec<&str> = text.lines().collect();
        let Some(header) = lines.first() else {
            return Err(format_err("instance", 1, "missing `n m` header"));
        };
        let (n, m) = parse_pair("instance", 1, header)?;
        if lines.len() < m + 2 {
            return Err(format_err("instance", lines.len(), "missing partition header"));
        }
        let graph_text: String = lines[..=m]
            .iter()
            .flat_map(|l| [*l, "\n"])
            .collect();
        let graph = Graph::from_text(&graph_text)?;
        debug_assert_eq!(graph.vertex_count(), n);
        let (k, p) = parse_pair("instance", m + 2, lines[m + 1])?;
        let mut parts = Vec::with_capacity(k);
        for i in 0..k {
            let line_no = m + 3 + i;
            let Some(line) = lines.get(m + 2 + i) else {
                return Err(format_err("instance", line_no, "fewer part lines than k"));
            };
            let mut part = BTreeSet::new();
            for field in line.split_whitespace() {
                let v: usize = field.parse().map_err(|_| {
                    format_err("instance", line_no, &format!("not an integer: `{field}`"))
                })?;
                if !part.insert(v) {
                    return Err(format_err(
                        "instance",
                        line_no,
                        &format!("vertex {v} repeated in part"),
                    ));
                }
            }
            parts.push(part);
        }
        for (extra, line) in lines.iter().enumerate().skip(m + 2 + k) {
            if !line.trim().is_empty() {
                return Err(format_err("instance", extra + 1, "trailing content"));
            }
        }
        PartitionedInstance::new(graph, parts, p)
    }
}

/// Exact maximum independent set by branch and bound.
///
/// Ties break to the lexicographically smallest witness. Fails when the graph
/// has more than `cap` vertices.
pub fn max_independent_set(
    g: &Graph,
    cap: usize,
) -> Result<(usize, BTreeSet<usize>), GraphError> {
    let n = g.vertex_count();
    if n > cap || n > 64 {
        return Err(GraphError::CapExceeded {
            reason: format!("{n} vertices exceed the cap of {}", cap.min(64)),
        });
    }
    let adj = g.adjacency_masks().expect("n <= 64");

    struct Search {
        n: usize,
        adj: Vec<u64>,
        best_size: usize,
        best_mask: u64,
    }
    impl Search {
        // Include-first DFS in ascending vertex order visits same-size
        // independent sets in lexicographic order, so keeping the first
        // strictly-larger set yields the lexicographically smallest maximum.
        fn dfs(&mut self, v: usize, chosen: u64, count: usize) {
            if v > self.n {
                if count > self.best_size {
                    self.best_size = count;
                    self.best_mask = chosen;
                }
                return;
            }
            // The remaining vertices cannot beat the current best strictly.
            if count + (self.n - v + 1) <= self.best_size {
                return;
            }
            if self.adj[v] & chosen == 0 {
                self.dfs(v + 1, chosen | 1 << (v - 1), count + 1);
            }
            self.dfs(v + 1, chosen, count);
        }
    }

    let mut search = Search {
        n,
        adj,
        best_size: 0,
        best_mask: 0,
    };
    search.dfs(1, 0, 0);
    let witness = (1..=n).filter(|v| search.best_mask >> (v - 1) & 1 == 1).collect();
    Ok((search.best_size, witness))
}

/// Finds an independent set meeting every part in exactly `p` vertices, or
/// `None` when no such set exists.
///
/// Enumerates `p`-subsets per part in lexicographic order (never all vertex
/// subsets) and returns the first solution, so the witness is deterministic.
/// Fails when the product of per-part selection counts exceeds `cap`.
pub fn solve_pis(
    inst: &PartitionedInstance,
    cap: u128,
) -> Result<Option<BTreeSet<usize>>, GraphError> {
    let p = inst.multiplicity();
    let n = inst.graph().vertex_count();
    if n > 64 {
        return Err(GraphError::CapExceeded {
            reason: format!("{n} vertices exceed the 64-vertex selection limit"),
        });
    }
    let mut combinations: u128 = 1;
    for part in inst.parts() {
        if part.len() < p {
            return Ok(None);
        }
        combinations = combinations.saturating_mul(binomial(part.len(), p));
        if combinations > cap {
            return Err(GraphError::CapExceeded {
                reason: format!("more than {cap} per-part selection combinations"),
            });
        }
    }
    let adj = inst.graph().adjacency_masks().expect("n <= 64");

    // Per part, all p-subsets as bitmasks in lexicographic order. Parts are
    // independent sets, so only cross-part conflicts need checking.
    let choices: Vec<Vec<u64>> = inst
        .parts()
        .iter()
        .map(|part| {
            let vs: Vec<usize> = part.iter().copied().collect();
            vs.iter()
                .combinations(p)
                .map(|sel| sel.into_iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
                .collect()
        })
        .collect();

    fn conflict(adj: &[u64], chosen: u64, candidate: u64) -> bool {
        let mut rest = candidate;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize + 1;
            if adj[v] & chosen != 0 {
                return true;
            }
            rest &= rest - 1;
        }
        false
    }

    fn dfs(choices: &[Vec<u64>], adj: &[u64], chosen: u64) -> Option<u64> {
        let Some((first, rest)) = choices.split_first() else {
            return Some(chosen);
        };
        for &candidate in first {
            if !conflict(adj, chosen, candidate) {
                if let Some(solution) = dfs(rest, adj, chosen | candidate) {
                    return Some(solution);
                }
            }
        }
        None
    }

    Ok(dfs(&choices, &adj, 0).map(|mask| {
        (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect()
    }))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}
