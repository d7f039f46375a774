//! Simple graphs on vertex set `{1..n}`, orientations, partial acyclic
//! orientations, and the counting oracles used by every other module.
//!
//! Vertices are 1-based integers throughout; the root vertex of a rooted
//! extension is index `n + 1` (serialized as the string `"r"`). Vertex
//! subsets are bitmasks, so everything here is capped at 63 vertices, far
//! beyond the exhaustive desk scale the guard rails allow anyway.

use std::collections::HashMap;
use std::fmt;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::limits;
use crate::{Error, Result};

pub const MAX_VERTICES: usize = 63;

// ---------------------------------------------------------------------------
// Vertex sets
// ---------------------------------------------------------------------------

/// Subset of `{1..n}` stored as a bitmask; bit `v-1` represents vertex `v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> VertexSet {
        VertexSet(if n == 0 { 0 } else { (1u64 << n) - 1 })
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1u64 << (v - 1))
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> (v - 1) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << (v - 1));
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn inter(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn minus(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Iterates members in increasing order (1-based).
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// All subsets of `self`, the empty set first, `self` last.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let mask = self.0;
        let mut sub: u64 = 0;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = VertexSet(sub);
            if sub == mask {
                done = true;
            } else {
                sub = (sub.wrapping_sub(mask)) & mask;
            }
            Some(cur)
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(vs: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in vs {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Simple graphs
// ---------------------------------------------------------------------------

/// Undirected simple graph on vertex set `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>, // sorted, each (u, v) with u < v
    adj: Vec<VertexSet>,        // index 0 unused
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<SimpleGraph> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "vertex count {n} outside 1..={MAX_VERTICES}"
            )));
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!("loop at vertex {a}")));
            }
            if a < 1 || a > n || b < 1 || b > n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a},{b}) has endpoint outside 1..={n}"
                )));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidArgument(format!(
                    "duplicate edge ({},{})",
                    w[0].0, w[0].1
                )));
            }
        }
        let mut adj = vec![VertexSet::EMPTY; n + 1];
        for &(u, v) in &norm {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(SimpleGraph {
            n,
            edges: norm,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degree_vector(&self) -> Vec<u32> {
        (1..=self.n).map(|v| self.degree(v) as u32).collect()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Number of edges of `G` inside the subset `sigma`.
    pub fn edges_within(&self, sigma: VertexSet) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| sigma.contains(u) && sigma.contains(v))
            .count()
    }

    /// Neighbors of `i` outside `sigma` (the `degout` statistic); 0 off `sigma`.
    pub fn degout(&self, sigma: VertexSet, i: usize) -> usize {
        if sigma.contains(i) {
            self.adj[i].minus(sigma).len()
        } else {
            0
        }
    }

    /// Neighbors of `i` inside `sigma` (the `degin` statistic); 0 off `sigma`.
    pub fn degin(&self, sigma: VertexSet, i: usize) -> usize {
        if sigma.contains(i) {
            self.adj[i].inter(sigma).len()
        } else {
            0
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    /// Whether the induced subgraph on `set` is connected (empty set is not).
    pub fn is_connected_within(&self, set: VertexSet) -> bool {
        let start = match set.min() {
            Some(v) => v,
            None => return false,
        };
        let mut seen = VertexSet::singleton(start);
        let mut frontier = vec![start];
        while let Some(v) = frontier.pop() {
            for w in self.adj[v].inter(set).minus(seen).iter() {
                seen.insert(w);
                frontier.push(w);
            }
        }
        seen == set
    }

    /// Induced subgraph on `sigma`, re-indexed to `{1..|sigma|}`.
    pub fn induced_subgraph(&self, sigma: VertexSet) -> Result<InducedSubgraph> {
        if sigma.is_empty() {
            return Err(Error::InvalidArgument("empty vertex subset".into()));
        }
        if !sigma.is_subset(self.vertices()) {
            return Err(Error::InvalidArgument(format!(
                "subset {sigma} not within 1..={}",
                self.n
            )));
        }
        let vertices: Vec<usize> = sigma.iter().collect();
        let mut back = HashMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            back.insert(v, i + 1);
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if sigma.contains(u) && sigma.contains(v) {
                edges.push((back[&u], back[&v]));
            }
        }
        let graph = SimpleGraph::new(vertices.len(), &edges)?;
        Ok(InducedSubgraph { graph, vertices })
    }

    /// The rooted extension `G_r`: a new vertex `r = n + 1` adjacent to all.
    pub fn rooted_extension(&self) -> SimpleGraph {
        let r = self.n + 1;
        let mut edges = self.edges.clone();
        for v in 1..=self.n {
            edges.push((v, r));
        }
        SimpleGraph::new(r, &edges).expect("rooted extension of a valid graph is valid")
    }

    /// Root vertex index of the rooted extension built from this graph.
    pub fn root_of_extension(&self) -> usize {
        self.n + 1
    }

    /// Contract edge `(u, v)` (v merged into u), simplifying parallels.
    fn contract_edge(&self, u: usize, v: usize) -> SimpleGraph {
        // relabel: v disappears, everything above v shifts down by one
        let relabel = |w: usize| -> usize {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in &self.edges {
            let (a, b) = (relabel(a), relabel(b));
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort();
        edges.dedup();
        SimpleGraph::new(self.n - 1, &edges).expect("contraction of a valid graph is valid")
    }

    /// Number of acyclic orientations, `|chi_G(-1)|`, by deletion–contraction.
    ///
    /// Independent of [`crate::graph::enumerate_acyclic_orientations`]; the
    /// two serve as oracles for one another.
    pub fn count_acyclic_orientations(&self) -> BigInt {
        match self.edges.first() {
            None => BigInt::from(1),
            Some(&(u, v)) => {
                let mut deleted = self.edges.clone();
                deleted.remove(0);
                let del = SimpleGraph::new(self.n, &deleted).expect("deletion is valid");
                del.count_acyclic_orientations()
                    + self.contract_edge(u, v).count_acyclic_orientations()
            }
        }
    }

    /// Number of spanning trees, by the matrix-tree theorem (integer
    /// determinant of a Laplacian minor, fraction-free Bareiss elimination).
    pub fn spanning_tree_count(&self) -> BigInt {
        if self.n == 1 {
            return BigInt::from(1);
        }
        if !self.is_connected() {
            return BigInt::from(0);
        }
        let m = self.n - 1;
        let mut a = vec![vec![BigInt::from(0); m]; m];
        for i in 1..=m {
            a[i - 1][i - 1] = BigInt::from(self.degree(i));
        }
        for &(u, v) in &self.edges {
            if u <= m && v <= m {
                a[u - 1][v - 1] = BigInt::from(-1);
                a[v - 1][u - 1] = BigInt::from(-1);
            }
        }
        bareiss_determinant(a)
    }

    // --- JSON ---

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.n,
            edges: self.edges.clone(),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<SimpleGraph> {
        let raw: GraphJson = serde_json::from_str(s)
            .map_err(|e| Error::InvalidArgument(format!("graph JSON: {e}")))?;
        SimpleGraph::new(raw.n, &raw.edges)
    }

    // --- stock constructions used across tests and the CLI corpus ---

    pub fn path(n: usize) -> SimpleGraph {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        SimpleGraph::new(n, &edges).expect("path is valid")
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        SimpleGraph::new(n, &edges).expect("cycle is valid")
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in (u + 1)..=n {
                edges.push((u, v));
            }
        }
        SimpleGraph::new(n, &edges).expect("complete graph is valid")
    }

    /// Star `K_{1,n-1}` with center 1.
    pub fn star(n: usize) -> SimpleGraph {
        let edges: Vec<_> = (2..=n).map(|v| (1, v)).collect();
        SimpleGraph::new(n, &edges).expect("star is valid")
    }

    /// `rows x cols` grid, vertices numbered row-major starting at 1.
    pub fn grid(rows: usize, cols: usize) -> SimpleGraph {
        let at = |r: usize, c: usize| r * cols + c + 1;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((at(r, c), at(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((at(r, c), at(r + 1, c)));
                }
            }
        }
        SimpleGraph::new(rows * cols, &edges).expect("grid is valid")
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Induced subgraph together with the injection back into the parent graph:
/// vertex `i` of `graph` is `vertices[i - 1]` in the parent.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: SimpleGraph,
    pub vertices: Vec<usize>,
}

impl InducedSubgraph {
    /// Maps a subset of the re-indexed subgraph back to parent labels.
    pub fn lift(&self, local: VertexSet) -> VertexSet {
        VertexSet::from_iter(local.iter().map(|i| self.vertices[i - 1]))
    }
}

/// Integer determinant by fraction-free Gaussian elimination.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&i| a[i][k] != BigInt::from(0)) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

// ---------------------------------------------------------------------------
// Orientations
// ---------------------------------------------------------------------------

/// Direction of one edge relative to its stored `(u, v)` with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Dir {
    /// `u -> v`
    Fwd,
    /// `v -> u`
    Bwd,
    /// unoriented (the edge maps to itself)
    Un,
}

/// Orientation of a [`SimpleGraph`]: one [`Dir`] per edge, in edge order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Orientation {
    pub dirs: Vec<Dir>,
}

impl Orientation {
    pub fn trivial(g: &SimpleGraph) -> Orientation {
        Orientation {
            dirs: vec![Dir::Un; g.edge_count()],
        }
    }

    pub fn is_fully_oriented(&self) -> bool {
        self.dirs.iter().all(|d| *d != Dir::Un)
    }

    /// Directed pairs `(tail, head)` of all oriented edges.
    pub fn arcs<'a>(&'a self, g: &'a SimpleGraph) -> impl Iterator<Item = (usize, usize)> + 'a {
        g.edges()
            .iter()
            .zip(&self.dirs)
            .filter_map(|(&(u, v), d)| match d {
                Dir::Fwd => Some((u, v)),
                Dir::Bwd => Some((v, u)),
                Dir::Un => None,
            })
    }

    pub fn indegree_vector(&self, g: &SimpleGraph) -> Vec<u32> {
        let mut deg = vec![0u32; g.n()];
        for (_, head) in self.arcs(g) {
            deg[head - 1] += 1;
        }
        deg
    }

    pub fn outdegree_vector(&self, g: &SimpleGraph) -> Vec<u32> {
        let mut deg = vec![0u32; g.n()];
        for (tail, _) in self.arcs(g) {
            deg[tail - 1] += 1;
        }
        deg
    }

    /// `noOutdeg(i)`: edges at `i` that are not directed out of `i`
    /// (directed in, plus unoriented incident).
    pub fn no_outdegree_vector(&self, g: &SimpleGraph) -> Vec<u32> {
        let mut deg = vec![0u32; g.n()];
        for (&(u, v), d) in g.edges().iter().zip(&self.dirs) {
            match d {
                Dir::Fwd => deg[v - 1] += 1,
                Dir::Bwd => deg[u - 1] += 1,
                Dir::Un => {
                    deg[u - 1] += 1;
                    deg[v - 1] += 1;
                }
            }
        }
        deg
    }

    /// Kahn peeling on the directed part. Unoriented edges are ignored, so
    /// for fully oriented assignments this is the usual acyclicity test.
    pub fn is_acyclic(&self, g: &SimpleGraph) -> bool {
        self.topological_order(g).is_some()
    }

    /// A topological order of the directed part, if acyclic.
    pub fn topological_order(&self, g: &SimpleGraph) -> Option<Vec<usize>> {
        let n = g.n();
        let mut indeg = vec![0usize; n + 1];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (tail, head) in self.arcs(g) {
            indeg[head] += 1;
            out[tail].push(head);
        }
        let mut stack: Vec<usize> = (1..=n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() == n {
            Some(order)
        } else {
            None
        }
    }

    /// Restriction to the induced subgraph on `sigma` (re-indexed).
    pub fn restrict(&self, g: &SimpleGraph, sub: &InducedSubgraph) -> Orientation {
        let mut dirs = Vec::with_capacity(sub.graph.edge_count());
        for &(a, b) in sub.graph.edges() {
            let (u, v) = (sub.vertices[a - 1], sub.vertices[b - 1]);
            let idx = g.edge_index(u, v).expect("subgraph edge exists in parent");
            // stored subgraph edge (a,b) has a<b and u<v matches orientation
            let d = self.dirs[idx];
            dirs.push(if u < v {
                d
            } else {
                match d {
                    Dir::Fwd => Dir::Bwd,
                    Dir::Bwd => Dir::Fwd,
                    Dir::Un => Dir::Un,
                }
            });
        }
        Orientation { dirs }
    }

    /// Canonical text encoding, e.g. `1>2,3-4` (arrow = direction, dash = unoriented).
    pub fn encode(&self, g: &SimpleGraph) -> String {
        let parts: Vec<String> = g
            .edges()
            .iter()
            .zip(&self.dirs)
            .map(|(&(u, v), d)| match d {
                Dir::Fwd => format!("{u}>{v}"),
                Dir::Bwd => format!("{v}>{u}"),
                Dir::Un => format!("{u}-{v}"),
            })
            .collect();
        parts.join(",")
    }
}

/// All acyclic orientations of `g`, in lexicographic `dirs` order
/// (`Fwd < Bwd` per edge). The edgeless graph has exactly one (empty)
/// acyclic orientation.
pub fn enumerate_acyclic_orientations(g: &SimpleGraph) -> Vec<Orientation> {
    let m = g.edge_count();
    let mut result = Vec::new();
    let mut dirs = vec![Dir::Fwd; m];
    // backtracking with a full acyclicity check at the leaves; desk scale
    fn rec(g: &SimpleGraph, dirs: &mut Vec<Dir>, i: usize, out: &mut Vec<Orientation>) {
        if i == dirs.len() {
            let o = Orientation { dirs: dirs.clone() };
            if o.is_acyclic(g) {
                out.push(o);
            }
            return;
        }
        for d in [Dir::Fwd, Dir::Bwd] {
            dirs[i] = d;
            rec(g, dirs, i + 1, out);
        }
    }
    rec(g, &mut dirs, 0, &mut result);
    result
}

/// Linear-extension count `e(O)` of the poset induced by an acyclic,
/// fully oriented `o`: the number of order-preserving bijections `V -> [n]`.
/// Down-set dynamic program over bitmasks.
pub fn linear_extension_count(g: &SimpleGraph, o: &Orientation) -> Result<BigInt> {
    if !o.is_fully_oriented() {
        return Err(Error::InvalidArgument(
            "linear extensions need a fully oriented acyclic orientation".into(),
        ));
    }
    if !o.is_acyclic(g) {
        return Err(Error::InvalidArgument(
            "orientation has a directed cycle".into(),
        ));
    }
    let n = g.n();
    limits::check(n, 20, "linear_extension_count vertex count")?;
    let mut preds = vec![VertexSet::EMPTY; n + 1];
    for (tail, head) in o.arcs(g) {
        preds[head].insert(tail);
    }
    let full = VertexSet::full(n).0;
    let mut dp = vec![BigInt::from(0); (full + 1) as usize];
    dp[0] = BigInt::from(1);
    for mask in 0..=full {
        if dp[mask as usize] == BigInt::from(0) {
            continue;
        }
        let placed = VertexSet(mask);
        for (v, pred) in preds.iter().enumerate().skip(1) {
            if !placed.contains(v) && pred.is_subset(placed) {
                let next = mask | (1 << (v - 1));
                let add = dp[mask as usize].clone();
                dp[next as usize] += add;
            }
        }
    }
    Ok(dp[full as usize].clone())
}

// ---------------------------------------------------------------------------
// Connected partitions and partial acyclic orientations
// ---------------------------------------------------------------------------

/// Connected partition of a graph: blocks induce connected subgraphs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConnectedPartition {
    /// Blocks sorted by minimum vertex.
    pub blocks: Vec<VertexSet>,
}

impl ConnectedPartition {
    pub fn block_of(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(v))
            .expect("partition covers all vertices")
    }
}

/// All set partitions of `{1..n}` via restricted-growth strings, filtered to
/// those whose blocks are connected in `g`.
pub fn enumerate_connected_partitions(g: &SimpleGraph) -> Vec<ConnectedPartition> {
    let n = g.n();
    let mut result = Vec::new();
    let mut rgs = vec![0usize; n];
    // restricted growth: rgs[0] = 0, rgs[i] <= 1 + max(rgs[..i])
    fn rec(
        g: &SimpleGraph,
        rgs: &mut Vec<usize>,
        i: usize,
        maxv: usize,
        out: &mut Vec<ConnectedPartition>,
    ) {
        let n = rgs.len();
        if i == n {
            let nb = maxv + 1;
            let mut blocks = vec![VertexSet::EMPTY; nb];
            for (v0, &b) in rgs.iter().enumerate() {
                blocks[b].insert(v0 + 1);
            }
            if blocks.iter().all(|&b| g.is_connected_within(b)) {
                // RGS order means blocks are already sorted by min vertex
                out.push(ConnectedPartition { blocks });
            }
            return;
        }
        for b in 0..=maxv + 1 {
            rgs[i] = b;
            rec(g, rgs, i + 1, maxv.max(b), out);
        }
    }
    if n == 0 {
        return result;
    }
    rec(g, &mut rgs, 1, 0, &mut result);
    result
}

/// Partial acyclic orientation: a connected partition together with an
/// acyclic orientation of the quotient graph. Arcs are pairs of block
/// indices `(from, to)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pao {
    pub partition: ConnectedPartition,
    pub arcs: Vec<(usize, usize)>,
}

impl Pao {
    /// Acyclic orientations are exactly the p.a.o.'s with singleton blocks.
    pub fn from_acyclic_orientation(g: &SimpleGraph, o: &Orientation) -> Result<Pao> {
        if !o.is_fully_oriented() || !o.is_acyclic(g) {
            return Err(Error::InvalidArgument(
                "not a fully oriented acyclic orientation".into(),
            ));
        }
        let blocks = (1..=g.n()).map(VertexSet::singleton).collect();
        let arcs = o.arcs(g).map(|(u, v)| (u - 1, v - 1)).collect();
        Ok(Pao {
            partition: ConnectedPartition { blocks },
            arcs,
        })
    }

    pub fn block_count(&self) -> usize {
        self.partition.blocks.len()
    }

    /// `dim_G(O) = |V| - |Sigma|`.
    pub fn dim(&self, g: &SimpleGraph) -> usize {
        g.n() - self.block_count()
    }

    pub fn is_trivial(&self) -> bool {
        self.block_count() == 1
    }

    /// The induced edge-level orientation: intra-block edges unoriented,
    /// cross-block edges directed per the quotient orientation.
    pub fn induced_orientation(&self, g: &SimpleGraph) -> Orientation {
        let mut arcset = std::collections::HashSet::new();
        for &(a, b) in &self.arcs {
            arcset.insert((a, b));
        }
        let dirs = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (bu, bv) = (self.partition.block_of(u), self.partition.block_of(v));
                if bu == bv {
                    Dir::Un
                } else if arcset.contains(&(bu, bv)) {
                    Dir::Fwd
                } else {
                    debug_assert!(arcset.contains(&(bv, bu)));
                    Dir::Bwd
                }
            })
            .collect();
        Orientation { dirs }
    }

    /// The order-ideal family `J_G(O)`: all down-closed unions of blocks of
    /// the quotient poset, as vertex subsets, sorted by mask. Contains the
    /// empty set and the whole vertex set.
    pub fn ideal_family(&self) -> IdealFamily {
        let k = self.block_count();
        let mut sets = Vec::new();
        'outer: for mask in 0u64..(1 << k) {
            for &(a, b) in &self.arcs {
                // down-closed: a block is included only if all arc-predecessors are
                if mask >> b & 1 == 1 && mask >> a & 1 == 0 {
                    continue 'outer;
                }
            }
            let mut s = VertexSet::EMPTY;
            for i in 0..k {
                if mask >> i & 1 == 1 {
                    s = s.union(self.partition.blocks[i]);
                }
            }
            sets.push(s);
        }
        sets.sort();
        sets.dedup();
        IdealFamily { sets }
    }

    /// Canonical encoding: blocks (comma-joined vertices, `|`-separated)
    /// then quotient arcs by block minima.
    pub fn encode(&self) -> String {
        let blocks: Vec<String> = self
            .partition
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let mut arcs: Vec<String> = self
            .arcs
            .iter()
            .map(|&(a, b)| {
                format!(
                    "{}>{}",
                    self.partition.blocks[a].min().unwrap(),
                    self.partition.blocks[b].min().unwrap()
                )
            })
            .collect();
        arcs.sort();
        format!("[{}];[{}]", blocks.join("|"), arcs.join(","))
    }
}

/// Enumerates every p.a.o. of `g`: every connected partition paired with
/// every acyclic orientation of its quotient graph. Results are sorted by
/// canonical encoding. Works verbatim for disconnected graphs (the trivial
/// one-block p.a.o. then simply does not exist).
pub fn enumerate_paos(g: &SimpleGraph) -> Result<Vec<Pao>> {
    limits::check(g.n(), limits::PAO_MAX_N, "p.a.o. enumeration vertex count")?;
    let mut result = Vec::new();
    for partition in enumerate_connected_partitions(g) {
        let k = partition.blocks.len();
        // quotient graph on block indices 1..=k
        let mut qedges = Vec::new();
        for a in 0..k {
            for b in (a + 1)..k {
                let adjacent = partition.blocks[a]
                    .iter()
                    .any(|u| !g.neighbors(u).inter(partition.blocks[b]).is_empty());
                if adjacent {
                    qedges.push((a + 1, b + 1));
                }
            }
        }
        let quotient = SimpleGraph::new(k, &qedges)?;
        for qo in enumerate_acyclic_orientations(&quotient) {
            let arcs = qo.arcs(&quotient).map(|(a, b)| (a - 1, b - 1)).collect();
            result.push(Pao {
                partition: partition.clone(),
                arcs,
            });
        }
    }
    result.sort_by_key(|p| p.encode());
    Ok(result)
}

// ---------------------------------------------------------------------------
// Ideal families
// ---------------------------------------------------------------------------

/// A finite family of vertex subsets closed under union and intersection,
/// ordered by inclusion; the image of a p.a.o. under `J_G`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IdealFamily {
    /// Sorted by bitmask value; deduplicated.
    pub sets: Vec<VertexSet>,
}

impl IdealFamily {
    pub fn contains(&self, s: VertexSet) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    /// Family containment (both sorted, merge walk).
    pub fn is_subfamily_of(&self, other: &IdealFamily) -> bool {
        let mut j = 0;
        for s in &self.sets {
            while j < other.sets.len() && other.sets[j] < *s {
                j += 1;
            }
            if j == other.sets.len() || other.sets[j] != *s {
                return false;
            }
        }
        true
    }

    /// Checks lattice closure under union/intersection and the presence of
    /// the empty set and `full`.
    pub fn is_lattice(&self, full: VertexSet) -> bool {
        if !self.contains(VertexSet::EMPTY) || !self.contains(full) {
            return false;
        }
        for &a in &self.sets {
            for &b in &self.sets {
                if !self.contains(a.union(b)) || !self.contains(a.inter(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Length of every maximal chain, or `None` if the family is not graded
    /// by the block count (each cover adding exactly one block of `blocks`).
    pub fn graded_chain_length(&self, blocks: &[VertexSet]) -> Option<usize> {
        // every cover relation X < Y with nothing between must have Y \ X a block
        for &x in &self.sets {
            for &y in &self.sets {
                if x != y && x.is_subset(y) {
                    let strictly_between = self
                        .sets
                        .iter()
                        .any(|&z| z != x && z != y && x.is_subset(z) && z.is_subset(y));
                    if !strictly_between && !blocks.contains(&y.minus(x)) {
                        return None;
                    }
                }
            }
        }
        Some(blocks.len())
    }
}

// ---------------------------------------------------------------------------
// Lower semi-modularity (Lemma on F(sigma) = a + b|sigma| + c|E(G[sigma])|)
// ---------------------------------------------------------------------------

/// Report of one submodularity evaluation.
#[derive(Clone, Debug)]
pub struct SubmodularityReport {
    pub lhs: num::BigRational,
    pub rhs: num::BigRational,
    pub inequality_holds: bool,
    pub equality: bool,
    pub completely_non_adjacent: bool,
    /// The characterization: equality iff the difference sets are
    /// completely non-adjacent.
    pub characterization_holds: bool,
}

/// Evaluates `F(s) = a + b|s| + c|E(G[s])|` on `sigma`, `rho` and their
/// union/intersection, checking `F(sigma) + F(rho) <= F(inter) + F(union)`
/// and the equality characterization.
pub fn submodularity_check(
    g: &SimpleGraph,
    a: &num::BigRational,
    b: &num::BigRational,
    c: &num::BigRational,
    sigma: VertexSet,
    rho: VertexSet,
) -> Result<SubmodularityReport> {
    use num::BigRational;
    if c <= &BigRational::from(BigInt::from(0)) {
        return Err(Error::InvalidArgument("c must be positive".into()));
    }
    if !sigma.is_subset(g.vertices()) || !rho.is_subset(g.vertices()) {
        return Err(Error::InvalidArgument("subset outside vertex range".into()));
    }
    let f = |s: VertexSet| -> BigRational {
        a + b * BigRational::from(BigInt::from(s.len()))
            + c * BigRational::from(BigInt::from(g.edges_within(s)))
    };
    let lhs = f(sigma) + f(rho);
    let rhs = f(sigma.inter(rho)) + f(sigma.union(rho));
    let only_sigma = sigma.minus(rho);
    let only_rho = rho.minus(sigma);
    let non_adjacent = only_sigma
        .iter()
        .all(|u| g.neighbors(u).inter(only_rho).is_empty());
    let equality = lhs == rhs;
    Ok(SubmodularityReport {
        inequality_holds: lhs <= rhs,
        characterization_holds: equality == non_adjacent,
        lhs,
        rhs,
        equality,
        completely_non_adjacent: non_adjacent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn rat(x: i64) -> BigRational {
        BigRational::from(BigInt::from(x))
    }

    #[test]
    fn graph_validation_rejects_bad_input() {
        assert!(SimpleGraph::new(3, &[(1, 1)]).is_err());
        assert!(SimpleGraph::new(3, &[(1, 4)]).is_err());
        assert!(SimpleGraph::new(3, &[(1, 2), (2, 1)]).is_err());
        let err = SimpleGraph::from_json(r#"{"n":2,"edges":[[1,2],[2,1]]}"#).unwrap_err();
        assert!(
            err.to_string().contains("(1,2)"),
            "diagnostic names pair: {err}"
        );
    }

    #[test]
    fn induced_subgraph_examples() {
        // P3, sigma={1,2} -> single edge
        let p3 = SimpleGraph::path(3);
        let sub = p3.induced_subgraph(VertexSet::from_iter([1, 2])).unwrap();
        assert_eq!(sub.graph.n(), 2);
        assert_eq!(sub.graph.edges(), &[(1, 2)]);
        // K3 identity case
        let k3 = SimpleGraph::complete(3);
        let sub = k3.induced_subgraph(VertexSet::full(3)).unwrap();
        assert_eq!(sub.graph.edge_count(), 3);
        // C4 sigma={1,3}: two isolated vertices
        let c4 = SimpleGraph::cycle(4);
        let sub = c4.induced_subgraph(VertexSet::from_iter([1, 3])).unwrap();
        assert_eq!(sub.graph.n(), 2);
        assert_eq!(sub.graph.edge_count(), 0);
        // empty sigma is invalid
        assert!(p3.induced_subgraph(VertexSet::EMPTY).is_err());
    }

    #[test]
    fn rooted_extension_examples() {
        let p2 = SimpleGraph::path(2);
        let r = p2.rooted_extension();
        assert_eq!(r.n(), 3);
        assert_eq!(r.edge_count(), 3); // triangle
        let p3 = SimpleGraph::path(3);
        let r = p3.rooted_extension();
        assert_eq!(r.n(), 4);
        assert_eq!(r.edge_count(), 5);
        let k3 = SimpleGraph::complete(3);
        assert_eq!(k3.rooted_extension().edge_count(), 6); // K4
    }

    #[test]
    fn acyclic_orientation_enumeration_examples() {
        let p2 = SimpleGraph::path(2);
        assert_eq!(enumerate_acyclic_orientations(&p2).len(), 2);

        let p3 = SimpleGraph::path(3);
        let aos = enumerate_acyclic_orientations(&p3);
        assert_eq!(aos.len(), 4);
        let mut indegs: Vec<Vec<u32>> = aos.iter().map(|o| o.indegree_vector(&p3)).collect();
        indegs.sort();
        assert_eq!(
            indegs,
            vec![vec![0, 1, 1], vec![0, 2, 0], vec![1, 0, 1], vec![1, 1, 0]]
        );

        let c4 = SimpleGraph::cycle(4);
        assert_eq!(enumerate_acyclic_orientations(&c4).len(), 14);
    }

    #[test]
    fn count_acyclic_orientations_examples() {
        assert_eq!(
            SimpleGraph::complete(3).count_acyclic_orientations(),
            BigInt::from(6)
        );
        let edgeless = SimpleGraph::new(3, &[]).unwrap();
        assert_eq!(edgeless.count_acyclic_orientations(), BigInt::from(1));
        assert_eq!(
            SimpleGraph::cycle(4).count_acyclic_orientations(),
            BigInt::from(14)
        );
    }

    #[test]
    fn enumeration_matches_deletion_contraction_oracle() {
        for g in [
            SimpleGraph::path(4),
            SimpleGraph::cycle(5),
            SimpleGraph::complete(4),
            SimpleGraph::star(5),
            SimpleGraph::new(4, &[(1, 2), (3, 4)]).unwrap(),
        ] {
            assert_eq!(
                BigInt::from(enumerate_acyclic_orientations(&g).len()),
                g.count_acyclic_orientations()
            );
        }
    }

    #[test]
    fn pao_enumeration_examples() {
        let p2 = SimpleGraph::path(2);
        assert_eq!(enumerate_paos(&p2).unwrap().len(), 3);

        let k3 = SimpleGraph::complete(3);
        assert_eq!(enumerate_paos(&k3).unwrap().len(), 13);

        let e2 = SimpleGraph::new(2, &[]).unwrap();
        let paos = enumerate_paos(&e2).unwrap();
        assert_eq!(paos.len(), 1);
        assert_eq!(paos[0].block_count(), 2);
    }

    #[test]
    fn every_ao_appears_once_as_singleton_pao() {
        for g in [
            SimpleGraph::path(3),
            SimpleGraph::complete(3),
            SimpleGraph::cycle(4),
        ] {
            let paos = enumerate_paos(&g).unwrap();
            let singleton: Vec<_> = paos.iter().filter(|p| p.block_count() == g.n()).collect();
            assert_eq!(singleton.len(), enumerate_acyclic_orientations(&g).len());
            let mut encodings: Vec<_> = singleton.iter().map(|p| p.encode()).collect();
            encodings.dedup();
            assert_eq!(encodings.len(), singleton.len());
        }
    }

    #[test]
    fn ideal_family_examples() {
        let p2 = SimpleGraph::path(2);
        // PAO 1 -> 2
        let o = Orientation {
            dirs: vec![Dir::Fwd],
        };
        let pao = Pao::from_acyclic_orientation(&p2, &o).unwrap();
        let fam = pao.ideal_family();
        assert_eq!(
            fam.sets,
            vec![
                VertexSet::EMPTY,
                VertexSet::from_iter([1]),
                VertexSet::from_iter([1, 2])
            ]
        );
        // trivial PAO
        let trivial = Pao {
            partition: ConnectedPartition {
                blocks: vec![VertexSet::full(2)],
            },
            arcs: vec![],
        };
        assert_eq!(
            trivial.ideal_family().sets,
            vec![VertexSet::EMPTY, VertexSet::full(2)]
        );
        // P3 blocks {1,2} -> {3}
        let pao = Pao {
            partition: ConnectedPartition {
                blocks: vec![VertexSet::from_iter([1, 2]), VertexSet::from_iter([3])],
            },
            arcs: vec![(0, 1)],
        };
        assert_eq!(
            pao.ideal_family().sets,
            vec![
                VertexSet::EMPTY,
                VertexSet::from_iter([1, 2]),
                VertexSet::from_iter([1, 2, 3])
            ]
        );
    }

    #[test]
    fn ideal_family_is_graded_lattice() {
        let g = SimpleGraph::cycle(4);
        for pao in enumerate_paos(&g).unwrap() {
            let fam = pao.ideal_family();
            assert!(fam.is_lattice(g.vertices()));
            assert_eq!(
                fam.graded_chain_length(&pao.partition.blocks),
                Some(pao.block_count())
            );
        }
    }

    #[test]
    fn ideal_family_injective_on_paos() {
        for g in [
            SimpleGraph::path(4),
            SimpleGraph::complete(4),
            SimpleGraph::cycle(4),
        ] {
            let paos = enumerate_paos(&g).unwrap();
            let mut families: Vec<_> = paos.iter().map(|p| p.ideal_family().sets).collect();
            families.sort();
            let before = families.len();
            families.dedup();
            assert_eq!(families.len(), before);
        }
    }

    #[test]
    fn linear_extension_examples() {
        let p3 = SimpleGraph::path(3);
        // 1 -> 2 -> 3: total order
        let o = Orientation {
            dirs: vec![Dir::Fwd, Dir::Fwd],
        };
        assert_eq!(linear_extension_count(&p3, &o).unwrap(), BigInt::from(1));
        // 2 -> 1, 2 -> 3
        let o = Orientation {
            dirs: vec![Dir::Bwd, Dir::Fwd],
        };
        assert_eq!(linear_extension_count(&p3, &o).unwrap(), BigInt::from(2));
        // edgeless on 3 vertices: antichain
        let e3 = SimpleGraph::new(3, &[]).unwrap();
        let o = Orientation { dirs: vec![] };
        assert_eq!(linear_extension_count(&e3, &o).unwrap(), BigInt::from(6));
        // cyclic triangle is invalid
        let k3 = SimpleGraph::complete(3);
        // edges (1,2),(1,3),(2,3): 1->2, 3->1, 2->3 is a directed cycle
        let o = Orientation {
            dirs: vec![Dir::Fwd, Dir::Bwd, Dir::Fwd],
        };
        assert!(linear_extension_count(&k3, &o).is_err());
    }

    #[test]
    fn linear_extension_brute_force_oracle() {
        // independent oracle: scan all n! labellings
        fn brute(g: &SimpleGraph, o: &Orientation) -> usize {
            let n = g.n();
            let mut perm: Vec<usize> = (1..=n).collect();
            let mut count = 0;
            permute(&mut perm, 0, &mut |p| {
                // p[v-1] = label of v; order-preserving: tail label < head label
                if o.arcs(g).all(|(u, v)| p[u - 1] < p[v - 1]) {
                    count += 1;
                }
            });
            fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
                if k == v.len() {
                    f(v);
                    return;
                }
                for i in k..v.len() {
                    v.swap(k, i);
                    permute(v, k + 1, f);
                    v.swap(k, i);
                }
            }
            count
        }
        for g in [
            SimpleGraph::path(4),
            SimpleGraph::cycle(4),
            SimpleGraph::complete(4),
        ] {
            for o in enumerate_acyclic_orientations(&g) {
                assert_eq!(
                    linear_extension_count(&g, &o).unwrap(),
                    BigInt::from(brute(&g, &o))
                );
            }
        }
    }

    #[test]
    fn distinct_aos_have_distinct_degree_vectors() {
        for g in [
            SimpleGraph::path(4),
            SimpleGraph::complete(4),
            SimpleGraph::cycle(5),
        ] {
            let aos = enumerate_acyclic_orientations(&g);
            let mut ins: Vec<_> = aos.iter().map(|o| o.indegree_vector(&g)).collect();
            let mut outs: Vec<_> = aos.iter().map(|o| o.outdegree_vector(&g)).collect();
            ins.sort();
            outs.sort();
            let n = ins.len();
            ins.dedup();
            outs.dedup();
            assert_eq!(ins.len(), n);
            assert_eq!(outs.len(), n);
        }
    }

    #[test]
    fn submodularity_examples() {
        let k3 = SimpleGraph::complete(3);
        let r = submodularity_check(
            &k3,
            &rat(0),
            &rat(1),
            &rat(1),
            VertexSet::from_iter([1, 2]),
            VertexSet::from_iter([2, 3]),
        )
        .unwrap();
        assert!(r.inequality_holds && !r.equality && r.characterization_holds);
        assert_eq!(r.lhs, rat(6)); // 3 + 3
        assert_eq!(r.rhs, rat(7)); // 1 + 6

        // sigma = rho: equality, trivially non-adjacent differences
        let r = submodularity_check(
            &k3,
            &rat(2),
            &rat(5),
            &rat(1),
            VertexSet::from_iter([1, 3]),
            VertexSet::from_iter([1, 3]),
        )
        .unwrap();
        assert!(r.equality && r.characterization_holds);

        // P3 sigma={1} rho={3}: non-adjacent, equality
        let p3 = SimpleGraph::path(3);
        let r = submodularity_check(
            &p3,
            &rat(0),
            &rat(1),
            &rat(1),
            VertexSet::from_iter([1]),
            VertexSet::from_iter([3]),
        )
        .unwrap();
        assert!(r.equality && r.completely_non_adjacent && r.characterization_holds);
    }

    #[test]
    fn spanning_tree_counts() {
        // (P2)_r = K3 has 3 trees; (P3)_r has 8; (K3)_r = K4 has 16
        assert_eq!(
            SimpleGraph::path(2)
                .rooted_extension()
                .spanning_tree_count(),
            BigInt::from(3)
        );
        assert_eq!(
            SimpleGraph::path(3)
                .rooted_extension()
                .spanning_tree_count(),
            BigInt::from(8)
        );
        assert_eq!(
            SimpleGraph::complete(3)
                .rooted_extension()
                .spanning_tree_count(),
            BigInt::from(16)
        );
        // Cayley: K5 has 125 spanning trees
        assert_eq!(
            SimpleGraph::complete(5).spanning_tree_count(),
            BigInt::from(125)
        );
    }

    #[test]
    fn pao_guard_rail() {
        let g = SimpleGraph::path(17);
        assert!(matches!(enumerate_paos(&g), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn subset_iteration_covers_powerset() {
        let s = VertexSet::from_iter([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], VertexSet::EMPTY);
        assert_eq!(*subs.last().unwrap(), s);
    }
}
