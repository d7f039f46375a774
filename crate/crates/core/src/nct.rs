//! Non-crossing trees: canonical depictions of rooted spanning trees and the
//! bijections they carry.
//!
//! A rooted spanning tree `T` of the rooted extension `G_r` has a unique
//! depiction function `p : V(G_r) -> {0..n}` with `p(r) = 0` that is
//! order-reversing toward the root, places larger-labelled siblings further
//! left, and draws all tree arcs without crossings. Reading the tree through
//! `p` yields, on one side, a standard monomial of the tree ideal `T_G`
//! (and, for efficient trees, an acyclic orientation of `G`), and on the
//! other side a maximal chain of the non-crossing partition lattice
//! `NC([0,n])`. Both directions are implemented here, with exhaustive
//! roundtrips as the test oracle.
//!
//! No geometry is ever computed: crossings are detected by the interleaving
//! predicate on `p`-values, which is depiction-independent.

use std::collections::BTreeMap;

use num::BigInt;

use crate::graph::{Orientation, SimpleGraph};
use crate::limits;
use crate::monomial::{self, Monomial};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Rooted spanning trees
// ---------------------------------------------------------------------------

/// Spanning tree of `G_r` with every edge directed toward the root `r`,
/// stored as a parent map on the non-root vertices `1..n` (`parent = n + 1`
/// means the root).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RootedTree {
    pub n: usize,
    pub parent: Vec<usize>,
}

impl RootedTree {
    pub fn root(&self) -> usize {
        self.n + 1
    }

    pub fn parent_of(&self, v: usize) -> usize {
        self.parent[v - 1]
    }

    /// Validates the tree against `G`: every parent link must be an edge of
    /// `G_r`, and every vertex must reach the root.
    pub fn validate(&self, g: &SimpleGraph) -> Result<()> {
        if self.n != g.n() || self.parent.len() != self.n {
            return Err(Error::InvalidArgument("tree size mismatch".into()));
        }
        let r = self.root();
        for v in 1..=self.n {
            let p = self.parent_of(v);
            if p != r && !(p >= 1 && p <= self.n && g.adjacent(v, p)) {
                return Err(Error::InvalidArgument(format!(
                    "parent link ({v},{p}) is not an edge of the rooted extension"
                )));
            }
        }
        // every chain of parents must reach r (equivalently: no cycles)
        for start in 1..=self.n {
            let mut v = start;
            let mut steps = 0;
            while v != r {
                v = self.parent_of(v);
                steps += 1;
                if steps > self.n {
                    return Err(Error::InvalidArgument(format!(
                        "parent links cycle at vertex {start}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Path from `v` up to and including the root.
    fn root_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while cur != self.root() {
            cur = self.parent_of(cur);
            path.push(cur);
        }
        path
    }

    pub fn encode(&self) -> String {
        let parts: Vec<String> = (1..=self.n)
            .map(|v| {
                let p = self.parent_of(v);
                if p == self.root() {
                    format!("{v}>r")
                } else {
                    format!("{v}>{p}")
                }
            })
            .collect();
        parts.join(",")
    }

    pub fn to_json(&self) -> String {
        let mut map = BTreeMap::new();
        for v in 1..=self.n {
            let p = self.parent_of(v);
            let val = if p == self.root() {
                "r".to_string()
            } else {
                p.to_string()
            };
            map.insert(v.to_string(), val);
        }
        serde_json::to_string(&serde_json::json!({ "parent": map }))
            .expect("tree serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<RootedTree> {
        #[derive(serde::Deserialize)]
        struct TreeJson {
            parent: BTreeMap<String, String>,
        }
        let raw: TreeJson = serde_json::from_str(s)
            .map_err(|e| Error::InvalidArgument(format!("tree JSON: {e}")))?;
        let n = raw.parent.len();
        let mut parent = vec![0usize; n];
        for (k, v) in &raw.parent {
            let kv: usize = k
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad vertex key {k:?}")))?;
            if kv < 1 || kv > n {
                return Err(Error::InvalidArgument(format!(
                    "vertex key {kv} outside 1..={n}"
                )));
            }
            parent[kv - 1] = if v == "r" {
                n + 1
            } else {
                v.parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad parent {v:?}")))?
            };
        }
        if parent.contains(&0) {
            return Err(Error::InvalidArgument("missing parent entries".into()));
        }
        Ok(RootedTree { n, parent })
    }
}

/// All rooted spanning trees of `G_r`, by direct parent-vector enumeration
/// (each vertex picks a neighbor or the root; acyclic choices survive).
pub fn enumerate_rooted_spanning_trees(g: &SimpleGraph) -> Vec<RootedTree> {
    let n = g.n();
    let r = n + 1;
    let mut out = Vec::new();
    let mut parent = vec![0usize; n];
    fn rec(g: &SimpleGraph, parent: &mut Vec<usize>, v: usize, out: &mut Vec<RootedTree>) {
        let n = g.n();
        if v > n {
            let t = RootedTree {
                n,
                parent: parent.clone(),
            };
            if t.validate(g).is_ok() {
                out.push(t);
            }
            return;
        }
        let mut choices: Vec<usize> = g.neighbors(v).iter().collect();
        choices.push(n + 1);
        for p in choices {
            parent[v - 1] = p;
            rec(g, parent, v + 1, out);
        }
    }
    let _ = r;
    rec(g, &mut parent, 1, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Depiction functions
// ---------------------------------------------------------------------------

/// Bijection `V(G_r) -> {0..n}` with `p(r) = 0`; `pos[v-1] = p(v)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Depiction {
    pub pos: Vec<usize>,
}

impl Depiction {
    /// `p(v)`, with the root mapped to 0.
    pub fn p(&self, v: usize) -> usize {
        if v == self.pos.len() + 1 {
            0
        } else {
            self.pos[v - 1]
        }
    }

    /// Inverse: the vertex at position `q` (root for `q = 0`).
    pub fn vertex_at(&self, q: usize) -> usize {
        if q == 0 {
            self.pos.len() + 1
        } else {
            self.pos
                .iter()
                .position(|&x| x == q)
                .map(|i| i + 1)
                .expect("depiction is bijective")
        }
    }

    pub fn is_order_reversing(&self, t: &RootedTree) -> bool {
        (1..=t.n).all(|v| self.p(t.parent_of(v)) < self.p(v))
    }
}

/// The canonical depiction of a rooted spanning tree: vertices are totally
/// ordered by comparing root paths at their meeting vertex, and `p` is the
/// rank in that order.
///
/// For distinct `i, j` the root paths first meet at `r_ij`; `i` precedes `j`
/// when `r_ij = i`, or when the incoming path edges `(i_j, r_ij)`,
/// `(j_i, r_ij)` satisfy `i_j > j_i`. Ties are impossible in a tree; any
/// detected incomparability is reported as an internal error rather than
/// guessed around.
pub fn canonical_depiction(g: &SimpleGraph, t: &RootedTree) -> Result<Depiction> {
    t.validate(g)?;
    let paths: Vec<Vec<usize>> = (1..=t.n).map(|v| t.root_path(v)).collect();
    let precedes = |i: usize, j: usize| -> Result<bool> {
        let pi = &paths[i - 1];
        let pj = &paths[j - 1];
        let on_i: std::collections::HashSet<usize> = pi.iter().copied().collect();
        let meet = *pj
            .iter()
            .find(|v| on_i.contains(v))
            .expect("root paths always meet at r");
        if meet == i {
            return Ok(true);
        }
        if meet == j {
            return Ok(false);
        }
        let before = |path: &[usize]| -> usize {
            let at = path.iter().position(|&v| v == meet).expect("meet on path");
            path[at - 1]
        };
        let ij = before(pi);
        let ji = before(pj);
        if ij == ji {
            return Err(Error::Internal(format!(
                "incomparable vertices {i},{j} under the path order"
            )));
        }
        Ok(ij > ji)
    };
    // insertion sort so the comparator's Result can propagate
    let mut order: Vec<usize> = Vec::with_capacity(t.n);
    for v in 1..=t.n {
        let mut at = order.len();
        for (idx, &u) in order.iter().enumerate() {
            if precedes(v, u)? {
                at = idx;
                break;
            }
        }
        order.insert(at, v);
    }
    let mut pos = vec![0usize; t.n];
    for (rank, &v) in order.iter().enumerate() {
        pos[v - 1] = rank + 1;
    }
    Ok(Depiction { pos })
}

/// Crossing predicate on `p`-values: two tree arcs cross exactly when their
/// endpoint positions strictly interleave.
pub fn is_noncrossing(t: &RootedTree, p: &Depiction) -> bool {
    let arcs: Vec<(usize, usize)> = (1..=t.n)
        .map(|v| {
            let a = p.p(t.parent_of(v));
            let b = p.p(v);
            (a.min(b), a.max(b))
        })
        .collect();
    for (i, &(a1, b1)) in arcs.iter().enumerate() {
        for &(a2, b2) in &arcs[i + 1..] {
            if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Standard monomial <-> tree
// ---------------------------------------------------------------------------

/// One step of the placement recursion, for trace output.
#[derive(Clone, Debug)]
pub struct PlacementStep {
    pub step: usize,
    pub position_k: usize,
    pub vertex_j: usize,
    pub parent: usize,
}

/// Builds the rooted spanning tree of `G_r` encoded by a standard monomial
/// exponent `a` of `T_G`, together with its depiction and a step-by-step
/// trace.
///
/// The recursion places one vertex per step. With `K` the set of filled
/// positions (initially the root at 0), a pair `(k, j)` is admissible when
/// `j` is unplaced and `k` is the position of the `a_j`-th lowest placed
/// `G_r`-neighbor of `j` (counting from 0; the root is always placed, so
/// `r` participates from the start). The lexicographically-maximal
/// admissible pair wins; `j` lands at the next free position with its
/// parent the vertex at position `k`. A stuck recursion means the input
/// was not standard.
pub fn monomial_to_tree_traced(
    g: &SimpleGraph,
    a: &[u32],
) -> Result<(RootedTree, Depiction, Vec<PlacementStep>)> {
    let n = g.n();
    if a.len() != n {
        return Err(Error::InvalidArgument("exponent length mismatch".into()));
    }
    let root = n + 1;
    // f maps positions 0..=n to vertices; position_of is its partial inverse
    let mut f = vec![0usize; n + 1];
    f[0] = root;
    let mut position_of = vec![usize::MAX; n + 2];
    position_of[root] = 0;
    let mut placed = vec![false; n + 2];
    placed[root] = true;
    let mut parent = vec![0usize; n];
    let mut trace = Vec::with_capacity(n);

    for i in 1..=n {
        let mut best: Option<(usize, usize)> = None;
        for j in 1..=n {
            if placed[j] {
                continue;
            }
            let mut ls: Vec<usize> = g
                .neighbors(j)
                .iter()
                .chain(std::iter::once(root))
                .filter(|&v| placed[v])
                .map(|v| position_of[v])
                .collect();
            ls.sort();
            let want = a[j - 1] as usize;
            if want < ls.len() {
                let k = ls[want];
                if best.is_none_or(|b| (k, j) > b) {
                    best = Some((k, j));
                }
            }
        }
        let (k, j) = best.ok_or_else(|| {
            Error::InvalidArgument(format!(
                "x^{} is not a standard monomial of T_G (recursion stuck at step {i})",
                Monomial(a.to_vec()).pretty()
            ))
        })?;
        f[i] = j;
        position_of[j] = i;
        placed[j] = true;
        parent[j - 1] = f[k];
        trace.push(PlacementStep {
            step: i,
            position_k: k,
            vertex_j: j,
            parent: f[k],
        });
    }

    let pos = position_of[1..=n].to_vec();
    Ok((RootedTree { n, parent }, Depiction { pos }, trace))
}

pub fn monomial_to_tree(g: &SimpleGraph, a: &[u32]) -> Result<RootedTree> {
    monomial_to_tree_traced(g, a).map(|(t, _, _)| t)
}

/// The exponent vector `b(T)` of a rooted spanning tree: `b_i` counts the
/// `G_r`-neighbors of `i` placed strictly left of `i`'s parent.
pub fn tree_to_monomial(g: &SimpleGraph, t: &RootedTree) -> Result<Vec<u32>> {
    let p = canonical_depiction(g, t)?;
    let root = t.root();
    Ok((1..=t.n)
        .map(|i| {
            let cutoff = p.p(t.parent_of(i));
            g.neighbors(i)
                .iter()
                .chain(std::iter::once(root))
                .filter(|&j| p.p(j) < cutoff)
                .count() as u32
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Acyclic-orientation correspondence
// ---------------------------------------------------------------------------

/// Result of reading an orientation of `G` off a rooted spanning tree.
#[derive(Clone, Debug)]
pub struct TreeOrientation {
    pub orientation: Orientation,
    /// True exactly when no graph edge `{i, j}` has `p(j)` strictly between
    /// `p(i_r)` and `p(i)`; then every edge is oriented and the orientation
    /// is acyclic.
    pub efficient: bool,
    /// `f(m) = n + 1 - p(m)`, a linear extension whenever `efficient`.
    pub linear_extension: Vec<usize>,
}

/// Orients `{i, j}` as `(i, j)` whenever `p(j) <= p(i_r)` for the tree
/// parent `i_r` of `i`; edges oriented by neither endpoint stay unoriented.
pub fn tree_to_orientation(g: &SimpleGraph, t: &RootedTree) -> Result<TreeOrientation> {
    use crate::graph::Dir;
    let p = canonical_depiction(g, t)?;
    let dirs = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if p.p(v) <= p.p(t.parent_of(u)) {
                Dir::Fwd
            } else if p.p(u) <= p.p(t.parent_of(v)) {
                Dir::Bwd
            } else {
                Dir::Un
            }
        })
        .collect();
    let mut efficient = true;
    'outer: for i in 1..=t.n {
        let lo = p.p(t.parent_of(i));
        let hi = p.p(i);
        for j in 1..=t.n {
            let q = p.p(j);
            if lo < q && q < hi && g.adjacent(i, j) {
                efficient = false;
                break 'outer;
            }
        }
    }
    let linear_extension = (1..=t.n).map(|m| t.n + 1 - p.p(m)).collect();
    Ok(TreeOrientation {
        orientation: Orientation { dirs },
        efficient,
        linear_extension,
    })
}

/// The efficient tree encoding an acyclic orientation: place its out-degree
/// vector (a maximal standard monomial of `T_G`).
pub fn ao_to_tree(g: &SimpleGraph, o: &Orientation) -> Result<RootedTree> {
    if !o.is_fully_oriented() || !o.is_acyclic(g) {
        return Err(Error::InvalidArgument(
            "not a fully oriented acyclic orientation".into(),
        ));
    }
    monomial_to_tree(g, &o.outdegree_vector(g))
}

// ---------------------------------------------------------------------------
// Non-crossing partitions and their maximal chains
// ---------------------------------------------------------------------------

/// Set partition of the totally ordered ground set `{0..n}`, stored with
/// sorted blocks ordered by minimum.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NcPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl NcPartition {
    pub fn singletons(n: usize) -> NcPartition {
        NcPartition {
            blocks: (0..=n).map(|v| vec![v]).collect(),
        }
    }

    pub fn canonicalize(mut blocks: Vec<Vec<usize>>) -> NcPartition {
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort();
        NcPartition { blocks }
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&v))
            .expect("partition covers the ground set")
    }

    /// No `i < j < k < l` with `i, k` in one block and `j, l` in another.
    pub fn is_noncrossing(&self) -> bool {
        for (x, bx) in self.blocks.iter().enumerate() {
            for by in &self.blocks[x + 1..] {
                if blocks_cross(bx, by) {
                    return false;
                }
            }
        }
        true
    }

    /// Union of the blocks containing `a` and `b` (no-op if equal).
    pub fn merge(&self, a: usize, b: usize) -> NcPartition {
        let ba = self.block_of(a);
        let bb = self.block_of(b);
        if ba == bb {
            return self.clone();
        }
        let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(self.blocks.len() - 1);
        let mut merged: Vec<usize> = self.blocks[ba].clone();
        merged.extend_from_slice(&self.blocks[bb]);
        for (i, blk) in self.blocks.iter().enumerate() {
            if i != ba && i != bb {
                blocks.push(blk.clone());
            }
        }
        blocks.push(merged);
        NcPartition::canonicalize(blocks)
    }
}

/// Two sorted blocks cross iff scanning their union in increasing order
/// switches sides at least three times.
fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    let mut ia = 0;
    let mut ib = 0;
    let mut last = 0u8; // 0 = none, 1 = a, 2 = b
    let mut switches = 0;
    while ia < a.len() || ib < b.len() {
        let side = if ib == b.len() || (ia < a.len() && a[ia] < b[ib]) {
            ia += 1;
            1
        } else {
            ib += 1;
            2
        };
        if last != 0 && side != last {
            switches += 1;
        }
        last = side;
    }
    switches >= 3
}

/// Maximal chain `pi_0 < pi_1 < ... < pi_n` in `NC([0,n])`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcChain {
    pub partitions: Vec<NcPartition>,
}

impl NcChain {
    /// Ground-set size `n` (partitions are of `{0..n}`).
    pub fn n(&self) -> usize {
        self.partitions.len() - 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.partitions.is_empty() {
            return Err(Error::InvalidArgument("empty chain".into()));
        }
        let n = self.n();
        if self.partitions[0] != NcPartition::singletons(n) {
            return Err(Error::InvalidArgument(
                "chain must start at the all-singletons partition".into(),
            ));
        }
        if self.partitions[n].blocks.len() != 1 {
            return Err(Error::InvalidArgument(
                "chain must end at the one-block partition".into(),
            ));
        }
        for (step, w) in self.partitions.windows(2).enumerate() {
            let (prev, next) = (&w[0], &w[1]);
            if !next.is_noncrossing() {
                return Err(Error::InvalidArgument(format!(
                    "partition after step {} is crossing",
                    step + 1
                )));
            }
            if next.blocks.len() + 1 != prev.blocks.len() {
                return Err(Error::InvalidArgument(format!(
                    "step {} does not merge exactly two blocks",
                    step + 1
                )));
            }
            // every block of next must be a block of prev or a union of two
            for blk in &next.blocks {
                let parts: Vec<&Vec<usize>> = prev
                    .blocks
                    .iter()
                    .filter(|pb| pb.iter().all(|v| blk.contains(v)))
                    .collect();
                let covered: usize = parts.iter().map(|pb| pb.len()).sum();
                if covered != blk.len() || parts.len() > 2 {
                    return Err(Error::InvalidArgument(format!(
                        "step {} is not a refinement merge",
                        step + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let blocks: Vec<Vec<Vec<usize>>> =
            self.partitions.iter().map(|p| p.blocks.clone()).collect();
        serde_json::to_string(&blocks).expect("chain serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<NcChain> {
        let blocks: Vec<Vec<Vec<usize>>> = serde_json::from_str(s)
            .map_err(|e| Error::InvalidArgument(format!("chain JSON: {e}")))?;
        Ok(NcChain {
            partitions: blocks.into_iter().map(NcPartition::canonicalize).collect(),
        })
    }
}

/// The rooted spanning tree of `(K_n)_r` encoded by a maximal chain.
///
/// Step `i` merges two blocks; the element that stops being minimal is
/// `bar(i)` and its immediate predecessor in the merged block is
/// `under(i)`. The depiction sends vertex `i` to position `bar(i)`, and
/// vertex `i`'s parent sits at position `under(i)`.
pub fn chain_to_tree(chain: &NcChain) -> Result<(RootedTree, Depiction)> {
    chain.validate()?;
    let n = chain.n();
    let mut bar = vec![0usize; n];
    let mut under = vec![0usize; n];
    for i in 1..=n {
        let prev = &chain.partitions[i - 1];
        let next = &chain.partitions[i];
        let merged = next
            .blocks
            .iter()
            .find(|blk| !prev.blocks.contains(blk))
            .expect("one merge per step");
        // the two constituents in prev
        let mins: Vec<usize> = prev
            .blocks
            .iter()
            .filter(|pb| pb.iter().all(|v| merged.contains(v)))
            .map(|pb| pb[0])
            .collect();
        debug_assert_eq!(mins.len(), 2);
        let b = *mins.iter().max().unwrap();
        bar[i - 1] = b;
        under[i - 1] = *merged
            .iter()
            .filter(|&&v| v < b)
            .max()
            .expect("the smaller minimum precedes bar");
    }
    // vertex at each position: position bar(i) holds vertex i, position 0 holds r
    let mut vertex_at = vec![0usize; n + 1];
    vertex_at[0] = n + 1;
    for i in 1..=n {
        vertex_at[bar[i - 1]] = i;
    }
    let parent: Vec<usize> = (1..=n).map(|i| vertex_at[under[i - 1]]).collect();
    let pos: Vec<usize> = bar.clone();
    Ok((RootedTree { n, parent }, Depiction { pos }))
}

/// The maximal chain encoded by a rooted spanning tree of `(K_n)_r`:
/// step `i` merges the blocks containing `p(i)` and `p(i_r)`.
pub fn tree_to_chain(t: &RootedTree) -> Result<NcChain> {
    let kn = SimpleGraph::complete(t.n);
    let p = canonical_depiction(&kn, t)?;
    let mut partitions = vec![NcPartition::singletons(t.n)];
    for i in 1..=t.n {
        let prev = partitions.last().unwrap();
        partitions.push(prev.merge(p.p(i), p.p(t.parent_of(i))));
    }
    let chain = NcChain { partitions };
    chain
        .validate()
        .map_err(|e| Error::Internal(format!("tree produced an invalid chain: {e}")))?;
    Ok(chain)
}

/// Counts the maximal chains of `NC([0,n])` by direct enumeration.
/// The answer is Kreweras' `(n+1)^(n-1)`.
pub fn count_nc_maximal_chains(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    limits::check(n, limits::NC_CHAIN_MAX_N, "non-crossing chain enumeration")?;
    fn rec(blocks: &[u64], ground: usize) -> u64 {
        if blocks.len() == 1 {
            return 1;
        }
        let mut total = 0;
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                let merged = blocks[i] | blocks[j];
                let rest: Vec<u64> = blocks
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, &b)| b)
                    .collect();
                if rest.iter().all(|&b| !masks_cross(merged, b, ground)) {
                    let mut next = rest;
                    next.push(merged);
                    total += rec(&next, ground);
                }
            }
        }
        total
    }
    let blocks: Vec<u64> = (0..=n).map(|v| 1u64 << v).collect();
    Ok(rec(&blocks, n + 1))
}

/// Crossing test for bitmask blocks over ground set `0..ground`.
fn masks_cross(a: u64, b: u64, ground: usize) -> bool {
    let mut last = 0u8;
    let mut switches = 0;
    for v in 0..ground {
        let side = if a >> v & 1 == 1 {
            1
        } else if b >> v & 1 == 1 {
            2
        } else {
            continue;
        };
        if last != 0 && side != last {
            switches += 1;
        }
        last = side;
    }
    switches >= 3
}

/// Both sides of the finite chain-count identity: the left side is
/// `(n+1)^(n-1)`; the right side sums `n! / prod |B_i|!` over the
/// non-crossing partitions of `{1..n}`.
pub fn forest_identity(n: usize) -> Result<(BigInt, BigInt)> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    limits::check(
        n,
        limits::FOREST_IDENTITY_MAX_N,
        "non-crossing partition enumeration",
    )?;
    let lhs = BigInt::from(n as u64 + 1).pow(n as u32 - 1);
    let factorial =
        |k: usize| -> BigInt { (1..=k).fold(BigInt::from(1), |acc, x| acc * BigInt::from(x)) };
    let mut rhs = BigInt::from(0);
    // iterate set partitions of {1..n} by restricted growth strings
    let mut rgs = vec![0usize; n];
    loop {
        let nb = rgs.iter().max().unwrap() + 1;
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); nb];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        let partition = NcPartition { blocks };
        if partition.is_noncrossing() {
            let mut term = factorial(n);
            for b in &partition.blocks {
                term /= factorial(b.len());
            }
            rhs += term;
        }
        // next RGS
        let mut i = n;
        let mut advanced = false;
        while i > 1 {
            i -= 1;
            let maxv = rgs[..i].iter().max().unwrap();
            if rgs[i] <= *maxv {
                rgs[i] += 1;
                for v in rgs.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    Ok((lhs, rhs))
}

/// Convenience for tests and the CLI: exhaustive roundtrip of the
/// standard-monomial/tree bijection over a whole graph.
pub struct RoundtripReport {
    pub standard_monomials: usize,
    pub spanning_trees: usize,
    pub monomial_failures: Vec<String>,
    pub tree_failures: Vec<String>,
}

impl RoundtripReport {
    pub fn ok(&self) -> bool {
        self.monomial_failures.is_empty()
            && self.tree_failures.is_empty()
            && self.standard_monomials == self.spanning_trees
    }
}

pub fn roundtrip_all(g: &SimpleGraph) -> Result<RoundtripReport> {
    let t_ideal = monomial::ideal_t(g)?;
    let std = monomial::standard_monomials(&t_ideal, &g.degree_vector())?;
    let trees = enumerate_rooted_spanning_trees(g);
    let mut report = RoundtripReport {
        standard_monomials: std.len(),
        spanning_trees: trees.len(),
        monomial_failures: vec![],
        tree_failures: vec![],
    };
    for m in &std {
        let (tree, dep, _) = monomial_to_tree_traced(g, &m.0)?;
        if tree.validate(g).is_err()
            || canonical_depiction(g, &tree)? != dep
            || !is_noncrossing(&tree, &dep)
        {
            report
                .monomial_failures
                .push(format!("{}: produced tree is not canonical", m.pretty()));
            continue;
        }
        let back = tree_to_monomial(g, &tree)?;
        if back != m.0 {
            report
                .monomial_failures
                .push(format!("{}: roundtrip gave {:?}", m.pretty(), back));
        }
    }
    for t in &trees {
        let b = tree_to_monomial(g, t)?;
        if t_ideal.contains(&Monomial(b.clone()))? {
            report
                .tree_failures
                .push(format!("{}: b(T) is not standard", t.encode()));
            continue;
        }
        let back = monomial_to_tree(g, &b)?;
        if back != *t {
            report
                .tree_failures
                .push(format!("{}: roundtrip gave {}", t.encode(), back.encode()));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_acyclic_orientations, Dir};

    fn tree(n: usize, parent: &[usize]) -> RootedTree {
        RootedTree {
            n,
            parent: parent.to_vec(),
        }
    }

    #[test]
    fn canonical_depiction_star_and_chain() {
        let p2 = SimpleGraph::path(2);
        // star: both vertices hang off r -> p(2) = 1, p(1) = 2
        let star = tree(2, &[3, 3]);
        let p = canonical_depiction(&p2, &star).unwrap();
        assert_eq!(p.pos, vec![2, 1]);
        // chain 2 -> 1 -> r: order-reversing forces p(1) = 1, p(2) = 2
        let chain = tree(2, &[3, 1]);
        let p = canonical_depiction(&p2, &chain).unwrap();
        assert_eq!(p.pos, vec![1, 2]);
    }

    #[test]
    fn canonical_depiction_p3_example() {
        // edges (1,2),(2,r),(3,r) in (P3)_r
        let p3 = SimpleGraph::path(3);
        let t = tree(3, &[2, 4, 4]);
        let p = canonical_depiction(&p3, &t).unwrap();
        assert_eq!(p.pos, vec![3, 2, 1]);
        assert!(is_noncrossing(&t, &p));
        assert!(p.is_order_reversing(&t));
    }

    #[test]
    fn canonical_depiction_unique_by_brute_force() {
        // over all order-reversing bijections satisfying the sibling
        // condition and non-crossing, exactly one survives: the canonical
        fn all_valid(t: &RootedTree) -> Vec<Depiction> {
            let n = t.n;
            let mut out = Vec::new();
            let mut perm: Vec<usize> = (1..=n).collect();
            permute(&mut perm, 0, &mut |q| {
                let dep = Depiction { pos: q.to_vec() };
                if !dep.is_order_reversing(t) {
                    return;
                }
                // sibling condition: edges (i,k),(j,k) with i < j need p(i) > p(j)
                for i in 1..=n {
                    for j in 1..=n {
                        if i < j && t.parent_of(i) == t.parent_of(j) && dep.p(i) <= dep.p(j) {
                            return;
                        }
                    }
                }
                if is_noncrossing(t, &dep) {
                    out.push(dep);
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
            out
        }
        for g in [
            SimpleGraph::path(3),
            SimpleGraph::complete(4),
            SimpleGraph::cycle(4),
        ] {
            for t in enumerate_rooted_spanning_trees(&g) {
                let valid = all_valid(&t);
                assert_eq!(valid.len(), 1, "tree {}", t.encode());
                assert_eq!(valid[0], canonical_depiction(&g, &t).unwrap());
            }
        }
    }

    #[test]
    fn noncrossing_examples() {
        // nested arcs from the chain tree
        let chain = tree(2, &[3, 1]);
        let p = Depiction { pos: vec![1, 2] };
        assert!(is_noncrossing(&chain, &p));
        // arcs sharing endpoint 0 never cross
        let star = tree(2, &[3, 3]);
        let p = Depiction { pos: vec![1, 2] };
        assert!(is_noncrossing(&star, &p));
        // canonical crossing: arcs (0,2) and (1,3)
        let t = tree(3, &[4, 1, 2]); // 1 -> r, 2 -> 1, 3 -> 2
        let p = Depiction { pos: vec![2, 1, 3] }; // arcs (0,2),(2,1)->(1,2),(1,3)
                                                  // arcs: (0, 2), (1, 2), (1, 3): (0,2) vs (1,3) interleave
        assert!(!is_noncrossing(&t, &p));
    }

    #[test]
    fn monomial_to_tree_p2_traces() {
        let p2 = SimpleGraph::path(2);
        // a = (0,0): both attach to r
        let t = monomial_to_tree(&p2, &[0, 0]).unwrap();
        assert_eq!(t.parent, vec![3, 3]);
        // a = (1,0): 2 goes to r first, then 1 attaches above 2
        let t = monomial_to_tree(&p2, &[1, 0]).unwrap();
        assert_eq!(t.parent, vec![2, 3]);
        // a = (0,1): 1 to r, then 2 attaches above 1
        let t = monomial_to_tree(&p2, &[0, 1]).unwrap();
        assert_eq!(t.parent, vec![3, 1]);
        // non-standard input gets stuck
        assert!(monomial_to_tree(&p2, &[1, 1]).is_err());
    }

    #[test]
    fn tree_to_monomial_examples() {
        let p2 = SimpleGraph::path(2);
        let star = tree(2, &[3, 3]);
        assert_eq!(tree_to_monomial(&p2, &star).unwrap(), vec![0, 0]);
        // (P3)_r chain 3 -> 2 -> 1 -> r gives b = (0,1,1)
        let p3 = SimpleGraph::path(3);
        let chain = tree(3, &[4, 1, 2]);
        assert_eq!(tree_to_monomial(&p3, &chain).unwrap(), vec![0, 1, 1]);
    }

    #[test]
    fn roundtrips_small_graphs() {
        for g in [
            SimpleGraph::path(2),
            SimpleGraph::path(3),
            SimpleGraph::complete(3),
            SimpleGraph::cycle(4),
            SimpleGraph::star(4),
        ] {
            let report = roundtrip_all(&g).unwrap();
            assert!(
                report.ok(),
                "{g:?}: {:?} {:?}",
                report.monomial_failures,
                report.tree_failures
            );
        }
    }

    #[test]
    fn tree_count_equals_matrix_tree_oracle() {
        for g in [
            SimpleGraph::path(3),
            SimpleGraph::complete(4),
            SimpleGraph::cycle(5),
        ] {
            let trees = enumerate_rooted_spanning_trees(&g);
            assert_eq!(
                BigInt::from(trees.len()),
                g.rooted_extension().spanning_tree_count()
            );
        }
    }

    #[test]
    fn orientation_from_tree_p2() {
        let p2 = SimpleGraph::path(2);
        // star tree leaves the edge unoriented and is not efficient
        let star = tree(2, &[3, 3]);
        let r = tree_to_orientation(&p2, &star).unwrap();
        assert_eq!(r.orientation.dirs, vec![Dir::Un]);
        assert!(!r.efficient);
        // of the 3 spanning trees exactly 2 are efficient = #AO(P2)
        let efficient: Vec<_> = enumerate_rooted_spanning_trees(&p2)
            .into_iter()
            .filter(|t| tree_to_orientation(&p2, t).unwrap().efficient)
            .collect();
        assert_eq!(efficient.len(), 2);
    }

    #[test]
    fn efficient_tree_count_equals_ao_count() {
        for g in [
            SimpleGraph::path(3),
            SimpleGraph::complete(3),
            SimpleGraph::cycle(4),
        ] {
            let count = enumerate_rooted_spanning_trees(&g)
                .iter()
                .filter(|t| tree_to_orientation(&g, t).unwrap().efficient)
                .count();
            assert_eq!(BigInt::from(count), g.count_acyclic_orientations(), "{g:?}");
        }
    }

    #[test]
    fn ao_roundtrip_and_linear_extension() {
        for g in [
            SimpleGraph::path(2),
            SimpleGraph::path(3),
            SimpleGraph::complete(3),
        ] {
            for o in enumerate_acyclic_orientations(&g) {
                let t = ao_to_tree(&g, &o).unwrap();
                let r = tree_to_orientation(&g, &t).unwrap();
                assert!(r.efficient);
                assert_eq!(r.orientation, o);
                assert!(r.orientation.is_acyclic(&g));
                // f = n + 1 - p is a linear extension: tails get smaller values
                for (tail, head) in o.arcs(&g) {
                    assert!(r.linear_extension[tail - 1] < r.linear_extension[head - 1]);
                }
            }
        }
    }

    #[test]
    fn chain_tree_examples() {
        // n = 1: single chain {0},{1} -> {0,1} encodes the tree 1 -> r
        let chain = NcChain {
            partitions: vec![
                NcPartition::singletons(1),
                NcPartition::canonicalize(vec![vec![0, 1]]),
            ],
        };
        let (t, _) = chain_to_tree(&chain).unwrap();
        assert_eq!(t.parent, vec![2]);

        // n = 2: merge {1} into {0}, then {2} into {0,1}
        let chain = NcChain {
            partitions: vec![
                NcPartition::singletons(2),
                NcPartition::canonicalize(vec![vec![0, 1], vec![2]]),
                NcPartition::canonicalize(vec![vec![0, 1, 2]]),
            ],
        };
        let (t, p) = chain_to_tree(&chain).unwrap();
        assert_eq!(p.pos, vec![1, 2]);
        assert_eq!(t.parent, vec![3, 1]); // 1 -> r, 2 -> 1
    }

    #[test]
    fn chain_roundtrips_exhaustive() {
        // all 3 chains at n = 2 map to the 3 spanning trees of K3, bijectively
        for n in [2usize, 3] {
            let kn = SimpleGraph::complete(n);
            let trees = enumerate_rooted_spanning_trees(&kn);
            let mut chains = Vec::new();
            for t in &trees {
                let c = tree_to_chain(t).unwrap();
                let (back, _) = chain_to_tree(&c).unwrap();
                assert_eq!(back, *t);
                chains.push(c);
            }
            chains.sort_by_key(|c| format!("{c:?}"));
            chains.dedup();
            assert_eq!(chains.len(), trees.len());
            assert_eq!(chains.len() as u64, count_nc_maximal_chains(n).unwrap());
        }
    }

    #[test]
    fn chain_validation_rejects_bad_chains() {
        // skipping a merge
        let bad = NcChain {
            partitions: vec![
                NcPartition::singletons(2),
                NcPartition::canonicalize(vec![vec![0, 1, 2]]),
            ],
        };
        assert!(bad.validate().is_err());
        // crossing partition of {0..3}: blocks {0,2} and {1,3}
        let crossing = NcPartition::canonicalize(vec![vec![0, 2], vec![1, 3]]);
        assert!(!crossing.is_noncrossing());
    }

    #[test]
    fn kreweras_counts() {
        assert_eq!(count_nc_maximal_chains(1).unwrap(), 1);
        assert_eq!(count_nc_maximal_chains(2).unwrap(), 3);
        assert_eq!(count_nc_maximal_chains(4).unwrap(), 125);
        for n in 1..=5usize {
            assert_eq!(
                count_nc_maximal_chains(n).unwrap(),
                ((n as u64) + 1).pow(n as u32 - 1)
            );
        }
        assert!(count_nc_maximal_chains(9).is_err());
    }

    #[test]
    fn forest_identity_examples() {
        assert_eq!(
            forest_identity(1).unwrap(),
            (BigInt::from(1), BigInt::from(1))
        );
        assert_eq!(
            forest_identity(2).unwrap(),
            (BigInt::from(3), BigInt::from(3))
        );
        assert_eq!(
            forest_identity(3).unwrap(),
            (BigInt::from(16), BigInt::from(16))
        );
        for n in 1..=6 {
            let (lhs, rhs) = forest_identity(n).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn tree_json_roundtrip() {
        let t = tree(3, &[2, 4, 4]);
        let s = t.to_json();
        assert_eq!(RootedTree::from_json(&s).unwrap(), t);
        assert!(s.contains("\"r\""));
    }
}
