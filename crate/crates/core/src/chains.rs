//! Five stochastic processes on the acyclic orientations of a graph, with
//! exact rational verification of their stationary laws and reproducible
//! simulation.
//!
//! * `CS` (card shuffling): pick a vertex uniformly, direct all its edges
//!   inward; stationary law `e(O)/n!`.
//! * `ELR` (edge-label reversal): swap the labels across a uniformly random
//!   edge; a periodic walk on labellings whose Cesàro law projects to
//!   `e(O)/n!`.
//! * `SL` (sliding-(n+1)): on `G_r`, slide the label `n+1` across a random
//!   incident edge; conditioned on the root holding `n+1`, the law is
//!   `e(O|_V)/n!`.
//! * `CR` (cover reversal): flip one uniformly random cover edge;
//!   stationary law proportional to `|Cov(O)|`.
//! * `IR` (interval reversal): pick a uniformly random edge and reverse its
//!   whole closed interval; uniform stationary law.
//!
//! Exact verification happens on the smallest faithful state space: CS, CR
//! and IR are solved as rational linear systems over the acyclic
//! orientations; ELR and SL are verified on the labelling space through the
//! stationary law of the simple random walk, then projected exactly.

use std::collections::HashMap;

use num::{BigInt, BigRational};

use crate::graph::{
    enumerate_acyclic_orientations, linear_extension_count, Dir, Orientation, SimpleGraph,
};
use crate::limits;
use crate::rng::SplitMix64;
use crate::{Error, Result};

/// The five chain kinds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainKind {
    Cs,
    Elr,
    Sl,
    Cr,
    Ir,
}

impl ChainKind {
    pub fn parse(s: &str) -> Result<ChainKind> {
        match s.to_ascii_uppercase().as_str() {
            "CS" => Ok(ChainKind::Cs),
            "ELR" => Ok(ChainKind::Elr),
            "SL" => Ok(ChainKind::Sl),
            "CR" => Ok(ChainKind::Cr),
            "IR" => Ok(ChainKind::Ir),
            _ => Err(Error::InvalidArgument(format!(
                "unknown chain kind {s:?} (expected CS, ELR, SL, CR or IR)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ChainKind::Cs => "CS",
            ChainKind::Elr => "ELR",
            ChainKind::Sl => "SL",
            ChainKind::Cr => "CR",
            ChainKind::Ir => "IR",
        }
    }
}

/// State of a single chain run: an acyclic orientation for CS/CR/IR, a
/// bijective labelling `V -> [n]` for ELR, a labelling of `G_r` for SL.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ChainState {
    Ao(Orientation),
    Labelling(Vec<usize>),
    RootedLabelling(Vec<usize>),
}

fn is_permutation(f: &[usize]) -> bool {
    let n = f.len();
    let mut seen = vec![false; n + 1];
    f.iter().all(|&x| {
        if x >= 1 && x <= n && !seen[x] {
            seen[x] = true;
            true
        } else {
            false
        }
    })
}

/// Orientation of `g` induced by a labelling: edges point toward the
/// larger label.
pub fn orientation_from_labelling(g: &SimpleGraph, f: &[usize]) -> Orientation {
    let dirs = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if f[u - 1] < f[v - 1] {
                Dir::Fwd
            } else {
                Dir::Bwd
            }
        })
        .collect();
    Orientation { dirs }
}

/// Directed cover edges of an acyclic orientation: `(u, v)` is a cover when
/// removing that arc leaves `v` unreachable from `u`. Returned in edge
/// order (canonical sorted order for uniform sampling).
pub fn cover_edges(g: &SimpleGraph, o: &Orientation) -> Vec<(usize, usize)> {
    let arcs: Vec<(usize, usize)> = o.arcs(g).collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); g.n() + 1];
    for &(u, v) in &arcs {
        out[u].push(v);
    }
    let reachable_without = |skip: (usize, usize)| -> bool {
        // is skip.1 reachable from skip.0 avoiding the direct arc?
        let mut stack = vec![skip.0];
        let mut seen = vec![false; g.n() + 1];
        seen[skip.0] = true;
        while let Some(x) = stack.pop() {
            for &y in &out[x] {
                if x == skip.0 && y == skip.1 {
                    continue;
                }
                if y == skip.1 {
                    return true;
                }
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    };
    arcs.into_iter()
        .filter(|&(u, v)| !reachable_without((u, v)))
        .collect()
}

/// Reverses every directed edge inside the closed interval `[u, v]` of the
/// order induced by `o`, where `(u, v)` is the orientation of `e`.
/// The result is again acyclic, the operation is an involution, and
/// distinct edges produce distinct results.
pub fn interval_reversal(
    g: &SimpleGraph,
    o: &Orientation,
    e: (usize, usize),
) -> Result<Orientation> {
    let idx = g
        .edge_index(e.0, e.1)
        .ok_or_else(|| Error::InvalidArgument(format!("({},{}) is not an edge", e.0, e.1)))?;
    if !o.is_fully_oriented() || !o.is_acyclic(g) {
        return Err(Error::InvalidArgument(
            "interval reversal needs an acyclic orientation".into(),
        ));
    }
    let (a, b) = g.edges()[idx];
    let (u, v) = match o.dirs[idx] {
        Dir::Fwd => (a, b),
        Dir::Bwd => (b, a),
        Dir::Un => unreachable!("fully oriented"),
    };
    // interval = descendants of u intersected with ancestors of v
    let mut fwd: Vec<Vec<usize>> = vec![Vec::new(); g.n() + 1];
    let mut bwd: Vec<Vec<usize>> = vec![Vec::new(); g.n() + 1];
    for (x, y) in o.arcs(g) {
        fwd[x].push(y);
        bwd[y].push(x);
    }
    let reach = |start: usize, adj: &Vec<Vec<usize>>| -> Vec<bool> {
        let mut seen = vec![false; g.n() + 1];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    };
    let below = reach(u, &fwd);
    let above = reach(v, &bwd);
    let dirs = g
        .edges()
        .iter()
        .zip(&o.dirs)
        .map(|(&(x, y), &d)| {
            if below[x] && below[y] && above[x] && above[y] {
                match d {
                    Dir::Fwd => Dir::Bwd,
                    Dir::Bwd => Dir::Fwd,
                    Dir::Un => Dir::Un,
                }
            } else {
                d
            }
        })
        .collect();
    let result = Orientation { dirs };
    debug_assert!(result.is_acyclic(g));
    Ok(result)
}

/// Extends an acyclic orientation of `G` to `G_r` with every root edge
/// directed into the root (edge order of `G_r` respected).
pub fn extend_to_rooted(g: &SimpleGraph, gr: &SimpleGraph, o: &Orientation) -> Orientation {
    let root = g.n() + 1;
    let dirs = gr
        .edges()
        .iter()
        .map(|&(u, v)| {
            if v == root {
                Dir::Fwd
            } else {
                o.dirs[g.edge_index(u, v).expect("edge of G")]
            }
        })
        .collect();
    Orientation { dirs }
}

/// Restriction of an orientation of `G_r` to the edges of `G`.
pub fn restrict_from_rooted(g: &SimpleGraph, gr: &SimpleGraph, o: &Orientation) -> Orientation {
    let dirs = g
        .edges()
        .iter()
        .map(|&(u, v)| o.dirs[gr.edge_index(u, v).expect("edge of G_r")])
        .collect();
    Orientation { dirs }
}

fn require_edges(g: &SimpleGraph, kind: ChainKind) -> Result<()> {
    if g.edge_count() == 0 {
        return Err(Error::InvalidArgument(format!(
            "{} walk is undefined on an edgeless graph (no edge/cover to pick)",
            kind.name()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Single-step kernels
// ---------------------------------------------------------------------------

/// One transition of the chosen chain, drawn with `rng`.
pub fn step(
    g: &SimpleGraph,
    kind: ChainKind,
    state: &ChainState,
    rng: &mut SplitMix64,
) -> Result<ChainState> {
    match (kind, state) {
        (ChainKind::Cs, ChainState::Ao(o)) => {
            if !o.is_fully_oriented() || !o.is_acyclic(g) {
                return Err(Error::InvalidArgument("CS state must be acyclic".into()));
            }
            let v = rng.below(g.n()) + 1;
            Ok(ChainState::Ao(direct_into(g, o, v)))
        }
        (ChainKind::Elr, ChainState::Labelling(f)) => {
            if f.len() != g.n() || !is_permutation(f) {
                return Err(Error::InvalidArgument(
                    "ELR state must be a labelling".into(),
                ));
            }
            require_edges(g, kind)?;
            let (u, v) = g.edges()[rng.below(g.edge_count())];
            let mut f = f.clone();
            f.swap(u - 1, v - 1);
            Ok(ChainState::Labelling(f))
        }
        (ChainKind::Sl, ChainState::RootedLabelling(f)) => {
            let gr = g.rooted_extension();
            if f.len() != gr.n() || !is_permutation(f) {
                return Err(Error::InvalidArgument(
                    "SL state must be a labelling of the rooted extension".into(),
                ));
            }
            let top = f.iter().position(|&x| x == gr.n()).unwrap() + 1;
            let nbrs: Vec<usize> = gr.neighbors(top).iter().collect();
            let v = nbrs[rng.below(nbrs.len())];
            let mut f = f.clone();
            f.swap(top - 1, v - 1);
            Ok(ChainState::RootedLabelling(f))
        }
        (ChainKind::Cr, ChainState::Ao(o)) => {
            require_edges(g, kind)?;
            let covers = cover_edges(g, o);
            let (u, v) = covers[rng.below(covers.len())];
            let idx = g.edge_index(u, v).unwrap();
            let mut dirs = o.dirs.clone();
            dirs[idx] = match dirs[idx] {
                Dir::Fwd => Dir::Bwd,
                Dir::Bwd => Dir::Fwd,
                Dir::Un => return Err(Error::InvalidArgument("CR state must be acyclic".into())),
            };
            Ok(ChainState::Ao(Orientation { dirs }))
        }
        (ChainKind::Ir, ChainState::Ao(o)) => {
            require_edges(g, kind)?;
            let e = g.edges()[rng.below(g.edge_count())];
            Ok(ChainState::Ao(interval_reversal(g, o, e)?))
        }
        _ => Err(Error::InvalidArgument(format!(
            "state shape does not match chain kind {}",
            kind.name()
        ))),
    }
}

/// All edges at `v` redirected into `v` (the orientation-level CS move).
fn direct_into(g: &SimpleGraph, o: &Orientation, v: usize) -> Orientation {
    let dirs = g
        .edges()
        .iter()
        .zip(&o.dirs)
        .map(|(&(a, b), &d)| {
            if b == v {
                Dir::Fwd
            } else if a == v {
                Dir::Bwd
            } else {
                d
            }
        })
        .collect();
    Orientation { dirs }
}

// ---------------------------------------------------------------------------
// Flip graphs
// ---------------------------------------------------------------------------

/// The cover-reversal (CR) or interval-reversal (IR) flip graph: vertices
/// are the acyclic orientations in canonical order, edges join states one
/// move apart. The IR graph is `|E|`-regular and connected and contains the
/// CR graph as a spanning subgraph.
pub fn build_flip_graph(g: &SimpleGraph, kind: ChainKind) -> Result<SimpleGraph> {
    if !g.is_connected() {
        return Err(Error::InvalidArgument(
            "flip graphs need a connected graph".into(),
        ));
    }
    require_edges(g, kind)?;
    let aos = enumerate_acyclic_orientations(g);
    let index: HashMap<&Orientation, usize> = aos.iter().zip(1..).collect();
    let mut edges = Vec::new();
    for (i, o) in aos.iter().enumerate() {
        match kind {
            ChainKind::Cr => {
                for (u, v) in cover_edges(g, o) {
                    let idx = g.edge_index(u, v).unwrap();
                    let mut dirs = o.dirs.clone();
                    dirs[idx] = match dirs[idx] {
                        Dir::Fwd => Dir::Bwd,
                        _ => Dir::Fwd,
                    };
                    let j = index[&Orientation { dirs }];
                    if i + 1 < j {
                        edges.push((i + 1, j));
                    }
                }
            }
            ChainKind::Ir => {
                for &e in g.edges() {
                    let j = index[&interval_reversal(g, o, e)?];
                    if i + 1 < j {
                        edges.push((i + 1, j));
                    }
                }
            }
            _ => {
                return Err(Error::InvalidArgument(
                    "flip graphs exist for CR and IR only".into(),
                ))
            }
        }
    }
    edges.sort();
    edges.dedup();
    SimpleGraph::new(aos.len(), &edges)
}

// ---------------------------------------------------------------------------
// Exact transition matrices and stationary laws
// ---------------------------------------------------------------------------

/// Row-stochastic rational transition matrix over canonically ordered
/// states (orientation encodings, or labelling strings for ELR/SL).
pub struct TransitionMatrix {
    pub states: Vec<String>,
    pub probs: Vec<Vec<BigRational>>,
}

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    fn rec(perm: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(perm, k + 1, out);
            perm.swap(k, i);
        }
    }
    rec(&mut perm, 0, &mut out);
    out.sort();
    out
}

fn labelling_key(f: &[usize]) -> String {
    f.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Builds the exact transition matrix of the chain. States: acyclic
/// orientations for CS/CR/IR; labellings for ELR; labellings of `G_r` for
/// SL. Guarded by the state-space limit.
pub fn exact_transition_matrix(g: &SimpleGraph, kind: ChainKind) -> Result<TransitionMatrix> {
    match kind {
        ChainKind::Cs | ChainKind::Cr | ChainKind::Ir => {
            if kind != ChainKind::Cs {
                require_edges(g, kind)?;
            }
            let aos = enumerate_acyclic_orientations(g);
            limits::check(
                aos.len(),
                limits::TRANSITION_MAX_STATES,
                "chain state count",
            )?;
            let index: HashMap<&Orientation, usize> = aos.iter().zip(0..).collect();
            let s = aos.len();
            let zero = BigRational::from(BigInt::from(0));
            let mut probs = vec![vec![zero; s]; s];
            for (i, o) in aos.iter().enumerate() {
                match kind {
                    ChainKind::Cs => {
                        for v in 1..=g.n() {
                            let j = index[&direct_into(g, o, v)];
                            probs[i][j] += ratio(1, g.n());
                        }
                    }
                    ChainKind::Cr => {
                        let covers = cover_edges(g, o);
                        for &(u, v) in &covers {
                            let idx = g.edge_index(u, v).unwrap();
                            let mut dirs = o.dirs.clone();
                            dirs[idx] = match dirs[idx] {
                                Dir::Fwd => Dir::Bwd,
                                _ => Dir::Fwd,
                            };
                            let j = index[&Orientation { dirs }];
                            probs[i][j] += ratio(1, covers.len());
                        }
                    }
                    ChainKind::Ir => {
                        for &e in g.edges() {
                            let j = index[&interval_reversal(g, o, e)?];
                            probs[i][j] += ratio(1, g.edge_count());
                        }
                    }
                    _ => unreachable!(),
                }
            }
            Ok(TransitionMatrix {
                states: aos.iter().map(|o| o.encode(g)).collect(),
                probs,
            })
        }
        ChainKind::Elr => {
            require_edges(g, kind)?;
            let perms = all_permutations(g.n());
            limits::check(
                perms.len(),
                limits::TRANSITION_MAX_STATES,
                "chain state count",
            )?;
            let index: HashMap<&Vec<usize>, usize> = perms.iter().zip(0..).collect();
            let s = perms.len();
            let zero = BigRational::from(BigInt::from(0));
            let mut probs = vec![vec![zero; s]; s];
            for (i, f) in perms.iter().enumerate() {
                for &(u, v) in g.edges() {
                    let mut f2 = f.clone();
                    f2.swap(u - 1, v - 1);
                    let j = index[&f2];
                    probs[i][j] += ratio(1, g.edge_count());
                }
            }
            Ok(TransitionMatrix {
                states: perms.iter().map(|f| labelling_key(f)).collect(),
                probs,
            })
        }
        ChainKind::Sl => {
            let gr = g.rooted_extension();
            let perms = all_permutations(gr.n());
            limits::check(
                perms.len(),
                limits::TRANSITION_MAX_STATES,
                "chain state count",
            )?;
            let index: HashMap<&Vec<usize>, usize> = perms.iter().zip(0..).collect();
            let s = perms.len();
            let zero = BigRational::from(BigInt::from(0));
            let mut probs = vec![vec![zero; s]; s];
            for (i, f) in perms.iter().enumerate() {
                let top = f.iter().position(|&x| x == gr.n()).unwrap() + 1;
                let nbrs: Vec<usize> = gr.neighbors(top).iter().collect();
                for &v in &nbrs {
                    let mut f2 = f.clone();
                    f2.swap(top - 1, v - 1);
                    let j = index[&f2];
                    probs[i][j] += ratio(1, nbrs.len());
                }
            }
            Ok(TransitionMatrix {
                states: perms.iter().map(|f| labelling_key(f)).collect(),
                probs,
            })
        }
    }
}

/// Solves `pi P = pi`, `sum pi = 1` exactly; errors unless the solution is
/// unique (kernel of `P^T - I` must be one-dimensional).
pub fn solve_stationary(matrix: &TransitionMatrix) -> Result<Vec<BigRational>> {
    let s = matrix.states.len();
    let zero = BigRational::from(BigInt::from(0));
    let one = BigRational::from(BigInt::from(1));
    // rows of (P^T - I)
    let mut m: Vec<Vec<BigRational>> = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    let mut v = matrix.probs[j][i].clone();
                    if i == j {
                        v -= one.clone();
                    }
                    v
                })
                .collect()
        })
        .collect();
    // Gaussian elimination to row echelon form
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..s {
        let Some(p) = (row..s).find(|&r| m[r][col] != zero) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x /= inv.clone();
        }
        for r in 0..s {
            if r != row && m[r][col] != zero {
                let factor = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= factor.clone() * p.clone();
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == s {
            break;
        }
    }
    let free: Vec<usize> = (0..s).filter(|c| !pivot_cols.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::Internal(format!(
            "stationary solution space has dimension {}, expected 1",
            free.len()
        )));
    }
    // kernel vector: free variable = 1, pivots read off the echelon form
    let mut x = vec![zero.clone(); s];
    x[free[0]] = one.clone();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = -m[r][free[0]].clone();
    }
    let total: BigRational = x.iter().cloned().fold(zero.clone(), |a, b| a + b);
    if total == zero {
        return Err(Error::Internal("stationary vector sums to zero".into()));
    }
    Ok(x.into_iter().map(|v| v / total.clone()).collect())
}

// ---------------------------------------------------------------------------
// Stationary verification
// ---------------------------------------------------------------------------

/// One named exact check: expected vs actual.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Verdict {
    pub fn new(
        name: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
        pass: bool,
    ) -> Verdict {
        Verdict {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, x| acc * BigInt::from(x))
}

/// Verifies the stationary law of the chain as an exact rational identity.
pub fn stationary_verify(g: &SimpleGraph, kind: ChainKind) -> Result<Vec<Verdict>> {
    if !g.is_connected() {
        return Err(Error::InvalidArgument(
            "stationary verification needs a connected graph".into(),
        ));
    }
    let mut verdicts = Vec::new();
    match kind {
        ChainKind::Cs => {
            let matrix = exact_transition_matrix(g, kind)?;
            let pi = solve_stationary(&matrix)?;
            let aos = enumerate_acyclic_orientations(g);
            let nfact = factorial(g.n());
            for (i, o) in aos.iter().enumerate() {
                let expect = BigRational::new(linear_extension_count(g, o)?, nfact.clone());
                verdicts.push(Verdict::new(
                    format!("CS pi[{}] = e(O)/n!", matrix.states[i]),
                    expect.clone(),
                    pi[i].clone(),
                    pi[i] == expect,
                ));
            }
        }
        ChainKind::Elr => {
            let matrix = exact_transition_matrix(g, kind)?;
            let s = matrix.states.len();
            // uniform is stationary iff P is doubly stochastic
            let zero = BigRational::from(BigInt::from(0));
            let doubly = (0..s).all(|j| {
                (0..s)
                    .map(|i| matrix.probs[i][j].clone())
                    .fold(zero.clone(), |a, b| a + b)
                    == BigRational::from(BigInt::from(1))
            });
            verdicts.push(Verdict::new(
                "ELR labelling walk: uniform law is stationary",
                "columns sum to 1",
                if doubly {
                    "columns sum to 1"
                } else {
                    "column sums differ"
                },
                doubly,
            ));
            verdicts.push(verify_labelling_graph(&matrix, g.edge_count(), true)?);
            // exact projection: #labellings inducing O equals e(O)
            let perms = all_permutations(g.n());
            let mut counts: HashMap<String, usize> = HashMap::new();
            for f in &perms {
                *counts
                    .entry(orientation_from_labelling(g, f).encode(g))
                    .or_default() += 1;
            }
            let nfact = factorial(g.n());
            for o in enumerate_acyclic_orientations(g) {
                let key = o.encode(g);
                let projected = BigRational::new(
                    BigInt::from(counts.get(&key).copied().unwrap_or(0)),
                    BigInt::from(perms.len()),
                );
                let expect = BigRational::new(linear_extension_count(g, &o)?, nfact.clone());
                verdicts.push(Verdict::new(
                    format!("ELR pi[{key}] = e(O)/n!"),
                    expect.clone(),
                    projected.clone(),
                    projected == expect,
                ));
            }
        }
        ChainKind::Sl => {
            let gr = g.rooted_extension();
            let matrix = exact_transition_matrix(g, kind)?;
            let perms = all_permutations(gr.n());
            // degree-proportional law pi_f ~ deg_{G_r}(v_f) satisfies pi P = pi
            let degsum: usize = perms
                .iter()
                .map(|f| gr.degree(f.iter().position(|&x| x == gr.n()).unwrap() + 1))
                .sum();
            let pi: Vec<BigRational> = perms
                .iter()
                .map(|f| {
                    ratio(
                        gr.degree(f.iter().position(|&x| x == gr.n()).unwrap() + 1),
                        degsum,
                    )
                })
                .collect();
            let s = perms.len();
            let zero = BigRational::from(BigInt::from(0));
            let stationary = (0..s).all(|j| {
                (0..s)
                    .map(|i| pi[i].clone() * matrix.probs[i][j].clone())
                    .fold(zero.clone(), |a, b| a + b)
                    == pi[j]
            });
            verdicts.push(Verdict::new(
                "SL labelling walk: degree-proportional law is stationary",
                "pi P = pi",
                if stationary {
                    "pi P = pi"
                } else {
                    "pi P != pi"
                },
                stationary,
            ));
            verdicts.push(verify_labelling_graph(&matrix, 0, false)?);
            // conditional law on S_r: the root holds n+1
            let root = gr.n();
            let mut mass: HashMap<String, BigRational> = HashMap::new();
            let mut total = zero.clone();
            for (f, p) in perms.iter().zip(&pi) {
                if f[root - 1] == root {
                    let o = orientation_from_labelling(&gr, f);
                    *mass.entry(o.encode(&gr)).or_insert_with(|| zero.clone()) += p.clone();
                    total += p.clone();
                }
            }
            let nfact = factorial(g.n());
            for o in enumerate_acyclic_orientations(g) {
                let ext = extend_to_rooted(g, &gr, &o);
                debug_assert!(ext.is_acyclic(&gr));
                let key = ext.encode(&gr);
                let conditional =
                    mass.get(&key).cloned().unwrap_or_else(|| zero.clone()) / total.clone();
                let expect = BigRational::new(linear_extension_count(g, &o)?, nfact.clone());
                verdicts.push(Verdict::new(
                    format!("SL conditional pi[{key}] = e(O|_V)/n!"),
                    expect.clone(),
                    conditional.clone(),
                    conditional == expect,
                ));
            }
        }
        ChainKind::Cr => {
            let matrix = exact_transition_matrix(g, kind)?;
            let pi = solve_stationary(&matrix)?;
            let aos = enumerate_acyclic_orientations(g);
            let total: usize = aos.iter().map(|o| cover_edges(g, o).len()).sum();
            for (i, o) in aos.iter().enumerate() {
                let expect = ratio(cover_edges(g, o).len(), total);
                verdicts.push(Verdict::new(
                    format!("CR pi[{}] ~ |Cov(O)|", matrix.states[i]),
                    expect.clone(),
                    pi[i].clone(),
                    pi[i] == expect,
                ));
            }
        }
        ChainKind::Ir => {
            let matrix = exact_transition_matrix(g, kind)?;
            let pi = solve_stationary(&matrix)?;
            let s = matrix.states.len();
            let uniform = ratio(1, s);
            for (i, state) in matrix.states.iter().enumerate() {
                verdicts.push(Verdict::new(
                    format!("IR pi[{state}] = 1/|AO|"),
                    uniform.clone(),
                    pi[i].clone(),
                    pi[i] == uniform,
                ));
            }
        }
    }
    Ok(verdicts)
}

/// Structural checks on a labelling-space walk: regularity (ELR), plus
/// connectivity; ELR additionally gets a bipartition check.
fn verify_labelling_graph(
    matrix: &TransitionMatrix,
    regular_degree: usize,
    check_bipartite: bool,
) -> Result<Verdict> {
    let s = matrix.states.len();
    let zero = BigRational::from(BigInt::from(0));
    let adj: Vec<Vec<usize>> = (0..s)
        .map(|i| (0..s).filter(|&j| matrix.probs[i][j] != zero).collect())
        .collect();
    if regular_degree > 0 {
        for row in &adj {
            if row.len() != regular_degree {
                return Ok(Verdict::new(
                    "labelling graph structure",
                    format!("{regular_degree}-regular connected"),
                    format!("vertex of degree {}", row.len()),
                    false,
                ));
            }
        }
    }
    // connectivity
    let mut seen = vec![false; s];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if !seen.iter().all(|&b| b) {
        return Ok(Verdict::new(
            "labelling graph structure",
            "connected",
            "disconnected",
            false,
        ));
    }
    if check_bipartite {
        let mut color = vec![2u8; s];
        color[0] = 0;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if color[y] == 2 {
                    color[y] = 1 - color[x];
                    stack.push(y);
                } else if color[y] == color[x] {
                    return Ok(Verdict::new(
                        "labelling graph structure",
                        "bipartite",
                        "odd cycle",
                        false,
                    ));
                }
            }
        }
    }
    Ok(Verdict::new(
        "labelling graph structure",
        "regular, connected, bipartite where claimed",
        "verified",
        true,
    ))
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

/// Empirical occupation frequencies of a chain run. Counts cover every step
/// after burn-in; SL also reports frequencies conditioned on visits to
/// `S_r` (the root holding the top label), keyed by the restriction to `G`.
#[derive(Clone, Debug)]
pub struct SimulationReport {
    pub kind: &'static str,
    pub seed: u64,
    pub steps: u64,
    pub burn_in: u64,
    pub counts: Vec<(String, u64)>,
    pub conditional_counts: Option<Vec<(String, u64)>>,
}

impl SimulationReport {
    pub fn frequencies(&self) -> Vec<(String, f64)> {
        let total: u64 = self.counts.iter().map(|(_, c)| c).sum();
        self.counts
            .iter()
            .map(|(k, c)| (k.clone(), *c as f64 / total as f64))
            .collect()
    }
}

/// Runs the chain deterministically from its canonical start state (the
/// first acyclic orientation, or the identity labelling) and tallies
/// orientation visits.
pub fn simulate(
    g: &SimpleGraph,
    kind: ChainKind,
    seed: u64,
    steps: u64,
    burn_in: u64,
) -> Result<SimulationReport> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut state = match kind {
        ChainKind::Cs | ChainKind::Cr | ChainKind::Ir => {
            require_edges(g, kind)?;
            ChainState::Ao(
                enumerate_acyclic_orientations(g)
                    .into_iter()
                    .next()
                    .ok_or_else(|| {
                        Error::Internal("every graph has an acyclic orientation".into())
                    })?,
            )
        }
        ChainKind::Elr => ChainState::Labelling((1..=g.n()).collect()),
        ChainKind::Sl => ChainState::RootedLabelling((1..=g.n() + 1).collect()),
    };
    let gr = g.rooted_extension();
    let mut counts: HashMap<String, u64> = HashMap::new();
    let mut conditional: HashMap<String, u64> = HashMap::new();
    for t in 0..burn_in + steps {
        state = step(g, kind, &state, &mut rng)?;
        if t < burn_in {
            continue;
        }
        match (&state, kind) {
            (ChainState::Ao(o), _) => {
                *counts.entry(o.encode(g)).or_default() += 1;
            }
            (ChainState::Labelling(f), _) => {
                *counts
                    .entry(orientation_from_labelling(g, f).encode(g))
                    .or_default() += 1;
            }
            (ChainState::RootedLabelling(f), _) => {
                let o = orientation_from_labelling(&gr, f);
                *counts.entry(o.encode(&gr)).or_default() += 1;
                if f[gr.n() - 1] == gr.n() {
                    let restricted = restrict_from_rooted(g, &gr, &o);
                    *conditional.entry(restricted.encode(g)).or_default() += 1;
                }
            }
        }
    }
    let mut counts: Vec<(String, u64)> = counts.into_iter().collect();
    counts.sort();
    let conditional_counts = if kind == ChainKind::Sl {
        let mut v: Vec<(String, u64)> = conditional.into_iter().collect();
        v.sort();
        Some(v)
    } else {
        None
    };
    Ok(SimulationReport {
        kind: kind.name(),
        seed,
        steps,
        burn_in,
        counts,
        conditional_counts,
    })
}

/// Total-variation distance between empirical frequencies and an exact law
/// given as (state, probability) pairs; states missing on either side count
/// at full weight.
pub fn total_variation(empirical: &[(String, f64)], exact: &[(String, BigRational)]) -> f64 {
    0.5 * deviations(empirical, exact).into_iter().sum::<f64>()
}

/// Largest single-state deviation between empirical and exact frequencies.
pub fn max_deviation(empirical: &[(String, f64)], exact: &[(String, BigRational)]) -> f64 {
    deviations(empirical, exact).into_iter().fold(0.0, f64::max)
}

fn deviations(empirical: &[(String, f64)], exact: &[(String, BigRational)]) -> Vec<f64> {
    use num::ToPrimitive;
    let mut keys: Vec<&String> = empirical.iter().map(|(k, _)| k).collect();
    keys.extend(exact.iter().map(|(k, _)| k));
    keys.sort();
    keys.dedup();
    let emp: HashMap<&String, f64> = empirical.iter().map(|(k, v)| (k, *v)).collect();
    let exa: HashMap<&String, f64> = exact
        .iter()
        .map(|(k, v)| (k, v.to_f64().unwrap_or(0.0)))
        .collect();
    keys.iter()
        .map(|k| (emp.get(k).copied().unwrap_or(0.0) - exa.get(k).copied().unwrap_or(0.0)).abs())
        .collect()
}
