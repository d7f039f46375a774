//! Abstract cell complexes attached to a connected graph.
//!
//! * `Z_G` — one cell per p.a.o. of `G`, ordered by reverse containment of
//!   order-ideal families; combinatorially, the face complex of the clean
//!   graphical zonotope.
//! * `Y_G` — pairs `(sigma, O)` with `O` a p.a.o. of `G[sigma]`, together
//!   with the nonempty proper subsets of `[n]`; supports the minimal free
//!   resolution of the artinianized `A_G`.
//! * `X_G` — the pair cells alone with the order reversed; supports the
//!   minimal cellular resolution of `T_G`.
//!
//! The verification operations here (LCM labels, strict label minimality,
//! tightness witnesses for the zonotope inequalities, Betti counts by face
//! census) are the computational content of the structural theorems.

use num::{BigInt, BigRational};
use serde::Serialize;

use crate::graph::{
    enumerate_acyclic_orientations, enumerate_paos, IdealFamily, Pao, SimpleGraph, VertexSet,
};
use crate::monomial;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComplexKind {
    Z,
    Y,
    X,
}

#[derive(Clone, Debug)]
pub enum CellPayload {
    /// `Z_G`: a p.a.o. of the whole graph.
    Pao(Pao),
    /// `Y_G`: a nonempty proper subset of `[n]`.
    Subset(VertexSet),
    /// `Y_G`/`X_G`: `(sigma, O)` with `O` a p.a.o. of `G[sigma]`, stored
    /// with blocks lifted to ambient vertex labels.
    Pair { sigma: VertexSet, pao: Pao },
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    pub payload: CellPayload,
    pub label: Vec<u32>,
    /// Order-ideal family driving the face order; empty for subset cells.
    family: IdealFamily,
}

/// Finite abstract cell complex with the full strict face order stored.
pub struct CellComplex {
    pub kind: ComplexKind,
    pub cells: Vec<Cell>,
    /// All strict pairs `(a, b)` with cell `a` a proper face of cell `b`.
    pub order: Vec<(usize, usize)>,
    n: usize,
}

#[derive(Serialize)]
struct CellJson {
    id: String,
    dim: usize,
    payload: String,
    label: Vec<u32>,
    covers: Vec<String>,
}

#[derive(Serialize)]
struct ComplexJson {
    kind: String,
    n: usize,
    f_vector: Vec<usize>,
    cells: Vec<CellJson>,
}

impl CellComplex {
    pub fn f_vector(&self) -> Vec<usize> {
        let max_dim = self.cells.iter().map(|c| c.dim).max().unwrap_or(0);
        let mut f = vec![0usize; max_dim + 1];
        for c in &self.cells {
            f[c.dim] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1i64 } else { -1i64 })
            .sum()
    }

    pub fn zero_cells(&self) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].dim == 0)
            .collect()
    }

    /// Indices of proper faces of `i`, from the stored order.
    pub fn faces_of(&self, i: usize) -> Vec<usize> {
        self.order
            .iter()
            .filter(|&&(_, b)| b == i)
            .map(|&(a, _)| a)
            .collect()
    }

    /// Cover relations (no cell strictly between), derived from the order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        use std::collections::HashSet;
        let rel: HashSet<(usize, usize)> = self.order.iter().copied().collect();
        self.order
            .iter()
            .copied()
            .filter(|&(a, b)| {
                !(0..self.cells.len())
                    .any(|c| c != a && c != b && rel.contains(&(a, c)) && rel.contains(&(c, b)))
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let covers = self.covers();
        let cells = (0..self.cells.len())
            .map(|i| {
                let c = &self.cells[i];
                CellJson {
                    id: c.id.clone(),
                    dim: c.dim,
                    payload: payload_string(&c.payload),
                    label: c.label.clone(),
                    covers: covers
                        .iter()
                        .filter(|&&(a, _)| a == i)
                        .map(|&(_, b)| self.cells[b].id.clone())
                        .collect(),
                }
            })
            .collect();
        serde_json::to_string_pretty(&ComplexJson {
            kind: format!("{:?}", self.kind),
            n: self.n,
            f_vector: self.f_vector(),
            cells,
        })
        .expect("complex serialization cannot fail")
    }
}

fn payload_string(p: &CellPayload) -> String {
    match p {
        CellPayload::Pao(pao) => pao.encode(),
        CellPayload::Subset(s) => format!("set={s}"),
        CellPayload::Pair { sigma, pao } => format!("s={sigma};{}", pao.encode()),
    }
}

fn require_connected(g: &SimpleGraph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::InvalidArgument(
            "cell complexes are defined for connected graphs".into(),
        ));
    }
    Ok(())
}

/// Pair cell `(sigma, O)` with ambient-label p.a.o., ambient ideal family,
/// and the per-vertex orientation statistics the labels need.
struct PairCell {
    sigma: VertexSet,
    pao: Pao, // blocks in ambient labels
    family: IdealFamily,
    /// `dim_{G[sigma]}(O) = |sigma| - |Sigma|`
    dim_pao: usize,
    no_outdeg: Vec<u32>, // ambient-indexed, meaningful inside sigma only
    outdeg: Vec<u32>,
}

fn pair_cells(g: &SimpleGraph) -> Result<Vec<PairCell>> {
    let n = g.n();
    let mut out = Vec::new();
    for sigma in g.vertices().subsets() {
        if sigma.is_empty() {
            continue;
        }
        let sub = g.induced_subgraph(sigma)?;
        for local in enumerate_paos(&sub.graph)? {
            let blocks: Vec<VertexSet> = local
                .partition
                .blocks
                .iter()
                .map(|&b| sub.lift(b))
                .collect();
            let mut sets: Vec<VertexSet> = local
                .ideal_family()
                .sets
                .iter()
                .map(|&s| sub.lift(s))
                .collect();
            sets.sort();
            let o = local.induced_orientation(&sub.graph);
            let local_no_out = o.no_outdegree_vector(&sub.graph);
            let local_out = o.outdegree_vector(&sub.graph);
            let mut no_outdeg = vec![0u32; n];
            let mut outdeg = vec![0u32; n];
            for (li, &v) in sub.vertices.iter().enumerate() {
                no_outdeg[v - 1] = local_no_out[li];
                outdeg[v - 1] = local_out[li];
            }
            let dim_pao = sub.graph.n() - local.block_count();
            out.push(PairCell {
                sigma,
                pao: Pao {
                    partition: crate::graph::ConnectedPartition { blocks },
                    arcs: local.arcs.clone(),
                },
                family: IdealFamily { sets },
                dim_pao,
                no_outdeg,
                outdeg,
            });
        }
    }
    Ok(out)
}

/// `Z_G`: one cell per p.a.o.; `O1` is a face of `O2` iff the family of
/// `O2` is contained in the family of `O1`; labels `noOutdeg + 1`.
pub fn build_z(g: &SimpleGraph) -> Result<CellComplex> {
    require_connected(g)?;
    let n = g.n();
    let mut cells: Vec<Cell> = enumerate_paos(g)?
        .into_iter()
        .map(|pao| {
            let o = pao.induced_orientation(g);
            let label: Vec<u32> = o.no_outdegree_vector(g).iter().map(|d| d + 1).collect();
            Cell {
                id: format!("z:{}", pao.encode()),
                dim: pao.dim(g),
                family: pao.ideal_family(),
                payload: CellPayload::Pao(pao),
                label,
            }
        })
        .collect();
    cells.sort_by_key(|c| (c.dim, c.id.clone()));
    let mut order = Vec::new();
    for a in 0..cells.len() {
        for b in 0..cells.len() {
            if a != b && cells[b].family.is_subfamily_of(&cells[a].family) {
                order.push((a, b));
            }
        }
    }
    Ok(CellComplex {
        kind: ComplexKind::Z,
        cells,
        order,
        n,
    })
}

/// `Y_G`: pair cells plus the nonempty proper subsets of `[n]`.
pub fn build_y(g: &SimpleGraph) -> Result<CellComplex> {
    require_connected(g)?;
    let n = g.n();
    let deg = g.degree_vector();
    let mut cells: Vec<Cell> = Vec::new();
    for pc in pair_cells(g)? {
        let label: Vec<u32> = (1..=n)
            .map(|i| {
                if pc.sigma.contains(i) {
                    pc.no_outdeg[i - 1] + 1
                } else {
                    deg[i - 1] + 2
                }
            })
            .collect();
        cells.push(Cell {
            id: format!("y:s={};{}", pc.sigma, pc.pao.encode()),
            dim: (n - pc.sigma.len()) + pc.dim_pao,
            payload: CellPayload::Pair {
                sigma: pc.sigma,
                pao: pc.pao,
            },
            label,
            family: pc.family,
        });
    }
    // midset([n]): the nonempty proper subsets
    for a in g.vertices().subsets() {
        if a.is_empty() || a == g.vertices() {
            continue;
        }
        let label: Vec<u32> = (1..=n)
            .map(|i| if a.contains(i) { deg[i - 1] + 2 } else { 0 })
            .collect();
        cells.push(Cell {
            id: format!("y:set={a}"),
            dim: a.len() - 1,
            payload: CellPayload::Subset(a),
            label,
            family: IdealFamily { sets: vec![] },
        });
    }
    cells.sort_by_key(|c| (c.dim, c.id.clone()));
    let mut order = Vec::new();
    for a in 0..cells.len() {
        for b in 0..cells.len() {
            if a == b {
                continue;
            }
            let below = match (&cells[a].payload, &cells[b].payload) {
                (CellPayload::Subset(sa), CellPayload::Subset(sb)) => sa.is_subset(*sb),
                (CellPayload::Subset(sa), CellPayload::Pair { sigma, .. }) => {
                    sa.is_subset(g.vertices().minus(*sigma))
                }
                (CellPayload::Pair { .. }, CellPayload::Pair { .. }) => {
                    cells[b].family.is_subfamily_of(&cells[a].family)
                }
                (CellPayload::Pair { .. }, CellPayload::Subset(_)) => false,
                _ => unreachable!("Z payloads cannot appear in Y"),
            };
            if below {
                order.push((a, b));
            }
        }
    }
    Ok(CellComplex {
        kind: ComplexKind::Y,
        cells,
        order,
        n,
    })
}

/// `X_G`: the pair cells with the order dual to the corresponding `Y_G`
/// sub-order; labels `outdeg + degout + 1` on `sigma`, zero off it.
pub fn build_x(g: &SimpleGraph) -> Result<CellComplex> {
    require_connected(g)?;
    let n = g.n();
    let mut cells: Vec<Cell> = Vec::new();
    for pc in pair_cells(g)? {
        let label: Vec<u32> = (1..=n)
            .map(|i| {
                if pc.sigma.contains(i) {
                    pc.outdeg[i - 1] + g.degout(pc.sigma, i) as u32 + 1
                } else {
                    0
                }
            })
            .collect();
        cells.push(Cell {
            id: format!("x:s={};{}", pc.sigma, pc.pao.encode()),
            dim: pc.sigma.len() - 1 - pc.dim_pao,
            payload: CellPayload::Pair {
                sigma: pc.sigma,
                pao: pc.pao,
            },
            label,
            family: pc.family,
        });
    }
    cells.sort_by_key(|c| (c.dim, c.id.clone()));
    let mut order = Vec::new();
    for a in 0..cells.len() {
        for b in 0..cells.len() {
            if a != b && cells[a].family.is_subfamily_of(&cells[b].family) {
                order.push((a, b));
            }
        }
    }
    Ok(CellComplex {
        kind: ComplexKind::X,
        cells,
        order,
        n,
    })
}

// ---------------------------------------------------------------------------
// Verifications
// ---------------------------------------------------------------------------

/// Violations are described by cell ids; an empty list is a pass.
#[derive(Clone, Debug, Default)]
pub struct ViolationReport {
    pub violations: Vec<String>,
}

impl ViolationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `label(F) = componentwise max of the labels of F's 0-cells` for
/// every cell of a Z or Y complex.
pub fn verify_label_lcm(c: &CellComplex) -> Result<ViolationReport> {
    if c.kind == ComplexKind::X {
        return Err(Error::InvalidArgument(
            "the LCM label identity is stated for Z and Y complexes".into(),
        ));
    }
    let mut report = ViolationReport::default();
    for (i, cell) in c.cells.iter().enumerate() {
        let mut verts = c.faces_of(i);
        verts.push(i);
        verts.retain(|&v| c.cells[v].dim == 0);
        let mut max = vec![0u32; cell.label.len()];
        for &v in &verts {
            for (m, &l) in max.iter_mut().zip(&c.cells[v].label) {
                *m = (*m).max(l);
            }
        }
        if max != cell.label {
            report.violations.push(format!(
                "{}: label {:?} != vertex LCM {:?}",
                cell.id, cell.label, max
            ));
        }
    }
    Ok(report)
}

/// Checks that labels strictly increase along every strict face relation:
/// componentwise <= and not equal.
pub fn verify_minimality(c: &CellComplex) -> ViolationReport {
    let mut report = ViolationReport::default();
    for &(a, b) in &c.order {
        let la = &c.cells[a].label;
        let lb = &c.cells[b].label;
        let weakly_below = la.iter().zip(lb).all(|(x, y)| x <= y);
        if !weakly_below || la == lb {
            report.violations.push(format!(
                "{} < {}: labels {:?} !< {:?}",
                c.cells[a].id, c.cells[b].id, la, lb
            ));
        }
    }
    report
}

/// Which ideal a Betti census refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BettiFor {
    A,
    T,
}

/// Betti numbers by face census (no homology): for `A_G`, the number of
/// p.a.o.'s of `G` on `n - i` connected parts; for `T_G`, the number of
/// pairs `(sigma, O)` with `O` a p.a.o. of `G[sigma]` on `i + 1` parts.
/// `count_0` is cross-checked against the minimal generator count of the
/// corresponding ideal.
pub fn betti_counts(g: &SimpleGraph, which: BettiFor) -> Result<Vec<(usize, usize)>> {
    require_connected(g)?;
    let n = g.n();
    let mut counts: Vec<(usize, usize)> = Vec::new();
    match which {
        BettiFor::A => {
            let mut by_blocks = vec![0usize; n + 1];
            for pao in enumerate_paos(g)? {
                by_blocks[pao.block_count()] += 1;
            }
            for i in 0..n {
                let c = by_blocks[n - i];
                if c > 0 {
                    counts.push((i, c));
                }
            }
            let gens = monomial::ideal_a(g)?.gens.len();
            if counts.first() != Some(&(0, gens)) {
                return Err(Error::Internal(format!(
                    "beta_0(A_G) = {:?} but A_G has {gens} minimal generators",
                    counts.first()
                )));
            }
        }
        BettiFor::T => {
            let mut by_blocks = vec![0usize; n + 1];
            for pc in pair_cells(g)? {
                by_blocks[pc.pao.block_count()] += 1;
            }
            for i in 0..n {
                let c = by_blocks[i + 1];
                if c > 0 {
                    counts.push((i, c));
                }
            }
            let gens = monomial::ideal_t(g)?.gens.len();
            if counts.first() != Some(&(0, gens)) {
                return Err(Error::Internal(format!(
                    "beta_0(T_G) = {:?} but T_G has {gens} minimal generators",
                    counts.first()
                )));
            }
        }
    }
    Ok(counts)
}

/// The rational witness point of a p.a.o.:
/// `y_i = indeg(i) + unoriented(i)/2 + 1` (denominator 2, exact).
pub fn witness_point(g: &SimpleGraph, pao: &Pao) -> Vec<BigRational> {
    let o = pao.induced_orientation(g);
    let indeg = o.indegree_vector(g);
    let no_out = o.no_outdegree_vector(g);
    (0..g.n())
        .map(|i| {
            let unoriented = no_out[i] - indeg[i];
            BigRational::new(BigInt::from(2 * indeg[i] + unoriented + 2), BigInt::from(2))
        })
        .collect()
}

/// All subsets where the witness point meets its zonotope inequality with
/// equality: `sum_{i in sigma} y_i = |sigma| + |E(G[sigma])|`. By the
/// realization theorem this family equals the order-ideal family of the
/// p.a.o.; callers assert that.
pub fn zonotope_tightness(g: &SimpleGraph, pao: &Pao) -> Result<Vec<VertexSet>> {
    require_connected(g)?;
    let y = witness_point(g, pao);
    let zero = BigRational::from(BigInt::from(0));
    let mut tight = Vec::new();
    for sigma in g.vertices().subsets() {
        let sum: BigRational = sigma
            .iter()
            .map(|i| y[i - 1].clone())
            .fold(zero.clone(), |a, b| a + b);
        let rhs = BigRational::from(BigInt::from(sigma.len() + g.edges_within(sigma)));
        if sum == rhs {
            tight.push(sigma);
        }
    }
    tight.sort();
    Ok(tight)
}

/// Checks the interior point `deg/2 + 1` satisfies every proper nonempty
/// subset inequality strictly, and the full-set constraint with equality.
pub fn interior_point_strict(g: &SimpleGraph) -> Result<bool> {
    require_connected(g)?;
    let y: Vec<BigRational> = g
        .degree_vector()
        .iter()
        .map(|&d| BigRational::new(BigInt::from(d + 2), BigInt::from(2)))
        .collect();
    let zero = BigRational::from(BigInt::from(0));
    for sigma in g.vertices().subsets() {
        let sum: BigRational = sigma
            .iter()
            .map(|i| y[i - 1].clone())
            .fold(zero.clone(), |a, b| a + b);
        let rhs = BigRational::from(BigInt::from(sigma.len() + g.edges_within(sigma)));
        if sigma == g.vertices() {
            if sum != rhs {
                return Ok(false);
            }
        } else if !sigma.is_empty() && sum <= rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that the 0-cells of `Z_G` are exactly the acyclic orientations
/// and that each 0-cell's witness point is the integer vector `indeg + 1`
/// (summing to `n + |E|`).
pub fn vertex_coordinates_check(g: &SimpleGraph) -> Result<ViolationReport> {
    require_connected(g)?;
    let z = build_z(g)?;
    let mut report = ViolationReport::default();
    let zero_cells = z.zero_cells();
    let aos = enumerate_acyclic_orientations(g);
    if zero_cells.len() != aos.len() {
        report.violations.push(format!(
            "{} zero-cells vs {} acyclic orientations",
            zero_cells.len(),
            aos.len()
        ));
    }
    let expected_sum = BigRational::from(BigInt::from(g.n() + g.edge_count()));
    let zero = BigRational::from(BigInt::from(0));
    for &i in &zero_cells {
        let CellPayload::Pao(pao) = &z.cells[i].payload else {
            continue;
        };
        let o = pao.induced_orientation(g);
        if !o.is_fully_oriented() {
            report.violations.push(format!(
                "{}: zero-cell not an acyclic orientation",
                z.cells[i].id
            ));
            continue;
        }
        let y = witness_point(g, pao);
        let expect: Vec<BigRational> = o
            .indegree_vector(g)
            .iter()
            .map(|&d| BigRational::from(BigInt::from(d + 1)))
            .collect();
        if y != expect {
            report
                .violations
                .push(format!("{}: witness differs from indeg + 1", z.cells[i].id));
        }
        let total: BigRational = y.iter().cloned().fold(zero.clone(), |a, b| a + b);
        if total != expected_sum {
            report.violations.push(format!(
                "{}: witness sum differs from n + |E|",
                z.cells[i].id
            ));
        }
    }
    Ok(report)
}

/// Checks `deg + 2 - l_y = l_x` on every pair cell (off-`sigma` entries
/// collapse to 0 on both sides) and that the X order is the reverse of the
/// Y order restricted to pair cells.
pub fn dual_label_identity(g: &SimpleGraph) -> Result<ViolationReport> {
    require_connected(g)?;
    let y = build_y(g)?;
    let x = build_x(g)?;
    let deg = g.degree_vector();
    let mut report = ViolationReport::default();

    use std::collections::{HashMap, HashSet};
    let mut x_by_key: HashMap<&str, usize> = HashMap::new();
    for (i, c) in x.cells.iter().enumerate() {
        x_by_key.insert(c.id.trim_start_matches("x:"), i);
    }
    let mut y_to_x: HashMap<usize, usize> = HashMap::new();
    for (i, c) in y.cells.iter().enumerate() {
        if matches!(c.payload, CellPayload::Pair { .. }) {
            match x_by_key.get(c.id.trim_start_matches("y:")) {
                Some(&j) => {
                    y_to_x.insert(i, j);
                }
                None => report
                    .violations
                    .push(format!("{}: no X counterpart", c.id)),
            }
        }
    }
    for (&yi, &xi) in &y_to_x {
        let ly = &y.cells[yi].label;
        let lx = &x.cells[xi].label;
        let ok = (0..g.n()).all(|i| deg[i] + 2 - ly[i] == lx[i]);
        if !ok {
            report.violations.push(format!(
                "{}: deg+2-l_y differs from l_x = {:?}",
                y.cells[yi].id, lx
            ));
        }
    }
    let y_pairs: HashSet<(usize, usize)> = y
        .order
        .iter()
        .filter(|(a, b)| y_to_x.contains_key(a) && y_to_x.contains_key(b))
        .map(|&(a, b)| (y_to_x[&a], y_to_x[&b]))
        .collect();
    let x_pairs: HashSet<(usize, usize)> = x.order.iter().copied().collect();
    let reversed: HashSet<(usize, usize)> = y_pairs.iter().map(|&(a, b)| (b, a)).collect();
    if reversed != x_pairs {
        report
            .violations
            .push("X order is not the reverse of the Y pair-cell order".into());
    }
    Ok(report)
}
