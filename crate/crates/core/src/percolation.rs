//! k-neighbor bootstrap percolation and its ideal-theoretic mirror.
//!
//! A set `A` infects a vertex once `k` of its neighbors are infected;
//! `A` percolates when the closure is everything. The percolation ideal is
//! generated by the square-free monomials of the subsets `sigma` whose
//! members all have fewer than `k` neighbors outside `sigma`; a set
//! percolates exactly when its complement's indicator monomial is standard,
//! which turns enumeration of percolating sets into subset checks against
//! the minimal generators.

use rayon::prelude::*;

use crate::graph::{SimpleGraph, VertexSet};
use crate::limits;
use crate::{Error, Result};

/// A graph together with the infection threshold `k >= 1`.
#[derive(Clone, Debug)]
pub struct PercolationInstance {
    pub graph: SimpleGraph,
    pub k: usize,
}

impl PercolationInstance {
    pub fn new(graph: SimpleGraph, k: usize) -> Result<PercolationInstance> {
        if k == 0 {
            return Err(Error::InvalidArgument("threshold k must be >= 1".into()));
        }
        Ok(PercolationInstance { graph, k })
    }
}

/// Least fixed point of the infection step, by a queue over threshold
/// counters; monotone in `A`.
pub fn closure(inst: &PercolationInstance, a: VertexSet) -> Result<VertexSet> {
    let g = &inst.graph;
    if !a.is_subset(g.vertices()) {
        return Err(Error::InvalidArgument(
            "seed set outside vertex range".into(),
        ));
    }
    let mut infected = a;
    let mut count = vec![0usize; g.n() + 1];
    for (v, c) in count.iter_mut().enumerate().skip(1) {
        *c = g.neighbors(v).inter(infected).len();
    }
    let mut queue: Vec<usize> = a.iter().collect();
    while let Some(v) = queue.pop() {
        for w in g.neighbors(v).minus(infected).iter() {
            // v is infected; w's counter may already include v if v was in A
            let c = g.neighbors(w).inter(infected).len();
            count[w] = c;
            if c >= inst.k {
                infected.insert(w);
                queue.push(w);
            }
        }
    }
    Ok(infected)
}

pub fn percolates(inst: &PercolationInstance, a: VertexSet) -> Result<bool> {
    Ok(closure(inst, a)? == inst.graph.vertices())
}

/// The family `C(G,k)` of nonempty subsets whose members all have fewer
/// than `k` outside neighbors, plus the minimal generators (minimal
/// supports) of the percolation ideal.
#[derive(Clone, Debug)]
pub struct PercolationIdeal {
    pub stuck_sets: Vec<VertexSet>,
    pub minimal_generators: Vec<VertexSet>,
}

pub fn generators_c(inst: &PercolationInstance) -> Result<PercolationIdeal> {
    let g = &inst.graph;
    limits::check(g.n(), limits::PERCOLATION_MAX_N, "percolation subset scan")?;
    let full = g.vertices();
    // stuck sets are closed under neither subsets nor supersets (adding a
    // vertex lowers the outside degree of old members but the new member
    // may violate the threshold), so the scan is exhaustive
    let mut stuck: Vec<VertexSet> = full
        .subsets()
        .filter(|&sigma| !sigma.is_empty() && sigma.iter().all(|i| g.degout(sigma, i) < inst.k))
        .collect();
    stuck.sort();
    let minimal: Vec<VertexSet> = stuck
        .iter()
        .filter(|&&s| !stuck.iter().any(|&t| t != s && t.is_subset(s)))
        .copied()
        .collect();
    Ok(PercolationIdeal {
        stuck_sets: stuck,
        minimal_generators: minimal,
    })
}

/// All percolating sets, through the ideal: `A` percolates iff no minimal
/// generator is contained in the complement of `A` (equivalently, `A` hits
/// every stuck set).
pub fn percolating_sets(inst: &PercolationInstance) -> Result<Vec<VertexSet>> {
    let g = &inst.graph;
    let ideal = generators_c(inst)?;
    let full = g.vertices();
    let masks: Vec<u64> = (0..=full.0).collect();
    let mut out: Vec<VertexSet> = masks
        .par_iter()
        .filter_map(|&mask| {
            let a = VertexSet(mask & full.0);
            if VertexSet(mask) != a {
                return None;
            }
            let complement = full.minus(a);
            if ideal
                .minimal_generators
                .iter()
                .any(|gen| gen.is_subset(complement))
            {
                None
            } else {
                Some(a)
            }
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Minimum size of a percolating set, by the ideal characterization
/// (the full vertex set always percolates, so the search terminates).
pub fn minimal_percolating_size(inst: &PercolationInstance) -> Result<usize> {
    let ideal = generators_c(inst)?;
    let full = inst.graph.vertices();
    let mut best = inst.graph.n();
    for mask in 0..=full.0 {
        let a = VertexSet(mask & full.0);
        if VertexSet(mask) != a || a.len() >= best {
            continue;
        }
        let complement = full.minus(a);
        if !ideal
            .minimal_generators
            .iter()
            .any(|gen| gen.is_subset(complement))
        {
            best = a.len();
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(g: SimpleGraph, k: usize) -> PercolationInstance {
        PercolationInstance::new(g, k).unwrap()
    }

    #[test]
    fn closure_examples() {
        let p3 = inst(SimpleGraph::path(3), 2);
        assert_eq!(
            closure(&p3, VertexSet::from_iter([1, 3])).unwrap(),
            VertexSet::full(3)
        );
        assert_eq!(
            closure(&p3, VertexSet::from_iter([1, 2])).unwrap(),
            VertexSet::from_iter([1, 2])
        );
        assert_eq!(closure(&p3, VertexSet::EMPTY).unwrap(), VertexSet::EMPTY);
    }

    #[test]
    fn percolates_examples() {
        let p3 = inst(SimpleGraph::path(3), 2);
        assert!(percolates(&p3, VertexSet::from_iter([1, 3])).unwrap());
        assert!(!percolates(&p3, VertexSet::from_iter([1, 2])).unwrap());
        assert!(!percolates(&p3, VertexSet::EMPTY).unwrap());
    }

    #[test]
    fn generators_examples() {
        // P3, k = 2
        let p3 = inst(SimpleGraph::path(3), 2);
        let ideal = generators_c(&p3).unwrap();
        let expect: Vec<VertexSet> = [
            VertexSet::from_iter([1]),
            VertexSet::from_iter([3]),
            VertexSet::from_iter([1, 2]),
            VertexSet::from_iter([1, 3]),
            VertexSet::from_iter([2, 3]),
            VertexSet::from_iter([1, 2, 3]),
        ]
        .into_iter()
        .collect();
        let mut expect = expect;
        expect.sort();
        assert_eq!(ideal.stuck_sets, expect);
        assert_eq!(
            ideal.minimal_generators,
            vec![VertexSet::from_iter([1]), VertexSet::from_iter([3])]
        );

        // k above the max degree: every nonempty subset is stuck
        let hk = inst(SimpleGraph::path(3), 5);
        let ideal = generators_c(&hk).unwrap();
        assert_eq!(ideal.stuck_sets.len(), 7);
        assert_eq!(
            ideal.minimal_generators,
            vec![
                VertexSet::from_iter([1]),
                VertexSet::from_iter([2]),
                VertexSet::from_iter([3])
            ]
        );

        // K3, k = 1: only the full set is stuck
        let k3 = inst(SimpleGraph::complete(3), 1);
        let ideal = generators_c(&k3).unwrap();
        assert_eq!(ideal.stuck_sets, vec![VertexSet::full(3)]);
        assert_eq!(ideal.minimal_generators, vec![VertexSet::full(3)]);
    }

    #[test]
    fn percolating_sets_examples() {
        let p3 = inst(SimpleGraph::path(3), 2);
        assert_eq!(
            percolating_sets(&p3).unwrap(),
            vec![VertexSet::from_iter([1, 3]), VertexSet::full(3)]
        );

        // K3, k = 1: every nonempty set percolates
        let k3 = inst(SimpleGraph::complete(3), 1);
        assert_eq!(percolating_sets(&k3).unwrap().len(), 7);

        // k above max degree: only the full set
        let hk = inst(SimpleGraph::path(3), 5);
        assert_eq!(percolating_sets(&hk).unwrap(), vec![VertexSet::full(3)]);
    }

    #[test]
    fn ideal_route_matches_closure_oracle() {
        for (g, ks) in [
            (SimpleGraph::path(5), vec![1, 2, 3]),
            (SimpleGraph::cycle(5), vec![1, 2, 3]),
            (SimpleGraph::complete(4), vec![1, 2, 3]),
            (SimpleGraph::grid(2, 3), vec![1, 2, 3]),
        ] {
            for k in ks {
                let inst = inst(g.clone(), k);
                let by_ideal = percolating_sets(&inst).unwrap();
                let by_closure: Vec<VertexSet> = g
                    .vertices()
                    .subsets()
                    .filter(|&a| percolates(&inst, a).unwrap())
                    .collect();
                assert_eq!(by_ideal, by_closure, "{g:?} k={k}");
            }
        }
    }

    #[test]
    fn minimal_size_examples() {
        assert_eq!(
            minimal_percolating_size(&inst(SimpleGraph::path(3), 2)).unwrap(),
            2
        );
        assert_eq!(
            minimal_percolating_size(&inst(SimpleGraph::grid(3, 3), 2)).unwrap(),
            3
        );
        assert_eq!(
            minimal_percolating_size(&inst(SimpleGraph::complete(3), 1)).unwrap(),
            1
        );
    }

    #[test]
    fn closure_is_a_closure_operator() {
        let g = SimpleGraph::grid(2, 3);
        let inst = inst(g.clone(), 2);
        for a in g.vertices().subsets() {
            let ca = closure(&inst, a).unwrap();
            assert!(a.is_subset(ca), "extensive");
            assert_eq!(closure(&inst, ca).unwrap(), ca, "idempotent");
            // monotone against supersets of a
            for b in g.vertices().subsets() {
                if a.is_subset(b) {
                    assert!(ca.is_subset(closure(&inst, b).unwrap()), "monotone");
                }
            }
        }
    }

    #[test]
    fn zero_threshold_rejected() {
        assert!(PercolationInstance::new(SimpleGraph::path(2), 0).is_err());
    }
}
