//! Cross-module invariants: identities that tie independent computation
//! routes together, plus property tests for the closure/membership laws.

use std::collections::HashSet;

use num::BigInt;
use proptest::prelude::*;

use aoforge::chains::{self, ChainKind};
use aoforge::complex;
use aoforge::corpus;
use aoforge::expectation;
use aoforge::graph::{enumerate_acyclic_orientations, enumerate_paos, Pao, SimpleGraph, VertexSet};
use aoforge::monomial::{self, Monomial};
use aoforge::nct;
use aoforge::percolation::{self, PercolationInstance};

#[test]
fn ao_enumeration_matches_chromatic_oracle_up_to_n6() {
    let mut graphs = corpus::connected_corpus(5);
    graphs.push(("P6".into(), SimpleGraph::path(6)));
    graphs.push(("C6".into(), SimpleGraph::cycle(6)));
    graphs.push(("K6".into(), SimpleGraph::complete(6)));
    graphs.push((
        "disconnected".into(),
        SimpleGraph::new(6, &[(1, 2), (3, 4), (4, 5)]).unwrap(),
    ));
    for (name, g) in graphs {
        assert_eq!(
            BigInt::from(enumerate_acyclic_orientations(&g).len()),
            g.count_acyclic_orientations(),
            "{name}"
        );
    }
}

#[test]
fn three_routes_to_the_tree_count_agree() {
    // maximal chains of NC([0,n]) = rooted spanning trees of (K_n)_r
    // = standard monomials of T_{K_n}
    for n in 2..=5usize {
        let kn = SimpleGraph::complete(n);
        let chains_count = nct::count_nc_maximal_chains(n).unwrap();
        let trees = nct::enumerate_rooted_spanning_trees(&kn).len() as u64;
        let t = monomial::ideal_t(&kn).unwrap();
        let std = monomial::standard_monomials(&t, &kn.degree_vector())
            .unwrap()
            .len() as u64;
        assert_eq!(chains_count, trees, "n={n}");
        assert_eq!(chains_count, std, "n={n}");
        let parking = expectation::enumerate_parking_functions(n).unwrap().len() as u64;
        assert_eq!(chains_count, parking, "n={n}");
    }
}

#[test]
fn alexander_duality_is_an_involution() {
    for (name, g) in corpus::connected_corpus(5) {
        let bound: Vec<u32> = g.degree_vector().iter().map(|d| d + 1).collect();
        for ideal in [
            monomial::ideal_a(&g).unwrap(),
            monomial::ideal_t(&g).unwrap(),
        ] {
            let once = monomial::alexander_dual(&ideal, &bound).unwrap();
            let twice = monomial::alexander_dual(&once, &bound).unwrap();
            assert_eq!(twice, ideal, "{name}");
        }
    }
}

#[test]
fn ideal_families_injective_up_to_n5() {
    for (name, g) in corpus::connected_corpus(5) {
        let paos = enumerate_paos(&g).unwrap();
        let mut families: Vec<_> = paos.iter().map(|p| p.ideal_family().sets).collect();
        families.sort();
        let before = families.len();
        families.dedup();
        assert_eq!(families.len(), before, "{name}");
    }
}

#[test]
fn degree_vectors_distinguish_aos_up_to_n5() {
    for (name, g) in corpus::connected_corpus(5) {
        let aos = enumerate_acyclic_orientations(&g);
        let mut ins: Vec<_> = aos.iter().map(|o| o.indegree_vector(&g)).collect();
        let mut outs: Vec<_> = aos.iter().map(|o| o.outdegree_vector(&g)).collect();
        ins.sort();
        outs.sort();
        let n = aos.len();
        ins.dedup();
        outs.dedup();
        assert_eq!(ins.len(), n, "{name}");
        assert_eq!(outs.len(), n, "{name}");
    }
}

#[test]
fn standard_monomials_match_matrix_tree_up_to_n6() {
    let mut graphs = corpus::connected_corpus(5);
    graphs.push(("P6".into(), SimpleGraph::path(6)));
    graphs.push(("C6".into(), SimpleGraph::cycle(6)));
    graphs.push(("S6".into(), SimpleGraph::star(6)));
    graphs.push(("K6".into(), SimpleGraph::complete(6)));
    for (name, g) in graphs {
        let t = monomial::ideal_t(&g).unwrap();
        let std = monomial::standard_monomials(&t, &g.degree_vector()).unwrap();
        assert_eq!(
            BigInt::from(std.len()),
            g.rooted_extension().spanning_tree_count(),
            "{name}"
        );
    }
}

#[test]
fn maximal_standard_monomials_are_outdegree_vectors() {
    for (name, g) in corpus::connected_corpus(5) {
        let t = monomial::ideal_t(&g).unwrap();
        let max = monomial::maximal_standard_monomials(&t, &g.degree_vector()).unwrap();
        let mut outdegs: Vec<Monomial> = enumerate_acyclic_orientations(&g)
            .iter()
            .map(|o| Monomial(o.outdegree_vector(&g)))
            .collect();
        outdegs.sort();
        assert_eq!(max, outdegs, "{name}");
    }
}

#[test]
fn canonical_depiction_unique_at_n5() {
    // brute force over all order-reversing bijections for every spanning
    // tree of (K5)_r: exactly the canonical depiction satisfies the sibling
    // condition and is non-crossing
    let k5 = SimpleGraph::complete(5);
    for t in nct::enumerate_rooted_spanning_trees(&k5) {
        let canonical = nct::canonical_depiction(&k5, &t).unwrap();
        let mut survivors = 0usize;
        let mut perm: Vec<usize> = (1..=5).collect();
        permute(&mut perm, 0, &mut |q| {
            let dep = nct::Depiction { pos: q.to_vec() };
            if !dep.is_order_reversing(&t) {
                return;
            }
            for i in 1..=5usize {
                for j in (i + 1)..=5 {
                    if t.parent_of(i) == t.parent_of(j) && dep.p(i) <= dep.p(j) {
                        return;
                    }
                }
            }
            if nct::is_noncrossing(&t, &dep) {
                assert_eq!(dep, canonical, "tree {}", t.encode());
                survivors += 1;
            }
        });
        assert_eq!(survivors, 1, "tree {}", t.encode());
    }
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
}

#[test]
fn y_and_x_zero_cell_labels_are_generators() {
    for (name, g) in corpus::connected_corpus(4) {
        let y = complex::build_y(&g).unwrap();
        let mut ylabels: Vec<Monomial> = y
            .zero_cells()
            .iter()
            .map(|&i| Monomial(y.cells[i].label.clone()))
            .collect();
        ylabels.sort();
        assert_eq!(
            ylabels,
            monomial::artinianized_a(&g).unwrap().gens,
            "{name}"
        );

        let x = complex::build_x(&g).unwrap();
        let mut xlabels: Vec<Monomial> = x
            .zero_cells()
            .iter()
            .map(|&i| Monomial(x.cells[i].label.clone()))
            .collect();
        xlabels.sort();
        assert_eq!(xlabels, monomial::ideal_t(&g).unwrap().gens, "{name}");
    }
}

/// Alternative characterization of the Z face order: every block of the
/// coarser p.a.o. is a union of the finer one's blocks, and every edge the
/// coarser one directs is directed the same way by the finer one. Must
/// agree with family containment.
#[test]
fn z_face_order_equivalent_characterization() {
    fn directed_arcs(g: &SimpleGraph, pao: &Pao) -> HashSet<(usize, usize)> {
        pao.induced_orientation(g).arcs(g).collect()
    }
    for (name, g) in corpus::connected_corpus(4) {
        let paos = enumerate_paos(&g).unwrap();
        for p1 in &paos {
            let fam1 = p1.ideal_family();
            let arcs1 = directed_arcs(&g, p1);
            for p2 in &paos {
                let by_family = p2.ideal_family().is_subfamily_of(&fam1);
                let blocks_coarsen = p2.partition.blocks.iter().all(|&b2| {
                    p1.partition
                        .blocks
                        .iter()
                        .filter(|b1| b1.is_subset(b2))
                        .fold(VertexSet::EMPTY, |acc, &b1| acc.union(b1))
                        == b2
                });
                let arcs_agree = directed_arcs(&g, p2).is_subset(&arcs1);
                assert_eq!(
                    by_family,
                    blocks_coarsen && arcs_agree,
                    "{name}: {} vs {}",
                    p1.encode(),
                    p2.encode()
                );
            }
        }
    }
}

#[test]
fn flip_graph_invariants_small() {
    for (name, g) in corpus::connected_corpus(4) {
        if g.edge_count() == 0 {
            continue;
        }
        let ir = chains::build_flip_graph(&g, ChainKind::Ir).unwrap();
        let m = g.edge_count();
        assert!(
            (1..=ir.n()).all(|v| ir.degree(v) == m),
            "{name}: IR not |E|-regular"
        );
        assert!(ir.is_connected(), "{name}: IR disconnected");
        let cr = chains::build_flip_graph(&g, ChainKind::Cr).unwrap();
        assert!(cr.is_connected(), "{name}: CR disconnected");
        for &(a, b) in cr.edges() {
            assert!(ir.adjacent(a, b), "{name}: CR not a subgraph of IR");
        }
    }
}

#[test]
fn stationary_laws_all_small_graphs() {
    // beyond the named chain corpus: every connected graph with n <= 4
    for (name, g) in corpus::connected_corpus(4) {
        for kind in [
            ChainKind::Cs,
            ChainKind::Elr,
            ChainKind::Sl,
            ChainKind::Cr,
            ChainKind::Ir,
        ] {
            let verdicts = chains::stationary_verify(&g, kind).unwrap();
            assert!(
                verdicts.iter().all(|v| v.pass),
                "{name} {kind:?}: {:?}",
                verdicts
                    .iter()
                    .filter(|v| !v.pass)
                    .map(|v| &v.name)
                    .collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn y_zero_cells_count_ao_plus_n() {
    for (name, g) in corpus::connected_corpus(5) {
        let y = complex::build_y(&g).unwrap();
        let expected = enumerate_acyclic_orientations(&g).len() + g.n();
        assert_eq!(y.zero_cells().len(), expected, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ideal_membership_is_monotone(exps in prop::collection::vec(0u32..4, 3), extra in prop::collection::vec(0u32..3, 3)) {
        let g = SimpleGraph::path(3);
        let t = monomial::ideal_t(&g).unwrap();
        let m = Monomial(exps.clone());
        let bigger = Monomial(exps.iter().zip(&extra).map(|(a, b)| a + b).collect());
        if t.contains(&m).unwrap() {
            prop_assert!(t.contains(&bigger).unwrap());
        }
    }

    #[test]
    fn closure_operator_laws(seed_bits in 0u64..512, k in 1usize..4) {
        let g = SimpleGraph::grid(3, 3);
        let inst = PercolationInstance::new(g.clone(), k).unwrap();
        let a = VertexSet(seed_bits & g.vertices().0);
        let ca = percolation::closure(&inst, a).unwrap();
        prop_assert!(a.is_subset(ca));
        prop_assert_eq!(percolation::closure(&inst, ca).unwrap(), ca);
        let b = a.union(VertexSet::singleton(5));
        prop_assert!(ca.is_subset(percolation::closure(&inst, b).unwrap()));
    }

    #[test]
    fn percolation_closed_under_supersets(seed_bits in 0u64..1024, extra in 0u64..1024, k in 1usize..4) {
        let g = SimpleGraph::cycle(5);
        let inst = PercolationInstance::new(g.clone(), k).unwrap();
        let a = VertexSet(seed_bits & g.vertices().0);
        let b = a.union(VertexSet(extra & g.vertices().0));
        if percolation::percolates(&inst, a).unwrap() {
            prop_assert!(percolation::percolates(&inst, b).unwrap());
        }
    }
}
