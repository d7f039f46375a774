//! Built-in graph corpus: the named small graphs every suite runs over,
//! plus seeded random connected graphs so the corpus comfortably exceeds
//! thirty entries at n <= 5 without hand-listing them.

use crate::graph::SimpleGraph;
use crate::rng::SplitMix64;

pub const CORPUS_SEED: u64 = 0xA0F0_0001;

/// Named connected graphs with 2..=n_max vertices: paths, cycles, complete
/// graphs, stars, and deterministic seeded random connected graphs.
pub fn connected_corpus(n_max: usize) -> Vec<(String, SimpleGraph)> {
    let mut out: Vec<(String, SimpleGraph)> = Vec::new();
    for n in 2..=n_max {
        out.push((format!("P{n}"), SimpleGraph::path(n)));
    }
    for n in 3..=n_max {
        out.push((format!("C{n}"), SimpleGraph::cycle(n)));
    }
    for n in 3..=n_max {
        out.push((format!("K{n}"), SimpleGraph::complete(n)));
    }
    for n in 4..=n_max {
        out.push((format!("S{n}"), SimpleGraph::star(n)));
    }
    // seeded random connected graphs, deduplicated against everything so far
    let mut rng = SplitMix64::new(CORPUS_SEED);
    for n in 4..=n_max {
        let mut made = 0;
        let mut attempts = 0;
        while made < 10 && attempts < 2000 {
            attempts += 1;
            let mut edges = Vec::new();
            for u in 1..=n {
                for v in (u + 1)..=n {
                    if rng.next_u64() & 1 == 1 {
                        edges.push((u, v));
                    }
                }
            }
            let g = SimpleGraph::new(n, &edges).expect("random edge set is simple");
            if !g.is_connected() {
                continue;
            }
            if out.iter().any(|(_, h)| *h == g) {
                continue;
            }
            made += 1;
            out.push((format!("rand-n{n}-{made}"), g));
        }
    }
    out
}

/// The fixed six graphs the Markov-chain criteria name explicitly.
pub fn chain_corpus() -> Vec<(String, SimpleGraph)> {
    vec![
        ("P2".into(), SimpleGraph::path(2)),
        ("P3".into(), SimpleGraph::path(3)),
        ("K3".into(), SimpleGraph::complete(3)),
        ("C4".into(), SimpleGraph::cycle(4)),
        ("K4".into(), SimpleGraph::complete(4)),
        ("P5".into(), SimpleGraph::path(5)),
    ]
}

/// Graphs for the percolation equivalence sweep (n <= 10).
pub fn percolation_corpus() -> Vec<(String, SimpleGraph)> {
    let mut out = connected_corpus(5);
    out.push(("P8".into(), SimpleGraph::path(8)));
    out.push(("C8".into(), SimpleGraph::cycle(8)));
    out.push(("grid3x3".into(), SimpleGraph::grid(3, 3)));
    out.push(("petersen".into(), petersen()));
    out
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> SimpleGraph {
    let mut edges = vec![(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)];
    for i in 1..=5usize {
        edges.push((i, i + 5));
    }
    edges.extend_from_slice(&[(6, 8), (8, 10), (7, 10), (7, 9), (6, 9)]);
    SimpleGraph::new(10, &edges).expect("petersen is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_large_and_connected() {
        let corpus = connected_corpus(5);
        assert!(corpus.len() >= 30, "corpus has {} graphs", corpus.len());
        for (name, g) in &corpus {
            assert!(g.is_connected(), "{name} must be connected");
            assert!(g.n() <= 5);
        }
        // deterministic across calls
        let again = connected_corpus(5);
        assert_eq!(corpus.len(), again.len());
        for ((n1, g1), (n2, g2)) in corpus.iter().zip(&again) {
            assert_eq!(n1, n2);
            assert_eq!(g1, g2);
        }
    }

    #[test]
    fn petersen_is_cubic() {
        let p = petersen();
        assert_eq!(p.n(), 10);
        assert_eq!(p.edge_count(), 15);
        assert!((1..=10).all(|v| p.degree(v) == 3));
        assert!(p.is_connected());
    }
}
