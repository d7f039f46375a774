//! Exact combinatorics engine for acyclic orientations of simple graphs.
//!
//! The library is organized around a handful of connected constructions:
//!
//! * [`graph`] — simple graphs on `{1..n}`, orientations, partial acyclic
//!   orientations (p.a.o.'s) and their order-ideal families, plus the
//!   counting oracles (deletion–contraction, matrix-tree) every other
//!   module checks itself against.
//! * [`complex`] — the abstract cell complexes `Z_G`, `Y_G`, `X_G` with
//!   monomial labels, and the structural verifications (LCM labels,
//!   minimality, tightness witnesses, Betti counts).
//! * [`monomial`] — exact monomial-ideal arithmetic: the ideals `A_G` and
//!   `T_G`, Alexander duality, irreducible decompositions, standard
//!   monomials.
//! * [`nct`] — non-crossing trees: canonical depictions of rooted spanning
//!   trees, the standard-monomial and acyclic-orientation bijections, and
//!   maximal chains of the non-crossing partition lattice.
//! * [`chains`] — five Markov chains on acyclic orientations with exact
//!   rational stationary-law verification and reproducible simulation.
//! * [`expectation`] — the parking-function formula for the expected number
//!   of acyclic orientations of an Erdős–Rényi random graph.
//! * [`percolation`] — k-neighbor bootstrap percolation and its ideal-based
//!   enumeration of percolating sets.
//!
//! All library computations are exact (big integers and rationals); floating
//! point appears only in simulation frequency reports.
//!
//! ```
//! use aoforge::graph::SimpleGraph;
//! use aoforge::monomial::{alexander_dual, ideal_a, ideal_t};
//!
//! let g = SimpleGraph::cycle(4);
//! assert_eq!(g.count_acyclic_orientations(), 14.into());
//!
//! // A_G and T_G are Alexander dual with respect to deg + 1
//! let bound: Vec<u32> = g.degree_vector().iter().map(|d| d + 1).collect();
//! assert_eq!(alexander_dual(&ideal_a(&g)?, &bound)?, ideal_t(&g)?);
//! # Ok::<(), aoforge::Error>(())
//! ```

pub mod chains;
pub mod complex;
pub mod corpus;
pub mod expectation;
pub mod graph;
pub mod limits;
pub mod monomial;
pub mod nct;
pub mod percolation;
pub mod rng;
pub mod verify;

mod error;

pub use error::{Error, Result};

// Re-exported so downstream crates use the same numeric types.
pub use num;
