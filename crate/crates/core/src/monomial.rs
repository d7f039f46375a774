//! Exact monomial-ideal arithmetic.
//!
//! Everything is a finite antichain of exponent vectors; no coefficient
//! field is ever needed. The two protagonists are the ideal of acyclic
//! orientations `A_G` (generated by `x^(indeg(O)+1)`) and the tree ideal
//! `T_G` (generated by `x^(degout_sigma + 1_sigma)` over connected subsets),
//! which are Alexander dual with respect to `deg_G + 1`.

use serde::{Deserialize, Serialize};

use crate::graph::{enumerate_acyclic_orientations, SimpleGraph};
use crate::{Error, Result};

/// Monomial in `n` variables as an exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// Human-readable form like `x1^2*x3` (or `1`).
    pub fn pretty(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Monomial ideal, stored minimized: generators form an antichain under
/// componentwise divisibility, sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MonomialIdeal {
    pub n: usize,
    pub gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// The zero ideal (no generators).
    pub fn zero(n: usize) -> MonomialIdeal {
        MonomialIdeal { n, gens: vec![] }
    }

    /// The unit ideal, generated by 1.
    pub fn unit(n: usize) -> MonomialIdeal {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    /// The irreducible ideal `m^a = <x_i^{a_i} : a_i >= 1>`.
    pub fn irreducible(a: &[u32]) -> MonomialIdeal {
        let n = a.len();
        let gens = a
            .iter()
            .enumerate()
            .filter(|(_, &e)| e >= 1)
            .map(|(i, &e)| {
                let mut v = vec![0; n];
                v[i] = e;
                Monomial(v)
            })
            .collect();
        minimize(n, gens)
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        if m.num_vars() != self.n {
            return Err(Error::InvalidArgument(format!(
                "monomial in {} variables against ideal in {}",
                m.num_vars(),
                self.n
            )));
        }
        Ok(self.gens.iter().any(|g| g.divides(m)))
    }

    /// Ideal intersection via pairwise LCMs of generators, minimized.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        minimize(self.n, gens)
    }
}

/// Discards every generator divisible by another; the result generates the
/// same ideal and is the unique minimal generating set.
pub fn minimize(n: usize, gens: Vec<Monomial>) -> MonomialIdeal {
    let mut sorted = gens;
    sorted.sort();
    sorted.dedup();
    let keep: Vec<Monomial> = sorted
        .iter()
        .filter(|m| !sorted.iter().any(|other| *other != **m && other.divides(m)))
        .cloned()
        .collect();
    MonomialIdeal { n, gens: keep }
}

/// The ideal `A_G` of acyclic orientations, generated by `x^(indeg(O)+1)`.
/// The stated generators are asserted to already be minimal.
pub fn ideal_a(g: &SimpleGraph) -> Result<MonomialIdeal> {
    if !g.is_connected() {
        return Err(Error::InvalidArgument("A_G needs a connected graph".into()));
    }
    let gens: Vec<Monomial> = enumerate_acyclic_orientations(g)
        .iter()
        .map(|o| Monomial(o.indegree_vector(g).iter().map(|d| d + 1).collect()))
        .collect();
    let count = gens.len();
    let ideal = minimize(g.n(), gens);
    if ideal.gens.len() != count {
        return Err(Error::Internal(
            "A_G generators were not minimal as claimed".into(),
        ));
    }
    Ok(ideal)
}

/// The tree ideal `T_G`, generated by `x^(degout_sigma + 1_sigma)` over
/// nonempty subsets with connected induced subgraph. The stated generators
/// are asserted to already be minimal.
pub fn ideal_t(g: &SimpleGraph) -> Result<MonomialIdeal> {
    if !g.is_connected() {
        return Err(Error::InvalidArgument("T_G needs a connected graph".into()));
    }
    let gens = tree_ideal_raw_generators(g);
    let count = gens.len();
    let ideal = minimize(g.n(), gens);
    if ideal.gens.len() != count {
        return Err(Error::Internal(
            "T_G generators were not minimal as claimed".into(),
        ));
    }
    Ok(ideal)
}

/// Unminimized `T_G` generators, one per connected nonempty subset.
pub fn tree_ideal_raw_generators(g: &SimpleGraph) -> Vec<Monomial> {
    let n = g.n();
    let mut gens = Vec::new();
    for sigma in g.vertices().subsets() {
        if sigma.is_empty() || !g.is_connected_within(sigma) {
            continue;
        }
        let exps: Vec<u32> = (1..=n)
            .map(|i| {
                if sigma.contains(i) {
                    g.degout(sigma, i) as u32 + 1
                } else {
                    0
                }
            })
            .collect();
        gens.push(Monomial(exps));
    }
    gens.sort();
    gens
}

/// `a \ b`: coordinate `a_i + 1 - b_i` where `b_i >= 1`, else 0.
fn dual_exponent(a: &[u32], b: &Monomial) -> Vec<u32> {
    a.iter()
        .zip(&b.0)
        .map(|(&ai, &bi)| if bi >= 1 { ai + 1 - bi } else { 0 })
        .collect()
}

/// Alexander dual of `ideal` with respect to `a`: the intersection of the
/// irreducible ideals `m^(a\b)` over minimal generators `x^b`.
pub fn alexander_dual(ideal: &MonomialIdeal, a: &[u32]) -> Result<MonomialIdeal> {
    if a.len() != ideal.n {
        return Err(Error::InvalidArgument("bound length mismatch".into()));
    }
    for b in &ideal.gens {
        if !b.divides(&Monomial(a.to_vec())) {
            return Err(Error::InvalidArgument(format!(
                "generator {} does not divide x^a",
                b.pretty()
            )));
        }
    }
    let mut result = MonomialIdeal::unit(ideal.n);
    for b in &ideal.gens {
        result = result.intersect(&MonomialIdeal::irreducible(&dual_exponent(a, b)));
    }
    Ok(result)
}

/// Report of the irreducible-decomposition identities: `A_G` as the
/// intersection of `m^(degin_sigma + 1_sigma)` over connected subsets, and
/// `T_G` as the intersection of `m^(outdeg(O)+1)` over acyclic orientations.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub a_matches: bool,
    pub t_matches: bool,
}

pub fn irreducible_decomposition_check(g: &SimpleGraph) -> Result<DecompositionReport> {
    let n = g.n();
    let a_ideal = ideal_a(g)?;
    let t_ideal = ideal_t(g)?;

    let mut a_inter = MonomialIdeal::unit(n);
    for sigma in g.vertices().subsets() {
        if sigma.is_empty() || !g.is_connected_within(sigma) {
            continue;
        }
        let exps: Vec<u32> = (1..=n)
            .map(|i| {
                if sigma.contains(i) {
                    g.degin(sigma, i) as u32 + 1
                } else {
                    0
                }
            })
            .collect();
        a_inter = a_inter.intersect(&MonomialIdeal::irreducible(&exps));
    }

    let mut t_inter = MonomialIdeal::unit(n);
    for o in enumerate_acyclic_orientations(g) {
        let exps: Vec<u32> = o.outdegree_vector(g).iter().map(|d| d + 1).collect();
        t_inter = t_inter.intersect(&MonomialIdeal::irreducible(&exps));
    }

    Ok(DecompositionReport {
        a_matches: a_inter == a_ideal,
        t_matches: t_inter == t_ideal,
    })
}

/// All standard monomials of `ideal` inside the box `0 <= b <= bound`,
/// sorted lexicographically. Errors unless the box provably captures every
/// standard monomial, i.e. `x_i^(bound_i + 1)` lies in the ideal for each
/// variable.
pub fn standard_monomials(ideal: &MonomialIdeal, bound: &[u32]) -> Result<Vec<Monomial>> {
    if bound.len() != ideal.n {
        return Err(Error::InvalidArgument("bound length mismatch".into()));
    }
    for i in 0..ideal.n {
        let mut probe = vec![0u32; ideal.n];
        probe[i] = bound[i] + 1;
        if !ideal.contains(&Monomial(probe))? {
            return Err(Error::InvalidArgument(format!(
                "bound does not confine standard monomials: x{}^{} is standard",
                i + 1,
                bound[i] + 1
            )));
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; ideal.n];
    loop {
        let m = Monomial(cur.clone());
        if !ideal.contains(&m)? {
            out.push(m);
        }
        // odometer increment within the box
        let mut i = ideal.n;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            if cur[i] < bound[i] {
                cur[i] += 1;
                for e in cur.iter_mut().skip(i + 1) {
                    *e = 0;
                }
                break;
            }
        }
    }
}

/// Standard monomials maximal under divisibility: `b` standard with
/// `b + e_i` in the ideal for every `i`.
pub fn maximal_standard_monomials(ideal: &MonomialIdeal, bound: &[u32]) -> Result<Vec<Monomial>> {
    let std = standard_monomials(ideal, bound)?;
    let mut out = Vec::new();
    for m in std {
        let mut maximal = true;
        for i in 0..ideal.n {
            if !ideal.contains(&m.times_var(i))? {
                maximal = false;
                break;
            }
        }
        if maximal {
            out.push(m);
        }
    }
    Ok(out)
}

/// `A_G + m^(deg+2)`, minimized. The minimal generator count is the number
/// of acyclic orientations plus `n` (one artinian generator per vertex).
pub fn artinianized_a(g: &SimpleGraph) -> Result<MonomialIdeal> {
    let a = ideal_a(g)?;
    let n = g.n();
    let mut gens = a.gens;
    for (i, d) in g.degree_vector().iter().enumerate() {
        let mut v = vec![0u32; n];
        v[i] = d + 2;
        gens.push(Monomial(v));
    }
    let ideal = minimize(n, gens);
    let expected = enumerate_acyclic_orientations(g).len() + n;
    if ideal.gens.len() != expected {
        return Err(Error::Internal(format!(
            "artinianized A_G has {} generators, expected {}",
            ideal.gens.len(),
            expected
        )));
    }
    Ok(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mon(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn minimize_examples() {
        // {x1, x1x2} -> {x1}
        let i = minimize(2, vec![mon(&[1, 0]), mon(&[1, 1])]);
        assert_eq!(i.gens, vec![mon(&[1, 0])]);
        // all six raw T_P3 generators survive
        let p3 = SimpleGraph::path(3);
        let raw = tree_ideal_raw_generators(&p3);
        assert_eq!(raw.len(), 6);
        assert_eq!(minimize(3, raw.clone()).gens.len(), 6);
        // empty set of generators is the zero ideal
        assert_eq!(minimize(2, vec![]).gens.len(), 0);
    }

    #[test]
    fn contains_examples() {
        let p2 = SimpleGraph::path(2);
        let t = ideal_t(&p2).unwrap();
        assert!(t.contains(&mon(&[1, 2])).unwrap()); // x1*x2^2
        assert!(!t.contains(&mon(&[0, 1])).unwrap()); // x2
        let zero = MonomialIdeal::zero(2);
        assert!(!zero.contains(&mon(&[5, 5])).unwrap());
        assert!(zero.contains(&mon(&[1])).is_err());
    }

    #[test]
    fn ideal_a_examples() {
        let p2 = SimpleGraph::path(2);
        let a = ideal_a(&p2).unwrap();
        assert_eq!(a.gens, vec![mon(&[1, 2]), mon(&[2, 1])]);

        let p3 = SimpleGraph::path(3);
        let a = ideal_a(&p3).unwrap();
        assert_eq!(
            a.gens,
            vec![
                mon(&[1, 2, 2]),
                mon(&[1, 3, 1]),
                mon(&[2, 1, 2]),
                mon(&[2, 2, 1])
            ]
        );

        let k3 = SimpleGraph::complete(3);
        let a = ideal_a(&k3).unwrap();
        assert_eq!(a.gens.len(), 6);
        for g in &a.gens {
            let mut e = g.0.clone();
            e.sort();
            assert_eq!(e, vec![1, 2, 3]);
        }
    }

    #[test]
    fn ideal_t_examples() {
        let p2 = SimpleGraph::path(2);
        let t = ideal_t(&p2).unwrap();
        assert_eq!(t.gens, vec![mon(&[0, 2]), mon(&[1, 1]), mon(&[2, 0])]);

        let p3 = SimpleGraph::path(3);
        let t = ideal_t(&p3).unwrap();
        let mut expect = vec![
            mon(&[2, 0, 0]),
            mon(&[0, 3, 0]),
            mon(&[0, 0, 2]),
            mon(&[1, 2, 0]),
            mon(&[0, 2, 1]),
            mon(&[1, 1, 1]),
        ];
        expect.sort();
        assert_eq!(t.gens, expect);

        // sigma = [n] in a complete graph: x1...xn
        let k4 = SimpleGraph::complete(4);
        let t = ideal_t(&k4).unwrap();
        assert!(t.gens.contains(&mon(&[1, 1, 1, 1])));
    }

    #[test]
    fn alexander_dual_examples() {
        let p2 = SimpleGraph::path(2);
        let a = ideal_a(&p2).unwrap();
        let t = ideal_t(&p2).unwrap();
        let bound = [2u32, 2];
        assert_eq!(alexander_dual(&a, &bound).unwrap(), t);
        assert_eq!(alexander_dual(&t, &bound).unwrap(), a);

        // self-dual point
        let i = MonomialIdeal {
            n: 1,
            gens: vec![mon(&[1])],
        };
        assert_eq!(alexander_dual(&i, &[1]).unwrap(), i);

        // generator not dividing x^a
        assert!(alexander_dual(&a, &[1, 1]).is_err());
    }

    #[test]
    fn decomposition_examples() {
        for g in [
            SimpleGraph::path(2),
            SimpleGraph::path(3),
            SimpleGraph::complete(3),
        ] {
            let rep = irreducible_decomposition_check(&g).unwrap();
            assert!(rep.a_matches && rep.t_matches);
        }
    }

    #[test]
    fn standard_monomial_examples() {
        let p2 = SimpleGraph::path(2);
        let t = ideal_t(&p2).unwrap();
        let std = standard_monomials(&t, &p2.degree_vector()).unwrap();
        assert_eq!(std, vec![mon(&[0, 0]), mon(&[0, 1]), mon(&[1, 0])]);

        let p3 = SimpleGraph::path(3);
        let t = ideal_t(&p3).unwrap();
        assert_eq!(
            standard_monomials(&t, &p3.degree_vector()).unwrap().len(),
            8
        );

        let k3 = SimpleGraph::complete(3);
        let t = ideal_t(&k3).unwrap();
        assert_eq!(
            standard_monomials(&t, &k3.degree_vector()).unwrap().len(),
            16
        );

        // insufficient bound is rejected
        assert!(standard_monomials(&t, &[1, 1, 1]).is_err());
    }

    #[test]
    fn maximal_standard_monomial_examples() {
        let p2 = SimpleGraph::path(2);
        let t = ideal_t(&p2).unwrap();
        let max = maximal_standard_monomials(&t, &p2.degree_vector()).unwrap();
        assert_eq!(max, vec![mon(&[0, 1]), mon(&[1, 0])]);

        let p3 = SimpleGraph::path(3);
        let t = ideal_t(&p3).unwrap();
        let max = maximal_standard_monomials(&t, &p3.degree_vector()).unwrap();
        let mut expect = vec![
            mon(&[1, 1, 0]),
            mon(&[1, 0, 1]),
            mon(&[0, 2, 0]),
            mon(&[0, 1, 1]),
        ];
        expect.sort();
        assert_eq!(max, expect);

        let k3 = SimpleGraph::complete(3);
        let t = ideal_t(&k3).unwrap();
        assert_eq!(
            maximal_standard_monomials(&t, &k3.degree_vector())
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn artinianized_examples() {
        let p2 = SimpleGraph::path(2);
        let art = artinianized_a(&p2).unwrap();
        let mut expect = vec![mon(&[1, 2]), mon(&[2, 1]), mon(&[3, 0]), mon(&[0, 3])];
        expect.sort();
        assert_eq!(art.gens, expect);

        assert_eq!(artinianized_a(&SimpleGraph::path(3)).unwrap().gens.len(), 7);
        assert_eq!(
            artinianized_a(&SimpleGraph::complete(3))
                .unwrap()
                .gens
                .len(),
            9
        );
    }
}
