//! Expected number of acyclic orientations of an Erdős–Rényi random graph,
//! exactly, two independent ways: the parking-function formula
//! `E = q^C(n,2) * sum_a (1/q)^Area(a) * p^|supp(a)|` and a brute-force sum
//! over all labeled graphs. Everything is rational; no floating point.

use num::{BigInt, BigRational, One, Zero};
use rayon::prelude::*;

use crate::graph::SimpleGraph;
use crate::limits;
use crate::{Error, Result};

/// A parking function of `[n]`: sorted values satisfy `a_(i) <= i - 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParkingFunction(pub Vec<u32>);

impl ParkingFunction {
    pub fn area(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&a| a > 0).count()
    }
}

pub fn is_parking_function(a: &[u32]) -> bool {
    let mut sorted = a.to_vec();
    sorted.sort();
    sorted.iter().enumerate().all(|(i, &v)| v <= i as u32)
}

/// All parking functions of `[n]`, lexicographically sorted. Enumeration
/// goes by non-decreasing profiles (backtracking on `a_(i) <= i - 1`) and
/// then all distinct permutations of each profile, avoiding the `n^n` scan.
pub fn enumerate_parking_functions(n: usize) -> Result<Vec<ParkingFunction>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    limits::check(n, limits::PARKING_MAX_N, "parking-function enumeration")?;
    let mut profiles: Vec<Vec<u32>> = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(n);
    fn rec(n: usize, cur: &mut Vec<u32>, profiles: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            profiles.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        let hi = cur.len() as u32; // a_(i+1) <= i
        for v in lo..=hi {
            cur.push(v);
            rec(n, cur, profiles);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut profiles);
    let mut out = Vec::new();
    for profile in profiles {
        let mut perm = profile;
        // distinct permutations in lexicographic order
        loop {
            out.push(ParkingFunction(perm.clone()));
            // next_permutation
            let Some(i) = (0..perm.len().saturating_sub(1))
                .rev()
                .find(|&i| perm[i] < perm[i + 1])
            else {
                break;
            };
            let j = (i + 1..perm.len())
                .rev()
                .find(|&j| perm[j] > perm[i])
                .unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn check_probability(p: &BigRational) -> Result<BigRational> {
    if p <= &BigRational::zero() || p >= &BigRational::one() {
        return Err(Error::InvalidArgument(
            "p must be a rational strictly between 0 and 1".into(),
        ));
    }
    Ok(BigRational::one() - p)
}

fn rational_pow(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// The parking-function formula for the expected number of acyclic
/// orientations: with `q = 1 - p`,
/// `q^C(n,2) * sum over parking functions of (1/q)^Area * p^|supp|`,
/// computed as `sum q^(C(n,2) - Area) * p^|supp|` (Area never exceeds
/// `C(n,2)`).
pub fn expected_ao_formula(n: usize, p: &BigRational) -> Result<BigRational> {
    let q = check_probability(p)?;
    let choose2 = (n * (n - 1) / 2) as u32;
    let mut total = BigRational::zero();
    for a in enumerate_parking_functions(n)? {
        debug_assert!(a.area() <= choose2);
        total += rational_pow(&q, choose2 - a.area()) * rational_pow(p, a.support_size() as u32);
    }
    Ok(total)
}

/// Brute-force oracle: sums `p^|E| q^(C(n,2)-|E|) * #AO(G)` over all `2^C(n,2)`
/// labeled graphs on `[n]`, using the deletion–contraction counter.
pub fn expected_ao_bruteforce(n: usize, p: &BigRational) -> Result<BigRational> {
    let q = check_probability(p)?;
    limits::check(n, limits::BRUTEFORCE_GRAPHS_MAX_N, "all-graphs brute force")?;
    let mut pairs = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            pairs.push((u, v));
        }
    }
    let m = pairs.len();
    let total = (0u64..(1 << m))
        .into_par_iter()
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = SimpleGraph::new(n, &edges).expect("edge subsets are valid graphs");
            let count = BigRational::from(g.count_acyclic_orientations());
            let k = edges.len() as u32;
            rational_pow(p, k) * rational_pow(&q, m as u32 - k) * count
        })
        .reduce(BigRational::zero, |a, b| a + b);
    Ok(total)
}

/// Parses a rational like `1/3` or `0.25` (decimals become exact ratios).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad denominator in {s:?}")))?;
        if den == BigInt::from(0) {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let digits = frac.len() as u32;
        let whole: BigInt = if whole.is_empty() {
            BigInt::from(0)
        } else {
            whole
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad decimal {s:?}")))?
        };
        let frac: BigInt = frac
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad decimal {s:?}")))?;
        let scale = BigInt::from(10).pow(digits);
        return Ok(BigRational::new(whole * &scale + frac, scale));
    }
    let whole: BigInt = s
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad rational {s:?}")))?;
    Ok(BigRational::from(whole))
}
