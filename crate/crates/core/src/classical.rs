//! Classical single Hurwitz numbers of the sphere.
//!
//! `<a>^m` counts, with weight `1/d!`, tuples `(σ, τ_1, ..., τ_m)` in `S_d`
//! where `σ` has cycle type `a`, every `τ` is a transposition and
//! `τ_m ⋯ τ_1 σ = 1`. Coverings need not be connected.
//!
//! These numbers are computed here twice: by brute force in the group
//! algebra, and by evolving `Φ = Σ λ^m/m! Σ_a <a>^m p_a` from `Φ_0 = e^{p_1}`
//! with the cut-and-join operator
//! `½ Σ (i+j) p_i p_j ∂_{i+j} + ½ Σ ij p_{i+j} ∂_i ∂_j`.
//!
//! ```
//! use disk_hurwitz::classical::{classical_bruteforce, Partition};
//! use disk_hurwitz::rational::frac;
//!
//! let a = Partition::new(vec![3]).unwrap();
//! assert_eq!(classical_bruteforce(&a, 2).unwrap(), frac(1, 1));
//! ```

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{frac, Rational};
use crate::series::{apply, PMonomial, PolyOperator, SeriesBounds, TruncatedSeries};

/// Weakly decreasing positive parts. The empty partition is the unit
/// p-monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Every partition of `d`, in reverse lexicographic order.
    pub fn all(d: u32) -> Vec<Partition> {
        fn go(rest: u32, max: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(stack.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                stack.push(p);
                go(rest - p, p, stack, out);
                stack.pop();
            }
        }
        let mut out = Vec::new();
        go(d, d, &mut Vec::new(), &mut out);
        out
    }

    fn counts(&self) -> HashMap<u32, u32> {
        let mut c = HashMap::new();
        for &p in &self.0 {
            *c.entry(p).or_insert(0) += 1;
        }
        c
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Partition::new(Vec::new());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Domain(format!("not a partition: {s:?}")))?;
        Partition::new(parts)
    }
}

impl PMonomial for Partition {
    fn weight(&self) -> u32 {
        self.size()
    }

    fn times(&self, other: &Self) -> Self {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    fn quotient(&self, other: &Self) -> Option<Self> {
        let mut parts = self.0.clone();
        for p in &other.0 {
            let at = parts.iter().position(|q| q == p)?;
            parts.remove(at);
        }
        Some(Partition(parts))
    }

    fn derivative_factor(&self, other: &Self) -> u64 {
        let have = self.counts();
        let mut acc = 1u64;
        for (p, k) in other.counts() {
            let s = have.get(&p).copied().unwrap_or(0);
            if s < k {
                return 0;
            }
            for t in 0..k {
                acc *= u64::from(s - t);
            }
        }
        acc
    }
}

type Perm = Vec<u8>;

fn cycle_type(p: &Perm) -> Partition {
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts).expect("cycle lengths are positive")
}

/// `<a>^m` by counting in `S_d`, `1 <= d <= 5`.
pub fn classical_bruteforce(a: &Partition, m: u32) -> Result<Rational> {
    let d = a.size();
    if !(1..=5).contains(&d) {
        return Err(Error::Usage(format!("brute force supports 1 <= d <= 5, got d = {d}")));
    }
    let n = d as usize;
    let transpositions: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    // counts of products τ_k ⋯ τ_1, by permutation
    let mut dist: HashMap<Perm, BigUint> = HashMap::new();
    dist.insert((0..d as u8).collect(), BigUint::one());
    for _ in 0..m {
        let mut next: HashMap<Perm, BigUint> = HashMap::new();
        for (p, c) in &dist {
            for &(i, j) in &transpositions {
                let mut q = p.clone();
                // left multiplication by (i j) relabels the images i <-> j
                for x in q.iter_mut() {
                    if *x as usize == i {
                        *x = j as u8;
                    } else if *x as usize == j {
                        *x = i as u8;
                    }
                }
                *next.entry(q).or_insert_with(BigUint::zero) += c;
            }
        }
        dist = next;
    }
    let count: BigUint = dist
        .iter()
        .filter(|(p, _)| cycle_type(p) == *a)
        .map(|(_, c)| c.clone())
        .sum();
    let factorial: BigUint = (1..=d).map(BigUint::from).product();
    Ok(Rational::new(count.into(), factorial.into()))
}

/// The cut-and-join operator up to weight `d_max`.
pub fn cut_and_join_operator(d_max: u32) -> PolyOperator<Partition> {
    let mut op = PolyOperator::new(d_max);
    for i in 1..d_max {
        for j in 1..d_max {
            if i + j > d_max {
                continue;
            }
            let pair = Partition::new(vec![i, j]).expect("positive");
            let single = Partition::new(vec![i + j]).expect("positive");
            op.add_term(pair.clone(), single.clone(), frac(i64::from(i + j), 2));
            op.add_term(single, pair, frac(i64::from(i * j), 2));
        }
    }
    op
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalRow {
    pub partition: Partition,
    pub m: u32,
    #[serde(with = "crate::rational::json")]
    pub evolved: Rational,
    #[serde(with = "crate::rational::json")]
    pub bruteforce: Rational,
}

impl ClassicalRow {
    pub fn agrees(&self) -> bool {
        self.evolved == self.bruteforce
    }
}

/// Evolve `Φ` from its `m = 0` slice and compare every coefficient with
/// brute force, for all partitions of `1..=d_max` and `0..=m_max` points.
pub fn cut_and_join_check(d_max: u32, m_max: u32) -> Result<Vec<ClassicalRow>> {
    if d_max == 0 {
        return Ok(Vec::new());
    }
    let op = cut_and_join_operator(d_max);
    let bounds = SeriesBounds {
        m: 0,
        acute: 0,
        grave: 0,
        k: d_max,
    };
    let mut slice = TruncatedSeries::new(bounds);
    for d in 1..=d_max {
        for a in Partition::all(d) {
            let v = classical_bruteforce(&a, 0)?;
            slice.set(0, 0, 0, a, v)?;
        }
    }
    let mut rows = Vec::new();
    for m in 0..=m_max {
        for d in 1..=d_max {
            for a in Partition::all(d) {
                rows.push(ClassicalRow {
                    evolved: slice.get(0, 0, 0, &a),
                    bruteforce: classical_bruteforce(&a, m)?,
                    partition: a,
                    m,
                });
            }
        }
        slice = apply(&op, &slice)?;
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(classical_bruteforce(&p(&[1, 1]), 0).unwrap(), frac(1, 2));
        assert_eq!(classical_bruteforce(&p(&[2]), 1).unwrap(), frac(1, 2));
        assert_eq!(classical_bruteforce(&p(&[3]), 2).unwrap(), int(1));
        assert_eq!(classical_bruteforce(&p(&[1]), 0).unwrap(), int(1));
        assert_eq!(classical_bruteforce(&p(&[1]), 3).unwrap(), int(0));
        assert!(matches!(classical_bruteforce(&p(&[3, 3]), 1), Err(Error::Usage(_))));
        assert!(matches!(classical_bruteforce(&p(&[]), 1), Err(Error::Usage(_))));
    }

    #[test]
    fn parity_vanishing() {
        for d in 1..=4 {
            for a in Partition::all(d) {
                for m in 0..=4 {
                    let parity = (d - a.parts().len() as u32 + m) % 2;
                    if parity == 1 {
                        assert!(classical_bruteforce(&a, m).unwrap().is_zero(), "{a} {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn partitions_of_four() {
        let all: Vec<String> = Partition::all(4).iter().map(ToString::to_string).collect();
        assert_eq!(all, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!("(2,1,1)".parse::<Partition>().unwrap(), p(&[1, 2, 1]));
    }

    #[test]
    fn operator_preserves_weight() {
        for (a, b) in cut_and_join_operator(6).terms().keys() {
            assert_eq!(a.size(), b.size());
        }
    }

    #[test]
    fn evolution_small() {
        let rows = cut_and_join_check(3, 3).unwrap();
        assert!(rows.iter().all(ClassicalRow::agrees));
        assert!(cut_and_join_check(0, 3).unwrap().is_empty());
    }
}
