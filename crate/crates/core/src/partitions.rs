//! Integer partitions and Young-diagram geometry.
//!
//! Partitions are stored as weakly decreasing vectors of positive parts.
//! Enumeration order is lexicographic descending, so `(n)` comes first and
//! `(1^n)` last; every table in the crate indexes characters in this order.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_partitions`] without an override.
pub const PARTITION_CAP: u32 = 40;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

/// A cell of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: u32,
    pub col: u32,
}

impl Node {
    pub fn new(row: u32, col: u32) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Node { row, col }
    }
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increasing sequences.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::invalid(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length, 1-based; zero past the last row.
    pub fn row(&self, i: u32) -> u32 {
        self.parts.get(i as usize - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Hook length at every node, indexed `[row-1][col-1]`.
    pub fn hook_lengths(&self) -> Vec<Vec<u32>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row_len)| {
                (0..row_len as usize)
                    .map(|j| row_len - j as u32 + conj.parts[j] - i as u32 - 1)
                    .collect()
            })
            .collect()
    }

    pub fn hook_product(&self) -> BigUint {
        self.hook_lengths()
            .iter()
            .flatten()
            .fold(BigUint::one(), |acc, &h| acc * h)
    }

    /// Degree of the irreducible character of `S_n` labelled by this
    /// partition, `n! / (product of hooks)`.
    pub fn dimension(&self) -> BigUint {
        let (quot, rem) = factorial(self.n()).div_rem(&self.hook_product());
        assert!(rem.is_zero(), "hook length division not exact for {self}");
        quot
    }

    /// Diagonal hook lengths `h_1 > h_2 > ... > h_k`.
    pub fn principal_hooks(&self) -> Vec<u32> {
        let hooks = self.hook_lengths();
        (0..self.parts.len())
            .take_while(|&i| self.parts[i] as usize > i)
            .map(|i| hooks[i][i])
            .collect()
    }

    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for i in 0..=self.parts.len() {
            let here = self.parts.get(i).copied().unwrap_or(0);
            let above = if i == 0 { u32::MAX } else { self.parts[i - 1] };
            if here < above {
                out.push(Node::new(i as u32 + 1, here + 1));
            }
        }
        out
    }

    pub fn removable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (i, &here) in self.parts.iter().enumerate() {
            let below = self.parts.get(i + 1).copied().unwrap_or(0);
            if here > below {
                out.push(Node::new(i as u32 + 1, here));
            }
        }
        out
    }

    /// `self ⊔ node`; fails if the node is not addable.
    pub fn add_node(&self, node: Node) -> Result<Partition> {
        if !self.addable_nodes().contains(&node) {
            return Err(Error::invalid(format!("{node:?} is not addable to {self}")));
        }
        let mut parts = self.parts.clone();
        let r = node.row as usize - 1;
        if r == parts.len() {
            parts.push(1);
        } else {
            parts[r] += 1;
        }
        Ok(Partition { parts })
    }

    /// `self ∖ node`; fails if the node is not removable.
    pub fn remove_node(&self, node: Node) -> Result<Partition> {
        if !self.removable_nodes().contains(&node) {
            return Err(Error::invalid(format!("{node:?} is not removable from {self}")));
        }
        let mut parts = self.parts.clone();
        let r = node.row as usize - 1;
        parts[r] -= 1;
        if parts[r] == 0 {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Multiplicity of each part size, as `(size, count)` in decreasing size.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((size, count)) if *size == p => *count += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in lexicographic descending order.
pub fn enumerate_partitions(n: u32) -> Result<Vec<Partition>> {
    if n > PARTITION_CAP {
        return Err(Error::CapExceeded {
            what: "partition size",
            value: n as u64,
            cap: PARTITION_CAP as u64,
        });
    }
    Ok(enumerate_partitions_uncapped(n))
}

/// Same as [`enumerate_partitions`] without the size cap.
pub fn enumerate_partitions_uncapped(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fill(n, n, &mut stack, &mut out);
    out
}

fn fill(rest: u32, max: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: stack.clone() });
        return;
    }
    for first in (1..=rest.min(max)).rev() {
        stack.push(first);
        fill(rest - first, first, stack, out);
        stack.pop();
    }
}

pub fn factorial(n: u32) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `k!! = k (k-2) (k-4) ...`, with `0!! = 1!! = 1`.
pub fn double_factorial(k: u32) -> BigUint {
    (1..=k).rev().step_by(2).fold(BigUint::one(), |acc, j| acc * j)
}

/// The staircase partition `(m, m-1, ..., 1)` of `m(m+1)/2`.
pub fn staircase(m: u32) -> Result<Partition> {
    if m == 0 {
        return Err(Error::invalid("staircase needs m >= 1"));
    }
    Ok(Partition { parts: (1..=m).rev().collect() })
}

/// The partition `μ = (n-1-m(m-1)/2, m-1, ..., 2, 1)` of `n-1`, where `m` is
/// the unique integer with `m(m+1)/2 <= n-3 < (m+1)(m+2)/2`.
///
/// Every addable extension of `μ` has at most `m+1` rows and at least `m+2`
/// columns, so none is self-conjugate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearStaircase {
    pub n: u32,
    pub m: u32,
    pub mu: Partition,
}

pub fn near_staircase(n: u32) -> Result<NearStaircase> {
    if n < 13 {
        return Err(Error::invalid(format!("near-staircase construction needs n >= 13, got {n}")));
    }
    let mut m = 0u32;
    while (m + 1) * (m + 2) / 2 <= n - 3 {
        m += 1;
    }
    let first = n - 1 - m * (m - 1) / 2;
    let mut parts = vec![first];
    parts.extend((1..m).rev());
    let mu = Partition::new(parts)?;
    if first < m + 2 {
        return Err(Error::check(format!("first row {first} of {mu} is shorter than m+2 = {}", m + 2)));
    }
    Ok(NearStaircase { n, m, mu })
}

/// One row of the staircase degree check `dim(χ_m)^11 >= (n!)^5`.
#[derive(Clone, Debug, Serialize)]
pub struct StaircaseRow {
    pub m: u32,
    pub n: u32,
    #[serde(with = "crate::harness::decimal")]
    pub dimension: BigUint,
    pub holds: bool,
    /// `log10(dim) / log10(n!)`, display only.
    pub exponent: f64,
}

pub fn staircase_degree_check(m: u32) -> Result<StaircaseRow> {
    let lambda = staircase(m)?;
    let n = lambda.n();
    let dim = lambda.dimension();
    let fact = factorial(n);
    let holds = dim.pow(11) >= fact.pow(5);
    Ok(StaircaseRow {
        m,
        n,
        exponent: log10_big(&dim) / log10_big(&fact),
        dimension: dim,
        holds,
    })
}

/// One row of the induction-step inequality
/// `prod_{i=1}^{2m+3} (m(m+1)/2 + i) > ((2m+3)!! (2m+1)!!)^{11/6}`,
/// compared as `lhs^6 > rhs^11`.
#[derive(Clone, Debug, Serialize)]
pub struct StaircaseStepRow {
    pub m: u32,
    pub holds: bool,
    /// `log(lhs) / log(double factorial product)`, display only; must exceed 11/6.
    pub exponent: f64,
}

pub fn staircase_step_check(m: u32) -> StaircaseStepRow {
    let base = m * (m + 1) / 2;
    let lhs = (1..=2 * m + 3).fold(BigUint::one(), |acc, i| acc * (base + i));
    let rhs = double_factorial(2 * m + 3) * double_factorial(2 * m + 1);
    let holds = lhs.pow(6) > rhs.pow(11);
    StaircaseStepRow {
        m,
        holds,
        exponent: log10_big(&lhs) / log10_big(&rhs),
    }
}

pub(crate) fn log10_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        let s = x.to_string();
        let lead: f64 = s[..s.len().min(17)].parse().unwrap_or(0.0);
        lead.log10() + (s.len().saturating_sub(17)) as f64
    } else {
        let shift = bits - 64;
        let top: BigUint = x >> shift;
        let top = top.to_u64_digits().first().copied().unwrap_or(0) as f64;
        top.log10() + shift as f64 * std::f64::consts::LOG10_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Partition counts by the pentagonal-free dynamic program.
    fn partition_count(n: usize) -> u64 {
        let mut ways = vec![0u64; n + 1];
        ways[0] = 1;
        for k in 1..=n {
            for t in k..=n {
                ways[t] += ways[t - k];
            }
        }
        ways[n]
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(5).unwrap().len(), 7);
        assert_eq!(enumerate_partitions(0).unwrap(), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(1).unwrap(), vec![p(&[1])]);
        for n in 0..=25 {
            let all = enumerate_partitions(n).unwrap();
            assert_eq!(all.len() as u64, partition_count(n as usize), "n = {n}");
            assert!(all.windows(2).all(|w| w[0].parts > w[1].parts));
            assert!(all.iter().all(|l| l.n() == n));
        }
        assert!(enumerate_partitions(41).is_err());
        assert_eq!(enumerate_partitions_uncapped(41).len() as u64, partition_count(41));
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 3, 2]).unwrap(), p(&[3, 2, 1]));
    }

    #[test]
    fn hooks() {
        assert_eq!(p(&[3, 2, 1]).hook_lengths(), vec![vec![5, 3, 1], vec![3, 1], vec![1]]);
        assert_eq!(p(&[3, 2, 1]).hook_product(), BigUint::from(45u32));
        assert_eq!(p(&[1]).hook_lengths(), vec![vec![1]]);
        assert_eq!(p(&[4]).hook_lengths(), vec![vec![4, 3, 2, 1]]);
    }

    /// Counts standard Young tableaux by peeling the largest entry.
    fn syt_count(lambda: &Partition) -> u64 {
        if lambda.n() <= 1 {
            return 1;
        }
        lambda
            .removable_nodes()
            .into_iter()
            .map(|node| syt_count(&lambda.remove_node(node).unwrap()))
            .sum()
    }

    #[test]
    fn dimensions_match_tableaux() {
        assert_eq!(p(&[2, 1]).dimension(), BigUint::from(2u32));
        assert_eq!(p(&[3, 2, 1]).dimension(), BigUint::from(16u32));
        assert_eq!(p(&[7]).dimension(), BigUint::one());
        for lambda in enumerate_partitions(9).unwrap() {
            assert_eq!(lambda.dimension(), BigUint::from(syt_count(&lambda)), "{lambda}");
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert!(p(&[2, 1]).is_self_conjugate());
        assert!(p(&[2, 2]).is_self_conjugate());
        assert!(!p(&[3, 1]).is_self_conjugate());
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn addable_and_removable_match_brute_force() {
        let lambda = p(&[2, 1]);
        assert_eq!(lambda.addable_nodes(), vec![Node::new(1, 3), Node::new(2, 2), Node::new(3, 1)]);
        assert_eq!(lambda.removable_nodes(), vec![Node::new(1, 2), Node::new(2, 1)]);
        assert_eq!(p(&[1]).removable_nodes(), vec![Node::new(1, 1)]);
        assert_eq!(p(&[5]).addable_nodes(), vec![Node::new(1, 6), Node::new(2, 1)]);

        for n in 0..=8 {
            for lambda in enumerate_partitions(n).unwrap() {
                let rows = lambda.len() as u32 + 1;
                let cols = lambda.row(1) + 1;
                let mut add = Vec::new();
                let mut rem = Vec::new();
                for r in 1..=rows {
                    for c in 1..=cols {
                        let mut parts = lambda.parts.clone();
                        parts.resize(rows as usize, 0);
                        if parts[r as usize - 1] == c - 1 {
                            parts[r as usize - 1] = c;
                            while parts.last() == Some(&0) {
                                parts.pop();
                            }
                            if Partition::new(parts).is_ok() {
                                add.push(Node::new(r, c));
                            }
                        } else if parts[r as usize - 1] == c {
                            parts[r as usize - 1] = c - 1;
                            while parts.last() == Some(&0) {
                                parts.pop();
                            }
                            if Partition::new(parts).is_ok() {
                                rem.push(Node::new(r, c));
                            }
                        }
                    }
                }
                assert_eq!(lambda.addable_nodes(), add, "{lambda}");
                assert_eq!(lambda.removable_nodes(), rem, "{lambda}");
            }
        }
    }

    #[test]
    fn staircases() {
        assert_eq!(staircase(3).unwrap(), p(&[3, 2, 1]));
        assert_eq!(staircase(1).unwrap(), p(&[1]));
        let s6 = staircase(6).unwrap();
        assert_eq!(s6, p(&[6, 5, 4, 3, 2, 1]));
        assert_eq!(s6.n(), 21);
        assert!(staircase(0).is_err());
    }

    #[test]
    fn near_staircase_examples() {
        let c = near_staircase(13).unwrap();
        assert_eq!((c.m, c.mu.clone()), (4, p(&[6, 3, 2, 1])));
        assert_eq!(c.mu.n(), 12);
        let c = near_staircase(24).unwrap();
        assert_eq!((c.m, c.mu.clone()), (6, p(&[8, 5, 4, 3, 2, 1])));
        assert!(near_staircase(12).is_err());
    }

    #[test]
    fn near_staircase_extensions_never_self_conjugate() {
        for n in 13..=200 {
            let c = near_staircase(n).unwrap();
            assert_eq!(c.mu.n(), n - 1);
            assert!(c.m * (c.m + 1) / 2 <= n - 3 && n - 3 < (c.m + 1) * (c.m + 2) / 2);
            for b in c.mu.addable_nodes() {
                let ext = c.mu.add_node(b).unwrap();
                assert!(ext.len() as u32 <= c.m + 1);
                assert!(ext.row(1) >= c.m + 2);
                assert!(!ext.is_self_conjugate(), "n = {n}, {ext}");
            }
        }
    }

    #[test]
    fn principal_hooks_of_small_shapes() {
        assert_eq!(p(&[2, 2]).principal_hooks(), vec![3, 1]);
        assert_eq!(p(&[3, 1, 1]).principal_hooks(), vec![5]);
        assert_eq!(p(&[3, 2, 1]).principal_hooks(), vec![5, 1]);
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(0), BigUint::one());
        assert_eq!(double_factorial(7), BigUint::from(105u32));
        assert_eq!(double_factorial(8), BigUint::from(384u32));
    }

    #[test]
    fn staircase_hook_ratio_is_double_factorials() {
        for m in 1..=12 {
            let h = staircase(m).unwrap().hook_product();
            let h2 = staircase(m + 2).unwrap().hook_product();
            assert_eq!(h2, h * double_factorial(2 * m + 3) * double_factorial(2 * m + 1));
        }
    }
}
