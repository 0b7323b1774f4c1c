//! Character tables of symmetric groups by the Murnaghan–Nakayama rule.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions_uncapped, factorial, Partition};
use crate::table::CompiledTable;

/// Largest `n` built without an explicit override.
pub const SN_TABLE_CAP: u32 = 14;

/// A conjugacy class of `S_n`, labelled by cycle type.
pub type CycleType = Partition;

/// `∏ k^{m_k} m_k!` over part sizes `k` with multiplicity `m_k`.
pub fn centralizer_order(mu: &CycleType) -> BigUint {
    mu.multiplicities()
        .into_iter()
        .fold(BigUint::one(), |acc, (k, m)| acc * BigUint::from(k).pow(m) * factorial(m))
}

pub fn class_size(mu: &CycleType) -> BigUint {
    factorial(mu.n()) / centralizer_order(mu)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnClass {
    pub cycle_type: CycleType,
    #[serde(with = "crate::harness::decimal")]
    pub size: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnTable {
    pub n: u32,
    pub classes: Vec<SnClass>,
    pub chars: Vec<Partition>,
    /// `values[λ][μ] = χ^λ(μ)`, rows and columns in partition order.
    #[serde(with = "crate::harness::decimal::matrix")]
    pub values: Vec<Vec<BigInt>>,
}

/// Beta-set of a partition padded to `len` rows, largest first.
fn beta_set(shape: &[u32], len: usize) -> Vec<u32> {
    (0..len)
        .map(|i| shape.get(i).copied().unwrap_or(0) + (len - 1 - i) as u32)
        .collect()
}

fn from_beta(beta: &[u32]) -> Vec<u32> {
    let len = beta.len();
    beta.iter()
        .enumerate()
        .map(|(i, &b)| b - (len - 1 - i) as u32)
        .filter(|&p| p > 0)
        .collect()
}

/// Every way of removing a rim hook of size `k`, with the sign
/// `(-1)^{leg length}`.
fn rim_hooks(shape: &[u32], k: u32) -> Vec<(Vec<u32>, i8)> {
    let beta = beta_set(shape, shape.len());
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let between = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        out.push((from_beta(&next), if between % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// `χ^λ(μ)` by recursive border-strip removal.
pub fn mn_value(lambda: &Partition, mu: &CycleType) -> Result<BigInt> {
    if lambda.n() != mu.n() {
        return Err(Error::invalid(format!("{lambda} and {mu} partition different integers")));
    }
    Ok(BigInt::from(row_value(lambda.parts(), mu.parts(), &mut HashMap::new())))
}

/// One row of the table, sharing a memo across columns.
fn table_row(lambda: &Partition, classes: &[CycleType]) -> Vec<BigInt> {
    let mut memo: HashMap<(Vec<u32>, Vec<u32>), i128> = HashMap::new();
    classes
        .iter()
        .map(|mu| BigInt::from(row_value(lambda.parts(), mu.parts(), &mut memo)))
        .collect()
}

fn row_value(shape: &[u32], cycle: &[u32], memo: &mut HashMap<(Vec<u32>, Vec<u32>), i128>) -> i128 {
    let Some((&first, rest)) = cycle.split_first() else {
        return 1;
    };
    let key = (shape.to_vec(), cycle.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0i128;
    for (smaller, sign) in rim_hooks(shape, first) {
        total += sign as i128 * row_value(&smaller, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Builds and validates the character table of `S_n`, `1 <= n <= 14`.
pub fn build_sn_table(n: u32) -> Result<SnTable> {
    if n > SN_TABLE_CAP {
        return Err(Error::CapExceeded { what: "S_n table size", value: n as u64, cap: SN_TABLE_CAP as u64 });
    }
    build_sn_table_uncapped(n)
}

/// [`build_sn_table`] without the size cap.
pub fn build_sn_table_uncapped(n: u32) -> Result<SnTable> {
    if n == 0 {
        return Err(Error::invalid("S_n table needs n >= 1"));
    }
    let parts = enumerate_partitions_uncapped(n);
    let classes: Vec<SnClass> = parts
        .iter()
        .map(|mu| SnClass { cycle_type: mu.clone(), size: class_size(mu) })
        .collect();
    let values: Vec<Vec<BigInt>> = parts.par_iter().map(|lambda| table_row(lambda, &parts)).collect();
    let table = SnTable { n, classes, chars: parts, values };
    table.validate()?;
    Ok(table)
}

impl SnTable {
    pub fn order(&self) -> BigUint {
        factorial(self.n)
    }

    pub fn char_index(&self, lambda: &Partition) -> Option<usize> {
        self.chars.iter().position(|c| c == lambda)
    }

    pub fn class_index(&self, mu: &CycleType) -> Option<usize> {
        self.classes.iter().position(|c| &c.cycle_type == mu)
    }

    /// Checks shape, class sizes, degrees and both orthogonality relations.
    pub fn validate(&self) -> Result<()> {
        let parts = enumerate_partitions_uncapped(self.n);
        if self.chars != parts || self.classes.iter().map(|c| &c.cycle_type).ne(parts.iter()) {
            return Err(Error::check(format!("S_{} table labels are not the partitions of n", self.n)));
        }
        if self.values.len() != parts.len() || self.values.iter().any(|r| r.len() != parts.len()) {
            return Err(Error::check("S_n table is not square"));
        }
        for c in &self.classes {
            if c.size != class_size(&c.cycle_type) {
                return Err(Error::check(format!("wrong class size for {}", c.cycle_type)));
            }
        }
        for (lambda, row) in self.chars.iter().zip(&self.values) {
            if row[self.identity_class()] != BigInt::from(lambda.dimension()) {
                return Err(Error::check(format!("χ^{lambda}(1) is not the hook-length dimension")));
            }
        }
        let order = BigInt::from(self.order());
        let k = parts.len();
        for i in 0..k {
            for j in i..k {
                let s: BigInt = (0..k)
                    .map(|c| BigInt::from(self.classes[c].size.clone()) * &self.values[i][c] * &self.values[j][c])
                    .sum();
                let want = if i == j { order.clone() } else { BigInt::zero() };
                if s != want {
                    return Err(Error::check(format!(
                        "S_{}: row orthogonality fails for {} and {}",
                        self.n, self.chars[i], self.chars[j]
                    )));
                }
            }
        }
        for c in 0..k {
            for e in c..k {
                let s: BigInt = (0..k).map(|i| &self.values[i][c] * &self.values[i][e]).sum();
                let want = if c == e {
                    BigInt::from(centralizer_order(&self.classes[c].cycle_type))
                } else {
                    BigInt::zero()
                };
                if s != want {
                    return Err(Error::check(format!(
                        "S_{}: column orthogonality fails for {} and {}",
                        self.n, self.classes[c].cycle_type, self.classes[e].cycle_type
                    )));
                }
            }
        }
        Ok(())
    }

    /// The identity is the last cycle type, `(1^n)`.
    pub fn identity_class(&self) -> usize {
        self.classes.len() - 1
    }

    /// Compiles into the group-agnostic form; classes are reordered so the
    /// identity comes first.
    pub fn compile(&self) -> Result<CompiledTable> {
        let k = self.classes.len();
        let order: Vec<usize> = std::iter::once(k - 1).chain(0..k - 1).collect();
        let to_i128 = |v: &BigInt| v.to_i128().ok_or_else(|| Error::Arithmetic("character value exceeds i128".into()));
        let x = self
            .values
            .iter()
            .map(|row| order.iter().map(|&c| to_i128(&row[c])).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        CompiledTable::new(
            format!("S{}", self.n),
            self.chars.iter().map(|c| c.to_string()).collect(),
            self.order(),
            1,
            order.iter().map(|&c| self.classes[c].size.clone()).collect(),
            vec![1; k],
            x,
            vec![vec![0; k]; k],
        )
    }
}

/// A constituent with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constituent<L> {
    pub label: L,
    #[serde(with = "crate::harness::decimal")]
    pub multiplicity: BigInt,
}

/// Decomposition of the Kronecker product `χ^λ ⊗ χ^κ`.
pub fn kronecker_support(
    table: &SnTable,
    compiled: &CompiledTable,
    lambda: &Partition,
    kappa: &Partition,
) -> Result<Vec<Constituent<Partition>>> {
    let i = table.char_index(lambda).ok_or_else(|| Error::invalid(format!("{lambda} is not a label of S_{}", table.n)))?;
    let j = table.char_index(kappa).ok_or_else(|| Error::invalid(format!("{kappa} is not a label of S_{}", table.n)))?;
    Ok(compiled
        .decompose(i, j)?
        .into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(k, m)| Constituent { label: table.chars[k].clone(), multiplicity: m })
        .collect())
}

/// `χ^λ` restricted to `S_{n-1}`: one constituent per removable node.
pub fn restrict_to_sn_minus_1(lambda: &Partition) -> Result<Vec<Partition>> {
    if lambda.n() < 2 {
        return Err(Error::invalid("restriction needs n >= 2"));
    }
    lambda.removable_nodes().into_iter().map(|a| lambda.remove_node(a)).collect()
}

/// `χ^μ` induced to `S_{n+1}`: one constituent per addable node.
pub fn induce_from(mu: &Partition) -> Vec<Partition> {
    mu.addable_nodes()
        .into_iter()
        .map(|b| mu.add_node(b).expect("addable node"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn centralizers() {
        assert_eq!(centralizer_order(&p(&[1, 1, 1])), BigUint::from(6u32));
        assert_eq!(centralizer_order(&p(&[2, 2])), BigUint::from(8u32));
        assert_eq!(class_size(&p(&[3, 1])), BigUint::from(8u32));
        assert_eq!(class_size(&p(&[2, 2])), BigUint::from(3u32));
    }

    #[test]
    fn rim_hook_signs() {
        // (2,1) has a single 3-hook with leg length 1
        assert_eq!(rim_hooks(&[2, 1], 3), vec![(vec![], -1)]);
        assert_eq!(rim_hooks(&[3], 2), vec![(vec![1], 1)]);
        assert_eq!(rim_hooks(&[1, 1, 1], 2), vec![(vec![1], -1)]);
        let mut two_hooks = rim_hooks(&[2, 2], 2);
        two_hooks.sort();
        assert_eq!(two_hooks, vec![(vec![1, 1], -1), (vec![2], 1)]);
    }

    #[test]
    fn mn_examples() {
        assert_eq!(mn_value(&p(&[2, 1]), &p(&[3])).unwrap(), BigInt::from(-1));
        assert_eq!(mn_value(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), BigInt::from(2));
        for mu in enumerate_partitions(6).unwrap() {
            assert_eq!(mn_value(&p(&[6]), &mu).unwrap(), BigInt::one());
            let sign = if (6 - mu.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(mn_value(&p(&[1; 6]), &mu).unwrap(), BigInt::from(sign));
        }
        assert!(mn_value(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn small_tables() {
        let t = build_sn_table(3).unwrap();
        let degrees: Vec<_> = t.values.iter().map(|r| r[t.identity_class()].clone()).collect();
        assert_eq!(degrees, vec![1.into(), 2.into(), 1.into()]);
        let t = build_sn_table(5).unwrap();
        let degrees: Vec<_> = t.values.iter().map(|r| r[t.identity_class()].clone()).collect();
        let want: Vec<BigInt> = [1, 4, 5, 6, 5, 4, 1].iter().map(|&d| d.into()).collect();
        assert_eq!(degrees, want);
        assert_eq!(build_sn_table(1).unwrap().values, vec![vec![BigInt::one()]]);
        assert!(build_sn_table(15).is_err());
        assert!(build_sn_table(0).is_err());
    }

    #[test]
    fn validation_catches_corruption() {
        let mut t = build_sn_table(5).unwrap();
        t.values[2][3] += 1;
        assert!(t.validate().is_err());
    }

    #[test]
    fn standard_character_counts_fixed_points() {
        for n in 2..=9 {
            let t = build_sn_table(n).unwrap();
            let std = t.char_index(&p(&[n - 1, 1])).unwrap();
            for (c, class) in t.classes.iter().enumerate() {
                let fixed = class.cycle_type.parts().iter().filter(|&&x| x == 1).count() as i64;
                assert_eq!(t.values[std][c], BigInt::from(fixed - 1));
            }
        }
    }

    #[test]
    fn kronecker_examples() {
        let t = build_sn_table(5).unwrap();
        let c = t.compile().unwrap();
        let std = p(&[4, 1]);
        let got = kronecker_support(&t, &c, &std, &std).unwrap();
        let labels: Vec<_> = got.iter().map(|x| x.label.clone()).collect();
        assert_eq!(labels, vec![p(&[5]), p(&[4, 1]), p(&[3, 2]), p(&[3, 1, 1])]);
        assert!(got.iter().all(|x| x.multiplicity == BigInt::one()));
        for kappa in &t.chars {
            let triv = kronecker_support(&t, &c, &p(&[5]), kappa).unwrap();
            assert_eq!(triv, vec![Constituent { label: kappa.clone(), multiplicity: BigInt::one() }]);
            let sign = kronecker_support(&t, &c, &p(&[1; 5]), kappa).unwrap();
            assert_eq!(sign[0].label, kappa.conjugate());
            assert_eq!(sign.len(), 1);
        }
    }

    #[test]
    fn branching() {
        assert_eq!(restrict_to_sn_minus_1(&p(&[2, 1])).unwrap(), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(restrict_to_sn_minus_1(&p(&[4])).unwrap(), vec![p(&[3])]);
        for n in 1..=11 {
            for lambda in enumerate_partitions(n).unwrap() {
                let up: BigUint = induce_from(&lambda).iter().map(|x| x.dimension()).sum();
                assert_eq!(up, lambda.dimension() * (n + 1));
                if n >= 2 {
                    let down: BigUint = restrict_to_sn_minus_1(&lambda).unwrap().iter().map(|x| x.dimension()).sum();
                    assert_eq!(down, lambda.dimension());
                }
            }
        }
    }
}
