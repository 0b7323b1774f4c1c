//! Character tables of alternating groups, derived from `S_n`.
//!
//! Classes: an even cycle type with distinct odd parts splits into a
//! `Plus` and a `Minus` class; the `Plus` class is the one containing the
//! standard representative `(1 2 ... h_1)(h_1+1 ... h_1+h_2)...`.
//!
//! Characters: a pair `{λ, λ'}` with `λ ≠ λ'` restricts to one irreducible,
//! labelled by the lexicographically larger partition. A self-conjugate `λ`
//! with principal hooks `h_1 > ... > h_k` splits into `φ±`, where on the
//! classes of cycle type `(h_1, ..., h_k)`
//! `φ±(Plus) = (ε ± √(ε h_1⋯h_k))/2`, `φ±(Minus) = (ε ∓ √(ε h_1⋯h_k))/2`
//! with `ε = (-1)^{(n-k)/2}`, and `φ± = χ^λ/2` elsewhere.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{factorial, Partition};
use crate::quad::QuadValue;
use crate::sn::{build_sn_table_uncapped, Constituent, CycleType, SnTable};
use crate::table::CompiledTable;

pub const AN_TABLE_CAP: u32 = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitTag {
    Whole,
    Plus,
    Minus,
}

impl SplitTag {
    fn suffix(self) -> &'static str {
        match self {
            SplitTag::Whole => "",
            SplitTag::Plus => "+",
            SplitTag::Minus => "-",
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            SplitTag::Whole => SplitTag::Whole,
            SplitTag::Plus => SplitTag::Minus,
            SplitTag::Minus => SplitTag::Plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnClass {
    pub cycle_type: CycleType,
    pub tag: SplitTag,
    #[serde(with = "crate::harness::decimal")]
    pub size: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AnChar {
    pub partition: Partition,
    pub tag: SplitTag,
}

impl fmt::Display for AnChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.partition, self.tag.suffix())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnTable {
    pub n: u32,
    pub classes: Vec<AnClass>,
    pub chars: Vec<AnChar>,
    pub values: Vec<Vec<QuadValue>>,
}

/// True when the cycle type's class in `S_n` splits in `A_n`.
pub fn splits_in_an(mu: &CycleType) -> bool {
    let p = mu.parts();
    p.iter().all(|&x| x % 2 == 1) && p.windows(2).all(|w| w[0] > w[1])
}

pub fn is_even(mu: &CycleType) -> bool {
    (mu.n() as usize - mu.len()) % 2 == 0
}

pub fn build_an_table(n: u32) -> Result<AnTable> {
    if n > AN_TABLE_CAP {
        return Err(Error::CapExceeded { what: "A_n table size", value: n as u64, cap: AN_TABLE_CAP as u64 });
    }
    build_an_table_uncapped(n)
}

pub fn build_an_table_uncapped(n: u32) -> Result<AnTable> {
    if n < 3 {
        return Err(Error::invalid(format!("A_n table needs n >= 3, got {n}")));
    }
    let sn = build_sn_table_uncapped(n)?;
    an_from_sn(&sn)
}

/// Derives the `A_n` table from a validated `S_n` table.
pub fn an_from_sn(sn: &SnTable) -> Result<AnTable> {
    let n = sn.n;
    let mut classes = Vec::new();
    let mut class_src = Vec::new();
    for (c, class) in sn.classes.iter().enumerate() {
        if !is_even(&class.cycle_type) {
            continue;
        }
        if splits_in_an(&class.cycle_type) {
            for tag in [SplitTag::Plus, SplitTag::Minus] {
                let size = &class.size / 2u32;
                classes.push(AnClass { cycle_type: class.cycle_type.clone(), tag, size });
                class_src.push(c);
            }
        } else {
            classes.push(AnClass { cycle_type: class.cycle_type.clone(), tag: SplitTag::Whole, size: class.size.clone() });
            class_src.push(c);
        }
    }

    let half = BigRational::new(1.into(), 2.into());
    let mut chars = Vec::new();
    let mut values = Vec::new();
    for (i, lambda) in sn.chars.iter().enumerate() {
        let conj = lambda.conjugate();
        if conj == *lambda {
            let hooks = lambda.principal_hooks();
            let k = hooks.len() as u32;
            let eps: i64 = if ((n - k) / 2) % 2 == 0 { 1 } else { -1 };
            let h: i64 = hooks.iter().map(|&x| x as i64).product();
            let hook_type = Partition::new(hooks)?;
            for tag in [SplitTag::Plus, SplitTag::Minus] {
                let row = classes
                    .iter()
                    .zip(&class_src)
                    .map(|(class, &c)| {
                        let chi = &sn.values[i][c];
                        if class.cycle_type == hook_type {
                            if *chi != BigInt::from(eps) {
                                return Err(Error::check(format!("χ^{lambda} on its principal-hook class is {chi}, not {eps}")));
                            }
                            let sign = if tag == class.tag { 1 } else { -1 };
                            Ok(QuadValue::new(
                                BigRational::new(eps.into(), 2.into()),
                                BigRational::new(sign.into(), 2.into()),
                                eps * h,
                            ))
                        } else {
                            Ok(QuadValue::rational(BigRational::from_integer(chi.clone()) * &half))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                chars.push(AnChar { partition: lambda.clone(), tag });
                values.push(row);
            }
        } else if *lambda > conj {
            chars.push(AnChar { partition: lambda.clone(), tag: SplitTag::Whole });
            values.push(class_src.iter().map(|&c| QuadValue::from_int(sn.values[i][c].clone())).collect());
        }
    }
    let table = AnTable { n, classes, chars, values };
    table.validate()?;
    Ok(table)
}

impl AnTable {
    pub fn order(&self) -> BigUint {
        factorial(self.n) / 2u32
    }

    pub fn identity_class(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn degree(&self, i: usize) -> BigUint {
        self.values[i][self.identity_class()]
            .as_integer()
            .and_then(|d| d.to_biguint())
            .expect("degrees are positive integers")
    }

    pub fn char_index(&self, partition: &Partition, tag: SplitTag) -> Option<usize> {
        self.chars.iter().position(|c| &c.partition == partition && c.tag == tag)
    }

    /// Structural checks plus exact orthogonality through the compiled form.
    pub fn validate(&self) -> Result<()> {
        let k = self.classes.len();
        if self.chars.len() != k || self.values.len() != k || self.values.iter().any(|r| r.len() != k) {
            return Err(Error::check(format!("A_{} table is not square", self.n)));
        }
        let total: BigUint = self.classes.iter().map(|c| c.size.clone()).sum();
        if total != self.order() {
            return Err(Error::check(format!("A_{} class sizes do not sum to the order", self.n)));
        }
        self.compile()?.check_orthogonality()
    }

    /// Compiles with scale 2 and the identity class moved to the front.
    pub fn compile(&self) -> Result<CompiledTable> {
        let k = self.classes.len();
        let order: Vec<usize> = std::iter::once(k - 1).chain(0..k - 1).collect();
        let mut radicands = vec![1i64; k];
        for (slot, &c) in order.iter().enumerate() {
            for row in &self.values {
                let v = &row[c];
                if v.is_rational() {
                    continue;
                }
                if radicands[slot] != 1 && radicands[slot] != v.radicand() {
                    return Err(Error::check(format!("class {} mixes radicands", self.classes[c].cycle_type)));
                }
                radicands[slot] = v.radicand();
            }
        }
        let mut x = Vec::with_capacity(k);
        let mut y = Vec::with_capacity(k);
        for row in &self.values {
            let mut xr = Vec::with_capacity(k);
            let mut yr = Vec::with_capacity(k);
            for &c in &order {
                let (a, b) = row[c]
                    .doubled_parts()
                    .ok_or_else(|| Error::Arithmetic(format!("value {} is not in ½ℤ[√D]", row[c])))?;
                let cvt = |v: BigInt| v.to_i128().ok_or_else(|| Error::Arithmetic("value exceeds i128".into()));
                xr.push(cvt(a)?);
                yr.push(cvt(b)?);
            }
            x.push(xr);
            y.push(yr);
        }
        CompiledTable::new(
            format!("A{}", self.n),
            self.chars.iter().map(|c| c.to_string()).collect(),
            self.order(),
            2,
            order.iter().map(|&c| self.classes[c].size.clone()).collect(),
            radicands,
            x,
            y,
        )
    }

    /// Index permutation swapping every `φ+` with `φ-` (characters) or every
    /// split `Plus` class with its `Minus` partner (classes).
    pub fn swap_permutation(&self) -> (Vec<usize>, Vec<usize>) {
        let chars = self
            .chars
            .iter()
            .map(|c| self.char_index(&c.partition, c.tag.swapped()).expect("split partner"))
            .collect();
        let classes = self
            .classes
            .iter()
            .map(|c| {
                self.classes
                    .iter()
                    .position(|d| d.cycle_type == c.cycle_type && d.tag == c.tag.swapped())
                    .expect("split partner")
            })
            .collect();
        (chars, classes)
    }
}

/// Decomposition of `φ_i ⊗ φ_j` in `A_n`.
pub fn an_kronecker_support(
    table: &AnTable,
    compiled: &CompiledTable,
    i: usize,
    j: usize,
) -> Result<Vec<Constituent<AnChar>>> {
    if i >= table.chars.len() || j >= table.chars.len() {
        return Err(Error::invalid(format!("character index out of range for A_{}", table.n)));
    }
    Ok(compiled
        .decompose(i, j)?
        .into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(k, m)| Constituent { label: table.chars[k].clone(), multiplicity: m })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct KstRow {
    pub label: String,
    #[serde(with = "crate::harness::decimal")]
    pub degree: BigUint,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KstReport {
    pub n: u32,
    pub rows: Vec<KstRow>,
    pub pass: bool,
}

/// Every character under a self-conjugate partition has degree at least
/// `2^{(n-5)/4}`, checked as `deg^4 >= 2^{n-5}`.
pub fn check_kst_bound(table: &AnTable) -> Result<KstReport> {
    let n = table.n;
    if !(5..=AN_TABLE_CAP).contains(&n) {
        return Err(Error::invalid(format!("degree bound check needs 5 <= n <= {AN_TABLE_CAP}, got {n}")));
    }
    let bound = BigUint::from(1u32) << (n - 5);
    let rows: Vec<KstRow> = table
        .chars
        .iter()
        .enumerate()
        .filter(|(_, c)| c.tag != SplitTag::Whole)
        .map(|(i, c)| {
            let degree = table.degree(i);
            KstRow { label: c.to_string(), holds: degree.pow(4) >= bound, degree }
        })
        .collect();
    let pass = rows.iter().all(|r| r.holds);
    Ok(KstReport { n, rows, pass })
}
