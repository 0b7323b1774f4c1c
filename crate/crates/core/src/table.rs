//! A group-agnostic compiled form of an exact character table, used for
//! fast inner products and tensor decompositions.
//!
//! Every value is stored as `(X + Y√D) / S` with integers `X`, `Y`, a
//! per-class square-free radicand `D` and a table-wide scale `S`. Sums run
//! in checked `i128` and fall back to `BigInt` on overflow, so results are
//! exact either way.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A set of irreducible-character indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharSupport {
    words: Vec<u64>,
    len: usize,
}

impl CharSupport {
    pub fn empty(len: usize) -> Self {
        CharSupport { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut s = CharSupport::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut s = CharSupport::empty(len);
        s.insert(i);
        s
    }

    /// Number of characters in the ambient table.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &CharSupport) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn is_subset(&self, other: &CharSupport) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.contains(i))
    }
}

impl fmt::Debug for CharSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for CharSupport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Integer-scaled character table ready for exact inner products.
#[derive(Clone, Debug)]
pub struct CompiledTable {
    pub group: String,
    pub labels: Vec<String>,
    pub order: BigUint,
    scale: i128,
    class_sizes: Vec<i128>,
    radicands: Vec<i64>,
    x: Vec<Vec<i128>>,
    y: Vec<Vec<i128>>,
    degrees: Vec<BigUint>,
    trivial: usize,
    dual: Vec<usize>,
}

/// Number-like accumulator: checked `i128` or unbounded `BigInt`.
trait Acc: Clone + PartialEq {
    fn lift(v: i128) -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Acc for i128 {
    fn lift(v: i128) -> Self {
        v
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Acc for BigInt {
    fn lift(v: i128) -> Self {
        BigInt::from(v)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Per-class values of a product character, multiplied by class size.
struct ClassProduct<T> {
    re: Vec<T>,
    im: Vec<T>,
}

impl CompiledTable {
    /// Assembles a table from scaled values. `x[i][c]`, `y[i][c]` are
    /// `S·a`, `S·b` for the value `a + b√D_c` of character `i` on class `c`.
    /// Class 0 must be the identity.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        group: String,
        labels: Vec<String>,
        order: BigUint,
        scale: i128,
        class_sizes: Vec<BigUint>,
        radicands: Vec<i64>,
        x: Vec<Vec<i128>>,
        y: Vec<Vec<i128>>,
    ) -> Result<Self> {
        let k = class_sizes.len();
        if labels.len() != k || x.len() != k || y.len() != k || radicands.len() != k {
            return Err(Error::check("character table is not square"));
        }
        let class_sizes: Vec<i128> = class_sizes
            .iter()
            .map(|s| s.to_i128().ok_or_else(|| Error::Arithmetic("class size exceeds i128".into())))
            .collect::<Result<_>>()?;
        if class_sizes.first() != Some(&1) {
            return Err(Error::check("class 0 is not the identity"));
        }
        let mut degrees = Vec::with_capacity(k);
        for i in 0..k {
            if y[i][0] != 0 || x[i][0] <= 0 || x[i][0] % scale != 0 {
                return Err(Error::check(format!("bad degree for character {}", labels[i])));
            }
            degrees.push(BigUint::from((x[i][0] / scale) as u128));
        }
        let trivial = (0..k)
            .find(|&i| x[i].iter().all(|&v| v == scale) && y[i].iter().all(|&v| v == 0))
            .ok_or_else(|| Error::check("no trivial character"))?;
        let mut dual = Vec::with_capacity(k);
        for i in 0..k {
            let j = (0..k)
                .find(|&j| {
                    (0..k).all(|c| {
                        let s = if radicands[c] < 0 { -1 } else { 1 };
                        x[j][c] == x[i][c] && y[j][c] == s * y[i][c]
                    })
                })
                .ok_or_else(|| Error::check(format!("no complex conjugate of {}", labels[i])))?;
            dual.push(j);
        }
        Ok(CompiledTable { group, labels, order, scale, class_sizes, radicands, x, y, degrees, trivial, dual })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn degree(&self, i: usize) -> &BigUint {
        &self.degrees[i]
    }

    pub fn degrees(&self) -> &[BigUint] {
        &self.degrees
    }

    pub fn trivial(&self) -> usize {
        self.trivial
    }

    /// Index of the complex-conjugate character.
    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.dual[i] == i
    }

    /// True when only the identity class takes the value `χ(1)`.
    pub fn is_faithful(&self, i: usize) -> bool {
        (1..self.len()).all(|c| self.x[i][c] != self.x[i][0] || self.y[i][c] != 0)
    }

    fn class_product<T: Acc>(&self, i: usize, j: usize) -> Option<ClassProduct<T>> {
        let k = self.len();
        let mut re = Vec::with_capacity(k);
        let mut im = Vec::with_capacity(k);
        for c in 0..k {
            let size = T::lift(self.class_sizes[c]);
            let (xi, yi) = (T::lift(self.x[i][c]), T::lift(self.y[i][c]));
            let (xj, yj) = (T::lift(self.x[j][c]), T::lift(self.y[j][c]));
            let d = T::lift(self.radicands[c] as i128);
            let r = xi.mul(&xj)?.add(&yi.mul(&yj)?.mul(&d)?)?;
            let m = xi.mul(&yj)?.add(&yi.mul(&xj)?)?;
            re.push(size.mul(&r)?);
            im.push(size.mul(&m)?);
        }
        Some(ClassProduct { re, im })
    }

    /// `Σ_c P_c · conj(χ_k(c))` split into its rational part and the
    /// irrational parts grouped by radicand.
    fn pair<T: Acc>(&self, p: &ClassProduct<T>, k: usize) -> Option<(T, Vec<(i64, T)>)> {
        let mut rational = T::lift(0);
        let mut irrational: Vec<(i64, T)> = Vec::new();
        for c in 0..self.len() {
            let (xk, yk) = (T::lift(self.x[k][c]), T::lift(self.y[k][c]));
            if self.y[k][c] == 0 && p.im[c] == T::lift(0) {
                rational = rational.add(&p.re[c].mul(&xk)?)?;
                continue;
            }
            let d = self.radicands[c];
            let s = T::lift(if d < 0 { -1 } else { 1 });
            let term = p.re[c].mul(&xk)?.add(&s.mul(&p.im[c])?.mul(&yk)?.mul(&T::lift(d as i128))?)?;
            rational = rational.add(&term)?;
            let irr = p.re[c].mul(&s)?.mul(&yk)?.add(&p.im[c].mul(&xk)?)?;
            match irrational.iter_mut().find(|(r, _)| *r == d) {
                Some((_, acc)) => *acc = acc.add(&irr)?,
                None => irrational.push((d, irr)),
            }
        }
        Some((rational, irrational))
    }

    fn finish(&self, rational: BigInt, irrational: &[(i64, BigInt)], divisor: &BigInt, what: &str) -> Result<BigInt> {
        if let Some((d, v)) = irrational.iter().find(|(_, v)| !v.is_zero()) {
            return Err(Error::Arithmetic(format!("{what}: surviving √{d} part {v} in {}", self.group)));
        }
        let (q, r) = rational.div_rem(divisor);
        if !r.is_zero() {
            return Err(Error::Arithmetic(format!("{what}: {rational}/{divisor} is not integral in {}", self.group)));
        }
        Ok(q)
    }

    fn triple_divisor(&self) -> BigInt {
        BigInt::from(self.order.clone()) * BigInt::from(self.scale).pow(3)
    }

    /// Multiplicity of every irreducible in `χ_i χ_j`.
    pub fn decompose(&self, i: usize, j: usize) -> Result<Vec<BigInt>> {
        let divisor = self.triple_divisor();
        let fast = self.class_product::<i128>(i, j).and_then(|p| {
            (0..self.len())
                .map(|k| self.pair(&p, k).map(|(r, im)| (r.to_big(), im.iter().map(|(d, v)| (*d, v.to_big())).collect::<Vec<_>>())))
                .collect::<Option<Vec<_>>>()
        });
        let sums = match fast {
            Some(s) => s,
            None => {
                let p = self.class_product::<BigInt>(i, j).expect("BigInt arithmetic cannot overflow");
                (0..self.len()).map(|k| self.pair(&p, k).expect("BigInt arithmetic cannot overflow")).collect()
            }
        };
        let mut out = Vec::with_capacity(self.len());
        for (k, (rational, irrational)) in sums.into_iter().enumerate() {
            let m = self.finish(rational, &irrational, &divisor, "tensor multiplicity")?;
            if m.is_negative() {
                return Err(Error::Arithmetic(format!(
                    "negative multiplicity {m} of {} in {}⊗{}",
                    self.labels[k], self.labels[i], self.labels[j]
                )));
            }
            out.push(m);
        }
        Ok(out)
    }

    /// Constituents of `χ_i χ_j`.
    pub fn product_support(&self, i: usize, j: usize) -> Result<CharSupport> {
        let mut s = CharSupport::empty(self.len());
        for (k, m) in self.decompose(i, j)?.iter().enumerate() {
            if !m.is_zero() {
                s.insert(k);
            }
        }
        Ok(s)
    }

    /// `[χ_i, χ_j]`.
    pub fn inner(&self, i: usize, j: usize) -> Result<BigInt> {
        // [χ_i, χ_j] = [χ_i · conj(χ_j), 1]
        let m = self.decompose(i, self.dual[j])?;
        Ok(m[self.trivial].clone())
    }

    /// Checks both orthogonality relations and that degrees square-sum to
    /// the group order.
    pub fn check_orthogonality(&self) -> Result<()> {
        let k = self.len();
        let sum_sq: BigUint = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.order {
            return Err(Error::check(format!("{}: Σ deg² = {sum_sq} ≠ {}", self.group, self.order)));
        }
        let s2 = BigInt::from(self.scale).pow(2);
        let order = BigInt::from(self.order.clone());
        for i in 0..k {
            for j in 0..k {
                let (rational, irrational) = self.row_pair(i, j);
                let v = self.finish(rational, &irrational, &(order.clone() * &s2), "row orthogonality")?;
                let want = if i == j { 1 } else { 0 };
                if v != BigInt::from(want) {
                    return Err(Error::check(format!(
                        "{}: [{}, {}] = {v}",
                        self.group, self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        for c in 0..k {
            for e in 0..k {
                let (rational, irrational) = self.column_pair(c, e);
                if let Some((d, v)) = irrational.iter().find(|(_, v)| !v.is_zero()) {
                    return Err(Error::check(format!("{}: column pair ({c},{e}) has √{d} part {v}", self.group)));
                }
                let want = if c == e {
                    order.clone() * &s2 / BigInt::from(self.class_sizes[c])
                } else {
                    BigInt::zero()
                };
                if rational != want {
                    return Err(Error::check(format!(
                        "{}: column orthogonality fails at ({c},{e}): {rational} vs {want}",
                        self.group
                    )));
                }
            }
        }
        Ok(())
    }

    /// `S² Σ_c |c| χ_i(c) conj(χ_j(c))`.
    fn row_pair(&self, i: usize, j: usize) -> (BigInt, Vec<(i64, BigInt)>) {
        let mut rational = BigInt::zero();
        let mut irrational: Vec<(i64, BigInt)> = Vec::new();
        for c in 0..self.len() {
            let (re, im) = self.value_times_conj(i, c, j, c);
            let size = BigInt::from(self.class_sizes[c]);
            rational += &size * re;
            if !im.is_zero() {
                push_irr(&mut irrational, self.radicands[c], size * im);
            }
        }
        (rational, irrational)
    }

    /// `S² Σ_i χ_i(c) conj(χ_i(e))`; only meaningful when both classes
    /// share a radicand or one of them is rational.
    fn column_pair(&self, c: usize, e: usize) -> (BigInt, Vec<(i64, BigInt)>) {
        let mut rational = BigInt::zero();
        let mut irrational: Vec<(i64, BigInt)> = Vec::new();
        for i in 0..self.len() {
            let (dc, de) = (self.radicands[c], self.radicands[e]);
            let (xc, yc) = (BigInt::from(self.x[i][c]), BigInt::from(self.y[i][c]));
            let (xe, ye) = (BigInt::from(self.x[i][e]), BigInt::from(self.y[i][e]));
            let ye = if de < 0 { -ye } else { ye };
            rational += &xc * &xe;
            if !yc.is_zero() && !ye.is_zero() {
                if dc == de {
                    rational += &yc * &ye * BigInt::from(dc);
                } else {
                    push_irr(&mut irrational, dc * de, yc.clone() * &ye);
                }
            }
            if !ye.is_zero() {
                push_irr(&mut irrational, de, &xc * &ye);
            }
            if !yc.is_zero() {
                push_irr(&mut irrational, dc, &yc * &xe);
            }
        }
        (rational, irrational)
    }

    /// `S² χ_i(c) conj(χ_j(e))` for classes sharing a radicand.
    fn value_times_conj(&self, i: usize, c: usize, j: usize, e: usize) -> (BigInt, BigInt) {
        let d = self.radicands[c];
        let (xi, yi) = (BigInt::from(self.x[i][c]), BigInt::from(self.y[i][c]));
        let (xj, yj) = (BigInt::from(self.x[j][e]), BigInt::from(self.y[j][e]));
        let yj = if d < 0 { -yj } else { yj };
        (&xi * &xj + &yi * &yj * BigInt::from(d), xi * yj + yi * xj)
    }
}

fn push_irr(acc: &mut Vec<(i64, BigInt)>, d: i64, v: BigInt) {
    match acc.iter_mut().find(|(r, _)| *r == d) {
        Some((_, a)) => *a += v,
        None => acc.push((d, v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The character table of the cyclic group of order 3.
    fn c3() -> CompiledTable {
        CompiledTable::new(
            "C3".into(),
            vec!["1".into(), "w".into(), "w2".into()],
            BigUint::from(3u32),
            2,
            vec![BigUint::from(1u32); 3],
            vec![1, -3, -3],
            vec![vec![2, 2, 2], vec![2, -1, -1], vec![2, -1, -1]],
            vec![vec![0, 0, 0], vec![0, 1, -1], vec![0, -1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn cyclic_group_of_order_three() {
        let t = c3();
        t.check_orthogonality().unwrap();
        assert_eq!(t.dual(1), 2);
        assert!(!t.is_real(1));
        assert!(t.is_faithful(1));
        assert!(!t.is_faithful(0));
        let m = t.decompose(1, 1).unwrap();
        assert_eq!(m, vec![0.into(), 0.into(), 1.into()]);
        assert_eq!(t.inner(1, 1).unwrap(), 1.into());
        assert_eq!(t.inner(1, 2).unwrap(), 0.into());
    }

    #[test]
    fn support_bitset() {
        let mut s = CharSupport::empty(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(129);
        assert_eq!(s.count(), 2);
        assert!(s.contains(129) && !s.contains(64));
        let f = CharSupport::full(130);
        assert!(f.is_full() && s.is_subset(&f) && !f.is_subset(&s));
        s.union_with(&f);
        assert_eq!(s, f);
        assert_eq!(CharSupport::singleton(3, 1).iter().collect::<Vec<_>>(), vec![1]);
    }
}
