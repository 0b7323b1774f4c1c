//! Dense matrices over `GF(q)`.
//!
//! Text format: `q=<q>:<row>/<row>/...`. For `q ≤ 16` each row is a string
//! of one hex digit per entry; for larger fields the entries of a row are
//! hex numbers separated by commas. Entries are field element indices.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rand::Rng;

use super::poly::{self, Poly};
use super::{Elem, Embedding, Field};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::hash::Hash for FqMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.rows.hash(state);
        self.data.hash(state);
    }
}

impl FqMatrix {
    pub fn new(field: Arc<Field>, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(&x) = data.iter().find(|&&x| x >= field.q()) {
            return Err(Error::invalid(format!("entry {x} outside GF({})", field.q())));
        }
        Ok(FqMatrix { field, rows, cols, data })
    }

    pub fn from_rows(field: Arc<Field>, rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        FqMatrix::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> Self {
        FqMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Arc<Field>, d: usize) -> Self {
        FqMatrix::scalar(field, d, 1)
    }

    pub fn scalar(field: Arc<Field>, d: usize, c: Elem) -> Self {
        let mut m = FqMatrix::zeros(field, d, d);
        for i in 0..d {
            m.set(i, i, c);
        }
        m
    }

    /// Companion matrix of a monic polynomial of degree at least 1.
    pub fn companion(field: Arc<Field>, f: &Poly) -> Self {
        let d = f.degree();
        assert!(d >= 1 && f.lead() == 1, "companion matrix needs a monic nonconstant polynomial");
        let mut m = FqMatrix::zeros(field.clone(), d, d);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for i in 0..d {
            m.set(i, d - 1, field.neg(f.coeff(i)));
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: Arc<Field>, rows: usize, cols: usize, rng: &mut R) -> Self {
        let q = field.q();
        let data = (0..rows * cols).map(|_| rng.random_range(0..q)).collect();
        FqMatrix { field, rows, cols, data }
    }

    /// A uniformly random invertible matrix, by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(field: Arc<Field>, d: usize, rng: &mut R) -> Self {
        loop {
            let m = FqMatrix::random(field.clone(), d, d, rng);
            if m.rank() == d {
                return m;
            }
        }
    }

    /// Block-diagonal matrix.
    pub fn block_diag(field: Arc<Field>, blocks: &[FqMatrix]) -> Self {
        let d: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = FqMatrix::zeros(field, d, d);
        let mut off = 0;
        for b in blocks {
            assert!(b.is_square(), "block_diag needs square blocks");
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.rows;
        }
        m
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        assert!(self.is_square(), "dimension of a non-square matrix");
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let f = &self.field;
        let mut out = FqMatrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = f.add(*d, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// `g v` for a column vector `v`.
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &FqMatrix) -> FqMatrix {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &FqMatrix) -> FqMatrix {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &FqMatrix, op: impl Fn(&Field, Elem, Elem) -> Elem) -> FqMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "matrix shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(&self.field, a, b)).collect();
        FqMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Elem) -> FqMatrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        FqMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut out = FqMatrix::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// `self − c·1`.
    pub fn minus_scalar(&self, c: Elem) -> FqMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, self.field.sub(m.get(i, i), c));
        }
        m
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let x = self.get(r, j);
                self.set(r, j, f.mul(x, inv));
            }
            for i in 0..self.rows {
                let factor = self.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let x = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : self v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// One solution of `self x = b`, if any.
    pub fn solve(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = FqMatrix::zeros(self.field.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn det(&self) -> Elem {
        let d = self.dim();
        let f = self.field.clone();
        let mut m = self.clone();
        let mut det = 1;
        for c in 0..d {
            let Some(p) = (c..d).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(det);
            }
            let pv = m.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for i in c + 1..d {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..d {
                    let x = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, x);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<FqMatrix> {
        let d = self.dim();
        let mut aug = FqMatrix::zeros(self.field.clone(), d, 2 * d);
        for i in 0..d {
            for j in 0..d {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, d + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < d || pivots[d - 1] != d - 1 {
            return None;
        }
        let data = (0..d).flat_map(|i| aug.row(i)[d..].to_vec()).collect();
        Some(FqMatrix { field: self.field.clone(), rows: d, cols: d, data })
    }

    pub fn pow(&self, mut k: u64) -> FqMatrix {
        let mut result = FqMatrix::identity(self.field.clone(), self.dim());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        result
    }

    /// Monic characteristic polynomial `det(x·1 − self)`, by reduction to
    /// upper Hessenberg form.
    pub fn char_poly(&self) -> Poly {
        let n = self.dim();
        let f = self.field.clone();
        let mut h = self.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| h.get(i, c) != 0) else {
                continue;
            };
            if p != c + 1 {
                h.swap_rows(p, c + 1);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + c + 1);
                }
            }
            let inv = f.inv(h.get(c + 1, c));
            for i in c + 2..n {
                let factor = f.mul(h.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let x = f.sub(h.get(i, j), f.mul(factor, h.get(c + 1, j)));
                    h.set(i, j, x);
                }
                for r in 0..n {
                    let x = f.add(h.get(r, c + 1), f.mul(factor, h.get(r, i)));
                    h.set(r, c + 1, x);
                }
            }
        }
        // p_m = (x − h_mm) p_{m−1} − Σ_{i<m} h_{m−i,m} (∏ subdiagonal) p_{m−i−1}, 1-based
        let hh = |i: usize, j: usize| h.get(i - 1, j - 1);
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for m in 1..=n {
            let mut pm = poly::mul(&f, &Poly::linear(&f, hh(m, m)), &ps[m - 1]);
            let mut t = 1;
            for i in 1..m {
                t = f.mul(t, hh(m - i + 1, m - i));
                if t == 0 {
                    break;
                }
                let c = f.mul(hh(m - i, m), t);
                pm = poly::sub(&f, &pm, &poly::scale(&f, &ps[m - i - 1], c));
            }
            ps.push(pm);
        }
        ps.pop().expect("nonempty")
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> FqMatrix {
        let d = self.dim();
        let mut acc = FqMatrix::zeros(self.field.clone(), d, d);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..d {
                let x = self.field.add(acc.get(i, i), c);
                acc.set(i, i, x);
            }
        }
        acc
    }

    /// `dim ker(self − λ·1)` over the matrix's own field.
    pub fn eig_dim(&self, lambda: Elem) -> usize {
        self.minus_scalar(lambda).nullity()
    }

    /// The same matrix viewed over a larger field.
    pub fn embed(&self, emb: &Embedding) -> Result<FqMatrix> {
        if *emb.small != *self.field {
            return Err(Error::invalid("embedding source differs from the matrix field"));
        }
        let data = self.data.iter().map(|&x| emb.apply(x)).collect();
        Ok(FqMatrix { field: emb.large.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// For each irreducible factor `f` of the characteristic polynomial,
    /// `(f, multiplicity in charpoly, geometric multiplicity of each root)`.
    pub fn eigen_structure(&self, factors: &FactorCache) -> Result<Vec<(Poly, u32, usize)>> {
        let cp = self.char_poly();
        let fac = factors.factor(&self.field, &cp);
        fac.iter()
            .map(|(g, m)| {
                let k = g.degree();
                let kd = self.eval_poly(g).nullity();
                if kd % k != 0 {
                    return Err(Error::check(format!(
                        "kernel dimension {kd} of an irreducible factor of degree {k} is not a multiple of {k}"
                    )));
                }
                Ok((g.clone(), *m, kd / k))
            })
            .collect()
    }

    /// `supp(g) = d − max` geometric multiplicity of an eigenvalue over the
    /// algebraic closure.
    pub fn support_with(&self, factors: &FactorCache) -> Result<usize> {
        let d = self.dim();
        let best = self.eigen_structure(factors)?.iter().map(|e| e.2).max().unwrap_or(0);
        Ok(d - best)
    }

    pub fn support(&self) -> Result<usize> {
        self.support_with(&FactorCache::new(0))
    }

    /// Sorted `(root degree, geometric multiplicity)` pairs over all
    /// eigenvalue orbits; invariant under conjugation and inversion.
    pub fn multiplicity_profile(&self, factors: &FactorCache) -> Result<Vec<(usize, usize)>> {
        let mut v: Vec<(usize, usize)> =
            self.eigen_structure(factors)?.into_iter().map(|(g, _, m)| (g.degree(), m)).collect();
        v.sort();
        Ok(v)
    }

    fn hex_entry_width(&self) -> Option<usize> {
        (self.field.q() <= 16).then_some(1)
    }
}

/// Memoized factorizations of characteristic polynomials.
pub struct FactorCache {
    seed: u64,
    map: Mutex<HashMap<(u32, Poly), Arc<Vec<(Poly, u32)>>>>,
}

impl FactorCache {
    pub fn new(seed: u64) -> Self {
        FactorCache { seed, map: Mutex::new(HashMap::new()) }
    }

    pub fn factor(&self, field: &Field, f: &Poly) -> Arc<Vec<(Poly, u32)>> {
        let key = (field.q(), f.clone());
        if let Some(v) = self.map.lock().expect("factor cache poisoned").get(&key) {
            return v.clone();
        }
        let v = Arc::new(poly::factor(field, f, self.seed));
        self.map.lock().expect("factor cache poisoned").insert(key, v.clone());
        v
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("factor cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}:", self.field.q())?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "/")?;
            }
            let row = self.row(i);
            if self.hex_entry_width().is_some() {
                for x in row {
                    write!(f, "{x:x}")?;
                }
            } else {
                let parts: Vec<String> = row.iter().map(|x| format!("{x:x}")).collect();
                write!(f, "{}", parts.join(","))?;
            }
        }
        Ok(())
    }
}

impl FromStr for FqMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::invalid(format!("matrix literal {s:?}: {msg}"));
        let rest = s.trim().strip_prefix("q=").ok_or_else(|| bad("missing q= prefix"))?;
        let (q, body) = rest.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let q: u32 = q.parse().map_err(|_| bad("bad field order"))?;
        let field = Field::gf(q)?;
        let parse_hex = |t: &str| u32::from_str_radix(t, 16).map_err(|_| bad("bad hex entry"));
        let rows: Vec<Vec<Elem>> = body
            .split('/')
            .map(|r| {
                if q <= 16 {
                    r.chars()
                        .map(|c| c.to_digit(16).ok_or_else(|| bad("bad hex digit")))
                        .collect::<Result<Vec<_>>>()
                } else {
                    r.split(',').map(|t| parse_hex(t.trim())).collect()
                }
            })
            .collect::<Result<_>>()?;
        FqMatrix::from_rows(field, &rows)
    }
}

impl serde::Serialize for FqMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for FqMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u32) -> Arc<Field> {
        Field::gf(q).unwrap()
    }

    /// `det(xI − g)` by cofactor expansion over polynomial entries.
    fn cofactor_char_poly(g: &FqMatrix) -> Poly {
        let f = g.field().clone();
        let n = g.dim();
        let entries: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = f.neg(g.get(i, j));
                        if i == j {
                            Poly::new(vec![c, 1])
                        } else {
                            Poly::new(vec![c])
                        }
                    })
                    .collect()
            })
            .collect();
        fn det(f: &Field, m: &[Vec<Poly>]) -> Poly {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            let mut acc = Poly::zero();
            for j in 0..m.len() {
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = poly::mul(f, &m[0][j], &det(f, &minor));
                acc = if j % 2 == 0 { poly::add(f, &acc, &term) } else { poly::sub(f, &acc, &term) };
            }
            acc
        }
        det(&f, &entries)
    }

    #[test]
    fn char_poly_examples() {
        let f3 = gf(3);
        let id = FqMatrix::identity(f3.clone(), 4);
        let xm1 = Poly::linear(&f3, 1);
        assert_eq!(id.char_poly(), poly::expand(&f3, &[(xm1, 4)]));
        let p = Poly::new(vec![2, 0, 1, 1, 1]);
        assert_eq!(FqMatrix::companion(f3.clone(), &p).char_poly(), p);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = FqMatrix::random(f3.clone(), 4, 4, &mut rng);
            assert_eq!(g.char_poly(), cofactor_char_poly(&g));
        }
    }

    #[test]
    fn transvection_eigenspace() {
        let f2 = gf(2);
        let mut t = FqMatrix::identity(f2.clone(), 6);
        t.set(0, 3, 1);
        assert_eq!(t.rank(), 6);
        assert_eq!(t.minus_scalar(1).rank(), 1);
        assert_eq!(t.eig_dim(1), 5);
        assert_eq!(t.support().unwrap(), 1);
        assert_eq!(FqMatrix::identity(f2.clone(), 6).support().unwrap(), 0);
        assert_eq!(FqMatrix::identity(f2, 6).eig_dim(1), 6);
    }

    #[test]
    fn irreducible_char_poly_has_no_rational_eigenvalue() {
        let f2 = gf(2);
        let g = FqMatrix::companion(f2.clone(), &Poly::new(vec![1, 1, 1]));
        assert_eq!(g.eig_dim(0) + g.eig_dim(1), 0);
        assert_eq!(g.support().unwrap(), 1);
        // over F_4 both roots are visible, each with a 1-dimensional eigenspace
        let emb = Embedding::new(f2, gf(4)).unwrap();
        let g4 = g.embed(&emb).unwrap();
        let dims: Vec<usize> = (0..4).map(|x| g4.eig_dim(x)).collect();
        assert_eq!(dims, vec![0, 0, 1, 1]);
    }

    #[test]
    fn hex_round_trip() {
        let m: FqMatrix = "q=16:0f1/a23/000".parse().unwrap();
        assert_eq!(m.get(0, 1), 15);
        assert_eq!(m.to_string(), "q=16:0f1/a23/000");
        let big: FqMatrix = "q=25:18,0,3/1,1,1/0,0,2".parse().unwrap();
        assert_eq!(big.get(0, 0), 24);
        assert_eq!(big.to_string(), "q=25:18,0,3/1,1,1/0,0,2");
        assert!("q=4:04/11".parse::<FqMatrix>().is_err());
        assert!("q=6:1".parse::<FqMatrix>().is_err());
        assert!("q=4:01/1".parse::<FqMatrix>().is_err());
    }

    #[test]
    fn inverse_and_det() {
        let f5 = gf(5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = FqMatrix::random_invertible(f5.clone(), 5, &mut rng);
            let gi = g.inverse().unwrap();
            assert!(g.mul(&gi).is_identity());
            assert_eq!(f5.mul(g.det(), gi.det()), 1);
            let cp = g.char_poly();
            // constant term of det(x − g) is (−1)^d det g
            assert_eq!(cp.coeff(0), f5.neg(g.det()));
            assert!(g.eval_poly(&cp).data().iter().all(|&x| x == 0));
        }
        let singular = FqMatrix::from_rows(f5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(singular.inverse().is_none());
        assert_eq!(singular.det(), 0);
        assert_eq!(singular.kernel().len(), 1);
    }

    proptest! {
        #[test]
        fn support_is_conjugation_and_inverse_invariant(q in prop::sample::select(vec![2u32, 3, 4, 5, 9]), d in 1usize..7, seed in 0u64..10_000) {
            let f = gf(q);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cache = FactorCache::new(seed);
            // repeated blocks give nontrivial multiplicities
            let b = FqMatrix::random_invertible(f.clone(), d.div_ceil(2), &mut rng);
            let g0 = FqMatrix::block_diag(f.clone(), &[b.clone(), b]);
            let h = FqMatrix::random_invertible(f.clone(), g0.dim(), &mut rng);
            let g = h.mul(&g0).mul(&h.inverse().unwrap());
            let prof = g0.multiplicity_profile(&cache).unwrap();
            prop_assert_eq!(g.multiplicity_profile(&cache).unwrap(), prof.clone());
            prop_assert_eq!(g.inverse().unwrap().multiplicity_profile(&cache).unwrap(), prof);
            prop_assert_eq!(g.support_with(&cache).unwrap(), g0.support_with(&cache).unwrap());
            let c = f.primitive();
            prop_assert_eq!(g.scale(c).support_with(&cache).unwrap(), g.support_with(&cache).unwrap());
        }

        #[test]
        fn kernel_vectors_are_annihilated(q in prop::sample::select(vec![2u32, 7, 8]), r in 1usize..6, c in 1usize..6, seed in 0u64..1000) {
            let f = gf(q);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = FqMatrix::random(f, r, c, &mut rng);
            let ker = m.kernel();
            prop_assert_eq!(ker.len() + m.rank(), c);
            for v in ker {
                prop_assert!(m.apply(&v).iter().all(|&x| x == 0));
            }
        }
    }
}
