//! Symplectic and quadratic spaces over `GF(q)` in Witt bases.
//!
//! Basis order: `e_1..e_m, f_1..f_m` for the `m` hyperbolic pairs, then the
//! anisotropic part: the plane `x, y` with `Q(ax+by) = a² + ab + νb²` for
//! the minus type, or one vector `z` with `Q(z) = 1` in odd dimension.
//! `ν` is the least field element index for which `t² + t + ν` has no root.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field, FqMatrix};

/// Largest ambient dimension accepted by `make_space`.
pub const SPACE_DIM_CAP: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Symplectic,
    OrthogonalPlus,
    OrthogonalMinus,
    OrthogonalOdd,
}

impl Kind {
    pub fn is_orthogonal(self) -> bool {
        self != Kind::Symplectic
    }

    /// `+1` or `−1` for even-dimensional orthogonal kinds.
    pub fn epsilon(self) -> Option<i64> {
        match self {
            Kind::OrthogonalPlus => Some(1),
            Kind::OrthogonalMinus => Some(-1),
            _ => None,
        }
    }

    pub fn dimension(self, n: usize) -> usize {
        if self == Kind::OrthogonalOdd {
            2 * n + 1
        } else {
            2 * n
        }
    }

    /// Name of the group the verifiers act on.
    pub fn group_name(self, n: usize, q: u32) -> String {
        match self {
            Kind::Symplectic => format!("Sp_{}({q})", 2 * n),
            Kind::OrthogonalPlus => format!("Omega+_{}({q})", 2 * n),
            Kind::OrthogonalMinus => format!("Omega-_{}({q})", 2 * n),
            Kind::OrthogonalOdd => format!("Omega_{}({q})", 2 * n + 1),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Symplectic => "symplectic",
            Kind::OrthogonalPlus => "orthogonal-plus",
            Kind::OrthogonalMinus => "orthogonal-minus",
            Kind::OrthogonalOdd => "orthogonal-odd",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symplectic" | "sp" => Ok(Kind::Symplectic),
            "orthogonal-plus" | "plus" | "o+" | "+" => Ok(Kind::OrthogonalPlus),
            "orthogonal-minus" | "minus" | "o-" | "-" => Ok(Kind::OrthogonalMinus),
            "orthogonal-odd" | "odd" | "o" => Ok(Kind::OrthogonalOdd),
            _ => Err(Error::invalid(format!("unknown space kind {s:?}"))),
        }
    }
}

/// `Q(v) = Σ diag_i v_i² + Σ c v_i v_j` over the listed cross terms.
#[derive(Clone, Debug)]
struct QuadForm {
    diag: Vec<Elem>,
    cross: Vec<(usize, usize, Elem)>,
}

pub struct QuadraticSpace {
    field: Arc<Field>,
    kind: Kind,
    n: usize,
    gram: FqMatrix,
    quad: Option<QuadForm>,
    nu: Option<Elem>,
    pairs: Vec<(usize, usize)>,
    ext: OnceLock<Embedding>,
}

impl fmt::Debug for QuadraticSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.group_name(self.n, self.field.q()))
    }
}

/// Least `ν` with `t² + t + ν` irreducible over the field.
pub fn anisotropic_nu(f: &Field) -> Elem {
    (0..f.q())
        .find(|&nu| (0..f.q()).all(|t| f.add(f.add(f.mul(t, t), t), nu) != 0))
        .expect("every finite field has an irreducible quadratic t² + t + ν")
}

impl QuadraticSpace {
    /// Standard space of the given kind with `n` hyperbolic pairs, where the
    /// minus type counts the anisotropic plane as one of its `n` pairs.
    pub fn new(kind: Kind, n: usize, q: u32) -> Result<Self> {
        let field = Field::gf(q)?;
        let d = kind.dimension(n);
        if n == 0 || (kind == Kind::OrthogonalMinus && n < 1) {
            return Err(Error::invalid("space needs n ≥ 1"));
        }
        if d > SPACE_DIM_CAP {
            return Err(Error::CapExceeded { what: "space dimension", value: d as u64, cap: SPACE_DIM_CAP as u64 });
        }
        if kind == Kind::OrthogonalOdd && field.is_char2() {
            return Err(Error::invalid("odd-dimensional orthogonal spaces need odd q"));
        }
        let m = if kind == Kind::OrthogonalMinus { n - 1 } else { n };
        let f = &field;
        let mut gram = FqMatrix::zeros(field.clone(), d, d);
        let mut pairs: Vec<(usize, usize)> = (0..m).map(|i| (i, m + i)).collect();
        for &(e, fi) in &pairs {
            gram.set(e, fi, 1);
            gram.set(fi, e, if kind == Kind::Symplectic { f.neg(1) } else { 1 });
        }
        let mut nu = None;
        let quad = if kind == Kind::Symplectic {
            None
        } else {
            let mut diag = vec![0; d];
            let mut cross: Vec<(usize, usize, Elem)> = pairs.iter().map(|&(e, fi)| (e, fi, 1)).collect();
            match kind {
                Kind::OrthogonalMinus => {
                    let v = anisotropic_nu(f);
                    nu = Some(v);
                    let (x, y) = (2 * m, 2 * m + 1);
                    diag[x] = 1;
                    diag[y] = v;
                    cross.push((x, y, 1));
                    gram.set(x, y, 1);
                    gram.set(y, x, 1);
                    gram.set(x, x, f.from_int(2));
                    gram.set(y, y, f.mul(f.from_int(2), v));
                    pairs.push((x, y));
                }
                Kind::OrthogonalOdd => {
                    diag[2 * n] = 1;
                    gram.set(2 * n, 2 * n, f.from_int(2));
                }
                _ => {}
            }
            Some(QuadForm { diag, cross })
        };
        Ok(QuadraticSpace { field, kind, n, gram, quad, nu, pairs, ext: OnceLock::new() })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &FqMatrix {
        &self.gram
    }

    pub fn nu(&self) -> Option<Elem> {
        self.nu
    }

    /// Pairs `(u, w)` of basis indices with `B(u, w) = 1` forming a symplectic
    /// basis of the part of `V` carrying a nondegenerate alternating form.
    pub fn symplectic_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn name(&self) -> String {
        self.kind.group_name(self.n, self.q())
    }

    /// The embedding `F_q ↪ F_{q²}`, built on first use.
    pub fn quadratic_extension(&self) -> Result<&Embedding> {
        if let Some(e) = self.ext.get() {
            return Ok(e);
        }
        let q = self.q();
        let big = Field::gf(q.checked_mul(q).ok_or_else(|| Error::invalid("q² overflows"))?)?;
        let emb = Embedding::new(self.field.clone(), big)?;
        Ok(self.ext.get_or_init(|| emb))
    }

    /// `B(v, w) = vᵀ G w`.
    pub fn bilinear(&self, v: &[Elem], w: &[Elem]) -> Elem {
        let f = &self.field;
        let d = self.dim();
        let mut acc = 0;
        for i in 0..d {
            if v[i] == 0 {
                continue;
            }
            for j in 0..d {
                let g = self.gram.get(i, j);
                if g != 0 && w[j] != 0 {
                    acc = f.add(acc, f.mul(v[i], f.mul(g, w[j])));
                }
            }
        }
        acc
    }

    pub fn has_quadratic_form(&self) -> bool {
        self.quad.is_some()
    }

    /// `Q(v)`; for the symplectic kind, the plus-type form
    /// `Σ v_{e_i} v_{f_i}` polarizing to the alternating form in
    /// characteristic 2.
    pub fn quad(&self, v: &[Elem]) -> Elem {
        let f = &self.field;
        match &self.quad {
            Some(qf) => {
                let mut acc = 0;
                for (i, &c) in qf.diag.iter().enumerate() {
                    if c != 0 && v[i] != 0 {
                        acc = f.add(acc, f.mul(c, f.mul(v[i], v[i])));
                    }
                }
                for &(i, j, c) in &qf.cross {
                    if v[i] != 0 && v[j] != 0 {
                        acc = f.add(acc, f.mul(c, f.mul(v[i], v[j])));
                    }
                }
                acc
            }
            None => self.pairs.iter().fold(0, |acc, &(i, j)| f.add(acc, f.mul(v[i], v[j]))),
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Order of the group the verifiers act on: `Sp_{2n}(q)`, or `Ω(V)`.
    pub fn group_order(&self) -> BigUint {
        group_order(self.kind, self.n, self.q())
    }
}

/// `|Sp_{2n}(q)|`, `|Ω^±_{2n}(q)|` or `|Ω_{2n+1}(q)|`.
pub fn group_order(kind: Kind, n: usize, q: u32) -> BigUint {
    let qb = BigUint::from(q);
    let prod = |k: usize| -> BigUint { (1..=k).map(|i| qb.pow(2 * i as u32) - 1u32).product() };
    let odd_q = q % 2 == 1;
    match kind {
        Kind::Symplectic => qb.pow((n * n) as u32) * prod(n),
        Kind::OrthogonalOdd => qb.pow((n * n) as u32) * prod(n) / 2u32,
        Kind::OrthogonalPlus | Kind::OrthogonalMinus => {
            let qn = qb.pow(n as u32);
            let t = if kind == Kind::OrthogonalPlus { qn - 1u32 } else { qn + 1u32 };
            let so = qb.pow((n * (n - 1)) as u32) * t * prod(n - 1);
            if odd_q {
                so / 2u32
            } else {
                so
            }
        }
    }
}

/// Iterates over every vector of `span(basis)`, passing each to `visit`.
pub fn for_each_in_span(f: &Field, dim: usize, basis: &[Vec<Elem>], mut visit: impl FnMut(&[Elem])) {
    let k = basis.len();
    let q = f.q();
    let mut coeffs = vec![0u32; k];
    let mut v = vec![0; dim];
    loop {
        visit(&v);
        let mut j = 0;
        loop {
            if j == k {
                return;
            }
            let old = coeffs[j];
            let new = if old + 1 == q { 0 } else { old + 1 };
            coeffs[j] = new;
            let delta = f.sub(new, old);
            for (x, &b) in v.iter_mut().zip(&basis[j]) {
                if b != 0 {
                    *x = f.add(*x, f.mul(delta, b));
                }
            }
            if new != 0 {
                break;
            }
            j += 1;
        }
    }
}

/// Every vector of `F_q^d` in index order.
pub fn all_vectors(f: &Field, d: usize) -> Vec<Vec<Elem>> {
    let q = f.q() as usize;
    let total = q.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            (0..d)
                .map(|_| {
                    let c = (idx % q) as Elem;
                    idx /= q;
                    c
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singular_count(s: &QuadraticSpace) -> usize {
        all_vectors(s.field(), s.dim())
            .iter()
            .filter(|v| v.iter().any(|&x| x != 0) && s.quad(v) == 0)
            .count()
    }

    #[test]
    fn singular_vector_counts() {
        let sp = QuadraticSpace::new(Kind::Symplectic, 3, 2).unwrap();
        let all = all_vectors(sp.field(), 6);
        assert!(all.iter().all(|v| sp.bilinear(v, v) == 0));
        assert_eq!(all.len() - 1, 63);
        let plus = QuadraticSpace::new(Kind::OrthogonalPlus, 5, 2).unwrap();
        assert_eq!(singular_count(&plus), 527);
        let minus = QuadraticSpace::new(Kind::OrthogonalMinus, 5, 2).unwrap();
        assert_eq!(singular_count(&minus), 495);
        // (q^n − ε)(q^{n−1} + ε) in odd characteristic too
        let p3 = QuadraticSpace::new(Kind::OrthogonalPlus, 3, 3).unwrap();
        assert_eq!(singular_count(&p3), 26 * 10);
        let m3 = QuadraticSpace::new(Kind::OrthogonalMinus, 3, 3).unwrap();
        assert_eq!(singular_count(&m3), 28 * 8);
        // q^{2n} − 1 singular vectors in dimension 2n + 1
        let o5 = QuadraticSpace::new(Kind::OrthogonalOdd, 2, 3).unwrap();
        assert_eq!(singular_count(&o5), 80);
    }

    #[test]
    fn forms_polarize_to_gram() {
        for (kind, n, q) in [(Kind::OrthogonalPlus, 2, 4), (Kind::OrthogonalMinus, 2, 3), (Kind::OrthogonalOdd, 1, 5), (Kind::OrthogonalMinus, 2, 4)] {
            let s = QuadraticSpace::new(kind, n, q).unwrap();
            let f = s.field().clone();
            let all = all_vectors(&f, s.dim());
            for v in all.iter().step_by(7) {
                for w in all.iter().step_by(11) {
                    let sum: Vec<Elem> = v.iter().zip(w).map(|(&a, &b)| f.add(a, b)).collect();
                    let polar = f.sub(f.sub(s.quad(&sum), s.quad(v)), s.quad(w));
                    assert_eq!(polar, s.bilinear(v, w));
                }
            }
        }
    }

    #[test]
    fn anisotropic_plane() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = Field::gf(q).unwrap();
            let nu = anisotropic_nu(&f);
            assert!((0..q).all(|t| f.add(f.add(f.mul(t, t), t), nu) != 0));
        }
        assert_eq!(anisotropic_nu(&Field::gf(2).unwrap()), 1);
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(Kind::Symplectic, 3, 2), BigUint::from(1_451_520u32));
        assert_eq!(group_order(Kind::OrthogonalPlus, 3, 2), BigUint::from(20160u32));
        assert_eq!(group_order(Kind::OrthogonalMinus, 3, 2), BigUint::from(25920u32));
        assert_eq!(group_order(Kind::OrthogonalOdd, 2, 3), BigUint::from(25920u32));
    }

    #[test]
    fn span_enumeration_visits_each_vector_once() {
        let f = Field::gf(3).unwrap();
        let basis = vec![vec![1, 2, 0], vec![0, 1, 1]];
        let mut seen = std::collections::HashSet::new();
        for_each_in_span(&f, 3, &basis, |v| {
            assert!(seen.insert(v.to_vec()));
        });
        assert_eq!(seen.len(), 9);
    }
}
