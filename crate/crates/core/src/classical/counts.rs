//! Fixed-point counts of permutation actions.

use serde::{Deserialize, Serialize};

use super::space::{all_vectors, for_each_in_span, QuadraticSpace};
use crate::error::{Error, Result};
use crate::gf::{Elem, FqMatrix};

/// Largest eigenspace (in vectors) enumerated by `point_counts`.
pub const ENUMERATION_CAP: u64 = 1 << 24;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCounts {
    /// Fixed singular 1-spaces; every 1-space is singular for the
    /// symplectic kind.
    pub rho: u64,
    /// Fixed 1-spaces of `V`, singular or not.
    pub rho_all: u64,
    /// Fixed nonzero singular vectors.
    pub ind_pp: Option<u64>,
    /// Fixed vectors with `Q(v) = 1`.
    pub ind_h: Option<u64>,
    /// Fixed quadratic forms of plus and minus type polarizing to the
    /// alternating form (characteristic 2 only).
    pub pi_plus: Option<u64>,
    pub pi_minus: Option<u64>,
    /// `dim ker(g − 1)`.
    pub fixed_dim: usize,
}

fn pow_u64(q: u32, k: usize) -> u64 {
    (q as u64).pow(k as u32)
}

/// All fixed-point counts for `g` by enumerating eigenspaces over `F_q`.
pub fn point_counts(space: &QuadraticSpace, g: &FqMatrix) -> Result<PointCounts> {
    let f = space.field();
    let q = f.q();
    let d = space.dim();
    let orth = space.kind().is_orthogonal();
    let mut counts = PointCounts::default();
    let mut singular_fixed = 0u64;
    for lambda in f.units() {
        let basis = g.minus_scalar(lambda).kernel();
        let k = basis.len();
        counts.rho_all += (pow_u64(q, k) - 1) / (q as u64 - 1);
        if lambda == 1 {
            counts.fixed_dim = k;
        }
        if !orth || k == 0 {
            continue;
        }
        let size = pow_u64(q, k);
        if size > ENUMERATION_CAP {
            return Err(Error::CapExceeded { what: "eigenspace size", value: size, cap: ENUMERATION_CAP });
        }
        let (mut zero, mut one) = (0u64, 0u64);
        for_each_in_span(f, d, &basis, |v| match space.quad(v) {
            0 => zero += 1,
            1 => one += 1,
            _ => {}
        });
        // the zero vector is singular
        zero -= 1;
        singular_fixed += zero;
        if lambda == 1 {
            counts.ind_pp = Some(zero);
            counts.ind_h = Some(one);
        }
    }
    if orth {
        counts.rho = singular_fixed / (q as u64 - 1);
        if counts.ind_pp.is_none() {
            counts.ind_pp = Some(0);
            counts.ind_h = Some(0);
        }
    } else {
        counts.rho = counts.rho_all;
    }
    if f.is_char2() && d % 2 == 0 {
        let (plus, minus) = form_counts(space, g)?;
        counts.pi_plus = Some(plus);
        counts.pi_minus = Some(minus);
    }
    Ok(counts)
}

/// Type of a quadratic form on the whole space given by its values on the
/// symplectic basis pairs: `+` iff the absolute trace of the Arf invariant
/// `Σ Q(u_i) Q(w_i)` vanishes.
fn is_plus_type(space: &QuadraticSpace, values: &[Elem]) -> bool {
    let f = space.field();
    let arf = space
        .symplectic_pairs()
        .iter()
        .fold(0, |acc, &(u, w)| f.add(acc, f.mul(values[u], values[w])));
    f.trace(arf) == 0
}

/// `Q_w(b_i) = Q_0(b_i) + B(w, b_i)²` on the basis.
fn shifted_values(space: &QuadraticSpace, w: &[Elem]) -> Vec<Elem> {
    let f = space.field();
    let gw = space.gram().transpose().apply(w);
    (0..space.dim())
        .map(|i| f.add(space.quad(&space.basis_vector(i)), f.mul(gw[i], gw[i])))
        .collect()
}

/// `(π⁺(g), π⁻(g))` in characteristic 2, for `g` preserving the alternating
/// form.
///
/// Every form polarizing to `B` is `Q_w = Q_0 + B(w, ·)²` for a unique `w`,
/// and `Q_w` is `g`-fixed iff `(1 + g⁻¹) w = u_g`, where `B(u_g, ·)²` is the
/// additive map `Q_0(g·) + Q_0`. The fixed forms are a coset of
/// `ker(g − 1)`, enumerated to read off the type of each.
pub fn form_counts(space: &QuadraticSpace, g: &FqMatrix) -> Result<(u64, u64)> {
    let f = space.field().clone();
    if !f.is_char2() {
        return Err(Error::invalid("form counts need characteristic 2"));
    }
    let d = space.dim();
    let gt = space.gram().transpose();
    let ell: Vec<Elem> = (0..d)
        .map(|i| {
            let b = space.basis_vector(i);
            f.pth_root(f.add(space.quad(&g.apply(&b)), space.quad(&b)))
        })
        .collect();
    let u = gt.solve(&ell).ok_or_else(|| Error::check("alternating form is degenerate"))?;
    let ginv = g.inverse().ok_or_else(|| Error::check("singular group element"))?;
    let a = ginv.add(&FqMatrix::identity(f.clone(), d));
    let w0 = a
        .solve(&u)
        .ok_or_else(|| Error::check(format!("no fixed quadratic form for {g}")))?;
    let kernel = a.kernel();
    let size = pow_u64(f.q(), kernel.len());
    if size > ENUMERATION_CAP {
        return Err(Error::CapExceeded { what: "fixed form coset size", value: size, cap: ENUMERATION_CAP });
    }
    let (mut plus, mut minus) = (0u64, 0u64);
    for_each_in_span(&f, d, &kernel, |k| {
        let w: Vec<Elem> = w0.iter().zip(k).map(|(&x, &y)| f.add(x, y)).collect();
        if is_plus_type(space, &shifted_values(space, &w)) {
            plus += 1;
        } else {
            minus += 1;
        }
    });
    Ok((plus, minus))
}

/// `(π⁺(g), π⁻(g))` by testing all `q^{2n}` forms for invariance on the
/// basis; the oracle for `form_counts`.
pub fn form_counts_by_enumeration(space: &QuadraticSpace, g: &FqMatrix) -> (u64, u64) {
    let f = space.field().clone();
    let d = space.dim();
    let images: Vec<Vec<Elem>> = (0..d).map(|i| g.column(i)).collect();
    let (mut plus, mut minus) = (0, 0);
    for w in all_vectors(&f, d) {
        let gw = space.gram().transpose().apply(&w);
        let qw = |v: &[Elem]| {
            let l = v.iter().zip(&gw).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            f.add(space.quad(v), f.mul(l, l))
        };
        let fixed = (0..d).all(|i| qw(&images[i]) == qw(&space.basis_vector(i)));
        if fixed {
            if is_plus_type(space, &shifted_values(space, &w)) {
                plus += 1;
            } else {
                minus += 1;
            }
        }
    }
    (plus, minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::group::{sample, transvection};
    use crate::classical::space::Kind;

    #[test]
    fn symplectic_identity_and_transvection() {
        let s = QuadraticSpace::new(Kind::Symplectic, 3, 2).unwrap();
        let id = FqMatrix::identity(s.field().clone(), 6);
        let c = point_counts(&s, &id).unwrap();
        assert_eq!((c.rho, c.pi_plus, c.pi_minus), (63, Some(36), Some(28)));
        let t = transvection(&s, &s.basis_vector(0), 1);
        let c = point_counts(&s, &t).unwrap();
        assert_eq!(c.rho, 31);
        assert_eq!(c.pi_plus.unwrap() + c.pi_minus.unwrap(), 32);
    }

    #[test]
    fn orthogonal_identity() {
        let s = QuadraticSpace::new(Kind::OrthogonalPlus, 5, 2).unwrap();
        let c = point_counts(&s, &FqMatrix::identity(s.field().clone(), 10)).unwrap();
        assert_eq!(c.rho, 527);
        assert_eq!(c.ind_pp, Some(527));
        assert_eq!(c.rho_all, 1023);
        assert_eq!(c.ind_h, Some(496));
        let s = QuadraticSpace::new(Kind::OrthogonalMinus, 5, 2).unwrap();
        let c = point_counts(&s, &FqMatrix::identity(s.field().clone(), 10)).unwrap();
        assert_eq!((c.rho, c.ind_h), (495, Some(528)));
    }

    #[test]
    fn form_counts_match_enumeration() {
        for (kind, n, q) in [(Kind::Symplectic, 2, 2), (Kind::Symplectic, 2, 4), (Kind::OrthogonalMinus, 2, 4), (Kind::OrthogonalPlus, 3, 2)] {
            let s = QuadraticSpace::new(kind, n, q).unwrap();
            for g in sample(&s, 25, 20, 5).unwrap() {
                let fast = form_counts(&s, &g.matrix).unwrap();
                assert_eq!(fast, form_counts_by_enumeration(&s, &g.matrix));
                let fixed = (q as u64).pow(g.matrix.eig_dim(1) as u32);
                assert_eq!(fast.0 + fast.1, fixed);
            }
        }
    }
}
