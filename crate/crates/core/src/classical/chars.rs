//! Character values computable from eigenspace dimensions and fixed-point
//! counts, and the closed-form degrees they are checked against.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::counts::PointCounts;
use super::space::{Kind, QuadraticSpace};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, FqMatrix};

/// Eigenspace dimensions at the points of `μ_{q−1} = F_q^×` (over `F_q`)
/// and of `μ_{q+1} ⊂ F_{q²}^×` (over `F_{q²}`), each with the value of the
/// quadratic character of the respective group at that point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenDims {
    pub q: u32,
    pub d: usize,
    /// `(λ, dim ker(g − λ), χ₂⁺(λ))`.
    pub split: Vec<(Elem, usize, i32)>,
    /// `(λ, dim ker(g − λ), χ₂⁻(λ))`, `λ` an element index of `F_{q²}`.
    pub nonsplit: Vec<(Elem, usize, i32)>,
}

fn quadratic_sign(f: &Field, x: Elem, exponent: u64) -> i32 {
    if f.is_char2() {
        return 1;
    }
    if f.pow(x, exponent) == 1 {
        1
    } else {
        -1
    }
}

/// The points of `μ_{q+1}` as element indices of `F_{q²}`.
pub fn mu_plus(big: &Field, q: u32) -> Vec<Elem> {
    let g = big.primitive();
    let step = big.pow(g, (q - 1) as u64);
    let mut out = Vec::with_capacity(q as usize + 1);
    let mut x = 1;
    for _ in 0..=q {
        out.push(x);
        x = big.mul(x, step);
    }
    out.sort_unstable();
    out
}

impl EigenDims {
    /// Dimensions for the matrix `g`; points that are not roots of the
    /// characteristic polynomial are skipped by evaluating it first.
    pub fn of(space: &QuadraticSpace, g: &FqMatrix) -> Result<Self> {
        let f = space.field();
        let q = f.q();
        let emb = space.quadratic_extension()?;
        let big = &emb.large;
        let cp = g.char_poly();
        let cp_big: Vec<Elem> = cp.coeffs().iter().map(|&c| emb.apply(c)).collect();
        let eval_big = |x: Elem| cp_big.iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, x), c));
        let split = f
            .units()
            .map(|l| {
                let dim = if cp.eval(f, l) == 0 { g.eig_dim(l) } else { 0 };
                (l, dim, quadratic_sign(f, l, ((q - 1) / 2) as u64))
            })
            .collect();
        let gb = g.embed(emb)?;
        let nonsplit = mu_plus(big, q)
            .into_iter()
            .map(|l| {
                let dim = if eval_big(l) == 0 { gb.eig_dim(l) } else { 0 };
                (l, dim, quadratic_sign(big, l, ((q + 1) / 2) as u64))
            })
            .collect();
        Ok(EigenDims { q, d: space.dim(), split, nonsplit })
    }

    /// Dimensions of the identity of `GL_d(q)`, without building it.
    pub fn identity(q: u32, d: usize) -> Result<Self> {
        let f = Field::gf(q)?;
        let big = Field::gf(q.checked_mul(q).ok_or_else(|| Error::invalid("q² overflows"))?)?;
        let split = f
            .units()
            .map(|l| (l, if l == 1 { d } else { 0 }, quadratic_sign(&f, l, ((q - 1) / 2) as u64)))
            .collect();
        let nonsplit = mu_plus(&big, q)
            .into_iter()
            .map(|l| (l, if l == 1 { d } else { 0 }, quadratic_sign(&big, l, ((q + 1) / 2) as u64)))
            .collect();
        Ok(EigenDims { q, d, split, nonsplit })
    }

    pub fn dim_at_one(&self) -> usize {
        self.split.iter().find(|e| e.0 == 1).map_or(0, |e| e.1)
    }
}

fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (quot, rem) = num.div_rem(den);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(Error::Arithmetic(format!("{what}: {num}/{den} is not an integer")))
    }
}

/// The explicit eigenspace formula for `β` (even `d`) or for the character
/// of degree `(q^d − q)/(q² − 1)` (odd `d`, odd `q`) of `SO(V)` / `Ω(V)`:
///
/// even `d`: `Σ_{μ_{q−1}} q^{d(λ)} / 2(q−1) − Σ_{μ_{q+1}} (−q)^{d(λ)} / 2(q+1) − 1`;
/// odd `d`: `Σ_{μ_{q−1}} χ₂⁺(λ) q^{d(λ)} / 2(q−1) + Σ_{μ_{q+1}} χ₂⁻(λ) (−q)^{d(λ)} / 2(q+1)`.
pub fn beta_formula(dims: &EigenDims) -> Result<BigInt> {
    let q = BigInt::from(dims.q);
    let mq = -q.clone();
    let odd = dims.d % 2 == 1;
    if odd && dims.q % 2 == 0 {
        return Err(Error::invalid("odd dimension needs odd q"));
    }
    let twist = |t: i32| if odd { BigInt::from(t) } else { BigInt::one() };
    let a: BigInt = dims.split.iter().map(|&(_, k, t)| twist(t) * q.pow(k as u32)).sum();
    let b: BigInt = dims.nonsplit.iter().map(|&(_, k, t)| twist(t) * mq.pow(k as u32)).sum();
    let one = BigInt::one();
    let den = BigInt::from(2) * (&q * &q - &one);
    let num = if odd {
        &a * (&q + &one) + &b * (&q - &one)
    } else {
        &a * (&q + &one) - &b * (&q - &one) - &den
    };
    exact_div(&num, &den, "eigenspace formula")
}

/// `β(g)` (or the odd-dimensional analogue) for an element of the space.
pub fn beta_value(space: &QuadraticSpace, g: &FqMatrix) -> Result<BigInt> {
    if !space.kind().is_orthogonal() {
        return Err(Error::invalid("beta_value needs an orthogonal space"));
    }
    beta_formula(&EigenDims::of(space, g)?)
}

/// `(ρ¹(g), ρ²(g))` for `Sp_{2n}(q)`, `q` even, from the fixed 1-spaces and
/// fixed forms.
pub fn weil_values(counts: &PointCounts) -> Result<(i128, i128)> {
    let (Some(pp), Some(pm)) = (counts.pi_plus, counts.pi_minus) else {
        return Err(Error::invalid("Weil values need form counts (characteristic 2)"));
    };
    let r = counts.rho_all as i128 - 1;
    let diff = pp as i128 - pm as i128;
    if (r - diff).rem_euclid(2) != 0 {
        return Err(Error::check(format!("parity: rho − 1 = {r} but pi+ − pi− = {diff}")));
    }
    Ok(((r - diff) / 2, (r + diff) / 2))
}

/// Values of `α`, `Σγ_i` and `Σδ_j` on `Ω^ε_{2n}(q)`, `q` even.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constituents {
    pub alpha: i128,
    pub beta: i128,
    pub gamma_sum: i128,
    pub delta_sum: i128,
}

pub fn derived_constituents(counts: &PointCounts, beta: i128) -> Result<Constituents> {
    let (Some(pp), Some(h)) = (counts.ind_pp, counts.ind_h) else {
        return Err(Error::invalid("constituents need orthogonal point counts"));
    };
    let rho = counts.rho as i128;
    let pp = pp as i128;
    if (pp - rho) % 2 != 0 {
        return Err(Error::check(format!("parity: fixed singular vectors {pp} vs 1-spaces {rho}")));
    }
    let gamma_sum = (pp - rho) / 2;
    Ok(Constituents {
        alpha: rho - 1 - beta,
        beta,
        gamma_sum,
        delta_sum: h as i128 - 1 - beta - gamma_sum,
    })
}

pub fn to_i128(x: &BigInt) -> Result<i128> {
    i128::try_from(x).map_err(|_| Error::Arithmetic(format!("{x} does not fit in i128")))
}

/// `|χ(g)|³ · q^s ≤ χ(1)³`, i.e. `|χ(g)|/χ(1) ≤ q^{−s/3}` without roots.
pub fn ratio_bound_holds(value: &BigInt, degree: &BigInt, q: u32, s: usize) -> bool {
    let lhs = value.abs().pow(3) * BigInt::from(q).pow(s as u32);
    lhs <= degree.pow(3)
}

/// Closed-form character degrees.
pub mod degrees {
    use super::*;

    fn pw(q: u32, k: usize) -> BigInt {
        BigInt::from(q).pow(k as u32)
    }

    fn div(num: BigInt, den: BigInt) -> BigInt {
        let (quot, rem) = num.div_rem(&den);
        assert!(rem.is_zero(), "degree formula is not integral");
        quot
    }

    fn e(eps: i64) -> BigInt {
        BigInt::from(eps)
    }

    /// `ρ¹_n(1) = (q^n + 1)(q^n − q) / 2(q − 1)`.
    pub fn sp_rho1(n: usize, q: u32) -> BigInt {
        div((pw(q, n) + 1) * (pw(q, n) - q), BigInt::from(2 * (q - 1)))
    }

    /// `ρ²_n(1) = (q^n − 1)(q^n + q) / 2(q − 1)`.
    pub fn sp_rho2(n: usize, q: u32) -> BigInt {
        div((pw(q, n) - 1) * (pw(q, n) + q), BigInt::from(2 * (q - 1)))
    }

    /// `τ^i_n(1) = (q^{2n} − 1)/(q − 1)`.
    pub fn sp_tau(n: usize, q: u32) -> BigInt {
        div(pw(q, 2 * n) - 1, BigInt::from(q - 1))
    }

    /// `α_n(1) = (q^n − 1)(q^n − q) / 2(q + 1)`.
    pub fn sp_alpha(n: usize, q: u32) -> BigInt {
        div((pw(q, n) - 1) * (pw(q, n) - q), BigInt::from(2 * (q + 1)))
    }

    /// `β_n(1) = (q^n + 1)(q^n + q) / 2(q + 1)`.
    pub fn sp_beta(n: usize, q: u32) -> BigInt {
        div((pw(q, n) + 1) * (pw(q, n) + q), BigInt::from(2 * (q + 1)))
    }

    /// `ζ^i_n(1) = (q^{2n} − 1)/(q + 1)`.
    pub fn sp_zeta(n: usize, q: u32) -> BigInt {
        div(pw(q, 2 * n) - 1, BigInt::from(q + 1))
    }

    /// `α(1) = (q^n − ε)(q^{n−1} + εq)/(q² − 1)`.
    pub fn alpha(eps: i64, n: usize, q: u32) -> BigInt {
        div((pw(q, n) - e(eps)) * (pw(q, n - 1) + e(eps) * q), BigInt::from(q * q - 1))
    }

    /// `β(1) = (q^{2n} − q²)/(q² − 1)`.
    pub fn beta(n: usize, q: u32) -> BigInt {
        div(pw(q, 2 * n) - pw(q, 2), BigInt::from(q * q - 1))
    }

    /// `γ_i(1) = (q^n − ε)(q^{n−1} + ε)/(q − 1)`.
    pub fn gamma(eps: i64, n: usize, q: u32) -> BigInt {
        div((pw(q, n) - e(eps)) * (pw(q, n - 1) + e(eps)), BigInt::from(q - 1))
    }

    /// `δ_j(1) = (q^n − ε)(q^{n−1} − ε)/(q + 1)`.
    pub fn delta(eps: i64, n: usize, q: u32) -> BigInt {
        div((pw(q, n) - e(eps)) * (pw(q, n - 1) - e(eps)), BigInt::from(q + 1))
    }

    /// Number of nonzero singular vectors, `(q^n − ε)(q^{n−1} + ε)`.
    pub fn singular_vectors(eps: i64, n: usize, q: u32) -> BigInt {
        (pw(q, n) - e(eps)) * (pw(q, n - 1) + e(eps))
    }

    /// Number of singular 1-spaces, `(q^n − ε)(q^{n−1} + ε)/(q − 1)`.
    pub fn rank3(eps: i64, n: usize, q: u32) -> BigInt {
        div(singular_vectors(eps, n, q), BigInt::from(q - 1))
    }

    /// Number of vectors with `Q(v) = 1`, `q^{2n−1} − ε q^{n−1}`.
    pub fn unit_vectors(eps: i64, n: usize, q: u32) -> BigInt {
        pw(q, 2 * n - 1) - e(eps) * pw(q, n - 1)
    }

    /// Degree of the odd-dimensional eigenspace character,
    /// `(q^d − q)/(q² − 1)` for `d = 2n + 1`.
    pub fn odd_psi(n: usize, q: u32) -> BigInt {
        div(pw(q, 2 * n + 1) - q, BigInt::from(q * q - 1))
    }
}

/// Degree of `α` or `β` on the orthogonal kind, for ratio checks.
pub fn orthogonal_degrees(kind: Kind, n: usize, q: u32) -> Option<(BigInt, BigInt)> {
    kind.epsilon().map(|eps| (degrees::alpha(eps, n, q), degrees::beta(n, q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::counts::point_counts;
    use crate::classical::group::{sample, transvection};
    use crate::classical::space::QuadraticSpace;

    #[test]
    fn identity_evaluations() {
        let d = EigenDims::identity(2, 10).unwrap();
        assert_eq!(beta_formula(&d).unwrap(), BigInt::from(340));
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            for n in 5..=8 {
                let dims = EigenDims::identity(q, 2 * n).unwrap();
                assert_eq!(beta_formula(&dims).unwrap(), degrees::beta(n, q));
                if q % 2 == 1 {
                    let dims = EigenDims::identity(q, 2 * n + 1).unwrap();
                    assert_eq!(beta_formula(&dims).unwrap(), degrees::odd_psi(n, q));
                }
            }
        }
    }

    #[test]
    fn weil_values_on_sp6_2() {
        let s = QuadraticSpace::new(Kind::Symplectic, 3, 2).unwrap();
        let id = FqMatrix::identity(s.field().clone(), 6);
        assert_eq!(weil_values(&point_counts(&s, &id).unwrap()).unwrap(), (27, 35));
        let t = transvection(&s, &s.basis_vector(1), 1);
        assert_eq!(weil_values(&point_counts(&s, &t).unwrap()).unwrap(), (15, 15));
    }

    #[test]
    fn orthogonal_identity_constituents() {
        for (kind, alpha, delta) in [(Kind::OrthogonalPlus, 186, 155), (Kind::OrthogonalMinus, 154, 187)] {
            let s = QuadraticSpace::new(kind, 5, 2).unwrap();
            let id = FqMatrix::identity(s.field().clone(), 10);
            let beta = to_i128(&beta_value(&s, &id).unwrap()).unwrap();
            assert_eq!(beta, 340);
            let c = derived_constituents(&point_counts(&s, &id).unwrap(), beta).unwrap();
            assert_eq!((c.alpha, c.gamma_sum, c.delta_sum), (alpha, 0, delta));
            let eps = kind.epsilon().unwrap();
            assert_eq!(BigInt::from(alpha), degrees::alpha(eps, 5, 2));
            assert_eq!(BigInt::from(delta), degrees::delta(eps, 5, 2));
        }
    }

    #[test]
    fn beta_is_a_class_function() {
        for (kind, q) in [(Kind::OrthogonalPlus, 2), (Kind::OrthogonalMinus, 3), (Kind::OrthogonalOdd, 3)] {
            let s = QuadraticSpace::new(kind, 5, q).unwrap();
            let els = sample(&s, 12, 30, 77).unwrap();
            for pair in els.chunks(2) {
                let (g, h) = (&pair[0].matrix, &pair[1].matrix);
                let conj = h.mul(g).mul(&h.inverse().unwrap());
                assert_eq!(beta_value(&s, g).unwrap(), beta_value(&s, &conj).unwrap());
            }
        }
    }

    #[test]
    fn mu_plus_has_q_plus_one_points() {
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let big = Field::gf(q * q).unwrap();
            let pts = mu_plus(&big, q);
            assert_eq!(pts.len(), q as usize + 1);
            assert!(pts.iter().all(|&x| big.pow(x, (q + 1) as u64) == 1));
            let set: std::collections::HashSet<_> = pts.iter().collect();
            assert_eq!(set.len(), pts.len());
        }
    }

    #[test]
    fn ratio_bound_boundary() {
        let deg = BigInt::from(27);
        assert!(ratio_bound_holds(&deg, &deg, 2, 0));
        assert!(!ratio_bound_holds(&deg, &deg, 2, 1));
        assert!(ratio_bound_holds(&BigInt::from(-15), &deg, 2, 1));
    }
}
