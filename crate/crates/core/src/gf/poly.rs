//! Univariate polynomials over `GF(q)` and their factorization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Elem, Field};

/// Coefficients lowest degree first, without trailing zeros. The zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    /// `x - a`.
    pub fn linear(f: &Field, a: Elem) -> Self {
        Poly::new(vec![f.neg(a), 1])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }
}

pub fn add(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    Poly::new((0..n).map(|i| f.add(a.coeff(i), b.coeff(i))).collect())
}

pub fn sub(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    Poly::new((0..n).map(|i| f.sub(a.coeff(i), b.coeff(i))).collect())
}

pub fn scale(f: &Field, a: &Poly, c: Elem) -> Poly {
    Poly::new(a.coeffs.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(f: &Field, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![0; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    Poly::new(out)
}

/// `(quotient, remainder)`; panics on division by zero.
pub fn divrem(f: &Field, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_zero(), "polynomial division by zero");
    if a.degree() < b.degree() || a.is_zero() {
        return (Poly::zero(), a.clone());
    }
    let mut rem = a.coeffs.clone();
    let db = b.degree();
    let inv_lead = f.inv(b.lead());
    let mut quot = vec![0; a.degree() - db + 1];
    for k in (0..quot.len()).rev() {
        let c = f.mul(rem[k + db], inv_lead);
        if c == 0 {
            continue;
        }
        quot[k] = c;
        for (i, &bc) in b.coeffs.iter().enumerate() {
            rem[k + i] = f.sub(rem[k + i], f.mul(c, bc));
        }
    }
    rem.truncate(db);
    (Poly::new(quot), Poly::new(rem))
}

pub fn rem(f: &Field, a: &Poly, b: &Poly) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &Field, a: &Poly) -> Poly {
    if a.is_zero() {
        return Poly::zero();
    }
    scale(f, a, f.inv(a.lead()))
}

/// Monic greatest common divisor.
pub fn gcd(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn derivative(f: &Field, a: &Poly) -> Poly {
    Poly::new(
        a.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect(),
    )
}

pub fn mulmod(f: &Field, a: &Poly, b: &Poly, m: &Poly) -> Poly {
    rem(f, &mul(f, a, b), m)
}

/// `a^k mod m` for a possibly huge exponent given as base-2 digits.
pub fn powmod(f: &Field, a: &Poly, k: u128, m: &Poly) -> Poly {
    let mut result = rem(f, &Poly::one(), m);
    let mut base = rem(f, a, m);
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = mulmod(f, &result, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        k >>= 1;
    }
    result
}

/// `a^q mod m`.
fn frob(f: &Field, a: &Poly, m: &Poly) -> Poly {
    powmod(f, a, f.q() as u128, m)
}

/// Input with every exponent divisible by `p`, returns its `p`-th root.
fn pth_root(f: &Field, a: &Poly) -> Poly {
    let p = f.p() as usize;
    Poly::new(
        a.coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pth_root(c))
            .collect(),
    )
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test.
pub fn is_irreducible(f: &Field, a: &Poly) -> bool {
    let n = a.degree();
    if a.is_zero() || n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let a = monic(f, a);
    let x = Poly::x();
    // x^{q^k} mod a for k = 0..=n
    let mut powers = vec![rem(f, &x, &a)];
    for k in 1..=n {
        powers.push(frob(f, &powers[k - 1], &a));
    }
    if sub(f, &powers[n], &rem(f, &x, &a)).is_zero() {
        prime_divisors(n).into_iter().all(|r| {
            let h = sub(f, &powers[n / r], &x);
            gcd(f, &a, &h).is_one()
        })
    } else {
        false
    }
}

/// Square-free decomposition `a = lead · ∏ s_i^i`, as `(s_i, i)` with
/// nonconstant monic `s_i`.
pub fn squarefree(f: &Field, a: &Poly) -> Vec<(Poly, u32)> {
    let a = monic(f, a);
    let mut out = Vec::new();
    if a.degree() == 0 {
        return out;
    }
    let mut c = gcd(f, &a, &derivative(f, &a));
    let mut w = divrem(f, &a, &c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = gcd(f, &w, &c);
        let fac = divrem(f, &w, &y).0;
        if fac.degree() > 0 {
            out.push((monic(f, &fac), i));
        }
        w = y;
        c = divrem(f, &c, &w).0;
        i += 1;
    }
    if c.degree() > 0 {
        let root = pth_root(f, &c);
        for (g, m) in squarefree(f, &root) {
            out.push((g, m * f.p()));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial: pairs
/// `(g, d)` with `g` the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &Field, a: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = monic(f, a);
    let x = Poly::x();
    let mut h = rem(f, &x, &rest);
    let mut d = 1;
    while rest.degree() >= 2 * d {
        h = frob(f, &h, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x));
        if !g.is_one() {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let d = rest.degree();
        out.push((rest, d));
    }
    out
}

fn random_poly(f: &Field, rng: &mut ChaCha8Rng, below: usize) -> Poly {
    Poly::new((0..below).map(|_| rng.random_range(0..f.q())).collect())
}

/// Splits a monic product of distinct irreducibles of degree `d` into its
/// factors (Cantor–Zassenhaus; trace map in characteristic 2).
pub fn equal_degree(f: &Field, a: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = a.degree();
    if n == d {
        return vec![monic(f, a)];
    }
    loop {
        let r = random_poly(f, rng, n);
        if r.degree() == 0 {
            continue;
        }
        let g = if f.is_char2() {
            // T(r) = r + r^2 + ... + r^{2^{e d - 1}}
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..(f.e() as usize * d) {
                t = mulmod(f, &t, &t, a);
                acc = add(f, &acc, &t);
            }
            gcd(f, a, &acc)
        } else {
            let e = ((f.q() as u128).pow(d as u32) - 1) / 2;
            let b = sub(f, &powmod(f, &r, e, a), &Poly::one());
            gcd(f, a, &b)
        };
        if g.degree() > 0 && g.degree() < n {
            let h = divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &monic(f, &h), d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted. The leading coefficient is dropped.
pub fn factor(f: &Field, a: &Poly, seed: u64) -> Vec<(Poly, u32)> {
    assert!(!a.is_zero(), "factoring the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (s, m) in squarefree(f, a) {
        for (g, d) in distinct_degree(f, &s) {
            for irr in equal_degree(f, &g, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort();
    out
}

/// `∏ g_i^{m_i}`.
pub fn expand(f: &Field, factors: &[(Poly, u32)]) -> Poly {
    factors.iter().fold(Poly::one(), |acc, (g, m)| {
        (0..*m).fold(acc, |acc, _| mul(f, &acc, g))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u32) -> std::sync::Arc<Field> {
        Field::gf(q).unwrap()
    }

    #[test]
    fn small_examples() {
        let f2 = gf(2);
        assert!(is_irreducible(&f2, &Poly::new(vec![1, 1, 1])));
        assert!(!is_irreducible(&f2, &Poly::new(vec![1, 0, 1])));
        let f3 = gf(3);
        let x2m1 = Poly::new(vec![2, 0, 1]);
        assert_eq!(
            factor(&f3, &x2m1, 0),
            vec![(Poly::new(vec![1, 1]), 1), (Poly::new(vec![2, 1]), 1)]
        );
        assert_eq!(factor(&f2, &Poly::new(vec![1, 1, 1]), 0), vec![(Poly::new(vec![1, 1, 1]), 1)]);
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let f2 = gf(2);
        // (x+1)^4 (x^2+x+1)^2 x
        let factors = vec![(Poly::new(vec![0, 1]), 1), (Poly::new(vec![1, 1]), 4), (Poly::new(vec![1, 1, 1]), 2)];
        let a = expand(&f2, &factors);
        assert_eq!(factor(&f2, &a, 3), factors);
        let f9 = gf(9);
        let g = Poly::new(vec![5, 1]);
        let a = expand(&f9, &[(g.clone(), 3), (Poly::new(vec![1, 0, 1]), 1)]);
        let got = factor(&f9, &a, 1);
        assert_eq!(expand(&f9, &got), a);
        assert!(got.contains(&(g, 3)));
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree 4 over F_2 is 3, over F_3 is 18
        for (q, want) in [(2u32, 3usize), (3, 18)] {
            let f = gf(q);
            let count = (0..q.pow(4))
                .filter(|&low| {
                    let mut c: Vec<u32> = (0..4).map(|i| low / q.pow(i) % q).collect();
                    c.push(1);
                    is_irreducible(&f, &Poly::new(c))
                })
                .count();
            assert_eq!(count, want);
        }
    }

    /// Trial division by monic polynomials in increasing degree.
    fn trial_factor(f: &Field, a: &Poly) -> Vec<(Poly, u32)> {
        let q = f.q();
        let mut a = a.clone();
        let mut out: Vec<(Poly, u32)> = Vec::new();
        let mut d = 1;
        while a.degree() >= 2 * d {
            for low in 0..q.pow(d as u32) {
                let mut c: Vec<u32> = (0..d as u32).map(|i| low / q.pow(i) % q).collect();
                c.push(1);
                let g = Poly::new(c);
                let mut e = 0;
                loop {
                    let (qt, r) = divrem(f, &a, &g);
                    if !r.is_zero() {
                        break;
                    }
                    a = qt;
                    e += 1;
                }
                if e > 0 {
                    out.push((g, e));
                }
            }
            d += 1;
        }
        if a.degree() > 0 {
            match out.iter_mut().find(|(g, _)| *g == a) {
                Some((_, e)) => *e += 1,
                None => out.push((a, 1)),
            }
        }
        out.sort();
        out
    }

    #[test]
    fn random_degree_eight_over_f4_matches_trial_division() {
        let f4 = gf(4);
        let mut rng = ChaCha8Rng::seed_from_u64(48);
        for i in 0..300 {
            let mut c: Vec<u32> = (0..8).map(|_| rand::Rng::random_range(&mut rng, 0..4)).collect();
            c.push(1);
            let a = Poly::new(c);
            let mut got = factor(&f4, &a, i);
            got.sort();
            assert_eq!(got, trial_factor(&f4, &a), "{a:?}");
        }
    }

    proptest! {
        #[test]
        fn factor_round_trips(q in prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]), coeffs in prop::collection::vec(0u32..1000, 2..10), seed in 0u64..1000) {
            let f = gf(q);
            let mut c: Vec<u32> = coeffs.iter().map(|x| x % q).collect();
            c.push(1);
            let a = Poly::new(c);
            let got = factor(&f, &a, seed);
            prop_assert_eq!(expand(&f, &got), a.clone());
            for (g, _) in &got {
                prop_assert!(is_irreducible(&f, g));
                prop_assert_eq!(g.lead(), 1);
            }
            prop_assert_eq!(factor(&f, &a, seed + 1), got);
        }

        #[test]
        fn division_identity(q in prop::sample::select(vec![2u32, 5, 8, 9]), a in prop::collection::vec(0u32..100, 0..8), b in prop::collection::vec(0u32..100, 1..5)) {
            let f = gf(q);
            let a = Poly::new(a.iter().map(|x| x % q).collect());
            let mut b: Vec<u32> = b.iter().map(|x| x % q).collect();
            *b.last_mut().unwrap() = 1;
            let b = Poly::new(b);
            let (qt, r) = divrem(&f, &a, &b);
            prop_assert_eq!(add(&f, &mul(&f, &qt, &b), &r), a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }
    }
}
