//! Finite fields `GF(p^e)`, polynomials over them, and dense matrices.
//!
//! An element is a `u32` index `Σ c_i p^i` whose base-`p` digits are the
//! coefficients of the element in the power basis of a root `α` of the
//! field modulus. Indices `0..p` are exactly the prime subfield.
//! The modulus is the least monic irreducible polynomial of degree `e`,
//! ordered by the same digit encoding of its lower coefficients.

pub mod matrix;
pub mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

pub use matrix::FqMatrix;
pub use poly::Poly;

/// Largest field order accepted.
pub const FIELD_CAP: u32 = 1 << 20;

pub type Elem = u32;

pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    pow_p: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) modulus {:?}", self.q, self.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for Field {}

/// `n = p^e` for a prime `p`, if `n` is a prime power.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Multiplication of digit vectors modulo a monic modulus, used only while
/// the log tables are being built.
fn slow_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for k in (e..2 * e).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &m) in modulus[..e].iter().enumerate() {
            let idx = k - e + i;
            prod[idx] = (prod[idx] + (p as u64 - m as u64) * c) % p as u64;
        }
    }
    prod[..e].iter().map(|&x| x as u32).collect()
}

fn is_irreducible_over_prime(modulus: &[u32], p: u32) -> bool {
    let fp = Field::build(p, 1, vec![0, 1]).expect("prime field");
    poly::is_irreducible(&fp, &Poly::new(modulus.to_vec()))
}

impl Field {
    /// `GF(q)`, shared and memoized.
    pub fn gf(q: u32) -> Result<Arc<Field>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().expect("field cache").get(&q) {
            return Ok(f.clone());
        }
        let (p, e) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        let field = Arc::new(Field::new(p, e)?);
        cache.lock().expect("field cache").insert(q, field.clone());
        Ok(field)
    }

    /// `GF(p^e)` with the least irreducible modulus.
    pub fn new(p: u32, e: u32) -> Result<Field> {
        if prime_power(p) != Some((p, 1)) || e == 0 {
            return Err(Error::invalid(format!("GF({p}^{e}) needs a prime p and e >= 1")));
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= FIELD_CAP as u64);
        let q = q.ok_or_else(|| Error::CapExceeded { what: "field order", value: (p as u64).saturating_pow(e), cap: FIELD_CAP as u64 })? as u32;
        if e == 1 {
            return Field::build(p, 1, vec![0, 1]);
        }
        let modulus = (0..q / p * p)
            .map(|low| {
                let mut m = digits(low, p, e);
                m.push(1);
                m
            })
            .find(|m| m[0] != 0 && is_irreducible_over_prime(m, p))
            .ok_or_else(|| Error::check(format!("no irreducible polynomial of degree {e} over GF({p})")))?;
        Field::build(p, e, modulus)
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Result<Field> {
        let q = p.pow(e);
        let order = q - 1;
        let elem = |x: u32| digits(x, p, e);
        // The generator is the least element whose order is q - 1.
        let mut exp = Vec::new();
        for cand in 1..q {
            let g = elem(cand);
            let mut pows = Vec::with_capacity(order as usize);
            let mut cur = elem(1);
            let mut primitive = true;
            for k in 0..order {
                if k > 0 && undigits(&cur, p) == 1 {
                    primitive = false;
                    break;
                }
                pows.push(undigits(&cur, p));
                cur = slow_mul(&cur, &g, &modulus, p);
            }
            if primitive && undigits(&cur, p) == 1 {
                exp = pows;
                break;
            }
        }
        if exp.len() != order as usize {
            return Err(Error::check(format!("GF({q}) has no primitive element; modulus not irreducible")));
        }
        let mut log = vec![0u32; q as usize];
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        let mut field = Field { p, e, q, modulus, exp: doubled, log, add_table: None, pow_p: Vec::new() };
        if p != 2 && q <= 256 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = Some(t);
        }
        field.pow_p = (0..q).map(|x| field.pow(x, p as u64)).collect();
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients over `GF(p)`, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_char2(&self) -> bool {
        self.p == 2
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a == 0 {
            return a;
        }
        let mut x = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero in GF({})", self.q);
        let l = self.log[a as usize];
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (k % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow_p[a as usize]
    }

    /// The generator used for the log tables.
    pub fn primitive(&self) -> Elem {
        self.exp[1.min(self.exp.len() - 1)]
    }

    /// `k mod p` in the prime subfield.
    pub fn from_int(&self, k: i64) -> Elem {
        k.rem_euclid(self.p as i64) as u32
    }

    /// Absolute trace to `GF(p)`, returned as an integer in `0..p`.
    pub fn trace(&self, a: Elem) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.e {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        debug_assert!(acc < self.p);
        acc
    }

    /// `a^{1/p}`, the inverse of the Frobenius.
    pub fn pth_root(&self, a: Elem) -> Elem {
        self.pow(a, (self.q / self.p) as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> u32 {
        assert!(a != 0);
        let n = self.q - 1;
        let l = self.log[a as usize];
        n / gcd(n, l)
    }

    /// Elements `λ` of `F_q^×` (`μ_{q-1}`).
    pub fn units(&self) -> impl Iterator<Item = Elem> {
        1..self.q
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A field embedding `F_q ↪ F_{q^k}` fixing the prime field.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub small: Arc<Field>,
    pub large: Arc<Field>,
    map: Vec<Elem>,
}

impl Embedding {
    pub fn new(small: Arc<Field>, large: Arc<Field>) -> Result<Self> {
        if small.p != large.p || large.e % small.e != 0 {
            return Err(Error::invalid(format!("GF({}) does not embed in GF({})", small.q, large.q)));
        }
        let m = &small.modulus;
        let root = (0..large.q)
            .find(|&x| {
                let v = m.iter().rev().fold(0, |acc, &c| large.add(large.mul(acc, x), c));
                v == 0
            })
            .ok_or_else(|| Error::check("modulus has no root in the extension"))?;
        let map = (0..small.q)
            .map(|x| {
                digits(x, small.p, small.e)
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| large.add(large.mul(acc, root), c))
            })
            .collect();
        Ok(Embedding { small, large, map })
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    /// Preimage of an element lying in the image.
    pub fn preimage(&self, y: Elem) -> Option<Elem> {
        self.map.iter().position(|&v| v == y).map(|i| i as Elem)
    }
}
