//! Steinberg-multiplicity bounds for classical groups: the centralizer
//! exponent brute force, the `Σ₁/Σ₂` sums at `l = 4n` and the constant
//! bookkeeping behind the diameter bounds.
//!
//! Powers `q^{e/12}` are evaluated as certified rational enclosures built
//! from integer roots; no floating point is involved.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classical::Kind;
use crate::error::{Error, Result};
use crate::harness::decimal;

/// Bits of precision for the first enclosure attempt.
const START_BITS: u64 = 64;
/// Precision at which an undecided comparison is given up.
const MAX_BITS: u64 = 1 << 14;

/// A closed interval `[lo, hi]` of nonnegative rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn exact(x: BigRational) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::exact(BigRational::zero())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    /// Product of two enclosures of nonnegative numbers.
    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo * &other.lo, hi: &self.hi * &other.hi }
    }

    pub fn scale(&self, c: &BigRational) -> Enclosure {
        debug_assert!(!c.is_negative());
        Enclosure { lo: &self.lo * c, hi: &self.hi * c }
    }

    /// `Some(true)` if every point is `< x`, `Some(false)` if every point is
    /// `≥ x`, `None` if the interval straddles `x`.
    pub fn below(&self, x: &BigRational) -> Option<bool> {
        if &self.hi < x {
            Some(true)
        } else if &self.lo >= x {
            Some(false)
        } else {
            None
        }
    }

    /// Lower end to six decimals, for display only.
    pub fn approx(&self) -> String {
        let scaled: BigInt = (&self.lo * BigRational::from_integer(BigInt::from(1_000_000))).floor().to_integer();
        let million = BigInt::from(1_000_000);
        let (int, frac): (BigInt, BigInt) = (&scaled / &million, &scaled % &million);
        format!("{int}.{frac:06}")
    }
}

/// Enclosure of `base^{num/den}` of width about `base^{⌊num/den⌋} 2^{-bits}`.
pub fn power_enclosure(base: &BigUint, num: i64, den: u32, bits: u64) -> Enclosure {
    assert!(den > 0 && !base.is_zero());
    let whole = num.div_euclid(den as i64);
    let rem = num.rem_euclid(den as i64) as u32;
    let int_power = |e: i64| -> BigRational {
        let p = BigInt::from(base.pow(e.unsigned_abs() as u32));
        if e >= 0 {
            BigRational::from_integer(p)
        } else {
            BigRational::new(BigInt::one(), p)
        }
    };
    let factor = int_power(whole);
    if rem == 0 {
        return Enclosure::exact(factor);
    }
    let scaled = base.pow(rem) << (bits * den as u64);
    let root = scaled.nth_root(den);
    let denom = BigInt::one() << bits;
    let lo = BigRational::new(BigInt::from(root.clone()), denom.clone());
    let hi = if root.pow(den) == scaled {
        lo.clone()
    } else {
        BigRational::new(BigInt::from(root + 1u32), denom)
    };
    Enclosure { lo: lo * &factor, hi: hi * &factor }
}

/// A certified enclosure serialized as decimal-string rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "decimal")]
    pub lo: BigRational,
    #[serde(with = "decimal")]
    pub hi: BigRational,
    pub approx: String,
}

impl From<&Enclosure> for Interval {
    fn from(e: &Enclosure) -> Self {
        Interval { lo: e.lo.clone(), hi: e.hi.clone(), approx: e.approx() }
    }
}

/// Parameters of the Steinberg sums for `Cl_n(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    /// Dimension of the natural module.
    pub n: u32,
    pub q: u32,
    /// Power of the character.
    pub l: u32,
    /// 0 for symplectic, 1 for orthogonal groups.
    pub v: u32,
    /// Class-number constant.
    #[serde(with = "decimal")]
    pub c: BigRational,
    pub kind: Option<Kind>,
}

impl BoundParams {
    /// `l = 4n`, `c = 76/5`.
    pub fn new(n: u32, q: u32, v: u32) -> Result<Self> {
        if v > 1 {
            return Err(Error::invalid(format!("v must be 0 or 1, got {v}")));
        }
        if n < 10 {
            return Err(Error::invalid(format!("the sums need n ≥ 10, got {n}")));
        }
        if crate::gf::prime_power(q).is_none() {
            return Err(Error::invalid(format!("q = {q} is not a prime power")));
        }
        Ok(BoundParams { n, q, l: 4 * n, v, c: class_constant(), kind: None })
    }

    pub fn for_kind(kind: Kind, n: u32, q: u32) -> Result<Self> {
        let v = u32::from(kind.is_orthogonal());
        let mut p = Self::new(n, q, v)?;
        p.kind = Some(kind);
        Ok(p)
    }

    pub fn with_l(mut self, l: u32) -> Self {
        self.l = l;
        self
    }

    /// `12 ·` exponent of the bound on `|G|_p`.
    fn gp_exponent(&self) -> i64 {
        let (n, v) = (self.n as i64, self.v as i64);
        3 * n * n - 6 * v * (n - 1)
    }

    /// `12 ·` exponent of `q` in the `s`-th term of `Σ₁ / |G|_p`.
    pub fn sigma1_exponent(&self, s: u32) -> i64 {
        let (n, s, l, v) = (self.n as i64, s as i64, self.l as i64, self.v as i64);
        let classes = 6 * s * (2 * n - s + 1) + 6 * n;
        let ratio = -4 * l * s;
        let centralizer = 3 * ((n - s) * (n - s) + s * s) - 6 * v * (n - 1);
        classes + ratio + centralizer - self.gp_exponent()
    }

    /// `12 ·` exponent of `q` in the `s`-th term of `Σ₂ / |G|_p`.
    pub fn sigma2_exponent(&self, s: u32) -> i64 {
        let (n, s, l, v) = (self.n as i64, s as i64, self.l as i64, self.v as i64);
        let order = 6 * (n * n + n) - 12 * v * n;
        let ratio = -4 * l * s;
        let centralizer = 3 * (n * n - n * s);
        order + ratio + centralizer - self.gp_exponent()
    }

    /// `s` with `1 ≤ s < n/2`.
    pub fn small_supports(&self) -> impl Iterator<Item = u32> {
        1..self.n.div_ceil(2)
    }

    /// `s` with `n/2 ≤ s < n`.
    pub fn large_supports(&self) -> impl Iterator<Item = u32> {
        self.n.div_ceil(2)..self.n
    }

    fn sigma1(&self, bits: u64) -> Enclosure {
        let q = BigUint::from(self.q);
        self.small_supports()
            .map(|s| power_enclosure(&q, self.sigma1_exponent(s), 12, bits))
            .fold(Enclosure::zero(), |acc, t| acc.add(&t))
            .scale(&self.c)
    }

    fn sigma2(&self, bits: u64) -> Enclosure {
        let q = BigUint::from(self.q);
        self.large_supports()
            .map(|s| power_enclosure(&q, self.sigma2_exponent(s), 12, bits))
            .fold(Enclosure::zero(), |acc, t| acc.add(&t))
    }
}

/// `76/5`.
pub fn class_constant() -> BigRational {
    BigRational::new(BigInt::from(76), BigInt::from(5))
}

/// Refines `eval` until it is decided against `threshold`.
fn decide(eval: impl Fn(u64) -> Enclosure, threshold: &BigRational) -> (Enclosure, Option<bool>) {
    let mut bits = START_BITS;
    loop {
        let e = eval(bits);
        let verdict = e.below(threshold);
        if verdict.is_some() || e.is_exact() || bits >= MAX_BITS {
            return (e, verdict);
        }
        bits *= 2;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaReport {
    pub params: BoundParams,
    pub sigma1: Interval,
    pub sigma2: Interval,
    /// `None` when the enclosure could not be separated from `1/2`.
    pub sigma1_below_half: Option<bool>,
    pub sigma2_below_half: Option<bool>,
    /// Both ratios are certified `< 1/2`.
    pub verdict: bool,
}

/// `Σ₁/|G|_p` and `Σ₂/|G|_p` as certified enclosures, with the verdict
/// that both lie below `1/2`.
pub fn sigma_bounds(params: &BoundParams) -> SigmaReport {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let (s1, v1) = decide(|b| params.sigma1(b), &half);
    let (s2, v2) = decide(|b| params.sigma2(b), &half);
    SigmaReport {
        params: params.clone(),
        sigma1: Interval::from(&s1),
        sigma2: Interval::from(&s2),
        sigma1_below_half: v1,
        sigma2_below_half: v2,
        verdict: v1 == Some(true) && v2 == Some(true),
    }
}

/// Sweep of `sigma_bounds` at `l = 4n` over `ns × qs` for one `v`.
pub fn sigma_sweep(ns: &[u32], qs: &[u32], v: u32) -> Result<Vec<SigmaReport>> {
    use rayon::prelude::*;
    let grid: Vec<(u32, u32)> = qs.iter().flat_map(|&q| ns.iter().map(move |&n| (n, q))).collect();
    let params = grid.iter().map(|&(n, q)| BoundParams::new(n, q, v)).collect::<Result<Vec<_>>>()?;
    Ok(params.par_iter().map(sigma_bounds).collect())
}

/// Inputs to the product-of-characters Steinberg sums for `PSL^ε_n(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSumParams {
    pub n: u32,
    pub q: u32,
    /// Value of the caller-supplied character bound `f(n)`.
    #[serde(with = "decimal")]
    pub f_n: BigUint,
    /// Number of factors.
    pub m: u32,
    /// `∏ χ_i(1)`.
    #[serde(with = "decimal")]
    pub degree_product: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSumReport {
    pub params: ProductSumParams,
    pub delta1: Interval,
    pub delta2: Interval,
    /// `Δ₁ + Δ₂ < 1`, `None` if undecided.
    pub verdict: Option<bool>,
}

/// `c = 441/10` for the product sums.
pub fn product_constant() -> BigRational {
    BigRational::new(BigInt::from(441), BigInt::from(10))
}

/// `Δ₁ = c f^m Σ_{s<n/2} q^{ns+3n/2−1} P^{−s/n}` and
/// `Δ₂ = f^m Σ_{n/2≤s<n} q^{n²−n(s−1)/2−1} P^{−s/n}` with `P = ∏ χ_i(1)`.
pub fn product_sums(p: &ProductSumParams) -> Result<ProductSumReport> {
    if p.n < 2 || p.q < 2 || p.degree_product.is_zero() {
        return Err(Error::invalid("need n ≥ 2, q ≥ 2 and a positive degree product"));
    }
    let q = BigUint::from(p.q);
    let n = p.n as i64;
    let fm = BigRational::from_integer(BigInt::from(p.f_n.pow(p.m)));
    let term = |s: u32, half_exp: i64, bits: u64| {
        power_enclosure(&q, half_exp, 2, bits).mul(&power_enclosure(&p.degree_product, -(s as i64), p.n, bits))
    };
    let delta1 = |bits: u64| {
        (1..p.n.div_ceil(2))
            .map(|s| term(s, 2 * n * s as i64 + 3 * n - 2, bits))
            .fold(Enclosure::zero(), |a, t| a.add(&t))
            .scale(&(&fm * product_constant()))
    };
    let delta2 = |bits: u64| {
        (p.n.div_ceil(2)..p.n)
            .map(|s| term(s, 2 * n * n - n * (s as i64 - 1) - 2, bits))
            .fold(Enclosure::zero(), |a, t| a.add(&t))
            .scale(&fm)
    };
    let (total, verdict) = decide(|b| delta1(b).add(&delta2(b)), &BigRational::one());
    let bits = START_BITS.max(total.lo.denom().bits());
    Ok(ProductSumReport {
        params: p.clone(),
        delta1: Interval::from(&delta1(bits)),
        delta2: Interval::from(&delta2(bits)),
        verdict,
    })
}

/// Which eigenvalue owns the largest eigenspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EigenCase {
    /// `λ ≠ ±1`, eigenspace dimension `d₁`.
    General,
    /// `λ = ±1`, eigenspace dimension `a`.
    PlusMinusOne,
}

/// One centralizer shape `∏ GL_{d_i}(q^{k_i}) × Cl_a × Cl_b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerShape {
    pub case: EigenCase,
    /// `(k_i, d_i)`, `d_i` nonincreasing.
    pub blocks: Vec<(u32, u32)>,
    pub a: u32,
    pub b: u32,
    /// `4D = 2 Σ k_i d_i (d_i − 1) + a² + b²`.
    pub four_d: u64,
    /// `n` times the largest eigenspace dimension.
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentReport {
    pub n: u32,
    pub shapes_checked: u64,
    /// Shapes with `4D = n·d`.
    pub equalities: u64,
    /// Shapes with `4D > n·d`.
    pub excesses: u64,
    /// Up to 16 shapes where the strict inequality fails, excesses first.
    pub counterexamples: Vec<CentralizerShape>,
    /// Every shape satisfies `D < n·d/4`.
    pub passed: bool,
}

/// A multiset of `(k, d)` blocks summarized by what the exponent needs.
struct Blocks {
    pairs: Vec<(u32, u32)>,
    weight: u32,
    max_d: u32,
    /// `Σ k d (d − 1)`.
    gl_part: u64,
}

/// All multisets of `(k, d)` with `Σ k d ≤ cap`, pairs nonincreasing.
fn block_multisets(cap: u32) -> Vec<Blocks> {
    fn go(cap: u32, last: (u32, u32), cur: &mut Vec<(u32, u32)>, weight: u32, out: &mut Vec<Blocks>) {
        out.push(Blocks {
            pairs: cur.clone(),
            weight,
            max_d: cur.first().map_or(0, |p| p.1),
            gl_part: cur.iter().map(|&(k, d)| k as u64 * d as u64 * (d as u64 - 1)).sum(),
        });
        for d in (1..=last.1.min(cap - weight)).rev() {
            for k in 1..=(cap - weight) / d {
                // order by (d, k) descending
                if (d, k) > (last.1, last.0) {
                    continue;
                }
                cur.push((k, d));
                go(cap, (k, d), cur, weight + k * d, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(cap, (u32::MAX, u32::MAX), &mut Vec::new(), 0, &mut out);
    out
}

/// Brute force of `|C_G(g)|_p ≤ q^D` with `D < n(n−s)/4` over every
/// centralizer shape of a semisimple element of support `s ≥ n/2`.
pub fn sest_exponent_check(n: u32) -> Result<ExponentReport> {
    if !(4..=30).contains(&n) {
        return Err(Error::invalid(format!("need 4 ≤ n ≤ 30, got {n}")));
    }
    let multisets = block_multisets(n / 2);
    let mut report = ExponentReport { n, shapes_checked: 0, equalities: 0, excesses: 0, counterexamples: Vec::new(), passed: true };
    let mut equal_shapes = Vec::new();
    let mut visit = |case: EigenCase, blocks: &Blocks, a: u32, b: u32, top: u32| {
        let four_d = 2 * blocks.gl_part + (a * a + b * b) as u64;
        let bound = n as u64 * top as u64;
        report.shapes_checked += 1;
        if four_d < bound {
            return;
        }
        let shape = CentralizerShape { case, blocks: blocks.pairs.clone(), a, b, four_d, bound };
        if four_d == bound {
            report.equalities += 1;
            equal_shapes.push(shape);
        } else {
            report.excesses += 1;
            report.counterexamples.push(shape);
        }
    };
    for blocks in &multisets {
        let rest = n - 2 * blocks.weight;
        // λ ≠ ±1: d₁ = n − s ≤ n/2 and d₁ ≥ a ≥ b
        if blocks.max_d > 0 && 2 * blocks.max_d <= n {
            let d1 = blocks.max_d;
            for a in 0..=d1.min(rest) {
                let b = rest - a;
                if b <= a {
                    visit(EigenCase::General, blocks, a, b, d1);
                }
            }
        }
        // λ = ±1: a = n − s ≤ n/2, a ≥ d₁, a ≥ b
        for a in blocks.max_d.max(1)..=(n / 2).min(rest) {
            let b = rest - a;
            if b <= a {
                visit(EigenCase::PlusMinusOne, blocks, a, b, a);
            }
        }
    }
    report.counterexamples.extend(equal_shapes);
    report.counterexamples.truncate(16);
    report.passed = report.equalities == 0 && report.excesses == 0;
    Ok(report)
}

/// One arithmetic step of the constant bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub label: String,
    pub statement: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsLedger {
    pub entries: Vec<ConstantEntry>,
    pub symbolic: Vec<String>,
    pub passed: bool,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Constant propagation behind the diameter bounds, each step checked in
/// exact rational arithmetic. Coefficients of `n` stand for the linear
/// bounds `Cn`.
pub fn constants_ledger() -> ConstantsLedger {
    let mut entries = Vec::new();
    let mut push = |label: &str, statement: &str, lhs: BigRational, rhs: BigRational| {
        entries.push(ConstantEntry {
            label: label.into(),
            statement: statement.into(),
            holds: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    };
    let st_power = rat(4, 1);
    push("steinberg-power", "St ⊆ χ^{4n} for χ ∈ {α, β, γ_i}: l = 4n", st_power.clone(), rat(4, 1));
    let sp = rat(2, 1) * &st_power;
    push("symplectic-reduction", "χ^{2C} ⊇ St with C = 4n gives St ⊆ ψ^{8n}", sp.clone(), rat(8, 1));
    push("symplectic-diameter", "St² ⊇ Irr doubles 8n to 16n, so C = 16", rat(2, 1) * &sp, rat(16, 1));
    let om = rat(4, 1) * &st_power;
    push("orthogonal-reduction", "χ^{4C} ⊇ St with C = 4n gives St ⊆ ψ^{16n}", om.clone(), rat(16, 1));
    push("orthogonal-diameter", "St² ⊇ Irr doubles 16n to 32n, so C = 32", rat(2, 1) * &om, rat(32, 1));
    push("symplectic-doubling", "2 · 2 · 4n = 16n", rat(2 * 2 * 4, 1), rat(16, 1));
    push("orthogonal-doubling", "4 · 8n = 32n", rat(4 * 8, 1), rat(32, 1));
    push("product-length", "l ≥ 3 D r² with D = 163 gives 489 r²", rat(3 * 163, 1), rat(489, 1));
    push("class-constant", "c = 15.2 = 76/5", class_constant(), rat(152, 10));
    push("alternating-ratio", "5C₁²/(3C₁) = (5/3) C₁ at C₁ = 1", rat(5, 1) / rat(3, 1), rat(5, 3));
    push("alternating-gap", "(5/3 − 10/9) · 2 = 10/9 at C₁ = 1", (rat(5, 3) - rat(10, 9)) * rat(2, 1), rat(10, 9));
    push("alternating-degree", "1 / (2/5) = 5/2", rat(1, 1) / rat(2, 5), rat(5, 2));
    // Σ₁ exponent at l = 4n: s(n+1)/2 + n/2 − 4ns/3 = n(1 − 5s/3)/2 + s/2
    let grid_ok = (10..=100i64).all(|n| {
        (1..n).all(|s| {
            rat(s * (n + 1), 2) + rat(n, 2) - rat(4 * n * s, 3) == rat(n, 2) * (rat(1, 1) - rat(5 * s, 3)) + rat(s, 2)
        })
    });
    push(
        "sigma1-exponent",
        "s(n+1)/2 + n/2 − 4ns/3 = n(1 − 5s/3)/2 + s/2 for 10 ≤ n ≤ 100, 1 ≤ s < n",
        rat(i64::from(grid_ok), 1),
        rat(1, 1),
    );
    let passed = entries.iter().all(|e| e.holds);
    ConstantsLedger {
        entries,
        symbolic: vec![
            "alternating-group diameter constant C = 5 C₁² with C₁ ≥ 2 an unspecified absolute constant".into(),
            "f(n) and g(n) of the linear and unitary product bounds are caller-supplied".into(),
        ],
        passed,
    }
}

/// `n` of the reports whose verdict is false.
pub fn failing_ns(reports: &[SigmaReport]) -> Vec<u32> {
    reports.iter().filter(|r| !r.verdict).map(|r| r.params.n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn approx(e: &Interval) -> &str {
        &e.approx
    }

    #[test]
    fn enclosures_bracket_roots() {
        let two = BigUint::from(2u32);
        let e = power_enclosure(&two, 6, 12, 64);
        // √2 ∈ [lo, hi]
        let sq = |x: &BigRational| x * x;
        assert!(sq(&e.lo) <= rat(2, 1) && sq(&e.hi) >= rat(2, 1));
        assert!(&e.hi - &e.lo <= BigRational::new(BigInt::one(), BigInt::one() << 63));
        let e = power_enclosure(&BigUint::from(4u32), 6, 12, 64);
        assert!(e.is_exact());
        assert_eq!(e.lo, rat(2, 1));
        let e = power_enclosure(&BigUint::from(3u32), -13, 12, 64);
        assert!(e.lo < rat(1, 3) && e.hi > rat(1, 4));
        assert_eq!(power_enclosure(&BigUint::from(5u32), -24, 12, 8), Enclosure::exact(rat(1, 25)));
    }

    #[test]
    fn displayed_exponents_reduce() {
        for n in 10..=40u32 {
            for v in 0..=1 {
                let p = BoundParams::new(n, 3, v).unwrap();
                let (ni, vi) = (n as i64, v as i64);
                for s in p.small_supports() {
                    let s = s as i64;
                    assert_eq!(p.sigma1_exponent(s as u32), 6 * s * (ni + 1) + 6 * ni - 16 * ni * s);
                }
                for s in p.large_supports() {
                    let s = s as i64;
                    let want = 6 * (ni * ni + ni) - 3 * ni * s - 16 * ni * s - 6 * vi * (ni + 1);
                    assert_eq!(p.sigma2_exponent(s as u32), want);
                }
            }
        }
    }

    #[test]
    fn supports_split_at_half() {
        let p = BoundParams::new(11, 2, 0).unwrap();
        assert_eq!(p.small_supports().collect::<Vec<_>>(), (1..6).collect::<Vec<_>>());
        assert_eq!(p.large_supports().collect::<Vec<_>>(), (6..11).collect::<Vec<_>>());
        let p = BoundParams::new(10, 2, 0).unwrap();
        assert_eq!(p.small_supports().last(), Some(4));
        assert_eq!(p.large_supports().next(), Some(5));
    }

    #[test]
    fn sigma_values() {
        let r = sigma_bounds(&BoundParams::new(10, 2, 0).unwrap());
        assert!(!r.verdict);
        assert_eq!(r.sigma1_below_half, Some(false));
        assert_eq!(r.sigma2_below_half, Some(true));
        let r = sigma_bounds(&BoundParams::new(10, 3, 0).unwrap());
        assert_eq!(approx(&r.sigma1), "0.676206");
        assert!(!r.verdict);
        let r = sigma_bounds(&BoundParams::new(15, 2, 0).unwrap());
        assert!(!r.verdict);
        let r = sigma_bounds(&BoundParams::new(21, 2, 1).unwrap());
        assert!(r.verdict);
        let r = sigma_bounds(&BoundParams::new(10, 4, 0).unwrap());
        assert!(r.verdict);
    }

    #[test]
    fn crude_bound_failures() {
        let ns: Vec<u32> = (10..=40).collect();
        assert_eq!(failing_ns(&sigma_sweep(&ns, &[2], 0).unwrap()), (10..=16).collect::<Vec<_>>());
        assert_eq!(failing_ns(&sigma_sweep(&ns, &[3], 1).unwrap()), vec![10]);
        assert!(failing_ns(&sigma_sweep(&ns, &[4, 5, 7, 8, 9], 0).unwrap()).is_empty());
    }

    #[test]
    fn sigma_matches_high_precision_sum() {
        // direct sum of q^{e/12} with 4096-bit enclosures as the oracle
        let p = BoundParams::new(12, 3, 1).unwrap();
        let r = sigma_bounds(&p);
        let fine = p.sigma1(4096);
        assert!(r.sigma1.lo <= fine.lo && fine.hi <= r.sigma1.hi);
    }

    #[test]
    fn exponent_brute_force_small() {
        let r = sest_exponent_check(12).unwrap();
        assert!(r.shapes_checked > 100);
        assert_eq!(r.excesses, 0);
        // Cl_6 × Cl_6 with a = b = n/2 meets the bound exactly
        assert_eq!(r.equalities, 1);
        let eq = &r.counterexamples[0];
        assert_eq!((eq.case, eq.blocks.is_empty(), eq.a, eq.b), (EigenCase::PlusMinusOne, true, 6, 6));
        assert!(!r.passed);
        let r = sest_exponent_check(13).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn block_multisets_count() {
        // multisets of (k, d) with Σ kd = m: coefficients of ∏ (1 − x^j)^{−τ(j)}
        let all = block_multisets(6);
        let counts: Vec<usize> = (0..=6).map(|m| all.iter().filter(|b| b.weight == m).count()).collect();
        assert_eq!(counts, vec![1, 1, 3, 5, 11, 17, 34]);
    }

    #[test]
    fn ledger_holds() {
        let l = constants_ledger();
        assert!(l.passed);
        assert!(l.entries.iter().any(|e| e.label == "product-length" && e.lhs == "489"));
    }

    #[test]
    fn product_sums_small() {
        let p = ProductSumParams {
            n: 3,
            q: 7,
            f_n: BigUint::from(2u32),
            m: 10,
            degree_product: BigUint::from(10u32).pow(80),
        };
        let r = product_sums(&p).unwrap();
        assert_eq!(r.verdict, Some(true));
        let p = ProductSumParams { degree_product: BigUint::from(10u32), ..p };
        assert_eq!(product_sums(&p).unwrap().verdict, Some(false));
    }

    proptest! {
        #[test]
        fn monotone_in_l(n in 10u32..40, qi in 0usize..7, v in 0u32..2, l in 1u32..200, dl in 1u32..20) {
            let q = [2, 3, 4, 5, 7, 8, 9][qi];
            let base = BoundParams::new(n, q, v).unwrap();
            let a = sigma_bounds(&base.clone().with_l(l));
            let b = sigma_bounds(&base.with_l(l + dl));
            // the enclosures are exact up to the rounding of each root
            prop_assert!(b.sigma1.lo <= a.sigma1.hi);
            prop_assert!(b.sigma2.lo <= a.sigma2.hi);
            for s in BoundParams::new(n, q, v).unwrap().small_supports() {
                let (x, y) = (BoundParams::new(n, q, v).unwrap().with_l(l), BoundParams::new(n, q, v).unwrap().with_l(l + dl));
                prop_assert!(y.sigma1_exponent(s) < x.sigma1_exponent(s));
            }
        }
    }
}
