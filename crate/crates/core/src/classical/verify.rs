//! Verifiers: exhaustive and sampled checks of character identities and
//! ratio bounds on classical groups.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chars::{self, degrees, beta_formula, derived_constituents, ratio_bound_holds, to_i128, weil_values, EigenDims};
use super::counts::{point_counts, PointCounts};
use super::group::{generators, sample_one, GroupElement, WORD_LENGTH};
use super::space::{all_vectors, Kind, QuadraticSpace};
use crate::error::{Error, Result};
use crate::gf::matrix::FactorCache;
use crate::gf::{Elem, FqMatrix};
use crate::harness::decimal;

/// Counterexamples kept per report.
pub const COUNTEREXAMPLE_CAP: usize = 16;

/// Largest `|V|` for exhaustive enumeration of `Sp(V)`.
pub const EXHAUSTIVE_VECTOR_CAP: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Sampled,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
    /// Checks on sums of irreducible characters: a failure would refute the
    /// bound, a pass does not prove it for each summand.
    pub necessary_only: bool,
    /// Reported but not counted towards the verdict.
    pub informational: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub index: u64,
    pub matrix: FqMatrix,
    pub counts: Option<PointCounts>,
    pub values: BTreeMap<String, String>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifierReport {
    pub proposition: String,
    pub space: String,
    pub q: u32,
    pub n: usize,
    pub mode: Mode,
    pub samples: u64,
    pub violations: u64,
    pub counterexamples: Vec<Counterexample>,
    pub seed: u64,
    pub runtime_ms: u64,
    pub checks: Vec<CheckLine>,
    pub support_histogram: BTreeMap<usize, u64>,
}

impl VerifierReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckLine> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Per-worker accumulator, merged in a fixed order.
#[derive(Default)]
struct Tally {
    checks: BTreeMap<String, (u64, u64, bool, bool)>,
    counterexamples: Vec<Counterexample>,
    histogram: BTreeMap<usize, u64>,
    samples: u64,
}

impl Tally {
    fn record(&mut self, name: &str, ok: bool) {
        self.record_kind(name, ok, false, false);
    }

    fn record_kind(&mut self, name: &str, ok: bool, necessary_only: bool, informational: bool) {
        let e = self.checks.entry(name.to_string()).or_insert((0, 0, necessary_only, informational));
        e.0 += 1;
        if !ok {
            e.1 += 1;
        }
    }

    fn counterexample(&mut self, c: Counterexample) {
        if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
            self.counterexamples.push(c);
        }
    }

    fn merge(&mut self, other: Tally) {
        for (k, v) in other.checks {
            let e = self.checks.entry(k).or_insert((0, 0, v.2, v.3));
            e.0 += v.0;
            e.1 += v.1;
        }
        for c in other.counterexamples {
            self.counterexample(c);
        }
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_insert(0) += v;
        }
        self.samples += other.samples;
    }

    fn into_report(self, proposition: &str, space: &QuadraticSpace, mode: Mode, seed: u64, start: Instant) -> VerifierReport {
        let checks: Vec<CheckLine> = self
            .checks
            .into_iter()
            .map(|(name, (checked, violations, necessary_only, informational))| CheckLine {
                name,
                checked,
                violations,
                necessary_only,
                informational,
            })
            .collect();
        VerifierReport {
            proposition: proposition.to_string(),
            space: space.name(),
            q: space.q(),
            n: space.n(),
            mode,
            samples: self.samples,
            violations: checks.iter().filter(|c| !c.informational).map(|c| c.violations).sum(),
            counterexamples: self.counterexamples,
            seed,
            runtime_ms: start.elapsed().as_millis() as u64,
            checks,
            support_histogram: self.histogram,
        }
    }
}

fn values(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Result of the exhaustive sweep over `Sp_{2n}(q)`, `q` even.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpExhaustiveReport {
    pub report: VerifierReport,
    #[serde(with = "decimal")]
    pub order: BigUint,
    /// `Σ_g ρ^i(g) ρ^j(g)` for `i, j ∈ {1, 2}`.
    #[serde(with = "decimal::matrix")]
    pub gram_sums: Vec<Vec<BigInt>>,
    /// `[ρ^i, ρ^j]`, exact.
    #[serde(with = "decimal::matrix")]
    pub inner_products: Vec<Vec<BigInt>>,
}

impl SpExhaustiveReport {
    pub fn orthonormal(&self) -> bool {
        self.inner_products == vec![vec![BigInt::one(), BigInt::zero()], vec![BigInt::zero(), BigInt::one()]]
    }

    pub fn passed(&self) -> bool {
        self.report.passed() && self.orthonormal()
    }
}

struct SpSweep<'a> {
    space: &'a QuadraticSpace,
    vectors: Vec<Vec<Elem>>,
    deg: [BigInt; 2],
    cache: FactorCache,
    tally: Tally,
    sums: [i128; 3],
    next_index: u64,
}

impl SpSweep<'_> {
    fn visit(&mut self, g: FqMatrix) -> Result<()> {
        let index = self.next_index;
        self.next_index += 1;
        let space = self.space;
        let q = space.q();
        let counts = point_counts(space, &g)?;
        let s = g.support_with(&self.cache)?;
        *self.tally.histogram.entry(s).or_insert(0) += 1;
        self.tally.samples += 1;
        let (pp, pm) = (counts.pi_plus.unwrap_or(0), counts.pi_minus.unwrap_or(0));
        let fixed = (q as u64).pow(counts.fixed_dim as u32);
        let sum_ok = pp + pm == fixed;
        self.tally.record("forms-sum-to-fixed-vectors", sum_ok);
        let parity_ok = (counts.rho_all as i128 - 1 - (pp as i128 - pm as i128)).rem_euclid(2) == 0;
        self.tally.record("parity", parity_ok);
        if !(sum_ok && parity_ok) {
            self.tally.counterexample(Counterexample {
                check: if sum_ok { "parity" } else { "forms-sum-to-fixed-vectors" }.into(),
                index,
                matrix: g,
                counts: Some(counts),
                values: BTreeMap::new(),
                seed: 0,
            });
            return Ok(());
        }
        let (r1, r2) = weil_values(&counts)?;
        self.sums[0] += r1 * r1;
        self.sums[1] += r1 * r2;
        self.sums[2] += r2 * r2;
        for (i, r) in [r1, r2].into_iter().enumerate() {
            let name = if i == 0 { "ratio-rho1" } else { "ratio-rho2" };
            let ok = ratio_bound_holds(&BigInt::from(r), &self.deg[i], q, s);
            self.tally.record(name, ok);
            if !ok {
                self.tally.counterexample(Counterexample {
                    check: name.into(),
                    index,
                    matrix: g.clone(),
                    counts: Some(counts.clone()),
                    values: values(&[("value", r.to_string()), ("support", s.to_string())]),
                    seed: 0,
                });
            }
        }
        Ok(())
    }

    /// Extends the partial symplectic basis `chosen` in all possible ways.
    fn extend(&mut self, chosen: &mut Vec<(usize, usize)>) -> Result<()> {
        let n = self.space.n();
        if chosen.len() == n {
            let f = self.space.field().clone();
            let mut g = FqMatrix::zeros(f, 2 * n, 2 * n);
            for (i, &(e, fi)) in chosen.iter().enumerate() {
                for r in 0..2 * n {
                    g.set(r, i, self.vectors[e][r]);
                    g.set(r, n + i, self.vectors[fi][r]);
                }
            }
            return self.visit(g);
        }
        let space = self.space;
        let perp = |v: &[Elem], chosen: &[(usize, usize)], vectors: &[Vec<Elem>]| {
            chosen
                .iter()
                .all(|&(e, f)| space.bilinear(v, &vectors[e]) == 0 && space.bilinear(v, &vectors[f]) == 0)
        };
        let es: Vec<usize> = (1..self.vectors.len())
            .filter(|&i| perp(&self.vectors[i], chosen, &self.vectors))
            .collect();
        for e in es {
            let fs: Vec<usize> = (1..self.vectors.len())
                .filter(|&i| {
                    space.bilinear(&self.vectors[e], &self.vectors[i]) == 1 && perp(&self.vectors[i], chosen, &self.vectors)
                })
                .collect();
            for fi in fs {
                chosen.push((e, fi));
                self.extend(chosen)?;
                chosen.pop();
            }
        }
        Ok(())
    }
}

/// Every element of `Sp_{2n}(q)`, `q` even, as a symplectic basis: checks
/// `ρ − 1 ≡ π⁺ − π⁻ (mod 2)`, `π⁺ + π⁻ = q^{d(1,g)}`, the orthonormality of
/// `ρ¹, ρ²` and `|ρ^i(g)|/ρ^i(1) ≤ q^{−supp(g)/3}`. Work is split over the
/// choice of the first basis vector and merged in that order.
pub fn sp_exhaustive(n: usize, q: u32) -> Result<SpExhaustiveReport> {
    let start = Instant::now();
    let space = QuadraticSpace::new(Kind::Symplectic, n, q)?;
    if !space.field().is_char2() {
        return Err(Error::invalid("the exhaustive Weil sweep needs even q"));
    }
    let size = (q as u64).pow(2 * n as u32);
    if size > EXHAUSTIVE_VECTOR_CAP {
        return Err(Error::CapExceeded { what: "|V| for exhaustive enumeration", value: size, cap: EXHAUSTIVE_VECTOR_CAP });
    }
    let vectors = all_vectors(space.field(), 2 * n);
    let deg = [degrees::sp_rho1(n, q), degrees::sp_rho2(n, q)];
    let parts: Vec<Result<(Tally, [i128; 3])>> = (1..vectors.len())
        .into_par_iter()
        .map(|e1| {
            let mut sweep = SpSweep {
                space: &space,
                vectors: vectors.clone(),
                deg: deg.clone(),
                cache: FactorCache::new(0),
                tally: Tally::default(),
                sums: [0; 3],
                next_index: 0,
            };
            let fs: Vec<usize> = (1..vectors.len()).filter(|&i| space.bilinear(&vectors[e1], &vectors[i]) == 1).collect();
            for fi in fs {
                sweep.extend(&mut vec![(e1, fi)])?;
            }
            // indices are per task; make them global by task
            for c in &mut sweep.tally.counterexamples {
                c.index += (e1 as u64) << 32;
            }
            Ok((sweep.tally, sweep.sums))
        })
        .collect();
    let mut tally = Tally::default();
    let mut sums = [0i128; 3];
    for part in parts {
        let (t, s) = part?;
        tally.merge(t);
        for i in 0..3 {
            sums[i] += s[i];
        }
    }
    let order = space.group_order();
    if BigUint::from(tally.samples) != order {
        return Err(Error::check(format!("enumerated {} elements, expected {order}", tally.samples)));
    }
    let ord = BigInt::from(order.clone());
    let gram_sums = vec![
        vec![BigInt::from(sums[0]), BigInt::from(sums[1])],
        vec![BigInt::from(sums[1]), BigInt::from(sums[2])],
    ];
    let inner_products = gram_sums
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    if (s % &ord).is_zero() {
                        Ok(s / &ord)
                    } else {
                        Err(Error::Arithmetic(format!("inner product {s}/{ord} is not an integer")))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let report = tally.into_report("sp-weil-exhaustive", &space, Mode::Exhaustive, 0, start);
    Ok(SpExhaustiveReport { report, order, gram_sums, inner_products })
}

fn generators_with_inverses(space: &QuadraticSpace) -> Result<(Vec<GroupElement>, Vec<FqMatrix>)> {
    let gens = generators(space)?;
    let inverses = gens
        .iter()
        .map(|g| g.matrix.inverse().ok_or_else(|| Error::check("singular generator")))
        .collect::<Result<Vec<_>>>()?;
    Ok((gens, inverses))
}

/// Elements a sampled verifier runs on.
#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    /// `count` seeded random words in the generators.
    Seeded(usize),
    /// Given matrices, e.g. stored counterexamples; membership is
    /// re-certified.
    Given(&'a [FqMatrix]),
}

/// Runs `per_sample` on every element of `source` in parallel and merges
/// the tallies in element order.
fn sampled<F>(space: &QuadraticSpace, source: Source<'_>, seed: u64, per_sample: F) -> Result<Tally>
where
    F: Fn(&mut Tally, u64, &FqMatrix) -> Result<()> + Sync,
{
    let run = |i: u64, g: FqMatrix| -> Result<Tally> {
        let el = GroupElement::member(space, g)?;
        let mut t = Tally { samples: 1, ..Default::default() };
        per_sample(&mut t, i, &el.matrix)?;
        Ok(t)
    };
    let parts: Vec<Result<Tally>> = match source {
        Source::Seeded(count) => {
            let (gens, inverses) = generators_with_inverses(space)?;
            (0..count as u64)
                .into_par_iter()
                .map(|i| run(i, sample_one(space, &gens, &inverses, WORD_LENGTH, seed, i)))
                .collect()
        }
        Source::Given(elements) => elements.par_iter().enumerate().map(|(i, g)| run(i as u64, g.clone())).collect(),
    };
    let mut tally = Tally::default();
    for p in parts {
        tally.merge(p?);
    }
    Ok(tally)
}

fn ratio_check_value(
    t: &mut Tally,
    name: &str,
    value: i128,
    degree: &BigInt,
    q: u32,
    s: usize,
    ctx: (&FqMatrix, &PointCounts, u64, u64),
    necessary_only: bool,
    informational: bool,
) {
    let ok = ratio_bound_holds(&BigInt::from(value), degree, q, s);
    t.record_kind(name, ok, necessary_only, informational);
    if !ok && !informational {
        t.counterexample(Counterexample {
            check: name.into(),
            index: ctx.2,
            matrix: ctx.0.clone(),
            counts: Some(ctx.1.clone()),
            values: values(&[("value", value.to_string()), ("degree", degree.to_string()), ("support", s.to_string())]),
            seed: ctx.3,
        });
    }
}

/// Sampled check on `Ω^ε_{2n}(q)`, `q` even, of
/// (a) `ρ_Sp − 1 = 1 + α + 2β + Σγ + Σδ` and
/// (b) `π⁺ − π⁻ = ε(1 + α + Σγ − Σδ)`, with `β` from the eigenspace formula,
/// plus integrality of `β`, the ratio bound for `α` and `β`, and the degree
/// bookkeeping at the identity.
pub fn omega_identities(kind: Kind, n: usize, q: u32, count: usize, seed: u64) -> Result<VerifierReport> {
    omega_identities_on(kind, n, q, Source::Seeded(count), seed)
}

/// `omega_identities` on an explicit element source.
pub fn omega_identities_on(kind: Kind, n: usize, q: u32, source: Source<'_>, seed: u64) -> Result<VerifierReport> {
    let start = Instant::now();
    let eps = kind.epsilon().ok_or_else(|| Error::invalid("identities need an even-dimensional orthogonal kind"))?;
    let space = QuadraticSpace::new(kind, n, q)?;
    if !space.field().is_char2() {
        return Err(Error::invalid("the Sp/Omega identities need even q"));
    }
    let (alpha1, beta1) = (degrees::alpha(eps, n, q), degrees::beta(n, q));
    let half = BigInt::from(q / 2);
    let gamma1 = (&half - 1) * degrees::gamma(eps, n, q);
    let delta1 = &half * degrees::delta(eps, n, q);
    let cache = FactorCache::new(seed);
    let eval = |t: &mut Tally, index: u64, g: &FqMatrix| -> Result<()> {
        let counts = point_counts(&space, g)?;
        let s = g.support_with(&cache)?;
        *t.histogram.entry(s).or_insert(0) += 1;
        let beta = match EigenDims::of(&space, g).and_then(|d| beta_formula(&d)) {
            Ok(b) => {
                t.record("beta-integral", true);
                to_i128(&b)?
            }
            Err(Error::Arithmetic(msg)) => {
                t.record("beta-integral", false);
                t.counterexample(Counterexample {
                    check: "beta-integral".into(),
                    index,
                    matrix: g.clone(),
                    counts: Some(counts),
                    values: values(&[("error", msg)]),
                    seed,
                });
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        let c = derived_constituents(&counts, beta)?;
        let (pp, pm) = (counts.pi_plus.unwrap_or(0) as i128, counts.pi_minus.unwrap_or(0) as i128);
        let a_ok = counts.rho_all as i128 - 1 == 1 + c.alpha + 2 * c.beta + c.gamma_sum + c.delta_sum;
        let b_ok = pp - pm == eps as i128 * (1 + c.alpha + c.gamma_sum - c.delta_sum);
        let vals = || {
            values(&[
                ("alpha", c.alpha.to_string()),
                ("beta", c.beta.to_string()),
                ("gamma_sum", c.gamma_sum.to_string()),
                ("delta_sum", c.delta_sum.to_string()),
            ])
        };
        for (name, ok) in [("identity-a", a_ok), ("identity-b", b_ok)] {
            t.record(name, ok);
            if !ok {
                t.counterexample(Counterexample {
                    check: name.into(),
                    index,
                    matrix: g.clone(),
                    counts: Some(counts.clone()),
                    values: vals(),
                    seed,
                });
            }
        }
        let ctx = (g, &counts, index, seed);
        ratio_check_value(t, "ratio-alpha", c.alpha, &alpha1, q, s, ctx, false, false);
        ratio_check_value(t, "ratio-beta", c.beta, &beta1, q, s, ctx, false, false);
        if q > 2 {
            ratio_check_value(t, "ratio-gamma-sum", c.gamma_sum, &gamma1, q, s, ctx, true, false);
        }
        ratio_check_value(t, "ratio-delta-sum", c.delta_sum, &delta1, q, s, ctx, true, true);
        Ok(())
    };
    let mut tally = sampled(&space, source, seed, eval)?;
    // degree bookkeeping at the identity
    let id = FqMatrix::identity(space.field().clone(), space.dim());
    let counts = point_counts(&space, &id)?;
    let beta = to_i128(&chars::beta_value(&space, &id)?)?;
    let c = derived_constituents(&counts, beta)?;
    let got = [c.alpha, c.beta, c.gamma_sum, c.delta_sum].map(BigInt::from);
    let want = [alpha1, beta1, gamma1, delta1];
    tally.record("identity-degrees", got == want);
    if got != want {
        tally.counterexample(Counterexample {
            check: "identity-degrees".into(),
            index: u64::MAX,
            matrix: id,
            counts: Some(counts),
            values: values(&[("got", format!("{got:?}")), ("want", format!("{want:?}"))]),
            seed,
        });
    }
    Ok(tally.into_report("omega-identities", &space, Mode::Sampled, seed, start))
}

/// Which family of ratio bounds `|χ(g)|/χ(1) ≤ q^{−supp(g)/3}` to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioTarget {
    /// `ρ¹, ρ²` on `Sp_{2n}(q)`, `q` even, `n ≥ 3`.
    SymplecticWeil,
    /// `α, β` (and the aggregate `Σγ` for even `q`) on `Ω^±_{2n}(q)`, `n ≥ 5`.
    OrthogonalRank3,
    /// Odd `q`, `n ≥ 5`: `α, β` on `Ω^±_{2n}(q)`; the aggregate `α + β`
    /// on `Sp_{2n}(q)` and `Ω_{2n+1}(q)`.
    OddCharacteristic,
}

impl std::str::FromStr for RatioTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rat-sp2" | "symplectic-weil" => Ok(RatioTarget::SymplecticWeil),
            "rat-so21" | "orthogonal-rank3" => Ok(RatioTarget::OrthogonalRank3),
            "rat-sp-so22" | "odd-characteristic" => Ok(RatioTarget::OddCharacteristic),
            _ => Err(Error::invalid(format!("unknown ratio target {s:?}"))),
        }
    }
}

/// Sampled ratio-bound check.
pub fn ratio_check(target: RatioTarget, kind: Kind, n: usize, q: u32, count: usize, seed: u64) -> Result<VerifierReport> {
    ratio_check_on(target, kind, n, q, Source::Seeded(count), seed)
}

/// `ratio_check` on an explicit element source.
pub fn ratio_check_on(target: RatioTarget, kind: Kind, n: usize, q: u32, source: Source<'_>, seed: u64) -> Result<VerifierReport> {
    let start = Instant::now();
    let space = QuadraticSpace::new(kind, n, q)?;
    let even = space.field().is_char2();
    let valid = match target {
        RatioTarget::SymplecticWeil => kind == Kind::Symplectic && even && n >= 3,
        RatioTarget::OrthogonalRank3 => kind.epsilon().is_some() && n >= 5,
        RatioTarget::OddCharacteristic => !even && n >= 5,
    };
    if !valid {
        return Err(Error::invalid(format!("{target:?} does not apply to {}", space.name())));
    }
    let cache = FactorCache::new(seed);
    let half = BigInt::from(q / 2);
    let eval = |t: &mut Tally, index: u64, g: &FqMatrix| -> Result<()> {
        let counts = point_counts(&space, g)?;
        let s = g.support_with(&cache)?;
        *t.histogram.entry(s).or_insert(0) += 1;
        let ctx = (g, &counts, index, seed);
        match (target, kind) {
            (RatioTarget::SymplecticWeil, _) => {
                let (r1, r2) = weil_values(&counts)?;
                ratio_check_value(t, "ratio-rho1", r1, &degrees::sp_rho1(n, q), q, s, ctx, false, false);
                ratio_check_value(t, "ratio-rho2", r2, &degrees::sp_rho2(n, q), q, s, ctx, false, false);
            }
            (_, Kind::OrthogonalPlus | Kind::OrthogonalMinus) => {
                let eps = kind.epsilon().expect("even orthogonal");
                let beta = to_i128(&chars::beta_value(&space, g)?)?;
                let alpha = counts.rho as i128 - 1 - beta;
                ratio_check_value(t, "ratio-alpha", alpha, &degrees::alpha(eps, n, q), q, s, ctx, false, false);
                ratio_check_value(t, "ratio-beta", beta, &degrees::beta(n, q), q, s, ctx, false, false);
                if even && q > 2 {
                    let c = derived_constituents(&counts, beta)?;
                    let deg = (&half - 1) * degrees::gamma(eps, n, q);
                    ratio_check_value(t, "ratio-gamma-sum", c.gamma_sum, &deg, q, s, ctx, true, false);
                }
            }
            (_, Kind::Symplectic | Kind::OrthogonalOdd) => {
                // all 1-spaces of V_{2n}, or singular 1-spaces of V_{2n+1}: (q^{2n} − 1)/(q − 1) either way
                let rho1 = (BigInt::from(q).pow(2 * n as u32) - 1) / BigInt::from(q - 1);
                ratio_check_value(t, "ratio-alpha-plus-beta", counts.rho as i128 - 1, &(rho1 - 1), q, s, ctx, true, false);
            }
        }
        Ok(())
    };
    let label = match target {
        RatioTarget::SymplecticWeil => "ratio-symplectic-weil",
        RatioTarget::OrthogonalRank3 => "ratio-orthogonal-rank3",
        RatioTarget::OddCharacteristic => "ratio-odd-characteristic",
    };
    let tally = sampled(&space, source, seed, eval)?;
    Ok(tally.into_report(label, &space, Mode::Sampled, seed, start))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub name: String,
    pub n: usize,
    pub q: u32,
    pub eps: i64,
    #[serde(with = "decimal")]
    pub lhs: BigInt,
    #[serde(with = "decimal")]
    pub rhs: BigInt,
    pub ok: bool,
}

/// Exact degree identities for `n` in `ns` and `q` in `qs`, `ε = ±`:
/// the rank-3 sum with `β(1)` from the eigenspace formula at the identity,
/// the permutation degrees on singular vectors and on `Q = 1` vectors
/// (even `q`), the restriction degrees from `Sp_{2n}(q)`, and the
/// form-count degrees `q^n(q^n ± 1)/2` (even `q`).
pub fn degree_suite(ns: impl IntoIterator<Item = usize>, qs: &[u32]) -> Result<Vec<DegreeCheck>> {
    let mut out = Vec::new();
    for n in ns {
        for &q in qs {
            let even = q % 2 == 0;
            let beta = beta_formula(&EigenDims::identity(q, 2 * n)?)?;
            let half = BigInt::from(q / 2);
            let qn = BigInt::from(q).pow(n as u32);
            let mut push = |name: &str, eps: i64, lhs: BigInt, rhs: BigInt| {
                let ok = lhs == rhs;
                out.push(DegreeCheck { name: name.into(), n, q, eps, lhs, rhs, ok });
            };
            push("beta-identity-value", 0, beta.clone(), degrees::beta(n, q));
            for eps in [1i64, -1] {
                let alpha = degrees::alpha(eps, n, q);
                push("rank3-sum", eps, 1 + &alpha + &beta, degrees::rank3(eps, n, q));
                if !even {
                    continue;
                }
                let gamma = (&half - 1) * degrees::gamma(eps, n, q);
                let delta = &half * degrees::delta(eps, n, q);
                push("singular-vector-permutation", eps, 1 + &alpha + &beta + 2 * &gamma, degrees::singular_vectors(eps, n, q));
                push("unit-vector-permutation", eps, 1 + &beta + &gamma + &delta, degrees::unit_vectors(eps, n, q));
                let (r1, r2) = (degrees::sp_rho1(n, q), degrees::sp_rho2(n, q));
                let (a_n, b_n) = (degrees::sp_alpha(n, q), degrees::sp_beta(n, q));
                let small: BigInt = &beta + &delta;
                let big: BigInt = 1 + &alpha + &beta + &gamma;
                let (lin1, lin2) = if eps == 1 { (small.clone(), big.clone()) } else { (big.clone(), small.clone()) };
                push("restrict-rho1", eps, r1.clone(), lin1);
                push("restrict-rho2", eps, r2.clone(), lin2);
                let (un1, un2) = if eps == 1 { (delta.clone(), 1 + &alpha + &gamma) } else { (1 + &alpha + &gamma, delta.clone()) };
                push("restrict-alpha-n", eps, a_n.clone(), un1);
                push("restrict-beta-n", eps, b_n.clone(), un2);
                push("beta-from-weil-difference", eps, r1 + r2 - a_n - b_n, 2 * &beta);
            }
            if even {
                let tau = (&half - 1) * degrees::sp_tau(n, q);
                let zeta = &half * degrees::sp_zeta(n, q);
                push("plus-forms", 1, &qn * (&qn + 1) / 2, 1 + degrees::sp_rho2(n, q) + &tau);
                push("minus-forms", -1, &qn * (&qn - 1) / 2, 1 + degrees::sp_rho1(n, q) + &tau);
                push("plus-forms-unitary", 1, &qn * (&qn + 1) / 2, degrees::sp_beta(n, q) + &zeta);
                push("minus-forms-unitary", -1, &qn * (&qn - 1) / 2, degrees::sp_alpha(n, q) + &zeta);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sp4_2_weil_characters_are_orthonormal() {
        let r = sp_exhaustive(2, 2).unwrap();
        assert_eq!(r.order, BigUint::from(720u32));
        assert!(r.orthonormal(), "{:?}", r.inner_products);
        assert_eq!(r.report.check("parity").unwrap().violations, 0);
        assert_eq!(r.report.check("forms-sum-to-fixed-vectors").unwrap().violations, 0);
    }

    #[test]
    fn sp4_4_weil_characters_are_orthonormal() {
        let r = sp_exhaustive(2, 4).unwrap();
        assert_eq!(r.report.samples, 979_200);
        assert!(r.orthonormal(), "{:?}", r.inner_products);
    }

    #[test]
    fn small_omega_identities() {
        for kind in [Kind::OrthogonalPlus, Kind::OrthogonalMinus] {
            let r = omega_identities(kind, 5, 2, 40, 1).unwrap();
            assert!(r.passed(), "{r:#?}");
            assert_eq!(r.check("identity-a").unwrap().checked, 40);
        }
    }

    #[test]
    fn replay_matches_sampled_run() {
        let space = QuadraticSpace::new(Kind::OrthogonalMinus, 5, 2).unwrap();
        let elements: Vec<FqMatrix> = crate::classical::sample(&space, 6, WORD_LENGTH, 3)
            .unwrap()
            .into_iter()
            .map(|g| g.matrix)
            .collect();
        let a = omega_identities(Kind::OrthogonalMinus, 5, 2, 6, 3).unwrap();
        let b = omega_identities_on(Kind::OrthogonalMinus, 5, 2, Source::Given(&elements), 3).unwrap();
        assert_eq!((a.checks, a.support_histogram), (b.checks, b.support_histogram));
        let bad = FqMatrix::scalar(space.field().clone(), 10, 1);
        let mut not_member = bad.clone();
        not_member.set(0, 1, 1);
        assert!(omega_identities_on(Kind::OrthogonalMinus, 5, 2, Source::Given(&[not_member]), 0).is_err());
    }

    #[test]
    fn degree_suite_small() {
        let checks = degree_suite(5..=6, &[2, 3, 4]).unwrap();
        let bad: Vec<_> = checks.iter().filter(|c| !c.ok).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn odd_ratio_targets() {
        let r = ratio_check(RatioTarget::OddCharacteristic, Kind::OrthogonalPlus, 5, 3, 20, 4).unwrap();
        assert!(r.passed(), "{r:#?}");
        let r = ratio_check(RatioTarget::OddCharacteristic, Kind::Symplectic, 5, 3, 20, 4).unwrap();
        assert!(r.check("ratio-alpha-plus-beta").unwrap().necessary_only);
        assert!(ratio_check(RatioTarget::SymplecticWeil, Kind::Symplectic, 5, 3, 1, 0).is_err());
    }
}
