//! One function per subcommand, each returning a `Report`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use mckay::an::{build_an_table, check_kst_bound, AnTable};
use mckay::bounds::{constants_ledger, sest_exponent_check, sigma_sweep};
use mckay::classical::verify::{
    omega_identities, omega_identities_on, ratio_check, ratio_check_on, sp_exhaustive, Counterexample, RatioTarget,
    Source, VerifierReport,
};
use mckay::classical::{GroupElement, Kind, QuadraticSpace};
use mckay::gf::FqMatrix;
use mckay::harness::TableCache;
use mckay::mckay::{diameter_bound_sweep, mckay_row, product_cover_verifier, Family, McKayGraph, McKayRow, ProductPart, SupportCache};
use mckay::partitions::{near_staircase, staircase_degree_check, staircase_step_check};
use mckay::sn::{build_sn_table, SnTable};
use mckay::table::CompiledTable;
use mckay::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::report::Report;

/// Shared run settings.
pub struct Context {
    pub seed: u64,
    pub cache: Option<TableCache>,
    pub replay: Option<PathBuf>,
}

impl Context {
    fn sn(&self, n: u32) -> Result<SnTable> {
        match &self.cache {
            Some(c) => Ok(c.sn_table(n)?.0),
            None => build_sn_table(n),
        }
    }

    fn an(&self, n: u32) -> Result<AnTable> {
        match &self.cache {
            Some(c) => Ok(c.an_table(n)?.0),
            None => build_an_table(n),
        }
    }

    fn compiled(&self, family: Family, n: u32) -> Result<CompiledTable> {
        match family {
            Family::Symmetric => self.sn(n)?.compile(),
            Family::Alternating => self.an(n)?.compile(),
        }
    }

    fn no_replay(&self, command: &str) -> Result<()> {
        match self.replay {
            Some(_) => Err(Error::invalid(format!("{command} does not accept --replay"))),
            None => Ok(()),
        }
    }

    /// Matrices stored in a counterexample artifact, each checked to lie in
    /// the group of `kind`.
    fn replay_matrices(&self, kind: Kind, n: usize, q: u32) -> Result<Option<Vec<FqMatrix>>> {
        let Some(path) = &self.replay else { return Ok(None) };
        let artifact: Artifact = serde_json::from_slice(&std::fs::read(path)?)
            .map_err(|e| Error::invalid(format!("{} is not a counterexample artifact: {e}", path.display())))?;
        let list: Vec<Counterexample> = serde_json::from_value(artifact.counterexamples)
            .map_err(|e| Error::invalid(format!("{} holds no classical-group counterexamples: {e}", path.display())))?;
        let space = QuadraticSpace::new(kind, n, q)?;
        for c in &list {
            GroupElement::member(&space, c.matrix.clone()).map_err(|e| Error::invalid(format!("replayed element rejected: {e}")))?;
        }
        Ok(Some(list.into_iter().map(|c| c.matrix).collect()))
    }
}

/// Counterexample file written on failure and read back by `--replay`.
#[derive(Serialize, Deserialize)]
pub struct Artifact {
    pub command: String,
    pub parameters: Value,
    pub seed: u64,
    pub counterexamples: Value,
}

/// Inclusive integer range written `a..b` or `a..=b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    fn iter(self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let lo = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
        let hi = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum FamilyArg {
    S,
    A,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::S => Family::Symmetric,
            FamilyArg::A => Family::Alternating,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum KindArg {
    Sp,
    Plus,
    Minus,
    Odd,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Sp => Kind::Symplectic,
            KindArg::Plus => Kind::OrthogonalPlus,
            KindArg::Minus => Kind::OrthogonalMinus,
            KindArg::Odd => Kind::OrthogonalOdd,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum PartArg {
    /// Squared products of length 8n - 11.
    I,
    /// Unsquared products of length 24n - 33 with every entry repeated.
    Ii,
    Both,
}

impl PartArg {
    fn parts(self) -> Vec<ProductPart> {
        match self {
            PartArg::I => vec![ProductPart::Squared],
            PartArg::Ii => vec![ProductPart::Repeated],
            PartArg::Both => vec![ProductPart::Squared, ProductPart::Repeated],
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

#[derive(Args, Debug, Serialize)]
pub struct TableArgs {
    #[arg(long)]
    pub n: u32,
}

pub fn sn_table(ctx: &Context, a: &TableArgs) -> Result<Report> {
    ctx.no_replay("sn-table")?;
    let t = ctx.sn(a.n)?;
    t.validate()?;
    let id = t.identity_class();
    let rows = t.chars.iter().zip(&t.values).map(|(c, r)| vec![c.to_string(), r[id].to_string()]).collect();
    Ok(Report::new(to_value(&t)?, true)
        .summary(format!("S_{}: {} classes, orthogonality verified", a.n, t.classes.len()))
        .table(vec!["character", "degree"], rows))
}

pub fn an_table(ctx: &Context, a: &TableArgs) -> Result<Report> {
    ctx.no_replay("an-table")?;
    let t = ctx.an(a.n)?;
    t.validate()?;
    let rows = t.chars.iter().enumerate().map(|(i, c)| vec![c.to_string(), t.degree(i).to_string()]).collect();
    Ok(Report::new(to_value(&t)?, true)
        .summary(format!("A_{}: {} classes, orthogonality verified", a.n, t.classes.len()))
        .table(vec!["character", "degree"], rows))
}

#[derive(Args, Debug, Serialize)]
pub struct GraphArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: u32,
    /// Character label, e.g. `(3,2)` or `(2,2,1)+`; all nontrivial characters if omitted.
    #[arg(long)]
    pub alpha: Option<String>,
}

struct Graphs {
    table: CompiledTable,
    items: Vec<(usize, McKayGraph, McKayRow)>,
}

fn graphs(ctx: &Context, a: &GraphArgs) -> Result<Graphs> {
    let table = ctx.compiled(a.family.into(), a.n)?;
    let alphas: Vec<usize> = match &a.alpha {
        Some(label) => {
            let i = table
                .labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::invalid(format!("no character labelled {label}; labels: {}", table.labels.join(" "))))?;
            vec![i]
        }
        None => (0..table.len()).filter(|&i| i != table.trivial()).collect(),
    };
    let cache = SupportCache::build(&table)?;
    let items = alphas
        .into_iter()
        .map(|i| {
            let g = McKayGraph::from_cache(&cache, table.trivial(), i);
            let row = mckay_row(&table, a.n, &g);
            (i, g, row)
        })
        .collect();
    Ok(Graphs { table, items })
}

fn ratio(r: &McKayRow) -> String {
    r.log_ratio.map_or("-".into(), |x| format!("{x:.4}"))
}

pub fn mckay(ctx: &Context, a: &GraphArgs) -> Result<Report> {
    ctx.no_replay("mckay")?;
    let g = graphs(ctx, a)?;
    // finite diameter exactly for faithful characters
    let bad: Vec<&McKayRow> = g
        .items
        .iter()
        .filter(|(i, _, r)| g.table.is_faithful(*i) != r.diameter.is_finite())
        .map(|(_, _, r)| r)
        .collect();
    let rows: Vec<&McKayRow> = g.items.iter().map(|(_, _, r)| r).collect();
    let table = rows
        .iter()
        .map(|r| {
            vec![
                r.group.clone(),
                r.n.to_string(),
                r.alpha_label.clone(),
                r.alpha_degree.to_string(),
                r.diameter.to_string(),
                r.undirected_diameter.to_string(),
                r.covering_exponent.to_string(),
                ratio(r),
            ]
        })
        .collect();
    Ok(Report::new(to_value(&rows)?, bad.is_empty())
        .summary(format!("{}: {} graphs, finite diameter iff faithful: {}", g.table.group, rows.len(), yes(bad.is_empty())))
        .table(
            vec!["group", "n", "alpha_label", "alpha_degree", "diameter", "undirected_diameter", "covering_exponent", "log_ratio"],
            table,
        )
        .counterexamples(to_value(&bad)?))
}

#[derive(Serialize)]
struct CoveringRow {
    alpha_label: String,
    #[serde(with = "mckay::harness::decimal")]
    alpha_degree: num_bigint::BigUint,
    faithful: bool,
    covering_exponent: Option<u32>,
    /// Largest distance from the trivial character.
    trivial_eccentricity: Option<u32>,
    ok: bool,
}

pub fn covering(ctx: &Context, a: &GraphArgs) -> Result<Report> {
    ctx.no_replay("covering")?;
    let g = graphs(ctx, a)?;
    let rows: Vec<CoveringRow> = g
        .items
        .iter()
        .map(|(i, graph, r)| {
            let dist = graph.distances_from(graph.trivial);
            let ecc = dist.iter().try_fold(0u32, |m, d| d.map(|d| m.max(d)));
            let cov = r.covering_exponent.finite();
            let faithful = g.table.is_faithful(*i);
            // α^k ⊇ Irr(G) forces a walk of length k from 1 to every vertex
            let ok = match (cov, ecc) {
                (Some(k), Some(e)) => faithful && k >= e,
                (None, _) => !faithful,
                (Some(_), None) => false,
            };
            CoveringRow {
                alpha_label: r.alpha_label.clone(),
                alpha_degree: r.alpha_degree.clone(),
                faithful,
                covering_exponent: cov,
                trivial_eccentricity: ecc,
                ok,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.ok);
    let opt = |x: Option<u32>| x.map_or("inf".into(), |v| v.to_string());
    let table = rows
        .iter()
        .map(|r| {
            vec![
                r.alpha_label.clone(),
                r.alpha_degree.to_string(),
                yes(r.faithful),
                opt(r.covering_exponent),
                opt(r.trivial_eccentricity),
            ]
        })
        .collect();
    let bad: Vec<&CoveringRow> = rows.iter().filter(|r| !r.ok).collect();
    Ok(Report::new(to_value(&rows)?, pass)
        .summary(format!("{}: covering exponents of {} characters", g.table.group, rows.len()))
        .table(vec!["alpha_label", "alpha_degree", "faithful", "covering_exponent", "trivial_eccentricity"], table)
        .counterexamples(to_value(&bad)?))
}

#[derive(Args, Debug, Serialize)]
pub struct SweepArgs {
    /// Range of n on which the constant is fitted.
    #[arg(long, default_value = "5..10")]
    pub fit: Span,
    /// Range of n on which the fitted constant is asserted.
    #[arg(long, default_value = "11..12")]
    pub check: Span,
}

pub fn diameter_sweep(ctx: &Context, a: &SweepArgs) -> Result<Report> {
    ctx.no_replay("theorem2-sweep")?;
    let r = diameter_bound_sweep((a.fit.lo, a.fit.hi), (a.check.lo, a.check.hi))?;
    let rows = r
        .rows
        .iter()
        .map(|row| vec![row.group.clone(), row.alpha_label.clone(), row.alpha_degree.to_string(), row.diameter.to_string(), ratio(row)])
        .collect();
    let pass = r.pass && r.all_finite;
    Ok(Report::new(to_value(&r)?, pass)
        .summary(format!("fitted constant {}/100 on n in {}", r.c_hat_percent, a.fit))
        .summary(format!("all diameters finite: {}; violations on n in {}: {}", yes(r.all_finite), a.check, r.violations.len()))
        .table(vec!["group", "alpha_label", "alpha_degree", "diameter", "log_ratio"], rows)
        .counterexamples(to_value(&r.violations)?))
}

#[derive(Args, Debug, Serialize)]
pub struct ProductArgs {
    /// Group families to check.
    #[arg(long, value_enum, num_args = 1.., default_values = ["s", "a"])]
    pub family: Vec<FamilyArg>,
    #[arg(long, default_value = "5..9")]
    pub n: Span,
    #[arg(long, value_enum, default_value = "both")]
    pub part: PartArg,
    /// Seeded random tuples per group and part, on top of the constant tuples.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

pub fn product_covers(ctx: &Context, a: &ProductArgs) -> Result<Report> {
    ctx.no_replay("prop54")?;
    let mut reports = Vec::new();
    for n in a.n.iter() {
        for &f in &a.family {
            let table = ctx.compiled(f.into(), n)?;
            for part in a.part.parts() {
                reports.push(product_cover_verifier(&table, n, part, a.trials, ctx.seed.wrapping_add(n as u64))?);
            }
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.group.clone(),
                format!("{:?}", r.part).to_lowercase(),
                r.l.to_string(),
                (r.constant_tuples_checked + r.trials).to_string(),
                r.failures.len().to_string(),
            ]
        })
        .collect();
    let failures: Vec<Value> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| json!({"group": r.group, "part": r.part, "failures": r.failures}))
        .collect();
    Ok(Report::new(to_value(&reports)?, pass)
        .summary(format!("{} groups and parts checked", reports.len()))
        .table(vec!["group", "part", "l", "tuples", "failures"], rows)
        .counterexamples(Value::Array(failures)))
}

#[derive(Args, Debug, Serialize)]
pub struct StaircaseArgs {
    #[arg(long, default_value_t = 6)]
    pub m_min: u32,
    #[arg(long, default_value_t = 20)]
    pub m_max: u32,
}

pub fn staircase(ctx: &Context, a: &StaircaseArgs) -> Result<Report> {
    ctx.no_replay("staircase")?;
    if a.m_min < 1 || a.m_min > a.m_max {
        return Err(Error::invalid("need 1 <= m-min <= m-max"));
    }
    let rows = (a.m_min..=a.m_max).map(staircase_degree_check).collect::<Result<Vec<_>>>()?;
    let pass = rows.iter().all(|r| r.holds);
    let table = rows
        .iter()
        .map(|r| vec![r.m.to_string(), r.n.to_string(), r.dimension.to_string(), format!("{:.4}", r.exponent), yes(r.holds)])
        .collect();
    let bad: Vec<u32> = rows.iter().filter(|r| !r.holds).map(|r| r.m).collect();
    Ok(Report::new(to_value(&rows)?, pass)
        .summary("dim(staircase)^11 >= (n!)^5, exponent column is log dim / log n! against 5/11 = 0.4545")
        .table(vec!["m", "n", "dimension", "exponent", "holds"], table)
        .counterexamples(to_value(&bad)?))
}

#[derive(Args, Debug, Serialize)]
pub struct St1Args {
    #[arg(long, default_value = "3..40")]
    pub range: Span,
}

pub fn st1(ctx: &Context, a: &St1Args) -> Result<Report> {
    ctx.no_replay("st1")?;
    let rows: Vec<_> = a.range.iter().map(staircase_step_check).collect();
    let pass = rows.iter().all(|r| r.holds);
    let table = rows.iter().map(|r| vec![r.m.to_string(), format!("{:.4}", r.exponent), yes(r.holds)]).collect();
    let bad: Vec<u32> = rows.iter().filter(|r| !r.holds).map(|r| r.m).collect();
    Ok(Report::new(to_value(&rows)?, pass)
        .summary(format!("induction-step inequality for m in {}, exponent must exceed 11/6", a.range))
        .table(vec!["m", "exponent", "holds"], table)
        .counterexamples(to_value(&bad)?))
}

#[derive(Args, Debug, Serialize)]
pub struct MuArgs {
    #[arg(long, default_value = "13..60")]
    pub n: Span,
}

#[derive(Serialize)]
struct MuRow {
    n: u32,
    m: u32,
    mu: String,
    extensions: usize,
    self_conjugate: Vec<String>,
}

pub fn mu_check(ctx: &Context, a: &MuArgs) -> Result<Report> {
    ctx.no_replay("mu-check")?;
    let mut rows = Vec::new();
    for n in a.n.iter() {
        let c = near_staircase(n)?;
        if c.mu.n() != n - 1 {
            return Err(Error::check(format!("{} is not a partition of {}", c.mu, n - 1)));
        }
        let ext = c.mu.addable_nodes().into_iter().map(|node| c.mu.add_node(node)).collect::<Result<Vec<_>>>()?;
        let self_conjugate = ext.iter().filter(|p| p.is_self_conjugate()).map(|p| p.to_string()).collect();
        rows.push(MuRow { n, m: c.m, mu: c.mu.to_string(), extensions: ext.len(), self_conjugate });
    }
    let pass = rows.iter().all(|r| r.self_conjugate.is_empty());
    let table = rows
        .iter()
        .map(|r| vec![r.n.to_string(), r.m.to_string(), r.mu.clone(), r.extensions.to_string(), yes(r.self_conjugate.is_empty())])
        .collect();
    let bad: Vec<&MuRow> = rows.iter().filter(|r| !r.self_conjugate.is_empty()).collect();
    Ok(Report::new(to_value(&rows)?, pass)
        .summary("no one-box extension of μ is self-conjugate")
        .table(vec!["n", "m", "mu", "extensions", "none_self_conjugate"], table)
        .counterexamples(to_value(&bad)?))
}

#[derive(Args, Debug, Serialize)]
pub struct KstArgs {
    #[arg(long, default_value = "5..12")]
    pub n: Span,
}

pub fn kst_check(ctx: &Context, a: &KstArgs) -> Result<Report> {
    ctx.no_replay("kst-check")?;
    let reports = a.n.iter().map(|n| check_kst_bound(&ctx.an(n)?)).collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let mut table = Vec::new();
    let mut bad = Vec::new();
    for r in &reports {
        for row in &r.rows {
            table.push(vec![r.n.to_string(), row.label.clone(), row.degree.to_string(), yes(row.holds)]);
            if !row.holds {
                bad.push(json!({"n": r.n, "label": row.label}));
            }
        }
    }
    Ok(Report::new(to_value(&reports)?, pass)
        .summary("split characters of A_n have degree^4 >= 2^(n-5)")
        .table(vec!["n", "character", "degree", "holds"], table)
        .counterexamples(Value::Array(bad)))
}

fn verifier_report(r: &VerifierReport, data: Value) -> Report {
    let rows = r
        .checks
        .iter()
        .map(|c| {
            let mut note = Vec::new();
            if c.necessary_only {
                note.push("necessary only");
            }
            if c.informational {
                note.push("informational");
            }
            vec![c.name.clone(), c.checked.to_string(), c.violations.to_string(), note.join(", ")]
        })
        .collect();
    Report::new(data, r.passed())
        .summary(format!("{} on {}: {} elements ({:?}), {} violations", r.proposition, r.space, r.samples, r.mode, r.violations))
        .table(vec!["check", "checked", "violations", "note"], rows)
        .counterexamples(serde_json::to_value(&r.counterexamples).unwrap_or(Value::Null))
}

#[derive(Args, Debug, Serialize)]
pub struct SpArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u32,
}

pub fn sp_exhaustive_cmd(ctx: &Context, a: &SpArgs) -> Result<Report> {
    ctx.no_replay("sp-exhaustive")?;
    let r = sp_exhaustive(a.n, a.q)?;
    let ip: Vec<String> = r.inner_products.iter().map(|row| format!("{row:?}").replace('"', "")).collect();
    let pass = r.report.passed() && r.orthonormal();
    let mut report = verifier_report(&r.report, to_value(&r)?).summary(format!("inner products [ρ^i, ρ^j] = {}", ip.join(" ")));
    report.pass = pass;
    Ok(report)
}

#[derive(Args, Debug, Serialize)]
pub struct OmegaArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u32,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

pub fn omega_identities_cmd(ctx: &Context, a: &OmegaArgs) -> Result<Report> {
    let r = match ctx.replay_matrices(a.kind.into(), a.n, a.q)? {
        Some(ms) => omega_identities_on(a.kind.into(), a.n, a.q, Source::Given(&ms), ctx.seed)?,
        None => omega_identities(a.kind.into(), a.n, a.q, a.samples, ctx.seed)?,
    };
    Ok(verifier_report(&r, to_value(&r)?))
}

#[derive(Args, Debug, Serialize)]
pub struct RatioArgs {
    /// rat-sp2, rat-so21 or rat-sp-so22.
    #[arg(long)]
    pub target: String,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u32,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

pub fn ratio_check_cmd(ctx: &Context, a: &RatioArgs) -> Result<Report> {
    let target: RatioTarget = a.target.parse()?;
    let r = match ctx.replay_matrices(a.kind.into(), a.n, a.q)? {
        Some(ms) => ratio_check_on(target, a.kind.into(), a.n, a.q, Source::Given(&ms), ctx.seed)?,
        None => ratio_check(target, a.kind.into(), a.n, a.q, a.samples, ctx.seed)?,
    };
    Ok(verifier_report(&r, to_value(&r)?))
}

#[derive(Args, Debug, Serialize)]
pub struct SigmaArgs {
    #[arg(long, default_value = "10..100")]
    pub n: Span,
    #[arg(long, value_delimiter = ',', default_values_t = [3u32, 4, 5, 7, 8, 9])]
    pub q: Vec<u32>,
    /// 0 for symplectic, 1 for orthogonal groups.
    #[arg(long, default_value_t = 0)]
    pub v: u32,
}

pub fn sigma_bounds(ctx: &Context, a: &SigmaArgs) -> Result<Report> {
    ctx.no_replay("sigma-bounds")?;
    let ns: Vec<u32> = a.n.iter().collect();
    let reports = sigma_sweep(&ns, &a.q, a.v)?;
    let pass = reports.iter().all(|r| r.verdict);
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.params.n.to_string(),
                r.params.q.to_string(),
                r.params.l.to_string(),
                r.params.v.to_string(),
                r.sigma1.approx.clone(),
                r.sigma2.approx.clone(),
                yes(r.verdict),
            ]
        })
        .collect();
    let bad: Vec<Value> = reports.iter().filter(|r| !r.verdict).map(|r| json!({"n": r.params.n, "q": r.params.q, "sigma1": r.sigma1, "sigma2": r.sigma2})).collect();
    Ok(Report::new(to_value(&reports)?, pass)
        .summary(format!("Σ₁/|G|_p and Σ₂/|G|_p below 1/2 at l = 4n: {} of {} rows", reports.len() - bad.len(), reports.len()))
        .table(vec!["n", "q", "l", "v", "sigma1", "sigma2", "below_half"], rows)
        .counterexamples(Value::Array(bad)))
}

#[derive(Args, Debug, Serialize)]
pub struct SestArgs {
    #[arg(long, default_value = "4..30")]
    pub n: Span,
}

pub fn sest_check(ctx: &Context, a: &SestArgs) -> Result<Report> {
    ctx.no_replay("sest-check")?;
    let reports = a.n.iter().map(sest_exponent_check).collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.passed);
    let rows = reports
        .iter()
        .map(|r| vec![r.n.to_string(), r.shapes_checked.to_string(), r.equalities.to_string(), r.excesses.to_string(), yes(r.passed)])
        .collect();
    let bad: Vec<Value> = reports.iter().filter(|r| !r.passed).map(|r| json!({"n": r.n, "shapes": r.counterexamples})).collect();
    Ok(Report::new(to_value(&reports)?, pass)
        .summary("centralizer exponent D < n·d/4 over all shapes with d the largest eigenspace dimension")
        .table(vec!["n", "shapes", "equalities", "excesses", "passed"], rows)
        .counterexamples(Value::Array(bad)))
}

#[derive(Args, Debug, Serialize)]
pub struct NoArgs {}

pub fn constants(ctx: &Context, _: &NoArgs) -> Result<Report> {
    ctx.no_replay("constants")?;
    let l = constants_ledger();
    let rows = l.entries.iter().map(|e| vec![e.label.clone(), e.statement.clone(), e.lhs.clone(), e.rhs.clone(), yes(e.holds)]).collect();
    let bad: Vec<&str> = l.entries.iter().filter(|e| !e.holds).map(|e| e.label.as_str()).collect();
    let mut report = Report::new(to_value(&l)?, l.passed).table(vec!["label", "statement", "lhs", "rhs", "holds"], rows);
    for s in &l.symbolic {
        report = report.summary(s.clone());
    }
    Ok(report.counterexamples(to_value(&bad)?))
}
