//! McKay graphs, distances, covering exponents and product supports.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::an::build_an_table;
use crate::error::{Error, Result};
use crate::partitions::log10_big;
use crate::sn::build_sn_table;
use crate::table::{CharSupport, CompiledTable};

/// A nonnegative integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    Finite(u32),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<u32> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_u32(*v),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `supp(χ_i χ_j)` for every pair of irreducibles.
#[derive(Clone, Debug)]
pub struct SupportCache {
    rows: Vec<Vec<CharSupport>>,
}

impl SupportCache {
    pub fn build(table: &CompiledTable) -> Result<Self> {
        let n = table.len();
        let upper: Vec<Vec<CharSupport>> = (0..n)
            .into_par_iter()
            .map(|i| (i..n).map(|j| table.product_support(i, j)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i <= j { upper[i][j - i].clone() } else { upper[j][i - j].clone() })
                    .collect()
            })
            .collect();
        Ok(SupportCache { rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &CharSupport {
        &self.rows[i][j]
    }

    /// `supp(A · χ)` from `supp(A)`.
    pub fn step(&self, support: &CharSupport, chi: usize) -> CharSupport {
        let mut out = CharSupport::empty(self.len());
        for psi in support.iter() {
            out.union_with(&self.rows[psi][chi]);
        }
        out
    }
}

/// Directed McKay graph: `χ₁ → χ₂` iff `χ₂` is a constituent of `αχ₁`.
#[derive(Clone, Debug)]
pub struct McKayGraph {
    pub alpha: usize,
    pub trivial: usize,
    adjacency: Vec<CharSupport>,
}

impl McKayGraph {
    pub fn build(table: &CompiledTable, alpha: usize) -> Result<Self> {
        if alpha >= table.len() {
            return Err(Error::invalid(format!("character index {alpha} out of range")));
        }
        let adjacency = (0..table.len())
            .into_par_iter()
            .map(|chi| table.product_support(alpha, chi))
            .collect::<Result<_>>()?;
        Ok(McKayGraph { alpha, trivial: table.trivial(), adjacency })
    }

    pub fn from_cache(cache: &SupportCache, trivial: usize, alpha: usize) -> Self {
        let adjacency = (0..cache.len()).map(|chi| cache.get(alpha, chi).clone()).collect();
        McKayGraph { alpha, trivial, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        self.adjacency[v].iter().collect()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.adjacency[from].contains(to)
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<u32>> {
        bfs(self.vertex_count(), src, |v| self.adjacency[v].iter().collect())
    }

    /// Maximum directed distance over ordered pairs.
    pub fn diameter(&self) -> Extended {
        let n = self.vertex_count();
        let ecc: Vec<Extended> = (0..n).into_par_iter().map(|s| eccentricity(&self.distances_from(s))).collect();
        ecc.into_iter().max().unwrap_or(Extended::Finite(0))
    }

    /// Diameter of the underlying undirected graph.
    pub fn undirected_diameter(&self) -> Extended {
        let n = self.vertex_count();
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for u in 0..n {
            for v in self.adjacency[u].iter() {
                nbrs[u].push(v);
                nbrs[v].push(u);
            }
        }
        (0..n)
            .map(|s| eccentricity(&bfs(n, s, |v| nbrs[v].clone())))
            .max()
            .unwrap_or(Extended::Finite(0))
    }

    /// Least `k` with `supp(α^k) = Irr(G)`, by iterating the support
    /// closure from the trivial character; infinite if the closure cycles
    /// without covering.
    pub fn covering_exponent(&self) -> Extended {
        let n = self.vertex_count();
        let mut current = CharSupport::singleton(n, self.trivial);
        let mut seen = HashSet::new();
        let mut k = 0u32;
        loop {
            if current.is_full() {
                return Extended::Finite(k);
            }
            if !seen.insert(current.clone()) {
                return Extended::Infinite;
            }
            let mut next = CharSupport::empty(n);
            for psi in current.iter() {
                next.union_with(&self.adjacency[psi]);
            }
            current = next;
            k += 1;
        }
    }

    /// The graph with every edge reversed.
    pub fn reversed(&self) -> McKayGraph {
        let n = self.vertex_count();
        let mut adjacency = vec![CharSupport::empty(n); n];
        for u in 0..n {
            for v in self.adjacency[u].iter() {
                adjacency[v].insert(u);
            }
        }
        McKayGraph { alpha: self.alpha, trivial: self.trivial, adjacency }
    }

    pub fn same_edges(&self, other: &McKayGraph) -> bool {
        self.adjacency == other.adjacency
    }
}

fn bfs(n: usize, src: usize, nbrs: impl Fn(usize) -> Vec<usize>) -> Vec<Option<u32>> {
    let mut dist = vec![None; n];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("queued vertices have a distance");
        for v in nbrs(u) {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

fn eccentricity(dist: &[Option<u32>]) -> Extended {
    dist.iter()
        .map(|d| d.map_or(Extended::Infinite, Extended::Finite))
        .max()
        .unwrap_or(Extended::Finite(0))
}

/// `supp(χ_{l_1} ⋯ χ_{l_k})`, folded left to right. Exact because all
/// multiplicities are nonnegative.
pub fn product_support(cache: &SupportCache, list: &[usize]) -> Result<CharSupport> {
    let (&first, rest) = list.split_first().ok_or_else(|| Error::invalid("empty product"))?;
    if list.iter().any(|&i| i >= cache.len()) {
        return Err(Error::invalid("character index out of range"));
    }
    let mut s = CharSupport::singleton(cache.len(), first);
    for &chi in rest {
        s = cache.step(&s, chi);
    }
    Ok(s)
}

/// Which group family a sweep runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    #[serde(rename = "S")]
    Symmetric,
    #[serde(rename = "A")]
    Alternating,
}

impl Family {
    pub fn compiled(self, n: u32) -> Result<CompiledTable> {
        match self {
            Family::Symmetric => build_sn_table(n)?.compile(),
            Family::Alternating => build_an_table(n)?.compile(),
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Family::Symmetric => "S",
            Family::Alternating => "A",
        }
    }
}

/// One McKay graph summary, in the stable report column order.
#[derive(Clone, Debug, Serialize)]
pub struct McKayRow {
    pub group: String,
    pub n: u32,
    pub alpha_label: String,
    #[serde(with = "crate::harness::decimal")]
    pub alpha_degree: BigUint,
    pub diameter: Extended,
    pub undirected_diameter: Extended,
    pub covering_exponent: Extended,
    /// `diameter · log α(1) / log |G|`, display only.
    pub log_ratio: Option<f64>,
}

pub fn mckay_row(table: &CompiledTable, n: u32, graph: &McKayGraph) -> McKayRow {
    let degree = table.degree(graph.alpha).clone();
    let diameter = graph.diameter();
    let log_ratio = diameter
        .finite()
        .filter(|_| degree > BigUint::from(1u32))
        .map(|d| d as f64 * log10_big(&degree) / log10_big(&table.order));
    McKayRow {
        group: table.group.clone(),
        n,
        alpha_label: table.labels[graph.alpha].clone(),
        alpha_degree: degree,
        diameter,
        undirected_diameter: graph.undirected_diameter(),
        covering_exponent: graph.covering_exponent(),
        log_ratio,
    }
}

/// Every nontrivial character of `A_n`, with its graph summary.
pub fn alternating_rows(n: u32) -> Result<Vec<McKayRow>> {
    let table = Family::Alternating.compiled(n)?;
    let cache = SupportCache::build(&table)?;
    Ok((0..table.len())
        .filter(|&a| a != table.trivial())
        .map(|a| mckay_row(&table, n, &McKayGraph::from_cache(&cache, table.trivial(), a)))
        .collect())
}

/// Least integer `p` with `deg^{100·diam} <= order^p`.
pub fn min_percent_exponent(degree: &BigUint, diameter: u32, order: &BigUint) -> u32 {
    let lhs = degree.pow(100 * diameter);
    let estimate = (100.0 * diameter as f64 * log10_big(degree) / log10_big(order)).floor() as u32;
    let mut p = estimate.saturating_sub(2);
    while order.pow(p) < lhs {
        p += 1;
    }
    while p > 0 && order.pow(p - 1) >= lhs {
        p -= 1;
    }
    p
}

#[derive(Clone, Debug, Serialize)]
pub struct DiameterBoundReport {
    pub rows: Vec<McKayRow>,
    /// Fitted constant as a percentage: `Ĉ = c_hat_percent / 100`.
    pub c_hat_percent: u32,
    pub fit_range: (u32, u32),
    pub check_range: (u32, u32),
    pub all_finite: bool,
    /// Rows of the check range violating `deg^{diam} <= |G|^Ĉ`.
    pub violations: Vec<String>,
    pub pass: bool,
}

/// Two-phase sweep: fit the smallest `Ĉ ∈ ℤ/100` with
/// `diam <= Ĉ log|A_n| / log α(1)` on `fit_range`, then check it on
/// `check_range`. Comparisons are exact integer powers.
pub fn diameter_bound_sweep(fit_range: (u32, u32), check_range: (u32, u32)) -> Result<DiameterBoundReport> {
    if fit_range.0 < 5 || check_range.1 > 12 || fit_range.1 >= check_range.0 {
        return Err(Error::invalid("sweep ranges must satisfy 5 <= fit < check <= 12"));
    }
    let mut rows = Vec::new();
    for n in fit_range.0..=check_range.1 {
        rows.extend(alternating_rows(n)?);
    }
    let order = |n: u32| crate::partitions::factorial(n) / 2u32;
    let all_finite = rows.iter().all(|r| r.diameter.is_finite());
    let mut c_hat = 0;
    for r in rows.iter().filter(|r| r.n <= fit_range.1) {
        if let Some(d) = r.diameter.finite() {
            c_hat = c_hat.max(min_percent_exponent(&r.alpha_degree, d, &order(r.n)));
        }
    }
    let violations: Vec<String> = rows
        .iter()
        .filter(|r| r.n >= check_range.0)
        .filter(|r| match r.diameter.finite() {
            Some(d) => r.alpha_degree.pow(100 * d) > order(r.n).pow(c_hat),
            None => true,
        })
        .map(|r| format!("A{} {} diam {}", r.n, r.alpha_label, r.diameter))
        .collect();
    let pass = all_finite && violations.is_empty();
    Ok(DiameterBoundReport { rows, c_hat_percent: c_hat, fit_range, check_range, all_finite, violations, pass })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProductPart {
    /// Squared products of length `8n - 11`.
    Squared,
    /// Unsquared products of length `24n - 33`, every entry repeated.
    Repeated,
}

impl ProductPart {
    pub fn length(self, n: u32) -> usize {
        match self {
            ProductPart::Squared => (8 * n - 11) as usize,
            ProductPart::Repeated => (24 * n - 33) as usize,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductCoverReport {
    pub group: String,
    pub n: u32,
    pub part: ProductPart,
    pub l: usize,
    pub trials: usize,
    pub seed: u64,
    pub constant_tuples_checked: usize,
    /// Tuples (as character labels) whose product failed to cover.
    pub failures: Vec<Vec<String>>,
    pub pass: bool,
}

/// Checks that the tuple meets the degree and repetition preconditions and
/// returns whether its (squared, for part i) product covers `Irr(G)`.
pub fn tuple_covers(table: &CompiledTable, cache: &SupportCache, tuple: &[usize], part: ProductPart) -> Result<bool> {
    if tuple.iter().any(|&i| i >= table.len() || *table.degree(i) <= BigUint::from(1u32)) {
        return Err(Error::invalid("every entry must have degree > 1"));
    }
    let support = match part {
        ProductPart::Squared => {
            let doubled: Vec<usize> = tuple.iter().chain(tuple).copied().collect();
            product_support(cache, &doubled)?
        }
        ProductPart::Repeated => {
            if tuple.iter().any(|x| tuple.iter().filter(|y| *y == x).count() < 2) {
                return Err(Error::invalid("every entry must repeat at least twice"));
            }
            product_support(cache, tuple)?
        }
    };
    Ok(support.is_full())
}

fn random_tuple(rng: &mut ChaCha8Rng, eligible: &[usize], l: usize, part: ProductPart) -> Vec<usize> {
    match part {
        ProductPart::Squared => (0..l).map(|_| eligible[rng.random_range(0..eligible.len())]).collect(),
        ProductPart::Repeated => {
            let mut t = Vec::with_capacity(l);
            for _ in 0..l / 2 {
                let x = eligible[rng.random_range(0..eligible.len())];
                t.push(x);
                t.push(x);
            }
            if l % 2 == 1 {
                let x = t[rng.random_range(0..t.len())];
                t.push(x);
            }
            t.shuffle(rng);
            t
        }
    }
}

/// Runs every constant tuple plus `trials` seeded random tuples.
pub fn product_cover_verifier(table: &CompiledTable, n: u32, part: ProductPart, trials: usize, seed: u64) -> Result<ProductCoverReport> {
    let cache = SupportCache::build(table)?;
    let l = part.length(n);
    let eligible: Vec<usize> = (0..table.len()).filter(|&i| *table.degree(i) > BigUint::from(1u32)).collect();
    if eligible.is_empty() {
        return Err(Error::invalid(format!("{} has no character of degree > 1", table.group)));
    }
    let mut tuples: Vec<Vec<usize>> = eligible.iter().map(|&c| vec![c; l]).collect();
    let constant = tuples.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        tuples.push(random_tuple(&mut rng, &eligible, l, part));
    }
    let mut failures = Vec::new();
    for t in &tuples {
        if !tuple_covers(table, &cache, t, part)? {
            failures.push(t.iter().map(|&i| table.labels[i].clone()).collect());
        }
    }
    Ok(ProductCoverReport {
        group: table.group.clone(),
        n,
        part,
        l,
        trials,
        seed,
        constant_tuples_checked: constant,
        pass: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::an::{build_an_table, SplitTag};
    use crate::partitions::Partition;
    use crate::sn::build_sn_table;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn trivial_alpha_gives_self_loops() {
        let t = build_sn_table(5).unwrap().compile().unwrap();
        let g = McKayGraph::build(&t, t.trivial()).unwrap();
        for v in 0..g.vertex_count() {
            assert_eq!(g.out_neighbors(v), vec![v]);
        }
        assert_eq!(g.diameter(), Extended::Infinite);
        assert_eq!(g.covering_exponent(), Extended::Infinite);
    }

    #[test]
    fn s4_faithful_and_sign() {
        let sn = build_sn_table(4).unwrap();
        let t = sn.compile().unwrap();
        let std = sn.char_index(&p(&[3, 1])).unwrap();
        let sign = sn.char_index(&p(&[1, 1, 1, 1])).unwrap();
        assert!(McKayGraph::build(&t, std).unwrap().diameter().is_finite());
        assert!(t.is_faithful(std));
        let g = McKayGraph::build(&t, sign).unwrap();
        assert_eq!(g.diameter(), Extended::Infinite);
        assert!(!t.is_faithful(sign));
    }

    #[test]
    fn reverse_graph_is_dual_graph() {
        for n in [4, 7] {
            let t = build_an_table(n).unwrap().compile().unwrap();
            for a in 0..t.len() {
                let g = McKayGraph::build(&t, a).unwrap();
                let dual = McKayGraph::build(&t, t.dual(a)).unwrap();
                assert!(g.reversed().same_edges(&dual), "A{n} alpha {}", t.labels[a]);
            }
        }
    }

    #[test]
    fn a5_degree_three() {
        let an = build_an_table(5).unwrap();
        let t = an.compile().unwrap();
        let a = an.char_index(&p(&[3, 1, 1]), SplitTag::Plus).unwrap();
        let g = McKayGraph::build(&t, a).unwrap();
        let d = g.diameter();
        assert!(d.is_finite());
        let dist = g.distances_from(t.trivial());
        let far = (0..t.len()).max_by_key(|&i| t.degree(i).clone()).unwrap();
        assert!(d >= Extended::Finite(dist[far].unwrap()));
        assert!(g.covering_exponent().is_finite());
    }

    #[test]
    fn covering_examples() {
        let t = build_an_table(5).unwrap().compile().unwrap();
        let cache = SupportCache::build(&t).unwrap();
        let triv = t.trivial();
        assert_eq!(product_support(&cache, &[triv, triv]).unwrap(), CharSupport::singleton(t.len(), triv));
        for chi in 0..t.len() {
            if chi == triv {
                continue;
            }
            let list = vec![chi; 2 * 29];
            assert!(product_support(&cache, &list).unwrap().is_full());
        }
        assert!(product_support(&cache, &[]).is_err());
    }

    #[test]
    fn percent_exponent() {
        let order = BigUint::from(60u32);
        let deg = BigUint::from(3u32);
        let p = min_percent_exponent(&deg, 3, &order);
        assert!(deg.pow(300) <= order.pow(p));
        assert!(deg.pow(300) > order.pow(p - 1));
    }

    #[test]
    fn product_cover_rejects_degree_one() {
        let t = build_sn_table(5).unwrap().compile().unwrap();
        let cache = SupportCache::build(&t).unwrap();
        assert!(tuple_covers(&t, &cache, &[t.trivial(); 29], ProductPart::Squared).is_err());
        let std = 1;
        assert!(tuple_covers(&t, &cache, &[std, std, 2], ProductPart::Repeated).is_err());
    }

    #[test]
    fn product_cover_small() {
        let t = build_an_table(5).unwrap().compile().unwrap();
        let r = product_cover_verifier(&t, 5, ProductPart::Repeated, 5, 7).unwrap();
        assert_eq!(r.l, 87);
        assert!(r.pass);
        let t = build_sn_table(6).unwrap().compile().unwrap();
        let r = product_cover_verifier(&t, 6, ProductPart::Squared, 100, 1).unwrap();
        assert_eq!(r.l, 37);
        assert!(r.pass);
    }
}
