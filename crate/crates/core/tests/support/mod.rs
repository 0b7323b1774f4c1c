//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

use mckay::an::{AnTable, SplitTag};
use mckay::gf::{Embedding, Field, FqMatrix, Poly, FIELD_CAP};
use mckay::quad::QuadValue;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `d − max dim ker(g − λ)` over `λ = 0` and all `λ` in `F_{q^k}^×`, `k ≤ d`, taking one
/// `λ` from each Frobenius orbit of exact size `k`.
pub fn brute_support(g: &FqMatrix) -> usize {
    let f = g.field().clone();
    let (q, d) = (f.q(), g.dim());
    let mut best = 0;
    for k in 1..=d as u32 {
        let order = (q as u64).pow(k);
        assert!(order <= FIELD_CAP as u64, "GF({q}^{k}) is too large for the oracle");
        let large = Field::gf(order as u32).unwrap();
        let emb = Embedding::new(f.clone(), large.clone()).unwrap();
        let h = g.embed(&emb).unwrap();
        if k == 1 {
            best = best.max(h.eig_dim(0));
        }
        for lambda in large.units() {
            let mut orbit = vec![lambda];
            let mut x = large.pow(lambda, q as u64);
            while x != lambda {
                orbit.push(x);
                x = large.pow(x, q as u64);
            }
            if orbit.len() != k as usize || orbit.iter().any(|&y| y < lambda) {
                continue;
            }
            best = best.max(h.eig_dim(lambda));
        }
    }
    d - best
}

/// A seeded test matrix: random, a conjugated block sum with a repeated
/// block (large eigenspaces over an extension), or identity plus a
/// low-rank perturbation.
pub fn seeded_matrix(rng: &mut ChaCha8Rng) -> FqMatrix {
    let q = [2u32, 3, 4, 5][rng.random_range(0..4)];
    let f = Field::gf(q).unwrap();
    let d = rng.random_range(1..=8usize);
    match rng.random_range(0..3) {
        0 => FqMatrix::random(f, d, d, rng),
        1 => {
            let k = rng.random_range(1..=d.div_ceil(2));
            let mut coeffs: Vec<u32> = (0..k).map(|_| rng.random_range(0..q)).collect();
            coeffs.push(1);
            let block = FqMatrix::companion(f.clone(), &Poly::new(coeffs));
            let copies = rng.random_range(1..=d / k);
            let mut blocks = vec![block; copies];
            let rest = d - k * copies;
            if rest > 0 {
                blocks.push(FqMatrix::random(f.clone(), rest, rest, rng));
            }
            let m = FqMatrix::block_diag(f.clone(), &blocks);
            let p = FqMatrix::random_invertible(f, d, rng);
            p.mul(&m).mul(&p.inverse().unwrap())
        }
        _ => {
            let c = rng.random_range(0..q);
            let mut m = FqMatrix::scalar(f.clone(), d, c);
            let u: Vec<u32> = (0..d).map(|_| rng.random_range(0..q)).collect();
            let v: Vec<u32> = (0..d).map(|_| rng.random_range(0..q)).collect();
            for i in 0..d {
                for j in 0..d {
                    m.set(i, j, f.add(m.get(i, j), f.mul(u[i], v[j])));
                }
            }
            m
        }
    }
}

/// Compares `FqMatrix::support` with `brute_support` on `count` seeded
/// matrices; returns the number checked and a description of each mismatch.
pub fn support_oracle_run(count: usize, seed: u64) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for i in 0..count {
        let g = seeded_matrix(&mut rng);
        let fast = g.support().unwrap();
        let slow = brute_support(&g);
        if fast != slow {
            bad.push(format!("#{i} q={} {g}: factoring {fast}, brute force {slow}", g.field().q()));
        }
    }
    (count, bad)
}

type Perm = Vec<u8>;

fn compose(x: &Perm, y: &Perm) -> Perm {
    y.iter().map(|&i| x[i as usize]).collect()
}

fn inverse(x: &Perm) -> Perm {
    let mut inv = vec![0u8; x.len()];
    for (i, &j) in x.iter().enumerate() {
        inv[j as usize] = i as u8;
    }
    inv
}

fn is_even(x: &Perm) -> bool {
    let mut seen = vec![false; x.len()];
    let mut transpositions = 0;
    for s in 0..x.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = x[i] as usize;
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn go(n: usize, cur: &mut Perm, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i as u8);
                go(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `(1 2 … h_1)(h_1+1 …)…` in 0-based form.
fn standard_representative(n: usize, parts: &[u32]) -> Perm {
    let mut x: Perm = (0..n as u8).collect();
    let mut start = 0usize;
    for &h in parts {
        let h = h as usize;
        for i in 0..h {
            x[start + i] = (start + (i + 1) % h) as u8;
        }
        start += h;
    }
    x
}

/// Checks the `A_n` table against the class algebra of the permutation
/// group: classes by brute-force conjugation, structure constants by
/// multiplying permutations, and every row's central character an algebra
/// homomorphism with `[χ, χ] = 1`. Together these force each row to be an
/// irreducible character, with no repeats.
pub fn check_an_against_group(table: &AnTable) -> Result<(), String> {
    let n = table.n as usize;
    let group: Vec<Perm> = all_perms(n).into_iter().filter(is_even).collect();
    let index: HashMap<Perm, usize> = group.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut class_of = vec![usize::MAX; group.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for s in 0..group.len() {
        if class_of[s] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for h in &group {
            let c = index[&compose(&compose(h, &group[s]), &inverse(h))];
            if class_of[c] == usize::MAX {
                class_of[c] = id;
                members.push(c);
            }
        }
        classes.push(members);
    }
    let k = table.classes.len();
    if classes.len() != k {
        return Err(format!("A_{n}: {} classes by brute force, table has {k}", classes.len()));
    }
    // table class -> brute-force class
    let swap: Perm = {
        let mut t: Perm = (0..n as u8).collect();
        t.swap(0, 1);
        t
    };
    let mut to_group = Vec::with_capacity(k);
    for c in &table.classes {
        let rep = standard_representative(n, c.cycle_type.parts());
        let rep = if c.tag == SplitTag::Minus { compose(&compose(&swap, &rep), &swap) } else { rep };
        let id = class_of[index[&rep]];
        if BigUint::from(classes[id].len()) != c.size {
            return Err(format!("A_{n}: class {}{:?} has size {} by brute force", c.cycle_type, c.tag, classes[id].len()));
        }
        to_group.push(id);
    }
    let mut seen = to_group.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != k {
        return Err(format!("A_{n}: table classes do not biject onto conjugacy classes"));
    }
    let table_of: HashMap<usize, usize> = to_group.iter().enumerate().map(|(t, &g)| (g, t)).collect();
    // a[i][j][l] = #{x ∈ K_i : x⁻¹ z_l ∈ K_j}
    let mut a = vec![vec![vec![0i64; k]; k]; k];
    for l in 0..k {
        let z = &group[classes[to_group[l]][0]];
        for i in 0..k {
            for &x in &classes[to_group[i]] {
                let y = compose(&inverse(&group[x]), z);
                a[i][table_of[&class_of[index[&y]]]][l] += 1;
            }
        }
    }
    let order = BigInt::from(group.len());
    for (r, row) in table.values.iter().enumerate() {
        let deg = BigRational::from_integer(BigInt::from(table.degree(r)));
        let omega: Vec<QuadValue> = row
            .iter()
            .zip(&table.classes)
            .map(|(v, c)| v.scale(&(BigRational::from_integer(BigInt::from(c.size.clone())) / &deg)))
            .collect();
        for i in 0..k {
            for j in 0..k {
                let lhs = omega[i].try_mul(&omega[j]).map_err(|e| e.to_string())?;
                let mut rhs = QuadValue::zero();
                for l in 0..k {
                    let term = omega[l].scale(&BigRational::from_integer(BigInt::from(a[i][j][l])));
                    rhs = rhs.try_add(&term).map_err(|e| e.to_string())?;
                }
                if lhs != rhs {
                    return Err(format!("A_{n}: row {r} central character fails at ({i}, {j})"));
                }
            }
        }
        let mut norm = QuadValue::zero();
        for (v, c) in row.iter().zip(&table.classes) {
            let t = v.abs_sq().scale(&BigRational::from_integer(BigInt::from(c.size.clone())));
            norm = norm.try_add(&t).map_err(|e| e.to_string())?;
        }
        if norm.as_integer() != Some(order.clone()) {
            return Err(format!("A_{n}: row {r} has norm {norm} / {order}"));
        }
    }
    let mut rows = table.values.clone();
    rows.sort_by_key(|r| format!("{r:?}"));
    rows.dedup();
    if rows.len() != k {
        return Err(format!("A_{n}: repeated rows"));
    }
    Ok(())
}
