//! McKay diameters recomputed from inner products of class functions over the
//! `A_n` tables, compared against the support-cache graphs.

use std::collections::VecDeque;

use mckay::an::{build_an_table, AnTable};
use mckay::mckay::{alternating_rows, Extended};
use mckay::quad::QuadValue;
use num_bigint::BigInt;
use num_rational::BigRational;

/// `edges[χ][ψ]` iff `[αχ, ψ] ≠ 0`.
fn naive_edges(t: &AnTable, alpha: usize) -> Vec<Vec<bool>> {
    let k = t.chars.len();
    let sizes: Vec<BigRational> = t.classes.iter().map(|c| BigRational::from_integer(BigInt::from(c.size.clone()))).collect();
    (0..k)
        .map(|chi| {
            let prod: Vec<QuadValue> = (0..k).map(|c| t.values[alpha][c].try_mul(&t.values[chi][c]).unwrap()).collect();
            (0..k)
                .map(|psi| {
                    let mut s = QuadValue::zero();
                    for c in 0..k {
                        s = s.try_add(&prod[c].try_mul(&t.values[psi][c].conj()).unwrap().scale(&sizes[c])).unwrap();
                    }
                    !s.is_zero()
                })
                .collect()
        })
        .collect()
}

fn directed_diameter(edges: &[Vec<bool>]) -> Extended {
    let k = edges.len();
    let mut worst = 0;
    for s in 0..k {
        let mut dist = vec![u32::MAX; k];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..k {
                if edges[u][v] && dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        match dist.iter().max() {
            Some(&u32::MAX) => return Extended::Infinite,
            Some(&d) => worst = worst.max(d),
            None => {}
        }
    }
    Extended::Finite(worst)
}

fn compare(n: u32) {
    let t = build_an_table(n).unwrap();
    let rows = alternating_rows(n).unwrap();
    let trivial = t.chars.iter().position(|c| c.partition.parts() == [n]).unwrap();
    let alphas: Vec<usize> = (0..t.chars.len()).filter(|&a| a != trivial).collect();
    assert_eq!(alphas.len(), rows.len());
    for (&a, row) in alphas.iter().zip(&rows) {
        assert_eq!(row.alpha_degree, t.degree(a), "A_{n} row order");
        assert_eq!(row.diameter, directed_diameter(&naive_edges(&t, a)), "A_{n} {}", row.alpha_label);
    }
}

#[test]
fn small_alternating_diameters_match_inner_products() {
    for n in 5..=9 {
        compare(n);
    }
}

#[test]
fn a12_diameters_match_inner_products() {
    compare(12);
}
