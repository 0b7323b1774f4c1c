mod support;

use mckay::an::build_an_table;
use mckay::gf::{Field, FqMatrix};
use support::{brute_support, check_an_against_group, support_oracle_run};

#[test]
fn factoring_support_matches_brute_force() {
    let (checked, bad) = support_oracle_run(200, 2024);
    assert_eq!(checked, 200);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn brute_force_sees_extension_eigenvalues() {
    // x² + x + 1 twice over F_2: a 2-dimensional eigenspace over F_4
    let f = Field::gf(2).unwrap();
    let c: FqMatrix = "q=2:01/11".parse().unwrap();
    let g = FqMatrix::block_diag(f, &[c.clone(), c]);
    assert_eq!(brute_support(&g), 2);
    assert_eq!(g.support().unwrap(), 2);
}

#[test]
fn alternating_tables_match_the_permutation_groups() {
    for n in 3..=6 {
        check_an_against_group(&build_an_table(n).unwrap()).unwrap();
    }
}
