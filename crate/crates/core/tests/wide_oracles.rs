mod support;

use std::sync::Arc;

use dabelian::catalog::{enumerate_indecomposables, DEFAULT_DIM_BOUND};
use dabelian::cluster::cluster_tilting_module;
use dabelian::homological::is_isomorphic;
use dabelian::module::Representation;
use dabelian::standard::{injective, projective};
use dabelian::wide::{check_wide_bijection, DEFAULT_SUBSET_BUDGET};
use support::intervals;
use support::modules::AddM;

fn sorted_labels(fams: Vec<Vec<String>>) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = fams
        .into_iter()
        .map(|mut f| {
            f.sort();
            f
        })
        .collect();
    out.sort();
    out
}

fn interval_families(n: usize) -> Vec<Vec<String>> {
    sorted_labels(intervals::wide_families(n).into_iter().map(|f| f.into_iter().map(|x| intervals::label(n, x)).collect()).collect())
}

fn rad2_add_m() -> AddM {
    let alg = support::a3_rad2();
    let mut members: Vec<Arc<Representation<_>>> = Vec::new();
    for v in 0..3 {
        for m in [projective(&alg, v), injective(&alg, v)] {
            let m = Arc::new(m);
            if !members.iter().any(|x| is_isomorphic(x, &m).unwrap()) {
                members.push(m);
            }
        }
    }
    AddM { members }
}

#[test]
fn interval_oracle_counts() {
    assert_eq!(intervals::wide_families(2).len(), support::WIDE_A2);
    assert_eq!(intervals::wide_families(3).len(), support::WIDE_A3);
    // Catalan numbers count noncrossing partitions.
    assert_eq!(intervals::wide_families(1).len(), 2);
    assert_eq!(intervals::wide_families(4).len(), 42);
}

#[test]
fn add_m_oracle_count() {
    let m = rad2_add_m();
    assert_eq!(m.members.len(), 4);
    let fams = m.wide_families();
    assert_eq!(fams.len(), support::WIDE_A3_RAD2, "{fams:?}");
    assert!(!fams.contains(&vec!["M[0,0,1]".to_string(), "M[1,0,0]".to_string()]));
}

#[test]
fn library_layer_families_match_oracles() {
    for (n_vertices, expected) in [(2, interval_families(2)), (3, interval_families(3))] {
        let alg = support::linear_a(n_vertices);
        let cat = enumerate_indecomposables(&alg, DEFAULT_DIM_BOUND, 1).unwrap();
        let r = check_wide_bijection(&cat, 1, 1, 3, DEFAULT_SUBSET_BUDGET).unwrap();
        assert!(r.holds());
        let got = sorted_labels(r.layer.iter().map(|f| f.members.clone()).collect());
        assert_eq!(got, expected, "A{n_vertices}");
        assert_eq!(r.repetitive.len(), expected.len());
    }
}

#[test]
fn library_rad2_families_match_oracle() {
    let alg = support::a3_rad2();
    let cat = enumerate_indecomposables(&alg, DEFAULT_DIM_BOUND, 1).unwrap();
    let ct = cluster_tilting_module(&cat, 2).unwrap();
    let oracle = rad2_add_m();
    assert_eq!(ct.summands.len(), oracle.members.len());
    assert!(ct.summands.iter().all(|s| oracle.members.iter().any(|m| is_isomorphic(s, m).unwrap())));
    let r = check_wide_bijection(&cat, 2, 1, 3, DEFAULT_SUBSET_BUDGET).unwrap();
    assert!(r.holds());
    let got = sorted_labels(r.layer.iter().map(|f| f.members.clone()).collect());
    assert_eq!(got, oracle.wide_families());
}
