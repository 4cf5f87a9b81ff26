mod common;

use dicaut::census::{CensusOptions, Classifier, Provenance};
use dicaut::{build_cayley, enumerate_inverse_closed, run_exhaustive, run_sampled, CensusRecord, DicyclicGroup, Verdict};
use num_bigint::BigUint;

use common::naive_aut_order;

fn opts(jobs: usize) -> CensusOptions {
    CensusOptions {
        jobs,
        timing: false,
        ..CensusOptions::default()
    }
}

#[test]
fn dic_c6_exceptional_count_matches_backtracking_recount() {
    let g: DicyclicGroup = "dic:C6:y=3".parse().unwrap();
    let mut records = Vec::new();
    let summary = run_exhaustive(&g, false, &opts(2), &mut |r| {
        records.push(r.clone());
        Ok(())
    })
    .unwrap();
    assert_eq!(summary.total, 128);
    let mut recount = 0;
    for (s, r) in enumerate_inverse_closed(&g, 1 << 16).unwrap().zip(&records) {
        assert_eq!(s.to_hex(), r.set);
        let order = naive_aut_order(&build_cayley(&g, &s, false).unwrap());
        assert_eq!(r.aut_order, BigUint::from(order), "set {}", r.set);
        recount += u64::from(order > 24);
    }
    assert_eq!(summary.exceptional, recount);
}

#[test]
fn q8_trivial_sets() {
    let g = DicyclicGroup::q8e(0);
    let c = Classifier::new(&g, false).with_timing(false);
    let empty = dicaut::ConnectionSet::empty(8);
    let r = c.classify(&empty, Provenance::Adhoc).unwrap();
    assert_eq!(r.aut_order, BigUint::from(40320u32));
    assert_eq!(r.b_order, BigUint::from(64u32));
    assert_eq!(r.verdict, Verdict::ProperSupergroup);
    let all = dicaut::ConnectionSet::from_indices(8, 1..8).unwrap();
    let r = c.classify(&all, Provenance::Adhoc).unwrap();
    assert_eq!(r.aut_order, BigUint::from(40320u32));
}

fn sampled(g: &DicyclicGroup, jobs: usize, directed: bool) -> (dicaut::CensusSummary, Vec<CensusRecord>) {
    let mut records = Vec::new();
    let s = run_sampled(g, 300, 77, directed, &opts(jobs), &mut |r| {
        records.push(r.clone());
        Ok(())
    })
    .unwrap();
    (s, records)
}

#[test]
fn sampled_runs_are_deterministic_across_worker_counts() {
    let g: DicyclicGroup = "dic:C10:y=5".parse().unwrap();
    for directed in [false, true] {
        let (a, ra) = sampled(&g, 1, directed);
        let (b, rb) = sampled(&g, 3, directed);
        assert_eq!(a, b);
        assert_eq!(ra, rb);
        assert!(ra.iter().enumerate().all(|(i, r)| r.draw == Some(i as u64) && r.seed == Some(77)));
    }
}

#[test]
fn directed_exhaustive_covers_all_subsets() {
    let g = DicyclicGroup::q8e(0);
    let mut count = 0u64;
    let summary = run_exhaustive(&g, true, &opts(2), &mut |r| {
        assert!(r.directed);
        assert_eq!(r.b_order, BigUint::from(8u8));
        count += 1;
        Ok(())
    })
    .unwrap();
    assert_eq!(summary.total, 256);
    assert_eq!(count, 256);
    assert!(summary.bound.is_none());
}
