mod common;

use sqdist::extremal::{
    check_singleton_monotonicity, check_step_monotonicity, check_turan_singletons,
};
use sqdist::{
    enumerate_partitions, majorizes, scan_energy_h, verify_chain_monotone, verify_listed_chain,
    Majorization,
};

#[test]
fn elementary_steps_up_to_twelve() {
    let sweep = check_step_monotonicity(12).unwrap();
    assert!(sweep.passed(), "{sweep:?}");
    assert!(sweep.lambda_checked > 0);
}

#[test]
fn fewer_singletons_means_less_energy() {
    for n in 2..=12 {
        for t in 2..=n {
            let v = check_singleton_monotonicity(n, t).unwrap();
            assert!(v.is_empty(), "({n},{t}): {v:?}");
            let v = check_turan_singletons(n, t).unwrap();
            assert!(v.is_empty(), "({n},{t}): {v:?}");
        }
    }
}

#[test]
fn singleton_class_extremes() {
    let mut checked = 0;
    for n in 4..=16 {
        for t in 3..=n {
            for h in 1..=t - 2 {
                let Ok(report) = scan_energy_h(n, t, h) else {
                    continue;
                };
                assert!(report.passed(), "({n},{t},{h}): {:?}", report.violations);
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn every_chain_is_monotone() {
    for n in 4..=10 {
        for t in 2..n {
            let all: Vec<_> = enumerate_partitions(n, t).unwrap().collect();
            for a in &all {
                for b in &all {
                    if majorizes(a, b).unwrap() == Majorization::Strict {
                        let report = verify_chain_monotone(a, b).unwrap();
                        assert!(report.passed(), "{a} -> {b}: {:?}", report.violations);
                        assert!(report.radius_strict && report.energy_monotone);
                    }
                }
            }
        }
    }
}

#[test]
fn listed_chain_with_wide_steps() {
    let chain: Vec<_> = ["8,4,2,2,1", "7,4,3,2,1", "6,4,4,2,1", "5,4,4,3,1"]
        .iter()
        .map(|s| common::p(s))
        .collect();
    let report = verify_listed_chain(&chain).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
    assert!(verify_listed_chain(&[common::p("3,3"), common::p("5,1")]).is_err());
}
