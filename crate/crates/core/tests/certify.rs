use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use qsym::boxalg::MultiplicityTable;
use qsym::certify::{
    certify, verify_certificate, Certificate, CertifyConfig, CertifyOutcome, Checkpoint, Session, StopReason, VerifyOutcome,
};
use qsym::graph::families;
use qsym::symmetry::{automorphism_group, OrbitIndex};
use qsym::vector::Derivation;
use qsym::Graph;

fn prepared(g: &Graph) -> (OrbitIndex, MultiplicityTable) {
    let index = OrbitIndex::build(g, &automorphism_group(g), 4).unwrap();
    let table = MultiplicityTable::build(&index);
    (index, table)
}

fn pentagon_certificate() -> Certificate {
    let g = families::cycle(5).unwrap();
    match certify(&g, CertifyConfig::new(2, 7, 20_000)).unwrap() {
        CertifyOutcome::Certificate(c) => *c,
        other => panic!("expected a certificate, got {other:?}"),
    }
}

#[test]
fn certificate_round_trips_and_verifies() {
    let c = pentagon_certificate();
    let text = c.to_json_string();
    let back = Certificate::from_json_str(&text).unwrap();
    assert_eq!(back, c);
    assert_eq!(back.to_json_string(), text);
    assert!(verify_certificate(&back).unwrap().is_valid());
    // every coefficient refers to an element and every derivation to an earlier one
    assert!(c.coefficients.iter().all(|e| e.element < c.elements.len()));
}

#[test]
fn tampering_is_detected() {
    let c = pentagon_certificate();

    let mut bad = c.clone();
    bad.coefficients[0].value = "1000/7".into();
    match verify_certificate(&bad).unwrap() {
        VerifyOutcome::Invalid(w) => {
            assert!(w.orbit.is_some());
            assert!(w.representative.is_some());
            assert_ne!(w.expected, w.found);
        }
        VerifyOutcome::Valid => panic!("tampered coefficient accepted"),
    }

    let mut bad = c.clone();
    bad.coefficients.pop();
    assert!(!verify_certificate(&bad).unwrap().is_valid());

    let mut bad = c.clone();
    bad.elements[0] = Derivation::Rot { of: 0 };
    assert!(!verify_certificate(&bad).unwrap().is_valid());

    let mut bad = c.clone();
    bad.elements.push(Derivation::Flip);
    assert!(!verify_certificate(&bad).unwrap().is_valid());

    let mut bad = c.clone();
    bad.graph.graph6 = "Dhk".into();
    assert!(!verify_certificate(&bad).unwrap().is_valid());

    let mut bad = c;
    bad.orbits.representatives.swap(0, 1);
    assert!(!verify_certificate(&bad).unwrap().is_valid());

    assert!(Certificate::from_json_str("{\"schema_version\": 1}").is_err());
}

#[test]
fn interrupted_runs_resume_to_the_same_certificate() {
    let g = families::build_orthogonal_polar(2).unwrap();
    let (index, table) = prepared(&g);
    let config = CertifyConfig::new(2, 7, 20_000);
    let full = match Session::new(&g, &index, &table, config.clone()).unwrap().run(&mut |_| {}).unwrap() {
        CertifyOutcome::Certificate(c) => c.to_json_string(),
        other => panic!("{other:?}"),
    };

    // stop at several ranks through the cancel flag, save, reload and continue
    let dir = std::env::temp_dir().join(format!("qsym-cp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cp.json");
    let mut cp: Option<Checkpoint> = None;
    let mut ranks = Vec::new();
    for stop_at in [10usize, 40, 90, 113] {
        let cancel = Arc::new(AtomicBool::new(false));
        let cfg = CertifyConfig { cancel: Some(cancel.clone()), ..config.clone() };
        let mut s = match &cp {
            None => Session::new(&g, &index, &table, cfg).unwrap(),
            Some(c) => Session::resume(&g, &index, &table, cfg, c).unwrap(),
        };
        let out = s
            .run(&mut |p| {
                if p.rank >= stop_at {
                    cancel.store(true, Ordering::SeqCst);
                }
            })
            .unwrap();
        let CertifyOutcome::ResourceBudgetExceeded(c) = out else { panic!("run was not interrupted at {stop_at}") };
        assert!(c.rank() >= stop_at);
        ranks.push(c.rank());
        c.save(&path).unwrap();
        let loaded = Checkpoint::load(&path).unwrap();
        assert_eq!(loaded, *c);
        cp = Some(loaded);
    }
    assert!(ranks.windows(2).all(|w| w[0] < w[1]));
    let mut s = Session::resume(&g, &index, &table, config, cp.as_ref().unwrap()).unwrap();
    let resumed = match s.run(&mut |_| {}).unwrap() {
        CertifyOutcome::Certificate(c) => c.to_json_string(),
        other => panic!("{other:?}"),
    };
    assert_eq!(resumed, full);

    // a checkpoint does not resume on another graph
    let other = families::build_orthogonal_polar(2).unwrap().complement();
    let (oi, ot) = prepared(&other);
    assert!(Session::resume(&other, &oi, &ot, CertifyConfig::new(2, 7, 10), cp.as_ref().unwrap()).is_err());
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn corrupted_checkpoints_are_rejected() {
    let g = families::cycle(5).unwrap();
    let (index, table) = prepared(&g);
    let cancel = Arc::new(AtomicBool::new(false));
    let cfg = CertifyConfig { cancel: Some(cancel.clone()), ..CertifyConfig::new(2, 7, 100) };
    let out = Session::new(&g, &index, &table, cfg)
        .unwrap()
        .run(&mut |p| {
            if p.rank >= 20 {
                cancel.store(true, Ordering::SeqCst)
            }
        })
        .unwrap();
    let CertifyOutcome::ResourceBudgetExceeded(cp) = out else { panic!() };
    let cfg = CertifyConfig::new(2, 7, 100);

    let mut bad = (*cp).clone();
    bad.elements[3].values[0] = "12/1".into();
    bad.elements[4] = bad.elements[3].clone();
    assert!(Session::resume(&g, &index, &table, cfg.clone(), &bad).is_err());

    let mut bad = (*cp).clone();
    bad.catalog_len += 1;
    assert!(Session::resume(&g, &index, &table, cfg.clone(), &bad).is_err());

    let mut bad = (*cp).clone();
    bad.schema_version = 99;
    assert!(Session::resume(&g, &index, &table, cfg.clone(), &bad).is_err());

    let mut bad = (*cp).clone();
    bad.elements[0].values[0] = "x".into();
    assert!(Session::resume(&g, &index, &table, cfg, &bad).is_err());
}

#[test]
fn complete_graph_saturates_below_full_rank() {
    let g = families::complete(5).unwrap();
    match certify(&g, CertifyConfig::new(1, 6, 10_000)).unwrap() {
        CertifyOutcome::NotInSpanAtBudget(r) => {
            assert_eq!(r.omega, 15);
            assert_eq!(r.rank, 14);
            assert!(!r.flip_in_span);
            assert_eq!(r.reason, Some(StopReason::Closed));
            assert!(r.history.windows(2).all(|w| w[0].rank < w[1].rank && w[0].tried < w[1].tried));
        }
        other => panic!("{other:?}"),
    }
    // a tiny product budget stops for that reason instead
    match certify(&g, CertifyConfig::new(0, 0, 0)).unwrap() {
        CertifyOutcome::NotInSpanAtBudget(r) => assert_eq!(r.reason, Some(StopReason::ProductBudget)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn zero_deadline_stops_before_any_work() {
    let g = families::cycle(5).unwrap();
    let (index, table) = prepared(&g);
    let cfg = CertifyConfig { deadline: Some(std::time::Instant::now()), ..CertifyConfig::new(2, 7, 100) };
    match Session::new(&g, &index, &table, cfg).unwrap().run(&mut |_| {}).unwrap() {
        CertifyOutcome::ResourceBudgetExceeded(cp) => {
            assert_eq!(cp.rank(), 0);
            assert_eq!(cp.tried, 0);
        }
        other => panic!("{other:?}"),
    }
}
