use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use schubert_core::search::{
    max_multiplicity_free_degree, read_checkpoint, resolve_engine, verify_multidegree, Engine,
    SearchError, Symmetry,
};
use schubert_core::ChowError;
use schubert_core::{
    Backend, CartanType, ChowVector, MultiDegree, RootSystem, SchubertRing, SearchConfig,
    SearchOutcome,
};

fn rs(t: CartanType) -> Arc<RootSystem> {
    Arc::new(RootSystem::from_type(t).unwrap())
}

fn config(symmetry: bool, threads: usize) -> SearchConfig {
    SearchConfig {
        thread_count: threads,
        symmetry_reduction: symmetry,
        collect_solutions: true,
        ..SearchConfig::default()
    }
}

fn solutions(out: &SearchOutcome) -> BTreeSet<Vec<u32>> {
    out.solutions
        .as_ref()
        .unwrap()
        .iter()
        .map(|d| d.0.clone())
        .collect()
}

fn brute_force(t: CartanType) -> BTreeSet<Vec<u32>> {
    let ring = SchubertRing::new(rs(t));
    MultiDegree::all_up_to(ring.rank(), ring.dim_flag())
        .into_iter()
        .filter(|deg| {
            let p: ChowVector<BigUint> = ring.product_of_divisors(deg).unwrap();
            p.is_multiplicity_free()
        })
        .map(|d| d.0)
        .collect()
}

fn same_result(a: &SearchOutcome, b: &SearchOutcome) {
    assert_eq!(a.max_degree, b.max_degree);
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.exhaustive, b.exhaustive);
    assert_eq!(solutions(a), solutions(b));
}

#[test]
fn pruned_search_finds_exactly_the_multiplicity_free_monomials() {
    for t in [
        CartanType::A(2),
        CartanType::A(3),
        CartanType::B(2),
        CartanType::B(3),
        CartanType::C(3),
        CartanType::G2,
    ] {
        let expected = brute_force(t);
        let max = expected.iter().map(|d| d.iter().sum::<u32>()).max().unwrap();
        for symmetry in [false, true] {
            let out = max_multiplicity_free_degree(rs(t), &config(symmetry, 2)).unwrap();
            assert!(out.exhaustive);
            assert_eq!(solutions(&out), expected, "{t} symmetry={symmetry}");
            assert_eq!(out.max_degree as u32, max, "{t}");
        }
    }
}

#[test]
fn known_small_maxima() {
    for (t, n) in [
        (CartanType::A(2), 3),
        (CartanType::A(3), 6),
        (CartanType::G2, 3),
        (CartanType::B(3), 6),
        (CartanType::D(4), 9),
        (CartanType::F4, 11),
    ] {
        let out = max_multiplicity_free_degree(rs(t), &config(true, 2)).unwrap();
        assert_eq!(out.max_degree, n, "{t}");
        let ring = SchubertRing::new(rs(t));
        let w = verify_multidegree::<BigUint>(&ring, &out.witness.degrees)
            .unwrap()
            .expect("witness re-verifies");
        assert_eq!(w, out.witness);
    }
}

#[test]
fn symmetry_reduction_does_not_change_the_answer() {
    for t in [CartanType::A(3), CartanType::A(4), CartanType::D(4)] {
        let on = max_multiplicity_free_degree(rs(t), &config(true, 2)).unwrap();
        let off = max_multiplicity_free_degree(rs(t), &config(false, 2)).unwrap();
        same_result(&on, &off);
        assert!(on.products_computed < off.products_computed, "{t}");
    }
}

#[test]
fn solutions_are_closed_under_diagram_automorphisms() {
    let d4 = rs(CartanType::D(4));
    let out = max_multiplicity_free_degree(d4.clone(), &config(true, 1)).unwrap();
    let sym = Symmetry::of(&d4);
    assert_eq!(sym.order(), 6);
    let found = solutions(&out);
    for deg in &found {
        for image in sym.orbit(&MultiDegree(deg.clone())) {
            assert!(found.contains(&image.0));
        }
    }
}

#[test]
fn thread_count_does_not_change_the_answer() {
    for t in [CartanType::D(4), CartanType::F4, CartanType::B(4)] {
        let one = max_multiplicity_free_degree(rs(t), &config(true, 1)).unwrap();
        let four = max_multiplicity_free_degree(rs(t), &config(true, 4)).unwrap();
        same_result(&one, &four);
    }
}

#[test]
fn backends_agree() {
    for backend in [Backend::Checked64, Backend::Checked128] {
        let cfg = SearchConfig {
            coefficient_backend: backend,
            ..config(true, 2)
        };
        let fixed = max_multiplicity_free_degree(rs(CartanType::F4), &cfg).unwrap();
        let big = max_multiplicity_free_degree(rs(CartanType::F4), &config(true, 2)).unwrap();
        same_result(&fixed, &big);
    }
}

#[test]
fn target_caps_the_search_depth() {
    let cfg = SearchConfig {
        target: Some(5),
        ..config(true, 2)
    };
    let out = max_multiplicity_free_degree(rs(CartanType::D(4)), &cfg).unwrap();
    assert_eq!(out.max_degree, 5);
    assert!(!out.exhaustive);
    assert!(solutions(&out).iter().all(|d| d.iter().sum::<u32>() <= 5));
}

#[test]
fn support_budget_marks_the_run_incomplete() {
    let cfg = SearchConfig {
        support_budget: Some(4),
        ..config(true, 1)
    };
    let out = max_multiplicity_free_degree(rs(CartanType::B(3)), &cfg).unwrap();
    assert!(!out.exhaustive);
    assert!(out.max_degree <= 6);
}

#[test]
fn cancellation_flag_interrupts() {
    let flag = Arc::new(std::sync::atomic::AtomicBool::new(true));
    let cfg = SearchConfig {
        cancel: Some(flag),
        ..config(true, 1)
    };
    let err = max_multiplicity_free_degree(rs(CartanType::F4), &cfg).unwrap_err();
    assert!(matches!(err, SearchError::Interrupted { .. }), "{err}");
}

fn interrupted_then_resumed(t: CartanType, limit: u64, target: Option<usize>) {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("run.ckpt");
    let base = SearchConfig {
        target,
        ..config(true, 2)
    };
    let fresh = max_multiplicity_free_degree(rs(t), &base).unwrap();

    let first = SearchConfig {
        checkpoint_path: Some(ckpt.clone()),
        product_limit: Some(limit),
        ..base.clone()
    };
    match max_multiplicity_free_degree(rs(t), &first) {
        Err(SearchError::Interrupted { checkpoint, .. }) => {
            assert_eq!(checkpoint.as_deref(), Some(ckpt.as_path()))
        }
        Ok(out) => panic!("{t}: finished after {} products", out.products_computed),
        Err(e) => panic!("{t}: {e}"),
    }
    let saved = read_checkpoint(&ckpt, &rs(t)).unwrap();
    assert!(!saved.is_empty());

    let second = SearchConfig {
        resume_path: Some(ckpt.clone()),
        ..base.clone()
    };
    let resumed = max_multiplicity_free_degree(rs(t), &second).unwrap();
    same_result(&fresh, &resumed);
    assert!(resumed.products_computed < fresh.products_computed, "{t}");
}

#[test]
fn resume_after_interruption_matches_an_uninterrupted_run() {
    interrupted_then_resumed(CartanType::A(3), 20, None);
    interrupted_then_resumed(CartanType::B(3), 15, None);
    interrupted_then_resumed(CartanType::G2, 4, None);
    interrupted_then_resumed(CartanType::D(4), 30, None);
    interrupted_then_resumed(CartanType::E6, 200, Some(8));
}

#[test]
fn checkpoint_from_another_root_system_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("b3.ckpt");
    let cfg = SearchConfig {
        checkpoint_path: Some(ckpt.clone()),
        product_limit: Some(5),
        ..config(true, 1)
    };
    assert!(max_multiplicity_free_degree(rs(CartanType::B(3)), &cfg).is_err());
    let err = read_checkpoint(&ckpt, &rs(CartanType::C(3))).unwrap_err();
    assert!(matches!(err, SearchError::CheckpointMismatch { .. }), "{err}");

    std::fs::write(&ckpt, "not json\n").unwrap();
    let err = read_checkpoint(&ckpt, &rs(CartanType::B(3))).unwrap_err();
    assert!(matches!(err, SearchError::CheckpointFormat { .. }), "{err}");
}

#[test]
fn sparse_and_indexed_engines_agree() {
    for (t, target) in [
        (CartanType::A(3), None),
        (CartanType::B(3), None),
        (CartanType::G2, None),
        (CartanType::D(4), None),
        (CartanType::F4, None),
        (CartanType::B(4), None),
        (CartanType::E6, Some(8)),
    ] {
        let run = |engine| {
            let cfg = SearchConfig {
                engine,
                target,
                ..config(true, 2)
            };
            max_multiplicity_free_degree(rs(t), &cfg).unwrap()
        };
        let sparse = run(Engine::Sparse);
        let indexed = run(Engine::Indexed);
        same_result(&sparse, &indexed);
        assert!(indexed.products_computed <= sparse.products_computed, "{t:?}");
    }
}

#[test]
fn auto_engine_respects_the_element_limit() {
    let cfg = SearchConfig::default();
    assert_eq!(resolve_engine(&rs(CartanType::E6), &cfg), Engine::Indexed);
    assert_eq!(resolve_engine(&rs(CartanType::E7), &cfg), Engine::Indexed);
    assert_eq!(resolve_engine(&rs(CartanType::E8), &cfg), Engine::Sparse);
    let capped = SearchConfig {
        target: Some(10),
        ..SearchConfig::default()
    };
    assert_eq!(resolve_engine(&rs(CartanType::E8), &capped), Engine::Indexed);
    let forced = SearchConfig {
        engine: Engine::Sparse,
        ..SearchConfig::default()
    };
    assert_eq!(resolve_engine(&rs(CartanType::A(2)), &forced), Engine::Sparse);
}

#[test]
fn indexed_engine_fails_loudly_past_its_limit() {
    let cfg = SearchConfig {
        engine: Engine::Indexed,
        element_limit: 500,
        ..config(true, 1)
    };
    match max_multiplicity_free_degree(rs(CartanType::E6), &cfg) {
        Err(SearchError::Chow(ChowError::IndexLimit { limit, .. })) => assert_eq!(limit, 500),
        other => panic!("expected an index limit error, got {other:?}"),
    }
}
