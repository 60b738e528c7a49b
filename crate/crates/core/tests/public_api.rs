use std::sync::Arc;

use lattice_orbit::lattice::{lminus, u2u};
use lattice_orbit::oracle;
use lattice_orbit::{
    builtin, classify, heegner_report, heegner_report_by_norm, representative, representative_in, sample_word,
    GeneratorSet, Isometry, LatticeError, LatticeVector, OrbitLabel, VectorType,
};

#[test]
fn representatives_classify_to_their_labels() {
    for n in -10..=10i64 {
        for &label in OrbitLabel::for_half_norm(n) {
            let rep = representative(2 * n, label).unwrap();
            let report = classify(&rep).unwrap();
            assert_eq!(report.label, label, "n = {n}");
            assert_eq!(report.norm, 2 * n);
            let in_u2u = representative_in(Arc::new(u2u()), 2 * n, label).unwrap();
            assert_eq!(classify(&in_u2u).unwrap().label, label);
        }
    }
}

#[test]
fn heegner_reports_agree_in_both_indexings() {
    let by_n = heegner_report(-6, 6).unwrap();
    let by_norm = heegner_report_by_norm(-12, 12).unwrap();
    assert_eq!(by_n, by_norm);
    for r in &by_n {
        assert_eq!(r.component_count, if r.n % 2 == 0 { 2 } else { 1 });
        assert_eq!(r.components.len(), r.component_count);
    }
}

#[test]
fn sampled_words_move_representatives_within_their_label() {
    let l = Arc::new(lminus());
    for seed in 0..50u64 {
        let g = sample_word(l.clone(), seed, 6).unwrap();
        for (norm, label) in [(8, OrbitLabel::EvenCharacteristic), (8, OrbitLabel::EvenOrdinary), (-6, OrbitLabel::OddOrbit)] {
            let rep = representative(norm, label).unwrap();
            let moved = g.apply(&rep).unwrap();
            assert_eq!(moved.norm().unwrap(), norm);
            assert_eq!(classify(&moved).unwrap().label, label, "seed {seed}");
        }
    }
}

#[test]
fn isometry_json_round_trip_and_rejection() {
    let l = Arc::new(lminus());
    let set = GeneratorSet::for_lattice(l.clone()).unwrap();
    let g = set.sample_word(3, 4).unwrap();
    let back = Isometry::from_json(&g.to_json()).unwrap();
    assert_eq!(back.matrix(), g.matrix());

    let mut bad = g.to_json();
    bad.matrix[0][0] += 1;
    assert!(matches!(Isometry::from_json(&bad), Err(LatticeError::NotIsometry)));
}

#[test]
fn census_matches_box_enumeration() {
    let l = Arc::new(u2u());
    let rows = oracle::label_census(l.clone(), 4, -4, 4).unwrap();
    for row in rows {
        let scan = oracle::enumerate_primitive(l.clone(), 4, Some(2 * row.n)).unwrap();
        assert_eq!(scan.vectors.len(), row.count, "n = {}", row.n);
    }
}

#[test]
fn types_in_k3_lattice() {
    // Lambda is even, so only the zero class is characteristic there
    let k3 = Arc::new(builtin("Lambda").unwrap());
    let mut c = vec![0i64; 22];
    c[20] = 1;
    let v = LatticeVector::new(k3, c).unwrap();
    assert_eq!(v.vector_type().unwrap(), VectorType::Ordinary);
    assert!(matches!(classify(&v), Err(LatticeError::LatticeShapeMismatch { .. })));
}
