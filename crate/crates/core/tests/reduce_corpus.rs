//! End-to-end exercise of the reducer: every generated loop must contract
//! and the resulting certificate must replay through the verifier.

use pants_complex::corpus::{random_loops, LoopSpec};
use pants_complex::farey::{FareyModel, ModelKind};
use pants_complex::homotopy::{reduce_farey_loop, verify_certificate, Step};

#[test]
fn every_corpus_loop_reduces_and_verifies() {
    let spec = LoopSpec {
        count: 1000,
        max_len: 30,
        max_coeff: 1_000_000,
        seed: 0xC0FFEE,
    };
    let loops = random_loops(&spec);
    assert_eq!(loops.len(), spec.count);
    for kind in [ModelKind::A, ModelKind::S] {
        let model = FareyModel::new(kind);
        for (i, l) in loops.iter().enumerate() {
            let cert = reduce_farey_loop(&model, l)
                .unwrap_or_else(|e| panic!("loop {i} failed to reduce: {e}"));
            verify_certificate(&model, &cert)
                .unwrap_or_else(|e| panic!("certificate {i} failed to verify: {e}"));
        }
    }
}

#[test]
fn reduction_never_inflates_coefficients() {
    // Every slope the reducer writes lies in a triangle fan between two
    // existing loop entries, so coefficients stay within the loop's own
    // bound. Spot-check on a moderate corpus.
    let spec = LoopSpec {
        count: 60,
        max_len: 24,
        max_coeff: 10_000,
        seed: 9,
    };
    let model = FareyModel::new(ModelKind::A);
    for l in random_loops(&spec) {
        let bound = l.iter().map(|s| s.max_coeff()).max().unwrap();
        let cert = reduce_farey_loop(&model, &l).unwrap();
        for step in &cert.steps {
            if let Step::CellSwap { cell, .. } = step {
                for v in &cell.boundary {
                    assert!(
                        v.max_coeff() <= bound,
                        "{v} exceeds the loop bound {bound}"
                    );
                }
            }
        }
    }
}
