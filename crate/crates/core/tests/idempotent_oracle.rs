mod common;

use axial_core::catalog::{norton_sakuma, NsType};
use axial_core::exactnum::{Scalar, Vector};
use axial_core::idempotents::{find_idempotents, Backend, IdempotentQuery};
use common::oracle::idempotents_by_resultants;

/// Lengths of the obvious idempotents: 0, axes, extra basis idempotents,
/// the identity, and identity minus each of those.
fn interesting_lengths(t: NsType) -> Vec<Scalar> {
    let ns = norton_sakuma(t);
    let alg = &ns.algebra;
    let form = alg.form().unwrap();
    let e = alg.identity_of().unwrap();
    let mut idem: Vec<Vector> = vec![e.clone()];
    for i in 0..alg.dim() {
        let b = alg.basis_vector(i);
        if alg.multiply(&b, &b).unwrap() == b {
            idem.push(b.clone());
            idem.push(&e - &b);
        }
    }
    let mut lens: Vec<Scalar> = idem.iter().map(|v| form.eval(v, v)).collect();
    lens.push(Scalar::zero());
    lens.sort();
    lens.dedup();
    lens
}

#[test]
fn exact_small_matches_resultants() {
    for t in [NsType::A2, NsType::B2, NsType::A3, NsType::C3] {
        let ns = norton_sakuma(t);
        for len in interesting_lengths(t) {
            let q = IdempotentQuery::new(&ns.algebra, len.clone(), Backend::ExactSmall);
            let r = find_idempotents(&q).unwrap();
            let oracle = idempotents_by_resultants(&ns.algebra, &len);
            assert_eq!(r.found, oracle, "{t} at length {len}");
            assert!(r.complete, "{t} at length {len}");
        }
    }
}

#[test]
fn oracle_interpolation() {
    common::oracle::interpolation_self_check();
}
