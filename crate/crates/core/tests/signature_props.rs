mod common;

use cmatroid::linalg::{self, GaussMatrix};
use cmatroid::phase::{pconv_contains, phase_of};
use cmatroid::phirotope::dual_phirotope;
use cmatroid::signature::{
    circuit_member, circuits_from_phirotope, check_orthogonality, cocircuit_signature_from_circuits,
    cocircuits_from_phirotope, contract_signature, delete_signature, min_support_orthogonal, verify_circuit_axioms,
    verify_dual_pair, weak_map_circuits, weak_map_phirotope_unit, weak_map_phirotopes, DualPairFailure,
};
use cmatroid::{ElemSet, GaussRational, Phase, PhaseVector, Phirotope};
use proptest::prelude::*;
use rand::Rng;

fn phi_of(seed: u64) -> (GaussMatrix, Phirotope) {
    let mut r = common::rng(seed);
    let m = common::random_matrix(&mut r, false);
    let p = Phirotope::from_matrix(&m).unwrap();
    (m, p)
}

fn phases(v: &[GaussRational]) -> PhaseVector {
    PhaseVector::from_dense(v.iter().map(phase_of).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pivot_rule_matches_cramer_for_every_completion(seed in any::<u64>()) {
        let (m, p) = phi_of(seed);
        let mat = p.underlying_matroid();
        let sig = circuits_from_phirotope(&p);
        for &c in mat.circuits() {
            let cramer = phases(&linalg::circuit_vector(&m, c).unwrap());
            let member = sig.member_on(c).unwrap();
            prop_assert!(member.unit_ratio(&cramer).is_some());
            let base = c.without(c.min().unwrap());
            for a in mat.ground().difference(c).subsets_of_size(mat.rank() - base.len()) {
                if mat.is_basis(base.union(a)) {
                    let x = circuit_member(&p, c, a);
                    prop_assert!(x.unit_ratio(member).is_some());
                }
            }
        }
    }

    #[test]
    fn modular_eliminants_match_the_realization(seed in any::<u64>()) {
        let (m, p) = phi_of(seed);
        let mat = p.underlying_matroid();
        let sig = circuits_from_phirotope(&p);
        let cs = mat.circuits();
        for &c1 in cs {
            for &c2 in cs {
                if c1 == c2 || !mat.is_modular_pair_circuits(c1, c2).unwrap() {
                    continue;
                }
                let x = linalg::circuit_vector(&m, c1).unwrap();
                let y = linalg::circuit_vector(&m, c2).unwrap();
                for e in c1.intersection(c2).iter() {
                    let alpha = &(-&x[e]) / &y[e];
                    let z: Vec<GaussRational> = x.iter().zip(&y).map(|(a, b)| a + &(b * &alpha)).collect();
                    let zp = phases(&z);
                    prop_assert!(mat.is_circuit(zp.support()));
                    prop_assert!(sig.member_on(zp.support()).unwrap().unit_ratio(&zp).is_some());
                    for g in zp.support().iter() {
                        let (xg, yg) = (phase_of(&x[g]), phase_of(&(&y[g] * &alpha)));
                        match (xg.is_zero(), yg.is_zero()) {
                            (false, false) => prop_assert!(pconv_contains(&[xg, yg], &zp.get(g))),
                            (false, true) => prop_assert_eq!(zp.get(g), xg),
                            (true, false) => prop_assert_eq!(zp.get(g), yg),
                            (true, true) => prop_assert!(false),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn realizable_signatures_satisfy_the_axioms(seed in any::<u64>()) {
        let (_, p) = phi_of(seed);
        let mat = p.underlying_matroid();
        let c = circuits_from_phirotope(&p);
        let d = cocircuits_from_phirotope(&p);
        prop_assert!(verify_circuit_axioms(mat, &c).is_ok());
        prop_assert!(verify_circuit_axioms(&mat.dual(), &d).is_ok());
        prop_assert!(check_orthogonality(&c, &d).is_ok());
        prop_assert!(verify_dual_pair(mat, &c, &d).is_ok());
        for x in c.members() {
            for y in d.members() {
                prop_assert_ne!(x.support().intersection(y.support()).len(), 1);
            }
        }
    }

    #[test]
    fn three_cocircuit_constructions_agree(seed in any::<u64>()) {
        let (_, p) = phi_of(seed);
        let mat = p.underlying_matroid();
        let c = circuits_from_phirotope(&p);
        let d = cocircuits_from_phirotope(&p);
        prop_assert_eq!(&cocircuit_signature_from_circuits(mat, &c).unwrap(), &d);
        prop_assert_eq!(&min_support_orthogonal(&c).unwrap(), &d);
        prop_assert_eq!(min_support_orthogonal(&d).unwrap(), c);
    }

    #[test]
    fn perturbed_cocircuits_break_orthogonality(seed in any::<u64>()) {
        let (_, p) = phi_of(seed);
        let mut r = common::rng(seed ^ 0xd0a1);
        let mat = p.underlying_matroid();
        let c = circuits_from_phirotope(&p);
        let d = cocircuits_from_phirotope(&p);
        let candidates: Vec<&PhaseVector> = d.members().iter().filter(|w| w.support().len() >= 2).collect();
        prop_assume!(!candidates.is_empty());
        for _ in 0..10 {
            let w = candidates[r.gen_range(0..candidates.len())];
            let elems = w.support().to_vec();
            let e = elems[r.gen_range(0..elems.len())];
            let mut bad = w.clone();
            bad.set(e, &w.get(e) * &common::nontrivial_unit(&mut r));
            let d2 = d.replace(w.support(), bad).unwrap();
            let verdict = verify_dual_pair(mat, &c, &d2);
            prop_assert!(matches!(verdict, Err(DualPairFailure::NotOrthogonal(..))));
        }
    }

    #[test]
    fn minors_commute_with_duality(seed in any::<u64>(), pick in any::<u8>()) {
        let (_, p) = phi_of(seed);
        let ground = p.ground().to_vec();
        let e = ElemSet::singleton(ground[pick as usize % ground.len()]);
        let c = circuits_from_phirotope(&p);
        let d = cocircuits_from_phirotope(&p);
        let lhs = contract_signature(&d, e).unwrap();
        let rhs = min_support_orthogonal(&delete_signature(&c, e).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let lhs = delete_signature(&d, e).unwrap();
        let rhs = min_support_orthogonal(&contract_signature(&c, e).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn signature_minors_match_phirotope_minors(seed in any::<u64>(), bits in any::<u16>()) {
        let (_, p) = phi_of(seed);
        let a = ElemSet::from_bits(bits).intersection(p.ground());
        prop_assume!(a != p.ground());
        let c = circuits_from_phirotope(&p);
        let del = cmatroid::phirotope::delete_phirotope(&p, a).unwrap();
        let con = cmatroid::phirotope::contract_phirotope(&p, a).unwrap();
        prop_assert_eq!(delete_signature(&c, a).unwrap(), circuits_from_phirotope(&del));
        prop_assert_eq!(contract_signature(&c, a).unwrap(), circuits_from_phirotope(&con));
    }

    #[test]
    fn weak_map_tests_agree_on_equal_rank(seed in any::<u64>()) {
        let (m, p) = phi_of(seed);
        let Some(q) = common::zero_one_minor(&m, seed) else { return Ok(()) };
        prop_assert_eq!(q.rank(), p.rank());
        let (c1, c2) = (circuits_from_phirotope(&p), circuits_from_phirotope(&q));
        prop_assert_eq!(weak_map_circuits(&c1, &c2), weak_map_phirotopes(&p, &q));
        prop_assert!(weak_map_phirotopes(&p, &p) && weak_map_circuits(&c1, &c1));
    }
}

#[test]
fn weak_map_examples() {
    let phi = |rows: &[&[&str]]| Phirotope::from_matrix(&GaussMatrix::from_literals(rows)).unwrap();
    let p1 = phi(&[&["1", "0", "1"], &["0", "1", "1"]]);
    let p2 = phi(&[&["1", "0", "1"], &["0", "1", "0"]]);
    let p3 = phi(&[&["1", "0", "1"], &["0", "1", "i"]]);
    let c = |p: &Phirotope| circuits_from_phirotope(p);
    assert_eq!(weak_map_phirotope_unit(&p1, &p2), Ok(Phase::one()));
    assert!(weak_map_circuits(&c(&p1), &c(&p2)));
    for (a, b) in [(&p1, &p3), (&p3, &p1)] {
        assert!(!weak_map_phirotopes(a, b));
        assert!(!weak_map_circuits(&c(a), &c(b)));
    }
}

#[test]
fn dual_of_dual_signature() {
    let m = GaussMatrix::from_literals(&[&["1", "1+i", "1", "0"], &["1+i", "3i", "0", "1"]]);
    let p = Phirotope::from_matrix(&m).unwrap();
    let c = circuits_from_phirotope(&p);
    assert_eq!(circuits_from_phirotope(&dual_phirotope(&p)).members(), cocircuits_from_phirotope(&p).members());
    assert_eq!(min_support_orthogonal(&min_support_orthogonal(&c).unwrap()).unwrap(), c);
}

#[test]
fn antipodal_entries_cancel_in_elimination() {
    // columns 1 and 2 are parallel, so eliminating 3 between the two large circuits
    // cancels 4 and 5 as well and leaves {1,2}
    let m = GaussMatrix::from_literals(&[
        &["3", "-3", "0", "-1+i", "-2+i"],
        &["0", "0", "-3i", "3-3i", "2+3i"],
        &["2+i", "-2-i", "3+2i", "0", "0"],
    ]);
    let p = Phirotope::from_matrix(&m).unwrap();
    let c = circuits_from_phirotope(&p);
    assert_eq!(c.len(), 3);
    assert!(verify_circuit_axioms(p.underlying_matroid(), &c).is_ok());
}
