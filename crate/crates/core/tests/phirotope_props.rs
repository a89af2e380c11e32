mod common;

use cmatroid::io;
use cmatroid::linalg::{self, GaussMatrix};
use cmatroid::phase::phase_of;
use cmatroid::phirotope::{self, all_cross_ratios, contract_phirotope, delete_phirotope, dual_phirotope};
use cmatroid::signature::circuits_from_phirotope;
use cmatroid::{ElemSet, Phase, PhaseVector, Phirotope};
use proptest::prelude::*;
use rand::Rng;

fn phi_of(seed: u64) -> (GaussMatrix, Phirotope) {
    let mut r = common::rng(seed);
    let m = common::random_matrix(&mut r, false);
    let p = Phirotope::from_matrix(&m).unwrap();
    (m, p)
}

/// Rows spanning the Hermitian complement of the row space: conjugated kernel vectors.
fn hermitian_complement(m: &GaussMatrix) -> Option<GaussMatrix> {
    let k = linalg::kernel_basis(m);
    if k.is_empty() {
        return None;
    }
    Some(GaussMatrix::new(k.iter().map(|v| v.iter().map(|z| z.conj()).collect()).collect()).unwrap())
}

/// Minimal-support kernel vectors of `h`, found by brute force over supports.
fn min_support_kernel_phases(h: &GaussMatrix) -> Vec<PhaseVector> {
    let n = h.ncols();
    let mut out = Vec::new();
    for s in ElemSet::full(n).all_subsets() {
        if s.is_empty() || linalg::column_rank(h, s) != s.len() - 1 {
            continue;
        }
        if s.iter().any(|x| linalg::column_rank(h, s.without(x)) != s.len() - 1) {
            continue;
        }
        let cols = s.to_vec();
        let k = linalg::kernel_basis(&h.select_columns(&cols));
        assert_eq!(k.len(), 1);
        let entries = cols.iter().zip(&k[0]).map(|(&e, z)| (e, phase_of(z)));
        out.push(PhaseVector::new(ElemSet::full(n), entries).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn realizable_phirotopes_satisfy_gp(seed in any::<u64>()) {
        let (_, p) = phi_of(seed);
        prop_assert!(p.check_gp().is_ok());
    }

    #[test]
    fn row_operations_rescale_globally(seed in any::<u64>()) {
        let (m, p) = phi_of(seed);
        let mut r = common::rng(seed ^ 0x5eed);
        let d = m.nrows();
        let g = common::random_matrix_with(&mut r, d, d, false);
        let q = Phirotope::from_matrix(&g.mul(&m).unwrap()).unwrap();
        let det = linalg::det(&g, &(0..d).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(q, p.scaled(&phase_of(&det)));
    }

    #[test]
    fn column_rescaling_is_reorientation(seed in any::<u64>()) {
        let (m, p) = phi_of(seed);
        let mut r = common::rng(seed ^ 0xc01);
        let e = r.gen_range(0..m.ncols());
        let s = cmatroid::GaussRational::from_ints(r.gen_range(1..=3), r.gen_range(-3..=3));
        let q = Phirotope::from_matrix(&m.scale_column(e, &s)).unwrap();
        let u = phase_of(&s);
        prop_assert_eq!(&q, &p.reorient(e, &u));
        prop_assert_eq!(all_cross_ratios(&q), all_cross_ratios(&p));
    }

    #[test]
    fn dual_is_a_phirotope_on_the_dual_matroid(seed in any::<u64>()) {
        let (_, p) = phi_of(seed);
        let d = dual_phirotope(&p);
        prop_assert!(d.check_gp().is_ok());
        prop_assert_eq!(d.underlying_matroid(), &p.underlying_matroid().dual());
        prop_assert!(dual_phirotope(&d).unit_ratio(&p).is_some());
    }

    #[test]
    fn deletion_dualizes_to_contraction(seed in any::<u64>(), pick in any::<u8>()) {
        let (_, p) = phi_of(seed);
        let ground = p.ground().to_vec();
        let e = ElemSet::singleton(ground[pick as usize % ground.len()]);
        let lhs = dual_phirotope(&delete_phirotope(&p, e).unwrap());
        let rhs = contract_phirotope(&dual_phirotope(&p), e).unwrap();
        prop_assert!(lhs.unit_ratio(&rhs).is_some(), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn minors_of_realizations_are_phirotopes(seed in any::<u64>(), bits in any::<u16>()) {
        let (_, p) = phi_of(seed);
        let a = ElemSet::from_bits(bits).intersection(p.ground());
        prop_assume!(a != p.ground());
        let del = delete_phirotope(&p, a).unwrap();
        let con = contract_phirotope(&p, a).unwrap();
        prop_assert!(del.check_gp().is_ok());
        prop_assert!(con.check_gp().is_ok());
        prop_assert_eq!(del.underlying_matroid(), &p.underlying_matroid().delete(a).unwrap());
        prop_assert_eq!(con.underlying_matroid(), &p.underlying_matroid().contract(a).unwrap());
    }

    #[test]
    fn dual_circuits_match_hermitian_complement(seed in any::<u64>()) {
        let (m, p) = phi_of(seed);
        let Some(h) = hermitian_complement(&m) else { return Ok(()) };
        let expected = min_support_kernel_phases(&h);
        let got = circuits_from_phirotope(&dual_phirotope(&p));
        prop_assert_eq!(got.len(), expected.len());
        for v in &expected {
            let member = got.member_on(v.support());
            prop_assert!(member.is_some());
            prop_assert!(member.unwrap().unit_ratio(v).is_some());
        }
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>()) {
        let (m, p) = phi_of(seed);
        prop_assert_eq!(io::parse_phirotope(&io::write_phirotope(&p)).unwrap(), p);
        prop_assert_eq!(io::parse_matrix(&io::write_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn real_matrices_have_real_cross_ratios(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let m = common::random_matrix(&mut r, true);
        let p = Phirotope::from_matrix(&m).unwrap();
        for (_, cr) in all_cross_ratios(&p) {
            prop_assert!(cr.is_real());
        }
    }
}

#[test]
fn rotated_value_breaks_gp() {
    // all ones except 3 4 : i
    let text = "phirotope rank=2 ground=4\n1 2 : 1\n1 3 : 1\n1 4 : 1\n2 3 : 1\n2 4 : 1\n3 4 : i\n";
    let p = io::parse_phirotope(text).unwrap();
    let failures: Vec<_> = p.gp_failures().collect();
    assert!(failures.iter().any(|w| w.x == vec![0, 2, 3] && w.y == vec![1]));
    assert!(p.check_gp().is_err());
}

#[test]
fn w1_cross_ratio_and_reorientation() {
    let m = GaussMatrix::from_literals(&[&["1", "1+i", "1", "0"], &["1+i", "3i", "0", "1"]]);
    let p = Phirotope::from_matrix(&m).unwrap();
    assert_eq!(phirotope::cross_ratio(&p, 0, 3, &[1], &[2]), Some(Phase::minus_one()));
    assert!(all_cross_ratios(&p).iter().all(|(_, cr)| cr.is_real()));
    assert_eq!(phirotope::cross_ratio(&p, 0, 1, &[1], &[2]), None);
}
