use ccrit_core::criticality::{
    c1_constant, tc_film, tc_grain_cubic, tc_wire_general, tc_wire_square, GLParams,
};
use ccrit_core::gap::{gap_defect, GapProblem};
use ccrit_core::lattice_sums::{
    a_d_bessel, epstein_d_direct, epstein_d_recurrence, w_d, LatticeQuery,
};
use ccrit_core::specfun::bessel_k;
use ccrit_core::TruncationPolicy;
use proptest::prelude::*;

fn policy() -> TruncationPolicy {
    TruncationPolicy::default()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn epstein_is_homogeneous(nu in 1.2f64..4.0, l1 in 0.5f64..2.0, l2 in 0.5f64..2.0, s in 0.5f64..2.0) {
        let t = policy();
        let base = epstein_d_recurrence(nu, &[l1, l2], &t).unwrap().value;
        let scaled = epstein_d_recurrence(nu, &[s * l1, s * l2], &t).unwrap().value;
        prop_assert!(rel(scaled, s.powf(-2.0 * nu) * base) < 1e-11);
    }

    #[test]
    fn recurrence_is_permutation_invariant(nu in 1.6f64..4.0, l in prop::array::uniform3(0.6f64..1.8)) {
        let t = policy();
        let a = epstein_d_recurrence(nu, &l, &t).unwrap().value;
        let b = epstein_d_recurrence(nu, &[l[2], l[0], l[1]], &t).unwrap().value;
        let c = epstein_d_recurrence(nu, &[l[1], l[0], l[2]], &t).unwrap().value;
        prop_assert_eq!(a.to_bits(), b.to_bits());
        prop_assert_eq!(a.to_bits(), c.to_bits());
    }

    #[test]
    fn recurrence_matches_direct_in_two_dimensions(nu in 1.3f64..4.0, l1 in 0.5f64..2.0, l2 in 0.5f64..2.0) {
        let t = policy();
        let direct = epstein_d_direct(nu, &[l1, l2], &t).unwrap().value;
        let rec = epstein_d_recurrence(nu, &[l1, l2], &t).unwrap().value;
        prop_assert!(rel(rec, direct) < 1e-10);
    }

    #[test]
    fn bessel_k_is_even_in_order(nu in 0.0f64..6.0, z in 0.05f64..30.0) {
        prop_assert_eq!(bessel_k(nu, z).unwrap(), bessel_k(-nu, z).unwrap());
    }

    #[test]
    fn bessel_k_recurrence(nu in 0.2f64..6.0, z in 0.1f64..30.0) {
        let lhs = bessel_k(nu + 1.0, z).unwrap();
        let rhs = bessel_k(nu - 1.0, z).unwrap() + 2.0 * nu / z * bessel_k(nu, z).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn bessel_k_is_decreasing(nu in 0.0f64..5.0, z in 0.1f64..20.0, dz in 0.01f64..2.0) {
        prop_assert!(bessel_k(nu, z + dz).unwrap() < bessel_k(nu, z).unwrap());
    }

    #[test]
    fn a_d_scale_covariance(nu in 1.2f64..4.0, b in prop::collection::vec(0.4f64..2.0, 1..=2), c in 0.3f64..2.0, s in 0.5f64..2.0) {
        let t = policy();
        let base = a_d_bessel(&LatticeQuery::new(nu, b.clone(), c).unwrap(), &t).unwrap().value;
        let sb: Vec<f64> = b.iter().map(|x| s * x).collect();
        let scaled = a_d_bessel(&LatticeQuery::new(nu, sb, s * c).unwrap(), &t).unwrap().value;
        prop_assert!(rel(scaled, s.powf(-2.0 * nu) * base) < 1e-10);
    }

    #[test]
    fn film_law_is_linear_in_inverse_thickness(alpha in 0.1f64..5.0, lambda in 0.01f64..2.0, t0 in 0.1f64..10.0, l in 0.01f64..100.0) {
        let g = GLParams::new(alpha, lambda, t0).unwrap();
        let r = tc_film(&g, l).unwrap();
        let want = t0 - c1_constant() * lambda / (alpha * l);
        prop_assert!((r.tc - want).abs() <= 1e-14 * t0.max(want.abs()));
        prop_assert_eq!(r.transition_exists, l > r.min_size);
    }

    #[test]
    fn tc_grows_with_size(l in 0.05f64..50.0, grow in 1.01f64..4.0) {
        let g = GLParams::new(1.0, 0.5, 2.0).unwrap();
        let t = policy();
        prop_assert!(tc_film(&g, l).unwrap().tc < tc_film(&g, l * grow).unwrap().tc);
        prop_assert!(tc_wire_square(&g, l, &t).unwrap().tc < tc_wire_square(&g, l * grow, &t).unwrap().tc);
        prop_assert!(tc_grain_cubic(&g, l, &t).unwrap().tc < tc_grain_cubic(&g, l * grow, &t).unwrap().tc);
    }

    #[test]
    fn square_wire_is_the_equal_sides_case(side in 0.1f64..20.0) {
        let g = GLParams::new(0.7, 0.3, 1.5).unwrap();
        let t = policy();
        let square = tc_wire_square(&g, side * side, &t).unwrap().tc;
        let general = tc_wire_general(&g, side, side, &t).unwrap().tc;
        prop_assert!((square - general).abs() <= 1e-14 * square.abs().max(1.0));
    }

    #[test]
    fn w_is_positive(eta in -1.0f64..2.0, l in prop::collection::vec(0.5f64..2.0, 2..=3)) {
        prop_assert!(w_d(eta, &l, &policy()).unwrap().value > 0.0);
    }

    #[test]
    fn gap_defect_increases(m_sq in 0.01f64..4.0, dm in 0.01f64..1.0, l in 0.5f64..3.0, lambda in 0.0f64..0.5) {
        let p = GapProblem::new(3.0, vec![l], 0.2, lambda).unwrap();
        let t = policy();
        prop_assert!(gap_defect(&p, m_sq, &t).unwrap() < gap_defect(&p, m_sq + dm, &t).unwrap());
    }
}

#[test]
fn tighter_tolerance_never_uses_fewer_terms() {
    let mut previous = 0;
    for rel_tol in [1e-6, 1e-8, 1e-10, 1e-12, 1e-14] {
        let t = TruncationPolicy::new(rel_tol, 1e-300, 1 << 14).unwrap();
        let v = epstein_d_direct(2.0, &[1.0, 1.3], &t).unwrap();
        assert!(v.terms_used >= previous, "rel_tol {rel_tol}");
        previous = v.terms_used;
    }
}
