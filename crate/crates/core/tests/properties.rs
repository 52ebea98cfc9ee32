use proptest::prelude::*;
use tduality::aks::{aks_factors, aks_factors_generic, exp_curve, flow_orbit, flow_tb, flow_tsu2};
use tduality::groups::{coadjoint_b_on_su2, iwasawa_factorize};
use tduality::phase::{act_tb, act_tsu2, momentum_tb, momentum_tsu2, TBPt, TSU2Pt};
use tduality::{BCov, BEl, Mat2C, SU2El, Su2Cov, Su2Vec, C64};

fn coord() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

fn complex() -> impl Strategy<Value = C64> {
    (coord(), coord()).prop_map(|(re, im)| C64::new(re, im))
}

fn sl2() -> impl Strategy<Value = Mat2C> {
    (complex(), complex(), complex(), complex())
        .prop_map(|(a, b, c, d)| Mat2C::new(a, b, c, d))
        .prop_filter("well conditioned determinant", |m| m.det().norm() > 0.1)
        .prop_map(|m| m.scale(m.det().sqrt().inv()))
}

fn unit_vec() -> impl Strategy<Value = Su2Vec> {
    (coord(), coord(), coord())
        .prop_filter("nonzero", |(a, b, c)| a * a + b * b + c * c > 0.01)
        .prop_map(|(a, b, c)| {
            let n = (a * a + b * b + c * c).sqrt();
            Su2Vec::new(a / n, b / n, c / n)
        })
}

fn bel() -> impl Strategy<Value = BEl> {
    (-1.0..1.0f64, coord(), coord()).prop_map(|(la, b, c)| BEl::new(la.exp(), b, c).unwrap())
}

fn su2() -> impl Strategy<Value = SU2El> {
    (complex(), complex())
        .prop_filter("nonzero", |(a, b)| a.norm_sqr() + b.norm_sqr() > 0.01)
        .prop_filter("off the diagonal", |(a, b)| b.norm() / (a.norm_sqr() + b.norm_sqr()).sqrt() > 0.05)
        .prop_map(|(a, b)| SU2El::new_unchecked(a, b).renormalized().0)
}

proptest! {
    #[test]
    fn iwasawa_reconstructs(m in sl2()) {
        let (g, b) = iwasawa_factorize(&m).unwrap();
        prop_assert!(g.unitarity_defect() < 1e-12);
        prop_assert!(b.a > 0.0);
        prop_assert!((g.to_matrix() * b.to_matrix()).max_abs_diff(&m) < 1e-12 * m.max_abs().max(1.0));
    }

    #[test]
    fn closed_form_matches_generic(x in unit_vec(), t in -3.0..3.0f64) {
        let (g, b) = aks_factors(&x, t).unwrap();
        let (gg, bg) = aks_factors_generic(&x, t);
        prop_assert!(g.max_abs_diff(&gg) < 1e-11 && b.max_abs_diff(&bg) < 1e-11);
        prop_assert!((g.to_matrix() * b.to_matrix()).max_abs_diff(&exp_curve(&x, t)) < 1e-12);
    }

    #[test]
    fn coadjoint_action_is_a_homomorphism(b1 in bel(), b2 in bel(), x in unit_vec()) {
        let lhs = coadjoint_b_on_su2(&(b1 * b2), &x);
        let rhs = coadjoint_b_on_su2(&b1, &coadjoint_b_on_su2(&b2, &x));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn tb_momentum_is_equivariant(b in bel(), h in bel(), e in coord(), et in coord(), c in coord()) {
        let pt = TBPt { bel: b, eta: BCov::new(e, et, c) };
        let lhs = momentum_tb(&act_tb(&h, &pt));
        let rhs = coadjoint_b_on_su2(&h, &momentum_tb(&pt));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn tsu2_momentum_is_equivariant(g in su2(), h in bel(), c1 in coord(), c2 in coord(), c3 in coord()) {
        let pt = TSU2Pt { g, eta: Su2Cov::new(c1, c2, c3) };
        let lhs = momentum_tsu2(&act_tsu2(&h, &pt));
        let rhs = coadjoint_b_on_su2(&h, &momentum_tsu2(&pt));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn dual_flows_share_the_orbit_curve(g in su2(), b in bel(), c1 in coord(), c2 in coord(), c3 in coord(), t in -2.0..2.0f64) {
        let tsu2 = TSU2Pt { g, eta: Su2Cov::new(c1, c2, c3) };
        let x0 = momentum_tsu2(&tsu2);
        prop_assume!(x0.det() > 1e-2);
        let tb = TBPt { bel: b, eta: tduality::algebra::psi_map(&coadjoint_b_on_su2(&b.inverse(), &x0)) };
        let orbit = flow_orbit(&x0, t).unwrap();
        let scale = orbit.max_abs().max(1.0);
        prop_assert!(momentum_tsu2(&flow_tsu2(&tsu2, t).unwrap()).max_abs_diff(&orbit) < 1e-9 * scale);
        prop_assert!(momentum_tb(&flow_tb(&tb, t).unwrap()).max_abs_diff(&orbit) < 1e-9 * scale);
    }
}
