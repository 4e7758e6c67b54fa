//! Property-based checks of the polynomial layer.

use hyperlip_core::poly::{MonicPoly, RealPoly};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = f64> {
    (-100.0..100.0f64).prop_filter("finite", |x| x.is_finite())
}

fn monic(max_deg: usize) -> impl Strategy<Value = MonicPoly> {
    prop::collection::vec(coeff(), 1..=max_deg).prop_map(MonicPoly::new)
}

proptest! {
    /// Horner evaluation agrees with the naive power expansion.
    #[test]
    fn eval_matches_naive(p in monic(8), z in -5.0..5.0f64) {
        let n = p.degree();
        let mut naive = z.powi(n as i32);
        for (j, a) in p.coeffs().iter().enumerate() {
            naive += a * z.powi((n - j - 1) as i32);
        }
        let scale = 1.0 + naive.abs() + p.coeffs().iter().map(|a| a.abs()).fold(0.0, f64::max) * z.abs().powi(n as i32);
        prop_assert!((p.eval(z) - naive).abs() <= 1e-11 * scale);
    }

    /// The recentred polynomial evaluates as P(z - shift).
    #[test]
    fn tschirnhausen_is_a_shift(p in monic(8), z in -3.0..3.0f64) {
        let t = p.tschirnhausen();
        let lhs = t.reduced().eval(z);
        let rhs = p.eval(z - t.shift());
        let scale = 1.0 + lhs.abs() + rhs.abs()
            + p.coeffs().iter().map(|a| a.abs()).fold(0.0, f64::max) * (z.abs() + t.shift().abs() + 1.0).powi(p.degree() as i32);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
        prop_assert_eq!(t.reduced().coeff(1), 0.0);
    }

    /// Division identity: p = q * d + r with deg r < deg d.
    #[test]
    fn div_rem_identity(
        pc in prop::collection::vec(coeff(), 1..=9),
        dc in prop::collection::vec(coeff(), 1..=5),
    ) {
        let p = RealPoly::new(pc);
        let d = RealPoly::new(dc);
        prop_assume!(!d.is_zero());
        prop_assume!(d.leading().abs() > 1e-3);
        let (q, r) = p.div_rem(&d);
        let back = q.mul(&d).add(&r);
        let scale = 1.0 + p.inf_norm() + q.inf_norm() * d.inf_norm();
        for (i, c) in back.coeffs().iter().enumerate() {
            let orig = p.coeffs().get(i).copied().unwrap_or(0.0);
            prop_assert!((c - orig).abs() <= 1e-9 * scale);
        }
        if let (Some(rd), Some(dd)) = (r.degree(), d.degree()) {
            prop_assert!(rd < dd);
        }
    }

    /// Derivative is linear and obeys the product rule.
    #[test]
    fn derivative_product_rule(
        ac in prop::collection::vec(coeff(), 1..=5),
        bc in prop::collection::vec(coeff(), 1..=5),
    ) {
        let a = RealPoly::new(ac);
        let b = RealPoly::new(bc);
        let lhs = a.mul(&b).derivative();
        let rhs = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        let scale = 1.0 + lhs.inf_norm() + rhs.inf_norm();
        for (x, y) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            prop_assert!((x - y).abs() <= 1e-9 * scale);
        }
        prop_assert_eq!(lhs.degree(), rhs.degree());
    }

    /// Roots survive the expansion round trip.
    #[test]
    fn from_roots_evaluates_to_zero(roots in prop::collection::vec(-10.0..10.0f64, 1..=7)) {
        let p = MonicPoly::from_roots(&roots);
        for &r in &roots {
            let scale = (1.0 + r.abs()).powi(roots.len() as i32)
                * (1.0 + p.coeffs().iter().map(|a| a.abs()).fold(0.0, f64::max));
            prop_assert!(p.eval(r).abs() <= 1e-10 * scale);
        }
    }
}
