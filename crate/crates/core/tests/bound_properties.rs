//! Invariants of the bound machinery: homogeneity of the bracket under root
//! scaling and time reparameterization, the assumption property at `A0`,
//! the coarse-norm inequality chain, and randomized hypothesis-satisfying
//! runs of the Glaeser and Taylor calculators.

use hyperlip_core::bounds::{
    bronshtein_a, bronshtein_bound, check_assumption, glaeser_bound, interpolation_coeff_bound,
    taylor_derivative_bounds,
};
use hyperlip_core::curves::{lipschitz, sup_abs, GroundTruthFamily};
use hyperlip_core::poly::RealPoly;
use hyperlip_core::tracking::{empirical_lipschitz, sample_grid, track_ordered};
use hyperlip_core::Interval;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

/// Random family in Tschirnhausen form: root polynomials with their mean
/// subtracted, so the bracket controls the tracked roots themselves.
fn centered_family(rng: &mut ChaCha8Rng, n: usize, domain: Interval) -> GroundTruthFamily {
    let raw: Vec<RealPoly> = (0..n)
        .map(|_| RealPoly::new((0..=4).map(|_| rng.gen_range(-2.0..2.0)).collect()))
        .collect();
    let mut mean = RealPoly::zero();
    for r in &raw {
        mean = mean.add(r);
    }
    mean = mean.scale(1.0 / n as f64);
    let centered: Vec<RealPoly> = raw.iter().map(|r| r.sub(&mean)).collect();
    GroundTruthFamily::from_root_functions(centered, domain)
}

#[test]
fn bracket_is_one_homogeneous_in_root_scale() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let (i0, i1) = (iv(-1.0, 1.0), iv(-2.0, 2.0));
    for n in 2..=5 {
        for _ in 0..10 {
            let fam = centered_family(&mut rng, n, iv(-2.0, 2.0));
            let base = bronshtein_bound(fam.curve(), i0, i1).unwrap();
            let c = 3.0;
            let scaled = GroundTruthFamily::from_root_functions(
                fam.root_polys().iter().map(|r| r.scale(c)).collect(),
                iv(-2.0, 2.0),
            );
            let got = bronshtein_bound(scaled.curve(), i0, i1).unwrap();
            for (x, y) in [
                (got.a1, c * base.a1),
                (got.a2, c * base.a2),
                (got.a0, c * base.a0),
                (got.bracket, c * base.bracket),
            ] {
                assert!(
                    (x - y).abs() <= 1e-12 * y.abs().max(1e-300),
                    "n={n}: {x} vs {y}"
                );
            }
            // empirical Lipschitz scales the same way, so the ratio is
            // scale-invariant
            let lip_base = fam.root_lipschitz(i0);
            let lip_scaled = scaled.root_lipschitz(i0);
            assert!((lip_scaled - c * lip_base).abs() <= 1e-12 * lip_base.max(1.0));
        }
    }
}

#[test]
fn bracket_scales_with_time_compression() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let s = 2.0;
    for n in 2..=5 {
        for _ in 0..10 {
            let fam = centered_family(&mut rng, n, iv(-2.0, 2.0));
            let base = bronshtein_bound(fam.curve(), iv(-1.0, 1.0), iv(-2.0, 2.0)).unwrap();
            // new(t) = old(s t) on the shrunken intervals
            let fast = fam.curve().reparameterize(s, 0.0).unwrap();
            let got = bronshtein_bound(&fast, iv(-0.5, 0.5), iv(-1.0, 1.0)).unwrap();
            assert!(
                (got.bracket - s * base.bracket).abs() <= 1e-10 * (s * base.bracket).max(1e-12),
                "n={n}: {} vs {}",
                got.bracket,
                s * base.bracket
            );
            // tracked Lipschitz constant picks up the same factor
            let grid = sample_grid(iv(-1.0, 1.0), 256).unwrap();
            let lip = empirical_lipschitz(&track_ordered(fam.curve(), &grid, 1e-11).unwrap())
                .unwrap()
                .overall;
            let grid_fast = sample_grid(iv(-0.5, 0.5), 256).unwrap();
            let lip_fast = empirical_lipschitz(&track_ordered(&fast, &grid_fast, 1e-11).unwrap())
                .unwrap()
                .overall;
            assert!(
                (lip_fast - s * lip).abs() <= 1e-6 * (s * lip).max(1e-9),
                "n={n}: {lip_fast} vs {}",
                s * lip
            );
        }
    }
}

#[test]
fn assumption_holds_at_a0() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let (i0, i1) = (iv(-1.0, 1.0), iv(-2.0, 2.0));
    for n in 2..=4 {
        for _ in 0..15 {
            let fam = centered_family(&mut rng, n, iv(-2.0, 2.0));
            let (_, _, a0) = bronshtein_a(fam.curve(), i0, i1).unwrap();
            if a0 == 0.0 {
                continue; // identically coincident roots
            }
            let a2 = fam.curve().tschirn_poly(2);
            for t0 in i0.sample(16) {
                if a2.eval(t0) == 0.0 {
                    continue;
                }
                let chk = check_assumption(fam.curve(), i0, i1, a0, t0).unwrap();
                assert!(chk.a1_ok, "n={n} t0={t0}: window escaped I1");
                assert!(chk.a2_ratio_ok, "n={n} t0={t0}: ratio {}", chk.worst_ratio);
                assert!(chk.deriv_ok);
            }
        }
    }
}

#[test]
fn bracket_below_coarse_norm_chain() {
    // bracket <= max(1/delta, 1) * max_i ||a~_i||^(1/i) and the root form
    // is below 1 + max_i ||a~_i||, deterministically
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let (i0, i1) = (iv(-1.0, 1.0), iv(-2.0, 2.0));
    for n in 2..=5 {
        for _ in 0..25 {
            let fam = centered_family(&mut rng, n, iv(-2.0, 2.0));
            let r = bronshtein_bound(fam.curve(), i0, i1).unwrap();
            let c = (1.0 / r.delta).max(1.0);
            assert!(
                r.bracket <= c * r.max_cnorm_root * (1.0 + 1e-9),
                "n={n}: {} vs {}",
                r.bracket,
                c * r.max_cnorm_root
            );
            assert!(r.max_cnorm_root <= r.max_cnorm_plus_one * (1.0 + 1e-9));
        }
    }
}

#[test]
fn interpolation_bound_never_violated() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for _ in 0..2000 {
        let n = rng.gen_range(1..=6usize);
        let b = rng.gen_range(0.25..4.0);
        let coeffs: Vec<f64> = (0..=n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let f = RealPoly::new(coeffs.clone());
        let a = sup_abs(&f, iv(0.0, b));
        if a == 0.0 {
            continue;
        }
        let bounds = interpolation_coeff_bound(n, a, b);
        for (j, c) in coeffs.iter().enumerate() {
            assert!(
                c.abs() <= bounds[j] * (1.0 + 1e-12),
                "n={n} j={j}: {} vs {}",
                c.abs(),
                bounds[j]
            );
        }
    }
}

#[test]
fn glaeser_never_violated_under_hypotheses() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let mut checked = 0usize;
    for _ in 0..2000 {
        // f = s * g^2 is single-signed with degree <= 6
        let g = RealPoly::new((0..=3).map(|_| rng.gen_range(-2.0..2.0)).collect::<Vec<f64>>());
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let f = g.mul(&g).scale(sign);
        let interval = iv(-2.0, 2.0);
        let t0 = rng.gen_range(-1.0..1.0);
        // choose M large enough for both hypotheses, with headroom
        let lip_fp = sup_abs(&f.nth_derivative(2), interval);
        let dist = (t0 - interval.lo).min(interval.hi - t0);
        let m_min = lip_fp.sqrt().max(f.eval(t0).abs().sqrt() / dist);
        let m = (m_min * rng.gen_range(1.0..3.0)).max(1e-6);
        let chk = glaeser_bound(&f, t0, m, interval).unwrap();
        assert!(chk.holds, "lhs {} rhs {}", chk.lhs, chk.rhs);
        checked += 1;
    }
    assert_eq!(checked, 2000);
}

#[test]
fn taylor_bounds_never_violated() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..2000 {
        let deg = rng.gen_range(0..=6usize);
        let f = RealPoly::new((0..=deg).map(|_| rng.gen_range(-3.0..3.0)).collect::<Vec<f64>>());
        let lo = rng.gen_range(-2.0..1.0);
        let interval = iv(lo, lo + rng.gen_range(0.5..3.0));
        let m = rng.gen_range(1..=6usize);
        for row in taylor_derivative_bounds(&f, interval, m).unwrap() {
            assert!(
                row.holds,
                "deg={deg} m={m} k={}: {} vs {}",
                row.k, row.actual, row.bound
            );
        }
    }
}

#[test]
fn lipschitz_helper_is_sup_of_derivative() {
    let f = RealPoly::new(vec![0.0, 0.0, -1.0]); // -t^2
    assert!((lipschitz(&f, iv(-2.0, 2.0)) - 4.0).abs() < 1e-12);
}
