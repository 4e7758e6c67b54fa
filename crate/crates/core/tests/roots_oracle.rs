//! Cross-checks of the Sturm-based root engine against independent oracles:
//! companion-matrix eigenvalues, direct power sums, and reconstruction from
//! the computed roots.

use hyperlip_core::poly::MonicPoly;
use hyperlip_core::realroots::{is_hyperbolic, ordered_roots};
use hyperlip_core::DEFAULT_TOL;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_roots(rng: &mut ChaCha8Rng, n: usize, mag: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-mag..mag)).collect()
}

/// Real eigenvalues of the companion matrix, sorted; the independent root
/// oracle.
fn companion_roots(p: &MonicPoly) -> Vec<f64> {
    let n = p.degree();
    let a = p.coeffs();
    let m = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if j + 1 == n {
            // last column holds -a_{n-i}
            -a[n - 1 - i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eig = m.complex_eigenvalues();
    let mut out: Vec<f64> = eig
        .iter()
        .filter(|z| z.im.abs() < 1e-6 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}

#[test]
fn ordered_roots_match_companion_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=8 {
        for _ in 0..40 {
            let roots = random_roots(&mut rng, n, 10.0);
            let p = MonicPoly::from_roots(&roots);
            let got = ordered_roots(&p, DEFAULT_TOL).unwrap();
            let oracle = companion_roots(&p);
            assert_eq!(oracle.len(), n, "oracle lost roots for {roots:?}");
            for (a, b) in got.values().iter().zip(&oracle) {
                assert!(
                    (a - b).abs() <= 1e-6 * (1.0 + b.abs()),
                    "n={n}: {a} vs oracle {b}"
                );
            }
        }
    }
}

#[test]
fn reconstruction_recovers_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=8 {
        for _ in 0..40 {
            let roots = random_roots(&mut rng, n, 10.0);
            let p = MonicPoly::from_roots(&roots);
            let got = ordered_roots(&p, DEFAULT_TOL).unwrap();
            let rec = got.reconstruct();
            for (c, d) in rec.coeffs().iter().zip(p.coeffs()) {
                assert!(
                    (c - d).abs() <= 1e-8 * (1.0 + d.abs()),
                    "n={n}: coeff {c} vs {d}"
                );
            }
        }
    }
}

#[test]
fn newton_sums_match_direct_power_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 2..=8 {
        for _ in 0..40 {
            let roots = random_roots(&mut rng, n, 10.0);
            let p = MonicPoly::from_roots(&roots);
            let sums = p.newton_sums(n);
            for (k, s) in sums.iter().enumerate() {
                let direct: f64 = roots.iter().map(|r| r.powi(k as i32 + 1)).sum();
                assert!(
                    (s - direct).abs() <= 1e-8 * (1.0 + direct.abs()),
                    "n={n} k={}: {s} vs {direct}",
                    k + 1
                );
            }
        }
    }
}

#[test]
fn tschirnhausen_shifts_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 2..=6 {
        for _ in 0..40 {
            let roots = random_roots(&mut rng, n, 5.0);
            let p = MonicPoly::from_roots(&roots);
            let t = p.tschirnhausen();
            let reduced_roots = ordered_roots(t.reduced(), DEFAULT_TOL).unwrap();
            let mut expected: Vec<f64> = roots.iter().map(|r| r + t.shift()).collect();
            expected.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for (a, b) in reduced_roots.values().iter().zip(&expected) {
                assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()), "{a} vs {b}");
            }
        }
    }
}

#[test]
fn ordered_roots_are_continuous_under_perturbation() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..20 {
        // well-separated roots so the perturbed polynomial stays hyperbolic
        let n = rng.gen_range(2..=6);
        let mut roots: Vec<f64> = Vec::new();
        let mut x = rng.gen_range(-5.0..-4.0);
        for _ in 0..n {
            roots.push(x);
            x += rng.gen_range(0.5..2.0);
        }
        let p = MonicPoly::from_roots(&roots);
        let base = ordered_roots(&p, DEFAULT_TOL).unwrap();
        let dir: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut prev_gap = f64::INFINITY;
        for eps in [1e-6, 1e-7, 1e-8] {
            let coeffs: Vec<f64> = p
                .coeffs()
                .iter()
                .zip(&dir)
                .map(|(a, d)| a + eps * d)
                .collect();
            let q = MonicPoly::new(coeffs);
            let cert = is_hyperbolic(&q, DEFAULT_TOL).unwrap();
            assert!(cert.is_hyperbolic);
            let moved = ordered_roots(&q, DEFAULT_TOL).unwrap();
            let gap = base
                .values()
                .iter()
                .zip(moved.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0_f64, f64::max);
            assert!(gap <= prev_gap + 1e-12, "gap grew along the ladder");
            prev_gap = gap;
        }
        assert!(prev_gap <= 1e-6, "final gap {prev_gap}");
    }
}

#[test]
fn certification_counts_multiplicities() {
    // products of repeated linear factors keep full real count
    let p = MonicPoly::from_roots(&[2.0, 2.0, -1.0, -1.0, -1.0]);
    let cert = is_hyperbolic(&p, DEFAULT_TOL).unwrap();
    assert!(cert.is_hyperbolic);
    assert_eq!(cert.real_root_count, 5);
    let r = ordered_roots(&p, DEFAULT_TOL).unwrap();
    let expect = [-1.0, -1.0, -1.0, 2.0, 2.0];
    for (a, b) in r.values().iter().zip(expect) {
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }
}
