//! Explicit Lipschitz-bound machinery for the roots of a hyperbolic family:
//! the admissible-scale quantities `A1`, `A2`, `A0`, the bracket expressions
//! whose product with a universal per-degree constant bounds the root
//! Lipschitz constant, the interval-assumption checker, the
//! alpha-uniformity measure for the lower-multiplicity case, and standalone
//! inequality calculators (interpolation coefficient bounds, Glaeser,
//! Taylor).
//!
//! All quantities are computed from the curve's derived Tschirnhausen
//! coefficients `a~_i(t)`, so they control the centered root system
//! `mu_j = lambda_j + a_1(t)/n`. For a curve already in Tschirnhausen form
//! (`a_1 = 0`) that is the root system itself; otherwise the shift
//! `-a_1(t)/n` contributes its own Lipschitz constant separately.
//!
//! The universal constants multiplying the brackets are never pinned down
//! here; the computable, testable content is the bracket itself together
//! with the stability of `empirical Lipschitz / bracket` across sampled
//! families.

use alloc::vec::Vec;

use crate::curves::{self, CoeffCurve};
use crate::error::{Error, Result};
use crate::fmath::{abs, powf, powi, sqrt};
use crate::interval::Interval;
use crate::realroots::ordered_roots;

/// Grid density used for the alpha-uniformity sup when none is given.
pub const DEFAULT_ALPHA_GRID: usize = 2048;

/// Samples used on the admissible window by [`check_assumption`].
const ASSUMPTION_SAMPLES: usize = 256;

/// Every quantity entering the explicit root-Lipschitz bounds on a nested
/// interval pair, excluding the universal per-degree constant.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    /// Seminorm / multiplicity order the report was computed at (`p = n`
    /// for the full-multiplicity case).
    pub p: usize,
    pub i0: Interval,
    pub i1: Interval,
    /// Minimum one-sided endpoint gap between `I0` and `I1`.
    pub delta: f64,
    /// `sup |a~_2|` over `I1`.
    pub sup_a2: f64,
    /// `Lip(a~_2')` over `I1`.
    pub lip_a2p: f64,
    /// `M_i = Lip(a~_i^(p-1))` over `I1`, for `i = 2..=n` (index `i-2`).
    pub m: Vec<f64>,
    /// `min |a~_2|` over `I0`.
    pub m2: f64,
    pub a1: f64,
    pub a2: f64,
    /// `6 * max(A1, A2)`.
    pub a0: f64,
    /// Smallest `i` attaining the max in `A2` (for reproducible reports).
    pub a2_argmax: usize,
    /// Alpha-uniformity sup over `I1`; `None` in the `p = n` case.
    pub alpha: Option<f64>,
    /// Set when some alpha denominator vanished (bound unavailable,
    /// bracket reported as infinity).
    pub alpha_unbounded: bool,
    /// The max-expression of the final bound, without the universal
    /// constant.
    pub bracket: f64,
    /// Coarser form `max_i ||a~_i||^(1/i)` in the `C^{p-1,1}(I1)` norm.
    pub max_cnorm_root: f64,
    /// Coarsest form `1 + max_i ||a~_i||` in the `C^{p-1,1}(I1)` norm.
    pub max_cnorm_plus_one: f64,
}

/// Outcome of the interval-assumption check at a base point `t0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AssumptionCheck {
    pub t0: f64,
    /// Half-width `|a~_2(t0)|^(1/2) / A` of the admissible window.
    pub radius: f64,
    /// Window contained in `I1`.
    pub a1_ok: bool,
    /// Sampled ratio `a~_2(t)/a~_2(t0)` stayed within `[1/2, 2]`.
    pub a2_ratio_ok: bool,
    /// The fitted derivative constant is finite.
    pub deriv_ok: bool,
    /// The sampled ratio farthest from 1 (multiplicatively).
    pub worst_ratio: f64,
    /// Smallest constant `C^` with
    /// `|a~_i^(k)(t)| <= C^ A^k |a~_2(t)|^((i-k)/2)` over all samples,
    /// `i = 2..=n`, `k = 0..=n`.
    pub worst_deriv_margin: f64,
}

fn validate_intervals(curve: &CoeffCurve, i0: &Interval, i1: &Interval) -> Result<()> {
    if !i1.strictly_contains(i0) || !curve.domain().contains_interval(i1) {
        return Err(Error::BadIntervals);
    }
    Ok(())
}

fn report_for(curve: &CoeffCurve, i0: Interval, i1: Interval, p: usize, alpha_grid: usize) -> Result<BoundReport> {
    let n = curve.degree();
    assert!(n >= 2, "bounds need degree >= 2");
    if p < 2 || p > n {
        return Err(Error::InvalidOrder { p, n });
    }
    validate_intervals(curve, &i0, &i1)?;
    let delta = i0.endpoint_gap(&i1);
    let a2_poly = curve.tschirn_poly(2);
    let sup_a2 = curves::sup_abs(a2_poly, i1);
    let lip_a2p = curves::sup_abs(&a2_poly.nth_derivative(2), i1);
    let m2 = curves::min_abs(a2_poly, i0);
    let m: Vec<f64> = (2..=n)
        .map(|i| curves::sup_abs(&curve.tschirn_poly(i).nth_derivative(p), i1))
        .collect();

    let a1 = (sqrt(sup_a2) / delta).max(sqrt(lip_a2p));

    let (a2, a2_argmax, alpha, alpha_unbounded, bracket);
    if p == n {
        let mut best = f64::NEG_INFINITY;
        let mut arg = 2usize;
        for i in 2..=n {
            let v = m[i - 2] * powf(sup_a2, (n - i) as f64 / 2.0);
            if v > best {
                best = v;
                arg = i;
            }
        }
        a2 = powf(best, 1.0 / n as f64);
        a2_argmax = arg;
        alpha = None;
        alpha_unbounded = false;
        bracket = a1.max(a2);
    } else {
        if m2 == 0.0 {
            return Err(Error::DegenerateM2);
        }
        let mut best = f64::NEG_INFINITY;
        let mut arg = 2usize;
        for i in 2..=n {
            let v = if i <= p {
                m[i - 2] * powf(sup_a2, (p - i) as f64 / 2.0)
            } else {
                m[i - 2] * powf(m2, -((i - p) as f64) / 2.0)
            };
            if v > best {
                best = v;
                arg = i;
            }
        }
        a2 = powf(best, 1.0 / p as f64);
        a2_argmax = arg;
        let au = alpha_uniformity(curve, i1, alpha_grid, p)?;
        alpha_unbounded = au.unbounded;
        alpha = Some(au.alpha);
        bracket = if au.unbounded {
            f64::INFINITY
        } else {
            powf(au.alpha, (n - p) as f64 / p as f64) * a1.max(a2)
        };
    }
    let a0 = 6.0 * a1.max(a2);

    let mut max_cnorm = 0.0_f64;
    let mut max_cnorm_root = 0.0_f64;
    for i in 2..=n {
        let c = curves::cnorm(curve.tschirn_poly(i), i1, p);
        max_cnorm = max_cnorm.max(c);
        max_cnorm_root = max_cnorm_root.max(powf(c, 1.0 / i as f64));
    }

    Ok(BoundReport {
        n,
        p,
        i0,
        i1,
        delta,
        sup_a2,
        lip_a2p,
        m,
        m2,
        a1,
        a2,
        a0,
        a2_argmax,
        alpha,
        alpha_unbounded,
        bracket,
        max_cnorm_root,
        max_cnorm_plus_one: 1.0 + max_cnorm,
    })
}

/// The admissible-scale quantities `(A1, A2, A0)` for the full-multiplicity
/// case `p = n`:
/// `A1 = max(delta^-1 sup|a~_2|^(1/2), Lip(a~_2')^(1/2))`,
/// `A2 = max_i (M_i sup|a~_2|^((n-i)/2))^(1/n)` with
/// `M_i = Lip(a~_i^(n-1))`, and `A0 = 6 max(A1, A2)`.
pub fn bronshtein_a(curve: &CoeffCurve, i0: Interval, i1: Interval) -> Result<(f64, f64, f64)> {
    let r = report_for(curve, i0, i1, curve.degree(), DEFAULT_ALPHA_GRID)?;
    Ok((r.a1, r.a2, r.a0))
}

/// Full bound report for the `p = n` case; the bracket is
/// `max(delta^-1 sup|a~_2|^(1/2), Lip(a~_2')^(1/2), max_i (M_i sup|a~_2|^((n-i)/2))^(1/n))`.
pub fn bronshtein_bound(curve: &CoeffCurve, i0: Interval, i1: Interval) -> Result<BoundReport> {
    report_for(curve, i0, i1, curve.degree(), DEFAULT_ALPHA_GRID)
}

/// Bound report for multiplicity at most `p < n` (delegates to
/// [`bronshtein_bound`] when `p = n`): `A2` swaps in `m2 = min |a~_2|` for
/// the coefficients with `i > p`, and the bracket carries the uniformity
/// factor `alpha^((n-p)/p)` over `I1`.
pub fn bound_lower_multiplicity(
    curve: &CoeffCurve,
    i0: Interval,
    i1: Interval,
    p: usize,
    alpha_grid: usize,
) -> Result<BoundReport> {
    report_for(curve, i0, i1, p, alpha_grid.max(1))
}

/// Alpha-uniformity sup over a sampling grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaUniformity {
    pub alpha: f64,
    /// Some denominator vanished: multiplicities exceed `p` somewhere and
    /// the measure is unbounded.
    pub unbounded: bool,
}

/// `sup_t |root_n - root_1| / min_i |root_(i+p) - root_i|` over a grid on
/// `interval`, from the ordered roots at each node. A vanishing denominator
/// sets the `unbounded` flag. Requires `2 <= p < n`.
pub fn alpha_uniformity(
    curve: &CoeffCurve,
    interval: Interval,
    grid: usize,
    p: usize,
) -> Result<AlphaUniformity> {
    let n = curve.degree();
    if p < 2 || p >= n {
        return Err(Error::InvalidOrder { p, n });
    }
    if !curve.domain().contains_interval(&interval) {
        return Err(Error::BadIntervals);
    }
    let mut alpha = 0.0_f64;
    let mut unbounded = false;
    for t in interval.sample(grid.max(1)) {
        let roots = ordered_roots(&curve.eval_curve(t)?, crate::DEFAULT_TOL)?;
        let v = roots.values();
        let spread = v[n - 1] - v[0];
        let mut denom = f64::INFINITY;
        for i in 0..n - p {
            denom = denom.min(v[i + p] - v[i]);
        }
        if denom <= 1e-13 * spread.max(1.0) {
            unbounded = true;
            continue;
        }
        alpha = alpha.max(spread / denom);
    }
    Ok(AlphaUniformity { alpha, unbounded })
}

/// Verifies the interval assumption at `t0` for a given constant `A`:
/// window containment in `I1`, the two-sided ratio bound on `a~_2`, and the
/// fitted constant of the weighted derivative bounds.
pub fn check_assumption(
    curve: &CoeffCurve,
    i0: Interval,
    i1: Interval,
    a: f64,
    t0: f64,
) -> Result<AssumptionCheck> {
    let n = curve.degree();
    assert!(n >= 2, "assumption check needs degree >= 2");
    assert!(a > 0.0, "A must be positive");
    validate_intervals(curve, &i0, &i1)?;
    if !i0.contains(t0) {
        return Err(Error::OutOfDomain { t: t0 });
    }
    let a2_poly = curve.tschirn_poly(2);
    let v0 = a2_poly.eval(t0);
    if v0 == 0.0 {
        return Err(Error::ZeroA2 { t0 });
    }
    let radius = sqrt(abs(v0)) / a;
    let a1_ok = i1.lo <= t0 - radius && t0 + radius <= i1.hi;

    // Sample the window clipped to the curve domain so every evaluation is
    // defined even when containment already failed.
    let dom = curve.domain();
    let lo = (t0 - radius).max(dom.lo);
    let hi = (t0 + radius).min(dom.hi);
    let samples: Vec<f64> = if lo < hi {
        Interval { lo, hi }.sample(ASSUMPTION_SAMPLES)
    } else {
        alloc::vec![t0]
    };

    let mut a2_ratio_ok = true;
    let mut worst_ratio = 1.0_f64;
    let mut worst_dev = 1.0_f64;
    for &t in &samples {
        let ratio = a2_poly.eval(t) / v0;
        if !(0.5 - 1e-12..=2.0 + 1e-12).contains(&ratio) {
            a2_ratio_ok = false;
        }
        let dev = if ratio > 0.0 {
            ratio.max(1.0 / ratio)
        } else {
            f64::INFINITY
        };
        if dev > worst_dev {
            worst_dev = dev;
            worst_ratio = ratio;
        }
    }

    // Fitted constant of |a~_i^(k)(t)| <= C^ A^k |a~_2(t)|^((i-k)/2).
    let mut c_hat = 0.0_f64;
    for i in 2..=n {
        let mut d = curve.tschirn_poly(i).clone();
        for k in 0..=n {
            for &t in &samples {
                let num = abs(d.eval(t));
                let denom = powi(a, k as i32) * powf(abs(a2_poly.eval(t)), (i as f64 - k as f64) / 2.0);
                if num == 0.0 {
                    continue;
                }
                c_hat = c_hat.max(num / denom);
            }
            d = d.derivative();
        }
    }

    Ok(AssumptionCheck {
        t0,
        radius,
        a1_ok,
        a2_ratio_ok,
        deriv_ok: c_hat.is_finite(),
        worst_ratio,
        worst_deriv_margin: c_hat,
    })
}

// ---------------------------------------------------------------------------
// Standalone lemma calculators
// ---------------------------------------------------------------------------

/// Coefficient bounds `(b_0, ..., b_n)` with `b_j = (2n)^(n+1) A B^(-j)` for
/// a degree-`n` polynomial bounded by `A` on `[0, B]` (coefficients numbered
/// in ascending order here).
pub fn interpolation_coeff_bound(n: usize, a: f64, b: f64) -> Vec<f64> {
    assert!(a > 0.0 && b > 0.0, "bounds need A, B > 0");
    let c = powi(2.0 * n as f64, (n + 1) as i32);
    (0..=n).map(|j| c * a * powi(b, -(j as i32))).collect()
}

/// Two sides of the single-signed derivative inequality
/// `|f'(t0)| <= 2 M |f(t0)|^(1/2)` together with the hypothesis record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlaeserCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub hypotheses_ok: bool,
    /// Half-width `M^-1 |f(t0)|^(1/2)` of the window the hypotheses are
    /// checked on.
    pub radius: f64,
}

/// Checks the hypotheses (single sign on `I`, window containment,
/// `M^2 >= Lip(f')` on the window) and reports both sides of
/// `|f'(t0)| <= 2 M |f(t0)|^(1/2)`.
pub fn glaeser_bound(
    f: &crate::poly::RealPoly,
    t0: f64,
    m: f64,
    interval: Interval,
) -> Result<GlaeserCheck> {
    assert!(m > 0.0, "M must be positive");
    if !interval.contains(t0) {
        return Err(Error::HypothesisFailed { condition: "t0 must lie in I" });
    }
    let sup_f = curves::sup_abs(f, interval);
    let slack = 1e-12 * sup_f.max(1.0);
    let (fmin, fmax) = signed_range(f, interval);
    if fmin < -slack && fmax > slack {
        return Err(Error::HypothesisFailed {
            condition: "f must be nonnegative or nonpositive on I",
        });
    }
    let radius = sqrt(abs(f.eval(t0))) / m;
    if t0 - radius < interval.lo || t0 + radius > interval.hi {
        return Err(Error::HypothesisFailed {
            condition: "the window I_t0(M^-1) must lie inside I",
        });
    }
    let lip_fp = if radius > 0.0 {
        curves::sup_abs(&f.nth_derivative(2), Interval { lo: t0 - radius, hi: t0 + radius })
    } else {
        0.0
    };
    if m * m < lip_fp * (1.0 - 1e-12) {
        return Err(Error::HypothesisFailed {
            condition: "M^2 must dominate Lip(f') on the window",
        });
    }
    let lhs = abs(f.derivative().eval(t0));
    let rhs = 2.0 * m * sqrt(abs(f.eval(t0)));
    Ok(GlaeserCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-10 * rhs.max(1.0),
        hypotheses_ok: true,
        radius,
    })
}

/// Signed `(min, max)` of a polynomial over a closed interval, via
/// endpoints and interior critical points.
fn signed_range(f: &crate::poly::RealPoly, interval: Interval) -> (f64, f64) {
    let mut lo = f.eval(interval.lo);
    let mut hi = lo;
    for t in core::iter::once(interval.hi).chain(
        crate::realroots::real_roots_in(&f.derivative(), interval.lo, interval.hi, 1e-12),
    ) {
        let v = f.eval(t);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// One row of the Taylor-derivative bound report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorBound {
    pub k: usize,
    /// `C(m) |I|^(-k) (sup|f| + Lip(f^(m-1)) |I|^m)`.
    pub bound: f64,
    /// Exact `sup |f^(k)|` on the interval.
    pub actual: f64,
    pub holds: bool,
}

/// Explicit constant of the Taylor-derivative bound, extracted from the
/// interpolation step of its proof: `C(1) = 1` and
/// `C(m) = m! (2(m-1))^m` for `m >= 2`. An upper-bound choice, not optimal.
pub fn taylor_constant(m: usize) -> f64 {
    if m <= 1 {
        return 1.0;
    }
    let mut fact = 1.0;
    for i in 2..=m {
        fact *= i as f64;
    }
    fact * powi(2.0 * (m as f64 - 1.0), m as i32)
}

/// Per-order bounds `|f^(k)| <= C(m) |I|^(-k) (sup|f| + Lip(f^(m-1)) |I|^m)`
/// for `k = 1..=m`, each paired with the exact sup of the derivative.
pub fn taylor_derivative_bounds(
    f: &crate::poly::RealPoly,
    interval: Interval,
    m: usize,
) -> Result<Vec<TaylorBound>> {
    if m == 0 {
        return Err(Error::HypothesisFailed { condition: "m must be at least 1" });
    }
    let len = interval.len();
    let sup_f = curves::sup_abs(f, interval);
    let lip = curves::sup_abs(&f.nth_derivative(m), interval);
    let c = taylor_constant(m);
    let budget = sup_f + lip * powi(len, m as i32);
    let mut out = Vec::with_capacity(m);
    for k in 1..=m {
        let bound = c * powi(len, -(k as i32)) * budget;
        let actual = curves::sup_abs(&f.nth_derivative(k), interval);
        out.push(TaylorBound {
            k,
            bound,
            actual,
            holds: actual <= bound + 1e-10 * bound.max(1.0),
        });
    }
    Ok(out)
}
