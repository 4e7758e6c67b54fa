//! One-parameter coefficient curves `t -> P_{a(t)}` with polynomial
//! coefficients, their Tschirnhausen companion curve, exact derivative
//! sup-norms, and ground-truth families built from explicit root functions.
//!
//! Restricting coefficients to polynomials in `t` keeps every derivative and
//! Lipschitz seminorm exactly computable by critical-point root finding;
//! sampled or spline coefficient data is out of scope.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fmath::abs;
use crate::interval::Interval;
use crate::poly::{binomial, MonicPoly, RealPoly};
use crate::realroots::{self, is_hyperbolic};

/// Grid size used to validate hyperbolicity when a curve is built from raw
/// coefficient polynomials.
pub const DEFAULT_VALIDATION_GRID: usize = 1024;

/// A family `P_{a(t)}(Z) = Z^n + sum a_j(t) Z^(n-j)` with each `a_j` a
/// polynomial in `t` on a closed domain interval.
///
/// Holds the derived Tschirnhausen curve: the coefficients `a~_2 .. a~_n` of
/// `P_{a(t)}(Z - a_1(t)/n)`, whose first coefficient vanishes identically.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffCurve {
    degree: usize,
    coeff_polys: Vec<RealPoly>,
    domain: Interval,
    shift_poly: RealPoly,
    tschirn: Vec<RealPoly>,
}

impl CoeffCurve {
    /// Builds and validates hyperbolicity on the default 1024-point grid.
    pub fn make_curve(coeff_polys: Vec<RealPoly>, domain: Interval) -> Result<Self> {
        Self::make_curve_validated(coeff_polys, domain, DEFAULT_VALIDATION_GRID)
    }

    /// Builds with a caller-chosen validation grid density.
    pub fn make_curve_validated(
        coeff_polys: Vec<RealPoly>,
        domain: Interval,
        grid: usize,
    ) -> Result<Self> {
        let curve = Self::assemble(coeff_polys, domain);
        for t in domain.sample(grid.max(1)) {
            let p = curve.eval_curve(t)?;
            let cert = is_hyperbolic(&p, crate::DEFAULT_TOL)?;
            if !cert.is_hyperbolic {
                return Err(Error::NotHyperbolicOnDomain { t });
            }
        }
        Ok(curve)
    }

    /// Assembles the curve and its Tschirnhausen companion without any
    /// hyperbolicity check (for families hyperbolic by construction).
    pub(crate) fn assemble(coeff_polys: Vec<RealPoly>, domain: Interval) -> Self {
        let n = coeff_polys.len();
        assert!(n >= 1, "curve needs degree >= 1");
        let shift_poly = coeff_polys[0].scale(1.0 / n as f64);
        // a~_j(t) = sum_{i<=j} a_i(t) C(n-i, j-i) s(t)^(j-i), s = -a_1/n
        let s = shift_poly.scale(-1.0);
        let mut spow: Vec<RealPoly> = Vec::with_capacity(n + 1);
        spow.push(RealPoly::constant(1.0));
        for j in 1..=n {
            let prev = spow[j - 1].clone();
            spow.push(prev.mul(&s));
        }
        let coeff = |i: usize| -> RealPoly {
            if i == 0 {
                RealPoly::constant(1.0)
            } else {
                coeff_polys[i - 1].clone()
            }
        };
        let mut tschirn = Vec::with_capacity(n.saturating_sub(1));
        for j in 2..=n {
            let mut acc = RealPoly::zero();
            for i in 0..=j {
                let term = coeff(i).scale(binomial(n - i, j - i)).mul(&spow[j - i]);
                acc = acc.add(&term);
            }
            tschirn.push(acc);
        }
        CoeffCurve {
            degree: n,
            coeff_polys,
            domain,
            shift_poly,
            tschirn,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Coefficient polynomial `a_j(t)` for `1 <= j <= n`.
    pub fn coeff_poly(&self, j: usize) -> &RealPoly {
        assert!(j >= 1 && j <= self.degree);
        &self.coeff_polys[j - 1]
    }

    pub fn coeff_polys(&self) -> &[RealPoly] {
        &self.coeff_polys
    }

    /// Tschirnhausen coefficient polynomial `a~_i(t)` for `2 <= i <= n`.
    pub fn tschirn_poly(&self, i: usize) -> &RealPoly {
        assert!(i >= 2 && i <= self.degree);
        &self.tschirn[i - 2]
    }

    /// The shift polynomial `a_1(t)/n`.
    pub fn shift_poly(&self) -> &RealPoly {
        &self.shift_poly
    }

    /// `P_{a(t)}` at a parameter value inside the domain.
    pub fn eval_curve(&self, t: f64) -> Result<MonicPoly> {
        if !self.domain.contains(t) {
            return Err(Error::OutOfDomain { t });
        }
        Ok(MonicPoly::new(
            self.coeff_polys.iter().map(|p| p.eval(t)).collect(),
        ))
    }

    /// The Tschirnhausen-form polynomial at `t` (first coefficient exactly
    /// zero).
    pub fn tschirn_at(&self, t: f64) -> Result<MonicPoly> {
        if !self.domain.contains(t) {
            return Err(Error::OutOfDomain { t });
        }
        if self.degree == 1 {
            return Ok(MonicPoly::new(vec![0.0]));
        }
        let mut coeffs = vec![0.0];
        coeffs.extend(self.tschirn.iter().map(|p| p.eval(t)));
        Ok(MonicPoly::new(coeffs))
    }

    /// New curve reparameterized as `t -> a(alpha t + beta)` on the pulled
    /// back domain.
    pub fn reparameterize(&self, alpha: f64, beta: f64) -> Result<CoeffCurve> {
        let polys: Vec<RealPoly> = self
            .coeff_polys
            .iter()
            .map(|p| p.compose_affine(alpha, beta))
            .collect();
        let (lo, hi) = (
            (self.domain.lo - beta) / alpha,
            (self.domain.hi - beta) / alpha,
        );
        let domain = Interval::new(lo.min(hi), lo.max(hi))?;
        Ok(CoeffCurve::assemble(polys, domain))
    }
}

/// A test family with explicit polynomial root functions `r_j(t)`; the
/// coefficient curve is their exact elementary-symmetric expansion, so the
/// family is hyperbolic by construction and the roots are known in closed
/// form.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruthFamily {
    root_polys: Vec<RealPoly>,
    curve: CoeffCurve,
}

impl GroundTruthFamily {
    pub fn from_root_functions(root_polys: Vec<RealPoly>, domain: Interval) -> Self {
        assert!(!root_polys.is_empty(), "need at least one root function");
        // expand prod (Z - r_j(t)) with coefficients in t
        let mut coeffs: Vec<RealPoly> = vec![RealPoly::constant(1.0)];
        for r in &root_polys {
            let mut next = vec![RealPoly::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].sub(&r.mul(c));
            }
            coeffs = next;
        }
        // coeffs is ascending in Z with leading 1; a_j multiplies Z^(n-j)
        let n = root_polys.len();
        let mut coeff_polys = Vec::with_capacity(n);
        for j in 1..=n {
            coeff_polys.push(coeffs[n - j].clone());
        }
        GroundTruthFamily {
            root_polys,
            curve: CoeffCurve::assemble(coeff_polys, domain),
        }
    }

    pub fn root_polys(&self) -> &[RealPoly] {
        &self.root_polys
    }

    pub fn curve(&self) -> &CoeffCurve {
        &self.curve
    }

    /// Exact roots at `t`, in root-function order (unsorted).
    pub fn roots_at(&self, t: f64) -> Vec<f64> {
        self.root_polys.iter().map(|r| r.eval(t)).collect()
    }

    /// Exact roots at `t`, sorted nondecreasing.
    pub fn sorted_roots_at(&self, t: f64) -> Vec<f64> {
        let mut v = self.roots_at(t);
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    /// Largest slope of any root function on the interval (the exact
    /// Lipschitz constant of the root system).
    pub fn root_lipschitz(&self, interval: Interval) -> f64 {
        self.root_polys
            .iter()
            .map(|r| sup_abs(&r.derivative(), interval))
            .fold(0.0_f64, f64::max)
    }
}

/// Seeded random ground-truth family: `degree` root polynomials of degree
/// `<= root_deg` with coefficients uniform in `[-2, 2]`.
pub fn random_family<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    root_deg: usize,
    domain: Interval,
) -> GroundTruthFamily {
    let root_polys = (0..degree)
        .map(|_| {
            RealPoly::new(
                (0..=root_deg)
                    .map(|_| rng.gen_range(-2.0..2.0))
                    .collect::<Vec<f64>>(),
            )
        })
        .collect();
    GroundTruthFamily::from_root_functions(root_polys, domain)
}

/// Like [`random_family`], with the mean root polynomial subtracted so the
/// family is its own Tschirnhausen form (`a_1` vanishes identically); the
/// bound expressions then control the tracked roots directly.
pub fn random_family_centered<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    root_deg: usize,
    domain: Interval,
) -> GroundTruthFamily {
    let raw: Vec<RealPoly> = (0..degree)
        .map(|_| {
            RealPoly::new(
                (0..=root_deg)
                    .map(|_| rng.gen_range(-2.0..2.0))
                    .collect::<Vec<f64>>(),
            )
        })
        .collect();
    let mut mean = RealPoly::zero();
    for r in &raw {
        mean = mean.add(r);
    }
    mean = mean.scale(1.0 / degree as f64);
    GroundTruthFamily::from_root_functions(
        raw.iter().map(|r| r.sub(&mean)).collect(),
        domain,
    )
}

// ---------------------------------------------------------------------------
// Exact norms
// ---------------------------------------------------------------------------

/// Exact `sup |f|` over a closed interval: the maximum of `|f|` at the
/// endpoints and the real critical points of `f` inside.
pub fn sup_abs(f: &RealPoly, interval: Interval) -> f64 {
    let mut best = abs(f.eval(interval.lo)).max(abs(f.eval(interval.hi)));
    for t in realroots::real_roots_in(&f.derivative(), interval.lo, interval.hi, 1e-12) {
        best = best.max(abs(f.eval(t)));
    }
    best
}

/// Exact `min |f|` over a closed interval: zero when `f` has a root there,
/// otherwise the minimum over endpoints and interior critical points.
pub fn min_abs(f: &RealPoly, interval: Interval) -> f64 {
    if !realroots::real_roots_in(f, interval.lo, interval.hi, 1e-12).is_empty() {
        return 0.0;
    }
    let mut best = abs(f.eval(interval.lo)).min(abs(f.eval(interval.hi)));
    for t in realroots::real_roots_in(&f.derivative(), interval.lo, interval.hi, 1e-12) {
        best = best.min(abs(f.eval(t)));
    }
    best
}

/// Lipschitz seminorm of `f` on the interval; exact for polynomials as
/// `sup |f'|`.
pub fn lipschitz(f: &RealPoly, interval: Interval) -> f64 {
    sup_abs(&f.derivative(), interval)
}

/// The `C^{p-1,1}` norm of a scalar polynomial component:
/// `max_{0 <= k <= p-1} sup |f^(k)|` plus the Lipschitz seminorm of
/// `f^(p-1)`. The `C^{p-1}` part takes the max (not the sum) over the
/// derivative orders, which keeps the bound expressions scale-homogeneous.
pub fn cnorm(f: &RealPoly, interval: Interval, p: usize) -> f64 {
    assert!(p >= 1, "cnorm needs p >= 1");
    let mut sup_part = 0.0_f64;
    let mut d = f.clone();
    for _ in 0..p {
        sup_part = sup_part.max(sup_abs(&d, interval));
        d = d.derivative();
    }
    // d is now f^(p); its sup is Lip(f^(p-1))
    sup_part + sup_abs(&d, interval)
}

/// Exact derivative sup-norms of every coefficient of a curve, plus the
/// Lipschitz data entering the bound formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeNorms {
    /// `sup |a_j^(k)|` over the interval, for `j = 1..=n` (outer index
    /// `j-1`) and `k = 0..=p-1` (inner index `k`).
    pub sup: Vec<Vec<f64>>,
    /// `Lip(a_j^(p-1))` for `j = 1..=n`.
    pub lip: Vec<f64>,
    /// `M_i = Lip(a~_i^(p-1))` for the Tschirnhausen coefficients,
    /// `i = 2..=n` (index `i-2`).
    pub m_tschirn: Vec<f64>,
}

/// Computes [`DerivativeNorms`] on `interval` (must lie inside the curve
/// domain) for seminorm order `p >= 1`.
pub fn curve_derivative_norms(
    curve: &CoeffCurve,
    interval: Interval,
    p: usize,
) -> Result<DerivativeNorms> {
    if !curve.domain().contains_interval(&interval) {
        return Err(Error::BadIntervals);
    }
    assert!(p >= 1, "derivative norms need p >= 1");
    let mut sup = Vec::with_capacity(curve.degree());
    let mut lip = Vec::with_capacity(curve.degree());
    for j in 1..=curve.degree() {
        let f = curve.coeff_poly(j);
        let mut per_k = Vec::with_capacity(p);
        let mut d = f.clone();
        for _ in 0..p {
            per_k.push(sup_abs(&d, interval));
            d = d.derivative();
        }
        lip.push(sup_abs(&d, interval));
        sup.push(per_k);
    }
    let mut m_tschirn = Vec::new();
    for i in 2..=curve.degree() {
        let f = curve.tschirn_poly(i);
        m_tschirn.push(sup_abs(&f.nth_derivative(p), interval));
    }
    Ok(DerivativeNorms { sup, lip, m_tschirn })
}
