//! Monic polynomial arithmetic, the Tschirnhausen transformation, Newton
//! power sums, and the second-coefficient scale normalization.
//!
//! Two representations are used throughout the crate:
//!
//! * [`MonicPoly`] stores a degree-`n` monic polynomial by its `n`
//!   non-leading coefficients `(a_1, ..., a_n)`, where `a_j` multiplies
//!   `Z^(n-j)`. This is the domain type the rest of the pipeline works with.
//! * [`RealPoly`] is a general dense polynomial with ascending coefficients,
//!   used for formal derivatives, Sturm sequences, and coefficient curves in
//!   the time parameter.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fmath::{abs, powi, sqrt};

/// Binomial coefficient as `f64`; exact for the small arguments used here.
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    // Binomials of the degrees handled here are exact integers in f64;
    // rounding repairs the division order above.
    crate::fmath::round(acc)
}

// ---------------------------------------------------------------------------
// RealPoly: dense polynomial with ascending coefficients
// ---------------------------------------------------------------------------

/// Dense real polynomial `c[0] + c[1] x + c[2] x^2 + ...`.
///
/// The zero polynomial has an empty coefficient vector. Construction trims
/// exactly-zero leading coefficients; nothing is rounded.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn zero() -> Self {
        RealPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn identity() -> Self {
        RealPoly { coeffs: vec![0.0, 1.0] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients (empty for zero).
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn inf_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, &c| m.max(abs(c)))
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Magnitude scale of the evaluation at `x` (sum of term magnitudes);
    /// used for condition-aware zero tests of Sturm chain values.
    #[doc(hidden)]
    pub fn eval_scale(&self, x: f64) -> f64 {
        let ax = abs(x);
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * ax + abs(c);
        }
        acc
    }

    pub fn derivative(&self) -> RealPoly {
        if self.coeffs.len() <= 1 {
            return RealPoly::zero();
        }
        RealPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| (i + 1) as f64 * c)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> RealPoly {
        let mut p = self.clone();
        for _ in 0..k {
            if p.is_zero() {
                break;
            }
            p = p.derivative();
        }
        p
    }

    pub fn add(&self, other: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        RealPoly::new(out)
    }

    pub fn sub(&self, other: &RealPoly) -> RealPoly {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> RealPoly {
        RealPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &RealPoly) -> RealPoly {
        if self.is_zero() || other.is_zero() {
            return RealPoly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPoly::new(out)
    }

    pub fn powu(&self, mut e: usize) -> RealPoly {
        let mut acc = RealPoly::constant(1.0);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Composition with an affine map: returns `q(x) = p(alpha * x + beta)`.
    pub fn compose_affine(&self, alpha: f64, beta: f64) -> RealPoly {
        let mut acc = RealPoly::zero();
        let arg = RealPoly::new(vec![beta, alpha]);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&arg).add(&RealPoly::constant(c));
        }
        acc
    }

    /// Euclidean division: `(quotient, remainder)` with
    /// `self = q * divisor + r`, `deg r < deg divisor`.
    /// Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RealPoly) -> (RealPoly, RealPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (RealPoly::zero(), self.clone());
        }
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quo = vec![0.0; qlen];
        for k in (0..qlen).rev() {
            let f = rem[k + dd] / lead;
            quo[k] = f;
            if f == 0.0 {
                continue;
            }
            rem[k + dd] = 0.0;
            for (j, &dc) in divisor.coeffs.iter().take(dd).enumerate() {
                rem[k + j] -= f * dc;
            }
        }
        rem.truncate(dd);
        (RealPoly::new(quo), RealPoly::new(rem))
    }

    /// Divides by the leading coefficient.
    pub(crate) fn monic(&self) -> RealPoly {
        let l = self.leading();
        if l == 0.0 || l == 1.0 {
            return self.clone();
        }
        self.scale(1.0 / l)
    }
}

// ---------------------------------------------------------------------------
// MonicPoly
// ---------------------------------------------------------------------------

/// A monic real polynomial `Z^n + a_1 Z^(n-1) + ... + a_n` of exact degree
/// `n >= 1`, stored by its non-leading coefficients `(a_1, ..., a_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPoly {
    coeffs: Vec<f64>,
}

impl MonicPoly {
    /// Builds from `(a_1, ..., a_n)`; the degree is the coefficient count.
    ///
    /// Panics on an empty coefficient list (degree must be positive).
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "monic polynomial needs degree >= 1");
        MonicPoly { coeffs }
    }

    /// Expands `prod (Z - r)` over the given roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        assert!(!roots.is_empty(), "need at least one root");
        let mut coeffs = vec![1.0]; // ascending, starts as the constant 1
        for &r in roots {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        // coeffs is ascending with leading 1; extract a_1..a_n descending.
        let n = coeffs.len() - 1;
        let mut a = Vec::with_capacity(n);
        for j in 1..=n {
            a.push(coeffs[n - j]);
        }
        MonicPoly { coeffs: a }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Non-leading coefficients `(a_1, ..., a_n)`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `a_j` for `1 <= j <= n`.
    pub fn coeff(&self, j: usize) -> f64 {
        assert!(j >= 1 && j <= self.coeffs.len());
        self.coeffs[j - 1]
    }

    /// Horner evaluation of `Z^n + sum a_j Z^(n-j)` at `z`.
    pub fn eval(&self, z: f64) -> f64 {
        let mut acc = 1.0;
        for &a in &self.coeffs {
            acc = acc * z + a;
        }
        acc
    }

    /// Root enclosure radius `1 + max_j |a_j|`; every root lies in
    /// `(-R, R)`.
    pub fn cauchy_radius(&self) -> f64 {
        1.0 + self.coeffs.iter().fold(0.0_f64, |m, &a| m.max(abs(a)))
    }

    /// Formal derivative, in ascending representation (not monic).
    pub fn derivative(&self) -> RealPoly {
        self.to_real_poly().derivative()
    }

    /// Ascending dense representation including the leading 1.
    pub fn to_real_poly(&self) -> RealPoly {
        let n = self.coeffs.len();
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        for (j, &a) in self.coeffs.iter().enumerate() {
            // a_{j+1} multiplies Z^{n-j-1}
            c[n - j - 1] = a;
        }
        RealPoly::new(c)
    }

    /// Converts a dense polynomial with nonzero leading coefficient into the
    /// monic representation (dividing through by the leading coefficient).
    pub fn from_real_poly(p: &RealPoly) -> Option<MonicPoly> {
        let n = p.degree()?;
        if n == 0 {
            return None;
        }
        let lead = p.leading();
        let mut a = Vec::with_capacity(n);
        for j in 1..=n {
            a.push(p.coeffs()[n - j] / lead);
        }
        Some(MonicPoly { coeffs: a })
    }

    /// Newton power sums `(s_1, ..., s_k)` of the roots, computed from the
    /// coefficients by the recursion
    /// `s_k = -k a_k - sum_{j=1}^{k-1} a_j s_{k-j}` with `a_j = 0` for
    /// `j > n`; no roots are computed.
    pub fn newton_sums(&self, k: usize) -> Vec<f64> {
        let n = self.coeffs.len();
        let a = |j: usize| if j >= 1 && j <= n { self.coeffs[j - 1] } else { 0.0 };
        let mut s = Vec::with_capacity(k);
        for i in 1..=k {
            let mut acc = -(i as f64) * a(i);
            for j in 1..i {
                acc -= a(j) * s[i - j - 1];
            }
            s.push(acc);
        }
        s
    }

    /// Recenters by the root mean: returns the Tschirnhausen form with
    /// `reduced(Z) = self(Z - a_1/n)`, whose `Z^(n-1)` coefficient is exactly
    /// zero.
    pub fn tschirnhausen(&self) -> TschirnForm {
        let n = self.coeffs.len();
        let shift = self.coeffs[0] / n as f64;
        let s = -shift; // substitute Z + s, s = -a_1/n
        let a = |i: usize| if i == 0 { 1.0 } else { self.coeffs[i - 1] };
        let mut reduced = Vec::with_capacity(n);
        for j in 1..=n {
            // coefficient of Z^(n-j) in sum_i a_i (Z + s)^(n-i),
            // accumulated from the highest-degree contribution down
            let mut c = 0.0;
            for i in 0..=j {
                c += a(i) * binomial(n - i, j - i) * powi(s, (j - i) as i32);
            }
            reduced.push(c);
        }
        // The recentering annihilates a_1 exactly in exact arithmetic; pin it.
        reduced[0] = 0.0;
        TschirnForm {
            shift,
            reduced: MonicPoly { coeffs: reduced },
        }
    }
}

// ---------------------------------------------------------------------------
// TschirnForm
// ---------------------------------------------------------------------------

/// Result of the Tschirnhausen transformation: `reduced(Z) = P(Z - shift)`
/// with `shift = a_1/n`, so the reduced polynomial has first coefficient
/// exactly zero and its roots are the roots of `P` plus `shift`.
#[derive(Debug, Clone, PartialEq)]
pub struct TschirnForm {
    shift: f64,
    reduced: MonicPoly,
}

impl TschirnForm {
    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn reduced(&self) -> &MonicPoly {
        &self.reduced
    }

    /// Second reduced coefficient `a2~`; zero for degree 1. For hyperbolic
    /// input this is `-(sum of centered roots squared)/2 <= 0`.
    pub fn a2(&self) -> f64 {
        if self.reduced.degree() >= 2 {
            self.reduced.coeff(2)
        } else {
            0.0
        }
    }

    /// Rescales so the second coefficient becomes exactly `-1` (for
    /// hyperbolic input): returns `Q(Z) = |a2~|^(-n/2) * reduced(|a2~|^(1/2) Z)`,
    /// whose `j`-th coefficient is `|a2~|^(-j/2) * aj~`.
    pub fn normalize_scale(&self) -> Result<MonicPoly> {
        let a2 = self.a2();
        if a2 == 0.0 {
            return Err(Error::DegenerateScale);
        }
        let m = abs(a2);
        let s = sqrt(m);
        // |a2~|^(j/2) built from exact integer powers of |a2~| so that the
        // second coefficient comes out as a2~/|a2~| = -1 exactly.
        let coeffs = self
            .reduced
            .coeffs()
            .iter()
            .enumerate()
            .map(|(idx, &a)| {
                let j = idx + 1;
                let div = if j % 2 == 0 {
                    powi(m, (j / 2) as i32)
                } else {
                    powi(m, (j / 2) as i32) * s
                };
                a / div
            })
            .collect();
        Ok(MonicPoly::new(coeffs))
    }
}
