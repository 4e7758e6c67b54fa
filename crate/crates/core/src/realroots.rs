//! Hyperbolicity certification, ordered real roots, root clustering, and
//! certified numeric splitting `P = P_b * P_c`.
//!
//! Root counting runs on the square-free part (Yun decomposition with a
//! relative coefficient threshold) via Sturm sequences on the Cauchy
//! enclosure `[-R, R]`, `R = 1 + max |a_j|`. Roots are isolated by bisection
//! on the Sturm counts and polished by bracketed Newton iteration. Pairs of
//! roots that the square-free threshold cannot separate are treated as a
//! double root and re-split by a local quadratic model where possible.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::fmath::{abs, sqrt};
use crate::linalg;
use crate::poly::{MonicPoly, RealPoly};

/// Relative coefficient threshold for the numeric gcd / square-free
/// decomposition: remainders below this fraction of the working norm are
/// treated as zero, so root pairs closer than roughly `2 * sqrt(eps)` are
/// coalesced into a multiple root.
const GCD_REL_EPS: f64 = 1e-9;

/// Relative threshold below which a Sturm chain value is treated as a sign
/// of zero (measured against the sum of term magnitudes at the point).
const SIGN_REL_EPS: f64 = 1e-12;

/// Newton iteration cap for the splitting refinement.
const SPLIT_NEWTON_CAP: usize = 50;

// ---------------------------------------------------------------------------
// Numeric gcd and square-free decomposition
// ---------------------------------------------------------------------------

/// Drops leading coefficients that are negligible relative to the largest
/// coefficient; keeps the polynomial's numeric degree honest.
fn trim_relative(p: &RealPoly) -> RealPoly {
    let norm = p.inf_norm();
    if norm == 0.0 {
        return RealPoly::zero();
    }
    let mut c = p.coeffs().to_vec();
    while let Some(&last) = c.last() {
        if abs(last) <= 1e-13 * norm && c.len() > 1 {
            c.pop();
        } else {
            break;
        }
    }
    RealPoly::new(c)
}

/// Monic numeric gcd by the Euclidean algorithm with unit-norm scaling and
/// the relative truncation threshold `eps`.
fn numeric_gcd(a: &RealPoly, b: &RealPoly, eps: f64) -> RealPoly {
    let mut a = trim_relative(a);
    let mut b = trim_relative(b);
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.degree() < b.degree() {
        core::mem::swap(&mut a, &mut b);
    }
    a = a.scale(1.0 / a.inf_norm());
    b = b.scale(1.0 / b.inf_norm());
    loop {
        if b.degree() == Some(0) {
            return RealPoly::constant(1.0);
        }
        let (_, r) = a.div_rem(&b);
        let r = trim_relative(&r);
        if r.is_zero() || r.inf_norm() <= eps {
            return b.monic();
        }
        a = b;
        b = r.scale(1.0 / r.inf_norm());
    }
}

/// Yun square-free decomposition: returns `(q_i, i)` with `p ~ prod q_i^i`,
/// each `q_i` monic and square-free. The fast path (generic simple roots)
/// returns the input itself.
fn square_free_factors(p: &RealPoly, eps: f64) -> Vec<(RealPoly, usize)> {
    let p = trim_relative(p);
    match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![(p.monic(), 1)],
        _ => {}
    }
    let dp = p.derivative();
    let g = numeric_gcd(&p, &dp, eps);
    if g.degree() == Some(0) {
        return vec![(p.monic(), 1)];
    }
    let mut out = Vec::new();
    let (mut c, _) = p.monic().div_rem(&g);
    let (y, _) = dp.scale(1.0 / p.leading()).div_rem(&g);
    let mut d = y.sub(&c.derivative());
    let mut mult = 1usize;
    while c.degree().is_some_and(|d| d >= 1) {
        let a = numeric_gcd(&c, &d, eps);
        if a.degree().is_some_and(|deg| deg >= 1) {
            out.push((a.clone(), mult));
        }
        let (cn, _) = c.div_rem(&a);
        let (yn, _) = d.div_rem(&a);
        c = trim_relative(&cn.monic());
        d = trim_relative(&yn.sub(&c.derivative()));
        mult += 1;
        if mult > 64 {
            break; // degree bound; cannot happen for sane input
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Sturm sequences
// ---------------------------------------------------------------------------

fn sturm_chain(q: &RealPoly) -> Vec<RealPoly> {
    let mut chain = Vec::new();
    let q0 = trim_relative(q);
    if q0.degree().is_none_or(|d| d == 0) {
        return vec![q0];
    }
    let norm0 = q0.inf_norm();
    chain.push(q0.scale(1.0 / norm0));
    let d = chain[0].derivative();
    chain.push(d.scale(1.0 / d.inf_norm()));
    while chain.last().unwrap().degree().is_some_and(|d| d >= 1) {
        let len = chain.len();
        let (_, r) = chain[len - 2].div_rem(&chain[len - 1]);
        let r = trim_relative(&r);
        if r.is_zero() || r.inf_norm() <= 1e-14 {
            break; // residual gcd content; chain ends here
        }
        chain.push(r.scale(-1.0 / r.inf_norm()));
    }
    chain
}

fn sign_of(val: f64, scale: f64) -> i8 {
    if val.is_nan() {
        return 0;
    }
    if val.is_infinite() {
        return if val > 0.0 { 1 } else { -1 };
    }
    if abs(val) <= SIGN_REL_EPS * scale.max(f64::MIN_POSITIVE) {
        0
    } else if val > 0.0 {
        1
    } else {
        -1
    }
}

fn sign_variations(chain: &[RealPoly], x: f64) -> usize {
    let mut prev = 0i8;
    let mut v = 0usize;
    for p in chain {
        let s = sign_of(p.eval(x), p.eval_scale(x));
        if s != 0 {
            if prev != 0 && s != prev {
                v += 1;
            }
            prev = s;
        }
    }
    v
}

/// Number of distinct real roots of the chain's polynomial in `(lo, hi]`.
fn count_in(chain: &[RealPoly], lo: f64, hi: f64) -> usize {
    let vl = sign_variations(chain, lo) as isize;
    let vh = sign_variations(chain, hi) as isize;
    (vl - vh).max(0) as usize
}

/// Picks a subdivision point in `(lo, hi)` where `q` is comfortably nonzero,
/// so Sturm counts on both halves stay clean.
fn pick_cut(q: &RealPoly, lo: f64, hi: f64) -> f64 {
    const FRACTIONS: [f64; 5] = [0.5, 0.546875, 0.453125, 0.59375, 0.40625];
    let mut best = lo + 0.5 * (hi - lo);
    let mut best_rel = -1.0;
    for f in FRACTIONS {
        let x = lo + f * (hi - lo);
        let rel = abs(q.eval(x)) / q.eval_scale(x).max(f64::MIN_POSITIVE);
        if rel > 1e-9 {
            return x;
        }
        if rel > best_rel {
            best_rel = rel;
            best = x;
        }
    }
    best
}

fn isolate_rec(
    chain: &[RealPoly],
    q: &RealPoly,
    lo: f64,
    hi: f64,
    count: usize,
    out: &mut Vec<(f64, f64, usize)>,
    depth: usize,
) {
    if count == 0 {
        return;
    }
    let width_floor = 1e-13 * (1.0 + abs(lo) + abs(hi));
    if count == 1 || depth == 0 || hi - lo <= width_floor {
        out.push((lo, hi, count));
        return;
    }
    let cut = pick_cut(q, lo, hi);
    let left = count_in(chain, lo, cut);
    let right = count.saturating_sub(left);
    isolate_rec(chain, q, lo, cut, left.min(count), out, depth - 1);
    isolate_rec(chain, q, cut, hi, right, out, depth - 1);
}

/// Bracketed Newton/bisection polish of a simple root of `q` in `[lo, hi]`
/// to absolute accuracy `tol`.
fn refine_root(q: &RealPoly, dq: &RealPoly, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = q.eval(lo);
    if flo == 0.0 {
        return lo;
    }
    let fhi = q.eval(hi);
    if fhi == 0.0 {
        return hi;
    }
    if (flo > 0.0) == (fhi > 0.0) {
        // No numeric sign change: scan for one; otherwise return the best
        // point by residual magnitude.
        let mut found = false;
        for k in 1..64 {
            let x = lo + (hi - lo) * k as f64 / 64.0;
            let fx = q.eval(x);
            if fx == 0.0 {
                return x;
            }
            if (fx > 0.0) != (flo > 0.0) {
                hi = x;
                found = true;
                break;
            }
            lo = x;
            flo = fx;
        }
        if !found {
            let mut best = lo;
            let mut best_f = abs(q.eval(lo));
            for k in 0..=64 {
                let x = lo + (hi - lo) * k as f64 / 64.0;
                let fx = abs(q.eval(x));
                if fx < best_f {
                    best_f = fx;
                    best = x;
                }
            }
            return best;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for iter in 0..300 {
        if hi - lo <= tol {
            break;
        }
        let fx = q.eval(x);
        if fx == 0.0 {
            return x;
        }
        if (fx > 0.0) == (flo > 0.0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let d = dq.eval(x);
        let newton = if d != 0.0 { x - fx / d } else { f64::NAN };
        // Alternate a guaranteed bisection step in so the bracket shrinks.
        x = if newton.is_finite() && newton > lo && newton < hi && iter % 3 != 2 {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    0.5 * (lo + hi)
}

/// Distinct real roots of an arbitrary real polynomial inside `[lo, hi]`,
/// located to absolute accuracy `tol`. Multiple roots are reported once
/// (the square-free part is used). Intended for critical-point searches.
pub fn real_roots_in(p: &RealPoly, lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    let p = trim_relative(p);
    let deg = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    let pad = 1e-12 * (1.0 + abs(lo) + abs(hi));
    let (elo, ehi) = (lo - pad, hi + pad);
    let mut roots = Vec::new();
    if deg == 1 {
        let r = -p.coeffs()[0] / p.coeffs()[1];
        if r >= elo && r <= ehi {
            roots.push(r.clamp(lo, hi));
        }
        return roots;
    }
    for (q, _) in square_free_factors(&p, GCD_REL_EPS) {
        if q.degree().is_none_or(|d| d == 0) {
            continue;
        }
        if q.degree() == Some(1) {
            let r = -q.coeffs()[0] / q.coeffs()[1];
            if r >= elo && r <= ehi {
                roots.push(r.clamp(lo, hi));
            }
            continue;
        }
        let chain = sturm_chain(&q);
        let dq = q.derivative();
        let total = count_in(&chain, elo, ehi);
        let mut isolated = Vec::new();
        isolate_rec(&chain, &q, elo, ehi, total, &mut isolated, 200);
        for (a, b, _) in isolated {
            let r = refine_root(&q, &dq, a, b, tol);
            if r >= elo && r <= ehi {
                roots.push(r.clamp(lo, hi));
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= tol);
    roots
}

// ---------------------------------------------------------------------------
// Certification and ordered roots
// ---------------------------------------------------------------------------

/// Outcome of the hyperbolicity test: real-root count (with multiplicity)
/// from square-free decomposition plus Sturm counting on the Cauchy
/// enclosure.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicityCertificate {
    pub is_hyperbolic: bool,
    pub real_root_count: usize,
    pub cauchy_radius: f64,
}

/// Root-scale balanced form: substituting `Z -> sigma Z` with
/// `sigma = max_j |a_j|^(1/j)` puts every coefficient in `[-1, 1]` and every
/// root in `[-2, 2]`, which keeps the relative thresholds of the numeric
/// gcd and the Sturm chain meaningful regardless of the input's coefficient
/// spread. `None` for `Z^n` (all coefficients zero).
struct Balanced {
    monic: MonicPoly,
    sigma: f64,
}

fn balance(p: &MonicPoly) -> Option<Balanced> {
    let mut sigma = 0.0_f64;
    for (idx, &a) in p.coeffs().iter().enumerate() {
        if a != 0.0 {
            sigma = sigma.max(crate::fmath::powf(abs(a), 1.0 / (idx + 1) as f64));
        }
    }
    if sigma == 0.0 {
        return None;
    }
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(idx, &a)| a / crate::fmath::powi(sigma, (idx + 1) as i32))
        .collect();
    Some(Balanced { monic: MonicPoly::new(coeffs), sigma })
}

/// Thresholds tried for the square-free decomposition: the standard one
/// first, then a tighter one (resolving borderline pairs as simple roots)
/// and two looser ones (coalescing them); the first decomposition passing
/// the reconstruction check wins.
const GCD_EPS_LADDER: [f64; 4] = [GCD_REL_EPS, 1e-12, 1e-7, 3e-6];

fn consistent(factors: &[(RealPoly, usize)], rp: &RealPoly, n: usize, tol: f64) -> bool {
    let mut deg_sum = 0usize;
    let mut recon = RealPoly::constant(1.0);
    for (q, m) in factors {
        deg_sum += q.degree().unwrap_or(0) * m;
        recon = recon.mul(&q.powu(*m));
    }
    if deg_sum != n {
        return false;
    }
    let ambiguity = (1e-6_f64).max(100.0 * tol);
    recon.sub(rp).inf_norm() <= ambiguity * rp.inf_norm().max(1.0)
}

/// All decompositions from the threshold ladder that pass the consistency
/// check, in ladder order. Empty means every threshold produced an
/// inconsistent factorization.
fn factor_candidates(p: &MonicPoly, tol: f64) -> Vec<Vec<(RealPoly, usize)>> {
    let rp = p.to_real_poly();
    let n = p.degree();
    let mut out = Vec::new();
    for eps in GCD_EPS_LADDER {
        let factors = square_free_factors(&rp, eps);
        if consistent(&factors, &rp, n, tol) {
            out.push(factors);
        }
    }
    out
}

/// True when every recentred coefficient sits below `tol` relative to the
/// input's scale: the polynomial is within tolerance of `(Z - a_1/n)^n`, an
/// `n`-fold root at the centering shift. Near such total degeneracies the
/// evaluated coefficients are cancellation noise and can flip across the
/// hyperbolic boundary; this is the projection back.
fn coalesces_at(p: &MonicPoly, tol: f64) -> Option<f64> {
    let t = p.tschirnhausen();
    let scale = 1.0 + p.coeffs().iter().fold(0.0_f64, |m, &a| m.max(abs(a)));
    let worst = t
        .reduced()
        .coeffs()
        .iter()
        .fold(0.0_f64, |m, &a| m.max(abs(a)));
    (worst <= tol * scale).then(|| -t.shift())
}

/// Counts real roots with multiplicity and certifies hyperbolicity
/// (`real_root_count == degree`).
///
/// The count runs on the recentred (Tschirnhausen) polynomial after
/// root-scale balancing: recentring removes the mean, whose size would
/// otherwise dominate the balancing scale and crush the relative root
/// separations.
pub fn is_hyperbolic(p: &MonicPoly, tol: f64) -> Result<HyperbolicityCertificate> {
    let radius = p.cauchy_radius();
    let n = p.degree();
    let reduced = p.tschirnhausen().reduced().clone();
    let balanced = match balance(&reduced) {
        // (Z - shift)^n: one point with full multiplicity
        None => {
            return Ok(HyperbolicityCertificate {
                is_hyperbolic: true,
                real_root_count: n,
                cauchy_radius: radius,
            })
        }
        Some(b) => b,
    };
    let candidates = factor_candidates(&balanced.monic, tol);
    if candidates.is_empty() {
        return Err(Error::IllConditioned);
    }
    let enclosure = balanced.monic.cauchy_radius();
    let mut first_count = None;
    for factors in &candidates {
        let mut count = 0usize;
        for (q, m) in factors {
            match q.degree() {
                Some(1) => count += m,
                Some(_) => {
                    let chain = sturm_chain(q);
                    count += m * count_in(&chain, -enclosure, enclosure);
                }
                _ => {}
            }
        }
        if count == n {
            return Ok(HyperbolicityCertificate {
                is_hyperbolic: true,
                real_root_count: n,
                cauchy_radius: radius,
            });
        }
        first_count.get_or_insert(count);
    }
    if coalesces_at(p, tol).is_some() {
        return Ok(HyperbolicityCertificate {
            is_hyperbolic: true,
            real_root_count: n,
            cauchy_radius: radius,
        });
    }
    Ok(HyperbolicityCertificate {
        is_hyperbolic: false,
        real_root_count: first_count.unwrap_or(0),
        cauchy_radius: radius,
    })
}

/// All real roots of a hyperbolic polynomial, nondecreasing, each with its
/// multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedRoots {
    values: Vec<f64>,
    residual: f64,
}

impl OrderedRoots {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Max `|P(root)|` over the reported roots.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// `prod (Z - root)`, for reconstruction checks.
    pub fn reconstruct(&self) -> MonicPoly {
        MonicPoly::from_roots(&self.values)
    }

    #[doc(hidden)]
    pub fn from_values_unchecked(mut values: Vec<f64>, residual: f64) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        OrderedRoots { values, residual }
    }
}

/// Recovers a root pair that the square-free threshold coalesced at `c`:
/// among the critical points of `p` near `c`, picks the nearest one whose
/// local quadratic model `p(x) + p''(x) u^2 / 2` has real roots, then
/// polishes both on `p` itself. Returns `None` to keep the double root at
/// `c` when no such critical point exists (an exact double root or a
/// complex pair at tolerance collapses to the nearest critical point).
fn recover_pair(p: &MonicPoly, c: f64, tol: f64) -> Option<(f64, f64)> {
    let rp = p.to_real_poly();
    let dp = rp.derivative();
    let ddp = dp.derivative();
    let w = 0.1 * (1.0 + abs(c));
    let mut crits = real_roots_in(&dp, c - w, c + w, 1e-13);
    crits.sort_by(|a, b| abs(a - c).partial_cmp(&abs(b - c)).unwrap());
    let mut fallback: Option<f64> = None;
    for x in crits {
        let d2 = ddp.eval(x);
        if d2 == 0.0 {
            continue;
        }
        let disc = -2.0 * rp.eval(x) / d2;
        // below the evaluation noise floor the pair is indistinguishable
        // from an exact double root; keep it coalesced
        let noise = 8.0 * f64::EPSILON * rp.eval_scale(x) / abs(d2);
        if disc <= noise.max(0.0) {
            fallback.get_or_insert(x);
            continue;
        }
        let h = sqrt(disc);
        if h > w {
            continue;
        }
        // the model roots bracket sign changes of p around the critical
        // point: polish each on p
        let r1 = refine_root(&rp, &dp, x - 2.5 * h, x, tol);
        let r2 = refine_root(&rp, &dp, x, x + 2.5 * h, tol);
        if r1 < r2 {
            return Some((r1, r2));
        }
        return Some((x - h, x + h));
    }
    fallback.map(|x| (x, x))
}

/// All `n` real roots with multiplicity, nondecreasing, each located to
/// absolute accuracy `tol` (relative to the root scale for badly scaled
/// inputs). Fails with [`Error::NotHyperbolic`] when the certification
/// count falls short.
pub fn ordered_roots(p: &MonicPoly, tol: f64) -> Result<OrderedRoots> {
    let n = p.degree();
    // Recentre before balancing (see `is_hyperbolic`); actual roots are the
    // reduced roots minus the shift.
    let tform = p.tschirnhausen();
    let shift = tform.shift();
    let balanced = match balance(tform.reduced()) {
        None => {
            return Ok(OrderedRoots {
                values: alloc::vec![-shift; n],
                residual: abs(p.eval(-shift)),
            });
        }
        Some(b) => b,
    };
    let bp = &balanced.monic;
    let enclosure = bp.cauchy_radius();
    // balanced roots lie in [-2, 2]; don't chase widths below fp resolution
    let tol_b = (tol / balanced.sigma).max(4.0 * f64::EPSILON);
    let candidates = factor_candidates(bp, tol);
    if candidates.is_empty() {
        return Err(Error::IllConditioned);
    }
    // extract from each consistent decomposition, scoring by how well the
    // root product reconstructs the balanced input; keep the best
    let brp = bp.to_real_poly();
    let mut best: Option<(Vec<f64>, f64)> = None;
    for factors in &candidates {
        let mut balanced_values: Vec<f64> = Vec::with_capacity(n);
        for (q, m) in factors {
            let mut simple = Vec::new();
            match q.degree() {
                Some(1) => simple.push(-q.coeffs()[0] / q.coeffs()[1]),
                Some(_) => {
                    let chain = sturm_chain(q);
                    let dq = q.derivative();
                    let total = count_in(&chain, -enclosure, enclosure);
                    let mut isolated = Vec::new();
                    isolate_rec(&chain, q, -enclosure, enclosure, total, &mut isolated, 200);
                    for (a, b, k) in isolated {
                        let r = refine_root(q, &dq, a, b, tol_b);
                        for _ in 0..k {
                            simple.push(r);
                        }
                    }
                }
                _ => {}
            }
            for r in simple {
                if *m == 2 {
                    // A multiplicity-2 factor may be a genuinely coalesced
                    // pair; the local quadratic model recovers the split
                    // when it is real.
                    if let Some((r1, r2)) = recover_pair(bp, r, tol_b) {
                        balanced_values.push(r1);
                        balanced_values.push(r2);
                        continue;
                    }
                }
                for _ in 0..*m {
                    balanced_values.push(r);
                }
            }
        }
        if balanced_values.len() != n {
            continue;
        }
        let recon = MonicPoly::from_roots(&balanced_values).to_real_poly();
        let score = recon.sub(&brp).inf_norm() / brp.inf_norm().max(1.0);
        if score <= 1e-9 {
            best = Some((balanced_values, score));
            break;
        }
        if best.as_ref().is_none_or(|(_, s)| score < *s) {
            best = Some((balanced_values, score));
        }
    }
    if let Some((balanced_values, score)) = best {
        if score <= 1e-4 {
            let mut values: Vec<f64> = balanced_values
                .iter()
                .map(|r| r * balanced.sigma - shift)
                .collect();
            values.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let residual = values.iter().fold(0.0_f64, |m, &r| m.max(abs(p.eval(r))));
            return Ok(OrderedRoots { values, residual });
        }
    }
    if let Some(center) = coalesces_at(p, tol) {
        let values = alloc::vec![center; n];
        let residual = abs(p.eval(center));
        return Ok(OrderedRoots { values, residual });
    }
    Err(Error::NotHyperbolic)
}

// ---------------------------------------------------------------------------
// Clustering and splitting
// ---------------------------------------------------------------------------

/// Partition of the root indices into maximal runs with consecutive spacing
/// `< gap`; distinct blocks are separated by at least `gap`.
pub fn cluster_roots(roots: &OrderedRoots, gap: f64) -> Vec<Range<usize>> {
    assert!(gap > 0.0, "cluster gap must be positive");
    let v = roots.values();
    let mut out = Vec::new();
    if v.is_empty() {
        return out;
    }
    let mut start = 0usize;
    for i in 1..v.len() {
        if v[i] - v[i - 1] >= gap {
            out.push(start..i);
            start = i;
        }
    }
    out.push(start..v.len());
    out
}

/// Scale-relative default clustering gap `(max root - min root) / (4 n)`.
pub fn default_cluster_gap(roots: &OrderedRoots) -> f64 {
    let v = roots.values();
    if v.len() < 2 {
        return 0.0;
    }
    (v[v.len() - 1] - v[0]) / (4.0 * v.len() as f64)
}

/// Certified factorization `P = P_b * P_c` produced by [`split`].
#[derive(Debug, Clone, PartialEq)]
pub struct SplitResult {
    pub factor_b: MonicPoly,
    pub factor_c: MonicPoly,
    /// Relative max coefficient error of `P - P_b * P_c`.
    pub residual: f64,
    pub resultant_bc: f64,
    pub newton_iters: usize,
}

/// Sylvester-matrix resultant of two monic polynomials.
pub fn resultant(pb: &MonicPoly, pc: &MonicPoly) -> f64 {
    let k = pb.degree();
    let m = pc.degree();
    let n = k + m;
    let mut mat = vec![0.0; n * n];
    // rows 0..m hold the coefficients of pb (descending), shifted
    for row in 0..m {
        mat[row * n + row] = 1.0;
        for (j, &a) in pb.coeffs().iter().enumerate() {
            mat[row * n + row + j + 1] = a;
        }
    }
    // rows m..m+k hold the coefficients of pc
    for row in 0..k {
        let base = (m + row) * n + row;
        mat[base] = 1.0;
        for (j, &a) in pc.coeffs().iter().enumerate() {
            mat[base + j + 1] = a;
        }
    }
    linalg::determinant(&mut mat, n)
}

fn convolve_monic(b: &[f64], c: &[f64]) -> Vec<f64> {
    // coefficients a_r (r = 1..k+m) of (Z^k + sum b_i Z^(k-i)) * (Z^m + ...)
    let k = b.len();
    let m = c.len();
    let bi = |i: usize| if i == 0 { 1.0 } else { b[i - 1] };
    let cj = |j: usize| if j == 0 { 1.0 } else { c[j - 1] };
    let mut a = vec![0.0; k + m];
    for r in 1..=k + m {
        let mut s = 0.0;
        for i in 0..=r.min(k) {
            let j = r - i;
            if j <= m {
                s += bi(i) * cj(j);
            }
        }
        a[r - 1] = s;
    }
    a
}

/// Splits `P` by the given index blocks into the ordered roots: initializes
/// `P_b`, `P_c` from the block root products and Newton-refines the
/// coefficient map `(b, c) -> coeffs(P_b * P_c)` until the relative
/// coefficient residual drops below `tol`.
///
/// The two blocks must jointly cover all root indices exactly once; any
/// overlapping index or coinciding root value across the blocks is a
/// [`Error::CommonRoot`].
pub fn split(
    p: &MonicPoly,
    roots: &OrderedRoots,
    block_b: &[usize],
    block_c: &[usize],
    tol: f64,
) -> Result<SplitResult> {
    let n = p.degree();
    assert_eq!(roots.values().len(), n, "roots must belong to p");
    assert!(!block_b.is_empty() && !block_c.is_empty(), "blocks must be nonempty");
    let mut seen = vec![false; n];
    for &i in block_b.iter().chain(block_c) {
        assert!(i < n, "root index out of range");
        if seen[i] {
            return Err(Error::CommonRoot);
        }
        seen[i] = true;
    }
    assert!(seen.iter().all(|&s| s), "blocks must cover all root indices");
    let vals_b: Vec<f64> = block_b.iter().map(|&i| roots.values()[i]).collect();
    let vals_c: Vec<f64> = block_c.iter().map(|&i| roots.values()[i]).collect();
    for &x in &vals_b {
        for &y in &vals_c {
            if x == y {
                return Err(Error::CommonRoot);
            }
        }
    }

    let k = vals_b.len();
    let m = vals_c.len();
    let mut b: Vec<f64> = MonicPoly::from_roots(&vals_b).coeffs().to_vec();
    let mut c: Vec<f64> = MonicPoly::from_roots(&vals_c).coeffs().to_vec();
    let scale = p.coeffs().iter().fold(1.0_f64, |s, &a| s.max(abs(a)));
    let radius = p.cauchy_radius();

    let residual_of = |b: &[f64], c: &[f64]| -> (Vec<f64>, f64) {
        let prod = convolve_monic(b, c);
        let f: Vec<f64> = prod.iter().zip(p.coeffs()).map(|(x, a)| x - a).collect();
        let res = f.iter().fold(0.0_f64, |mx, &v| mx.max(abs(v))) / scale;
        (f, res)
    };

    let (mut f, mut res) = residual_of(&b, &c);
    let mut iters = 0usize;
    while res > tol {
        if iters >= SPLIT_NEWTON_CAP {
            return Err(Error::NoConvergence { residual: res });
        }
        // Jacobian of the coefficient map: d a_r / d b_i = c_{r-i},
        // d a_r / d c_j = b_{r-j} (Sylvester-structured).
        let mut jac = vec![0.0; n * n];
        let bi = |i: usize| if i == 0 { 1.0 } else { b[i - 1] };
        let cj = |j: usize| if j == 0 { 1.0 } else { c[j - 1] };
        for r in 1..=n {
            for i in 1..=k {
                if r >= i && r - i <= m {
                    jac[(r - 1) * n + (i - 1)] = cj(r - i);
                }
            }
            for j in 1..=m {
                if r >= j && r - j <= k {
                    jac[(r - 1) * n + k + (j - 1)] = bi(r - j);
                }
            }
        }
        let mut rhs: Vec<f64> = f.iter().map(|&v| -v).collect();
        let step = match linalg::solve(&mut jac, &mut rhs, n) {
            Some(s) => s,
            None => return Err(Error::NoConvergence { residual: res }),
        };
        let step_norm = step.iter().fold(0.0_f64, |mx, &v| mx.max(abs(v)));
        if step_norm > radius {
            return Err(Error::NoConvergence { residual: res });
        }
        for i in 0..k {
            b[i] += step[i];
        }
        for j in 0..m {
            c[j] += step[k + j];
        }
        iters += 1;
        let (nf, nres) = residual_of(&b, &c);
        f = nf;
        res = nres;
    }
    let _ = f;

    let factor_b = MonicPoly::new(b);
    let factor_c = MonicPoly::new(c);
    let resultant_bc = resultant(&factor_b, &factor_c);
    Ok(SplitResult {
        factor_b,
        factor_c,
        residual: res,
        resultant_bc,
        newton_iters: iters,
    })
}
