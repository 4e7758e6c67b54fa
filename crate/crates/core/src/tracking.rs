//! Root tracking along a coefficient curve, empirical Lipschitz estimation,
//! and one-sided derivative diagnostics.
//!
//! Two track modes:
//!
//! * **ordered** — branch `j` at each node is the `j`-th nondecreasing root;
//!   branches never cross and realize the ordered root map.
//! * **matched** — branches start from the ordered roots at the first node;
//!   at each subsequent node the new roots are assigned to branches by the
//!   minimum-total-movement perfect matching (absolute-difference cost)
//!   against the branches' predicted positions, with ties broken by
//!   preserving branch order. Predictions extrapolate each branch linearly
//!   from its previous step, which lets branches follow root functions
//!   through transversal crossings; at exact collision nodes the assignment
//!   can differ from an analytic continuation.

use alloc::vec;
use alloc::vec::Vec;

use crate::curves::CoeffCurve;
use crate::error::{Error, Result};
use crate::fmath::abs;
use crate::interval::Interval;
use crate::realroots::ordered_roots;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackMode {
    Ordered,
    Matched,
}

/// Per-branch root values over a strictly increasing time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RootTracks {
    grid: Vec<f64>,
    branches: Vec<Vec<f64>>,
    mode: TrackMode,
    max_residual: f64,
}

impl RootTracks {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// `branches()[j][k]` is branch `j` at grid node `k`.
    pub fn branches(&self) -> &[Vec<f64>] {
        &self.branches
    }

    pub fn mode(&self) -> TrackMode {
        self.mode
    }

    /// Max `|P(branch value)|` over all nodes and branches.
    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    pub fn num_branches(&self) -> usize {
        self.branches.len()
    }
}

/// `N + 1` equispaced times `t_k = lo + k (hi - lo) / N` on the interval.
pub fn sample_grid(interval: Interval, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidN);
    }
    Ok(interval.sample(n))
}

/// Ordered tracking: branch `j` at node `k` is the `j`-th nondecreasing root
/// of the polynomial at `t_k`.
pub fn track_ordered(curve: &CoeffCurve, grid: &[f64], tol: f64) -> Result<RootTracks> {
    track_impl(curve, grid, tol, TrackMode::Ordered)
}

/// Matched tracking: minimum-movement assignment against linearly predicted
/// branch positions, seeded from the ordered roots at the first node.
pub fn track_matched(curve: &CoeffCurve, grid: &[f64], tol: f64) -> Result<RootTracks> {
    track_impl(curve, grid, tol, TrackMode::Matched)
}

/// Optimal assignment of sorted root values to branches under absolute
/// difference against the predictions: the branch with the `r`-th smallest
/// prediction receives the `r`-th smallest root (the monotone matching is
/// optimal for 1-d transport costs); prediction ties keep branch order.
fn assign_monotone(preds: &[f64], roots_sorted: &[f64], out: &mut [f64]) {
    let n = preds.len();
    let mut order: Vec<usize> = (0..n).collect();
    // stable by construction: equal predictions compare by branch index
    order.sort_by(|&a, &b| {
        preds[a]
            .partial_cmp(&preds[b])
            .unwrap()
            .then(a.cmp(&b))
    });
    for (rank, &branch) in order.iter().enumerate() {
        out[branch] = roots_sorted[rank];
    }
}

/// Newton-form extrapolation through the last (up to three) samples; exact
/// for branches that are locally quadratic in `t`, which keeps the
/// prediction error far below realistic crossing separations.
fn extrapolate(ts: &[f64], vs: &[f64], t: f64) -> f64 {
    debug_assert_eq!(ts.len(), vs.len());
    match ts.len() {
        0 => 0.0,
        1 => vs[0],
        2 => {
            let d1 = (vs[1] - vs[0]) / (ts[1] - ts[0]);
            vs[1] + d1 * (t - ts[1])
        }
        _ => {
            let m = ts.len();
            let (t0, t1, t2) = (ts[m - 3], ts[m - 2], ts[m - 1]);
            let (v0, v1, v2) = (vs[m - 3], vs[m - 2], vs[m - 1]);
            let d01 = (v1 - v0) / (t1 - t0);
            let d12 = (v2 - v1) / (t2 - t1);
            let d012 = (d12 - d01) / (t2 - t0);
            v2 + d12 * (t - t2) + d012 * (t - t2) * (t - t1)
        }
    }
}

fn track_impl(curve: &CoeffCurve, grid: &[f64], tol: f64, mode: TrackMode) -> Result<RootTracks> {
    assert!(!grid.is_empty(), "grid must be nonempty");
    assert!(
        grid.windows(2).all(|w| w[0] < w[1]),
        "grid must be strictly increasing"
    );
    let n = curve.degree();
    let mut branches = vec![vec![0.0; grid.len()]; n];
    let mut max_residual = 0.0_f64;
    // Bootstrap velocities for matched mode: a micro-step probe off the
    // first node, so crossings inside the very first grid step are already
    // tracked with the right direction.
    let mut seed: Option<(f64, Vec<f64>)> = None;
    if mode == TrackMode::Matched && grid.len() >= 2 {
        let h = (grid[1] - grid[0]) / 64.0;
        let t_probe = grid[0] + h;
        if let Ok(p) = curve.eval_curve(t_probe) {
            if let Ok(r) = ordered_roots(&p, tol) {
                seed = Some((t_probe, r.values().to_vec()));
            }
        }
    }
    for (k, &t) in grid.iter().enumerate() {
        let p = curve.eval_curve(t)?;
        let roots = ordered_roots(&p, tol).map_err(|e| match e {
            Error::NotHyperbolic => Error::NotHyperbolicOnDomain { t },
            other => other,
        })?;
        max_residual = max_residual.max(roots.residual());
        let vals = roots.values();
        match mode {
            TrackMode::Ordered => {
                for j in 0..n {
                    branches[j][k] = vals[j];
                }
            }
            TrackMode::Matched => {
                if k == 0 {
                    for j in 0..n {
                        branches[j][k] = vals[j];
                    }
                } else {
                    let mut preds = vec![0.0; n];
                    for j in 0..n {
                        let mut ts: Vec<f64> = Vec::with_capacity(4);
                        let mut vs: Vec<f64> = Vec::with_capacity(4);
                        for back in (1..=3.min(k)).rev() {
                            ts.push(grid[k - back]);
                            vs.push(branches[j][k - back]);
                        }
                        if k == 1 {
                            if let Some((tp, rv)) = &seed {
                                ts.push(*tp);
                                vs.push(rv[j]);
                            }
                        }
                        preds[j] = extrapolate(&ts, &vs, t);
                    }
                    let mut slot = vec![0.0; n];
                    assign_monotone(&preds, vals, &mut slot);
                    for j in 0..n {
                        branches[j][k] = slot[j];
                    }
                }
            }
        }
    }
    Ok(RootTracks {
        grid: grid.to_vec(),
        branches,
        mode,
        max_residual,
    })
}

/// Per-branch and overall max difference quotients of a track.
#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzEstimate {
    pub per_branch: Vec<f64>,
    pub overall: f64,
}

/// Max `|branch_{k+1} - branch_k| / (t_{k+1} - t_k)` per branch and overall.
pub fn empirical_lipschitz(tracks: &RootTracks) -> Result<LipschitzEstimate> {
    if tracks.grid.len() < 2 {
        return Err(Error::InvalidN);
    }
    let mut per_branch = Vec::with_capacity(tracks.branches.len());
    let mut overall = 0.0_f64;
    for branch in &tracks.branches {
        let mut m = 0.0_f64;
        for k in 1..tracks.grid.len() {
            let q = abs(branch[k] - branch[k - 1]) / (tracks.grid[k] - tracks.grid[k - 1]);
            m = m.max(q);
        }
        overall = overall.max(m);
        per_branch.push(m);
    }
    Ok(LipschitzEstimate { per_branch, overall })
}

/// Selects the root branch whose one-sided derivatives are requested.
#[derive(Debug, Clone, Copy)]
pub enum RootBranch<'a> {
    /// The `j`-th ordered root (0-based), evaluated directly at any `t`.
    Ordered(usize),
    /// A branch of previously computed matched tracks, continued off the
    /// grid by one prediction step from the nearest node.
    Matched { tracks: &'a RootTracks, branch: usize },
}

fn branch_value(curve: &CoeffCurve, sel: &RootBranch<'_>, t: f64, tol: f64) -> Result<f64> {
    match sel {
        RootBranch::Ordered(j) => {
            let roots = ordered_roots(&curve.eval_curve(t)?, tol)?;
            Ok(roots.values()[*j])
        }
        RootBranch::Matched { tracks, branch } => {
            let grid = tracks.grid();
            // nearest node
            let mut k = 0usize;
            let mut best = f64::INFINITY;
            for (i, &g) in grid.iter().enumerate() {
                let d = abs(g - t);
                if d < best {
                    best = d;
                    k = i;
                }
            }
            if best == 0.0 {
                return Ok(tracks.branches()[*branch][k]);
            }
            let n = tracks.num_branches();
            let roots = ordered_roots(&curve.eval_curve(t)?, tol)?;
            let mut preds = Vec::with_capacity(n);
            for branch_vals in tracks.branches() {
                // extrapolate from the nodes on the side the probe leaves
                let mut ts: Vec<f64> = Vec::new();
                let mut vs: Vec<f64> = Vec::new();
                if t > grid[k] {
                    for back in (0..3.min(k + 1)).rev() {
                        ts.push(grid[k - back]);
                        vs.push(branch_vals[k - back]);
                    }
                } else {
                    for fwd in (0..3.min(grid.len() - k)).rev() {
                        ts.push(grid[k + fwd]);
                        vs.push(branch_vals[k + fwd]);
                    }
                    ts.reverse();
                    vs.reverse();
                }
                preds.push(extrapolate(&ts, &vs, t));
            }
            let mut slot = vec![0.0; n];
            assign_monotone(&preds, roots.values(), &mut slot);
            Ok(slot[*branch])
        }
    }
}

/// One row of the Richardson table: step size and the extrapolated
/// estimates available at that level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RichardsonRow {
    pub h: f64,
    pub left: Option<f64>,
    pub right: Option<f64>,
}

/// One-sided derivative estimates at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeDiagnostics {
    pub t0: f64,
    /// Left derivative estimate; absent when no probe point to the left lies
    /// in the domain (or the curve fails there).
    pub left: Option<f64>,
    pub right: Option<f64>,
    /// Step sizes and diagonal Richardson estimates per level.
    pub richardson: Vec<RichardsonRow>,
    /// Successive Richardson estimates of every available side differ by
    /// less than the declared tolerance.
    pub converged: bool,
}

/// Default convergence tolerance for the Richardson diagnostics.
pub const RICHARDSON_TOL: f64 = 1e-4;

fn one_sided_estimate(
    curve: &CoeffCurve,
    sel: &RootBranch<'_>,
    t0: f64,
    v0: f64,
    h0: f64,
    side: f64,
    tol: f64,
) -> (Option<f64>, Vec<f64>, bool) {
    // quotients at h0, h0/2, h0/4, h0/8
    let mut quotients = Vec::with_capacity(4);
    for i in 0..4 {
        let h = h0 / crate::fmath::powi(2.0, i);
        let t = t0 + side * h;
        match branch_value(curve, sel, t, crate::DEFAULT_TOL) {
            Ok(v) => quotients.push(side * (v - v0) / h),
            Err(_) => return (None, Vec::new(), false),
        }
    }
    // first-order Richardson table, diagonal extraction
    let mut table = vec![quotients.clone()];
    for level in 1..4 {
        let prev = &table[level - 1];
        let f = crate::fmath::powi(2.0, level as i32);
        let mut row = Vec::with_capacity(prev.len() - 1);
        for i in 1..prev.len() {
            row.push((f * prev[i] - prev[i - 1]) / (f - 1.0));
        }
        table.push(row);
    }
    let diagonal: Vec<f64> = (0..4).map(|i| table[i][table[i].len() - 1]).collect();
    let converged = abs(diagonal[3] - diagonal[2]) < tol;
    (Some(diagonal[3]), diagonal, converged)
}

/// Left/right derivative estimates of a root branch at `t0`, from one-sided
/// difference quotients at steps `h0, h0/2, h0/4, h0/8` with Richardson
/// extrapolation. A side whose table has not settled retries with the step
/// shrunk 8x (up to three times), so a kink strictly inside the initial
/// stencil does not defeat the estimate. Non-convergence is reported in the
/// flag, not thrown.
pub fn one_sided_derivatives(
    curve: &CoeffCurve,
    sel: &RootBranch<'_>,
    t0: f64,
    h0: f64,
    tol: f64,
) -> Result<DerivativeDiagnostics> {
    assert!(h0 > 0.0, "step must be positive");
    let v0 = branch_value(curve, sel, t0, crate::DEFAULT_TOL)?;
    let run_side = |side: f64| {
        let mut h = h0;
        let mut last = (None, Vec::new(), false, h0);
        for attempt in 0..4 {
            let (est, diag, conv) = one_sided_estimate(curve, sel, t0, v0, h, side, tol);
            let stop = est.is_none() || conv || attempt == 3;
            last = (est, diag, conv, h);
            if stop {
                break;
            }
            h /= 8.0;
        }
        last
    };
    let (left, ldiag, lconv, lh) = run_side(-1.0);
    let (right, rdiag, rconv, rh) = run_side(1.0);
    let mut richardson = Vec::with_capacity(4);
    for i in 0..4 {
        richardson.push(RichardsonRow {
            h: lh.min(rh) / crate::fmath::powi(2.0, i as i32),
            left: ldiag.get(i).copied(),
            right: rdiag.get(i).copied(),
        });
    }
    let converged = match (left.is_some(), right.is_some()) {
        (true, true) => lconv && rconv,
        (true, false) => lconv,
        (false, true) => rconv,
        (false, false) => false,
    };
    Ok(DerivativeDiagnostics {
        t0,
        left,
        right,
        richardson,
        converged,
    })
}

/// Convergence record for one approach side of one probe point: both
/// one-sided derivative estimates taken on a ladder of points shrinking
/// toward `t0` must approach the matching one-sided derivative at `t0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproachCheck {
    /// Gap to the target derivative at each ladder distance (outermost
    /// first).
    pub gaps: Vec<f64>,
    /// Gap at the innermost ladder point.
    pub final_gap: f64,
    /// The gap contracted along the ladder (or sat at the noise floor).
    pub converging: bool,
}

/// One probed point of the one-sided-derivative continuity check.
#[derive(Debug, Clone, PartialEq)]
pub struct C1PointCheck {
    pub t0: f64,
    pub branch: usize,
    pub left: Option<f64>,
    pub right: Option<f64>,
    /// Approach from the left toward the left derivative at `t0`; absent
    /// when the left side is outside the domain.
    pub left_approach: Option<ApproachCheck>,
    pub right_approach: Option<ApproachCheck>,
}

/// Continuity report for the one-sided derivatives of every ordered branch.
#[derive(Debug, Clone, PartialEq)]
pub struct C1Report {
    pub points: Vec<C1PointCheck>,
    /// Largest innermost-ladder gap over all points, branches, and sides.
    pub max_mismatch: f64,
    /// Every approach ladder contracted.
    pub all_converging: bool,
}

fn approach(
    curve: &CoeffCurve,
    sel: &RootBranch<'_>,
    t0: f64,
    target: f64,
    eps0: f64,
    side: f64,
    tol: f64,
) -> Result<Option<ApproachCheck>> {
    let mut gaps = Vec::new();
    for m in 0..=5 {
        let eps = eps0 / crate::fmath::powi(2.0, m);
        let t = t0 + side * eps;
        if !curve.domain().contains(t + side * eps / 4.0) || !curve.domain().contains(t - side * eps / 4.0)
        {
            continue;
        }
        let d = one_sided_derivatives(curve, sel, t, eps / 8.0, tol)?;
        let mut gap = 0.0_f64;
        let mut seen = false;
        if let Some(l) = d.left {
            gap = gap.max(abs(l - target));
            seen = true;
        }
        if let Some(r) = d.right {
            gap = gap.max(abs(r - target));
            seen = true;
        }
        if seen {
            gaps.push(gap);
        }
    }
    if gaps.is_empty() {
        return Ok(None);
    }
    let final_gap = gaps[gaps.len() - 1];
    let first_gap = gaps[0];
    // Lipschitz branches give gap = O(eps): halving eps five times should
    // contract the gap well below its initial size, up to estimator noise.
    let converging = final_gap <= (0.5 * first_gap).max(1e-5);
    Ok(Some(ApproachCheck { gaps, final_gap, converging }))
}

/// For each probe point, estimates both one-sided derivatives of every
/// ordered branch and checks that the estimates taken on a shrinking ladder
/// approaching `t0` from each side converge to the matching one-sided
/// derivative at `t0`. `grid` fixes the length scale of the ladder.
pub fn c1_report(
    curve: &CoeffCurve,
    grid: &[f64],
    t0_list: &[f64],
    tol: f64,
) -> Result<C1Report> {
    assert!(grid.len() >= 2, "need a grid with at least two nodes");
    let span = grid[grid.len() - 1] - grid[0];
    let eps0 = span / 64.0;
    let n = curve.degree();
    let mut points = Vec::new();
    let mut max_mismatch = 0.0_f64;
    let mut all_converging = true;
    for &t0 in t0_list {
        for branch in 0..n {
            let sel = RootBranch::Ordered(branch);
            let base = one_sided_derivatives(curve, &sel, t0, eps0 / 16.0, tol)?;
            let left_approach = match base.left {
                Some(target) => approach(curve, &sel, t0, target, eps0, -1.0, tol)?,
                None => None,
            };
            let right_approach = match base.right {
                Some(target) => approach(curve, &sel, t0, target, eps0, 1.0, tol)?,
                None => None,
            };
            for a in [&left_approach, &right_approach].into_iter().flatten() {
                max_mismatch = max_mismatch.max(a.final_gap);
                all_converging &= a.converging;
            }
            points.push(C1PointCheck {
                t0,
                branch,
                left: base.left,
                right: base.right,
                left_approach,
                right_approach,
            });
        }
    }
    Ok(C1Report { points, max_mismatch, all_converging })
}
