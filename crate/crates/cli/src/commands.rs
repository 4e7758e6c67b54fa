//! Implementations behind the CLI subcommands.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use hyperlip_core::bounds::{
    bound_lower_multiplicity, bronshtein_bound, check_assumption, glaeser_bound,
    taylor_derivative_bounds,
};
use hyperlip_core::curves::random_family_centered;
use hyperlip_core::poly::MonicPoly;
use hyperlip_core::realroots::{
    cluster_roots, default_cluster_gap, is_hyperbolic, ordered_roots, real_roots_in, split,
};
use hyperlip_core::tracking::{
    c1_report, empirical_lipschitz, one_sided_derivatives, sample_grid, track_matched,
    track_ordered, RootBranch, RICHARDSON_TOL,
};
use hyperlip_core::{Error as CoreError, Interval};

use crate::config::{Cli, IntervalArg, RunCommand, TrackModeArg};
use crate::io::{self, BoundReportFile, CertificateFile, PolyFile, RootsFile, SplitFile, TschirnFile};

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        RunCommand::Certify { input, output, tol } => cmd_certify(&input, output.as_deref(), tol),
        RunCommand::Roots { input, output, tol } => cmd_roots(&input, output.as_deref(), tol),
        RunCommand::Tschirn { input, output } => cmd_tschirn(&input, output.as_deref()),
        RunCommand::Split { input, output, tol, gap } => {
            cmd_split(&input, output.as_deref(), tol, gap)
        }
        RunCommand::Bound { input, output, i0, i1, p, grid } => {
            cmd_bound(&input, output.as_deref(), i0, i1, p, grid)
        }
        RunCommand::Track { input, output, i0, grid, tol, mode } => {
            cmd_track(&input, output.as_deref(), i0, grid, tol, mode)
        }
        RunCommand::C1check { input, output, i0, grid, tol } => {
            cmd_c1check(&input, output.as_deref(), i0, grid, tol)
        }
        RunCommand::Verify { input, output, i0, i1, p, grid, tol } => {
            cmd_verify(&input, output.as_deref(), i0, i1, p, grid, tol)
        }
        RunCommand::Calibrate { n, p, families, seed, i0, i1, grid, output } => {
            cmd_calibrate(n, p, families, seed, i0, i1, grid, output.as_deref())
        }
    }
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> Result<()> {
    let text = io::to_json_pretty(value)?;
    println!("{text}");
    io::write_output(output, &text)
}

fn cmd_certify(input: &Path, output: Option<&Path>, tol: f64) -> Result<()> {
    let p = io::read_poly(input)?;
    let cert = is_hyperbolic(&p, tol)?;
    let file = CertificateFile {
        is_hyperbolic: cert.is_hyperbolic,
        real_root_count: cert.real_root_count,
        cauchy_radius: cert.cauchy_radius,
    };
    emit(&file, output)?;
    if !cert.is_hyperbolic {
        return Err(anyhow!(CoreError::NotHyperbolic));
    }
    Ok(())
}

fn cmd_roots(input: &Path, output: Option<&Path>, tol: f64) -> Result<()> {
    let p = io::read_poly(input)?;
    let roots = ordered_roots(&p, tol)?;
    emit(
        &RootsFile { values: roots.values().to_vec(), residual: roots.residual() },
        output,
    )
}

fn cmd_tschirn(input: &Path, output: Option<&Path>) -> Result<()> {
    let p = io::read_poly(input)?;
    let t = p.tschirnhausen();
    emit(
        &TschirnFile { shift: t.shift(), reduced: PolyFile::from_poly(t.reduced()) },
        output,
    )
}

fn cmd_split(input: &Path, output: Option<&Path>, tol: f64, gap: Option<f64>) -> Result<()> {
    let p = io::read_poly(input)?;
    let roots = ordered_roots(&p, tol.min(1e-10))?;
    let gap = gap.unwrap_or_else(|| default_cluster_gap(&roots));
    if gap <= 0.0 {
        return Err(anyhow!(CoreError::CommonRoot)).context("all roots coincide: nothing to split");
    }
    let blocks = cluster_roots(&roots, gap);
    if blocks.len() < 2 {
        return Err(anyhow!(CoreError::CommonRoot))
            .context(format!("single root cluster at gap {gap}: nothing to split"));
    }
    let block_b: Vec<usize> = blocks[0].clone().collect();
    let block_c: Vec<usize> = blocks[1..].iter().flat_map(|r| r.clone()).collect();
    let s = split(&p, &roots, &block_b, &block_c, tol)?;
    emit(&SplitFile::from_result(&s), output)
}

fn cmd_bound(
    input: &Path,
    output: Option<&Path>,
    i0: IntervalArg,
    i1: IntervalArg,
    p: Option<usize>,
    grid: usize,
) -> Result<()> {
    let loaded = io::read_curve(input, grid)?;
    let curve = loaded.curve();
    let p_eff = p.unwrap_or(curve.degree());
    let report = if p_eff == curve.degree() {
        bronshtein_bound(curve, i0.to_interval(), i1.to_interval())?
    } else {
        bound_lower_multiplicity(curve, i0.to_interval(), i1.to_interval(), p_eff, grid)?
    };
    let file = BoundReportFile::from_report(&report);
    print!("{}", file.table());
    let text = io::to_json_pretty(&file)?;
    io::write_output(output, &text)
}

fn cmd_track(
    input: &Path,
    output: Option<&Path>,
    i0: Option<IntervalArg>,
    grid: usize,
    tol: f64,
    mode: TrackModeArg,
) -> Result<()> {
    let loaded = io::read_curve(input, grid)?;
    let curve = loaded.curve();
    let window = i0.map(IntervalArg::to_interval).unwrap_or_else(|| curve.domain());
    let nodes = sample_grid(window, grid)?;
    let tracks = match mode {
        TrackModeArg::Ordered => track_ordered(curve, &nodes, tol)?,
        TrackModeArg::Matched => track_matched(curve, &nodes, tol)?,
    };
    let csv = io::tracks_to_csv(&tracks);
    let lip = empirical_lipschitz(&tracks)?;
    eprintln!(
        "tracked {} branches over {} nodes; max residual {:.3e}; empirical Lipschitz {:.6e}",
        tracks.num_branches(),
        tracks.grid().len(),
        tracks.max_residual(),
        lip.overall
    );
    match output {
        Some(path) => io::write_output(Some(path), &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
struct C1PointFile {
    t0: f64,
    branch: usize,
    left: Option<f64>,
    right: Option<f64>,
    left_final_gap: Option<f64>,
    left_converging: Option<bool>,
    right_final_gap: Option<f64>,
    right_converging: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
struct C1File {
    points: Vec<C1PointFile>,
    max_mismatch: f64,
    all_converging: bool,
}

fn cmd_c1check(
    input: &Path,
    output: Option<&Path>,
    i0: Option<IntervalArg>,
    grid: usize,
    tol: f64,
) -> Result<()> {
    let loaded = io::read_curve(input, grid)?;
    let curve = loaded.curve();
    let window = i0.map(IntervalArg::to_interval).unwrap_or_else(|| curve.domain());
    let nodes = sample_grid(window, grid.max(2))?;
    // probe the zeros of a2~ (the candidate collision points) plus a coarse
    // sample of the window
    let mut probes = if curve.degree() >= 2 {
        real_roots_in(curve.tschirn_poly(2), window.lo, window.hi, 1e-10)
    } else {
        Vec::new()
    };
    probes.extend(window.sample(8));
    probes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    probes.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let rep = c1_report(curve, &nodes, &probes, tol)?;
    let file = C1File {
        points: rep
            .points
            .iter()
            .map(|p| C1PointFile {
                t0: p.t0,
                branch: p.branch,
                left: p.left,
                right: p.right,
                left_final_gap: p.left_approach.as_ref().map(|a| a.final_gap),
                left_converging: p.left_approach.as_ref().map(|a| a.converging),
                right_final_gap: p.right_approach.as_ref().map(|a| a.final_gap),
                right_converging: p.right_approach.as_ref().map(|a| a.converging),
            })
            .collect(),
        max_mismatch: rep.max_mismatch,
        all_converging: rep.all_converging,
    };
    emit(&file, output)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyFile {
    pub checks: Vec<VerifyCheck>,
    pub passed: bool,
}

/// Runs every inequality and regularity check on a curve and reports one
/// pass/fail line per check.
pub fn verify_curve(
    curve: &hyperlip_core::curves::CoeffCurve,
    i0: Interval,
    i1: Interval,
    p: Option<usize>,
    grid: usize,
    tol: f64,
) -> Result<VerifyFile> {
    let n = curve.degree();
    let p_eff = p.unwrap_or(n);
    let mut checks: Vec<VerifyCheck> = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(VerifyCheck { name: name.to_string(), passed, detail });
    };

    // hyperbolicity over I1
    let sample_n = grid.clamp(16, 512);
    let mut hyp_ok = true;
    let mut hyp_detail = format!("{} nodes", sample_n + 1);
    for t in i1.sample(sample_n) {
        match curve.eval_curve(t).map_err(anyhow::Error::from).and_then(|q| {
            is_hyperbolic(&q, tol).map_err(anyhow::Error::from)
        }) {
            Ok(c) if c.is_hyperbolic => {}
            Ok(_) => {
                hyp_ok = false;
                hyp_detail = format!("not hyperbolic at t = {t}");
                break;
            }
            Err(e) => {
                hyp_ok = false;
                hyp_detail = format!("certification failed at t = {t}: {e}");
                break;
            }
        }
    }
    push("hyperbolic_on_I1", hyp_ok, hyp_detail);

    // coefficient and power-sum growth bounds in Tschirnhausen form
    let mut worst_coeff = f64::NEG_INFINITY;
    let mut worst_sum = f64::NEG_INFINITY;
    for t in i1.sample(sample_n) {
        let tf = curve.tschirn_at(t)?;
        let a2 = if n >= 2 { tf.coeff(2) } else { 0.0 };
        let cap = (2.0_f64).sqrt() * a2.abs().sqrt();
        let sums = tf.newton_sums(n);
        let sum_cap = sums.get(1).map_or(0.0, |s| s.abs().sqrt());
        for i in 2..=n {
            worst_coeff = worst_coeff.max(tf.coeff(i).abs().powf(1.0 / i as f64) - cap);
            worst_sum = worst_sum.max(sums[i - 1].abs().powf(1.0 / i as f64) - sum_cap);
        }
    }
    push(
        "coeff_growth",
        worst_coeff <= 1e-10,
        format!("worst margin {worst_coeff:.3e}"),
    );
    push(
        "power_sum_growth",
        worst_sum <= 1e-10,
        format!("worst margin {worst_sum:.3e}"),
    );

    // factor second-coefficient bound over root subsets
    if n <= 10 {
        let mut worst = f64::NEG_INFINITY;
        let mut ok = true;
        for t in i1.sample(16) {
            let tf = curve.tschirn_at(t)?;
            let a2 = tf.coeff(2);
            match ordered_roots(&tf, tol) {
                Ok(roots) => {
                    for mask in 1u32..(1 << n) - 1 {
                        let sub: Vec<f64> = (0..n)
                            .filter(|j| mask & (1 << j) != 0)
                            .map(|j| roots.values()[j])
                            .collect();
                        let b2 = if sub.len() >= 2 {
                            MonicPoly::from_roots(&sub).tschirnhausen().a2()
                        } else {
                            0.0
                        };
                        worst = worst.max(b2.abs() - 2.0 * n as f64 * a2.abs());
                    }
                }
                Err(e) => {
                    ok = false;
                    worst = f64::INFINITY;
                    let _ = e;
                    break;
                }
            }
        }
        push(
            "factor_a2_bound",
            ok && worst <= 1e-9,
            format!("worst margin {worst:.3e}"),
        );
    }

    // bound report
    let report = if p_eff == n {
        bronshtein_bound(curve, i0, i1)
    } else {
        bound_lower_multiplicity(curve, i0, i1, p_eff, grid)
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            push("bound_report", false, format!("{e}"));
            let passed = checks.iter().all(|c| c.passed);
            return Ok(VerifyFile { checks, passed });
        }
    };
    push(
        "bound_report",
        report.bracket.is_finite(),
        format!("A0 {:.6e}, bracket {:.6e}", report.a0, report.bracket),
    );

    // interval assumption at A = A0
    if report.a0 > 0.0 {
        let mut ok = true;
        let mut worst_c = 0.0_f64;
        let mut detail = String::new();
        for t0 in i0.sample(32) {
            if curve.tschirn_poly(2).eval(t0) == 0.0 {
                continue;
            }
            match check_assumption(curve, i0, i1, report.a0, t0) {
                Ok(chk) => {
                    if !(chk.a1_ok && chk.a2_ratio_ok && chk.deriv_ok) {
                        ok = false;
                        detail = format!(
                            "failed at t0 = {t0} (containment {}, ratio {}, worst ratio {:.3})",
                            chk.a1_ok, chk.a2_ratio_ok, chk.worst_ratio
                        );
                        break;
                    }
                    worst_c = worst_c.max(chk.worst_deriv_margin);
                }
                Err(e) => {
                    ok = false;
                    detail = format!("{e}");
                    break;
                }
            }
        }
        if detail.is_empty() {
            detail = format!("fitted derivative constant {worst_c:.6e}");
        }
        push("assumption_at_A0", ok, detail);
    }

    // one-sided derivative bound for a2~ at base points (single-signed case)
    if report.a1 > 0.0 {
        let mut ok = true;
        let mut detail = format!("checked with M = A1 = {:.6e}", report.a1);
        for t0 in i0.sample(16) {
            if curve.tschirn_poly(2).eval(t0) == 0.0 {
                continue;
            }
            match glaeser_bound(curve.tschirn_poly(2), t0, report.a1, i1) {
                Ok(g) if g.holds => {}
                Ok(g) => {
                    ok = false;
                    detail = format!("violated at t0 = {t0}: {} > {}", g.lhs, g.rhs);
                    break;
                }
                Err(e) => {
                    ok = false;
                    detail = format!("hypotheses failed at t0 = {t0}: {e}");
                    break;
                }
            }
        }
        push("a2_derivative_bound", ok, detail);
    }

    // Taylor derivative bounds for each Tschirnhausen coefficient
    {
        let mut ok = true;
        let mut detail = format!("orders 1..={p_eff} on every coefficient");
        'outer: for i in 2..=n {
            for row in taylor_derivative_bounds(curve.tschirn_poly(i), i1, p_eff)? {
                if !row.holds {
                    ok = false;
                    detail = format!(
                        "coefficient {i}, order {}: {:.3e} > {:.3e}",
                        row.k, row.actual, row.bound
                    );
                    break 'outer;
                }
            }
        }
        push("taylor_bounds", ok, detail);
    }

    // coarse-norm inequality chain
    {
        let c = (1.0 / report.delta).max(1.0);
        let chain_ok = report.bracket <= c * report.max_cnorm_root * (1.0 + 1e-9)
            && report.max_cnorm_root <= report.max_cnorm_plus_one * (1.0 + 1e-9);
        push(
            "bracket_chain",
            chain_ok,
            format!(
                "bracket {:.6e} <= {:.6e} <= {:.6e}",
                report.bracket,
                c * report.max_cnorm_root,
                c * report.max_cnorm_plus_one
            ),
        );
    }

    // tracked Lipschitz constant against the bracket
    {
        let nodes = sample_grid(i0, grid.max(2))?;
        match track_ordered(curve, &nodes, tol) {
            Ok(tracks) => {
                let lip = empirical_lipschitz(&tracks)?;
                let ratio = if report.bracket > 0.0 {
                    lip.overall / report.bracket
                } else if lip.overall == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                };
                push(
                    "tracked_lipschitz",
                    ratio.is_finite(),
                    format!("empirical {:.6e}, ratio to bracket {ratio:.6e}", lip.overall),
                );
            }
            Err(e) => push("tracked_lipschitz", false, format!("{e}")),
        }
    }

    // Richardson convergence of one-sided derivatives on a probe grid
    {
        let mut ok = true;
        let mut detail = String::from("16 probe points, all branches");
        'probe: for t0 in Interval::new(
            i0.lo + 0.01 * i0.len(),
            i0.hi - 0.01 * i0.len(),
        )?
        .sample(15)
        {
            for j in 0..n {
                let d = one_sided_derivatives(
                    curve,
                    &RootBranch::Ordered(j),
                    t0,
                    i0.len() / 64.0,
                    RICHARDSON_TOL,
                )?;
                if !d.converged {
                    ok = false;
                    detail = format!("no convergence at t0 = {t0}, branch {j}");
                    break 'probe;
                }
            }
        }
        push("one_sided_derivatives", ok, detail);
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyFile { checks, passed })
}

fn cmd_verify(
    input: &Path,
    output: Option<&Path>,
    i0: IntervalArg,
    i1: IntervalArg,
    p: Option<usize>,
    grid: usize,
    tol: f64,
) -> Result<()> {
    let loaded = io::read_curve(input, grid)?;
    let file = verify_curve(loaded.curve(), i0.to_interval(), i1.to_interval(), p, grid, tol)?;
    for c in &file.checks {
        println!(
            "[{}] {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let text = io::to_json_pretty(&file)?;
    io::write_output(output, &text)?;
    if !file.passed {
        return Err(anyhow!(CoreError::HypothesisFailed {
            condition: "one or more verification checks failed",
        }));
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CalibrateRow {
    pub family: usize,
    pub n: usize,
    pub empirical_lipschitz: f64,
    pub bracket: f64,
    pub ratio: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CalibrateSummary {
    pub n: usize,
    pub p: usize,
    pub families: usize,
    pub seed: u64,
    pub min_ratio: f64,
    pub median_ratio: f64,
    pub max_ratio: f64,
    /// Max ratio over the full sample grew by less than 10% relative to the
    /// first half.
    pub running_max_stable: bool,
}

/// Deterministic calibration run: seeded centered families, ordered tracks
/// on `I0`, bracket on `(I0, I1)`.
pub fn calibrate(
    n: usize,
    p: Option<usize>,
    families: usize,
    seed: u64,
    i0: Interval,
    i1: Interval,
    grid: usize,
) -> Result<(Vec<CalibrateRow>, CalibrateSummary)> {
    anyhow::ensure!((2..=6).contains(&n), "degree n must be in 2..=6");
    anyhow::ensure!(families >= 1, "need at least one family");
    let p_eff = p.unwrap_or(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(families);
    for family in 0..families {
        let fam = random_family_centered(&mut rng, n, 4, i1);
        let report = if p_eff == n {
            bronshtein_bound(fam.curve(), i0, i1)?
        } else {
            bound_lower_multiplicity(fam.curve(), i0, i1, p_eff, grid)?
        };
        let nodes = sample_grid(i0, grid.max(2))?;
        let tracks = track_ordered(fam.curve(), &nodes, 1e-10)?;
        let lip = empirical_lipschitz(&tracks)?.overall;
        let ratio = if report.bracket > 0.0 {
            lip / report.bracket
        } else {
            0.0
        };
        rows.push(CalibrateRow {
            family,
            n,
            empirical_lipschitz: lip,
            bracket: report.bracket,
            ratio,
        });
    }
    let mut sorted: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let max_half = rows[..families.div_ceil(2)]
        .iter()
        .map(|r| r.ratio)
        .fold(0.0_f64, f64::max);
    let max_full = sorted[sorted.len() - 1];
    let summary = CalibrateSummary {
        n,
        p: p_eff,
        families,
        seed,
        min_ratio: sorted[0],
        median_ratio: sorted[sorted.len() / 2],
        max_ratio: max_full,
        running_max_stable: max_full <= 1.10 * max_half || max_half == 0.0,
    };
    Ok((rows, summary))
}

pub fn ratio_table_csv(rows: &[CalibrateRow]) -> String {
    let mut out = String::from("family,n,empirical_lipschitz,bracket,ratio\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.family,
            r.n,
            io::fmt_f(r.empirical_lipschitz),
            io::fmt_f(r.bracket),
            io::fmt_f(r.ratio)
        ));
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_calibrate(
    n: usize,
    p: Option<usize>,
    families: usize,
    seed: u64,
    i0: IntervalArg,
    i1: IntervalArg,
    grid: usize,
    output: Option<&Path>,
) -> Result<()> {
    let (rows, summary) = calibrate(
        n,
        p,
        families,
        seed,
        i0.to_interval(),
        i1.to_interval(),
        grid,
    )?;
    let csv = ratio_table_csv(&rows);
    println!("{}", io::to_json_pretty(&summary)?);
    match output {
        Some(path) => io::write_output(Some(path), &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
