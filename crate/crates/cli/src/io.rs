//! File formats: polynomial and curve inputs (JSON, with a CSV fallback for
//! polynomials), report outputs, and track CSV emission.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use hyperlip_core::bounds::BoundReport;
use hyperlip_core::curves::{CoeffCurve, GroundTruthFamily};
use hyperlip_core::poly::{MonicPoly, RealPoly};
use hyperlip_core::realroots::SplitResult;
use hyperlip_core::tracking::RootTracks;
use hyperlip_core::Interval;

/// Polynomial file: `{"degree": n, "coeffs": [a1, ..., an]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct PolyFile {
    pub degree: usize,
    pub coeffs: Vec<f64>,
}

impl PolyFile {
    pub fn to_poly(&self) -> Result<MonicPoly> {
        if self.degree == 0 || self.degree != self.coeffs.len() {
            bail!(
                "degree {} does not match {} coefficients",
                self.degree,
                self.coeffs.len()
            );
        }
        Ok(MonicPoly::new(self.coeffs.clone()))
    }

    pub fn from_poly(p: &MonicPoly) -> Self {
        PolyFile {
            degree: p.degree(),
            coeffs: p.coeffs().to_vec(),
        }
    }
}

/// Reads a polynomial from JSON, or from a CSV row `degree,a1,...,an`.
pub fn read_poly(path: &Path) -> Result<MonicPoly> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let file: PolyFile = serde_json::from_str(&text)
            .with_context(|| format!("parsing {}", path.display()))?;
        file.to_poly()
    } else {
        let row = text
            .lines()
            .find(|l| !l.trim().is_empty())
            .context("empty polynomial file")?;
        let values: Vec<f64> = row
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("parsing CSV row in {}", path.display()))?;
        if values.len() < 2 {
            bail!("CSV polynomial row needs `degree,a1,...,an`");
        }
        let degree = values[0] as usize;
        if degree as f64 != values[0] || degree == 0 || values.len() != degree + 1 {
            bail!("CSV degree field inconsistent with coefficient count");
        }
        Ok(MonicPoly::new(values[1..].to_vec()))
    }
}

/// Curve file: coefficient polynomials in ascending powers of `t`;
/// `coeff_polys[j]` encodes `a_{j+1}(t)`. Ground-truth families add
/// `root_polys` in the same encoding.
#[derive(Debug, Serialize, Deserialize)]
pub struct CurveFile {
    pub degree: usize,
    pub domain: [f64; 2],
    pub coeff_polys: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_polys: Option<Vec<Vec<f64>>>,
}

/// A loaded curve, keeping the ground-truth root functions when present.
pub enum LoadedCurve {
    Plain(CoeffCurve),
    GroundTruth(GroundTruthFamily),
}

impl LoadedCurve {
    pub fn curve(&self) -> &CoeffCurve {
        match self {
            LoadedCurve::Plain(c) => c,
            LoadedCurve::GroundTruth(f) => f.curve(),
        }
    }
}

pub fn read_curve(path: &Path, validation_grid: usize) -> Result<LoadedCurve> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let file: CurveFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    if file.degree == 0 || file.degree != file.coeff_polys.len() {
        bail!(
            "degree {} does not match {} coefficient polynomials",
            file.degree,
            file.coeff_polys.len()
        );
    }
    let domain = Interval::new(file.domain[0], file.domain[1])
        .map_err(anyhow::Error::from)
        .context("curve domain")?;
    if let Some(roots) = &file.root_polys {
        if roots.len() != file.degree {
            bail!("root_polys count must equal the degree");
        }
        let fam = GroundTruthFamily::from_root_functions(
            roots.iter().map(|c| RealPoly::new(c.clone())).collect(),
            domain,
        );
        // ground truth encodes the coefficients too; make sure they agree
        for j in 1..=file.degree {
            let declared = RealPoly::new(file.coeff_polys[j - 1].clone());
            let derived = fam.curve().coeff_poly(j);
            let scale = 1.0 + derived.inf_norm();
            let diff = declared.sub(derived).inf_norm();
            if diff > 1e-8 * scale {
                bail!("coeff_polys[{j}] disagrees with the root_polys expansion");
            }
        }
        return Ok(LoadedCurve::GroundTruth(fam));
    }
    let curve = CoeffCurve::make_curve_validated(
        file.coeff_polys.iter().map(|c| RealPoly::new(c.clone())).collect(),
        domain,
        validation_grid,
    )?;
    Ok(LoadedCurve::Plain(curve))
}

pub fn curve_file_for(curve: &CoeffCurve, roots: Option<&GroundTruthFamily>) -> CurveFile {
    CurveFile {
        degree: curve.degree(),
        domain: [curve.domain().lo, curve.domain().hi],
        coeff_polys: curve
            .coeff_polys()
            .iter()
            .map(|p| p.coeffs().to_vec())
            .collect(),
        root_polys: roots.map(|f| f.root_polys().iter().map(|p| p.coeffs().to_vec()).collect()),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CertificateFile {
    pub is_hyperbolic: bool,
    pub real_root_count: usize,
    pub cauchy_radius: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RootsFile {
    pub values: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TschirnFile {
    pub shift: f64,
    pub reduced: PolyFile,
}

/// Split output: `{"b": [...], "c": [...], "residual": r, "resultant": s}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct SplitFile {
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub residual: f64,
    pub resultant: f64,
}

impl SplitFile {
    pub fn from_result(s: &SplitResult) -> Self {
        SplitFile {
            b: s.factor_b.coeffs().to_vec(),
            c: s.factor_c.coeffs().to_vec(),
            residual: s.residual,
            resultant: s.resultant_bc,
        }
    }
}

/// Bound report with every quantity named; `alpha_I` is null in the
/// full-multiplicity case and when unavailable (`alpha_unbounded` set).
#[derive(Debug, Serialize, Deserialize)]
pub struct BoundReportFile {
    pub n: usize,
    pub p: usize,
    #[serde(rename = "I0")]
    pub i0: [f64; 2],
    #[serde(rename = "I1")]
    pub i1: [f64; 2],
    pub delta: f64,
    pub sup_a2: f64,
    pub lip_a2p: f64,
    #[serde(rename = "M")]
    pub m: Vec<f64>,
    pub m2: f64,
    #[serde(rename = "A1")]
    pub a1: f64,
    #[serde(rename = "A2")]
    pub a2: f64,
    #[serde(rename = "A0")]
    pub a0: f64,
    pub a2_argmax: usize,
    #[serde(rename = "alpha_I")]
    pub alpha_i: Option<f64>,
    pub alpha_unbounded: bool,
    pub bracket: Option<f64>,
    pub max_cnorm_root: f64,
    pub max_cnorm_plus_one: f64,
}

impl BoundReportFile {
    pub fn from_report(r: &BoundReport) -> Self {
        BoundReportFile {
            n: r.n,
            p: r.p,
            i0: [r.i0.lo, r.i0.hi],
            i1: [r.i1.lo, r.i1.hi],
            delta: r.delta,
            sup_a2: r.sup_a2,
            lip_a2p: r.lip_a2p,
            m: r.m.clone(),
            m2: r.m2,
            a1: r.a1,
            a2: r.a2,
            a0: r.a0,
            a2_argmax: r.a2_argmax,
            alpha_i: r.alpha,
            alpha_unbounded: r.alpha_unbounded,
            bracket: r.bracket.is_finite().then_some(r.bracket),
            max_cnorm_root: r.max_cnorm_root,
            max_cnorm_plus_one: r.max_cnorm_plus_one,
        }
    }

    /// Fixed-order `quantity value` table for diffable stdout output.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let mut push = |k: &str, v: String| {
            out.push_str(&format!("{k:<18} {v}\n"));
        };
        push("n", self.n.to_string());
        push("p", self.p.to_string());
        push("I0", format!("[{}, {}]", self.i0[0], self.i0[1]));
        push("I1", format!("[{}, {}]", self.i1[0], self.i1[1]));
        push("delta", fmt_f(self.delta));
        push("sup_a2", fmt_f(self.sup_a2));
        push("lip_a2p", fmt_f(self.lip_a2p));
        for (i, m) in self.m.iter().enumerate() {
            push(&format!("M_{}", i + 2), fmt_f(*m));
        }
        push("m2", fmt_f(self.m2));
        push("A1", fmt_f(self.a1));
        push("A2", fmt_f(self.a2));
        push("A0", fmt_f(self.a0));
        push("a2_argmax", self.a2_argmax.to_string());
        match self.alpha_i {
            Some(a) => push("alpha_I", fmt_f(a)),
            None => push("alpha_I", "-".to_string()),
        }
        push("alpha_unbounded", self.alpha_unbounded.to_string());
        match self.bracket {
            Some(b) => push("bracket", fmt_f(b)),
            None => push("bracket", "inf".to_string()),
        }
        push("max_cnorm_root", fmt_f(self.max_cnorm_root));
        push("max_cnorm_plus1", fmt_f(self.max_cnorm_plus_one));
        out
    }
}

/// Full double precision (17 significant digits).
pub fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

/// Track CSV: header `t,branch_1,...,branch_n`, one row per node, full
/// double precision.
pub fn tracks_to_csv(tracks: &RootTracks) -> String {
    let n = tracks.num_branches();
    let mut out = String::from("t");
    for j in 1..=n {
        out.push_str(&format!(",branch_{j}"));
    }
    out.push('\n');
    for (k, &t) in tracks.grid().iter().enumerate() {
        out.push_str(&fmt_f(t));
        for j in 0..n {
            out.push(',');
            out.push_str(&fmt_f(tracks.branches()[j][k]));
        }
        out.push('\n');
    }
    out
}

pub fn write_output(path: Option<&Path>, contents: &str) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, contents).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}
