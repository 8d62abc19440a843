// SPDX-License-Identifier: Apache-2.0

//! Fractional revival, state transfer and periodicity detection.
//!
//! A revival between `u` and `v` at time `t` means `U(t) e_u = alpha e_u + beta e_v`
//! with `|alpha|^2 + |beta|^2 = 1`. Numerically we measure the leaked mass
//! `residual = sqrt(sum_{w != u, v} |U(t)[w][u]|^2)` and classify from there.
//! Integer eigenvalues make `U` 2 pi periodic, so scans cover `[0, 2 pi)`.

use std::f64::consts::TAU;

use ndarray::Array1;
use num_complex::Complex64;
use serde::Serialize;

use crate::cayley::UnitaryCayleyGraph;
use crate::error::{Error, Result};
use crate::spectral::{eigenvalue_support, CirculantSpectrum};
use crate::time::Time;
use crate::walk::{evolve_oracle, EvolutionSnapshot, Synthesis, ORACLE_MAX_N};

pub const DEFAULT_TOL: f64 = 1e-8;
/// `|beta|` above this makes a revival proper.
pub const PROPER_THRESHOLD: f64 = 1e-6;
pub const BALANCED_TOL: f64 = 1e-8;
/// Largest denominator tried when snapping refined times to `p pi / q`.
pub const SNAP_MAX_DENOMINATOR: u64 = 48;
pub const SNAP_TOL: f64 = 1e-9;
const REFINE_TOL: f64 = 1e-12;
/// Hits closer than this (cyclically) are the same event.
const SAME_EVENT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    None,
    ProperQfr,
    BalancedQfr,
    Pst,
    PeriodicReturn,
}

impl Classification {
    /// Revival with nonzero transfer: proper, balanced or perfect transfer.
    pub fn is_transfer(self) -> bool {
        matches!(
            self,
            Classification::ProperQfr | Classification::BalancedQfr | Classification::Pst
        )
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// Classification rules, applied in order: invalid revival, PST
/// (`|alpha| <= tol`), periodic return (`|beta| <= tol`), balanced, proper.
/// A valid revival with `tol < |beta| <= PROPER_THRESHOLD` is too close to
/// call and classifies as `None`.
pub fn classify(alpha: Complex64, beta: Complex64, residual: f64, tol: f64) -> Classification {
    let (a, b) = (alpha.norm(), beta.norm());
    let norm_defect = (a * a + b * b - 1.0).abs();
    if residual > tol || norm_defect > tol {
        Classification::None
    } else if a <= tol {
        Classification::Pst
    } else if b <= tol {
        Classification::PeriodicReturn
    } else if b <= PROPER_THRESHOLD {
        Classification::None
    } else if (a - b).abs() <= BALANCED_TOL {
        Classification::BalancedQfr
    } else {
        Classification::ProperQfr
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QfrCertificate {
    pub n: usize,
    pub u: usize,
    pub v: usize,
    pub t: f64,
    pub t_exact: Option<String>,
    #[serde(serialize_with = "crate::json::complex_pair")]
    pub alpha: Complex64,
    #[serde(serialize_with = "crate::json::complex_pair")]
    pub beta: Complex64,
    pub residual: f64,
    #[serde(rename = "class")]
    pub classification: Classification,
    /// Two-block form `[[alpha, beta], [beta, conj(alpha)]] (+) Q`.
    pub block_check: bool,
    /// `U[v][v] = -(conj(alpha) / conj(beta)) beta`; `None` when `beta` is
    /// negligible.
    pub gamma_relation: Option<bool>,
    /// Golden-section time before snapping, when this certificate came from a
    /// scan.
    #[serde(skip)]
    pub t_refined: Option<f64>,
}

impl QfrCertificate {
    pub fn is_hit(&self) -> bool {
        self.classification.is_transfer()
    }
}

/// The 2x2 block of `U(t)` on `{u, v}` and the largest entry of rows and
/// columns `u`, `v` outside that block.
#[derive(Debug, Clone, Copy)]
struct BlockView {
    uu: Complex64,
    vu: Complex64,
    uv: Complex64,
    vv: Complex64,
    off_block: f64,
}

impl BlockView {
    fn holds(&self, tol: f64) -> bool {
        let (alpha, beta) = (self.uu, self.vu);
        let norm = alpha * alpha.conj() + beta * beta.conj();
        let cross = alpha * beta.conj() + beta * alpha.conj();
        self.off_block <= tol
            && (norm - 1.0).norm() <= tol
            && cross.norm() <= tol
            && (self.uv - beta).norm() <= tol
            && (self.vv - alpha.conj()).norm() <= tol
    }

    fn gamma_relation(&self, tol: f64) -> Option<bool> {
        let (alpha, beta) = (self.uu, self.vu);
        (beta.norm() > PROPER_THRESHOLD)
            .then(|| (self.vv + alpha.conj() / beta.conj() * beta).norm() <= tol)
    }
}

fn block_from_columns(col_u: &Array1<Complex64>, col_v: &Array1<Complex64>, u: usize, v: usize) -> BlockView {
    // U(t) is symmetric, so rows u, v equal columns u, v.
    let off_block = col_u
        .iter()
        .chain(col_v.iter())
        .enumerate()
        .filter(|&(i, _)| {
            let w = i % col_u.len();
            w != u && w != v
        })
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max);
    BlockView {
        uu: col_u[u],
        vu: col_u[v],
        uv: col_v[u],
        vv: col_v[v],
        off_block,
    }
}

/// Block structure check on a full evolution matrix.
pub fn verify_block_structure(snapshot: &EvolutionSnapshot, u: usize, v: usize, tol: f64) -> Result<bool> {
    let n = snapshot.n;
    for w in [u, v] {
        if w >= n {
            return Err(Error::VertexOutOfRange { vertex: w, n });
        }
    }
    if u == v {
        return Err(Error::SameVertex(u));
    }
    let m = &snapshot.matrix;
    let off_block = (0..n)
        .filter(|&w| w != u && w != v)
        .flat_map(|w| [m[[w, u]], m[[w, v]], m[[u, w]], m[[v, w]]])
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let view = BlockView {
        uu: m[[u, u]],
        vu: m[[v, u]],
        uv: m[[u, v]],
        vv: m[[v, v]],
        off_block,
    };
    Ok(view.holds(tol))
}

fn residual_of(col: &Array1<Complex64>, u: usize, v: usize) -> f64 {
    col.iter()
        .enumerate()
        .filter(|&(w, _)| w != u && w != v)
        .map(|(_, z)| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn certificate(
    n: usize,
    u: usize,
    v: usize,
    t: Time,
    col_u: &Array1<Complex64>,
    col_v: &Array1<Complex64>,
    tol: f64,
) -> QfrCertificate {
    let alpha = col_u[u];
    let beta = col_u[v];
    let residual = residual_of(col_u, u, v);
    let block = block_from_columns(col_u, col_v, u, v);
    QfrCertificate {
        n,
        u,
        v,
        t: t.value(),
        t_exact: t.exact_string(),
        alpha,
        beta,
        residual,
        classification: classify(alpha, beta, residual, tol),
        block_check: block.holds(tol),
        gamma_relation: block.gamma_relation(tol),
        t_refined: None,
    }
}

/// Detect and classify revival from `u` towards `v` at time `t`, using the
/// spectral synthesis.
pub fn detect_at(
    spec: &CirculantSpectrum,
    u: usize,
    v: usize,
    t: impl Into<Time>,
    tol: f64,
) -> Result<QfrCertificate> {
    spec.check_pair(u, v)?;
    check_tol(tol)?;
    let t = t.into();
    let synth = Synthesis::new(spec);
    let col_u = synth.column(t, u);
    let col_v = synth.column(t, v);
    Ok(certificate(spec.n(), u, v, t, &col_u, &col_v, tol))
}

/// Same as [`detect_at`] but evaluated on the matrix exponential oracle.
pub fn detect_at_oracle(
    g: &UnitaryCayleyGraph,
    u: usize,
    v: usize,
    t: impl Into<Time>,
    tol: f64,
) -> Result<QfrCertificate> {
    check_tol(tol)?;
    let t = t.into();
    let snapshot = evolve_oracle(g, t)?;
    for w in [u, v] {
        if w >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: w, n: g.n() });
        }
    }
    if u == v {
        return Err(Error::SameVertex(u));
    }
    Ok(certificate(
        g.n(),
        u,
        v,
        t,
        &snapshot.column(u),
        &snapshot.column(v),
        tol,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub count: usize,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub u: usize,
    pub v: usize,
    pub grid: GridSpec,
    pub tol: f64,
    pub refined: bool,
    /// Refined candidates the matrix exponential oracle did not confirm.
    pub rejected_by_oracle: usize,
    pub hits: Vec<QfrCertificate>,
}

/// One grid sample of the revival profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfilePoint {
    pub t: f64,
    pub alpha_sq: f64,
    pub beta_sq: f64,
    pub residual: f64,
}

impl ProfilePoint {
    /// `1 - |alpha|^2 - |beta|^2`
    pub fn norm_defect(&self) -> f64 {
        1.0 - self.alpha_sq - self.beta_sq
    }
}

/// Smallest power of two passing the sampling guard, at least 4096.
pub fn default_grid(spec: &CirculantSpectrum) -> usize {
    (4 * spec.lambda_max() as usize + 1).next_power_of_two().max(4096)
}

fn check_grid(spec: &CirculantSpectrum, grid_count: usize) -> Result<()> {
    let lambda_max = spec.lambda_max();
    if grid_count < 16 || grid_count as u64 <= 4 * lambda_max {
        Err(Error::GridTooCoarse {
            grid: grid_count,
            lambda_max,
        })
    } else {
        Ok(())
    }
}

struct PairEval<'a> {
    synth: Synthesis<'a>,
    u: usize,
    v: usize,
}

impl PairEval<'_> {
    fn point(&self, t: f64) -> ProfilePoint {
        let col = self.synth.column(Time::Radians(t), self.u);
        ProfilePoint {
            t,
            alpha_sq: col[self.u].norm_sqr(),
            beta_sq: col[self.v].norm_sqr(),
            residual: residual_of(&col, self.u, self.v),
        }
    }
}

/// Revival profile of `(u, v)` on a uniform grid over `[0, 2 pi)`.
pub fn scan_profile(spec: &CirculantSpectrum, u: usize, v: usize, grid_count: usize) -> Result<Vec<ProfilePoint>> {
    spec.check_pair(u, v)?;
    check_grid(spec, grid_count)?;
    let eval = PairEval {
        synth: Synthesis::new(spec),
        u,
        v,
    };
    Ok((0..grid_count)
        .map(|i| eval.point(TAU * i as f64 / grid_count as f64))
        .collect())
}

/// Golden-section minimization of `f` on `[lo, hi]` down to `REFINE_TOL`.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > REFINE_TOL {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    [(f(mid), mid), (f1, x1), (f2, x2)]
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, x)| x)
        .expect("three candidates")
}

#[derive(Debug, Clone, Copy)]
enum Objective {
    Residual,
    AlphaModulus,
    Balance,
}

impl Objective {
    fn of(self, p: &ProfilePoint) -> f64 {
        match self {
            Objective::Residual => p.residual,
            Objective::AlphaModulus => p.alpha_sq.sqrt(),
            Objective::Balance => (p.alpha_sq.sqrt() - p.beta_sq.sqrt()).abs(),
        }
    }
}

/// Grid indices that are cyclic local minima of `values` (ties broken to the
/// right so a flat stretch yields nothing).
fn local_minima(values: &[f64], admissible: impl Fn(usize) -> bool) -> Vec<usize> {
    let len = values.len();
    (0..len)
        .filter(|&i| admissible(i))
        .filter(|&i| {
            let prev = values[(i + len - 1) % len];
            let next = values[(i + 1) % len];
            values[i] <= prev && values[i] < next
        })
        .collect()
}

fn wrap(t: f64) -> f64 {
    let w = t.rem_euclid(TAU);
    if TAU - w < SAME_EVENT {
        0.0
    } else {
        w
    }
}

fn cyclic_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % TAU;
    d.min(TAU - d)
}

/// Search `[0, 2 pi)` for revival times between `u` and `v`.
///
/// Grid minima of the residual below a coarse gate are refined by
/// golden-section search, snapped to `p pi / q` when close, re-checked with
/// [`detect_at`] and, for graphs within oracle scale, confirmed against the
/// matrix exponential. On stretches where revival holds throughout (only
/// `n = 2`), minima of `|alpha|` and of `||alpha| - |beta||` are refined
/// instead.
pub fn scan_times(
    spec: &CirculantSpectrum,
    u: usize,
    v: usize,
    grid_count: usize,
    tol: f64,
) -> Result<ScanReport> {
    check_tol(tol)?;
    let profile = scan_profile(spec, u, v, grid_count)?;
    let n = spec.n();
    let eval = PairEval {
        synth: Synthesis::new(spec),
        u,
        v,
    };
    let step = TAU / grid_count as f64;
    // |d residual / dt| <= lambda_max, and the nearest grid point is within step / 2
    let gate = (spec.lambda_max() as f64 * step).max(tol);

    let residuals: Vec<f64> = profile.iter().map(|p| p.residual).collect();
    let mut candidates: Vec<(usize, Objective)> = local_minima(&residuals, |i| residuals[i] <= gate)
        .into_iter()
        .map(|i| (i, Objective::Residual))
        .collect();
    let flat = |i: usize| {
        let len = residuals.len();
        residuals[i] <= tol && residuals[(i + 1) % len] <= tol && residuals[(i + len - 1) % len] <= tol
    };
    for objective in [Objective::AlphaModulus, Objective::Balance] {
        let values: Vec<f64> = profile.iter().map(|p| objective.of(p)).collect();
        candidates.extend(local_minima(&values, flat).into_iter().map(|i| (i, objective)));
    }

    let graph = (n <= ORACLE_MAX_N).then(|| UnitaryCayleyGraph::new(n)).transpose()?;
    let mut hits: Vec<QfrCertificate> = Vec::new();
    let mut rejected_by_oracle = 0;
    for (i, objective) in candidates {
        let center = profile[i].t;
        let refined = wrap(golden_section(
            |t| objective.of(&eval.point(t)),
            center - step,
            center + step,
        ));
        let mut at = Time::Radians(refined);
        let mut cert = detect_at(spec, u, v, at, tol)?;
        if let Some(exact) = Time::snap(refined, SNAP_MAX_DENOMINATOR, SNAP_TOL) {
            let snapped = detect_at(spec, u, v, exact, tol)?;
            if snapped.classification != Classification::None {
                at = exact;
                cert = snapped;
            }
        }
        cert.t_refined = Some(refined);
        if !cert.is_hit() {
            continue;
        }
        if let Some(g) = &graph {
            let check = detect_at_oracle(g, u, v, at, 10.0 * tol)?;
            if check.classification == Classification::None || check.residual > 10.0 * tol {
                rejected_by_oracle += 1;
                continue;
            }
        }
        match hits
            .iter_mut()
            .find(|h| cyclic_distance(h.t, cert.t) < SAME_EVENT)
        {
            Some(existing) => {
                if existing.t_exact.is_none() && cert.t_exact.is_some() {
                    *existing = cert;
                }
            }
            None => hits.push(cert),
        }
    }
    hits.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(ScanReport {
        n,
        u,
        v,
        grid: GridSpec {
            count: grid_count,
            start: 0.0,
            end: TAU,
        },
        tol,
        refined: true,
        rejected_by_oracle,
        hits,
    })
}

/// Scan every pair `(0, v)`; vertex transitivity covers the rest. Reports are
/// ordered by `v`.
pub fn scan_all_pairs(spec: &CirculantSpectrum, grid_count: usize, tol: f64) -> Result<Vec<ScanReport>> {
    let vs: Vec<usize> = (1..spec.n()).collect();
    #[cfg(feature = "parallel")]
    let reports = {
        use rayon::prelude::*;
        vs.par_iter()
            .map(|&v| scan_times(spec, 0, v, grid_count, tol))
            .collect::<Result<Vec<_>>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let reports = vs
        .iter()
        .map(|&v| scan_times(spec, 0, v, grid_count, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(reports)
}

/// Pairs `(0, v)` with at least one revival hit.
pub fn qfr_pairs(spec: &CirculantSpectrum, grid_count: usize, tol: f64) -> Result<Vec<(usize, usize)>> {
    Ok(scan_all_pairs(spec, grid_count, tol)?
        .into_iter()
        .filter(|r| !r.hits.is_empty())
        .map(|r| (r.u, r.v))
        .collect())
}

/// Parity of one plus/minus eigenvalue difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossParity {
    pub plus: i64,
    pub minus: i64,
    pub even: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub n: usize,
    pub squarefree: bool,
    pub grid: usize,
    pub tol: f64,
    pub hit_count: usize,
    pub hit_pairs: Vec<[usize; 2]>,
    /// `"no hit at tolerance"`, `"hit found"` or `"not applicable"`.
    pub odd_status: &'static str,
    /// Odd `n` shows no revival hit.
    pub odd_no_qfr: bool,
    /// Every hit pair is strongly cospectral.
    pub strongly_cospectral: bool,
    /// Squarefree structure of the +1 / -1 eigenvalues at hit pairs.
    pub squarefree_parity: bool,
    /// Every hit pair is antipodal.
    pub antipodal: bool,
    /// Every hit has the two-block form and the gamma relation; informational.
    pub block_form: bool,
    /// Plus/minus difference parities per hit pair (squarefree `n` with hits).
    pub cross_parity: Vec<CrossParity>,
    /// Whether every entry of `cross_parity` is even; informational.
    pub all_cross_even: bool,
    pub pass: bool,
}

fn sorted_pairs(reports: &[ScanReport]) -> Vec<[usize; 2]> {
    let mut pairs: Vec<[usize; 2]> = reports
        .iter()
        .filter(|r| !r.hits.is_empty())
        .map(|r| [r.u, r.v])
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Check the revival theorems computationally for one `n`.
pub fn check_theorems(n: usize, grid_count: Option<usize>, tol: f64) -> Result<TheoremCheck> {
    let spec = crate::spectral::spectrum_via_ramanujan(n)?;
    let grid = grid_count.unwrap_or_else(|| default_grid(&spec));
    let reports = scan_all_pairs(&spec, grid, tol)?;
    let pairs = sorted_pairs(&reports);
    let hit_count: usize = reports.iter().map(|r| r.hits.len()).sum();
    let squarefree = crate::numtheory::is_squarefree(n as u64)?;
    let odd = n % 2 == 1;

    let odd_no_qfr = !odd || hit_count == 0;
    let odd_status = match (odd, hit_count) {
        (false, _) => "not applicable",
        (true, 0) => "no hit at tolerance",
        (true, _) => "hit found",
    };

    let supports = pairs
        .iter()
        .map(|&[u, v]| eigenvalue_support(&spec, u, v))
        .collect::<Result<Vec<_>>>()?;
    let strongly_cospectral = supports.iter().all(|s| s.is_strongly_cospectral());
    let antipodal = pairs
        .iter()
        .all(|&[u, v]| n % 2 == 0 && (v + n - u) % n == n / 2);

    let mut cross_parity = Vec::new();
    let mut squarefree_parity = true;
    if squarefree && hit_count > 0 {
        let phi = crate::numtheory::euler_phi(n as u64)? as usize;
        let multiplicities = spec.multiplicity(1) == phi && spec.multiplicity(-1) == phi;
        squarefree_parity &= multiplicities;
        for s in &supports {
            let opposite = (s.plus.contains(&1) && s.minus.contains(&-1))
                || (s.plus.contains(&-1) && s.minus.contains(&1));
            let diffs = s.cross_differences();
            let some_even = diffs.iter().any(|&(_, _, d)| d % 2 == 0);
            squarefree_parity &= opposite && some_even;
            cross_parity.extend(diffs.into_iter().map(|(plus, minus, d)| CrossParity {
                plus,
                minus,
                even: d % 2 == 0,
            }));
        }
    }
    let all_cross_even = cross_parity.iter().all(|c| c.even);
    let block_form = reports
        .iter()
        .flat_map(|r| &r.hits)
        .all(|h| h.block_check && h.gamma_relation != Some(false));

    Ok(TheoremCheck {
        n,
        squarefree,
        grid,
        tol,
        hit_count,
        hit_pairs: pairs,
        odd_status,
        odd_no_qfr,
        strongly_cospectral,
        squarefree_parity,
        antipodal,
        block_form,
        cross_parity,
        all_cross_even,
        pass: odd_no_qfr && strongly_cospectral && squarefree_parity && antipodal,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub entries: Vec<TheoremCheck>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    /// One JSON object per line, ordered by `n`.
    pub fn to_json_lines(&self) -> String {
        self.entries
            .iter()
            .map(|e| crate::json::to_string(e) + "\n")
            .collect()
    }
}

/// Run [`check_theorems`] for every `n` in the range; results are sorted by
/// `n` whatever order they finish in.
pub fn verify_theorems(ns: std::ops::RangeInclusive<usize>, tol: f64) -> Result<VerifyReport> {
    let ns: Vec<usize> = ns.collect();
    #[cfg(feature = "parallel")]
    let mut entries = {
        use rayon::prelude::*;
        ns.par_iter()
            .map(|&n| check_theorems(n, None, tol))
            .collect::<Result<Vec<_>>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let mut entries = ns
        .iter()
        .map(|&n| check_theorems(n, None, tol))
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by_key(|e| e.n);
    Ok(VerifyReport { entries })
}
