//! The invariant suite behind `validate` and the acceptance target.
//!
//! Every check returns a [`CheckResult`] carrying the measured quantity, so a
//! failing line says by how much it failed.

use std::f64::consts::PI;

use diracpt_core::oracle::{self, OracleConfig, CERTIFICATION_STEP};
use diracpt_core::specfun::{self, JacobiParams};
use diracpt_core::spectrum::{self, SpectralPoint, DEFAULT_TOL};
use diracpt_core::wavefunction::{self, GridSpec, Normalization, Spacing};
use diracpt_core::{ModelParams, QuantumNumbers};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cli::{Format, NormalizeArg, OutputArgs, PhysicsArgs, SpacingArg, WavefunctionArgs};
use crate::commands;
use crate::format::fmt_f64;
use crate::reference::{TABLE1_ALPHAS, TABLE1_DIMS, TABLE1_N};
use crate::report::ComparisonReport;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(id: &'static str, passed: bool, detail: String) -> Self {
        Self { id, passed, detail }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.detail
        )
    }
}

fn e(x: f64) -> String {
    format!("{x:.3e}")
}

/// A solved Table-1 cell.
#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub dim: u32,
    pub n: u32,
    pub alpha: f64,
    pub level: SpectralPoint,
}

impl Cell {
    fn label(&self) -> String {
        format!("D={} n={} alpha={}", self.dim, self.n, fmt_f64(self.alpha))
    }
}

/// Every Table-1 cell for which the closed-form solver finds a level.
pub fn table_cells() -> Vec<Cell> {
    let mut out = Vec::new();
    for &dim in &TABLE1_DIMS {
        for &n in &TABLE1_N {
            for &alpha in &TABLE1_ALPHAS {
                let Ok(p) = ModelParams::unit_table(alpha) else {
                    continue;
                };
                let Ok(q) = QuantumNumbers::from_principal(n, dim) else {
                    continue;
                };
                if let Ok(level) = spectrum::solve_level(&p, &q, DEFAULT_TOL) {
                    out.push(Cell {
                        dim,
                        n,
                        alpha,
                        level,
                    });
                }
            }
        }
    }
    out
}

/// Tracks the largest value and where it occurred.
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            at: "-".into(),
        }
    }

    fn see(&mut self, v: f64, at: impl FnOnce() -> String) {
        if v > self.value || v.is_nan() {
            self.value = v;
            self.at = at();
        }
    }
}

pub fn gamma_beta_spots() -> CheckResult {
    let g = specfun::log_gamma(0.5).map(f64::exp).unwrap_or(f64::NAN);
    let b = specfun::beta(2.0, 3.0).unwrap_or(f64::NAN);
    let eg = (g - PI.sqrt()).abs() / PI.sqrt();
    let eb = (b - 1.0 / 12.0).abs() * 12.0;
    CheckResult::new(
        "specfun.gamma_beta",
        eg <= 1e-13 && eb <= 1e-13,
        format!(
            "|Gamma(1/2)-sqrt(pi)| rel {}, |B(2,3)-1/12| rel {} (tol 1e-13)",
            e(eg),
            e(eb)
        ),
    )
}

/// Jacobi parameters that occur in the Table-1 wavefunctions, optionally
/// with a few generic ones whose polynomials have zeros at simple rationals.
fn jacobi_parameter_sets(cells: &[Cell], generic: bool) -> Vec<(f64, f64)> {
    let mut sets: Vec<(f64, f64)> = cells
        .iter()
        .map(|c| (c.level.q.kappa().value() + 0.5, c.level.eps))
        .collect();
    if generic {
        sets.extend([(0.0, 0.0), (0.5, -0.5), (-0.5, 0.5), (1.0, 1.0), (3.0, 7.5)]);
    }
    sets
}

/// Recurrence against the Rodrigues formula, relative, n ≤ 6, on `xs`.
pub fn jacobi_vs_rodrigues(cells: &[Cell], xs: &[f64]) -> CheckResult {
    let mut worst = Worst::new();
    for (a, b) in jacobi_parameter_sets(cells, true) {
        for n in 0..=specfun::RODRIGUES_MAX_DEGREE {
            let Ok(jp) = JacobiParams::new(n, a, b) else {
                continue;
            };
            for &x in xs {
                let rec = specfun::jacobi_eval(&jp, x);
                let rod = specfun::jacobi_rodrigues(&jp, x).unwrap_or(f64::NAN);
                let rel = (rec - rod).abs() / rec.abs().max(f64::MIN_POSITIVE);
                worst.see(rel, || {
                    format!("n={n} a={} b={} x={}", fmt_f64(a), fmt_f64(b), fmt_f64(x))
                });
            }
        }
    }
    CheckResult::new(
        "specfun.jacobi_rodrigues",
        worst.value <= 1e-8,
        format!("max rel {} at {} (tol 1e-8)", e(worst.value), worst.at),
    )
}

/// Recurrence against the hypergeometric form, n ≤ 10.
///
/// With `pointwise`, the error is relative to |P(x)| and only the Table-1
/// parameters are used, since a grid point on an exact zero would make the
/// ratio meaningless. Otherwise it is relative to max |P| over [−1, 1].
pub fn jacobi_vs_hypergeometric(cells: &[Cell], xs: &[f64], pointwise: bool) -> CheckResult {
    let mut worst = Worst::new();
    for (a, b) in jacobi_parameter_sets(cells, !pointwise) {
        for n in 0..=10u32 {
            let Ok(jp) = JacobiParams::new(n, a, b) else {
                continue;
            };
            let size = (0..=200)
                .map(|i| specfun::jacobi_eval(&jp, -1.0 + 0.01 * f64::from(i)).abs())
                .fold(0.0, f64::max);
            for &x in xs {
                let rec = specfun::jacobi_eval(&jp, x);
                let hyp = specfun::jacobi_hypergeometric(&jp, x).unwrap_or(f64::NAN);
                let scale = if pointwise { rec.abs() } else { size };
                let rel = (rec - hyp).abs() / scale.max(f64::MIN_POSITIVE);
                worst.see(rel, || {
                    format!("n={n} a={} b={} x={}", fmt_f64(a), fmt_f64(b), fmt_f64(x))
                });
            }
        }
    }
    let kind = if pointwise { "pointwise" } else { "normwise" };
    CheckResult::new(
        "specfun.jacobi_hypergeometric",
        worst.value <= 1e-12,
        format!(
            "max {kind} rel {} at {} (tol 1e-12)",
            e(worst.value),
            worst.at
        ),
    )
}

/// Uniform grid on the open interval (−1, 1).
pub fn open_grid(count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| -1.0 + 2.0 * i as f64 / (count as f64 + 1.0))
        .collect()
}

/// Residuals of levels sharing M must be bit-identical at random energies.
pub fn m_index_invariance(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut compared = 0;
    let mut mismatches = 0;
    for &alpha in &TABLE1_ALPHAS {
        let Ok(p) = ModelParams::unit_table(alpha) else {
            continue;
        };
        let (lo, hi) = p.window();
        for n_r in 0..3 {
            for dim in 3..6 {
                let (Ok(a), Ok(b)) = (
                    QuantumNumbers::new(n_r, 1, dim),
                    QuantumNumbers::new(n_r, 0, dim + 2),
                ) else {
                    continue;
                };
                for _ in 0..100 {
                    let energy = rng.gen_range(lo..hi);
                    let ra = spectrum::residual_unsquared(energy, &p, &a).ok();
                    let rb = spectrum::residual_unsquared(energy, &p, &b).ok();
                    compared += 1;
                    if ra.map(f64::to_bits) != rb.map(f64::to_bits) {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    CheckResult::new(
        "spectrum.m_index_invariance",
        mismatches == 0 && compared > 0,
        format!("{mismatches} mismatches in {compared} random residual pairs"),
    )
}

/// Computed energies of every `(D, n+1)` / `(D+2, n)` pair are bit-identical.
pub fn computed_degeneracy() -> CheckResult {
    let (mut checked, mut identical) = (0, 0);
    for pair in ComparisonReport::degenerate_pairs() {
        let Ok(p) = ModelParams::unit_table(pair.alpha) else {
            continue;
        };
        let solve = |(d, n): (u32, u32)| {
            QuantumNumbers::from_principal(n, d)
                .and_then(|q| spectrum::solve_level(&p, &q, DEFAULT_TOL))
                .map(|sp| sp.energy.to_bits())
                .ok()
        };
        if let (Some(a), Some(b)) = (solve(pair.upper), solve(pair.lower)) {
            checked += 1;
            identical += usize::from(a == b);
        }
    }
    CheckResult::new(
        "spectrum.degeneracy",
        checked > 0 && checked == identical,
        format!("{identical} of {checked} pairs bit-identical"),
    )
}

/// Small-α law `E/α² → ((M + √(2M² − 1))/2)²` for M = 5..15, with each root
/// also bracketed by an independent dense sign scan.
pub fn limiting_law(alpha: f64, tol: f64) -> CheckResult {
    let Ok(p) = ModelParams::unit_table(alpha) else {
        return CheckResult::new("spectrum.limiting_law", false, "invalid parameters".into());
    };
    let mut worst = Worst::new();
    let mut unbracketed = 0;
    for m in 5..=15u32 {
        let mf = f64::from(m);
        let sqrt_u = 0.5 * (mf + (2.0 * mf * mf - 1.0).sqrt());
        let u = sqrt_u * sqrt_u;
        match spectrum::solve_for_index(&p, m, DEFAULT_TOL) {
            Ok(root) => {
                let rel = (root.energy / (alpha * alpha) - u).abs() / u;
                worst.see(rel, || format!("M={m}"));
                if !dense_scan_brackets(&p, m, root.energy) {
                    unbracketed += 1;
                }
            }
            Err(_) => worst.see(f64::INFINITY, || format!("M={m} unsolved")),
        }
    }
    CheckResult::new(
        "spectrum.limiting_law",
        worst.value <= tol && unbracketed == 0,
        format!(
            "alpha={}: max rel {} at {} (tol {}); {unbracketed} roots outside the dense-scan bracket",
            fmt_f64(alpha),
            e(worst.value),
            worst.at,
            fmt_f64(tol)
        ),
    )
}

/// Geometric 10⁵-point scan of the unsquared residual over the window;
/// true when exactly one sign change occurs and it brackets `energy`.
fn dense_scan_brackets(p: &ModelParams, m: u32, energy: f64) -> bool {
    let (lo, hi) = p.window();
    let width = hi - lo;
    let points = 100_000;
    let first = width * 1e-16;
    let ratio = (width / first).powf(1.0 / (points - 1) as f64);
    let mut prev: Option<(f64, f64)> = None;
    let mut brackets = Vec::new();
    let mut offset = first;
    for _ in 0..points {
        let x = (lo + offset).min(hi);
        if let Ok(h) = spectrum::residual_unsquared_for_index(x, p, m) {
            if let Some((px, ph)) = prev {
                if ph * h <= 0.0 && ph != 0.0 {
                    brackets.push((px, x));
                }
            }
            prev = Some((x, h));
        }
        offset *= ratio;
    }
    brackets.len() == 1 && brackets[0].0 <= energy && energy <= brackets[0].1
}

/// Sign scan of the unsquared residual over `(c₁ − μ, 0]` for every M in the
/// table, plus positivity of every solved level.
pub fn positive_energy(cells: &[Cell], points: usize) -> CheckResult {
    let mut roots = 0;
    let mut in_window = 0;
    let mut scans = 0;
    for &alpha in &TABLE1_ALPHAS {
        let Ok(p) = ModelParams::unit_table(alpha) else {
            continue;
        };
        for m in 5..=15u32 {
            let scan = spectrum::negative_energy_scan(&p, m, points);
            scans += 1;
            roots += scan.sign_changes + scan.zeros;
            in_window += scan.in_window;
        }
    }
    let nonpositive = cells
        .iter()
        .filter(|c| c.level.energy <= 0.0 || c.level.energy.is_nan())
        .count();
    CheckResult::new(
        "spectrum.positive_energy",
        roots == 0 && nonpositive == 0,
        format!(
            "{scans} scans of {points} points ({in_window} inside the window): {roots} roots at E <= 0; {nonpositive} of {} levels with E <= 0",
            cells.len()
        ),
    )
}

pub fn monotonicity(cells: &[Cell]) -> CheckResult {
    let get = |d: u32, n: u32, a: f64| {
        cells
            .iter()
            .find(|c| c.dim == d && c.n == n && c.alpha == a)
            .map(|c| c.level.energy)
    };
    let (mut checked, mut bad) = (0, Vec::new());
    for &n in &TABLE1_N {
        for &a in &TABLE1_ALPHAS {
            for w in TABLE1_DIMS.windows(2) {
                if let (Some(x), Some(y)) = (get(w[0], n, a), get(w[1], n, a)) {
                    checked += 1;
                    if y <= x {
                        bad.push(format!("D {}->{} n={n} alpha={}", w[0], w[1], fmt_f64(a)));
                    }
                }
            }
        }
        for &d in &TABLE1_DIMS {
            for w in TABLE1_ALPHAS.windows(2) {
                if let (Some(x), Some(y)) = (get(d, n, w[0]), get(d, n, w[1])) {
                    checked += 1;
                    if y <= x {
                        bad.push(format!(
                            "alpha {}->{} D={d} n={n}",
                            fmt_f64(w[0]),
                            fmt_f64(w[1])
                        ));
                    }
                }
            }
        }
    }
    CheckResult::new(
        "spectrum.monotonicity",
        bad.is_empty() && checked > 0,
        format!(
            "{} violations in {checked} neighbour pairs{}",
            bad.len(),
            first_of(&bad)
        ),
    )
}

fn first_of(items: &[String]) -> String {
    items
        .first()
        .map(|s| format!(", first {s}"))
        .unwrap_or_default()
}

/// Discrete residual of the upper-component equation on a uniform grid in
/// x with step 1e-3 and second-order differences.
pub fn ode_residual(cells: &[Cell]) -> CheckResult {
    let mut worst = Worst::new();
    let mut best = f64::INFINITY;
    let mut order = Worst::new();
    let mut min_order = f64::INFINITY;
    for c in cells {
        let r1 = oracle::certification_samples(&c.level, CERTIFICATION_STEP)
            .and_then(|rf| oracle::ode_residual(&rf));
        let r2 = oracle::certification_samples(&c.level, 0.5 * CERTIFICATION_STEP)
            .and_then(|rf| oracle::ode_residual(&rf));
        let (r1, r2) = (r1.unwrap_or(f64::NAN), r2.unwrap_or(f64::NAN));
        worst.see(r1, || c.label());
        best = best.min(r1);
        let p = (r1 / r2).log2();
        if p < min_order {
            min_order = p;
            order.at = c.label();
        }
    }
    CheckResult::new(
        "wavefunction.ode_residual",
        worst.value <= 1e-6,
        format!(
            "step {}: rel L2 residual {}..{} (worst {}; tol 1e-6); halving the step reduces it by 2^p with p >= {:.2} (lowest at {})",
            fmt_f64(CERTIFICATION_STEP),
            e(best),
            e(worst.value),
            worst.at,
            min_order,
            order.at
        ),
    )
}

/// Lower component against central differences of F at h = 1e-6/α.
pub fn lower_component(cells: &[Cell]) -> CheckResult {
    let mut worst = Worst::new();
    for c in cells {
        let sp = &c.level;
        let Ok((norm, _)) = wavefunction::norm_constant(sp, Normalization::UpperOnly) else {
            worst.see(f64::INFINITY, || c.label());
            continue;
        };
        let alpha = sp.params.alpha;
        let h = 1e-6 / alpha;
        let kappa = sp.q.kappa().value();
        let denom = sp.energy + sp.params.shift();
        let r_max = wavefunction::default_r_max(sp);
        let mut max_g = 0.0f64;
        let mut max_dev = 0.0f64;
        for i in 1..=400 {
            let r = r_max * f64::from(i) / 401.0;
            let g = wavefunction::lower_g(r, sp, norm).unwrap_or(f64::NAN);
            let fd = (wavefunction::upper_f(r + h, sp, norm)
                - wavefunction::upper_f(r - h, sp, norm))
                / (2.0 * h);
            let g_fd = (fd + kappa * wavefunction::upper_f(r, sp, norm) / r) / denom;
            max_g = max_g.max(g.abs());
            max_dev = max_dev.max((g - g_fd).abs());
        }
        worst.see(max_dev / max_g, || c.label());
    }
    CheckResult::new(
        "wavefunction.lower_component",
        worst.value <= 1e-6,
        format!(
            "max |G - G_fd| / max|G| = {} at {} (tol 1e-6)",
            e(worst.value),
            worst.at
        ),
    )
}

pub fn node_count(cells: &[Cell]) -> CheckResult {
    let mut bad = Vec::new();
    for c in cells {
        let spec = GridSpec::new(20_000, Spacing::Linear);
        let nodes = wavefunction::sample(&c.level, &spec)
            .map(|rf| wavefunction::count_nodes(&rf.upper, 1e-9));
        if nodes.as_ref().ok() != Some(&(c.level.q.n_r() as usize)) {
            bad.push(c.label());
        }
    }
    CheckResult::new(
        "wavefunction.nodes",
        bad.is_empty(),
        format!(
            "{} of {} levels with node count != n_r{}",
            bad.len(),
            cells.len(),
            first_of(&bad)
        ),
    )
}

/// Table-1 levels plus their `n_r = 3` neighbours (`ℓ = 0`).
fn norm_levels(cells: &[Cell]) -> Vec<(String, SpectralPoint)> {
    let mut out: Vec<(String, SpectralPoint)> =
        cells.iter().map(|c| (c.label(), c.level)).collect();
    for &alpha in &TABLE1_ALPHAS {
        for &dim in &TABLE1_DIMS {
            let Ok(p) = ModelParams::unit_table(alpha) else {
                continue;
            };
            let Ok(q) = QuantumNumbers::new(3, 0, dim) else {
                continue;
            };
            if let Ok(sp) = spectrum::solve_level(&p, &q, DEFAULT_TOL) {
                out.push((format!("D={dim} n_r=3 l=0 alpha={}", fmt_f64(alpha)), sp));
            }
        }
    }
    out
}

pub fn norm_series_vs_quadrature(cells: &[Cell]) -> CheckResult {
    let mut worst = Worst::new();
    let levels = norm_levels(cells);
    for (label, sp) in &levels {
        let s = wavefunction::norm_constant_series(sp).unwrap_or(f64::NAN);
        let q = wavefunction::norm_constant_quadrature(sp).unwrap_or(f64::NAN);
        worst.see((s - q).abs() / q.abs(), || label.clone());
    }
    CheckResult::new(
        "wavefunction.norm_series_quadrature",
        worst.value <= 1e-8,
        format!(
            "{} levels with n_r <= 3: max rel {} at {} (tol 1e-8)",
            levels.len(),
            e(worst.value),
            worst.at
        ),
    )
}

pub fn norm_ground_closed_form(cells: &[Cell]) -> CheckResult {
    let mut worst = Worst::new();
    let mut count = 0;
    for c in cells.iter().filter(|c| c.level.q.n_r() == 0) {
        count += 1;
        let g = wavefunction::norm_constant_ground(&c.level).unwrap_or(f64::NAN);
        let s = wavefunction::norm_constant_series(&c.level).unwrap_or(f64::NAN);
        worst.see((g - s).abs() / g.abs(), || c.label());
    }
    CheckResult::new(
        "wavefunction.norm_ground_closed_form",
        worst.value <= 1e-14,
        format!(
            "{count} ground states: max rel {} at {} (tol 1e-14)",
            e(worst.value),
            worst.at
        ),
    )
}

/// Trapezoid ∫F² dr over the CSV that `wavefunction` emits by default.
pub fn emitted_normalization(cells: &[Cell]) -> CheckResult {
    let mut worst = Worst::new();
    for c in cells {
        let integral = emitted_integral(c).unwrap_or(f64::NAN);
        worst.see((integral - 1.0).abs(), || c.label());
    }
    CheckResult::new(
        "wavefunction.emitted_normalization",
        worst.value <= 1e-3,
        format!(
            "max |trapezoid - 1| = {} at {} (tol 1e-3)",
            e(worst.value),
            worst.at
        ),
    )
}

fn emitted_integral(c: &Cell) -> Option<f64> {
    let args = WavefunctionArgs {
        dim: c.dim,
        nr: c.level.q.n_r(),
        ell: c.level.q.ell(),
        alpha: c.alpha,
        physics: PhysicsArgs {
            mu: 1.0,
            v0: 1.0,
            s0: 1.0,
            c1: 1.0,
        },
        samples: 1000,
        rmax: None,
        spacing: SpacingArg::Hybrid,
        normalize: NormalizeArg::Upper,
        output: OutputArgs {
            format: Format::Csv,
            out: None,
        },
    };
    let text = commands::wavefunction(&args).ok()?.text;
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut pts = Vec::new();
    for rec in rdr.records() {
        let rec = rec.ok()?;
        let r: f64 = rec.get(0)?.parse().ok()?;
        let f: f64 = rec.get(1)?.parse().ok()?;
        pts.push((r, f * f));
    }
    Some(
        pts.windows(2)
            .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
            .sum(),
    )
}

/// Oracle energies for every solved cell, keyed like `cells`.
pub fn oracle_energies(cells: &[Cell]) -> Vec<Option<f64>> {
    let cfg = OracleConfig::default();
    cells
        .iter()
        .map(|c| {
            oracle::self_consistent_energy(&c.level.params, &c.level.q, &cfg)
                .ok()
                .map(|l| l.energy)
        })
        .collect()
}

pub fn oracle_agreement(cells: &[Cell], oracle_e: &[Option<f64>]) -> CheckResult {
    let mut worst = Worst::new();
    let mut missing = 0;
    for (c, o) in cells.iter().zip(oracle_e) {
        match o {
            Some(o) => worst.see((o - c.level.energy).abs() / c.level.energy.abs(), || {
                c.label()
            }),
            None => missing += 1,
        }
    }
    CheckResult::new(
        "oracle.agreement",
        worst.value <= 1e-6 && missing == 0,
        format!(
            "{} cells: max rel {} at {} (tol 1e-6); {missing} cells without an oracle level",
            cells.len(),
            e(worst.value),
            worst.at
        ),
    )
}

pub fn oracle_degeneracy(cells: &[Cell], oracle_e: &[Option<f64>]) -> CheckResult {
    let find = |(d, n): (u32, u32), a: f64| {
        cells
            .iter()
            .position(|c| c.dim == d && c.n == n && c.alpha == a)
            .and_then(|i| oracle_e[i])
    };
    let mut worst = Worst::new();
    let mut checked = 0;
    for pair in ComparisonReport::degenerate_pairs() {
        if let (Some(x), Some(y)) = (find(pair.upper, pair.alpha), find(pair.lower, pair.alpha)) {
            checked += 1;
            worst.see((x - y).abs() / x.abs(), || {
                format!(
                    "({},{})/({},{}) alpha={}",
                    pair.upper.0,
                    pair.upper.1,
                    pair.lower.0,
                    pair.lower.1,
                    fmt_f64(pair.alpha)
                )
            });
        }
    }
    CheckResult::new(
        "oracle.degeneracy",
        checked > 0 && worst.value <= 1e-6,
        format!(
            "{checked} pairs: max rel difference {} at {} (tol 1e-6)",
            e(worst.value),
            worst.at
        ),
    )
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub oracle: bool,
    pub seed: u64,
}

/// Runs every check in a fixed order.
pub fn run_suite(opts: &SuiteOptions) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let cells = table_cells();
    let random_x: Vec<f64> = (0..200).map(|_| rng.gen_range(-0.999..0.999)).collect();
    let mut out = vec![
        gamma_beta_spots(),
        jacobi_vs_rodrigues(&cells, &random_x),
        jacobi_vs_hypergeometric(&cells, &random_x, false),
        m_index_invariance(&mut rng),
        computed_degeneracy(),
        limiting_law(1e-4, 1e-2),
        limiting_law(1e-5, 1e-3),
        positive_energy(&cells, 100_000),
        monotonicity(&cells),
        ode_residual(&cells),
        lower_component(&cells),
        node_count(&cells),
        norm_series_vs_quadrature(&cells),
        norm_ground_closed_form(&cells),
        emitted_normalization(&cells),
    ];
    if opts.oracle {
        let energies = oracle_energies(&cells);
        out.push(oracle_agreement(&cells, &energies));
        out.push(oracle_degeneracy(&cells, &energies));
    }
    out
}
