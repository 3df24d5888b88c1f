//! Finite-difference cross-check of the closed-form spectrum.
//!
//! In `x = αr` the upper-component equation reads
//!
//! ```text
//! −F'' + [γ/sinh²x − δ(E)/cosh²x] F = −ε²(E) F
//! ```
//!
//! so a level is an energy where the `n_r`-th eigenvalue Λ of the operator
//! on the left equals −ε²(E). The operator is discretized with central
//! differences on a uniform grid with Dirichlet ends, its eigenvalues are
//! counted with Sturm sequences, and E is bisected until the two sides meet.
//! Nothing here uses the closed-form energy condition.

mod tridiag;

pub use tridiag::SymTridiagonal;

use alloc::vec::Vec;

use crate::math::{ceil, log2, sech, sinh, sqrt};
use crate::model::{self, ModelParams, QuantumNumbers};
use crate::spectrum::{ExistenceReport, SpectralPoint};
use crate::wavefunction::{sample, GridSpec, RadialFunction, Spacing};
use crate::{Error, Result};

/// Subintervals of the outer sign scan in E.
pub const ENERGY_SCAN_INTERVALS: usize = 512;
const DEFAULT_X_MAX: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub x_min: f64,
    /// Outer Dirichlet wall; `None` uses `max(30/ε, 40)` with ε from the run.
    pub x_max: Option<f64>,
    /// Interior points of the coarsest grid.
    pub points: usize,
    /// Number of grid halvings combined by Richardson extrapolation.
    pub refine_levels: usize,
    /// Target relative accuracy; each grid bisects E a thousandfold tighter.
    pub tol_energy: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            x_min: 1e-6,
            x_max: None,
            points: 4000,
            refine_levels: 2,
            tol_energy: 1e-8,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_min > 0.0) {
            return Err(Error::InvalidParameter {
                name: "x_min",
                reason: "inner wall must be positive",
            });
        }
        if let Some(x_max) = self.x_max {
            if !(x_max > self.x_min) {
                return Err(Error::InvalidParameter {
                    name: "x_max",
                    reason: "outer wall must exceed the inner wall",
                });
            }
        }
        if self.points < 100 {
            return Err(Error::InvalidParameter {
                name: "points",
                reason: "at least 100 grid points are required",
            });
        }
        if !(self.tol_energy > 0.0) {
            return Err(Error::InvalidParameter {
                name: "tol_energy",
                reason: "tolerance must be positive",
            });
        }
        Ok(())
    }
}

/// Which centrifugal term the operator carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Centrifugal {
    /// γ/sinh²x, the form the closed-form solution is built on.
    #[default]
    Hyperbolic,
    /// The true γ/x².
    Exact,
}

/// Discretized operator at one trial energy.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialOperator {
    pub matrix: SymTridiagonal,
    /// Interior grid points in x = αr.
    pub x: Vec<f64>,
    pub step: f64,
    /// ε²(E); the level condition is Λ = −ε².
    pub eps_squared: f64,
    pub delta: f64,
}

fn check_energy(energy: f64, p: &ModelParams) -> Result<()> {
    let (lo, hi) = p.window();
    if !(energy >= lo && energy <= hi) {
        return Err(Error::Domain {
            what: "trial energy outside the bound-state window",
            value: energy,
        });
    }
    Ok(())
}

fn assemble(
    energy: f64,
    p: &ModelParams,
    gamma: f64,
    points: usize,
    x_min: f64,
    x_max: f64,
    centrifugal: Centrifugal,
) -> Result<RadialOperator> {
    check_energy(energy, p)?;
    let delta = model::delta_of(energy, p);
    let step = (x_max - x_min) / (points as f64 + 1.0);
    let inv_h2 = 1.0 / (step * step);
    let mut x = Vec::with_capacity(points);
    let mut diag = Vec::with_capacity(points);
    for i in 1..=points {
        let xi = x_min + step * i as f64;
        let barrier = match centrifugal {
            Centrifugal::Hyperbolic => {
                let s = sinh(xi);
                gamma / (s * s)
            }
            Centrifugal::Exact => gamma / (xi * xi),
        };
        let well = sech(xi);
        x.push(xi);
        diag.push(2.0 * inv_h2 + barrier - delta * well * well);
    }
    let off = alloc::vec![-inv_h2; points - 1];
    Ok(RadialOperator {
        matrix: SymTridiagonal::new(diag, off)?,
        x,
        step,
        eps_squared: model::eps_squared(energy, p),
        delta,
    })
}

/// Operator at energy `E` on the coarsest grid of `cfg`.
pub fn build_operator(
    energy: f64,
    p: &ModelParams,
    q: &QuantumNumbers,
    cfg: &OracleConfig,
) -> Result<RadialOperator> {
    cfg.validate()?;
    assemble(
        energy,
        p,
        q.gamma(),
        cfg.points,
        cfg.x_min,
        cfg.x_max.unwrap_or(DEFAULT_X_MAX),
        Centrifugal::Hyperbolic,
    )
}

/// The `k` lowest eigenvalues of the operator.
pub fn lowest_eigenvalues(op: &RadialOperator, k: usize) -> Result<Vec<f64>> {
    op.matrix.lowest_eigenvalues(k)
}

/// A self-consistent level from the finite-difference operator.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleLevel {
    /// Richardson-extrapolated energy.
    pub energy: f64,
    /// Energies on each grid, coarsest first.
    pub per_grid: Vec<f64>,
    /// Interior point counts of each grid.
    pub points: Vec<usize>,
    /// log₂ of successive difference ratios (needs three grids).
    pub observed_order: Option<f64>,
    pub x_max: f64,
    /// Λ_{n_r} on the finest grid at its own root, for comparison with −ε².
    pub eigenvalue: f64,
    pub eps_squared: f64,
}

struct GridSolver<'a> {
    p: &'a ModelParams,
    gamma: f64,
    index: usize,
    points: usize,
    x_min: f64,
    x_max: f64,
    centrifugal: Centrifugal,
    /// Relative bracket width at which bisection stops.
    width: f64,
}

impl GridSolver<'_> {
    /// True when Λ_{n_r}(E) < −ε²(E), i.e. the level sits below E.
    fn below(&self, energy: f64) -> Result<bool> {
        let op = assemble(
            energy,
            self.p,
            self.gamma,
            self.points,
            self.x_min,
            self.x_max,
            self.centrifugal,
        )?;
        Ok(op.matrix.count_below(-op.eps_squared) > self.index)
    }

    fn solve(&self) -> Result<Option<f64>> {
        let lo = self.p.c1 - self.p.mu;
        let hi = self.p.mu;
        let n = ENERGY_SCAN_INTERVALS;
        let at = |k: usize| {
            if k == n {
                hi
            } else {
                lo + (hi - lo) * k as f64 / n as f64
            }
        };
        let mut a = at(0);
        if self.below(a)? {
            // The level would sit at or below the lower window edge.
            return Ok(None);
        }
        for k in 1..=n {
            let b = at(k);
            if self.below(b)? {
                return self.bisect(a, b).map(Some);
            }
            a = b;
        }
        Ok(None)
    }

    fn bisect(&self, mut a: f64, mut b: f64) -> Result<f64> {
        for _ in 0..400 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b || b - a <= self.width * a.abs().max(b.abs()) {
                break;
            }
            if self.below(mid)? {
                b = mid;
            } else {
                a = mid;
            }
        }
        Ok(0.5 * (a + b))
    }

    fn eigenvalue_at(&self, energy: f64) -> Result<(f64, f64)> {
        let op = assemble(
            energy,
            self.p,
            self.gamma,
            self.points,
            self.x_min,
            self.x_max,
            self.centrifugal,
        )?;
        Ok((op.matrix.eigenvalue(self.index)?, op.eps_squared))
    }
}

fn richardson(values: &[f64]) -> f64 {
    let mut table: Vec<f64> = values.to_vec();
    let mut factor = 4.0;
    for level in 1..values.len() {
        for k in (level..values.len()).rev() {
            table[k] = table[k] + (table[k] - table[k - 1]) / (factor - 1.0);
        }
        factor *= 4.0;
    }
    *table.last().unwrap_or(&f64::NAN)
}

fn no_level(margin: f64) -> Error {
    Error::NoBoundState(ExistenceReport {
        exists: false,
        margin,
        reason: "finite-difference operator has no self-consistent level in the window",
    })
}

fn solve_with(
    p: &ModelParams,
    q: &QuantumNumbers,
    cfg: &OracleConfig,
    centrifugal: Centrifugal,
) -> Result<OracleLevel> {
    cfg.validate()?;
    p.validate()?;
    p.check_window()?;
    let mut x_max = cfg.x_max.unwrap_or(DEFAULT_X_MAX);
    let mut attempt = 0;
    loop {
        let mut per_grid = Vec::with_capacity(cfg.refine_levels + 1);
        let mut points = Vec::with_capacity(cfg.refine_levels + 1);
        let mut finest = None;
        let mut n = cfg.points;
        for _ in 0..=cfg.refine_levels {
            let solver = GridSolver {
                p,
                gamma: q.gamma(),
                index: q.n_r() as usize,
                points: n,
                x_min: cfg.x_min,
                x_max,
                centrifugal,
                width: 1e-3 * cfg.tol_energy,
            };
            let Some(e) = solver.solve()? else {
                let (lam, _) = solver.eigenvalue_at(p.mu)?;
                return Err(no_level(-lam));
            };
            per_grid.push(e);
            points.push(n);
            finest = Some((solver, e));
            n = 2 * n + 1;
        }
        let energy = richardson(&per_grid);
        let eps = sqrt(model::eps_squared(energy, p).max(0.0));
        if cfg.x_max.is_none() && attempt == 0 && eps > 0.0 && 30.0 / eps > x_max {
            x_max = 30.0 / eps;
            attempt += 1;
            continue;
        }
        let observed_order = if per_grid.len() >= 3 {
            let d1 = per_grid[0] - per_grid[1];
            let d2 = per_grid[1] - per_grid[2];
            if d2 != 0.0 && d1 / d2 > 0.0 {
                Some(log2(d1 / d2))
            } else {
                None
            }
        } else {
            None
        };
        let (eigenvalue, eps_squared) = match finest {
            Some((solver, e)) => solver.eigenvalue_at(e)?,
            None => (f64::NAN, f64::NAN),
        };
        return Ok(OracleLevel {
            energy,
            per_grid,
            points,
            observed_order,
            x_max,
            eigenvalue,
            eps_squared,
        });
    }
}

/// Solves Λ_{n_r}(E) = −ε²(E) with the approximated centrifugal term.
pub fn self_consistent_energy(
    p: &ModelParams,
    q: &QuantumNumbers,
    cfg: &OracleConfig,
) -> Result<OracleLevel> {
    solve_with(p, q, cfg, Centrifugal::Hyperbolic)
}

pub fn self_consistent_energy_with(
    p: &ModelParams,
    q: &QuantumNumbers,
    cfg: &OracleConfig,
    centrifugal: Centrifugal,
) -> Result<OracleLevel> {
    solve_with(p, q, cfg, centrifugal)
}

/// Energies with γ/sinh²x and with γ/x², in that order.
pub fn approximation_gap(
    p: &ModelParams,
    q: &QuantumNumbers,
    cfg: &OracleConfig,
) -> Result<(f64, f64)> {
    let approx = solve_with(p, q, cfg, Centrifugal::Hyperbolic)?;
    let exact = solve_with(p, q, cfg, Centrifugal::Exact)?;
    Ok((approx.energy, exact.energy))
}

/// Minimum number of samples accepted by [`ode_residual`].
pub const ODE_MIN_POINTS: usize = 100;
/// Step in x = αr used to certify closed-form wavefunctions.
pub const CERTIFICATION_STEP: f64 = 1e-3;

/// Samples a level on a grid uniform in x with the given step, out to
/// `x = 30/ε`.
pub fn certification_samples(sp: &SpectralPoint, step_x: f64) -> Result<RadialFunction> {
    if !(step_x > 0.0) {
        return Err(Error::InvalidParameter {
            name: "step_x",
            reason: "step must be positive",
        });
    }
    if !(sp.eps > 0.0) {
        return Err(Error::Domain {
            what: "eps must be positive to size the grid",
            value: sp.eps,
        });
    }
    let count = ceil(30.0 / (sp.eps * step_x)).max(ODE_MIN_POINTS as f64) as usize;
    let r_max = count as f64 * step_x / sp.params.alpha;
    sample(sp, &GridSpec::new(count, Spacing::Linear).with_r_max(r_max))
}

/// Relative L2 residual of the upper-component equation on sampled data.
///
/// The samples must be uniform in r. With central second differences,
/// `Rᵢ = −(Fᵢ₊₁ − 2Fᵢ + Fᵢ₋₁)/h² + (γ/sinh²xᵢ − δ/cosh²xᵢ + ε²) Fᵢ`, and
/// the result is `‖R‖ / ‖(F'')_h‖`.
pub fn ode_residual(rf: &RadialFunction) -> Result<f64> {
    let (r, f) = residual_terms(rf)?;
    let num: f64 = r.iter().map(|v| v * v).sum();
    let den: f64 = f.iter().map(|v| v * v).sum();
    if !(den > 0.0) {
        return Err(Error::Numerical {
            what: "ode residual",
            value: den,
            hint: "sampled function has zero curvature norm",
        });
    }
    Ok(sqrt(num / den))
}

/// Residual and second-difference vectors on the interior samples.
fn residual_terms(rf: &RadialFunction) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = rf.grid.len();
    if n < ODE_MIN_POINTS || rf.upper.len() != n {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: "ode residual needs at least 100 samples",
        });
    }
    let alpha = rf.point.params.alpha;
    let hr = rf.grid[1] - rf.grid[0];
    let uniform = rf
        .grid
        .windows(2)
        .all(|w| ((w[1] - w[0]) - hr).abs() <= 1e-9 * hr.abs());
    if !(hr > 0.0) || !uniform {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: "ode residual needs a uniform, ascending grid",
        });
    }
    let peak = rf.upper.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Err(Error::Numerical {
            what: "ode residual",
            value: 0.0,
            hint: "sampled function is identically zero",
        });
    }
    let h = alpha * hr;
    let inv_h2 = 1.0 / (h * h);
    let gamma = rf.point.q.gamma();
    let eps2 = rf.point.eps * rf.point.eps;
    let delta = rf.point.delta;
    let mut res = Vec::with_capacity(n - 2);
    let mut curv = Vec::with_capacity(n - 2);
    for i in 1..n - 1 {
        let x = alpha * rf.grid[i];
        let s = sinh(x);
        let c = sech(x);
        let d2 = (rf.upper[i + 1] - 2.0 * rf.upper[i] + rf.upper[i - 1]) * inv_h2;
        let pot = gamma / (s * s) - delta * c * c + eps2;
        res.push(-d2 + pot * rf.upper[i]);
        curv.push(d2);
    }
    Ok((res, curv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::exp;
    use crate::spectrum::{solve_level, DEFAULT_TOL};
    use crate::wavefunction::count_nodes;
    use core::f64::consts::PI;

    fn unit(alpha: f64) -> ModelParams {
        ModelParams::unit_table(alpha).unwrap()
    }

    #[test]
    fn stencil_shape() {
        let p = unit(1e-4);
        let q = QuantumNumbers::new(0, 0, 3).unwrap();
        let cfg = OracleConfig::default();
        let op = build_operator(3.6e-7, &p, &q, &cfg).unwrap();
        assert_eq!(op.matrix.len(), 4000);
        let h = op.step;
        assert!(op.matrix.off().iter().all(|&o| o == -1.0 / (h * h)));
        assert!(build_operator(2.0, &p, &q, &cfg).is_err());
    }

    #[test]
    fn free_box_limit() {
        // γ = 0 needs D = 1, so build the free operator directly.
        let p = unit(1e-2);
        let op = assemble(0.0, &p, 0.0, 2000, 1e-6, 40.0, Centrifugal::Hyperbolic).unwrap();
        let ev = lowest_eigenvalues(&op, 2).unwrap();
        let box0 = (PI / (40.0 - 1e-6)).powi(2);
        assert!((ev[0] / box0 - 1.0).abs() < 1e-5);
        assert!((ev[1] / ev[0] - 4.0).abs() < 1e-4);
    }

    #[test]
    fn poschl_teller_ladder() {
        // γ = 2, δ = 72: exact levels −(ε₀ − 2k)² with ε₀ = 6.
        // V0 + S0 = 72 with μ = 1, C1 = 0 gives δ(0) = 72.
        let p = ModelParams::new(1.0, 36.0, 36.0, 1.0, 0.0).unwrap();
        let op = assemble(0.0, &p, 2.0, 8000, 1e-6, 40.0, Centrifugal::Hyperbolic).unwrap();
        assert!((op.delta - 72.0).abs() < 1e-12);
        let ev = lowest_eigenvalues(&op, 3).unwrap();
        assert!((ev[0] + 36.0).abs() < 0.05, "{ev:?}");
        assert!((ev[1] + 16.0).abs() < 0.05, "{ev:?}");
        assert!((ev[2] + 4.0).abs() < 0.05, "{ev:?}");
    }

    #[test]
    fn agrees_with_closed_form() {
        let p = unit(1e-4);
        let q = QuantumNumbers::new(0, 0, 3).unwrap();
        let lvl = self_consistent_energy(&p, &q, &OracleConfig::default()).unwrap();
        let sp = solve_level(&p, &q, DEFAULT_TOL).unwrap();
        assert!(
            (lvl.energy / sp.energy - 1.0).abs() < 1e-6,
            "{} vs {}",
            lvl.energy,
            sp.energy
        );
        let order = lvl.observed_order.unwrap();
        assert!((1.8..=2.2).contains(&order), "{order}");
        assert!((lvl.eigenvalue + lvl.eps_squared).abs() < 1e-6 * lvl.eps_squared);
    }

    #[test]
    fn shallow_well_has_no_level() {
        let p = ModelParams::new(1.0, 1e-4, 1e-4, 0.01, 1.0).unwrap();
        let q = QuantumNumbers::new(0, 0, 3).unwrap();
        let cfg = OracleConfig {
            points: 500,
            refine_levels: 0,
            ..OracleConfig::default()
        };
        assert!(matches!(
            self_consistent_energy(&p, &q, &cfg),
            Err(Error::NoBoundState(_))
        ));
    }

    #[test]
    fn config_validation() {
        let p = unit(1e-2);
        let q = QuantumNumbers::new(0, 0, 3).unwrap();
        let bad = OracleConfig {
            points: 50,
            ..OracleConfig::default()
        };
        assert!(self_consistent_energy(&p, &q, &bad).is_err());
        let bad = OracleConfig {
            x_max: Some(1e-7),
            ..OracleConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn eigenvector_nodes_match_radial_number() {
        let p = unit(1e-2);
        for n_r in 0..3 {
            let q = QuantumNumbers::new(n_r, 0, 3).unwrap();
            let sp = solve_level(&p, &q, DEFAULT_TOL).unwrap();
            let op = build_operator(sp.energy, &p, &q, &OracleConfig::default()).unwrap();
            let lam = op.matrix.eigenvalue(n_r as usize).unwrap();
            let v = op.matrix.eigenvector(lam);
            assert_eq!(count_nodes(&v, 1e-10), n_r as usize);
        }
    }

    #[test]
    fn richardson_removes_quadratic_error() {
        let exact = 2.5;
        let vals: Vec<f64> = [1.0, 0.5, 0.25]
            .iter()
            .map(|h: &f64| exact + 3.0 * h * h + 0.7 * h.powi(4))
            .collect();
        assert!((richardson(&vals) - exact).abs() < 1e-13);
    }

    #[test]
    fn residual_rejects_bad_input() {
        let p = unit(1e-3);
        let q = QuantumNumbers::new(0, 0, 3).unwrap();
        let sp = solve_level(&p, &q, DEFAULT_TOL).unwrap();
        let rf = sample(&sp, &GridSpec::new(50, Spacing::Linear)).unwrap();
        assert!(ode_residual(&rf).is_err());
        let mut rf = sample(&sp, &GridSpec::new(500, Spacing::Linear)).unwrap();
        rf.upper.iter_mut().for_each(|v| *v = 0.0);
        assert!(ode_residual(&rf).is_err());
        let rf = sample(&sp, &GridSpec::new(500, Spacing::Hybrid)).unwrap();
        assert!(ode_residual(&rf).is_err());
    }

    #[test]
    fn residual_converges_at_second_order() {
        let p = unit(1e-3);
        let q = QuantumNumbers::new(0, 0, 3).unwrap();
        let sp = solve_level(&p, &q, DEFAULT_TOL).unwrap();
        let coarse = ode_residual(&certification_samples(&sp, 2e-3).unwrap()).unwrap();
        let fine = ode_residual(&certification_samples(&sp, 1e-3).unwrap()).unwrap();
        assert!(fine < 5e-6, "{fine}");
        let order = log2(coarse / fine);
        assert!((1.9..=2.1).contains(&order), "{order}");
    }

    #[test]
    fn residual_detects_bump() {
        let p = unit(1e-3);
        let q = QuantumNumbers::new(0, 0, 3).unwrap();
        let sp = solve_level(&p, &q, DEFAULT_TOL).unwrap();
        let mut rf = certification_samples(&sp, CERTIFICATION_STEP).unwrap();
        let peak = rf.upper.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let centre = 0.5 / p.alpha;
        let width = 0.1 / p.alpha;
        for (f, &r) in rf.upper.iter_mut().zip(&rf.grid) {
            let z = (r - centre) / width;
            *f += 0.01 * peak * exp(-z * z);
        }
        assert!(ode_residual(&rf).unwrap() > 1e-3);
    }
}
