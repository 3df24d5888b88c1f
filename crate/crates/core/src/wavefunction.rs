//! Upper and lower radial spinor components of a solved level.
//!
//! With `x = αr` and `s = tanh²x` the upper component is
//!
//! ```text
//! F(r) = C · s^{(κ+1)/2} (1−s)^{ε/2} P_{n_r}^{(κ+1/2, ε)}(1 − 2s)
//!      = C · tanh^{κ+1}x · sech^{ε}x · P_{n_r}^{(κ+1/2, ε)}(1 − 2 tanh²x)
//! ```
//!
//! and the lower component follows from `(d/dr + κ/r) F = (μ + E − C₁) G`.
//! The constant `C` normalizes `∫₀^∞ F² dr = 1`.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::math::{atanh, cos, exp, ln, powf, sech, sin, sqrt, tanh, KahanSum};
use crate::quadrature;
use crate::specfun::{self, JacobiParams};
use crate::spectrum::SpectralPoint;
use crate::{Error, Result};

/// Offset between κ and the first Jacobi parameter of the upper component.
pub const JACOBI_A_SHIFT: f64 = 0.5;

const QUAD_REL_TOL: f64 = 1e-14;

/// Jacobi parameters `(n_r; κ + 1/2, ε)` of the upper component.
pub fn jacobi_params(sp: &SpectralPoint) -> Result<JacobiParams> {
    if !(sp.eps > 0.0) {
        return Err(Error::Domain {
            what: "wavefunction needs eps > 0",
            value: sp.eps,
        });
    }
    JacobiParams::new(sp.q.n_r(), sp.q.kappa().value() + JACOBI_A_SHIFT, sp.eps)
}

/// F(r) for normalization constant `c`.
pub fn upper_f(r: f64, sp: &SpectralPoint, c: f64) -> f64 {
    let kappa = sp.q.kappa().value();
    let x = sp.params.alpha * r;
    let t = tanh(x);
    let jp = JacobiParams {
        degree: sp.q.n_r(),
        a: kappa + JACOBI_A_SHIFT,
        b: sp.eps,
    };
    let poly = specfun::jacobi_eval(&jp, 1.0 - 2.0 * t * t);
    c * powf(t, kappa + 1.0) * powf(sech(x), sp.eps) * poly
}

/// dF/dr, differentiated analytically through `s = tanh²(αr)` and the
/// Jacobi derivative identity.
pub fn upper_f_derivative(r: f64, sp: &SpectralPoint, c: f64) -> f64 {
    let kappa = sp.q.kappa().value();
    let eps = sp.eps;
    let x = sp.params.alpha * r;
    let t = tanh(x);
    let sh = sech(x);
    let z = 1.0 - 2.0 * t * t;
    let jp = JacobiParams {
        degree: sp.q.n_r(),
        a: kappa + JACOBI_A_SHIFT,
        b: eps,
    };
    let poly = specfun::jacobi_eval(&jp, z);
    let dpoly = specfun::jacobi_derivative(&jp, z);
    let t_k = powf(t, kappa);
    let sh_e = powf(sh, eps);
    let sh2 = sh * sh;
    // d/dx [tanh^{κ+1} sech^ε] = (κ+1) tanh^κ sech^{ε+2} − ε tanh^{κ+2} sech^ε
    let d_envelope = (kappa + 1.0) * t_k * sh_e * sh2 - eps * t_k * t * t * sh_e;
    // dz/dx = −4 tanh sech²
    let envelope_dpoly = -4.0 * t_k * t * t * sh_e * sh2 * dpoly;
    c * sp.params.alpha * (d_envelope * poly + envelope_dpoly)
}

/// G(r) = [F'(r) + (κ/r) F(r)] / (μ + E − C₁).
pub fn lower_g(r: f64, sp: &SpectralPoint, c: f64) -> Result<f64> {
    let denom = sp.energy + sp.params.shift();
    if denom == 0.0 {
        return Err(Error::Domain {
            what: "lower component undefined: mu + E - c1 vanishes",
            value: sp.energy,
        });
    }
    let kappa = sp.q.kappa().value();
    // F ~ r^{κ+1}, so (κ/r) F → 0 at the origin.
    let centrifugal = if r == 0.0 {
        0.0
    } else {
        kappa * upper_f(r, sp, c) / r
    };
    Ok((upper_f_derivative(r, sp, c) + centrifugal) / denom)
}

/// Ground-state constant `C₀ = √(2α / B(κ + 3/2, ε))`.
pub fn norm_constant_ground(sp: &SpectralPoint) -> Result<f64> {
    if sp.q.n_r() != 0 {
        return Err(Error::InvalidParameter {
            name: "n_r",
            reason: "closed-form constant only exists for the ground state",
        });
    }
    jacobi_params(sp)?;
    let b = specfun::beta(sp.q.kappa().value() + 1.5, sp.eps)?;
    Ok(sqrt(2.0 * sp.params.alpha / b))
}

/// Normalization constant from the terminating double series.
///
/// Expanding the Jacobi polynomial in its hypergeometric form turns
/// `∫ F² dr` into `C² N Σᵢ Σⱼ tᵢ tⱼ B(κ + i + j + 3/2, ε) / α` with
/// `tᵢ = (−n)ᵢ (n+a+b+1)ᵢ / ((a+1)ᵢ i!)`, `a = κ + 1/2`, `b = ε`, and
/// `N = ½ [Γ(n+a+1)/(n! Γ(a+1))]²`. Beta values are taken relative to
/// `B(κ + 3/2, ε)` and all gamma ratios are formed in log space.
pub fn norm_constant_series(sp: &SpectralPoint) -> Result<f64> {
    let jp = jacobi_params(sp)?;
    let n = jp.degree;
    let nf = f64::from(n);
    let (a, b) = (jp.a, jp.b);
    let kappa = sp.q.kappa().value();
    let lg = specfun::log_gamma;

    let coeffs: Vec<f64> = (0..=n)
        .map(|i| {
            specfun::pochhammer(-nf, i) * specfun::pochhammer(nf + a + b + 1.0, i)
                / (specfun::pochhammer(a + 1.0, i) * specfun::pochhammer(1.0, i))
        })
        .collect();

    // B(κ+3/2+k, ε)/B(κ+3/2, ε) = Γ(κ+3/2+k)Γ(κ+ε+3/2) / (Γ(κ+3/2)Γ(κ+ε+3/2+k))
    let base = kappa + 1.5;
    let ln_g_base = lg(base)?;
    let ln_g_base_eps = lg(base + b)?;
    let mut ratios = Vec::with_capacity(2 * n as usize + 1);
    for k in 0..=2 * n {
        let kf = f64::from(k);
        ratios.push(exp(
            lg(base + kf)? - ln_g_base + ln_g_base_eps - lg(base + b + kf)?
        ));
    }

    let mut sum = KahanSum::default();
    for (i, ti) in coeffs.iter().enumerate() {
        for (j, tj) in coeffs.iter().enumerate() {
            sum.add(ti * tj * ratios[i + j]);
        }
    }
    let s = sum.value();
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Numerical {
            what: "normalization series",
            value: s,
            hint: "series lost all significance; use the quadrature constant",
        });
    }
    let ln_n = -core::f64::consts::LN_2 + 2.0 * (lg(nf + a + 1.0)? - lg(nf + 1.0)? - lg(a + 1.0)?);
    let ln_c2 = ln(sp.params.alpha) - ln_n - specfun::log_beta(base, b)? - ln(s);
    Ok(exp(0.5 * ln_c2))
}

/// Which components the normalization integral covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `∫ F² dr = 1`.
    #[default]
    UpperOnly,
    /// `∫ (F² + G²) dr = 1`.
    BothComponents,
}

/// `∫₀^∞ F² dr` (or `F² + G²`) at `C = 1`.
///
/// The integral runs over `s = tanh²(αr)` with `s = sin²t`, which turns
/// `ds / (2α √s (1−s))` into `dt / (α cos t)` and removes the √s endpoint
/// singularity.
pub fn norm_integral(sp: &SpectralPoint, which: Normalization) -> Result<quadrature::QuadResult> {
    let jp = jacobi_params(sp)?;
    let kappa = sp.q.kappa().value();
    let alpha = sp.params.alpha;
    let eps = sp.eps;
    let integrand = |t: f64| -> f64 {
        let st = sin(t);
        let ct = cos(t);
        if ct <= 0.0 {
            return 0.0;
        }
        match which {
            Normalization::UpperOnly => {
                // 1 − 2s = cos 2t = 1 − 2 sin²t
                let poly = specfun::jacobi_eval(&jp, 1.0 - 2.0 * st * st);
                let env = powf(st, kappa + 1.0) * powf(ct, eps);
                env * env * poly * poly / (alpha * ct)
            }
            Normalization::BothComponents => {
                let r = atanh(st) / alpha;
                let f = upper_f(r, sp, 1.0);
                let g = lower_g(r, sp, 1.0).unwrap_or(f64::NAN);
                (f * f + g * g) / (alpha * ct)
            }
        }
    };
    quadrature::integrate(integrand, 0.0, FRAC_PI_2, QUAD_REL_TOL, 0.0)
}

/// Normalization constant from adaptive quadrature of `∫ F² dr`.
pub fn norm_constant_quadrature(sp: &SpectralPoint) -> Result<f64> {
    let q = norm_integral(sp, Normalization::UpperOnly)?;
    Ok(1.0 / sqrt(q.value))
}

/// How a constant was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    Series,
    Quadrature,
    GroundClosedForm,
}

impl NormMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            NormMethod::Series => "series",
            NormMethod::Quadrature => "quadrature",
            NormMethod::GroundClosedForm => "ground_closed_form",
        }
    }
}

/// Picks the series constant, falling back to quadrature if the series fails.
pub fn norm_constant(sp: &SpectralPoint, which: Normalization) -> Result<(f64, NormMethod)> {
    match which {
        Normalization::UpperOnly => match norm_constant_series(sp) {
            Ok(c) => Ok((c, NormMethod::Series)),
            Err(Error::Numerical { .. }) => {
                Ok((norm_constant_quadrature(sp)?, NormMethod::Quadrature))
            }
            Err(e) => Err(e),
        },
        Normalization::BothComponents => {
            let q = norm_integral(sp, which)?;
            Ok((1.0 / sqrt(q.value), NormMethod::Quadrature))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    /// `r_i = r_max (i+1)/count`, uniform and excluding the origin.
    Linear,
    /// Geometric from `r_max · 1e-6` to `r_max`.
    Log,
    /// The origin, a geometric stretch up to `min(1/α, r_max/2)`, then linear.
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Outer radius; `None` picks `30/(εα)`.
    pub r_max: Option<f64>,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(count: usize, spacing: Spacing) -> Self {
        Self {
            r_max: None,
            count,
            spacing,
        }
    }

    pub fn with_r_max(mut self, r_max: f64) -> Self {
        self.r_max = Some(r_max);
        self
    }
}

/// Radius where `e^{−εαr}` has fallen to `e^{−30}`.
pub fn default_r_max(sp: &SpectralPoint) -> f64 {
    30.0 / (sp.eps * sp.params.alpha)
}

pub fn make_grid(spec: &GridSpec, r_max: f64, alpha: f64) -> Result<Vec<f64>> {
    if !(r_max > 0.0) || !r_max.is_finite() {
        return Err(Error::InvalidParameter {
            name: "r_max",
            reason: "outer radius must be positive and finite",
        });
    }
    let count = spec.count;
    if count < 2 {
        return Err(Error::InvalidParameter {
            name: "count",
            reason: "at least two grid points are required",
        });
    }
    let cf = count as f64;
    let grid = match spec.spacing {
        Spacing::Linear => (0..count).map(|i| r_max * (i as f64 + 1.0) / cf).collect(),
        Spacing::Log => {
            let lo = ln(r_max * 1e-6);
            let hi = ln(r_max);
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        r_max
                    } else {
                        exp(lo + (hi - lo) * i as f64 / (cf - 1.0))
                    }
                })
                .collect()
        }
        Spacing::Hybrid if count < 8 => (0..count).map(|i| r_max * i as f64 / (cf - 1.0)).collect(),
        Spacing::Hybrid => {
            let knee = (1.0 / alpha).min(0.5 * r_max);
            let n_log = (count - 1) / 4;
            let n_lin = count - 1 - n_log;
            let mut g = Vec::with_capacity(count);
            g.push(0.0);
            let lo = ln(knee * 1e-3);
            let hi = ln(knee);
            for i in 0..n_log {
                g.push(exp(lo + (hi - lo) * i as f64 / n_log as f64));
            }
            for i in 0..n_lin {
                let frac = if n_lin == 1 {
                    1.0
                } else {
                    i as f64 / (n_lin - 1) as f64
                };
                g.push(if i + 1 == n_lin {
                    r_max
                } else {
                    knee + (r_max - knee) * frac
                });
            }
            g
        }
    };
    Ok(grid)
}

/// Sampled, normalized spinor components of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    pub point: SpectralPoint,
    pub grid: Vec<f64>,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub norm_constant: f64,
    pub norm_method: NormMethod,
    pub normalization: Normalization,
}

pub fn sample(sp: &SpectralPoint, spec: &GridSpec) -> Result<RadialFunction> {
    sample_with(sp, spec, Normalization::UpperOnly)
}

pub fn sample_with(
    sp: &SpectralPoint,
    spec: &GridSpec,
    which: Normalization,
) -> Result<RadialFunction> {
    jacobi_params(sp)?;
    let r_max = spec.r_max.unwrap_or_else(|| default_r_max(sp));
    let grid = make_grid(spec, r_max, sp.params.alpha)?;
    let (c, method) = norm_constant(sp, which)?;
    let upper: Vec<f64> = grid.iter().map(|&r| upper_f(r, sp, c)).collect();
    let lower = grid
        .iter()
        .map(|&r| lower_g(r, sp, c))
        .collect::<Result<Vec<f64>>>()?;
    Ok(RadialFunction {
        point: *sp,
        grid,
        upper,
        lower,
        norm_constant: c,
        norm_method: method,
        normalization: which,
    })
}

/// Interior sign changes, ignoring samples below `rel_floor · max|v|`.
pub fn count_nodes(values: &[f64], rel_floor: f64) -> usize {
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = rel_floor * peak;
    let mut last_sign = 0i8;
    let mut nodes = 0;
    for &v in values {
        if v.abs() <= floor {
            continue;
        }
        let s = if v > 0.0 { 1 } else { -1 };
        if last_sign != 0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ModelParams, QuantumNumbers};
    use crate::spectrum::{solve_level, DEFAULT_TOL};

    fn level(n_r: u32, ell: u32, dim: u32, alpha: f64) -> SpectralPoint {
        let p = ModelParams::unit_table(alpha).unwrap();
        let q = QuantumNumbers::new(n_r, ell, dim).unwrap();
        solve_level(&p, &q, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn origin_and_tail() {
        let sp = level(0, 0, 3, 1e-4);
        assert_eq!(upper_f(0.0, &sp, 1.0), 0.0);
        assert_eq!(lower_g(0.0, &sp, 1.0).unwrap(), 0.0);
        let far = upper_f(1e3 / 1e-4, &sp, 1.0);
        assert!(far.abs() < 1e-300);
    }

    #[test]
    fn ground_state_is_nodeless_closed_form() {
        let sp = level(0, 0, 3, 1e-3);
        for i in 1..200 {
            let r = f64::from(i) * 10.0;
            let x = 1e-3 * r;
            let expect = x.tanh().powi(2) * (1.0 / x.cosh()).powf(sp.eps);
            let got = upper_f(r, &sp, 1.0);
            assert!((got - expect).abs() <= 1e-14 * expect.abs().max(1e-300));
            assert!(got > 0.0);
        }
    }

    #[test]
    fn ground_constant_example() {
        // κ = 1, ε = 6, α = 1e-4: C₀ = √(2α / B(2.5, 6))
        let sp = level(0, 0, 3, 1e-4);
        let c = norm_constant_ground(&sp).unwrap();
        let expect = (2e-4f64 / specfun::beta(2.5, sp.eps).unwrap()).sqrt();
        assert!((c - expect).abs() < 1e-15);
        assert!((c - 0.1327).abs() < 1e-3, "{c}");
        let series = norm_constant_series(&sp).unwrap();
        assert!((series - c).abs() <= 4.0 * f64::EPSILON * c);
        assert!(norm_constant_ground(&level(1, 0, 3, 1e-4)).is_err());
    }

    #[test]
    fn series_matches_quadrature() {
        for &(n_r, ell, dim, alpha) in &[
            (0, 0, 3, 1e-3),
            (1, 0, 3, 1e-3),
            (2, 1, 4, 5e-3),
            (3, 0, 5, 1e-2),
        ] {
            let sp = level(n_r, ell, dim, alpha);
            let a = norm_constant_series(&sp).unwrap();
            let b = norm_constant_quadrature(&sp).unwrap();
            assert!((a - b).abs() <= 1e-10 * b, "n_r = {n_r}: {a} vs {b}");
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let sp = level(2, 1, 4, 1e-2);
        let h = 1e-6 / 1e-2;
        for i in 1..300 {
            let r = f64::from(i) * 0.5;
            let fd = (upper_f(r + h, &sp, 1.0) - upper_f(r - h, &sp, 1.0)) / (2.0 * h);
            let an = upper_f_derivative(r, &sp, 1.0);
            assert!(
                (fd - an).abs() < 1e-7 * (1.0 + an.abs()),
                "r = {r}: {fd} vs {an}"
            );
        }
    }

    #[test]
    fn lower_small_r_power_law() {
        // n_r = 0: G ≈ (2κ+1) C (αr)^{κ+1} / r / (μ+E−C₁) = (2κ+1) C α^{κ+1} r^κ / denom
        let sp = level(0, 0, 3, 1e-2);
        let kappa = 1.0;
        let r = 1e-3;
        let g = lower_g(r, &sp, 1.0).unwrap();
        let expect = (2.0 * kappa + 1.0) * 1e-2f64.powf(kappa + 1.0) * r.powf(kappa) / sp.energy;
        assert!((g / expect - 1.0).abs() < 1e-6, "{g} vs {expect}");
    }

    #[test]
    fn singular_denominator_rejected() {
        let mut sp = level(0, 0, 3, 1e-2);
        sp.energy = sp.params.c1 - sp.params.mu;
        assert!(lower_g(1.0, &sp, 1.0).is_err());
    }

    #[test]
    fn grids() {
        let sp = level(0, 0, 3, 1e-2);
        let g = make_grid(&GridSpec::new(2, Spacing::Linear), 10.0, 1e-2).unwrap();
        assert_eq!(g, [5.0, 10.0]);
        let g = make_grid(
            &GridSpec::new(1000, Spacing::Hybrid),
            default_r_max(&sp),
            1e-2,
        )
        .unwrap();
        assert_eq!(g.len(), 1000);
        assert_eq!(g[0], 0.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(*g.last().unwrap(), default_r_max(&sp));
        let g = make_grid(&GridSpec::new(50, Spacing::Log), 10.0, 1e-2).unwrap();
        assert!(g.windows(2).all(|w| w[1] > w[0]) && g[49] == 10.0);
        assert!(make_grid(&GridSpec::new(1, Spacing::Linear), 10.0, 1.0).is_err());
        assert!(make_grid(&GridSpec::new(5, Spacing::Linear), 0.0, 1.0).is_err());
    }

    #[test]
    fn sample_two_points() {
        let sp = level(0, 0, 3, 1e-2);
        let rf = sample(&sp, &GridSpec::new(2, Spacing::Linear).with_r_max(200.0)).unwrap();
        assert_eq!(rf.grid, [100.0, 200.0]);
        assert!(rf.upper.iter().chain(&rf.lower).all(|v| v.is_finite()));
        assert_eq!(rf.norm_method, NormMethod::Series);
    }

    #[test]
    fn default_range_captures_decay() {
        // The tail at 30/(εα) is about 2^ε e^{-30} over the peak, which stays
        // below 1e-10 for the ε ≈ 6 ground state.
        for alpha in [1e-4, 1e-3] {
            let sp = level(0, 0, 3, alpha);
            let rf = sample(&sp, &GridSpec::new(10_000, Spacing::Linear)).unwrap();
            let peak = rf.upper.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let ratio = rf.upper.last().unwrap().abs() / peak;
            assert!(ratio <= 1e-10, "{ratio:e}");
        }
    }

    #[test]
    fn node_count_equals_radial_number() {
        for n_r in 0..4 {
            let sp = level(n_r, 1, 3, 1e-3);
            let rf = sample(&sp, &GridSpec::new(10_000, Spacing::Linear)).unwrap();
            assert_eq!(count_nodes(&rf.upper, 1e-12), n_r as usize);
        }
    }

    #[test]
    fn both_component_normalization() {
        let sp = level(1, 0, 3, 1e-2);
        let (c_both, m) = norm_constant(&sp, Normalization::BothComponents).unwrap();
        assert_eq!(m, NormMethod::Quadrature);
        let c_upper = norm_constant_series(&sp).unwrap();
        // G is suppressed by 1/(μ+E−C₁) relative to F', so including it
        // shrinks the constant.
        assert!(c_both < c_upper);
    }
}
