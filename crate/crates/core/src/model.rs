//! Physical inputs, quantum-number bookkeeping and the potential itself.

use core::fmt;

use crate::math::{sech, sinh, sqrt};
use crate::{Error, Result};

/// Masses, depths and the spin-symmetry constant, all in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub mu: f64,
    pub v0: f64,
    pub s0: f64,
    pub alpha: f64,
    /// Constant value of Δ(r) = V(r) − S(r) in the spin-symmetric limit.
    pub c1: f64,
}

impl ModelParams {
    pub fn new(mu: f64, v0: f64, s0: f64, alpha: f64, c1: f64) -> Result<Self> {
        let p = Self {
            mu,
            v0,
            s0,
            alpha,
            c1,
        };
        p.validate()?;
        Ok(p)
    }

    /// The parameter set used throughout the reference table: μ = V₀ = S₀ = C₁ = 1.
    pub fn unit_table(alpha: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, alpha, 1.0)
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.mu, self.v0, self.s0, alpha, self.c1)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.mu, self.v0, self.s0, self.alpha, self.c1]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParameter {
                name: "params",
                reason: "all parameters must be finite",
            });
        }
        if !(self.mu > 0.0) {
            return Err(Error::InvalidParameter {
                name: "mu",
                reason: "mass must be positive",
            });
        }
        if !(self.alpha > 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                reason: "range parameter must be positive",
            });
        }
        if !(self.v0 + self.s0 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "v0+s0",
                reason: "the combined well must be attractive (v0 + s0 > 0)",
            });
        }
        Ok(())
    }

    /// V₀ + S₀, the depth of the Σ well.
    #[inline]
    pub fn well_depth(&self) -> f64 {
        self.v0 + self.s0
    }

    /// μ − C₁, so that μ + E − C₁ is formed as `E + shift` without cancellation.
    #[inline]
    pub fn shift(&self) -> f64 {
        self.mu - self.c1
    }

    /// Closed energy window `[min, max]` with endpoints C₁ − μ and μ.
    pub fn window(&self) -> (f64, f64) {
        let a = self.c1 - self.mu;
        let b = self.mu;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// The bound-state window is only usable when C₁ − μ < μ.
    pub fn check_window(&self) -> Result<()> {
        if self.c1 - self.mu < self.mu {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "empty bound-state window (c1 - mu >= mu)",
                value: self.c1 - self.mu,
            })
        }
    }
}

/// Spin-orbit quantum number κ, stored exactly as a count of halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Kappa {
    twice: u32,
}

impl Kappa {
    /// κ = (2ℓ + D − 1)/2.
    pub fn from_ell_dim(ell: u32, dim: u32) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter {
                name: "dim",
                reason: "spatial dimension must be at least 2",
            });
        }
        Ok(Self {
            twice: 2 * ell + dim - 1,
        })
    }

    /// 2κ, always a positive integer.
    #[inline]
    pub fn twice(self) -> u32 {
        self.twice
    }

    /// κ as a reduced fraction `(numerator, denominator)` with denominator 1 or 2.
    pub fn as_fraction(self) -> (u32, u32) {
        if self.twice.is_multiple_of(2) {
            (self.twice / 2, 1)
        } else {
            (self.twice, 2)
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// γ = κ(κ+1) = 2κ(2κ+2)/4, exact in binary for every admissible κ.
    #[inline]
    pub fn gamma(self) -> f64 {
        let t = u64::from(self.twice);
        (t * (t + 2)) as f64 / 4.0
    }

    /// √(1 + 4γ) = 2κ + 1.
    #[inline]
    pub fn sqrt_one_plus_four_gamma(self) -> u32 {
        self.twice + 1
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_fraction() {
            (n, 1) => write!(f, "{n}"),
            (n, d) => write!(f, "{n}/{d}"),
        }
    }
}

/// Which sign of κ a caller asks for. Only the unaligned (positive) branch is
/// implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinBranch {
    Positive,
    Negative,
}

/// κ for the given branch; the negative branch is rejected.
pub fn kappa_from(ell: u32, dim: u32) -> Result<Kappa> {
    Kappa::from_ell_dim(ell, dim)
}

pub fn kappa_for_branch(ell: u32, dim: u32, branch: SpinBranch) -> Result<Kappa> {
    match branch {
        SpinBranch::Positive => Kappa::from_ell_dim(ell, dim),
        SpinBranch::Negative => Err(Error::UnsupportedBranch),
    }
}

/// Radial node count, orbital number and dimension, plus everything derived
/// from them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    n_r: u32,
    ell: u32,
    dim: u32,
    kappa: Kappa,
    n: u32,
    m_index: u32,
}

impl QuantumNumbers {
    pub fn new(n_r: u32, ell: u32, dim: u32) -> Result<Self> {
        let kappa = Kappa::from_ell_dim(ell, dim)?;
        let n = 2 * n_r + ell + 1;
        Ok(Self {
            n_r,
            ell,
            dim,
            kappa,
            n,
            m_index: 2 * n + dim,
        })
    }

    /// Picks a representative `(n_r, ℓ)` for principal number `n`:
    /// `n_r = ⌊(n−1)/2⌋`, `ℓ = (n−1) mod 2`. Energies only see `M = 2n + D`,
    /// so any other split gives the same level.
    pub fn from_principal(n: u32, dim: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: "principal quantum number starts at 1",
            });
        }
        Self::new((n - 1) / 2, (n - 1) % 2, dim)
    }

    #[inline]
    pub fn n_r(&self) -> u32 {
        self.n_r
    }
    #[inline]
    pub fn ell(&self) -> u32 {
        self.ell
    }
    #[inline]
    pub fn dim(&self) -> u32 {
        self.dim
    }
    #[inline]
    pub fn kappa(&self) -> Kappa {
        self.kappa
    }
    #[inline]
    pub fn gamma(&self) -> f64 {
        self.kappa.gamma()
    }
    /// Principal quantum number `n = 2 n_r + ℓ + 1`.
    #[inline]
    pub fn principal(&self) -> u32 {
        self.n
    }
    /// Composite index `M = 2n + D`; the spectrum depends on nothing else.
    #[inline]
    pub fn m_index(&self) -> u32 {
        self.m_index
    }
}

/// ε, δ at a given energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessState {
    pub eps: f64,
    pub delta: f64,
    pub energy: f64,
}

/// ε² α² = (μ − E)(μ + E − C₁).
#[inline]
pub fn eps_squared(energy: f64, p: &ModelParams) -> f64 {
    (p.mu - energy) * (energy + p.shift()) / (p.alpha * p.alpha)
}

/// δ α² = (V₀ + S₀)(E + μ − C₁).
#[inline]
pub fn delta_of(energy: f64, p: &ModelParams) -> f64 {
    p.well_depth() * (energy + p.shift()) / (p.alpha * p.alpha)
}

pub fn dimensionless_of(energy: f64, p: &ModelParams) -> Result<DimensionlessState> {
    let upper = p.mu - energy;
    let lower = energy + p.shift();
    if upper * lower < 0.0 {
        let what = if upper < 0.0 {
            "energy above mu: factor (mu - E) is negative"
        } else {
            "energy below c1 - mu: factor (mu + E - c1) is negative"
        };
        return Err(Error::Domain {
            what,
            value: energy,
        });
    }
    Ok(DimensionlessState {
        eps: sqrt(upper * lower) / p.alpha,
        delta: delta_of(energy, p),
        energy,
    })
}

/// Δ(r) = (S₀ − V₀)/cosh²(αr) and Σ(r) = −(V₀ + S₀)/cosh²(αr).
pub fn delta_sigma_at(r: f64, p: &ModelParams) -> (f64, f64) {
    let s = sech(p.alpha * r);
    let s2 = s * s;
    ((p.s0 - p.v0) * s2, -(p.v0 + p.s0) * s2)
}

/// The exact centrifugal factor 1/r² and its hyperbolic stand-in α²/sinh²(αr).
pub fn centrifugal_pair(r: f64, alpha: f64) -> Result<(f64, f64)> {
    if !(r > 0.0) {
        return Err(Error::Domain {
            what: "centrifugal term diverges at r <= 0",
            value: r,
        });
    }
    let sh = sinh(alpha * r);
    Ok((1.0 / (r * r), alpha * alpha / (sh * sh)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::cosh;

    fn unit(alpha: f64) -> ModelParams {
        ModelParams::unit_table(alpha).unwrap()
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_from(0, 3).unwrap().as_fraction(), (1, 1));
        assert_eq!(kappa_from(1, 3).unwrap().as_fraction(), (2, 1));
        assert_eq!(kappa_from(0, 4).unwrap().as_fraction(), (3, 2));
        assert_eq!(kappa_from(0, 4).unwrap().to_string(), "3/2");
        assert!(kappa_from(0, 1).is_err());
    }

    #[test]
    fn negative_branch_rejected() {
        assert_eq!(
            kappa_for_branch(1, 3, SpinBranch::Negative),
            Err(Error::UnsupportedBranch)
        );
        assert!(kappa_for_branch(1, 3, SpinBranch::Positive).is_ok());
    }

    #[test]
    fn gamma_identity_is_exact() {
        for dim in 2..12 {
            for ell in 0..12 {
                let k = kappa_from(ell, dim).unwrap();
                let lhs = f64::from(k.sqrt_one_plus_four_gamma());
                assert_eq!(lhs * lhs, 1.0 + 4.0 * k.gamma());
                assert!(k.value() > 0.0);
            }
        }
    }

    #[test]
    fn m_index_formula() {
        for dim in 2..8 {
            for ell in 0..5 {
                for n_r in 0..5 {
                    let q = QuantumNumbers::new(n_r, ell, dim).unwrap();
                    assert_eq!(q.m_index(), 4 * n_r + 2 * ell + dim + 2);
                    assert_eq!(q.principal(), 2 * n_r + ell + 1);
                }
            }
        }
    }

    #[test]
    fn principal_mapping() {
        let q = QuantumNumbers::from_principal(4, 3).unwrap();
        assert_eq!((q.n_r(), q.ell()), (1, 1));
        assert_eq!(q.principal(), 4);
        assert!(QuantumNumbers::from_principal(0, 3).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(1.0, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(0.0, 1.0, 1.0, 0.1, 1.0).is_err());
        assert!(ModelParams::new(1.0, -1.0, 0.5, 0.1, 1.0).is_err());
        assert!(ModelParams::new(1.0, f64::NAN, 0.5, 0.1, 1.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, 1.0, 0.1, 2.5)
            .unwrap()
            .check_window()
            .is_err());
    }

    #[test]
    fn delta_sigma_examples() {
        let p = unit(1.0);
        assert_eq!(delta_sigma_at(0.0, &p), (0.0, -2.0));
        let (d, s) = delta_sigma_at(1e4, &p);
        assert_eq!((d, s), (0.0, -0.0));
        let (_, s) = delta_sigma_at(1.0, &p);
        let c = cosh(1.0);
        assert!((s - (-2.0 / (c * c))).abs() < 1e-15);
        assert!((s + 0.839_948_4).abs() < 1e-6);
    }

    #[test]
    fn spin_symmetric_input_has_zero_delta() {
        let p = ModelParams::new(1.0, 0.7, 0.7, 0.3, 0.0).unwrap();
        for i in 0..50 {
            assert_eq!(delta_sigma_at(f64::from(i) * 0.37, &p).0, 0.0);
        }
    }

    #[test]
    fn centrifugal_examples() {
        let (e, a) = centrifugal_pair(1.0, 1.0).unwrap();
        let sh = sinh(1.0);
        assert!((a / e - 1.0 / (sh * sh)).abs() < 1e-15);
        assert!((a / e - 0.724_061_6).abs() < 1e-6);
        let (e, a) = centrifugal_pair(3.0, 1.0).unwrap();
        assert!((a / e - 0.089_679).abs() < 1e-6);
        let (e, a) = centrifugal_pair(1e-6, 1.0).unwrap();
        assert!((a / e - 1.0).abs() < 1e-11);
        assert!(centrifugal_pair(0.0, 1.0).is_err());
    }

    #[test]
    fn centrifugal_taylor_bound() {
        for i in 1..=1000 {
            let x = f64::from(i) / 1000.0;
            let (e, a) = centrifugal_pair(x, 1.0).unwrap();
            assert!((a - e).abs() / e <= x * x / 3.0 * 1.1, "x = {x}");
        }
    }

    #[test]
    fn dimensionless_examples() {
        let p = unit(1e-4);
        assert_eq!(dimensionless_of(1.0, &p).unwrap().eps, 0.0);
        let z = dimensionless_of(0.0, &p).unwrap();
        assert_eq!((z.eps, z.delta), (0.0, 0.0));
        let s = dimensionless_of(3.6e-7, &p).unwrap();
        assert!((s.eps - 6.0).abs() < 1e-5, "{}", s.eps);
        assert!((s.delta - 72.0).abs() < 1e-9);
    }

    #[test]
    fn window_violation_names_factor() {
        let p = unit(0.1);
        match dimensionless_of(1.5, &p) {
            Err(Error::Domain { what, .. }) => assert!(what.contains("(mu - E)")),
            other => panic!("{other:?}"),
        }
        match dimensionless_of(-0.5, &p) {
            Err(Error::Domain { what, .. }) => assert!(what.contains("(mu + E - c1)")),
            other => panic!("{other:?}"),
        }
    }
}
