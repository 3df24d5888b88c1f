//! Symmetric tridiagonal matrices and Sturm-sequence eigenvalue bisection.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::sqrt;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off` holds the n − 1 sub/super-diagonal entries.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter {
                name: "tridiagonal",
                reason: "need n >= 1 diagonal and n - 1 off-diagonal entries",
            });
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Number of eigenvalues strictly below `lambda` (signs of the LDLᵀ pivots).
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1] / q
            };
            q = self.diag[i] - lambda - coupling;
            if q == 0.0 {
                q = -f64::EPSILON * (lambda.abs() + f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `index`-th eigenvalue (0 = smallest), bisected to full precision.
    pub fn eigenvalue(&self, index: usize) -> Result<f64> {
        if index >= self.len() {
            return Err(Error::InvalidParameter {
                name: "k",
                reason: "requested more eigenvalues than the matrix dimension",
            });
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * (lo.abs().max(hi.abs()) + 1.0);
        lo -= pad;
        hi += pad;
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// The `k` algebraically smallest eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        if k == 0 {
            return Err(Error::InvalidParameter {
                name: "k",
                reason: "at least one eigenvalue must be requested",
            });
        }
        (0..k).map(|i| self.eigenvalue(i)).collect()
    }

    /// Unit eigenvector for an (accurate) eigenvalue, by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let shift = lambda + 1e3 * f64::EPSILON * (lambda.abs() + 1.0);
        let mut v = vec![1.0; n];
        for _ in 0..3 {
            v = self.solve_shifted(shift, &v);
            let norm = sqrt(v.iter().map(|x| x * x).sum());
            if norm == 0.0 || !norm.is_finite() {
                break;
            }
            for x in &mut v {
                *x /= norm;
            }
        }
        v
    }

    /// Solves (T − σI) y = b with the Thomas algorithm.
    fn solve_shifted(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let tiny = sqrt(f64::MIN_POSITIVE);
        let mut piv = self.diag[0] - sigma;
        if piv == 0.0 {
            piv = tiny;
        }
        if n > 1 {
            c[0] = self.off[0] / piv;
        }
        d[0] = b[0] / piv;
        for i in 1..n {
            let sub = self.off[i - 1];
            piv = self.diag[i] - sigma - sub * c[i - 1];
            if piv == 0.0 {
                piv = tiny;
            }
            if i + 1 < n {
                c[i] = self.off[i] / piv;
            }
            d[i] = (b[i] - sub * d[i - 1]) / piv;
        }
        let mut y = d;
        for i in (0..n - 1).rev() {
            y[i] -= c[i] * y[i + 1];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap()
    }

    #[test]
    fn diagonal_matrix() {
        let m = SymTridiagonal::new(vec![3.0, 1.0, 2.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(m.lowest_eigenvalues(2).unwrap(), [1.0, 2.0]);
        assert!(m.lowest_eigenvalues(4).is_err());
        assert!(m.lowest_eigenvalues(0).is_err());
    }

    #[test]
    fn shape_checked() {
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![], vec![]).is_err());
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        let n = 200;
        let m = laplacian(n);
        let ev = m.lowest_eigenvalues(5).unwrap();
        for (k, e) in ev.iter().enumerate() {
            let th = (k + 1) as f64 * PI / (2.0 * (n + 1) as f64);
            let exact = 4.0 * th.sin().powi(2);
            assert!((e - exact).abs() < 1e-14, "{k}: {e} vs {exact}");
        }
        assert_eq!(m.count_below(0.0), 0);
        assert_eq!(m.count_below(4.0), n);
    }

    #[test]
    fn eigenvector_nodes() {
        let m = laplacian(300);
        for k in 0..4 {
            let lam = m.eigenvalue(k).unwrap();
            let v = m.eigenvector(lam);
            let changes = v.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
            assert_eq!(changes, k);
            // residual of T v = λ v
            let n = v.len();
            let mut r2 = 0.0;
            for i in 0..n {
                let mut tv = 2.0 * v[i];
                if i > 0 {
                    tv -= v[i - 1];
                }
                if i + 1 < n {
                    tv -= v[i + 1];
                }
                r2 += (tv - lam * v[i]).powi(2);
            }
            assert!(r2.sqrt() < 1e-10);
        }
    }
}
