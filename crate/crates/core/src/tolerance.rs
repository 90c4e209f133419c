use serde::Serialize;

use crate::error::{Error, Result};

/// Environment variable that overrides [`TolerancePolicy::rel_eps`].
pub const EPS_REL_ENV: &str = "RECTIHULL_EPS_REL";

/// Relative/absolute tolerance pair shared by every geometric predicate.
///
/// Length-like comparisons use `max(abs_eps, rel_eps * scale)` where `scale` is
/// a characteristic size of the object under test (usually its diameter).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TolerancePolicy {
    pub rel_eps: f64,
    pub abs_eps: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rel_eps: 1e-9,
            abs_eps: 1e-12,
        }
    }
}

impl TolerancePolicy {
    pub fn new(rel_eps: f64, abs_eps: f64) -> Result<Self> {
        if !(rel_eps.is_finite() && rel_eps > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "rel_eps must be positive and finite, got {rel_eps}"
            )));
        }
        if !(abs_eps.is_finite() && abs_eps > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "abs_eps must be positive and finite, got {abs_eps}"
            )));
        }
        Ok(Self { rel_eps, abs_eps })
    }

    /// Default policy with `rel_eps` taken from `RECTIHULL_EPS_REL` when set.
    pub fn from_env() -> Result<Self> {
        let mut tol = Self::default();
        if let Ok(raw) = std::env::var(EPS_REL_ENV) {
            let rel: f64 = raw.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("{EPS_REL_ENV}={raw:?} is not a number"))
            })?;
            tol = Self::new(rel, tol.abs_eps)?;
        }
        Ok(tol)
    }

    /// Length tolerance for an object of characteristic size `scale`.
    #[inline]
    pub fn length(&self, scale: f64) -> f64 {
        self.abs_eps.max(self.rel_eps * scale.abs())
    }

    /// Length tolerance with no absolute floor; used where the geometry is
    /// expected to shrink without bound (iterated polygon rectification).
    #[inline]
    pub fn relative(&self, scale: f64) -> f64 {
        self.rel_eps * scale.abs()
    }

    /// `|a - b| <= rel_eps * max(|a|, |b|)`, with `abs_eps` as a floor near zero.
    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.length(a.abs().max(b.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive() {
        assert!(TolerancePolicy::new(0.0, 1e-12).is_err());
        assert!(TolerancePolicy::new(1e-9, -1.0).is_err());
        assert!(TolerancePolicy::new(f64::NAN, 1e-12).is_err());
        assert!(TolerancePolicy::new(1e-6, 1e-10).is_ok());
    }

    #[test]
    fn length_uses_floor() {
        let tol = TolerancePolicy::default();
        assert_eq!(tol.length(0.0), 1e-12);
        assert_eq!(tol.length(10.0), 1e-8);
        assert!(tol.approx_eq(1.0, 1.0 + 5e-10));
        assert!(!tol.approx_eq(1.0, 1.0 + 5e-9));
    }
}
