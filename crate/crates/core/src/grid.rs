//! Evenly spaced sample points.

use crate::error::{Error, Result};

/// `n` evenly spaced points from `lo` to `hi` inclusive; a single point sits
/// at the midpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Sweep {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi || (n > 1 && lo == hi) {
            return Err(Error::InvalidParameter {
                name: "sweep range",
                value: hi - lo,
                reason: "needs finite lo < hi",
            });
        }
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "sweep points",
                value: 0.0,
                reason: "needs at least one point",
            });
        }
        Ok(Sweep { lo, hi, n })
    }

    /// Computed as `lo + (hi - lo) i / (n - 1)` so symmetric ranges with an
    /// odd count hit zero exactly.
    pub fn point(&self, i: usize) -> f64 {
        if self.n == 1 {
            return 0.5 * (self.lo + self.hi);
        }
        if i + 1 == self.n {
            return self.hi;
        }
        let t = i as f64 / (self.n - 1) as f64;
        let x = self.lo + (self.hi - self.lo) * t;
        // Kill the rounding residue at the centre of symmetric sweeps.
        if self.lo == -self.hi && 2 * i + 1 == self.n {
            0.0
        } else {
            x
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_sweep_hits_origin() {
        let s = Sweep::new(-3.0, 3.0, 121).unwrap();
        assert_eq!(s.point(60), 0.0);
        assert_eq!(s.point(0), -3.0);
        assert_eq!(s.point(120), 3.0);
        assert_eq!(Sweep::new(-1.0, 1.0, 1).unwrap().point(0), 0.0);
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(Sweep::new(1.0, 0.0, 3).is_err());
        assert!(Sweep::new(0.0, 1.0, 0).is_err());
        assert!(Sweep::new(0.0, 0.0, 2).is_err());
        assert!(Sweep::new(0.0, f64::INFINITY, 2).is_err());
    }
}
