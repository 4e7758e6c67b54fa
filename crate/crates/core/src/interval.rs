use crate::error::{Error, Result};
use alloc::vec::Vec;

/// A closed, nondegenerate interval `[lo, hi]` on the real line.
///
/// Open/closed distinction is immaterial for the numeric computations here;
/// all sup/min computations include the endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::BadIntervals);
        }
        Ok(Interval { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True when `inner` sits strictly inside `self` (positive gap at both
    /// endpoints).
    pub fn strictly_contains(&self, inner: &Interval) -> bool {
        self.lo < inner.lo && inner.hi < self.hi
    }

    /// Minimum of the two one-sided endpoint gaps to an enclosing interval.
    pub fn endpoint_gap(&self, outer: &Interval) -> f64 {
        (self.lo - outer.lo).min(outer.hi - self.hi)
    }

    /// `n + 1` equispaced sample points covering the interval.
    pub fn sample(&self, n: usize) -> Vec<f64> {
        let n = n.max(1);
        let h = self.len() / n as f64;
        (0..=n)
            .map(|k| {
                if k == n {
                    self.hi
                } else {
                    self.lo + k as f64 * h
                }
            })
            .collect()
    }
}
