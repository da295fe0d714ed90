use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed time interval `[start, end]` in dimensionless units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub start: f64,
    pub end: f64,
}

impl Window {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if start.is_finite() && end.is_finite() && start < end {
            Ok(Self { start, end })
        } else {
            Err(Error::Window { start, end })
        }
    }

    /// `[-half, half]`.
    pub fn symmetric(half: f64) -> Result<Self> {
        Self::new(-half, half)
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start && t <= self.end
    }

    pub fn is_symmetric(&self) -> bool {
        (self.start + self.end).abs() <= 1e-12 * self.end.abs().max(1.0)
    }

    /// `n` uniformly spaced points including both endpoints exactly.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        assert!(n >= 2, "a grid needs at least two points");
        let last = n - 1;
        (0..n)
            .map(|i| {
                if i == last {
                    self.end
                } else {
                    self.start + self.len() * (i as f64) / (last as f64)
                }
            })
            .collect()
    }
}

impl Default for Window {
    fn default() -> Self {
        Self { start: -15.0, end: 15.0 }
    }
}
