//! `(θ, φ)` sweep of the two-qutrit RC threshold over Schmidt vectors
//! `a = (sin θ sin φ, cos θ sin φ, cos φ)`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::analysis::{cubic_threshold, RootFamily};
use crate::error::{Error, Result};
use crate::state::SchmidtVector;

/// One point of the `(θ, φ)` sweep over two-qutrit Schmidt vectors
/// `a = (sin θ sin φ, cos θ sin φ, cos φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub theta: f64,
    pub phi: f64,
    pub a: [f64; 3],
    pub p_star: Option<f64>,
    pub family: Option<RootFamily>,
}

/// Inclusive `(θ, φ)` grid. Cells are ordered with `φ` as the outer index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub theta_steps: usize,
    pub phi_steps: usize,
    pub theta_range: (f64, f64),
    pub phi_range: (f64, f64),
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            theta_steps: 181,
            phi_steps: 181,
            theta_range: (0.0, PI / 2.0),
            phi_range: (0.0, PI / 2.0),
        }
    }
}

impl SweepGrid {
    pub fn new(theta_steps: usize, phi_steps: usize) -> Self {
        Self {
            theta_steps,
            phi_steps,
            ..Self::default()
        }
    }

    pub fn len(&self) -> usize {
        self.theta_steps * self.phi_steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn validate(&self) -> Result<()> {
        for steps in [self.theta_steps, self.phi_steps] {
            if steps < 2 {
                return Err(Error::InvalidGrid(steps));
            }
        }
        let ends = [
            self.theta_range.0,
            self.theta_range.1,
            self.phi_range.0,
            self.phi_range.1,
        ];
        if ends.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    fn axis(range: (f64, f64), steps: usize, i: usize) -> f64 {
        range.0 + (range.1 - range.0) * i as f64 / (steps - 1) as f64
    }

    /// `(θ, φ)` of the cell at row-major `index`.
    pub fn coords(&self, index: usize) -> (f64, f64) {
        let (phi_i, theta_i) = (index / self.theta_steps, index % self.theta_steps);
        (
            Self::axis(self.theta_range, self.theta_steps, theta_i),
            Self::axis(self.phi_range, self.phi_steps, phi_i),
        )
    }

    fn cell(&self, index: usize) -> SweepCell {
        let (theta, phi) = self.coords(index);
        let raw = [theta.sin() * phi.sin(), theta.cos() * phi.sin(), phi.cos()];
        let schmidt = SchmidtVector::new(raw.to_vec()).expect("spherical point has unit norm");
        let result = cubic_threshold(&schmidt).expect("d = 3 by construction");
        let c = schmidt.coeffs();
        SweepCell {
            theta,
            phi,
            a: [c[0], c[1], c[2]],
            p_star: result.p_star,
            family: result.family,
        }
    }
}

/// Evaluates every grid cell, in parallel on the current rayon pool.
/// The output order is row-major, `φ` outer, whatever the pool size.
pub fn sweep_3x3(grid: &SweepGrid) -> Result<Vec<SweepCell>> {
    grid.validate()?;
    Ok((0..grid.len())
        .into_par_iter()
        .map(|i| grid.cell(i))
        .collect())
}

/// Single-threaded [`sweep_3x3`].
pub fn sweep_3x3_sequential(grid: &SweepGrid) -> Result<Vec<SweepCell>> {
    grid.validate()?;
    Ok((0..grid.len()).map(|i| grid.cell(i)).collect())
}
