//! Wigner function, optical tomogram and the negative-volume quantifier.
//!
//! Quadratures are dimensionless with `x = (a + a†)/√2`, `p = (a - a†)/(i√2)`;
//! `W` is normalized to `∫∫ W dx dp = 1`, so the vacuum is `e^{-(x²+p²)}/π`.

use std::f64::consts::{LN_2, PI};
use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::QuditState;
use crate::quadrature::{integrate_square, GaussLegendre};
use crate::specfun::{hermite, laguerre_column, log_factorial, log_falling};

/// Node count per axis of the first volume quadrature pass.
pub const VOLUME_START_NODES: usize = 256;
/// Largest node count per axis tried before giving up.
pub const VOLUME_MAX_NODES: usize = 4096;
/// Tail bound used to pick the integration radius.
pub const ENVELOPE_EPS: f64 = 1e-12;

/// Precomputed coherence coefficients for fast Wigner evaluation.
///
/// For `m = n + d`, `d > 0`, the pair `|m⟩⟨n| + h.c.` contributes
/// `2 Re[c_m c_n* (-1)^n √(n!/m!) (√2 (x - ip))^d] L_n^d(2r²)`; the diagonal
/// gives `|c_n|² (-1)^n L_n(2r²)`. The whole sum carries `e^{-r²}/π`.
#[derive(Debug, Clone)]
pub struct WignerKernel {
    n_max: usize,
    // coeffs[d][n]
    coeffs: Vec<Vec<Complex64>>,
}

impl WignerKernel {
    pub fn new(state: &QuditState) -> Self {
        let n_max = state.max_occupied() as usize;
        let mut coeffs = vec![vec![Complex64::new(0.0, 0.0); n_max + 1]; n_max + 1];
        for d in 0..=n_max {
            for n in 0..=(n_max - d) {
                let m = n + d;
                let c_n = state.amplitude(n as u32);
                let c_m = state.amplitude(m as u32);
                if c_n.norm_sqr() == 0.0 || c_m.norm_sqr() == 0.0 {
                    continue;
                }
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let ratio = (-0.5 * log_falling(m as u32, d as u32)).exp();
                let pair = if d == 0 { 1.0 } else { 2.0 };
                coeffs[d][n] = c_m * c_n.conj() * (sign * ratio * pair);
            }
        }
        WignerKernel { n_max, coeffs }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn eval(&self, x: f64, p: f64) -> f64 {
        let r2 = x * x + p * p;
        let u = Complex64::new(x, -p) * std::f64::consts::SQRT_2;
        let mut lag = vec![0.0; self.n_max + 1];
        let mut upow = Complex64::new(1.0, 0.0);
        let mut acc = 0.0;
        for d in 0..=self.n_max {
            let col = &self.coeffs[d];
            let len = self.n_max - d + 1;
            let start = col.iter().position(|c| c.norm_sqr() != 0.0);
            if let Some(start) = start {
                laguerre_column(d as u32, 2.0 * r2, &mut lag[..len]);
                let mut s = Complex64::new(0.0, 0.0);
                for n in start..len {
                    s += col[n] * lag[n];
                }
                acc += (s * upow).re;
            }
            upow *= u;
        }
        acc * (-r2).exp() / PI
    }
}

/// `W(x, p)` of `state`.
pub fn wigner(state: &QuditState, x: f64, p: f64) -> f64 {
    WignerKernel::new(state).eval(x, p)
}

/// Rectangular `(x, p)` lattice, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpaceGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub nx: usize,
    pub np: usize,
}

impl PhaseSpaceGrid {
    pub fn new(x_min: f64, x_max: f64, p_min: f64, p_max: f64, nx: usize, np: usize) -> Result<Self> {
        let g = PhaseSpaceGrid { x_min, x_max, p_min, p_max, nx, np };
        g.validate()?;
        Ok(g)
    }

    /// `n × n` grid over `[-extent, extent]²`.
    pub fn square(extent: f64, n: usize) -> Result<Self> {
        Self::new(-extent, extent, -extent, extent, n, n)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.p_min, self.p_max].iter().all(|v| v.is_finite());
        if !finite || !(self.x_min < self.x_max) || !(self.p_min < self.p_max) {
            return Err(Error::Domain("grid bounds must satisfy min < max".into()));
        }
        if self.nx < 2 || self.np < 2 {
            return Err(Error::Domain("grid needs at least 2 samples per axis".into()));
        }
        Ok(())
    }

    pub fn x(&self, i: usize) -> f64 {
        lerp(self.x_min, self.x_max, i, self.nx)
    }

    pub fn p(&self, j: usize) -> f64 {
        lerp(self.p_min, self.p_max, j, self.np)
    }
}

fn lerp(a: f64, b: f64, i: usize, n: usize) -> f64 {
    if i == n - 1 {
        b
    } else {
        a + (b - a) * i as f64 / (n - 1) as f64
    }
}

/// Pointwise Wigner samples, row-major with `x` as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerField {
    pub grid: PhaseSpaceGrid,
    pub values: Vec<f64>,
}

impl WignerField {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.np + j]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn negative_count(&self) -> usize {
        self.values.iter().filter(|&&v| v < 0.0).count()
    }

    /// CSV with header `x,p,W`, one node per line.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "x,p,W")?;
        for i in 0..self.grid.nx {
            let x = self.grid.x(i);
            for j in 0..self.grid.np {
                writeln!(out, "{},{},{}", fmt_num(x), fmt_num(self.grid.p(j)), fmt_num(self.at(i, j)))?;
            }
        }
        Ok(())
    }
}

/// Seventeen significant digits, enough for an exact `f64` round trip.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn wigner_grid(state: &QuditState, grid: &PhaseSpaceGrid) -> Result<WignerField> {
    grid.validate()?;
    let kernel = WignerKernel::new(state);
    let values: Vec<f64> = (0..grid.nx)
        .into_par_iter()
        .flat_map_iter(|i| {
            let x = grid.x(i);
            let kernel = &kernel;
            (0..grid.np).map(move |j| kernel.eval(x, grid.p(j)))
        })
        .collect();
    Ok(WignerField { grid: *grid, values })
}

/// Smallest radius (step 0.25, at least 5) beyond which the Wigner envelope
/// of a state with highest occupation `n_max` drops below [`ENVELOPE_EPS`].
///
/// The bound is `e^{-R²} (4R²)^{n_max} / n_max!`.
pub fn envelope_radius(n_max: u32) -> f64 {
    let target = ENVELOPE_EPS.ln();
    let mut r: f64 = 5.0;
    loop {
        let r2 = r * r;
        let log_bound = -r2 + n_max as f64 * (2.0 * LN_2 + r2.ln()) - log_factorial(n_max);
        if log_bound < target {
            return r;
        }
        r += 0.25;
    }
}

/// Result of the negative-volume integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureReport {
    pub value: f64,
    pub error_estimate: f64,
    pub radius: f64,
    pub nodes_per_axis: usize,
    pub converged: bool,
}

/// Signed `∫∫ W dx dp` with an `nodes`-point tensor rule at the envelope radius.
pub fn wigner_integral(state: &QuditState, nodes: usize) -> f64 {
    let kernel = WignerKernel::new(state);
    let radius = envelope_radius(kernel.n_max() as u32);
    integrate_square(&GaussLegendre::new(nodes), radius, |x, p| kernel.eval(x, p))
}

fn abs_integral(kernel: &WignerKernel, radius: f64, nodes: usize) -> f64 {
    integrate_square(&GaussLegendre::new(nodes), radius, |x, p| kernel.eval(x, p).abs())
}

/// Negative volume `δ = ∫∫ |W| dx dp - 1`.
///
/// The node count per axis doubles from [`VOLUME_START_NODES`] until two
/// successive estimates differ by less than `tolerance`; the difference is
/// the reported error estimate.
pub fn nonclassical_volume(state: &QuditState, tolerance: f64) -> QuadratureReport {
    assert!(tolerance > 0.0, "tolerance must be positive");
    let kernel = WignerKernel::new(state);
    let radius = envelope_radius(kernel.n_max() as u32);
    let mut nodes = VOLUME_START_NODES;
    let mut prev = abs_integral(&kernel, radius, nodes);
    loop {
        let next_nodes = nodes * 2;
        let value = abs_integral(&kernel, radius, next_nodes);
        let err = (value - prev).abs();
        if err < tolerance || next_nodes >= VOLUME_MAX_NODES {
            return QuadratureReport {
                value: value - 1.0,
                error_estimate: err,
                radius,
                nodes_per_axis: next_nodes,
                converged: err < tolerance,
            };
        }
        prev = value;
        nodes = next_nodes;
    }
}

/// One homodyne sample `w(X, θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TomogramSample {
    pub x: f64,
    pub theta: f64,
    pub w: f64,
}

/// Optical tomogram `w(X, θ)`, the distribution of the rotated quadrature
/// `X_θ = x cos θ + p sin θ`, in the Hermite-polynomial form with
/// `c_j = |c_j| e^{iφ_j}`.
pub fn tomogram(state: &QuditState, x: f64, theta: f64) -> f64 {
    let n_max = state.max_occupied();
    let terms: Vec<(u32, f64, f64, f64)> = (0..=n_max)
        .filter_map(|n| {
            let c = state.amplitude(n);
            if c.norm_sqr() == 0.0 {
                return None;
            }
            // H_n(X) / √(2ⁿ n!)
            let scale = (-0.5 * (n as f64 * LN_2 + log_factorial(n))).exp();
            Some((n, c.norm(), c.arg(), hermite(n, x) * scale))
        })
        .collect();
    let mut acc = 0.0;
    for (i, &(n, mod_n, phi_n, h_n)) in terms.iter().enumerate() {
        acc += mod_n * mod_n * h_n * h_n;
        for &(k, mod_k, phi_k, h_k) in &terms[i + 1..] {
            let phase = (n as f64 - k as f64) * theta - (phi_n - phi_k);
            acc += 2.0 * mod_n * mod_k * phase.cos() * h_n * h_k;
        }
    }
    acc * (-x * x).exp() / PI.sqrt()
}

/// Tomogram on the outer product of `xs` and `thetas`, `θ` as the slow index.
pub fn tomogram_grid(state: &QuditState, xs: &[f64], thetas: &[f64]) -> Vec<TomogramSample> {
    thetas
        .par_iter()
        .flat_map_iter(|&theta| xs.iter().map(move |&x| TomogramSample { x, theta, w: tomogram(state, x, theta) }))
        .collect()
}

/// CSV with header `X,theta,w`.
pub fn write_tomogram_csv<W: Write>(samples: &[TomogramSample], out: &mut W) -> io::Result<()> {
    writeln!(out, "X,theta,w")?;
    for s in samples {
        writeln!(out, "{},{},{}", fmt_num(s.x), fmt_num(s.theta), fmt_num(s.w))?;
    }
    Ok(())
}

/// Samples of `X` used by [`radon_check`].
pub const RADON_X_SAMPLES: usize = 101;

/// Largest deviation between the line integral of `W` along
/// `(X cos θ - η sin θ, X sin θ + η cos θ)` and `w(X, θ)` over an `X` grid
/// spanning the envelope radius.
pub fn radon_check(state: &QuditState, theta: f64, quad_nodes: usize) -> f64 {
    assert!(quad_nodes >= 64, "radon_check needs at least 64 quadrature nodes");
    let kernel = WignerKernel::new(state);
    let radius = envelope_radius(kernel.n_max() as u32);
    let rule = GaussLegendre::new(quad_nodes);
    let (eta, w) = rule.scaled(-radius, radius);
    let (s, c) = theta.sin_cos();
    (0..RADON_X_SAMPLES)
        .map(|i| {
            let x = lerp(-radius, radius, i, RADON_X_SAMPLES);
            let line: f64 = eta
                .iter()
                .zip(&w)
                .map(|(&e, &we)| we * kernel.eval(x * c - e * s, x * s + e * c))
                .sum();
            (line - tomogram(state, x, theta)).abs()
        })
        .fold(0.0, f64::max)
}
