//! Numerical ground truth for the closed-form response.
//!
//! [`response_quadrature`] integrates the reduced single-variable response
//! integral at a finite pole shift `η`; [`response_extrapolated`] repeats that
//! over a schedule of shifts and extrapolates the real part to `η → 0`.
//! [`lorentzian_reduction_check`] independently validates the step that turns
//! the double proper-time integral into the single `m` integral.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::correlation::RegulatorEta;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_breaks, QuadOptions};
use crate::response::ResponseQuery;

/// Settings for the oracle quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    /// Strictly decreasing pole shifts, in units of the smallest pole distance
    /// `min(T, √12/a)`.
    pub eta_schedule: Vec<f64>,
    /// Integration half-range `M`. `None` selects `half_range_factor · max(T, √12/a)`.
    pub half_range: Option<f64>,
    pub half_range_factor: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Relative tolerance the extrapolation residual is judged against.
    pub extrapolation_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            eta_schedule: vec![1e-2, 5e-3, 2.5e-3, 1.25e-3],
            half_range: None,
            half_range_factor: 50.0,
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            max_subdivisions: 20_000,
            extrapolation_tol: 1e-5,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.eta_schedule.is_empty() {
            return Err(Error::Config("eta schedule is empty".into()));
        }
        if self
            .eta_schedule
            .iter()
            .any(|&e| !(e > 0.0 && e.is_finite()))
        {
            return Err(Error::Config("eta schedule must be positive".into()));
        }
        if self.eta_schedule.windows(2).any(|w| !(w[0] > w[1])) {
            return Err(Error::Config(
                "eta schedule must be strictly decreasing".into(),
            ));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.extrapolation_tol > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if !(self.half_range_factor > 10.0) {
            return Err(Error::Config("half-range factor must exceed 10".into()));
        }
        Ok(())
    }

    fn options(&self) -> QuadOptions {
        QuadOptions {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }

    fn half_range_for(&self, q: &ResponseQuery) -> Result<f64> {
        let scale = q.duration.max(q.pole_scale());
        let m = self.half_range.unwrap_or(self.half_range_factor * scale);
        if !(m > 10.0 * scale) {
            return Err(Error::Config(format!(
                "half-range {m} must exceed 10 max(T, b) = {}",
                10.0 * scale
            )));
        }
        Ok(m)
    }
}

/// A quadrature value with its error bound (quadrature estimate plus the
/// analytic truncation tail).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regularized {
    pub eta: f64,
    pub value: Complex64,
    pub error: f64,
}

/// Response integral at finite pole shift:
/// `−(T³b²/(16π)) ∫_{−M}^{M} e^{−iEm} / [(m² + T²)(m − iη)²(m² + b²)] dm`.
pub fn response_quadrature(
    q: &ResponseQuery,
    eta: RegulatorEta,
    spec: &QuadratureSpec,
) -> Result<Regularized> {
    spec.validate()?;
    let t = q.duration;
    let b = q.pole_scale();
    let energy = q.energy;
    let eta = eta.get();
    let half_range = spec.half_range_for(q)?;
    let prefactor = -t * t * t * b * b / (16.0 * PI);
    let shift = Complex64::new(0.0, eta);

    let integrand = |m: f64| {
        let phase = Complex64::new(0.0, -energy * m).exp();
        let shifted = Complex64::new(m, 0.0) - shift;
        phase * prefactor / ((m * m + t * t) * (m * m + b * b) * shifted * shifted)
    };

    let near = t.min(b);
    let mut points = vec![-half_range, 0.0, half_range];
    for s in [near, 10.0 * near] {
        if s < half_range {
            points.push(s);
            points.push(-s);
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup();

    let est = integrate_with_breaks(integrand, &points, &spec.options())?;
    // |integrand| ≤ |prefactor|/m⁶ beyond the cut, on both sides
    let tail = 2.0 * prefactor.abs() / (5.0 * half_range.powi(5));
    Ok(Regularized {
        eta,
        value: est.value,
        error: est.error + tail,
    })
}

/// Regulator-extrapolated response.
#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    pub error: f64,
    /// Extrapolated imaginary part; vanishes in the limit.
    pub imaginary: f64,
    pub samples: Vec<Regularized>,
}

/// Least-squares polynomial of degree `min(2, n−1)` through `(x, y)`,
/// returned as coefficients `[c0, c1, c2]`.
fn polyfit(xs: &[f64], ys: &[f64]) -> [f64; 3] {
    let n = xs.len();
    let degree = (n - 1).min(2);
    let dim = degree + 1;
    let mut ata = [[0.0; 3]; 3];
    let mut aty = [0.0; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        let powers = [1.0, x, x * x];
        for i in 0..dim {
            aty[i] += powers[i] * y;
            for j in 0..dim {
                ata[i][j] += powers[i] * powers[j];
            }
        }
    }
    // Gaussian elimination with partial pivoting
    let mut aug = [[0.0; 4]; 3];
    for i in 0..dim {
        aug[i][..dim].copy_from_slice(&ata[i][..dim]);
        aug[i][3] = aty[i];
    }
    for col in 0..dim {
        let pivot = (col..dim)
            .max_by(|&a, &b| aug[a][col].abs().total_cmp(&aug[b][col].abs()))
            .unwrap();
        aug.swap(col, pivot);
        for row in col + 1..dim {
            let factor = aug[row][col] / aug[col][col];
            let pivot_row = aug[col];
            for (cell, &p) in aug[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *cell -= factor * p;
            }
        }
    }
    let mut coef = [0.0; 3];
    for i in (0..dim).rev() {
        let mut acc = aug[i][3];
        for j in i + 1..dim {
            acc -= aug[i][j] * coef[j];
        }
        coef[i] = acc / aug[i][i];
    }
    coef
}

fn eval_poly(c: &[f64; 3], x: f64) -> f64 {
    c[0] + x * (c[1] + x * c[2])
}

/// Evaluates [`response_quadrature`] along the shift schedule and extrapolates
/// to `η → 0` with a polynomial of degree ≤ 2.
///
/// The error estimate combines the fit residual, the spread between the
/// quadratic extrapolant and a linear one through the two smallest shifts,
/// and the largest quadrature error.
pub fn response_extrapolated(q: &ResponseQuery, spec: &QuadratureSpec) -> Result<Extrapolated> {
    spec.validate()?;
    if spec.eta_schedule.len() < 3 {
        return Err(Error::Config(
            "extrapolation needs at least three eta values".into(),
        ));
    }
    let scale = q.duration.min(q.pole_scale());
    let samples = spec
        .eta_schedule
        .iter()
        .map(|&rel| response_quadrature(q, RegulatorEta::new(rel * scale)?, spec))
        .collect::<Result<Vec<_>>>()?;

    // fit in η/η_max for conditioning
    let eta_max = samples[0].eta;
    let xs: Vec<f64> = samples.iter().map(|s| s.eta / eta_max).collect();
    let re: Vec<f64> = samples.iter().map(|s| s.value.re).collect();
    let im: Vec<f64> = samples.iter().map(|s| s.value.im).collect();

    let fit_re = polyfit(&xs, &re);
    let fit_im = polyfit(&xs, &im);
    let value = fit_re[0];
    let imaginary = fit_im[0];

    let residual = (xs
        .iter()
        .zip(&re)
        .map(|(&x, &y)| (eval_poly(&fit_re, x) - y).powi(2))
        .sum::<f64>()
        / xs.len() as f64)
        .sqrt();
    let n = xs.len();
    let (x1, x2) = (xs[n - 1], xs[n - 2]);
    let linear = (re[n - 1] * x2 - re[n - 2] * x1) / (x2 - x1);
    let quad_error = samples.iter().map(|s| s.error).fold(0.0, f64::max);
    let error = residual.max((value - linear).abs()) + quad_error;

    let limit = 10.0 * spec.extrapolation_tol * value.abs().max(1e-12);
    if residual > limit {
        return Err(Error::ExtrapolationUnstable { residual, limit });
    }
    if imaginary.abs() > error + 1e-4 * value.abs() + 1e-8 {
        return Err(Error::ExtrapolationUnstable {
            residual: imaginary.abs(),
            limit: error + 1e-4 * value.abs() + 1e-8,
        });
    }
    Ok(Extrapolated {
        value,
        error,
        imaginary,
        samples,
    })
}

/// Returns `(∬ w(τ) w(τ') g(τ − τ') dτ dτ', (πT³/4) ∫ g(m)/(m² + T²) dm)` with
/// `w` the Lorentzian switching of timescale `T`.
///
/// Both integrals use `τ = (T/2) tan θ`, under which `w(τ) dτ = (T/2) dθ`, so
/// the double integral becomes a bounded one over `(−π/2, π/2)²`.
pub fn lorentzian_reduction_check<G: Fn(f64) -> f64>(g: G, duration: f64) -> Result<(f64, f64)> {
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(Error::domain(
            "duration",
            format!("T = {duration} must be positive"),
        ));
    }
    let half = 0.5 * duration;
    let inner_opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-11,
        max_subdivisions: 2_000,
    };
    let outer_opts = QuadOptions {
        abs_tol: 1e-13,
        rel_tol: 1e-10,
        max_subdivisions: 2_000,
    };

    let inner = |theta: f64| -> Result<f64> {
        let t = theta.tan();
        let x = half * t;
        // near ±π/2 the kernel peak is narrow in θ′; pin it with breakpoints
        // at fixed offsets in m = half·tan θ′
        let mut points = vec![-FRAC_PI_2, theta, FRAC_PI_2];
        for d in [0.01, 0.1, 1.0, 10.0] {
            points.push((t - d / half).atan());
            points.push((t + d / half).atan());
        }
        points.sort_by(f64::total_cmp);
        points.dedup();
        Ok(integrate_with_breaks(|th: f64| g(x - half * th.tan()), &points, &inner_opts)?.value)
    };
    // the quadrature closure cannot fail, so stash the first inner error
    let failure = std::cell::RefCell::new(None);
    let outer = integrate_with_breaks(
        |theta: f64| match inner(theta) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        &[-FRAC_PI_2, 0.0, FRAC_PI_2],
        &outer_opts,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let double = half * half * outer.value;

    let single = integrate_with_breaks(
        |theta: f64| g(duration * theta.tan()),
        &[-FRAC_PI_2, 0.0, FRAC_PI_2],
        &outer_opts,
    )?;
    let single = PI * duration * duration / 4.0 * single.value;
    Ok((double, single))
}
