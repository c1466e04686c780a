//! Globally adaptive 21-point Gauss-Kronrod quadrature.
//!
//! The interval with the largest local error estimate is bisected until the
//! summed estimate meets `max(abs_tol, rel_tol·|I|)`. The local estimate is the
//! plain `|K21 − G10|` difference, which is pessimistic for smooth integrands
//! but never optimistic.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

// Tabulated to 33 digits as published.
// Kronrod abscissae on [0, 1); odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_715_583_714_958,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Values the integrator can accumulate.
pub trait Integrand:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 5000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

/// One Gauss-Kronrod panel: (Kronrod value, |K − G|).
pub fn gauss_kronrod_21<T: Integrand, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = T::zero();
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    (kronrod, (kronrod - gauss).magnitude())
}

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<T: Integrand, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<Estimate<T>> {
    integrate_with_breaks(f, &[a, b], opts)
}

/// Integrates `f` over `[points[0], points[last]]`, starting from one panel per
/// consecutive pair of `points`. Breakpoints belong at kinks or near-singular
/// spots of the integrand.
pub fn integrate_with_breaks<T: Integrand, F: Fn(f64) -> T>(
    f: F,
    points: &[f64],
    opts: &QuadOptions,
) -> Result<Estimate<T>> {
    if points.len() < 2 {
        return Err(Error::domain(
            "quadrature breakpoints",
            "need at least two points",
        ));
    }
    if points.iter().any(|p| !p.is_finite()) || points.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain(
            "quadrature breakpoints",
            "points must be finite and strictly increasing",
        ));
    }
    if !(opts.abs_tol > 0.0 && opts.rel_tol > 0.0) {
        return Err(Error::domain(
            "quadrature tolerance",
            "tolerances must be positive",
        ));
    }

    let mut heap = BinaryHeap::new();
    // panels too narrow to split further
    let mut settled: Vec<Panel<T>> = Vec::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        let (value, error) = gauss_kronrod_21(&f, w[0], w[1]);
        evaluations += 21;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }

    let mut subdivisions = 0;
    let mut running_error: f64 = heap.iter().map(|p| p.error).sum();
    let mut running_value = heap.iter().fold(T::zero(), |v, p| v + p.value);
    loop {
        if !running_value.magnitude().is_finite() {
            return Err(Error::NonFinite("quadrature sum".into()));
        }
        if running_error <= opts.abs_tol.max(opts.rel_tol * running_value.magnitude()) {
            // resum to shed drift from the incremental updates
            let (value, error) = heap
                .iter()
                .chain(settled.iter())
                .fold((T::zero(), 0.0), |(v, e), p| (v + p.value, e + p.error));
            if error <= opts.abs_tol.max(opts.rel_tol * value.magnitude()) {
                return Ok(Estimate {
                    value,
                    error,
                    evaluations,
                });
            }
            running_value = value;
            running_error = error;
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::Convergence {
                subdivisions,
                error: running_error,
            });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b)
            || (worst.b - worst.a) <= 64.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE)
        {
            settled.push(worst);
            continue;
        }
        if subdivisions >= opts.max_subdivisions {
            return Err(Error::Convergence {
                subdivisions,
                error: running_error,
            });
        }
        subdivisions += 1;
        running_value = running_value - worst.value;
        running_error -= worst.error;
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gauss_kronrod_21(&f, a, b);
            evaluations += 21;
            running_value = running_value + value;
            running_error += error;
            heap.push(Panel { a, b, value, error });
        }
        running_error = running_error.max(0.0);
    }
}
