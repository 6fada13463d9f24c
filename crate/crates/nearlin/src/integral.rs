//! Transported integrals on a uniform midpoint grid.
//!
//! `^alpha∫ f = eps_alpha^{-1}(∫ eps_alpha ∘ f)`; multiplicativity turns
//! the midpoint sum `h sum eps_alpha(f_k)` into an alpha-sum of
//! `eps_alpha^{-1}(h) f_k`.

use crate::automorphism::{AutoParam, ComplexScalar};
use crate::error::{Error, Result};
use crate::limit::{inf_sum, neg_inf_sum, Direction};
use crate::lp::scaled_power_norm;

/// Values of a function at the midpoints `a + (k - 1/2) h`, `h = (b - a)/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    a: f64,
    b: f64,
    values: Vec<ComplexScalar>,
}

impl SampledFunction {
    pub fn new(a: f64, b: f64, values: Vec<ComplexScalar>) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Sampling(format!(
                "interval [{a}, {b}] is empty or unbounded"
            )));
        }
        if values.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { a, b, values })
    }

    pub fn from_fn(a: f64, b: f64, n: usize, f: impl Fn(f64) -> ComplexScalar) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let h = (b - a) / n as f64;
        Self::new(a, b, (1..=n).map(|k| f(a + (k as f64 - 0.5) * h)).collect())
    }

    /// Rebuilds the interval from midpoints, which must be evenly spaced.
    pub fn from_midpoints(xs: &[f64], values: Vec<ComplexScalar>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: xs.len(),
                found: values.len(),
            });
        }
        if xs.len() < 2 {
            return Err(Error::Sampling(
                "need at least two midpoints to infer the step".into(),
            ));
        }
        let h = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        if h.is_nan() || h <= 0.0 {
            return Err(Error::Sampling("midpoints must increase".into()));
        }
        for (k, &x) in xs.iter().enumerate() {
            let want = xs[0] + k as f64 * h;
            if (x - want).abs() > 1e-9 * h.max(want.abs()) {
                return Err(Error::Sampling(format!(
                    "midpoint {k} at {x} breaks the uniform step {h}"
                )));
            }
        }
        Self::new(xs[0] - h / 2.0, xs[xs.len() - 1] + h / 2.0, values)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / self.values.len() as f64
    }

    pub fn values(&self) -> &[ComplexScalar] {
        &self.values
    }

    pub fn midpoints(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.step();
        (1..=self.values.len()).map(move |k| self.a + (k as f64 - 0.5) * h)
    }

    fn paired(&self, g: &SampledFunction) -> Result<Vec<ComplexScalar>> {
        if self.values.len() != g.values.len() || self.interval() != g.interval() {
            return Err(Error::Sampling(
                "functions are sampled on different grids".into(),
            ));
        }
        Ok(self
            .values
            .iter()
            .zip(&g.values)
            .map(|(x, y)| x * y.conj())
            .collect())
    }
}

pub fn alpha_integral(param: &AutoParam, f: &SampledFunction) -> Result<ComplexScalar> {
    let w = param.inverse().apply(ComplexScalar::new(f.step(), 0.0));
    let terms: Vec<ComplexScalar> = f.values.iter().map(|&z| w * z).collect();
    param.sum(&terms)
}

/// `eps_{1/p}(∫ eps_{p/2}(f conj g))`.
pub fn lp_pairing(f: &SampledFunction, g: &SampledFunction, p: f64) -> Result<ComplexScalar> {
    let half = AutoParam::real(0.5)?;
    let prod: Vec<ComplexScalar> = f.paired(g)?.into_iter().map(|z| half.apply(z)).collect();
    let ff = SampledFunction::new(f.a, f.b, prod)?;
    alpha_integral(&AutoParam::real(p)?, &ff)
}

/// `(∫ |f|^p)^{1/p}`.
pub fn lp_norm(f: &SampledFunction, p: f64) -> Result<f64> {
    if p <= 0.0 || !p.is_finite() {
        return Err(Error::UnsupportedExponent { p });
    }
    let scale = f.step().powf(1.0 / p);
    Ok(scale * scaled_power_norm(f.values.iter().map(|z| z.norm()), p))
}

pub fn linf_pairing(
    f: &SampledFunction,
    g: &SampledFunction,
    dir: &Direction,
) -> Result<ComplexScalar> {
    let root = AutoParam::real(0.5)?;
    Ok(root.apply(inf_sum(&f.paired(g)?, dir)))
}

pub fn lneginf_pairing(
    f: &SampledFunction,
    g: &SampledFunction,
    dir: &Direction,
) -> Result<ComplexScalar> {
    let root = AutoParam::real(0.5)?;
    Ok(root.apply(neg_inf_sum(&f.paired(g)?, dir)))
}

pub fn linf_norm(f: &SampledFunction) -> f64 {
    f.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn lneginf_seminorm(f: &SampledFunction) -> f64 {
    f.values
        .iter()
        .map(|z| z.norm())
        .reduce(f64::min)
        .unwrap_or(0.0)
}
