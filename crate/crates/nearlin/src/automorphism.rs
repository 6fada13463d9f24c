//! Modulus-exponentiating automorphisms of the complex field.
//!
//! For `z = r s` with `r = |z|` and `|s| = 1`, the map `eps_alpha` sends `z`
//! to `r^alpha s`, and its conjugating twin sends it to `r^alpha conj(s)`.
//! Both are multiplicative bijections, which is what the transported additions
//! below rely on.

use crate::error::{Error, Result};
use crate::tol;
use num_complex::Complex64;

pub type ComplexScalar = Complex64;

/// Unit phase of `z`; the phase of zero is taken as 1.
pub fn phase(z: ComplexScalar) -> ComplexScalar {
    let r = z.norm();
    if r < tol::ZERO_MODULUS {
        ComplexScalar::new(1.0, 0.0)
    } else {
        z / r
    }
}

/// `r^w` for `r > 0` and complex `w`.
pub(crate) fn real_pow(r: f64, w: ComplexScalar) -> ComplexScalar {
    if w.im == 0.0 {
        ComplexScalar::new(r.powf(w.re), 0.0)
    } else {
        (w * r.ln()).exp()
    }
}

/// Exponent of an automorphism, with the conjugation flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutoParam {
    alpha: ComplexScalar,
    conjugating: bool,
}

impl AutoParam {
    pub fn new(alpha: ComplexScalar, conjugating: bool) -> Result<Self> {
        if !alpha.re.is_finite() || !alpha.im.is_finite() || alpha.re.abs() < tol::MIN_REAL_PART {
            return Err(Error::DegenerateExponent {
                re: alpha.re,
                im: alpha.im,
            });
        }
        Ok(Self { alpha, conjugating })
    }

    pub fn power(alpha: ComplexScalar) -> Result<Self> {
        Self::new(alpha, false)
    }

    pub fn real(alpha: f64) -> Result<Self> {
        Self::new(ComplexScalar::new(alpha, 0.0), false)
    }

    pub fn conjugating(alpha: ComplexScalar) -> Result<Self> {
        Self::new(alpha, true)
    }

    pub fn alpha(&self) -> ComplexScalar {
        self.alpha
    }

    pub fn is_conjugating(&self) -> bool {
        self.conjugating
    }

    pub fn is_real(&self) -> bool {
        self.alpha.im == 0.0 && !self.conjugating
    }

    pub fn apply(&self, z: ComplexScalar) -> ComplexScalar {
        let r = z.norm();
        if r < tol::ZERO_MODULUS {
            return ComplexScalar::new(0.0, 0.0);
        }
        let s = z / r;
        let s = if self.conjugating { s.conj() } else { s };
        real_pow(r, self.alpha) * s
    }

    pub fn inverse(&self) -> Self {
        let a = self.alpha;
        let im = if self.conjugating { a.im } else { -a.im };
        Self {
            alpha: ComplexScalar::new(1.0, im) / a.re,
            conjugating: self.conjugating,
        }
    }

    /// `eps^{-1}(eps(a) + eps(b))`.
    pub fn add(&self, a: ComplexScalar, b: ComplexScalar) -> ComplexScalar {
        self.sum_unchecked(&[a, b])
    }

    /// Transported sum of a finite family.
    ///
    /// The family is rescaled by a real reference modulus before mapping, so
    /// large exponents do not overflow; multiplicativity undoes the scaling.
    pub fn sum(&self, values: &[ComplexScalar]) -> Result<ComplexScalar> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        Ok(self.sum_unchecked(values))
    }

    fn sum_unchecked(&self, values: &[ComplexScalar]) -> ComplexScalar {
        let Some(c) = reference_modulus(values, self.alpha.re > 0.0) else {
            return ComplexScalar::new(0.0, 0.0);
        };
        let acc: ComplexScalar = values.iter().map(|&z| self.apply(z / c)).sum();
        self.inverse().apply(acc) * c
    }
}

/// Largest modulus when `largest`, else smallest nonzero modulus.
fn reference_modulus(values: &[ComplexScalar], largest: bool) -> Option<f64> {
    let moduli = values
        .iter()
        .map(|z| z.norm())
        .filter(|&r| r >= tol::ZERO_MODULUS);
    if largest {
        moduli.reduce(f64::max)
    } else {
        moduli.reduce(f64::min)
    }
}

pub fn eps_apply(param: &AutoParam, z: ComplexScalar) -> ComplexScalar {
    param.apply(z)
}

pub fn eps_invert(param: &AutoParam) -> AutoParam {
    param.inverse()
}

pub fn deformed_add(param: &AutoParam, a: ComplexScalar, b: ComplexScalar) -> ComplexScalar {
    param.add(a, b)
}

pub fn alpha_sum(param: &AutoParam, values: &[ComplexScalar]) -> Result<ComplexScalar> {
    param.sum(values)
}
