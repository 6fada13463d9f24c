//! The complex field with addition transported through `eps_{1/p}`.
//!
//! Multiplication stays ordinary. Integers, modulus, conjugate and the real
//! and imaginary parts are the images of their classical counterparts under
//! `psi = eps_{1/p}`, so every classical identity carries over verbatim.

use crate::automorphism::{AutoParam, ComplexScalar};
use crate::error::{Error, Result};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformedLine {
    p: f64,
    psi: AutoParam,
    psi_inv: AutoParam,
}

impl DeformedLine {
    pub fn new(p: f64) -> Result<Self> {
        let psi_inv = AutoParam::real(p)?;
        Ok(Self {
            p,
            psi: psi_inv.inverse(),
            psi_inv,
        })
    }

    /// Line whose addition is `+_alpha`; only real exponents are allowed.
    pub fn from_param(param: &AutoParam) -> Result<Self> {
        if !param.is_real() {
            return Err(Error::NonRealLine);
        }
        Self::new(param.alpha().re)
    }

    pub fn exponent(&self) -> f64 {
        self.p
    }

    /// `eps_p`, which carries line arithmetic to ordinary arithmetic.
    pub fn transport(&self) -> &AutoParam {
        &self.psi_inv
    }

    pub fn psi(&self, a: ComplexScalar) -> ComplexScalar {
        self.psi.apply(a)
    }

    pub fn psi_inv(&self, a: ComplexScalar) -> ComplexScalar {
        self.psi_inv.apply(a)
    }

    pub fn add(&self, a: ComplexScalar, b: ComplexScalar) -> ComplexScalar {
        self.psi_inv.add(a, b)
    }

    pub fn sub(&self, a: ComplexScalar, b: ComplexScalar) -> ComplexScalar {
        self.psi_inv.add(a, -b)
    }

    pub fn sum(&self, values: &[ComplexScalar]) -> ComplexScalar {
        self.psi_inv
            .sum(values)
            .unwrap_or(ComplexScalar::new(0.0, 0.0))
    }

    pub fn embed_int(&self, m: i64) -> ComplexScalar {
        self.psi(ComplexScalar::new(m as f64, 0.0))
    }

    /// Image of `|psi^{-1}(a)|`, which is `|a|` itself.
    pub fn modulus(&self, a: ComplexScalar) -> f64 {
        self.psi(ComplexScalar::new(self.psi_inv(a).norm(), 0.0)).re
    }

    pub fn conj(&self, a: ComplexScalar) -> ComplexScalar {
        self.psi(self.psi_inv(a).conj())
    }

    pub fn re(&self, a: ComplexScalar) -> f64 {
        self.psi(ComplexScalar::new(self.psi_inv(a).re, 0.0)).re
    }

    pub fn im(&self, a: ComplexScalar) -> f64 {
        self.psi(ComplexScalar::new(self.psi_inv(a).im, 0.0)).re
    }

    /// The line's imaginary unit; `eps` fixes `i`.
    pub fn imaginary_unit(&self) -> ComplexScalar {
        self.psi(ComplexScalar::i())
    }

    /// Order on the real axis: `b ⊖ a` is nonnegative.
    pub fn leq(&self, a: f64, b: f64) -> bool {
        self.sub(b.into(), a.into()).re >= -tol::ORDER_SLACK
    }

    /// Positive square root with respect to ordinary multiplication.
    pub fn sqrt_pos(&self, a: ComplexScalar) -> Result<f64> {
        let scale = a.norm().max(1.0);
        if a.re < 0.0 || a.im.abs() > 1e-12 * scale {
            return Err(Error::NegativeRoot { value: a.re });
        }
        Ok(a.re.sqrt())
    }
}
