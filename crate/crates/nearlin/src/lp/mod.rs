//! Finite-dimensional near-spaces with transported inner products.
//!
//! A space here is `F^n` with coordinate-wise deformed addition and a scalar
//! action through an automorphism. The pairing takes values in a deformed
//! line, and the induced norm is its square root there.

mod circle;
mod general;
mod geometry;
mod limit;
mod mixed;

pub use circle::{distance, trace_unit_circle, CirclePoint};
pub use general::PairingSpec;
pub use geometry::{angle, check_identities, gram_schmidt, pythagoras_residual, IdentityReport};
pub use limit::{linf_norm, linf_pairing, lneginf_pairing, lneginf_seminorm};
pub use mixed::{lpq_limit_norm, lpq_norm, lpq_pairing, ComplexMatrix, Exponent};

use crate::automorphism::{AutoParam, ComplexScalar};
use crate::error::{Error, Result};
use crate::line::DeformedLine;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Coordinates of a vector; serialized as a list of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedVector {
    coords: Vec<ComplexScalar>,
}

impl DeformedVector {
    pub fn new(coords: Vec<ComplexScalar>) -> Self {
        Self { coords }
    }

    pub fn from_real(xs: &[f64]) -> Self {
        Self::new(xs.iter().map(|&x| ComplexScalar::new(x, 0.0)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![ComplexScalar::new(0.0, 0.0); n])
    }

    pub fn coords(&self) -> &[ComplexScalar] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn into_coords(self) -> Vec<ComplexScalar> {
        self.coords
    }
}

impl From<Vec<ComplexScalar>> for DeformedVector {
    fn from(coords: Vec<ComplexScalar>) -> Self {
        Self::new(coords)
    }
}

impl Serialize for DeformedVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coords.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DeformedVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        Ok(Self::new(
            pairs
                .into_iter()
                .map(|[re, im]| ComplexScalar::new(re, im))
                .collect(),
        ))
    }
}

/// Operations shared by every transported inner-product space.
pub trait NearInnerProductSpace {
    fn dim(&self) -> usize;

    /// Line in which the pairing takes values.
    fn line(&self) -> &DeformedLine;

    fn vec_add(&self, u: &DeformedVector, v: &DeformedVector) -> Result<DeformedVector>;

    fn scalar_mul(&self, alpha: ComplexScalar, u: &DeformedVector) -> Result<DeformedVector>;

    fn pairing(&self, u: &DeformedVector, v: &DeformedVector) -> Result<ComplexScalar>;

    /// Every `eps` is odd, so the additive inverse is the ordinary negation.
    fn negate(&self, u: &DeformedVector) -> DeformedVector {
        DeformedVector::new(u.coords().iter().map(|z| -z).collect())
    }

    fn vec_sub(&self, u: &DeformedVector, v: &DeformedVector) -> Result<DeformedVector> {
        self.vec_add(u, &self.negate(v))
    }

    fn vec_sum(&self, vs: &[DeformedVector]) -> Result<DeformedVector> {
        let mut acc = DeformedVector::zeros(self.dim());
        for v in vs {
            acc = self.vec_add(&acc, v)?;
        }
        Ok(acc)
    }

    fn induced_norm(&self, u: &DeformedVector) -> Result<f64> {
        let uu = self.pairing(u, u)?;
        self.line().sqrt_pos(uu)
    }

    fn zero(&self) -> DeformedVector {
        DeformedVector::zeros(self.dim())
    }

    fn basis(&self, j: usize) -> Result<DeformedVector> {
        let n = self.dim();
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, dim: n });
        }
        let mut v = DeformedVector::zeros(n);
        v.coords[j] = ComplexScalar::new(1.0, 0.0);
        Ok(v)
    }
}

pub(crate) fn check_dim(dim: usize, u: &DeformedVector) -> Result<()> {
    if u.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: u.len(),
        });
    }
    Ok(())
}

pub(crate) fn check_same(u: &DeformedVector, v: &DeformedVector) -> Result<()> {
    check_dim(u.len(), v)
}

/// `W(n)` with coordinates added by `+_{p/2}`, scalars acting through `eps_2`,
/// and pairing `eps_{1/p}(sum eps_{p/2}(u_i conj v_i))`.
///
/// Pulling back by `x_i = eps_{p/2}(u_i)` turns it into `C^n` with the
/// Hermitian dot product, and `<u, u>` is the classical `l^p` norm.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSpace {
    dim: usize,
    p: f64,
    line: DeformedLine,
    coord: AutoParam,
    action: AutoParam,
    half: AutoParam,
}

impl LpSpace {
    pub fn new(dim: usize, p: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty);
        }
        Ok(Self {
            dim,
            p,
            line: DeformedLine::new(p)?,
            coord: AutoParam::real(p / 2.0)?,
            action: AutoParam::real(2.0)?,
            half: AutoParam::real(0.5)?,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn vector(&self, coords: Vec<ComplexScalar>) -> Result<DeformedVector> {
        let v = DeformedVector::new(coords);
        check_dim(self.dim, &v)?;
        Ok(v)
    }

    /// `eps_{p/2}` applied coordinate-wise: the classical picture of `u`.
    pub fn to_classical(&self, u: &DeformedVector) -> Vec<ComplexScalar> {
        u.coords().iter().map(|&z| self.coord.apply(z)).collect()
    }

    pub fn from_classical(&self, x: &[ComplexScalar]) -> DeformedVector {
        let inv = self.coord.inverse();
        DeformedVector::new(x.iter().map(|&z| inv.apply(z)).collect())
    }

    /// `(sum |u_i|^p)^{1/p}`, computed with the largest modulus factored out.
    pub fn lp_norm(&self, u: &DeformedVector) -> Result<f64> {
        check_dim(self.dim, u)?;
        if self.p <= 0.0 {
            return Err(Error::UnsupportedExponent { p: self.p });
        }
        Ok(scaled_power_norm(
            u.coords().iter().map(|z| z.norm()),
            self.p,
        ))
    }

    pub fn gram_schmidt(&self, vectors: &[DeformedVector]) -> Result<Vec<DeformedVector>> {
        gram_schmidt(self, vectors)
    }

    pub fn angle(&self, u: &DeformedVector, v: &DeformedVector) -> Result<f64> {
        angle(self, u, v)
    }
}

/// `(sum m^p)^{1/p}` for nonnegative `m`, `p > 0`.
pub(crate) fn scaled_power_norm(moduli: impl Iterator<Item = f64> + Clone, p: f64) -> f64 {
    let top = moduli.clone().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    let s: f64 = moduli.map(|m| (m / top).powf(p)).sum();
    top * s.powf(1.0 / p)
}

impl NearInnerProductSpace for LpSpace {
    fn dim(&self) -> usize {
        self.dim
    }

    fn line(&self) -> &DeformedLine {
        &self.line
    }

    fn vec_add(&self, u: &DeformedVector, v: &DeformedVector) -> Result<DeformedVector> {
        check_dim(self.dim, u)?;
        check_dim(self.dim, v)?;
        Ok(DeformedVector::new(
            u.coords()
                .iter()
                .zip(v.coords())
                .map(|(&a, &b)| self.coord.add(a, b))
                .collect(),
        ))
    }

    fn scalar_mul(&self, alpha: ComplexScalar, u: &DeformedVector) -> Result<DeformedVector> {
        check_dim(self.dim, u)?;
        let a = self.action.apply(alpha);
        Ok(DeformedVector::new(
            u.coords().iter().map(|&z| a * z).collect(),
        ))
    }

    fn pairing(&self, u: &DeformedVector, v: &DeformedVector) -> Result<ComplexScalar> {
        check_dim(self.dim, u)?;
        check_dim(self.dim, v)?;
        // eps_{p/2} = eps_p after eps_{1/2}, so this is a +_p sum
        let terms: Vec<ComplexScalar> = u
            .coords()
            .iter()
            .zip(v.coords())
            .map(|(&a, &b)| self.half.apply(a * b.conj()))
            .collect();
        self.line.transport().sum(&terms)
    }

    fn induced_norm(&self, u: &DeformedVector) -> Result<f64> {
        if self.p <= 0.0 {
            return Err(Error::UnsupportedExponent { p: self.p });
        }
        let uu = self.pairing(u, u)?;
        self.line.sqrt_pos(uu)
    }
}
