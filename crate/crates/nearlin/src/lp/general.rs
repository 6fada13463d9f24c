use super::{check_dim, DeformedVector, NearInnerProductSpace};
use crate::automorphism::{AutoParam, ComplexScalar};
use crate::error::{Error, Result};
use crate::line::DeformedLine;

/// Pairing assembled from an outer exponent `lambda`, a block exponent `phi`
/// and per-coordinate scalar-action exponents `rho_b`.
///
/// Coordinate `b` is added with `+_{phi/rho_b}` and scaled by
/// `eps_{rho_b}(alpha)`. Each block of coordinates contributes
/// `eps_{1/phi}(sum eps_{phi/rho_b}(u_b) conj eps_{phi/rho_b}(v_b))`, and the
/// block values are combined with `+_lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingSpec {
    lambda: AutoParam,
    phi: AutoParam,
    rho: Vec<AutoParam>,
    sigma: Vec<AutoParam>,
    blocks: Vec<Vec<usize>>,
    line: DeformedLine,
}

impl PairingSpec {
    /// One block per coordinate.
    pub fn new(lambda: f64, phi: f64, rho: &[f64]) -> Result<Self> {
        let blocks = (0..rho.len()).map(|b| vec![b]).collect();
        Self::with_blocks(lambda, phi, rho, blocks)
    }

    pub fn with_blocks(
        lambda: f64,
        phi: f64,
        rho: &[f64],
        blocks: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if rho.is_empty() {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; rho.len()];
        for &b in blocks.iter().flatten() {
            if b >= rho.len() || seen[b] {
                return Err(Error::Invalid(format!(
                    "blocks must partition 0..{} (offending index {b})",
                    rho.len()
                )));
            }
            seen[b] = true;
        }
        if seen.iter().any(|s| !s) || blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::Invalid(
                "blocks must partition every coordinate".into(),
            ));
        }
        let rho = rho
            .iter()
            .map(|&r| AutoParam::real(r))
            .collect::<Result<Vec<_>>>()?;
        let sigma = rho
            .iter()
            .map(|r| AutoParam::real(phi / r.alpha().re))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            lambda: AutoParam::real(lambda)?,
            phi: AutoParam::real(phi)?,
            rho,
            sigma,
            blocks,
            line: DeformedLine::new(lambda)?,
        })
    }

    /// The `l^p` instance: `lambda = phi = p`, `rho = 2`.
    pub fn lp(dim: usize, p: f64) -> Result<Self> {
        Self::new(p, p, &vec![2.0; dim])
    }

    /// Two coordinates, outer `+_5`, second coordinate read through a cube root.
    pub fn mixed_cubic() -> Self {
        Self::new(5.0, 1.0, &[1.0, 3.0]).expect("valid exponents")
    }

    pub fn lambda(&self) -> f64 {
        self.lambda.alpha().re
    }

    pub fn phi(&self) -> f64 {
        self.phi.alpha().re
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `eps_{phi/rho_b}` on every coordinate: the picture where addition is ordinary.
    pub fn to_classical(&self, u: &DeformedVector) -> Vec<ComplexScalar> {
        u.coords()
            .iter()
            .zip(&self.sigma)
            .map(|(&z, s)| s.apply(z))
            .collect()
    }

    pub fn from_classical(&self, x: &[ComplexScalar]) -> DeformedVector {
        DeformedVector::new(
            x.iter()
                .zip(&self.sigma)
                .map(|(&z, s)| s.inverse().apply(z))
                .collect(),
        )
    }

    pub fn general_pairing(&self, u: &DeformedVector, v: &DeformedVector) -> Result<ComplexScalar> {
        self.pairing(u, v)
    }
}

impl NearInnerProductSpace for PairingSpec {
    fn dim(&self) -> usize {
        self.rho.len()
    }

    fn line(&self) -> &DeformedLine {
        &self.line
    }

    fn vec_add(&self, u: &DeformedVector, v: &DeformedVector) -> Result<DeformedVector> {
        check_dim(self.dim(), u)?;
        check_dim(self.dim(), v)?;
        Ok(DeformedVector::new(
            (0..self.dim())
                .map(|b| self.sigma[b].add(u.coords()[b], v.coords()[b]))
                .collect(),
        ))
    }

    fn scalar_mul(&self, alpha: ComplexScalar, u: &DeformedVector) -> Result<DeformedVector> {
        check_dim(self.dim(), u)?;
        Ok(DeformedVector::new(
            u.coords()
                .iter()
                .zip(&self.rho)
                .map(|(&z, r)| r.apply(alpha) * z)
                .collect(),
        ))
    }

    fn pairing(&self, u: &DeformedVector, v: &DeformedVector) -> Result<ComplexScalar> {
        check_dim(self.dim(), u)?;
        check_dim(self.dim(), v)?;
        let (x, y) = (self.to_classical(u), self.to_classical(v));
        let phi_inv = self.phi.inverse();
        let per_block: Vec<ComplexScalar> = self
            .blocks
            .iter()
            .map(|blk| phi_inv.apply(blk.iter().map(|&b| x[b] * y[b].conj()).sum()))
            .collect();
        self.lambda.sum(&per_block)
    }
}
