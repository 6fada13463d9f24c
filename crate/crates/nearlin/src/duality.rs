//! Dual functionals on coordinate near-spaces `F^{sigma, rho}`.
//!
//! A functional is stored as its values on the canonical basis and is
//! evaluated with ordinary addition on `F`.

use crate::automorphism::{AutoParam, ComplexScalar};
use crate::error::{Error, Result};
use crate::lp::{DeformedVector, LpSpace, NearInnerProductSpace};

/// `F^n` where coordinate `i` adds with `+_{sigma_i}` and scales by `eps_{rho_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteNVS {
    sigma: Vec<AutoParam>,
    rho: Vec<AutoParam>,
}

impl FiniteNVS {
    pub fn new(sigma_exps: &[f64], rho_exps: &[f64]) -> Result<Self> {
        if sigma_exps.is_empty() {
            return Err(Error::Empty);
        }
        if sigma_exps.len() != rho_exps.len() {
            return Err(Error::DimensionMismatch {
                expected: sigma_exps.len(),
                found: rho_exps.len(),
            });
        }
        let params = |xs: &[f64]| {
            xs.iter()
                .map(|&x| AutoParam::real(x))
                .collect::<Result<Vec<_>>>()
        };
        Ok(Self {
            sigma: params(sigma_exps)?,
            rho: params(rho_exps)?,
        })
    }

    /// Ordinary `F^n`.
    pub fn standard(dim: usize) -> Result<Self> {
        Self::new(&vec![1.0; dim], &vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    pub fn basis(&self, j: usize) -> Result<Vec<ComplexScalar>> {
        self.check_index(j)?;
        let mut e = vec![ComplexScalar::new(0.0, 0.0); self.dim()];
        e[j] = ComplexScalar::new(1.0, 0.0);
        Ok(e)
    }

    pub fn vec_add(&self, u: &[ComplexScalar], v: &[ComplexScalar]) -> Result<Vec<ComplexScalar>> {
        self.check_len(u.len())?;
        self.check_len(v.len())?;
        Ok((0..self.dim())
            .map(|i| self.sigma[i].add(u[i], v[i]))
            .collect())
    }

    pub fn scalar_mul(
        &self,
        alpha: ComplexScalar,
        u: &[ComplexScalar],
    ) -> Result<Vec<ComplexScalar>> {
        self.check_len(u.len())?;
        Ok(u.iter()
            .zip(&self.rho)
            .map(|(&z, r)| r.apply(alpha) * z)
            .collect())
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: n,
            });
        }
        Ok(())
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.dim(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualFunctional {
    pub coeffs: Vec<ComplexScalar>,
}

impl DualFunctional {
    pub fn new(coeffs: Vec<ComplexScalar>) -> Self {
        Self { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![ComplexScalar::new(0.0, 0.0); dim])
    }

    /// `sum_j c_j f_j`, coefficient-wise.
    pub fn combine(weights: &[ComplexScalar], fs: &[DualFunctional]) -> Result<Self> {
        if weights.len() != fs.len() {
            return Err(Error::DimensionMismatch {
                expected: fs.len(),
                found: weights.len(),
            });
        }
        let Some(first) = fs.first() else {
            return Err(Error::Empty);
        };
        let mut out = Self::zero(first.coeffs.len());
        for (w, f) in weights.iter().zip(fs) {
            if f.coeffs.len() != out.coeffs.len() {
                return Err(Error::DimensionMismatch {
                    expected: out.coeffs.len(),
                    found: f.coeffs.len(),
                });
            }
            for (o, c) in out.coeffs.iter_mut().zip(&f.coeffs) {
                *o += w * c;
            }
        }
        Ok(out)
    }
}

pub fn dual_basis(space: &FiniteNVS) -> Vec<DualFunctional> {
    (0..space.dim())
        .map(|j| DualFunctional::new(space.basis(j).expect("index in range")))
        .collect()
}

pub fn evaluate(f: &DualFunctional, coords: &[ComplexScalar]) -> Result<ComplexScalar> {
    if f.coeffs.len() != coords.len() {
        return Err(Error::DimensionMismatch {
            expected: f.coeffs.len(),
            found: coords.len(),
        });
    }
    Ok(f.coeffs.iter().zip(coords).map(|(c, v)| c * v).sum())
}

/// Dual-basis functionals on the coordinates outside `indices`.
pub fn annihilator_basis(space: &FiniteNVS, indices: &[usize]) -> Result<Vec<DualFunctional>> {
    let mut inside = vec![false; space.dim()];
    for &j in indices {
        space.check_index(j)?;
        inside[j] = true;
    }
    Ok(dual_basis(space)
        .into_iter()
        .zip(inside)
        .filter_map(|(f, i)| (!i).then_some(f))
        .collect())
}

/// `eta(v)(f) = f(v)`.
pub fn double_dual_eval(
    space: &FiniteNVS,
    v: &[ComplexScalar],
    f: &DualFunctional,
) -> Result<ComplexScalar> {
    space.check_len(v.len())?;
    evaluate(f, v)
}

/// `v ↦ <v, u>` on an `l^p` space.
#[derive(Debug, Clone)]
pub struct IpDualFunctional {
    space: LpSpace,
    u: DeformedVector,
}

impl IpDualFunctional {
    pub fn eval(&self, v: &DeformedVector) -> Result<ComplexScalar> {
        self.space.pairing(v, &self.u)
    }

    pub fn representer(&self) -> &DeformedVector {
        &self.u
    }

    /// Whether the functional vanishes on every vector of `set`, judged in the
    /// line's classical picture relative to the sizes involved.
    pub fn vanishes_on(&self, set: &[DeformedVector], tol: f64) -> Result<bool> {
        let line = self.space.line();
        let size = |w: &DeformedVector| -> Result<f64> {
            Ok(line.psi_inv(self.space.pairing(w, w)?).norm().sqrt())
        };
        let su = size(&self.u)?;
        for c in set {
            let x = line.psi_inv(self.eval(c)?).norm();
            if x > tol * (su * size(c)?).max(f64::MIN_POSITIVE) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn ip_dual_functional(space: &LpSpace, u: &DeformedVector) -> Result<IpDualFunctional> {
    space.vector(u.coords().to_vec())?;
    Ok(IpDualFunctional {
        space: space.clone(),
        u: u.clone(),
    })
}

/// The candidates `u` whose functional `<-, u>` vanishes on all of `set`.
pub fn orthogonal_complement(
    space: &LpSpace,
    set: &[DeformedVector],
    candidates: &[DeformedVector],
    tol: f64,
) -> Result<Vec<DeformedVector>> {
    let mut out = Vec::new();
    for u in candidates {
        if ip_dual_functional(space, u)?.vanishes_on(set, tol)? {
            out.push(u.clone());
        }
    }
    Ok(out)
}
