//! Pairings and norms at the infinite ends of the `l^p` scale.

use super::{check_same, DeformedVector};
use crate::automorphism::{AutoParam, ComplexScalar};
use crate::error::Result;
use crate::limit::{inf_sum, neg_inf_sum, Direction};

fn products(u: &DeformedVector, v: &DeformedVector) -> Result<Vec<ComplexScalar>> {
    check_same(u, v)?;
    Ok(u.coords()
        .iter()
        .zip(v.coords())
        .map(|(a, b)| a * b.conj())
        .collect())
}

fn root(z: ComplexScalar) -> ComplexScalar {
    AutoParam::real(0.5).expect("nonzero exponent").apply(z)
}

/// `eps_{1/2}` of the infinite-limit sum of `u_i conj v_i`.
pub fn linf_pairing(
    u: &DeformedVector,
    v: &DeformedVector,
    dir: &Direction,
) -> Result<ComplexScalar> {
    Ok(root(inf_sum(&products(u, v)?, dir)))
}

pub fn lneginf_pairing(
    u: &DeformedVector,
    v: &DeformedVector,
    dir: &Direction,
) -> Result<ComplexScalar> {
    Ok(root(neg_inf_sum(&products(u, v)?, dir)))
}

pub fn linf_norm(u: &DeformedVector) -> f64 {
    u.coords().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Smallest modulus, zeros included.
pub fn lneginf_seminorm(u: &DeformedVector) -> f64 {
    u.coords()
        .iter()
        .map(|z| z.norm())
        .reduce(f64::min)
        .unwrap_or(0.0)
}
