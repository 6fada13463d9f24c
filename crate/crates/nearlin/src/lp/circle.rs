//! Unit spheres of two-dimensional real slices, traced point by point.

use super::{DeformedVector, NearInnerProductSpace};
use crate::automorphism::ComplexScalar;
use crate::error::{Error, Result};
use std::f64::consts::TAU;

const MAX_BISECTIONS: usize = 64;

/// A point `x` on the unit sphere about a center, with its check residual
/// `| ||x ⊖ c|| - 1 |`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint {
    pub x: [f64; 2],
    pub residual: f64,
}

fn real2(x: [f64; 2]) -> DeformedVector {
    DeformedVector::from_real(&x)
}

/// Distance from `center` to `x` in the induced norm.
pub fn distance<S: NearInnerProductSpace + ?Sized>(
    space: &S,
    center: [f64; 2],
    x: [f64; 2],
) -> Result<f64> {
    space.induced_norm(&space.vec_sub(&real2(x), &real2(center))?)
}

/// `samples` points of `{x : ||x ⊖ c|| = 1}`, one per ray `c ⊕ t·d` with `d`
/// at equally spaced angles, each found by bisection on `t`.
pub fn trace_unit_circle<S: NearInnerProductSpace + ?Sized>(
    space: &S,
    center: [f64; 2],
    samples: usize,
) -> Result<Vec<CirclePoint>> {
    if space.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: space.dim(),
        });
    }
    if samples == 0 {
        return Err(Error::Empty);
    }
    let c = real2(center);
    let point_at = |d: &DeformedVector, t: f64| -> Result<DeformedVector> {
        space.vec_add(&c, &space.scalar_mul(ComplexScalar::new(t, 0.0), d)?)
    };
    let excess = |d: &DeformedVector, t: f64| -> Result<f64> {
        Ok(space.induced_norm(&space.vec_sub(&point_at(d, t)?, &c)?)? - 1.0)
    };

    (0..samples)
        .map(|k| {
            let phi = TAU * k as f64 / samples as f64;
            let d = real2([phi.cos(), phi.sin()]);
            let (mut lo, mut hi) = (0.0, 1.0);
            while excess(&d, hi)? < 0.0 {
                hi *= 2.0;
                if hi > 1e150 {
                    return Err(Error::Invalid(
                        "unit sphere is unbounded along a ray".into(),
                    ));
                }
            }
            for _ in 0..MAX_BISECTIONS {
                let mid = 0.5 * (lo + hi);
                if excess(&d, mid)? < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let t = 0.5 * (lo + hi);
            let p = point_at(&d, t)?;
            let x = [p.coords()[0].re, p.coords()[1].re];
            let residual = (distance(space, center, x)? - 1.0).abs();
            Ok(CirclePoint { x, residual })
        })
        .collect()
}
