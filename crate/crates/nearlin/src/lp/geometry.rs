//! Angles, orthonormalization and numerical checks of the classical laws.

use super::{check_dim, DeformedVector, NearInnerProductSpace};
use crate::automorphism::ComplexScalar;
use crate::error::{Error, Result};
use crate::line::DeformedLine;
use crate::tol;
use serde::Serialize;
use std::collections::BTreeMap;

/// `arccos(Re<u, v> / (|u| |v|))`, the real part and norms taken in the line.
pub fn angle<S: NearInnerProductSpace + ?Sized>(
    space: &S,
    u: &DeformedVector,
    v: &DeformedVector,
) -> Result<f64> {
    let (nu, nv) = (space.induced_norm(u)?, space.induced_norm(v)?);
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::Invalid("angle with a zero vector".into()));
    }
    let re = space.line().re(space.pairing(u, v)?);
    Ok((re / (nu * nv)).clamp(-1.0, 1.0).acos())
}

/// Orthonormalizes `vectors` in order.
///
/// A vector is rejected as dependent when its residual has induced norm below
/// `1e-10`, or when the residual is that small relative to the vector in the
/// line's classical picture (the second test is what catches round-off
/// residuals, whose induced norm is a high root of a tiny number).
pub fn gram_schmidt<S: NearInnerProductSpace + ?Sized>(
    space: &S,
    vectors: &[DeformedVector],
) -> Result<Vec<DeformedVector>> {
    orthonormalize(space, vectors, true)
}

fn orthonormalize<S: NearInnerProductSpace + ?Sized>(
    space: &S,
    vectors: &[DeformedVector],
    strict: bool,
) -> Result<Vec<DeformedVector>> {
    let line = space.line();
    let mut out: Vec<DeformedVector> = Vec::new();
    for (index, v) in vectors.iter().enumerate() {
        check_dim(space.dim(), v)?;
        let resid = project_out(space, v, &out)?;
        let size =
            |w: &DeformedVector| -> Result<f64> { Ok(line.psi_inv(space.pairing(w, w)?).norm()) };
        let (r2, v2) = (size(&resid)?, size(v)?);
        let n = line.sqrt_pos(space.pairing(&resid, &resid)?)?;
        let dependent = n < tol::DEPENDENCE_RATIO || r2 <= tol::DEPENDENCE_RATIO.powi(2) * v2;
        if dependent {
            if strict {
                return Err(Error::RankDeficient { index });
            }
            continue;
        }
        out.push(space.scalar_mul(ComplexScalar::new(1.0 / n, 0.0), &resid)?);
    }
    Ok(out)
}

/// `v ⊖ sum <v, q_i> · q_i`.
fn project_out<S: NearInnerProductSpace + ?Sized>(
    space: &S,
    v: &DeformedVector,
    basis: &[DeformedVector],
) -> Result<DeformedVector> {
    let parts = basis
        .iter()
        .map(|q| space.scalar_mul(space.pairing(v, q)?, q))
        .collect::<Result<Vec<_>>>()?;
    space.vec_sub(v, &space.vec_sum(&parts)?)
}

/// Residual of `sum ||x_i||^2 = ||sum x_i||^2`, meaningful for orthogonal `xs`.
pub fn pythagoras_residual<S: NearInnerProductSpace + ?Sized>(
    space: &S,
    xs: &[DeformedVector],
) -> Result<f64> {
    let line = space.line();
    let sq = |x: &DeformedVector| -> Result<ComplexScalar> { Ok(square(space.induced_norm(x)?)) };
    let lhs = line.sum(&xs.iter().map(sq).collect::<Result<Vec<_>>>()?);
    let rhs = sq(&space.vec_sum(xs)?)?;
    let scale: f64 = xs.iter().map(|x| quad(space, x)).sum::<Result<f64>>()?;
    Ok(Residuals::new(line).eq(lhs, rhs, scale))
}

fn square(x: f64) -> ComplexScalar {
    ComplexScalar::new(x * x, 0.0)
}

/// Size of `<x, x>` in the classical picture.
fn quad<S: NearInnerProductSpace + ?Sized>(space: &S, x: &DeformedVector) -> Result<f64> {
    Ok(space.line().psi_inv(space.pairing(x, x)?).norm())
}

/// Residuals measured after pulling line values back to ordinary arithmetic.
///
/// Equalities report `|a - b| / scale`. Inequalities `a ⊑ b` report
/// `(a - b) / scale`, so a positive value means the inequality fails.
struct Residuals<'a> {
    line: &'a DeformedLine,
}

impl<'a> Residuals<'a> {
    fn new(line: &'a DeformedLine) -> Self {
        Self { line }
    }

    fn denom(&self, a: ComplexScalar, b: ComplexScalar, scale: f64) -> f64 {
        scale.max(a.norm()).max(b.norm()).max(f64::MIN_POSITIVE)
    }

    fn eq(&self, lhs: ComplexScalar, rhs: ComplexScalar, scale: f64) -> f64 {
        let (a, b) = (self.line.psi_inv(lhs), self.line.psi_inv(rhs));
        (a - b).norm() / self.denom(a, b, scale)
    }

    fn le(&self, lhs: f64, rhs: f64, scale: f64) -> f64 {
        let (a, b) = (self.line.psi_inv(lhs.into()), self.line.psi_inv(rhs.into()));
        (a.re - b.re) / self.denom(a, b, scale)
    }
}

/// Named residuals; serializes as a JSON map.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct IdentityReport {
    residuals: BTreeMap<&'static str, f64>,
}

impl IdentityReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.residuals.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        self.residuals.iter().map(|(k, v)| (*k, *v))
    }

    /// Largest residual; inequality slack (negative values) counts as zero.
    pub fn worst(&self) -> f64 {
        self.residuals.values().fold(0.0, |m, &r| m.max(r))
    }

    fn put(&mut self, name: &'static str, value: f64) {
        self.residuals.insert(name, value);
    }
}

/// Evaluates the inner-product axioms and their classical consequences on
/// the given vectors.
///
/// Entries: `conjugate_symmetry`, `homogeneity`, `additivity`,
/// `conjugate_homogeneity`, `positivity`, `cauchy_schwarz`, `triangle`,
/// `reverse_triangle`, `norm_homogeneity`, `parallelogram`,
/// `polarization_real`, `polarization_complex`, `law_of_cosines`,
/// `pythagoras`, `bessel`, `bessel_orthogonality`.
pub fn check_identities<S: NearInnerProductSpace + ?Sized>(
    space: &S,
    u: &DeformedVector,
    v: &DeformedVector,
    w: &DeformedVector,
    alpha: ComplexScalar,
) -> Result<IdentityReport> {
    let line = space.line();
    let res = Residuals::new(line);
    let ip = |a: &DeformedVector, b: &DeformedVector| space.pairing(a, b);
    let norm = |a: &DeformedVector| space.induced_norm(a);
    let mut rep = IdentityReport::default();

    let (qu, qv, qw) = (quad(space, u)?, quad(space, v)?, quad(space, w)?);
    let (su, sv, sw) = (qu.sqrt(), qv.sqrt(), qw.sqrt());
    let qa = line.psi_inv(alpha).norm();

    let uv = ip(u, v)?;
    rep.put(
        "conjugate_symmetry",
        res.eq(uv, line.conj(ip(v, u)?), su * sv),
    );

    let au = space.scalar_mul(alpha, u)?;
    let av = space.scalar_mul(alpha, v)?;
    rep.put("homogeneity", res.eq(ip(&au, v)?, alpha * uv, qa * su * sv));
    rep.put(
        "conjugate_homogeneity",
        res.eq(ip(u, &av)?, line.conj(alpha) * uv, qa * su * sv),
    );

    let upv = space.vec_add(u, v)?;
    let umv = space.vec_sub(u, v)?;
    rep.put(
        "additivity",
        res.eq(ip(&upv, w)?, line.add(ip(u, w)?, ip(v, w)?), (su + sv) * sw),
    );

    let uu = line.psi_inv(ip(u, u)?);
    rep.put(
        "positivity",
        (-uu.re).max(uu.im.abs()) / qu.max(f64::MIN_POSITIVE),
    );

    let (nu, nv) = (norm(u)?, norm(v)?);
    let m = line.modulus(uv);
    rep.put("cauchy_schwarz", res.le(m * m, nu * nu * nv * nv, qu * qv));
    rep.put(
        "triangle",
        res.le(norm(&upv)?, line.add(nu.into(), nv.into()).re, su + sv),
    );
    rep.put(
        "reverse_triangle",
        res.le(
            line.modulus(line.sub(nu.into(), nv.into())),
            norm(&umv)?,
            su + sv,
        ),
    );
    rep.put(
        "norm_homogeneity",
        res.eq(
            norm(&au)?.into(),
            (line.modulus(alpha) * nu).into(),
            qa * su,
        ),
    );

    let two = line.embed_int(2);
    let four_inv = line.embed_int(4).inv();
    let (sq_p, sq_m) = (square(norm(&upv)?), square(norm(&umv)?));
    let scale2 = qu + qv;
    rep.put(
        "parallelogram",
        res.eq(
            line.add(sq_p, sq_m),
            two * line.add(square(nu), square(nv)),
            scale2,
        ),
    );
    rep.put(
        "polarization_real",
        res.eq(line.re(uv).into(), four_inv * line.sub(sq_p, sq_m), scale2),
    );
    let unit = line.imaginary_unit();
    let turns = (0..4)
        .map(|k| {
            let ik = unit.powi(k);
            let shifted = space.vec_add(u, &space.scalar_mul(ik, v)?)?;
            Ok(ik * square(norm(&shifted)?))
        })
        .collect::<Result<Vec<_>>>()?;
    rep.put(
        "polarization_complex",
        res.eq(uv, four_inv * line.sum(&turns), scale2),
    );

    if nu > 0.0 && nv > 0.0 {
        let c = angle(space, u, v)?.cos();
        let rhs = line.add(line.sub(square(nu), two * nu * nv * c), square(nv));
        rep.put("law_of_cosines", res.eq(square(norm(&umv)?), rhs, scale2));
    }

    // orthogonal family {q1, alpha q2, q3} built from the inputs
    let take = space.dim().min(3);
    let qs = orthonormalize(space, &[u.clone(), v.clone(), w.clone()][..take], false)?;
    let mut ortho = qs.clone();
    if ortho.len() > 1 {
        ortho[1] = space.scalar_mul(alpha, &ortho[1])?;
    }
    if !ortho.is_empty() {
        rep.put("pythagoras", pythagoras_residual(space, &ortho)?);
    }

    let prefix = &qs[..qs.len().min(2)];
    let coeffs = prefix
        .iter()
        .map(|q| ip(w, q))
        .collect::<Result<Vec<_>>>()?;
    let bessel = line.sum(
        &coeffs
            .iter()
            .map(|&c| square(line.modulus(c)))
            .collect::<Vec<_>>(),
    );
    rep.put("bessel", res.le(bessel.re, square(norm(w)?).re, qw));
    let w_perp = project_out(space, w, prefix)?;
    let leak = prefix
        .iter()
        .map(|q| Ok(line.psi_inv(ip(&w_perp, q)?).norm()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    rep.put("bessel_orthogonality", leak / sw.max(f64::MIN_POSITIVE));

    Ok(rep)
}
