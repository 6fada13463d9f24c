//! Limits of transported sums as the exponent runs off along a ray.
//!
//! The exponent goes to infinity along `e^{i theta}` (or to zero along the
//! same ray for the zero limit). Values are grouped by modulus. In the
//! infinite limits the extreme level that does not cancel wins. The zero
//! limit is a weighted geometric combination that exists only when the unit
//! phases sum to a unit vector.

use crate::automorphism::{real_pow, AutoParam, ComplexScalar};
use crate::error::{Error, Result};
use crate::tol;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::f64::consts::{FRAC_PI_2, PI};

/// Direction of the exponent ray.
///
/// Admissible angles lie in `(-pi/2, pi/2)` or `(pi/2, 3pi/2)`; the sign of
/// `cos(theta)` decides which branch a zero-limit sum takes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
}

impl Direction {
    pub fn new(theta: f64) -> Result<Self> {
        let inside = theta > -FRAC_PI_2 && theta < 3.0 * FRAC_PI_2;
        if !theta.is_finite() || !inside || theta.cos().abs() <= tol::DIRECTION_MARGIN {
            return Err(Error::InvalidDirection { theta });
        }
        Ok(Self { theta })
    }

    /// The positive real ray.
    pub fn real_axis() -> Self {
        Self { theta: 0.0 }
    }

    /// The negative real ray.
    pub fn negative_axis() -> Self {
        Self { theta: PI }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn tan(&self) -> f64 {
        self.theta.tan()
    }

    pub fn cos_positive(&self) -> bool {
        self.theta.cos() > 0.0
    }
}

impl Default for Direction {
    fn default() -> Self {
        Self::real_axis()
    }
}

/// Exponent of a mean: a finite automorphism, or one of the three limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitParam {
    Finite(AutoParam),
    PosInf(Direction),
    NegInf(Direction),
    Zero(Direction),
}

/// Polar form with the modulus kept exact; zero has phase 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarTerm {
    pub modulus: f64,
    pub phase: ComplexScalar,
}

impl PolarTerm {
    pub fn new(modulus: f64, phase: ComplexScalar) -> Self {
        Self { modulus, phase }
    }

    pub fn from_value(z: ComplexScalar) -> Self {
        let r = z.norm();
        if r < tol::ZERO_MODULUS {
            Self::new(0.0, ComplexScalar::new(1.0, 0.0))
        } else {
            Self::new(r, z / r)
        }
    }

    pub fn value(&self) -> ComplexScalar {
        self.phase * self.modulus
    }

    fn is_zero(&self) -> bool {
        self.modulus < tol::ZERO_MODULUS
    }
}

/// Values sharing one modulus level, with the polar form of their phase sum.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGroup {
    pub level: f64,
    pub indices: Vec<usize>,
    pub r: f64,
    pub s: ComplexScalar,
}

impl PhaseGroup {
    pub fn cancels(&self) -> bool {
        self.r <= tol::CANCEL_ABS
    }
}

/// Report that a zero-limit sum has no finite value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceSignal {
    pub r: f64,
    pub theta: f64,
}

impl Serialize for DivergenceSignal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DivergenceSignal", 3)?;
        st.serialize_field("divergent", &true)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("theta", &self.theta)?;
        st.end()
    }
}

/// Nonzero terms grouped by modulus, ascending.
pub fn group_terms(terms: &[PolarTerm]) -> Vec<PhaseGroup> {
    let mut order: Vec<usize> = (0..terms.len()).filter(|&k| !terms[k].is_zero()).collect();
    order.sort_by(|&a, &b| terms[a].modulus.total_cmp(&terms[b].modulus));

    let mut groups: Vec<PhaseGroup> = Vec::new();
    for k in order {
        let m = terms[k].modulus;
        match groups.last_mut() {
            Some(g) if (m - g.level).abs() <= tol::LEVEL_REL * m.max(g.level) => g.indices.push(k),
            _ => groups.push(PhaseGroup {
                level: m,
                indices: vec![k],
                r: 0.0,
                s: ComplexScalar::new(1.0, 0.0),
            }),
        }
    }
    for g in &mut groups {
        let sum: ComplexScalar = g.indices.iter().map(|&k| terms[k].phase).sum();
        let t = PolarTerm::from_value(sum);
        g.r = t.modulus;
        g.s = t.phase;
    }
    groups
}

pub fn group_by_modulus(values: &[ComplexScalar]) -> Vec<PhaseGroup> {
    group_terms(&to_terms(values))
}

fn to_terms(values: &[ComplexScalar]) -> Vec<PolarTerm> {
    values.iter().map(|&z| PolarTerm::from_value(z)).collect()
}

fn level_value(g: &PhaseGroup, dir: &Direction) -> ComplexScalar {
    let t = dir.tan();
    let twist = if t == 0.0 {
        ComplexScalar::new(1.0, 0.0)
    } else {
        real_pow(g.r, ComplexScalar::new(0.0, -t))
    };
    twist * g.s * g.level
}

pub fn inf_sum_terms(terms: &[PolarTerm], dir: &Direction) -> ComplexScalar {
    group_terms(terms)
        .iter()
        .rev()
        .find(|g| !g.cancels())
        .map_or(ComplexScalar::new(0.0, 0.0), |g| level_value(g, dir))
}

pub fn neg_inf_sum_terms(terms: &[PolarTerm], dir: &Direction) -> ComplexScalar {
    group_terms(terms)
        .iter()
        .find(|g| !g.cancels())
        .map_or(ComplexScalar::new(0.0, 0.0), |g| level_value(g, dir))
}

pub fn inf_sum(values: &[ComplexScalar], dir: &Direction) -> ComplexScalar {
    inf_sum_terms(&to_terms(values), dir)
}

pub fn neg_inf_sum(values: &[ComplexScalar], dir: &Direction) -> ComplexScalar {
    neg_inf_sum_terms(&to_terms(values), dir)
}

/// Which infinite limit a binary operation takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitMode {
    PosInf,
    NegInf,
}

/// Two-term limit sum. Not associative, so families use the n-ary forms.
pub fn binary_limit_add(
    mode: LimitMode,
    dir: &Direction,
    a: ComplexScalar,
    b: ComplexScalar,
) -> ComplexScalar {
    match mode {
        LimitMode::PosInf => inf_sum(&[a, b], dir),
        LimitMode::NegInf => neg_inf_sum(&[a, b], dir),
    }
}

pub fn zero_sum_terms(
    terms: &[PolarTerm],
    dir: &Direction,
) -> std::result::Result<ComplexScalar, DivergenceSignal> {
    let live: Vec<&PolarTerm> = terms.iter().filter(|t| !t.is_zero()).collect();
    if live.is_empty() {
        return Ok(ComplexScalar::new(0.0, 0.0));
    }
    let total = PolarTerm::from_value(live.iter().map(|t| t.phase).sum());
    let (r, e_theta) = (total.modulus, total.phase);

    if (r - 1.0).abs() <= tol::UNIT_PHASE {
        let exponent: f64 = live
            .iter()
            .map(|t| (e_theta * t.phase.conj()).re * t.modulus.ln())
            .sum();
        let w = ComplexScalar::new(exponent, exponent * dir.tan());
        return Ok(w.exp() * e_theta);
    }
    let signal = DivergenceSignal {
        r,
        theta: e_theta.arg(),
    };
    // r < 1 sends |sum|^{1/alpha} to 0 when Re(1/alpha) > 0
    if (r < 1.0) == dir.cos_positive() {
        Ok(ComplexScalar::new(0.0, 0.0))
    } else {
        Err(signal)
    }
}

pub fn zero_sum(
    values: &[ComplexScalar],
    dir: &Direction,
) -> std::result::Result<ComplexScalar, DivergenceSignal> {
    zero_sum_terms(&to_terms(values), dir)
}

/// Pointwise limit of `eps_alpha^{-1}(a)` along the ray: `|a|^{-i tan} phase(a)`.
pub fn eps_inv_limit(dir: &Direction, a: ComplexScalar) -> ComplexScalar {
    let t = PolarTerm::from_value(a);
    if t.is_zero() {
        return ComplexScalar::new(0.0, 0.0);
    }
    real_pow(t.modulus, ComplexScalar::new(0.0, -dir.tan())) * t.phase
}

/// Limit sum selected by a parameter; finite exponents sum exactly.
pub fn limit_sum(param: &LimitParam, values: &[ComplexScalar]) -> Result<ComplexScalar> {
    match param {
        LimitParam::Finite(a) => a.sum(values),
        LimitParam::PosInf(d) => Ok(inf_sum(values, d)),
        LimitParam::NegInf(d) => Ok(neg_inf_sum(values, d)),
        LimitParam::Zero(d) => zero_sum(values, d).map_err(Error::Divergent),
    }
}
