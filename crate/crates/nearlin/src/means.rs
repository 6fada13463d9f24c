//! Weighted generalized means of complex families.
//!
//! Each weight is written as a sum of unit phases, each value is rotated by
//! those phases, and the resulting family is summed with the transported
//! sum (or one of its limits). With positive data this recovers the power,
//! geometric, max and min means.

use crate::automorphism::{phase, ComplexScalar};
use crate::error::{Error, Result};
use crate::limit::{inf_sum_terms, neg_inf_sum_terms, zero_sum_terms, LimitParam, PolarTerm};
use crate::tol;

/// Entries `(value r_k, weight w_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedFamily {
    entries: Vec<(ComplexScalar, ComplexScalar)>,
}

impl WeightedFamily {
    pub fn new(entries: Vec<(ComplexScalar, ComplexScalar)>) -> Self {
        Self { entries }
    }

    pub fn from_real(entries: &[(f64, f64)]) -> Self {
        Self::new(
            entries
                .iter()
                .map(|&(r, w)| (ComplexScalar::new(r, 0.0), ComplexScalar::new(w, 0.0)))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[(ComplexScalar, ComplexScalar)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `|sum w_k e^{i arg r_k}|`, which limit means require to be 1.
    pub fn normalization_modulus(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(r, w)| w * phase(r))
            .sum::<ComplexScalar>()
            .norm()
    }
}

/// How weights are broken into unit phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightSplit {
    /// Two phases per weight, after halving down to modulus at most 2.
    #[default]
    TwoPhase,
    /// Divide each weight into this many equal parts first.
    Parts(usize),
}

/// Phases `t_j` with `sum e^{i t_j} = omega`.
pub fn decompose_weight(omega: ComplexScalar) -> Vec<f64> {
    let m = omega.norm();
    if m <= 2.0 {
        let beta = (m / 2.0).acos();
        let a = omega.arg();
        return vec![a + beta, a - beta];
    }
    let parts = (m / 2.0).ceil() as usize;
    decompose_weight_parts(omega, parts)
}

/// Splits `omega` into `parts` equal pieces and decomposes each.
pub fn decompose_weight_parts(omega: ComplexScalar, parts: usize) -> Vec<f64> {
    let parts = parts.max(1);
    let piece = omega / parts as f64;
    let phases = decompose_weight(piece);
    phases
        .iter()
        .copied()
        .cycle()
        .take(phases.len() * parts)
        .collect()
}

/// Rotated copies of the values, kept in polar form so the moduli stay exact.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedFamily {
    pub terms: Vec<PolarTerm>,
    /// Index of the family entry each term came from.
    pub source: Vec<usize>,
}

impl ExpandedFamily {
    pub fn values(&self) -> Vec<ComplexScalar> {
        self.terms.iter().map(PolarTerm::value).collect()
    }
}

pub fn expand(family: &WeightedFamily) -> ExpandedFamily {
    expand_with(family, WeightSplit::TwoPhase)
}

pub fn expand_with(family: &WeightedFamily, split: WeightSplit) -> ExpandedFamily {
    let mut terms = Vec::new();
    let mut source = Vec::new();
    for (k, &(r, w)) in family.entries.iter().enumerate() {
        let phases = match split {
            WeightSplit::TwoPhase => decompose_weight(w),
            WeightSplit::Parts(n) => decompose_weight_parts(w, n),
        };
        let base = PolarTerm::from_value(r);
        for t in phases {
            terms.push(PolarTerm::new(
                base.modulus,
                base.phase * ComplexScalar::from_polar(1.0, t),
            ));
            source.push(k);
        }
    }
    ExpandedFamily { terms, source }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanOptions {
    pub split: WeightSplit,
    pub normalization_tol: f64,
}

impl Default for MeanOptions {
    fn default() -> Self {
        Self {
            split: WeightSplit::TwoPhase,
            normalization_tol: tol::NORMALIZATION,
        }
    }
}

pub fn mean(family: &WeightedFamily, param: &LimitParam) -> Result<ComplexScalar> {
    mean_with(family, param, &MeanOptions::default())
}

pub fn mean_with(
    family: &WeightedFamily,
    param: &LimitParam,
    opts: &MeanOptions,
) -> Result<ComplexScalar> {
    if family.is_empty() {
        return Err(Error::Empty);
    }
    if !matches!(param, LimitParam::Finite(_)) {
        let modulus = family.normalization_modulus();
        if (modulus - 1.0).abs() > opts.normalization_tol {
            return Err(Error::Normalization { modulus });
        }
    }
    let ex = expand_with(family, opts.split);
    match param {
        LimitParam::Finite(a) => a.sum(&ex.values()),
        LimitParam::PosInf(d) => Ok(inf_sum_terms(&ex.terms, d)),
        LimitParam::NegInf(d) => Ok(neg_inf_sum_terms(&ex.terms, d)),
        LimitParam::Zero(d) => zero_sum_terms(&ex.terms, d).map_err(Error::Divergent),
    }
}

/// Relative residuals of the permutation, idempotence and replacement axioms.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct KolmogorovReport {
    pub permutation: f64,
    pub idempotence: f64,
    pub replacement: f64,
}

impl KolmogorovReport {
    pub fn worst(&self) -> f64 {
        self.permutation.max(self.idempotence).max(self.replacement)
    }
}

fn rel(a: ComplexScalar, b: ComplexScalar) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

/// Checks the axioms on `family`; `subset` names the entries replaced by
/// their own mean in the replacement test.
pub fn kolmogorov_check(
    family: &WeightedFamily,
    param: &LimitParam,
    subset: &[usize],
) -> Result<KolmogorovReport> {
    let base = mean(family, param)?;
    let n = family.len();

    let mut reversed = family.entries.clone();
    reversed.reverse();
    let mut rotated = family.entries.clone();
    rotated.rotate_left(n / 2);
    let permutation = rel(mean(&WeightedFamily::new(reversed), param)?, base)
        .max(rel(mean(&WeightedFamily::new(rotated), param)?, base));

    let r0 = family.entries[0].0;
    let w = ComplexScalar::new(1.0 / n as f64, 0.0);
    let constant = WeightedFamily::new(vec![(r0, w); n]);
    let idempotence = rel(mean(&constant, param)?, r0);

    let mut inside = vec![false; n];
    for &j in subset {
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, dim: n });
        }
        inside[j] = true;
    }
    let chosen: Vec<(ComplexScalar, ComplexScalar)> = (0..n)
        .filter(|&j| inside[j])
        .map(|j| family.entries[j])
        .collect();
    let replacement = if chosen.is_empty() {
        0.0
    } else {
        let total: ComplexScalar = chosen.iter().map(|e| e.1).sum();
        let renorm = WeightedFamily::new(chosen.iter().map(|&(r, w)| (r, w / total)).collect());
        let sub_mean = mean(&renorm, param)?;
        let common = total / chosen.len() as f64;
        let replaced = WeightedFamily::new(
            (0..n)
                .map(|j| {
                    if inside[j] {
                        (sub_mean, common)
                    } else {
                        family.entries[j]
                    }
                })
                .collect(),
        );
        rel(mean(&replaced, param)?, base)
    };

    Ok(KolmogorovReport {
        permutation,
        idempotence,
        replacement,
    })
}
