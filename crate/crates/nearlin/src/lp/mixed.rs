//! Column-then-row aggregation for matrices.

use super::scaled_power_norm;
use crate::automorphism::{AutoParam, ComplexScalar};
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ComplexScalar>,
}

impl ComplexMatrix {
    pub fn from_rows(rows: Vec<Vec<ComplexScalar>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::Empty);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: m,
            cols: n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| ComplexScalar::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("square identity")
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> ComplexScalar {
        self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = ComplexScalar> + Clone + '_ {
        (0..self.rows).map(move |i| self.get(i, j))
    }
}

/// A norm exponent that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            t => t
                .parse::<f64>()
                .ok()
                .filter(|p| p.is_finite())
                .map(Exponent::Finite)
                .ok_or_else(|| Error::Invalid(format!("bad exponent {s:?}"))),
        }
    }
}

fn check_shapes(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.rows * a.cols,
            found: b.rows * b.cols,
        });
    }
    Ok(())
}

/// `eps_{1/q}(sum_j eps_{q/(2p)}(sum_i eps_{p/2}(a_ij conj b_ij)))`.
pub fn lpq_pairing(a: &ComplexMatrix, b: &ComplexMatrix, p: f64, q: f64) -> Result<ComplexScalar> {
    check_shapes(a, b)?;
    let (ep, eq, half) = (
        AutoParam::real(p)?,
        AutoParam::real(q)?,
        AutoParam::real(0.5)?,
    );
    // each column is an l^p pairing, then those are l^q-aggregated
    let columns = (0..a.cols)
        .map(|j| {
            let terms: Vec<ComplexScalar> = a
                .column(j)
                .zip(b.column(j))
                .map(|(x, y)| half.apply(x * y.conj()))
                .collect();
            ep.sum(&terms).map(|col| half.apply(col))
        })
        .collect::<Result<Vec<_>>>()?;
    eq.sum(&columns)
}

/// `(sum_j (sum_i |a_ij|^p)^{q/p})^{1/q}`.
pub fn lpq_norm(a: &ComplexMatrix, p: f64, q: f64) -> Result<f64> {
    lpq_limit_norm(a, Exponent::Finite(p), Exponent::Finite(q))
}

/// Mixed norm where either exponent may be infinite.
pub fn lpq_limit_norm(a: &ComplexMatrix, p: Exponent, q: Exponent) -> Result<f64> {
    for e in [p, q] {
        if let Exponent::Finite(x) = e {
            if x <= 0.0 {
                return Err(Error::UnsupportedExponent { p: x });
            }
        }
    }
    let col_norm = |j: usize| match p {
        Exponent::Finite(p) => scaled_power_norm(a.column(j).map(|z| z.norm()), p),
        Exponent::Infinity => a.column(j).map(|z| z.norm()).fold(0.0, f64::max),
    };
    let cols = (0..a.cols).map(col_norm);
    Ok(match q {
        Exponent::Finite(q) => scaled_power_norm(cols, q),
        Exponent::Infinity => cols.fold(0.0, f64::max),
    })
}
