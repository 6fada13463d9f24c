//! Text formats read by the command line tool.

use crate::automorphism::{AutoParam, ComplexScalar};
use crate::error::{Error, Result};
use crate::integral::SampledFunction;
use crate::limit::{Direction, LimitParam};
use crate::means::WeightedFamily;

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn real(s: &str) -> Result<f64> {
    let t = s.trim();
    t.parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| bad(format!("not a finite number: {t:?}")))
}

/// Parses `3`, `-2.5`, `1+2i`, `1e-3-4i`, `2i`, `-i`.
pub fn parse_complex(s: &str) -> Result<ComplexScalar> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad("empty number"));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(ComplexScalar::new(real(&t)?, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => real(x)?,
    };
    Ok(ComplexScalar::new(re, im))
}

/// Parses `alpha=RE[+IMi]`, `inf@THETA`, `-inf@THETA` or `zero@THETA`.
pub fn parse_param(s: &str) -> Result<LimitParam> {
    let t = s.trim();
    if let Some(a) = t.strip_prefix("alpha=") {
        return Ok(LimitParam::Finite(AutoParam::power(parse_complex(a)?)?));
    }
    let (kind, theta) = t
        .split_once('@')
        .ok_or_else(|| bad(format!("unknown parameter {t:?}")))?;
    let dir = Direction::new(real(theta)?)?;
    match kind {
        "inf" | "+inf" => Ok(LimitParam::PosInf(dir)),
        "-inf" => Ok(LimitParam::NegInf(dir)),
        "zero" | "0" => Ok(LimitParam::Zero(dir)),
        _ => Err(bad(format!("unknown limit {kind:?}"))),
    }
}

/// Comma- or whitespace-separated numbers such as `1,1` or `0.5 -2`.
pub fn parse_reals(s: &str) -> Result<Vec<f64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(real)
        .collect()
}

fn split_fields(line: &str) -> Vec<&str> {
    line.split([',', ';', '\t', ' '])
        .filter(|x| !x.is_empty())
        .collect()
}

/// Blank-line separated blocks of rows of complex entries.
pub fn parse_blocks(text: &str) -> Result<Vec<Vec<Vec<ComplexScalar>>>> {
    let mut blocks = Vec::new();
    let mut rows: Vec<Vec<ComplexScalar>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !rows.is_empty() {
                blocks.push(std::mem::take(&mut rows));
            }
            continue;
        }
        rows.push(
            split_fields(line)
                .into_iter()
                .map(parse_complex)
                .collect::<Result<_>>()?,
        );
    }
    if !rows.is_empty() {
        blocks.push(rows);
    }
    Ok(blocks)
}

type Header = Option<Vec<String>>;

fn numeric_rows(text: &str) -> Result<(Header, Vec<Vec<f64>>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut header = None;
    let mut rows = Vec::new();
    for (k, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| bad(format!("csv: {e}")))?;
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parsed: Result<Vec<f64>> = rec.iter().map(real).collect();
        match parsed {
            Ok(r) => rows.push(r),
            Err(_) if k == 0 => header = Some(rec.iter().map(|f| f.to_ascii_lowercase()).collect()),
            Err(e) => return Err(e),
        }
    }
    Ok((header, rows))
}

/// Resolves column `name` against an optional header, else uses `fallback`.
fn column(header: &Header, name: &str, fallback: Option<usize>) -> Result<Option<usize>> {
    match header {
        Some(h) => Ok(h.iter().position(|c| c == name)),
        None => Ok(fallback),
    }
}

fn field(row: &[f64], idx: Option<usize>, line: usize) -> Result<f64> {
    match idx {
        None => Ok(0.0),
        Some(i) => row.get(i).copied().ok_or_else(|| {
            bad(format!(
                "row {line} has {} fields, need {}",
                row.len(),
                i + 1
            ))
        }),
    }
}

/// Rows `value_re, value_im, weight_re, weight_im`; a header may name the
/// columns, and a headerless two-column file holds real values and weights.
pub fn parse_family(text: &str) -> Result<WeightedFamily> {
    let (header, rows) = numeric_rows(text)?;
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    let cols = match &header {
        Some(_) => {
            let vr =
                column(&header, "value_re", None)?.ok_or_else(|| bad("missing column value_re"))?;
            let wr = column(&header, "weight_re", None)?
                .ok_or_else(|| bad("missing column weight_re"))?;
            [
                Some(vr),
                column(&header, "value_im", None)?,
                Some(wr),
                column(&header, "weight_im", None)?,
            ]
        }
        None => match rows[0].len() {
            2 => [Some(0), None, Some(1), None],
            4 => [Some(0), Some(1), Some(2), Some(3)],
            n => return Err(bad(format!("expected 2 or 4 columns, found {n}"))),
        },
    };
    let entries = rows
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let g = |j: usize| field(r, cols[j], k + 1);
            Ok((
                ComplexScalar::new(g(0)?, g(1)?),
                ComplexScalar::new(g(2)?, g(3)?),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightedFamily::new(entries))
}

/// Rows `x, re, im` at evenly spaced midpoints; `im` may be omitted.
pub fn parse_function(text: &str) -> Result<SampledFunction> {
    let (header, rows) = numeric_rows(text)?;
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    let x = column(&header, "x", Some(0))?.ok_or_else(|| bad("missing column x"))?;
    let re = column(&header, "re", Some(1))?.ok_or_else(|| bad("missing column re"))?;
    let im = column(&header, "im", (rows[0].len() > 2).then_some(2))?;
    let mut xs = Vec::with_capacity(rows.len());
    let mut values = Vec::with_capacity(rows.len());
    for (k, r) in rows.iter().enumerate() {
        xs.push(field(r, Some(x), k + 1)?);
        values.push(ComplexScalar::new(
            field(r, Some(re), k + 1)?,
            field(r, im, k + 1)?,
        ));
    }
    SampledFunction::from_midpoints(&xs, values)
}

/// Closed-form integrands for `--fn`: `const:C`, `x`, `pow:K`, `sin`, `cos`, `exp`, `cis`.
pub fn parse_fn(s: &str) -> Result<Box<dyn Fn(f64) -> ComplexScalar>> {
    let t = s.trim();
    if let Some(c) = t.strip_prefix("const:") {
        let c = parse_complex(c)?;
        return Ok(Box::new(move |_| c));
    }
    if let Some(k) = t.strip_prefix("pow:") {
        let k = real(k)?;
        return Ok(Box::new(move |x| ComplexScalar::new(x.powf(k), 0.0)));
    }
    let f: fn(f64) -> ComplexScalar = match t {
        "x" => |x| ComplexScalar::new(x, 0.0),
        "sin" => |x| ComplexScalar::new(x.sin(), 0.0),
        "cos" => |x| ComplexScalar::new(x.cos(), 0.0),
        "exp" => |x| ComplexScalar::new(x.exp(), 0.0),
        "cis" => |x| ComplexScalar::from_polar(1.0, x),
        _ => return Err(bad(format!("unknown function {t:?}"))),
    };
    Ok(Box::new(f))
}
