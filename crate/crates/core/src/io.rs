//! Plain-text formats: datasets, key=value spec files and region exports.
//!
//! Datasets hold one point per line. Coordinates are separated by
//! whitespace or commas and may be integers, decimals (optionally with an
//! exponent) or exact fractions `p/q`. Lines starting with `#` are comments;
//! `# key = value` comments form the metadata header.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::geometry::{DataSet, Point, Polytope, Scalar};

/// Parses an exact rational literal: `-3`, `0.125`, `1.5e-3` or `7/12`.
pub fn parse_rational(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Scalar::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut v = if shift >= 0 {
        Scalar::from_integer(all * Pow::pow(&ten, shift as u32))
    } else {
        Scalar::new(all, Pow::pow(&ten, shift.unsigned_abs()))
    };
    if neg {
        v = -v;
    }
    Some(v)
}

/// Formats a scalar exactly: integers plainly, others as `p/q`.
pub fn format_rational(v: &Scalar) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn parse_row(line: &str, line_no: usize) -> Result<Vec<Scalar>> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            parse_rational(t).ok_or_else(|| Error::Parse {
                line: line_no,
                msg: format!("bad coordinate `{t}`"),
            })
        })
        .collect()
}

/// Parses dataset text. The `precision_bits` header, if present, is kept.
pub fn parse_dataset(text: &str) -> Result<DataSet> {
    let mut points = Vec::new();
    let mut precision = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((k, v)) = comment.split_once('=') {
                if k.trim() == "precision_bits" {
                    precision = v.trim().parse().ok();
                }
            }
            continue;
        }
        let row = parse_row(line, i + 1)?;
        if let Some(first) = points.first() {
            let first: &Point = first;
            if first.dim() != row.len() {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected {} coordinates, found {}", first.dim(), row.len()),
                });
            }
        }
        points.push(Point::new(row));
    }
    Ok(DataSet::new(points)?.with_precision(precision))
}

pub fn read_dataset(path: &Path) -> Result<DataSet> {
    parse_dataset(&fs::read_to_string(path)?)
}

pub fn format_dataset(ds: &DataSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# dim = {}", ds.dim());
    let _ = writeln!(out, "# n = {}", ds.len());
    if let Some(bits) = ds.precision_bits {
        let _ = writeln!(out, "# precision_bits = {bits}");
    }
    for p in ds.points() {
        let row: Vec<String> = p.coords().iter().map(format_rational).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_dataset(path: &Path, ds: &DataSet) -> Result<()> {
    fs::write(path, format_dataset(ds))?;
    Ok(())
}

/// Parses a point given on the command line, e.g. `1,1/2`.
pub fn parse_point(s: &str) -> Result<Point> {
    Ok(Point::new(parse_row(s, 0)?))
}

/// `key = value` pairs, one per line, `#` comments allowed.
#[derive(Clone, Debug, Default)]
pub struct KeyValues {
    entries: BTreeMap<String, (usize, String)>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("expected key = value, found `{line}`"),
            })?;
            entries.insert(k.trim().to_string(), (i + 1, v.trim().to_string()));
        }
        Ok(KeyValues { entries })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn str(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.str(key).ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("missing key `{key}`"),
        })
    }

    /// Parses `key` with `FromStr`, if present.
    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|_| Error::Parse {
                line: *line,
                msg: format!("bad value `{v}` for `{key}`"),
            }),
        }
    }

    /// Comma-separated list of `FromStr` values.
    pub fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Option<Vec<T>>> {
        let Some((line, v)) = self.entries.get(key) else {
            return Ok(None);
        };
        v.split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse().map_err(|_| Error::Parse {
                    line: *line,
                    msg: format!("bad list entry `{t}` for `{key}`"),
                })
            })
            .collect::<Result<Vec<T>>>()
            .map(Some)
    }

    /// Semicolon-separated points, each a comma-separated coordinate list.
    pub fn points(&self, key: &str) -> Result<Option<Vec<Point>>> {
        let Some((line, v)) = self.entries.get(key) else {
            return Ok(None);
        };
        v.split(';')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| parse_row(t, *line).map(Point::new))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }
}

/// Plain-text region export: a vertex list and the halfspaces `u_1 .. u_d q`
/// describing `{x : u·x >= q}`.
pub fn format_region(region: &Polytope, label: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# region {label}");
    let _ = writeln!(out, "# dim = {}", region.dim());
    match region.affine_dim {
        Some(k) => {
            let _ = writeln!(out, "# affine_dim = {k}");
        }
        None => {
            let _ = writeln!(out, "# affine_dim = empty");
        }
    }
    let _ = writeln!(out, "# vertices");
    for v in &region.vertices {
        let row: Vec<String> = v.coords().iter().map(format_rational).collect();
        let _ = writeln!(out, "v {}", row.join(" "));
    }
    let _ = writeln!(out, "# halfspaces u_1 .. u_d q, region is u.x >= q");
    for h in &region.halfspaces {
        let mut row: Vec<String> = h.normal.coords().iter().map(format_rational).collect();
        row.push(format_rational(&h.offset));
        let _ = writeln!(out, "h {}", row.join(" "));
    }
    out
}

/// Vertex table as CSV with exact and floating columns.
pub fn write_vertices_csv<W: std::io::Write>(w: W, region: &Polytope) -> Result<()> {
    let d = region.dim();
    let mut wr = csv::Writer::from_writer(w);
    let mut header: Vec<String> = (1..=d).map(|k| format!("x{k}")).collect();
    header.extend((1..=d).map(|k| format!("x{k}_f64")));
    wr.write_record(&header)?;
    for v in &region.vertices {
        let mut row: Vec<String> = v.coords().iter().map(format_rational).collect();
        row.extend(v.to_f64().iter().map(|c| c.to_string()));
        wr.write_record(&row)?;
    }
    wr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3"), Some(ratio(3, 1)));
        assert_eq!(parse_rational("-0.125"), Some(ratio(-1, 8)));
        assert_eq!(parse_rational("1.5e-3"), Some(ratio(3, 2000)));
        assert_eq!(parse_rational("2E2"), Some(ratio(200, 1)));
        assert_eq!(parse_rational(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("7/12"), Some(ratio(7, 12)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("-"), None);
    }

    #[test]
    fn dataset_round_trip() {
        let text = "# precision_bits = 53\n0 0\n2, 0\n1 1/3\n\n# trailing comment\n";
        let ds = parse_dataset(text).unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.precision_bits, Some(53));
        let again = parse_dataset(&format_dataset(&ds)).unwrap();
        assert_eq!(again.points(), ds.points());
        assert_eq!(again.precision_bits, Some(53));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let err = parse_dataset("0 0\n1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn key_values() {
        let kv = KeyValues::parse("variant = uniform_ball # comment\ndim=2\nwidths = 0.1, 0.01\npoints = 0,0; 1,0\n").unwrap();
        assert_eq!(kv.str("variant"), Some("uniform_ball"));
        assert_eq!(kv.get::<usize>("dim").unwrap(), Some(2));
        assert_eq!(kv.list::<f64>("widths").unwrap(), Some(vec![0.1, 0.01]));
        assert_eq!(kv.points("points").unwrap().unwrap().len(), 2);
        assert!(kv.get::<usize>("variant").is_err());
        assert!(KeyValues::parse("novalue\n").is_err());
    }
}
