//! Grouped two-column series from a results CSV, for gnuplot and friends.
//!
//! Axis expressions are a column name, `log2(col)` for x, or `col/col` for y.
//! Rows sharing a group and an x value are averaged.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};

enum Axis {
    Column(usize),
    Log2(usize),
    Ratio(usize, usize),
}

impl Axis {
    fn eval(&self, row: &csv::StringRecord) -> Option<f64> {
        let get = |i: usize| row.get(i).filter(|s| !s.is_empty())?.parse::<f64>().ok();
        match *self {
            Axis::Column(i) => get(i),
            Axis::Log2(i) => get(i).map(f64::log2),
            Axis::Ratio(a, b) => Some(get(a)? / get(b)?),
        }
    }
}

fn column(headers: &[String], name: &str) -> Result<usize> {
    let name = name.trim();
    match headers.iter().position(|h| h == name) {
        Some(i) => Ok(i),
        None => bail!(
            "unknown column `{name}` (available: {})",
            headers.join(", ")
        ),
    }
}

fn parse_x(headers: &[String], expr: &str) -> Result<Axis> {
    match expr
        .trim()
        .strip_prefix("log2(")
        .and_then(|s| s.strip_suffix(')'))
    {
        Some(inner) => Ok(Axis::Log2(column(headers, inner)?)),
        None => Ok(Axis::Column(column(headers, expr)?)),
    }
}

fn parse_y(headers: &[String], expr: &str) -> Result<Axis> {
    match expr.split_once('/') {
        Some((a, b)) => Ok(Axis::Ratio(column(headers, a)?, column(headers, b)?)),
        None => Ok(Axis::Column(column(headers, expr)?)),
    }
}

/// Renders `y` against `x` for each distinct combination of `group_by` columns.
///
/// Each series starts with `# group: col=value,...` followed by `x y` lines
/// sorted by x; series are separated by a blank line.
pub fn emit_plot_data(csv_path: &Path, x: &str, y: &str, group_by: &[String]) -> Result<String> {
    let mut reader = csv::Reader::from_path(csv_path)
        .with_context(|| format!("cannot read {}", csv_path.display()))?;
    let headers: Vec<String> = reader
        .headers()
        .with_context(|| format!("malformed CSV {}", csv_path.display()))?
        .iter()
        .map(str::to_string)
        .collect();
    if headers.is_empty() {
        return Ok(String::new());
    }
    let x_axis = parse_x(&headers, x)?;
    let y_axis = parse_y(&headers, y)?;
    let groups: Vec<usize> = group_by
        .iter()
        .filter(|g| !g.trim().is_empty())
        .map(|g| column(&headers, g))
        .collect::<Result<_>>()?;

    // group key -> x bits -> (sum, count); BTreeMap keeps output stable
    let mut series: BTreeMap<Vec<String>, BTreeMap<OrderedX, (f64, u64)>> = BTreeMap::new();
    for row in reader.records() {
        let row = row.with_context(|| format!("malformed CSV {}", csv_path.display()))?;
        let (Some(xv), Some(yv)) = (x_axis.eval(&row), y_axis.eval(&row)) else {
            continue;
        };
        let key = groups
            .iter()
            .map(|&i| row.get(i).unwrap_or("").to_string())
            .collect();
        let cell = series
            .entry(key)
            .or_default()
            .entry(OrderedX(xv))
            .or_default();
        cell.0 += yv;
        cell.1 += 1;
    }

    let mut out = String::new();
    for (i, (key, points)) in series.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let label: Vec<String> = groups
            .iter()
            .zip(key)
            .map(|(&c, v)| format!("{}={v}", headers[c]))
            .collect();
        writeln!(out, "# group: {}", label.join(",")).unwrap();
        for (xv, (sum, count)) in points {
            writeln!(out, "{} {}", xv.0, sum / *count as f64).unwrap();
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct OrderedX(f64);

impl Eq for OrderedX {}

impl PartialOrd for OrderedX {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedX {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}
