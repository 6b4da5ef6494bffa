use crate::error::{Error, Result};
use crate::estimator::VarianceEstimate;

use super::format::sig6;

/// Reads one observation series from CSV text.
///
/// An optional header row is recognized when its fields are not all numeric.
/// With a header, the column named `y` is used (or the only column). Without a
/// header, the last column is used, so both `y` and `x,y` layouts work.
pub fn parse_series_csv(text: &str) -> Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(false)
        .from_reader(text.as_bytes());
    let mut column: Option<usize> = None;
    let mut values = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(idx + 1, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = record.position().map_or(idx + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let col = match column {
            Some(c) => c,
            None => {
                let numeric = record.iter().all(|f| f.parse::<f64>().is_ok());
                if !numeric {
                    let c = if record.len() == 1 {
                        0
                    } else {
                        record
                            .iter()
                            .position(|f| f.eq_ignore_ascii_case("y"))
                            .ok_or_else(|| Error::Parse {
                                line,
                                msg: "header has no `y` column".into(),
                            })?
                    };
                    column = Some(c);
                    continue;
                }
                let c = record.len() - 1;
                column = Some(c);
                c
            }
        };
        let field = record.get(col).unwrap_or("");
        let v: f64 = field.parse().map_err(|e| Error::Parse {
            line,
            msg: format!("`{field}`: {e}"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                line,
                msg: format!("`{field}` is not finite"),
            });
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no observations found".into(),
        });
    }
    Ok(values)
}

/// `x,vhat` CSV for an estimate.
pub fn estimate_to_csv(est: &VarianceEstimate) -> String {
    let mut out = String::from("x,vhat\n");
    for (x, v) in est.grid.iter().zip(&est.values) {
        out.push_str(&format!("{},{}\n", sig6(*x), sig6(*v)));
    }
    out
}

/// Whitespace-separated two-column data (gnuplot `plot 'file' using 1:2`).
pub fn two_column_data(x: &[f64], y: &[f64], comment: &str) -> String {
    let mut out = format!("# {comment}\n");
    for (a, b) in x.iter().zip(y) {
        out.push_str(&format!("{} {}\n", sig6(*a), sig6(*b)));
    }
    out
}
