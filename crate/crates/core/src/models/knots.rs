use crate::error::{Error, Result};

/// One `(t, h, w)` row of a knot table: location, height, width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Knot {
    pub t: f64,
    pub h: f64,
    pub w: f64,
}

/// Parses a plain-text knot table: one `t h w` triple per line, separated by
/// whitespace, `#` starting a comment. Locations must lie in `[0, 1]` and
/// widths must be nonnegative.
pub fn parse_knot_table(text: &str) -> Result<Vec<Knot>> {
    let mut knots = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 3 fields `t h w`, found {}", fields.len()),
            });
        }
        let mut vals = [0.0; 3];
        for (slot, field) in vals.iter_mut().zip(&fields) {
            *slot = field.parse::<f64>().map_err(|e| Error::Parse {
                line,
                msg: format!("`{field}`: {e}"),
            })?;
            if !slot.is_finite() {
                return Err(Error::Parse {
                    line,
                    msg: format!("`{field}` is not finite"),
                });
            }
        }
        let [t, h, w] = vals;
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Parse {
                line,
                msg: format!("knot location {t} outside [0, 1]"),
            });
        }
        if w < 0.0 {
            return Err(Error::Parse {
                line,
                msg: format!("negative width {w}"),
            });
        }
        knots.push(Knot { t, h, w });
    }
    if knots.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "knot table is empty".into(),
        });
    }
    Ok(knots)
}
