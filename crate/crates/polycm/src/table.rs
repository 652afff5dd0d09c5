//! CSV form of a bound table.
//!
//! Floats are written with 17 significant digits, which is enough for every
//! binary64 value to parse back to the same bits.

use std::io::{Read, Write};

use polycm_core::bounds::BoundCheck;

pub const COLUMNS: [&str; 7] = [
    "x",
    "lower",
    "middle",
    "upper",
    "lower_margin",
    "upper_margin",
    "passed",
];

/// One parsed CSV row. The margin error bars are not part of the table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub x: f64,
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    pub lower_margin: f64,
    pub upper_margin: f64,
    pub passed: bool,
}

impl From<&BoundCheck> for Row {
    fn from(c: &BoundCheck) -> Row {
        Row {
            x: c.x,
            lower: c.lower,
            middle: c.middle,
            upper: c.upper,
            lower_margin: c.lower_margin,
            upper_margin: c.upper_margin,
            passed: c.passed,
        }
    }
}

fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(checks: &[BoundCheck], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for c in checks {
        w.write_record([
            sig17(c.x),
            sig17(c.lower),
            sig17(c.middle),
            sig17(c.upper),
            sig17(c.lower_margin),
            sig17(c.upper_margin),
            c.passed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("row {row}: {message}")]
    Field { row: usize, message: String },
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<Row>, ParseError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != COLUMNS {
        return Err(ParseError::Header(header));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = |j: usize| -> Result<f64, ParseError> {
            rec[j].parse().map_err(|e| ParseError::Field {
                row: i + 1,
                message: format!("{}: {e}", COLUMNS[j]),
            })
        };
        let passed = rec[6].parse().map_err(|e| ParseError::Field {
            row: i + 1,
            message: format!("passed: {e}"),
        })?;
        rows.push(Row {
            x: field(0)?,
            lower: field(1)?,
            middle: field(2)?,
            upper: field(3)?,
            lower_margin: field(4)?,
            upper_margin: field(5)?,
            passed,
        });
    }
    Ok(rows)
}
