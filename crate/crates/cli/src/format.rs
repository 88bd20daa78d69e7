//! Number formatting shared by the JSON and CSV writers.
//!
//! Floats are rounded to 12 significant digits and then printed in shortest
//! round-trip form, so output never depends on locale or on noise below the
//! twelfth digit.

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        // also folds -0.0 into 0.0
        return if x == 0.0 { 0.0 } else { x };
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("scientific notation parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

pub fn float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    serde_json::to_string(&round_sig(x)).expect("finite float serializes")
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("checked f64");
            *v = Value::from(round_sig(x));
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded, terminated by a newline.
pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut v = serde_json::to_value(value).map_err(|e| CliError::Numerical(e.to_string()))?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// A CSV table; cells are written as given, so callers pass [`float`] output.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn header(&self) -> &[&'static str] {
        &self.header
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<String>> {
        self.rows.iter()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
