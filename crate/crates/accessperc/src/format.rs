//! Tabular output in CSV and JSON.
//!
//! Floats are printed like C's `%.17g`, which round-trips every double.
//! Integers too wide for 64 bits are written as decimal strings in JSON;
//! rationals are always strings of the form `num/den`.

use std::fmt::Display;
use std::io::Write;
use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{Map, Number, Value};

use crate::AppError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// `%.17g`: shortest of fixed and exponent notation at 17 significant
/// digits, trailing zeros removed.
pub fn fmt_g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    const P: i32 = 17;
    let sci = format!("{:.*e}", (P - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (P - 1 - exp) as usize;
        strip_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One table entry.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Float(f64),
    /// Non-negative integer of any size, in decimal.
    Big(String),
    /// Exact rational `num/den`, or an integer when the denominator is 1.
    Ratio(String),
    Text(String),
    Bool(bool),
    /// Missing value: `NA` in CSV, `null` in JSON.
    Na,
}

impl Cell {
    pub fn big(v: &BigUint) -> Self {
        Cell::Big(v.to_string())
    }

    pub fn ratio(v: &BigRational) -> Self {
        Cell::Ratio(v.to_string())
    }

    pub fn text(v: impl Display) -> Self {
        Cell::Text(v.to_string())
    }

    pub fn opt_float(v: Option<f64>) -> Self {
        v.map_or(Cell::Na, Cell::Float)
    }

    fn csv_text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(f) => fmt_g17(*f),
            Cell::Big(s) | Cell::Ratio(s) | Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Na => "NA".into(),
        }
    }

    fn json_value(&self) -> Value {
        match self {
            Cell::Int(i) => Value::Number(Number::from_str(&i.to_string()).expect("integer literal")),
            Cell::Float(f) if f.is_finite() => {
                Value::Number(Number::from_str(&fmt_g17(*f)).expect("finite float literal"))
            }
            Cell::Float(_) | Cell::Na => Value::Null,
            Cell::Big(s) => match s.parse::<u64>() {
                Ok(_) => Value::Number(Number::from_str(s).expect("u64 literal")),
                Err(_) => Value::String(s.clone()),
            },
            Cell::Ratio(s) | Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

/// Column names plus rows of cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> Result<(), AppError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    pub fn to_string(&self, format: Format) -> Result<String, AppError> {
        let mut buf = Vec::new();
        self.write(format, &mut buf)?;
        Ok(String::from_utf8(buf).expect("tables are UTF-8"))
    }

    fn write_csv<W: Write>(&self, out: W) -> Result<(), AppError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        w.flush()?;
        Ok(())
    }

    /// An array of objects, keys in column order, one object per line.
    fn write_json<W: Write>(&self, mut out: W) -> Result<(), AppError> {
        writeln!(out, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            let obj: Map<String, Value> = self
                .columns
                .iter()
                .cloned()
                .zip(row.iter().map(Cell::json_value))
                .collect();
            let sep = if i + 1 < self.rows.len() { "," } else { "" };
            writeln!(out, "  {}{sep}", serde_json::to_string(&obj)?)?;
        }
        writeln!(out, "]")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_matches_printf() {
        let cases = [
            (0.1, "0.10000000000000001"),
            (0.5, "0.5"),
            (1.0, "1"),
            (100.0, "100"),
            (1e-5, "1.0000000000000001e-05"),
            (1e17, "1e+17"),
            (12345678901234567.0, "12345678901234568"),
            (-2.5e-300, "-2.5e-300"),
            (0.0001, "0.0001"),
            (3.87420489, "3.8742048900000001"),
        ];
        for (v, s) in cases {
            assert_eq!(fmt_g17(v), s, "{v:e}");
        }
        assert_eq!(fmt_g17(f64::NAN), "nan");
        assert_eq!(fmt_g17(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn g17_round_trips() {
        let mut x = 0.123_456_789_f64;
        for _ in 0..2000 {
            x = (x * 1.618_033_988_749_895 + 0.271_828) % 7.0 * 10f64.powi((x * 97.0) as i32 % 40 - 20);
            assert_eq!(fmt_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_and_json_agree() {
        let mut t = Table::new(["a", "b", "c", "d", "e"]);
        t.push(vec![
            Cell::Int(3),
            Cell::Float(0.1),
            Cell::Big("18651552840".into()),
            Cell::Big("340282366920938463463374607431768211456".into()),
            Cell::Na,
        ]);
        let csv = t.to_string(Format::Csv).unwrap();
        assert_eq!(
            csv,
            "a,b,c,d,e\n3,0.10000000000000001,18651552840,340282366920938463463374607431768211456,NA\n"
        );
        let json = t.to_string(Format::Json).unwrap();
        assert_eq!(
            json,
            "[\n  {\"a\":3,\"b\":0.10000000000000001,\"c\":18651552840,\
             \"d\":\"340282366920938463463374607431768211456\",\"e\":null}\n]\n"
        );
        let parsed: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed[0]["b"].as_f64(), Some(0.1));
    }
}
