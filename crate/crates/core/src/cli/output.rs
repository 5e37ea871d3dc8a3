//! Number formatting and the text/JSON/CSV renderers.

use serde_json::{Map, Number, Value};

use crate::error::invalid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(invalid(format!(
                "unknown format '{other}' (text, json, csv)"
            ))),
        }
    }
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// Shortest representation that round-trips the value rounded to
/// `digits` significant digits.
pub fn format_number(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let y = round_sig(x, digits);
    let a = y.abs();
    if y == 0.0 {
        "0".into()
    } else if (1e-5..1e16).contains(&a) {
        format!("{y}")
    } else {
        format!("{y:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Nums(Vec<f64>),
}

impl Field {
    fn render(&self, digits: usize) -> String {
        match self {
            Field::Num(x) => format_number(*x, digits),
            Field::Int(n) => n.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
            Field::Nums(xs) => xs
                .iter()
                .map(|x| format_number(*x, digits))
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    fn json(&self, digits: usize) -> Value {
        let num =
            |x: f64| Number::from_f64(round_sig(x, digits)).map_or(Value::Null, Value::Number);
        match self {
            Field::Num(x) => num(*x),
            Field::Int(n) => Value::from(*n),
            Field::Bool(b) => Value::Bool(*b),
            Field::Text(s) => Value::String(s.clone()),
            Field::Nums(xs) => Value::Array(xs.iter().map(|&x| num(x)).collect()),
        }
    }
}

/// An ordered list of named fields.
pub type Record = Vec<(&'static str, Field)>;

pub fn json_record(record: &Record, digits: usize) -> Value {
    let mut map = Map::new();
    for (k, v) in record {
        map.insert((*k).to_string(), v.json(digits));
    }
    Value::Object(map)
}

pub fn json_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// `key = value` lines.
pub fn text_record(record: &Record, digits: usize) -> String {
    record
        .iter()
        .map(|(k, v)| format!("{k} = {}\n", v.render(digits)))
        .collect()
}

/// CSV with a header taken from the first record.
pub fn csv_table(records: &[Record], digits: usize) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    if let Some(first) = records.first() {
        w.write_record(first.iter().map(|(k, _)| *k))
            .expect("writing to memory");
    }
    for r in records {
        w.write_record(r.iter().map(|(_, v)| v.render(digits)))
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV output is UTF-8")
}

pub fn render_table(records: &[Record], format: Format, digits: usize) -> String {
    match format {
        Format::Json => json_string(&Value::Array(
            records.iter().map(|r| json_record(r, digits)).collect(),
        )),
        Format::Csv => csv_table(records, digits),
        Format::Text => records
            .iter()
            .map(|r| text_record(r, digits))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

pub fn render_record(record: &Record, format: Format, digits: usize) -> String {
    match format {
        Format::Json => json_string(&json_record(record, digits)),
        Format::Csv => csv_table(std::slice::from_ref(record), digits),
        Format::Text => text_record(record, digits),
    }
}
