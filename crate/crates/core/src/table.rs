//! Result tables with a fixed CSV/JSON schema.
//!
//! Columns: `eta_bar,theta_bar,N,quantity,value,convergence_delta,status`.
//! Numbers use 17 significant digits; list-valued cells join entries with `;`.

use serde_json::{Map, Number, Value};

pub const HEADER: [&str; 7] = ["eta_bar", "theta_bar", "N", "quantity", "value", "convergence_delta", "status"];

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub eta_bar: f64,
    pub theta_bar: f64,
    pub n: usize,
    pub quantity: String,
    pub value: Vec<f64>,
    pub convergence_delta: Vec<f64>,
    pub status: String,
}

impl Row {
    pub fn new(eta_bar: f64, theta_bar: f64, n: usize, quantity: &str) -> Self {
        Row {
            eta_bar,
            theta_bar,
            n,
            quantity: quantity.to_string(),
            value: Vec::new(),
            convergence_delta: Vec::new(),
            status: "ok".into(),
        }
    }

    pub fn with_values(mut self, value: Vec<f64>, delta: Vec<f64>, status: &str) -> Self {
        self.value = value;
        self.convergence_delta = delta;
        self.status = status.to_string();
        self
    }

    /// Clears the values and records `msg` as an error status.
    pub fn failed(mut self, msg: &str) -> Self {
        self.value.clear();
        self.convergence_delta.clear();
        self.status = format!("error: {msg}");
        self
    }

    pub fn is_error(&self) -> bool {
        self.status.starts_with("error")
    }
}

/// `x` with 17 significant digits, e.g. `1.0000000000000000e-1`.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt17(x)).collect::<Vec<_>>().join(";")
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).expect("writing to memory");
    for r in rows {
        w.write_record([
            fmt17(r.eta_bar),
            fmt17(r.theta_bar),
            r.n.to_string(),
            r.quantity.clone(),
            join(&r.value),
            join(&r.convergence_delta),
            r.status.clone(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is UTF-8")
}

/// A JSON number with 17 significant digits; `null` when not finite.
pub fn json_number(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(fmt17(x).parse::<Number>().expect("exponent notation is a JSON number"))
    } else {
        Value::Null
    }
}

fn json_list(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| json_number(x)).collect())
}

pub fn to_json_value(rows: &[Row]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("eta_bar".into(), json_number(r.eta_bar));
                m.insert("theta_bar".into(), json_number(r.theta_bar));
                m.insert("N".into(), Value::from(r.n));
                m.insert("quantity".into(), Value::from(r.quantity.clone()));
                m.insert("value".into(), json_list(&r.value));
                m.insert("convergence_delta".into(), json_list(&r.convergence_delta));
                m.insert("status".into(), Value::from(r.status.clone()));
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn to_json(rows: &[Row]) -> String {
    let mut s = serde_json::to_string_pretty(&to_json_value(rows)).expect("serializable");
    s.push('\n');
    s
}
