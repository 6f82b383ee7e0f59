//! Rendering of report records as JSON lines, CSV or plain text.

use std::io::{self, Write};

use num_bigint::BigUint;
use pel_core::verify::{Outcome, Quantity, Status};
use pel_core::Rational;
use serde_json::{Map, Number, Value};

use crate::config::Format;

pub type Record = Map<String, Value>;

/// Exact integer as a JSON number of arbitrary length.
pub fn big(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal digits"))
}

/// Reduced fraction as a `"num/den"` string.
pub fn frac(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn quantity(q: &Quantity) -> Value {
    match q {
        Quantity::Int(n) => big(n),
        Quantity::Ratio(r) => frac(r),
    }
}

pub fn float(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn outcome_record(o: &Outcome) -> Record {
    let mut r = Record::new();
    r.insert("claim".into(), o.claim.clone().into());
    let params: Map<String, Value> = o
        .params
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    r.insert("params".into(), params.into());
    let computed: Map<String, Value> = o
        .computed
        .iter()
        .map(|(k, q)| (k.clone(), quantity(q)))
        .collect();
    r.insert("computed".into(), computed.into());
    r.insert("relation".into(), o.relation.clone().into());
    r.insert("pass".into(), o.passed().into());
    let (status, reason) = match &o.status {
        Status::Pass => ("pass", Value::Null),
        Status::Fail => ("fail", Value::Null),
        Status::Skipped(why) => ("skipped", Value::String(why.clone())),
    };
    r.insert("status".into(), status.into());
    r.insert("reason".into(), reason);
    r.insert("ms".into(), o.ms.into());
    r
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Writes `records` in `format`. CSV columns follow the keys of the first
/// record; later records fill missing columns with empty cells.
pub fn emit(records: &[Record], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let Some(first) = records.first() else {
                return Ok(());
            };
            let columns: Vec<&String> = first.keys().collect();
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(columns.iter().map(|c| c.as_str()))?;
            for r in records {
                w.write_record(columns.iter().map(|c| r.get(*c).map(cell).unwrap_or_default()))?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in records {
                let line: Vec<String> = r.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pel_core::arith::ratio;

    fn sample() -> Record {
        let mut r = Record::new();
        r.insert("order".into(), big(&BigUint::from(720u32)));
        r.insert("probability".into(), frac(&ratio(496u32, 720u32)));
        r.insert("count".into(), big(&BigUint::from(496u32)));
        r
    }

    #[test]
    fn json_lines() {
        let mut buf = Vec::new();
        emit(&[sample()], Format::Json, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "{\"count\":496,\"order\":720,\"probability\":\"31/45\"}\n"
        );
    }

    #[test]
    fn huge_integers_stay_exact() {
        let n = BigUint::from(360u32).pow(30);
        let v = big(&n);
        assert_eq!(v.to_string(), n.to_string());
    }

    #[test]
    fn csv_and_text() {
        let mut buf = Vec::new();
        emit(&[sample(), sample()], Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "count,order,probability\n496,720,31/45\n496,720,31/45\n"
        );
        let mut buf = Vec::new();
        emit(&[sample()], Format::Text, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "count=496 order=720 probability=31/45\n");
    }
}
