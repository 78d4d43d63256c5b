use ivfg_core::format::round_sig;
use ivfg_core::Interval;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

/// Pretty JSON with every float rounded to 12 significant digits.
pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let v = serde_json::to_value(value).map_err(|e| CliError::Data(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&rounded(v)).map_err(|e| CliError::Data(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Value::Array(xs) => Value::Array(xs.into_iter().map(rounded).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

pub fn intervals(xs: &[Interval]) -> String {
    xs.iter().map(Interval::to_string).collect::<Vec<_>>().join(" ")
}

pub fn yes_no(expected: bool, word: &str) -> String {
    if expected {
        word.to_string()
    } else {
        format!("not {word}")
    }
}
