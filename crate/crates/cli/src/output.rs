use serde_json::{Number, Value};

/// Rounds every non-integer number to `digits` significant digits so that
/// output is stable across platforms and runs.
pub fn round_floats(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            *v = Number::from_f64(round_sig(x, digits)).map(Value::Number).unwrap_or(Value::Null);
        }
        Value::Array(a) => a.iter_mut().for_each(|x| round_floats(x, digits)),
        Value::Object(o) => o.values_mut().for_each(|x| round_floats(x, digits)),
        _ => {}
    }
}

fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let s = format!("{:.*e}", digits.max(1) - 1, x);
    let r: f64 = s.parse().unwrap();
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn render(mut v: Value, digits: usize) -> String {
    round_floats(&mut v, digits);
    serde_json::to_string_pretty(&v).expect("JSON values always serialize")
}
