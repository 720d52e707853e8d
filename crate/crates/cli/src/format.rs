//! Text output: numbers at 12 significant digits with trailing zeros removed.

use causal_diamonds::{Diamond, Event};

pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        trim(format!("{:.*}", (11 - exp).max(0) as usize, x))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// `(t, (x0, x1, ...))`
pub fn event(e: &Event) -> String {
    let xs: Vec<String> = e.x.coords().iter().map(|&c| num(c)).collect();
    format!("({}, ({}))", num(e.t), xs.join(", "))
}

pub fn diamond(d: &Diamond) -> String {
    format!("{} -> {}", event(d.bottom()), event(d.top()))
}

pub fn row(values: &[f64]) -> String {
    values.iter().map(|&v| num(v)).collect::<Vec<_>>().join(",")
}

/// `t, x0, ..., x{n-1}` for an event.
pub fn event_fields(e: &Event) -> Vec<f64> {
    std::iter::once(e.t).chain(e.x.coords().iter().copied()).collect()
}
