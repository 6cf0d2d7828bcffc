//! JSON and text rendering. Rationals travel as `"p/q"` strings and complex numbers
//! as decimal strings so nothing is lost to binary floating point on the wire.

use rug::float::Round;
use rug::{Complex, Float, Integer, Rational};
use serde_json::{json, Value};
use waring_core::{BinaryForm, ComplexPoint, RankResult};

pub fn rational_str(c: &Rational) -> String {
    if *c.denom() == 1 {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: Integer = num.parse().ok()?;
    let den: Integer = den.parse().ok()?;
    if den <= 0 {
        return None;
    }
    Some(Rational::from((num, den)))
}

pub fn form_json(f: &BinaryForm) -> Value {
    json!({
        "degree": f.degree(),
        "coefficients": f.coeffs().iter().map(rational_str).collect::<Vec<_>>(),
        "expression": f.to_string(),
    })
}

/// Significant decimal digits carried by `bits` binary digits, plus one.
pub fn decimal_digits(bits: u32) -> usize {
    (f64::from(bits) * std::f64::consts::LOG10_2).ceil() as usize + 1
}

pub fn float_str(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix_round(10, Some(digits), Round::Nearest)
}

pub fn complex_json(z: &Complex, digits: usize) -> Value {
    json!({ "re": float_str(z.real(), digits), "im": float_str(z.imag(), digits) })
}

pub fn point_json(p: &ComplexPoint, digits: usize) -> Value {
    json!({ "t": complex_json(p.t(), digits), "u": complex_json(p.u(), digits) })
}

pub fn f64_complex_json(re: f64, im: f64) -> Value {
    json!({ "re": format!("{re:e}"), "im": format!("{im:e}") })
}

/// Short human-readable complex number, e.g. `-0.5 + 0.866i`.
pub fn complex_text(z: &Complex, digits: usize) -> String {
    let re = float_str(z.real(), digits);
    if z.imag().is_zero() {
        return re;
    }
    let mut im = z.imag().clone();
    let sign = if im.is_sign_negative() {
        im = -im;
        '-'
    } else {
        '+'
    };
    format!("{re} {sign} {}i", float_str(&im, digits))
}

pub fn rank_json(q: &BinaryForm, r: &RankResult) -> Value {
    let mut v = form_json(q);
    let obj = v.as_object_mut().expect("object");
    obj.insert("rank".into(), json!(r.rank));
    obj.insert("border_rank".into(), json!(r.border_rank));
    obj.insert("case".into(), json!(r.case.as_str()));
    obj.insert("apolar".into(), r.apolar.as_ref().map_or(Value::Null, form_json));
    v
}

pub fn rank_text(r: &RankResult) -> String {
    let mut s = format!(
        "rank = {} ({}; border rank {}",
        r.rank,
        r.case.as_str(),
        r.border_rank
    );
    if let Some(f) = &r.apolar {
        s.push_str(&format!("; apolar f = {f}"));
    }
    s.push(')');
    s
}

pub fn set_text<'a>(items: impl IntoIterator<Item = &'a usize>) -> String {
    let parts: Vec<String> = items.into_iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}
