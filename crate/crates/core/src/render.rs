//! Text rendering shared by the polynomial types.
//!
//! Output is valid input for the expression parser: coefficients with more
//! than one term are parenthesized, `q` exponents may be negative.

use num_traits::{One, Signed as _};

use crate::coefficients::ParamScalar;

/// A rendered term and its sign, so terms can be joined with ` + ` / ` - `.
pub(crate) struct SignedTerm {
    negative: bool,
    body: String,
}

/// Render `c * mono`, where `mono` is a product of generators (possibly empty).
pub(crate) fn coefficient_times(c: &ParamScalar, mono: &str) -> SignedTerm {
    if c.len() > 1 {
        let body = if mono.is_empty() {
            format!("({c})")
        } else {
            format!("({c})*{mono}")
        };
        return SignedTerm { negative: false, body };
    }
    let (exp, coeff) = c.terms().next().expect("zero coefficients are never stored");
    let abs = coeff.abs();
    let param = exp.to_string();
    let mut factors = Vec::new();
    if !abs.is_one() || (param == "1" && mono.is_empty()) {
        factors.push(abs.to_string());
    }
    if param != "1" {
        factors.push(param);
    }
    if !mono.is_empty() {
        factors.push(mono.to_string());
    }
    SignedTerm {
        negative: coeff.is_negative(),
        body: factors.join("*"),
    }
}

pub(crate) fn join_signed(parts: &[SignedTerm]) -> String {
    let mut out = String::new();
    for (i, part) in parts.iter().enumerate() {
        match (i == 0, part.negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&part.body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `y^m*x^n` with unit exponents elided; empty for `m = n = 0`.
pub(crate) fn generator_monomial(m: u32, n: u32) -> String {
    let mut parts = Vec::new();
    match m {
        0 => {}
        1 => parts.push("y".to_string()),
        _ => parts.push(format!("y^{m}")),
    }
    match n {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{n}")),
    }
    parts.join("*")
}
