use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::Rational;

/// Canonical prefix rendering, e.g. `br_1(a,b,c) - 2*br_2(b,a,c)`.
/// Terms appear in monomial order; `parse_polynomial` inverts it.
pub fn format_polynomial(p: &Polynomial) -> String {
    render_terms(p, &mut |m, out| write_prefix(m, out), "*")
}

pub fn format_monomial(m: &Monomial) -> String {
    let mut s = String::new();
    write_prefix(m, &mut s);
    s
}

fn write_prefix(m: &Monomial, out: &mut String) {
    match m {
        Monomial::Leaf(v) => out.push_str(v.name()),
        Monomial::Apply(op, ch) => {
            let _ = write!(out, "{op}(");
            for (i, c) in ch.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_prefix(c, out);
            }
            out.push(')');
        }
    }
}

/// Juxtaposition rendering for binary products, e.g. `(((ab)c)d)e`.
/// Falls back to `*` when a variable name is not a letter plus digits.
pub fn format_infix(p: &Polynomial) -> String {
    let juxtapose = p.variables().iter().all(|v| infix_name(v.name()));
    render_terms(p, &mut |m, out| write_infix(m, out, juxtapose), "")
}

pub fn format_infix_monomial(m: &Monomial) -> String {
    let juxtapose = m.leaves().iter().all(|v| infix_name(v.name()));
    let mut s = String::new();
    write_infix(m, &mut s, juxtapose);
    s
}

fn infix_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_digit())
}

fn write_infix(m: &Monomial, out: &mut String, juxtapose: bool) {
    match m {
        Monomial::Leaf(v) => out.push_str(v.name()),
        Monomial::Apply(_, ch) => {
            for (i, c) in ch.iter().enumerate() {
                if i > 0 && !juxtapose {
                    out.push('*');
                }
                match c {
                    Monomial::Leaf(_) => write_infix(c, out, juxtapose),
                    _ => {
                        out.push('(');
                        write_infix(c, out, juxtapose);
                        out.push(')');
                    }
                }
            }
        }
    }
}

fn render_terms(p: &Polynomial, body: &mut dyn FnMut(&Monomial, &mut String), times: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        write_coefficient(&mut out, c, i == 0, times);
        body(m, &mut out);
    }
    out
}

/// Writes the sign separator and a non-unit magnitude.
pub(crate) fn write_coefficient(out: &mut String, c: &Rational, first: bool, times: &str) {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    let mag = c.abs();
    if !mag.is_one() {
        let _ = write!(out, "{mag}{times}");
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_polynomial(self))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_monomial(self))
    }
}
