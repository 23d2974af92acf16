//! The built-in identity corpus. Every entry parses under the document
//! grammar of [`crate::algebra`]; names are stable.
//!
//! | set            | operations            | contents                                  |
//! |----------------|-----------------------|-------------------------------------------|
//! | `associative`  | `m/2`, `dl/2`, `dr/2` | associativity, dialgebra axioms           |
//! | `lie`          | `br/2`, `lb/2`        | Lie identities, KP images, Leibniz        |
//! | `lie_triple`   | `br/3`, `lt/3`        | L1-L3 and every KP stage                  |
//! | `lts`          | `lt/3`                | LTS1, LTS2, LTS-B, LTS3, LTS-A            |
//! | `operator`     | `lt/3`                | OP1-OP4 on a generic fifth argument       |
//! | `jordan`       | infix `mul/2`         | RJ, RO, straightened expansions           |

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::One;

use crate::algebra::{parse_document, parse_infix, vars, Document, Identity, OpSymbol, Polynomial, RewriteRule};
use crate::error::{Error, Result};
use crate::rightcomm::mul;
use crate::Rational;

pub const ASSOCIATIVE: &str = include_str!("../fixtures/associative.txt");
pub const LIE: &str = include_str!("../fixtures/lie.txt");
pub const LIE_TRIPLE: &str = include_str!("../fixtures/lie_triple.txt");
pub const LTS: &str = include_str!("../fixtures/lts.txt");
pub const JORDAN: &str = include_str!("../fixtures/jordan.txt");

pub const SYSTEM_JSON: [(&str, &str); 4] = [
    ("system1", include_str!("../fixtures/systems/system1.json")),
    ("system2", include_str!("../fixtures/systems/system2.json")),
    ("system3", include_str!("../fixtures/systems/system3.json")),
    ("system4", include_str!("../fixtures/systems/system4.json")),
];

pub const SET_NAMES: [&str; 6] = ["associative", "lie", "lie_triple", "lts", "operator", "jordan"];

fn parsed(cell: &'static OnceLock<Document>, text: &str) -> &'static Document {
    cell.get_or_init(|| parse_document(text).expect("built-in fixture parses"))
}

pub fn associative() -> &'static Document {
    static D: OnceLock<Document> = OnceLock::new();
    parsed(&D, ASSOCIATIVE)
}

pub fn lie() -> &'static Document {
    static D: OnceLock<Document> = OnceLock::new();
    parsed(&D, LIE)
}

pub fn lie_triple() -> &'static Document {
    static D: OnceLock<Document> = OnceLock::new();
    parsed(&D, LIE_TRIPLE)
}

pub fn lts() -> &'static Document {
    static D: OnceLock<Document> = OnceLock::new();
    parsed(&D, LTS)
}

/// Looks up a named identity in one of the corpus sets.
pub fn identity(set: &str, name: &str) -> Result<Identity> {
    let missing = || Error::InvalidSystem(format!("no fixture {name} in set {set}"));
    match set {
        "associative" => associative().identity(name).ok_or_else(missing),
        "lie" => lie().identity(name).ok_or_else(missing),
        "lie_triple" => lie_triple().identity(name).ok_or_else(missing),
        "lts" => lts().identity(name).ok_or_else(missing),
        "operator" => operator_identities().into_iter().find(|i| i.name() == name).ok_or_else(missing),
        "jordan" => jordan().iter().find(|(n, _)| n == name).map(|(n, p)| Identity::new(n.clone(), p.clone())).ok_or_else(missing),
        _ => Err(Error::InvalidSystem(format!("unknown fixture set {set}"))),
    }
}

/// Every identity of a set, in file order.
pub fn identities(set: &str) -> Result<Vec<Identity>> {
    Ok(match set {
        "associative" => associative().identities(),
        "lie" => lie().identities(),
        "lie_triple" => lie_triple().identities(),
        "lts" => lts().identities(),
        "operator" => operator_identities(),
        "jordan" => jordan().iter().map(|(n, p)| Identity::new(n.clone(), p.clone())).collect(),
        _ => return Err(Error::InvalidSystem(format!("unknown fixture set {set}"))),
    })
}

pub fn named(set: &str, names: &[&str]) -> Vec<Identity> {
    names.iter().map(|n| identity(set, n).expect("fixture name")).collect()
}

pub fn rule(doc: &Document, name: &str) -> RewriteRule {
    doc.rule(name).expect("fixture rule")
}

pub fn lt() -> OpSymbol {
    OpSymbol::new("lt", 3)
}

pub fn lts_a() -> Identity {
    identity("lts", "LTS-A").unwrap()
}

pub fn lts_b() -> Identity {
    identity("lts", "LTS-B").unwrap()
}

/// LTS-A and LTS-B.
pub fn lts_pair() -> Vec<Identity> {
    vec![lts_a(), lts_b()]
}

/// LTS1, LTS2, LTS-B, LTS3.
pub fn lts_four() -> Vec<Identity> {
    named("lts", &["LTS1", "LTS2", "LTS-B", "LTS3"])
}

pub fn lie_triple_axioms() -> Vec<Identity> {
    named("lie_triple", &["L1", "L2", "L3"])
}

pub fn leibniz() -> Identity {
    identity("lie", "leibniz").unwrap()
}

fn t(x: &Polynomial, y: &Polynomial, z: &Polynomial) -> Polynomial {
    Polynomial::apply(&lt(), &[x.clone(), y.clone(), z.clone()])
}

fn left(a: &Polynomial, b: &Polynomial, x: &Polynomial) -> Polynomial {
    t(a, b, x)
}

fn right(a: &Polynomial, b: &Polynomial, x: &Polynomial) -> Polynomial {
    t(x, a, b) - t(x, b, a)
}

/// OP1-OP4 written out with `L_ab(x) = <a,b,x>` and
/// `R_ab(x) = <x,a,b> - <x,b,a>`.
pub fn operator_identities() -> Vec<Identity> {
    let [a, b, c, d, e]: [Polynomial; 5] = vars("abcde").into_iter().map(Polynomial::var).collect::<Vec<_>>().try_into().unwrap();
    let cde = t(&c, &d, &e);
    let op1 = right(&a, &b, &cde) - t(&right(&a, &b, &c), &d, &e) - t(&c, &right(&a, &b, &d), &e) - t(&c, &d, &right(&a, &b, &e));
    let lab = |x: &Polynomial| left(&a, &b, x);
    let op2 = lab(&cde) - t(&lab(&c), &d, &e) + t(&lab(&d), &c, &e) + t(&lab(&e), &c, &d) - t(&lab(&e), &d, &c);
    let op3 = right(&a, &b, &right(&c, &d, &e)) - right(&c, &d, &right(&a, &b, &e)) - right(&right(&a, &b, &c), &d, &e)
        + right(&right(&a, &b, &d), &c, &e);
    let op4 = right(&c, &d, &lab(&e)) - lab(&right(&c, &d, &e)) - left(&lab(&c), &d, &e) + left(&lab(&d), &c, &e);
    vec![Identity::new("OP1", op1), Identity::new("OP2", op2), Identity::new("OP3", op3), Identity::new("OP4", op4)]
}

fn logical_lines(text: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with(' ') {
            if let Some(last) = out.last_mut() {
                last.1.push(' ');
                last.1.push_str(line.trim());
            }
            continue;
        }
        if let Some((n, b)) = line.split_once(':') {
            out.push((n.trim().to_string(), b.trim().to_string()));
        }
    }
    out
}

/// Infix polynomials of the `jordan` set (certificate entries excluded).
pub fn jordan() -> &'static [(String, Polynomial)] {
    static J: OnceLock<Vec<(String, Polynomial)>> = OnceLock::new();
    J.get_or_init(|| {
        logical_lines(JORDAN)
            .into_iter()
            .filter(|(n, _)| !n.ends_with(".certificate"))
            .map(|(n, b)| {
                let p = parse_infix(&b, &mul()).expect("built-in fixture parses");
                (n, p)
            })
            .collect()
    })
}

pub fn jordan_polynomial(name: &str) -> Polynomial {
    jordan().iter().find(|(n, _)| n == name).map(|(_, p)| p.clone()).expect("jordan fixture")
}

/// Signed generator labels of a `*.certificate` entry, e.g.
/// `RJ(ce,b,d,a) -> 1`.
pub fn jordan_certificate(name: &str) -> BTreeMap<String, Rational> {
    let key = format!("{name}.certificate");
    let (_, body) = logical_lines(JORDAN).into_iter().find(|(n, _)| *n == key).expect("certificate fixture");
    let mut out = BTreeMap::new();
    let mut sign = Rational::one();
    for tok in body.split_whitespace() {
        match tok {
            "+" => sign = Rational::one(),
            "-" => sign = -Rational::one(),
            label => {
                out.insert(label.to_string(), sign.clone());
                sign = Rational::one();
            }
        }
    }
    out
}
