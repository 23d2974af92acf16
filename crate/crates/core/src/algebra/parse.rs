//! Text syntax for polynomials and identity files.
//!
//! Prefix grammar (whitespace insignificant):
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [rational ['*']] atom
//! atom     := var | opname '(' expr (',' expr)* ')' | '(' expr ')'
//! rational := int ['/' posint]
//! opname   := name ['_' variant]
//! ```
//!
//! A document is a sequence of lines: `# comment`, declarations
//! `op <name>/<arity> [variants <n>]`, and entries `name: expr [= expr]`.
//! Indented lines continue the previous entry.
//!
//! The infix syntax used for binary products writes the product as
//! juxtaposition or `*`, associating to the left: `(ab)(cd)`, `2(xy+yx)`,
//! `a*(b*c)`. Infix variables are one ASCII letter followed by digits.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::rewrite::RewriteRule;
use super::symbol::{OpSymbol, Variable};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownOperation(String),
    Arity { op: String, expected: usize, got: usize },
    BadDeclaration(String),
    DuplicateName(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}, ")?;
        }
        write!(f, "column {}: ", self.pos + 1)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownOperation(op) => write!(f, "unknown operation {op}"),
            ParseErrorKind::Arity { op, expected, got } => {
                write!(f, "operation {op} expects {expected} arguments, got {got}")
            }
            ParseErrorKind::BadDeclaration(d) => write!(f, "bad declaration: {d}"),
            ParseErrorKind::DuplicateName(n) => write!(f, "duplicate entry name {n}"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Declared operations: name -> (arity, number of variants).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    ops: BTreeMap<String, (usize, u32)>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn declare(&mut self, name: &str, arity: usize, variants: u32) {
        self.ops.insert(name.to_string(), (arity, variants));
    }

    pub fn with(mut self, name: &str, arity: usize, variants: u32) -> Self {
        self.declare(name, arity, variants);
        self
    }

    /// Declares every operation (and variant count) used by the symbols.
    pub fn from_ops<'a>(ops: impl IntoIterator<Item = &'a OpSymbol>) -> Self {
        let mut sig = Signature::new();
        for op in ops {
            let v = op.variant().unwrap_or(0);
            let e = sig.ops.entry(op.name().to_string()).or_insert((op.arity(), 0));
            e.1 = e.1.max(v);
        }
        sig
    }

    fn lookup(&self, name: &str, variant: Option<u32>) -> Option<OpSymbol> {
        let (arity, variants) = *self.ops.get(name)?;
        let base = OpSymbol::new(name, arity);
        match variant {
            None => Some(base),
            Some(k) if k >= 1 && k <= variants => Some(base.with_variant(k)),
            Some(_) => None,
        }
    }

    /// Header lines in document syntax.
    pub fn declarations(&self) -> String {
        let mut s = String::new();
        for (name, (arity, variants)) in &self.ops {
            if *variants > 0 {
                s.push_str(&format!("op {name}/{arity} variants {variants}\n"));
            } else {
                s.push_str(&format!("op {name}/{arity}\n"));
            }
        }
        s
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    // no whitespace skipping: juxtaposition in infix mode
    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.src[self.pos..].chars().next()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.describe_next();
            Err(self.err(ParseErrorKind::Syntax(format!("expected '{c}', found {found}"))))
        }
    }

    fn describe_next(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { pos: self.pos, line: None, kind }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            None
        } else {
            Some(self.src[start..self.pos].parse().unwrap())
        }
    }

    fn rational(&mut self) -> std::result::Result<Option<Rational>, ParseError> {
        let Some(num) = self.digits() else { return Ok(None) };
        if self.eat('/') {
            let at = self.pos;
            let den = self.digits().ok_or_else(|| self.err(ParseErrorKind::Syntax("expected denominator".into())))?;
            if den.is_zero() {
                return Err(ParseError { pos: at, line: None, kind: ParseErrorKind::Syntax("zero denominator".into()) });
            }
            Ok(Some(Rational::new(num, den)))
        } else {
            Ok(Some(Rational::from_integer(num)))
        }
    }

    fn ident(&mut self) -> Option<(String, Option<u32>)> {
        self.skip_ws();
        let start = self.pos;
        match self.peek_raw() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return None,
        }
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_alphanumeric()) {
            self.bump();
        }
        let name = self.src[start..self.pos].to_string();
        let save = self.pos;
        if self.peek_raw() == Some('_') {
            self.bump();
            let dstart = self.pos;
            while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
                self.bump();
            }
            if dstart < self.pos {
                return Some((name, Some(self.src[dstart..self.pos].parse().unwrap())));
            }
            self.pos = save;
        }
        Some((name, None))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

struct PrefixParser<'a, 's> {
    cur: Cursor<'s>,
    sig: &'a Signature,
}

impl PrefixParser<'_, '_> {
    fn expr(&mut self) -> std::result::Result<Polynomial, ParseError> {
        let mut out = Polynomial::zero();
        let mut sign = if self.cur.eat('-') {
            -Rational::one()
        } else {
            self.cur.eat('+');
            Rational::one()
        };
        loop {
            let t = self.term()?;
            out += &t.scale(&sign);
            if self.cur.eat('+') {
                sign = Rational::one();
            } else if self.cur.eat('-') {
                sign = -Rational::one();
            } else {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Polynomial, ParseError> {
        let coeff = self.cur.rational()?;
        if let Some(c) = coeff {
            self.cur.eat('*');
            let atom = self.atom()?;
            Ok(atom.scale(&c))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> std::result::Result<Polynomial, ParseError> {
        if self.cur.eat('(') {
            let e = self.expr()?;
            self.cur.expect(')')?;
            return Ok(e);
        }
        let start = {
            self.cur.skip_ws();
            self.cur.pos
        };
        let Some((name, variant)) = self.cur.ident() else {
            let found = self.cur.describe_next();
            return Err(self.cur.err(ParseErrorKind::Syntax(format!("expected a term, found {found}"))));
        };
        if self.cur.peek() == Some('(') {
            self.cur.bump();
            let mut args = vec![self.expr()?];
            while self.cur.eat(',') {
                args.push(self.expr()?);
            }
            self.cur.expect(')')?;
            let shown = match variant {
                Some(k) => format!("{name}_{k}"),
                None => name.clone(),
            };
            let op = self.sig.lookup(&name, variant).ok_or(ParseError {
                pos: start,
                line: None,
                kind: ParseErrorKind::UnknownOperation(shown.clone()),
            })?;
            if op.arity() != args.len() {
                return Err(ParseError {
                    pos: start,
                    line: None,
                    kind: ParseErrorKind::Arity { op: shown, expected: op.arity(), got: args.len() },
                });
            }
            Ok(Polynomial::apply(&op, &args))
        } else if variant.is_some() {
            Err(ParseError { pos: start, line: None, kind: ParseErrorKind::Syntax(format!("variable {name} cannot carry a subscript")) })
        } else {
            Ok(Polynomial::var(Variable::new(&name)))
        }
    }
}

/// Parses a polynomial in prefix syntax against declared operations.
pub fn parse_polynomial(text: &str, sig: &Signature) -> std::result::Result<Polynomial, ParseError> {
    let mut p = PrefixParser { cur: Cursor::new(text), sig };
    let e = p.expr()?;
    if !p.cur.at_end() {
        let found = p.cur.describe_next();
        return Err(p.cur.err(ParseErrorKind::Syntax(format!("unexpected {found}"))));
    }
    Ok(e)
}

struct InfixParser<'a, 's> {
    cur: Cursor<'s>,
    op: &'a OpSymbol,
}

impl InfixParser<'_, '_> {
    fn expr(&mut self) -> std::result::Result<Polynomial, ParseError> {
        let mut out = Polynomial::zero();
        let mut sign = if self.cur.eat('-') {
            -Rational::one()
        } else {
            self.cur.eat('+');
            Rational::one()
        };
        loop {
            let t = self.term()?;
            out += &t.scale(&sign);
            if self.cur.eat('+') {
                sign = Rational::one();
            } else if self.cur.eat('-') {
                sign = -Rational::one();
            } else {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Polynomial, ParseError> {
        let coeff = self.cur.rational()?;
        if coeff.is_some() {
            self.cur.eat('*');
        }
        let prod = self.product()?;
        Ok(match coeff {
            Some(c) => prod.scale(&c),
            None => prod,
        })
    }

    fn product(&mut self) -> std::result::Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let explicit = self.cur.eat('*');
            match self.cur.peek() {
                Some(c) if c == '(' || c.is_ascii_alphabetic() => {
                    let rhs = self.factor()?;
                    acc = Polynomial::apply(self.op, &[acc, rhs]);
                }
                _ if explicit => {
                    let found = self.cur.describe_next();
                    return Err(self.cur.err(ParseErrorKind::Syntax(format!("expected a factor, found {found}"))));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> std::result::Result<Polynomial, ParseError> {
        if self.cur.eat('(') {
            let e = self.expr()?;
            self.cur.expect(')')?;
            return Ok(e);
        }
        self.cur.skip_ws();
        let start = self.cur.pos;
        match self.cur.peek_raw() {
            Some(c) if c.is_ascii_alphabetic() => {
                self.cur.bump();
                while matches!(self.cur.peek_raw(), Some(c) if c.is_ascii_digit()) {
                    self.cur.bump();
                }
                Ok(Polynomial::var(Variable::new(&self.cur.src[start..self.cur.pos])))
            }
            _ => {
                let found = self.cur.describe_next();
                Err(self.cur.err(ParseErrorKind::Syntax(format!("expected a factor, found {found}"))))
            }
        }
    }
}

/// Parses infix products of the binary operation `op`, e.g. `(ab)c - a(bc)`.
pub fn parse_infix(text: &str, op: &OpSymbol) -> std::result::Result<Polynomial, ParseError> {
    assert_eq!(op.arity(), 2, "infix syntax needs a binary operation");
    let mut p = InfixParser { cur: Cursor::new(text), op };
    let e = p.expr()?;
    if !p.cur.at_end() {
        let found = p.cur.describe_next();
        return Err(p.cur.err(ParseErrorKind::Syntax(format!("unexpected {found}"))));
    }
    Ok(e)
}

/// One named entry of a document: `name: lhs [= rhs]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub lhs: Polynomial,
    pub rhs: Option<Polynomial>,
}

impl Entry {
    /// `lhs - rhs`, the polynomial asserted to vanish.
    pub fn polynomial(&self) -> Polynomial {
        match &self.rhs {
            Some(r) => &self.lhs - r,
            None => self.lhs.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub signature: Signature,
    pub entries: Vec<Entry>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<Polynomial> {
        self.entry(name).map(Entry::polynomial)
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn identity(&self, name: &str) -> Option<super::Identity> {
        self.get(name).map(|p| super::Identity::new(name, p))
    }

    pub fn identities(&self) -> Vec<super::Identity> {
        self.entries.iter().map(|e| super::Identity::new(e.name.clone(), e.polynomial())).collect()
    }

    /// Reads entry `name`, which must have the form `op(x,..) = rhs`.
    pub fn rule(&self, name: &str) -> Result<RewriteRule> {
        let e = self.entry(name).ok_or_else(|| Error::InvalidSystem(format!("no entry named {name}")))?;
        let rhs = e.rhs.clone().unwrap_or_default();
        let mut terms = e.lhs.terms();
        match (terms.next(), terms.next()) {
            (Some((m, c)), None) if c.is_one() => RewriteRule::from_equation(m, rhs),
            _ => Err(Error::NotMultilinear(format!("rule {name} must have a single-monomial left side"))),
        }
    }
}

/// Parses a document of declarations and named entries.
pub fn parse_document(text: &str) -> std::result::Result<Document, ParseError> {
    let mut doc = Document::default();
    // (line number, entry name, text)
    let mut pending: Vec<(usize, String, String)> = Vec::new();
    let mut auto = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let continuation = line.starts_with(' ') || line.starts_with('\t');
        let trimmed = line.trim();
        if continuation {
            match pending.last_mut() {
                Some(last) => {
                    last.2.push(' ');
                    last.2.push_str(trimmed);
                    continue;
                }
                None => {
                    return Err(ParseError {
                        pos: 0,
                        line: Some(lineno),
                        kind: ParseErrorKind::Syntax("continuation line without an entry".into()),
                    })
                }
            }
        }
        if let Some(decl) = trimmed.strip_prefix("op ") {
            parse_declaration(decl, &mut doc.signature).map_err(|mut e| {
                e.line = Some(lineno);
                e
            })?;
            continue;
        }
        let (name, body) = match trimmed.split_once(':') {
            Some((n, b)) if !n.trim().is_empty() && !n.contains('(') => (n.trim().to_string(), b.to_string()),
            _ => {
                auto += 1;
                (format!("#{auto}"), trimmed.to_string())
            }
        };
        if pending.iter().any(|(_, n, _)| *n == name) {
            return Err(ParseError { pos: 0, line: Some(lineno), kind: ParseErrorKind::DuplicateName(name) });
        }
        pending.push((lineno, name, body));
    }
    for (lineno, name, body) in pending {
        let with_line = |mut e: ParseError| {
            e.line = Some(lineno);
            e
        };
        let (lhs_src, rhs_src) = match body.split_once('=') {
            Some((l, r)) => (l, Some(r)),
            None => (body.as_str(), None),
        };
        let lhs = parse_polynomial(lhs_src, &doc.signature).map_err(with_line)?;
        let rhs = rhs_src.map(|r| parse_polynomial(r, &doc.signature).map_err(with_line)).transpose()?;
        doc.entries.push(Entry { name, lhs, rhs });
    }
    Ok(doc)
}

fn parse_declaration(decl: &str, sig: &mut Signature) -> std::result::Result<(), ParseError> {
    let bad = || ParseError { pos: 0, line: None, kind: ParseErrorKind::BadDeclaration(decl.trim().to_string()) };
    let words: Vec<&str> = decl.split_whitespace().collect();
    let (name, arity) = words.first().and_then(|w| w.split_once('/')).ok_or_else(bad)?;
    let arity: usize = arity.parse().map_err(|_| bad())?;
    if arity == 0 || name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric()) {
        return Err(bad());
    }
    let variants = match &words[1..] {
        [] => 0,
        ["variants", n] => n.parse().map_err(|_| bad())?,
        _ => return Err(bad()),
    };
    sig.declare(name, arity, variants);
    Ok(())
}

/// Signature check used by callers that build monomials by hand.
pub fn check_arity(op: &OpSymbol, args: usize) -> Result<()> {
    if op.arity() == args {
        Ok(())
    } else {
        Err(Error::Arity { op: op.to_string(), expected: op.arity(), got: args })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::format_polynomial;

    fn ternary() -> Signature {
        Signature::new().with("br", 3, 3)
    }

    #[test]
    fn two_term_expression() {
        let p = parse_polynomial("br(br(a,b,c),d,e) - br(a,b,br(c,d,e))", &ternary()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.degree(), Some(5));
    }

    #[test]
    fn arity_error() {
        let err = parse_polynomial("br(a,b)", &ternary()).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Arity { expected: 3, got: 2, .. }));
        assert_eq!(err.pos, 0);
    }

    #[test]
    fn unknown_operation_and_variant() {
        let err = parse_polynomial("a + xx(a,b,c)", &ternary()).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnknownOperation(_)));
        assert_eq!(err.pos, 4);
        let err = parse_polynomial("br_4(a,b,c)", &ternary()).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnknownOperation(ref s) if s == "br_4"));
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_polynomial("br(a,b,c) + + a", &ternary()).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(err.pos, 12);
    }

    #[test]
    fn coefficients() {
        let p = parse_polynomial("-3/2*br_1(a,b,c) + 2 br_2(a,b,c) - br_1(a,b,c)", &ternary()).unwrap();
        assert_eq!(format_polynomial(&p), "-5/2*br_1(a,b,c) + 2*br_2(a,b,c)");
    }

    #[test]
    fn infix_products() {
        let mul = OpSymbol::new("mul", 2);
        let p = parse_infix("(ab)(cd) - 2(xy+yx) + a*b*c", &mul).unwrap();
        let q = parse_infix("((a*b)*(c*d)) - 2*x*y - 2*(y*x) + (ab)c", &mul).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn document_with_continuations() {
        let doc =
            parse_document("# sample\nop br/3 variants 3\nx: br_1(a,b,c)\n   + br_2(b,a,c)\ny: br_2(a,b,c) = -br_1(b,a,c)\n").unwrap();
        assert_eq!(doc.entries.len(), 2);
        assert_eq!(doc.get("x").unwrap().len(), 2);
        assert_eq!(doc.get("y").unwrap().len(), 2);
        assert!(doc.rule("y").is_ok());
    }

    #[test]
    fn document_errors_carry_lines() {
        let err = parse_document("op br/3\n\nx: br(a,b)").unwrap_err();
        assert_eq!(err.line, Some(3));
        let err = parse_document("op br3").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::BadDeclaration(_)));
    }
}
