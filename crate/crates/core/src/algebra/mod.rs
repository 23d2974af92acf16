//! Multilinear nonassociative polynomials over an arbitrary operation
//! signature, with exact rational coefficients.

mod format;
mod identity;
mod monomial;
mod parse;
mod polarize;
mod polynomial;
mod rewrite;
mod substitute;
mod symbol;

pub(crate) use format::write_coefficient;
pub use format::{format_infix, format_infix_monomial, format_monomial, format_polynomial};
pub use identity::Identity;
pub use monomial::Monomial;
pub use parse::{check_arity, parse_document, parse_infix, parse_polynomial, Document, Entry, ParseError, ParseErrorKind, Signature};
pub use polarize::polarize;
pub use polynomial::Polynomial;
pub use rewrite::{apply_rules, RewriteRule};
pub use substitute::{relabel, specialize, substitute, Assignment};
pub use symbol::{fresh_variable, vars, OpSymbol, Variable};
