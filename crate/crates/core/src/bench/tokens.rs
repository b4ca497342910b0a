//! Description size in lexer tokens.

use crate::library::{Dialect, LoadError};
use crate::ludeme::sexpr::{parse_sexpr, SExpr, SExprKind};
use crate::rbg::tokenize_rbg;

/// Lexer tokens in `text`, brackets and punctuation included, comments and
/// whitespace excluded.
pub fn count_tokens(text: &str, dialect: Dialect) -> Result<usize, LoadError> {
    Ok(match dialect {
        Dialect::Rbg => tokenize_rbg(text)?.len(),
        Dialect::Ludemic => sexpr_tokens(&parse_sexpr(text)?),
    })
}

/// Every atom or string is one token; a list or set adds its two brackets.
fn sexpr_tokens(e: &SExpr) -> usize {
    match &e.kind {
        SExprKind::Atom { .. } => 1,
        SExprKind::List(xs) | SExprKind::Set(xs) => 2 + xs.iter().map(sexpr_tokens).sum::<usize>(),
    }
}
