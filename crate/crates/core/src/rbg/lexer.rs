use std::fmt;

use super::RbgError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    HashIdent,
    Ident,
    Number,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Star,
    Plus,
    Comma,
    Semi,
    Equals,
    /// `->`
    Arrow,
    /// `->>`
    DArrow,
    Dollar,
    QMark,
    Bang,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TokenKind::HashIdent => "#section",
            TokenKind::Ident => "identifier",
            TokenKind::Number => "number",
            TokenKind::LParen => "`(`",
            TokenKind::RParen => "`)`",
            TokenKind::LBrace => "`{`",
            TokenKind::RBrace => "`}`",
            TokenKind::LBracket => "`[`",
            TokenKind::RBracket => "`]`",
            TokenKind::Star => "`*`",
            TokenKind::Plus => "`+`",
            TokenKind::Comma => "`,`",
            TokenKind::Semi => "`;`",
            TokenKind::Equals => "`=`",
            TokenKind::Arrow => "`->`",
            TokenKind::DArrow => "`->>`",
            TokenKind::Dollar => "`$`",
            TokenKind::QMark => "`?`",
            TokenKind::Bang => "`!`",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RbgToken {
    pub kind: TokenKind,
    pub text: String,
    /// Byte offset of the first character.
    pub offset: usize,
    pub line: usize,
    pub col: usize,
}

impl RbgToken {
    pub fn end(&self) -> usize {
        self.offset + self.text.len()
    }
}

pub(crate) fn excerpt(src: &str, line: usize) -> String {
    src.lines()
        .nth(line.saturating_sub(1))
        .unwrap_or("")
        .trim_end()
        .to_string()
}

/// Longest-match lexer; `//` comments and whitespace are skipped but the
/// byte offsets of the tokens let callers recover them.
pub fn tokenize_rbg(src: &str) -> Result<Vec<RbgToken>, RbgError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut line_start) = (0usize, 1usize, 0usize);
    while i < bytes.len() {
        let b = bytes[i];
        let col = i - line_start + 1;
        if b == b'\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if b == b'/' && bytes.get(i + 1) == Some(&b'/') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let kind = match b {
            b'(' => single(&mut i, TokenKind::LParen),
            b')' => single(&mut i, TokenKind::RParen),
            b'{' => single(&mut i, TokenKind::LBrace),
            b'}' => single(&mut i, TokenKind::RBrace),
            b'[' => single(&mut i, TokenKind::LBracket),
            b']' => single(&mut i, TokenKind::RBracket),
            b'*' => single(&mut i, TokenKind::Star),
            b'+' => single(&mut i, TokenKind::Plus),
            b',' => single(&mut i, TokenKind::Comma),
            b';' => single(&mut i, TokenKind::Semi),
            b'=' => single(&mut i, TokenKind::Equals),
            b'$' => single(&mut i, TokenKind::Dollar),
            b'?' => single(&mut i, TokenKind::QMark),
            b'!' => single(&mut i, TokenKind::Bang),
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                if bytes.get(i + 2) == Some(&b'>') {
                    i += 3;
                    TokenKind::DArrow
                } else {
                    i += 2;
                    TokenKind::Arrow
                }
            }
            b'#' if bytes.get(i + 1).is_some_and(|c| is_ident_start(*c)) => {
                i += 1;
                while i < bytes.len() && is_ident_char(bytes[i]) {
                    i += 1;
                }
                TokenKind::HashIdent
            }
            c if is_ident_start(c) => {
                while i < bytes.len() && is_ident_char(bytes[i]) {
                    i += 1;
                }
                TokenKind::Ident
            }
            c if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                TokenKind::Number
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(RbgError::Lex {
                    line,
                    col,
                    snippet: format!("{ch}"),
                    excerpt: excerpt(src, line),
                });
            }
        };
        out.push(RbgToken {
            kind,
            text: src[start..i].to_string(),
            offset: start,
            line,
            col,
        });
    }
    Ok(out)
}

fn single(i: &mut usize, k: TokenKind) -> TokenKind {
    *i += 1;
    k
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}
