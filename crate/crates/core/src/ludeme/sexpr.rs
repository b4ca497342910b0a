//! S-expression reader: `( )` lists, `{ }` sets, atoms and quoted strings.

use super::LudemeError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExprKind {
    /// Atom text; `quoted` when it was written as a string.
    Atom {
        text: String,
        quoted: bool,
    },
    List(Vec<SExpr>),
    Set(Vec<SExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SExpr {
    pub kind: SExprKind,
    pub line: usize,
    pub col: usize,
}

impl SExpr {
    pub fn atom(&self) -> Option<&str> {
        match &self.kind {
            SExprKind::Atom { text, .. } => Some(text),
            _ => None,
        }
    }

    pub fn quoted(&self) -> Option<&str> {
        match &self.kind {
            SExprKind::Atom { text, quoted: true } => Some(text),
            _ => None,
        }
    }

    pub fn list(&self) -> Option<&[SExpr]> {
        match &self.kind {
            SExprKind::List(xs) => Some(xs),
            _ => None,
        }
    }

    pub fn set(&self) -> Option<&[SExpr]> {
        match &self.kind {
            SExprKind::Set(xs) => Some(xs),
            _ => None,
        }
    }

    /// Head atom of a non-empty list.
    pub fn head(&self) -> Option<&str> {
        self.list().and_then(|xs| xs.first()).and_then(SExpr::atom)
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_space(&mut self) {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('/') => {
                    let mut ahead = self.chars.clone();
                    ahead.next();
                    if ahead.peek() != Some(&'/') {
                        return;
                    }
                    while !matches!(self.chars.peek(), None | Some('\n')) {
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }

    fn expr(&mut self) -> Result<SExpr, LudemeError> {
        let (line, col) = (self.line, self.col);
        let c = *self
            .chars
            .peek()
            .ok_or(LudemeError::Unbalanced { line, col })?;
        let kind = match c {
            '(' | '{' => {
                self.bump();
                let close = if c == '(' { ')' } else { '}' };
                let mut items = Vec::new();
                loop {
                    self.skip_space();
                    match self.chars.peek() {
                        None => return Err(LudemeError::Unbalanced { line, col }),
                        Some(&d) if d == close => {
                            self.bump();
                            break;
                        }
                        Some(')' | '}') => {
                            return Err(LudemeError::Unbalanced {
                                line: self.line,
                                col: self.col,
                            })
                        }
                        Some(_) => items.push(self.expr()?),
                    }
                }
                if c == '(' {
                    SExprKind::List(items)
                } else {
                    SExprKind::Set(items)
                }
            }
            ')' | '}' => return Err(LudemeError::Unbalanced { line, col }),
            '"' => {
                self.bump();
                let mut text = String::new();
                loop {
                    match self.bump() {
                        None => return Err(LudemeError::UnterminatedString { line, col }),
                        Some('"') => break,
                        Some(ch) => text.push(ch),
                    }
                }
                SExprKind::Atom { text, quoted: true }
            }
            _ => {
                let mut text = String::new();
                while let Some(&ch) = self.chars.peek() {
                    if ch.is_whitespace() || "(){}\"".contains(ch) {
                        break;
                    }
                    text.push(ch);
                    self.bump();
                }
                SExprKind::Atom {
                    text,
                    quoted: false,
                }
            }
        };
        Ok(SExpr { kind, line, col })
    }
}

/// Reads exactly one expression, allowing surrounding whitespace and
/// `//` comments.
pub fn parse_sexpr(text: &str) -> Result<SExpr, LudemeError> {
    let mut r = Reader {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    r.skip_space();
    let e = r.expr()?;
    r.skip_space();
    if r.chars.peek().is_some() {
        return Err(LudemeError::Unbalanced {
            line: r.line,
            col: r.col,
        });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atoms(e: &SExpr) -> Vec<&str> {
        e.list()
            .or(e.set())
            .unwrap()
            .iter()
            .map(|x| x.atom().unwrap())
            .collect()
    }

    #[test]
    fn mode_list() {
        let e = parse_sexpr("(mode 2)").unwrap();
        assert_eq!(atoms(&e), ["mode", "2"]);
        assert_eq!(e.head(), Some("mode"));
    }

    #[test]
    fn braces_make_a_set() {
        let e = parse_sexpr("{3 6 30 39}").unwrap();
        assert_eq!(e.set().unwrap().len(), 4);
        assert_eq!(atoms(&e), ["3", "6", "30", "39"]);
    }

    #[test]
    fn strings_lose_quotes_but_keep_flag() {
        let e = parse_sexpr("(place \"Queen1\" {3})").unwrap();
        let xs = e.list().unwrap();
        assert_eq!(xs[1].quoted(), Some("Queen1"));
        assert_eq!(xs[0].quoted(), None);
    }

    #[test]
    fn unbalanced_and_unterminated() {
        assert!(matches!(
            parse_sexpr("(a (b"),
            Err(LudemeError::Unbalanced { .. })
        ));
        assert!(matches!(
            parse_sexpr("(a))"),
            Err(LudemeError::Unbalanced { .. })
        ));
        assert!(matches!(
            parse_sexpr("(a {b)}"),
            Err(LudemeError::Unbalanced { .. })
        ));
        assert!(matches!(
            parse_sexpr("(a \"b)"),
            Err(LudemeError::UnterminatedString { line: 1, col: 4 })
        ));
    }

    #[test]
    fn comments_and_positions() {
        let e = parse_sexpr("// header\n(game\n  (mode 2))").unwrap();
        assert_eq!((e.line, e.col), (2, 1));
        let mode = &e.list().unwrap()[1];
        assert_eq!((mode.line, mode.col), (3, 3));
    }
}
