use super::ast::*;
use super::lexer::{excerpt, tokenize_rbg, RbgToken, TokenKind};
use super::RbgError;

use TokenKind as T;

/// Tokenizes and parses a description, attaching source excerpts to errors.
pub fn parse_rbg_source(src: &str) -> Result<RbgGameDef, RbgError> {
    let tokens = tokenize_rbg(src)?;
    Parser {
        toks: &tokens,
        pos: 0,
        src: Some(src),
    }
    .game()
}

/// Parses a token stream produced by [`tokenize_rbg`].
pub fn parse_rbg(tokens: &[RbgToken]) -> Result<RbgGameDef, RbgError> {
    Parser {
        toks: tokens,
        pos: 0,
        src: None,
    }
    .game()
}

/// Parses a standalone pattern such as `up left {e}`. Bare identifiers are
/// left as shifts.
pub fn parse_pattern(src: &str) -> Result<PatternExpr, RbgError> {
    let tokens = tokenize_rbg(src)?;
    let mut p = Parser {
        toks: &tokens,
        pos: 0,
        src: Some(src),
    };
    let e = p.alt()?;
    if p.pos < tokens.len() {
        return Err(p.error(&["end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    toks: &'a [RbgToken],
    pos: usize,
    src: Option<&'a str>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a RbgToken> {
        self.toks.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn at(&self, k: TokenKind) -> bool {
        self.peek_kind() == Some(k)
    }

    fn error(&self, expected: &[&str]) -> RbgError {
        let (line, col, found) = match self.peek() {
            Some(t) => (t.line, t.col, t.text.clone()),
            None => {
                let last = self.toks.last();
                (
                    last.map_or(1, |t| t.line),
                    last.map_or(1, |t| t.col + t.text.len()),
                    "end of input".into(),
                )
            }
        };
        RbgError::Parse {
            line,
            col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
            excerpt: self.src.map(|s| excerpt(s, line)).unwrap_or_default(),
        }
    }

    fn expect(&mut self, k: TokenKind) -> Result<&'a RbgToken, RbgError> {
        match self.peek() {
            Some(t) if t.kind == k => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.error(&[&k.to_string()])),
        }
    }

    fn eat(&mut self, k: TokenKind) -> bool {
        if self.at(k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, RbgError> {
        Ok(self.expect(T::Ident)?.text.clone())
    }

    fn number(&mut self) -> Result<u32, RbgError> {
        let t = self.expect(T::Number)?;
        t.text
            .parse()
            .map_err(|_| RbgError::Validation(format!("{}:{}: number out of range", t.line, t.col)))
    }

    fn section_done(&self) -> bool {
        matches!(self.peek_kind(), None | Some(T::HashIdent))
    }

    /// `(` glued to the preceding token, as in `turn(w; white)`.
    fn glued_paren(&self) -> bool {
        match (self.toks.get(self.pos.wrapping_sub(1)), self.peek()) {
            (Some(prev), Some(t)) => t.kind == T::LParen && t.offset == prev.end(),
            _ => false,
        }
    }

    fn game(mut self) -> Result<RbgGameDef, RbgError> {
        let mut players = None;
        let mut pieces = None;
        let mut variables = None;
        let mut board = None;
        let mut rules = None;
        let mut macros: Vec<MacroDef> = Vec::new();
        while let Some(tok) = self.peek() {
            if tok.kind != T::HashIdent {
                return Err(self.error(&["#section"]));
            }
            self.pos += 1;
            let name = &tok.text[1..];
            let dup = || RbgError::DuplicateSection {
                name: name.to_string(),
                line: tok.line,
            };
            match name {
                "players" => {
                    self.expect(T::Equals)?;
                    if players.replace(self.bounded_list()?).is_some() {
                        return Err(dup());
                    }
                }
                "variables" => {
                    self.expect(T::Equals)?;
                    if variables.replace(self.bounded_list()?).is_some() {
                        return Err(dup());
                    }
                }
                "pieces" => {
                    self.expect(T::Equals)?;
                    if pieces.replace(self.piece_list()?).is_some() {
                        return Err(dup());
                    }
                }
                "board" => {
                    self.expect(T::Equals)?;
                    if board.replace(self.board()?).is_some() {
                        return Err(dup());
                    }
                }
                "rules" => {
                    self.expect(T::Equals)?;
                    let p = self.alt()?;
                    if !self.section_done() {
                        return Err(self.error(&["#section", "end of input"]));
                    }
                    if rules.replace(p).is_some() {
                        return Err(dup());
                    }
                }
                _ => {
                    let mut params = Vec::new();
                    if self.glued_paren() {
                        self.pos += 1;
                        loop {
                            params.push(self.ident()?);
                            if !self.eat(T::Semi) {
                                break;
                            }
                        }
                        self.expect(T::RParen)?;
                    }
                    self.expect(T::Equals)?;
                    let body = self.alt()?;
                    if !self.section_done() {
                        return Err(self.error(&["#section", "end of input"]));
                    }
                    if macros.iter().any(|m| m.name == name) {
                        return Err(dup());
                    }
                    macros.push(MacroDef {
                        name: name.to_string(),
                        params,
                        body,
                    });
                }
            }
        }
        let missing = |s: &str| RbgError::MissingSection(s.to_string());
        let mut def = RbgGameDef {
            players: players.ok_or_else(|| missing("players"))?,
            pieces: pieces.ok_or_else(|| missing("pieces"))?,
            variables: variables.unwrap_or_default(),
            board: board.ok_or_else(|| missing("board"))?,
            macros,
            rules: rules.ok_or_else(|| missing("rules"))?,
        };
        resolve_macro_names(&mut def);
        Ok(def)
    }

    fn bounded_list(&mut self) -> Result<Vec<(String, u32)>, RbgError> {
        let mut out = Vec::new();
        if self.section_done() {
            return Ok(out);
        }
        loop {
            let name = self.ident()?;
            self.expect(T::LParen)?;
            let bound = self.number()?;
            self.expect(T::RParen)?;
            out.push((name, bound));
            if !self.eat(T::Comma) {
                break;
            }
        }
        if !self.section_done() {
            return Err(self.error(&["`,`", "#section"]));
        }
        Ok(out)
    }

    fn piece_list(&mut self) -> Result<Vec<PieceDecl>, RbgError> {
        let mut out = Vec::new();
        loop {
            let name = self.ident()?;
            let owner = if self.eat(T::LParen) {
                let o = self.ident()?;
                self.expect(T::RParen)?;
                Some(o)
            } else {
                None
            };
            out.push(PieceDecl { name, owner });
            if !self.eat(T::Comma) {
                break;
            }
        }
        if !self.section_done() {
            return Err(self.error(&["`,`", "#section"]));
        }
        Ok(out)
    }

    fn board(&mut self) -> Result<BoardDecl, RbgError> {
        let gen_tok = self.expect(T::Ident)?;
        let (generator, ndirs) = match gen_tok.text.as_str() {
            "rectangle" => (BoardGenerator::Rectangle, 4),
            "hex" => (BoardGenerator::Hex, 6),
            _ => {
                self.pos -= 1;
                return Err(self.error(&["rectangle", "hex"]));
            }
        };
        self.expect(T::LParen)?;
        let mut directions = Vec::new();
        for _ in 0..ndirs {
            directions.push(self.ident()?);
            self.expect(T::Comma)?;
        }
        let mut rows: Vec<Vec<String>> = Vec::new();
        while self.at(T::LBracket) {
            let open = self.expect(T::LBracket)?;
            let mut row = Vec::new();
            loop {
                row.push(self.ident()?);
                if !self.eat(T::Comma) {
                    break;
                }
            }
            self.expect(T::RBracket)?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(RbgError::RaggedBoard {
                        line: open.line,
                        expected: first.len(),
                        found: row.len(),
                    });
                }
            }
            rows.push(row);
            self.eat(T::Comma);
        }
        if rows.is_empty() {
            return Err(self.error(&["`[`"]));
        }
        self.expect(T::RParen)?;
        if !self.section_done() {
            return Err(self.error(&["#section"]));
        }
        Ok(BoardDecl {
            generator,
            directions,
            rows,
        })
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek_kind(),
            Some(T::LParen | T::Ident | T::LBrace | T::LBracket | T::Arrow | T::DArrow)
        )
    }

    pub(crate) fn alt(&mut self) -> Result<PatternExpr, RbgError> {
        let mut items = vec![self.concat()?];
        while self.eat(T::Plus) {
            items.push(self.concat()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            PatternExpr::Alt(items)
        })
    }

    fn concat(&mut self) -> Result<PatternExpr, RbgError> {
        let mut items = Vec::new();
        while self.starts_atom() {
            items.push(self.postfix()?);
        }
        match items.len() {
            0 => Err(self.error(&["`(`", "identifier", "`{`", "`[`", "`->`", "`->>`"])),
            1 => Ok(items.pop().unwrap()),
            _ => Ok(PatternExpr::Concat(items)),
        }
    }

    fn postfix(&mut self) -> Result<PatternExpr, RbgError> {
        let mut e = self.atom()?;
        while self.eat(T::Star) {
            e = PatternExpr::Star(Box::new(e));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<PatternExpr, RbgError> {
        let tok = self.peek().ok_or_else(|| self.error(&["pattern"]))?;
        match tok.kind {
            T::LParen => {
                self.pos += 1;
                let e = self.alt()?;
                self.expect(T::RParen)?;
                Ok(e)
            }
            T::Ident => {
                self.pos += 1;
                if self.glued_paren() {
                    self.pos += 1;
                    let mut args = vec![self.alt()?];
                    while self.eat(T::Semi) {
                        args.push(self.alt()?);
                    }
                    self.expect(T::RParen)?;
                    Ok(PatternExpr::MacroCall {
                        name: tok.text.clone(),
                        args,
                    })
                } else {
                    Ok(PatternExpr::Leaf(Action::Shift(tok.text.clone())))
                }
            }
            T::LBrace => {
                self.pos += 1;
                if self.eat(T::QMark) {
                    let e = self.alt()?;
                    self.expect(T::RBrace)?;
                    return Ok(PatternExpr::CheckPositive(Box::new(e)));
                }
                if self.eat(T::Bang) {
                    let e = self.alt()?;
                    self.expect(T::RBrace)?;
                    return Ok(PatternExpr::CheckNegative(Box::new(e)));
                }
                let mut set = Vec::new();
                if !self.eat(T::RBrace) {
                    loop {
                        set.push(self.ident()?);
                        if !self.eat(T::Comma) {
                            break;
                        }
                    }
                    self.expect(T::RBrace)?;
                }
                Ok(PatternExpr::Leaf(Action::On(set)))
            }
            T::LBracket => {
                self.pos += 1;
                if self.eat(T::Dollar) {
                    let mut assigns = Vec::new();
                    loop {
                        let name = self.ident()?;
                        self.expect(T::Equals)?;
                        assigns.push((name, self.number()?));
                        if !self.eat(T::Comma) {
                            break;
                        }
                    }
                    self.expect(T::RBracket)?;
                    return Ok(PatternExpr::Leaf(Action::AssignVars(assigns)));
                }
                let p = self.ident()?;
                self.expect(T::RBracket)?;
                Ok(PatternExpr::Leaf(Action::SetHere(p)))
            }
            T::Arrow => {
                self.pos += 1;
                Ok(PatternExpr::Leaf(Action::SwitchTo(self.ident()?)))
            }
            T::DArrow => {
                self.pos += 1;
                Ok(PatternExpr::Leaf(Action::SwitchKeep))
            }
            _ => Err(self.error(&["pattern"])),
        }
    }
}

/// Bare identifiers naming a macro become zero-argument calls, unless a
/// macro parameter of the same name is in scope.
fn resolve_macro_names(def: &mut RbgGameDef) {
    let names: Vec<String> = def.macros.iter().map(|m| m.name.clone()).collect();
    fn fix(p: &mut PatternExpr, macros: &[String], params: &[String]) {
        match p {
            PatternExpr::Leaf(Action::Shift(n)) if macros.contains(n) && !params.contains(n) => {
                *p = PatternExpr::MacroCall {
                    name: n.clone(),
                    args: Vec::new(),
                };
            }
            PatternExpr::Concat(xs) | PatternExpr::Alt(xs) => {
                xs.iter_mut().for_each(|x| fix(x, macros, params))
            }
            PatternExpr::Star(x)
            | PatternExpr::CheckPositive(x)
            | PatternExpr::CheckNegative(x) => fix(x, macros, params),
            PatternExpr::MacroCall { args, .. } => {
                args.iter_mut().for_each(|x| fix(x, macros, params))
            }
            PatternExpr::Leaf(_) => {}
        }
    }
    for m in &mut def.macros {
        fix(&mut m.body, &names, &m.params);
    }
    fix(&mut def.rules, &names, &[]);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifts_then_test_concatenate() {
        let p = parse_pattern("up left {e}").unwrap();
        assert_eq!(
            p,
            PatternExpr::Concat(vec![
                PatternExpr::shift("up"),
                PatternExpr::shift("left"),
                PatternExpr::on(&["e"])
            ])
        );
    }

    #[test]
    fn plus_binds_looser_than_concatenation() {
        let p = parse_pattern("a + b c").unwrap();
        assert_eq!(
            p,
            PatternExpr::Alt(vec![
                PatternExpr::shift("a"),
                PatternExpr::Concat(vec![PatternExpr::shift("b"), PatternExpr::shift("c")])
            ])
        );
    }

    #[test]
    fn star_binds_tightest() {
        let p = parse_pattern("up {e}*").unwrap();
        assert_eq!(
            p,
            PatternExpr::Concat(vec![
                PatternExpr::shift("up"),
                PatternExpr::Star(Box::new(PatternExpr::on(&["e"])))
            ])
        );
    }

    #[test]
    fn checks_and_empty_set() {
        let p = parse_pattern("{? up {e}} {! down} {}").unwrap();
        match p {
            PatternExpr::Concat(xs) => {
                assert!(matches!(xs[0], PatternExpr::CheckPositive(_)));
                assert!(matches!(xs[1], PatternExpr::CheckNegative(_)));
                assert_eq!(xs[2], PatternExpr::Leaf(Action::On(vec![])));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn spaced_paren_is_a_group_not_a_call() {
        let p = parse_pattern("->white (up)*").unwrap();
        assert!(matches!(&p, PatternExpr::Concat(xs) if xs.len() == 2));
        let p = parse_pattern("turn(w; white)").unwrap();
        assert!(matches!(&p, PatternExpr::MacroCall { args, .. } if args.len() == 2));
    }

    #[test]
    fn duplicate_and_ragged_are_rejected() {
        let base = "#players = a(1)\n#pieces = e\n#board = rectangle(u,d,l,r, [e])\n#rules = ->a\n";
        let dup = format!("{base}#pieces = e\n");
        assert!(matches!(
            parse_rbg_source(&dup),
            Err(RbgError::DuplicateSection { .. })
        ));
        let ragged =
            "#players = a(1)\n#pieces = e\n#board = rectangle(u,d,l,r, [e, e] [e])\n#rules = ->a\n";
        assert!(matches!(
            parse_rbg_source(ragged),
            Err(RbgError::RaggedBoard {
                expected: 2,
                found: 1,
                ..
            })
        ));
    }

    #[test]
    fn parse_error_lists_expectations() {
        let err = parse_rbg_source("#players = a(1)\n#rules = ( up\n").unwrap_err();
        match err {
            RbgError::Parse { line, expected, .. } => {
                assert_eq!(line, 2);
                assert!(expected.contains(&"`)`".to_string()));
            }
            other => panic!("{other:?}"),
        }
    }
}
