//! Surface syntax tree of regex-over-board-moves descriptions.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    /// Move the walker one step along a named direction.
    Shift(String),
    /// `{a, b}`: the piece under the walker is one of the set. `{}` never holds.
    On(Vec<String>),
    /// `[p]`
    SetHere(String),
    /// `[$ a=1, b=2]`
    AssignVars(Vec<(String, u32)>),
    /// `-> player`
    SwitchTo(String),
    /// `->>`: ends the semi-move, same mover continues.
    SwitchKeep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternExpr {
    Concat(Vec<PatternExpr>),
    Alt(Vec<PatternExpr>),
    Star(Box<PatternExpr>),
    Leaf(Action),
    MacroCall {
        name: String,
        args: Vec<PatternExpr>,
    },
    /// `{? P}`
    CheckPositive(Box<PatternExpr>),
    /// `{! P}`
    CheckNegative(Box<PatternExpr>),
}

impl PatternExpr {
    pub fn shift(d: &str) -> Self {
        PatternExpr::Leaf(Action::Shift(d.to_string()))
    }

    pub fn on(set: &[&str]) -> Self {
        PatternExpr::Leaf(Action::On(set.iter().map(|s| s.to_string()).collect()))
    }

    /// Builds a concatenation, flattening nested concatenations and
    /// collapsing singletons.
    pub fn concat(items: Vec<PatternExpr>) -> Self {
        let mut flat = Vec::with_capacity(items.len());
        for it in items {
            match it {
                PatternExpr::Concat(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            PatternExpr::Concat(flat)
        }
    }

    pub fn alt(items: Vec<PatternExpr>) -> Self {
        let mut flat = Vec::with_capacity(items.len());
        for it in items {
            match it {
                PatternExpr::Alt(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            PatternExpr::Alt(flat)
        }
    }

    /// Pre-order walk.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a PatternExpr)) {
        f(self);
        match self {
            PatternExpr::Concat(xs) | PatternExpr::Alt(xs) => xs.iter().for_each(|x| x.visit(f)),
            PatternExpr::Star(x)
            | PatternExpr::CheckPositive(x)
            | PatternExpr::CheckNegative(x) => x.visit(f),
            PatternExpr::MacroCall { args, .. } => args.iter().for_each(|x| x.visit(f)),
            PatternExpr::Leaf(_) => {}
        }
    }

    pub fn contains_switch(&self) -> bool {
        let mut found = false;
        self.visit(&mut |p| {
            if matches!(
                p,
                PatternExpr::Leaf(Action::SwitchTo(_) | Action::SwitchKeep)
            ) {
                found = true;
            }
        });
        found
    }

    pub fn contains_macro_call(&self) -> bool {
        let mut found = false;
        self.visit(&mut |p| {
            if matches!(p, PatternExpr::MacroCall { .. }) {
                found = true;
            }
        });
        found
    }

    /// Number of leaves plus operator nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoardGenerator {
    Rectangle,
    Hex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoardDecl {
    pub generator: BoardGenerator,
    pub directions: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceDecl {
    pub name: String,
    pub owner: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacroDef {
    pub name: String,
    pub params: Vec<String>,
    pub body: PatternExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RbgGameDef {
    /// `(name, variable bound)`
    pub players: Vec<(String, u32)>,
    /// The first piece is the empty square.
    pub pieces: Vec<PieceDecl>,
    pub variables: Vec<(String, u32)>,
    pub board: BoardDecl,
    pub macros: Vec<MacroDef>,
    pub rules: PatternExpr,
}

impl RbgGameDef {
    pub fn macro_def(&self, name: &str) -> Option<&MacroDef> {
        self.macros.iter().find(|m| m.name == name)
    }
}
