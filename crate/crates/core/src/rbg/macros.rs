use std::collections::HashMap;

use super::ast::*;
use super::RbgError;

const MAX_DEPTH: usize = 64;

/// Substitutes every macro call in the rules until none remain. Macro
/// definitions are dropped from the result.
pub fn expand_macros(def: &RbgGameDef) -> Result<RbgGameDef, RbgError> {
    let rules = expand(&def.rules, def, &HashMap::new(), 0)?;
    Ok(RbgGameDef {
        macros: Vec::new(),
        rules,
        ..def.clone()
    })
}

type Env = HashMap<String, PatternExpr>;

fn symbol(name: &str, env: &Env) -> Result<String, RbgError> {
    match env.get(name) {
        None => Ok(name.to_string()),
        Some(PatternExpr::Leaf(Action::Shift(bound))) => Ok(bound.clone()),
        Some(_) => Err(RbgError::Validation(format!(
            "parameter `{name}` is used as a name but bound to a pattern"
        ))),
    }
}

fn expand(
    p: &PatternExpr,
    def: &RbgGameDef,
    env: &Env,
    depth: usize,
) -> Result<PatternExpr, RbgError> {
    let rec = |x: &PatternExpr| expand(x, def, env, depth);
    Ok(match p {
        PatternExpr::Concat(xs) => {
            PatternExpr::concat(xs.iter().map(rec).collect::<Result<_, _>>()?)
        }
        PatternExpr::Alt(xs) => PatternExpr::alt(xs.iter().map(rec).collect::<Result<_, _>>()?),
        PatternExpr::Star(x) => PatternExpr::Star(Box::new(rec(x)?)),
        PatternExpr::CheckPositive(x) => PatternExpr::CheckPositive(Box::new(rec(x)?)),
        PatternExpr::CheckNegative(x) => PatternExpr::CheckNegative(Box::new(rec(x)?)),
        PatternExpr::Leaf(a) => match a {
            Action::Shift(n) => match env.get(n) {
                Some(bound) => bound.clone(),
                None => p.clone(),
            },
            Action::On(set) => PatternExpr::Leaf(Action::On(
                set.iter()
                    .map(|s| symbol(s, env))
                    .collect::<Result<_, _>>()?,
            )),
            Action::SetHere(s) => PatternExpr::Leaf(Action::SetHere(symbol(s, env)?)),
            Action::SwitchTo(s) => PatternExpr::Leaf(Action::SwitchTo(symbol(s, env)?)),
            Action::AssignVars(xs) => PatternExpr::Leaf(Action::AssignVars(
                xs.iter()
                    .map(|(n, v)| Ok((symbol(n, env)?, *v)))
                    .collect::<Result<_, RbgError>>()?,
            )),
            Action::SwitchKeep => p.clone(),
        },
        PatternExpr::MacroCall { name, args } => {
            if args.is_empty() {
                if let Some(bound) = env.get(name) {
                    return Ok(bound.clone());
                }
            }
            let m = def
                .macro_def(name)
                .ok_or_else(|| RbgError::UnknownMacro(name.clone()))?;
            if m.params.len() != args.len() {
                return Err(RbgError::ArityMismatch {
                    name: name.clone(),
                    expected: m.params.len(),
                    found: args.len(),
                });
            }
            if depth >= MAX_DEPTH {
                return Err(RbgError::RecursionDetected(name.clone()));
            }
            let mut inner = Env::new();
            for (param, arg) in m.params.iter().zip(args) {
                inner.insert(param.clone(), rec(arg)?);
            }
            expand(&m.body, def, &inner, depth + 1)?
        }
    })
}
