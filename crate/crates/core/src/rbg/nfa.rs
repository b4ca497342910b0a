//! Thompson construction over board actions.

use super::ast::{Action, PatternExpr};

pub type NodeId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Label<A> {
    Epsilon,
    Action(A),
    /// Lookahead: succeeds iff a run from `start` can reach `accept`
    /// (positive) or cannot (negative). The sub-automaton shares the node
    /// arena.
    Check {
        positive: bool,
        start: NodeId,
        accept: NodeId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge<A> {
    pub from: NodeId,
    pub label: Label<A>,
    pub to: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa<A> {
    pub node_count: u32,
    pub edges: Vec<Edge<A>>,
    /// Outgoing edge indices per node, in construction order.
    pub out: Vec<Vec<u32>>,
    pub start: NodeId,
    pub accept: NodeId,
}

impl<A> Nfa<A> {
    fn empty() -> Self {
        Nfa {
            node_count: 0,
            edges: Vec::new(),
            out: Vec::new(),
            start: 0,
            accept: 0,
        }
    }

    pub(crate) fn add_node(&mut self) -> NodeId {
        self.out.push(Vec::new());
        self.node_count += 1;
        self.node_count - 1
    }

    pub(crate) fn add_edge(&mut self, from: NodeId, label: Label<A>, to: NodeId) {
        self.out[from as usize].push(self.edges.len() as u32);
        self.edges.push(Edge { from, label, to });
    }

    pub fn out_edges(&self, node: NodeId) -> impl Iterator<Item = (u32, &Edge<A>)> {
        self.out[node as usize]
            .iter()
            .map(move |&i| (i, &self.edges[i as usize]))
    }

    pub fn epsilon_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| matches!(e.label, Label::Epsilon))
            .count()
    }

    /// Rewrites every action label, keeping the graph shape.
    pub fn try_map_actions<B, E>(
        &self,
        mut f: impl FnMut(&A) -> Result<B, E>,
    ) -> Result<Nfa<B>, E> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let label = match &e.label {
                    Label::Epsilon => Label::Epsilon,
                    Label::Action(a) => Label::Action(f(a)?),
                    Label::Check {
                        positive,
                        start,
                        accept,
                    } => Label::Check {
                        positive: *positive,
                        start: *start,
                        accept: *accept,
                    },
                };
                Ok(Edge {
                    from: e.from,
                    label,
                    to: e.to,
                })
            })
            .collect::<Result<_, E>>()?;
        Ok(Nfa {
            node_count: self.node_count,
            edges,
            out: self.out.clone(),
            start: self.start,
            accept: self.accept,
        })
    }
}

impl<A: PartialEq> Nfa<A> {
    /// Edges labelled with an action.
    pub fn action_edges(&self) -> impl Iterator<Item = &Edge<A>> {
        self.edges
            .iter()
            .filter(|e| matches!(e.label, Label::Action(_)))
    }
}

/// Builds the automaton of a macro-free pattern.
///
/// # Panics
/// If the pattern still contains macro calls.
pub fn build_nfa(pattern: &PatternExpr) -> Nfa<Action> {
    let mut nfa = Nfa::empty();
    let start = nfa.add_node();
    let accept = build(&mut nfa, pattern, start);
    nfa.start = start;
    nfa.accept = accept;
    nfa
}

fn build(nfa: &mut Nfa<Action>, p: &PatternExpr, from: NodeId) -> NodeId {
    match p {
        PatternExpr::Leaf(a) => {
            let to = nfa.add_node();
            nfa.add_edge(from, Label::Action(a.clone()), to);
            to
        }
        PatternExpr::Concat(xs) => xs.iter().fold(from, |at, x| build(nfa, x, at)),
        PatternExpr::Alt(xs) => {
            let ends: Vec<NodeId> = xs
                .iter()
                .map(|x| {
                    let s = nfa.add_node();
                    nfa.add_edge(from, Label::Epsilon, s);
                    build(nfa, x, s)
                })
                .collect();
            let join = nfa.add_node();
            for e in ends {
                nfa.add_edge(e, Label::Epsilon, join);
            }
            join
        }
        PatternExpr::Star(x) => {
            let hub = nfa.add_node();
            nfa.add_edge(from, Label::Epsilon, hub);
            let end = build(nfa, x, hub);
            nfa.add_edge(end, Label::Epsilon, hub);
            let out = nfa.add_node();
            nfa.add_edge(hub, Label::Epsilon, out);
            out
        }
        PatternExpr::CheckPositive(x) | PatternExpr::CheckNegative(x) => {
            let positive = matches!(p, PatternExpr::CheckPositive(_));
            let sub_start = nfa.add_node();
            let sub_accept = build(nfa, x, sub_start);
            let to = nfa.add_node();
            nfa.add_edge(
                from,
                Label::Check {
                    positive,
                    start: sub_start,
                    accept: sub_accept,
                },
                to,
            );
            to
        }
        PatternExpr::MacroCall { name, .. } => panic!("build_nfa: unexpanded macro call `{name}`"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rbg::parser::parse_pattern;

    #[test]
    fn single_leaf_is_two_nodes_one_edge() {
        let n = build_nfa(&PatternExpr::shift("up"));
        assert_eq!((n.node_count, n.edges.len()), (2, 1));
    }

    #[test]
    fn star_accepts_empty_via_epsilon() {
        let n = build_nfa(&parse_pattern("up*").unwrap());
        // epsilon-only reachability from start
        let mut seen = vec![false; n.node_count as usize];
        let mut stack = vec![n.start];
        while let Some(x) = stack.pop() {
            if std::mem::replace(&mut seen[x as usize], true) {
                continue;
            }
            for (_, e) in n.out_edges(x) {
                if e.label == Label::Epsilon {
                    stack.push(e.to);
                }
            }
        }
        assert!(seen[n.accept as usize]);
    }

    #[test]
    fn queen_shift_forks_eight_ways() {
        let src = "(up left {e}) (up left {e})* + (up {e}) (up {e})* + (up right {e}) (up right {e})* + \
                   (left {e}) (left {e})* + (right {e}) (right {e})* + (down left {e}) (down left {e})* + \
                   (down {e}) (down {e})* + (down right {e}) (down right {e})*";
        let p = parse_pattern(src).unwrap();
        let n = build_nfa(&p);
        let fork: Vec<_> = n.out_edges(n.start).collect();
        assert_eq!(fork.len(), 8);
        assert!(fork.iter().all(|(_, e)| e.label == Label::Epsilon));
        assert!(n.node_count as usize <= 2 * p.size() + 2);
    }

    #[test]
    fn node_bound_holds_on_nested_patterns() {
        for src in [
            "(up + down)* {e} ({? left} + {! right {x}})",
            "((a b)* + c)* d",
            "{? (a + b)*} [x] ->>",
        ] {
            let p = parse_pattern(src).unwrap();
            let n = build_nfa(&p);
            assert!(n.node_count as usize <= 2 * p.size() + 2, "{src}");
        }
    }
}
