//! Epsilon-closure elimination.

use crate::rbg::nfa::{Label, Nfa, NodeId};

/// Epsilon-free automaton. Acceptance is carried per node because several
/// nodes may inherit it through their closures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonFree<A> {
    pub nfa: Nfa<A>,
    pub accepting: Vec<bool>,
    /// New id of every original node that survived.
    pub node_map: Vec<Option<NodeId>>,
    /// Original edge index each new edge was copied from.
    pub edge_origin: Vec<u32>,
}

/// Removes epsilon edges. Surviving nodes are the start, lookahead starts
/// and targets of non-epsilon edges, numbered in discovery order, so the
/// result never has more nodes than the input. Lookahead labels keep their
/// start (renumbered); their `accept` field is unused afterwards.
pub fn eliminate_epsilon<A: Clone + PartialEq>(nfa: &Nfa<A>) -> EpsilonFree<A> {
    let n = nfa.node_count as usize;
    let mut is_accept = vec![false; n];
    is_accept[nfa.accept as usize] = true;
    for e in &nfa.edges {
        if let Label::Check { accept, .. } = e.label {
            is_accept[accept as usize] = true;
        }
    }

    let closure = |u: NodeId| -> Vec<NodeId> {
        let mut seen = vec![false; n];
        let mut order = Vec::new();
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            if std::mem::replace(&mut seen[x as usize], true) {
                continue;
            }
            order.push(x);
            // reversed so edges are explored in construction order
            for &ei in nfa.out[x as usize].iter().rev() {
                let e = &nfa.edges[ei as usize];
                if e.label == Label::Epsilon && !seen[e.to as usize] {
                    stack.push(e.to);
                }
            }
        }
        order
    };

    let mut node_map: Vec<Option<NodeId>> = vec![None; n];
    let mut order: Vec<NodeId> = Vec::new();
    let visit =
        |x: NodeId, node_map: &mut Vec<Option<NodeId>>, order: &mut Vec<NodeId>| -> NodeId {
            if let Some(id) = node_map[x as usize] {
                return id;
            }
            let id = order.len() as NodeId;
            node_map[x as usize] = Some(id);
            order.push(x);
            id
        };
    visit(nfa.start, &mut node_map, &mut order);

    let mut out = Nfa {
        node_count: 0,
        edges: Vec::new(),
        out: Vec::new(),
        start: 0,
        accept: 0,
    };
    let mut accepting = Vec::new();
    let mut edge_origin = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let old = order[i];
        let id = out.add_node();
        debug_assert_eq!(id as usize, i);
        let cl = closure(old);
        accepting.push(cl.iter().any(|&x| is_accept[x as usize]));
        let mut added: Vec<(Label<A>, NodeId)> = Vec::new();
        for &x in &cl {
            for &ei in &nfa.out[x as usize] {
                let e = &nfa.edges[ei as usize];
                let label = match &e.label {
                    Label::Epsilon => continue,
                    Label::Action(a) => Label::Action(a.clone()),
                    Label::Check {
                        positive, start, ..
                    } => {
                        let s = visit(*start, &mut node_map, &mut order);
                        Label::Check {
                            positive: *positive,
                            start: s,
                            accept: NodeId::MAX,
                        }
                    }
                };
                let to = visit(e.to, &mut node_map, &mut order);
                if added.iter().any(|(l, t)| *l == label && *t == to) {
                    continue;
                }
                added.push((label.clone(), to));
                out.add_edge(id, label, to);
                edge_origin.push(ei);
            }
        }
        i += 1;
    }
    out.start = 0;
    out.accept = node_map[nfa.accept as usize].unwrap_or(NodeId::MAX);
    EpsilonFree {
        nfa: out,
        accepting,
        node_map,
        edge_origin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rbg::{build_nfa, parse_pattern};

    #[test]
    fn kleene_gadget_becomes_two_node_loop() {
        let n = build_nfa(&parse_pattern("up*").unwrap());
        let f = eliminate_epsilon(&n);
        assert_eq!(f.nfa.node_count, 2);
        assert_eq!(f.nfa.epsilon_count(), 0);
        assert_eq!(f.accepting, vec![true, true]);
        // start -up-> 1 and 1 -up-> 1
        assert_eq!(
            f.nfa
                .edges
                .iter()
                .map(|e| (e.from, e.to))
                .collect::<Vec<_>>(),
            vec![(0, 1), (1, 1)]
        );
    }

    #[test]
    fn epsilon_free_input_is_unchanged() {
        let n = build_nfa(&parse_pattern("up left {e}").unwrap());
        let f = eliminate_epsilon(&n);
        assert_eq!(f.nfa.node_count, n.node_count);
        assert_eq!(f.nfa.edges.len(), n.edges.len());
        let g = eliminate_epsilon(&f.nfa);
        assert_eq!(g.nfa, f.nfa);
    }

    #[test]
    fn queen_shift_has_eight_entry_branches() {
        let src = "(up left {e}) (up left {e})* + (up {e}) (up {e})* + (up right {e}) (up right {e})* + \
                   (left {e}) (left {e})* + (right {e}) (right {e})* + (down left {e}) (down left {e})* + \
                   (down {e}) (down {e})* + (down right {e}) (down right {e})*";
        let n = build_nfa(&parse_pattern(src).unwrap());
        let f = eliminate_epsilon(&n);
        assert_eq!(f.nfa.out[0].len(), 8);
        assert_eq!(f.nfa.epsilon_count(), 0);
        assert!(f.nfa.node_count <= n.node_count);
    }
}
