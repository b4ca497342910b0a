//! Interpreting executor: depth-first search directly over the automaton.

use super::game::Op;
use super::nfa::{Label, Nfa, NodeId};
use super::search::SearchCore;
use crate::board::{BoardGraph, VertexId};

const NO_ACCEPT: NodeId = NodeId::MAX;
pub(crate) const STACK_RED_ZONE: usize = 64 * 1024;
pub(crate) const STACK_GROWTH: usize = 4 * 1024 * 1024;

struct Interp<'a> {
    nfa: &'a Nfa<Op>,
    board: &'a BoardGraph,
    core: &'a mut SearchCore,
    vertices: usize,
    /// Accepting node of the innermost lookahead being evaluated.
    accept: NodeId,
}

/// Collects every semi-move reachable from `node` with the walker on `v`.
pub(crate) fn search(
    nfa: &Nfa<Op>,
    board: &BoardGraph,
    core: &mut SearchCore,
    node: NodeId,
    v: VertexId,
) {
    let vertices = board.vertex_count();
    let mut it = Interp {
        nfa,
        board,
        core,
        vertices,
        accept: NO_ACCEPT,
    };
    it.visit(node, v);
}

/// Evaluates a lookahead sub-automaton from `v` on the scratch board.
pub(crate) fn eval_lookahead(
    nfa: &Nfa<Op>,
    board: &BoardGraph,
    core: &mut SearchCore,
    start: NodeId,
    accept: NodeId,
    v: VertexId,
) -> bool {
    let vertices = board.vertex_count();
    let mut it = Interp {
        nfa,
        board,
        core,
        vertices,
        accept: NO_ACCEPT,
    };
    it.check(start, accept, v)
}

impl Interp<'_> {
    fn visit(&mut self, node: NodeId, v: VertexId) {
        stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || self.visit_inner(node, v))
    }

    fn visit_inner(&mut self, node: NodeId, v: VertexId) {
        if !self.core.enter(node as usize * self.vertices + v as usize) {
            return;
        }
        if node == self.accept {
            self.core.found = true;
            return;
        }
        let nfa = self.nfa;
        for &ei in &nfa.out[node as usize] {
            if self.core.found {
                return;
            }
            let e = &nfa.edges[ei as usize];
            match &e.label {
                Label::Epsilon => self.visit(e.to, v),
                Label::Check {
                    positive,
                    start,
                    accept,
                } => {
                    if self.check(*start, *accept, v) == *positive {
                        self.visit(e.to, v);
                    }
                }
                Label::Action(op) => match op {
                    Op::Shift(d) => {
                        if let Some(w) = self.board.neighbor(v, *d as usize) {
                            self.visit(e.to, w);
                        }
                    }
                    Op::On(set) => {
                        if set.contains(self.core.board[v as usize]) {
                            self.visit(e.to, v);
                        }
                    }
                    Op::SetHere(p) => {
                        if self.core.can_mutate() {
                            let old = self.core.set_piece(v, *p);
                            let g = self.core.begin_segment();
                            self.visit(e.to, v);
                            self.core.end_segment(g);
                            self.core.unset_piece(v, old);
                        }
                    }
                    Op::Assign(list) => {
                        if self.core.can_mutate() {
                            let mut saved = Vec::with_capacity(list.len());
                            self.core.assign(list, &mut saved);
                            let g = self.core.begin_segment();
                            self.visit(e.to, v);
                            self.core.end_segment(g);
                            self.core.unassign(list, &saved);
                        }
                    }
                    Op::SwitchTo(p) => self.core.emit(Some(*p), ei, v),
                    Op::SwitchKeep => self.core.emit(None, ei, v),
                },
            }
        }
    }

    fn check(&mut self, start: NodeId, accept: NodeId, v: VertexId) -> bool {
        let key = start as usize * self.vertices + v as usize;
        if let Some(hit) = self.core.cached_check(key) {
            return hit;
        }
        let saved_accept = std::mem::replace(&mut self.accept, accept);
        let saved_found = std::mem::replace(&mut self.core.found, false);
        let g = self.core.begin_segment();
        self.visit(start, v);
        self.core.end_segment(g);
        let hit = std::mem::replace(&mut self.core.found, saved_found);
        self.accept = saved_accept;
        self.core.store_check(key, hit);
        hit
    }
}
