//! Executor for lowered programs.

use super::{Instr, LoweredProgram, Pc};
use crate::board::VertexId;
use crate::rbg::interp::{STACK_GROWTH, STACK_RED_ZONE};
use crate::rbg::search::SearchCore;

struct Exec<'a> {
    p: &'a LoweredProgram,
    core: &'a mut SearchCore,
    vertices: usize,
    off: VertexId,
    checking: bool,
    depth: u32,
}

/// Collects every semi-move reachable from `pc` with the walker on `v`.
pub(crate) fn search(
    p: &LoweredProgram,
    vertices: usize,
    core: &mut SearchCore,
    pc: Pc,
    v: VertexId,
) {
    if pc == Pc::MAX {
        return;
    }
    let mut ex = Exec {
        p,
        core,
        vertices,
        off: vertices as VertexId,
        checking: false,
        depth: 0,
    };
    ex.run(pc, v);
}

impl Exec<'_> {
    #[inline]
    fn step(&self, column: u16, v: VertexId) -> VertexId {
        self.p.shift_table[column as usize * self.vertices + v as usize]
    }

    /// Enters a block; each (block, vertex) runs once per segment.
    fn run(&mut self, pc: Pc, v: VertexId) {
        if self.core.enter(pc as usize * self.vertices + v as usize) {
            // probing the stack is costly, so only every few levels
            self.depth += 1;
            if self.depth.is_multiple_of(16) {
                stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || self.run_inline(pc, v));
            } else {
                self.run_inline(pc, v);
            }
            self.depth -= 1;
        }
    }

    /// Runs code reachable only through its single predecessor, which was
    /// already deduplicated.
    fn run_inline(&mut self, mut pc: Pc, mut v: VertexId) {
        let p = self.p;
        loop {
            match &p.instructions[pc as usize] {
                Instr::Shift(c) => {
                    v = self.step(*c, v);
                    if v == self.off {
                        return;
                    }
                }
                Instr::On(s) => {
                    if !s.contains(self.core.board[v as usize]) {
                        return;
                    }
                }
                Instr::GuardedShift(c, s) => {
                    v = self.step(*c, v);
                    if v == self.off || !s.contains(self.core.board[v as usize]) {
                        return;
                    }
                }
                Instr::SetHere(piece) => {
                    if self.core.can_mutate() {
                        let old = self.core.set_piece(v, *piece);
                        let g = self.core.begin_segment();
                        self.run_inline(pc + 1, v);
                        self.core.end_segment(g);
                        self.core.unset_piece(v, old);
                    }
                    return;
                }
                Instr::AssignVars(list) => {
                    if self.core.can_mutate() {
                        let mut saved = Vec::with_capacity(list.len());
                        self.core.assign(list, &mut saved);
                        let g = self.core.begin_segment();
                        self.run_inline(pc + 1, v);
                        self.core.end_segment(g);
                        self.core.unassign(list, &saved);
                    }
                    return;
                }
                Instr::Emit { control, pass } => {
                    self.core.emit(*pass, *control, v);
                    return;
                }
                Instr::Fork(targets) => {
                    for &t in targets {
                        if self.core.found {
                            return;
                        }
                        self.run_inline(t, v);
                    }
                    return;
                }
                Instr::RayScan { column, pass, cont } => {
                    let mut w = v;
                    loop {
                        w = self.step(*column, w);
                        if w == self.off
                            || !pass.contains(self.core.board[w as usize])
                            || self.core.found
                        {
                            return;
                        }
                        self.run(*cont, w);
                    }
                }
                Instr::Check { positive, entry } => {
                    if self.check(*entry, v) != *positive {
                        return;
                    }
                }
                Instr::Accept => {
                    if self.checking {
                        self.core.found = true;
                    }
                    return;
                }
                Instr::Jump(t) => {
                    self.run(*t, v);
                    return;
                }
            }
            pc += 1;
        }
    }

    fn check(&mut self, entry: Pc, v: VertexId) -> bool {
        let key = entry as usize * self.vertices + v as usize;
        if let Some(hit) = self.core.cached_check(key) {
            return hit;
        }
        let saved_checking = std::mem::replace(&mut self.checking, true);
        let saved_found = std::mem::replace(&mut self.core.found, false);
        let g = self.core.begin_segment();
        self.run(entry, v);
        self.core.end_segment(g);
        let hit = std::mem::replace(&mut self.core.found, saved_found);
        self.checking = saved_checking;
        self.core.store_check(key, hit);
        hit
    }
}
