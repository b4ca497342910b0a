//! Scratch state shared by the interpreting and compiled executors.
//!
//! The search walks configurations (control location, walker vertex) over a
//! tentative board. Between two mutations the board is fixed, so every
//! configuration is explored at most once per mutation segment; this
//! subsumes the path-local loop guard and only ever drops duplicate work.

use crate::board::VertexId;
use crate::state::{Continuation, Effect, GameState, PieceId, PlayerId};

pub(crate) struct SearchCore {
    pub board: Vec<PieceId>,
    pub vars: Vec<u32>,
    pub effects: Vec<Effect>,
    marks: Vec<u32>,
    /// Lookahead outcomes per (location, vertex), tagged with the segment
    /// they were computed in.
    checks: Vec<(u32, bool)>,
    mark_log: Vec<(u32, u32)>,
    seg: u32,
    next_seg: u32,
    /// Set when a lookahead reaches its accepting location.
    pub found: bool,
    pub results: Vec<(Vec<Effect>, bool, Continuation)>,
    pub effect_cap: usize,
    /// Tentative board and variables at each emit, for consistency tests.
    #[cfg(test)]
    pub snapshots: Vec<(Vec<PieceId>, Vec<u32>)>,
}

pub(crate) struct SegmentGuard {
    seg: u32,
    log_len: usize,
}

impl SearchCore {
    pub fn new(locations: usize, vertices: usize) -> Self {
        SearchCore {
            board: Vec::new(),
            vars: Vec::new(),
            effects: Vec::new(),
            marks: vec![0; locations * vertices],
            checks: vec![(0, false); locations * vertices],
            mark_log: Vec::new(),
            seg: 1,
            next_seg: 1,
            found: false,
            results: Vec::new(),
            effect_cap: 8 * vertices + 256,
            #[cfg(test)]
            snapshots: Vec::new(),
        }
    }

    pub fn reset(&mut self, state: &GameState) {
        self.board.clear();
        self.board.extend_from_slice(&state.contents);
        self.vars.clear();
        self.vars.extend_from_slice(&state.variables);
        self.effects.clear();
        self.results.clear();
        #[cfg(test)]
        self.snapshots.clear();
        self.mark_log.clear();
        self.found = false;
        if self.next_seg > u32::MAX - (1 << 20) {
            self.marks.iter_mut().for_each(|m| *m = 0);
            self.checks.iter_mut().for_each(|c| c.0 = 0);
            self.next_seg = 0;
        }
        self.next_seg += 1;
        self.seg = self.next_seg;
    }

    /// Marks `key` visited in the current segment; false if it already was.
    #[inline]
    pub fn enter(&mut self, key: usize) -> bool {
        let m = &mut self.marks[key];
        if *m == self.seg {
            return false;
        }
        self.mark_log.push((key as u32, *m));
        *m = self.seg;
        true
    }

    /// A lookahead result computed earlier on the same tentative board.
    #[inline]
    pub fn cached_check(&self, key: usize) -> Option<bool> {
        let (seg, hit) = self.checks[key];
        (seg == self.seg).then_some(hit)
    }

    #[inline]
    pub fn store_check(&mut self, key: usize, hit: bool) {
        self.checks[key] = (self.seg, hit);
    }

    #[inline]
    pub fn begin_segment(&mut self) -> SegmentGuard {
        let g = SegmentGuard {
            seg: self.seg,
            log_len: self.mark_log.len(),
        };
        self.next_seg += 1;
        self.seg = self.next_seg;
        g
    }

    #[inline]
    pub fn end_segment(&mut self, g: SegmentGuard) {
        while self.mark_log.len() > g.log_len {
            let (k, old) = self.mark_log.pop().unwrap();
            self.marks[k as usize] = old;
        }
        self.seg = g.seg;
    }

    #[inline]
    pub fn can_mutate(&self) -> bool {
        self.effects.len() < self.effect_cap
    }

    #[inline]
    pub fn set_piece(&mut self, v: VertexId, p: PieceId) -> PieceId {
        let old = std::mem::replace(&mut self.board[v as usize], p);
        self.effects.push(Effect::SetPiece(v, p));
        old
    }

    #[inline]
    pub fn unset_piece(&mut self, v: VertexId, old: PieceId) {
        self.board[v as usize] = old;
        self.effects.pop();
    }

    pub fn assign(&mut self, list: &[(u16, u32)], saved: &mut Vec<u32>) {
        saved.clear();
        for &(i, x) in list {
            saved.push(std::mem::replace(&mut self.vars[i as usize], x));
            self.effects.push(Effect::SetVar(i, x));
        }
    }

    pub fn unassign(&mut self, list: &[(u16, u32)], saved: &[u32]) {
        for (&(i, _), &old) in list.iter().zip(saved).rev() {
            self.vars[i as usize] = old;
            self.effects.pop();
        }
    }

    pub fn emit(&mut self, pass: Option<PlayerId>, control: u32, vertex: VertexId) {
        let mut effects = self.effects.clone();
        if let Some(p) = pass {
            effects.push(Effect::PassControl(p));
        }
        self.results.push((
            effects,
            pass.is_none(),
            Continuation::Resume { control, vertex },
        ));
        #[cfg(test)]
        self.snapshots.push((self.board.clone(), self.vars.clone()));
    }
}
