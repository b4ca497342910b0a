//! Lowering of an epsilon-free automaton to instructions.

use super::{EpsilonFree, Instr, LoweredProgram, Pc};
use crate::board::BoardGraph;
use crate::rbg::nfa::{Edge, Label, NodeId};
use crate::rbg::{Op, PieceSet};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Node(NodeId),
    /// Node with one outgoing edge left out (the loop edge of a ray).
    Without(NodeId, u32),
}

struct Lowerer<'a> {
    f: &'a EpsilonFree<Op>,
    indeg: Vec<u32>,
    pinned: Vec<bool>,
    code: Vec<Instr>,
    blocks: HashMap<Key, usize>,
    queue: Vec<Key>,
    /// Composite shift paths, numbered after the plain directions.
    composites: Vec<Vec<u8>>,
    base_columns: usize,
    /// Control identifier to block number.
    entry_blocks: Vec<(u32, usize)>,
}

struct Step {
    dirs: Vec<u8>,
    pass: PieceSet,
    end: NodeId,
}

/// Lowers the automaton. Jump, Check and RayScan targets are block numbers
/// until the final patching pass turns them into pcs.
pub fn lower(f: &EpsilonFree<Op>, board: &BoardGraph) -> LoweredProgram {
    let n = f.nfa.node_count as usize;
    let mut indeg = vec![0u32; n];
    let mut pinned = vec![false; n];
    pinned[f.nfa.start as usize] = true;
    for e in &f.nfa.edges {
        indeg[e.to as usize] += 1;
        match &e.label {
            Label::Check { start, .. } => pinned[*start as usize] = true,
            Label::Action(Op::SwitchTo(_) | Op::SwitchKeep) => pinned[e.to as usize] = true,
            _ => {}
        }
    }
    let mut lw = Lowerer {
        f,
        indeg,
        pinned,
        code: Vec::new(),
        blocks: HashMap::new(),
        queue: Vec::new(),
        composites: Vec::new(),
        base_columns: board.directions().len(),
        entry_blocks: Vec::new(),
    };
    lw.request(Key::Node(f.nfa.start));
    let mut block_pc: Vec<Pc> = Vec::new();
    let mut next = 0;
    while next < lw.queue.len() {
        let key = lw.queue[next];
        block_pc.push(lw.code.len() as Pc);
        lw.emit_block(key);
        next += 1;
    }
    for ins in &mut lw.code {
        match ins {
            Instr::Jump(t) => *t = block_pc[*t as usize],
            Instr::Check { entry, .. } => *entry = block_pc[*entry as usize],
            Instr::RayScan { cont, .. } => *cont = block_pc[*cont as usize],
            _ => {}
        }
    }
    let controls = f
        .edge_origin
        .iter()
        .copied()
        .max()
        .map_or(0, |m| m as usize + 1);
    let mut entry = vec![Pc::MAX; controls];
    for &(c, b) in &lw.entry_blocks {
        entry[c as usize] = block_pc[b];
    }

    let vn = board.vertex_count();
    let off = vn as u32;
    let mut column_names: Vec<String> = board.directions().to_vec();
    let mut shift_table = Vec::with_capacity((lw.base_columns + lw.composites.len()) * vn);
    for d in 0..lw.base_columns {
        shift_table.extend((0..vn as u32).map(|v| board.neighbor(v, d).unwrap_or(off)));
    }
    for path in &lw.composites {
        column_names.push(
            path.iter()
                .map(|&d| board.directions()[d as usize].as_str())
                .collect::<Vec<_>>()
                .join("+"),
        );
        for v in 0..vn as u32 {
            let mut w = v;
            for &d in path {
                w = shift_table[d as usize * vn + w as usize];
                if w == off {
                    break;
                }
            }
            shift_table.push(w);
        }
    }
    LoweredProgram {
        instructions: lw.code,
        shift_table,
        column_names,
        vertex_count: vn,
        entry,
    }
}

impl Lowerer<'_> {
    fn request(&mut self, key: Key) -> usize {
        if let Some(&b) = self.blocks.get(&key) {
            return b;
        }
        let b = self.queue.len();
        self.blocks.insert(key, b);
        self.queue.push(key);
        b
    }

    fn edge(&self, ei: u32) -> &Edge<Op> {
        &self.f.nfa.edges[ei as usize]
    }

    fn out(&self, n: NodeId) -> &[u32] {
        &self.f.nfa.out[n as usize]
    }

    fn alternatives(&self, key: Key) -> (NodeId, Vec<u32>) {
        match key {
            Key::Node(n) => (n, self.out(n).to_vec()),
            Key::Without(n, g) => (n, self.out(n).iter().copied().filter(|&e| e != g).collect()),
        }
    }

    fn inlinable(&self, n: NodeId) -> bool {
        self.indeg[n as usize] == 1 && !self.pinned[n as usize]
    }

    fn emit_block(&mut self, key: Key) {
        let (n, edges) = self.alternatives(key);
        let accept = self.f.accepting[n as usize];
        let count = edges.len() + accept as usize;
        if count == 0 {
            self.code.push(Instr::Fork(Vec::new()));
        } else if count == 1 {
            if accept {
                self.code.push(Instr::Accept);
            } else {
                self.emit_chain(edges[0]);
            }
        } else {
            let at = self.code.len();
            self.code.push(Instr::Fork(Vec::new()));
            let mut targets = Vec::with_capacity(count);
            if accept {
                targets.push(self.code.len() as Pc);
                self.code.push(Instr::Accept);
            }
            for e in edges {
                targets.push(self.code.len() as Pc);
                self.emit_chain(e);
            }
            self.code[at] = Instr::Fork(targets);
        }
    }

    fn column(&mut self, dirs: &[u8]) -> u16 {
        if dirs.len() == 1 {
            return dirs[0] as u16;
        }
        let i = match self.composites.iter().position(|p| p == dirs) {
            Some(i) => i,
            None => {
                self.composites.push(dirs.to_vec());
                self.composites.len() - 1
            }
        };
        (self.base_columns + i) as u16
    }

    /// A run of shifts through single-exit nodes ending in one `On` test.
    fn guarded_step(&self, ei: u32) -> Option<Step> {
        let mut dirs = Vec::new();
        let mut cur = ei;
        loop {
            let e = self.edge(cur);
            let Label::Action(Op::Shift(d)) = e.label else {
                return None;
            };
            dirs.push(d);
            let t = e.to;
            if self.f.accepting[t as usize] || self.out(t).len() != 1 {
                return None;
            }
            let nx = self.out(t)[0];
            match &self.edge(nx).label {
                Label::Action(Op::On(s)) => {
                    return Some(Step {
                        dirs,
                        pass: *s,
                        end: self.edge(nx).to,
                    })
                }
                Label::Action(Op::Shift(_)) => cur = nx,
                _ => return None,
            }
        }
    }

    fn others(&self, n: NodeId, skip: u32) -> Vec<(&Label<Op>, NodeId)> {
        self.out(n)
            .iter()
            .filter(|&&e| e != skip)
            .map(|&e| (&self.edge(e).label, self.edge(e).to))
            .collect()
    }

    /// Recognises `G G*` where `G` is a guarded step, returning the step,
    /// the loop node and its loop edge.
    fn ray(&self, ei: u32) -> Option<(Step, NodeId, u32)> {
        let first = self.guarded_step(ei)?;
        let n2 = first.end;
        for &fe in self.out(n2) {
            let Some(second) = self.guarded_step(fe) else {
                continue;
            };
            if second.dirs != first.dirs || second.pass != first.pass || second.end == n2 {
                continue;
            }
            let n4 = second.end;
            for &ge in self.out(n4) {
                let Some(third) = self.guarded_step(ge) else {
                    continue;
                };
                if third.dirs != first.dirs || third.pass != first.pass || third.end != n4 {
                    continue;
                }
                if self.f.accepting[n2 as usize] == self.f.accepting[n4 as usize]
                    && self.others(n2, fe) == self.others(n4, ge)
                {
                    return Some((first, n4, ge));
                }
            }
        }
        None
    }

    fn emit_chain(&mut self, mut ei: u32) {
        loop {
            if let Some((step, n4, g)) = self.ray(ei) {
                let column = self.column(&step.dirs);
                let cont = self.request(Key::Without(n4, g)) as Pc;
                self.code.push(Instr::RayScan {
                    column,
                    pass: step.pass,
                    cont,
                });
                return;
            }
            let e = self.edge(ei).clone();
            let next = match &e.label {
                Label::Epsilon => e.to,
                Label::Check {
                    positive, start, ..
                } => {
                    let entry = self.request(Key::Node(*start)) as Pc;
                    self.code.push(Instr::Check {
                        positive: *positive,
                        entry,
                    });
                    e.to
                }
                Label::Action(op) => match op {
                    Op::Shift(d) => {
                        let t = e.to;
                        let fused = if self.inlinable(t)
                            && !self.f.accepting[t as usize]
                            && self.out(t).len() == 1
                        {
                            let nx = self.edge(self.out(t)[0]);
                            match nx.label {
                                Label::Action(Op::On(s)) => Some((s, nx.to)),
                                _ => None,
                            }
                        } else {
                            None
                        };
                        match fused {
                            Some((s, to)) => {
                                self.code.push(Instr::GuardedShift(*d as u16, s));
                                to
                            }
                            None => {
                                self.code.push(Instr::Shift(*d as u16));
                                t
                            }
                        }
                    }
                    Op::On(s) => {
                        self.code.push(Instr::On(*s));
                        e.to
                    }
                    Op::SetHere(p) => {
                        self.code.push(Instr::SetHere(*p));
                        e.to
                    }
                    Op::Assign(list) => {
                        self.code.push(Instr::AssignVars(list.clone()));
                        e.to
                    }
                    Op::SwitchTo(_) | Op::SwitchKeep => {
                        let control = self.f.edge_origin[ei as usize];
                        let pass = match op {
                            Op::SwitchTo(p) => Some(*p),
                            _ => None,
                        };
                        self.code.push(Instr::Emit { control, pass });
                        let b = self.request(Key::Node(e.to));
                        self.entry_blocks.push((control, b));
                        return;
                    }
                },
            };
            if !self.inlinable(next) {
                let b = self.request(Key::Node(next)) as Pc;
                self.code.push(Instr::Jump(b));
                return;
            }
            let accept = self.f.accepting[next as usize];
            let outs = self.out(next).len();
            if outs == 1 && !accept {
                ei = self.out(next)[0];
                continue;
            }
            self.emit_block(Key::Node(next));
            return;
        }
    }
}
