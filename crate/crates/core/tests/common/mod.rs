//! Independent reference implementations. Nothing here uses the engine.

#![allow(dead_code)]

pub mod micro;

/// Tic-Tac-Toe move paths, finished games counting as one leaf.
pub fn tictactoe_perft(depth: u32) -> u64 {
    fn won(b: &[u8; 9], p: u8) -> bool {
        const LINES: [[usize; 3]; 8] = [
            [0, 1, 2],
            [3, 4, 5],
            [6, 7, 8],
            [0, 3, 6],
            [1, 4, 7],
            [2, 5, 8],
            [0, 4, 8],
            [2, 4, 6],
        ];
        LINES.iter().any(|l| l.iter().all(|&i| b[i] == p))
    }
    fn go(b: &mut [u8; 9], p: u8, d: u32) -> u64 {
        if won(b, 3 - p) || b.iter().all(|&c| c != 0) || d == 0 {
            return 1;
        }
        let mut n = 0;
        for i in 0..9 {
            if b[i] == 0 {
                b[i] = p;
                n += go(b, 3 - p, d - 1);
                b[i] = 0;
            }
        }
        n
    }
    go(&mut [0; 9], 1, depth)
}

/// Reversi on 8x8 with passing, black first. Rows are ranks 1..8 from the
/// bottom; d4/e5 black, e4/d5 white.
pub fn reversi_perft(depth: u32) -> u64 {
    type B = [[u8; 8]; 8];
    fn flips(b: &B, r: usize, c: usize, p: u8) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if b[r][c] != 0 {
            return out;
        }
        for (dr, dc) in [
            (-1, -1),
            (-1, 0),
            (-1, 1),
            (0, -1),
            (0, 1),
            (1, -1),
            (1, 0),
            (1, 1),
        ] {
            let mut run = Vec::new();
            let (mut rr, mut cc) = (r as i32 + dr, c as i32 + dc);
            while (0..8).contains(&rr)
                && (0..8).contains(&cc)
                && b[rr as usize][cc as usize] == 3 - p
            {
                run.push((rr as usize, cc as usize));
                rr += dr;
                cc += dc;
            }
            if !run.is_empty()
                && (0..8).contains(&rr)
                && (0..8).contains(&cc)
                && b[rr as usize][cc as usize] == p
            {
                out.extend(run);
            }
        }
        out
    }
    type Flips = Vec<(usize, usize)>;
    fn moves(b: &B, p: u8) -> Vec<(usize, usize, Flips)> {
        let mut out = Vec::new();
        for r in 0..8 {
            for c in 0..8 {
                let f = flips(b, r, c, p);
                if !f.is_empty() {
                    out.push((r, c, f));
                }
            }
        }
        out
    }
    fn go(b: &B, p: u8, d: u32) -> u64 {
        if d == 0 {
            return 1;
        }
        let ms = moves(b, p);
        if ms.is_empty() {
            if moves(b, 3 - p).is_empty() {
                return 1;
            }
            return go(b, 3 - p, d - 1);
        }
        ms.iter()
            .map(|(r, c, f)| {
                let mut t = *b;
                t[*r][*c] = p;
                for &(x, y) in f {
                    t[x][y] = p;
                }
                go(&t, 3 - p, d - 1)
            })
            .sum()
    }
    let mut b = [[0u8; 8]; 8];
    b[3][3] = 1;
    b[4][4] = 1;
    b[3][4] = 2;
    b[4][3] = 2;
    go(&b, 1, depth)
}

/// Amazons on 10x10; a queen move and its arrow are separate plies.
/// Sites count row-major from the bottom-left corner.
pub fn amazons_perft(depth: u32) -> u64 {
    type B = [[u8; 10]; 10];
    const DIRS: [(i32, i32); 8] = [
        (-1, -1),
        (-1, 0),
        (-1, 1),
        (0, -1),
        (0, 1),
        (1, -1),
        (1, 0),
        (1, 1),
    ];
    fn rays(b: &B, r: usize, c: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (dr, dc) in DIRS {
            let (mut rr, mut cc) = (r as i32 + dr, c as i32 + dc);
            while (0..10).contains(&rr) && (0..10).contains(&cc) && b[rr as usize][cc as usize] == 0
            {
                out.push((rr as usize, cc as usize));
                rr += dr;
                cc += dc;
            }
        }
        out
    }
    /// `arrow_from` is set between a queen move and its arrow.
    fn go(b: &mut B, p: u8, arrow_from: Option<(usize, usize)>, d: u32) -> u64 {
        if d == 0 {
            return 1;
        }
        match arrow_from {
            Some((r, c)) => {
                let targets = rays(b, r, c);
                let mut n = 0;
                for (tr, tc) in targets {
                    b[tr][tc] = 3;
                    n += go(b, 3 - p, None, d - 1);
                    b[tr][tc] = 0;
                }
                n
            }
            None => {
                let mut n = 0;
                let mut any = false;
                for r in 0..10 {
                    for c in 0..10 {
                        if b[r][c] != p {
                            continue;
                        }
                        for (tr, tc) in rays(b, r, c) {
                            any = true;
                            b[r][c] = 0;
                            b[tr][tc] = p;
                            n += go(b, p, Some((tr, tc)), d - 1);
                            b[tr][tc] = 0;
                            b[r][c] = p;
                        }
                    }
                }
                if any {
                    n
                } else {
                    1
                }
            }
        }
    }
    let mut b = [[0u8; 10]; 10];
    for (sites, p) in [([3, 6, 30, 39], 1), ([60, 69, 93, 96], 2)] {
        for s in sites {
            b[s / 10][s % 10] = p;
        }
    }
    go(&mut b, 1, None, depth)
}

/// Breakthrough on 8x8; white starts on ranks 1-2 and moves up.
pub fn breakthrough_perft(depth: u32) -> u64 {
    type B = [[u8; 8]; 8];
    fn go(b: &B, p: u8, d: u32, over: bool) -> u64 {
        if over || d == 0 {
            return 1;
        }
        let dr: i32 = if p == 1 { 1 } else { -1 };
        let goal = if p == 1 { 7 } else { 0 };
        let mut n = 0;
        let mut any = false;
        for r in 0..8 {
            for c in 0..8 {
                if b[r][c] != p {
                    continue;
                }
                let nr = r as i32 + dr;
                if !(0..8).contains(&nr) {
                    continue;
                }
                for dc in [-1i32, 0, 1] {
                    let nc = c as i32 + dc;
                    if !(0..8).contains(&nc) {
                        continue;
                    }
                    let target = b[nr as usize][nc as usize];
                    if target == p || (dc == 0 && target != 0) {
                        continue;
                    }
                    any = true;
                    let mut t = *b;
                    t[r][c] = 0;
                    t[nr as usize][nc as usize] = p;
                    n += go(&t, 3 - p, d - 1, nr as usize == goal);
                }
            }
        }
        if any {
            n
        } else {
            1
        }
    }
    let mut b = [[0u8; 8]; 8];
    b[0] = [1; 8];
    b[1] = [1; 8];
    b[6] = [2; 8];
    b[7] = [2; 8];
    go(&b, 1, depth, false)
}

/// Reference splitmix64 stream.
pub fn splitmix64(seed: u64, n: usize) -> Vec<u64> {
    let mut s = seed;
    (0..n)
        .map(|_| {
            s = s.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = s;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            z ^ (z >> 31)
        })
        .collect()
}
