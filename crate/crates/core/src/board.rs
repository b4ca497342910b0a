//! Board graphs: vertices joined by direction-labelled edges.

use std::fmt;

use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoardError {
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("vertex {0} is not on the board")]
    UnknownVertex(VertexId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoardShape {
    Rectangle,
    /// Rhombus of hexagonal cells, six neighbours per interior cell.
    Hex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    North,
    South,
    West,
    East,
}

impl Side {
    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "N" => Some(Side::North),
            "S" => Some(Side::South),
            "W" => Some(Side::West),
            "E" => Some(Side::East),
            _ => None,
        }
    }
}

/// Row offsets and column offsets for the default direction order.
const RECT_DIRS: [(&str, i32, i32); 8] = [
    ("up", -1, 0),
    ("down", 1, 0),
    ("left", 0, -1),
    ("right", 0, 1),
    ("upleft", -1, -1),
    ("upright", -1, 1),
    ("downleft", 1, -1),
    ("downright", 1, 1),
];

const HEX_DIRS: [(&str, i32, i32); 6] = [
    ("up", -1, 0),
    ("down", 1, 0),
    ("left", 0, -1),
    ("right", 0, 1),
    ("upright", -1, 1),
    ("downleft", 1, -1),
];

/// A finite board. Vertex 0 is the top-left cell and ids run row-major.
///
/// The neighbour table is dense: `off_board()` (one past the last vertex)
/// marks a missing neighbour.
#[derive(Clone, PartialEq, Eq)]
pub struct BoardGraph {
    shape: BoardShape,
    rows: usize,
    cols: usize,
    directions: Vec<String>,
    offsets: Vec<(i32, i32)>,
    opposite: Vec<usize>,
    neighbors: Vec<VertexId>,
    labels: Vec<String>,
}

impl fmt::Debug for BoardGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoardGraph")
            .field("shape", &self.shape)
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("directions", &self.directions)
            .finish()
    }
}

/// Rectangular board with the eight king directions.
pub fn build_rectangle_board(rows: usize, cols: usize) -> BoardGraph {
    BoardGraph::generate(BoardShape::Rectangle, rows, cols, &RECT_DIRS, None)
}

/// Hex rhombus with six directions.
pub fn build_hex_board(rows: usize, cols: usize) -> BoardGraph {
    BoardGraph::generate(BoardShape::Hex, rows, cols, &HEX_DIRS, None)
}

impl BoardGraph {
    /// Rectangle whose orthogonal directions carry caller-chosen names
    /// (`[up, down, left, right]` order); diagonals are named by
    /// concatenating the vertical and horizontal names.
    pub fn rectangle_named(rows: usize, cols: usize, names: [&str; 4]) -> BoardGraph {
        let [u, d, l, r] = names;
        let owned = [
            u.to_string(),
            d.to_string(),
            l.to_string(),
            r.to_string(),
            format!("{u}{l}"),
            format!("{u}{r}"),
            format!("{d}{l}"),
            format!("{d}{r}"),
        ];
        BoardGraph::generate(BoardShape::Rectangle, rows, cols, &RECT_DIRS, Some(&owned))
    }

    /// Hex rhombus with names for `[up, down, left, right, upright, downleft]`.
    pub fn hex_named(rows: usize, cols: usize, names: [&str; 6]) -> BoardGraph {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        BoardGraph::generate(BoardShape::Hex, rows, cols, &HEX_DIRS, Some(&owned))
    }

    fn generate(
        shape: BoardShape,
        rows: usize,
        cols: usize,
        dirs: &[(&str, i32, i32)],
        names: Option<&[String]>,
    ) -> BoardGraph {
        assert!(rows >= 1 && cols >= 1, "board dimensions must be positive");
        assert!(cols <= 26, "at most 26 files are supported");
        let n = rows * cols;
        let off = n as VertexId;
        let mut neighbors = vec![off; dirs.len() * n];
        for (d, &(_, dr, dc)) in dirs.iter().enumerate() {
            for r in 0..rows {
                for c in 0..cols {
                    let (nr, nc) = (r as i32 + dr, c as i32 + dc);
                    if nr >= 0 && nc >= 0 && (nr as usize) < rows && (nc as usize) < cols {
                        neighbors[d * n + r * cols + c] =
                            (nr as usize * cols + nc as usize) as VertexId;
                    }
                }
            }
        }
        let offsets: Vec<(i32, i32)> = dirs.iter().map(|&(_, dr, dc)| (dr, dc)).collect();
        let opposite = offsets
            .iter()
            .map(|&(dr, dc)| {
                offsets
                    .iter()
                    .position(|&o| o == (-dr, -dc))
                    .expect("direction set is symmetric")
            })
            .collect();
        let directions = match names {
            Some(ns) => ns.to_vec(),
            None => dirs.iter().map(|&(s, _, _)| s.to_string()).collect(),
        };
        let labels = (0..n)
            .map(|v| {
                let (r, c) = (v / cols, v % cols);
                format!("{}{}", (b'a' + c as u8) as char, rows - r)
            })
            .collect();
        BoardGraph {
            shape,
            rows,
            cols,
            directions,
            offsets,
            opposite,
            neighbors,
            labels,
        }
    }

    pub fn shape(&self) -> BoardShape {
        self.shape
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vertex_count(&self) -> usize {
        self.rows * self.cols
    }

    /// Sentinel id used in the dense neighbour table.
    pub fn off_board(&self) -> VertexId {
        self.vertex_count() as VertexId
    }

    pub fn directions(&self) -> &[String] {
        &self.directions
    }

    pub fn direction_index(&self, name: &str) -> Option<usize> {
        self.directions.iter().position(|d| d == name)
    }

    pub fn opposite(&self, dir: usize) -> usize {
        self.opposite[dir]
    }

    /// `(row, col)` step of a direction.
    pub fn offset(&self, dir: usize) -> (i32, i32) {
        self.offsets[dir]
    }

    #[inline]
    pub fn neighbor(&self, v: VertexId, dir: usize) -> Option<VertexId> {
        let n = self.neighbors[dir * self.vertex_count() + v as usize];
        (n != self.off_board()).then_some(n)
    }

    /// Dense table indexed by `dir * vertex_count + v`.
    pub fn neighbor_table(&self) -> &[VertexId] {
        &self.neighbors
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn encode(&self, v: VertexId) -> Result<&str, BoardError> {
        self.labels
            .get(v as usize)
            .map(String::as_str)
            .ok_or(BoardError::UnknownVertex(v))
    }

    pub fn decode(&self, text: &str) -> Result<VertexId, BoardError> {
        let unknown = || BoardError::UnknownCoordinate(text.to_string());
        let mut chars = text.chars();
        let file = chars.next().ok_or_else(unknown)?;
        if !file.is_ascii_lowercase() {
            return Err(unknown());
        }
        let col = (file as u8 - b'a') as usize;
        let rank: usize = chars.as_str().parse().map_err(|_| unknown())?;
        if col >= self.cols || rank == 0 || rank > self.rows {
            return Err(unknown());
        }
        let v = ((self.rows - rank) * self.cols + col) as VertexId;
        // rejects non-canonical spellings such as "a01"
        if self.labels[v as usize] != text {
            return Err(unknown());
        }
        Ok(v)
    }

    pub fn row_col(&self, v: VertexId) -> (usize, usize) {
        (v as usize / self.cols, v as usize % self.cols)
    }

    /// Site index counted row-major from the bottom-left cell, as used by
    /// ludemic placements.
    pub fn site_to_vertex(&self, site: usize) -> Option<VertexId> {
        if site >= self.vertex_count() {
            return None;
        }
        let (rb, c) = (site / self.cols, site % self.cols);
        Some(((self.rows - 1 - rb) * self.cols + c) as VertexId)
    }

    pub fn on_side(&self, v: VertexId, side: Side) -> bool {
        let (r, c) = self.row_col(v);
        match side {
            Side::North => r == 0,
            Side::South => r + 1 == self.rows,
            Side::West => c == 0,
            Side::East => c + 1 == self.cols,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_has_no_neighbors() {
        let b = build_rectangle_board(1, 1);
        assert_eq!(b.vertex_count(), 1);
        assert!((0..8).all(|d| b.neighbor(0, d).is_none()));
    }

    #[test]
    fn corner_of_3x3_has_three_neighbors() {
        let b = build_rectangle_board(3, 3);
        let n = (0..8).filter(|&d| b.neighbor(0, d).is_some()).count();
        assert_eq!(n, 3);
        assert_eq!((0..8).filter(|&d| b.neighbor(4, d).is_some()).count(), 8);
    }

    #[test]
    fn labels_follow_files_and_bottom_up_ranks() {
        let b = build_rectangle_board(10, 10);
        assert_eq!(b.encode(0).unwrap(), "a10");
        assert_eq!(b.decode("a10").unwrap(), 0);
        assert_eq!(
            b.decode("z9"),
            Err(BoardError::UnknownCoordinate("z9".into()))
        );
        assert_eq!(
            b.decode("a01"),
            Err(BoardError::UnknownCoordinate("a01".into()))
        );
        // bottom-left site 3 is d1, which is the fourth cell of the last literal row
        let v = b.site_to_vertex(3).unwrap();
        assert_eq!(b.label(v), "d1");
        assert_eq!(v, 93);
        for v in 0..100 {
            assert_eq!(b.decode(b.label(v)).unwrap(), v);
        }
    }

    #[test]
    fn orthogonal_moves_are_inverse() {
        let b = build_rectangle_board(4, 5);
        for v in 0..20 {
            for d in 0..8 {
                if let Some(w) = b.neighbor(v, d) {
                    assert_eq!(b.neighbor(w, b.opposite(d)), Some(v));
                }
            }
        }
    }

    #[test]
    fn named_rectangle_builds_composite_diagonals() {
        let b = BoardGraph::rectangle_named(3, 3, ["n", "s", "w", "e"]);
        assert_eq!(b.direction_index("nw"), Some(4));
        assert_eq!(b.neighbor(4, 4), Some(0));
    }

    #[test]
    fn hex_interior_has_six_neighbors() {
        let b = build_hex_board(3, 3);
        assert_eq!((0..6).filter(|&d| b.neighbor(4, d).is_some()).count(), 6);
        assert_eq!((0..6).filter(|&d| b.neighbor(0, d).is_some()).count(), 2);
    }
}
