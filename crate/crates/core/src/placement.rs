//! m-level rook placements and their statistics.

use std::collections::BTreeMap;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::board::{Cell, FerrersBoard};
use crate::error::{PlacementIssue, Result, RookError};
use crate::poly::QPolynomial;

/// Cells on a board with at most one per column and at most one per level.
/// Cells are kept sorted by column. Serializes as a list of `[column, row]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    board: FerrersBoard,
    m: usize,
    cells: Vec<Cell>,
}

impl Placement {
    pub fn board(&self) -> &FerrersBoard {
        &self.board
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn into_cells(self) -> Vec<Cell> {
        self.cells
    }

    pub fn inv(&self) -> usize {
        inv(&self.board, self.m, &self.cells)
    }

    pub fn render(&self) -> String {
        self.board.render(self.m, &self.cells)
    }
}

impl Serialize for Placement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.cells.len()))?;
        for c in &self.cells {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// Check that `cells` is an m-level placement on `board`.
pub fn validate_placement(board: &FerrersBoard, m: usize, cells: &[Cell]) -> Result<Placement> {
    let mut sorted = cells.to_vec();
    sorted.sort();
    if let Some(&c) = sorted.iter().find(|c| !board.contains(**c)) {
        return Err(RookError::InvalidPlacement(PlacementIssue::OffBoard(c)));
    }
    if let Some(w) = sorted.windows(2).find(|w| w[0].column == w[1].column) {
        return Err(RookError::InvalidPlacement(PlacementIssue::ColumnClash(w[0].column)));
    }
    let mut levels: Vec<usize> = sorted.iter().map(|c| c.level(m)).collect();
    levels.sort_unstable();
    if let Some(w) = levels.windows(2).find(|w| w[0] == w[1]) {
        return Err(RookError::InvalidPlacement(PlacementIssue::LevelClash(w[0])));
    }
    Ok(Placement {
        board: board.clone(),
        m,
        cells: sorted,
    })
}

/// Call `visit` on every k-rook placement, in lexicographic order of the
/// column-sorted cell lists.
pub fn for_each_placement(board: &FerrersBoard, m: usize, k: usize, mut visit: impl FnMut(&[Cell])) {
    fn walk(
        board: &FerrersBoard,
        m: usize,
        k: usize,
        start: usize,
        used: &mut [bool],
        current: &mut Vec<Cell>,
        visit: &mut dyn FnMut(&[Cell]),
    ) {
        if current.len() == k {
            visit(current);
            return;
        }
        let n = board.num_columns();
        let needed = k - current.len();
        for col in start..=n {
            if n + 1 - col < needed {
                return;
            }
            for row in 1..=board.height(col) {
                let p = crate::board::level_of_row(row, m);
                if used[p] {
                    continue;
                }
                used[p] = true;
                current.push(Cell::new(col, row));
                walk(board, m, k, col + 1, used, current, visit);
                current.pop();
                used[p] = false;
            }
        }
    }
    let mut used = vec![false; board.num_levels(m) + 1];
    walk(board, m, k, 1, &mut used, &mut Vec::with_capacity(k), &mut visit);
}

pub fn enumerate_placements(board: &FerrersBoard, m: usize, k: usize) -> Vec<Placement> {
    let mut out = Vec::new();
    for_each_placement(board, m, k, |cells| {
        out.push(Placement {
            board: board.clone(),
            m,
            cells: cells.to_vec(),
        });
    });
    out
}

/// `r_{k,m}(B)` by exhaustive enumeration.
pub fn rook_count(board: &FerrersBoard, m: usize, k: usize) -> u64 {
    let mut n = 0u64;
    for_each_placement(board, m, k, |_| n += 1);
    n
}

/// `r_0, r_1, ...` up to the largest `k` that can be non-zero.
pub fn rook_numbers(board: &FerrersBoard, m: usize) -> Vec<u64> {
    let nonzero_columns = board.num_columns() - board.leading_zeros();
    let max_k = nonzero_columns.min(board.num_levels(m));
    (0..=max_k).map(|k| rook_count(board, m, k)).collect()
}

/// Level numbering of every cell, in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelNumbering {
    pub forward: BTreeMap<Cell, (usize, usize)>,
    pub inverse: BTreeMap<(usize, usize), Cell>,
}

pub fn level_numbering(board: &FerrersBoard, m: usize) -> LevelNumbering {
    let mut forward = BTreeMap::new();
    let mut inverse = BTreeMap::new();
    for cell in board.cells() {
        let key = board.level_number(cell, m).expect("cell lies on the board");
        forward.insert(cell, key);
        inverse.insert(key, cell);
    }
    LevelNumbering { forward, inverse }
}

/// Per-placement lookups: rook row by column and rook column by level.
struct Occupancy {
    row_in_column: Vec<Option<usize>>,
    column_in_level: Vec<Option<usize>>,
}

impl Occupancy {
    fn new(board: &FerrersBoard, m: usize, cells: &[Cell]) -> Self {
        let columns = board
            .num_columns()
            .max(cells.iter().map(|c| c.column).max().unwrap_or(0));
        let levels = board
            .num_levels(m)
            .max(cells.iter().map(|c| c.level(m)).max().unwrap_or(0));
        let mut row_in_column = vec![None; columns + 1];
        let mut column_in_level = vec![None; levels + 1];
        for c in cells {
            row_in_column[c.column] = Some(c.row);
            column_in_level[c.level(m)] = Some(c.column);
        }
        Occupancy {
            row_in_column,
            column_in_level,
        }
    }

    fn rook_strictly_above(&self, cell: Cell) -> bool {
        self.row_in_column[cell.column].is_some_and(|r| r > cell.row)
    }

    fn rook_strictly_left(&self, cell: Cell, m: usize) -> bool {
        self.column_in_level[cell.level(m)].is_some_and(|c| c < cell.column)
    }
}

/// `inv_m`: cells holding no rook, with no rook above in the column and no
/// rook to the left in the level.
pub fn inv(board: &FerrersBoard, m: usize, cells: &[Cell]) -> usize {
    let occ = Occupancy::new(board, m, cells);
    board
        .cells()
        .filter(|&c| occ.row_in_column[c.column] != Some(c.row))
        .filter(|&c| !occ.rook_strictly_above(c) && !occ.rook_strictly_left(c, m))
        .count()
}

/// `beta - m * (sum of rook columns)`, where `beta` counts cells strictly
/// below a rook in their column with no rook to their left in their level.
pub fn p_weight(board: &FerrersBoard, m: usize, cells: &[Cell]) -> i64 {
    let occ = Occupancy::new(board, m, cells);
    let beta = board
        .cells()
        .filter(|&c| occ.rook_strictly_above(c) && !occ.rook_strictly_left(c, m))
        .count();
    beta as i64 - (m * cells.iter().map(|c| c.column).sum::<usize>()) as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelTerm {
    pub level: usize,
    pub h: usize,
    pub nw: usize,
    pub hinv: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnTerm {
    pub column: usize,
    pub h: usize,
    pub nw: usize,
    pub vinv: i64,
}

/// Level-by-level and column-by-column decompositions of `inv_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvBreakdown {
    pub levels: Vec<LevelTerm>,
    pub columns: Vec<ColumnTerm>,
}

impl InvBreakdown {
    pub fn hinv(&self) -> Vec<i64> {
        self.levels.iter().map(|t| t.hinv).collect()
    }

    pub fn vinv(&self) -> Vec<i64> {
        self.columns.iter().map(|t| t.vinv).collect()
    }

    pub fn hinv_sum(&self) -> i64 {
        self.levels.iter().map(|t| t.hinv).sum()
    }

    pub fn vinv_sum(&self) -> i64 {
        self.columns.iter().map(|t| t.vinv).sum()
    }
}

/// A level or column without a rook is treated as if its rook had left the
/// board: to the right for levels, downward for columns.
pub fn inv_breakdown(board: &FerrersBoard, m: usize, cells: &[Cell]) -> InvBreakdown {
    let counts = board.level_counts(m);
    let northwest = |r: &Cell| {
        cells
            .iter()
            .filter(|o| o.column < r.column && o.level(m) > r.level(m))
            .count()
    };
    let levels = (1..=counts.len())
        .map(|p| {
            let (h, nw) = match cells.iter().find(|c| c.level(m) == p) {
                Some(r) => {
                    let (_, number) = board.level_number(*r, m).expect("rook lies on the board");
                    (counts[p - 1] - number, northwest(r))
                }
                None => (counts[p - 1], cells.iter().filter(|c| c.level(m) > p).count()),
            };
            LevelTerm {
                level: p,
                h,
                nw,
                hinv: h as i64 - (m * nw) as i64,
            }
        })
        .collect();
    let columns = (1..=board.num_columns())
        .map(|i| {
            let (h, nw) = match cells.iter().find(|c| c.column == i) {
                Some(r) => (board.height(i) - r.row, northwest(r)),
                None => (board.height(i), cells.iter().filter(|c| c.column < i).count()),
            };
            ColumnTerm {
                column: i,
                h,
                nw,
                vinv: h as i64 - (m * nw) as i64,
            }
        })
        .collect();
    InvBreakdown { levels, columns }
}

/// `sum q^inv` over all k-rook placements.
pub fn q_rook_polynomial(board: &FerrersBoard, m: usize, k: usize) -> QPolynomial {
    let mut exponents = Vec::new();
    for_each_placement(board, m, k, |cells| exponents.push(inv(board, m, cells)));
    QPolynomial::from_exponents(exponents)
}
