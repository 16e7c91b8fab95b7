//! Ferrers boards and their level geometry.
//!
//! A board is a weakly increasing list of column heights, read left to right.
//! Rows are split into levels of `m` consecutive rows: row `j` lies in level
//! `ceil(j / m)`. All coordinates are 1-based.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{FailedInequality, Result, RookError};
use crate::fs_bijection::{Direction, FsScript, FsStep, StepKind};

/// A cell `(column, row)`, both 1-based. Serializes as `[column, row]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Cell {
    pub column: usize,
    pub row: usize,
}

impl Cell {
    pub const fn new(column: usize, row: usize) -> Self {
        Cell { column, row }
    }

    /// Level containing this cell's row.
    pub fn level(&self, m: usize) -> usize {
        level_of_row(self.row, m)
    }
}

impl From<(usize, usize)> for Cell {
    fn from((column, row): (usize, usize)) -> Self {
        Cell { column, row }
    }
}

impl From<Cell> for (usize, usize) {
    fn from(c: Cell) -> Self {
        (c.column, c.row)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.column, self.row)
    }
}

/// Level of row `j` (rows and levels are 1-based).
pub fn level_of_row(row: usize, m: usize) -> usize {
    row.div_ceil(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Up,
    Down,
}

/// `ceil_m(j)` or `floor_m(j)`: the nearest multiple of `m` in the given direction.
pub fn round_to_multiple(j: usize, m: usize, direction: Rounding) -> usize {
    match direction {
        Rounding::Up => j.div_ceil(m) * m,
        Rounding::Down => j / m * m,
    }
}

/// A natural number or infinity. Arm and leg lengths use infinity at the
/// board's edges; `Infinite` compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedCount {
    Finite(usize),
    Infinite,
}

impl ExtendedCount {
    pub fn floor_m(self, m: usize) -> ExtendedCount {
        match self {
            ExtendedCount::Finite(v) => ExtendedCount::Finite(round_to_multiple(v, m, Rounding::Down)),
            ExtendedCount::Infinite => ExtendedCount::Infinite,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            ExtendedCount::Finite(v) => Some(v),
            ExtendedCount::Infinite => None,
        }
    }
}

impl fmt::Display for ExtendedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedCount::Finite(v) => write!(f, "{v}"),
            ExtendedCount::Infinite => f.write_str("inf"),
        }
    }
}

/// A Ferrers board: bottom-justified columns with weakly increasing heights.
///
/// Leading zero-height columns are kept; they matter when a board is embedded
/// in a triangular or square ambient board.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<usize>")]
pub struct FerrersBoard {
    heights: Vec<usize>,
}

impl FerrersBoard {
    pub fn new(heights: Vec<usize>) -> Result<Self> {
        if let Some(index) = heights.windows(2).position(|w| w[1] < w[0]) {
            return Err(RookError::NonMonotone { index: index + 1 });
        }
        Ok(FerrersBoard { heights })
    }

    pub fn empty() -> Self {
        FerrersBoard::default()
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn num_columns(&self) -> usize {
        self.heights.len()
    }

    /// Height of column `i` (1-based); zero outside the board.
    pub fn height(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.heights.get(i - 1).copied().unwrap_or(0)
    }

    pub fn max_height(&self) -> usize {
        self.heights.last().copied().unwrap_or(0)
    }

    pub fn cell_count(&self) -> usize {
        self.heights.iter().sum()
    }

    /// Number of non-empty levels, `t`.
    pub fn num_levels(&self, m: usize) -> usize {
        self.max_height().div_ceil(m)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.column >= 1 && cell.row >= 1 && cell.row <= self.height(cell.column)
    }

    /// All cells, column by column, bottom to top.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.heights
            .iter()
            .enumerate()
            .flat_map(|(i, &h)| (1..=h).map(move |j| Cell::new(i + 1, j)))
    }

    /// Number of cells column `i` has in level `p`.
    pub fn cells_in_level(&self, i: usize, p: usize, m: usize) -> usize {
        if p == 0 {
            return 0;
        }
        self.height(i).saturating_sub((p - 1) * m).min(m)
    }

    pub fn leading_zeros(&self) -> usize {
        self.heights.iter().take_while(|&&h| h == 0).count()
    }

    pub fn strip_leading_zeros(&self) -> FerrersBoard {
        FerrersBoard {
            heights: self.heights[self.leading_zeros()..].to_vec(),
        }
    }

    /// Left-pad with zero columns to exactly `n` columns.
    pub fn padded_to(&self, n: usize) -> Result<FerrersBoard> {
        if self.heights.len() > n {
            return Err(RookError::DoesNotFit);
        }
        let mut heights = vec![0; n - self.heights.len()];
        heights.extend_from_slice(&self.heights);
        Ok(FerrersBoard { heights })
    }

    /// Cell counts `l_1, ..., l_t` of the non-empty levels.
    pub fn level_counts(&self, m: usize) -> Vec<usize> {
        (1..=self.num_levels(m))
            .map(|p| (1..=self.num_columns()).map(|i| self.cells_in_level(i, p, m)).sum())
            .collect()
    }

    /// At most one column terminating in each level has a height that is not
    /// a multiple of `m`.
    pub fn is_singleton(&self, m: usize) -> bool {
        let mut seen_partial = vec![false; self.num_levels(m) + 1];
        for &h in &self.heights {
            if h % m != 0 {
                let p = level_of_row(h, m);
                if seen_partial[p] {
                    return false;
                }
                seen_partial[p] = true;
            }
        }
        true
    }

    /// The unique singleton board with the same level counts.
    ///
    /// Each level with `l_p = c*m + r` becomes `c` full columns on the right
    /// and one column of `r` cells to their left. The result keeps this
    /// board's leading zero columns and drops any other columns emptied by the
    /// repacking.
    pub fn singleton_of(&self, m: usize) -> FerrersBoard {
        let counts = self.level_counts(m);
        let width = counts.iter().map(|&l| l.div_ceil(m)).max().unwrap_or(0);
        let mut from_right = vec![0usize; width];
        for &l in &counts {
            let (full, rest) = (l / m, l % m);
            for h in from_right.iter_mut().take(full) {
                *h += m;
            }
            if rest > 0 {
                from_right[full] += rest;
            }
        }
        let mut heights = vec![0; self.leading_zeros()];
        heights.extend(from_right.into_iter().rev());
        FerrersBoard { heights }
    }

    /// `l(B) = (l_t, ..., l_1)`: the board of reversed level counts.
    pub fn l_operator(&self, m: usize) -> FerrersBoard {
        let mut heights = self.level_counts(m);
        heights.reverse();
        FerrersBoard { heights }
    }

    /// Cells of column `i` strictly above level `p`; infinite past the last column.
    pub fn arm(&self, m: usize, i: usize, p: usize) -> ExtendedCount {
        if i > self.num_columns() {
            return ExtendedCount::Infinite;
        }
        ExtendedCount::Finite(self.height(i).saturating_sub(p * m))
    }

    /// Cells of level `p` strictly left of column `i`; infinite for `p = 0`.
    pub fn leg(&self, m: usize, i: usize, p: usize) -> ExtendedCount {
        if p == 0 {
            return ExtendedCount::Infinite;
        }
        let upto = i.saturating_sub(1).min(self.num_columns());
        ExtendedCount::Finite((1..=upto).map(|x| self.cells_in_level(x, p, m)).sum())
    }

    /// Which permissibility inequality fails at `(i, p)`, if any.
    pub fn permissibility(&self, m: usize, i: usize, p: usize) -> Result<Option<FailedInequality>> {
        if !self.is_singleton(m) {
            return Err(RookError::NotSingleton);
        }
        if p == 0 || i == 0 || self.cells_in_level(i, p, m) == 0 {
            return Err(RookError::EmptyIntersection { column: i, level: p });
        }
        let first = self.arm(m, i, p) <= self.leg(m, i, p - 1).floor_m(m);
        let second = self.leg(m, i, p) <= self.arm(m, i + 1, p).floor_m(m);
        Ok(match (first, second) {
            (true, true) => None,
            (false, true) => Some(FailedInequality::ArmBelowLeg),
            (true, false) => Some(FailedInequality::LegBelowArm),
            (false, false) => Some(FailedInequality::Both),
        })
    }

    pub fn is_permissible(&self, m: usize, i: usize, p: usize) -> Result<bool> {
        Ok(self.permissibility(m, i, p)?.is_none())
    }

    /// The local l-operator `l_{i,p}`: replace the subboard of cells in or
    /// above level `p` and in or left of column `i` by its l-image.
    ///
    /// For `p = 1` the image may be wider than the subboard; the board then
    /// grows on the left and every column index shifts by the growth.
    pub fn local_l(&self, m: usize, i: usize, p: usize) -> Result<FerrersBoard> {
        if let Some(failed) = self.permissibility(m, i, p)? {
            return Err(RookError::NotPermissible {
                column: i,
                level: p,
                failed,
            });
        }
        Ok(self.local_l_unchecked(m, i, p).board)
    }

    pub(crate) fn local_l_unchecked(&self, m: usize, i: usize, p: usize) -> LocalLGeometry {
        let base = (p - 1) * m;
        let sub = self.subboard(m, i, p);
        let image = sub.l_operator(m);
        let width = image.num_columns();
        let growth = width.saturating_sub(i);
        let right_edge = i + growth;
        let mut heights = Vec::with_capacity(self.num_columns() + growth);
        for new_col in 1..=self.num_columns() + growth {
            let h = match new_col.checked_sub(growth) {
                Some(old) if old > i => self.height(old),
                old => {
                    let below = old.filter(|&o| o >= 1).map_or(0, |o| self.height(o).min(base));
                    let image_col = (new_col + width).checked_sub(right_edge).filter(|&c| c >= 1);
                    below + image_col.map_or(0, |c| image.height(c))
                }
            };
            heights.push(h);
        }
        LocalLGeometry {
            board: FerrersBoard { heights },
            sub,
            image,
            growth,
        }
    }

    /// `B_{i,p}` re-based so that level `p` becomes level 1.
    pub(crate) fn subboard(&self, m: usize, i: usize, p: usize) -> FerrersBoard {
        let base = (p - 1) * m;
        FerrersBoard {
            heights: (1..=i).map(|x| self.height(x).saturating_sub(base)).collect(),
        }
    }

    /// Consecutive non-zero heights differ by at least `m`.
    pub fn is_m_increasing(&self, m: usize) -> bool {
        self.heights[self.leading_zeros()..]
            .windows(2)
            .all(|w| w[1] >= w[0] + m)
    }

    /// Compare reversed height sequences lexicographically, padding the
    /// shorter board with zero columns on the left.
    pub fn compare_reversal_lex(&self, other: &FerrersBoard) -> Ordering {
        let n = self.num_columns().max(other.num_columns());
        let a = self.heights.iter().rev().chain(std::iter::repeat(&0)).take(n);
        let b = other.heights.iter().rev().chain(std::iter::repeat(&0)).take(n);
        a.cmp(b)
    }

    /// Right-align both boards; every column of `self` is at most the
    /// matching column of `other`.
    pub fn fits_inside(&self, other: &FerrersBoard) -> bool {
        let n = self.num_columns().max(other.num_columns());
        let a = self.heights.iter().rev().chain(std::iter::repeat(&0)).take(n);
        let mut b = other.heights.iter().rev().chain(std::iter::repeat(&0));
        a.zip(&mut b).all(|(x, y)| x <= y)
    }

    /// Root vector `(k*m - b_k)` for `k = 0..N-1`, in column order, after
    /// left-padding to `N` columns.
    pub fn root_vector(&self, m: usize, n: usize) -> Result<Vec<usize>> {
        let padded = self.padded_to(n)?;
        padded
            .heights
            .iter()
            .enumerate()
            .map(|(k, &b)| (k * m).checked_sub(b).ok_or(RookError::DoesNotFit))
            .collect()
    }

    /// The unique m-increasing board rook-equivalent to this one, together
    /// with the script of normal-form steps that reaches it.
    ///
    /// Steps: one `ToSingleton`, then local l-operations. Each local step
    /// scans levels from the top down and columns left to right for the
    /// first `(i, p)` with `arm(i,p) < leg(i,p)`, then applies `l_{i',p}` for
    /// the largest such `i' >= i`. Leading zero columns are dropped from
    /// every intermediate board.
    pub fn m_increasing_representative(&self, m: usize) -> Result<(FerrersBoard, FsScript)> {
        if self.leading_zeros() == 0 && self.is_m_increasing(m) {
            return Ok((self.clone(), FsScript::default()));
        }
        let mut steps = Vec::new();
        let mut current = self.singleton_of(m).strip_leading_zeros();
        steps.push(FsStep {
            kind: StepKind::ToSingleton,
            direction: Direction::Forward,
            source: self.clone(),
            target: current.clone(),
        });
        // Each step strictly increases the board in reversal-lex order inside
        // a finite class; the cap only guards against defects.
        let cap = (self.cell_count() + 1).pow(3) + 16;
        while !current.is_m_increasing(m) {
            if steps.len() > cap {
                return Err(RookError::InternalNonTermination);
            }
            let (i, p) = current.increasing_move(m).ok_or(RookError::InternalNonTermination)?;
            if !current.is_permissible(m, i, p)? {
                return Err(RookError::InternalNonTermination);
            }
            let next = current.local_l_unchecked(m, i, p).board.strip_leading_zeros();
            if next.compare_reversal_lex(&current) != Ordering::Greater {
                return Err(RookError::InternalNonTermination);
            }
            steps.push(FsStep {
                kind: StepKind::LocalL { i, p },
                direction: Direction::Forward,
                source: current,
                target: next.clone(),
            });
            current = next;
        }
        Ok((current, FsScript { steps }))
    }

    /// The `(i', p)` that the representative search applies next.
    fn increasing_move(&self, m: usize) -> Option<(usize, usize)> {
        let n = self.num_columns();
        let violates = |i: usize, p: usize| self.arm(m, i, p) < self.leg(m, i, p);
        for p in (1..=self.num_levels(m)).rev() {
            if let Some(i) = (1..=n).find(|&i| violates(i, p)) {
                let best = (i..=n).rev().find(|&j| violates(j, p)).unwrap_or(i);
                return Some((best, p));
            }
        }
        None
    }

    /// Level and in-level number of `cell` under the level numbering: each
    /// level is numbered from 1, rightmost column first, bottom to top.
    pub fn level_number(&self, cell: Cell, m: usize) -> Option<(usize, usize)> {
        if !self.contains(cell) {
            return None;
        }
        let p = cell.level(m);
        let right: usize = (cell.column + 1..=self.num_columns())
            .map(|x| self.cells_in_level(x, p, m))
            .sum();
        Some((p, right + cell.row - (p - 1) * m))
    }

    /// Inverse of [`FerrersBoard::level_number`].
    pub fn cell_with_level_number(&self, p: usize, number: usize, m: usize) -> Option<Cell> {
        if p == 0 || number == 0 {
            return None;
        }
        let mut remaining = number;
        for x in (1..=self.num_columns()).rev() {
            let c = self.cells_in_level(x, p, m);
            if c == 0 {
                break;
            }
            if remaining <= c {
                return Some(Cell::new(x, (p - 1) * m + remaining));
            }
            remaining -= c;
        }
        None
    }

    /// ASCII picture, top row first. `R` marks a rook, `.` a free cell;
    /// dashes separate levels.
    pub fn render(&self, m: usize, rooks: &[Cell]) -> String {
        let mut out = String::new();
        let n = self.num_columns();
        for row in (1..=self.max_height()).rev() {
            for col in 1..=n {
                let cell = Cell::new(col, row);
                let ch = if rooks.contains(&cell) {
                    'R'
                } else if self.contains(cell) {
                    '.'
                } else {
                    ' '
                };
                out.push(ch);
                if col < n {
                    out.push(' ');
                }
            }
            out.truncate(out.trim_end_matches(' ').len());
            out.push('\n');
            if row > 1 && (row - 1) % m == 0 {
                out.push_str(&"-".repeat(2 * n - 1));
                out.push('\n');
            }
        }
        out
    }
}

/// Result of a local l-operation before validation, with the pieces the
/// placement bijection needs.
pub(crate) struct LocalLGeometry {
    pub board: FerrersBoard,
    pub sub: FerrersBoard,
    pub image: FerrersBoard,
    /// Columns added on the left (only possible for `p = 1`).
    pub growth: usize,
}

/// Validates signed input: non-negative and weakly increasing.
pub fn make_board(heights: &[i64]) -> Result<FerrersBoard> {
    let mut out = Vec::with_capacity(heights.len());
    for (index, &h) in heights.iter().enumerate() {
        out.push(usize::try_from(h).map_err(|_| RookError::Negative { index })?);
    }
    FerrersBoard::new(out)
}

/// The triangular board `(0, m, 2m, ..., (n-1)m)`.
pub fn delta(n: usize, m: usize) -> FerrersBoard {
    FerrersBoard {
        heights: (0..n).map(|k| k * m).collect(),
    }
}

/// The square board of `n` columns, each of height `n*m`.
pub fn square(n: usize, m: usize) -> FerrersBoard {
    FerrersBoard {
        heights: vec![n * m; n],
    }
}

/// Multiset equality of two root vectors.
pub fn same_root_multiset(a: &[usize], b: &[usize]) -> bool {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Every board without zero columns having at most `max_cells` cells,
/// including the empty board. Ordered by cell count, then by heights.
pub fn boards_up_to(max_cells: usize) -> Vec<FerrersBoard> {
    fn partitions(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.iter().rev().copied().collect());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            partitions(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=max_cells {
        let mut these = Vec::new();
        partitions(total, total, &mut Vec::new(), &mut these);
        these.sort();
        out.extend(these.into_iter().map(|heights| FerrersBoard { heights }));
    }
    out
}

/// Every board of exactly `n` columns (zeros allowed) with column `i` at most `cap(i)`.
fn bounded_boards(n: usize, cap: impl Fn(usize) -> usize) -> Vec<FerrersBoard> {
    fn extend(n: usize, cap: &dyn Fn(usize) -> usize, prefix: &mut Vec<usize>, out: &mut Vec<FerrersBoard>) {
        if prefix.len() == n {
            out.push(FerrersBoard {
                heights: prefix.clone(),
            });
            return;
        }
        let low = prefix.last().copied().unwrap_or(0);
        for h in low..=cap(prefix.len() + 1) {
            prefix.push(h);
            extend(n, cap, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, &cap, &mut Vec::new(), &mut out);
    out
}

/// Every `n`-column board (zeros allowed) fitting inside `delta(n, m)`.
pub fn boards_in_delta(n: usize, m: usize) -> Vec<FerrersBoard> {
    bounded_boards(n, |i| (i - 1) * m)
}

/// Every `n`-column board (zeros allowed) fitting inside `square(n, m)`.
pub fn boards_in_square(n: usize, m: usize) -> Vec<FerrersBoard> {
    bounded_boards(n, |_| n * m)
}

impl TryFrom<Vec<i64>> for FerrersBoard {
    type Error = RookError;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        make_board(&v)
    }
}

impl From<FerrersBoard> for Vec<usize> {
    fn from(b: FerrersBoard) -> Self {
        b.heights
    }
}

impl fmt::Display for FerrersBoard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.heights.iter().map(|h| h.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for FerrersBoard {
    type Err = RookError;

    /// Accepts `1,3,3,4`, `(1,3,3,4)`, `[1,3,3,4]` and the empty list.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        if inner.is_empty() {
            return Ok(FerrersBoard::empty());
        }
        let heights = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| RookError::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        make_board(&heights)
    }
}
