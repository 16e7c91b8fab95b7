//! Explicit bijections between placements on m-level rook equivalent boards.
//!
//! Three elementary maps are composed along a script of board moves:
//! a board to its singleton board, the l-operator, and the local
//! l-operator. All of them preserve `inv_m`.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::board::{Cell, FerrersBoard};
use crate::error::{Result, RookError};
use crate::placement::{validate_placement, Placement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flipped(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    ToSingleton,
    LocalL { i: usize, p: usize },
}

/// One board move. `source` and `target` follow the direction of travel:
/// a backward step undoes the forward move from `target` to `source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsStep {
    pub kind: StepKind,
    pub direction: Direction,
    pub source: FerrersBoard,
    pub target: FerrersBoard,
}

impl FsStep {
    pub fn reversed(&self) -> FsStep {
        FsStep {
            kind: self.kind,
            direction: self.direction.flipped(),
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// Board on which the forward move starts.
    fn forward_source(&self) -> &FerrersBoard {
        match self.direction {
            Direction::Forward => &self.source,
            Direction::Backward => &self.target,
        }
    }

    fn forward_target(&self) -> &FerrersBoard {
        match self.direction {
            Direction::Forward => &self.target,
            Direction::Backward => &self.source,
        }
    }

    /// Carry a placement on `source` to one on `target`.
    pub fn apply(&self, m: usize, cells: &[Cell]) -> Result<Vec<Cell>> {
        let (from, to) = (self.forward_source(), self.forward_target());
        match (self.kind, self.direction) {
            (StepKind::ToSingleton, Direction::Forward) => Ok(transfer_by_level_numbers(from, to, m, cells)),
            (StepKind::ToSingleton, Direction::Backward) => Ok(transfer_by_level_numbers(to, from, m, cells)),
            (StepKind::LocalL { i, p }, Direction::Forward) => {
                let image = local_l_cells(from, m, i, p, cells, Direction::Forward)?;
                let shift = image_leading_zeros(from, m, i, p);
                Ok(image.into_iter().map(|c| Cell::new(c.column - shift, c.row)).collect())
            }
            (StepKind::LocalL { i, p }, Direction::Backward) => {
                let shift = image_leading_zeros(from, m, i, p);
                let unstripped: Vec<Cell> = cells.iter().map(|c| Cell::new(c.column + shift, c.row)).collect();
                local_l_cells(from, m, i, p, &unstripped, Direction::Backward)
            }
        }
    }
}

fn image_leading_zeros(board: &FerrersBoard, m: usize, i: usize, p: usize) -> usize {
    board.local_l_unchecked(m, i, p).board.leading_zeros()
}

impl Serialize for FsStep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = if matches!(self.kind, StepKind::LocalL { .. }) {
            6
        } else {
            4
        };
        let mut s = serializer.serialize_struct("FsStep", fields)?;
        match self.kind {
            StepKind::ToSingleton => s.serialize_field("kind", "to_singleton")?,
            StepKind::LocalL { i, p } => {
                s.serialize_field("kind", "local_l")?;
                s.serialize_field("i", &i)?;
                s.serialize_field("p", &p)?;
            }
        }
        s.serialize_field("direction", &self.direction)?;
        s.serialize_field("source", &self.source)?;
        s.serialize_field("target", &self.target)?;
        s.end()
    }
}

impl std::fmt::Display for FsStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.kind {
            StepKind::ToSingleton => "to-singleton".to_string(),
            StepKind::LocalL { i, p } => format!("l_{{{i},{p}}}"),
        };
        let arrow = match self.direction {
            Direction::Forward => "",
            Direction::Backward => " (inverse)",
        };
        write!(f, "{name}{arrow}: ({}) -> ({})", self.source, self.target)
    }
}

/// An ordered list of board moves. Serializes as the list of steps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FsScript {
    pub steps: Vec<FsStep>,
}

impl FsScript {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The script that undoes this one.
    pub fn reversed(&self) -> FsScript {
        FsScript {
            steps: self.steps.iter().rev().map(FsStep::reversed).collect(),
        }
    }

    /// Apply every step in order. Intermediate placements are validated in
    /// debug builds.
    pub fn apply(&self, m: usize, cells: &[Cell]) -> Result<Vec<Cell>> {
        let mut current = cells.to_vec();
        for step in &self.steps {
            current = step.apply(m, &current)?;
            debug_assert!(
                validate_placement(&step.target, m, &current).is_ok(),
                "step {step} produced an invalid placement {current:?}"
            );
        }
        current.sort();
        Ok(current)
    }
}

/// Map placements between two boards with the same level counts.
///
/// Levels are processed from the top down. A rook numbered `n` in its level
/// with `e` higher-level rooks in columns to its right is the
/// `(n - m*e)`-th cell of its level once columns holding higher-level rooks
/// are skipped; it goes to the cell with the same index on `to`.
fn transfer_by_level_numbers(from: &FerrersBoard, to: &FerrersBoard, m: usize, cells: &[Cell]) -> Vec<Cell> {
    let mut by_level: Vec<&Cell> = cells.iter().collect();
    by_level.sort_by_key(|c| std::cmp::Reverse(c.level(m)));
    let mut placed_from: Vec<Cell> = Vec::with_capacity(cells.len());
    let mut placed_to: Vec<Cell> = Vec::with_capacity(cells.len());
    for &rook in by_level {
        let (p, number) = from.level_number(rook, m).expect("rook lies on the source board");
        let east = placed_from.iter().filter(|c| c.column > rook.column).count();
        let mut index = number - m * east;
        let mut found = None;
        for x in (1..=to.num_columns()).rev() {
            let available = to.cells_in_level(x, p, m);
            if available == 0 {
                break;
            }
            if placed_to.iter().any(|c| c.column == x) {
                continue;
            }
            if index <= available {
                found = Some(Cell::new(x, (p - 1) * m + index));
                break;
            }
            index -= available;
        }
        placed_from.push(rook);
        placed_to.push(found.expect("level counts agree"));
    }
    placed_to.sort();
    placed_to
}

fn check_input(board: &FerrersBoard, m: usize, cells: &[Cell]) -> Result<()> {
    validate_placement(board, m, cells).map(|_| ())
}

/// Placements on `B` to placements on its singleton board and back.
pub fn map_to_singleton(board: &FerrersBoard, m: usize, cells: &[Cell], direction: Direction) -> Result<Placement> {
    let singleton = board.singleton_of(m);
    let (from, to) = match direction {
        Direction::Forward => (board, &singleton),
        Direction::Backward => (&singleton, board),
    };
    check_input(from, m, cells)?;
    validate_placement(to, m, &transfer_by_level_numbers(from, to, m, cells))
}

/// The l-operator on placements: the rook numbered `n` in level `p` goes to
/// row `n` of column `t - p + 1` of `l(B)`.
pub fn map_l(board: &FerrersBoard, m: usize, cells: &[Cell], direction: Direction) -> Result<Placement> {
    if !board.is_singleton(m) {
        return Err(RookError::NotSingleton);
    }
    let image = board.l_operator(m);
    match direction {
        Direction::Forward => {
            check_input(board, m, cells)?;
            validate_placement(&image, m, &l_forward(board, m, cells))
        }
        Direction::Backward => {
            check_input(&image, m, cells)?;
            validate_placement(board, m, &l_backward(board, m, cells))
        }
    }
}

fn l_forward(board: &FerrersBoard, m: usize, cells: &[Cell]) -> Vec<Cell> {
    let t = board.num_levels(m);
    cells
        .iter()
        .map(|&c| {
            let (p, n) = board.level_number(c, m).expect("rook lies on the board");
            Cell::new(t - p + 1, n)
        })
        .collect()
}

fn l_backward(board: &FerrersBoard, m: usize, cells: &[Cell]) -> Vec<Cell> {
    let t = board.num_levels(m);
    cells
        .iter()
        .map(|&c| {
            board
                .cell_with_level_number(t + 1 - c.column, c.row, m)
                .expect("rook lies on the image board")
        })
        .collect()
}

/// Order-preserving pairing of two equally long ascending index lists.
fn pair_ascending(from: &[usize], to: &[usize], x: usize) -> usize {
    let k = from.iter().position(|&v| v == x).expect("index in the free set");
    to[k]
}

/// The local l-operator on placements. `board` is always the board before
/// the move; the backward direction takes a placement on `l_{i,p}(board)`
/// (including any columns added on the left) back to `board`.
pub fn map_local_l(
    board: &FerrersBoard,
    m: usize,
    i: usize,
    p: usize,
    cells: &[Cell],
    direction: Direction,
) -> Result<Placement> {
    let target = board.local_l(m, i, p)?;
    let (from, to) = match direction {
        Direction::Forward => (board, &target),
        Direction::Backward => (&target, board),
    };
    check_input(from, m, cells)?;
    validate_placement(to, m, &local_l_cells(board, m, i, p, cells, direction)?)
}

fn local_l_cells(
    board: &FerrersBoard,
    m: usize,
    i: usize,
    p: usize,
    cells: &[Cell],
    direction: Direction,
) -> Result<Vec<Cell>> {
    let geo = board.local_l_unchecked(m, i, p);
    let base = (p - 1) * m;
    let width = geo.image.num_columns();
    let edge = i + geo.growth;
    // Subboard columns on each side, and the offset of the image's first column.
    let old_cols: Vec<usize> = (1..=i).collect();
    let new_cols: Vec<usize> = (1..=edge).collect();
    let image_offset = edge - width;
    let t = board.num_levels(m).max(geo.board.num_levels(m));

    let src_edge = match direction {
        Direction::Forward => i,
        Direction::Backward => edge,
    };
    let in_sub = |c: &Cell| c.column <= src_edge && c.level(m) >= p;
    let sub_rooks: Vec<Cell> = cells.iter().filter(|c| in_sub(c)).copied().collect();

    // Subboard rooks in local coordinates of B_{i,p} and of its image.
    let (old_sub, new_sub): (Vec<Cell>, Vec<Cell>) = match direction {
        Direction::Forward => {
            let local: Vec<Cell> = sub_rooks.iter().map(|c| Cell::new(c.column, c.row - base)).collect();
            let imaged = l_forward(&geo.sub, m, &local);
            (local, imaged)
        }
        Direction::Backward => {
            let imaged: Vec<Cell> = sub_rooks
                .iter()
                .map(|c| Cell::new(c.column - image_offset, c.row - base))
                .collect();
            let local = l_backward(&geo.sub, m, &imaged);
            (local, imaged)
        }
    };

    let free =
        |cols: &[usize], used: &[usize]| -> Vec<usize> { cols.iter().copied().filter(|x| !used.contains(x)).collect() };
    let old_used_cols: Vec<usize> = old_sub.iter().map(|c| c.column).collect();
    let new_used_cols: Vec<usize> = new_sub.iter().map(|c| c.column + image_offset).collect();
    let old_free_cols = free(&old_cols, &old_used_cols);
    let new_free_cols = free(&new_cols, &new_used_cols);

    let levels: Vec<usize> = (p..=t).collect();
    let old_used_levels: Vec<usize> = old_sub.iter().map(|c| c.level(m) + p - 1).collect();
    let new_used_levels: Vec<usize> = new_sub.iter().map(|c| c.level(m) + p - 1).collect();
    let old_free_levels = free(&levels, &old_used_levels);
    let new_free_levels = free(&levels, &new_used_levels);

    let (from_cols, to_cols, from_levels, to_levels) = match direction {
        Direction::Forward => (&old_free_cols, &new_free_cols, &old_free_levels, &new_free_levels),
        Direction::Backward => (&new_free_cols, &old_free_cols, &new_free_levels, &old_free_levels),
    };
    let (to_shift, from_shift) = match direction {
        Direction::Forward => (geo.growth, 0),
        Direction::Backward => (0, geo.growth),
    };

    let mut out = Vec::with_capacity(cells.len());
    match direction {
        Direction::Forward => out.extend(new_sub.iter().map(|c| Cell::new(c.column + image_offset, c.row + base))),
        Direction::Backward => out.extend(old_sub.iter().map(|c| Cell::new(c.column, c.row + base))),
    }
    for &c in cells.iter().filter(|c| !in_sub(c)) {
        let level = c.level(m);
        if c.column <= src_edge {
            // Below the subboard: move to the paired free column.
            out.push(Cell::new(pair_ascending(from_cols, to_cols, c.column), c.row));
        } else {
            let column = c.column + to_shift - from_shift;
            if level < p {
                out.push(Cell::new(column, c.row));
            } else {
                let new_level = pair_ascending(from_levels, to_levels, level);
                let offset = c.row - (level - 1) * m;
                out.push(Cell::new(column, (new_level - 1) * m + offset));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Script carrying placements on `a` to placements on `b`: the forward
/// normal-form script of `a` followed by the reversed script of `b`.
pub fn equivalence_script(a: &FerrersBoard, b: &FerrersBoard, m: usize) -> Result<FsScript> {
    if a == b {
        return Ok(FsScript::default());
    }
    let (rep_a, script_a) = a.m_increasing_representative(m)?;
    let (rep_b, script_b) = b.m_increasing_representative(m)?;
    if rep_a != rep_b {
        return Err(RookError::NotEquivalent {
            left: rep_a,
            right: rep_b,
        });
    }
    let mut steps = script_a.steps;
    steps.extend(script_b.reversed().steps);
    Ok(FsScript { steps })
}

/// Carry a placement on `from` to the corresponding placement on `to`.
pub fn transport(from: &FerrersBoard, to: &FerrersBoard, m: usize, cells: &[Cell]) -> Result<Placement> {
    let script = equivalence_script(from, to, m)?;
    transport_with_script(&script, from, to, m, cells)
}

/// [`transport`] with a precomputed script, for repeated use.
pub fn transport_with_script(
    script: &FsScript,
    from: &FerrersBoard,
    to: &FerrersBoard,
    m: usize,
    cells: &[Cell],
) -> Result<Placement> {
    check_input(from, m, cells)?;
    validate_placement(to, m, &script.apply(m, cells)?)
}
