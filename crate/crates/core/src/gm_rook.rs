//! A Garsia–Milne bijection between placements on equivalent singleton boards.
//!
//! A board `B` is embedded at the right of the triangle `Delta_{N,m}`. A
//! configuration has `i` white rooks in distinct columns of `Delta \ B` and
//! `k - i` black rooks forming a placement on the inset triangle: the
//! columns without a white rook, the `j`-th of which has height `(j-1)m`.
//! Its sign is `(-1)^i`. The fixed points of the involution are exactly the
//! k-rook placements on `B`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::board::{delta, same_root_multiset, Cell, FerrersBoard};
use crate::error::{Result, RookError};
use crate::gm_engine::{gm_transport, GmOptions, Sign, SignedBijection, SignedSet, TransportTrace};
use crate::placement::{self, validate_placement, Placement};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RookConfig {
    #[serde(rename = "N")]
    pub n: usize,
    pub m: usize,
    /// The board, left-padded to `N` columns.
    pub board: FerrersBoard,
    pub whites: Vec<Cell>,
    pub blacks: Vec<Cell>,
}

impl RookConfig {
    pub fn k(&self) -> usize {
        self.whites.len() + self.blacks.len()
    }

    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.whites.len() % 2 == 1)
    }

    /// Columns without a white rook, ascending.
    pub fn inset_columns(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|c| !self.whites.iter().any(|w| w.column == *c))
            .collect()
    }

    /// Black rooks in inset coordinates: (ordinal among inset columns, row).
    pub fn inset_blacks(&self) -> Vec<Cell> {
        let cols = self.inset_columns();
        self.blacks
            .iter()
            .map(|b| {
                Cell::new(
                    cols.iter()
                        .position(|&c| c == b.column)
                        .expect("black in an inset column")
                        + 1,
                    b.row,
                )
            })
            .collect()
    }

    /// Check every defining condition of a configuration.
    pub fn is_valid(&self) -> bool {
        let outside = |c: &Cell| c.row > self.board.height(c.column) && c.row <= (c.column - 1) * self.m;
        let mut cols: Vec<usize> = self.whites.iter().chain(&self.blacks).map(|c| c.column).collect();
        cols.sort_unstable();
        let distinct = cols.windows(2).all(|w| w[0] != w[1]);
        let inset = delta(self.n - self.whites.len(), self.m);
        distinct
            && self
                .whites
                .iter()
                .all(|w| w.column >= 1 && w.column <= self.n && outside(w))
            && validate_placement(&inset, self.m, &self.inset_blacks()).is_ok()
    }

    fn normalized(mut self) -> Self {
        self.whites.sort();
        self.blacks.sort();
        self
    }

    pub fn render(&self) -> String {
        let ambient = delta(self.n, self.m);
        let mut out = String::new();
        for row in (1..=ambient.max_height()).rev() {
            let line: Vec<char> = (1..=self.n)
                .map(|col| {
                    let cell = Cell::new(col, row);
                    if self.whites.contains(&cell) {
                        'W'
                    } else if self.blacks.contains(&cell) {
                        'R'
                    } else if row <= self.board.height(col) {
                        '#'
                    } else if row <= ambient.height(col) {
                        '.'
                    } else {
                        ' '
                    }
                })
                .collect();
            let text: String = line.iter().flat_map(|c| [*c, ' ']).collect();
            out.push_str(text.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Strip, pad to `N` columns and check the board is a singleton inside `Delta_{N,m}`.
pub fn embed_in_triangle(board: &FerrersBoard, m: usize, n: usize) -> Result<FerrersBoard> {
    if !board.is_singleton(m) {
        return Err(RookError::NotSingleton);
    }
    let padded = board.strip_leading_zeros().padded_to(n)?;
    if !padded.fits_inside(&delta(n, m)) {
        return Err(RookError::DoesNotFit);
    }
    Ok(padded)
}

/// Every configuration for `(B, m, N, k)`: by number of whites, then by white
/// cells, then by black cells.
pub fn enumerate_configs(board: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<Vec<RookConfig>> {
    if k >= n {
        return Err(RookError::BudgetTooLarge { k, n });
    }
    let board = embed_in_triangle(board, m, n)?;
    let mut out = Vec::new();
    for i in 0..=k {
        let mut whites = Vec::new();
        for_each_white_set(&board, m, n, i, 1, &mut whites, &mut |whites| {
            let cols: Vec<usize> = (1..=n).filter(|c| !whites.iter().any(|w| w.column == *c)).collect();
            placement::for_each_placement(&delta(n - i, m), m, k - i, |inset| {
                out.push(RookConfig {
                    n,
                    m,
                    board: board.clone(),
                    whites: whites.to_vec(),
                    blacks: inset.iter().map(|c| Cell::new(cols[c.column - 1], c.row)).collect(),
                });
            });
        });
    }
    Ok(out)
}

fn for_each_white_set(
    board: &FerrersBoard,
    m: usize,
    n: usize,
    remaining: usize,
    start: usize,
    current: &mut Vec<Cell>,
    visit: &mut dyn FnMut(&[Cell]),
) {
    if remaining == 0 {
        visit(current);
        return;
    }
    for col in start..=n {
        for row in board.height(col) + 1..=(col - 1) * m {
            current.push(Cell::new(col, row));
            for_each_white_set(board, m, n, remaining - 1, col + 1, current, visit);
            current.pop();
        }
    }
}

/// The sign-reversing involution. Fixed points: every rook is black and in `B`.
pub fn involution_i(c: &RookConfig) -> RookConfig {
    let m = c.m;
    let outside = c
        .whites
        .iter()
        .map(|w| (*w, true))
        .chain(c.blacks.iter().map(|b| (*b, false)))
        .filter(|(cell, _)| cell.row > c.board.height(cell.column))
        .min_by_key(|(cell, _)| cell.column);
    let Some((rook, is_white)) = outside else {
        return c.clone();
    };
    let level = rook.level(m);
    let mut next = c.clone();
    if is_white {
        next.whites.retain(|w| *w != rook);
        for b in &mut next.blacks {
            if b.column > rook.column && b.level(m) >= level {
                b.row += m;
            }
        }
        next.blacks.push(rook);
    } else {
        next.blacks.retain(|b| *b != rook);
        for b in &mut next.blacks {
            if b.column > rook.column && b.level(m) > level {
                b.row -= m;
            }
        }
        next.whites.push(rook);
    }
    next.normalized()
}

/// Inversions of the black rooks on the inset triangle plus the cells of
/// `Delta_{N,m}` above each white rook.
pub fn ainv(c: &RookConfig) -> usize {
    let inset = delta(c.n - c.whites.len(), c.m);
    let above: usize = c.whites.iter().map(|w| (w.column - 1) * c.m - w.row).sum();
    placement::inv(&inset, c.m, &c.inset_blacks()) + above
}

/// Pair the columns of two embedded boards with equal numbers of cells
/// outside the board, leftmost first. Returns `pairing[x-1]`, the partner of column `x`.
fn column_pairing(from: &FerrersBoard, to: &FerrersBoard, m: usize) -> Vec<usize> {
    let n = from.num_columns();
    let outside = |b: &FerrersBoard, x: usize| (x - 1) * m - b.height(x);
    let mut used = vec![false; n + 1];
    (1..=n)
        .map(|x| {
            let len = outside(from, x);
            let y = (1..=n)
                .find(|&y| !used[y] && outside(to, y) == len)
                .expect("root vectors agree");
            used[y] = true;
            y
        })
        .collect()
}

/// The sign-preserving bijection between configurations on equivalent boards:
/// a white rook keeps its height above the board and moves to the paired
/// column; black rooks keep their inset column ordinal and row.
pub fn transfer_f(c: &RookConfig, target: &FerrersBoard) -> Result<RookConfig> {
    let target = embed_in_triangle(target, c.m, c.n)?;
    check_roots(&c.board, &target, c.m, c.n)?;
    Ok(transfer_unchecked(c, &target, &column_pairing(&c.board, &target, c.m)))
}

fn check_roots(a: &FerrersBoard, b: &FerrersBoard, m: usize, n: usize) -> Result<()> {
    if !same_root_multiset(&a.root_vector(m, n)?, &b.root_vector(m, n)?) {
        return Err(RookError::NotEquivalent {
            left: a.clone(),
            right: b.clone(),
        });
    }
    Ok(())
}

fn transfer_unchecked(c: &RookConfig, target: &FerrersBoard, pairing: &[usize]) -> RookConfig {
    let whites: Vec<Cell> = c
        .whites
        .iter()
        .map(|w| {
            let y = pairing[w.column - 1];
            Cell::new(y, target.height(y) + w.row - c.board.height(w.column))
        })
        .collect();
    let mut next = RookConfig {
        n: c.n,
        m: c.m,
        board: target.clone(),
        whites,
        blacks: Vec::new(),
    };
    let cols = next.inset_columns();
    next.blacks = c
        .inset_blacks()
        .iter()
        .map(|b| Cell::new(cols[b.column - 1], b.row))
        .collect();
    next.normalized()
}

/// Stirling number of the second kind.
pub fn stirling2(n: usize, d: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        let mut next = vec![BigUint::zero(); i + 1];
        for j in 1..=i {
            let stay = if j < i { &row[j] * j } else { BigUint::zero() };
            next[j] = stay + &row[j - 1];
        }
        row = next;
    }
    row.get(d).cloned().unwrap_or_default()
}

/// The `d`-th elementary symmetric function of `values`.
pub fn elementary_symmetric(d: usize, values: &[i64]) -> Result<BigInt> {
    if d > values.len() {
        return Err(RookError::DegreeTooLarge {
            degree: d,
            len: values.len(),
        });
    }
    let mut e = vec![BigInt::zero(); d + 1];
    e[0] = BigInt::one();
    for &v in values {
        for j in (1..=d).rev() {
            let add = &e[j - 1] * v;
            e[j] += add;
        }
    }
    Ok(e.swap_remove(d))
}

fn root_values(board: &FerrersBoard, m: usize, n: usize) -> Result<Vec<i64>> {
    Ok(embed_in_triangle(board, m, n)?
        .root_vector(m, n)?
        .into_iter()
        .map(|v| v as i64)
        .collect())
}

/// `sum_i (-1)^i m^(k-i) S(N-i, N-k) e_i(root vector)`.
pub fn rook_count_formula(board: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<BigInt> {
    if k >= n {
        return Err(RookError::BudgetTooLarge { k, n });
    }
    let zeta = root_values(board, m, n)?;
    let mut total = BigInt::zero();
    for i in 0..=k {
        let term = BigInt::from(BigUint::from(m).pow((k - i) as u32) * stirling2(n - i, n - k))
            * elementary_symmetric(i, &zeta)?;
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Number of configurations: the same sum without signs.
pub fn config_count(board: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<BigUint> {
    if k >= n {
        return Err(RookError::BudgetTooLarge { k, n });
    }
    let zeta = root_values(board, m, n)?;
    let mut total = BigInt::zero();
    for i in 0..=k {
        total += BigInt::from(BigUint::from(m).pow((k - i) as u32) * stirling2(n - i, n - k))
            * elementary_symmetric(i, &zeta)?;
    }
    Ok(total.abs().to_biguint().unwrap_or_default())
}

/// The signed set of configurations for one board.
pub struct RookSpace {
    pub board: FerrersBoard,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    size: usize,
}

impl RookSpace {
    pub fn new(board: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<Self> {
        let size = config_count(board, m, n, k)?.to_usize().unwrap_or(usize::MAX / 2);
        Ok(RookSpace {
            board: embed_in_triangle(board, m, n)?,
            m,
            n,
            k,
            size,
        })
    }

    /// The fixed point for a placement given in the padded board's columns.
    pub fn fixed_point(&self, cells: &[Cell]) -> RookConfig {
        RookConfig {
            n: self.n,
            m: self.m,
            board: self.board.clone(),
            whites: Vec::new(),
            blacks: cells.to_vec(),
        }
        .normalized()
    }
}

impl SignedSet for RookSpace {
    type Element = RookConfig;

    fn sign(&self, e: &RookConfig) -> Sign {
        e.sign()
    }

    fn involution(&self, e: &RookConfig) -> RookConfig {
        involution_i(e)
    }

    fn cardinality(&self) -> usize {
        self.size
    }
}

struct Transfer {
    forward: Vec<usize>,
    backward: Vec<usize>,
    from: FerrersBoard,
    to: FerrersBoard,
}

impl SignedBijection<RookSpace, RookSpace> for Transfer {
    fn forward(&self, s: &RookConfig) -> Result<RookConfig> {
        Ok(transfer_unchecked(s, &self.to, &self.forward))
    }

    fn backward(&self, t: &RookConfig) -> Result<RookConfig> {
        Ok(transfer_unchecked(t, &self.from, &self.backward))
    }
}

/// Transport of k-rook placements between two equivalent singleton boards,
/// reusable across placements.
pub struct GmRookTransport {
    source: RookSpace,
    target: RookSpace,
    transfer: Transfer,
    from_columns: usize,
    to_columns: usize,
}

impl GmRookTransport {
    pub fn new(from: &FerrersBoard, to: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<Self> {
        let source = RookSpace::new(from, m, n, k)?;
        let target = RookSpace::new(to, m, n, k)?;
        check_roots(&source.board, &target.board, m, n)?;
        let transfer = Transfer {
            forward: column_pairing(&source.board, &target.board, m),
            backward: column_pairing(&target.board, &source.board, m),
            from: source.board.clone(),
            to: target.board.clone(),
        };
        Ok(GmRookTransport {
            source,
            target,
            transfer,
            from_columns: from.num_columns(),
            to_columns: to.num_columns(),
        })
    }

    pub fn source(&self) -> &RookSpace {
        &self.source
    }

    pub fn target(&self) -> &RookSpace {
        &self.target
    }

    /// Carry a placement on the original `from` board (its own columns) to the
    /// `to` board (its own columns).
    pub fn transport(
        &self,
        cells: &[Cell],
        options: GmOptions,
    ) -> Result<(Vec<Cell>, TransportTrace<RookConfig, RookConfig>)> {
        if cells.len() != self.source.k {
            return Err(RookError::WrongRookCount {
                expected: self.source.k,
                found: cells.len(),
            });
        }
        let n = self.source.n as isize;
        let shift_in = n - self.from_columns as isize;
        let shift_out = n - self.to_columns as isize;
        let embedded: Vec<Cell> = cells
            .iter()
            .map(|c| Cell::new((c.column as isize + shift_in) as usize, c.row))
            .collect();
        let start = self.source.fixed_point(&embedded);
        let (end, trace) = gm_transport(&self.source, &self.target, &self.transfer, &start, options)?;
        let out = end
            .blacks
            .iter()
            .map(|c| Cell::new((c.column as isize - shift_out) as usize, c.row))
            .collect();
        Ok((out, trace))
    }
}

/// The Garsia–Milne image of a k-rook placement on `from` as a placement on `to`.
pub fn gm_rook_transport(
    from: &FerrersBoard,
    to: &FerrersBoard,
    m: usize,
    n: usize,
    cells: &[Cell],
) -> Result<Placement> {
    validate_placement(from, m, cells)?;
    let engine = GmRookTransport::new(from, to, m, n, cells.len())?;
    let (out, _) = engine.transport(cells, GmOptions::default())?;
    validate_placement(to, m, &out)
}
