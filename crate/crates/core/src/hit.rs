//! Hit numbers over the wreath product `C_m wr S_N`.
//!
//! An element `(s; sigma)` is drawn on the rectangle `Sq_{N,m}` (`N` columns,
//! `N*m` rows) as one rook per column and per level: column `i` gets a rook
//! in level `N + 1 - sigma(i)`, `s_i` cells above the bottom of that level.
//! The k-th hit number of a board counts elements with exactly `k` rooks on
//! the board.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::board::{square, Cell, FerrersBoard};
use crate::error::{Result, RookError};
use crate::fs_bijection::{equivalence_script, transport_with_script, FsScript};
use crate::gm_engine::{gm_transport, GmOptions, Sign, SignedBijection, SignedSet, TransportTrace};
use crate::placement;
use crate::poly::QPolynomial;

/// `(alpha^{s_1}, ..., alpha^{s_N}; sigma)` with `sigma` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WreathElement {
    pub s: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl WreathElement {
    pub fn new(s: Vec<usize>, sigma: Vec<usize>, m: usize) -> Result<Self> {
        let w = WreathElement { s, sigma };
        w.validate(m)?;
        Ok(w)
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        let n = self.sigma.len();
        if self.s.len() != n {
            return Err(RookError::InvalidWreath(format!(
                "{} colours for {} positions",
                self.s.len(),
                n
            )));
        }
        if let Some(&bad) = self.s.iter().find(|&&v| v == 0 || v > m) {
            return Err(RookError::InvalidWreath(format!("colour {bad} outside 1..={m}")));
        }
        let mut seen = vec![false; n + 1];
        for &v in &self.sigma {
            if v == 0 || v > n || seen[v] {
                return Err(RookError::InvalidWreath(format!(
                    "{:?} is not a permutation",
                    self.sigma
                )));
            }
            seen[v] = true;
        }
        Ok(())
    }
}

/// `N` rooks on `Sq_{N,m}`, one per column and per level; `rooks[i-1]` is in column `i`.
/// Serializes as a list of `[column, row]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FullPlacement {
    m: usize,
    rooks: Vec<Cell>,
}

impl Serialize for FullPlacement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rooks.serialize(serializer)
    }
}

impl FullPlacement {
    /// Validates that `cells` has one rook in each column and each level of `Sq_{N,m}`.
    pub fn new(n: usize, m: usize, cells: &[Cell]) -> Result<Self> {
        let placement = placement::validate_placement(&square(n, m), m, cells)?;
        if placement.len() != n {
            return Err(RookError::WrongRookCount {
                expected: n,
                found: placement.len(),
            });
        }
        Ok(FullPlacement {
            m,
            rooks: placement.into_cells(),
        })
    }

    pub fn n(&self) -> usize {
        self.rooks.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rooks(&self) -> &[Cell] {
        &self.rooks
    }

    /// Rooks lying on `board` (given with exactly `N` columns).
    pub fn hits(&self, board: &FerrersBoard) -> usize {
        self.rooks.iter().filter(|c| board.contains(**c)).count()
    }

    pub fn render(&self) -> String {
        square(self.n(), self.m).render(self.m, &self.rooks)
    }
}

pub fn wreath_to_placement(w: &WreathElement, m: usize) -> Result<FullPlacement> {
    w.validate(m)?;
    let n = w.sigma.len();
    let rooks = (0..n)
        .map(|i| {
            let level = n + 1 - w.sigma[i];
            Cell::new(i + 1, (level - 1) * m + w.s[i])
        })
        .collect();
    Ok(FullPlacement { m, rooks })
}

pub fn placement_to_wreath(p: &FullPlacement) -> WreathElement {
    let n = p.n();
    let (s, sigma) = p
        .rooks()
        .iter()
        .map(|c| {
            let level = c.level(p.m);
            (c.row - (level - 1) * p.m, n + 1 - level)
        })
        .unzip();
    WreathElement { s, sigma }
}

/// All `m^N * N!` full placements: permutations in lexicographic order, then colours.
pub fn all_full_placements(n: usize, m: usize) -> Vec<FullPlacement> {
    let mut out = Vec::new();
    for sigma in permutations(n) {
        let mut s = vec![1; n];
        loop {
            let w = WreathElement {
                s: s.clone(),
                sigma: sigma.clone(),
            };
            out.push(wreath_to_placement(&w, m).expect("generated elements are valid"));
            let Some(pos) = s.iter().rposition(|&v| v < m) else {
                break;
            };
            s[pos] += 1;
            for v in &mut s[pos + 1..] {
                *v = 1;
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                extend(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    out
}

/// Strip and left-pad to `N` columns, checking the board fits inside `Sq_{N,m}`.
pub fn embed_in_square(board: &FerrersBoard, m: usize, n: usize) -> Result<FerrersBoard> {
    let padded = board.strip_leading_zeros().padded_to(n)?;
    if padded.max_height() > n * m {
        return Err(RookError::DoesNotFit);
    }
    Ok(padded)
}

/// Full placements meeting the board in exactly `k` rooks.
pub fn hit_set(board: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<Vec<FullPlacement>> {
    let board = embed_in_square(board, m, n)?;
    Ok(all_full_placements(n, m)
        .into_iter()
        .filter(|p| p.hits(&board) == k)
        .collect())
}

/// `h_0, ..., h_N`.
pub fn hit_numbers(board: &FerrersBoard, m: usize, n: usize) -> Result<Vec<u64>> {
    let board = embed_in_square(board, m, n)?;
    let mut counts = vec![0u64; n + 1];
    for p in all_full_placements(n, m) {
        counts[p.hits(&board)] += 1;
    }
    Ok(counts)
}

pub fn hit_number(board: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<u64> {
    Ok(hit_numbers(board, m, n)?.get(k).copied().unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    Circled,
    White,
}

/// A full placement with every rook coloured. Black and circled rooks lie on
/// the board; `k` counts the uncircled black rooks and the sign is
/// `(-1)^(circled)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HitConfig {
    #[serde(rename = "N")]
    pub n: usize,
    pub m: usize,
    /// The board, left-padded to `N` columns.
    pub board: FerrersBoard,
    /// One rook per column, in column order.
    pub rooks: Vec<Cell>,
    pub colors: Vec<Color>,
}

impl HitConfig {
    pub fn count(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    pub fn k(&self) -> usize {
        self.count(Color::Black)
    }

    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.count(Color::Circled) % 2 == 1)
    }

    pub fn placement(&self) -> FullPlacement {
        FullPlacement {
            m: self.m,
            rooks: self.rooks.clone(),
        }
    }

    pub fn cells_of(&self, color: Color) -> Vec<Cell> {
        self.rooks
            .iter()
            .zip(&self.colors)
            .filter(|(_, c)| **c == color)
            .map(|(r, _)| *r)
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        FullPlacement::new(self.n, self.m, &self.rooks).is_ok()
            && self.rooks.iter().enumerate().all(|(i, r)| r.column == i + 1)
            && self
                .rooks
                .iter()
                .zip(&self.colors)
                .all(|(r, c)| *c == Color::White || self.board.contains(*r))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let n = self.n;
        for row in (1..=n * self.m).rev() {
            let line: String = (1..=n)
                .flat_map(|col| {
                    let cell = Cell::new(col, row);
                    let ch = match self.rooks.iter().position(|r| *r == cell) {
                        Some(idx) => match self.colors[idx] {
                            Color::Black => 'R',
                            Color::Circled => '@',
                            Color::White => 'W',
                        },
                        None if self.board.contains(cell) => '#',
                        None => '.',
                    };
                    [ch, ' ']
                })
                .collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Every colouring with exactly `k` uncircled black rooks.
pub fn enumerate_hit_configs(board: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<Vec<HitConfig>> {
    let board = embed_in_square(board, m, n)?;
    let mut out = Vec::new();
    for p in all_full_placements(n, m) {
        let inside: Vec<usize> = (0..n).filter(|&i| board.contains(p.rooks()[i])).collect();
        // Each rook on the board is white, black or circled.
        let total = 3usize.pow(inside.len() as u32);
        for code in 0..total {
            let mut colors = vec![Color::White; n];
            let mut rest = code;
            for &i in &inside {
                colors[i] = [Color::White, Color::Black, Color::Circled][rest % 3];
                rest /= 3;
            }
            if colors.iter().filter(|&&c| c == Color::Black).count() == k {
                out.push(HitConfig {
                    n,
                    m,
                    board: board.clone(),
                    rooks: p.rooks().to_vec(),
                    colors,
                });
            }
        }
    }
    Ok(out)
}

/// Toggle the leftmost rook on the board that is white or circled.
/// Fixed points: no white rook on the board and nothing circled.
pub fn hit_involution(c: &HitConfig) -> HitConfig {
    let mut next = c.clone();
    let target = (0..c.n).find(|&i| c.board.contains(c.rooks[i]) && c.colors[i] != Color::Black);
    if let Some(i) = target {
        next.colors[i] = match c.colors[i] {
            Color::White => Color::Circled,
            _ => Color::White,
        };
    }
    next
}

/// Number of hit configurations: `sum_{s >= k} r_s(B) (N-s)! m^(N-s) C(s,k)`.
pub fn hit_config_count(board: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<BigUint> {
    let board = embed_in_square(board, m, n)?;
    let r = placement::rook_numbers(&board, m);
    let mut total = BigUint::default();
    for (s, &rs) in r.iter().enumerate().skip(k) {
        let free = n - s;
        let fact: BigUint = (1..=free).map(BigUint::from).product();
        total += BigUint::from(rs) * fact * BigUint::from(m).pow(free as u32) * binomial(s, k);
    }
    Ok(total)
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, j| acc * (n - j) / (j + 1))
}

/// Transport of hit configurations between two equivalent boards.
pub struct HitTransfer {
    forward: FsScript,
    backward: FsScript,
    from: FerrersBoard,
    to: FerrersBoard,
}

impl HitTransfer {
    pub fn new(from: &FerrersBoard, to: &FerrersBoard, m: usize, n: usize) -> Result<Self> {
        let from = embed_in_square(from, m, n)?;
        let to = embed_in_square(to, m, n)?;
        let forward = equivalence_script(&from, &to, m)?;
        let backward = forward.reversed();
        Ok(HitTransfer {
            forward,
            backward,
            from,
            to,
        })
    }

    pub fn apply(&self, c: &HitConfig) -> Result<HitConfig> {
        transfer_with(c, &self.forward, &self.from, &self.to)
    }

    pub fn invert(&self, c: &HitConfig) -> Result<HitConfig> {
        transfer_with(c, &self.backward, &self.to, &self.from)
    }
}

/// Move the black rooks by the placement bijection between the boards,
/// keep circles on the same rank counted from the right, and re-seat the
/// white rooks on the free columns and levels in the same relative order.
pub fn hit_transfer(c: &HitConfig, target: &FerrersBoard) -> Result<HitConfig> {
    HitTransfer::new(&c.board, target, c.m, c.n)?.apply(c)
}

fn transfer_with(c: &HitConfig, script: &FsScript, from: &FerrersBoard, to: &FerrersBoard) -> Result<HitConfig> {
    let (n, m) = (c.n, c.m);
    let on_board: Vec<(Cell, Color)> = c
        .rooks
        .iter()
        .zip(&c.colors)
        .filter(|(_, col)| **col != Color::White)
        .map(|(r, col)| (*r, *col))
        .collect();
    let blacks: Vec<Cell> = on_board.iter().map(|(r, _)| *r).collect();
    let moved = transport_with_script(script, from, to, m, &blacks)?.into_cells();

    // Rank from the right: position in column-descending order.
    let mut circled_ranks = HashSet::new();
    let mut by_column = on_board.clone();
    by_column.sort_by_key(|(r, _)| std::cmp::Reverse(r.column));
    for (rank, (_, col)) in by_column.iter().enumerate() {
        if *col == Color::Circled {
            circled_ranks.insert(rank);
        }
    }
    let mut moved_desc = moved.clone();
    moved_desc.sort_by_key(|r| std::cmp::Reverse(r.column));

    let free = |cells: &[Cell], level: bool| -> Vec<usize> {
        (1..=n)
            .filter(|&x| {
                !cells
                    .iter()
                    .any(|r| if level { r.level(m) == x } else { r.column == x })
            })
            .collect()
    };
    let (old_cols, new_cols) = (free(&blacks, false), free(&moved, false));
    let (old_levels, new_levels) = (free(&blacks, true), free(&moved, true));

    let mut seated: Vec<(Cell, Color)> = moved_desc
        .iter()
        .enumerate()
        .map(|(rank, r)| {
            (
                *r,
                if circled_ranks.contains(&rank) {
                    Color::Circled
                } else {
                    Color::Black
                },
            )
        })
        .collect();
    for (r, _) in c.rooks.iter().zip(&c.colors).filter(|(_, col)| **col == Color::White) {
        let level = r.level(m);
        let col = new_cols[old_cols.iter().position(|&x| x == r.column).expect("free column")];
        let new_level = new_levels[old_levels.iter().position(|&x| x == level).expect("free level")];
        seated.push((
            Cell::new(col, (new_level - 1) * m + r.row - (level - 1) * m),
            Color::White,
        ));
    }
    seated.sort_by_key(|(r, _)| r.column);
    Ok(HitConfig {
        n,
        m,
        board: to.clone(),
        rooks: seated.iter().map(|(r, _)| *r).collect(),
        colors: seated.iter().map(|(_, c)| *c).collect(),
    })
}

/// The signed set of hit configurations with `k` uncircled black rooks.
pub struct HitSpace {
    pub board: FerrersBoard,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    size: usize,
}

impl HitSpace {
    pub fn new(board: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<Self> {
        let size = hit_config_count(board, m, n, k)?.to_usize().unwrap_or(usize::MAX / 2);
        Ok(HitSpace {
            board: embed_in_square(board, m, n)?,
            m,
            n,
            k,
            size,
        })
    }

    /// The fixed point for a full placement: board rooks black, others white.
    pub fn fixed_point(&self, p: &FullPlacement) -> HitConfig {
        let colors = p
            .rooks()
            .iter()
            .map(|r| {
                if self.board.contains(*r) {
                    Color::Black
                } else {
                    Color::White
                }
            })
            .collect();
        HitConfig {
            n: self.n,
            m: self.m,
            board: self.board.clone(),
            rooks: p.rooks().to_vec(),
            colors,
        }
    }
}

impl SignedSet for HitSpace {
    type Element = HitConfig;

    fn sign(&self, e: &HitConfig) -> Sign {
        e.sign()
    }

    fn involution(&self, e: &HitConfig) -> HitConfig {
        hit_involution(e)
    }

    fn cardinality(&self) -> usize {
        self.size
    }
}

impl SignedBijection<HitSpace, HitSpace> for HitTransfer {
    fn forward(&self, s: &HitConfig) -> Result<HitConfig> {
        self.apply(s)
    }

    fn backward(&self, t: &HitConfig) -> Result<HitConfig> {
        self.invert(t)
    }
}

/// Garsia–Milne transport of hit sets, reusable across placements.
pub struct GmHitTransport {
    source: HitSpace,
    target: HitSpace,
    transfer: HitTransfer,
}

impl GmHitTransport {
    pub fn new(from: &FerrersBoard, to: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<Self> {
        Ok(GmHitTransport {
            source: HitSpace::new(from, m, n, k)?,
            target: HitSpace::new(to, m, n, k)?,
            transfer: HitTransfer::new(from, to, m, n)?,
        })
    }

    pub fn source(&self) -> &HitSpace {
        &self.source
    }

    pub fn transport(
        &self,
        p: &FullPlacement,
        options: GmOptions,
    ) -> Result<(FullPlacement, TransportTrace<HitConfig, HitConfig>)> {
        if p.hits(&self.source.board) != self.source.k {
            return Err(RookError::NotInHitSet { k: self.source.k });
        }
        let start = self.source.fixed_point(p);
        let (end, trace) = gm_transport(&self.source, &self.target, &self.transfer, &start, options)?;
        Ok((end.placement(), trace))
    }
}

/// Send an element of the k-th hit set of `from` to the k-th hit set of `to`.
pub fn gm_hit_transport(
    from: &FerrersBoard,
    to: &FerrersBoard,
    m: usize,
    n: usize,
    k: usize,
    p: &FullPlacement,
) -> Result<FullPlacement> {
    Ok(GmHitTransport::new(from, to, m, n, k)?
        .transport(p, GmOptions::default())?
        .0)
}

/// The xi statistic: cells of `Sq_{N,m}` left uncanceled. Each rook cancels
/// the cells strictly to its right in its level and, in its column, the cells
/// weakly below it that are off the board; a rook on the board also cancels
/// everything weakly below it and everything above the board in its column.
/// Rook cells count as canceled.
pub fn xi_statistic(board: &FerrersBoard, m: usize, n: usize, p: &FullPlacement) -> Result<usize> {
    let board = embed_in_square(board, m, n)?;
    let mut uncanceled = 0;
    for col in 1..=n {
        let rook = p.rooks()[col - 1];
        let in_board = board.contains(rook);
        let height = board.height(col);
        for row in 1..=n * m {
            let cell = Cell::new(col, row);
            let outside = row > height;
            let by_column = if in_board {
                row <= rook.row || outside
            } else {
                row <= rook.row && outside
            };
            let level = cell.level(m);
            let by_level = p.rooks().iter().any(|r| r.level(m) == level && r.column < col);
            if !(by_column || by_level || cell == rook) {
                uncanceled += 1;
            }
        }
    }
    Ok(uncanceled)
}

/// `sum q^xi` over the k-th hit set.
pub fn q_hit_polynomial(board: &FerrersBoard, m: usize, n: usize, k: usize) -> Result<QPolynomial> {
    let set = hit_set(board, m, n, k)?;
    let exps = set
        .iter()
        .map(|p| xi_statistic(board, m, n, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(QPolynomial::from_exponents(exps))
}
