//! Reference implementations written straight from the definitions, kept
//! independent of the library's algorithms.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

pub type Heights = Vec<usize>;
pub type Rook = (usize, usize);

pub fn level(row: usize, m: usize) -> usize {
    row.div_ceil(m)
}

pub fn height(h: &[usize], col: usize) -> usize {
    if col == 0 || col > h.len() {
        0
    } else {
        h[col - 1]
    }
}

pub fn contains(h: &[usize], (c, r): Rook) -> bool {
    r >= 1 && r <= height(h, c)
}

pub fn cells(h: &[usize]) -> Vec<Rook> {
    h.iter()
        .enumerate()
        .flat_map(|(i, &b)| (1..=b).map(move |r| (i + 1, r)))
        .collect()
}

pub fn num_levels(h: &[usize], m: usize) -> usize {
    level(h.iter().copied().max().unwrap_or(0), m)
}

/// Rook numbers by dynamic programming over columns with a bitmask of used levels.
pub fn rook_numbers(h: &[usize], m: usize) -> Vec<u64> {
    let t = num_levels(h, m);
    let mut states: BTreeMap<u64, u64> = BTreeMap::from([(0, 1)]);
    for &b in h {
        let mut next = states.clone();
        for (&mask, &ways) in &states {
            for p in 1..=level(b, m) {
                if mask & (1 << p) == 0 {
                    // rows of level p available in this column
                    let rows = (b.min(p * m) - (p - 1) * m) as u64;
                    *next.entry(mask | (1 << p)).or_default() += ways * rows;
                }
            }
        }
        states = next;
    }
    let mut out = vec![0u64; t.min(h.len()) + 1];
    for (mask, ways) in states {
        out[mask.count_ones() as usize] += ways;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

pub fn rook_count(h: &[usize], m: usize, k: usize) -> u64 {
    rook_numbers(h, m).get(k).copied().unwrap_or(0)
}

pub fn is_placement(h: &[usize], m: usize, rooks: &[Rook]) -> bool {
    rooks.iter().all(|&r| contains(h, r))
        && rooks.iter().enumerate().all(|(i, a)| {
            rooks[i + 1..]
                .iter()
                .all(|b| a.0 != b.0 && level(a.1, m) != level(b.1, m))
        })
}

/// All k-rook placements, by filtering subsets of cells.
pub fn placements(h: &[usize], m: usize, k: usize) -> Vec<Vec<Rook>> {
    fn go(all: &[Rook], m: usize, k: usize, start: usize, cur: &mut Vec<Rook>, out: &mut Vec<Vec<Rook>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..all.len() {
            let c = all[i];
            if cur.iter().all(|o| o.0 != c.0 && level(o.1, m) != level(c.1, m)) {
                cur.push(c);
                go(all, m, k, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&cells(h), m, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Cells with no rook, no rook above in the column and no rook to the left in the level.
pub fn inv(h: &[usize], m: usize, rooks: &[Rook]) -> usize {
    cells(h)
        .into_iter()
        .filter(|&(c, r)| {
            !rooks
                .iter()
                .any(|&(rc, rr)| (rc == c && rr >= r) || (level(rr, m) == level(r, m) && rc < c))
        })
        .count()
}

pub fn level_counts(h: &[usize], m: usize) -> Vec<usize> {
    (1..=num_levels(h, m))
        .map(|p| h.iter().map(|&b| b.min(p * m).saturating_sub((p - 1) * m)).sum())
        .collect()
}

/// At most one column per level ends strictly inside the level.
pub fn is_singleton(h: &[usize], m: usize) -> bool {
    (1..=num_levels(h, m)).all(|p| h.iter().filter(|&&b| b > (p - 1) * m && b < p * m).count() <= 1)
}

pub fn root_multiset(h: &[usize], m: usize, n: usize) -> Vec<i64> {
    let mut padded = vec![0; n - h.len()];
    padded.extend_from_slice(h);
    let mut v: Vec<i64> = padded
        .iter()
        .enumerate()
        .map(|(k, &b)| (k * m) as i64 - b as i64)
        .collect();
    v.sort_unstable();
    v
}

/// Partitions of every size up to `max_cells`, as weakly increasing heights.
pub fn boards_up_to(max_cells: usize) -> Vec<Heights> {
    fn go(remaining: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Heights>) {
        if remaining == 0 {
            let mut h = cur.clone();
            h.reverse();
            out.push(h);
            return;
        }
        for part in 1..=remaining.min(max_part) {
            cur.push(part);
            go(remaining - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=max_cells {
        go(total, total, &mut Vec::new(), &mut out);
    }
    out
}

/// Weakly increasing `n`-tuples with entry `i` at most `cap(i)` (1-based).
pub fn bounded_boards(n: usize, cap: impl Fn(usize) -> usize) -> Vec<Heights> {
    let mut out = vec![vec![]];
    for i in 1..=n {
        out = out
            .into_iter()
            .flat_map(|h: Heights| {
                let low = h.last().copied().unwrap_or(0);
                (low..=cap(i)).map(move |b| {
                    let mut next = h.clone();
                    next.push(b);
                    next
                })
            })
            .collect();
    }
    out
}

pub fn stirling2(n: usize, d: usize) -> u128 {
    let mut table = vec![vec![0u128; n + 1]; n + 1];
    table[0][0] = 1;
    for i in 1..=n {
        for j in 1..=i {
            table[i][j] = j as u128 * table[i - 1][j] + table[i - 1][j - 1];
        }
    }
    table[n][d]
}

/// `x(x-m)...(x-(k-1)m)` at an integer point.
pub fn falling(x: i128, k: usize, m: usize) -> i128 {
    (0..k).map(|j| x - (j * m) as i128).product()
}

/// All full placements on `Sq_{n,m}`, column `i` at index `i-1`.
pub fn full_placements(n: usize, m: usize) -> Vec<Vec<Rook>> {
    let mut out: Vec<(Vec<Rook>, u32)> = vec![(vec![], 0)];
    for col in 1..=n {
        out = out
            .into_iter()
            .flat_map(|(rooks, used)| {
                (1..=n).filter(move |p| used & (1 << p) == 0).flat_map(move |p| {
                    let rooks = rooks.clone();
                    (1..=m).map(move |off| {
                        let mut next = rooks.clone();
                        next.push((col, (p - 1) * m + off));
                        (next, used | (1 << p))
                    })
                })
            })
            .collect();
    }
    out.into_iter().map(|(r, _)| r).collect()
}

pub fn pad(h: &[usize], n: usize) -> Heights {
    let stripped: Vec<usize> = h.iter().copied().skip_while(|&b| b == 0).collect();
    let mut padded = vec![0; n - stripped.len()];
    padded.extend(stripped);
    padded
}

pub fn hit_numbers(h: &[usize], m: usize, n: usize) -> Vec<u64> {
    let board = pad(h, n);
    let mut out = vec![0u64; n + 1];
    for p in full_placements(n, m) {
        out[p.iter().filter(|&&r| contains(&board, r)).count()] += 1;
    }
    out
}

/// Uncanceled cells of `Sq_{n,m}` after marking, for each rook, its column
/// cells (below it and off the board, or below it or off the board when the
/// rook is on the board) and the cells to its right in its level.
pub fn xi(h: &[usize], m: usize, n: usize, rooks: &[Rook]) -> usize {
    let board = pad(h, n);
    let mut canceled = vec![vec![false; n * m + 1]; n + 1];
    for &(c, r) in rooks {
        canceled[c][r] = true;
        let inside = contains(&board, (c, r));
        for row in 1..=n * m {
            let off = !contains(&board, (c, row));
            if (inside && (row <= r || off)) || (!inside && row <= r && off) {
                canceled[c][row] = true;
            }
        }
        let p = level(r, m);
        for col in c + 1..=n {
            for row in (p - 1) * m + 1..=p * m {
                canceled[col][row] = true;
            }
        }
    }
    (1..=n).map(|c| (1..=n * m).filter(|&r| !canceled[c][r]).count()).sum()
}

pub fn q_poly(exponents: impl IntoIterator<Item = usize>) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for e in exponents {
        *out.entry(e).or_default() += 1;
    }
    out
}
