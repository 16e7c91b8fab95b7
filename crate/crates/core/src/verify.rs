//! Exhaustive invariant suites over small boards.
//!
//! Each suite walks every case in the budget in a fixed order and stops at
//! the first violation, so the reported counterexample is the smallest one
//! in that order.

use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::board::{boards_in_delta, boards_in_square, boards_up_to, delta, FerrersBoard};
use crate::error::{Result, RookError};
use crate::fs_bijection::{equivalence_script, transport_with_script};
use crate::gm_engine::GmOptions;
use crate::gm_rook::{rook_count_formula, stirling2, GmRookTransport};
use crate::hit::{hit_numbers, hit_set, GmHitTransport};
use crate::placement::{enumerate_placements, inv, inv_breakdown, rook_count, rook_numbers};
use crate::poly::{default_n, level_product_side, rook_side, root_product_side};

pub const SUITES: &[&str] = &[
    "factorization",
    "root-product",
    "closed-form",
    "stirling",
    "fs-transport",
    "gm-rook",
    "hit",
    "vinv",
];

pub const DEFAULT_MAX_CELLS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    pub max_cells: usize,
    pub m_list: Vec<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_cells: DEFAULT_MAX_CELLS,
            m_list: vec![1, 2, 3],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

type Outcome = std::result::Result<(), String>;

struct Cases(usize);

impl Cases {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) -> Outcome {
        self.0 += 1;
        if ok {
            Ok(())
        } else {
            Err(describe())
        }
    }
}

fn lib<T>(r: Result<T>, context: impl FnOnce() -> String) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{}: {e}", context()))
}

/// Run one suite, or every suite for `"all"`.
pub fn run(name: &str, budget: &Budget) -> Result<Vec<SuiteReport>> {
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&name) {
        vec![name]
    } else {
        return Err(RookError::UnknownSuite(name.to_string()));
    };
    Ok(names.into_iter().map(|n| run_one(n, budget)).collect())
}

fn run_one(name: &str, budget: &Budget) -> SuiteReport {
    let mut cases = Cases(0);
    let outcome = match name {
        "factorization" => factorization(budget, &mut cases),
        "root-product" => root_product(budget, &mut cases),
        "closed-form" => closed_form(budget, &mut cases),
        "stirling" => stirling(budget, &mut cases),
        "fs-transport" => fs_transport(budget, &mut cases),
        "gm-rook" => gm_rook(budget, &mut cases),
        "hit" => hit(budget, &mut cases),
        "vinv" => vinv(budget, &mut cases),
        _ => unreachable!("suite names are checked by run"),
    };
    SuiteReport {
        suite: name.to_string(),
        cases: cases.0,
        counterexample: outcome.err(),
    }
}

fn factorization(budget: &Budget, cases: &mut Cases) -> Outcome {
    for board in boards_up_to(budget.max_cells) {
        for &m in &budget.m_list {
            let base = default_n(&board, m);
            for n in [base, base + 1] {
                let ctx = || format!("board {board}, m={m}, N={n}");
                let lhs = lib(rook_side(&board, m, n), ctx)?;
                let rhs = lib(level_product_side(&board, m, n), ctx)?;
                cases.check(lhs == rhs, || format!("{}: {lhs} != {rhs}", ctx()))?;
            }
        }
    }
    Ok(())
}

fn root_product(budget: &Budget, cases: &mut Cases) -> Outcome {
    for board in boards_up_to(budget.max_cells) {
        for &m in &budget.m_list {
            if !board.is_singleton(m) {
                continue;
            }
            let n = default_n(&board, m);
            let ctx = || format!("board {board}, m={m}, N={n}");
            let lhs = lib(root_product_side(&board, m, n), ctx)?;
            let rhs = lib(rook_side(&board, m, n), ctx)?;
            cases.check(lhs == rhs, || format!("{}: {lhs} != {rhs}", ctx()))?;
        }
    }
    Ok(())
}

/// Singleton boards inside `Delta_{N,m}` within the cell budget, `N <= 6`.
fn closed_form(budget: &Budget, cases: &mut Cases) -> Outcome {
    for &m in &budget.m_list {
        for n in 1..=6 {
            for board in boards_in_delta(n, m) {
                if board.cell_count() > budget.max_cells || !board.is_singleton(m) {
                    continue;
                }
                for k in 0..n {
                    let ctx = || format!("board {board}, m={m}, N={n}, k={k}");
                    let formula = lib(rook_count_formula(&board, m, n, k), ctx)?;
                    let brute = BigInt::from(rook_count(&board, m, k));
                    cases.check(formula == brute, || {
                        format!("{}: formula {formula}, count {brute}", ctx())
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// `r_{n-d}(Delta_{n,m}) = m^(n-d) S(n,d)` while the triangle fits the budget.
fn stirling(budget: &Budget, cases: &mut Cases) -> Outcome {
    for &m in &budget.m_list {
        for n in 1..=7 {
            let triangle = delta(n, m);
            if triangle.cell_count() > budget.max_cells.max(m) {
                break;
            }
            for d in 1..=n {
                let brute = BigUint::from(rook_count(&triangle, m, n - d));
                let formula = BigUint::from(m).pow((n - d) as u32) * stirling2(n, d);
                cases.check(brute == formula, || {
                    format!("n={n}, m={m}, d={d}: {brute} != {formula}")
                })?;
            }
        }
    }
    Ok(())
}

fn classes(boards: Vec<FerrersBoard>, m: usize) -> std::result::Result<Vec<Vec<FerrersBoard>>, String> {
    let mut by_rep: BTreeMap<Vec<usize>, Vec<FerrersBoard>> = BTreeMap::new();
    for board in boards {
        let (rep, _) = lib(board.m_increasing_representative(m), || {
            format!("representative of {board}")
        })?;
        by_rep.entry(rep.heights().to_vec()).or_default().push(board);
    }
    Ok(by_rep.into_values().filter(|c| c.len() > 1).collect())
}

fn fs_transport(budget: &Budget, cases: &mut Cases) -> Outcome {
    for &m in &budget.m_list {
        for class in classes(boards_up_to(budget.max_cells), m)? {
            for (a_idx, a) in class.iter().enumerate() {
                for b in &class[a_idx + 1..] {
                    let ctx = || format!("{a} -> {b}, m={m}");
                    let script = lib(equivalence_script(a, b, m), ctx)?;
                    let back = script.reversed();
                    let max_k = rook_numbers(a, m).len();
                    for k in 0..max_k {
                        let mut images = HashSet::new();
                        let source = enumerate_placements(a, m, k);
                        for p in &source {
                            let image = lib(transport_with_script(&script, a, b, m, p.cells()), ctx)?;
                            let home = lib(transport_with_script(&back, b, a, m, image.cells()), ctx)?;
                            cases.check(home.cells() == p.cells(), || {
                                format!("{}: {:?} does not round-trip", ctx(), p.cells())
                            })?;
                            cases.check(image.inv() == p.inv(), || {
                                format!("{}: inv changes at {:?}", ctx(), p.cells())
                            })?;
                            images.insert(image.into_cells());
                        }
                        let target = rook_count(b, m, k) as usize;
                        cases.check(images.len() == source.len() && target == source.len(), || {
                            format!(
                                "{}, k={k}: {} placements, {} images, {} targets",
                                ctx(),
                                source.len(),
                                images.len(),
                                target
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Equivalent singleton boards inside `Delta_{N,m}`, `N <= 4`.
fn gm_rook(budget: &Budget, cases: &mut Cases) -> Outcome {
    for &m in &budget.m_list {
        for n in 2..=4 {
            let boards: Vec<FerrersBoard> = boards_in_delta(n, m)
                .into_iter()
                .filter(|b| b.is_singleton(m) && b.cell_count() <= budget.max_cells)
                .collect();
            for class in classes(boards, m)? {
                let base = &class[0];
                for other in &class[1..] {
                    for k in 0..n {
                        let ctx = || format!("{base} -> {other}, m={m}, N={n}, k={k}");
                        let engine = lib(GmRookTransport::new(base, other, m, n, k), ctx)?;
                        let source = enumerate_placements(base, m, k);
                        let mut images = HashSet::new();
                        for p in &source {
                            let (out, _) = lib(engine.transport(p.cells(), GmOptions::default()), ctx)?;
                            let moved = inv(other, m, &out);
                            cases.check(moved == p.inv(), || {
                                format!("{}: inv changes at {:?}", ctx(), p.cells())
                            })?;
                            images.insert(out);
                        }
                        cases.check(images.len() == source.len(), || format!("{}: not injective", ctx()))?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Boards inside `Sq_{N,m}`, `N <= 3`: equal hit vectors per class and a
/// bijective transport from the first member of each class.
fn hit(budget: &Budget, cases: &mut Cases) -> Outcome {
    for &m in &budget.m_list {
        for n in 1..=3 {
            let total: u64 = (1..=n as u64).product::<u64>() * (m as u64).pow(n as u32);
            let boards: Vec<FerrersBoard> = boards_in_square(n, m)
                .into_iter()
                .filter(|b| b.cell_count() <= budget.max_cells)
                .collect();
            for board in &boards {
                let h = lib(hit_numbers(board, m, n), || format!("hits of {board}"))?;
                cases.check(h.iter().sum::<u64>() == total, || {
                    format!("{board}, m={m}, N={n}: hit sum {h:?}")
                })?;
            }
            for class in classes(boards, m)? {
                let base = &class[0];
                let base_hits = lib(hit_numbers(base, m, n), || format!("hits of {base}"))?;
                for other in &class[1..] {
                    let hits = lib(hit_numbers(other, m, n), || format!("hits of {other}"))?;
                    cases.check(hits == base_hits, || {
                        format!("{base} vs {other}, m={m}, N={n}: {base_hits:?} vs {hits:?}")
                    })?;
                    for k in 0..=n {
                        let ctx = || format!("{base} -> {other}, m={m}, N={n}, k={k}");
                        let engine = lib(GmHitTransport::new(base, other, m, n, k), ctx)?;
                        let source = lib(hit_set(base, m, n, k), ctx)?;
                        let mut images = HashSet::new();
                        for p in &source {
                            let (out, _) = lib(engine.transport(p, GmOptions::default()), ctx)?;
                            images.insert(out);
                        }
                        cases.check(images.len() == source.len(), || format!("{}: not injective", ctx()))?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// On singleton boards the column decomposition of `inv` sums to `inv`.
fn vinv(budget: &Budget, cases: &mut Cases) -> Outcome {
    for board in boards_up_to(budget.max_cells) {
        for &m in &budget.m_list {
            if !board.is_singleton(m) {
                continue;
            }
            for k in 0..rook_numbers(&board, m).len() {
                for p in enumerate_placements(&board, m, k) {
                    let sum = inv_breakdown(&board, m, p.cells()).vinv_sum();
                    cases.check(sum == p.inv() as i64, || {
                        format!(
                            "board {board}, m={m}, rooks {:?}: vinv sum {sum}, inv {}",
                            p.cells(),
                            p.inv()
                        )
                    })?;
                }
            }
        }
    }
    Ok(())
}
