//! Acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines always print.
//! Every criterion compares library results against the reference
//! implementations in `common`.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use rooklab::board::delta;
use rooklab::fs_bijection::{equivalence_script, transport, transport_with_script};
use rooklab::gm_engine::{GmOptions, Sign, SignedSet};
use rooklab::gm_rook::{ainv, involution_i, rook_count_formula, transfer_f, GmRookTransport, RookConfig};
use rooklab::hit::{
    gm_hit_transport, hit_numbers, hit_set, hit_transfer, xi_statistic, Color, FullPlacement, GmHitTransport, HitConfig,
};
use rooklab::placement::{inv, inv_breakdown, p_weight, q_rook_polynomial, rook_count};
use rooklab::poly::{are_equivalent, default_n, level_product_side, rook_side, root_product_side};
use rooklab::{Cell, FerrersBoard};

use common::Rook;

fn fb(h: &[usize]) -> FerrersBoard {
    FerrersBoard::new(h.to_vec()).unwrap()
}

fn to_cells(rooks: &[Rook]) -> Vec<Cell> {
    let mut v: Vec<Cell> = rooks.iter().map(|&(c, r)| Cell::new(c, r)).collect();
    v.sort();
    v
}

fn to_rooks(cells: &[Cell]) -> Vec<Rook> {
    let mut v: Vec<Rook> = cells.iter().map(|c| (c.column, c.row)).collect();
    v.sort();
    v
}

/// Group boards by their reference rook-number vector (trailing zeros dropped).
fn classes(boards: &[Vec<usize>], m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut by: BTreeMap<Vec<u64>, Vec<Vec<usize>>> = BTreeMap::new();
    for h in boards {
        by.entry(common::rook_numbers(h, m)).or_default().push(h.clone());
    }
    by.into_values().collect()
}

fn factorization() -> String {
    let mut checked = 0;
    for h in common::boards_up_to(12) {
        let board = fb(&h);
        for m in 1..=3 {
            let r = common::rook_numbers(&h, m);
            let l = common::level_counts(&h, m);
            let base = default_n(&board, m);
            for n in [base, base + 1] {
                let lhs = rook_side(&board, m, n).unwrap();
                let rhs = level_product_side(&board, m, n).unwrap();
                assert_eq!(lhs, rhs, "board {h:?}, m={m}, N={n}");
                for x in -3i128..=(n as i128 * m as i128 + 2) {
                    let by_rooks: i128 = r
                        .iter()
                        .enumerate()
                        .map(|(k, &rk)| rk as i128 * common::falling(x, n - k, m))
                        .sum();
                    let by_levels: i128 = (1..=n)
                        .map(|i| x + *l.get(n - i).unwrap_or(&0) as i128 - ((i - 1) * m) as i128)
                        .product();
                    assert_eq!(
                        by_rooks, by_levels,
                        "reference sides differ: {h:?}, m={m}, N={n}, x={x}"
                    );
                    assert_eq!(
                        lhs.eval(&BigInt::from(x)),
                        BigInt::from(by_rooks),
                        "{h:?}, m={m}, N={n}, x={x}"
                    );
                }
                checked += 1;
            }
        }
    }
    format!("{checked} (board, m, N) cases, <= 12 cells, m in 1..=3")
}

fn height_product() -> String {
    let mut checked = 0;
    for h in common::boards_up_to(12) {
        for m in 1..=3 {
            let board = fb(&h);
            assert_eq!(
                board.is_singleton(m),
                common::is_singleton(&h, m),
                "singleton test {h:?}, m={m}"
            );
            if !common::is_singleton(&h, m) {
                continue;
            }
            let n = default_n(&board, m);
            let lhs = root_product_side(&board, m, n).unwrap();
            assert_eq!(lhs, rook_side(&board, m, n).unwrap(), "{h:?}, m={m}");
            let padded = common::pad(&h, n);
            for x in -3i128..=12 {
                let expected: i128 = padded
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| x + b as i128 - (i * m) as i128)
                    .product();
                assert_eq!(
                    lhs.eval(&BigInt::from(x)),
                    BigInt::from(expected),
                    "{h:?}, m={m}, x={x}"
                );
            }
            checked += 1;
        }
    }
    format!("{checked} singleton boards")
}

fn closed_form() -> String {
    let board = fb(&[0, 0, 2, 3]);
    assert_eq!(rook_count_formula(&board, 2, 4, 1).unwrap(), BigInt::from(5));
    assert_eq!(rook_count_formula(&board, 2, 4, 2).unwrap(), BigInt::from(2));
    let mut checked = 0;
    for m in 1..=3 {
        for n in 1..=6 {
            for h in common::bounded_boards(n, |i| (i - 1) * m) {
                if !common::is_singleton(&h, m) {
                    continue;
                }
                let board = fb(&h);
                for k in 0..n {
                    let formula = rook_count_formula(&board, m, n, k).unwrap();
                    assert_eq!(
                        formula,
                        BigInt::from(common::rook_count(&h, m, k)),
                        "{h:?}, m={m}, N={n}, k={k}"
                    );
                    checked += 1;
                }
            }
        }
    }
    format!("{checked} (board, N, k) cases, N <= 6, m <= 3; r1=5, r2=2 on (0,0,2,3)")
}

fn stirling() -> String {
    let mut checked = 0;
    for m in 1..=3 {
        for n in 1..=7 {
            let tri = delta(n, m);
            let h = tri.heights().to_vec();
            for d in 1..=n {
                let expected = (m as u128).pow((n - d) as u32) * common::stirling2(n, d);
                assert_eq!(
                    common::rook_count(&h, m, n - d) as u128,
                    expected,
                    "reference n={n}, m={m}, d={d}"
                );
                assert_eq!(rook_count(&tri, m, n - d) as u128, expected, "n={n}, m={m}, d={d}");
                checked += 1;
            }
        }
    }
    format!("{checked} (n, m, d) cases, n <= 7, m <= 3")
}

fn fs_transport() -> String {
    let boards = common::boards_up_to(10);
    let (mut pairs, mut moved) = (0, 0);
    for m in 1..=3 {
        // The library's equivalence test agrees with equality of rook numbers.
        let mut by_cells: BTreeMap<usize, Vec<&Vec<usize>>> = BTreeMap::new();
        for h in &boards {
            by_cells.entry(h.iter().sum()).or_default().push(h);
        }
        for group in by_cells.values() {
            for a in group {
                for b in group {
                    let same = common::rook_numbers(a, m) == common::rook_numbers(b, m);
                    assert_eq!(
                        are_equivalent(&fb(a), &fb(b), m).unwrap(),
                        same,
                        "{a:?} vs {b:?}, m={m}"
                    );
                }
            }
        }
        for class in classes(&boards, m) {
            for (i, a) in class.iter().enumerate() {
                for b in &class[i + 1..] {
                    let (ba, bb) = (fb(a), fb(b));
                    let script = equivalence_script(&ba, &bb, m).unwrap();
                    let back = script.reversed();
                    for k in 0..common::rook_numbers(a, m).len() {
                        let source = common::placements(a, m, k);
                        let mut images = BTreeSet::new();
                        for p in &source {
                            let image = transport_with_script(&script, &ba, &bb, m, &to_cells(p)).unwrap();
                            let q = to_rooks(image.cells());
                            assert!(common::is_placement(b, m, &q), "{a:?}->{b:?}: {q:?} invalid");
                            assert_eq!(
                                common::inv(b, m, &q),
                                common::inv(a, m, p),
                                "{a:?}->{b:?}: inv at {p:?}"
                            );
                            let home = transport_with_script(&back, &bb, &ba, m, image.cells()).unwrap();
                            assert_eq!(to_rooks(home.cells()), *p, "{a:?}->{b:?}: round trip at {p:?}");
                            images.insert(q);
                            moved += 1;
                        }
                        assert_eq!(images.len(), source.len(), "{a:?}->{b:?}, k={k}: not injective");
                        assert_eq!(
                            images.len() as u64,
                            common::rook_count(b, m, k),
                            "{a:?}->{b:?}, k={k}: not onto"
                        );
                        assert_eq!(q_rook_polynomial(&ba, m, k), q_rook_polynomial(&bb, m, k));
                    }
                    pairs += 1;
                }
            }
        }
    }
    format!("{pairs} equivalent pairs, {moved} placements transported and returned")
}

fn fixtures() -> String {
    use rooklab::fs_bijection::{map_l, map_local_l, map_to_singleton, Direction};
    let cells = |l: &[Rook]| to_cells(l);

    // To the singleton board, then through l.
    let s = map_to_singleton(&fb(&[1, 3, 3, 4]), 2, &cells(&[(3, 2), (2, 3)]), Direction::Forward).unwrap();
    assert_eq!(
        (s.board().clone(), s.cells().to_vec()),
        (fb(&[1, 2, 4, 4]), cells(&[(2, 2), (3, 4)]))
    );
    let l = map_l(&fb(&[1, 2, 4, 4]), 2, s.cells(), Direction::Forward).unwrap();
    assert_eq!(
        (l.board().clone(), l.cells().to_vec()),
        (fb(&[4, 7]), cells(&[(1, 4), (2, 6)]))
    );

    // inv on a non-singleton board.
    let wide = fb(&[2, 3, 3, 4, 7, 8, 10, 10]);
    let wide_rooks = [(3, 2), (8, 6), (7, 10)];
    assert_eq!(inv(&wide, 3, &cells(&wide_rooks)), 19);
    assert_eq!(common::inv(wide.heights(), 3, &wide_rooks), 19);

    // The singleton map keeps inv.
    let tall = fb(&[4, 4, 4, 7, 10, 10, 10]);
    let rooks5 = cells(&[(1, 4), (3, 2), (5, 10), (6, 8)]);
    assert_eq!(inv(&tall, 3, &rooks5), 6);
    let s5 = map_to_singleton(&tall, 3, &rooks5, Direction::Forward).unwrap();
    assert_eq!(s5.cells(), cells(&[(2, 2), (3, 6), (5, 8), (7, 12)]));
    assert_eq!(s5.inv(), 6);

    // A local l-map.
    assert_eq!(fb(&[1, 4, 4, 5]).local_l(2, 4, 2).unwrap(), fb(&[1, 2, 3, 8]));
    let l7 = map_local_l(
        &fb(&[1, 4, 4, 5]),
        2,
        4,
        2,
        &cells(&[(4, 5), (3, 2), (2, 3)]),
        Direction::Forward,
    )
    .unwrap();
    assert_eq!(l7.cells(), cells(&[(3, 3), (2, 2), (4, 7)]));

    // A three-step transport chain.
    let script = equivalence_script(&fb(&[1, 1, 1, 6, 7]), &fb(&[3, 5, 8]), 2).unwrap();
    let chain: Vec<FerrersBoard> = script.steps.iter().map(|s| s.target.clone()).collect();
    assert_eq!(chain, vec![fb(&[1, 2, 6, 7]), fb(&[1, 2, 5, 8]), fb(&[3, 5, 8])]);
    let t8 = transport(
        &fb(&[1, 1, 1, 6, 7]),
        &fb(&[3, 5, 8]),
        2,
        &cells(&[(1, 1), (5, 3), (4, 6)]),
    )
    .unwrap();
    assert_eq!(t8.cells(), cells(&[(1, 3), (2, 1), (3, 8)]));

    // Involution and transfer on a rook configuration.
    let config = |board: &[usize], n, whites: &[Rook], blacks: &[Rook]| RookConfig {
        n,
        m: 2,
        board: fb(board),
        whites: cells(whites),
        blacks: cells(blacks),
    };
    let c9 = config(&[0, 0, 2, 3], 4, &[(3, 4)], &[(2, 1), (4, 3)]);
    assert_eq!(c9.sign(), Sign::Minus);
    let i9 = involution_i(&c9);
    assert_eq!(i9, config(&[0, 0, 2, 3], 4, &[(2, 1), (3, 4)], &[(4, 1)]));
    assert_eq!(i9.sign(), Sign::Plus);
    assert_eq!(
        transfer_f(&c9, &fb(&[0, 0, 1, 4])).unwrap(),
        config(&[0, 0, 1, 4], 4, &[(4, 6)], &[(2, 1), (3, 3)])
    );
    assert_eq!(
        transfer_f(&i9, &fb(&[0, 0, 1, 4])).unwrap(),
        config(&[0, 0, 1, 4], 4, &[(2, 1), (4, 6)], &[(3, 1)])
    );

    // ainv is constant on an involution pair.
    let c10 = config(&[0, 0, 0, 0, 3, 5, 6], 7, &[(3, 2), (6, 7), (7, 8)], &[(4, 3), (5, 1)]);
    assert_eq!(ainv(&c10), 15);
    assert_eq!(ainv(&involution_i(&c10)), 15);

    // Hit transfer.
    let hc = |board: &[usize], rooks: &[(usize, usize, Color)]| {
        let mut rooks = rooks.to_vec();
        rooks.sort_by_key(|r| r.0);
        HitConfig {
            n: 5,
            m: 2,
            board: fb(board),
            rooks: rooks.iter().map(|&(c, r, _)| Cell::new(c, r)).collect(),
            colors: rooks.iter().map(|r| r.2).collect(),
        }
    };
    use Color::*;
    let c11 = hc(
        &[1, 1, 1, 6, 7],
        &[
            (1, 1, Black),
            (5, 3, Black),
            (4, 6, Circled),
            (2, 7, White),
            (3, 9, White),
        ],
    );
    let expected11 = hc(
        &[0, 0, 3, 5, 8],
        &[
            (3, 3, Black),
            (4, 1, Circled),
            (5, 8, Black),
            (1, 5, White),
            (2, 9, White),
        ],
    );
    assert_eq!(hit_transfer(&c11, &fb(&[3, 5, 8])).unwrap(), expected11);

    // Weights of small boards.
    let weights = |h: &[usize]| {
        let mut w: Vec<i64> = (0..=1)
            .flat_map(|k| common::placements(h, 2, k))
            .map(|p| p_weight(&fb(h), 2, &to_cells(&p)))
            .collect();
        w.sort_unstable();
        w
    };
    assert_eq!(weights(&[1, 1]), vec![-4, -2, 0]);
    assert_eq!(weights(&[2]), vec![-2, -1, 0]);

    // xi of a full placement.
    let rooks13 = [(1, 11), (2, 3), (3, 8), (4, 5)];
    let p13 = FullPlacement::new(4, 3, &to_cells(&rooks13)).unwrap();
    assert_eq!(xi_statistic(&fb(&[2, 4, 6, 10]), 3, 4, &p13).unwrap(), 9);
    assert_eq!(common::xi(&[2, 4, 6, 10], 3, 4, &rooks13), 9);

    "10 worked examples".to_string()
}

fn gm_rook() -> String {
    // The running pair with every axiom checked along the way.
    let (from, to) = (fb(&[0, 0, 2, 3]), fb(&[0, 0, 1, 4]));
    for k in 0..4 {
        let engine = GmRookTransport::new(&from, &to, 2, 4, k).unwrap();
        for p in common::placements(from.heights(), 2, k) {
            let (out, trace) = engine
                .transport(
                    &to_cells(&p),
                    GmOptions {
                        verify: true,
                        cap: None,
                    },
                )
                .unwrap();
            assert_eq!(
                common::inv(to.heights(), 2, &to_rooks(&out)),
                common::inv(from.heights(), 2, &p)
            );
            assert!(trace.loops <= 2 * engine.source().cardinality());
        }
    }

    let (mut pairs, mut moved, mut longest) = (0, 0, 0);
    for m in 1..=3 {
        for n in 2..=4 {
            let mut by_roots: BTreeMap<Vec<i64>, Vec<Vec<usize>>> = BTreeMap::new();
            for h in common::bounded_boards(n, |i| (i - 1) * m) {
                if common::is_singleton(&h, m) {
                    by_roots.entry(common::root_multiset(&h, m, n)).or_default().push(h);
                }
            }
            for class in by_roots.values() {
                for a in class {
                    for b in class {
                        if a == b {
                            continue;
                        }
                        let (ba, bb) = (fb(a), fb(b));
                        for k in 0..n {
                            let engine = GmRookTransport::new(&ba, &bb, m, n, k).unwrap();
                            let source = common::placements(a, m, k);
                            let mut images = HashSet::new();
                            for p in &source {
                                let (out, trace) = engine.transport(&to_cells(p), GmOptions::default()).unwrap();
                                let q = to_rooks(&out);
                                assert!(common::is_placement(b, m, &q), "{a:?}->{b:?}: {q:?}");
                                assert_eq!(common::inv(b, m, &q), common::inv(a, m, p), "{a:?}->{b:?}, {p:?}");
                                longest = longest.max(trace.loops);
                                images.insert(q);
                                moved += 1;
                            }
                            assert_eq!(images.len(), source.len(), "{a:?}->{b:?}, k={k}");
                            assert_eq!(images.len() as u64, common::rook_count(b, m, k));
                        }
                        pairs += 1;
                    }
                }
            }
        }
    }
    format!("{pairs} ordered singleton pairs, N <= 4, m <= 3; {moved} placements; longest trace {longest} loops")
}

fn hit() -> String {
    let mut summary = Vec::new();
    let settings: Vec<(usize, usize)> = (1..=3)
        .flat_map(|m| (1..=4).map(move |n| (n, m)))
        .chain([(5, 2)])
        .collect();
    for (n, m) in settings {
        let total: u64 = (1..=n as u64).product::<u64>() * (m as u64).pow(n as u32);
        let boards = common::bounded_boards(n, |_| n * m);
        let mut checked_pairs = 0;
        for class in classes(&boards, m) {
            let base = &class[0];
            let h0 = common::hit_numbers(base, m, n);
            assert_eq!(h0.iter().sum::<u64>(), total, "{base:?}, m={m}, N={n}");
            assert_eq!(hit_numbers(&fb(base), m, n).unwrap(), h0, "{base:?}, m={m}, N={n}");
            for other in &class[1..] {
                assert_eq!(
                    common::hit_numbers(other, m, n),
                    h0,
                    "{base:?} vs {other:?}, m={m}, N={n}"
                );
            }
            // Explicit bijections: every member for N <= 3, one partner per class above that.
            let partners: &[Vec<usize>] = match (n, class.len()) {
                (_, 1) => &[],
                (1..=3, _) => &class[1..],
                _ => &class[1..2],
            };
            for other in partners {
                check_hit_bijection(base, other, m, n);
                checked_pairs += 1;
            }
        }
        summary.push(format!("N={n},m={m}: {} boards, {checked_pairs} pairs", boards.len()));
    }
    check_hit_bijection(&[1, 1, 1, 6, 7], &[3, 5, 8], 2, 5);
    summary.join("; ")
}

fn check_hit_bijection(a: &[usize], b: &[usize], m: usize, n: usize) {
    let padded_b = common::pad(b, n);
    for k in 0..=n {
        let engine = GmHitTransport::new(&fb(a), &fb(b), m, n, k).unwrap();
        let source = hit_set(&fb(a), m, n, k).unwrap();
        assert_eq!(source.len() as u64, common::hit_numbers(a, m, n)[k]);
        let mut images = HashSet::new();
        for p in &source {
            let (out, _) = engine.transport(p, GmOptions::default()).unwrap();
            let q = to_rooks(out.rooks());
            assert_eq!(
                q.iter().filter(|&&r| common::contains(&padded_b, r)).count(),
                k,
                "{a:?}->{b:?}: {q:?}"
            );
            images.insert(q);
        }
        assert_eq!(
            images.len(),
            source.len(),
            "{a:?}->{b:?}, m={m}, N={n}, k={k}: not injective"
        );
    }
}

fn negative_suite() -> String {
    let mut checked = 0;
    for h in common::boards_up_to(10) {
        for m in 1..=3 {
            if !common::is_singleton(&h, m) {
                continue;
            }
            for k in 0..common::rook_numbers(&h, m).len() {
                for p in common::placements(&h, m, k) {
                    let sum = inv_breakdown(&fb(&h), m, &to_cells(&p)).vinv_sum();
                    assert_eq!(sum, common::inv(&h, m, &p) as i64, "{h:?}, m={m}, {p:?}");
                    checked += 1;
                }
            }
        }
    }
    let wide = fb(&[2, 3, 3, 4, 7, 8, 10, 10]);
    let wide_rooks = to_cells(&[(3, 2), (8, 6), (7, 10)]);
    assert!(!wide.is_singleton(3));
    let bd = inv_breakdown(&wide, 3, &wide_rooks);
    assert_eq!((bd.vinv_sum(), bd.hinv_sum()), (17, 19));

    let (a, b, p, before, after) = xi_witness().expect("xi changes under some transport");
    format!(
        "vinv = inv on {checked} singleton placements; non-singleton example gives 17 != 19; xi witness {a:?}->{b:?} at {p:?}: {before} -> {after}"
    )
}

type XiWitness = (Vec<usize>, Vec<usize>, Vec<Rook>, usize, usize);

/// First placement, over equivalent boards in `Sq_{3,2}`, whose xi changes
/// under the hit transport.
fn xi_witness() -> Option<XiWitness> {
    let (m, n) = (2, 3);
    let boards: Vec<Vec<usize>> = common::bounded_boards(n, |_| n * m)
        .into_iter()
        .filter(|h| common::is_singleton(h, m))
        .collect();
    for class in classes(&boards, m) {
        for b in &class[1..] {
            let a = &class[0];
            for k in 0..=n {
                for p in hit_set(&fb(a), m, n, k).unwrap() {
                    let image = gm_hit_transport(&fb(a), &fb(b), m, n, k, &p).unwrap();
                    let before = common::xi(a, m, n, &to_rooks(p.rooks()));
                    let after = common::xi(b, m, n, &to_rooks(image.rooks()));
                    if before != after {
                        return Some((a.clone(), b.clone(), to_rooks(p.rooks()), before, after));
                    }
                }
            }
        }
    }
    None
}

fn main() {
    type Criterion = (&'static str, fn() -> String);
    let criteria: [Criterion; 9] = [
        ("factorization identity", factorization),
        ("height product on singleton boards", height_product),
        ("closed form for rook numbers", closed_form),
        ("Stirling numbers on triangles", stirling),
        ("placement transport", fs_transport),
        ("worked fixtures", fixtures),
        ("involution-principle rook transport", gm_rook),
        ("hit numbers", hit),
        ("negative and sanity checks", negative_suite),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!(
                "criterion {} [{name}]: PASS ({detail}) in {:.1?}",
                i + 1,
                start.elapsed()
            ),
            Err(e) => {
                failures += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {} [{name}]: FAIL: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
