//! The xi statistic and its generating function over hit sets.
use rooklab::hit::{q_hit_polynomial, xi_statistic, FullPlacement};
use rooklab::{Cell, FerrersBoard};

fn main() -> rooklab::Result<()> {
    let (m, n) = (3, 4);
    let board: FerrersBoard = "2,4,6,10".parse()?;
    let rooks = [(1, 11), (2, 3), (3, 8), (4, 5)].map(|(c, r)| Cell::new(c, r));
    let p = FullPlacement::new(n, m, &rooks)?;
    println!("{}xi = {}", p.render(), xi_statistic(&board, m, n, &p)?);

    let small: FerrersBoard = "1,2,4".parse()?;
    for k in 0..=3 {
        println!("k = {k}: {}", q_hit_polynomial(&small, 2, 3, k)?);
    }
    Ok(())
}
