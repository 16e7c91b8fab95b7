//! Both sides of the factorization identities for one board.
use rooklab::poly::{default_n, level_product_side, rook_side, root_product_side};
use rooklab::FerrersBoard;

fn main() -> rooklab::Result<()> {
    let m = 2;
    for text in ["1,3,3,4", "0,0,2,3", "0,0,1,4"] {
        let board: FerrersBoard = text.parse()?;
        let n = default_n(&board, m);
        println!("board {board}, N = {n}");
        println!("  rook side      {}", rook_side(&board, m, n)?);
        println!("  level product  {}", level_product_side(&board, m, n)?);
        match root_product_side(&board, m, n) {
            Ok(p) => println!("  height product {p}"),
            Err(e) => println!("  height product: {e}"),
        }
    }
    Ok(())
}
