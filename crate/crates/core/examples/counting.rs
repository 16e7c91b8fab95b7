//! Rook numbers, placements and the q-rook polynomial of a small board.
use rooklab::placement::{enumerate_placements, q_rook_polynomial, rook_numbers};
use rooklab::FerrersBoard;

fn main() -> rooklab::Result<()> {
    let board: FerrersBoard = "1,3,3,4".parse()?;
    let m = 2;
    println!("board {board}, m = {m}");
    println!("rook numbers: {:?}", rook_numbers(&board, m));

    for p in enumerate_placements(&board, m, 2).iter().take(3) {
        println!("inv = {}\n{}", p.inv(), p.render());
    }
    for k in 0..=2 {
        println!("k = {k}: {}", q_rook_polynomial(&board, m, k));
    }
    Ok(())
}
