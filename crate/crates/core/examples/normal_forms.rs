//! Singleton boards, the l-operator and m-increasing representatives.
use rooklab::poly::are_equivalent;
use rooklab::FerrersBoard;

fn main() -> rooklab::Result<()> {
    let m = 2;
    let board: FerrersBoard = "1,1,1,6,7".parse()?;
    println!("board          {board}");
    println!("level counts   {:?}", board.level_counts(m));
    println!("singleton      {}", board.singleton_of(m));
    println!("l-operator     {}", board.l_operator(m));

    let (rep, script) = board.m_increasing_representative(m)?;
    println!("representative {rep}");
    for step in &script.steps {
        println!("  {step}");
    }

    let other: FerrersBoard = "3,5,8".parse()?;
    println!("{board} ~ {other}: {}", are_equivalent(&board, &other, m)?);
    Ok(())
}
