//! Carry a placement between two equivalent boards, step by step.
use rooklab::fs_bijection::{equivalence_script, transport};
use rooklab::placement::inv;
use rooklab::{Cell, FerrersBoard};

fn main() -> rooklab::Result<()> {
    let m = 2;
    let from: FerrersBoard = "1,1,1,6,7".parse()?;
    let to: FerrersBoard = "3,5,8".parse()?;
    let rooks = vec![Cell::new(1, 1), Cell::new(4, 6), Cell::new(5, 3)];

    let mut current = rooks.clone();
    println!("{}", from.render(m, &current));
    for step in &equivalence_script(&from, &to, m)?.steps {
        current = step.apply(m, &current)?;
        println!("{step}\n{}", step.target.render(m, &current));
    }

    let image = transport(&from, &to, m, &rooks)?;
    println!("inv before {}, after {}", inv(&from, m, &rooks), image.inv());
    Ok(())
}
