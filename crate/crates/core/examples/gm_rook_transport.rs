//! Involution-principle transport between equivalent singleton boards,
//! printing every configuration visited.
use rooklab::gm_engine::{GmOptions, Visit};
use rooklab::gm_rook::{rook_count_formula, GmRookTransport};
use rooklab::placement::enumerate_placements;
use rooklab::FerrersBoard;

fn main() -> rooklab::Result<()> {
    let (m, n) = (2, 4);
    let from: FerrersBoard = "0,0,2,3".parse()?;
    let to: FerrersBoard = "0,0,1,4".parse()?;
    for k in 0..n {
        println!("r_{k} = {} (closed form)", rook_count_formula(&from, m, n, k)?);
    }

    let engine = GmRookTransport::new(&from, &to, m, n, 2)?;
    let longest = enumerate_placements(&from, m, 2)
        .into_iter()
        .map(|p| {
            engine.transport(
                p.cells(),
                GmOptions {
                    verify: true,
                    cap: None,
                },
            )
        })
        .collect::<rooklab::Result<Vec<_>>>()?
        .into_iter()
        .max_by_key(|(_, trace)| trace.loops)
        .expect("two-rook placements exist");

    let (image, trace) = longest;
    let shown: Vec<String> = image.iter().map(ToString::to_string).collect();
    println!("longest trace: {} loops, image {}", trace.loops, shown.join(" "));
    for visit in &trace.visits {
        let (side, c) = match visit {
            Visit::Source(c) => ("S ", c),
            Visit::Target(c) => ("S'", c),
        };
        println!("{side} sign {:?}\n{}", c.sign(), c.render());
    }
    Ok(())
}
