//! Hit numbers over the wreath product and a hit-set transport.
use rooklab::gm_engine::GmOptions;
use rooklab::hit::{hit_numbers, hit_set, wreath_to_placement, GmHitTransport, WreathElement};
use rooklab::{Cell, FerrersBoard};

fn cells(list: &[Cell]) -> String {
    list.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn main() -> rooklab::Result<()> {
    let (m, n) = (2, 5);
    let w = WreathElement::new(vec![1, 2, 1], vec![1, 3, 2], m)?;
    println!("{w:?} ->\n{}", wreath_to_placement(&w, m)?.render());

    let a: FerrersBoard = "1,1,1,6,7".parse()?;
    let b: FerrersBoard = "3,5,8".parse()?;
    println!("h({a}) = {:?}", hit_numbers(&a, m, n)?);
    println!("h({b}) = {:?}", hit_numbers(&b, m, n)?);

    let k = 2;
    let engine = GmHitTransport::new(&a, &b, m, n, k)?;
    let mut runs = Vec::new();
    for p in hit_set(&a, m, n, k)? {
        let (image, trace) = engine.transport(&p, GmOptions::default())?;
        runs.push((trace.loops, p, image));
    }
    runs.sort_by_key(|r| std::cmp::Reverse(r.0));
    for (loops, p, image) in runs.iter().take(3) {
        println!("{} -> {} ({loops} loops)", cells(p.rooks()), cells(image.rooks()));
    }
    Ok(())
}
