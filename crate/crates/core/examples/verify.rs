//! Run every invariant suite on a small budget.
use rooklab::verify::{run, Budget};

fn main() -> rooklab::Result<()> {
    let budget = Budget {
        max_cells: 8,
        m_list: vec![1, 2, 3],
    };
    for report in run("all", &budget)? {
        let status = if report.passed() { "ok" } else { "FAIL" };
        println!("{status:4} {:14} {} cases", report.suite, report.cases);
        if let Some(c) = report.counterexample {
            println!("     {c}");
        }
    }
    Ok(())
}
