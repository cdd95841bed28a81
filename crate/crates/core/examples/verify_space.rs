//! Axiom checks on the worked example space: the triangle and rectangular
//! inequalities fail, the b-rectangular inequality with s = 3 holds.
//!
//!     cargo run --example verify_space

use fprect::fixtures::{main_default_step, main_space};
use fprect::rational::{int, label_for};
use fprect::spaces::{check_b_rectangular, check_b_triangle, check_rectangular, check_triangle, ScanOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = main_space(&main_default_step());
    println!("{} points", space.len());

    let opts = ScanOptions::default();
    let three = int(3);
    let reports = [
        check_triangle(&space, opts),
        check_b_triangle(&space, &three, opts)?,
        check_rectangular(&space, opts),
        check_b_rectangular(&space, &three, opts)?,
    ];
    for r in &reports {
        println!(
            "{:<14} s = {:<2} holds: {:<5} violations: {}",
            r.axiom.to_string(),
            label_for(&r.parameter_s),
            r.verdict,
            r.violations
        );
        if let Some(w) = r.witnesses.first() {
            println!(
                "    e.g. {}: {} > {}",
                w.path.join(" -> "),
                label_for(&w.lhs),
                label_for(&w.rhs)
            );
        }
    }

    // The witness that breaks the triangle inequality by a wide margin.
    let tri = check_triangle(&space, ScanOptions::all_witnesses());
    let w = tri.witness(&["1/5", "1/16", "1/9"]).expect("listed violation");
    println!(
        "d(1/5, 1/9) = {} but d(1/5, 1/16) + d(1/16, 1/9) = {}",
        label_for(&w.lhs),
        label_for(&w.rhs)
    );
    Ok(())
}
