//! The contractive inequality on the worked example, pair by pair.
//!
//!     cargo run --example check_contraction

use fprect::contraction::{check_all, check_pair_by_label};
use fprect::fixtures::{main_default_step, main_instance};
use fprect::rational::rat;
use fprect::Value;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = main_instance(&main_default_step());

    for (x, y) in [("1/2", "1/2"), ("0", "1/2"), ("1/5", "1/16"), ("1", "3/4")] {
        let v = check_pair_by_label(&inst, x, y)?;
        println!(
            "({x}, {y}) -> ({}, {}): lhs {} <= rhs {} [M = {}] {}",
            v.tx, v.ty, v.lhs, v.rhs, v.m, v.holds
        );
    }

    // Right side as a function of M alone.
    for m in [rat(1, 20), rat(9, 80), rat(1, 1)] {
        println!("rhs at M = {m}: {}", inst.rhs_at(&Value::Exact(m.clone()))?);
    }

    let report = check_all(&inst)?;
    let worst = report.worst_pair.as_ref().expect("non-empty space");
    println!(
        "{} ordered pairs, {} failures, holds everywhere: {}; tightest ({}, {}) with margin {}",
        report.verdicts.len(),
        report.failures,
        report.global_holds,
        worst.x,
        worst.y,
        worst.margin
    );
    Ok(())
}
