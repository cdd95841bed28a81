//! Monotonicity of x -> F(psi(x), phi(x)) for two tripled choices.
//!
//!     cargo run --example monotone_tripled

use fprect::fixtures::{monotone_tripled, non_monotone_tripled};
use fprect::functions::{check_monotone_tripled, grid_1d};
use fprect::rational::{int, label_for, rat, ten_pow_neg};
use fprect::spaces::ScanOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = grid_1d(&int(0), &int(4), &rat(1, 16));
    let tol = ten_pow_neg(20);
    for (name, t) in [
        ("sqrt weight", monotone_tripled()),
        ("square weight", non_monotone_tripled()),
    ] {
        let r = check_monotone_tripled(&t, &grid, &tol, ScanOptions::default())?;
        print!("{name}: monotone {}", r.verdict);
        if let Some(w) = r.witnesses.first() {
            let args: Vec<_> = w.args.iter().map(label_for).collect();
            print!(
                ", first drop between {} ({} then {})",
                args.join(" and "),
                w.values[0],
                w.values[1]
            );
        }
        println!();
    }
    Ok(())
}
