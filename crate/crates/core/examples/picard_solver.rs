//! Picard iteration on the worked example, with the diagnostics that back
//! the convergence argument.
//!
//!     cargo run --example picard_solver

use num_traits::Zero;

use fprect::fixtures::{main_default_step, main_instance};
use fprect::rational::label_for;
use fprect::solver::{check_vanishing, default_max_iter, picard_iterate, uniqueness_scan, verify_decreasing};
use fprect::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = main_instance(&main_default_step());
    let tol = Rational::zero();
    let r = picard_iterate(&inst, "1", default_max_iter(&inst), &tol)?;
    println!(
        "status {:?}, fixed point {:?} after {} steps",
        r.status, r.point, r.iterations
    );

    let t = &r.trace;
    println!(
        "{:>2} {:>6} {:>8} {:>8} {:>6} {:>10}",
        "n", "x_n", "step", "skip", "phi", "augmented"
    );
    for (n, x) in t.orbit.iter().enumerate() {
        let cell = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        println!(
            "{n:>2} {x:>6} {:>8} {:>8} {:>6} {:>10}",
            cell(t.step_dist.get(n).map(label_for)),
            cell(t.skip_dist.get(n).map(label_for)),
            cell(t.weights.get(n).map(ToString::to_string)),
            cell(t.augmented.get(n).map(ToString::to_string)),
        );
    }
    println!("augmented steps nonincreasing: {}", verify_decreasing(t).holds);
    println!("all sequences vanish: {}", check_vanishing(t, &tol).all_vanish());
    println!(
        "fixed points over the whole space: {:?}",
        uniqueness_scan(&inst, &tol).fixed_points
    );
    Ok(())
}
