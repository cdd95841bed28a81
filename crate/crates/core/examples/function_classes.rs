//! Property checks for the function classes: altering distances, weight
//! functions, the sixteen C-class entries and semicontinuity.
//!
//!     cargo run --example function_classes

use num_traits::Zero;

use fprect::fixtures::{cclass_catalog, main_control, main_psi, main_weight};
use fprect::functions::{
    default_cclass_tolerance, grid_1d, grid_2d, verify_altering, verify_cclass, verify_lsc, verify_phi_u,
    SemicontinuityOptions,
};
use fprect::rational::{int, rat};
use fprect::spaces::ScanOptions;
use fprect::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = ScanOptions::default();
    let line = grid_1d(&int(0), &int(10), &rat(1, 8));

    let psi = verify_altering(&main_psi(), &line, opts)?;
    println!("psi = {}: altering {}", main_psi(), psi.verdict);
    let w = verify_phi_u(&main_weight(), &line, opts)?;
    println!("weight = {}: admissible {}", main_weight(), w.verdict);
    let lsc = verify_lsc(&main_control(), &line, &SemicontinuityOptions::default(), opts)?;
    println!(
        "control = {}: lower semicontinuous {} (sampled)",
        main_control(),
        lsc.verdict
    );

    let plane = grid_2d(&int(10), &rat(1, 4));
    for f in cclass_catalog() {
        let r = verify_cclass(&f, &plane, &default_cclass_tolerance(&f), &Rational::zero(), opts)?;
        println!(
            "{:<32} C-class {:<5} F = s at {} samples",
            f.to_string(),
            r.verdict,
            r.equality_locus.len()
        );
    }
    Ok(())
}
