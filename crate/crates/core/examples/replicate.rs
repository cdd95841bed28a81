//! Re-runs the built-in cases and lists any mismatching field.
//!
//!     cargo run --example replicate

use fprect::cli::{replicate, CaseId};

fn main() {
    let mut all = true;
    for case in CaseId::ALL {
        let r = replicate(case);
        all &= r.passed;
        println!(
            "{case:<22} {} ({} fields)",
            if r.passed { "ok" } else { "MISMATCH" },
            r.checks.len()
        );
        for c in r.checks.iter().filter(|c| !c.ok) {
            println!("    {}: expected {}, got {}", c.field, c.expected, c.actual);
        }
    }
    std::process::exit(if all { 0 } else { 1 });
}
