//! Smallest b-rectangular coefficient of the tabulated coefficient-three
//! space, and of a few random spaces.
//!
//!     cargo run --example minimal_coefficient

use fprect::fixtures::ex2_space;
use fprect::rational::{label_for, rat};
use fprect::spaces::{generate_random_space, minimal_b_rect_s, RandomProfile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A coarse step keeps the quartic scan quick.
    let space = ex2_space(&rat(1, 4));
    let m = minimal_b_rect_s(&space)?;
    println!(
        "tabulated space ({} points): s* = {}, attained on {}",
        space.len(),
        label_for(&m.s),
        m.argmax.join(" -> ")
    );

    for seed in 0..5 {
        let space = generate_random_space(6, seed, RandomProfile::Generic);
        let m = minimal_b_rect_s(&space)?;
        println!(
            "random seed {seed}: s* = {} ({} ordered maximizers)",
            label_for(&m.s),
            m.argmax_count
        );
    }
    Ok(())
}
