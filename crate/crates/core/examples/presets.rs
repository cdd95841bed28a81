//! Corollary forms of the inequality built from presets, checked on the
//! worked example space with different self-maps.
//!
//!     cargo run --example presets

use fprect::contraction::{check_all, make_preset, MapPiece, Preset, SelfMap};
use fprect::fixtures::{main_control, main_default_step, main_space, main_weight};
use fprect::rational::{int, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let to_zero = SelfMap::Constant(int(0));
    let halfway = SelfMap::Pieces {
        pieces: vec![MapPiece {
            lo: rat(1, 2),
            hi: int(1),
            to: rat(1, 16),
        }],
        else_to: Some(int(0)),
    };
    let presets = [
        Preset::KMax { k: rat(1, 2) },
        Preset::AlphaSum { alpha: rat(2, 5) },
        Preset::LambdaSum { lambda: rat(3, 10) },
        Preset::Weighted {
            k: rat(9, 10),
            betas: [rat(1, 3), rat(1, 3), rat(1, 3)],
        },
        Preset::Log { a: int(2) },
        Preset::Ratio,
        Preset::MdkDiff,
    ];
    for preset in presets {
        let name = preset.name();
        let template = make_preset(preset)?;
        for (label, map) in [("T = 0", &to_zero), ("worked T", &halfway)] {
            let inst = template.instantiate(
                main_space(&main_default_step()),
                map.clone(),
                main_weight(),
                main_control(),
                int(3),
            )?;
            let r = check_all(&inst)?;
            println!(
                "{name:<10} {label:<8} F = {:<20} holds: {:<5} failures: {}",
                template.f.to_string(),
                r.global_holds,
                r.failures
            );
        }
    }

    // Out-of-range parameters are rejected up front.
    let err = make_preset(Preset::KMax { k: int(2) }).unwrap_err();
    println!("K_MAX with k = 2: {err}");
    Ok(())
}
