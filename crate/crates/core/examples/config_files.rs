//! Loading spaces and instances from JSON files and driving the same
//! dispatch the `fprect` binary uses.
//!
//!     cargo run --example config_files

use std::path::{Path, PathBuf};

use fprect::cli::{render, run, Command, Format, RunConfig};
use fprect::config::{load_instance, load_space};
use fprect::rational::rat;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The file samples [1/2, 1] every 1/32; a coarser step overrides it.
    let space = load_space(&data("main_space.json"), Some(&rat(1, 4)))?;
    println!("coarse space has {} points", space.len());
    let inst = load_instance(&data("cho_instance.json"), None)?;
    println!("loaded {} instance on {} points", inst.variant, inst.space.len());

    let mut config = RunConfig::new(Command::Solve {
        instance: data("periodic_instance.json"),
        from: None,
        max_iter: None,
    });
    let outcome = run(&config);
    print!("{}", render(&outcome.report, Format::Text));
    println!("exit status {}", outcome.exit);

    config.command = Command::CheckContraction {
        instance: data("cho_instance.json"),
    };
    config.format = Format::Json;
    let outcome = run(&config);
    let json = render(&outcome.report, Format::Json);
    println!("{} bytes of JSON, exit status {}", json.len(), outcome.exit);
    Ok(())
}
