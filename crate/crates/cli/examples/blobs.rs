//! Writes a labeled Gaussian-blob feature file.
//!
//! `cargo run --example blobs -- OUT [CLASSES] [PER_CLASS] [SEED]`

use std::path::PathBuf;

use prd_cli::featfile;
use prd_cli::synthetic::{blobs, BlobSpec};

fn main() -> std::io::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(out) = args.first().map(PathBuf::from) else {
        eprintln!("usage: blobs OUT [CLASSES] [PER_CLASS] [SEED]");
        std::process::exit(2);
    };
    let arg = |i: usize, default: usize| {
        args.get(i)
            .map_or(default, |s| s.parse().expect("integer argument"))
    };
    let defaults = BlobSpec::default();
    let spec = BlobSpec {
        classes: arg(1, defaults.classes),
        per_class: arg(2, defaults.per_class),
        dim: defaults.dim.max(arg(1, defaults.classes)),
        seed: arg(3, 0) as u64,
        ..defaults
    };
    featfile::write(&out, &blobs(&spec))
}
