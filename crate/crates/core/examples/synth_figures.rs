//! Writes the synthetic test figures as PNG files.
//!
//! ```text
//! cargo run -p ketsonic --example synth_figures -- out/
//! ```

use std::path::PathBuf;

use ketsonic::filter::save_png;
use ketsonic::synth;

fn main() -> ketsonic::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir)?;
    let figures = [
        ("circle", synth::circle_outline(512, 0.3, 6.0)),
        ("dots", synth::dotted_row(512, 6, 0.5, 5.0)),
        ("arch", synth::arch(512, 2.4, 8.0)),
        ("zigzag", synth::zigzag(512, 4, 200.0, 6.0)),
        (
            "triangle",
            synth::triangle(512, [(0.5, 0.15), (0.85, 0.8), (0.15, 0.8)]),
        ),
        ("fish", synth::fish(512)),
    ];
    for (name, img) in &figures {
        let path = dir.join(format!("{name}.png"));
        save_png(img, &path)?;
        println!("{}", path.display());
    }
    Ok(())
}
