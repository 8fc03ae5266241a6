#![allow(dead_code)]

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ketsonic::filter::save_png;
use ketsonic::kets::{KetPlacement, Term, VisualDecomposition, VisualKet};
use ketsonic::raster::ImageRaster;
use midly::{MidiMessage, Smf, TrackEventKind};
use rand::Rng;

pub fn ketsonic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ketsonic"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn write_png(dir: &Path, name: &str, img: &ImageRaster) -> PathBuf {
    let path = dir.join(name);
    save_png(img, &path).unwrap();
    path
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A note re-read from a MIDI file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Note {
    pub channel: u8,
    pub key: u8,
    pub on: u64,
    pub off: u64,
    pub velocity: u8,
}

/// Parses `bytes` with an independent reader, checking that the file is a
/// two-track format 1 SMF in which every note-on is matched by a later
/// note-off.
pub fn reparse_midi(bytes: &[u8]) -> Result<Vec<Note>, String> {
    let smf = Smf::parse(bytes).map_err(|e| e.to_string())?;
    if smf.header.format != midly::Format::Parallel || smf.tracks.len() != 2 {
        return Err(format!(
            "unexpected layout {:?} with {} tracks",
            smf.header.format,
            smf.tracks.len()
        ));
    }
    let mut open: Vec<(u8, u8, u64, u8)> = Vec::new();
    let mut notes = Vec::new();
    let mut tick = 0u64;
    for e in &smf.tracks[1] {
        tick += u64::from(e.delta.as_int());
        if let TrackEventKind::Midi { channel, message } = e.kind {
            let ch = channel.as_int();
            match message {
                MidiMessage::NoteOn { key, vel } if vel.as_int() > 0 => {
                    open.push((ch, key.as_int(), tick, vel.as_int()));
                }
                MidiMessage::NoteOn { .. } => return Err("note-on with velocity 0".into()),
                MidiMessage::NoteOff { key, .. } => {
                    let i = open
                        .iter()
                        .position(|o| o.0 == ch && o.1 == key.as_int())
                        .ok_or("note-off without note-on")?;
                    let (channel, key, on, velocity) = open.remove(i);
                    if tick <= on {
                        return Err(format!("note {key} ends at tick {tick} but starts at {on}"));
                    }
                    notes.push(Note {
                        channel,
                        key,
                        on,
                        off: tick,
                        velocity,
                    });
                }
                _ => {}
            }
        }
    }
    if !open.is_empty() {
        return Err(format!("{} unterminated notes", open.len()));
    }
    Ok(notes)
}

pub fn random_term(rng: &mut impl Rng) -> Term {
    let p = KetPlacement::new(
        rng.random_range(0.0..=1.0),
        rng.random_range(0.0..=1.0),
        rng.random_range(0.005..=1.0),
        rng.random_range(0.0..TAU),
        rng.random_range(0.001..=1.0),
    )
    .unwrap();
    let ket = match rng.random_range(0..3) {
        0 => VisualKet::Dot,
        1 => VisualKet::Segment,
        _ => VisualKet::Arc {
            sweep: rng.random_range(0.01..=TAU),
        },
    };
    Term::new(p, ket)
}

pub fn random_decomposition(rng: &mut impl Rng, max_terms: usize) -> VisualDecomposition {
    let n = rng.random_range(0..=max_terms);
    let terms: Vec<Term> = (0..n).map(|_| random_term(rng)).collect();
    let j = rng.random_range(0..=n);
    VisualDecomposition::new(terms, j).unwrap()
}
