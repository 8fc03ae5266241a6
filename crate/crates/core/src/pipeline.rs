//! Image in, MIDI out.

use crate::error::Result;
use crate::filter::{decompose, DiscretizationLevel};
use crate::kets::VisualDecomposition;
use crate::raster::ImageRaster;
use crate::score::{fit_to_instrument, to_midi, Instrument, MidiDocument};
use crate::transform::{transform, MappingConfig, SoundDecomposition};

/// Everything needed to sonify one image.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SonifyConfig {
    pub level: DiscretizationLevel,
    pub mapping: MappingConfig,
    pub midi: MidiDocument,
    /// When set, notes are folded into the instrument's range and its
    /// program is used.
    pub instrument: Option<Instrument>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sonification {
    pub decomposition: VisualDecomposition,
    pub sound: SoundDecomposition,
    pub midi: Vec<u8>,
}

/// Sonifies a decoded image.
pub fn sonify(img: &ImageRaster, cfg: &SonifyConfig) -> Result<Sonification> {
    cfg.mapping.validate()?;
    let decomposition = decompose(img, cfg.level)?;
    let mut sound = transform(&decomposition, &cfg.mapping);
    let mut midi_doc = cfg.midi;
    if let Some(instrument) = &cfg.instrument {
        fit_to_instrument(
            &mut sound,
            instrument,
            cfg.mapping.pitch_lo,
            cfg.mapping.pitch_hi,
        );
        midi_doc.program = instrument.program;
    }
    let midi = to_midi(&sound, &midi_doc);
    Ok(Sonification {
        decomposition,
        sound,
        midi,
    })
}
