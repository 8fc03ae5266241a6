//! Output formats: Standard MIDI files, SVG drawings and JSON documents.

mod document;
mod instrument;
mod midi;
mod svg;

pub use document::{
    deserialize_decomposition, deserialize_sound, serialize_decomposition, serialize_sound,
    DecompositionDocument, EventDocument, SoundDocument, TermDocument, FORMAT_VERSION,
};
pub use instrument::{fit_to_instrument, Instrument, INSTRUMENTS};
pub use midi::{to_midi, write_varlen, MidiDocument, ENVELOPE_CHANNEL, PATTERN_CHANNEL};
pub use svg::to_svg;

pub use crate::transform::transpose_to_range;
