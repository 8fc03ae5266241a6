use crate::transform::SoundDecomposition;

/// MIDI channel of envelope events.
pub const ENVELOPE_CHANNEL: u8 = 0;
/// MIDI channel of pattern events.
pub const PATTERN_CHANNEL: u8 = 1;

/// File-level MIDI settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MidiDocument {
    /// Ticks per quarter note; must be below `0x8000`.
    pub ppq: u16,
    /// General MIDI program for both channels.
    pub program: u8,
    /// Microseconds per quarter note.
    pub tempo_us: u32,
}

impl Default for MidiDocument {
    fn default() -> Self {
        Self {
            ppq: 480,
            program: 0,
            tempo_us: 500_000,
        }
    }
}

/// Appends `value` as a variable-length quantity (at most 4 bytes).
pub fn write_varlen(out: &mut Vec<u8>, value: u32) {
    let value = value.min(0x0FFF_FFFF);
    let mut groups = [0u8; 4];
    let mut n = 0;
    let mut v = value;
    loop {
        groups[n] = (v & 0x7F) as u8;
        n += 1;
        v >>= 7;
        if v == 0 {
            break;
        }
    }
    for i in (0..n).rev() {
        out.push(if i > 0 { groups[i] | 0x80 } else { groups[i] });
    }
}

fn chunk(out: &mut Vec<u8>, id: &[u8; 4], body: &[u8]) {
    out.extend_from_slice(id);
    out.extend_from_slice(&(body.len() as u32).to_be_bytes());
    out.extend_from_slice(body);
}

/// Encodes a sound decomposition as an SMF format 1 file.
///
/// Track 0 carries the tempo, track 1 the notes: envelope events on
/// channel 0, pattern events on channel 1. Messages at the same tick are
/// ordered note-offs first, then by pitch. Every note lasts at least one
/// tick.
pub fn to_midi(s: &SoundDecomposition, doc: &MidiDocument) -> Vec<u8> {
    let ppq = doc.ppq.clamp(1, 0x7FFF);
    let mut out = Vec::new();

    let mut header = Vec::with_capacity(6);
    header.extend_from_slice(&1u16.to_be_bytes());
    header.extend_from_slice(&2u16.to_be_bytes());
    header.extend_from_slice(&ppq.to_be_bytes());
    chunk(&mut out, b"MThd", &header);

    let tempo = doc.tempo_us.min(0xFF_FFFF).to_be_bytes();
    let conductor = [
        0x00, 0xFF, 0x51, 0x03, tempo[1], tempo[2], tempo[3], 0x00, 0xFF, 0x2F, 0x00,
    ];
    chunk(&mut out, b"MTrk", &conductor);

    let to_tick = |beats: f64| {
        (beats * f64::from(ppq))
            .round()
            .clamp(0.0, f64::from(0x0FFF_FFFF_u32)) as u32
    };
    // (tick, is_on, pitch, channel, velocity)
    let mut messages: Vec<(u32, bool, u8, u8, u8)> = Vec::with_capacity(2 * s.events.len());
    for e in &s.events {
        let channel = if s.is_envelope(e) {
            ENVELOPE_CHANNEL
        } else {
            PATTERN_CHANNEL
        };
        let pitch = e.pitch.min(127);
        let on = to_tick(e.onset);
        let off = to_tick(e.onset + e.duration).max(on + 1);
        messages.push((on, true, pitch, channel, e.velocity.clamp(1, 127)));
        messages.push((off, false, pitch, channel, 0));
    }
    messages.sort_by_key(|&(tick, is_on, pitch, channel, _)| (tick, is_on, pitch, channel));

    let program = doc.program.min(127);
    let mut track = vec![
        0x00,
        0xC0 | ENVELOPE_CHANNEL,
        program,
        0x00,
        0xC0 | PATTERN_CHANNEL,
        program,
    ];
    let mut last = 0;
    for (tick, is_on, pitch, channel, velocity) in messages {
        write_varlen(&mut track, tick - last);
        last = tick;
        let status = if is_on { 0x90 } else { 0x80 };
        track.extend_from_slice(&[status | channel, pitch, velocity]);
    }
    track.extend_from_slice(&[0x00, 0xFF, 0x2F, 0x00]);
    chunk(&mut out, b"MTrk", &track);
    out
}
