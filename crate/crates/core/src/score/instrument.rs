use crate::transform::{transpose_to_range, SoundDecomposition};

/// A General MIDI instrument and its comfortable written range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Instrument {
    pub name: &'static str,
    pub program: u8,
    pub lo: u8,
    pub hi: u8,
}

pub const INSTRUMENTS: [Instrument; 8] = [
    Instrument {
        name: "piano",
        program: 0,
        lo: 21,
        hi: 108,
    },
    Instrument {
        name: "violin",
        program: 40,
        lo: 55,
        hi: 103,
    },
    Instrument {
        name: "flute",
        program: 73,
        lo: 60,
        hi: 96,
    },
    Instrument {
        name: "cello",
        program: 42,
        lo: 36,
        hi: 76,
    },
    Instrument {
        name: "clarinet",
        program: 71,
        lo: 50,
        hi: 94,
    },
    Instrument {
        name: "trumpet",
        program: 56,
        lo: 54,
        hi: 86,
    },
    Instrument {
        name: "guitar",
        program: 24,
        lo: 40,
        hi: 88,
    },
    Instrument {
        name: "marimba",
        program: 12,
        lo: 45,
        hi: 96,
    },
];

impl Instrument {
    pub fn by_name(name: &str) -> Option<Instrument> {
        INSTRUMENTS
            .iter()
            .copied()
            .find(|i| i.name.eq_ignore_ascii_case(name))
    }

    pub fn by_program(program: u8) -> Option<Instrument> {
        INSTRUMENTS.iter().copied().find(|i| i.program == program)
    }

    /// Overlap of the instrument range with `[lo, hi]`, or `[lo, hi]` if
    /// they are disjoint.
    pub fn playable_range(&self, lo: u8, hi: u8) -> (u8, u8) {
        let (a, b) = (self.lo.max(lo), self.hi.min(hi));
        if a <= b {
            (a, b)
        } else {
            (lo, hi)
        }
    }
}

/// Octave-folds every event into the playable range of `instrument`
/// within `[lo, hi]`.
pub fn fit_to_instrument(s: &mut SoundDecomposition, instrument: &Instrument, lo: u8, hi: u8) {
    let (a, b) = instrument.playable_range(lo, hi);
    for e in &mut s.events {
        e.pitch = transpose_to_range(i32::from(e.pitch), a, b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup() {
        assert_eq!(Instrument::by_name("Flute").unwrap().program, 73);
        assert_eq!(Instrument::by_program(42).unwrap().name, "cello");
        assert!(Instrument::by_name("kazoo").is_none());
    }

    #[test]
    fn ranges() {
        let flute = Instrument::by_name("flute").unwrap();
        assert_eq!(flute.playable_range(48, 84), (60, 84));
        assert_eq!(flute.playable_range(20, 40), (20, 40));
        for i in INSTRUMENTS {
            assert!(i.lo < i.hi && i.hi <= 127 && i.program <= 127);
        }
    }
}
