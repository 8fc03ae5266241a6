//! The transform: a diagonal, semilinear map from visual terms to timed
//! note events.
//!
//! Every ket kind has its own sound figure (dot → staccato note, segment →
//! staccatissimo run or cluster, arc → legato rise-and-fall), and each
//! placement is mapped onto the figure's coefficients: `x` → onset,
//! `1 - y` → pitch, `scale` → time span, `thickness` → velocity, angle →
//! interval size, path direction → pitch progression.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::cosine_similarity;
use crate::kets::{KetKind, KetPlacement, VisualDecomposition, VisualKet};

/// Segments closer than this to vertical (radians) sound as a cluster.
pub const CLUSTER_ANGLE: f64 = 0.1;

/// Segments longer than this fraction of the diagonal play a harsher
/// staccatissimo.
pub const LONG_SEGMENT_SCALE: f64 = 0.25;

/// Onset bins of the sound feature vector.
pub const ONSET_BINS: usize = 8;

/// Upper edges of the lower three pitch bands of the sound feature vector.
pub const PITCH_BAND_EDGES: [u8; 3] = [57, 66, 75];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Articulation {
    Legato,
    Staccato,
    Staccatissimo,
}

impl Articulation {
    /// The sound figure paired with each ket kind.
    pub fn for_kind(kind: KetKind) -> Self {
        match kind {
            KetKind::Dot => Articulation::Staccato,
            KetKind::Segment => Articulation::Staccatissimo,
            KetKind::Arc => Articulation::Legato,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Articulation::Legato => 0,
            Articulation::Staccato => 1,
            Articulation::Staccatissimo => 2,
        }
    }

    /// Fraction of the inter-onset gap a note sounds for.
    pub fn gate(self, scale: f64) -> f64 {
        match self {
            Articulation::Legato => 1.0,
            Articulation::Staccato => 0.5,
            Articulation::Staccatissimo if scale > LONG_SEGMENT_SCALE => 0.15,
            Articulation::Staccatissimo => 0.25,
        }
    }
}

/// Pitch collection notes are snapped to (tonic C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScaleSnap {
    #[default]
    Chromatic,
    Major,
    Minor,
}

impl ScaleSnap {
    fn pitch_classes(self) -> &'static [i32] {
        match self {
            ScaleSnap::Chromatic => &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
            ScaleSnap::Major => &[0, 2, 4, 5, 7, 9, 11],
            ScaleSnap::Minor => &[0, 2, 3, 5, 7, 8, 10],
        }
    }

    /// Nearest scale tone; ties resolve downward.
    pub fn snap(self, pitch: i32) -> i32 {
        let classes = self.pitch_classes();
        let in_scale = |p: i32| classes.contains(&p.rem_euclid(12));
        if in_scale(pitch) {
            return pitch;
        }
        for d in 1..12 {
            if in_scale(pitch - d) {
                return pitch - d;
            }
            if in_scale(pitch + d) {
                return pitch + d;
            }
        }
        pitch
    }
}

/// Inputs of the mapping from placements to note coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MappingConfig {
    pub total_beats: f64,
    pub pitch_lo: u8,
    pub pitch_hi: u8,
    pub enable_progression: bool,
    pub enable_interval: bool,
    pub enable_dynamics: bool,
    pub enable_pauses: bool,
    pub notes_per_unit_scale: u32,
    pub scale_snap: ScaleSnap,
    pub interval_max: u8,
    /// Thickness (fraction of the diagonal) that maps to full velocity.
    /// At 1.0 velocity is `1 + round(126 · thickness)`.
    pub thickness_ref: f64,
}

impl Default for MappingConfig {
    fn default() -> Self {
        Self {
            total_beats: 16.0,
            pitch_lo: 48,
            pitch_hi: 84,
            enable_progression: true,
            enable_interval: true,
            enable_dynamics: true,
            enable_pauses: true,
            notes_per_unit_scale: 8,
            scale_snap: ScaleSnap::Chromatic,
            interval_max: 12,
            thickness_ref: 1.0,
        }
    }
}

impl MappingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.total_beats.is_finite() && self.total_beats > 0.0) {
            return Err(Error::InvalidInput(format!(
                "total_beats must be positive, got {}",
                self.total_beats
            )));
        }
        if self.pitch_hi > 127 || self.pitch_lo >= self.pitch_hi {
            return Err(Error::InvalidInput(format!(
                "pitch range must satisfy lo < hi <= 127, got {}:{}",
                self.pitch_lo, self.pitch_hi
            )));
        }
        if self.notes_per_unit_scale == 0 {
            return Err(Error::InvalidInput(
                "notes_per_unit_scale must be at least 1".into(),
            ));
        }
        if !(self.thickness_ref > 0.0 && self.thickness_ref <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "thickness_ref must lie in (0, 1], got {}",
                self.thickness_ref
            )));
        }
        Ok(())
    }
}

/// One timed note.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SoundEvent {
    /// Beats from the start.
    pub onset: f64,
    /// Sounding length in beats, after the articulation gate.
    pub duration: f64,
    pub pitch: u8,
    pub velocity: u8,
    pub articulation: Articulation,
    /// Index of the visual term that produced this event.
    pub source_term: usize,
}

/// Ordered note events; events of the first `envelope_count` source terms
/// form the envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct SoundDecomposition {
    pub events: Vec<SoundEvent>,
    pub envelope_count: usize,
    pub total_beats: f64,
}

impl SoundDecomposition {
    /// Silence of the given length.
    pub fn silence(total_beats: f64) -> Self {
        Self {
            events: Vec::new(),
            envelope_count: 0,
            total_beats,
        }
    }

    pub fn is_envelope(&self, e: &SoundEvent) -> bool {
        e.source_term < self.envelope_count
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }
}

/// Rounds half away from zero; odd, so symmetric offsets stay symmetric.
fn round_half_away(v: f64) -> i32 {
    v.round() as i32
}

/// Octave-folds `pitch` into `[lo, hi]`, clamping to the nearer bound when
/// the range is too narrow to hold any octave of it.
pub fn transpose_to_range(pitch: i32, lo: u8, hi: u8) -> u8 {
    let (lo, hi) = (i32::from(lo), i32::from(hi));
    let mut p = pitch;
    if p > hi {
        p -= 12 * ((p - hi + 11) / 12);
    } else if p < lo {
        p += 12 * ((lo - p + 11) / 12);
    }
    if p < lo || p > hi {
        // Neither octave neighbour fits: `p` overshot past one bound.
        let (below, above) = if p < lo { (p, p + 12) } else { (p - 12, p) };
        p = if lo - below <= above - hi { lo } else { hi };
    }
    p.clamp(0, 127) as u8
}

fn note_count(scale: f64, cfg: &MappingConfig, min: usize) -> usize {
    let n = (f64::from(cfg.notes_per_unit_scale) * scale * 4.0).round() as usize;
    n.max(min)
}

fn angle_from_horizontal(rotation: f64) -> f64 {
    rotation.cos().abs().min(1.0).acos()
}

fn interval_step(rotation: f64, cfg: &MappingConfig) -> i32 {
    if !cfg.enable_interval {
        return 1;
    }
    let frac = angle_from_horizontal(rotation) / FRAC_PI_2;
    round_half_away(f64::from(cfg.interval_max) * frac).max(1)
}

fn is_near_vertical(rotation: f64) -> bool {
    (rotation - FRAC_PI_2).abs() < CLUSTER_ANGLE
        || (rotation - 3.0 * FRAC_PI_2).abs() < CLUSTER_ANGLE
}

/// Expands one visual term into its sound figure. `source_term` of the
/// returned events is 0; [`transform`] assigns the real index.
pub fn expand_term(
    placement: &KetPlacement,
    ket: &VisualKet,
    cfg: &MappingConfig,
) -> Vec<SoundEvent> {
    let total = cfg.total_beats;
    let span = placement.scale * total;
    let start = (placement.x * total - span / 2.0).clamp(0.0, (total - span).max(0.0));
    let articulation = Articulation::for_kind(ket.kind());
    let gate = articulation.gate(placement.scale);
    let velocity = if cfg.enable_dynamics {
        let t = (placement.thickness / cfg.thickness_ref).min(1.0);
        1 + (126.0 * t).round() as u8
    } else {
        64
    };
    let base =
        f64::from(cfg.pitch_lo) + (1.0 - placement.y) * f64::from(cfg.pitch_hi - cfg.pitch_lo);
    let pitch = |offset: i32| {
        let raw = cfg.scale_snap.snap(round_half_away(base) + offset);
        transpose_to_range(raw, cfg.pitch_lo, cfg.pitch_hi)
    };
    let step = interval_step(placement.rotation, cfg);

    let (offsets, cluster): (Vec<i32>, bool) = match ket {
        VisualKet::Dot => (vec![0], false),
        VisualKet::Segment => {
            let n = note_count(placement.scale, cfg, 2);
            let ascending = !cfg.enable_progression || placement.rotation.sin() < 0.0;
            let dir = if ascending { 1.0 } else { -1.0 };
            let offsets = (0..n)
                .map(|i| {
                    let centred = (2.0 * i as f64 - (n - 1) as f64) / 2.0;
                    round_half_away(f64::from(step) * dir * centred)
                })
                .collect();
            (offsets, is_near_vertical(placement.rotation))
        }
        VisualKet::Arc { .. } => {
            let n = note_count(placement.scale, cfg, 3);
            (
                (0..n).map(|i| step * i.min(n - 1 - i) as i32).collect(),
                false,
            )
        }
    };

    let n = offsets.len();
    let gap = span / n as f64;
    offsets
        .into_iter()
        .enumerate()
        .map(|(i, off)| {
            let (onset, slot) = if cluster {
                (start, span)
            } else {
                (start + i as f64 * gap, gap)
            };
            let duration = (slot * gate).min(total - onset).max(f64::MIN_POSITIVE);
            SoundEvent {
                onset,
                duration,
                pitch: pitch(off),
                velocity,
                articulation,
                source_term: 0,
            }
        })
        .collect()
}

/// Applies the transform term by term.
///
/// With pauses enabled, horizontal gaps between figures become rests.
/// With pauses disabled, figures are shifted earlier so each starts no
/// later than the previous one ends; this is the only step that looks at
/// more than one term.
pub fn transform(d: &VisualDecomposition, cfg: &MappingConfig) -> SoundDecomposition {
    let mut figures: Vec<Vec<SoundEvent>> = d
        .terms()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let mut events = expand_term(&t.placement, &t.ket, cfg);
            for e in &mut events {
                e.source_term = i;
            }
            events
        })
        .collect();
    if !cfg.enable_pauses {
        close_gaps(&mut figures);
    }
    SoundDecomposition {
        events: figures.into_iter().flatten().collect(),
        envelope_count: d.envelope_count(),
        total_beats: cfg.total_beats,
    }
}

fn close_gaps(figures: &mut [Vec<SoundEvent>]) {
    let span = |f: &[SoundEvent]| {
        let s = f.iter().map(|e| e.onset).fold(f64::INFINITY, f64::min);
        let e = f.iter().map(|e| e.onset + e.duration).fold(0.0, f64::max);
        (s, e)
    };
    let mut order: Vec<usize> = (0..figures.len())
        .filter(|&i| !figures[i].is_empty())
        .collect();
    order.sort_by(|&a, &b| {
        span(&figures[a])
            .0
            .total_cmp(&span(&figures[b]).0)
            .then(a.cmp(&b))
    });
    let mut cursor = 0.0f64;
    for i in order {
        let (s, e) = span(&figures[i]);
        let shift = (s - cursor).max(0.0);
        for ev in &mut figures[i] {
            ev.onset -= shift;
        }
        cursor = cursor.max(e - shift);
    }
}

/// Transforms a sequence of snapshots into consecutive equal time blocks.
///
/// Source indices address the concatenation of all snapshots' envelope
/// terms followed by all their pattern terms, so `envelope_count` still
/// separates the two streams.
pub fn transform_sequence(
    snapshots: &[VisualDecomposition],
    cfg: &MappingConfig,
) -> SoundDecomposition {
    if snapshots.is_empty() {
        return SoundDecomposition::silence(cfg.total_beats);
    }
    let block = cfg.total_beats / snapshots.len() as f64;
    let block_cfg = MappingConfig {
        total_beats: block,
        ..*cfg
    };
    let total_envelope: usize = snapshots
        .iter()
        .map(VisualDecomposition::envelope_count)
        .sum();
    let mut env_base = 0;
    let mut pat_base = total_envelope;
    let mut events = Vec::new();
    for (t, snap) in snapshots.iter().enumerate() {
        let j = snap.envelope_count();
        let offset = block * t as f64;
        for mut e in transform(snap, &block_cfg).events {
            e.onset += offset;
            e.source_term = if e.source_term < j {
                env_base + e.source_term
            } else {
                pat_base + e.source_term - j
            };
            events.push(e);
        }
        env_base += j;
        pat_base += snap.len() - j;
    }
    SoundDecomposition {
        events,
        envelope_count: total_envelope,
        total_beats: cfg.total_beats,
    }
}

/// Plays the decomposition backwards in time.
pub fn retrograde(s: &SoundDecomposition) -> SoundDecomposition {
    SoundDecomposition {
        events: s
            .events
            .iter()
            .map(|e| SoundEvent {
                onset: (s.total_beats - e.onset - e.duration).max(0.0),
                ..*e
            })
            .collect(),
        envelope_count: s.envelope_count,
        total_beats: s.total_beats,
    }
}

/// Duration-weighted histogram over articulation × onset octile × pitch
/// band.
pub fn sound_feature_vector(s: &SoundDecomposition) -> Vec<f64> {
    let bands = PITCH_BAND_EDGES.len() + 1;
    let mut v = vec![0.0; 3 * ONSET_BINS * bands];
    for e in &s.events {
        let t = if s.total_beats > 0.0 {
            e.onset / s.total_beats
        } else {
            0.0
        };
        let bin_t = ((t * ONSET_BINS as f64).floor().max(0.0) as usize).min(ONSET_BINS - 1);
        let band = PITCH_BAND_EDGES
            .iter()
            .filter(|&&edge| e.pitch >= edge)
            .count();
        v[(e.articulation.index() * ONSET_BINS + bin_t) * bands + band] += e.duration;
    }
    v
}

/// Cosine similarity of two sound decompositions (1 identical, 0
/// unrelated; two silences are identical).
pub fn sound_distance(a: &SoundDecomposition, b: &SoundDecomposition) -> f64 {
    cosine_similarity(&sound_feature_vector(a), &sound_feature_vector(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kets::Term;
    use std::f64::consts::PI;

    fn cfg() -> MappingConfig {
        MappingConfig {
            pitch_lo: 48,
            pitch_hi: 72,
            ..MappingConfig::default()
        }
    }

    fn placement(x: f64, y: f64, scale: f64, rotation: f64) -> KetPlacement {
        KetPlacement::new(x, y, scale, rotation, 0.02).unwrap()
    }

    #[test]
    fn dot_is_one_staccato_note_at_mid_pitch() {
        let ev = expand_term(&placement(0.5, 0.5, 0.05, 0.0), &VisualKet::Dot, &cfg());
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].articulation, Articulation::Staccato);
        assert_eq!(ev[0].pitch, 60);
    }

    #[test]
    fn arc_rises_then_falls() {
        let ev = expand_term(
            &placement(0.5, 0.5, 0.3, 0.3),
            &VisualKet::Arc { sweep: 2.0 },
            &cfg(),
        );
        assert!(ev.len() >= 3);
        assert!(ev.iter().all(|e| e.articulation == Articulation::Legato));
        let peak = ev
            .iter()
            .enumerate()
            .max_by_key(|(_, e)| e.pitch)
            .unwrap()
            .0;
        assert!(peak > 0 && peak < ev.len() - 1);
        assert!(ev.windows(2).take(peak).all(|w| w[0].pitch <= w[1].pitch));
        assert!(ev.windows(2).skip(peak).all(|w| w[0].pitch >= w[1].pitch));
        assert!(ev[0].pitch < ev[peak].pitch);
    }

    #[test]
    fn vertical_segment_is_a_cluster() {
        let ev = expand_term(
            &placement(0.5, 0.5, 0.3, FRAC_PI_2),
            &VisualKet::Segment,
            &cfg(),
        );
        assert!(ev.len() > 1);
        assert!(ev.iter().all(|e| e.onset == ev[0].onset));
        let ev = expand_term(&placement(0.5, 0.5, 0.3, 0.0), &VisualKet::Segment, &cfg());
        assert!(ev.windows(2).all(|w| w[0].onset < w[1].onset));
    }

    #[test]
    fn segment_progression_follows_direction() {
        // Rotation -π/4 ascends in the image (dy < 0).
        let up = expand_term(
            &placement(0.5, 0.5, 0.1, 7.0 * PI / 4.0),
            &VisualKet::Segment,
            &cfg(),
        );
        assert!(up.windows(2).all(|w| w[0].pitch < w[1].pitch));
        let down = expand_term(
            &placement(0.5, 0.5, 0.1, PI / 4.0),
            &VisualKet::Segment,
            &cfg(),
        );
        assert!(down.windows(2).all(|w| w[0].pitch > w[1].pitch));
    }

    #[test]
    fn steeper_segments_leap_further() {
        let flat = expand_term(&placement(0.5, 0.5, 0.1, 0.1), &VisualKet::Segment, &cfg());
        let steep = expand_term(&placement(0.5, 0.5, 0.1, 1.2), &VisualKet::Segment, &cfg());
        let leap = |ev: &[SoundEvent]| (i32::from(ev[0].pitch) - i32::from(ev[1].pitch)).abs();
        assert!(leap(&steep) > leap(&flat));
    }

    #[test]
    fn thicker_is_louder() {
        let thin = KetPlacement::new(0.5, 0.5, 0.1, 0.0, 0.1).unwrap();
        let thick = KetPlacement::new(0.5, 0.5, 0.1, 0.0, 0.6).unwrap();
        let v = |p| expand_term(&p, &VisualKet::Dot, &cfg())[0].velocity;
        assert_eq!(v(thin), 1 + 13);
        assert_eq!(v(thick), 1 + 76);
        let flat = MappingConfig {
            enable_dynamics: false,
            ..cfg()
        };
        assert_eq!(expand_term(&thin, &VisualKet::Dot, &flat)[0].velocity, 64);
    }

    #[test]
    fn long_segments_are_harsher() {
        let short = expand_term(&placement(0.5, 0.5, 0.2, 0.0), &VisualKet::Segment, &cfg());
        let long = expand_term(&placement(0.5, 0.5, 0.5, 0.0), &VisualKet::Segment, &cfg());
        let ratio = |ev: &[SoundEvent]| ev[0].duration / (ev[1].onset - ev[0].onset);
        assert!((ratio(&short) - 0.25).abs() < 1e-12);
        assert!((ratio(&long) - 0.15).abs() < 1e-12);
    }

    #[test]
    fn events_stay_inside_the_piece() {
        let c = cfg();
        for x in [0.0, 0.01, 0.5, 0.99, 1.0] {
            for scale in [0.01, 0.5, 1.0] {
                for ket in [
                    VisualKet::Dot,
                    VisualKet::Segment,
                    VisualKet::Arc { sweep: 1.0 },
                ] {
                    for e in expand_term(&placement(x, 0.3, scale, 0.4), &ket, &c) {
                        assert!(e.onset >= 0.0 && e.onset + e.duration <= c.total_beats + 1e-12);
                        assert!(e.duration > 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn empty_is_silence() {
        let s = transform(&VisualDecomposition::empty(), &cfg());
        assert!(s.is_empty());
        assert!(transform_sequence(&[], &cfg()).is_empty());
    }

    #[test]
    fn retrograde_single_event() {
        let s = SoundDecomposition {
            events: vec![SoundEvent {
                onset: 0.0,
                duration: 1.0,
                pitch: 60,
                velocity: 90,
                articulation: Articulation::Staccato,
                source_term: 0,
            }],
            envelope_count: 1,
            total_beats: 4.0,
        };
        assert_eq!(retrograde(&s).events[0].onset, 3.0);
        assert_eq!(retrograde(&retrograde(&s)), s);
    }

    #[test]
    fn transposition() {
        assert_eq!(transpose_to_range(60, 48, 72), 60);
        assert_eq!(transpose_to_range(73, 48, 72), 61);
        assert_eq!(transpose_to_range(90, 60, 66), 66);
        assert_eq!(transpose_to_range(20, 48, 72), 56);
        // 67 folds to 55 or 79, neither inside [60, 64]; 67 is nearer 64.
        assert_eq!(transpose_to_range(67, 60, 64), 64);
        assert_eq!(transpose_to_range(58, 60, 64), 60);
    }

    #[test]
    fn scale_snapping() {
        assert_eq!(ScaleSnap::Major.snap(61), 60);
        assert_eq!(ScaleSnap::Major.snap(62), 62);
        assert_eq!(ScaleSnap::Minor.snap(64), 63);
        assert_eq!(ScaleSnap::Minor.snap(66), 65);
        assert_eq!(ScaleSnap::Chromatic.snap(61), 61);
    }

    #[test]
    fn pauses_off_closes_gaps() {
        let d = VisualDecomposition::new(
            vec![
                Term::new(placement(0.1, 0.5, 0.05, 0.0), VisualKet::Dot),
                Term::new(placement(0.9, 0.5, 0.05, 0.0), VisualKet::Dot),
            ],
            0,
        )
        .unwrap();
        let c = MappingConfig {
            enable_pauses: false,
            ..cfg()
        };
        let s = transform(&d, &c);
        let first_end = s.events[0].onset + s.events[0].duration;
        assert!((s.events[1].onset - first_end).abs() < 1e-12);
        let with = transform(&d, &cfg());
        assert!(with.events[1].onset > first_end + 1.0);
    }

    #[test]
    fn sound_distance_conventions() {
        let ev = |articulation, onset| SoundEvent {
            onset,
            duration: 0.5,
            pitch: 60,
            velocity: 64,
            articulation,
            source_term: 0,
        };
        let mk = |events| SoundDecomposition {
            events,
            envelope_count: 0,
            total_beats: 8.0,
        };
        let a = mk(vec![
            ev(Articulation::Staccato, 0.0),
            ev(Articulation::Staccato, 4.0),
        ]);
        let b = mk(vec![
            ev(Articulation::Legato, 0.0),
            ev(Articulation::Legato, 4.0),
        ]);
        assert_eq!(sound_distance(&a, &a), 1.0);
        assert_eq!(sound_distance(&a, &b), 0.0);
        assert_eq!(sound_distance(&a, &mk(vec![])), 0.0);
        assert_eq!(sound_distance(&mk(vec![]), &mk(vec![])), 1.0);
    }
}
