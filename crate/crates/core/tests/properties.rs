//! Algebraic invariants over random decompositions.

mod common;

use std::collections::HashMap;

use common::{decomposition, term};
use ketsonic::kets::{
    distance, feature_vector, ket_inner_product, render, time_reverse, VisualDecomposition,
    VisualKet,
};
use ketsonic::raster::Frame;
use ketsonic::score::{
    deserialize_decomposition, deserialize_sound, serialize_decomposition, serialize_sound,
    to_midi, transpose_to_range, MidiDocument,
};
use ketsonic::transform::{
    expand_term, retrograde, sound_distance, transform, transform_sequence, Articulation,
    MappingConfig, ScaleSnap, SoundDecomposition, SoundEvent,
};
use ketsonic::KetKind;
use proptest::prelude::*;

fn mapping() -> impl Strategy<Value = MappingConfig> {
    (
        1.0..64.0f64,
        (0u8..100, 5u8..40),
        any::<[bool; 3]>(),
        prop_oneof![
            Just(ScaleSnap::Chromatic),
            Just(ScaleSnap::Major),
            Just(ScaleSnap::Minor)
        ],
        1u32..16,
        0u8..24,
    )
        .prop_map(
            |(total_beats, (lo, width), [p, i, d], scale_snap, notes, interval_max)| {
                MappingConfig {
                    total_beats,
                    pitch_lo: lo,
                    pitch_hi: (lo + width).min(127),
                    enable_progression: p,
                    enable_interval: i,
                    enable_dynamics: d,
                    enable_pauses: true,
                    notes_per_unit_scale: notes,
                    scale_snap,
                    interval_max,
                    thickness_ref: 1.0,
                }
            },
        )
}

fn without_source(e: &SoundEvent) -> (u64, u64, u8, u8, Articulation) {
    (
        e.onset.to_bits(),
        e.duration.to_bits(),
        e.pitch,
        e.velocity,
        e.articulation,
    )
}

fn content_multiset(s: &SoundDecomposition) -> HashMap<(u64, u8, u8, Articulation), usize> {
    let mut m = HashMap::new();
    for e in &s.events {
        *m.entry((e.duration.to_bits(), e.pitch, e.velocity, e.articulation))
            .or_insert(0) += 1;
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn semilinear_over_concatenation(a in decomposition(8), b in decomposition(8), cfg in mapping()) {
        let joined = transform(&a.concat(&b), &cfg);
        let ta = transform(&a, &cfg);
        let tb = transform(&b, &cfg);
        let mut expected = ta.events.clone();
        expected.extend(tb.events.iter().map(|e| SoundEvent { source_term: e.source_term + a.len(), ..*e }));
        prop_assert_eq!(joined.events, expected);
    }

    #[test]
    fn articulation_depends_only_on_kind(t in term(), cfg in mapping()) {
        let expected = match t.kind() {
            KetKind::Dot => Articulation::Staccato,
            KetKind::Segment => Articulation::Staccatissimo,
            KetKind::Arc => Articulation::Legato,
        };
        let events = expand_term(&t.placement, &t.ket, &cfg);
        prop_assert!(!events.is_empty());
        prop_assert!(events.iter().all(|e| e.articulation == expected));
        if t.kind() == KetKind::Dot {
            prop_assert_eq!(events.len(), 1);
        }
    }

    #[test]
    fn events_are_well_formed(d in decomposition(10), cfg in mapping(), pauses in any::<bool>()) {
        let cfg = MappingConfig { enable_pauses: pauses, ..cfg };
        let s = transform(&d, &cfg);
        prop_assert_eq!(s.envelope_count, d.envelope_count());
        for e in &s.events {
            prop_assert!(e.onset >= 0.0);
            prop_assert!(e.duration > 0.0);
            prop_assert!(e.onset + e.duration <= cfg.total_beats * (1.0 + 1e-12));
            prop_assert!(e.pitch >= cfg.pitch_lo && e.pitch <= cfg.pitch_hi);
            prop_assert!((1..=127).contains(&e.velocity));
            prop_assert!(e.source_term < d.len());
        }
    }

    #[test]
    fn distance_axioms(a in decomposition(10), b in decomposition(10)) {
        let ab = distance(&a, &b);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(ab, distance(&b, &a));
        if !a.is_empty() {
            prop_assert!((distance(&a, &a) - 1.0).abs() <= 1e-12);
            prop_assert_eq!(distance(&a, &VisualDecomposition::empty()), 0.0);
        }
    }

    #[test]
    fn feature_vector_is_additive(a in decomposition(8), b in decomposition(8)) {
        let (fa, fb, fab) = (feature_vector(&a), feature_vector(&b), feature_vector(&a.concat(&b)));
        for ((x, y), z) in fa.values().iter().zip(fb.values()).zip(fab.values()) {
            prop_assert!((x + y - z).abs() <= 1e-12 * (1.0 + z.abs()));
        }
    }

    #[test]
    fn inner_product_symmetric(a in common::ket(), b in common::ket()) {
        prop_assert_eq!(ket_inner_product(&a, &b), ket_inner_product(&b, &a));
        prop_assert_eq!(ket_inner_product(&a, &a), 1.0);
        let v = ket_inner_product(&a, &b);
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn render_ignores_term_order(d in decomposition(6), seed in any::<u64>()) {
        let mut terms = d.terms().to_vec();
        let n = terms.len();
        if n > 1 {
            terms.rotate_left((seed % n as u64) as usize);
            terms.swap(0, (seed as usize / 7) % n);
        }
        let shuffled = VisualDecomposition::new(terms, d.envelope_count()).unwrap();
        let frame = Frame::new(48, 40).unwrap();
        prop_assert_eq!(render(&d, frame), render(&shuffled, frame));
    }

    #[test]
    fn time_reverse_is_an_involution(d in decomposition(10)) {
        let r = time_reverse(&d);
        prop_assert_eq!(r.len(), d.len());
        prop_assert_eq!(r.envelope_count(), d.envelope_count());
        prop_assert_eq!(r.kind_counts(), d.kind_counts());
        let rr = time_reverse(&r);
        for (a, b) in d.terms().iter().zip(rr.terms()) {
            prop_assert_eq!(a.ket, b.ket);
            prop_assert_eq!(a.placement.x, b.placement.x);
            prop_assert_eq!(a.placement.y, b.placement.y);
            prop_assert_eq!(a.placement.scale, b.placement.scale);
            prop_assert_eq!(a.placement.thickness, b.placement.thickness);
            let dr = (a.placement.rotation - b.placement.rotation).abs();
            prop_assert!(dr.min(std::f64::consts::TAU - dr) < 1e-12);
        }
    }

    #[test]
    fn retrograde_commutes_with_time_reverse(d in decomposition(10), cfg in mapping()) {
        let lhs = transform(&time_reverse(&d), &cfg);
        let rhs = retrograde(&transform(&d, &cfg));
        prop_assert_eq!(content_multiset(&lhs), content_multiset(&rhs));
    }

    #[test]
    fn retrograde_is_an_involution(d in decomposition(10), cfg in mapping()) {
        let s = transform(&d, &cfg);
        let rr = retrograde(&retrograde(&s));
        prop_assert_eq!(rr.events.len(), s.events.len());
        for (a, b) in s.events.iter().zip(&rr.events) {
            prop_assert!((a.onset - b.onset).abs() <= 1e-9 * cfg.total_beats);
            prop_assert_eq!((a.duration, a.pitch, a.velocity, a.articulation), (b.duration, b.pitch, b.velocity, b.articulation));
        }
    }

    #[test]
    fn identical_snapshots_repeat_one_block(d in decomposition(6), cfg in mapping(), k in prop::sample::select(vec![1usize, 2, 4, 8])) {
        let snaps = vec![d.clone(); k];
        let seq = transform_sequence(&snaps, &cfg);
        let block = cfg.total_beats / k as f64;
        let one = transform(&d, &MappingConfig { total_beats: block, ..cfg });
        prop_assert_eq!(seq.events.len(), k * one.events.len());
        let mut expected: Vec<_> = (0..k)
            .flat_map(|t| one.events.iter().map(move |e| SoundEvent { onset: e.onset + block * t as f64, ..*e }))
            .map(|e| without_source(&e))
            .collect();
        let mut got: Vec<_> = seq.events.iter().map(without_source).collect();
        expected.sort();
        got.sort();
        prop_assert_eq!(got, expected);
        if k == 1 {
            prop_assert_eq!(seq, transform(&d, &cfg));
        }
    }

    #[test]
    fn rotated_snapshots_shift_by_one_block(snaps in prop::collection::vec(decomposition(4), 1..5), cfg in mapping()) {
        let k = snaps.len();
        let block = cfg.total_beats / k as f64;
        let original = transform_sequence(&snaps, &cfg);
        let mut rotated_snaps = snaps.clone();
        rotated_snaps.rotate_left(1);
        let rotated = transform_sequence(&rotated_snaps, &cfg);
        let quantise = |onset: f64| (onset.rem_euclid(cfg.total_beats) / cfg.total_beats * 1e9).round() as i64;
        let mut expected: Vec<_> = original
            .events
            .iter()
            .map(|e| (quantise(e.onset - block), e.duration.to_bits(), e.pitch, e.velocity, e.articulation))
            .collect();
        let mut got: Vec<_> = rotated
            .events
            .iter()
            .map(|e| (quantise(e.onset), e.duration.to_bits(), e.pitch, e.velocity, e.articulation))
            .collect();
        expected.sort();
        got.sort();
        prop_assert_eq!(got, expected);
        prop_assert_eq!(rotated.envelope_count, original.envelope_count);
    }

    #[test]
    fn sound_distance_axioms(a in decomposition(8), b in decomposition(8), cfg in mapping()) {
        let (sa, sb) = (transform(&a, &cfg), transform(&b, &cfg));
        let v = sound_distance(&sa, &sb);
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert_eq!(v, sound_distance(&sb, &sa));
        if !sa.is_empty() {
            prop_assert!((sound_distance(&sa, &sa) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn decomposition_document_round_trip(d in decomposition(12), w in 1u32..4000, h in 1u32..4000) {
        let frame = Frame::new(w, h).unwrap();
        let text = serialize_decomposition(&d, frame);
        prop_assert_eq!(deserialize_decomposition(&text).unwrap(), (d, frame));
    }

    #[test]
    fn sound_document_round_trip(d in decomposition(8), cfg in mapping()) {
        let s = transform(&d, &cfg);
        prop_assert_eq!(deserialize_sound(&serialize_sound(&s)).unwrap(), s);
    }

    #[test]
    fn transposition_lands_in_range(p in 0i32..128, lo in 0u8..127, width in 1u8..40) {
        let hi = lo.saturating_add(width).min(127);
        prop_assume!(lo < hi);
        let q = transpose_to_range(p, lo, hi);
        prop_assert!(q >= lo && q <= hi);
        prop_assert_eq!(transpose_to_range(i32::from(q), lo, hi), q);
        if (lo..=hi).contains(&(p as u8)) {
            prop_assert_eq!(q, p as u8);
        }
    }

    #[test]
    fn midi_header_is_fixed(d in decomposition(10), cfg in mapping()) {
        let bytes = to_midi(&transform(&d, &cfg), &MidiDocument::default());
        prop_assert_eq!(&bytes[..14], b"MThd\x00\x00\x00\x06\x00\x01\x00\x02\x01\xE0");
    }
}

#[test]
fn arc_inner_products_with_flat_arcs() {
    let flat = VisualKet::Arc { sweep: 0.05 };
    let v = ket_inner_product(&flat, &VisualKet::Segment);
    assert!((v - 0.75).abs() < 1e-12);
    assert_eq!(
        ket_inner_product(&VisualKet::Arc { sweep: 1.0 }, &VisualKet::Segment),
        0.0
    );
    assert_eq!(ket_inner_product(&VisualKet::Dot, &VisualKet::Segment), 0.0);
}
