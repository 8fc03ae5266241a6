//! JSON documents for decompositions and sound decompositions.
//!
//! Unknown fields are rejected and every value is range-checked; errors
//! name the offending field, e.g. `terms[2].scale`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kets::{KetKind, KetPlacement, Term, VisualDecomposition, VisualKet};
use crate::raster::Frame;
use crate::transform::{Articulation, SoundDecomposition, SoundEvent};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDocument {
    pub kind: KetKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<f64>,
    pub x: f64,
    pub y: f64,
    pub scale: f64,
    pub rotation: f64,
    pub thickness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDocument {
    pub version: u32,
    pub width_hint: u32,
    pub height_hint: u32,
    pub envelope_count: usize,
    pub terms: Vec<TermDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventDocument {
    pub onset: f64,
    pub duration: f64,
    pub pitch: u8,
    pub velocity: u8,
    pub articulation: Articulation,
    pub source_term: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SoundDocument {
    pub version: u32,
    pub total_beats: f64,
    pub envelope_count: usize,
    pub events: Vec<EventDocument>,
}

fn field_error(field: String, msg: impl std::fmt::Display) -> Error {
    Error::Document(format!("{field}: {msg}"))
}

fn check_version(version: u32) -> Result<()> {
    if version != FORMAT_VERSION {
        return Err(field_error(
            "version".into(),
            format!("unsupported version {version}, expected {FORMAT_VERSION}"),
        ));
    }
    Ok(())
}

impl DecompositionDocument {
    pub fn from_decomposition(d: &VisualDecomposition, frame: Frame) -> Self {
        Self {
            version: FORMAT_VERSION,
            width_hint: frame.width,
            height_hint: frame.height,
            envelope_count: d.envelope_count(),
            terms: d
                .terms()
                .iter()
                .map(|t| TermDocument {
                    kind: t.kind(),
                    sweep: t.ket.sweep(),
                    x: t.placement.x,
                    y: t.placement.y,
                    scale: t.placement.scale,
                    rotation: t.placement.rotation,
                    thickness: t.placement.thickness,
                })
                .collect(),
        }
    }

    pub fn to_decomposition(&self) -> Result<(VisualDecomposition, Frame)> {
        check_version(self.version)?;
        let frame = Frame::new(self.width_hint, self.height_hint)
            .map_err(|e| field_error("width_hint/height_hint".into(), e))?;
        if self.envelope_count > self.terms.len() {
            return Err(field_error(
                "envelope_count".into(),
                format!(
                    "{} exceeds the {} terms",
                    self.envelope_count,
                    self.terms.len()
                ),
            ));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            let ket = match (t.kind, t.sweep) {
                (KetKind::Dot, None) => VisualKet::Dot,
                (KetKind::Segment, None) => VisualKet::Segment,
                (KetKind::Arc, Some(sweep)) => VisualKet::arc(sweep)
                    .map_err(|e| field_error(format!("terms[{i}].sweep"), e))?,
                (KetKind::Arc, None) => {
                    return Err(field_error(
                        format!("terms[{i}].sweep"),
                        "arcs need a sweep",
                    ))
                }
                (_, Some(_)) => {
                    return Err(field_error(
                        format!("terms[{i}].sweep"),
                        "only arcs carry a sweep",
                    ))
                }
            };
            let placement = KetPlacement {
                x: t.x,
                y: t.y,
                scale: t.scale,
                rotation: t.rotation,
                thickness: t.thickness,
            };
            if let Err(Error::InvalidInput(msg)) = placement.validate() {
                let field = msg.split(' ').next().unwrap_or("placement").to_string();
                return Err(field_error(format!("terms[{i}].{field}"), msg));
            }
            terms.push(Term::new(placement, ket));
        }
        let d = VisualDecomposition::new(terms, self.envelope_count)
            .map_err(|e| field_error("terms".into(), e))?;
        Ok((d, frame))
    }
}

impl SoundDocument {
    pub fn from_sound(s: &SoundDecomposition) -> Self {
        Self {
            version: FORMAT_VERSION,
            total_beats: s.total_beats,
            envelope_count: s.envelope_count,
            events: s
                .events
                .iter()
                .map(|e| EventDocument {
                    onset: e.onset,
                    duration: e.duration,
                    pitch: e.pitch,
                    velocity: e.velocity,
                    articulation: e.articulation,
                    source_term: e.source_term,
                })
                .collect(),
        }
    }

    pub fn to_sound(&self) -> Result<SoundDecomposition> {
        check_version(self.version)?;
        if !(self.total_beats.is_finite() && self.total_beats > 0.0) {
            return Err(field_error(
                "total_beats".into(),
                format!("{} is not positive", self.total_beats),
            ));
        }
        let slack = 1e-9 * self.total_beats;
        let mut events = Vec::with_capacity(self.events.len());
        for (i, e) in self.events.iter().enumerate() {
            let at = |f: &str| format!("events[{i}].{f}");
            if !(e.onset.is_finite() && e.onset >= 0.0) {
                return Err(field_error(
                    at("onset"),
                    format!("{} is negative or not finite", e.onset),
                ));
            }
            if !(e.duration.is_finite() && e.duration > 0.0) {
                return Err(field_error(
                    at("duration"),
                    format!("{} is not positive", e.duration),
                ));
            }
            if e.onset + e.duration > self.total_beats + slack {
                return Err(field_error(at("duration"), "event ends after total_beats"));
            }
            if e.pitch > 127 {
                return Err(field_error(at("pitch"), format!("{} exceeds 127", e.pitch)));
            }
            if !(1..=127).contains(&e.velocity) {
                return Err(field_error(
                    at("velocity"),
                    format!("{} outside [1, 127]", e.velocity),
                ));
            }
            events.push(SoundEvent {
                onset: e.onset,
                duration: e.duration,
                pitch: e.pitch,
                velocity: e.velocity,
                articulation: e.articulation,
                source_term: e.source_term,
            });
        }
        Ok(SoundDecomposition {
            events,
            envelope_count: self.envelope_count,
            total_beats: self.total_beats,
        })
    }
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents contain only finite numbers");
    s.push('\n');
    s
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

pub fn serialize_decomposition(d: &VisualDecomposition, frame: Frame) -> String {
    to_json(&DecompositionDocument::from_decomposition(d, frame))
}

pub fn deserialize_decomposition(text: &str) -> Result<(VisualDecomposition, Frame)> {
    parse::<DecompositionDocument>(text)?.to_decomposition()
}

pub fn serialize_sound(s: &SoundDecomposition) -> String {
    to_json(&SoundDocument::from_sound(s))
}

pub fn deserialize_sound(text: &str) -> Result<SoundDecomposition> {
    parse::<SoundDocument>(text)?.to_sound()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (VisualDecomposition, Frame) {
        let p = KetPlacement::new(0.25, 0.75, 0.1, 1.0, 0.01).unwrap();
        let d = VisualDecomposition::new(
            vec![
                Term::new(p, VisualKet::Arc { sweep: 1.5 }),
                Term::new(p, VisualKet::Dot),
            ],
            1,
        )
        .unwrap();
        (d, Frame::new(64, 48).unwrap())
    }

    #[test]
    fn decomposition_round_trip() {
        let (d, frame) = sample();
        let text = serialize_decomposition(&d, frame);
        assert!(text.contains(r#""kind": "arc""#));
        assert_eq!(deserialize_decomposition(&text).unwrap(), (d, frame));
    }

    fn message(text: &str) -> String {
        deserialize_decomposition(text).unwrap_err().to_string()
    }

    #[test]
    fn errors_name_the_field() {
        let (d, frame) = sample();
        let text = serialize_decomposition(&d, frame);
        assert!(
            message(&text.replace("\"scale\": 0.1", "\"scale\": 1.5")).contains("terms[0].scale")
        );
        assert!(message(&text.replace("\"version\": 1", "\"version\": 9")).contains("version"));
        assert!(
            message(&text.replace("\"envelope_count\": 1", "\"envelope_count\": 5"))
                .contains("envelope_count")
        );
        assert!(
            message(&text.replace("\"kind\": \"dot\"", "\"kind\": \"dot\", \"sweep\": 1.0"))
                .contains("terms[1].sweep")
        );
        assert!(message(&text.replace("\"kind\": \"dot\"", "\"kind\": \"blob\"")).contains("blob"));
        assert!(
            message(&text.replace("\"x\": 0.25,", "\"x\": 0.25, \"colour\": 3,"))
                .contains("colour")
        );
        assert!(message("{}").contains("version"));
    }

    #[test]
    fn sound_validation() {
        let s = SoundDecomposition {
            events: vec![SoundEvent {
                onset: 1.0,
                duration: 0.5,
                pitch: 60,
                velocity: 80,
                articulation: Articulation::Legato,
                source_term: 0,
            }],
            envelope_count: 1,
            total_beats: 2.0,
        };
        let text = serialize_sound(&s);
        assert_eq!(deserialize_sound(&text).unwrap(), s);
        let err =
            deserialize_sound(&text.replace("\"duration\": 0.5", "\"duration\": 3.0")).unwrap_err();
        assert!(err.to_string().contains("events[0].duration"));
        let err =
            deserialize_sound(&text.replace("\"velocity\": 80", "\"velocity\": 0")).unwrap_err();
        assert!(err.to_string().contains("events[0].velocity"));
    }
}
