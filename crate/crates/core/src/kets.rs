//! Visual kets and their weighted superpositions.
//!
//! A [`VisualDecomposition`] is an ordered list of [`Term`]s, each a
//! primitive shape ([`VisualKet`]) placed on the image by a
//! [`KetPlacement`]. The first `envelope_count` terms describe the overall
//! outline (the envelope); the rest are interior detail (patterns).

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{cosine_similarity, wrap_angle};
use crate::raster::{Bitmap, Frame};

/// Sweep below which an arc is nearly indistinguishable from a segment.
pub const FLAT_ARC_SWEEP: f64 = 0.2;

/// Sweeps closer than this count as the same arc ket.
pub const SWEEP_TOLERANCE: f64 = 1e-9;

/// Default spatial grid resolution of [`FeatureVector`].
pub const DEFAULT_GRID: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KetKind {
    Dot,
    Segment,
    Arc,
}

impl KetKind {
    pub const ALL: [KetKind; 3] = [KetKind::Dot, KetKind::Segment, KetKind::Arc];

    pub fn index(self) -> usize {
        match self {
            KetKind::Dot => 0,
            KetKind::Segment => 1,
            KetKind::Arc => 2,
        }
    }
}

/// An elementary shape, independent of where it is drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VisualKet {
    Dot,
    Segment,
    /// Circular arc; `sweep` is the subtended angle in `(0, 2π]`.
    Arc {
        sweep: f64,
    },
}

impl VisualKet {
    pub fn arc(sweep: f64) -> Result<Self> {
        if sweep > 0.0 && sweep <= TAU {
            Ok(VisualKet::Arc { sweep })
        } else {
            Err(Error::InvalidInput(format!(
                "arc sweep must lie in (0, 2π], got {sweep}"
            )))
        }
    }

    pub fn kind(&self) -> KetKind {
        match self {
            VisualKet::Dot => KetKind::Dot,
            VisualKet::Segment => KetKind::Segment,
            VisualKet::Arc { .. } => KetKind::Arc,
        }
    }

    pub fn sweep(&self) -> Option<f64> {
        match *self {
            VisualKet::Arc { sweep } => Some(sweep),
            _ => None,
        }
    }
}

/// Scalar product of two kets.
///
/// Identical kets give 1 and different kinds are orthogonal, except that a
/// nearly flat arc overlaps a segment by `max(0, 1 - sweep / 0.2)`.
pub fn ket_inner_product(a: &VisualKet, b: &VisualKet) -> f64 {
    match (*a, *b) {
        (VisualKet::Dot, VisualKet::Dot) | (VisualKet::Segment, VisualKet::Segment) => 1.0,
        (VisualKet::Arc { sweep: s1 }, VisualKet::Arc { sweep: s2 }) => {
            if (s1 - s2).abs() <= SWEEP_TOLERANCE {
                1.0
            } else {
                0.0
            }
        }
        (VisualKet::Arc { sweep }, VisualKet::Segment)
        | (VisualKet::Segment, VisualKet::Arc { sweep }) => (1.0 - sweep / FLAT_ARC_SWEEP).max(0.0),
        _ => 0.0,
    }
}

/// Where and how large a ket is drawn.
///
/// Positions are normalised image coordinates (origin top-left, y down);
/// `scale` and `thickness` are fractions of the image diagonal. For a dot
/// `scale` is the diameter, for a segment its length, for an arc the chord.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KetPlacement {
    pub x: f64,
    pub y: f64,
    pub scale: f64,
    /// Radians in `[0, 2π)`: direction of travel along the primitive.
    pub rotation: f64,
    pub thickness: f64,
}

impl KetPlacement {
    pub fn new(x: f64, y: f64, scale: f64, rotation: f64, thickness: f64) -> Result<Self> {
        let p = Self {
            x,
            y,
            scale,
            rotation,
            thickness,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, v: f64, range: &str| {
            Err(Error::InvalidInput(format!(
                "{field} = {v} outside {range}"
            )))
        };
        if !(0.0..=1.0).contains(&self.x) {
            return bad("x", self.x, "[0, 1]");
        }
        if !(0.0..=1.0).contains(&self.y) {
            return bad("y", self.y, "[0, 1]");
        }
        if !(self.scale > 0.0 && self.scale <= 1.0) {
            return bad("scale", self.scale, "(0, 1]");
        }
        if !(0.0..TAU).contains(&self.rotation) {
            return bad("rotation", self.rotation, "[0, 2π)");
        }
        if !(self.thickness > 0.0 && self.thickness <= 1.0) {
            return bad("thickness", self.thickness, "(0, 1]");
        }
        Ok(())
    }

    /// Unit direction of travel in image coordinates.
    pub fn direction(&self) -> (f64, f64) {
        (self.rotation.cos(), self.rotation.sin())
    }
}

/// One weighted ket of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub placement: KetPlacement,
    pub ket: VisualKet,
}

impl Term {
    pub fn new(placement: KetPlacement, ket: VisualKet) -> Self {
        Self { placement, ket }
    }

    pub fn kind(&self) -> KetKind {
        self.ket.kind()
    }
}

/// Ordered superposition of kets with an envelope prefix.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VisualDecomposition {
    terms: Vec<Term>,
    envelope_count: usize,
}

impl VisualDecomposition {
    /// The zero vector: a blank image.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(terms: Vec<Term>, envelope_count: usize) -> Result<Self> {
        if envelope_count > terms.len() {
            return Err(Error::InvalidInput(format!(
                "envelope_count {envelope_count} exceeds term count {}",
                terms.len()
            )));
        }
        for (i, t) in terms.iter().enumerate() {
            t.placement
                .validate()
                .map_err(|e| Error::InvalidInput(format!("term {i}: {e}")))?;
            if let VisualKet::Arc { sweep } = t.ket {
                VisualKet::arc(sweep).map_err(|e| Error::InvalidInput(format!("term {i}: {e}")))?;
            }
        }
        Ok(Self {
            terms,
            envelope_count,
        })
    }

    /// Envelope terms followed by pattern terms.
    pub fn from_parts(envelope: Vec<Term>, patterns: Vec<Term>) -> Result<Self> {
        let j = envelope.len();
        let mut terms = envelope;
        terms.extend(patterns);
        Self::new(terms, j)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn envelope_count(&self) -> usize {
        self.envelope_count
    }

    pub fn envelope(&self) -> &[Term] {
        &self.terms[..self.envelope_count]
    }

    pub fn patterns(&self) -> &[Term] {
        &self.terms[self.envelope_count..]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_envelope(&self, index: usize) -> bool {
        index < self.envelope_count
    }

    /// Term-list concatenation `self ⧺ other`.
    ///
    /// The envelope prefix extends into `other` only when `self` has no
    /// pattern terms.
    pub fn concat(&self, other: &VisualDecomposition) -> VisualDecomposition {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        let envelope_count = if self.envelope_count == self.terms.len() {
            self.envelope_count + other.envelope_count
        } else {
            self.envelope_count
        };
        VisualDecomposition {
            terms,
            envelope_count,
        }
    }

    /// Counts of each ket kind, indexed by [`KetKind::index`].
    pub fn kind_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for t in &self.terms {
            c[t.kind().index()] += 1;
        }
        c
    }
}

/// Non-negative histogram over (ket kind × spatial cell).
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    grid: usize,
    values: Vec<f64>,
}

impl FeatureVector {
    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Bin index of a kind at a normalised position.
    pub fn bin(grid: usize, kind: KetKind, x: f64, y: f64) -> usize {
        let cell = |v: f64| ((v * grid as f64).floor().max(0.0) as usize).min(grid - 1);
        kind.index() * grid * grid + cell(y) * grid + cell(x)
    }
}

/// Feature vector on the default 8×8 grid.
pub fn feature_vector(d: &VisualDecomposition) -> FeatureVector {
    feature_vector_with_grid(d, DEFAULT_GRID)
}

/// Each term adds its scale to the bin of its kind and the cell holding its
/// position.
pub fn feature_vector_with_grid(d: &VisualDecomposition, grid: usize) -> FeatureVector {
    let grid = grid.max(1);
    let mut values = vec![0.0; KetKind::ALL.len() * grid * grid];
    for t in d.terms() {
        let p = &t.placement;
        values[FeatureVector::bin(grid, t.kind(), p.x, p.y)] += p.scale;
    }
    FeatureVector { grid, values }
}

/// Cosine similarity of the two decompositions' feature vectors: 1 for
/// identical decompositions, 0 for unrelated ones.
pub fn distance(a: &VisualDecomposition, b: &VisualDecomposition) -> f64 {
    cosine_similarity(feature_vector(a).values(), feature_vector(b).values())
}

/// Reverses the drawing direction of a decomposition.
///
/// Terms are reversed within the envelope and within the patterns, so
/// every term keeps its membership, and each rotation turns by π.
pub fn time_reverse(d: &VisualDecomposition) -> VisualDecomposition {
    let flip = |t: &Term| {
        let mut t = *t;
        t.placement.rotation = wrap_angle(t.placement.rotation + PI);
        t
    };
    let envelope = d.envelope().iter().rev().map(flip);
    let patterns = d.patterns().iter().rev().map(flip);
    VisualDecomposition {
        terms: envelope.chain(patterns).collect(),
        envelope_count: d.envelope_count,
    }
}

/// Geometry of an arc placement in pixel space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcGeometry {
    pub center: (f64, f64),
    pub radius: f64,
    pub start: (f64, f64),
    pub end: (f64, f64),
    /// Unit vector from the centre to the middle of the arc.
    pub bulge: (f64, f64),
    pub sweep: f64,
}

/// Resolves an arc placement: the chord runs along `rotation` and the arc
/// bulges to the left of the direction of travel, i.e. towards
/// `(sin r, -cos r)` (upwards for a chord pointing right).
pub fn arc_geometry(placement: &KetPlacement, sweep: f64, frame: Frame) -> ArcGeometry {
    let diag = frame.diagonal();
    let chord = placement.scale * diag;
    let (ux, uy) = placement.direction();
    let (nx, ny) = (uy, -ux);
    let mx = placement.x * f64::from(frame.width);
    let my = placement.y * f64::from(frame.height);
    let half = sweep / 2.0;
    let radius = chord / (2.0 * half.sin().max(1e-9));
    let offset = radius * half.cos();
    ArcGeometry {
        center: (mx - nx * offset, my - ny * offset),
        radius,
        start: (mx - ux * chord / 2.0, my - uy * chord / 2.0),
        end: (mx + ux * chord / 2.0, my + uy * chord / 2.0),
        bulge: (nx, ny),
        sweep,
    }
}

/// Rasterises a decomposition; overlapping shapes are united.
///
/// A pixel is lit when its centre falls inside a shape. Dots are discs of
/// diameter `scale·diag`, segments and arcs are strokes of width
/// `thickness·diag` (at least one pixel) with round caps.
pub fn render(d: &VisualDecomposition, frame: Frame) -> Bitmap {
    let mut out = Bitmap::new(frame);
    for t in d.terms() {
        render_term(t, frame, &mut out);
    }
    out
}

fn render_term(term: &Term, frame: Frame, out: &mut Bitmap) {
    let diag = frame.diagonal();
    let p = &term.placement;
    let cx = p.x * f64::from(frame.width);
    let cy = p.y * f64::from(frame.height);
    let half_width = (p.thickness * diag / 2.0).max(0.5);
    match term.ket {
        VisualKet::Dot => {
            let r = p.scale * diag / 2.0;
            fill_where(out, (cx - r, cy - r, cx + r, cy + r), |x, y| {
                (x - cx).powi(2) + (y - cy).powi(2) <= r * r
            });
        }
        VisualKet::Segment => {
            let half_len = p.scale * diag / 2.0;
            let (ux, uy) = p.direction();
            let (ax, ay) = (cx - ux * half_len, cy - uy * half_len);
            let (bx, by) = (cx + ux * half_len, cy + uy * half_len);
            let bbox = (
                ax.min(bx) - half_width,
                ay.min(by) - half_width,
                ax.max(bx) + half_width,
                ay.max(by) + half_width,
            );
            fill_where(out, bbox, |x, y| {
                let t = ((x - ax) * ux + (y - ay) * uy).clamp(0.0, 2.0 * half_len);
                let (qx, qy) = (ax + ux * t, ay + uy * t);
                (x - qx).powi(2) + (y - qy).powi(2) <= half_width * half_width
            });
        }
        VisualKet::Arc { sweep } => {
            let g = arc_geometry(p, sweep, frame);
            let (ox, oy) = g.center;
            let reach = g.radius + half_width;
            let bulge_angle = g.bulge.1.atan2(g.bulge.0);
            let hw2 = half_width * half_width;
            let near = |x: f64, y: f64, q: (f64, f64)| (x - q.0).powi(2) + (y - q.1).powi(2) <= hw2;
            fill_where(
                out,
                (ox - reach, oy - reach, ox + reach, oy + reach),
                |x, y| {
                    if near(x, y, g.start) || near(x, y, g.end) {
                        return true;
                    }
                    let (dx, dy) = (x - ox, y - oy);
                    let r = dx.hypot(dy);
                    if (r - g.radius).abs() > half_width {
                        return false;
                    }
                    let mut rel = dy.atan2(dx) - bulge_angle;
                    rel = (rel + PI).rem_euclid(TAU) - PI;
                    rel.abs() <= sweep / 2.0
                },
            );
        }
    }
}

/// Lights every pixel of `out` inside `bbox` whose centre satisfies `inside`.
fn fill_where(out: &mut Bitmap, bbox: (f64, f64, f64, f64), inside: impl Fn(f64, f64) -> bool) {
    let (w, h) = (f64::from(out.width()), f64::from(out.height()));
    let x0 = (bbox.0 - 1.0).floor().clamp(0.0, w) as u32;
    let y0 = (bbox.1 - 1.0).floor().clamp(0.0, h) as u32;
    let x1 = (bbox.2 + 1.0).ceil().clamp(0.0, w) as u32;
    let y1 = (bbox.3 + 1.0).ceil().clamp(0.0, h) as u32;
    for y in y0..y1 {
        for x in x0..x1 {
            if !out.get(x, y) && inside(f64::from(x) + 0.5, f64::from(y) + 0.5) {
                out.set(x, y, true);
            }
        }
    }
}
