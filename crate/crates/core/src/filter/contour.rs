//! Connected components and Moore-neighbour boundary tracing.
//!
//! Foreground is 8-connected and background 4-connected, so every hole is
//! a 4-connected background region that does not touch the image border.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::raster::Bitmap;

/// Clockwise (in image coordinates) Moore neighbourhood, starting west.
const MOORE: [(i64, i64); 8] = [
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
];

const FOUR: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Ordered chain of pixel-centre coordinates.
///
/// Open polylines have at least two points and closed ones at least
/// three, except for the traced boundary of a blob of one or two pixels,
/// which is kept as a (degenerate) closed chain of that many points.
/// Consecutive points are distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    points: Vec<Point<f64>>,
    closed: bool,
}

impl Polyline {
    pub fn new(points: Vec<Point<f64>>, closed: bool) -> Result<Self> {
        let min = if closed { 3 } else { 2 };
        if points.len() < min {
            return Err(Error::InvalidInput(format!(
                "{} polyline needs at least {min} points, got {}",
                if closed { "closed" } else { "open" },
                points.len()
            )));
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(
                "polyline has consecutive duplicate points".into(),
            ));
        }
        Ok(Self { points, closed })
    }

    /// Traced boundaries may be degenerate for tiny blobs.
    pub(crate) fn traced(mut points: Vec<Point<f64>>, closed: bool) -> Self {
        points.dedup();
        Self { points, closed }
    }

    pub fn points(&self) -> &[Point<f64>] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// An 8-connected foreground component.
#[derive(Debug, Clone)]
pub struct Component {
    pub pixels: Vec<(u32, u32)>,
    /// Inclusive pixel bounds `(x0, y0, x1, y1)`.
    pub bbox: (u32, u32, u32, u32),
    /// Indices into [`Labeling::holes`].
    pub holes: Vec<usize>,
}

impl Component {
    /// `max(width, height)` of the bounding box, in pixels.
    pub fn extent(&self) -> u32 {
        let (x0, y0, x1, y1) = self.bbox;
        (x1 - x0 + 1).max(y1 - y0 + 1)
    }

    /// Pixels inside the outer boundary: the component plus its holes.
    pub fn enclosed_area(&self, labeling: &Labeling) -> usize {
        self.pixels.len()
            + self
                .holes
                .iter()
                .map(|&h| labeling.holes[h].pixels.len())
                .sum::<usize>()
    }
}

/// A background region enclosed by one component.
#[derive(Debug, Clone)]
pub struct Hole {
    pub pixels: Vec<(u32, u32)>,
    pub parent: usize,
}

/// Component labelling of a binary raster.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub components: Vec<Component>,
    pub holes: Vec<Hole>,
    /// Per pixel: `0` background, `k + 1` for component `k`.
    labels: Vec<u32>,
    width: u32,
}

impl Labeling {
    pub fn component_at(&self, x: u32, y: u32) -> Option<usize> {
        match self.labels[y as usize * self.width as usize + x as usize] {
            0 => None,
            k => Some(k as usize - 1),
        }
    }
}

/// Labels 8-connected foreground components and their 4-connected holes.
/// Components are numbered in raster order of their first pixel.
pub fn label_components(bin: &Bitmap) -> Labeling {
    let (w, h) = (bin.width(), bin.height());
    let idx = |x: u32, y: u32| y as usize * w as usize + x as usize;
    let mut labels = vec![0u32; w as usize * h as usize];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();

    for y in 0..h {
        for x in 0..w {
            if !bin.get(x, y) || labels[idx(x, y)] != 0 {
                continue;
            }
            let label = components.len() as u32 + 1;
            labels[idx(x, y)] = label;
            queue.push_back((x, y));
            let mut pixels = Vec::new();
            let mut bbox = (x, y, x, y);
            while let Some((px, py)) = queue.pop_front() {
                pixels.push((px, py));
                bbox = (
                    bbox.0.min(px),
                    bbox.1.min(py),
                    bbox.2.max(px),
                    bbox.3.max(py),
                );
                for (dx, dy) in MOORE {
                    let (nx, ny) = (i64::from(px) + dx, i64::from(py) + dy);
                    if bin.get_signed(nx, ny) && labels[idx(nx as u32, ny as u32)] == 0 {
                        labels[idx(nx as u32, ny as u32)] = label;
                        queue.push_back((nx as u32, ny as u32));
                    }
                }
            }
            pixels.sort_by_key(|&(px, py)| (py, px));
            components.push(Component {
                pixels,
                bbox,
                holes: Vec::new(),
            });
        }
    }

    let mut holes = Vec::new();
    let mut seen = vec![false; labels.len()];
    for y in 0..h {
        for x in 0..w {
            if bin.get(x, y) || seen[idx(x, y)] {
                continue;
            }
            seen[idx(x, y)] = true;
            queue.push_back((x, y));
            let mut pixels = Vec::new();
            let mut touches_border = false;
            while let Some((px, py)) = queue.pop_front() {
                pixels.push((px, py));
                if px == 0 || py == 0 || px + 1 == w || py + 1 == h {
                    touches_border = true;
                }
                for (dx, dy) in FOUR {
                    let (nx, ny) = (i64::from(px) + dx, i64::from(py) + dy);
                    if nx < 0 || ny < 0 || nx >= i64::from(w) || ny >= i64::from(h) {
                        continue;
                    }
                    let (nx, ny) = (nx as u32, ny as u32);
                    if !bin.get(nx, ny) && !seen[idx(nx, ny)] {
                        seen[idx(nx, ny)] = true;
                        queue.push_back((nx, ny));
                    }
                }
            }
            if touches_border {
                continue;
            }
            pixels.sort_by_key(|&(px, py)| (py, px));
            // The west neighbour of the first hole pixel belongs to the
            // enclosing component.
            let (fx, fy) = pixels[0];
            let parent = labels[idx(fx - 1, fy)] as usize - 1;
            components[parent].holes.push(holes.len());
            holes.push(Hole { pixels, parent });
        }
    }

    Labeling {
        components,
        holes,
        labels,
        width: w,
    }
}

/// Moore-neighbour tracing that stops once the first move repeats.
///
/// `start` must be the first pixel of the region in raster order. Returns
/// the boundary pixels in clockwise order (image coordinates), starting at
/// `start`.
pub fn trace_boundary(
    inside: impl Fn(i64, i64) -> bool,
    start: (i64, i64),
    size_hint: usize,
) -> Vec<(i64, i64)> {
    let mut out = vec![start];
    let mut p = start;
    // Direction from `p` to its backtrack (a background neighbour).
    let mut back = 0usize;
    let cap = 8 * size_hint + 16;
    for _ in 0..cap {
        let mut next = None;
        for k in 1..=8 {
            let d = (back + k) % 8;
            let q = (p.0 + MOORE[d].0, p.1 + MOORE[d].1);
            if inside(q.0, q.1) {
                let prev = (back + k - 1) % 8;
                let b = (p.0 + MOORE[prev].0, p.1 + MOORE[prev].1);
                let rel = (b.0 - q.0, b.1 - q.1);
                let nb = MOORE
                    .iter()
                    .position(|&m| m == rel)
                    .expect("adjacent neighbours");
                next = Some((q, nb));
                break;
            }
        }
        let Some((q, nb)) = next else {
            break;
        };
        if p == start && out.len() > 1 && q == out[1] {
            break;
        }
        p = q;
        back = nb;
        out.push(p);
    }
    // The loop ends after re-entering `start`; drop that closing repeat.
    while out.len() > 1 && out.last() == Some(&start) {
        out.pop();
    }
    out
}

fn pixel_center(p: (i64, i64)) -> Point<f64> {
    Point::new(p.0 as f64 + 0.5, p.1 as f64 + 0.5)
}

/// One traced boundary.
#[derive(Debug, Clone)]
pub struct Contour {
    pub polyline: Polyline,
    /// `true` for the boundary of a hole.
    pub hole: bool,
    /// Index of the component this boundary belongs to (the enclosing
    /// component for holes).
    pub component: usize,
    /// Pixels enclosed by the boundary.
    pub area: usize,
}

pub(crate) fn component_contour(bin: &Bitmap, labeling: &Labeling, k: usize) -> Contour {
    let c = &labeling.components[k];
    let (sx, sy) = c.pixels[0];
    let inside = |x: i64, y: i64| {
        bin.get_signed(x, y) && labeling.component_at(x as u32, y as u32) == Some(k)
    };
    let pts = trace_boundary(inside, (i64::from(sx), i64::from(sy)), c.pixels.len());
    Contour {
        polyline: Polyline::traced(pts.into_iter().map(pixel_center).collect(), true),
        hole: false,
        component: k,
        area: c.enclosed_area(labeling),
    }
}

pub(crate) fn hole_contour(labeling: &Labeling, h: usize) -> Contour {
    let hole = &labeling.holes[h];
    let mut mask = std::collections::HashSet::with_capacity(hole.pixels.len());
    mask.extend(
        hole.pixels
            .iter()
            .map(|&(x, y)| (i64::from(x), i64::from(y))),
    );
    let (sx, sy) = hole.pixels[0];
    let pts = trace_boundary(
        |x, y| mask.contains(&(x, y)),
        (i64::from(sx), i64::from(sy)),
        hole.pixels.len(),
    );
    Contour {
        polyline: Polyline::traced(pts.into_iter().map(pixel_center).collect(), true),
        hole: true,
        component: hole.parent,
        area: hole.pixels.len(),
    }
}

/// Traces the outer boundary of every component and the boundary of every
/// hole, ordered by descending enclosed area (outer before hole on ties,
/// then by starting point).
pub fn extract_contours(bin: &Bitmap) -> Vec<Contour> {
    let labeling = label_components(bin);
    let mut out: Vec<Contour> = (0..labeling.components.len())
        .map(|k| component_contour(bin, &labeling, k))
        .chain((0..labeling.holes.len()).map(|h| hole_contour(&labeling, h)))
        .collect();
    out.sort_by(|a, b| {
        b.area.cmp(&a.area).then(a.hole.cmp(&b.hole)).then_with(|| {
            let (pa, pb) = (a.polyline.points()[0], b.polyline.points()[0]);
            pa.y.total_cmp(&pb.y).then(pa.x.total_cmp(&pb.x))
        })
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::Frame;

    fn bitmap(w: u32, h: u32, on: impl Fn(u32, u32) -> bool) -> Bitmap {
        Bitmap::from_fn(Frame::new(w, h).unwrap(), on)
    }

    #[test]
    fn blank_has_no_contours() {
        assert!(extract_contours(&bitmap(8, 8, |_, _| false)).is_empty());
    }

    #[test]
    fn filled_square_boundary() {
        let bin = bitmap(20, 20, |x, y| (5..15).contains(&x) && (5..15).contains(&y));
        let contours = extract_contours(&bin);
        assert_eq!(contours.len(), 1);
        assert_eq!(contours[0].polyline.len(), 36);
        assert!(contours[0].polyline.is_closed());
        assert_eq!(contours[0].area, 100);
    }

    #[test]
    fn two_squares_two_contours_largest_first() {
        let bin = bitmap(40, 20, |x, y| {
            ((2..6).contains(&x) && (2..6).contains(&y))
                || ((20..30).contains(&x) && (5..15).contains(&y))
        });
        let contours = extract_contours(&bin);
        assert_eq!(contours.len(), 2);
        assert_eq!(contours[0].area, 100);
        assert_eq!(contours[1].area, 16);
    }

    #[test]
    fn ring_has_outer_and_hole() {
        let bin = bitmap(20, 20, |x, y| {
            let inside = (3..17).contains(&x) && (3..17).contains(&y);
            let core = (6..14).contains(&x) && (6..14).contains(&y);
            inside && !core
        });
        let contours = extract_contours(&bin);
        assert_eq!(contours.len(), 2);
        assert!(!contours[0].hole);
        assert_eq!(contours[0].area, 14 * 14);
        assert!(contours[1].hole);
        assert_eq!(contours[1].area, 64);
        assert_eq!(contours[1].polyline.len(), 28);
    }

    #[test]
    fn single_pixel_and_line() {
        let bin = bitmap(10, 10, |x, y| {
            (x == 2 && y == 2) || (y == 7 && (3..8).contains(&x))
        });
        let contours = extract_contours(&bin);
        assert_eq!(contours.len(), 2);
        assert_eq!(contours[0].polyline.len(), 8);
        assert_eq!(contours[1].polyline.len(), 1);
    }

    #[test]
    fn traced_points_are_boundary_pixels() {
        let bin = bitmap(30, 30, |x, y| {
            let (dx, dy) = (x as f64 - 15.0, y as f64 - 15.0);
            dx * dx + dy * dy <= 100.0
        });
        let c = &extract_contours(&bin)[0];
        for p in c.polyline.points() {
            let (x, y) = ((p.x - 0.5) as i64, (p.y - 0.5) as i64);
            assert!(bin.get_signed(x, y));
            let touches_bg = MOORE
                .iter()
                .any(|&(dx, dy)| !bin.get_signed(x + dx, y + dy));
            assert!(touches_bg);
        }
        assert!(Polyline::new(c.polyline.points().to_vec(), true).is_ok());
    }
}
