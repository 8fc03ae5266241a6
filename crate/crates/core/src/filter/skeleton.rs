//! Centre lines of thin strokes.
//!
//! A stroke component is thinned (Zhang–Suen), reduced to a minimal
//! 8-connected skeleton, stripped of short spurs and finally walked into
//! polylines between end points and junctions. Loops without junctions
//! become closed polylines.

use std::collections::HashSet;

use super::contour::Polyline;
use crate::geom::Point;

const RING: [(i64, i64); 8] = [
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
];

/// Binary grid with a one-pixel background margin around a component.
#[derive(Debug, Clone)]
pub struct Grid {
    w: i64,
    h: i64,
    /// Pixel-space position of grid cell `(0, 0)`.
    origin: (i64, i64),
    data: Vec<bool>,
}

impl Grid {
    pub fn from_pixels(pixels: &[(u32, u32)], bbox: (u32, u32, u32, u32)) -> Self {
        let origin = (i64::from(bbox.0) - 1, i64::from(bbox.1) - 1);
        let w = i64::from(bbox.2 - bbox.0) + 3;
        let h = i64::from(bbox.3 - bbox.1) + 3;
        let mut g = Self {
            w,
            h,
            origin,
            data: vec![false; (w * h) as usize],
        };
        for &(x, y) in pixels {
            g.set(i64::from(x) - origin.0, i64::from(y) - origin.1, true);
        }
        g
    }

    pub fn get(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && x < self.w && y < self.h && self.data[(y * self.w + x) as usize]
    }

    fn set(&mut self, x: i64, y: i64, v: bool) {
        self.data[(y * self.w + x) as usize] = v;
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    fn ring(&self, x: i64, y: i64) -> [bool; 8] {
        RING.map(|(dx, dy)| self.get(x + dx, y + dy))
    }

    fn degree(&self, x: i64, y: i64) -> usize {
        self.ring(x, y).iter().filter(|&&b| b).count()
    }

    fn neighbours(&self, x: i64, y: i64) -> impl Iterator<Item = (i64, i64)> + '_ {
        RING.iter()
            .map(move |&(dx, dy)| (x + dx, y + dy))
            .filter(|&(nx, ny)| self.get(nx, ny))
    }

    fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (0..self.h).flat_map(move |y| (0..self.w).map(move |x| (x, y)))
    }

    /// Chamfer (3-4) distance to the nearest background pixel, in pixels,
    /// maximised over the foreground.
    pub fn max_inscribed_distance(&self) -> f64 {
        let (w, h) = (self.w as usize, self.h as usize);
        let big = u32::MAX / 2;
        let mut d: Vec<u32> = self.data.iter().map(|&b| if b { big } else { 0 }).collect();
        for y in 0..h {
            for x in 0..w {
                let i = y * w + x;
                if d[i] == 0 {
                    continue;
                }
                let mut v = d[i];
                if x > 0 {
                    v = v.min(d[i - 1] + 3);
                }
                if y > 0 {
                    v = v.min(d[i - w] + 3);
                    if x > 0 {
                        v = v.min(d[i - w - 1] + 4);
                    }
                    if x + 1 < w {
                        v = v.min(d[i - w + 1] + 4);
                    }
                }
                d[i] = v;
            }
        }
        for y in (0..h).rev() {
            for x in (0..w).rev() {
                let i = y * w + x;
                if d[i] == 0 {
                    continue;
                }
                let mut v = d[i];
                if x + 1 < w {
                    v = v.min(d[i + 1] + 3);
                }
                if y + 1 < h {
                    v = v.min(d[i + w] + 3);
                    if x + 1 < w {
                        v = v.min(d[i + w + 1] + 4);
                    }
                    if x > 0 {
                        v = v.min(d[i + w - 1] + 4);
                    }
                }
                d[i] = v;
            }
        }
        f64::from(d.into_iter().max().unwrap_or(0)) / 3.0
    }
}

/// Zhang–Suen thinning, in place.
pub fn thin(g: &mut Grid) {
    let mut to_clear = Vec::new();
    loop {
        let mut changed = false;
        for step in 0..2 {
            to_clear.clear();
            for (x, y) in g.cells() {
                if !g.get(x, y) {
                    continue;
                }
                let p = g.ring(x, y);
                let b = p.iter().filter(|&&v| v).count();
                if !(2..=6).contains(&b) {
                    continue;
                }
                let a = (0..8).filter(|&i| !p[i] && p[(i + 1) % 8]).count();
                if a != 1 {
                    continue;
                }
                // p[0] = N, p[2] = E, p[4] = S, p[6] = W
                let (n, e, s, w) = (p[0], p[2], p[4], p[6]);
                let ok = if step == 0 {
                    !(n && e && s) && !(e && s && w)
                } else {
                    !(n && e && w) && !(n && s && w)
                };
                if ok {
                    to_clear.push((x, y));
                }
            }
            for &(x, y) in &to_clear {
                g.set(x, y, false);
            }
            changed |= !to_clear.is_empty();
        }
        if !changed {
            break;
        }
    }
}

/// Whether removing `(x, y)` preserves 8/4 topology: its foreground
/// neighbours form one 8-connected group and it touches 4-background.
fn is_simple(g: &Grid, x: i64, y: i64) -> bool {
    let ring = g.ring(x, y);
    let on: Vec<usize> = (0..8).filter(|&i| ring[i]).collect();
    if on.len() < 2 {
        return false;
    }
    let four_bg = [0, 2, 4, 6].iter().any(|&i| !ring[i]);
    if !four_bg {
        return false;
    }
    let mut group = [usize::MAX; 8];
    let mut groups = 0;
    for &start in &on {
        if group[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        group[start] = groups;
        while let Some(i) = stack.pop() {
            for &j in &on {
                if group[j] == usize::MAX {
                    let (a, b) = (RING[i], RING[j]);
                    if (a.0 - b.0).abs() <= 1 && (a.1 - b.1).abs() <= 1 {
                        group[j] = groups;
                        stack.push(j);
                    }
                }
            }
        }
        groups += 1;
    }
    groups == 1
}

/// Deletes redundant pixels until the skeleton is minimally 8-connected.
fn minimize(g: &mut Grid) {
    loop {
        let mut changed = false;
        for y in 0..g.h {
            for x in 0..g.w {
                if g.get(x, y) && is_simple(g, x, y) {
                    g.set(x, y, false);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

#[derive(Debug, Clone)]
struct Path {
    cells: Vec<(i64, i64)>,
    closed: bool,
}

/// Walks a minimal skeleton into paths. Adjacent junction pixels are
/// treated as one node and never produce paths between themselves.
fn trace_paths(g: &Grid) -> Vec<Path> {
    let is_node = |(x, y): (i64, i64)| g.degree(x, y) != 2;
    let is_junction = |(x, y): (i64, i64)| g.degree(x, y) > 2;
    let mut visited: HashSet<(i64, i64)> = HashSet::new();
    let mut node_edges: HashSet<((i64, i64), (i64, i64))> = HashSet::new();
    let mut paths = Vec::new();

    let nodes: Vec<(i64, i64)> = g
        .cells()
        .filter(|&c| g.get(c.0, c.1) && is_node(c))
        .collect();
    for &n in &nodes {
        if g.degree(n.0, n.1) == 0 {
            paths.push(Path {
                cells: vec![n],
                closed: false,
            });
            continue;
        }
        for first in g.neighbours(n.0, n.1).collect::<Vec<_>>() {
            if is_node(first) {
                let key = (n.min(first), n.max(first));
                if (is_junction(n) && is_junction(first)) || !node_edges.insert(key) {
                    continue;
                }
                paths.push(Path {
                    cells: vec![n, first],
                    closed: false,
                });
                continue;
            }
            if !visited.insert(first) {
                continue;
            }
            let mut cells = vec![n, first];
            let (mut prev, mut cur) = (n, first);
            while let Some(next) = g.neighbours(cur.0, cur.1).find(|&q| q != prev) {
                cells.push(next);
                if is_node(next) || !visited.insert(next) {
                    break;
                }
                prev = cur;
                cur = next;
            }
            paths.push(Path {
                cells,
                closed: false,
            });
        }
    }

    // Whatever is left consists of junction-free loops.
    for c in g.cells() {
        if !g.get(c.0, c.1) || is_node(c) || !visited.insert(c) {
            continue;
        }
        let mut cells = vec![c];
        let mut prev = c;
        let mut cur = g.neighbours(c.0, c.1).next().expect("degree two");
        while cur != c && visited.insert(cur) {
            cells.push(cur);
            let Some(next) = g.neighbours(cur.0, cur.1).find(|&q| q != prev) else {
                break;
            };
            prev = cur;
            cur = next;
        }
        paths.push(Path {
            cells,
            closed: true,
        });
    }
    paths
}

/// Repeatedly removes the shortest end-point-to-junction branch shorter
/// than `min_len` pixels.
fn prune_spurs(g: &mut Grid, min_len: usize) {
    for _ in 0..64 {
        let spur = trace_paths(g)
            .into_iter()
            .filter(|p| !p.closed && p.cells.len() >= 2 && p.cells.len() < min_len)
            .filter_map(|p| {
                let a = p.cells[0];
                let b = p.cells[p.cells.len() - 1];
                let (da, db) = (g.degree(a.0, a.1), g.degree(b.0, b.1));
                if da == 1 && db > 2 {
                    Some(p.cells[..p.cells.len() - 1].to_vec())
                } else if db == 1 && da > 2 {
                    Some(p.cells[1..].to_vec())
                } else {
                    None
                }
            })
            .min_by_key(Vec::len);
        let Some(body) = spur else { break };
        for (x, y) in body {
            g.set(x, y, false);
        }
        minimize(g);
    }
}

/// Skeleton of a stroke component.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub polylines: Vec<Polyline>,
    /// Number of skeleton pixels after pruning.
    pub length: usize,
}

/// Thins `component` and walks its skeleton into pixel-centre polylines.
pub fn skeletonize(pixels: &[(u32, u32)], bbox: (u32, u32, u32, u32), spur_len: usize) -> Skeleton {
    let mut g = Grid::from_pixels(pixels, bbox);
    thin(&mut g);
    minimize(&mut g);
    prune_spurs(&mut g, spur_len);
    let length = g.count();
    let to_point = |(x, y): (i64, i64)| {
        Point::new((x + g.origin.0) as f64 + 0.5, (y + g.origin.1) as f64 + 0.5)
    };
    let polylines = trace_paths(&g)
        .into_iter()
        .map(|p| {
            let closed = p.closed && p.cells.len() >= 3;
            Polyline::traced(p.cells.into_iter().map(to_point).collect(), closed)
        })
        .collect();
    Skeleton { polylines, length }
}
