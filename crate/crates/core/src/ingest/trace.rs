//! Outer boundary of the largest 8-connected foreground component.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::geometry::Contour;
use crate::ingest::mask::Mask;
use crate::point::Point;

/// Neighbor offsets `(dcol, drow)` in clockwise screen order, starting west.
const RING: [(isize, isize); 8] = [
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
];

/// Component label per cell (`usize::MAX` for background) and the size of
/// each component.
fn label_components(mask: &Mask) -> (Vec<usize>, Vec<usize>) {
    let (w, h) = (mask.width(), mask.height());
    let mut labels = vec![usize::MAX; w * h];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..w * h {
        if !mask.cells()[start] || labels[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        labels[start] = id;
        queue.push_back(start);
        while let Some(cell) = queue.pop_front() {
            size += 1;
            let (c, r) = ((cell % w) as isize, (cell / w) as isize);
            for (dc, dr) in RING {
                let (nc, nr) = (c + dc, r + dr);
                if mask.get_signed(nc, nr) {
                    let n = nr as usize * w + nc as usize;
                    if labels[n] == usize::MAX {
                        labels[n] = id;
                        queue.push_back(n);
                    }
                }
            }
        }
        sizes.push(size);
    }
    (labels, sizes)
}

/// Moore-neighbor trace of the component `id`, returning the visited pixel
/// positions `(col, row)`. Stops on re-entering the start pixel from the
/// initial backtrack direction.
fn moore_trace(mask: &Mask, labels: &[usize], id: usize) -> Vec<(isize, isize)> {
    let w = mask.width();
    let inside = |c: isize, r: isize| mask.get_signed(c, r) && labels[r as usize * w + c as usize] == id;
    let first = labels.iter().position(|&l| l == id).unwrap();
    let start = ((first % w) as isize, (first / w) as isize);
    // The west neighbor of the first raster pixel is background.
    let start_back = 0usize;

    let mut path = vec![start];
    let (mut p, mut back) = (start, start_back);
    let limit = 4 * labels.len() + 16;
    for _ in 0..limit {
        let mut next = None;
        for i in 1..=8 {
            let d = (back + i) % 8;
            let (c, r) = (p.0 + RING[d].0, p.1 + RING[d].1);
            if inside(c, r) {
                next = Some(((c, r), (back + i - 1) % 8));
                break;
            }
        }
        let Some((q, prev_dir)) = next else {
            // Isolated pixel.
            return path;
        };
        // Direction of the backtrack cell as seen from q.
        let b = (p.0 + RING[prev_dir].0, p.1 + RING[prev_dir].1);
        let rel = (b.0 - q.0, b.1 - q.1);
        back = RING.iter().position(|&o| o == rel).unwrap();
        p = q;
        if p == start && back == start_back {
            break;
        }
        path.push(p);
    }
    path
}

/// Drops immediate repeats and one-pixel spurs `a, b, a -> a`.
fn remove_spurs(mut v: Vec<(isize, isize)>) -> Vec<(isize, isize)> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let mut changed = false;
        let mut out: Vec<(isize, isize)> = Vec::with_capacity(n);
        for &p in &v {
            if out.last() == Some(&p) {
                changed = true;
                continue;
            }
            if out.len() >= 2 && out[out.len() - 2] == p {
                out.pop();
                changed = true;
                continue;
            }
            out.push(p);
        }
        // Wrap-around cases.
        while out.len() >= 2 && out.first() == out.last() {
            out.pop();
            changed = true;
        }
        while out.len() >= 3 && out[1] == out[out.len() - 1] {
            out.remove(0);
            changed = true;
        }
        while out.len() >= 3 && out[0] == out[out.len() - 2] {
            out.pop();
            changed = true;
        }
        v = out;
        if !changed {
            return v;
        }
    }
}

fn pixel_area(v: &[(isize, isize)]) -> f64 {
    let n = v.len();
    let twice: isize = (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            a.0 * b.1 - b.0 * a.1
        })
        .sum();
    twice.unsigned_abs() as f64 / 2.0
}

/// Splits a closed pixel path at every repeated pixel and keeps the loop
/// enclosing the largest area.
fn largest_loop(v: Vec<(isize, isize)>) -> Vec<(isize, isize)> {
    let mut seen: HashMap<(isize, isize), usize> = HashMap::new();
    let mut stack: Vec<(isize, isize)> = Vec::with_capacity(v.len());
    let mut loops = Vec::new();
    for p in v {
        if let Some(&at) = seen.get(&p) {
            let piece: Vec<_> = stack.drain(at + 1..).collect();
            for q in &piece {
                seen.remove(q);
            }
            let mut lp = vec![p];
            lp.extend(piece);
            loops.push(lp);
        } else {
            seen.insert(p, stack.len());
            stack.push(p);
        }
    }
    loops.push(stack);
    loops
        .into_iter()
        .map(remove_spurs)
        .filter(|l| l.len() >= 3)
        .max_by(|a, b| pixel_area(a).total_cmp(&pixel_area(b)))
        .unwrap_or_default()
}

/// Outer boundary of the largest 8-connected foreground component, with
/// one vertex per boundary pixel center.
///
/// Pixel `(col, row)` maps to the point `(col, height - 1 - row)` so that y
/// grows upward. Pinch points, where the boundary passes through a pixel
/// twice, are resolved by keeping the loop with the largest area.
pub fn trace_boundary(mask: &Mask) -> Result<Contour> {
    let (labels, sizes) = label_components(mask);
    let Some(id) = (0..sizes.len()).max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(b.cmp(&a))) else {
        return Err(Error::EmptyForeground);
    };
    let path = largest_loop(remove_spurs(moore_trace(mask, &labels, id)));
    if path.len() < 3 || pixel_area(&path) == 0.0 {
        return Err(Error::DegenerateBoundary);
    }
    let top = mask.height() as f64 - 1.0;
    let pts = path
        .iter()
        .map(|&(c, r)| Point::new(c as f64, top - r as f64))
        .collect();
    Contour::new_simple(pts).map_err(|_| Error::DegenerateBoundary)
}

/// Removes vertices whose neighbors are collinear with them and lie on
/// opposite sides. The tolerance is relative to the adjacent edge lengths.
pub fn prune_collinear(c: &Contour) -> Contour {
    let mut pts: Vec<Point> = c.points().to_vec();
    loop {
        let n = pts.len();
        if n <= 3 {
            break;
        }
        let keep: Vec<bool> = (0..n)
            .map(|i| {
                let (a, b, d) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
                let (u, v) = (b - a, d - b);
                let scale = u.norm() * v.norm();
                !(u.cross(v).abs() <= 1e-12 * scale && u.dot(v) > 0.0)
            })
            .collect();
        if keep.iter().all(|&k| k) {
            break;
        }
        let next: Vec<Point> = pts
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(p, _)| *p)
            .collect();
        if next.len() < 3 {
            break;
        }
        pts = next;
    }
    Contour::from_raw(pts)
}
