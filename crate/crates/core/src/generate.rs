//! Diagram generators: planar polylines traced into combinatorial diagrams,
//! seeded random diagrams, and exhaustive enumeration of small codes.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{validate, CrossingKind, Gauss, KnotoidDiagram, PassInfo, Surface};
use crate::error::{Error, Result};

pub type Point = (i64, i64);

/// A transversal self-intersection of a polyline, as a pair of passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlatCrossing {
    pub first: usize,
    pub second: usize,
    /// The later strand heads to the left of the earlier one.
    pub second_left: bool,
}

fn cross(a: Point, b: Point) -> i128 {
    i128::from(a.0) * i128::from(b.1) - i128::from(a.1) * i128::from(b.0)
}

fn sub(a: Point, b: Point) -> Point {
    (a.0 - b.0, a.1 - b.1)
}

/// Position along the path: segment index plus the fraction `num / den`.
#[derive(Clone, Copy, Debug)]
struct Param {
    seg: usize,
    num: i128,
    den: i128,
}

impl Param {
    fn cmp(&self, other: &Param) -> Ordering {
        self.seg.cmp(&other.seg).then((self.num * other.den).cmp(&(other.num * self.den)))
    }
}

fn degenerate(msg: &str) -> Error {
    Error::Construction(format!("polyline is not generic: {msg}"))
}

/// Traces the self-intersections of a polyline running from the leg (first
/// point) to the head (last point). Fails unless every intersection is a
/// transversal double point in the interior of two segments.
pub fn trace_polyline(points: &[Point]) -> Result<Vec<FlatCrossing>> {
    if points.len() < 2 {
        return Err(degenerate("fewer than two points"));
    }
    let segs: Vec<(Point, Point)> = points.windows(2).map(|w| (w[0], sub(w[1], w[0]))).collect();
    if segs.iter().any(|&(_, r)| r == (0, 0)) {
        return Err(degenerate("repeated point"));
    }
    // (param on the earlier segment, param on the later one, second_left)
    let mut hits: Vec<(Param, Param, bool)> = Vec::new();
    for i in 0..segs.len() {
        let (p, r) = segs[i];
        if i + 1 < segs.len() {
            let s = segs[i + 1].1;
            if cross(r, s) == 0 && r.0 * s.0 + r.1 * s.1 < 0 {
                return Err(degenerate("path doubles back on itself"));
            }
        }
        for (j, &(q, s)) in segs.iter().enumerate().skip(i + 2) {
            let denom = cross(r, s);
            let qp = sub(q, p);
            if denom == 0 {
                if cross(qp, r) == 0 {
                    return Err(degenerate("collinear segments"));
                }
                continue;
            }
            let (mut tn, mut un, mut d) = (cross(qp, s), cross(qp, r), denom);
            if d < 0 {
                tn = -tn;
                un = -un;
                d = -d;
            }
            let inside = |x: i128| x > 0 && x < d;
            let touching = |x: i128| x == 0 || x == d;
            if inside(tn) && inside(un) {
                hits.push((Param { seg: i, num: tn, den: d }, Param { seg: j, num: un, den: d }, denom > 0));
            } else if (inside(tn) || touching(tn)) && (inside(un) || touching(un)) {
                return Err(degenerate("intersection at a vertex"));
            }
        }
    }
    let mut events: Vec<(Param, usize)> = Vec::with_capacity(2 * hits.len());
    for (k, (a, b, _)) in hits.iter().enumerate() {
        events.push((*a, k));
        events.push((*b, k));
    }
    events.sort_by(|x, y| x.0.cmp(&y.0));
    if events.windows(2).any(|w| w[0].0.cmp(&w[1].0) == Ordering::Equal) {
        return Err(degenerate("triple point"));
    }
    let mut pass_of = vec![(usize::MAX, usize::MAX); hits.len()];
    for (pass, &(_, k)) in events.iter().enumerate() {
        if pass_of[k].0 == usize::MAX {
            pass_of[k].0 = pass;
        } else {
            pass_of[k].1 = pass;
        }
    }
    let mut out: Vec<FlatCrossing> = hits
        .iter()
        .zip(&pass_of)
        .map(|(&(_, _, second_left), &(first, second))| FlatCrossing { first, second, second_left })
        .collect();
    out.sort_by_key(|c| c.first);
    Ok(out)
}

/// Builds a spherical diagram from a polyline. `assign` picks the kind and,
/// for classical crossings, whether the earlier pass is the over-strand.
pub fn polyline_diagram(
    points: &[Point],
    mut assign: impl FnMut(usize, &FlatCrossing) -> (CrossingKind, bool),
) -> Result<KnotoidDiagram> {
    let flat = trace_polyline(points)?;
    let mut passes = vec![0usize; 2 * flat.len()];
    let mut info = Vec::with_capacity(flat.len());
    for (k, c) in flat.iter().enumerate() {
        passes[c.first] = k;
        passes[c.second] = k;
        let (kind, over_first) = assign(k, c);
        let over_first = over_first && kind == CrossingKind::Classical;
        info.push(PassInfo { kind, over_first, second_left: c.second_left });
    }
    let d = Gauss { surface: Surface::Sphere, passes, info }.to_diagram();
    let report = validate(&d);
    if !report.is_valid() {
        return Err(Error::Invalid(report));
    }
    Ok(d)
}

/// Random classical diagram with `1..=max_crossings` crossings, traced from a
/// random polyline with random over/under data.
pub fn random_diagram<R: Rng>(rng: &mut R, max_crossings: usize) -> KnotoidDiagram {
    loop {
        let k = rng.gen_range(3..=7);
        let points: Vec<Point> = (0..k).map(|_| (rng.gen_range(0..1000), rng.gen_range(0..1000))).collect();
        let Ok(flat) = trace_polyline(&points) else { continue };
        if flat.is_empty() || flat.len() > max_crossings {
            continue;
        }
        let overs: Vec<bool> = (0..flat.len()).map(|_| rng.gen()).collect();
        if let Ok(d) = polyline_diagram(&points, |k, _| (CrossingKind::Classical, overs[k])) {
            return d;
        }
    }
}

/// `count` random classical diagrams from one seed.
pub fn random_diagrams(seed: u64, count: usize, max_crossings: usize) -> Vec<KnotoidDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_diagram(&mut rng, max_crossings)).collect()
}

/// Random diagrams with exactly `singular` singular crossings, made by
/// nodifying randomly chosen crossings of random classical diagrams.
pub fn random_singular_diagrams(seed: u64, count: usize, singular: usize, max_crossings: usize) -> Vec<KnotoidDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = random_diagram(&mut rng, max_crossings.max(singular));
        if d.crossing_count() < singular {
            continue;
        }
        let mut ids: Vec<usize> = (0..d.crossing_count()).collect();
        ids.shuffle(&mut rng);
        let mut g = Gauss::from_diagram(&d);
        for &c in &ids[..singular] {
            g.info[c].kind = CrossingKind::Singular;
            g.info[c].over_first = false;
        }
        out.push(g.to_diagram());
    }
    out
}

/// Every valid classical spherical diagram with exactly `n` crossings.
pub fn enumerate_diagrams(n: usize) -> Vec<KnotoidDiagram> {
    let mut out = Vec::new();
    let mut seq = vec![usize::MAX; 2 * n];
    let mut words = Vec::new();
    pairings(&mut seq, 0, 0, &mut words);
    for passes in words {
        for bits in 0u32..(1 << (2 * n)) {
            let info = (0..n)
                .map(|c| PassInfo {
                    kind: CrossingKind::Classical,
                    second_left: bits >> (2 * c) & 1 == 1,
                    over_first: bits >> (2 * c + 1) & 1 == 1,
                })
                .collect();
            let d = Gauss { surface: Surface::Sphere, passes: passes.clone(), info }.to_diagram();
            if validate(&d).is_valid() {
                out.push(d);
            }
        }
    }
    out
}

/// Pass sequences where each crossing appears twice and crossings are
/// numbered in order of first appearance.
fn pairings(seq: &mut Vec<usize>, pos: usize, next: usize, out: &mut Vec<Vec<usize>>) {
    if pos == seq.len() {
        out.push(seq.clone());
        return;
    }
    if seq[pos] != usize::MAX {
        pairings(seq, pos + 1, next, out);
        return;
    }
    seq[pos] = next;
    for q in pos + 1..seq.len() {
        if seq[q] == usize::MAX {
            seq[q] = next;
            pairings(seq, pos + 1, next + 1, out);
            seq[q] = usize::MAX;
        }
    }
    seq[pos] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straight_line_has_no_crossings() {
        let d = polyline_diagram(&[(0, 0), (10, 0)], |_, _| unreachable!()).unwrap();
        assert_eq!(d, KnotoidDiagram::trivial());
    }

    #[test]
    fn counterclockwise_curl_is_a_kink() {
        // East, then north, then back west and south across the first segment.
        let pts = [(0, 0), (10, 0), (10, 10), (5, 10), (5, -5)];
        let flat = trace_polyline(&pts).unwrap();
        assert_eq!(flat, vec![FlatCrossing { first: 0, second: 1, second_left: false }]);
        let d = polyline_diagram(&pts, |_, _| (CrossingKind::Classical, true)).unwrap();
        // Over-strand runs east, the under-strand south: a left-handed crossing.
        assert_eq!(d.crossing_sign(0).unwrap(), -1);
    }

    #[test]
    fn vertex_touch_is_rejected() {
        assert!(trace_polyline(&[(0, 0), (10, 0), (10, 10), (5, 0), (5, -5)]).is_err());
    }

    #[test]
    fn random_diagrams_are_valid_and_seeded() {
        let a = random_diagrams(7, 20, 8);
        assert_eq!(a, random_diagrams(7, 20, 8));
        for d in &a {
            assert!(validate(d).is_valid());
            assert!((1..=8).contains(&d.crossing_count()));
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_diagrams(0).len(), 1);
        assert_eq!(enumerate_diagrams(1).len(), 4);
        let two = enumerate_diagrams(2);
        assert!(!two.is_empty() && two.len() < 3 * 16);
    }

    #[test]
    fn singular_samples_have_the_requested_count() {
        for d in random_singular_diagrams(3, 10, 2, 8) {
            assert_eq!(d.count_kind(CrossingKind::Singular), 2);
            assert!(validate(&d).is_valid());
        }
    }
}
