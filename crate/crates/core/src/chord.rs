//! Order-one linear chord diagrams on the sphere, winding numbers of
//! singular loops, surgery, and the regular diagrams `R_w`.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::Mul;

use crate::closure::{minimal_shortcut, Shortcut};
use crate::diagram::{CrossingKind, CrossingNode, Gauss, KnotoidDiagram, Side, Surface};
use crate::error::{Error, Result};
use crate::generate::{polyline_diagram, FlatCrossing, Point};
use crate::moves;

/// A spherical linear chord diagram with one chord, recorded by the winding
/// number of the chord around the leg (counterclockwise positive).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram1 {
    pub w: i64,
}

impl ChordDiagram1 {
    pub fn new(w: i64) -> Self {
        ChordDiagram1 { w }
    }

    pub fn identity() -> Self {
        ChordDiagram1 { w: 0 }
    }

    pub fn inverse(self) -> Self {
        ChordDiagram1 { w: -self.w }
    }
}

impl Mul for ChordDiagram1 {
    type Output = ChordDiagram1;

    fn mul(self, rhs: ChordDiagram1) -> ChordDiagram1 {
        chord_multiply(self, rhs)
    }
}

impl fmt::Display for ChordDiagram1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.w)
    }
}

pub fn chord_multiply(a: ChordDiagram1, b: ChordDiagram1) -> ChordDiagram1 {
    ChordDiagram1 { w: a.w + b.w }
}

pub fn singular_height(c: ChordDiagram1) -> u64 {
    c.w.unsigned_abs()
}

/// Edges of the loop that starts and ends at crossing `c`.
pub(crate) fn loop_edges(d: &KnotoidDiagram, c: usize) -> Result<std::ops::RangeInclusive<usize>> {
    d.crossing(c)?;
    let (i, j) = Gauss::from_diagram(d).pass_pairs()[c];
    Ok(i + 1..=j)
}

/// Winding number around the leg of the loop at crossing `c`, measured with
/// the given leg-to-head dual path.
pub fn winding_of_loop_along(d: &KnotoidDiagram, c: usize, alpha: &Shortcut) -> Result<i64> {
    let edges = loop_edges(d, c)?;
    let per_edge = alpha.per_edge(d.edge_count());
    Ok(-edges.map(|e| per_edge[e]).sum::<i64>())
}

pub fn winding_of_loop(d: &KnotoidDiagram, c: usize) -> Result<i64> {
    winding_of_loop_along(d, c, &minimal_shortcut(d))
}

fn only_singular(d: &KnotoidDiagram) -> Result<usize> {
    let found: Vec<usize> =
        (0..d.crossing_count()).filter(|&c| d.crossings()[c].kind == CrossingKind::Singular).collect();
    match found.as_slice() {
        [s] => Ok(*s),
        _ => Err(Error::WrongSingularCount { expected: 1, found: found.len() }),
    }
}

pub fn chord_of_singular(d: &KnotoidDiagram) -> Result<ChordDiagram1> {
    if d.surface() != Surface::Sphere {
        return Err(Error::NotSpherical);
    }
    let s = only_singular(d)?;
    Ok(ChordDiagram1 { w: winding_of_loop(d, s)? })
}

fn singular_kink() -> KnotoidDiagram {
    let node = CrossingNode { kind: CrossingKind::Singular, slots: [0, 2, 1, 1] };
    KnotoidDiagram::new(Surface::Sphere, vec![node], None).expect("singular kink is valid")
}

/// Leg at the origin, a short segment out to a spiral winding `|w|` times
/// around the leg, a return path crossing the first segment, then an exit
/// to the outside crossing every turn of the spiral once.
fn spiral_points(w: i64) -> Vec<Point> {
    const STEPS: i64 = 64;
    const SCALE: f64 = 100.0;
    let turns = w.unsigned_abs() as i64;
    let flip = if w < 0 { -1 } else { 1 };
    let at = |x: f64, y: f64| -> Point { ((x * SCALE).round() as i64, flip * (y * SCALE).round() as i64) };
    let mut pts = vec![(0, 0)];
    for k in 0..=STEPS * turns - 2 {
        let theta = TAU * k as f64 / STEPS as f64;
        let r = 10.0 + 10.0 * theta / TAU;
        pts.push(at(r * theta.cos(), r * theta.sin()));
    }
    pts.push(at(12.0, -2.0));
    pts.push(at(7.0, 1.0));
    pts.push(at(7.0, 10.0 * turns as f64 + 30.0));
    pts
}

fn spiral_diagram(w: i64, assign: impl Fn(&FlatCrossing) -> bool) -> Result<KnotoidDiagram> {
    let d = polyline_diagram(&spiral_points(w), |_, c| {
        if c.first == 0 {
            (CrossingKind::Singular, false)
        } else {
            (CrossingKind::Classical, assign(c))
        }
    })?;
    let expected = 2 * w.unsigned_abs() as usize;
    if d.crossing_count() != expected {
        return Err(Error::Construction(format!("spiral for w = {w} has {} crossings", d.crossing_count())));
    }
    Ok(d)
}

/// The descending diagram with one singular crossing next to the leg whose
/// loop winds `w` times around the leg, with `2|w| - 1` classical crossings.
/// For `w = 0` this is the singular kink.
pub fn regular_diagram(w: i64) -> KnotoidDiagram {
    if w == 0 {
        return singular_kink();
    }
    spiral_diagram(w, |_| true).expect("spiral construction is generic")
}

/// Realizes a chord diagram as a singular knotoid diagram: the chord becomes
/// the singular loop, the rest of the interval passes over it, and the band
/// twist leaves one positive kink on the loop.
pub fn surgery(c: ChordDiagram1) -> KnotoidDiagram {
    if c.w == 0 {
        return singular_kink();
    }
    let d = spiral_diagram(c.w, |_| false).expect("spiral construction is generic");
    moves::add_kink(&d, 1, Side::Left, 1).expect("edge 1 exists")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{height_of_diagram, simple_shortcuts};

    #[test]
    fn group_law() {
        let a = ChordDiagram1::new(1);
        assert_eq!(a * a.inverse(), ChordDiagram1::identity());
        assert_eq!(chord_multiply(ChordDiagram1::new(2), ChordDiagram1::new(3)).w, 5);
        assert_eq!(singular_height(ChordDiagram1::new(-2)), 2);
    }

    #[test]
    fn singular_kink_has_zero_winding() {
        let d = regular_diagram(0);
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(chord_of_singular(&d).unwrap().w, 0);
        assert_eq!(height_of_diagram(&d), 0);
    }

    #[test]
    fn regular_diagrams() {
        for w in 1..=4i64 {
            let d = regular_diagram(w);
            assert_eq!(d.count_kind(CrossingKind::Classical), 2 * w as usize - 1);
            assert_eq!(d.crossings()[0].kind, CrossingKind::Singular);
            assert_eq!(chord_of_singular(&d).unwrap().w, w);
            assert_eq!(height_of_diagram(&d), w as usize);
            assert_eq!(chord_of_singular(&regular_diagram(-w)).unwrap().w, -w);
        }
    }

    #[test]
    fn winding_is_path_independent() {
        let d = regular_diagram(3);
        let paths = simple_shortcuts(&d, 10);
        assert!(paths.len() > 1);
        for p in &paths {
            assert_eq!(winding_of_loop_along(&d, 0, p).unwrap(), 3);
        }
    }

    #[test]
    fn surgery_round_trip() {
        for w in -3..=3 {
            let d = surgery(ChordDiagram1::new(w));
            assert_eq!(chord_of_singular(&d).unwrap().w, w);
        }
    }

    #[test]
    fn wrong_singular_count() {
        let d = KnotoidDiagram::trivial();
        assert_eq!(chord_of_singular(&d), Err(Error::WrongSingularCount { expected: 1, found: 0 }));
    }
}
