//! Combinatorial model of knotoid diagrams.
//!
//! A diagram with `n` crossings has `E = 2n + 1` edges labeled `0..E` in
//! traversal order from the leg to the head. Each crossing stores the four
//! incident edge labels in counterclockwise order. The strand entering at
//! slot 0 leaves at slot 2; the transversal strand uses slots 1 and 3. For a
//! classical crossing slot 0 is the incoming under-strand, for singular and
//! virtual crossings it is the incoming edge met first from the leg.
//!
//! Internally most algorithms work on the pass sequence ([`Gauss`]): the
//! curve meets crossings at passes `0..2n`, pass `k` joining edge `k` to
//! edge `k + 1`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    Sphere,
    Plane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingKind {
    Classical,
    Singular,
    Virtual,
}

impl CrossingKind {
    pub fn letter(self) -> char {
        match self {
            CrossingKind::Classical => 'X',
            CrossingKind::Singular => 'S',
            CrossingKind::Virtual => 'V',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrossingNode {
    pub kind: CrossingKind,
    pub slots: [usize; 4],
}

/// Side of an oriented edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn index(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// `(edge, side)` incidences in boundary traversal order (face on the right
    /// of the direction of travel).
    pub boundary: Vec<(usize, Side)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EdgeCount { expected: usize, found: usize },
    LabelOutOfRange { crossing: usize, label: usize },
    EdgeMultiplicity { edge: usize, expected: usize, found: usize },
    StrandMismatch { crossing: usize },
    FirstPassNotInSlotZero { crossing: usize },
    Traversal { edge: usize },
    Planarity { faces: usize, expected: usize },
    MissingOuterFace,
    OuterFaceOutOfRange { face: usize, faces: usize },
    UnexpectedOuterFace,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeCount { expected, found } => {
                write!(f, "edge count: expected {expected}, found {found}")
            }
            Violation::LabelOutOfRange { crossing, label } => {
                write!(f, "label {label} at crossing {crossing} out of range")
            }
            Violation::EdgeMultiplicity { edge, expected, found } => {
                write!(f, "edge multiplicity: edge {edge} used {found} times, expected {expected}")
            }
            Violation::StrandMismatch { crossing } => {
                write!(f, "strand mismatch at crossing {crossing}: slots do not carry consecutive edges")
            }
            Violation::FirstPassNotInSlotZero { crossing } => {
                write!(f, "crossing {crossing}: slot 0 must hold the first incoming edge")
            }
            Violation::Traversal { edge } => write!(f, "traversal broken at edge {edge}"),
            Violation::Planarity { faces, expected } => {
                write!(f, "planarity: {faces} faces, expected {expected}")
            }
            Violation::MissingOuterFace => write!(f, "planar diagram needs an outer face"),
            Violation::OuterFaceOutOfRange { face, faces } => {
                write!(f, "outer face {face} out of range ({faces} faces)")
            }
            Violation::UnexpectedOuterFace => write!(f, "spherical diagram cannot mark an outer face"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnotoidDiagram {
    surface: Surface,
    crossings: Vec<CrossingNode>,
    edge_count: usize,
    outer_face: Option<usize>,
}

impl KnotoidDiagram {
    /// Builds a validated diagram. Crossings are reordered by first visit
    /// from the leg, which is the canonical order used everywhere.
    pub fn new(surface: Surface, crossings: Vec<CrossingNode>, outer_face: Option<usize>) -> Result<Self> {
        let edge_count = 2 * crossings.len() + 1;
        let mut d = Self::unchecked(surface, crossings, edge_count, outer_face);
        let report = validate(&d);
        if !report.is_valid() {
            return Err(Error::Invalid(report));
        }
        d.crossings.sort_by_key(first_incoming);
        Ok(d)
    }

    /// Assembles a diagram without any checks; pair with [`validate`].
    pub fn unchecked(
        surface: Surface,
        crossings: Vec<CrossingNode>,
        edge_count: usize,
        outer_face: Option<usize>,
    ) -> Self {
        KnotoidDiagram { surface, crossings, edge_count, outer_face }
    }

    /// The crossingless diagram on the sphere.
    pub fn trivial() -> Self {
        Self::unchecked(Surface::Sphere, Vec::new(), 1, None)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn crossings(&self) -> &[CrossingNode] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn outer_face(&self) -> Option<usize> {
        self.outer_face
    }

    pub fn count_kind(&self, kind: CrossingKind) -> usize {
        self.crossings.iter().filter(|c| c.kind == kind).count()
    }

    pub fn is_classical(&self) -> bool {
        self.crossings.iter().all(|c| c.kind == CrossingKind::Classical)
    }

    pub(crate) fn require_classical(&self) -> Result<()> {
        if self.count_kind(CrossingKind::Singular) > 0 {
            return Err(Error::SingularPresent);
        }
        if self.count_kind(CrossingKind::Virtual) > 0 {
            return Err(Error::VirtualPresent);
        }
        Ok(())
    }

    /// The same curve regarded on the sphere (outer-face mark dropped).
    pub fn to_sphere(&self) -> Self {
        KnotoidDiagram { surface: Surface::Sphere, outer_face: None, ..self.clone() }
    }

    pub(crate) fn crossing(&self, c: usize) -> Result<&CrossingNode> {
        self.crossings.get(c).ok_or(Error::NoSuchCrossing(c))
    }

    /// Sign of a classical crossing: +1 when the over-strand enters at slot 3.
    pub fn crossing_sign(&self, c: usize) -> Result<i32> {
        let node = self.crossing(c)?;
        if node.kind != CrossingKind::Classical {
            return Err(Error::NotClassical(c));
        }
        Ok(if transversal_in_slot(node) == 3 { 1 } else { -1 })
    }

    pub fn writhe(&self) -> Result<i64> {
        self.require_classical()?;
        (0..self.crossings.len()).map(|c| self.crossing_sign(c).map(i64::from)).sum()
    }

    /// Swaps over and under at every classical crossing.
    pub fn mirror(&self) -> Self {
        let mut g = Gauss::from_diagram(self);
        for info in &mut g.info {
            if info.kind == CrossingKind::Classical {
                info.over_first = !info.over_first;
            }
        }
        g.to_diagram_with_outer(self.outer_face)
    }

    pub fn faces(&self) -> Vec<Face> {
        FaceMap::new(self).faces
    }
}

/// Smallest incoming edge label at a crossing (the first pass through it).
fn first_incoming(c: &CrossingNode) -> usize {
    c.slots[0].min(c.slots[1].min(c.slots[3]))
}

/// Slot (1 or 3) where the transversal strand enters.
pub(crate) fn transversal_in_slot(c: &CrossingNode) -> usize {
    if c.slots[1] < c.slots[3] {
        1
    } else {
        3
    }
}

pub fn validate(d: &KnotoidDiagram) -> ValidationReport {
    let mut v = Vec::new();
    let n = d.crossings.len();
    let e = 2 * n + 1;
    if d.edge_count != e {
        v.push(Violation::EdgeCount { expected: e, found: d.edge_count });
        return ValidationReport { violations: v };
    }
    let mut ranged = true;
    for (ci, c) in d.crossings.iter().enumerate() {
        for &l in &c.slots {
            if l >= e {
                v.push(Violation::LabelOutOfRange { crossing: ci, label: l });
                ranged = false;
            }
        }
    }
    if !ranged {
        return ValidationReport { violations: v };
    }
    let mut count = vec![0usize; e];
    for c in &d.crossings {
        for &l in &c.slots {
            count[l] += 1;
        }
    }
    for (edge, &found) in count.iter().enumerate() {
        let expected = if e == 1 {
            0
        } else if edge == 0 || edge == e - 1 {
            1
        } else {
            2
        };
        if found != expected {
            v.push(Violation::EdgeMultiplicity { edge, expected, found });
        }
    }
    let mut incoming = vec![0usize; e];
    for (ci, c) in d.crossings.iter().enumerate() {
        let [s0, s1, s2, s3] = c.slots;
        let t_in = s1.min(s3);
        if s2 != s0 + 1 || s1.max(s3) != t_in + 1 {
            v.push(Violation::StrandMismatch { crossing: ci });
            continue;
        }
        if c.kind != CrossingKind::Classical && s0 > t_in {
            v.push(Violation::FirstPassNotInSlotZero { crossing: ci });
        }
        incoming[s0] += 1;
        incoming[t_in] += 1;
    }
    if v.is_empty() {
        for (edge, &k) in incoming.iter().enumerate().take(e - 1) {
            if k != 1 {
                v.push(Violation::Traversal { edge });
            }
        }
    }
    if v.is_empty() {
        let faces = FaceMap::new(d).faces.len();
        // V - E + F = 2 with V = n + 2 and E = 2n + 1.
        if faces != n + 1 {
            v.push(Violation::Planarity { faces, expected: n + 1 });
        } else {
            match (d.surface, d.outer_face) {
                (Surface::Plane, None) => v.push(Violation::MissingOuterFace),
                (Surface::Plane, Some(f)) if f >= faces => v.push(Violation::OuterFaceOutOfRange { face: f, faces }),
                (Surface::Sphere, Some(_)) => v.push(Violation::UnexpectedOuterFace),
                _ => {}
            }
        }
    }
    ValidationReport { violations: v }
}

/// Where an edge end sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Pos {
    Leg,
    Head,
    Slot(usize, usize),
}

/// Edge-end incidences of a diagram.
pub(crate) struct Incidence {
    /// `(tail, head)` position of every edge.
    pub ends: Vec<(Pos, Pos)>,
    /// `(edge, is_tail)` for every crossing slot.
    pub slot: Vec<[(usize, bool); 4]>,
}

impl Incidence {
    pub fn new(d: &KnotoidDiagram) -> Self {
        let e = d.edge_count;
        let mut ends = vec![(Pos::Leg, Pos::Head); e];
        let mut slot = Vec::with_capacity(d.crossings.len());
        for (ci, c) in d.crossings.iter().enumerate() {
            let t_in = transversal_in_slot(c);
            let mut row = [(0usize, false); 4];
            for (k, &label) in c.slots.iter().enumerate() {
                let is_tail = k == 2 || (k != 0 && k != t_in);
                row[k] = (label, is_tail);
                if is_tail {
                    ends[label].0 = Pos::Slot(ci, k);
                } else {
                    ends[label].1 = Pos::Slot(ci, k);
                }
            }
            slot.push(row);
        }
        Incidence { ends, slot }
    }
}

/// Faces together with the lookup from `(edge, side)` to face id.
pub(crate) struct FaceMap {
    pub faces: Vec<Face>,
    of: Vec<[usize; 2]>,
}

impl FaceMap {
    pub fn new(d: &KnotoidDiagram) -> Self {
        let inc = Incidence::new(d);
        let e = d.edge_count;
        let mut of = vec![[usize::MAX; 2]; e];
        let mut faces = Vec::new();
        for start_edge in 0..e {
            for start_side in [Side::Left, Side::Right] {
                if of[start_edge][start_side.index()] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut boundary = Vec::new();
                // Travelling forward keeps the face on the right of the edge.
                let (mut edge, mut forward) = (start_edge, start_side == Side::Right);
                loop {
                    let side = if forward { Side::Right } else { Side::Left };
                    if of[edge][side.index()] != usize::MAX {
                        break;
                    }
                    of[edge][side.index()] = id;
                    boundary.push((edge, side));
                    let arrive = if forward { inc.ends[edge].1 } else { inc.ends[edge].0 };
                    match arrive {
                        Pos::Leg => forward = true,
                        Pos::Head => forward = false,
                        Pos::Slot(c, k) => {
                            let (next, is_tail) = inc.slot[c][(k + 1) % 4];
                            edge = next;
                            forward = is_tail;
                        }
                    }
                }
                faces.push(Face { id, boundary });
            }
        }
        FaceMap { faces, of }
    }

    pub fn face_of(&self, edge: usize, side: Side) -> usize {
        self.of[edge][side.index()]
    }

    pub fn leg_face(&self) -> usize {
        self.face_of(0, Side::Left)
    }

    pub fn head_face(&self, edge_count: usize) -> usize {
        self.face_of(edge_count - 1, Side::Right)
    }
}

/// Per-crossing data in the pass-sequence view.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct PassInfo {
    pub kind: CrossingKind,
    /// Classical only: the earlier pass is the over-strand.
    pub over_first: bool,
    /// The later strand heads to the left of the earlier one.
    pub second_left: bool,
}

impl PassInfo {
    pub fn sign(&self) -> i32 {
        if self.second_left ^ self.over_first {
            -1
        } else {
            1
        }
    }
}

/// Pass-sequence (Gauss code) view: `passes[k]` is the crossing met at pass `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Gauss {
    pub surface: Surface,
    pub passes: Vec<usize>,
    pub info: Vec<PassInfo>,
}

impl Gauss {
    pub fn from_diagram(d: &KnotoidDiagram) -> Self {
        let mut passes = vec![usize::MAX; 2 * d.crossings.len()];
        let mut info = Vec::with_capacity(d.crossings.len());
        for (ci, c) in d.crossings.iter().enumerate() {
            let [s0, s1, _, s3] = c.slots;
            let t_in = s1.min(s3);
            let (first, second, over_first, second_left) =
                if s0 < t_in { (s0, t_in, false, s1 == t_in) } else { (t_in, s0, true, s3 == t_in) };
            passes[first] = ci;
            passes[second] = ci;
            let over_first = over_first && c.kind == CrossingKind::Classical;
            info.push(PassInfo { kind: c.kind, over_first, second_left });
        }
        Gauss { surface: d.surface, passes, info }
    }

    pub fn crossing_count(&self) -> usize {
        self.info.len()
    }

    /// `(first, second)` pass indices of every crossing.
    pub fn pass_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = vec![(usize::MAX, usize::MAX); self.info.len()];
        for (k, &c) in self.passes.iter().enumerate() {
            if pairs[c].0 == usize::MAX {
                pairs[c].0 = k;
            } else {
                pairs[c].1 = k;
            }
        }
        pairs
    }

    /// Drops crossings no longer referenced and renumbers the rest.
    pub fn compact(&mut self) {
        let mut remap = vec![usize::MAX; self.info.len()];
        let mut info = Vec::new();
        for k in 0..self.passes.len() {
            let c = self.passes[k];
            if remap[c] == usize::MAX {
                remap[c] = info.len();
                info.push(self.info[c]);
            }
            self.passes[k] = remap[c];
        }
        self.info = info;
    }

    pub fn to_diagram_with_outer(&self, outer_face: Option<usize>) -> KnotoidDiagram {
        let pairs = self.pass_pairs();
        let mut crossings = Vec::with_capacity(self.info.len());
        let mut order: Vec<usize> = (0..self.info.len()).collect();
        order.sort_by_key(|&c| pairs[c].0);
        for c in order {
            let (i, j) = pairs[c];
            let p = self.info[c];
            let mut slots = if p.second_left { [i, j, i + 1, j + 1] } else { [i, j + 1, i + 1, j] };
            if p.kind == CrossingKind::Classical && p.over_first {
                slots = if p.second_left { [j, i + 1, j + 1, i] } else { [j, i, j + 1, i + 1] };
            }
            crossings.push(CrossingNode { kind: p.kind, slots });
        }
        let edge_count = 2 * crossings.len() + 1;
        KnotoidDiagram::unchecked(self.surface, crossings, edge_count, outer_face)
    }

    /// Spherical rebuild (outer face, if any, is not tracked).
    pub fn to_diagram(&self) -> KnotoidDiagram {
        self.to_diagram_with_outer(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(slots: [usize; 4]) -> CrossingNode {
        CrossingNode { kind: CrossingKind::Classical, slots }
    }

    pub(crate) fn positive_kink() -> KnotoidDiagram {
        KnotoidDiagram::new(Surface::Sphere, vec![x([0, 2, 1, 1])], None).unwrap()
    }

    #[test]
    fn trivial_is_valid_with_one_face() {
        let d = KnotoidDiagram::trivial();
        assert!(validate(&d).is_valid());
        assert_eq!(d.faces().len(), 1);
        assert_eq!(d.writhe().unwrap(), 0);
        assert_eq!(d.mirror(), d);
    }

    #[test]
    fn kink_faces_and_sign() {
        let d = positive_kink();
        assert_eq!(d.faces().len(), 2);
        assert_eq!(d.crossing_sign(0).unwrap(), 1);
        let m = d.mirror();
        assert_eq!(m.crossing_sign(0).unwrap(), -1);
        assert_eq!(m.mirror(), d);
        assert_eq!(m.writhe().unwrap(), -1);
    }

    #[test]
    fn edge_multiplicity_violation() {
        let d = KnotoidDiagram::unchecked(Surface::Sphere, vec![x([0, 1, 1, 1])], 3, None);
        let r = validate(&d);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::EdgeMultiplicity { edge: 1, .. })));
        assert!(r.to_string().contains("edge multiplicity"));
    }

    #[test]
    fn nonplanar_code_rejected() {
        // Passes 1 2 1 2 with both later strands heading left: the second
        // crossing's loop would have to cross the first strand again.
        let g = Gauss {
            surface: Surface::Sphere,
            passes: vec![0, 1, 0, 1],
            info: vec![
                PassInfo { kind: CrossingKind::Classical, over_first: false, second_left: true },
                PassInfo { kind: CrossingKind::Classical, over_first: false, second_left: true },
            ],
        };
        let planar: Vec<bool> = [(true, true), (true, false), (false, true), (false, false)]
            .iter()
            .map(|&(a, b)| {
                let mut g = g.clone();
                g.info[0].second_left = a;
                g.info[1].second_left = b;
                validate(&g.to_diagram()).is_valid()
            })
            .collect();
        assert!(planar.contains(&true));
        assert!(planar.contains(&false));
    }

    #[test]
    fn singular_requires_first_pass_in_slot_zero() {
        let d = KnotoidDiagram::unchecked(
            Surface::Sphere,
            vec![CrossingNode { kind: CrossingKind::Singular, slots: [1, 1, 2, 0] }],
            3,
            None,
        );
        assert!(validate(&d).violations.contains(&Violation::FirstPassNotInSlotZero { crossing: 0 }));
    }

    #[test]
    fn plane_needs_outer_face() {
        let d = KnotoidDiagram::unchecked(Surface::Plane, vec![], 1, None);
        assert_eq!(validate(&d).violations, vec![Violation::MissingOuterFace]);
        let d = KnotoidDiagram::unchecked(Surface::Plane, vec![], 1, Some(0));
        assert!(validate(&d).is_valid());
    }

    #[test]
    fn gauss_round_trip_all_kink_codes() {
        for slots in [[0, 2, 1, 1], [0, 1, 1, 2], [1, 1, 2, 0], [1, 0, 2, 1]] {
            let d = KnotoidDiagram::new(Surface::Sphere, vec![x(slots)], None).unwrap();
            assert_eq!(Gauss::from_diagram(&d).to_diagram(), d);
        }
    }

    #[test]
    fn sign_matches_pass_info() {
        for slots in [[0, 2, 1, 1], [0, 1, 1, 2], [1, 1, 2, 0], [1, 0, 2, 1]] {
            let d = KnotoidDiagram::new(Surface::Sphere, vec![x(slots)], None).unwrap();
            let g = Gauss::from_diagram(&d);
            assert_eq!(g.info[0].sign(), d.crossing_sign(0).unwrap());
        }
    }
}
