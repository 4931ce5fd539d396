//! Dual-graph paths between the leg and head regions, diagram height, and
//! the closure maps turning a knotoid diagram into a closed curve.

use std::collections::VecDeque;
use std::fmt;

use crate::diagram::{CrossingKind, CrossingNode, FaceMap, Gauss, KnotoidDiagram, PassInfo, Side};
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly1, Var};

/// A path in the dual graph from the face of the leg to the face of the head.
///
/// `crossings[k]` is the diagram edge crossed at step `k` together with its
/// intersection sign: +1 when the path crosses the edge from its right side
/// to its left side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shortcut {
    pub faces: Vec<usize>,
    pub crossings: Vec<(usize, i32)>,
}

impl Shortcut {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Algebraic intersection number with the whole diagram.
    pub fn algebraic(&self) -> i64 {
        self.crossings.iter().map(|&(_, s)| i64::from(s)).sum()
    }

    /// Signed intersection count with each edge, indexed by edge label.
    pub(crate) fn per_edge(&self, edge_count: usize) -> Vec<i64> {
        let mut v = vec![0i64; edge_count];
        for &(e, s) in &self.crossings {
            v[e] += i64::from(s);
        }
        v
    }

    /// Checks that the path is a walk in the dual graph of `d` from the leg
    /// face to the head face.
    pub fn check(&self, d: &KnotoidDiagram) -> Result<()> {
        let fm = FaceMap::new(d);
        let ok_ends = self.faces.first() == Some(&fm.leg_face())
            && self.faces.last() == Some(&fm.head_face(d.edge_count()))
            && self.faces.len() == self.crossings.len() + 1;
        if !ok_ends {
            return Err(Error::BadShortcut);
        }
        for (k, &(e, s)) in self.crossings.iter().enumerate() {
            if e >= d.edge_count() {
                return Err(Error::BadShortcut);
            }
            let (from, to) = (self.faces[k], self.faces[k + 1]);
            let (r, l) = (fm.face_of(e, Side::Right), fm.face_of(e, Side::Left));
            let valid = (from == r && to == l && s == 1) || (from == l && to == r && s == -1);
            if !valid || r == l {
                return Err(Error::BadShortcut);
            }
        }
        Ok(())
    }
}

/// Face adjacency across diagram edges.
pub(crate) struct DualGraph {
    pub leg: usize,
    pub head: usize,
    /// `(edge, neighbour face, sign)` sorted by edge.
    pub adj: Vec<Vec<(usize, usize, i32)>>,
}

impl DualGraph {
    pub fn new(d: &KnotoidDiagram) -> Self {
        let fm = FaceMap::new(d);
        let mut adj = vec![Vec::new(); fm.faces.len()];
        for e in 0..d.edge_count() {
            let (r, l) = (fm.face_of(e, Side::Right), fm.face_of(e, Side::Left));
            if r != l {
                adj[r].push((e, l, 1));
                adj[l].push((e, r, -1));
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        DualGraph { leg: fm.leg_face(), head: fm.head_face(d.edge_count()), adj }
    }

    fn bfs_path(&self) -> Shortcut {
        let n = self.adj.len();
        let mut prev: Vec<Option<(usize, usize, i32)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.leg]);
        seen[self.leg] = true;
        while let Some(f) = queue.pop_front() {
            if f == self.head {
                break;
            }
            for &(e, g, s) in &self.adj[f] {
                if !seen[g] {
                    seen[g] = true;
                    prev[g] = Some((f, e, s));
                    queue.push_back(g);
                }
            }
        }
        let mut faces = vec![self.head];
        let mut crossings = Vec::new();
        let mut cur = self.head;
        while let Some((f, e, s)) = prev[cur] {
            faces.push(f);
            crossings.push((e, s));
            cur = f;
        }
        faces.reverse();
        crossings.reverse();
        Shortcut { faces, crossings }
    }
}

/// Number of diagram edges crossed by a shortest leg-to-head dual path.
pub fn height_of_diagram(d: &KnotoidDiagram) -> usize {
    minimal_shortcut(d).len()
}

/// A shortest dual path; ties are broken by smallest edge label first.
pub fn minimal_shortcut(d: &KnotoidDiagram) -> Shortcut {
    DualGraph::new(d).bfs_path()
}

/// Up to `limit` simple dual paths (no face repeated) from leg face to head
/// face, in depth-first order.
pub fn simple_shortcuts(d: &KnotoidDiagram, limit: usize) -> Vec<Shortcut> {
    let g = DualGraph::new(d);
    let mut out = Vec::new();
    let mut on_path = vec![false; g.adj.len()];
    let mut faces = vec![g.leg];
    let mut crossings = Vec::new();
    on_path[g.leg] = true;
    dfs(&g, &mut on_path, &mut faces, &mut crossings, &mut out, limit);
    out
}

fn dfs(
    g: &DualGraph,
    on_path: &mut [bool],
    faces: &mut Vec<usize>,
    crossings: &mut Vec<(usize, i32)>,
    out: &mut Vec<Shortcut>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let f = *faces.last().unwrap();
    if f == g.head {
        out.push(Shortcut { faces: faces.clone(), crossings: crossings.clone() });
        return;
    }
    for &(e, h, s) in &g.adj[f] {
        if on_path[h] {
            continue;
        }
        on_path[h] = true;
        faces.push(h);
        crossings.push((e, s));
        dfs(g, on_path, faces, crossings, out, limit);
        crossings.pop();
        faces.pop();
        on_path[h] = false;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    Under,
    Over,
    Virtual,
    Singular,
}

impl ClosureKind {
    pub fn from_letter(s: &str) -> Option<Self> {
        match s {
            "u" => Some(ClosureKind::Under),
            "o" => Some(ClosureKind::Over),
            "v" => Some(ClosureKind::Virtual),
            "s" => Some(ClosureKind::Singular),
            _ => None,
        }
    }
}

/// A closed curve diagram. Edges are labeled cyclically: pass `k` joins edge
/// `k` to edge `k + 1 mod E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedDiagram {
    passes: Vec<usize>,
    info: Vec<PassInfo>,
    /// Crossings added by the closing arc.
    added: usize,
}

impl ClosedDiagram {
    pub fn crossing_count(&self) -> usize {
        self.info.len()
    }

    pub fn added_crossings(&self) -> usize {
        self.added
    }

    pub fn edge_count(&self) -> usize {
        self.passes.len().max(1)
    }

    pub fn count_kind(&self, kind: CrossingKind) -> usize {
        self.info.iter().filter(|p| p.kind == kind).count()
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
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

    /// Slots with an incoming flag, same conventions as knotoid crossings.
    fn oriented_slots(&self) -> Vec<(CrossingKind, [(usize, bool); 4])> {
        let m = self.edge_count();
        self.pairs()
            .iter()
            .zip(&self.info)
            .map(|(&(i, j), p)| {
                let (i1, j1) = ((i + 1) % m, (j + 1) % m);
                let mut s = if p.second_left {
                    [(i, true), (j, true), (i1, false), (j1, false)]
                } else {
                    [(i, true), (j1, false), (i1, false), (j, true)]
                };
                if p.kind == CrossingKind::Classical && p.over_first {
                    if p.second_left {
                        s.rotate_left(1);
                    } else {
                        s.rotate_right(1);
                    }
                }
                (p.kind, s)
            })
            .collect()
    }

    pub fn crossings(&self) -> Vec<CrossingNode> {
        self.oriented_slots().into_iter().map(|(kind, s)| CrossingNode { kind, slots: s.map(|(e, _)| e) }).collect()
    }

    /// Face count by the rotation rule; `N + 2` for a planar curve with
    /// `N >= 1` crossings.
    pub fn face_count(&self) -> usize {
        let nodes = self.oriented_slots();
        if nodes.is_empty() {
            return 2;
        }
        let m = self.edge_count();
        let mut tail = vec![(0, 0); m];
        let mut head = vec![(0, 0); m];
        for (ci, (_, s)) in nodes.iter().enumerate() {
            for (k, &(e, incoming)) in s.iter().enumerate() {
                if incoming {
                    head[e] = (ci, k);
                } else {
                    tail[e] = (ci, k);
                }
            }
        }
        let mut seen = vec![[false; 2]; m];
        let mut faces = 0;
        for e0 in 0..m {
            for fwd0 in [true, false] {
                if seen[e0][usize::from(fwd0)] {
                    continue;
                }
                faces += 1;
                let (mut e, mut fwd) = (e0, fwd0);
                while !seen[e][usize::from(fwd)] {
                    seen[e][usize::from(fwd)] = true;
                    let (c, k) = if fwd { head[e] } else { tail[e] };
                    let (ne, incoming) = nodes[c].1[(k + 1) % 4];
                    e = ne;
                    fwd = !incoming;
                }
            }
        }
        faces
    }

    /// Affine index polynomial of the closed (possibly virtual) curve, with
    /// labels unchanged at virtual crossings.
    pub fn affine_index_polynomial(&self) -> LaurentPoly1 {
        let labels = pass_labels(&self.passes, &self.info);
        affine_sum(&self.pairs(), &self.info, &labels)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("knot sphere\n");
        let mut nodes = self.crossings();
        nodes.sort_by_key(|c| c.slots.iter().min().copied());
        for c in nodes {
            let [a, b, e, f] = c.slots;
            out.push_str(&format!("{} {a} {b} {e} {f}\n", c.kind.letter()));
        }
        out
    }
}

impl fmt::Display for ClosedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Labels of the edges along the pass sequence, starting from 0: the strand
/// whose partner heads to its right steps up by one, the other steps down.
pub(crate) fn pass_labels(passes: &[usize], info: &[PassInfo]) -> Vec<i64> {
    let mut seen = vec![false; info.len()];
    let mut labels = Vec::with_capacity(passes.len() + 1);
    labels.push(0i64);
    for &c in passes {
        let first = !seen[c];
        seen[c] = true;
        let p = info[c];
        let step = match p.kind {
            CrossingKind::Virtual => 0,
            _ if first != p.second_left => 1,
            _ => -1,
        };
        labels.push(labels.last().unwrap() + step);
    }
    labels
}

/// `(w_+, w_-)` of a crossing from its pass pair and the edge labels.
pub(crate) fn crossing_weights(pair: (usize, usize), p: &PassInfo, labels: &[i64]) -> (i64, i64) {
    let (i, j) = pair;
    // The incoming edge of pass k is edge k; `a` belongs to the strand that
    // steps up.
    let (a, b) = if p.second_left { (labels[j], labels[i]) } else { (labels[i], labels[j]) };
    let w_plus = b - (a + 1);
    (w_plus, a - (b - 1))
}

pub(crate) fn affine_sum(pairs: &[(usize, usize)], info: &[PassInfo], labels: &[i64]) -> LaurentPoly1 {
    let mut p = LaurentPoly1::zero(Var::T);
    for (pair, inf) in pairs.iter().zip(info) {
        if inf.kind != CrossingKind::Classical {
            continue;
        }
        let (wp, wm) = crossing_weights(*pair, inf, labels);
        let s = inf.sign();
        let w = if s > 0 { wp } else { wm };
        p.add_term(w, s.into());
        p.add_term(0, (-s).into());
    }
    p
}

/// Closes `d` along `shortcut` (defaults to a minimal one).
pub fn closure(d: &KnotoidDiagram, kind: ClosureKind, shortcut: Option<&Shortcut>) -> Result<ClosedDiagram> {
    let owned;
    let alpha = match shortcut {
        Some(s) => {
            s.check(d)?;
            s
        }
        None => {
            owned = minimal_shortcut(d);
            &owned
        }
    };
    if kind == ClosureKind::Singular && alpha.len() != 1 {
        return Err(Error::HeightNotOne(alpha.len()));
    }
    let g = Gauss::from_diagram(d);
    let n = g.crossing_count();
    let mut info = g.info.clone();
    // Crossing hit on each edge (simple paths meet an edge at most once).
    let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); d.edge_count()];
    for (k, &(e, s)) in alpha.crossings.iter().enumerate() {
        on_edge[e].push(n + k);
        // The closing arc runs head to leg, against the shortcut, so it
        // heads to the right of the edge exactly when the sign is +1.
        info.push(PassInfo {
            kind: match kind {
                ClosureKind::Under | ClosureKind::Over => CrossingKind::Classical,
                ClosureKind::Virtual => CrossingKind::Virtual,
                ClosureKind::Singular => CrossingKind::Singular,
            },
            over_first: kind == ClosureKind::Under,
            second_left: s == -1,
        });
    }
    let mut passes = Vec::with_capacity(2 * info.len());
    for (e, added) in on_edge.iter().enumerate() {
        passes.extend(added.iter().copied());
        if e < g.passes.len() {
            passes.push(g.passes[e]);
        }
    }
    for k in (0..alpha.len()).rev() {
        passes.push(n + k);
    }
    Ok(ClosedDiagram { passes, info, added: alpha.len() })
}

pub fn underpass_closure(d: &KnotoidDiagram) -> ClosedDiagram {
    closure(d, ClosureKind::Under, None).expect("minimal shortcut is valid")
}

pub fn overpass_closure(d: &KnotoidDiagram) -> ClosedDiagram {
    closure(d, ClosureKind::Over, None).expect("minimal shortcut is valid")
}

pub fn virtual_closure(d: &KnotoidDiagram) -> ClosedDiagram {
    closure(d, ClosureKind::Virtual, None).expect("minimal shortcut is valid")
}

/// Nodified closure along a height-one shortcut. Whether the result is
/// independent of the shortcut (primality) is not checked.
pub fn singular_closure(d: &KnotoidDiagram) -> Result<ClosedDiagram> {
    closure(d, ClosureKind::Singular, None)
}
