//! Reidemeister and rigid-vertex moves, crossing switches, nodification,
//! the descending walk, and seeded random move walks.
//!
//! Moves are performed on the pass sequence. Sites are found from faces: a
//! monogon is an R1 site, a bigon between two classical crossings an R2
//! site, a triangle an R3 site. Endpoints are 1-valent vertices, so a face
//! touching an endpoint is never a monogon, bigon or triangle and the
//! forbidden moves cannot arise.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{validate, CrossingKind, FaceMap, Gauss, KnotoidDiagram, PassInfo, Side, Surface};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveSite {
    /// Adds a kink on `edge` with its loop in the face on `side`.
    R1Add {
        edge: usize,
        side: Side,
        over_first: bool,
    },
    R1Remove {
        crossing: usize,
    },
    /// Pushes a finger of `pushed` across `target`, both darts of `face`.
    R2Add {
        face: usize,
        pushed: (usize, Side),
        target: (usize, Side),
        pushed_over: bool,
    },
    /// Removes the bigon bounded by two edges.
    R2Remove {
        edges: [usize; 2],
    },
    /// Moves a strand across the crossing opposite it in a triangular face.
    R3 {
        edges: [usize; 3],
    },
    /// Moves a strand over or under a singular crossing.
    VertexSlide {
        edges: [usize; 3],
    },
    /// Carries the crossing of a bigon next to a singular crossing to the
    /// opposite side of the vertex.
    VertexFlip {
        edges: [usize; 2],
    },
    Switch {
        crossing: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Category {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
    VertexSlide,
    VertexFlip,
    Switch,
}

impl MoveSite {
    fn category(&self) -> Category {
        match self {
            MoveSite::R1Add { .. } => Category::R1Add,
            MoveSite::R1Remove { .. } => Category::R1Remove,
            MoveSite::R2Add { .. } => Category::R2Add,
            MoveSite::R2Remove { .. } => Category::R2Remove,
            MoveSite::R3 { .. } => Category::R3,
            MoveSite::VertexSlide { .. } => Category::VertexSlide,
            MoveSite::VertexFlip { .. } => Category::VertexFlip,
            MoveSite::Switch { .. } => Category::Switch,
        }
    }

    /// Everything except crossing switches.
    pub fn is_isotopy(&self) -> bool {
        !matches!(self, MoveSite::Switch { .. })
    }

    pub fn is_r1(&self) -> bool {
        matches!(self, MoveSite::R1Add { .. } | MoveSite::R1Remove { .. })
    }

    /// Change in the number of crossings.
    pub fn crossing_delta(&self) -> i64 {
        match self {
            MoveSite::R1Add { .. } => 1,
            MoveSite::R1Remove { .. } => -1,
            MoveSite::R2Add { .. } => 2,
            MoveSite::R2Remove { .. } => -2,
            _ => 0,
        }
    }
}

/// Crossing at each end of an interior edge.
fn edge_ends(g: &Gauss, e: usize) -> Option<(usize, usize)> {
    (e >= 1 && e < g.passes.len()).then(|| (g.passes[e - 1], g.passes[e]))
}

/// Whether pass `k` is the over-pass of its (classical) crossing.
fn pass_over(g: &Gauss, firsts: &[usize], k: usize) -> bool {
    let c = g.passes[k];
    (firsts[c] == k) == g.info[c].over_first
}

fn first_passes(g: &Gauss) -> Vec<usize> {
    g.pass_pairs().iter().map(|p| p.0).collect()
}

pub fn enumerate_move_sites(d: &KnotoidDiagram) -> Vec<MoveSite> {
    let g = Gauss::from_diagram(d);
    let fm = FaceMap::new(d);
    let firsts = first_passes(&g);
    let outer = if d.surface() == Surface::Plane { d.outer_face() } else { None };
    let kind = |c: usize| g.info[c].kind;
    let mut sites = Vec::new();

    for edge in 0..d.edge_count() {
        for side in [Side::Left, Side::Right] {
            for over_first in [false, true] {
                sites.push(MoveSite::R1Add { edge, side, over_first });
            }
        }
    }
    for face in &fm.faces {
        if Some(face.id) == outer {
            continue;
        }
        let b = &face.boundary;
        for x in 0..b.len() {
            for y in x + 1..b.len() {
                if b[x].0 != b[y].0 {
                    for pushed_over in [false, true] {
                        sites.push(MoveSite::R2Add { face: face.id, pushed: b[x], target: b[y], pushed_over });
                    }
                }
            }
        }
    }
    for face in &fm.faces {
        if Some(face.id) == outer {
            continue;
        }
        let edges: Vec<usize> = face.boundary.iter().map(|&(e, _)| e).collect();
        let Some(ends) = edges.iter().map(|&e| edge_ends(&g, e)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        match edges.len() {
            1 => {
                let c = ends[0].0;
                if ends[0].1 == c && kind(c) == CrossingKind::Classical {
                    sites.push(MoveSite::R1Remove { crossing: c });
                }
            }
            2 => {
                let (a, b) = ends[0];
                let same = ends[1] == (a, b) || ends[1] == (b, a);
                if a == b || !same || edges[0] == edges[1] {
                    continue;
                }
                let e = edges[0];
                match (kind(a), kind(b)) {
                    (CrossingKind::Classical, CrossingKind::Classical) => {
                        if pass_over(&g, &firsts, e - 1) == pass_over(&g, &firsts, e) {
                            let mut pair = [edges[0], edges[1]];
                            pair.sort_unstable();
                            sites.push(MoveSite::R2Remove { edges: pair });
                        }
                    }
                    (CrossingKind::Singular, CrossingKind::Classical)
                    | (CrossingKind::Classical, CrossingKind::Singular) => {
                        let mut pair = [edges[0], edges[1]];
                        pair.sort_unstable();
                        sites.push(MoveSite::VertexFlip { edges: pair });
                    }
                    _ => {}
                }
            }
            3 => {
                let mut cs: Vec<usize> = ends.iter().flat_map(|&(a, b)| [a, b]).collect();
                if ends.iter().any(|&(a, b)| a == b) {
                    continue;
                }
                cs.sort_unstable();
                cs.dedup();
                if cs.len() != 3 || cs.iter().any(|&c| kind(c) == CrossingKind::Virtual) {
                    continue;
                }
                let singular: Vec<usize> = cs.iter().copied().filter(|&c| kind(c) == CrossingKind::Singular).collect();
                let mut sorted = [edges[0], edges[1], edges[2]];
                sorted.sort_unstable();
                let level = |e: usize| pass_over(&g, &firsts, e - 1) == pass_over(&g, &firsts, e);
                match singular.as_slice() {
                    [] => {
                        if edges.iter().any(|&e| level(e)) {
                            sites.push(MoveSite::R3 { edges: sorted });
                        }
                    }
                    [s] => {
                        let opposite = edges.iter().zip(&ends).find(|(_, &(a, b))| a != *s && b != *s);
                        if let Some((&e, _)) = opposite {
                            if level(e) {
                                sites.push(MoveSite::VertexSlide { edges: sorted });
                            }
                        }
                    }
                    _ => {}
                }
            }
            _ => {}
        }
    }
    for (c, p) in g.info.iter().enumerate() {
        if p.kind == CrossingKind::Classical {
            sites.push(MoveSite::Switch { crossing: c });
        }
    }
    sites
}

/// Applies `site` after checking that it is one of the diagram's sites.
pub fn apply_move(d: &KnotoidDiagram, site: &MoveSite) -> Result<KnotoidDiagram> {
    if !enumerate_move_sites(d).contains(site) {
        return Err(Error::StaleMove);
    }
    apply_unchecked(d, site)
}

fn apply_unchecked(d: &KnotoidDiagram, site: &MoveSite) -> Result<KnotoidDiagram> {
    let mut g = Gauss::from_diagram(d);
    let n = g.crossing_count();
    let len = g.passes.len();
    let pass_map: Vec<Option<usize>> = match *site {
        MoveSite::R1Add { edge, side, over_first } => {
            // The loop lies on the left exactly when the second pass heads right.
            g.info.push(PassInfo { kind: CrossingKind::Classical, over_first, second_left: side == Side::Right });
            g.passes.splice(edge..edge, [n, n]);
            (0..len).map(|p| Some(p + if p >= edge { 2 } else { 0 })).collect()
        }
        MoveSite::R2Add { pushed: (e1, s1), target: (e2, s2), pushed_over, .. } => {
            // Local picture: the face lies between `pushed` above and `target`
            // below. The finger goes down at P and comes back up at Q.
            let p_east = s1 == Side::Left;
            let target_east_first = s2 == Side::Right;
            let (p, q) = (n, n + 1);
            let e1_first = e1 < e2;
            for going_down in [true, false] {
                // The target runs east when the face is on its left; heading
                // south, east is on the left, heading north it is on the right.
                let target_left_of_finger = (s2 == Side::Left) == going_down;
                g.info.push(PassInfo {
                    kind: CrossingKind::Classical,
                    over_first: e1_first == pushed_over,
                    second_left: target_left_of_finger == e1_first,
                });
            }
            let on_target = if target_east_first == p_east { [p, q] } else { [q, p] };
            if e1 > e2 {
                g.passes.splice(e1..e1, [p, q]);
                g.passes.splice(e2..e2, on_target);
            } else {
                g.passes.splice(e2..e2, on_target);
                g.passes.splice(e1..e1, [p, q]);
            }
            (0..len).map(|k| Some(k + if k >= e1 { 2 } else { 0 } + if k >= e2 { 2 } else { 0 })).collect()
        }
        MoveSite::R1Remove { crossing } => {
            let k = g.pass_pairs()[crossing].0;
            remove_positions(&mut g, &[k, k + 1])
        }
        MoveSite::R2Remove { edges: [e, f] } => remove_positions(&mut g, &[e - 1, e, f - 1, f]),
        MoveSite::R3 { edges } | MoveSite::VertexSlide { edges } => {
            let mut map: Vec<Option<usize>> = (0..len).map(Some).collect();
            for e in edges {
                g.passes.swap(e - 1, e);
                map[e - 1] = None;
            }
            map
        }
        MoveSite::VertexFlip { edges } => {
            let mut map: Vec<Option<usize>> = (0..len).map(Some).collect();
            let (a, b) = (g.passes[edges[0] - 1], g.passes[edges[0]]);
            for e in edges {
                g.passes.swap(e - 1, e);
                map[e - 1] = None;
            }
            for c in [a, b] {
                let info = &mut g.info[c];
                info.second_left = !info.second_left;
                info.over_first ^= info.kind == CrossingKind::Classical;
            }
            map
        }
        MoveSite::Switch { crossing } => {
            g.info[crossing].over_first = !g.info[crossing].over_first;
            (0..len).map(Some).collect()
        }
    };
    finish(d, g, &pass_map)
}

/// Deletes the passes at the given positions and drops the crossings left
/// without passes.
fn remove_positions(g: &mut Gauss, positions: &[usize]) -> Vec<Option<usize>> {
    let mut map = Vec::with_capacity(g.passes.len());
    let mut kept = Vec::with_capacity(g.passes.len());
    for (k, &c) in g.passes.iter().enumerate() {
        if positions.contains(&k) {
            map.push(None);
        } else {
            map.push(Some(kept.len()));
            kept.push(c);
        }
    }
    g.passes = kept;
    g.compact();
    map
}

/// Rebuilds the diagram, carrying a planar outer face through the move via
/// a boundary dart whose edge survives.
fn finish(old: &KnotoidDiagram, g: Gauss, pass_map: &[Option<usize>]) -> Result<KnotoidDiagram> {
    let outer = match (old.surface(), old.outer_face()) {
        (Surface::Plane, Some(outer)) => {
            let probe = g.to_diagram_with_outer(Some(0));
            let new_faces = FaceMap::new(&probe);
            let old_faces = FaceMap::new(old);
            let tracked = old_faces.faces[outer].boundary.iter().find_map(|&(e, side)| {
                let new_e = if e == 0 { Some(0) } else { pass_map[e - 1].map(|q| q + 1) };
                new_e.map(|ne| new_faces.face_of(ne, side))
            });
            Some(tracked.ok_or(Error::StaleMove)?)
        }
        _ => None,
    };
    let d = g.to_diagram_with_outer(outer);
    let report = validate(&d);
    if !report.is_valid() {
        return Err(Error::Invalid(report));
    }
    Ok(d)
}

/// Adds a kink of the given sign on `edge`, with its loop on `side`.
pub fn add_kink(d: &KnotoidDiagram, edge: usize, side: Side, sign: i32) -> Result<KnotoidDiagram> {
    if edge >= d.edge_count() {
        return Err(Error::StaleMove);
    }
    let second_left = side == Side::Right;
    let over_first = second_left == (sign > 0);
    apply_unchecked(d, &MoveSite::R1Add { edge, side, over_first })
}

fn with_info(d: &KnotoidDiagram, c: usize, f: impl FnOnce(&mut PassInfo)) -> KnotoidDiagram {
    let mut g = Gauss::from_diagram(d);
    f(&mut g.info[c]);
    g.to_diagram_with_outer(d.outer_face())
}

fn require_kind(d: &KnotoidDiagram, c: usize, kind: CrossingKind) -> Result<()> {
    let node = d.crossing(c)?;
    match (node.kind == kind, kind) {
        (true, _) => Ok(()),
        (false, CrossingKind::Singular) => Err(Error::NotSingular(c)),
        (false, _) => Err(Error::NotClassical(c)),
    }
}

pub fn switch_crossing(d: &KnotoidDiagram, c: usize) -> Result<KnotoidDiagram> {
    require_kind(d, c, CrossingKind::Classical)?;
    Ok(with_info(d, c, |p| p.over_first = !p.over_first))
}

/// Replaces a classical crossing by a singular one.
pub fn nodify(d: &KnotoidDiagram, c: usize) -> Result<KnotoidDiagram> {
    require_kind(d, c, CrossingKind::Classical)?;
    Ok(with_info(d, c, |p| {
        p.kind = CrossingKind::Singular;
        p.over_first = false;
    }))
}

/// Replaces a singular crossing by the classical crossing of sign `eps`.
pub fn resolve(d: &KnotoidDiagram, s: usize, eps: i32) -> Result<KnotoidDiagram> {
    require_kind(d, s, CrossingKind::Singular)?;
    Ok(with_info(d, s, |p| {
        p.kind = CrossingKind::Classical;
        p.over_first = p.second_left ^ (eps < 0);
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchEntry {
    pub crossing: usize,
    /// Sign just before the switch.
    pub sign: i32,
    /// The diagram just before the switch with this crossing nodified.
    pub snapshot: KnotoidDiagram,
}

/// Crossings switched by [`make_descending`], in walk order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SwitchRecord {
    pub entries: Vec<SwitchEntry>,
}

impl SwitchRecord {
    pub fn replay(&self, d: &KnotoidDiagram) -> Result<KnotoidDiagram> {
        self.entries.iter().try_fold(d.clone(), |acc, e| switch_crossing(&acc, e.crossing))
    }
}

/// Walks from the leg and switches every classical crossing first met as an
/// under-crossing.
pub fn make_descending(d: &KnotoidDiagram) -> Result<(KnotoidDiagram, SwitchRecord)> {
    if d.count_kind(CrossingKind::Singular) > 0 {
        return Err(Error::SingularPresent);
    }
    let mut cur = d.clone();
    let mut record = SwitchRecord::default();
    // Crossings are stored in order of first visit.
    for c in 0..d.crossing_count() {
        let g = Gauss::from_diagram(&cur);
        let p = g.info[c];
        if p.kind != CrossingKind::Classical || p.over_first {
            continue;
        }
        record.entries.push(SwitchEntry { crossing: c, sign: p.sign(), snapshot: nodify(&cur, c)? });
        cur = switch_crossing(&cur, c)?;
    }
    Ok((cur, record))
}

pub fn is_descending(d: &KnotoidDiagram) -> bool {
    Gauss::from_diagram(d).info.iter().all(|p| p.kind != CrossingKind::Classical || p.over_first)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkConfig {
    /// Moves that would exceed this crossing count are skipped.
    pub max_crossings: usize,
    pub allow_switches: bool,
}

impl WalkConfig {
    pub fn for_diagram(d: &KnotoidDiagram) -> Self {
        WalkConfig { max_crossings: d.crossing_count() + 4, allow_switches: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub site: MoveSite,
    pub diagram: KnotoidDiagram,
}

/// Seeded walk recording every step. Each step picks a move family
/// uniformly among those with an applicable site, then a site uniformly.
pub fn random_walk_steps(d: &KnotoidDiagram, steps: usize, seed: u64, cfg: &WalkConfig) -> Vec<WalkStep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut out = Vec::with_capacity(steps);
    while out.len() < steps {
        let n = cur.crossing_count() as i64;
        let sites: Vec<MoveSite> = enumerate_move_sites(&cur)
            .into_iter()
            .filter(|s| cfg.allow_switches || s.is_isotopy())
            .filter(|s| n + s.crossing_delta() <= cfg.max_crossings as i64)
            .collect();
        let mut families: Vec<Category> = sites.iter().map(MoveSite::category).collect();
        families.sort_unstable();
        families.dedup();
        let Some(&family) = families.choose(&mut rng) else { break };
        let pool: Vec<&MoveSite> = sites.iter().filter(|s| s.category() == family).collect();
        let site = *pool[rng.gen_range(0..pool.len())];
        // Planar diagrams can lose track of the outer face; such a step is
        // simply redrawn.
        if let Ok(next) = apply_unchecked(&cur, &site) {
            cur = next;
            out.push(WalkStep { site, diagram: cur.clone() });
        }
    }
    out
}

pub fn random_walk_with(d: &KnotoidDiagram, steps: usize, seed: u64, cfg: &WalkConfig) -> KnotoidDiagram {
    random_walk_steps(d, steps, seed, cfg).pop().map_or_else(|| d.clone(), |s| s.diagram)
}

pub fn random_walk(d: &KnotoidDiagram, steps: usize, seed: u64) -> KnotoidDiagram {
    random_walk_with(d, steps, seed, &WalkConfig::for_diagram(d))
}
