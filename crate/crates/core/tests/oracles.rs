//! Cross-checks against slower or independent computations.

use std::collections::BTreeSet;

use knotoid::closure::{height_of_diagram, simple_shortcuts, virtual_closure, ClosureKind};
use knotoid::codec::parse_ktd;
use knotoid::generate::{enumerate_diagrams, random_diagrams};
use knotoid::invariants::{affine_index_polynomial, kauffman_bracket, turaev_extended_bracket};
use knotoid::moves::{enumerate_move_sites, random_walk, MoveSite};
use knotoid::{KnotoidDiagram, LaurentPoly1, Var};

/// Endpoint of an edge: `None` for the leg or head, else (crossing, slot).
type End = Option<(usize, usize)>;

fn edge_ends(d: &KnotoidDiagram) -> Vec<(End, End)> {
    let mut ends: Vec<(End, End)> = vec![(None, None); d.edge_count()];
    for (c, node) in d.crossings().iter().enumerate() {
        let s = node.slots;
        let t_in = if s[1] < s[3] { 1 } else { 3 };
        // Incoming: slot 0 and the transversal slot with the smaller label.
        ends[s[0]].1 = Some((c, 0));
        ends[s[2]].0 = Some((c, 2));
        ends[s[t_in]].1 = Some((c, t_in));
        ends[s[4 - t_in]].0 = Some((c, 4 - t_in));
    }
    ends
}

/// State sum by explicit tracing of the smoothed curves.
fn traced_bracket(d: &KnotoidDiagram) -> LaurentPoly1 {
    let n = d.crossing_count();
    let ends = edge_ends(d);
    let mut edge_at = vec![[0usize; 4]; n];
    for (e, &(t, h)) in ends.iter().enumerate() {
        for (c, k) in [t, h].into_iter().flatten() {
            edge_at[c][k] = e;
        }
    }
    let delta = LaurentPoly1::from_terms(Var::A, [(2, -1), (-2, -1)]);
    let mut total = LaurentPoly1::zero(Var::A);
    for state in 0u32..1 << n {
        let partner = |c: usize, k: usize| if state >> c & 1 == 1 { 3 - k } else { k ^ 1 };
        let mut used = vec![false; ends.len()];
        let mut loops = 0;
        for start in 0..ends.len() {
            if used[start] {
                continue;
            }
            loops += 1;
            // Walk from `start` in both directions until closing up or
            // reaching an endpoint.
            let mut stack = vec![start];
            while let Some(e) = stack.pop() {
                if used[e] {
                    continue;
                }
                used[e] = true;
                for (c, k) in [ends[e].0, ends[e].1].into_iter().flatten() {
                    stack.push(edge_at[c][partner(c, k)]);
                }
            }
        }
        let b = state.count_ones() as i64;
        total = total + LaurentPoly1::monomial(Var::A, n as i64 - 2 * b, 1) * delta.pow(loops - 1);
    }
    total
}

#[test]
fn bracket_matches_traced_state_sum() {
    let mut corpus: Vec<KnotoidDiagram> = (0..=3).flat_map(enumerate_diagrams).collect();
    corpus.extend(random_diagrams(41, 60, 9));
    for d in &corpus {
        assert_eq!(kauffman_bracket(d).unwrap(), traced_bracket(d), "{d:?}");
    }
}

#[test]
fn turaev_bracket_ignores_the_shortcut() {
    let mut tested = 0;
    for (i, d) in random_diagrams(17, 40, 6).into_iter().enumerate() {
        let d = random_walk(&d, 20, i as u64);
        let paths = simple_shortcuts(&d, 6);
        if paths.len() < 3 {
            continue;
        }
        let first = turaev_extended_bracket(&d, Some(&paths[0])).unwrap();
        for p in &paths[1..] {
            assert_eq!(turaev_extended_bracket(&d, Some(p)).unwrap(), first);
        }
        tested += 1;
    }
    assert!(tested >= 10);
}

#[test]
fn virtual_closure_keeps_the_affine_polynomial() {
    for d in random_diagrams(23, 80, 8) {
        let c = virtual_closure(&d);
        assert_eq!(c.affine_index_polynomial(), affine_index_polynomial(&d).unwrap());
    }
}

#[test]
fn closures_are_planar_curves() {
    let kinds = [ClosureKind::Under, ClosureKind::Over, ClosureKind::Virtual];
    for d in random_diagrams(29, 40, 8) {
        for kind in kinds {
            let c = knotoid::closure::closure(&d, kind, None).unwrap();
            assert_eq!(c.added_crossings(), height_of_diagram(&d));
            assert_eq!(c.face_count(), c.crossing_count() + 2);
        }
    }
}

#[test]
fn r3_sites_of_the_labeled_example() {
    // Two triangular faces; only the one with a level edge admits R3.
    let d = parse_ktd(include_str!("data/affine_example.ktd")).unwrap();
    let triangles = d.faces().iter().filter(|f| f.boundary.len() == 3).count();
    assert_eq!(triangles, 2);
    let r3: Vec<MoveSite> = enumerate_move_sites(&d).into_iter().filter(|s| matches!(s, MoveSite::R3 { .. })).collect();
    assert_eq!(r3, vec![MoveSite::R3 { edges: [2, 4, 7] }]);
}

#[test]
fn enumeration_has_no_duplicates() {
    for n in 0..=3 {
        let all = enumerate_diagrams(n);
        let distinct: BTreeSet<String> = all.iter().map(knotoid::codec::emit_ktd).collect();
        assert_eq!(distinct.len(), all.len());
    }
}
