//! Knotoid invariants: Kauffman bracket and its normalization, the Turaev
//! extended bracket, affine index polynomial, the type-1 invariant `vbar`,
//! Vassiliev skein extension and finite-type checks.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::chord::winding_of_loop;
use crate::closure::{affine_sum, crossing_weights, minimal_shortcut, pass_labels, Shortcut};
use crate::diagram::{CrossingKind, Gauss, Incidence, KnotoidDiagram, Pos, Surface};
use crate::error::{Error, Result};
use crate::moves::{make_descending, resolve};
use crate::poly::{LaurentPoly1, LaurentPoly2, Rational, Var};
use crate::union_find::UnionFind;

/// Limits and scheduling for the `2^n` state sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateSumConfig {
    pub max_crossings: usize,
    /// Spread states over the rayon pool (ignored without the `parallel` feature).
    pub parallel: bool,
}

impl Default for StateSumConfig {
    fn default() -> Self {
        StateSumConfig { max_crossings: 24, parallel: cfg!(feature = "parallel") }
    }
}

impl StateSumConfig {
    pub fn sequential() -> Self {
        StateSumConfig { parallel: false, ..Self::default() }
    }
}

/// Per-state summary: (#A - #B, number of components, segment intersection).
type Tally = BTreeMap<(i64, usize, i64), u64>;

#[cfg(feature = "parallel")]
fn merge(mut a: Tally, b: Tally) -> Tally {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Precomputed smoothing data of a classical diagram.
struct Smoother {
    inc: Incidence,
    edge_count: usize,
    /// Signed shortcut intersections per edge (empty when not needed).
    per_edge: Vec<i64>,
}

impl Smoother {
    fn end_id(edge: usize, is_tail: bool) -> usize {
        2 * edge + usize::from(!is_tail)
    }

    fn partner(k: usize, b_smoothing: bool) -> usize {
        if b_smoothing {
            3 - k
        } else {
            k ^ 1
        }
    }

    fn tally_state(&self, state: u64, acc: &mut Tally) {
        let n = self.inc.slot.len();
        let mut uf = UnionFind::new(2 * self.edge_count);
        for e in 0..self.edge_count {
            uf.union(2 * e, 2 * e + 1);
        }
        for (c, row) in self.inc.slot.iter().enumerate() {
            let b = state >> c & 1 == 1;
            let pairs: [(usize, usize); 2] = if b { [(1, 2), (3, 0)] } else { [(0, 1), (2, 3)] };
            for (x, y) in pairs {
                let (ex, tx) = row[x];
                let (ey, ty) = row[y];
                uf.union(Self::end_id(ex, tx), Self::end_id(ey, ty));
            }
        }
        let b_count = state.count_ones() as i64;
        let sigma = n as i64 - 2 * b_count;
        let seg = if self.per_edge.is_empty() { 0 } else { self.segment_intersection(state) };
        *acc.entry((sigma, uf.components(), seg)).or_insert(0) += 1;
    }

    /// Algebraic intersection of the shortcut with the segment component of
    /// the state, oriented from leg to head.
    fn segment_intersection(&self, state: u64) -> i64 {
        let (mut e, mut fwd) = (0usize, true);
        let mut total = 0;
        loop {
            total += if fwd { self.per_edge[e] } else { -self.per_edge[e] };
            let arrive = if fwd { self.inc.ends[e].1 } else { self.inc.ends[e].0 };
            match arrive {
                Pos::Slot(c, k) => {
                    let (ne, is_tail) = self.inc.slot[c][Self::partner(k, state >> c & 1 == 1)];
                    e = ne;
                    fwd = is_tail;
                }
                _ => return total,
            }
        }
    }

    fn tally(&self, cfg: &StateSumConfig) -> Tally {
        let total: u64 = 1 << self.inc.slot.len();
        let run = |lo: u64, hi: u64| {
            let mut acc = Tally::new();
            for s in lo..hi {
                self.tally_state(s, &mut acc);
            }
            acc
        };
        #[cfg(feature = "parallel")]
        if cfg.parallel && total >= 256 {
            use rayon::prelude::*;
            let chunk = 1u64 << 8;
            return (0..total.div_ceil(chunk))
                .into_par_iter()
                .map(|k| run(k * chunk, ((k + 1) * chunk).min(total)))
                .reduce(Tally::new, merge);
        }
        let _ = cfg;
        run(0, total)
    }
}

fn prepare(d: &KnotoidDiagram, cfg: &StateSumConfig, alpha: Option<&Shortcut>) -> Result<Smoother> {
    d.require_classical()?;
    if d.crossing_count() > cfg.max_crossings {
        return Err(Error::TooManyCrossings { crossings: d.crossing_count(), cap: cfg.max_crossings });
    }
    Ok(Smoother {
        inc: Incidence::new(d),
        edge_count: d.edge_count(),
        per_edge: alpha.map(|a| a.per_edge(d.edge_count())).unwrap_or_default(),
    })
}

/// `delta^k` with `delta = -A^2 - A^-2`.
fn delta_pow(k: usize) -> LaurentPoly1 {
    LaurentPoly1::from_terms(Var::A, [(2, -1), (-2, -1)]).pow(k as u32)
}

/// `(-A^3)^(-w)`.
fn writhe_factor(w: i64) -> LaurentPoly1 {
    let sign = if w % 2 == 0 { 1 } else { -1 };
    LaurentPoly1::monomial(Var::A, -3 * w, sign)
}

pub fn kauffman_bracket_with(d: &KnotoidDiagram, cfg: &StateSumConfig) -> Result<LaurentPoly1> {
    let tally = prepare(d, cfg, None)?.tally(cfg);
    let mut by_loops: BTreeMap<usize, LaurentPoly1> = BTreeMap::new();
    for ((sigma, comps, _), count) in tally {
        by_loops.entry(comps).or_insert_with(|| LaurentPoly1::zero(Var::A)).add_term(sigma, count.into());
    }
    Ok(by_loops.into_iter().fold(LaurentPoly1::zero(Var::A), |acc, (comps, p)| acc + p * delta_pow(comps - 1)))
}

pub fn kauffman_bracket(d: &KnotoidDiagram) -> Result<LaurentPoly1> {
    kauffman_bracket_with(d, &StateSumConfig::default())
}

/// `f = (-A^3)^(-w) <K>`.
pub fn normalized_bracket_with(d: &KnotoidDiagram, cfg: &StateSumConfig) -> Result<LaurentPoly1> {
    let b = kauffman_bracket_with(d, cfg)?;
    Ok(writhe_factor(d.writhe()?) * b)
}

pub fn normalized_bracket(d: &KnotoidDiagram) -> Result<LaurentPoly1> {
    normalized_bracket_with(d, &StateSumConfig::default())
}

pub fn turaev_extended_bracket_with(
    d: &KnotoidDiagram,
    alpha: Option<&Shortcut>,
    cfg: &StateSumConfig,
) -> Result<LaurentPoly2> {
    if d.surface() != Surface::Sphere {
        return Err(Error::NotSpherical);
    }
    d.require_classical()?;
    let owned;
    let alpha = match alpha {
        Some(a) => {
            a.check(d)?;
            a
        }
        None => {
            owned = minimal_shortcut(d);
            &owned
        }
    };
    let tally = prepare(d, cfg, Some(alpha))?.tally(cfg);
    let mut groups: BTreeMap<(usize, i64), LaurentPoly1> = BTreeMap::new();
    for ((sigma, comps, seg), count) in tally {
        groups.entry((comps, seg)).or_insert_with(|| LaurentPoly1::zero(Var::A)).add_term(sigma, count.into());
    }
    let mut sum = LaurentPoly2::zero();
    for ((comps, seg), p) in groups {
        sum = &sum + &LaurentPoly2::from_poly1(&(p * delta_pow(comps - 1)), seg);
    }
    let w = d.writhe()?;
    Ok(&LaurentPoly2::from_poly1(&writhe_factor(w), -alpha.algebraic()) * &sum)
}

pub fn turaev_extended_bracket(d: &KnotoidDiagram, alpha: Option<&Shortcut>) -> Result<LaurentPoly2> {
    turaev_extended_bracket_with(d, alpha, &StateSumConfig::default())
}

/// Integer edge labels and crossing weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLabels {
    /// Label of every edge.
    pub labels: Vec<i64>,
    /// `(w_+, w_-)` per crossing; `None` at virtual crossings.
    pub weights: Vec<Option<(i64, i64)>>,
}

/// Labels starting from 0 on the leg edge. At a classical or singular
/// crossing a strand steps up by one when the other strand heads to its
/// right and down by one otherwise; virtual crossings keep the label.
pub fn affine_labels(d: &KnotoidDiagram) -> AffineLabels {
    let g = Gauss::from_diagram(d);
    let labels = pass_labels(&g.passes, &g.info);
    let weights = g
        .pass_pairs()
        .iter()
        .zip(&g.info)
        .map(|(&pair, p)| (p.kind != CrossingKind::Virtual).then(|| crossing_weights(pair, p, &labels)))
        .collect();
    AffineLabels { labels, weights }
}

/// `P(t) = sum sgn(c) (t^{w_K(c)} - 1)` over classical crossings.
pub fn affine_index_polynomial(d: &KnotoidDiagram) -> Result<LaurentPoly1> {
    if d.count_kind(CrossingKind::Singular) > 0 {
        return Err(Error::SingularPresent);
    }
    let g = Gauss::from_diagram(d);
    let labels = pass_labels(&g.passes, &g.info);
    Ok(affine_sum(&g.pass_pairs(), &g.info, &labels))
}

/// Sum over the crossings switched by the descending walk of
/// `sgn(c) (t^{w_c} - 1)`, where `w_c` is the winding of the loop at `c`.
pub fn vbar(d: &KnotoidDiagram) -> Result<LaurentPoly1> {
    if d.surface() != Surface::Sphere {
        return Err(Error::NotSpherical);
    }
    let (_, record) = make_descending(d)?;
    let mut p = LaurentPoly1::zero(Var::T);
    for e in &record.entries {
        let w = winding_of_loop(&e.snapshot, e.crossing)?;
        p.add_term(w, e.sign.into());
        p.add_term(0, (-e.sign).into());
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    Bracket,
    Normalized,
    Turaev,
    Affine,
    Vbar,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Bracket => "bracket",
            Invariant::Normalized => "f",
            Invariant::Turaev => "turaev",
            Invariant::Affine => "affine",
            Invariant::Vbar => "vbar",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantValue {
    Poly1(LaurentPoly1),
    Poly2(LaurentPoly2),
}

impl InvariantValue {
    pub fn is_zero(&self) -> bool {
        match self {
            InvariantValue::Poly1(p) => p.is_zero(),
            InvariantValue::Poly2(p) => p.is_zero(),
        }
    }

    fn add_signed(&self, other: &InvariantValue, negative: bool) -> InvariantValue {
        match (self, other) {
            (InvariantValue::Poly1(a), InvariantValue::Poly1(b)) => {
                InvariantValue::Poly1(if negative { a - b } else { a + b })
            }
            (InvariantValue::Poly2(a), InvariantValue::Poly2(b)) => {
                InvariantValue::Poly2(if negative { a - b } else { a + b })
            }
            _ => unreachable!("values of one invariant share a shape"),
        }
    }

    pub fn to_json(&self, name: &str) -> serde_json::Value {
        match self {
            InvariantValue::Poly1(p) => p.to_json(name),
            InvariantValue::Poly2(p) => p.to_json(name),
        }
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantValue::Poly1(p) => p.fmt(f),
            InvariantValue::Poly2(p) => p.fmt(f),
        }
    }
}

pub fn evaluate(inv: Invariant, d: &KnotoidDiagram, cfg: &StateSumConfig) -> Result<InvariantValue> {
    Ok(match inv {
        Invariant::Bracket => InvariantValue::Poly1(kauffman_bracket_with(d, cfg)?),
        Invariant::Normalized => InvariantValue::Poly1(normalized_bracket_with(d, cfg)?),
        Invariant::Turaev => InvariantValue::Poly2(turaev_extended_bracket_with(d, None, cfg)?),
        Invariant::Affine => InvariantValue::Poly1(affine_index_polynomial(d)?),
        Invariant::Vbar => InvariantValue::Poly1(vbar(d)?),
    })
}

fn zero_value(inv: Invariant) -> InvariantValue {
    match inv {
        Invariant::Turaev => InvariantValue::Poly2(LaurentPoly2::zero()),
        Invariant::Bracket | Invariant::Normalized => InvariantValue::Poly1(LaurentPoly1::zero(Var::A)),
        Invariant::Affine | Invariant::Vbar => InvariantValue::Poly1(LaurentPoly1::zero(Var::T)),
    }
}

/// Alternating sum over all resolutions of the singular crossings, each
/// negative resolution contributing a factor -1.
pub fn skein_extend_with(inv: Invariant, d: &KnotoidDiagram, cfg: &StateSumConfig) -> Result<InvariantValue> {
    let singular: Vec<usize> =
        (0..d.crossing_count()).filter(|&c| d.crossings()[c].kind == CrossingKind::Singular).collect();
    if singular.len() >= 63 {
        return Err(Error::TooManyCrossings { crossings: singular.len(), cap: 62 });
    }
    let term = |mask: u64| -> Result<(bool, InvariantValue)> {
        let mut cur = d.clone();
        for (k, &s) in singular.iter().enumerate() {
            cur = resolve(&cur, s, if mask >> k & 1 == 1 { -1 } else { 1 })?;
        }
        Ok((mask.count_ones() % 2 == 1, evaluate(inv, &cur, cfg)?))
    };
    let total = 1u64 << singular.len();
    let terms: Vec<Result<(bool, InvariantValue)>> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            if cfg.parallel {
                (0..total).into_par_iter().map(term).collect()
            } else {
                (0..total).map(term).collect()
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..total).map(term).collect()
        }
    };
    let mut acc = zero_value(inv);
    for t in terms {
        let (negative, v) = t?;
        acc = acc.add_signed(&v, negative);
    }
    Ok(acc)
}

pub fn skein_extend(inv: Invariant, d: &KnotoidDiagram) -> Result<InvariantValue> {
    skein_extend_with(inv, d, &StateSumConfig::default())
}

/// `[exp_coeff(f, n) for n in 0..=n_max]`.
pub fn vassiliev_coefficients(d: &KnotoidDiagram, n_max: u32) -> Result<Vec<Rational>> {
    let f = normalized_bracket(d)?;
    Ok((0..=n_max).map(|n| f.exp_coeff(n)).collect())
}

/// Nonzero `t_{k,l}` for `k = 0..=k_max`, keyed by `(k, l)`.
pub fn turaev_coefficients(d: &KnotoidDiagram, k_max: u32) -> Result<BTreeMap<(u32, i64), Rational>> {
    let t = turaev_extended_bracket(d, None)?;
    Ok(coefficient_table(&t, k_max))
}

fn coefficient_table(t: &LaurentPoly2, k_max: u32) -> BTreeMap<(u32, i64), Rational> {
    let mut out = BTreeMap::new();
    for k in 0..=k_max {
        for (l, v) in t.exp_coeff2(k) {
            if !v.is_zero() {
                out.insert((k, l), v);
            }
        }
    }
    out
}

/// What [`finite_type_check`] evaluates on each sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteTypeProbe {
    Invariant(Invariant),
    /// `v_n`, the `x^n` coefficient of `f(e^x)`.
    VassilievCoefficient(u32),
    /// All `t_{k,l}` for the given `k`.
    TuraevCoefficient(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTypeReport {
    pub order: usize,
    pub samples: usize,
    /// Indices of samples with a nonzero skein extension, with the value.
    pub counterexamples: Vec<(usize, String)>,
}

impl FiniteTypeReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks that the probe vanishes on every sample; each sample must carry
/// exactly `order + 1` singular crossings.
pub fn finite_type_check(probe: FiniteTypeProbe, order: usize, samples: &[KnotoidDiagram]) -> Result<FiniteTypeReport> {
    let cfg = StateSumConfig::default();
    let mut counterexamples = Vec::new();
    for (i, d) in samples.iter().enumerate() {
        let found = d.count_kind(CrossingKind::Singular);
        if found != order + 1 {
            return Err(Error::WrongSingularCount { expected: order + 1, found });
        }
        let shown = match probe {
            FiniteTypeProbe::Invariant(inv) => {
                let v = skein_extend_with(inv, d, &cfg)?;
                (!v.is_zero()).then(|| v.to_string())
            }
            FiniteTypeProbe::VassilievCoefficient(n) => {
                let InvariantValue::Poly1(f) = skein_extend_with(Invariant::Normalized, d, &cfg)? else {
                    unreachable!()
                };
                let v = f.exp_coeff(n);
                (!v.is_zero()).then(|| v.to_string())
            }
            FiniteTypeProbe::TuraevCoefficient(k) => {
                let InvariantValue::Poly2(t) = skein_extend_with(Invariant::Turaev, d, &cfg)? else { unreachable!() };
                let row: BTreeMap<i64, Rational> = t.exp_coeff2(k).into_iter().filter(|(_, v)| !v.is_zero()).collect();
                (!row.is_empty()).then(|| format!("{row:?}"))
            }
        };
        if let Some(s) = shown {
            counterexamples.push((i, s));
        }
    }
    Ok(FiniteTypeReport { order, samples: samples.len(), counterexamples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_ktd;
    use crate::generate::random_diagrams;

    fn kink() -> KnotoidDiagram {
        parse_ktd("knotoid sphere\nX 0 2 1 1\n").unwrap()
    }

    #[test]
    fn trivial_values() {
        let t = KnotoidDiagram::trivial();
        assert_eq!(kauffman_bracket(&t).unwrap(), LaurentPoly1::one(Var::A));
        assert_eq!(normalized_bracket(&t).unwrap(), LaurentPoly1::one(Var::A));
        assert_eq!(turaev_extended_bracket(&t, None).unwrap(), LaurentPoly2::one());
        assert!(affine_index_polynomial(&t).unwrap().is_zero());
        assert!(vbar(&t).unwrap().is_zero());
        assert_eq!(affine_labels(&t).labels, vec![0]);
    }

    #[test]
    fn kink_bracket() {
        assert_eq!(kauffman_bracket(&kink()).unwrap(), LaurentPoly1::monomial(Var::A, 3, -1));
        assert_eq!(normalized_bracket(&kink()).unwrap(), LaurentPoly1::one(Var::A));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for d in random_diagrams(4, 6, 10) {
            let seq = StateSumConfig::sequential();
            let par = StateSumConfig { parallel: true, ..seq };
            assert_eq!(kauffman_bracket_with(&d, &seq).unwrap(), kauffman_bracket_with(&d, &par).unwrap());
            assert_eq!(
                turaev_extended_bracket_with(&d, None, &seq).unwrap(),
                turaev_extended_bracket_with(&d, None, &par).unwrap()
            );
        }
    }

    #[test]
    fn crossing_cap() {
        let d = random_diagrams(1, 1, 6).remove(0);
        let cfg = StateSumConfig { max_crossings: 0, parallel: false };
        assert!(matches!(kauffman_bracket_with(&d, &cfg), Err(Error::TooManyCrossings { .. })));
    }

    #[test]
    fn weights_are_opposite() {
        for d in random_diagrams(8, 20, 8) {
            for (wp, wm) in affine_labels(&d).weights.into_iter().flatten() {
                assert_eq!(wm, -wp);
            }
        }
    }

    #[test]
    fn singular_input_is_rejected() {
        let s = parse_ktd("knotoid sphere\nS 0 2 1 1\n").unwrap();
        assert_eq!(kauffman_bracket(&s), Err(Error::SingularPresent));
        assert_eq!(affine_index_polynomial(&s), Err(Error::SingularPresent));
        assert!(skein_extend(Invariant::Affine, &s).unwrap().is_zero());
    }
}
