//! The KTD text format.
//!
//! ```text
//! knotoid sphere            # or: knotoid plane <outer-face-id>
//! X 0 2 1 1                 # kind letter (X/S/V) and four slot labels, CCW
//! ```
//!
//! Blank lines and `#` comments are ignored. Output is canonical: crossings
//! ordered by their smallest edge label, single spaces, LF line endings.

use crate::diagram::{CrossingKind, CrossingNode, KnotoidDiagram, Surface};
use crate::error::{Error, Result};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_ktd(text: &str) -> Result<KnotoidDiagram> {
    let mut header: Option<(Surface, Option<usize>)> = None;
    let mut crossings = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        if toks.is_empty() {
            continue;
        }
        if header.is_none() {
            let (col, word) = toks[0];
            if word != "knotoid" {
                return Err(parse_err(line_no, col, format!("expected `knotoid` header, found `{word}`")));
            }
            let Some(&(scol, surf)) = toks.get(1) else {
                return Err(parse_err(line_no, col + word.len(), "missing surface"));
            };
            let parsed = match (surf, toks.len()) {
                ("sphere", 2) => (Surface::Sphere, None),
                ("plane", 3) => {
                    let (fcol, f) = toks[2];
                    let face =
                        f.parse::<usize>().map_err(|_| parse_err(line_no, fcol, format!("bad outer face `{f}`")))?;
                    (Surface::Plane, Some(face))
                }
                ("plane", 2) => return Err(parse_err(line_no, scol + surf.len(), "plane needs an outer face id")),
                ("sphere", _) | ("plane", _) => {
                    let (c, _) = toks[toks.len() - 1];
                    return Err(parse_err(line_no, c, "unexpected token after header"));
                }
                _ => return Err(parse_err(line_no, scol, format!("unknown surface `{surf}`"))),
            };
            header = Some(parsed);
            continue;
        }
        let (kcol, kind) = toks[0];
        let kind = match kind {
            "X" => CrossingKind::Classical,
            "S" => CrossingKind::Singular,
            "V" => CrossingKind::Virtual,
            other => return Err(parse_err(line_no, kcol, format!("unknown crossing kind `{other}`"))),
        };
        if toks.len() != 5 {
            let col = toks.get(5).map_or(kcol, |t| t.0);
            return Err(parse_err(line_no, col, format!("expected 4 slot labels, found {}", toks.len() - 1)));
        }
        let mut slots = [0usize; 4];
        for (k, &(col, t)) in toks[1..].iter().enumerate() {
            slots[k] = t.parse().map_err(|_| parse_err(line_no, col, format!("bad edge label `{t}`")))?;
        }
        crossings.push(CrossingNode { kind, slots });
    }
    let (surface, outer) = header.ok_or_else(|| parse_err(last_line.max(1), 1, "missing `knotoid` header"))?;
    KnotoidDiagram::new(surface, crossings, outer)
}

pub fn emit_ktd(d: &KnotoidDiagram) -> String {
    let mut out = match (d.surface(), d.outer_face()) {
        (Surface::Plane, Some(f)) => format!("knotoid plane {f}\n"),
        _ => "knotoid sphere\n".to_string(),
    };
    let mut order: Vec<&CrossingNode> = d.crossings().iter().collect();
    order.sort_by_key(|c| c.slots.iter().min().copied());
    for c in order {
        let [a, b, e, f] = c.slots;
        out.push_str(&format!("{} {a} {b} {e} {f}\n", c.kind.letter()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only_is_trivial() {
        let d = parse_ktd("knotoid sphere\n").unwrap();
        assert_eq!(d, KnotoidDiagram::trivial());
        assert_eq!(emit_ktd(&d), "knotoid sphere\n");
    }

    #[test]
    fn one_kink() {
        let d = parse_ktd("knotoid sphere\nX 0 2 1 1\n").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.edge_count(), 3);
        assert_eq!(emit_ktd(&d), "knotoid sphere\nX 0 2 1 1\n");
    }

    #[test]
    fn comments_and_blank_lines() {
        let d = parse_ktd("# a kink\n\nknotoid sphere  # header\n  X 0 2 1 1 # positive\n").unwrap();
        assert_eq!(d.crossing_count(), 1);
    }

    #[test]
    fn malformed_slot_count_reports_line() {
        match parse_ktd("knotoid sphere\nX 0 2 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_ktd("knotoid sphere\nX 0 2 1 1 7\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 11)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_tokens() {
        assert!(matches!(parse_ktd("knot sphere\n"), Err(Error::Parse { line: 1, column: 1, .. })));
        assert!(matches!(parse_ktd("knotoid torus\n"), Err(Error::Parse { line: 1, column: 9, .. })));
        assert!(matches!(parse_ktd("knotoid sphere\nQ 0 2 1 1\n"), Err(Error::Parse { line: 2, column: 1, .. })));
        assert!(matches!(parse_ktd("knotoid sphere\nX 0 a 1 1\n"), Err(Error::Parse { line: 2, column: 5, .. })));
        assert!(matches!(parse_ktd(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn validation_failure_is_forwarded() {
        assert!(matches!(parse_ktd("knotoid sphere\nX 0 1 1 1\n"), Err(Error::Invalid(_))));
    }

    #[test]
    fn plane_header() {
        let d = parse_ktd("knotoid plane 1\nX 0 2 1 1\n").unwrap();
        assert_eq!(d.outer_face(), Some(1));
        assert_eq!(emit_ktd(&d), "knotoid plane 1\nX 0 2 1 1\n");
    }
}
