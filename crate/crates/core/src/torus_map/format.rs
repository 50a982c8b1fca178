//! The `TORUSMAP 1` / `SPHERE 1` text format.
//!
//! ```text
//! TORUSMAP 1
//! V <n>
//! <vid> : <nbr>/<dx>/<dy> <nbr>@<edge>/<dx>/<dy> ...
//! ```
//!
//! Each vertex line lists outgoing darts in counterclockwise order.
//! Darts are paired with their reverse by matching `(tail, head, label)`
//! against `(head, tail, -label)` in file order; an explicit `@<edge>`
//! tag pairs the two darts carrying the same tag instead. `SPHERE 1`
//! files use the same grammar and may omit labels.

use std::collections::HashMap;
use std::fmt::Write;

use crate::embedding::{Embedding, Vertex};
use crate::error::{Error, Result};
use crate::lattice::Vec2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Torus,
    Sphere,
}

#[derive(Clone, Debug)]
struct RawDart {
    nbr: Vertex,
    tag: Option<u64>,
    label: Vec2,
    line: usize,
    column: usize,
}

#[derive(Clone, Debug)]
pub struct RawMap {
    pub kind: MapKind,
    rotations: Vec<Vec<RawDart>>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn parse_int<T: std::str::FromStr>(s: &str, line: usize, column: usize) -> Result<T> {
    s.parse().map_err(|_| syntax(line, column, format!("expected an integer, found {s:?}")))
}

pub fn parse_map(text: &str) -> Result<RawMap> {
    // (line number, column of first token, content without comment)
    let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
        let content = l.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            None
        } else {
            let col = content.len() - content.trim_start().len() + 1;
            Some((i + 1, col, content))
        }
    });

    let (ln, col, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
    let kind = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["TORUSMAP", "1"] => MapKind::Torus,
        ["SPHERE", "1"] => MapKind::Sphere,
        _ => return Err(syntax(ln, col, "expected header \"TORUSMAP 1\" or \"SPHERE 1\"")),
    };

    let (ln, col, vline) = lines.next().ok_or_else(|| syntax(ln + 1, 1, "missing \"V <n>\" line"))?;
    let n: usize = match vline.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["V", count] => parse_int(count, ln, col + 2)?,
        _ => return Err(syntax(ln, col, "expected \"V <n>\"")),
    };

    let mut rotations: Vec<Option<Vec<RawDart>>> = vec![None; n];
    for (ln, _, content) in lines {
        let (lhs, rhs) = content.split_once(':').ok_or_else(|| syntax(ln, 1, "expected \"<vid> : ...\""))?;
        let vcol = lhs.len() - lhs.trim_start().len() + 1;
        let v: usize = parse_int(lhs.trim(), ln, vcol)?;
        if v >= n {
            return Err(syntax(ln, vcol, format!("vertex id {v} out of range 0..{n}")));
        }
        if rotations[v].is_some() {
            return Err(syntax(ln, vcol, format!("vertex {v} listed twice")));
        }
        let mut darts = Vec::new();
        let base = lhs.len() + 1;
        let mut offset = 0;
        for tok in rhs.split_whitespace() {
            let start = rhs[offset..].find(tok).map(|i| i + offset).unwrap_or(offset);
            offset = start + tok.len();
            let column = base + start + 1;
            darts.push(parse_dart(tok, kind, ln, column, n)?);
        }
        rotations[v] = Some(darts);
    }
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| syntax(0, 0, format!("vertex {v} has no line"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(RawMap { kind, rotations })
}

fn parse_dart(tok: &str, kind: MapKind, line: usize, column: usize, n: usize) -> Result<RawDart> {
    let parts: Vec<&str> = tok.split('/').collect();
    let (head, label) = match (parts.len(), kind) {
        (3, _) => {
            let dx = parse_int(parts[1], line, column)?;
            let dy = parse_int(parts[2], line, column)?;
            (parts[0], Vec2::new(dx, dy))
        }
        (1, MapKind::Sphere) => (parts[0], Vec2::ZERO),
        _ => return Err(syntax(line, column, format!("malformed dart {tok:?}, expected <nbr>/<dx>/<dy>"))),
    };
    if kind == MapKind::Sphere && !label.is_zero() {
        return Err(syntax(line, column, "sphere maps carry zero labels"));
    }
    let (nbr, tag) = match head.split_once('@') {
        Some((a, b)) => (parse_int::<usize>(a, line, column)?, Some(parse_int::<u64>(b, line, column)?)),
        None => (parse_int::<usize>(head, line, column)?, None),
    };
    if nbr >= n {
        return Err(syntax(line, column, format!("neighbor {nbr} out of range 0..{n}")));
    }
    Ok(RawDart { nbr, tag, label, line, column })
}

impl RawMap {
    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    /// Pair darts and build the embedding. Dart ids follow file order
    /// (vertex lines in id order, darts left to right).
    pub fn into_embedding(self) -> Result<(Embedding, Vec<Vec2>)> {
        let mut tail = Vec::new();
        let mut labels = Vec::new();
        let mut rot = Vec::new();
        let mut info = Vec::new();
        for (v, darts) in self.rotations.iter().enumerate() {
            let mut r = Vec::new();
            for rd in darts {
                r.push(tail.len());
                tail.push(v);
                labels.push(rd.label);
                info.push(rd.clone());
            }
            rot.push(r);
        }
        let nd = tail.len();
        let mut partner = vec![usize::MAX; nd];

        let mut tagged: HashMap<u64, Vec<usize>> = HashMap::new();
        for (d, rd) in info.iter().enumerate() {
            if let Some(t) = rd.tag {
                tagged.entry(t).or_default().push(d);
            }
        }
        let mut tags: Vec<_> = tagged.into_iter().collect();
        tags.sort();
        for (t, ds) in tags {
            if ds.len() != 2 {
                let rd = &info[ds[0]];
                return Err(syntax(rd.line, rd.column, format!("edge tag @{t} must appear on exactly two darts")));
            }
            let (a, b) = (ds[0], ds[1]);
            if info[a].nbr != tail[b] || info[b].nbr != tail[a] {
                return Err(Error::BrokenInvolution(format!("darts tagged @{t} are not reverses of each other")));
            }
            if labels[a] != -labels[b] {
                return Err(Error::LabelAntisymmetry { dart: a });
            }
            partner[a] = b;
            partner[b] = a;
        }

        // Implicit pairing: k-th occurrence of (u, v, L) with k-th of (v, u, -L).
        let mut pending: HashMap<(usize, usize, Vec2), Vec<usize>> = HashMap::new();
        for d in 0..nd {
            if partner[d] != usize::MAX {
                continue;
            }
            let key = (tail[d], info[d].nbr, labels[d]);
            let rev = (info[d].nbr, tail[d], -labels[d]);
            if let Some(q) = pending.get_mut(&rev) {
                if let Some(pos) = q.iter().position(|&e| e != d) {
                    let e = q.remove(pos);
                    partner[d] = e;
                    partner[e] = d;
                    continue;
                }
            }
            pending.entry(key).or_default().push(d);
        }
        let mut leftover: Vec<usize> = pending.into_values().flatten().collect();
        leftover.sort_unstable();
        if let Some(&d) = leftover.first() {
            let (u, v) = (tail[d], info[d].nbr);
            let has_reverse = leftover.iter().any(|&e| tail[e] == v && info[e].nbr == u && e != d);
            return Err(if has_reverse {
                Error::LabelAntisymmetry { dart: d }
            } else {
                Error::BrokenInvolution(format!("dart {u}->{v} (line {}) has no reverse", info[d].line))
            });
        }
        let emb = Embedding::from_parts(tail, partner, rot)?;
        Ok((emb, labels))
    }
}

/// Canonical writer. Edge tags are emitted only where implicit pairing
/// would be ambiguous, numbered by first appearance.
pub fn write_map(kind: MapKind, emb: &Embedding, labels: Option<&[Vec2]>) -> String {
    let label = |d: usize| labels.map(|l| l[d]).unwrap_or(Vec2::ZERO);
    let mut multiplicity: HashMap<(usize, usize, Vec2), usize> = HashMap::new();
    for d in 0..emb.num_darts() {
        *multiplicity.entry((emb.tail(d), emb.head(d), label(d))).or_default() += 1;
    }
    let mut tag_of: HashMap<usize, usize> = HashMap::new();
    let mut next_tag = 0;
    let mut out = String::new();
    out.push_str(match kind {
        MapKind::Torus => "TORUSMAP 1\n",
        MapKind::Sphere => "SPHERE 1\n",
    });
    let _ = writeln!(out, "V {}", emb.num_vertices());
    for v in 0..emb.num_vertices() {
        let _ = write!(out, "{v} :");
        for &d in emb.rotation(v) {
            let (h, l) = (emb.head(d), label(d));
            let ambiguous = multiplicity[&(v, h, l)] > 1 || (v == h && l.is_zero());
            let _ = write!(out, " {h}");
            if ambiguous {
                let edge = d.min(emb.partner(d));
                let t = *tag_of.entry(edge).or_insert_with(|| {
                    next_tag += 1;
                    next_tag - 1
                });
                let _ = write!(out, "@{t}");
            }
            if kind == MapKind::Torus {
                let _ = write!(out, "/{}/{}", l.x, l.y);
            }
        }
        out.push('\n');
    }
    out
}
