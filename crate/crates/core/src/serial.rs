//! Text, JSON and CSV forms of the crate's values.
//!
//! Element naming is positional: the i-th smallest element of `A` is
//! `a{i+1}`, of `B` is `b{j+1}`, of `C` is `c{k+1}`. Parsers rebuild the
//! canonical index layout (`A` first, then `B`, then `C`), so grids survive
//! round trips up to that normalization.

use serde::{Deserialize, Serialize};

use crate::config::ConfigMatrix;
use crate::family::ElementaryImset;
use crate::imset::Imset;
use crate::representation::{Move, MoveKind, RepGrid};
use crate::rift::RiftPattern;
use crate::triplet::Triplet;
use crate::varset::VarSet;
use crate::{Error, Result};

/// Positional name of a ground-set element relative to a triplet.
pub fn element_name(t: &Triplet, idx: usize) -> String {
    for (prefix, set) in [("a", t.a()), ("b", t.b()), ("c", t.c())] {
        if set.contains(idx) {
            let rank = set.iter().position(|e| e == idx).unwrap();
            return format!("{prefix}{}", rank + 1);
        }
    }
    format!("x{idx}")
}

/// Names of a subset's elements, `A` part first, then `B`, then `C`.
pub fn set_names(t: &Triplet, s: VarSet) -> Vec<String> {
    let mut names = Vec::with_capacity(s.len());
    for part in [t.a(), t.b(), t.c()] {
        for e in part.intersect(s).iter() {
            names.push(element_name(t, e));
        }
    }
    names
}

/// Label of an elementary imset in the angle-bracket notation, e.g.
/// `<a1,b2|a2 b1>`.
pub fn elementary_label(t: &Triplet, e: &ElementaryImset) -> String {
    let gamma = set_names(t, e.gamma).join(" ");
    format!(
        "<{},{}|{}>",
        element_name(t, e.a),
        element_name(t, e.b),
        gamma
    )
}

/// Imset as a list of `[sorted-element-names, value]` pairs ordered by the
/// subset's integer key.
pub fn imset_to_json(t: &Triplet, u: &Imset) -> serde_json::Value {
    let pairs: Vec<serde_json::Value> = u
        .entries()
        .map(|(s, v)| serde_json::json!([set_names(t, s), v]))
        .collect();
    serde_json::Value::Array(pairs)
}

/// Plain-text rendering of an imset, one entry per line.
pub fn imset_to_text(t: &Triplet, u: &Imset) -> String {
    let mut out = String::new();
    for (s, v) in u.entries() {
        let names = set_names(t, s).join(" ");
        out.push_str(&format!("{v:+} {{{names}}}\n"));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    a: String,
    b: String,
    gamma: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    dims: [usize; 2],
    cells: Vec<Vec<CellJson>>,
}

/// Grid JSON: `{"dims":[|A|,|B|], "cells":[[{"a":..,"b":..,"gamma":[..]},..],..]}`
/// with `cells[s][t]` in row-major order.
pub fn grid_to_json(g: &RepGrid) -> serde_json::Value {
    let t = g.triplet();
    let (na, nb) = g.dims();
    let cells: Vec<Vec<CellJson>> = (0..na)
        .map(|s| {
            (0..nb)
                .map(|tv| {
                    let e = g.cell(s, tv);
                    CellJson {
                        a: element_name(t, e.a),
                        b: element_name(t, e.b),
                        gamma: set_names(t, e.gamma),
                    }
                })
                .collect()
        })
        .collect();
    serde_json::to_value(GridJson {
        dims: [na, nb],
        cells,
    })
    .expect("grid serialization cannot fail")
}

fn parse_name(name: &str) -> Result<(char, usize)> {
    let mut chars = name.chars();
    let prefix = chars
        .next()
        .ok_or_else(|| Error::Parse("empty element name".into()))?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::Parse(format!("bad element name {name:?}")))?;
    if rank == 0 || !matches!(prefix, 'a' | 'b' | 'c') {
        return Err(Error::Parse(format!("bad element name {name:?}")));
    }
    Ok((prefix, rank - 1))
}

fn grid_from_value(v: &serde_json::Value) -> Result<RepGrid> {
    let gj: GridJson = serde_json::from_value(v.clone())
        .map_err(|e| Error::Parse(format!("grid JSON: {e}")))?;
    let [na, nb] = gj.dims;
    if na == 0 || nb == 0 || gj.cells.len() != na || gj.cells.iter().any(|r| r.len() != nb) {
        return Err(Error::Parse("grid dims do not match cells".into()));
    }
    // the c-part of the layout is whatever the gammas mention
    let mut nc = 0usize;
    for row in &gj.cells {
        for cell in row {
            for name in &cell.gamma {
                let (p, r) = parse_name(name)?;
                if p == 'c' {
                    nc = nc.max(r + 1);
                }
            }
        }
    }
    let t = Triplet::by_sizes_with_c(na, nb, nc);
    let idx = |prefix: char, rank: usize| -> Result<usize> {
        match prefix {
            'a' if rank < na => Ok(rank),
            'b' if rank < nb => Ok(na + rank),
            'c' if rank < nc => Ok(na + nb + rank),
            _ => Err(Error::Parse("element name outside the grid's sets".into())),
        }
    };
    let mut cells = Vec::with_capacity(na * nb);
    for row in &gj.cells {
        for cell in row {
            let (pa, ra) = parse_name(&cell.a)?;
            let (pb, rb) = parse_name(&cell.b)?;
            if pa != 'a' || pb != 'b' {
                return Err(Error::Parse("cell endpoints must come from A and B".into()));
            }
            let mut gamma = VarSet::EMPTY;
            for name in &cell.gamma {
                let (p, r) = parse_name(name)?;
                gamma = gamma.with(idx(p, r)?);
            }
            cells.push(
                ElementaryImset::new(idx('a', ra)?, idx('b', rb)?, gamma)
                    .map_err(|e| Error::Parse(format!("bad cell: {e}")))?,
            );
        }
    }
    RepGrid::from_cells(&t, cells)
}

/// Parses one grid or an array of grids from JSON text.
pub fn grids_from_json(text: &str) -> Result<Vec<RepGrid>> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("JSON: {e}")))?;
    match &v {
        serde_json::Value::Array(items) => items.iter().map(grid_from_value).collect(),
        _ => Ok(vec![grid_from_value(&v)?]),
    }
}

#[derive(Serialize, Deserialize)]
struct MoveJson {
    kind: String,
    anchor: [usize; 2],
}

/// Move trace as `[{"kind":"a-swap"|"b-swap","anchor":[s,t]}, ..]`.
pub fn trace_to_json(trace: &[Move]) -> serde_json::Value {
    let moves: Vec<MoveJson> = trace
        .iter()
        .map(|m| MoveJson {
            kind: match m.kind {
                MoveKind::ASwap => "a-swap".into(),
                MoveKind::BSwap => "b-swap".into(),
            },
            anchor: [m.anchor.0, m.anchor.1],
        })
        .collect();
    serde_json::to_value(moves).expect("trace serialization cannot fail")
}

pub fn trace_from_json(text: &str) -> Result<Vec<Move>> {
    let moves: Vec<MoveJson> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("trace JSON: {e}")))?;
    moves
        .into_iter()
        .map(|m| {
            let kind = match m.kind.as_str() {
                "a-swap" => MoveKind::ASwap,
                "b-swap" => MoveKind::BSwap,
                other => return Err(Error::Parse(format!("unknown move kind {other:?}"))),
            };
            Ok(Move {
                kind,
                anchor: (m.anchor[0], m.anchor[1]),
            })
        })
        .collect()
}

/// Rift pattern as JSON: flat row-major trit string plus the rift list.
pub fn pattern_to_json(p: &RiftPattern) -> serde_json::Value {
    let rifts: Vec<serde_json::Value> = p
        .rifts()
        .iter()
        .map(|r| match *r {
            crate::rift::Rift::S { s, t_lo, t_hi } => serde_json::json!({
                "kind": "s-rift", "s": s, "t_lo": t_lo, "t_hi": t_hi, "length": r.len(),
            }),
            crate::rift::Rift::B { s_lo, s_hi, t } => serde_json::json!({
                "kind": "b-rift", "s_lo": s_lo, "s_hi": s_hi, "t": t, "length": r.len(),
            }),
        })
        .collect();
    serde_json::json!({
        "dims": [p.dims().0, p.dims().1],
        "trits": p.flat(),
        "rifts": rifts,
    })
}

/// Configuration matrix as CSV: header of column labels, then one row per
/// subset with its label in the first field.
pub fn matrix_to_csv(m: &ConfigMatrix) -> String {
    let t = m.triplet();
    let mut out = String::new();
    out.push_str("subset");
    for e in m.cols() {
        out.push(',');
        out.push_str(&elementary_label(t, e).replace(' ', ""));
    }
    out.push('\n');
    for (i, &row) in m.rows().iter().enumerate() {
        let names = set_names(t, row).join(" ");
        out.push_str(&format!("{{{names}}}"));
        for j in 0..m.cols().len() {
            out.push(',');
            out.push_str(&m.entry(i, j).to_string());
        }
        out.push('\n');
    }
    out
}
