//! Rift analysis and constructive normalization of representation grids.
//!
//! Each cell `u<a,b|G>` touches four subsets: `G`, `aG`, `bG` and `abG`.
//! Collecting these over the whole grid tiles a region of the subset
//! lattice between `C` and `ABC`. In a nested (standard) representation the
//! tiles share all their corners; elsewhere the sharing breaks along
//! "rifts". This module computes the four boundary maps, classifies every
//! touched subset, extracts the rift pattern, decides separability and
//! sigma-decomposability, and eliminates rifts by explicit two-by-two move
//! sequences until the grid reaches standard form.

use std::collections::HashMap;

use crate::family::ElementaryImset;
use crate::representation::{Move, RepGrid};
use crate::triplet::Triplet;
use crate::varset::VarSet;
use crate::{Error, Result};

/// The four per-cell maps into the subset lattice, with inverse lookup.
#[derive(Clone, Debug)]
pub struct BoundaryMaps {
    na: usize,
    nb: usize,
    gamma: Vec<VarSet>,
    gamma_a: Vec<VarSet>,
    gamma_b: Vec<VarSet>,
    gamma_ab: Vec<VarSet>,
    inv_gamma: HashMap<VarSet, (usize, usize)>,
    inv_gamma_a: HashMap<VarSet, (usize, usize)>,
    inv_gamma_b: HashMap<VarSet, (usize, usize)>,
    inv_gamma_ab: HashMap<VarSet, (usize, usize)>,
}

impl BoundaryMaps {
    /// Grid dimensions these maps were computed over.
    pub fn dims(&self) -> (usize, usize) {
        (self.na, self.nb)
    }

    pub fn gamma(&self, s: usize, t: usize) -> VarSet {
        self.gamma[s * self.nb + t]
    }

    pub fn gamma_a(&self, s: usize, t: usize) -> VarSet {
        self.gamma_a[s * self.nb + t]
    }

    pub fn gamma_b(&self, s: usize, t: usize) -> VarSet {
        self.gamma_b[s * self.nb + t]
    }

    pub fn gamma_ab(&self, s: usize, t: usize) -> VarSet {
        self.gamma_ab[s * self.nb + t]
    }

    /// Cell whose conditioning set is `q`, if any.
    pub fn inv_gamma(&self, q: VarSet) -> Option<(usize, usize)> {
        self.inv_gamma.get(&q).copied()
    }

    pub fn inv_gamma_a(&self, q: VarSet) -> Option<(usize, usize)> {
        self.inv_gamma_a.get(&q).copied()
    }

    pub fn inv_gamma_b(&self, q: VarSet) -> Option<(usize, usize)> {
        self.inv_gamma_b.get(&q).copied()
    }

    pub fn inv_gamma_ab(&self, q: VarSet) -> Option<(usize, usize)> {
        self.inv_gamma_ab.get(&q).copied()
    }

    /// Every subset in the image of the four maps.
    pub fn points(&self) -> Vec<VarSet> {
        let mut pts: Vec<VarSet> = self
            .gamma
            .iter()
            .chain(&self.gamma_a)
            .chain(&self.gamma_b)
            .chain(&self.gamma_ab)
            .copied()
            .collect();
        pts.sort_by_key(|s| s.bits());
        pts.dedup();
        pts
    }
}

/// Computes the four boundary maps of a validated grid. Each map is
/// injective over cells; a collision means the grid was not a valid
/// representation.
pub fn boundary_maps(g: &RepGrid) -> Result<BoundaryMaps> {
    let (na, nb) = g.dims();
    let mut maps = BoundaryMaps {
        na,
        nb,
        gamma: Vec::with_capacity(na * nb),
        gamma_a: Vec::with_capacity(na * nb),
        gamma_b: Vec::with_capacity(na * nb),
        gamma_ab: Vec::with_capacity(na * nb),
        inv_gamma: HashMap::new(),
        inv_gamma_a: HashMap::new(),
        inv_gamma_b: HashMap::new(),
        inv_gamma_ab: HashMap::new(),
    };
    for s in 0..na {
        for t in 0..nb {
            let e = g.cell(s, t);
            maps.gamma.push(e.gamma);
            maps.gamma_a.push(e.gamma_a());
            maps.gamma_b.push(e.gamma_b());
            maps.gamma_ab.push(e.gamma_ab());
            for (inv, q) in [
                (&mut maps.inv_gamma, e.gamma),
                (&mut maps.inv_gamma_a, e.gamma_a()),
                (&mut maps.inv_gamma_b, e.gamma_b()),
                (&mut maps.inv_gamma_ab, e.gamma_ab()),
            ] {
                if inv.insert(q, (s, t)).is_some() {
                    return Err(Error::InvalidGrid(
                        "boundary map is not injective over cells".into(),
                    ));
                }
            }
        }
    }
    Ok(maps)
}

/// Classification of a subset touched by the grid.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PointKind {
    CornerC,
    CornerAc,
    CornerBc,
    CornerAbc,
    /// Left chain, between `C` and `AC`.
    EdgeLl,
    /// Bottom chain, between `C` and `BC`.
    EdgeLr,
    /// Chain at full `B`, between `BC` and `ABC`.
    EdgeUl,
    /// Chain at full `A`, between `AC` and `ABC`.
    EdgeUr,
    /// Inner point type 1..=5 by which of the four inverse maps land on
    /// it: 1 = all four; 2 = gamma and b-extension; 3 = a- and
    /// ab-extensions; 4 = gamma and a-extension; 5 = b- and ab-extensions.
    Inner(u8),
}

/// A classified point of the tiling.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PointClass {
    pub point: VarSet,
    pub s: usize,
    pub t: usize,
    pub kind: PointKind,
}

/// Classifies every subset in the image of the four boundary maps.
/// Corners and edge chains are fully determined; inner points fall into
/// exactly one of five patterns. Any other configuration is reported as an
/// error since it cannot occur on a valid grid.
pub fn classify_points(g: &RepGrid) -> Result<Vec<PointClass>> {
    let (na, nb) = g.dims();
    let t = *g.triplet();
    let maps = boundary_maps(g)?;
    let fail = |q: VarSet, what: &str| {
        Err(Error::InvalidGrid(format!(
            "point classification failed at subset key {}: {}",
            q.bits(),
            what
        )))
    };
    let mut out = Vec::new();
    for q in maps.points() {
        let p = q.intersect(t.a()).len();
        let lv = q.intersect(t.b()).len();
        let have = (
            maps.inv_gamma(q),
            maps.inv_gamma_a(q),
            maps.inv_gamma_b(q),
            maps.inv_gamma_ab(q),
        );
        let kind = match (p, lv) {
            (0, 0) => {
                if have != (Some((0, 0)), None, None, None) {
                    return fail(q, "corner C pattern");
                }
                PointKind::CornerC
            }
            (p, 0) if p == na => {
                if have != (None, Some((na - 1, 0)), None, None) {
                    return fail(q, "corner AC pattern");
                }
                PointKind::CornerAc
            }
            (0, lv) if lv == nb => {
                if have != (None, None, Some((0, nb - 1)), None) {
                    return fail(q, "corner BC pattern");
                }
                PointKind::CornerBc
            }
            (p, lv) if p == na && lv == nb => {
                if have != (None, None, None, Some((na - 1, nb - 1))) {
                    return fail(q, "corner ABC pattern");
                }
                PointKind::CornerAbc
            }
            (p, 0) => {
                if have != (Some((p, 0)), Some((p - 1, 0)), None, None) {
                    return fail(q, "left edge pattern");
                }
                PointKind::EdgeLl
            }
            (0, lv) => {
                if have != (Some((0, lv)), None, Some((0, lv - 1)), None) {
                    return fail(q, "bottom edge pattern");
                }
                PointKind::EdgeLr
            }
            (p, lv) if lv == nb => {
                if have != (None, None, Some((p, nb - 1)), Some((p - 1, nb - 1))) {
                    return fail(q, "full-B edge pattern");
                }
                PointKind::EdgeUl
            }
            (p, lv) if p == na => {
                if have != (None, Some((na - 1, lv)), None, Some((na - 1, lv - 1))) {
                    return fail(q, "full-A edge pattern");
                }
                PointKind::EdgeUr
            }
            (p, lv) => {
                // inner point: each present inverse sits at its forced cell
                let want = (
                    Some((p, lv)),
                    Some((p - 1, lv)),
                    Some((p, lv - 1)),
                    Some((p - 1, lv - 1)),
                );
                let mask = (
                    have.0.is_some(),
                    have.1.is_some(),
                    have.2.is_some(),
                    have.3.is_some(),
                );
                for (got, expect) in [
                    (have.0, want.0),
                    (have.1, want.1),
                    (have.2, want.2),
                    (have.3, want.3),
                ] {
                    if let Some(cell) = got {
                        if Some(cell) != expect {
                            return fail(q, "inner preimage at wrong cell");
                        }
                    }
                }
                let ty = match mask {
                    (true, true, true, true) => 1,
                    (true, false, true, false) => 2,
                    (false, true, false, true) => 3,
                    (true, true, false, false) => 4,
                    (false, false, true, true) => 5,
                    _ => return fail(q, "inner pattern outside the five types"),
                };
                PointKind::Inner(ty)
            }
        };
        out.push(PointClass {
            point: q,
            s: p,
            t: lv,
            kind,
        });
    }
    Ok(out)
}

/// State of one interior crossing of the grid tiling.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Trit {
    None,
    SRift,
    BRift,
}

/// A maximal rift.
///
/// An s-rift separates grid rows `s-1` and `s` over the column span
/// `t_lo..=t_hi`; a b-rift separates columns `t-1` and `t` over the row
/// span `s_lo..=s_hi`. The length is the span width, always at least 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Rift {
    S { s: usize, t_lo: usize, t_hi: usize },
    B { s_lo: usize, s_hi: usize, t: usize },
}

impl Rift {
    /// Span width; always at least 2.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match *self {
            Rift::S { t_lo, t_hi, .. } => t_hi - t_lo,
            Rift::B { s_lo, s_hi, .. } => s_hi - s_lo,
        }
    }
}

/// The trit grid over the `(|A|-1) x (|B|-1)` interior crossings plus the
/// derived list of maximal rifts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RiftPattern {
    na: usize,
    nb: usize,
    trits: Vec<Trit>,
}

impl RiftPattern {
    /// Builds a pattern from row-major trits over crossings
    /// `(s, t), 1 <= s < na, 1 <= t < nb`.
    pub fn from_trits(na: usize, nb: usize, trits: Vec<Trit>) -> RiftPattern {
        assert_eq!(trits.len(), (na - 1) * (nb - 1));
        RiftPattern { na, nb, trits }
    }

    /// Grid dimensions this pattern belongs to.
    pub fn dims(&self) -> (usize, usize) {
        (self.na, self.nb)
    }

    /// Crossing state at `(s, t)` with `1 <= s < na`, `1 <= t < nb`.
    pub fn trit(&self, s: usize, t: usize) -> Trit {
        self.trits[(s - 1) * (self.nb - 1) + (t - 1)]
    }

    pub fn trits(&self) -> &[Trit] {
        &self.trits
    }

    pub fn crossings(&self) -> usize {
        self.trits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trits.iter().all(|&t| t == Trit::None)
    }

    /// Row-major rendering, one character per crossing: `.`, `s` or `b`.
    pub fn flat(&self) -> String {
        self.trits
            .iter()
            .map(|t| match t {
                Trit::None => '.',
                Trit::SRift => 's',
                Trit::BRift => 'b',
            })
            .collect()
    }

    /// One string per crossing row (ascending `s`).
    pub fn render_rows(&self) -> Vec<String> {
        let flat = self.flat();
        let w = self.nb - 1;
        if w == 0 {
            return Vec::new();
        }
        flat.as_bytes()
            .chunks(w)
            .map(|row| String::from_utf8_lossy(row).into_owned())
            .collect()
    }

    /// Maximal rifts: s-rifts as maximal runs of `s` crossings along a
    /// fixed row, b-rifts as maximal runs of `b` crossings along a fixed
    /// column. A run of `k` crossings yields a rift of length `k + 1`.
    /// Ordered s-rifts first by `(s, t_lo)`, then b-rifts by `(t, s_lo)`.
    pub fn rifts(&self) -> Vec<Rift> {
        let mut out = Vec::new();
        for s in 1..self.na {
            let mut t = 1;
            while t < self.nb {
                if self.trit(s, t) == Trit::SRift {
                    let start = t;
                    while t < self.nb && self.trit(s, t) == Trit::SRift {
                        t += 1;
                    }
                    out.push(Rift::S {
                        s,
                        t_lo: start - 1,
                        t_hi: t,
                    });
                } else {
                    t += 1;
                }
            }
        }
        for t in 1..self.nb {
            let mut s = 1;
            while s < self.na {
                if self.trit(s, t) == Trit::BRift {
                    let start = s;
                    while s < self.na && self.trit(s, t) == Trit::BRift {
                        s += 1;
                    }
                    out.push(Rift::B {
                        s_lo: start - 1,
                        s_hi: s,
                        t,
                    });
                } else {
                    s += 1;
                }
            }
        }
        out
    }
}

/// Computes the rift pattern of a validated grid.
///
/// Crossing `(s, t)` is an s-rift when the conditioning set of cell
/// `(s, t)` differs from the a-extension of the cell below, a b-rift when
/// it differs from the b-extension of the cell to its left, and unbroken
/// otherwise. Exactly one of the three holds at every crossing.
pub fn detect_rifts(g: &RepGrid) -> RiftPattern {
    let (na, nb) = g.dims();
    let mut trits = Vec::with_capacity((na.saturating_sub(1)) * (nb.saturating_sub(1)));
    for s in 1..na {
        for t in 1..nb {
            let here = g.cell(s, t).gamma;
            let a_cont = here == g.cell(s - 1, t).gamma_a();
            let b_cont = here == g.cell(s, t - 1).gamma_b();
            let trit = match (a_cont, b_cont) {
                (true, true) => Trit::None,
                (false, true) => Trit::SRift,
                (true, false) => Trit::BRift,
                (false, false) => {
                    panic!("both continuities broken at a crossing of a valid grid")
                }
            };
            trits.push(trit);
        }
    }
    RiftPattern { na, nb, trits }
}

/// Which side of the triplet a separation index cuts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    A,
    B,
}

/// A successful separation: the lower-side subset plus the two
/// sub-representations.
#[derive(Clone, Debug)]
pub struct Split {
    pub subset: VarSet,
    pub low: RepGrid,
    pub high: RepGrid,
}

/// Tests separability at a cut index via the continuity criterion and, on
/// success, returns the split into two validating sub-representations.
///
/// Cutting `A` at index `s0` succeeds exactly when no b-rift run strictly
/// crosses the row boundary, i.e. every crossing `(s0, t)` has unbroken
/// b-continuity. Symmetrically for `B`.
pub fn is_separable(g: &RepGrid, axis: Axis, index: usize) -> Result<Option<Split>> {
    let (na, nb) = g.dims();
    let t = *g.triplet();
    match axis {
        Axis::A => {
            if index == 0 || index >= na {
                return Err(Error::IndexOutOfRange(format!(
                    "A cut index {index} not in 1..{na}"
                )));
            }
            for tv in 1..nb {
                if g.cell(index, tv).gamma != g.cell(index, tv - 1).gamma_b() {
                    return Ok(None);
                }
            }
            let a0 = g.cell(index, 0).gamma.intersect(t.a());
            let low_t = Triplet::new(a0, t.b(), t.c())?;
            let high_t = Triplet::new(t.a().difference(a0), t.b(), t.c().union(a0))?;
            let low_cells = (0..index)
                .flat_map(|s| (0..nb).map(move |tv| (s, tv)))
                .map(|(s, tv)| g.cell(s, tv))
                .collect();
            let high_cells = (index..na)
                .flat_map(|s| (0..nb).map(move |tv| (s, tv)))
                .map(|(s, tv)| g.cell(s, tv))
                .collect();
            let low = RepGrid::from_cells(&low_t, low_cells)?;
            let high = RepGrid::from_cells(&high_t, high_cells)?;
            if !low.validate() || !high.validate() {
                return Err(Error::InvalidGrid(
                    "separation criterion held but a sub-representation failed".into(),
                ));
            }
            Ok(Some(Split {
                subset: a0,
                low,
                high,
            }))
        }
        Axis::B => {
            if index == 0 || index >= nb {
                return Err(Error::IndexOutOfRange(format!(
                    "B cut index {index} not in 1..{nb}"
                )));
            }
            for sv in 1..na {
                if g.cell(sv, index).gamma != g.cell(sv - 1, index).gamma_a() {
                    return Ok(None);
                }
            }
            let b0 = g.cell(0, index).gamma.intersect(t.b());
            let low_t = Triplet::new(t.a(), b0, t.c())?;
            let high_t = Triplet::new(t.a(), t.b().difference(b0), t.c().union(b0))?;
            let low_cells = (0..na)
                .flat_map(|s| (0..index).map(move |tv| (s, tv)))
                .map(|(s, tv)| g.cell(s, tv))
                .collect();
            let high_cells = (0..na)
                .flat_map(|s| (index..nb).map(move |tv| (s, tv)))
                .map(|(s, tv)| g.cell(s, tv))
                .collect();
            let low = RepGrid::from_cells(&low_t, low_cells)?;
            let high = RepGrid::from_cells(&high_t, high_cells)?;
            if !low.validate() || !high.validate() {
                return Err(Error::InvalidGrid(
                    "separation criterion held but a sub-representation failed".into(),
                ));
            }
            Ok(Some(Split {
                subset: b0,
                low,
                high,
            }))
        }
    }
}

/// Decomposition tree of a sigma-decomposable grid.
#[derive(Clone, Debug)]
pub enum DecompTree {
    Leaf(ElementaryImset),
    Split {
        axis: Axis,
        /// Cut index relative to the sub-block.
        index: usize,
        /// Elements moved below the cut (subset of `A` or of `B`).
        subset: VarSet,
        low: Box<DecompTree>,
        high: Box<DecompTree>,
    },
}

/// Recursive sigma-decomposability: a grid decomposes when it is a single
/// cell or some separable cut splits it into two decomposable halves.
/// Returns the decision plus a decomposition tree for the positive case.
///
/// Any free cut can be committed greedily: cutting never invalidates other
/// free cuts, since sub-blocks only shrink the continuity constraints.
pub fn sigma_decompose(g: &RepGrid) -> (bool, Option<DecompTree>) {
    let (na, nb) = g.dims();
    let mut memo: HashMap<(usize, usize, usize, usize), bool> = HashMap::new();
    let ok = decomposable_rect(g, 0, na, 0, nb, &mut memo);
    let tree = if ok {
        Some(build_tree(g, 0, na, 0, nb))
    } else {
        None
    };
    (ok, tree)
}

/// Sigma-decomposability without the tree.
pub fn is_sigma_decomposable(g: &RepGrid) -> bool {
    let (na, nb) = g.dims();
    let mut memo = HashMap::new();
    decomposable_rect(g, 0, na, 0, nb, &mut memo)
}

fn a_cut_free(g: &RepGrid, cut: usize, c0: usize, c1: usize) -> bool {
    (c0 + 1..c1).all(|t| g.cell(cut, t).gamma == g.cell(cut, t - 1).gamma_b())
}

fn b_cut_free(g: &RepGrid, cut: usize, r0: usize, r1: usize) -> bool {
    (r0 + 1..r1).all(|s| g.cell(s, cut).gamma == g.cell(s - 1, cut).gamma_a())
}

fn first_free_cut(
    g: &RepGrid,
    r0: usize,
    r1: usize,
    c0: usize,
    c1: usize,
) -> Option<(Axis, usize)> {
    for cut in r0 + 1..r1 {
        if a_cut_free(g, cut, c0, c1) {
            return Some((Axis::A, cut));
        }
    }
    for cut in c0 + 1..c1 {
        if b_cut_free(g, cut, r0, r1) {
            return Some((Axis::B, cut));
        }
    }
    None
}

fn decomposable_rect(
    g: &RepGrid,
    r0: usize,
    r1: usize,
    c0: usize,
    c1: usize,
    memo: &mut HashMap<(usize, usize, usize, usize), bool>,
) -> bool {
    if r1 - r0 == 1 && c1 - c0 == 1 {
        return true;
    }
    if let Some(&v) = memo.get(&(r0, r1, c0, c1)) {
        return v;
    }
    let v = match first_free_cut(g, r0, r1, c0, c1) {
        Some((Axis::A, cut)) => {
            decomposable_rect(g, r0, cut, c0, c1, memo) && decomposable_rect(g, cut, r1, c0, c1, memo)
        }
        Some((Axis::B, cut)) => {
            decomposable_rect(g, r0, r1, c0, cut, memo) && decomposable_rect(g, r0, r1, cut, c1, memo)
        }
        None => false,
    };
    memo.insert((r0, r1, c0, c1), v);
    v
}

fn build_tree(g: &RepGrid, r0: usize, r1: usize, c0: usize, c1: usize) -> DecompTree {
    if r1 - r0 == 1 && c1 - c0 == 1 {
        return DecompTree::Leaf(g.cell(r0, c0));
    }
    let (axis, cut) = first_free_cut(g, r0, r1, c0, c1)
        .expect("tree construction only runs on decomposable blocks");
    match axis {
        Axis::A => {
            let base = g.cell(r0, c0).gamma;
            let subset = g.cell(cut, c0).gamma.difference(base).intersect(g.triplet().a());
            DecompTree::Split {
                axis,
                index: cut - r0,
                subset,
                low: Box::new(build_tree(g, r0, cut, c0, c1)),
                high: Box::new(build_tree(g, cut, r1, c0, c1)),
            }
        }
        Axis::B => {
            let base = g.cell(r0, c0).gamma;
            let subset = g.cell(r0, cut).gamma.difference(base).intersect(g.triplet().b());
            DecompTree::Split {
                axis,
                index: cut - c0,
                subset,
                low: Box::new(build_tree(g, r0, r1, c0, cut)),
                high: Box::new(build_tree(g, r0, r1, cut, c1)),
            }
        }
    }
}

fn open_intervals_meet(lo1: usize, hi1: usize, lo2: usize, hi2: usize) -> bool {
    lo1.max(lo2) < hi1.min(hi2)
}

fn s_rifts(rifts: &[Rift]) -> Vec<(usize, usize, usize)> {
    rifts
        .iter()
        .filter_map(|r| match *r {
            Rift::S { s, t_lo, t_hi } => Some((s, t_lo, t_hi)),
            _ => None,
        })
        .collect()
}

fn b_rifts(rifts: &[Rift]) -> Vec<(usize, usize, usize)> {
    rifts
        .iter()
        .filter_map(|r| match *r {
            Rift::B { s_lo, s_hi, t } => Some((s_lo, s_hi, t)),
            _ => None,
        })
        .collect()
}

fn s_rift_eligible(rift: (usize, usize, usize), ss: &[(usize, usize, usize)], bs: &[(usize, usize, usize)]) -> bool {
    let (s, t_lo, t_hi) = rift;
    // no s-rift strictly below overlaps this one's open column span
    let frontier = ss
        .iter()
        .all(|&(s2, t_lo2, t_hi2)| !(s2 < s && open_intervals_meet(t_lo, t_hi, t_lo2, t_hi2)));
    if !frontier {
        return false;
    }
    // every b-rift either avoids the open span or starts at or above this row
    bs.iter()
        .all(|&(s_lo2, _, t2)| !(t_lo < t2 && t2 < t_hi) || s <= s_lo2)
}

fn b_rift_eligible(rift: (usize, usize, usize), ss: &[(usize, usize, usize)], bs: &[(usize, usize, usize)]) -> bool {
    let (s_lo, s_hi, t) = rift;
    let frontier = bs
        .iter()
        .all(|&(s_lo2, s_hi2, t2)| !(t2 < t && open_intervals_meet(s_lo, s_hi, s_lo2, s_hi2)));
    if !frontier {
        return false;
    }
    ss.iter()
        .all(|&(s2, t_lo2, _)| !(s_lo < s2 && s2 < s_hi) || t <= t_lo2)
}

/// Picks a rift that the elimination procedure can remove without being
/// blocked by any other rift. Returns `None` exactly on the empty pattern.
///
/// Tie-break: eligible b-rifts first, by smallest column then smallest
/// lower row; otherwise eligible s-rifts by smallest row then smallest
/// lower column. A non-empty pattern always yields a rift; failure would
/// contradict the eliminability guarantee, so it panics.
pub fn select_eliminable_rift(p: &RiftPattern) -> Option<Rift> {
    let rifts = p.rifts();
    if rifts.is_empty() {
        return None;
    }
    let ss = s_rifts(&rifts);
    let bs = b_rifts(&rifts);
    let mut b_candidates: Vec<(usize, usize, usize)> = bs
        .iter()
        .copied()
        .filter(|&r| b_rift_eligible(r, &ss, &bs))
        .collect();
    b_candidates.sort_by_key(|&(s_lo, _, t)| (t, s_lo));
    if let Some(&(s_lo, s_hi, t)) = b_candidates.first() {
        return Some(Rift::B { s_lo, s_hi, t });
    }
    let mut s_candidates: Vec<(usize, usize, usize)> = ss
        .iter()
        .copied()
        .filter(|&r| s_rift_eligible(r, &ss, &bs))
        .collect();
    s_candidates.sort_by_key(|&(s, t_lo, _)| (s, t_lo));
    if let Some(&(s, t_lo, t_hi)) = s_candidates.first() {
        return Some(Rift::S { s, t_lo, t_hi });
    }
    panic!("non-empty rift pattern without an eliminable rift");
}

/// Eliminates one eligible rift by rewriting the rift-free sub-block on
/// its lower side to the standard form ordered like the far side of the
/// rift. Returns the new grid and the replayable move trace.
///
/// For a b-rift at column `t` over rows `s_lo..s_hi`, the block spans
/// those rows and columns `0..t`; its row order is rewritten to the order
/// found in column `t`, which restores b-continuity across the rift. The
/// s-rift case is symmetric.
pub fn eliminate_rift(g: &RepGrid, rift: Rift) -> Result<(RepGrid, Vec<Move>)> {
    let pattern = detect_rifts(g);
    let rifts = pattern.rifts();
    if !rifts.contains(&rift) {
        return Err(Error::IneligibleRift(format!(
            "{rift:?} is not a rift of this grid"
        )));
    }
    let ss = s_rifts(&rifts);
    let bs = b_rifts(&rifts);
    let eligible = match rift {
        Rift::S { s, t_lo, t_hi } => s_rift_eligible((s, t_lo, t_hi), &ss, &bs),
        Rift::B { s_lo, s_hi, t } => b_rift_eligible((s_lo, s_hi, t), &ss, &bs),
    };
    if !eligible {
        return Err(Error::IneligibleRift(format!(
            "{rift:?} is blocked by another rift"
        )));
    }
    check_block(g, rift)?;
    let mut moves = Vec::new();
    match rift {
        Rift::B { s_lo, s_hi, t } => {
            let mut cur: Vec<usize> = (s_lo..s_hi).map(|s| g.cell(s, 0).a).collect();
            let target: Vec<usize> = (s_lo..s_hi).map(|s| g.cell(s, t).a).collect();
            bubble(&mut cur, &target, |k| {
                moves.extend(RepGrid::a_transposition_moves(s_lo + k, 0, t));
            })?;
        }
        Rift::S { s, t_lo, t_hi } => {
            let mut cur: Vec<usize> = (t_lo..t_hi).map(|t| g.cell(0, t).b).collect();
            let target: Vec<usize> = (t_lo..t_hi).map(|t| g.cell(s, t).b).collect();
            bubble(&mut cur, &target, |k| {
                moves.extend(RepGrid::b_transposition_moves(t_lo + k, 0, s));
            })?;
        }
    }
    let out = g.apply_trace(&moves)?;
    Ok((out, moves))
}

/// Verifies that the sub-block on the rift's lower side is itself a valid,
/// rift-free representation of its sub-triplet. Eligibility guarantees
/// this; a failure indicates an internal inconsistency.
fn check_block(g: &RepGrid, rift: Rift) -> Result<()> {
    let t = *g.triplet();
    let (sub_triplet, cells): (Triplet, Vec<ElementaryImset>) = match rift {
        Rift::B { s_lo, s_hi, t: col } => {
            let gamma0 = g.cell(s_lo, 0).gamma;
            let b_side = g.cell(s_lo, col - 1).gamma_b().intersect(t.b());
            let a_side = g
                .cell(s_hi - 1, 0)
                .gamma_a()
                .difference(gamma0)
                .intersect(t.a());
            let sub = Triplet::new(a_side, b_side, gamma0)?;
            let cells = (s_lo..s_hi)
                .flat_map(|s| (0..col).map(move |tv| (s, tv)))
                .map(|(s, tv)| g.cell(s, tv))
                .collect();
            (sub, cells)
        }
        Rift::S { s: row, t_lo, t_hi } => {
            let gamma0 = g.cell(0, t_lo).gamma;
            let a_side = g.cell(row - 1, t_lo).gamma_a().intersect(t.a());
            let b_side = g
                .cell(0, t_hi - 1)
                .gamma_b()
                .difference(gamma0)
                .intersect(t.b());
            let sub = Triplet::new(a_side, b_side, gamma0)?;
            let cells = (0..row)
                .flat_map(|s| (t_lo..t_hi).map(move |tv| (s, tv)))
                .map(|(s, tv)| g.cell(s, tv))
                .collect();
            (sub, cells)
        }
    };
    let block = RepGrid::from_cells(&sub_triplet, cells)
        .map_err(|e| Error::InvalidGrid(format!("rift block extraction failed: {e}")))?;
    if !block.validate() {
        return Err(Error::InvalidGrid(
            "rift block is not a representation of its sub-triplet".into(),
        ));
    }
    if !detect_rifts(&block).is_empty() {
        return Err(Error::InvalidGrid("rift block is not rift-free".into()));
    }
    Ok(())
}

fn bubble(
    cur: &mut [usize],
    target: &[usize],
    mut emit: impl FnMut(usize),
) -> Result<()> {
    let mut sorted_cur: Vec<usize> = cur.to_vec();
    let mut sorted_tgt: Vec<usize> = target.to_vec();
    sorted_cur.sort_unstable();
    sorted_tgt.sort_unstable();
    if sorted_cur != sorted_tgt {
        return Err(Error::InvalidGrid(
            "rift block orders do not agree as sets".into(),
        ));
    }
    for i in 0..cur.len() {
        if cur[i] == target[i] {
            continue;
        }
        let j = (i + 1..cur.len())
            .find(|&j| cur[j] == target[i])
            .expect("orders agree as sets");
        for k in (i..j).rev() {
            cur.swap(k, k + 1);
            emit(k);
        }
    }
    Ok(())
}

/// Drives a grid to the identity-order standard representation: eliminate
/// eligible rifts until none remain, then reorder both sides by adjacent
/// transpositions. Returns the final grid and the full replayable trace.
///
/// Termination is certain because each elimination strictly clears the
/// selected rift's crossings and changes no other crossing; the move cap
/// only guards against implementation bugs.
pub fn normalize_to_standard(g: &RepGrid) -> Result<(RepGrid, Vec<Move>)> {
    let (na, nb) = g.dims();
    let cap = move_cap(na, nb);
    let mut cur = g.clone();
    let mut trace: Vec<Move> = Vec::new();
    while let Some(rift) = select_eliminable_rift(&detect_rifts(&cur)) {
        let (next, moves) = eliminate_rift(&cur, rift)?;
        cur = next;
        trace.extend(moves);
        assert!(
            trace.len() <= cap,
            "rift elimination exceeded the move cap; this is a bug"
        );
    }
    // rift-free: the grid is a relabeled standard form; sort both orders
    let t = *g.triplet();
    let mut a_cur = cur.a_order_elems();
    let a_target = t.a_elems();
    let mut pending: Vec<Move> = Vec::new();
    bubble(&mut a_cur, &a_target, |k| {
        pending.extend(RepGrid::a_transposition_moves(k, 0, nb));
    })?;
    let mut b_cur = cur.b_order_elems();
    let b_target = t.b_elems();
    bubble(&mut b_cur, &b_target, |k| {
        pending.extend(RepGrid::b_transposition_moves(k, 0, na));
    })?;
    cur = cur.apply_trace(&pending)?;
    trace.extend(pending);
    assert!(
        trace.len() <= cap,
        "normalization exceeded the move cap; this is a bug"
    );
    Ok((cur, trace))
}

fn move_cap(na: usize, nb: usize) -> usize {
    let fact = |n: usize| (1..=n).product::<usize>();
    10 * fact(na) * fact(nb) * na * nb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::RepGrid;

    fn e(a: usize, b: usize, gamma: &[usize]) -> ElementaryImset {
        ElementaryImset::new(a, b, VarSet::from_indices(gamma)).unwrap()
    }

    /// The smallest sigma-indecomposable representation, as a 3x3 grid
    /// over layout a1..a3 = 0..2, b1..b3 = 3..5.
    pub(crate) fn counterexample_grid() -> RepGrid {
        let t = Triplet::by_sizes(3, 3);
        let cells = vec![
            // row s = 0
            e(0, 3, &[]),
            e(1, 4, &[3]),
            e(1, 5, &[3, 4]),
            // row s = 1
            e(1, 3, &[0]),
            e(0, 5, &[1, 3]),
            e(2, 4, &[1, 3, 5]),
            // row s = 2
            e(2, 5, &[0, 1]),
            e(2, 3, &[0, 1, 5]),
            e(0, 4, &[1, 2, 3, 5]),
        ];
        RepGrid::from_cells(&t, cells).unwrap()
    }

    #[test]
    fn counterexample_validates() {
        let g = counterexample_grid();
        assert!(g.validate());
        // the move exchanging the two lowest cells of column 0 is offered
        assert!(g.available_moves().contains(&Move::a_swap(0, 0)));
    }

    #[test]
    fn boundary_maps_cardinalities() {
        let g = counterexample_grid();
        let t = *g.triplet();
        let maps = boundary_maps(&g).unwrap();
        for s in 0..3 {
            for tv in 0..3 {
                // the a-extension adds one A element, the b-extension one B element
                let base_a = maps.gamma(s, tv).intersect(t.a()).len();
                assert_eq!(maps.gamma_a(s, tv).intersect(t.a()).len(), base_a + 1);
                assert_eq!(maps.gamma_b(s, tv).intersect(t.a()).len(), base_a);
                assert_eq!(maps.gamma_ab(s, tv).intersect(t.a()).len(), base_a + 1);
                let base_b = maps.gamma(s, tv).intersect(t.b()).len();
                assert_eq!(maps.gamma_a(s, tv).intersect(t.b()).len(), base_b);
                assert_eq!(maps.gamma_b(s, tv).intersect(t.b()).len(), base_b + 1);
                assert_eq!(maps.gamma_ab(s, tv).intersect(t.b()).len(), base_b + 1);
            }
        }
    }

    #[test]
    fn boundary_maps_single_cell_example() {
        // cell u<a2,b1|a1> over the (2,2) layout
        let g = RepGrid::standard_identity(&Triplet::by_sizes(2, 2)).unwrap();
        let maps = boundary_maps(&g).unwrap();
        assert_eq!(maps.gamma(1, 0), VarSet::from_indices(&[0]));
        assert_eq!(maps.gamma_a(1, 0), VarSet::from_indices(&[0, 1]));
        assert_eq!(maps.gamma_b(1, 0), VarSet::from_indices(&[0, 2]));
        assert_eq!(maps.gamma_ab(1, 0), VarSet::from_indices(&[0, 1, 2]));
    }

    #[test]
    fn standard_grid_has_no_rifts_and_all_inner_points_full() {
        let g = RepGrid::standard_identity(&Triplet::by_sizes(3, 3)).unwrap();
        let p = detect_rifts(&g);
        assert!(p.is_empty());
        assert!(p.rifts().is_empty());
        let classes = classify_points(&g).unwrap();
        for c in &classes {
            if let PointKind::Inner(ty) = c.kind {
                assert_eq!(ty, 1);
            }
        }
    }

    #[test]
    fn counterexample_has_four_rifts_of_length_two() {
        let g = counterexample_grid();
        let p = detect_rifts(&g);
        let rifts = p.rifts();
        assert_eq!(rifts.len(), 4);
        assert!(rifts.iter().all(|r| r.len() == 2));
        assert_eq!(p.trit(1, 1), Trit::BRift);
        assert_eq!(p.trit(2, 1), Trit::SRift);
        assert_eq!(p.trit(1, 2), Trit::SRift);
        assert_eq!(p.trit(2, 2), Trit::BRift);
    }

    #[test]
    fn counterexample_inner_points() {
        // eight inner points of types 2..=5, two per rift
        let g = counterexample_grid();
        let classes = classify_points(&g).unwrap();
        let inner: Vec<u8> = classes
            .iter()
            .filter_map(|c| match c.kind {
                PointKind::Inner(ty) => Some(ty),
                _ => None,
            })
            .collect();
        assert_eq!(inner.len(), 8);
        assert!(inner.iter().all(|&ty| (2..=5).contains(&ty)));
        // corner C is the conditioning set of the lowest cell only
        let corner_c = classes
            .iter()
            .find(|c| c.kind == PointKind::CornerC)
            .unwrap();
        assert_eq!(corner_c.point, VarSet::EMPTY);
    }

    #[test]
    fn separability_example() {
        // u<a1,b1|∅> + u<a2,b1|a1> + u<a2,b2|b1> + u<a1,b2|a2 b1>
        let t = Triplet::by_sizes(2, 2);
        let g = RepGrid::from_cells(
            &t,
            vec![e(0, 2, &[]), e(1, 3, &[2]), e(1, 2, &[0]), e(0, 3, &[1, 2])],
        )
        .unwrap();
        assert!(g.validate());
        let split = is_separable(&g, Axis::B, 1).unwrap().expect("(*,1)-separable");
        assert_eq!(split.subset, VarSet::singleton(2)); // B0 = {b1}
        assert!(is_separable(&g, Axis::A, 1).unwrap().is_none());
    }

    #[test]
    fn standard_grid_separable_everywhere() {
        let g = RepGrid::standard_identity(&Triplet::by_sizes(3, 3)).unwrap();
        for idx in 1..3 {
            assert!(is_separable(&g, Axis::A, idx).unwrap().is_some());
            assert!(is_separable(&g, Axis::B, idx).unwrap().is_some());
        }
        assert!(is_sigma_decomposable(&g));
    }

    #[test]
    fn counterexample_not_separable_not_decomposable() {
        let g = counterexample_grid();
        for idx in 1..3 {
            assert!(is_separable(&g, Axis::A, idx).unwrap().is_none());
            assert!(is_separable(&g, Axis::B, idx).unwrap().is_none());
        }
        assert!(!is_sigma_decomposable(&g));
        assert!(sigma_decompose(&g).1.is_none());
    }

    #[test]
    fn decomposition_tree_structure() {
        fn leaves(tree: &DecompTree, out: &mut Vec<ElementaryImset>) {
            match tree {
                DecompTree::Leaf(e) => out.push(*e),
                DecompTree::Split { low, high, .. } => {
                    leaves(low, out);
                    leaves(high, out);
                }
            }
        }
        // the (*,1)-separable example splits on B first with B0 = {b1}
        let t = Triplet::by_sizes(2, 2);
        let g = RepGrid::from_cells(
            &t,
            vec![e(0, 2, &[]), e(1, 3, &[2]), e(1, 2, &[0]), e(0, 3, &[1, 2])],
        )
        .unwrap();
        let (ok, tree) = sigma_decompose(&g);
        assert!(ok);
        let tree = tree.unwrap();
        match &tree {
            DecompTree::Split { axis, index, subset, .. } => {
                assert_eq!(*axis, Axis::B);
                assert_eq!(*index, 1);
                assert_eq!(*subset, VarSet::singleton(2));
            }
            DecompTree::Leaf(_) => panic!("2x2 grid cannot be a leaf"),
        }
        let mut cells = Vec::new();
        leaves(&tree, &mut cells);
        cells.sort();
        let mut expect = g.cells().to_vec();
        expect.sort();
        assert_eq!(cells, expect);
    }

    #[test]
    fn selection_prefers_lower_left_rift() {
        let g = counterexample_grid();
        let p = detect_rifts(&g);
        let r = select_eliminable_rift(&p).unwrap();
        assert_eq!(r, Rift::B { s_lo: 0, s_hi: 2, t: 1 });
    }

    #[test]
    fn empty_pattern_selects_nothing() {
        let g = RepGrid::standard_identity(&Triplet::by_sizes(3, 3)).unwrap();
        assert_eq!(select_eliminable_rift(&detect_rifts(&g)), None);
    }

    #[test]
    fn first_elimination_matches_walkthrough() {
        // applying u<a1,b1|∅> + u<a2,b1|a1> = u<a2,b1|∅> + u<a1,b1|a2>
        let g = counterexample_grid();
        let rift = select_eliminable_rift(&detect_rifts(&g)).unwrap();
        let (g2, moves) = eliminate_rift(&g, rift).unwrap();
        assert_eq!(moves, vec![Move::a_swap(0, 0)]);
        assert_eq!(g2.cell(0, 0), e(1, 3, &[]));
        assert_eq!(g2.cell(1, 0), e(0, 3, &[1]));
        assert!(g2.validate());
        // the eliminated rift is gone
        assert!(!detect_rifts(&g2).rifts().contains(&rift));
    }

    #[test]
    fn eliminating_missing_rift_errors() {
        let g = RepGrid::standard_identity(&Triplet::by_sizes(3, 3)).unwrap();
        let bogus = Rift::B { s_lo: 0, s_hi: 2, t: 1 };
        assert!(matches!(
            eliminate_rift(&g, bogus),
            Err(Error::IneligibleRift(_))
        ));
    }

    #[test]
    fn normalize_counterexample_follows_walkthrough_order() {
        let g = counterexample_grid();
        // the four eliminations proceed lower-left, lower-right, upper-left,
        // upper-right under the default tie-break
        let mut cur = g.clone();
        let mut seen = Vec::new();
        while let Some(r) = select_eliminable_rift(&detect_rifts(&cur)) {
            seen.push(r);
            let (next, _) = eliminate_rift(&cur, r).unwrap();
            cur = next;
        }
        assert_eq!(
            seen,
            vec![
                Rift::B { s_lo: 0, s_hi: 2, t: 1 },
                Rift::S { s: 1, t_lo: 1, t_hi: 3 },
                Rift::S { s: 2, t_lo: 0, t_hi: 2 },
                Rift::B { s_lo: 1, s_hi: 3, t: 2 },
            ]
        );
        assert!(detect_rifts(&cur).is_empty());
        // the third elimination needs the follow-up move on the bottom row
        let (full, trace) = normalize_to_standard(&g).unwrap();
        assert_eq!(full, RepGrid::standard_identity(g.triplet()).unwrap());
        assert_eq!(g.apply_trace(&trace).unwrap(), full);
    }

    #[test]
    fn normalize_standard_is_trivial() {
        let g = RepGrid::standard_identity(&Triplet::by_sizes(2, 3)).unwrap();
        let (out, trace) = normalize_to_standard(&g).unwrap();
        assert!(trace.is_empty());
        assert_eq!(out, g);
    }

    #[test]
    fn side_effect_elimination_moves() {
        // third elimination of the walkthrough: the upper-left rift needs a
        // follow-up move on the bottom row generated by side effects
        let g = counterexample_grid();
        let (g1, _) = eliminate_rift(&g, Rift::B { s_lo: 0, s_hi: 2, t: 1 }).unwrap();
        let (g2, _) = eliminate_rift(&g1, Rift::S { s: 1, t_lo: 1, t_hi: 3 }).unwrap();
        let rift = Rift::S { s: 2, t_lo: 0, t_hi: 2 };
        let (g3, moves) = eliminate_rift(&g2, rift).unwrap();
        assert_eq!(moves, vec![Move::b_swap(1, 0), Move::b_swap(0, 0)]);
        assert!(g3.validate());
        assert!(!detect_rifts(&g3).rifts().contains(&rift));
    }
}
