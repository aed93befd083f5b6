//! The grid model of a representation and the two-by-two move system.
//!
//! Every representation of `u<A,B|C>` by elementary imsets from the family
//! contains exactly one imset per level pair `(s, t)`, so a representation
//! is an `|A| x |B|` grid of cells. Two grids are adjacent when they differ
//! by a two-by-two basic relation, exchanged by [`RepGrid::apply_move`].

use itertools::Itertools;

use crate::family::{ElementaryFamily, ElementaryImset};
use crate::imset::{semi_elementary, Imset};
use crate::triplet::Triplet;
use crate::varset::VarSet;
use crate::{Error, Result};

/// The two flavors of a two-by-two move.
///
/// A `BSwap` at anchor `(s, t)` rewrites cells `(s, t)` and `(s, t+1)` by
/// `u<a,b1|G> + u<a,b2|b1 G>  ->  u<a,b2|G> + u<a,b1|b2 G>`; an `ASwap` at
/// `(s, t)` does the symmetric rewrite on cells `(s, t)` and `(s+1, t)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MoveKind {
    ASwap,
    BSwap,
}

/// A move anchored at grid coordinates. Applying the same move twice
/// returns the original grid.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Move {
    pub kind: MoveKind,
    pub anchor: (usize, usize),
}

impl Move {
    pub fn a_swap(s: usize, t: usize) -> Move {
        Move {
            kind: MoveKind::ASwap,
            anchor: (s, t),
        }
    }

    pub fn b_swap(s: usize, t: usize) -> Move {
        Move {
            kind: MoveKind::BSwap,
            anchor: (s, t),
        }
    }
}

/// An `|A| x |B|` grid of elementary imsets representing `u<A,B|C>`.
///
/// Cell `(s, t)` always lies at level pair `(s, t)`: its conditioning set
/// meets `A` in `s` elements and `B` in `t`. The grid is immutable; moves
/// and relabelings return new grids.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RepGrid {
    triplet: Triplet,
    ground: usize,
    na: usize,
    nb: usize,
    cells: Vec<ElementaryImset>,
}

impl RepGrid {
    /// Builds a grid from row-major cells, checking only the structural
    /// constraints (family membership and level placement). Use
    /// [`RepGrid::validate`] for the full representation check.
    pub fn from_cells(t: &Triplet, cells: Vec<ElementaryImset>) -> Result<RepGrid> {
        t.require_fiber()?;
        let na = t.a().len();
        let nb = t.b().len();
        if cells.len() != na * nb {
            return Err(Error::InvalidGrid(format!(
                "expected {} cells, got {}",
                na * nb,
                cells.len()
            )));
        }
        let grid = RepGrid {
            triplet: *t,
            ground: t.min_ground(),
            na,
            nb,
            cells,
        };
        for s in 0..na {
            for lv in 0..nb {
                let e = grid.cell(s, lv);
                if !e.in_family(t) {
                    return Err(Error::InvalidGrid(format!(
                        "cell ({s},{lv}) not in the elementary family"
                    )));
                }
                if e.levels(t) != (s, lv) {
                    return Err(Error::InvalidGrid(format!(
                        "cell ({s},{lv}) sits at level {:?}",
                        e.levels(t)
                    )));
                }
            }
        }
        Ok(grid)
    }

    /// The nested standard representation under the given orders: cell
    /// `(i, j)` is `u<a_(i+1), b_(j+1) | a_(1)..a_(i) b_(1)..b_(j) C>`.
    ///
    /// Orders are permutations of ranks `0..|A|` and `0..|B|`, listing in
    /// which sequence the elements of `A` and `B` are nested.
    pub fn standard(t: &Triplet, a_order: &[usize], b_order: &[usize]) -> Result<RepGrid> {
        t.require_fiber()?;
        let a_elems = t.a_elems();
        let b_elems = t.b_elems();
        check_permutation(a_order, a_elems.len())?;
        check_permutation(b_order, b_elems.len())?;
        let na = a_elems.len();
        let nb = b_elems.len();
        let mut cells = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                let mut gamma = t.c();
                for &rank in &a_order[..i] {
                    gamma = gamma.with(a_elems[rank]);
                }
                for &rank in &b_order[..j] {
                    gamma = gamma.with(b_elems[rank]);
                }
                cells.push(ElementaryImset {
                    a: a_elems[a_order[i]],
                    b: b_elems[b_order[j]],
                    gamma,
                });
            }
        }
        RepGrid::from_cells(t, cells)
    }

    /// Standard representation in the identity orders.
    pub fn standard_identity(t: &Triplet) -> Result<RepGrid> {
        let na = t.a().len();
        let nb = t.b().len();
        let ia: Vec<usize> = (0..na).collect();
        let ib: Vec<usize> = (0..nb).collect();
        RepGrid::standard(t, &ia, &ib)
    }

    pub fn triplet(&self) -> &Triplet {
        &self.triplet
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    /// Grid dimensions `(|A|, |B|)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.na, self.nb)
    }

    pub fn cell(&self, s: usize, t: usize) -> ElementaryImset {
        self.cells[s * self.nb + t]
    }

    pub fn cells(&self) -> &[ElementaryImset] {
        &self.cells
    }

    /// Exact sum of all cells.
    pub fn sum(&self) -> Imset {
        let mut acc = Imset::zero(self.ground);
        for e in &self.cells {
            acc.bump(e.gamma, 1);
            acc.bump(e.gamma_ab(), 1);
            acc.bump(e.gamma_a(), -1);
            acc.bump(e.gamma_b(), -1);
        }
        acc
    }

    /// The semi-elementary imset this grid claims to represent.
    pub fn target(&self) -> Imset {
        semi_elementary(self.ground, &self.triplet)
    }

    /// Full representation check: level constraints on every cell plus
    /// exact equality of the cell sum with the target imset.
    pub fn validate(&self) -> bool {
        self.validation_errors().is_empty()
    }

    /// Subsets at which the cell sum deviates from the target, empty when
    /// the grid validates. Structural cell violations are reported as the
    /// offending conditioning sets.
    pub fn validation_errors(&self) -> Vec<VarSet> {
        let mut bad = Vec::new();
        for s in 0..self.na {
            for t in 0..self.nb {
                let e = self.cell(s, t);
                if !e.in_family(&self.triplet) || e.levels(&self.triplet) != (s, t) {
                    bad.push(e.gamma);
                }
            }
        }
        if !bad.is_empty() {
            return bad;
        }
        let diff = self
            .sum()
            .sub(&self.target())
            .expect("sum and target share the grid's ground set");
        diff.entries().map(|(s, _)| s).collect()
    }

    /// True when the move's pattern matches the two cells at its anchor.
    pub fn move_applicable(&self, m: Move) -> bool {
        let (s, t) = m.anchor;
        match m.kind {
            MoveKind::BSwap => {
                if s >= self.na || t + 1 >= self.nb {
                    return false;
                }
                let lo = self.cell(s, t);
                let hi = self.cell(s, t + 1);
                lo.a == hi.a && hi.gamma == lo.gamma_b()
            }
            MoveKind::ASwap => {
                if s + 1 >= self.na || t >= self.nb {
                    return false;
                }
                let lo = self.cell(s, t);
                let hi = self.cell(s + 1, t);
                lo.b == hi.b && hi.gamma == lo.gamma_a()
            }
        }
    }

    /// All applicable moves in scan order: b-swaps by ascending `(s, t)`,
    /// then a-swaps by ascending `(s, t)`.
    pub fn available_moves(&self) -> Vec<Move> {
        let mut moves = Vec::new();
        for s in 0..self.na {
            for t in 0..self.nb.saturating_sub(1) {
                let m = Move::b_swap(s, t);
                if self.move_applicable(m) {
                    moves.push(m);
                }
            }
        }
        for s in 0..self.na.saturating_sub(1) {
            for t in 0..self.nb {
                let m = Move::a_swap(s, t);
                if self.move_applicable(m) {
                    moves.push(m);
                }
            }
        }
        moves
    }

    /// Applies a two-by-two basic relation, returning the adjacent grid.
    pub fn apply_move(&self, m: Move) -> Result<RepGrid> {
        if !self.move_applicable(m) {
            return Err(Error::InapplicableMove(m.anchor.0, m.anchor.1));
        }
        let (s, t) = m.anchor;
        let mut cells = self.cells.clone();
        match m.kind {
            MoveKind::BSwap => {
                let lo = self.cell(s, t);
                let hi = self.cell(s, t + 1);
                cells[s * self.nb + t] = ElementaryImset {
                    a: lo.a,
                    b: hi.b,
                    gamma: lo.gamma,
                };
                cells[s * self.nb + t + 1] = ElementaryImset {
                    a: lo.a,
                    b: lo.b,
                    gamma: lo.gamma.with(hi.b),
                };
            }
            MoveKind::ASwap => {
                let lo = self.cell(s, t);
                let hi = self.cell(s + 1, t);
                cells[s * self.nb + t] = ElementaryImset {
                    a: hi.a,
                    b: lo.b,
                    gamma: lo.gamma,
                };
                cells[(s + 1) * self.nb + t] = ElementaryImset {
                    a: lo.a,
                    b: lo.b,
                    gamma: lo.gamma.with(hi.a),
                };
            }
        }
        Ok(RepGrid {
            cells,
            ..*self
        })
    }

    /// Replays a move trace.
    pub fn apply_trace(&self, trace: &[Move]) -> Result<RepGrid> {
        let mut g = self.clone();
        for &m in trace {
            g = g.apply_move(m)?;
        }
        Ok(g)
    }

    /// Relabels the grid by rank permutations of `A` and `B`: the element
    /// of `A` with rank `i` maps to the one with rank `perm_a[i]`, and
    /// likewise for `B`. Conditioning sets are mapped elementwise.
    pub fn relabel(&self, perm_a: &[usize], perm_b: &[usize]) -> Result<RepGrid> {
        check_permutation(perm_a, self.na)?;
        check_permutation(perm_b, self.nb)?;
        let a_elems = self.triplet.a_elems();
        let b_elems = self.triplet.b_elems();
        let mut map: Vec<usize> = (0..self.ground).collect();
        for (i, &e) in a_elems.iter().enumerate() {
            map[e] = a_elems[perm_a[i]];
        }
        for (j, &e) in b_elems.iter().enumerate() {
            map[e] = b_elems[perm_b[j]];
        }
        let map_set = |s: VarSet| {
            s.iter()
                .fold(VarSet::EMPTY, |acc, i| acc.with(map[i]))
        };
        let cells = self
            .cells
            .iter()
            .map(|e| ElementaryImset {
                a: map[e.a],
                b: map[e.b],
                gamma: map_set(e.gamma),
            })
            .collect();
        RepGrid::from_cells(&self.triplet, cells)
    }

    /// Serialization key used for deduplication and canonicalization:
    /// row-major cells as `(a, b, gamma)`.
    pub fn cell_key(&self) -> Vec<(u8, u8, u32)> {
        self.cells
            .iter()
            .map(|e| (e.a as u8, e.b as u8, e.gamma.bits()))
            .collect()
    }

    /// The lexicographically minimal grid over all relabelings; constant
    /// on relabeling orbits and idempotent.
    pub fn canonical_representative(&self) -> RepGrid {
        let mut best = self.clone();
        let mut best_key = self.cell_key();
        for pa in (0..self.na).permutations(self.na) {
            for pb in (0..self.nb).permutations(self.nb) {
                let g = self
                    .relabel(&pa, &pb)
                    .expect("rank permutations are valid by construction");
                let key = g.cell_key();
                if key < best_key {
                    best_key = key;
                    best = g;
                }
            }
        }
        best
    }

    /// The order in which `A`'s elements appear along the `t = 0` column.
    /// For rift-free grids this is the nesting order of the relabeled
    /// standard form.
    pub fn a_order_elems(&self) -> Vec<usize> {
        (0..self.na).map(|s| self.cell(s, 0).a).collect()
    }

    /// The order in which `B`'s elements appear along the `s = 0` row.
    pub fn b_order_elems(&self) -> Vec<usize> {
        (0..self.nb).map(|t| self.cell(0, t).b).collect()
    }

    /// Moves realizing the adjacent transposition of grid rows
    /// `(row, row+1)` within columns `[c_lo, c_hi)`, swept right to left.
    /// Applicable on any grid whose columns in that span are nested chains
    /// (relabeled standard sub-blocks).
    pub fn a_transposition_moves(row: usize, c_lo: usize, c_hi: usize) -> Vec<Move> {
        (c_lo..c_hi).rev().map(|t| Move::a_swap(row, t)).collect()
    }

    /// Moves realizing the adjacent transposition of grid columns
    /// `(col, col+1)` within rows `[r_lo, r_hi)`, swept top to bottom.
    pub fn b_transposition_moves(col: usize, r_lo: usize, r_hi: usize) -> Vec<Move> {
        (r_lo..r_hi).rev().map(|s| Move::b_swap(s, col)).collect()
    }

    /// Flattens to the 0/1 coefficient vector over the family.
    pub fn flatten(&self, family: &ElementaryFamily) -> CoeffVector {
        let mut coeffs = vec![0u64; family.len()];
        for e in &self.cells {
            let pos = family
                .position(e)
                .expect("grid cells are members of the family");
            coeffs[pos] += 1;
        }
        CoeffVector { coeffs }
    }
}

/// A non-negative integer coefficient vector over a family, in family
/// order. Fiber members sum to the semi-elementary imset and, by the grid
/// structure, are 0/1 with exactly one unit per level group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffVector {
    pub coeffs: Vec<u64>,
}

impl CoeffVector {
    pub fn new(coeffs: Vec<u64>) -> CoeffVector {
        CoeffVector { coeffs }
    }

    /// The weighted sum of the family's imsets.
    pub fn sum(&self, family: &ElementaryFamily) -> Imset {
        let ground = family.triplet().min_ground();
        let mut acc = Imset::zero(ground);
        for (e, &k) in family.items().iter().zip(&self.coeffs) {
            if k != 0 {
                let k = k as i64;
                acc.bump(e.gamma, k);
                acc.bump(e.gamma_ab(), k);
                acc.bump(e.gamma_a(), -k);
                acc.bump(e.gamma_b(), -k);
            }
        }
        acc
    }

    /// Fiber membership: the weighted sum equals `u<A,B|C>`.
    pub fn is_fiber_member(&self, family: &ElementaryFamily) -> bool {
        let t = family.triplet();
        self.coeffs.len() == family.len()
            && self.sum(family) == semi_elementary(t.min_ground(), t)
    }
}

/// Rebuilds the unique grid arrangement of a fiber member; inverse of
/// [`RepGrid::flatten`].
pub fn grid_from_vector(family: &ElementaryFamily, v: &CoeffVector) -> Result<RepGrid> {
    let t = family.triplet();
    let (na, nb) = family.dims();
    if v.coeffs.len() != family.len() {
        return Err(Error::NotInFiber(format!(
            "coefficient vector has length {}, family has {}",
            v.coeffs.len(),
            family.len()
        )));
    }
    let mut cells = Vec::with_capacity(na * nb);
    let mut offset = 0usize;
    for s in 0..na {
        for lv in 0..nb {
            let group = family.group(s, lv);
            let slice = &v.coeffs[offset..offset + group.len()];
            offset += group.len();
            let mut chosen = None;
            for (e, &k) in group.iter().zip(slice) {
                match k {
                    0 => {}
                    1 if chosen.is_none() => chosen = Some(*e),
                    _ => {
                        return Err(Error::NotInFiber(format!(
                            "level group ({s},{lv}) does not carry exactly one unit"
                        )))
                    }
                }
            }
            let Some(e) = chosen else {
                return Err(Error::NotInFiber(format!(
                    "level group ({s},{lv}) does not carry exactly one unit"
                )));
            };
            cells.push(e);
        }
    }
    let grid = RepGrid::from_cells(t, cells)?;
    let errs = grid.validation_errors();
    if let Some(first) = errs.first() {
        return Err(Error::NotInFiber(format!(
            "cell sum deviates from the target at subset key {}",
            first.bits()
        )));
    }
    Ok(grid)
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(n));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidPermutation(n));
        }
        seen[p] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ix: &[usize]) -> VarSet {
        VarSet::from_indices(ix)
    }

    fn e(a: usize, b: usize, gamma: &[usize]) -> ElementaryImset {
        ElementaryImset::new(a, b, vs(gamma)).unwrap()
    }

    /// The (2,2) standard grid over layout a1=0, a2=1, b1=2, b2=3.
    fn std22() -> RepGrid {
        RepGrid::standard_identity(&Triplet::by_sizes(2, 2)).unwrap()
    }

    #[test]
    fn standard_two_by_two_cells() {
        let g = std22();
        assert_eq!(g.cell(0, 0), e(0, 2, &[]));
        assert_eq!(g.cell(1, 0), e(1, 2, &[0]));
        assert_eq!(g.cell(0, 1), e(0, 3, &[2]));
        assert_eq!(g.cell(1, 1), e(1, 3, &[0, 2]));
        assert!(g.validate());
    }

    #[test]
    fn standard_single_cell() {
        let t = Triplet::new(vs(&[0]), vs(&[1]), vs(&[2])).unwrap();
        let g = RepGrid::standard_identity(&t).unwrap();
        assert_eq!(g.dims(), (1, 1));
        assert_eq!(g.cell(0, 0), e(0, 1, &[2]));
        assert!(g.available_moves().is_empty());
    }

    #[test]
    fn broken_grid_fails_validation() {
        let g = std22();
        // swap the two b's without adjusting gammas
        let mut cells = g.cells().to_vec();
        let c0 = cells[0];
        let c1 = cells[1];
        cells[0] = ElementaryImset { b: c1.b, ..c0 };
        cells[1] = ElementaryImset { b: c0.b, ..c1 };
        // levels still match, so from_cells accepts it, but the sum breaks
        let bad = RepGrid::from_cells(g.triplet(), cells).unwrap();
        assert!(!bad.validate());
        assert!(!bad.validation_errors().is_empty());
    }

    #[test]
    fn move_matches_basic_relation() {
        // {u<a,b1|G>, u<a,b2|b1 G>} -> {u<a,b2|G>, u<a,b1|b2 G>}
        let g = std22();
        let moved = g.apply_move(Move::b_swap(0, 0)).unwrap();
        assert_eq!(moved.cell(0, 0), e(0, 3, &[]));
        assert_eq!(moved.cell(0, 1), e(0, 2, &[3]));
        assert!(moved.validate());
        assert_eq!(moved.sum(), g.sum());
        // involution
        let back = moved.apply_move(Move::b_swap(0, 0)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn inapplicable_move_rejected() {
        let g = std22().apply_move(Move::a_swap(0, 0)).unwrap();
        // after the a-swap at column 0, the two bottom cells have different a's
        assert!(matches!(
            g.apply_move(Move::b_swap(0, 0)),
            Err(Error::InapplicableMove(0, 0))
        ));
    }

    #[test]
    fn relabel_composes_with_standard() {
        let t = Triplet::by_sizes(2, 3);
        let g = RepGrid::standard(&t, &[0, 1], &[1, 2, 0]).unwrap();
        let r = g.relabel(&[1, 0], &[0, 2, 1]).unwrap();
        // relabeling by p maps standard(order) to standard(p ∘ order)
        let composed_a: Vec<usize> = vec![1, 0];
        let composed_b: Vec<usize> = vec![2, 1, 0];
        let expect = RepGrid::standard(&t, &composed_a, &composed_b).unwrap();
        assert_eq!(r, expect);
        // identity relabel is the identity
        assert_eq!(g.relabel(&[0, 1], &[0, 1, 2]).unwrap(), g);
    }

    #[test]
    fn canonical_is_orbit_constant() {
        let g = RepGrid::standard_identity(&Triplet::by_sizes(2, 2)).unwrap();
        let c = g.canonical_representative();
        assert_eq!(c.canonical_representative(), c);
        for pa in (0..2).permutations(2) {
            for pb in (0..2).permutations(2) {
                let r = g.relabel(&pa, &pb).unwrap();
                assert_eq!(r.canonical_representative(), c);
            }
        }
    }

    #[test]
    fn flatten_roundtrip() {
        let t = Triplet::by_sizes(2, 2);
        let fam = ElementaryFamily::new(&t).unwrap();
        let g = RepGrid::standard_identity(&t).unwrap();
        let v = g.flatten(&fam);
        assert_eq!(v.coeffs.iter().sum::<u64>(), 4);
        assert!(v.is_fiber_member(&fam));
        assert_eq!(grid_from_vector(&fam, &v).unwrap(), g);
    }

    #[test]
    fn vector_with_doubled_group_rejected() {
        let t = Triplet::by_sizes(2, 2);
        let fam = ElementaryFamily::new(&t).unwrap();
        let mut coeffs = vec![0u64; fam.len()];
        coeffs[0] = 1;
        coeffs[1] = 1; // two units inside the (0,0) group
        let err = grid_from_vector(&fam, &CoeffVector::new(coeffs)).unwrap_err();
        assert!(matches!(err, Error::NotInFiber(_)));
    }
}
