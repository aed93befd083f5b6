//! Elementary imsets and the family attached to a triplet.

use std::collections::HashMap;

use crate::imset::{semi_elementary, Imset};
use crate::triplet::Triplet;
use crate::varset::VarSet;
use crate::{Error, Result};

/// The elementary imset `u<a,b|gamma>` in symbolic form: two endpoint
/// element indices and the conditioning set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementaryImset {
    pub a: usize,
    pub b: usize,
    pub gamma: VarSet,
}

impl ElementaryImset {
    pub fn new(a: usize, b: usize, gamma: VarSet) -> Result<ElementaryImset> {
        if a == b || gamma.contains(a) || gamma.contains(b) {
            return Err(Error::InvalidElementary);
        }
        Ok(ElementaryImset { a, b, gamma })
    }

    /// Evaluates to the actual imset over the given ground size.
    pub fn imset(&self, ground: usize) -> Imset {
        let t = Triplet::new(
            VarSet::singleton(self.a),
            VarSet::singleton(self.b),
            self.gamma,
        )
        .expect("elementary endpoints are disjoint from gamma");
        semi_elementary(ground, &t)
    }

    /// Level pair `(|A ∩ gamma|, |B ∩ gamma|)` relative to a triplet.
    pub fn levels(&self, t: &Triplet) -> (usize, usize) {
        (
            self.gamma.intersect(t.a()).len(),
            self.gamma.intersect(t.b()).len(),
        )
    }

    /// Membership in the family of a triplet: `a ∈ A`, `b ∈ B`,
    /// `C ⊆ gamma ⊆ ABC`.
    pub fn in_family(&self, t: &Triplet) -> bool {
        t.a().contains(self.a)
            && t.b().contains(self.b)
            && t.c().is_subset_of(self.gamma)
            && self.gamma.is_subset_of(t.abc())
    }

    /// `gamma ∪ {a}`.
    pub fn gamma_a(&self) -> VarSet {
        self.gamma.with(self.a)
    }

    /// `gamma ∪ {b}`.
    pub fn gamma_b(&self) -> VarSet {
        self.gamma.with(self.b)
    }

    /// `gamma ∪ {a, b}`.
    pub fn gamma_ab(&self) -> VarSet {
        self.gamma.with(self.a).with(self.b)
    }
}

/// The family of all elementary imsets for a triplet, deterministically
/// ordered by level pair `(s, t)`, then endpoint indices, then the
/// conditioning set's integer key. Cells at level `(s, t)` form a
/// contiguous group.
#[derive(Clone, Debug)]
pub struct ElementaryFamily {
    triplet: Triplet,
    na: usize,
    nb: usize,
    items: Vec<ElementaryImset>,
    group_start: Vec<usize>,
    positions: HashMap<ElementaryImset, usize>,
}

impl ElementaryFamily {
    pub fn new(t: &Triplet) -> Result<ElementaryFamily> {
        t.require_fiber()?;
        let na = t.a().len();
        let nb = t.b().len();
        let mut items = Vec::with_capacity(ElementaryFamily::expected_len(na, nb));
        for s in 0..na {
            for lv in 0..nb {
                for a in t.a().iter() {
                    for b in t.b().iter() {
                        let lo = t.c();
                        let hi = t.abc().without(a).without(b);
                        let mut level_gammas: Vec<VarSet> = VarSet::subsets_between(lo, hi)
                            .filter(|g| {
                                g.intersect(t.a()).len() == s && g.intersect(t.b()).len() == lv
                            })
                            .collect();
                        level_gammas.sort_by_key(|g| g.bits());
                        for gamma in level_gammas {
                            items.push(ElementaryImset { a, b, gamma });
                        }
                    }
                }
            }
        }
        let mut group_start = vec![0usize; na * nb + 1];
        for (i, e) in items.iter().enumerate() {
            let (s, lv) = e.levels(t);
            group_start[s * nb + lv + 1] = i + 1;
        }
        for g in 1..group_start.len() {
            if group_start[g] < group_start[g - 1] {
                group_start[g] = group_start[g - 1];
            }
        }
        let positions = items.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(ElementaryFamily {
            triplet: *t,
            na,
            nb,
            items,
            group_start,
            positions,
        })
    }

    /// `|A| 2^(|A|-1) |B| 2^(|B|-1)`.
    pub fn expected_len(na: usize, nb: usize) -> usize {
        na * (1 << (na - 1)) * nb * (1 << (nb - 1))
    }

    pub fn triplet(&self) -> &Triplet {
        &self.triplet
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[ElementaryImset] {
        &self.items
    }

    /// The group at level `(s, t)`.
    pub fn group(&self, s: usize, t: usize) -> &[ElementaryImset] {
        let g = s * self.nb + t;
        &self.items[self.group_start[g]..self.group_start[g + 1]]
    }

    /// Position of an elementary imset in the family order.
    pub fn position(&self, e: &ElementaryImset) -> Option<usize> {
        self.positions.get(e).copied()
    }

    /// Position within the level group, for compact grid encodings.
    pub fn position_in_group(&self, e: &ElementaryImset) -> Option<usize> {
        let (s, t) = e.levels(&self.triplet);
        let g = s * self.nb + t;
        self.position(e).map(|p| p - self.group_start[g])
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.na, self.nb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        for (na, nb, want) in [(2, 2, 16), (1, 1, 1), (3, 3, 144), (1, 4, 32)] {
            let t = Triplet::by_sizes(na, nb);
            let fam = ElementaryFamily::new(&t).unwrap();
            assert_eq!(fam.len(), want);
            assert_eq!(fam.len(), ElementaryFamily::expected_len(na, nb));
        }
        // formula holds across 1 <= |A|,|B| <= 4
        for na in 1..=4 {
            for nb in 1..=4 {
                let fam = ElementaryFamily::new(&Triplet::by_sizes(na, nb)).unwrap();
                assert_eq!(fam.len(), ElementaryFamily::expected_len(na, nb));
            }
        }
    }

    #[test]
    fn group_sizes_three_by_three() {
        // |E^{s,t}| = 3*C(2,s) * 3*C(2,t)
        let t = Triplet::by_sizes(3, 3);
        let fam = ElementaryFamily::new(&t).unwrap();
        let choose2 = [1usize, 2, 1];
        for s in 0..3 {
            for lv in 0..3 {
                assert_eq!(fam.group(s, lv).len(), 3 * choose2[s] * 3 * choose2[lv]);
                for e in fam.group(s, lv) {
                    assert_eq!(e.levels(&t), (s, lv));
                    assert!(e.in_family(&t));
                }
            }
        }
    }

    #[test]
    fn member_rejects_outsiders() {
        let t = Triplet::by_sizes(2, 2);
        // endpoints swapped out of their sides
        let e = ElementaryImset::new(2, 0, VarSet::EMPTY).unwrap();
        assert!(!e.in_family(&t));
    }

    #[test]
    fn positions_roundtrip() {
        let t = Triplet::by_sizes(2, 3);
        let fam = ElementaryFamily::new(&t).unwrap();
        for (i, e) in fam.items().iter().enumerate() {
            assert_eq!(fam.position(e), Some(i));
        }
    }
}
