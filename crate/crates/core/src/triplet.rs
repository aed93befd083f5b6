//! Ordered disjoint triplets `<A, B | C>`.

use crate::varset::VarSet;
use crate::{Error, Result};

/// A triplet of pairwise disjoint subsets of the ground set.
///
/// Identifies the semi-elementary imset `u<A,B|C>` and, when `A` and `B` are
/// non-empty, the family of elementary imsets and the representation fiber.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Triplet {
    a: VarSet,
    b: VarSet,
    c: VarSet,
}

impl Triplet {
    pub fn new(a: VarSet, b: VarSet, c: VarSet) -> Result<Triplet> {
        if a.is_disjoint(b) && a.is_disjoint(c) && b.is_disjoint(c) {
            Ok(Triplet { a, b, c })
        } else {
            Err(Error::InvalidTriplet)
        }
    }

    /// The normalized triplet with `C` empty: `A = {0..na}`, `B = {na..na+nb}`.
    pub fn by_sizes(na: usize, nb: usize) -> Triplet {
        Triplet::by_sizes_with_c(na, nb, 0)
    }

    /// Sized triplet with `C` appended after `A` and `B` in the index layout.
    pub fn by_sizes_with_c(na: usize, nb: usize, nc: usize) -> Triplet {
        let a = VarSet::from_bits(VarSet::full(na).bits());
        let b = VarSet::from_bits(VarSet::full(na + nb).bits() & !a.bits());
        let c = VarSet::from_bits(VarSet::full(na + nb + nc).bits() & !a.bits() & !b.bits());
        Triplet { a, b, c }
    }

    pub fn a(&self) -> VarSet {
        self.a
    }

    pub fn b(&self) -> VarSet {
        self.b
    }

    pub fn c(&self) -> VarSet {
        self.c
    }

    /// `A ∪ B ∪ C`.
    pub fn abc(&self) -> VarSet {
        self.a.union(self.b).union(self.c)
    }

    /// Smallest ground-set size containing all three sets.
    pub fn min_ground(&self) -> usize {
        self.abc().iter().last().map_or(0, |i| i + 1)
    }

    /// Elements of `A` in ascending index order.
    pub fn a_elems(&self) -> Vec<usize> {
        self.a.iter().collect()
    }

    /// Elements of `B` in ascending index order.
    pub fn b_elems(&self) -> Vec<usize> {
        self.b.iter().collect()
    }

    /// True when both fiber sides are non-empty.
    pub fn has_fiber(&self) -> bool {
        !self.a.is_empty() && !self.b.is_empty()
    }

    pub(crate) fn require_fiber(&self) -> Result<()> {
        if self.has_fiber() {
            Ok(())
        } else {
            Err(Error::EmptySide)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn by_sizes_layout() {
        let t = Triplet::by_sizes_with_c(2, 3, 1);
        assert_eq!(t.a_elems(), vec![0, 1]);
        assert_eq!(t.b_elems(), vec![2, 3, 4]);
        assert_eq!(t.c().iter().collect::<Vec<_>>(), vec![5]);
        assert_eq!(t.min_ground(), 6);
    }

    #[test]
    fn overlap_rejected() {
        let s = VarSet::from_indices(&[0, 1]);
        assert_eq!(
            Triplet::new(s, VarSet::singleton(1), VarSet::EMPTY),
            Err(Error::InvalidTriplet)
        );
    }
}
