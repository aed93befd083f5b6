//! Subsets of the ground set as fixed-width bit vectors.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// A subset of the ground set `N = {0, .., n-1}`, one bit per element.
///
/// Capacity is 32 elements, comfortably above what exhaustive fiber work
/// needs. The ground-set size itself is tracked by the surrounding context
/// (imsets, triplets, grids), not by the set.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarSet(u32);

impl VarSet {
    /// The empty set.
    pub const EMPTY: VarSet = VarSet(0);

    /// The set `{i}`.
    pub fn singleton(i: usize) -> VarSet {
        debug_assert!(i < 32);
        VarSet(1 << i)
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> VarSet {
        debug_assert!(n <= 32);
        if n == 32 {
            VarSet(u32::MAX)
        } else {
            VarSet((1u32 << n) - 1)
        }
    }

    /// Builds a set from element indices.
    pub fn from_indices(indices: &[usize]) -> VarSet {
        indices.iter().fold(VarSet::EMPTY, |s, &i| s.with(i))
    }

    /// Reinterprets raw bits as a set.
    pub fn from_bits(bits: u32) -> VarSet {
        VarSet(bits)
    }

    /// The raw bits; also the canonical integer key of the set.
    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    /// Cardinality.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, i: usize) -> VarSet {
        debug_assert!(i < 32);
        VarSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> VarSet {
        VarSet(self.0 & !(1 << i))
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersect(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_superset_of(self, other: VarSet) -> bool {
        other.is_subset_of(self)
    }

    pub fn is_disjoint(self, other: VarSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Element indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// The unique element of a singleton set.
    pub fn single(self) -> Option<usize> {
        if self.len() == 1 {
            Some(self.0.trailing_zeros() as usize)
        } else {
            None
        }
    }

    /// All sets `S` with `lo <= S <= hi`, in ascending order of their
    /// integer key restricted to the free positions.
    pub fn subsets_between(lo: VarSet, hi: VarSet) -> impl Iterator<Item = VarSet> {
        debug_assert!(lo.is_subset_of(hi));
        let free: Vec<usize> = hi.difference(lo).iter().collect();
        let count = 1u64 << free.len();
        (0..count).map(move |mask| {
            let mut s = lo;
            for (pos, &elem) in free.iter().enumerate() {
                if mask & (1 << pos) != 0 {
                    s = s.with(elem);
                }
            }
            s
        })
    }
}

impl BitOr for VarSet {
    type Output = VarSet;
    fn bitor(self, rhs: VarSet) -> VarSet {
        self.union(rhs)
    }
}

impl BitAnd for VarSet {
    type Output = VarSet;
    fn bitand(self, rhs: VarSet) -> VarSet {
        self.intersect(rhs)
    }
}

impl Sub for VarSet {
    type Output = VarSet;
    fn sub(self, rhs: VarSet) -> VarSet {
        self.difference(rhs)
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
