//! Sparse exact arithmetic on imsets.

use std::collections::BTreeMap;

use crate::triplet::Triplet;
use crate::varset::VarSet;
use crate::{Error, Result};

/// An integer-valued function on the power set of the ground set, stored
/// sparsely. Zero entries are always pruned so that equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Imset {
    ground: usize,
    entries: BTreeMap<VarSet, i64>,
}

impl Imset {
    /// The zero imset over a ground set of the given size.
    pub fn zero(ground: usize) -> Imset {
        Imset {
            ground,
            entries: BTreeMap::new(),
        }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    /// The value at a subset; absent entries are zero.
    pub fn value(&self, s: VarSet) -> i64 {
        self.entries.get(&s).copied().unwrap_or(0)
    }

    /// Non-zero entries in ascending order of the subset's integer key.
    pub fn entries(&self) -> impl Iterator<Item = (VarSet, i64)> + '_ {
        self.entries.iter().map(|(&s, &v)| (s, v))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all entry values. Zero for sums and differences of
    /// semi-elementary imsets; exposed as a validator.
    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    /// Adds `v` at subset `s`, pruning the entry if it cancels to zero.
    pub fn bump(&mut self, s: VarSet, v: i64) {
        if v == 0 {
            return;
        }
        let slot = self.entries.entry(s).or_insert(0);
        *slot += v;
        if *slot == 0 {
            self.entries.remove(&s);
        }
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Imset) -> Result<Imset> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground, other.ground));
        }
        let mut out = self.clone();
        for (s, v) in other.entries() {
            out.bump(s, v);
        }
        Ok(out)
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &Imset) -> Result<Imset> {
        self.add(&other.scale(-1))
    }

    /// Scalar multiple.
    pub fn scale(&self, k: i64) -> Imset {
        if k == 0 {
            return Imset::zero(self.ground);
        }
        Imset {
            ground: self.ground,
            entries: self.entries.iter().map(|(&s, &v)| (s, v * k)).collect(),
        }
    }

    /// Standard inner product of the two functions viewed as
    /// `2^|N|`-dimensional integer vectors.
    pub fn inner_product(&self, other: &Imset) -> Result<i64> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground, other.ground));
        }
        Ok(self
            .entries()
            .map(|(s, v)| v * other.value(s))
            .sum())
    }
}

/// The semi-elementary imset `u<A,B|C>`: `+1` at `ABC` and `C`, `-1` at `AC`
/// and `BC`. When `A` or `B` is empty the four subsets collapse and the
/// result is the zero imset.
pub fn semi_elementary(ground: usize, t: &Triplet) -> Imset {
    let mut u = Imset::zero(ground);
    let a = t.a();
    let b = t.b();
    let c = t.c();
    u.bump(a.union(b).union(c), 1);
    u.bump(c, 1);
    u.bump(a.union(c), -1);
    u.bump(b.union(c), -1);
    u
}

/// The elementary imset `u<a,b|gamma>`.
pub fn elementary(ground: usize, a: usize, b: usize, gamma: VarSet) -> Result<Imset> {
    if a == b || gamma.contains(a) || gamma.contains(b) {
        return Err(Error::InvalidElementary);
    }
    let t = Triplet::new(VarSet::singleton(a), VarSet::singleton(b), gamma)?;
    Ok(semi_elementary(ground, &t))
}

/// Checks the split identity
/// `u<X, Y1 Y2 | Z> = u<X, Y1 | Z> + u<X, Y2 | Y1 Z>`
/// for pairwise disjoint `X, Y1, Y2, Z`. Holds for every valid input.
pub fn split_identity_check(
    ground: usize,
    x: VarSet,
    y1: VarSet,
    y2: VarSet,
    z: VarSet,
) -> Result<bool> {
    let whole = semi_elementary(ground, &Triplet::new(x, y1.union(y2), z)?);
    let first = semi_elementary(ground, &Triplet::new(x, y1, z)?);
    let second = semi_elementary(ground, &Triplet::new(x, y2, y1.union(z))?);
    Ok(whole == first.add(&second)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(ix: &[usize]) -> VarSet {
        VarSet::from_indices(ix)
    }

    #[test]
    fn semi_elementary_singletons() {
        // u<{a},{b}|{c}> over ground {a,b,c} = {0,1,2}
        let t = Triplet::new(vs(&[0]), vs(&[1]), vs(&[2])).unwrap();
        let u = semi_elementary(3, &t);
        assert_eq!(u.value(vs(&[0, 1, 2])), 1);
        assert_eq!(u.value(vs(&[2])), 1);
        assert_eq!(u.value(vs(&[0, 2])), -1);
        assert_eq!(u.value(vs(&[1, 2])), -1);
        assert_eq!(u.support_len(), 4);
        assert_eq!(u.total(), 0);
    }

    #[test]
    fn semi_elementary_empty_side_is_zero() {
        let t = Triplet::new(VarSet::EMPTY, vs(&[1]), vs(&[2])).unwrap();
        assert!(semi_elementary(3, &t).is_zero());
    }

    #[test]
    fn semi_elementary_two_by_two() {
        // u<{a1,a2},{b1,b2}|∅>: +1 at ABC and ∅, -1 at A and B.
        let t = Triplet::by_sizes(2, 2);
        let u = semi_elementary(4, &t);
        assert_eq!(u.value(vs(&[0, 1, 2, 3])), 1);
        assert_eq!(u.value(VarSet::EMPTY), 1);
        assert_eq!(u.value(vs(&[0, 1])), -1);
        assert_eq!(u.value(vs(&[2, 3])), -1);
        assert_eq!(u.support_len(), 4);
    }

    #[test]
    fn semi_elementary_symmetric_in_a_b() {
        let t = Triplet::new(vs(&[0, 3]), vs(&[1]), vs(&[2])).unwrap();
        let s = Triplet::new(vs(&[1]), vs(&[0, 3]), vs(&[2])).unwrap();
        assert_eq!(semi_elementary(4, &t), semi_elementary(4, &s));
    }

    #[test]
    fn elementary_examples() {
        // (a1, b1, ∅) over the (2,2) layout: a1=0, b1=2.
        let u = elementary(4, 0, 2, VarSet::EMPTY).unwrap();
        assert_eq!(u.value(vs(&[0, 2])), 1);
        assert_eq!(u.value(VarSet::EMPTY), 1);
        assert_eq!(u.value(vs(&[0])), -1);
        assert_eq!(u.value(vs(&[2])), -1);

        // (a2, b1, {a1}): a2=1, b1=2, gamma={0}.
        let u = elementary(4, 1, 2, vs(&[0])).unwrap();
        assert_eq!(u.value(vs(&[0, 1, 2])), 1);
        assert_eq!(u.value(vs(&[0])), 1);
        assert_eq!(u.value(vs(&[0, 1])), -1);
        assert_eq!(u.value(vs(&[0, 2])), -1);

        assert_eq!(elementary(4, 0, 0, VarSet::EMPTY), Err(Error::InvalidElementary));
        assert_eq!(elementary(4, 0, 1, vs(&[1])), Err(Error::InvalidElementary));
    }

    #[test]
    fn arithmetic_identities() {
        let u = elementary(4, 0, 2, VarSet::EMPTY).unwrap();
        assert_eq!(u.inner_product(&u).unwrap(), 4);
        assert!(u.add(&u.scale(-1)).unwrap().is_zero());
        let g = Imset::zero(5);
        assert_eq!(u.add(&g), Err(Error::GroundMismatch(4, 5)));
    }

    #[test]
    fn split_identity_basic() {
        // X={a}, Y1={b1}, Y2={b2}, Z=∅.
        assert!(split_identity_check(3, vs(&[0]), vs(&[1]), vs(&[2]), VarSet::EMPTY).unwrap());
        // Y2 empty: second term zero, first two imsets equal.
        assert!(split_identity_check(3, vs(&[0]), vs(&[1]), VarSet::EMPTY, vs(&[2])).unwrap());
    }

    #[test]
    fn split_identity_exhaustive_small() {
        // Every assignment of 4 elements to {X, Y1, Y2, Z, unused}.
        let n = 4;
        for code in 0..5u32.pow(n as u32) {
            let mut c = code;
            let mut sets = [VarSet::EMPTY; 4];
            for i in 0..n {
                let which = (c % 5) as usize;
                c /= 5;
                if which < 4 {
                    sets[which] = sets[which].with(i);
                }
            }
            assert!(split_identity_check(n, sets[0], sets[1], sets[2], sets[3]).unwrap());
        }
    }
}
