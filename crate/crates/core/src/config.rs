//! The configuration matrix of a triplet's elementary-imset family.

use std::collections::HashMap;

use crate::family::{ElementaryFamily, ElementaryImset};
use crate::triplet::Triplet;
use crate::varset::VarSet;
use crate::Result;

/// The 0/±1 matrix whose columns are the elementary imsets of the family,
/// evaluated on all subsets `S` with `C ⊆ S ⊆ ABC`.
///
/// Canonical ordering: rows by descending `|S|`, ties broken by descending
/// integer key; columns in family order. Any permutation-equivalent matrix
/// is accepted by [`ConfigMatrix::equivalent`].
#[derive(Clone, Debug)]
pub struct ConfigMatrix {
    triplet: Triplet,
    rows: Vec<VarSet>,
    cols: Vec<ElementaryImset>,
    data: Vec<i8>,
}

impl ConfigMatrix {
    pub fn new(t: &Triplet) -> Result<ConfigMatrix> {
        let family = ElementaryFamily::new(t)?;
        let mut rows: Vec<VarSet> = VarSet::subsets_between(t.c(), t.abc()).collect();
        rows.sort_by(|x, y| {
            y.len()
                .cmp(&x.len())
                .then_with(|| y.bits().cmp(&x.bits()))
        });
        let cols = family.items().to_vec();
        let mut data = vec![0i8; rows.len() * cols.len()];
        for (j, e) in cols.iter().enumerate() {
            let ground = t.min_ground();
            let u = e.imset(ground);
            for (i, &s) in rows.iter().enumerate() {
                data[i * cols.len() + j] = u.value(s) as i8;
            }
        }
        Ok(ConfigMatrix {
            triplet: *t,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from explicit parts, e.g. a transcribed reference
    /// layout, for permutation-equivalence comparisons.
    pub fn from_parts(
        t: &Triplet,
        rows: Vec<VarSet>,
        cols: Vec<ElementaryImset>,
        data: Vec<i8>,
    ) -> Result<ConfigMatrix> {
        if data.len() != rows.len() * cols.len() {
            return Err(crate::Error::Parse(format!(
                "matrix shape {}x{} does not fit {} entries",
                rows.len(),
                cols.len(),
                data.len()
            )));
        }
        Ok(ConfigMatrix {
            triplet: *t,
            rows,
            cols,
            data,
        })
    }

    pub fn triplet(&self) -> &Triplet {
        &self.triplet
    }

    pub fn rows(&self) -> &[VarSet] {
        &self.rows
    }

    pub fn cols(&self) -> &[ElementaryImset] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.data[i * self.cols.len() + j]
    }

    /// True when the two matrices carry the same entries up to row and
    /// column permutations, matching rows by subset and columns by
    /// elementary imset.
    pub fn equivalent(&self, other: &ConfigMatrix) -> bool {
        if self.rows.len() != other.rows.len() || self.cols.len() != other.cols.len() {
            return false;
        }
        let row_of: HashMap<VarSet, usize> =
            other.rows.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let col_of: HashMap<ElementaryImset, usize> =
            other.cols.iter().enumerate().map(|(j, &e)| (e, j)).collect();
        for (i, s) in self.rows.iter().enumerate() {
            let Some(&oi) = row_of.get(s) else {
                return false;
            };
            for (j, e) in self.cols.iter().enumerate() {
                let Some(&oj) = col_of.get(e) else {
                    return false;
                };
                if self.entry(i, j) != other.entry(oi, oj) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_column() {
        // <{a},{b}|∅> -> one 4x1 column (1,-1,-1,1)^T over rows {a,b},{a},{b},∅.
        let t = Triplet::by_sizes(1, 1);
        let m = ConfigMatrix::new(&t).unwrap();
        assert_eq!(m.rows().len(), 4);
        assert_eq!(m.cols().len(), 1);
        let col: Vec<i8> = (0..4).map(|i| m.entry(i, 0)).collect();
        assert_eq!(col, vec![1, -1, -1, 1]);
        assert_eq!(
            m.rows().to_vec(),
            vec![
                VarSet::from_indices(&[0, 1]),
                VarSet::from_indices(&[1]),
                VarSet::from_indices(&[0]),
                VarSet::EMPTY,
            ]
        );
    }

    #[test]
    fn columns_balanced() {
        // every column: two +1, two -1, summing to zero
        for (na, nb) in [(2, 2), (2, 3), (3, 3)] {
            let m = ConfigMatrix::new(&Triplet::by_sizes(na, nb)).unwrap();
            for j in 0..m.cols().len() {
                let mut pos = 0;
                let mut neg = 0;
                for i in 0..m.rows().len() {
                    match m.entry(i, j) {
                        1 => pos += 1,
                        -1 => neg += 1,
                        _ => {}
                    }
                }
                assert_eq!((pos, neg), (2, 2));
            }
        }
    }

    #[test]
    fn column_count_formula() {
        let m = ConfigMatrix::new(&Triplet::by_sizes(2, 2)).unwrap();
        assert_eq!(m.cols().len(), 16);
        assert_eq!(m.rows().len(), 16);
    }
}
