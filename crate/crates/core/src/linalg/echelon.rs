//! Incremental row reduction over sparse rows.
//!
//! Rows are kept in semi-echelon form while being inserted (each row has a leading one
//! at its pivot column and no two rows share a pivot). `make_reduced` back-substitutes
//! to the canonical reduced row-echelon form.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::scalar::{Scalar, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
    reduced: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            reduced: true,
        }
    }

    pub fn from_rows<I: IntoIterator<Item = SparseVec>>(ncols: usize, rows: I) -> Self {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e.make_reduced();
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in v {
            debug_assert!(*i < self.ncols);
            if !x.is_zero() {
                *acc.entry(*i).or_insert_with(Scalar::zero) += x;
            }
        }
        let mut out = SparseVec::new();
        while let Some((col, coef)) = acc.pop_first() {
            if coef.is_zero() {
                continue;
            }
            match self.pivot_row[col] {
                Some(r) => {
                    for (j, y) in self.rows[r].iter().skip(1) {
                        let e = acc.entry(*j).or_insert_with(Scalar::zero);
                        *e -= &coef * y;
                    }
                }
                None => out.push((col, coef)),
            }
        }
        out
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space. Returns `true` when the rank increased.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(&v);
        if r.is_empty() {
            return false;
        }
        let lead = r[0].1.clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, x) in r.iter_mut() {
                *x *= &inv;
            }
        }
        let pivot = r[0].0;
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(r);
        self.reduced = false;
        true
    }

    /// Back-substitution to reduced row-echelon form, rows sorted by pivot column.
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut rows: Vec<SparseVec> = order.iter().map(|&r| std::mem::take(&mut self.rows[r])).collect();
        for v in self.pivot_row.iter_mut() {
            *v = None;
        }
        for (k, row) in rows.iter().enumerate() {
            self.pivot_row[row[0].0] = Some(k);
        }
        for k in (0..rows.len()).rev() {
            let needs: Vec<(usize, Scalar)> = rows[k]
                .iter()
                .skip(1)
                .filter(|(c, _)| self.pivot_row[*c].is_some())
                .cloned()
                .collect();
            if needs.is_empty() {
                continue;
            }
            let mut acc: BTreeMap<usize, Scalar> = rows[k].iter().cloned().collect();
            for (c, coef) in needs {
                let src = self.pivot_row[c].unwrap();
                for (j, y) in &rows[src] {
                    let e = acc.entry(*j).or_insert_with(Scalar::zero);
                    *e -= &coef * y;
                }
            }
            rows[k] = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        }
        self.rows = rows;
        self.reduced = true;
    }

    /// Rows of the reduced form, ordered by pivot column.
    pub fn rows(&mut self) -> &[SparseVec] {
        self.make_reduced();
        &self.rows
    }

    /// Rows of an echelon that is already reduced.
    pub fn reduced_rows(&self) -> &[SparseVec] {
        assert!(self.reduced, "echelon not reduced");
        &self.rows
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// Row index in the reduced form holding the pivot of `col`.
    pub fn pivot_row_of(&self, col: usize) -> Option<usize> {
        self.pivot_row[col]
    }
}
