//! Dense exact linear algebra over the rationals: reduced row echelon
//! form, rank, and reduction of vectors against a row space. Matrices here
//! are small (window dimensions), so no pivoting strategy beyond the first
//! nonzero entry is needed.

use crate::symcalc::Rational;

/// A matrix held in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let mut e = Echelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn empty(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Reduce `v` against the row space; the result has zeros in every
    /// pivot column and `v` is in the span iff the result is zero.
    pub fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                let delta = &factor * r;
                *x = &*x - &delta;
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<Rational>) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert one row, keeping reduced echelon form. Returns true if the
    /// row was independent of the current row space.
    pub fn insert(&mut self, row: Vec<Rational>) -> bool {
        let v = self.reduce(row);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        let mut v: Vec<Rational> = v.iter().map(|x| x * &inv).collect();
        // clear the new pivot column from existing rows
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, r) in row.iter_mut().zip(&mut v.iter()) {
                let delta = &factor * r;
                *x = &*x - &delta;
            }
        }
        // keep rows ordered by pivot column
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, std::mem::take(&mut v));
        self.pivots.insert(at, p);
        true
    }
}

/// Rank of an arbitrary rational matrix.
pub fn rank(cols: usize, rows: Vec<Vec<Rational>>) -> usize {
    Echelon::from_rows(cols, rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn rank_and_membership() {
        let rows = vec![
            vec![r(1), r(2), r(3)],
            vec![r(2), r(4), r(6)],
            vec![r(0), r(1), r(1)],
        ];
        let e = Echelon::from_rows(3, rows);
        assert_eq!(e.rank(), 2);
        assert!(e.contains(vec![r(1), r(3), r(4)]));
        assert!(!e.contains(vec![r(0), r(0), r(1)]));
    }

    #[test]
    fn reduction_is_idempotent() {
        let e = Echelon::from_rows(
            3,
            vec![vec![r(1), r(1), r(0)], vec![r(0), r(2), r(2)]],
        );
        let red = e.reduce(vec![r(3), r(5), r(1)]);
        assert_eq!(e.reduce(red.clone()), red);
    }
}
