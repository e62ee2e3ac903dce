//! Exact sparse linear algebra over the Gaussian rationals.

use std::collections::BTreeMap;

use crate::scalar::GaussianRational;

/// Sparse row: column index → nonzero entry.
pub type SparseRow = BTreeMap<usize, GaussianRational>;

/// Matrix stored as sparse rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Matrix {
    pub ncols: usize,
    pub rows: Vec<SparseRow>,
}

impl Matrix {
    pub fn new(ncols: usize) -> Self {
        Matrix { ncols, rows: Vec::new() }
    }

    pub fn from_dense(ncols: usize, dense: &[Vec<GaussianRational>]) -> Self {
        let rows = dense.iter().map(|r| sparse_from_dense(r)).collect();
        Matrix { ncols, rows }
    }

    pub fn push_row(&mut self, row: SparseRow) {
        debug_assert!(row.keys().all(|&c| c < self.ncols));
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, r: usize, c: usize) -> GaussianRational {
        self.rows[r].get(&c).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// `A·x` for a dense vector.
    pub fn apply(&self, x: &[GaussianRational]) -> Vec<GaussianRational> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = GaussianRational::zero();
                for (&c, v) in row {
                    acc = &acc + &(v * &x[c]);
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        Echelon::from_matrix(self).rank()
    }

    pub fn null_space(&self) -> Vec<Vec<GaussianRational>> {
        Echelon::from_matrix(self).null_space()
    }
}

pub fn sparse_from_dense(v: &[GaussianRational]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse(row: &SparseRow, ncols: usize) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); ncols];
    for (&c, v) in row {
        out[c] = v.clone();
    }
    out
}

/// Reduced row echelon form, built incrementally. Every stored row has a
/// unit pivot at its first column and no other stored row has an entry in
/// that column.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let mut e = Echelon::new(m.ncols);
        for row in &m.rows {
            e.insert(row.clone());
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.rows.values()
    }

    /// Remainder of `row` after eliminating every pivot column.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut row = row.clone();
        for (&p, prow) in &self.rows {
            if let Some(f) = row.get(&p).cloned() {
                axpy(&mut row, &-&f, prow);
            }
        }
        row
    }

    /// Add a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(&row);
        let Some((&p, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.inv();
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(f) = other.get(&p).cloned() {
                axpy(other, &-&f, &row);
            }
        }
        row.remove(&p);
        row.insert(p, GaussianRational::one());
        self.rows.insert(p, row);
        true
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, with a 1 in
    /// that column.
    pub fn null_space(&self) -> Vec<Vec<GaussianRational>> {
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.rows.contains_key(&free) {
                continue;
            }
            let mut v = vec![GaussianRational::zero(); self.ncols];
            v[free] = GaussianRational::one();
            for (&p, row) in &self.rows {
                if let Some(x) = row.get(&free) {
                    v[p] = -x;
                }
            }
            out.push(v);
        }
        out
    }
}

/// `row += f · other`, dropping cancelled entries.
fn axpy(row: &mut SparseRow, f: &GaussianRational, other: &SparseRow) {
    for (&c, v) in other {
        let add = f * v;
        match row.get_mut(&c) {
            Some(x) => {
                let s = &*x + &add;
                if s.is_zero() {
                    row.remove(&c);
                } else {
                    *x = s;
                }
            }
            None => {
                if !add.is_zero() {
                    row.insert(c, add);
                }
            }
        }
    }
}

/// Reduced echelon basis of the span of `vectors`.
pub fn row_reduce(ncols: usize, vectors: &[Vec<GaussianRational>]) -> Vec<Vec<GaussianRational>> {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert(sparse_from_dense(v));
    }
    e.rows().map(|r| dense_from_sparse(r, ncols)).collect()
}

/// Solve `x_1 c_1 + … + x_k c_k = target` for the coefficients `x`, where
/// the `c_j` are the given columns. `None` when `target` is outside their
/// span. The solution is unique when the columns are independent.
pub fn solve_in_span(columns: &[Vec<GaussianRational>], target: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    let n = target.len();
    let k = columns.len();
    // Augmented system: row i is (c_1[i], …, c_k[i] | target[i]).
    let mut e = Echelon::new(k + 1);
    for i in 0..n {
        let mut row = SparseRow::new();
        for (j, c) in columns.iter().enumerate() {
            if !c[i].is_zero() {
                row.insert(j, c[i].clone());
            }
        }
        if !target[i].is_zero() {
            row.insert(k, target[i].clone());
        }
        e.insert(row);
    }
    if e.rows.contains_key(&k) {
        return None;
    }
    let mut x = vec![GaussianRational::zero(); k];
    for (&p, row) in &e.rows {
        if let Some(v) = row.get(&k) {
            x[p] = v.clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    #[test]
    fn rank_and_null_space() {
        let m = Matrix::from_dense(3, &[vec![g(1), g(2), g(3)], vec![g(2), g(4), g(6)], vec![g(0), g(1), g(1)]]);
        assert_eq!(m.rank(), 2);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).iter().all(GaussianRational::is_zero));
    }

    #[test]
    fn complex_entries() {
        let i = GaussianRational::i();
        let m = Matrix::from_dense(2, &[vec![i.clone(), g(1)]]);
        let ns = m.null_space();
        assert_eq!(ns, vec![vec![i, g(1)]]);
    }

    #[test]
    fn solve_unique_and_inconsistent() {
        let cols = vec![vec![g(1), g(0), g(1)], vec![g(0), g(1), g(1)]];
        assert_eq!(solve_in_span(&cols, &[g(2), g(3), g(5)]), Some(vec![g(2), g(3)]));
        assert_eq!(solve_in_span(&cols, &[g(2), g(3), g(4)]), None);
    }

    #[test]
    fn reduced_form_is_canonical() {
        let a = row_reduce(2, &[vec![g(2), g(4)], vec![g(1), g(3)]]);
        assert_eq!(a, vec![vec![g(1), g(0)], vec![g(0), g(1)]]);
    }
}
