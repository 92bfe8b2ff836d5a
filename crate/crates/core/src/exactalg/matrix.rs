use std::collections::BTreeMap;

use super::Rational;
use crate::error::{Error, Result};

/// Sparse vector: index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Rational>;

/// Sparse rational matrix with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SignedMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SignedMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SignedMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = SignedMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::invalid("ragged matrix rows"));
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&v| Rational::int(v)).collect()).collect();
        SignedMatrix::from_dense(&dense).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        let cur = self.get(i, j) + v;
        self.set(i, j, cur);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut t = SignedMatrix::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = SignedMatrix::zeros(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            out.set(i, j, v * c);
        }
        out
    }

    pub fn mul(&self, other: &SignedMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::invalid("matrix shapes do not compose"));
        }
        let other_rows = other.sparse_rows();
        let mut out = SignedMatrix::zeros(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for (&j, b) in &other_rows[k] {
                out.add_to(i, j, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            rows[i].insert(j, v.clone());
        }
        rows
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn rank(&self) -> usize {
        if self.cols < 64 && self.rows < 64 {
            dense_rank(self.to_dense())
        } else {
            let mut e = Echelon::new(self.cols);
            for r in self.sparse_rows() {
                e.insert(r);
            }
            e.rank()
        }
    }

    /// Rank and a basis of the right kernel `{x : M x = 0}`.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Rational>>) {
        let mut e = Echelon::new(self.cols);
        for r in self.sparse_rows() {
            e.insert(r);
        }
        (e.rank(), e.kernel_basis())
    }
}

/// Rank by dense Gaussian elimination; used for narrow matrices.
pub fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip().expect("nonzero pivot");
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                for k in c..cols {
                    if !m[rank][k].is_zero() {
                        let delta = &f * &m[rank][k];
                        m[r][k] -= delta;
                    }
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Incrementally maintained reduced row echelon basis of a row space.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    width: usize,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Eliminates every pivot coordinate of `v`.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let hits: Vec<usize> = v.keys().copied().filter(|k| self.pivot_row.contains_key(k)).collect();
        for p in hits {
            let Some(c) = v.get(&p).cloned() else { continue };
            let row = &self.rows[self.pivot_row[&p]];
            for (k, a) in row {
                let entry = v.entry(*k).or_insert_with(Rational::zero);
                *entry -= &c * a;
                if entry.is_zero() {
                    v.remove(k);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns true when the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.recip().expect("nonzero lead");
        let v: SparseVec = v.into_iter().map(|(k, a)| (k, a * &inv)).collect();
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(&p).cloned() {
                for (k, a) in &v {
                    let entry = row.entry(*k).or_insert_with(Rational::zero);
                    *entry -= &c * a;
                    if entry.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(v);
        true
    }

    /// Basis of `{x : r . x = 0 for every row r}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for f in 0..self.width {
            if self.pivot_row.contains_key(&f) {
                continue;
            }
            let mut x = vec![Rational::zero(); self.width];
            x[f] = Rational::one();
            for (&p, &ri) in &self.pivot_row {
                if let Some(a) = self.rows[ri].get(&f) {
                    x[p] = -a;
                }
            }
            out.push(x);
        }
        out
    }

    /// Non-pivot coordinates: a basis of the quotient of the ambient space by the span.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.width).filter(|c| !self.pivot_row.contains_key(c)).collect()
    }

    pub fn basis_rows(&self) -> &[SparseVec] {
        &self.rows
    }
}

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, a)| (i, a.clone())).collect()
}

pub fn to_dense(v: &SparseVec, width: usize) -> Vec<Rational> {
    let mut d = vec![Rational::zero(); width];
    for (k, a) in v {
        d[*k] = a.clone();
    }
    d
}

/// Inverse of a square dense matrix, or `None` when it is singular.
pub fn dense_inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip().ok()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let c = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &c * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{f : f^T P v = 0 for all v in the subspace}` for a nondegenerate pairing `P`.
pub fn annihilator(subspace: &[Vec<Rational>], ambient: usize, pairing: &SignedMatrix) -> Result<Vec<Vec<Rational>>> {
    if pairing.rows() != ambient || pairing.cols() != ambient {
        return Err(Error::invalid("pairing must be square of the ambient dimension"));
    }
    if pairing.rank() != ambient {
        return Err(Error::invalid("degenerate pairing"));
    }
    let mut e = Echelon::new(ambient);
    for v in subspace {
        if v.len() != ambient {
            return Err(Error::invalid("subspace vector has wrong length"));
        }
        e.insert(to_sparse(&pairing.apply(v)));
    }
    Ok(e.kernel_basis())
}
