//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type Vector = Vec<Rational>;
pub type Matrix = Vec<Vector>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_scaled(acc: &mut [Rational], v: &[Rational], c: &Rational) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += b * c;
        }
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit_vector(n, i)).collect()
}

/// `m * v` for a matrix stored as rows.
pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zero_vector(cols);
            for (k, x) in row.iter().enumerate() {
                add_scaled(&mut out, &b[k], x);
            }
            out
        })
        .collect()
}

pub fn transpose(m: &Matrix, cols: usize) -> Matrix {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn is_zero_matrix(m: &Matrix) -> bool {
    m.iter().all(|r| is_zero_vector(r))
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Matrix) -> (Matrix, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                add_scaled(row, &pivot_row, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &Matrix) -> usize {
    rref(rows.clone()).1.len()
}

/// Basis of `{v : m v = 0}` where `m` has `ncols` columns.
pub fn nullspace(m: &Matrix, ncols: usize) -> Matrix {
    let (rows, pivots) = rref(m.clone());
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = unit_vector(ncols, free);
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// One solution of `m x = b`, if any.
pub fn solve(m: &Matrix, b: &[Rational], ncols: usize) -> Option<Vector> {
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (rows, pivots) = rref(aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zero_vector(ncols);
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Determinant by Gaussian elimination.
pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = -(&row[c] * &inv);
                add_scaled(row, &pivot_row, &f);
            }
        }
    }
    det
}

/// A subspace of `Q^dim` kept in reduced row echelon form.
///
/// Two row spaces are equal iff their echelon matrices are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSpace {
    dim: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn zero(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        RowSpace::span(dim, identity(dim))
    }

    pub fn span(dim: usize, vectors: Matrix) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == dim));
        let (rows, pivots) = rref(vectors);
        RowSpace { dim, rows, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating the pivot columns.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = -r[p].clone();
                add_scaled(&mut r, row, &f);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis; `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        RowSpace::span(self.dim, all)
    }

    pub fn intersection(&self, other: &RowSpace) -> RowSpace {
        // a in self, b in other with a - b = 0
        let mut columns: Matrix = self.rows.clone();
        columns.extend(other.rows.iter().map(|r| r.iter().map(|x| -x.clone()).collect()));
        let eqs = transpose(&columns, self.dim);
        let kernel = nullspace(&eqs, columns.len());
        let vectors = kernel
            .iter()
            .map(|c| {
                let mut v = zero_vector(self.dim);
                for (i, row) in self.rows.iter().enumerate() {
                    add_scaled(&mut v, row, &c[i]);
                }
                v
            })
            .collect();
        RowSpace::span(self.dim, vectors)
    }

    /// Linear functionals vanishing exactly on this space.
    pub fn annihilator(&self) -> Matrix {
        nullspace(&self.rows, self.dim)
    }

    /// Standard unit vectors completing a basis of this space to `Q^dim`.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.pivots.contains(c)).collect()
    }
}
