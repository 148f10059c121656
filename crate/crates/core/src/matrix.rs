//! Dense matrices over an exact field and the elimination routines built on them.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors; `height` is needed when
    /// `columns` is empty.
    pub fn from_columns(height: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(height, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), height);
            for (r, v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<F> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape {:?} * {:?}", self.shape(), other.shape());
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block matrix from a grid; every block in a block row shares its row
    /// count and every block in a block column its column count.
    pub fn block(grid: &[Vec<Matrix<F>>]) -> Self {
        let row_heights: Vec<usize> = grid.iter().map(|row| row[0].rows).collect();
        let col_widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        let mut m = Self::zeros(row_heights.iter().sum(), col_widths.iter().sum());
        let mut r0 = 0;
        for (i, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (j, b) in row.iter().enumerate() {
                assert_eq!(b.shape(), (row_heights[i], col_widths[j]), "block shape");
                m.paste(r0, c0, b);
                c0 += col_widths[j];
            }
            r0 += row_heights[i];
        }
        m
    }

    pub fn paste(&mut self, r0: usize, c0: usize, b: &Self) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    /// Reduced row echelon form together with pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).inv().expect("nonzero pivot");
            if !inv.is_one() {
                for c in col..self.cols {
                    let idx = row * self.cols + c;
                    self.data[idx] = self.data[idx].mul(&inv);
                }
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let pv = &self.data[row * self.cols + c];
                    if pv.is_zero() {
                        continue;
                    }
                    let delta = factor.mul(pv);
                    let idx = r * self.cols + c;
                    self.data[idx] = self.data[idx].sub(&delta);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Basis of the right null space, as the columns of the returned matrix.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, F::one());
            for (i, &p) in pivots.iter().enumerate() {
                let v = r.get(i, f);
                if !v.is_zero() {
                    k.set(p, j, v.neg());
                }
            }
        }
        k
    }

    /// Some `X` with `self * X = rhs`, if one exists.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, r.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(n)).rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] >= n) {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Indices of a maximal independent set of columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    pub fn column_space(&self) -> Self {
        let idx = self.independent_columns();
        self.select_columns(&idx)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Quotient of `F^n` by the column span of `sub`: returns `(q, s)` with
/// `q * sub = 0`, `q * s = I` and `ker q = span(sub)`.
pub fn quotient_maps<F: Field>(n: usize, sub: &Matrix<F>) -> (Matrix<F>, Matrix<F>) {
    assert_eq!(sub.rows(), n);
    let basis = sub.column_space();
    let k = basis.cols();
    // Extend by standard vectors.
    let ext = basis.hstack(&Matrix::identity(n));
    let idx = ext.independent_columns();
    debug_assert_eq!(idx.len(), n);
    let full = ext.select_columns(&idx);
    let inv = full.inverse().expect("extended basis is invertible");
    let q = inv.submatrix(k, 0, n - k, n);
    let s = full.submatrix(0, k, n, n - k);
    (q, s)
}

/// Solves `b * x = v` repeatedly for a fixed `b`.
#[derive(Clone, Debug)]
pub struct Solver<F: Field> {
    transform: Matrix<F>,
    pivots: Vec<usize>,
    cols: usize,
}

impl<F: Field> Solver<F> {
    pub fn new(b: &Matrix<F>) -> Self {
        let n = b.rows();
        let (r, pivots) = b.hstack(&Matrix::identity(n)).rref();
        let pivots: Vec<usize> = pivots.into_iter().filter(|&p| p < b.cols()).collect();
        let transform = r.submatrix(0, b.cols(), n, n);
        Solver { transform, pivots, cols: b.cols() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates of `v` in the columns of `b` (free variables set to zero),
    /// or `None` when `v` is outside the column span.
    pub fn solve(&self, v: &[F]) -> Option<Vec<F>> {
        let w = self.transform.mul_vec(v);
        if w[self.pivots.len()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = w[i].clone();
        }
        Some(x)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let w = self.transform.mul_vec(v);
        w[self.pivots.len()..].iter().all(F::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type M = Matrix<Rational>;

    #[test]
    fn rank_nullity() {
        let a = M::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = M::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let b = M::from_i64_rows(&[&[3], &[2]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let singular = M::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&M::from_i64_rows(&[&[1], &[0]])).is_none());
    }

    #[test]
    fn quotient_maps_split() {
        let sub = M::from_i64_rows(&[&[1], &[1], &[0]]);
        let (q, s) = quotient_maps(3, &sub);
        assert!(q.mul(&sub).is_zero());
        assert!(q.mul(&s).is_identity());
        assert_eq!(q.rows(), 2);
    }

    #[test]
    fn solver_membership() {
        let b = M::from_i64_rows(&[&[1, 0], &[0, 1], &[1, 1]]);
        let s = Solver::new(&b);
        let v: Vec<Rational> = [2, 3, 5].iter().map(|&x| Rational::from_i64(x)).collect();
        assert_eq!(s.solve(&v).unwrap(), vec![Rational::from_i64(2), Rational::from_i64(3)]);
        let w: Vec<Rational> = [2, 3, 4].iter().map(|&x| Rational::from_i64(x)).collect();
        assert!(s.solve(&w).is_none());
    }
}
