//! Dense exact linear algebra over the rationals.

use num_traits::{Signed, Zero};

use crate::rational::{one, zero, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from integer rows.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rational::int(v)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(sel) = (pr..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, sel);
            let inv = m.get(pr, c).recip();
            for k in c..m.cols {
                let v = m.get(pr, k) * &inv;
                m.set(pr, k, v);
            }
            for r in 0..m.rows {
                if r == pr || m.get(r, c).is_zero() {
                    continue;
                }
                let f = m.get(r, c).clone();
                for k in c..m.cols {
                    let v = m.get(r, k) - &f * m.get(pr, k);
                    m.set(r, k, v);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
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
        self.rref().1.len()
    }

    /// Basis of the right kernel, itself in reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<Vec<Rational>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![zero(); self.cols];
                v[f] = one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect();
        if raw.is_empty() {
            return raw;
        }
        let (red, piv) = Matrix::from_rows(raw).rref();
        (0..piv.len()).map(|i| red.row(i).to_vec()).collect()
    }

    /// Basis of the row space, in reduced row echelon form.
    pub fn row_space(&self) -> Vec<Vec<Rational>> {
        let (red, piv) = self.rref();
        (0..piv.len()).map(|i| red.row(i).to_vec()).collect()
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = one();
        for c in 0..m.cols {
            let Some(sel) = (c..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                return zero();
            };
            if sel != c {
                m.swap_rows(sel, c);
                det = -det;
            }
            let p = m.get(c, c).clone();
            det *= &p;
            for r in c + 1..m.rows {
                if m.get(r, c).is_zero() {
                    continue;
                }
                let f = m.get(r, c) / &p;
                for k in c..m.cols {
                    let v = m.get(r, k) - &f * m.get(c, k);
                    m.set(r, k, v);
                }
            }
        }
        det
    }

    /// Solves `self · x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, self.cols);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, piv) = aug.rref();
        if piv.len() != self.cols || piv.iter().any(|&p| p >= self.cols) {
            return None;
        }
        Some(
            (0..self.cols)
                .map(|r| red.get(r, self.cols).clone())
                .collect(),
        )
    }
}

/// Rank of a family of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank_of(&ext) == rank_of(basis)
}

/// Finds `x` with `m·x = 0` and every `x_i ≥ 1`, or `None` if no such `x` exists.
///
/// Phase one of the simplex method with Bland's rule, on `m·y = -m·1`, `y ≥ 0`.
pub fn positive_kernel_point(m: &Matrix) -> Option<Vec<Rational>> {
    let n = m.ncols();
    let ones = vec![one(); n];
    let rhs: Vec<Rational> = m.mul_vec(&ones).into_iter().map(|v| -v).collect();
    let y = nonnegative_solution(m, &rhs)?;
    Some(y.into_iter().map(|v| v + one()).collect())
}

/// Finds `y ≥ 0` with `m·y = b`, or `None` when infeasible.
pub fn nonnegative_solution(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = m.nrows();
    let n = m.ncols();
    if rows == 0 {
        return Some(vec![zero(); n]);
    }
    // tableau columns: n structural, rows artificial, then rhs
    let width = n + rows + 1;
    let mut t = Matrix::zeros(rows + 1, width);
    for r in 0..rows {
        let flip = b[r].is_negative();
        for c in 0..n {
            let v = if flip {
                -m.get(r, c).clone()
            } else {
                m.get(r, c).clone()
            };
            t.set(r, c, v);
        }
        t.set(r, n + r, one());
        t.set(r, width - 1, b[r].abs());
    }
    // objective row: minimize sum of artificials, written as reduced costs
    for c in 0..width {
        if (n..n + rows).contains(&c) {
            continue;
        }
        let s = (0..rows).fold(zero(), |acc, r| acc + t.get(r, c));
        t.set(rows, c, -s);
    }
    let mut basis: Vec<usize> = (n..n + rows).collect();
    loop {
        let Some(enter) = (0..width - 1).find(|&c| t.get(rows, c).is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..rows {
            let a = t.get(r, enter);
            if a.is_positive() {
                let ratio = t.get(r, width - 1) / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (pr, _) = leave?;
        let inv = t.get(pr, enter).recip();
        for c in 0..width {
            let v = t.get(pr, c) * &inv;
            t.set(pr, c, v);
        }
        for r in 0..=rows {
            if r == pr || t.get(r, enter).is_zero() {
                continue;
            }
            let f = t.get(r, enter).clone();
            for c in 0..width {
                let v = t.get(r, c) - &f * t.get(pr, c);
                t.set(r, c, v);
            }
        }
        basis[pr] = enter;
    }
    if !t.get(rows, width - 1).is_zero() {
        return None;
    }
    let mut y = vec![zero(); n];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < n {
            y[bv] = t.get(r, width - 1).clone();
        }
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn kernel_of_affine_matrix() {
        let a = Matrix::from_i64(&[&[1, 1, 1, 1, 1], &[0, 1, 0, 1, 1], &[0, 0, 1, 1, 2]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinant_and_solve() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 3]]);
        assert_eq!(m.det(), int(5));
        let x = m.solve(&[int(3), int(4)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![int(3), int(4)]);
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]])
            .solve(&[int(1), int(1)])
            .is_none());
    }

    #[test]
    fn positive_kernel() {
        // x1 - x2 = 0 has the positive solution (1,1)
        let m = Matrix::from_i64(&[&[1, -1]]);
        let x = positive_kernel_point(&m).unwrap();
        assert!(m.mul_vec(&x).iter().all(Zero::is_zero));
        // x1 + x2 = 0 has none
        assert!(positive_kernel_point(&Matrix::from_i64(&[&[1, 1]])).is_none());
        // a closing triangle of directions (1,0),(0,1),(-1,-1)
        let m = Matrix::from_i64(&[&[1, 0, -1], &[0, 1, -1]]);
        let x = positive_kernel_point(&m).unwrap();
        assert!(m.mul_vec(&x).iter().all(Zero::is_zero));
    }
}
