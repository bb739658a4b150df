//! Exact integer linear algebra: determinants, Smith normal form, coset
//! representatives of `Z^n / B Z^n` and rational solves.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type ZVector = Vec<BigInt>;
pub type QVector = Vec<BigRational>;

/// A dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, value: impl Into<BigInt>) -> Self {
        let v = value.into();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn diag<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone().into();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n_cols), "ragged rows");
        IntMatrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.iter().flatten().map(|x| x.clone().into()).collect(),
        }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> ZVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> ZVector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_qvec(&self, v: &[BigRational]) -> QVector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + b * a)
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = v / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    /// Exact inverse over the rationals, row-major.
    pub fn inverse_rational(&self) -> Result<Vec<QVector>> {
        assert!(self.is_square());
        let n = self.rows;
        let cols = (0..n)
            .map(|j| {
                let e: QVector = (0..n)
                    .map(|i| BigRational::from_integer(BigInt::from((i == j) as i32)))
                    .collect();
                solve_rational(self, &e)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect())
    }

    /// Inverse of a unimodular matrix, or `None` when `|det| != 1`.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.det().abs().is_one() {
            return None;
        }
        let inv = self.inverse_rational().ok()?;
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for (i, row) in inv.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                debug_assert!(x.is_integer());
                out[(i, j)] = x.to_integer();
            }
        }
        Some(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(r, j)]);
            self[(r, j)] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self[(i, c)]);
            self[(i, c)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `u · M · v = d` with `u`, `v` unimodular and `d` diagonal,
/// `d_1 | d_2 | ...`, all `d_i ≥ 0`. `u_inv` is kept alongside `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> ZVector {
        (0..self.d.n_rows()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form of a square matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    assert!(m.is_square(), "smith_normal_form requires a square matrix");
    let n = m.n_rows();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);

    // Row operation E applied as d <- E d, u <- E u, u_inv <- u_inv E^{-1}.
    let row_add = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, dst, src, k: &BigInt| {
        d.add_row(dst, src, k);
        u.add_row(dst, src, k);
        ui.add_col(src, dst, &-k);
    };
    let row_swap = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, a, b| {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        ui.swap_cols(a, b);
    };

    for t in 0..n {
        loop {
            // Smallest nonzero pivot in the trailing block.
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !d[(i, j)].is_zero())
                .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()));
            let Some((pi, pj)) = pivot else {
                break;
            };
            row_swap(&mut d, &mut u, &mut u_inv, t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..n {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_add(&mut d, &mut u, &mut u_inv, i, t, &-q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col(j, t, &-&q);
                v.add_col(j, t, &-q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into row t and retry.
            let offending = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match offending {
                Some((i, _)) => row_add(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SnfDecomposition { u, u_inv, d, v }
}

/// Upper-triangular column Hermite form `H = B V` (`V` unimodular) with
/// positive diagonal, so that `H Z^n = B Z^n`. Off-diagonal entries are not
/// reduced.
pub fn column_hermite_form(b: &IntMatrix) -> Result<IntMatrix> {
    if !b.is_square() {
        return Err(Error::domain("Hermite form needs a square matrix"));
    }
    if b.det().is_zero() {
        return Err(Error::SingularLattice);
    }
    let n = b.n_rows();
    let mut h = b.clone();
    // Clear row i left of the diagonal, from the bottom row up; columns
    // 0..=i already vanish below row i.
    for i in (0..n).rev() {
        loop {
            let pivot = (0..=i)
                .filter(|&j| !h[(i, j)].is_zero())
                .min_by(|&x, &y| h[(i, x)].abs().cmp(&h[(i, y)].abs()))
                .expect("nonsingular matrix has a nonzero entry");
            h.swap_cols(pivot, i);
            let mut done = true;
            for j in 0..i {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(i, i)]);
                h.add_col(j, i, &-q);
                done &= h[(i, j)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(i, i)].is_negative() {
            h.negate_col(i);
        }
    }
    Ok(h)
}

/// Representatives of `Z^n / B Z^n`, one per class: the box
/// `Π [0, H_ii)` of the column Hermite form, in lexicographic order.
pub fn coset_representatives(b: &IntMatrix) -> Result<Vec<ZVector>> {
    if !b.is_square() {
        return Err(Error::domain("coset representatives need a square matrix"));
    }
    let h = column_hermite_form(b)?;
    let n = h.n_rows();
    let diag: ZVector = (0..n).map(|i| h[(i, i)].clone()).collect();
    let mut reps = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    loop {
        reps.push(x.clone());
        // Lexicographic odometer, last coordinate fastest.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(reps);
            }
            pos -= 1;
            x[pos] += 1;
            if x[pos] < diag[pos] {
                break;
            }
            x[pos] = BigInt::zero();
        }
    }
}

/// Exact solution of `B x = v` over the rationals.
pub fn solve_rational(b: &IntMatrix, v: &[BigRational]) -> Result<QVector> {
    if !b.is_square() || b.n_rows() != v.len() {
        return Err(Error::domain("dimension mismatch in solve_rational"));
    }
    let n = v.len();
    let mut a: Vec<QVector> = (0..n)
        .map(|i| {
            let mut row: QVector = b
                .row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularLattice)?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let pivot_row = a[col].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    Ok(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, by congruence
/// (symmetric Gaussian elimination).
pub fn symmetric_inertia(m: &IntMatrix) -> (usize, usize, usize) {
    assert!(m.is_square() && *m == m.transpose(), "inertia of non-symmetric matrix");
    let n = m.n_rows();
    let mut a: Vec<QVector> = (0..n)
        .map(|i| m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row/col k += row/col j gives a_kk = 2 a_kj != 0.
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                k += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for row in a.iter_mut().skip(k) {
                let v = &f * &row[k];
                row[i] -= v;
            }
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

/// Whether `v ∈ B Z^n`.
pub fn in_lattice(b: &IntMatrix, v: &[BigInt]) -> Result<bool> {
    let q: QVector = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let x = solve_rational(b, &q)?;
    Ok(x.iter().all(|c| c.is_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zv(v: &[i64]) -> ZVector {
        v.iter().map(|&x| x.into()).collect()
    }

    fn qv(v: &[(i64, i64)]) -> QVector {
        v.iter()
            .map(|&(n, d)| BigRational::new(n.into(), d.into()))
            .collect()
    }

    fn b5() -> IntMatrix {
        IntMatrix::from_i64(2, 2, &[-4, 1, -1, -1])
    }

    fn check_snf(m: &IntMatrix, s: &SnfDecomposition) {
        let n = m.n_rows();
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(n));
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
            assert!(!s.d[(i, i)].is_negative());
            if i + 1 < n && !s.d[(i, i)].is_zero() {
                assert!(s.d[(i + 1, i + 1)].is_multiple_of(&s.d[(i, i)]));
            }
            if i + 1 < n && s.d[(i, i)].is_zero() {
                assert!(s.d[(i + 1, i + 1)].is_zero());
            }
        }
    }

    #[test]
    fn snf_examples() {
        let m = IntMatrix::diag(&[2, 6]);
        let s = smith_normal_form(&m);
        check_snf(&m, &s);
        assert_eq!(s.diagonal(), zv(&[2, 6]));

        let s = smith_normal_form(&b5());
        check_snf(&b5(), &s);
        assert_eq!(s.diagonal(), zv(&[1, 5]));

        let z = IntMatrix::zeros(2, 2);
        let s = smith_normal_form(&z);
        assert_eq!(s.d, z);
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn determinant() {
        assert_eq!(b5().det(), 5.into());
        assert_eq!(IntMatrix::from_i64(3, 3, &[0, 1, 2, 1, 0, 3, 4, -3, 8]).det(), (-2).into());
        assert_eq!(IntMatrix::from_i64(2, 2, &[1, 2, 2, 4]).det(), 0.into());
    }

    #[test]
    fn coset_examples() {
        assert_eq!(coset_representatives(&IntMatrix::identity(2)).unwrap(), vec![zv(&[0, 0])]);

        let reps = coset_representatives(&b5()).unwrap();
        assert_eq!(reps.len(), 5);
        for (i, x) in reps.iter().enumerate() {
            for y in &reps[i + 1..] {
                let diff: ZVector = x.iter().zip(y).map(|(a, b)| a - b).collect();
                assert!(!in_lattice(&b5(), &diff).unwrap());
            }
        }

        let reps = coset_representatives(&IntMatrix::diag(&[2, 3])).unwrap();
        let expect: Vec<ZVector> = [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2]]
            .iter()
            .map(|p| zv(p))
            .collect();
        assert_eq!(reps, expect);

        assert_eq!(
            coset_representatives(&IntMatrix::from_i64(2, 2, &[1, 2, 2, 4])),
            Err(Error::SingularLattice)
        );

        // c = 1 monodromies get representatives (σ, 0).
        let expect: Vec<ZVector> = (0..5).map(|s| zv(&[s, 0])).collect();
        assert_eq!(coset_representatives(&b5()).unwrap(), expect);
    }

    #[test]
    fn hermite_form_spans_same_lattice() {
        let b = IntMatrix::from_i64(3, 3, &[2, 7, -3, 4, 1, 5, -6, 0, 9]);
        let h = column_hermite_form(&b).unwrap();
        assert_eq!(h.det().abs(), b.det().abs());
        for i in 0..3 {
            assert!(h[(i, i)].is_positive());
            for j in 0..i {
                assert!(h[(i, j)].is_zero());
            }
            assert!(in_lattice(&b, &h.column(i)).unwrap());
            assert!(in_lattice(&h, &b.column(i)).unwrap());
        }
    }

    #[test]
    fn lattice_membership() {
        assert!(in_lattice(&IntMatrix::identity(2), &zv(&[5, 7])).unwrap());
        assert!(in_lattice(&b5(), &zv(&[5, 0])).unwrap());
        assert!(!in_lattice(&b5(), &zv(&[1, 0])).unwrap());
        assert_eq!(
            in_lattice(&IntMatrix::zeros(2, 2), &zv(&[1, 0])),
            Err(Error::SingularLattice)
        );
    }

    #[test]
    fn inertia() {
        assert_eq!(symmetric_inertia(&IntMatrix::diag(&[2, -3, 0])), (1, 1, 1));
        assert_eq!(symmetric_inertia(&IntMatrix::from_i64(2, 2, &[0, 1, 1, 0])), (1, 1, 0));
        assert_eq!(symmetric_inertia(&IntMatrix::from_i64(2, 2, &[2, -1, -1, 2])), (2, 0, 0));
        assert_eq!(symmetric_inertia(&IntMatrix::from_i64(2, 2, &[-2, 1, 1, -2])), (0, 2, 0));
        assert_eq!(
            symmetric_inertia(&IntMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 5])),
            (2, 1, 0)
        );
    }

    #[test]
    fn rational_solves() {
        let v = qv(&[(3, 7), (-2, 1)]);
        assert_eq!(solve_rational(&IntMatrix::identity(2), &v).unwrap(), v);
        assert_eq!(
            solve_rational(&b5(), &qv(&[(1, 1), (0, 1)])).unwrap(),
            qv(&[(-1, 5), (1, 5)])
        );
        let m = IntMatrix::from_i64(2, 2, &[2, -1, 1, -1]);
        assert_eq!(
            solve_rational(&m, &qv(&[(0, 1), (0, 1)])).unwrap(),
            qv(&[(0, 1), (0, 1)])
        );
        assert_eq!(
            solve_rational(&IntMatrix::zeros(2, 2), &qv(&[(1, 1), (0, 1)])),
            Err(Error::SingularLattice)
        );
    }

    fn arb_matrix(max_n: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            prop::collection::vec(-50i64..=50, n * n)
                .prop_map(move |e| IntMatrix::from_i64(n, n, &e))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn snf_round_trip(m in arb_matrix(4)) {
            let s = smith_normal_form(&m);
            check_snf(&m, &s);
            let prod: BigInt = s.diagonal().iter().product();
            prop_assert_eq!(prod, m.det().abs());
        }

        #[test]
        fn coset_count_and_completeness(
            e in prop::collection::vec(-8i64..=8, 4),
            probes in prop::collection::vec((-100i64..100, -100i64..100), 10),
        ) {
            let b = IntMatrix::from_i64(2, 2, &e);
            let det = b.det();
            prop_assume!(!det.is_zero() && det.abs() <= BigInt::from(200));
            let reps = coset_representatives(&b).unwrap();
            prop_assert_eq!(BigInt::from(reps.len()), det.abs());
            for (x, y) in probes {
                let hits = reps
                    .iter()
                    .filter(|r| in_lattice(&b, &[BigInt::from(x) - &r[0], BigInt::from(y) - &r[1]]).unwrap())
                    .count();
                prop_assert_eq!(hits, 1);
            }
        }
    }
}
