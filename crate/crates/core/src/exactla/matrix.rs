use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use super::{bareiss_det, LinAlgError, Rat};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: alloc::vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::DimensionMismatch("ragged rows"));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Integer entries, row-major. Convenience for tests and fixed data.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self::from_fn(rows, cols, |i, j| super::rat_int(entries[i * cols + j]))
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn column_vector(entries: &[Rat]) -> Self {
        RatMatrix { rows: entries.len(), cols: 1, data: entries.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch("inner dimensions differ"));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &RatMatrix, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<RatMatrix, LinAlgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinAlgError::DimensionMismatch("shapes differ"));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Submatrix keeping the listed rows and columns, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Block `[[self, right], [below, corner]]`.
    pub fn block(p: &RatMatrix, q: &RatMatrix, r: &RatMatrix, s: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        if p.rows != q.rows || r.rows != s.rows || p.cols != r.cols || q.cols != s.cols {
            return Err(LinAlgError::DimensionMismatch("block shapes are inconsistent"));
        }
        let (top, left) = (p.rows, p.cols);
        Ok(Self::from_fn(top + r.rows, left + q.cols, |i, j| match (i < top, j < left) {
            (true, true) => p[(i, j)].clone(),
            (true, false) => q[(i, j - left)].clone(),
            (false, true) => r[(i - top, j)].clone(),
            (false, false) => s[(i - top, j - left)].clone(),
        }))
    }

    /// Exact determinant by fraction-free elimination. The empty matrix has
    /// determinant one.
    pub fn det(&self) -> Result<Rat, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(bareiss_det(self.data.clone(), self.rows))
    }

    /// Solves `self * x = rhs` exactly by Gauss-Jordan elimination.
    pub fn solve(&self, rhs: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if rhs.rows != self.rows {
            return Err(LinAlgError::DimensionMismatch("right-hand side has wrong row count"));
        }
        let n = self.rows;
        let w = n + rhs.cols;
        let mut a = Self::from_fn(n, w, |i, j| if j < n { self[(i, j)].clone() } else { rhs[(i, j - n)].clone() });
        for k in 0..n {
            let p = (k..n).find(|&i| !a[(i, k)].is_zero()).ok_or(LinAlgError::SingularMatrix)?;
            if p != k {
                for j in 0..w {
                    a.data.swap(k * w + j, p * w + j);
                }
            }
            let inv = a[(k, k)].recip();
            for j in k..w {
                a[(k, j)] = &a[(k, j)] * &inv;
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in k..w {
                    let v = &a[(k, j)] * &f;
                    a[(i, j)] -= v;
                }
            }
        }
        Ok(Self::from_fn(n, rhs.cols, |i, j| a[(i, n + j)].clone()))
    }

    pub fn inverse(&self) -> Result<RatMatrix, LinAlgError> {
        self.solve(&Self::identity(self.rows))
    }

    /// Rank over `Q`.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let (r, c) = (a.rows, a.cols);
        let mut rank = 0;
        for col in 0..c {
            let Some(p) = (rank..r).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..c {
                    a.data.swap(rank * c + j, p * c + j);
                }
            }
            for i in rank + 1..r {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = &a[(i, col)] / &a[(rank, col)];
                for j in col..c {
                    let v = &a[(rank, j)] * &f;
                    a[(i, j)] -= v;
                }
            }
            rank += 1;
            if rank == r {
                break;
            }
        }
        rank
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinants of the leading `1x1, 2x2, ..., nxn` blocks.
    pub fn leading_principal_minors(&self) -> Vec<Rat> {
        let n = self.rows.min(self.cols);
        (1..=n)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.select(&idx, &idx).det().expect("square by construction")
            })
            .collect()
    }

    /// Sylvester's criterion on a symmetric matrix.
    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric() && self.leading_principal_minors().iter().all(Signed::is_positive)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Both sides of the Schur complement identity for a 2x2 block matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurCheck {
    /// `det [[P, Q], [R, S]]` computed directly.
    pub assembled: Rat,
    /// `det P * det(S - R P^-1 Q)`.
    pub factored: Rat,
}

impl SchurCheck {
    pub fn holds(&self) -> bool {
        self.assembled == self.factored
    }
}

/// Evaluates `det [[P, Q], [R, S]]` both directly and through the Schur
/// complement of `P`. `P` must be invertible.
pub fn schur_minor_oracle(
    p: &RatMatrix,
    q: &RatMatrix,
    r: &RatMatrix,
    s: &RatMatrix,
) -> Result<SchurCheck, LinAlgError> {
    let assembled = RatMatrix::block(p, q, r, s)?.det()?;
    let det_p = p.det()?;
    if det_p.is_zero() {
        return Err(LinAlgError::SingularMatrix);
    }
    let complement = s.sub(&r.mul(&p.solve(q)?)?)?;
    Ok(SchurCheck { assembled, factored: det_p * complement.det()? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, rat_int};
    use alloc::vec;
    use proptest::prelude::*;

    /// Leibniz expansion over all permutations; independent of elimination.
    fn leibniz(m: &RatMatrix) -> Rat {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let mut total = Rat::zero();
        for p in perms(n) {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term = Rat::one();
            for (i, &pi) in p.iter().enumerate() {
                term *= &m[(i, pi)];
            }
            if inversions % 2 == 1 {
                term = -term;
            }
            total += term;
        }
        total
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
    }

    fn square(max: usize) -> impl Strategy<Value = RatMatrix> {
        (0..=max).prop_flat_map(|n| {
            proptest::collection::vec(small_rat(), n * n)
                .prop_map(move |v| RatMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
        })
    }

    #[test]
    fn diagonal_and_empty_determinants() {
        assert_eq!(RatMatrix::from_i64(2, 2, &[2, 0, 0, 3]).det().unwrap(), rat_int(6));
        assert_eq!(RatMatrix::zeros(0, 0).det().unwrap(), rat_int(1));
        assert!(matches!(RatMatrix::zeros(2, 3).det(), Err(LinAlgError::NotSquare { .. })));
    }

    #[test]
    fn solve_two_by_two() {
        let a = RatMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let b = RatMatrix::from_i64(2, 1, &[1, 0]);
        assert_eq!(a.solve(&b).unwrap(), RatMatrix::from_i64(2, 1, &[1, -1]));
        let id = RatMatrix::identity(3);
        let v = RatMatrix::column_vector(&[rat(1, 2), rat(-3, 1), rat(7, 5)]);
        assert_eq!(id.solve(&v).unwrap(), v);
    }

    #[test]
    fn singular_solve_is_rejected() {
        let a = RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(a.inverse(), Err(LinAlgError::SingularMatrix));
        assert_eq!(a.rank(), 1);
        assert_eq!(RatMatrix::zeros(3, 2).rank(), 0);
    }

    #[test]
    fn schur_block_diagonal_and_scalar_pivot() {
        let p = RatMatrix::from_i64(2, 2, &[1, 2, 3, 5]);
        let s = RatMatrix::from_i64(1, 1, &[4]);
        let z12 = RatMatrix::zeros(2, 1);
        let z21 = RatMatrix::zeros(1, 2);
        let c = schur_minor_oracle(&p, &z12, &z21, &s).unwrap();
        assert!(c.holds());
        assert_eq!(c.factored, p.det().unwrap() * rat_int(4));

        let one = RatMatrix::from_i64(1, 1, &[1]);
        let q = RatMatrix::from_i64(1, 1, &[3]);
        let r = RatMatrix::from_i64(1, 1, &[5]);
        let s = RatMatrix::from_i64(1, 1, &[2]);
        let c = schur_minor_oracle(&one, &q, &r, &s).unwrap();
        assert_eq!(c.assembled, rat_int(2 - 15));
        assert!(c.holds());
    }

    proptest! {
        #[test]
        fn bareiss_matches_leibniz(m in square(4)) {
            prop_assert_eq!(m.det().unwrap(), leibniz(&m));
        }

        #[test]
        fn inverse_times_matrix_is_identity(m in square(4)) {
            if let Ok(inv) = m.inverse() {
                prop_assert_eq!(inv.mul(&m).unwrap(), RatMatrix::identity(m.rows()));
            } else {
                prop_assert!(m.det().unwrap().is_zero());
            }
        }

        #[test]
        fn schur_matches_assembled(p in square(3), extra in 1usize..3, fill in proptest::collection::vec(small_rat(), 40)) {
            let n = p.rows();
            let mut it = fill.into_iter().cycle();
            let q = RatMatrix::from_fn(n, extra, |_, _| it.next().unwrap());
            let r = RatMatrix::from_fn(extra, n, |_, _| it.next().unwrap());
            let s = RatMatrix::from_fn(extra, extra, |_, _| it.next().unwrap());
            match schur_minor_oracle(&p, &q, &r, &s) {
                Ok(c) => prop_assert!(c.holds()),
                Err(e) => prop_assert_eq!(e, LinAlgError::SingularMatrix),
            }
        }
    }
}
