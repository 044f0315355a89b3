use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{bareiss_det, LinAlgError, Rat, RatMatrix};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `D`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: alloc::vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self::from_fn(rows, cols, |i, j| BigInt::from(entries[i * cols + j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch("inner dimensions differ"));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| (0..self.cols).map(|k| &self[(i, k)] * &rhs[(k, j)]).sum()))
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| Rat::from_integer(self[(i, j)].clone()))
    }

    pub fn det(&self) -> Result<BigInt, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(bareiss_det(self.data.clone(), self.rows))
    }

    pub fn rank(&self) -> usize {
        self.to_rat().rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += factor * row[source]`.
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(source, j)] * factor;
            self[(target, j)] += v;
        }
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, source)] * factor;
            self[(i, target)] += v;
        }
    }

    /// Smith normal form by repeated Euclidean pivoting.
    pub fn smith_normal_form(&self) -> SmithForm {
        let (r, c) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = IntMatrix::identity(r);
        let mut v = IntMatrix::identity(c);
        for t in 0..r.min(c) {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..r {
                    for j in t..c {
                        let x = &d[(i, j)];
                        if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return SmithForm { u, d, v };
                };
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);

                let mut clean = true;
                for i in t + 1..r {
                    let q = &d[(i, t)] / &d[(t, t)];
                    if !q.is_zero() {
                        let q = -q;
                        d.add_row(i, t, &q);
                        u.add_row(i, t, &q);
                    }
                    clean &= d[(i, t)].is_zero();
                }
                for j in t + 1..c {
                    let q = &d[(t, j)] / &d[(t, t)];
                    if !q.is_zero() {
                        let q = -q;
                        d.add_col(j, t, &q);
                        v.add_col(j, t, &q);
                    }
                    clean &= d[(t, j)].is_zero();
                }
                if !clean {
                    continue;
                }
                let pivot = d[(t, t)].clone();
                let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&d[(i, j)] % &pivot).is_zero()));
                match offender {
                    Some(i) => {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            if d[(t, t)].is_negative() {
                let m1 = -BigInt::one();
                for j in 0..c {
                    d[(t, j)] = &d[(t, j)] * &m1;
                }
                for j in 0..r {
                    u[(t, j)] = &u[(t, j)] * &m1;
                }
            }
        }
        SmithForm { u, d, v }
    }

    /// Index `[Z^rows : L]` of the lattice spanned by the columns, or `None`
    /// when the columns have rank below `rows` (infinite index).
    pub fn column_lattice_index(&self) -> Option<BigInt> {
        if self.rows == 0 {
            return Some(BigInt::one());
        }
        let snf = self.smith_normal_form();
        let f = snf.invariant_factors();
        (f.len() == self.rows).then(|| f.iter().product())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols])).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_diagonal_chain(d: &IntMatrix) -> bool {
        let n = d.rows().min(d.cols());
        let off = (0..d.rows()).all(|i| (0..d.cols()).all(|j| i == j || d[(i, j)].is_zero()));
        let chain = (1..n).all(|i| {
            let (a, b) = (&d[(i - 1, i - 1)], &d[(i, i)]);
            if a.is_zero() {
                b.is_zero()
            } else {
                (b % a).is_zero()
            }
        });
        off && chain && (0..n).all(|i| !d[(i, i)].is_negative())
    }

    #[test]
    fn smith_of_diag_2_3() {
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let s = a.smith_normal_form();
        assert_eq!(s.invariant_factors(), alloc::vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
    }

    #[test]
    fn zero_and_proportional() {
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(z.smith_normal_form().rank(), 0);
        assert_eq!(z.rank(), 0);
        assert_eq!(IntMatrix::from_i64(2, 2, &[1, 2, 2, 4]).rank(), 1);
        assert_eq!(z.column_lattice_index(), None);
        assert_eq!(IntMatrix::zeros(0, 0).column_lattice_index(), Some(BigInt::one()));
    }

    fn int_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v))
        })
    }

    proptest! {
        #[test]
        fn smith_decomposition_is_valid(a in int_matrix(4)) {
            let s = a.smith_normal_form();
            prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
            prop_assert!(s.u.det().unwrap().abs().is_one());
            prop_assert!(s.v.det().unwrap().abs().is_one());
            prop_assert!(is_diagonal_chain(&s.d));
            prop_assert_eq!(s.rank(), a.rank());
        }

        #[test]
        fn smith_invariant_under_unimodular_change(a in int_matrix(3), shears in proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..6)) {
            let mut b = a.clone();
            for (i, j, f) in shears {
                let f = BigInt::from(f);
                if i != j && i < b.rows && j < b.rows {
                    b.add_row(i, j, &f);
                }
                if i != j && i < b.cols && j < b.cols {
                    b.add_col(i, j, &f);
                }
            }
            prop_assert_eq!(a.smith_normal_form().d, b.smith_normal_form().d);
        }

        #[test]
        fn full_rank_index_is_abs_det(v in proptest::collection::vec(-5i64..=5, 9)) {
            let a = IntMatrix::from_i64(3, 3, &v);
            let det = a.det().unwrap();
            match a.column_lattice_index() {
                Some(idx) => prop_assert_eq!(idx, det.abs()),
                None => prop_assert!(det.is_zero()),
            }
        }
    }
}
