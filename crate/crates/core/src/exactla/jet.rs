use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rat, RatMatrix, RingElement};

/// Second-order Taylor jet in `n` variables `t_1..t_n`:
/// `value + lin . t + 1/2 t^T hess t`, truncated above degree 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet2 {
    pub value: Rat,
    pub lin: Vec<Rat>,
    /// Symmetric `n x n`, row-major.
    pub hess: Vec<Rat>,
}

impl Jet2 {
    pub fn constant(n: usize, c: Rat) -> Self {
        Jet2 { value: c, lin: alloc::vec![Rat::zero(); n], hess: alloc::vec![Rat::zero(); n * n] }
    }

    /// The coordinate function `t_k`.
    pub fn variable(n: usize, k: usize) -> Self {
        let mut j = Self::constant(n, Rat::zero());
        j.lin[k] = Rat::one();
        j
    }

    pub fn nvars(&self) -> usize {
        self.lin.len()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Jet2 {
            value: &self.value * c,
            lin: self.lin.iter().map(|x| x * c).collect(),
            hess: self.hess.iter().map(|x| x * c).collect(),
        }
    }

    pub fn hessian(&self) -> RatMatrix {
        let n = self.nvars();
        RatMatrix::from_fn(n, n, |i, j| self.hess[i * n + j].clone())
    }

    fn zip(&self, rhs: &Jet2, f: impl Fn(&Rat, &Rat) -> Rat) -> Jet2 {
        assert_eq!(self.nvars(), rhs.nvars(), "jets in different variable counts");
        Jet2 {
            value: f(&self.value, &rhs.value),
            lin: self.lin.iter().zip(&rhs.lin).map(|(a, b)| f(a, b)).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        self.zip(&rhs, |a, b| a + b)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        self.zip(&rhs, |a, b| a - b)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(&-Rat::one())
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        let n = self.nvars();
        assert_eq!(n, rhs.nvars(), "jets in different variable counts");
        let (a, b) = (&self.value, &rhs.value);
        let lin = (0..n).map(|i| a * &rhs.lin[i] + b * &self.lin[i]).collect();
        let mut hess = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                hess.push(
                    a * &rhs.hess[i * n + j]
                        + b * &self.hess[i * n + j]
                        + &self.lin[i] * &rhs.lin[j]
                        + &rhs.lin[i] * &self.lin[j],
                );
            }
        }
        Jet2 { value: a * b, lin, hess }
    }
}

impl RingElement for Jet2 {
    fn zero_like(&self) -> Self {
        Jet2::constant(self.nvars(), Rat::zero())
    }
    fn one_like(&self) -> Self {
        Jet2::constant(self.nvars(), Rat::one())
    }
}
