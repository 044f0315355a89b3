use alloc::vec::Vec;

use super::{Jet2, Rat, RingElement};
use num_traits::One;

/// Coefficients `c_0..c_n` of `det(xI - A) = sum c_i x^(n-i)` for a row-major
/// `n x n` matrix, using only ring operations. `unit` fixes the shape of the
/// ring's identity (needed for jets).
pub fn char_poly_berkowitz<T: RingElement>(a: &[T], n: usize, unit: &T) -> Vec<T> {
    assert_eq!(a.len(), n * n, "entry count does not match shape");
    let one = unit.one_like();
    let zero = unit.zero_like();
    let mut vect = alloc::vec![one.clone()];
    for r in 1..=n {
        // A_r = [[M, C], [R, a_rr]] with M the leading (r-1)x(r-1) block.
        let m = r - 1;
        let at = |i: usize, j: usize| a[i * n + j].clone();
        let mut col = Vec::with_capacity(r + 1);
        col.push(one.clone());
        col.push(-at(m, m));
        // w = M^k C, starting at k = 0.
        let mut w: Vec<T> = (0..m).map(|i| at(i, m)).collect();
        for _ in 2..=r {
            let rw = (0..m).fold(zero.clone(), |s, j| s + at(m, j) * w[j].clone());
            col.push(-rw);
            w = (0..m).map(|i| (0..m).fold(zero.clone(), |s, j| s + at(i, j) * w[j].clone())).collect();
        }
        let next = (0..=r)
            .map(|i| (0..r.min(i + 1)).fold(zero.clone(), |s, j| s + col[i - j].clone() * vect[j].clone()))
            .collect();
        vect = next;
    }
    vect
}

/// Division-free determinant.
pub fn det_berkowitz<T: RingElement>(a: &[T], n: usize, unit: &T) -> T {
    let c = char_poly_berkowitz(a, n, unit).pop().expect("polynomial has n+1 coefficients");
    if n % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Determinant of a matrix of jets in `nvars` variables.
pub fn det_berkowitz_jet(a: &[Jet2], n: usize, nvars: usize) -> Jet2 {
    det_berkowitz(a, n, &Jet2::constant(nvars, Rat::one()))
}
