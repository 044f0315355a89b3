//! Bundle Laplacian `Δ(z) = d(z⁻¹)ᵗ C d(z)` of the flat connection with
//! parallel transport `φ_e = Π_k z_k^{M[e,k]}`, where
//! `(d(z) h)_e = φ_e h_head - h_tail`. Its determinant `P(z)` vanishes to
//! second order at `z = 1`; the Hessian there is computed with degree-2 jets
//! and a division-free determinant, independently of the period formula.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactla::{det_berkowitz_jet, Jet2, Rat, RatMatrix, RingElement};
use crate::homology::HomologyFrame;
use crate::period::PeriodData;
use crate::report::{CheckRecord, Report};
use crate::ribbon::RibbonGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BundleError {
    #[error("connection coordinate {0} is zero")]
    ZeroConnection(usize),
    #[error("expected {expected} coordinates, got {got}")]
    WrongArity { expected: usize, got: usize },
}

#[derive(Debug, Clone)]
pub struct BundleLaplacian<'a> {
    graph: &'a RibbonGraph,
    /// Row `e` of `M`.
    pub exponents: Vec<Vec<i64>>,
}

impl<'a> BundleLaplacian<'a> {
    pub fn new(graph: &'a RibbonGraph, frame: &HomologyFrame) -> Self {
        BundleLaplacian { graph, exponents: (0..graph.num_edges()).map(|e| frame.m_row(e)).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.exponents.first().map_or(0, Vec::len)
    }

    /// Row-major `Δ(z)` over any ring, given `φ_e`, `φ_e⁻¹` and the weight
    /// embedding.
    fn matrix<T: RingElement>(&self, phi: &[T], phi_inv: &[T], lift: impl Fn(&Rat) -> T, unit: &T) -> Vec<T> {
        let g = self.graph;
        let nv = g.num_vertices();
        let zero = unit.zero_like();
        let mut out = alloc::vec![zero.clone(); nv * nv];
        for e in 0..g.num_edges() {
            let (t, h) = g.ends(e);
            let c = lift(g.weight(e));
            // Sparse rows of d(z) and d(z⁻¹): (vertex, coefficient).
            let row = |p: &T| -> Vec<(usize, T)> {
                if t == h {
                    alloc::vec![(t, p.clone() - unit.clone())]
                } else {
                    alloc::vec![(h, p.clone()), (t, -unit.clone())]
                }
            };
            let (r, ri) = (row(&phi[e]), row(&phi_inv[e]));
            for (u, a) in &ri {
                for (v, b) in &r {
                    let x = out[u * nv + v].clone() + c.clone() * a.clone() * b.clone();
                    out[u * nv + v] = x;
                }
            }
        }
        out
    }

    /// Exact `P(z)` at nonzero rationals.
    pub fn evaluate(&self, z: &[Rat]) -> Result<Rat, BundleError> {
        if z.len() != self.nvars() && !self.exponents.is_empty() {
            return Err(BundleError::WrongArity { expected: self.nvars(), got: z.len() });
        }
        if let Some(k) = z.iter().position(Zero::is_zero) {
            return Err(BundleError::ZeroConnection(k));
        }
        let phi: Vec<Rat> = self
            .exponents
            .iter()
            .map(|ex| ex.iter().zip(z).fold(Rat::one(), |p, (&m, zk)| p * zk.pow(m as i32)))
            .collect();
        let phi_inv: Vec<Rat> = phi.iter().map(Rat::recip).collect();
        let nv = self.graph.num_vertices();
        let m = self.matrix(&phi, &phi_inv, Rat::clone, &Rat::one());
        Ok(RatMatrix::from_fn(nv, nv, |i, j| m[i * nv + j].clone()).det().expect("square"))
    }

    /// `P(1 + t)` truncated at degree 2.
    pub fn jet_at_one(&self) -> Jet2 {
        let n = self.nvars();
        let one = Jet2::constant(n, Rat::one());
        let z: Vec<Jet2> = (0..n).map(|k| one.clone() + Jet2::variable(n, k)).collect();
        // (1 + t)⁻¹ = 1 - t + t² + O(t³).
        let z_inv: Vec<Jet2> = (0..n)
            .map(|k| {
                let t = Jet2::variable(n, k);
                one.clone() - t.clone() + t.clone() * t
            })
            .collect();
        let power = |ex: &[i64], pos: &[Jet2], neg: &[Jet2]| -> Jet2 {
            let mut p = one.clone();
            for (k, &m) in ex.iter().enumerate() {
                let base = if m >= 0 { &pos[k] } else { &neg[k] };
                for _ in 0..m.unsigned_abs() {
                    p = p * base.clone();
                }
            }
            p
        };
        let phi: Vec<Jet2> = self.exponents.iter().map(|ex| power(ex, &z, &z_inv)).collect();
        let phi_inv: Vec<Jet2> = self.exponents.iter().map(|ex| power(ex, &z_inv, &z)).collect();
        let m = self.matrix(&phi, &phi_inv, |c| Jet2::constant(n, c.clone()), &one);
        det_berkowitz_jet(&m, self.graph.num_vertices(), n)
    }

    pub fn gradient_at_one(&self) -> Vec<Rat> {
        self.jet_at_one().lin
    }

    pub fn hessian_at_one(&self) -> RatMatrix {
        self.jet_at_one().hessian()
    }
}

/// `P(1) = 0`, `∇P(1) = 0` and `Hess P(1) = -2 · tree_sum · ΩL` entrywise.
pub fn verify_bundle_hessian(g: &RibbonGraph, frame: &HomologyFrame, pd: &PeriodData) -> Report {
    let bl = BundleLaplacian::new(g, frame);
    let jet = bl.jet_at_one();
    let mut rep = Report::new();
    rep.push(CheckRecord::new("p_at_one", "", &jet.value, Rat::zero()));
    for (k, d) in jet.lin.iter().enumerate() {
        rep.push(CheckRecord::new("gradient_at_one", format!("k={}", k + 1), d, Rat::zero()));
    }
    let h = jet.hessian();
    let target = pd.omega_l.scale(&(Rat::from_integer((-2).into()) * &pd.tree_sum));
    for i in 0..h.rows() {
        for j in 0..h.cols() {
            rep.push(CheckRecord::new("hessian", format!("i={} j={}", i + 1, j + 1), &h[(i, j)], &target[(i, j)]));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, rat_int};
    use crate::homology::default_frame;
    use crate::period::omega_l;
    use crate::ribbon::{bouquet, torus_grid};
    use alloc::vec;
    use num_traits::Signed;

    fn torus23() -> RibbonGraph {
        bouquet(1).with_weights(vec![rat_int(2), rat_int(3)]).unwrap()
    }

    #[test]
    fn torus_values() {
        let g = torus23();
        let fr = default_frame(&g);
        let bl = BundleLaplacian::new(&g, &fr);
        assert_eq!(bl.evaluate(&[rat_int(1), rat_int(1)]).unwrap(), Rat::zero());
        assert_eq!(bl.evaluate(&[rat_int(2), rat_int(1)]).unwrap(), rat_int(-1));
        assert_eq!(bl.evaluate(&[rat_int(0), rat_int(1)]), Err(BundleError::ZeroConnection(0)));
        assert_eq!(bl.gradient_at_one(), vec![Rat::zero(), Rat::zero()]);
        assert_eq!(bl.hessian_at_one(), RatMatrix::from_i64(2, 2, &[-4, 0, 0, -6]));
    }

    #[test]
    fn octagon_hessian() {
        let g = bouquet(2);
        let h = BundleLaplacian::new(&g, &default_frame(&g)).hessian_at_one();
        assert_eq!(h, RatMatrix::identity(4).scale(&rat_int(-2)));
    }

    #[test]
    fn grid_hessian_and_reciprocity() {
        let g = torus_grid(2, 2).with_weights((1..=8).map(|i| rat(i, 2)).collect()).unwrap();
        let fr = default_frame(&g);
        let pd = omega_l(&g, &fr, 0);
        let rep = verify_bundle_hessian(&g, &fr, &pd);
        assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
        let bl = BundleLaplacian::new(&g, &fr);
        for z in [[rat(2, 3), rat(5, 1)], [rat(-7, 2), rat(1, 9)]] {
            let zi: Vec<Rat> = z.iter().map(Rat::recip).collect();
            assert_eq!(bl.evaluate(&z).unwrap(), bl.evaluate(&zi).unwrap());
        }
    }

    /// Second differences of `P` along a direction approach the jet Hessian.
    #[test]
    fn second_differences_converge() {
        let g = torus23();
        let fr = default_frame(&g);
        let bl = BundleLaplacian::new(&g, &fr);
        let hess = bl.hessian_at_one();
        for dir in [[1i64, 0], [0, 1], [1, 1]] {
            let quad: Rat = (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .fold(Rat::zero(), |s, (i, j)| s + &hess[(i, j)] * rat_int(dir[i] * dir[j]));
            let mut last: Option<Rat> = None;
            for h in [rat(1, 2), rat(1, 3), rat(1, 10), rat(1, 100)] {
                let at = |s: &Rat| -> Rat {
                    let z: Vec<Rat> = dir.iter().map(|&d| Rat::one() + s * rat_int(d)).collect();
                    bl.evaluate(&z).unwrap()
                };
                let q = (at(&h) + at(&-h.clone()) - rat_int(2) * at(&Rat::zero())) / (&h * &h);
                let err = (q - &quad).abs();
                if let Some(prev) = &last {
                    assert!(&err < prev);
                }
                last = Some(err);
            }
            assert!(last.unwrap() < rat(1, 100));
        }
    }
}
