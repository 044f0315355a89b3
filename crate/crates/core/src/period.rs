//! Discrete Laplacian, harmonic 1-forms and the period matrix `ΩL`.
//!
//! With `d` the `|E| x |V|` incidence matrix (`(dh)_e = h_head - h_tail`),
//! `C` the diagonal of conductances and `M` the crossing matrix of a
//! [`HomologyFrame`], the harmonic form with periods `A` is
//! `ω = M A + d h` where `h` solves `Δ h = -dᵗ C M A`, `Δ = dᵗ C d`. Removing
//! the root column `o` from `d` yields
//! `ΩL = Mᵗ C M - Mᵗ C d_ō Δ_ōō⁻¹ d_ōᵗ C M`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactla::{ln_rat, schur_minor_oracle, LinAlgError, Rat, RatMatrix};
use crate::homology::{standard_omega, HomologyFrame};
use crate::ribbon::RibbonGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PeriodError {
    #[error("index set is invalid for a {dim}x{dim} matrix")]
    BadIndex { dim: usize },
    #[error("1-form is not harmonic")]
    NotHarmonic,
    #[error("surface has genus 0")]
    GenusZero,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// One value per edge, in the edge's own orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    pub values: Vec<Rat>,
}

impl OneForm {
    /// Sum around each face walk; all zero iff closed.
    pub fn face_residuals(&self, g: &RibbonGraph) -> Vec<Rat> {
        let skel = g.skeleton();
        g.faces()
            .faces
            .iter()
            .map(|f| {
                skel.walk_chain(f)
                    .iter()
                    .zip(&self.values)
                    .fold(Rat::zero(), |s, (&c, w)| s + Rat::from_integer(c.into()) * w)
            })
            .collect()
    }

    /// `(dᵗ C ω)_v` at each vertex; all zero iff co-closed.
    pub fn vertex_residuals(&self, g: &RibbonGraph) -> Vec<Rat> {
        let mut r = alloc::vec![Rat::zero(); g.num_vertices()];
        for e in 0..g.num_edges() {
            let (t, h) = g.ends(e);
            let flow = g.weight(e) * &self.values[e];
            r[h] += &flow;
            r[t] -= &flow;
        }
        r
    }

    pub fn is_harmonic(&self, g: &RibbonGraph) -> bool {
        self.face_residuals(g).iter().all(Zero::is_zero) && self.vertex_residuals(g).iter().all(Zero::is_zero)
    }

    /// `Σ_e c_e ω_e η_e`.
    pub fn energy_pairing(&self, other: &OneForm, g: &RibbonGraph) -> Rat {
        (0..g.num_edges()).fold(Rat::zero(), |s, e| s + g.weight(e) * &self.values[e] * &other.values[e])
    }
}

/// Laplacian data relative to a root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laplacian {
    pub d: RatMatrix,
    pub delta: RatMatrix,
    /// `Δ` with the root row and column removed.
    pub reduced: RatMatrix,
    /// `det Δ_ōō`, the weighted spanning-tree sum.
    pub tree_sum: Rat,
    pub root: usize,
}

impl Laplacian {
    /// Non-root vertex indices.
    pub fn others(&self) -> Vec<usize> {
        (0..self.delta.rows()).filter(|&v| v != self.root).collect()
    }

    /// `d` without the root column.
    pub fn d_reduced(&self) -> RatMatrix {
        let rows: Vec<usize> = (0..self.d.rows()).collect();
        self.d.select(&rows, &self.others())
    }
}

pub fn conductance(g: &RibbonGraph) -> RatMatrix {
    RatMatrix::diagonal(g.weights())
}

pub fn laplacian(g: &RibbonGraph, root: usize) -> Laplacian {
    let (ne, nv) = (g.num_edges(), g.num_vertices());
    assert!(root < nv, "root out of range");
    let mut d = RatMatrix::zeros(ne, nv);
    for e in 0..ne {
        let (t, h) = g.ends(e);
        d[(e, h)] += Rat::one();
        d[(e, t)] -= Rat::one();
    }
    let c = conductance(g);
    let delta = d.transpose().mul(&c).and_then(|x| x.mul(&d)).expect("shapes agree");
    let others: Vec<usize> = (0..nv).filter(|&v| v != root).collect();
    let reduced = delta.select(&others, &others);
    let tree_sum = reduced.det().expect("square");
    Laplacian { d, delta, reduced, tree_sum, root }
}

/// `ΩL`, `L = Ω⁻¹ ΩL` and the tree sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodData {
    pub omega_l: RatMatrix,
    pub l: RatMatrix,
    pub tree_sum: Rat,
    pub root: usize,
}

impl PeriodData {
    pub fn genus(&self) -> usize {
        self.omega_l.rows() / 2
    }

    /// `det` of the `I x J` submatrix of `ΩL`; indices 0-based.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Rat, PeriodError> {
        check_index(rows, cols, self.omega_l.rows())?;
        Ok(self.omega_l.select(rows, cols).det()?)
    }

    /// `tree_sum · det(ΩL)_{II}`, `I` the last `g` indices, with its natural
    /// logarithm for display.
    pub fn wp_potential(&self) -> (Rat, f64) {
        let g = self.genus();
        let idx: Vec<usize> = (g..2 * g).collect();
        let p = &self.tree_sum * self.omega_l.select(&idx, &idx).det().expect("square");
        let log = ln_rat(&p);
        (p, log)
    }

    /// `ImΠ = S⁻¹`, `ReΠ = -ImΠ R` from the blocks `[[P, Q], [R, S]]` of
    /// `ΩL`, and the residual `P - (ImΠ + ReΠ ImΠ⁻¹ ReΠ)`.
    pub fn normalized_blocks(&self) -> Result<NormalizedBlocks, PeriodError> {
        let g = self.genus();
        if g == 0 {
            return Err(PeriodError::GenusZero);
        }
        let top: Vec<usize> = (0..g).collect();
        let bottom: Vec<usize> = (g..2 * g).collect();
        let p = self.omega_l.select(&top, &top);
        let r = self.omega_l.select(&bottom, &top);
        let s = self.omega_l.select(&bottom, &bottom);
        let im = s.inverse()?;
        let re = im.mul(&r)?.scale(&-Rat::one());
        let residual = p.sub(&im.add(&re.mul(&s)?.mul(&re)?)?)?;
        Ok(NormalizedBlocks { im, re, residual })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedBlocks {
    pub im: RatMatrix,
    pub re: RatMatrix,
    pub residual: RatMatrix,
}

fn check_index(rows: &[usize], cols: &[usize], dim: usize) -> Result<(), PeriodError> {
    let ok = |s: &[usize]| s.iter().all(|&i| i < dim) && (1..s.len()).all(|k| !s[..k].contains(&s[k]));
    if rows.len() != cols.len() || rows.is_empty() || !ok(rows) || !ok(cols) {
        return Err(PeriodError::BadIndex { dim });
    }
    Ok(())
}

/// `ΩL` by the closed form, rooted at `root`.
pub fn omega_l(g: &RibbonGraph, frame: &HomologyFrame, root: usize) -> PeriodData {
    let lap = laplacian(g, root);
    let c = conductance(g);
    let m = frame.m_rat();
    let mt_c = m.transpose().mul(&c).expect("shapes");
    let mcm = mt_c.mul(&m).expect("shapes");
    let x = lap.d_reduced().transpose().mul(&c).and_then(|y| y.mul(&m)).expect("shapes");
    let y = lap.reduced.solve(&x).expect("reduced Laplacian of a connected graph is invertible");
    let omega_l = mcm.sub(&x.transpose().mul(&y).expect("shapes")).expect("shapes");
    let omega_inv = standard_omega(frame.genus).to_rat().inverse().expect("Ω is invertible");
    let l = omega_inv.mul(&omega_l).expect("shapes");
    PeriodData { omega_l, l, tree_sum: lap.tree_sum, root }
}

/// Harmonic form with periods `a` over `γ_1..γ_2g`, with vertex potentials
/// vanishing at `root`.
pub fn harmonic_form(g: &RibbonGraph, frame: &HomologyFrame, a: &[Rat], root: usize) -> (OneForm, Vec<Rat>) {
    assert_eq!(a.len(), frame.dim(), "period vector has wrong length");
    let lap = laplacian(g, root);
    let c = conductance(g);
    let ma = frame.m_rat().mul(&RatMatrix::column_vector(a)).expect("shapes");
    let rhs = lap.d_reduced().transpose().mul(&c).and_then(|y| y.mul(&ma)).expect("shapes").scale(&-Rat::one());
    let h_red = lap.reduced.solve(&rhs).expect("invertible");
    let mut h = alloc::vec![Rat::zero(); g.num_vertices()];
    for (k, v) in lap.others().into_iter().enumerate() {
        h[v] = h_red[(k, 0)].clone();
    }
    let values = (0..g.num_edges())
        .map(|e| {
            let (t, hd) = g.ends(e);
            &ma[(e, 0)] + &h[hd] - &h[t]
        })
        .collect();
    (OneForm { values }, h)
}

/// Periods of `ω` over `γ_1..γ_2g`.
pub fn periods(frame: &HomologyFrame, w: &OneForm) -> Vec<Rat> {
    frame
        .basis
        .iter()
        .map(|b| b.coeffs.iter().zip(&w.values).fold(Rat::zero(), |s, (&k, x)| s + Rat::from_integer(k.into()) * x))
        .collect()
}

/// Periods of `★ω = cω` over dual cycles homologous to `γ_1..γ_2g`.
pub fn dual_periods(g: &RibbonGraph, frame: &HomologyFrame, w: &OneForm) -> Result<Vec<Rat>, PeriodError> {
    if !w.is_harmonic(g) {
        return Err(PeriodError::NotHarmonic);
    }
    Ok(frame
        .basis_pushoffs
        .iter()
        .map(|p| {
            (0..g.num_edges())
                .fold(Rat::zero(), |s, e| s + Rat::from_integer(p.coeffs[e].into()) * g.weight(e) * &w.values[e])
        })
        .collect())
}

/// `Ω · [A★ of the unit harmonic forms]`; must equal `ΩL`.
pub fn omega_l_from_dual_periods(g: &RibbonGraph, frame: &HomologyFrame) -> RatMatrix {
    let n = frame.dim();
    let mut astar = RatMatrix::zeros(n, n);
    for j in 0..n {
        let a: Vec<Rat> = (0..n).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
        let (w, _) = harmonic_form(g, frame, &a, 0);
        let ap = dual_periods(g, frame, &w).expect("harmonic by construction");
        for i in 0..n {
            astar[(i, j)] = ap[i].clone();
        }
    }
    standard_omega(frame.genus).to_rat().mul(&astar).expect("shapes")
}

/// Minor of `ΩL` from the block matrix
/// `[[Δ_ōō, d_ōᵗ C M_J], [M_Iᵗ C d_ō, M_Iᵗ C M_J]]`, whose determinant is
/// `tree_sum · det(ΩL)_{IJ}`. Both Schur sides must agree.
pub fn minor_by_block_determinant(
    g: &RibbonGraph,
    frame: &HomologyFrame,
    rows: &[usize],
    cols: &[usize],
) -> Result<Rat, PeriodError> {
    check_index(rows, cols, frame.dim())?;
    let lap = laplacian(g, 0);
    let c = conductance(g);
    let all_e: Vec<usize> = (0..g.num_edges()).collect();
    let m = frame.m_rat();
    let mi = m.select(&all_e, rows);
    let mj = m.select(&all_e, cols);
    let dr = lap.d_reduced();
    let q = dr.transpose().mul(&c)?.mul(&mj)?;
    let r = mi.transpose().mul(&c)?.mul(&dr)?;
    let s = mi.transpose().mul(&c)?.mul(&mj)?;
    let check = schur_minor_oracle(&lap.reduced, &q, &r, &s)?;
    if !check.holds() {
        return Err(PeriodError::LinAlg(LinAlgError::DimensionMismatch("Schur sides disagree")));
    }
    Ok(check.assembled / lap.tree_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, rat_int};
    use crate::homology::default_frame;
    use crate::ribbon::{bouquet, torus_grid};
    use alloc::vec;

    fn torus23() -> RibbonGraph {
        bouquet(1).with_weights(vec![rat_int(2), rat_int(3)]).unwrap()
    }

    #[test]
    fn torus_laplacian_is_zero() {
        let lap = laplacian(&torus23(), 0);
        assert!(lap.delta.is_zero() && lap.delta.rows() == 1);
        assert_eq!(lap.reduced.rows(), 0);
        assert_eq!(lap.tree_sum, Rat::one());
    }

    #[test]
    fn single_edge_laplacian() {
        let g = RibbonGraph::new(vec![vec![0], vec![1]], vec![rat_int(5)]).unwrap();
        let lap = laplacian(&g, 0);
        assert_eq!(lap.delta, RatMatrix::from_i64(2, 2, &[5, -5, -5, 5]));
        assert_eq!(lap.tree_sum, rat_int(5));
    }

    #[test]
    fn grid_tree_sum_matches_count() {
        let g = torus_grid(2, 2);
        assert_eq!(laplacian(&g, 0).tree_sum, rat_int(32));
    }

    #[test]
    fn torus_period_matrix() {
        let g = torus23();
        let fr = default_frame(&g);
        let pd = omega_l(&g, &fr, 0);
        assert_eq!(pd.omega_l, RatMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(pd.minor(&[0], &[0]).unwrap(), rat_int(2));
        assert_eq!(pd.minor(&[0], &[1]).unwrap(), rat_int(0));
        assert_eq!(pd.minor(&[0, 1], &[0, 1]).unwrap(), rat_int(6));
        assert!(matches!(pd.minor(&[0], &[0, 1]), Err(PeriodError::BadIndex { .. })));
        assert!(matches!(pd.minor(&[2], &[0]), Err(PeriodError::BadIndex { .. })));
        assert_eq!(pd.wp_potential().0, rat_int(3));
        let nb = pd.normalized_blocks().unwrap();
        assert_eq!(nb.im, RatMatrix::from_fn(1, 1, |_, _| rat(1, 3)));
        assert!(nb.re.is_zero());
    }

    #[test]
    fn torus_harmonic_and_dual_periods() {
        let g = torus23();
        let fr = default_frame(&g);
        let (w, h) = harmonic_form(&g, &fr, &[rat_int(1), rat_int(0)], 0);
        assert_eq!(w.values, vec![rat_int(1), rat_int(0)]);
        assert_eq!(h, vec![rat_int(0)]);
        assert_eq!(dual_periods(&g, &fr, &w).unwrap(), vec![rat_int(0), rat_int(2)]);
        let (z, _) = harmonic_form(&g, &fr, &[rat_int(0), rat_int(0)], 0);
        assert!(z.values.iter().all(Zero::is_zero));
    }

    #[test]
    fn octagon_identity() {
        let g = bouquet(2);
        let pd = omega_l(&g, &default_frame(&g), 0);
        assert_eq!(pd.omega_l, RatMatrix::identity(4));
        assert_eq!(pd.wp_potential().0, Rat::one());
        let nb = pd.normalized_blocks().unwrap();
        assert_eq!(nb.im, RatMatrix::identity(2));
        assert!(nb.re.is_zero());
    }

    #[test]
    fn grid_definitions_agree() {
        let g = torus_grid(2, 3).with_weights((1..=12).map(|i| rat(i, 3)).collect()).unwrap();
        let fr = default_frame(&g);
        let pd = omega_l(&g, &fr, 0);
        assert!(pd.omega_l.is_positive_definite());
        assert_eq!(omega_l_from_dual_periods(&g, &fr), pd.omega_l);
        for root in 1..g.num_vertices() {
            assert_eq!(omega_l(&g, &fr, root).omega_l, pd.omega_l);
        }
        assert_eq!(minor_by_block_determinant(&g, &fr, &[0], &[1]).unwrap(), pd.minor(&[0], &[1]).unwrap());
        let (w, _) = harmonic_form(&g, &fr, &[rat(1, 2), rat(-3, 1)], 2);
        assert!(w.is_harmonic(&g));
        assert_eq!(periods(&fr, &w), vec![rat(1, 2), rat(-3, 1)]);
        let bad = OneForm { values: vec![rat_int(1); 12] };
        assert_eq!(dual_periods(&g, &fr, &bad), Err(PeriodError::NotHarmonic));
    }
}
