//! Components of the abelian cover of `S ∖ T` for a sphere-embedded
//! `g`-quasi-tree `T`, counted as the index of the cycle-voltage lattice.
//!
//! A dual edge `e★` with `e ∉ T` carries the voltage given by the
//! `I`-coordinates of its class `a = Ω⁻¹ b`, `b_j = ι(e★, γ_j)`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{CycleSpace, QuasiTree, QuasiTreeError};
use crate::exactla::IntMatrix;
use crate::homology::{standard_omega, HomologyFrame};
use crate::report::{index_set, CheckRecord, Report};
use crate::ribbon::RibbonGraph;

/// Voltage of each dual edge, restricted to `rows` (0-based).
pub fn edge_voltages(g: &RibbonGraph, frame: &HomologyFrame, rows: &[usize]) -> Vec<Vec<i64>> {
    let n = frame.dim();
    let omega_inv = standard_omega(frame.genus).to_rat().inverse().expect("Ω is invertible");
    (0..g.num_edges())
        .map(|e| {
            let b: Vec<i64> = frame.basis.iter().map(|c| c.coeffs[e]).collect();
            rows.iter()
                .map(|&i| (0..n).map(|j| omega_inv[(i, j)].to_integer().to_i64().expect("unit entries") * b[j]).sum())
                .collect()
        })
        .collect()
}

/// Number of components of the cover, `None` when infinite.
pub fn covering_components(
    g: &RibbonGraph,
    frame: &HomologyFrame,
    qt: &QuasiTree,
) -> Result<Option<BigInt>, QuasiTreeError> {
    let gg = frame.genus;
    if qt.k != gg {
        return Err(QuasiTreeError::NotRankG { k: qt.k, g: gg });
    }
    if g.subgraph(&qt.edges).ribbon_genus != 0 {
        return Err(QuasiTreeError::NotSphereEmbedded);
    }
    let rows: Vec<usize> = (gg..2 * gg).collect();
    let volt = edge_voltages(g, frame, &rows);
    let base = g.dual_skeleton();
    let ne = g.num_edges();
    let outside: Vec<usize> = (0..ne).filter(|e| !qt.edges.contains(e)).collect();
    let forest = base.greedy_forest(outside.iter().copied());
    let mut uf = base.components_of(outside.iter().copied());
    // Cycle voltages grouped by component root.
    let mut lattices: alloc::collections::BTreeMap<usize, Vec<Vec<i64>>> = Default::default();
    for v in 0..base.num_vertices() {
        lattices.entry(uf.find(v)).or_default();
    }
    for &e in outside.iter().filter(|e| !forest.contains(e)) {
        let walk = base.fundamental_walk(&forest, e).expect("forest spans component");
        let chain = base.walk_chain(&walk);
        let net: Vec<i64> = (0..gg).map(|i| chain.iter().enumerate().map(|(f, &c)| c * volt[f][i]).sum()).collect();
        let root = uf.find(base.ends(e).0);
        lattices.get_mut(&root).expect("component registered").push(net);
    }
    let mut total = BigInt::zero();
    for gens in lattices.values() {
        let m = IntMatrix::from_fn(gg, gens.len(), |i, j| BigInt::from(gens[j][i]));
        match m.column_lattice_index() {
            Some(idx) => total += idx,
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}

/// Component count against `|det T_I|`, `I` the last `g` indices, over every
/// sphere-embedded `g`-quasi-tree.
pub fn verify_covering(g: &RibbonGraph, frame: &HomologyFrame, max_edges: usize) -> Result<Report, QuasiTreeError> {
    let gg = frame.genus;
    let sp = CycleSpace::primal(g, frame);
    let rows: Vec<usize> = (gg..2 * gg).collect();
    let mut rep = Report::new();
    let render = |x: Option<BigInt>| x.map_or_else(|| alloc::string::String::from("infinite"), |v| format!("{v}"));
    for q in sp.enumerate(gg, max_edges)? {
        if g.subgraph(&q.edges).ribbon_genus != 0 {
            continue;
        }
        let comps = covering_components(g, frame, &q)?;
        let det = q.t_det(&rows)?.abs();
        let expect = (!det.is_zero()).then_some(det);
        rep.push(CheckRecord::new("covering", format!("T={}", index_set(&q.edges)), render(comps), render(expect)));
    }
    Ok(rep)
}
