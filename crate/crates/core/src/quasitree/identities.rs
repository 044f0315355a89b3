use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{complement_mask, CycleSpace, QuasiTree, QuasiTreeError};
use crate::exactla::Rat;
use crate::graph::{index_subsets, mask_edges, subsets_of_size};
use crate::homology::HomologyFrame;
use crate::period::{minor_by_block_determinant, PeriodData};
use crate::report::{index_set, CheckRecord, Report};
use crate::ribbon::RibbonGraph;

fn big(x: &BigInt) -> Rat {
    Rat::from_integer(x.clone())
}

/// `Σ_T det T_I det T_J Π_{e∈T} c_e / tree_sum` over the given quasi-trees.
pub fn minor_expansion_rhs(
    space: &CycleSpace,
    qts: &[QuasiTree],
    rows: &[usize],
    cols: &[usize],
    tree_sum: &Rat,
) -> Result<Rat, QuasiTreeError> {
    let mut s = Rat::zero();
    for q in qts {
        let p = q.t_det(rows)? * q.t_det(cols)?;
        if !p.is_zero() {
            s += big(&p) * space.weight(q);
        }
    }
    Ok(s / tree_sum)
}

/// Every `k x k` minor of `ΩL` against its quasi-tree expansion, plus the
/// same minor through the Laplacian block determinant.
pub fn verify_minor_expansion(
    g: &RibbonGraph,
    frame: &HomologyFrame,
    pd: &PeriodData,
    max_edges: usize,
) -> Result<Report, QuasiTreeError> {
    let sp = CycleSpace::primal(g, frame);
    let n = frame.dim();
    let mut rep = Report::new();
    for k in 1..=n {
        let qts = sp.enumerate(k, max_edges)?;
        let subsets = index_subsets(n, k);
        for i in &subsets {
            for j in &subsets {
                let params = format!("k={k} I={} J={}", index_set(i), index_set(j));
                let lhs = pd.minor(i, j).expect("valid index sets");
                rep.push(CheckRecord::new(
                    "minor_expansion",
                    params.clone(),
                    &lhs,
                    minor_expansion_rhs(&sp, &qts, i, j, &pd.tree_sum)?,
                ));
                let block = minor_by_block_determinant(g, frame, i, j).expect("valid index sets");
                rep.push(CheckRecord::new("minor_block", params, &lhs, block));
            }
        }
    }
    Ok(rep)
}

/// Complement duality between `k`-quasi-trees of `G` and
/// `(2g - k)`-quasi-trees of `G★`.
pub fn verify_duality(g: &RibbonGraph, frame: &HomologyFrame, max_edges: usize) -> Result<Report, QuasiTreeError> {
    let primal = CycleSpace::primal(g, frame);
    let dual = CycleSpace::dual(g, frame);
    let n = frame.dim();
    let ne = g.num_edges();
    let mut rep = Report::new();
    for k in 0..=n {
        let qts = primal.enumerate(k, max_edges)?;
        let dual_count = dual.enumerate(n - k, max_edges)?.len();
        rep.push(CheckRecord::new("duality_count", format!("k={k}"), qts.len(), dual_count));
        let mut pairs = Vec::with_capacity(qts.len());
        for q in &qts {
            let cm = complement_mask(q.mask, ne);
            let star = dual.quasi_tree(cm);
            let ok = star.as_ref().is_some_and(|s| s.k == n - k);
            rep.push(CheckRecord::property("dual_is_quasi_tree", format!("k={k} T={}", index_set(&q.edges)), ok));
            if let Some(s) = star {
                rep.push(CheckRecord::new(
                    "complement_involution",
                    format!("k={k} T={}", index_set(&q.edges)),
                    complement_mask(s.mask, ne),
                    q.mask,
                ));
                pairs.push((q, s));
            }
        }
        let subsets = index_subsets(n, k);
        let complement = |s: &[usize]| -> Vec<usize> { (0..n).filter(|i| !s.contains(i)).collect() };
        for i in &subsets {
            let ic = complement(i);
            for (q, s) in &pairs {
                rep.push(CheckRecord::new(
                    "duality_abs",
                    format!("k={k} I={} T={}", index_set(i), index_set(&q.edges)),
                    q.t_det(i)?.abs(),
                    s.t_det(&ic)?.abs(),
                ));
            }
        }
        for i in &subsets {
            let ic = complement(i);
            for j in &subsets {
                let jc = complement(j);
                let mut signs = BTreeSet::new();
                for (q, s) in &pairs {
                    let x = q.t_det(i)? * q.t_det(j)?;
                    let y = s.t_det(&ic)? * s.t_det(&jc)?;
                    if !x.is_zero() || !y.is_zero() {
                        signs.insert((x * y).signum());
                    }
                }
                let constant = signs.len() <= 1 && !signs.contains(&BigInt::zero());
                rep.push(CheckRecord::property(
                    "duality_sign",
                    format!("k={k} I={} J={}", index_set(i), index_set(j)),
                    constant,
                ));
            }
        }
    }
    let top = primal.enumerate(n, max_edges)?.len();
    rep.push(CheckRecord::new("top_rank_vs_dual_trees", "", top, g.dual_skeleton().spanning_tree_masks().len()));
    Ok(rep)
}

/// `det ΩL = (Σ_{T★} Π c⁻¹) Π_E c / Σ_T Π c`, both sums by brute force.
pub fn verify_det_dual_trees(g: &RibbonGraph, pd: &PeriodData) -> Report {
    let lhs = pd.omega_l.det().expect("square");
    let inv: Vec<Rat> = g.weights().iter().map(Rat::recip).collect();
    let dual_sum = g.dual_skeleton().spanning_tree_weight_sum(&inv);
    let primal_sum = g.skeleton().spanning_tree_weight_sum(g.weights());
    let rhs = dual_sum * g.weight_product(0..g.num_edges()) / &primal_sum;
    let mut rep = Report::new();
    rep.push(CheckRecord::new("det_dual_trees", "", lhs, rhs));
    rep.push(CheckRecord::new("matrix_tree", "", &pd.tree_sum, primal_sum));
    rep
}

/// `Σ_{g-quasi-trees} (det T_I)² Π c_e` with `I` the last `g` indices.
pub fn wp_quasi_tree_sum(g: &RibbonGraph, frame: &HomologyFrame, max_edges: usize) -> Result<Rat, QuasiTreeError> {
    let sp = CycleSpace::primal(g, frame);
    let gg = frame.genus;
    let idx: Vec<usize> = (gg..2 * gg).collect();
    let mut s = Rat::zero();
    for q in sp.enumerate(gg, max_edges)? {
        let d = q.t_det(&idx)?;
        if !d.is_zero() {
            s += big(&(&d * &d)) * sp.weight(&q);
        }
    }
    Ok(s)
}

pub fn verify_wp_identity(
    g: &RibbonGraph,
    frame: &HomologyFrame,
    pd: &PeriodData,
    max_edges: usize,
) -> Result<Report, QuasiTreeError> {
    let mut rep = Report::new();
    rep.push(CheckRecord::new("wp_identity", "", pd.wp_potential().0, wp_quasi_tree_sum(g, frame, max_edges)?));
    Ok(rep)
}

/// First `(T, T', e)` violating symmetric exchange, if any.
pub fn delta_matroid_violation(family: &[u64], ne: usize) -> Option<(u64, u64, usize)> {
    let set: BTreeSet<u64> = family.iter().copied().collect();
    // exchange[t][e]: edges f with t △ {e, f} in the family.
    let exchange: BTreeMap<u64, Vec<u64>> = family
        .iter()
        .map(|&t| {
            let row = (0..ne)
                .map(|e| {
                    (0..ne)
                        .filter(|&f| set.contains(&(t ^ (1u64 << e) ^ if f == e { 0 } else { 1u64 << f })))
                        .fold(0u64, |m, f| m | 1 << f)
                })
                .collect();
            (t, row)
        })
        .collect();
    for &t in family {
        let row = &exchange[&t];
        for &u in family {
            let diff = t ^ u;
            for e in mask_edges(diff) {
                if row[e] & diff == 0 {
                    return Some((t, u, e));
                }
            }
        }
    }
    None
}

pub fn verify_delta_matroid(
    g: &RibbonGraph,
    frame: &HomologyFrame,
    max_edges: usize,
) -> Result<Report, QuasiTreeError> {
    let sp = CycleSpace::primal(g, frame);
    let family: Vec<u64> = sp.enumerate_all(max_edges)?.into_iter().flatten().map(|q| q.mask).collect();
    let mut rep = Report::new();
    let violation = delta_matroid_violation(&family, g.num_edges());
    let params = match violation {
        None => format!("family={}", family.len()),
        Some((t, u, e)) => {
            let ts: Vec<usize> = mask_edges(t).collect();
            let us: Vec<usize> = mask_edges(u).collect();
            format!("family={} T={} T'={} e={}", family.len(), index_set(&ts), index_set(&us), e + 1)
        }
    };
    let violations = usize::from(violation.is_some());
    rep.push(CheckRecord::new("delta_matroid", params, violations, 0));
    Ok(rep)
}

/// Spanning subgraphs whose ribbon surface has one boundary component.
pub fn ribbon_quasi_tree_masks(g: &RibbonGraph) -> Vec<u64> {
    let base = g.num_vertices() - 1;
    let ne = g.num_edges();
    let mut out = Vec::new();
    for h in 0..=g.genus() {
        let size = base + 2 * h;
        if size > ne {
            break;
        }
        for m in subsets_of_size(ne, size) {
            let edges: Vec<usize> = mask_edges(m).collect();
            if g.subgraph(&edges).boundary_components == 1 {
                out.push(m);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Ribbon-graph quasi-trees are homological quasi-trees of even rank, and
/// every top-rank homological quasi-tree is a ribbon-graph quasi-tree.
pub fn verify_ribbon_comparison(
    g: &RibbonGraph,
    frame: &HomologyFrame,
    max_edges: usize,
) -> Result<Report, QuasiTreeError> {
    let sp = CycleSpace::primal(g, frame);
    let all = sp.enumerate_all(max_edges)?;
    let rank: BTreeMap<u64, usize> = all.iter().flatten().map(|q| (q.mask, q.k)).collect();
    let ribbon = ribbon_quasi_tree_masks(g);
    let mut rep = Report::new();
    let bad = ribbon.iter().filter(|m| rank.get(m).is_none_or(|k| k % 2 != 0)).count();
    rep.push(CheckRecord::new("ribbon_qt_is_even_hqt", format!("ribbon={}", ribbon.len()), bad, 0));
    let top = &all[frame.dim()];
    let ribbon_set: BTreeSet<u64> = ribbon.iter().copied().collect();
    let missing = top.iter().filter(|q| !ribbon_set.contains(&q.mask)).count();
    rep.push(CheckRecord::new("top_hqt_is_ribbon_qt", format!("top={}", top.len()), missing, 0));
    Ok(rep)
}
