//! Homological quasi-trees and the identities they satisfy.
//!
//! A `k`-quasi-tree is a connected spanning subgraph with `|V| - 1 + k`
//! edges whose cycle space maps injectively, with rank `k`, into the
//! homology of the surface. [`CycleSpace`] abstracts over the primal graph
//! (class coordinates `ι(γ^i, z)` read off the rows of `M`) and the dual graph
//! (coordinates `ι(z★, γ_j)` read off the primal basis chains), so the same
//! enumeration serves both sides.

mod covering;
mod identities;

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::exactla::{IntMatrix, Rat};
use crate::graph::{mask_edges, subsets_of_size, EdgeGraph};
use crate::homology::HomologyFrame;
use crate::ribbon::RibbonGraph;

pub use covering::{covering_components, edge_voltages, verify_covering};
pub use identities::{
    delta_matroid_violation, minor_expansion_rhs, ribbon_quasi_tree_masks, verify_delta_matroid, verify_det_dual_trees,
    verify_duality, verify_minor_expansion, verify_ribbon_comparison, verify_wp_identity, wp_quasi_tree_sum,
};

/// Default cap on the edge count for exhaustive enumeration.
pub const DEFAULT_MAX_EDGES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuasiTreeError {
    #[error("{edges} edges exceed the enumeration limit of {max}")]
    TooManyEdges { edges: usize, max: usize },
    #[error("index set does not select {k} distinct rows out of {dim}")]
    BadIndex { k: usize, dim: usize },
    #[error("quasi-tree does not embed in a sphere")]
    NotSphereEmbedded,
    #[error("quasi-tree rank is {k}, expected {g}")]
    NotRankG { k: usize, g: usize },
    #[error("homology rank {k} is outside 0..={dim}")]
    BadRank { k: usize, dim: usize },
}

/// Graph plus the linear map from its integer cycles to `Z^2g`.
#[derive(Debug, Clone)]
pub struct CycleSpace {
    pub graph: EdgeGraph,
    /// `class_rows[e]`: image of the unit chain on `e`.
    pub class_rows: Vec<Vec<i64>>,
    pub weights: Vec<Rat>,
    pub dim: usize,
}

/// Quasi-tree with the data used by its `T_I` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiTree {
    pub edges: Vec<usize>,
    pub mask: u64,
    pub k: usize,
    /// Greedy lowest-id spanning tree inside `edges`.
    pub inner_tree: Vec<usize>,
    pub extra: Vec<usize>,
    /// `dim x k`; column `s` holds the class coordinates of the fundamental
    /// cycle of `extra[s]` in `inner_tree`.
    pub class_matrix: IntMatrix,
}

impl CycleSpace {
    pub fn primal(g: &RibbonGraph, frame: &HomologyFrame) -> Self {
        CycleSpace {
            graph: g.skeleton(),
            class_rows: (0..g.num_edges()).map(|e| frame.m_row(e)).collect(),
            weights: g.weights().to_vec(),
            dim: frame.dim(),
        }
    }

    /// Dual side: vertices are faces, weights `1 / c_e`, coordinates
    /// `ι(z★, γ_j)`.
    pub fn dual(g: &RibbonGraph, frame: &HomologyFrame) -> Self {
        CycleSpace {
            graph: g.dual_skeleton(),
            class_rows: (0..g.num_edges()).map(|e| frame.basis.iter().map(|b| b.coeffs[e]).collect()).collect(),
            weights: g.weights().iter().map(Rat::recip).collect(),
            dim: frame.dim(),
        }
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    /// Class coordinates of an integer cycle.
    pub fn classes(&self, chain: &[i64]) -> Vec<i64> {
        let mut out = alloc::vec![0i64; self.dim];
        for (e, &c) in chain.iter().enumerate() {
            if c != 0 {
                for (o, r) in out.iter_mut().zip(&self.class_rows[e]) {
                    *o += c * r;
                }
            }
        }
        out
    }

    /// The quasi-tree on `mask`, if it is one.
    pub fn quasi_tree(&self, mask: u64) -> Option<QuasiTree> {
        let edges: Vec<usize> = mask_edges(mask).collect();
        let nv = self.graph.num_vertices();
        let k = (edges.len() + 1).checked_sub(nv.max(1))?;
        if k > self.dim {
            return None;
        }
        let inner_tree = self.graph.greedy_spanning_tree(edges.iter().copied())?;
        let extra: Vec<usize> = edges.iter().copied().filter(|e| !inner_tree.contains(e)).collect();
        let cols: Vec<Vec<i64>> = extra
            .iter()
            .map(|&e| {
                let walk = self.graph.fundamental_walk(&inner_tree, e).expect("tree spans");
                self.classes(&self.graph.walk_chain(&walk))
            })
            .collect();
        let class_matrix = IntMatrix::from_fn(self.dim, k, |i, s| BigInt::from(cols[s][i]));
        (class_matrix.rank() == k).then_some(QuasiTree { edges, mask, k, inner_tree, extra, class_matrix })
    }

    fn check_size(&self, max_edges: usize) -> Result<(), QuasiTreeError> {
        let ne = self.num_edges();
        if ne > max_edges.min(64) {
            return Err(QuasiTreeError::TooManyEdges { edges: ne, max: max_edges.min(64) });
        }
        Ok(())
    }

    /// All `k`-quasi-trees in increasing mask order.
    pub fn enumerate(&self, k: usize, max_edges: usize) -> Result<Vec<QuasiTree>, QuasiTreeError> {
        self.check_size(max_edges)?;
        if k > self.dim {
            return Err(QuasiTreeError::BadRank { k, dim: self.dim });
        }
        let size = self.graph.num_vertices().max(1) - 1 + k;
        Ok(subsets_of_size(self.num_edges(), size).filter_map(|m| self.quasi_tree(m)).collect())
    }

    /// Quasi-trees of every rank, grouped by rank.
    pub fn enumerate_all(&self, max_edges: usize) -> Result<Vec<Vec<QuasiTree>>, QuasiTreeError> {
        (0..=self.dim).map(|k| self.enumerate(k, max_edges)).collect()
    }

    pub fn weight(&self, qt: &QuasiTree) -> Rat {
        qt.edges.iter().fold(num_traits::One::one(), |p: Rat, &e| p * &self.weights[e])
    }
}

impl QuasiTree {
    /// `det T_I`: determinant of the rows `I` (0-based) of the class matrix.
    pub fn t_det(&self, rows: &[usize]) -> Result<BigInt, QuasiTreeError> {
        let dim = self.class_matrix.rows();
        let distinct = (1..rows.len()).all(|i| !rows[..i].contains(&rows[i]));
        if rows.len() != self.k || !distinct || rows.iter().any(|&r| r >= dim) {
            return Err(QuasiTreeError::BadIndex { k: self.k, dim });
        }
        let cols: Vec<usize> = (0..self.k).collect();
        Ok(self.class_matrix.select(rows, &cols).det().expect("square"))
    }
}

/// Complement of an edge mask within `ne` edges.
pub fn complement_mask(mask: u64, ne: usize) -> u64 {
    let full = if ne == 64 { u64::MAX } else { (1u64 << ne) - 1 };
    !mask & full
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::default_frame;
    use crate::ribbon::{bouquet, torus_grid};
    use alloc::vec;
    use num_traits::{Signed, Zero};

    #[test]
    fn torus_bouquet_family() {
        let g = bouquet(1);
        let sp = CycleSpace::primal(&g, &default_frame(&g));
        let k1: Vec<Vec<usize>> = sp.enumerate(1, 16).unwrap().into_iter().map(|q| q.edges).collect();
        assert_eq!(k1, vec![vec![0], vec![1]]);
        let k2 = sp.enumerate(2, 16).unwrap();
        assert_eq!(k2.len(), 1);
        assert_eq!(k2[0].edges, vec![0, 1]);
        assert_eq!(sp.enumerate(0, 16).unwrap().len(), 1);
        let a = &sp.enumerate(1, 16).unwrap()[0];
        assert_eq!(a.t_det(&[0]).unwrap().abs(), BigInt::from(1));
        assert_eq!(a.t_det(&[1]).unwrap(), BigInt::zero());
        assert!(a.t_det(&[0, 1]).is_err());
    }

    #[test]
    fn rank_zero_quasi_trees_are_spanning_trees() {
        let g = torus_grid(2, 2);
        let sp = CycleSpace::primal(&g, &default_frame(&g));
        let masks: Vec<u64> = sp.enumerate(0, 16).unwrap().iter().map(|q| q.mask).collect();
        assert_eq!(masks, g.skeleton().spanning_tree_masks());
    }

    #[test]
    fn octagon_b_loops() {
        let g = bouquet(2);
        let sp = CycleSpace::primal(&g, &default_frame(&g));
        let qt = sp.quasi_tree(0b1010).unwrap();
        assert_eq!(qt.t_det(&[2, 3]).unwrap().abs(), BigInt::from(1));
        assert_eq!(qt.t_det(&[0, 1]).unwrap(), BigInt::zero());
        for q in sp.enumerate(4, 16).unwrap() {
            assert!(q.t_det(&[0, 1, 2, 3]).unwrap().abs() <= BigInt::from(1));
        }
    }

    #[test]
    fn edge_cap() {
        let g = torus_grid(3, 3);
        let sp = CycleSpace::primal(&g, &default_frame(&g));
        assert_eq!(sp.enumerate(0, 16), Err(QuasiTreeError::TooManyEdges { edges: 18, max: 16 }));
        assert_eq!(complement_mask(0b0101, 4), 0b1010);
    }
}
