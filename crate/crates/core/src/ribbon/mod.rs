//! Rotation systems.
//!
//! Edge `e` owns darts `2e` and `2e + 1` and is oriented from the vertex of
//! its first dart to the vertex of its second. Each vertex lists its darts
//! counterclockwise. The face successor of `d` is the dart after `pair(d)`
//! in the rotation at its vertex, so every face lies to the right of its
//! boundary walk: `face(2e)` is the right face of `e` and `face(2e + 1)` its
//! left face.

mod families;

use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::exactla::Rat;
use crate::graph::EdgeGraph;

pub use families::{bouquet, bouquet_labels, torus_grid, torus_grid_labels};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RibbonError {
    #[error("dart {0} is out of range")]
    DartOutOfRange(usize),
    #[error("dart {0} appears more than once")]
    DartRepeated(usize),
    #[error("dart {0} appears in no rotation")]
    DartMissing(usize),
    #[error("vertex {0} has an empty rotation")]
    IsolatedVertex(usize),
    #[error("weight of edge {0} is not positive")]
    NonPositiveWeight(usize),
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error("Euler characteristic {0} does not give a nonnegative integer genus")]
    BadEuler(i64),
    #[error("edge {0} is out of range")]
    EdgeOutOfRange(usize),
    #[error("edge {0} is a loop and cannot be contracted")]
    ContractLoop(usize),
    #[error("edge {0} is both contracted and deleted")]
    Overlap(usize),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
}

/// Face walks of a rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Vec<usize>>,
    pub face_of_dart: Vec<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// Connected ribbon graph with positive rational edge weights. Immutable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    rotations: Vec<Vec<usize>>,
    weights: Vec<Rat>,
    vertex_of: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    faces: FaceSet,
    genus: usize,
}

impl RibbonGraph {
    /// Builds and validates a ribbon graph. `rotations[v]` lists the darts at
    /// `v` counterclockwise; the edge count is `weights.len()`. The only
    /// vertex allowed an empty rotation is the sole vertex of an edgeless
    /// graph.
    pub fn new(rotations: Vec<Vec<usize>>, weights: Vec<Rat>) -> Result<Self, RibbonError> {
        let ne = weights.len();
        let nd = 2 * ne;
        if let Some(e) = weights.iter().position(|w| !w.is_positive()) {
            return Err(RibbonError::NonPositiveWeight(e));
        }
        let mut vertex_of = alloc::vec![usize::MAX; nd];
        let mut next = alloc::vec![0; nd];
        let mut prev = alloc::vec![0; nd];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() && !(ne == 0 && rotations.len() == 1) {
                return Err(RibbonError::IsolatedVertex(v));
            }
            for (i, &d) in rot.iter().enumerate() {
                if d >= nd {
                    return Err(RibbonError::DartOutOfRange(d));
                }
                if vertex_of[d] != usize::MAX {
                    return Err(RibbonError::DartRepeated(d));
                }
                vertex_of[d] = v;
                let n = rot[(i + 1) % rot.len()];
                next[d] = n;
            }
        }
        if let Some(d) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(RibbonError::DartMissing(d));
        }
        for d in 0..nd {
            prev[next[d]] = d;
        }
        if rotations.is_empty() {
            return Err(RibbonError::Disconnected);
        }
        let skeleton =
            EdgeGraph::new(rotations.len(), (0..ne).map(|e| (vertex_of[2 * e], vertex_of[2 * e + 1])).collect());
        if !skeleton.is_connected_spanning(0..ne) {
            return Err(RibbonError::Disconnected);
        }
        let faces = trace(&next, nd);
        let nf = if nd == 0 { 1 } else { faces.len() };
        let chi = rotations.len() as i64 - ne as i64 + nf as i64;
        if chi > 2 || chi % 2 != 0 {
            return Err(RibbonError::BadEuler(chi));
        }
        let genus = ((2 - chi) / 2) as usize;
        Ok(RibbonGraph { rotations, weights, vertex_of, next, prev, faces, genus })
    }

    /// Same rotation system, new weights.
    pub fn with_weights(&self, weights: Vec<Rat>) -> Result<Self, RibbonError> {
        if weights.len() != self.num_edges() {
            return Err(RibbonError::WeightCount { expected: self.num_edges(), got: weights.len() });
        }
        RibbonGraph::new(self.rotations.clone(), weights)
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.weights.len()
    }

    pub fn num_darts(&self) -> usize {
        2 * self.weights.len()
    }

    /// Number of faces; an edgeless graph has one.
    pub fn num_faces(&self) -> usize {
        if self.num_edges() == 0 {
            1
        } else {
            self.faces.len()
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn weight(&self, e: usize) -> &Rat {
        &self.weights[e]
    }

    pub fn vertex_of(&self, d: usize) -> usize {
        self.vertex_of[d]
    }

    /// `(tail, head)` of edge `e`.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        (self.vertex_of[2 * e], self.vertex_of[2 * e + 1])
    }

    pub fn next_ccw(&self, d: usize) -> usize {
        self.next[d]
    }

    pub fn prev_ccw(&self, d: usize) -> usize {
        self.prev[d]
    }

    pub fn face_successor(&self, d: usize) -> usize {
        self.next[d ^ 1]
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.faces.face_of_dart[d]
    }

    /// Right and left faces of `e`.
    pub fn sides(&self, e: usize) -> (usize, usize) {
        (self.face_of(2 * e), self.face_of(2 * e + 1))
    }

    pub fn skeleton(&self) -> EdgeGraph {
        EdgeGraph::new(self.num_vertices(), (0..self.num_edges()).map(|e| self.ends(e)).collect())
    }

    /// Face-adjacency graph: one vertex per face, dual edge `e` oriented
    /// from the right face of `e` to its left face.
    pub fn dual_skeleton(&self) -> EdgeGraph {
        EdgeGraph::new(self.num_faces(), (0..self.num_edges()).map(|e| self.sides(e)).collect())
    }

    /// Dual ribbon graph. Dual edge `e` crosses primal edge `e`, keeps both
    /// dart ids and carries weight `1 / c_e`. The rotation at a dual vertex
    /// is its face walk reversed.
    pub fn dual(&self) -> RibbonGraph {
        let rotations = if self.num_edges() == 0 {
            alloc::vec![Vec::new()]
        } else {
            self.faces.faces.iter().map(|f| f.iter().rev().copied().collect()).collect()
        };
        let weights = self.weights.iter().map(|c| c.recip()).collect();
        RibbonGraph::new(rotations, weights).expect("dual of a valid ribbon graph is valid")
    }

    /// Spanning ribbon subgraph on `edges`.
    pub fn subgraph(&self, edges: &[usize]) -> RibbonSubgraph {
        let ne = self.num_edges();
        let mut keep = alloc::vec![false; ne];
        for &e in edges {
            keep[e] = true;
        }
        let kept: Vec<usize> = (0..ne).filter(|&e| keep[e]).collect();
        let rotations: Vec<Vec<usize>> =
            self.rotations.iter().map(|r| r.iter().copied().filter(|&d| keep[d >> 1]).collect()).collect();
        let nv = self.num_vertices();
        let components = self.skeleton().components_of(kept.iter().copied()).components();
        // Boundary components: face walks of the restricted rotation, plus
        // one for every isolated vertex.
        let mut next = alloc::vec![usize::MAX; 2 * ne];
        for r in &rotations {
            for (i, &d) in r.iter().enumerate() {
                next[d] = r[(i + 1) % r.len()];
            }
        }
        let mut seen = alloc::vec![false; 2 * ne];
        let mut boundaries = rotations.iter().filter(|r| r.is_empty()).count();
        for e in &kept {
            for d0 in [2 * e, 2 * e + 1] {
                if seen[d0] {
                    continue;
                }
                boundaries += 1;
                let mut d = d0;
                while !seen[d] {
                    seen[d] = true;
                    d = next[d ^ 1];
                }
            }
        }
        let twice_genus = 2 * components as i64 - nv as i64 + kept.len() as i64 - boundaries as i64;
        debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
        let induced = if components == 1 {
            let renumber = renumbering(&keep);
            let rot = rotations.iter().map(|r| r.iter().map(|&d| 2 * renumber[d >> 1] + (d & 1)).collect()).collect();
            let w = kept.iter().map(|&e| self.weights[e].clone()).collect();
            Some(RibbonGraph::new(rot, w).expect("connected restriction is a valid ribbon graph"))
        } else {
            None
        };
        RibbonSubgraph {
            edges: kept,
            is_connected: components == 1,
            components,
            boundary_components: boundaries,
            ribbon_genus: (twice_genus / 2) as usize,
            induced,
        }
    }

    /// Deletes `delete`, then contracts the non-loop edges `contract`.
    /// Surviving edges are renumbered in their original order; vertices
    /// keep their relative order.
    pub fn contract_delete(&self, contract: &[usize], delete: &[usize]) -> Result<RibbonGraph, RibbonError> {
        let ne = self.num_edges();
        let mut status = alloc::vec![0u8; ne];
        for &e in delete {
            if e >= ne {
                return Err(RibbonError::EdgeOutOfRange(e));
            }
            status[e] = 2;
        }
        for &e in contract {
            if e >= ne {
                return Err(RibbonError::EdgeOutOfRange(e));
            }
            if status[e] == 2 {
                return Err(RibbonError::Overlap(e));
            }
            status[e] = 1;
        }
        let mut rotations: Vec<Option<Vec<usize>>> =
            self.rotations.iter().map(|r| Some(r.iter().copied().filter(|&d| status[d >> 1] != 2).collect())).collect();
        let mut vertex_of = self.vertex_of.clone();
        let mut order: Vec<usize> = contract.to_vec();
        order.sort_unstable();
        order.dedup();
        for e in order {
            let (u, v) = (vertex_of[2 * e], vertex_of[2 * e + 1]);
            if u == v {
                return Err(RibbonError::ContractLoop(e));
            }
            let ru = rotations[u].take().expect("live vertex");
            let rv = rotations[v].take().expect("live vertex");
            let after = |r: &[usize], d: usize| -> Vec<usize> {
                let i = r.iter().position(|&x| x == d).expect("dart in rotation");
                (1..r.len()).map(|k| r[(i + k) % r.len()]).collect()
            };
            let mut merged = after(&ru, 2 * e);
            merged.extend(after(&rv, 2 * e + 1));
            for &d in &merged {
                vertex_of[d] = u;
            }
            rotations[u] = Some(merged);
        }
        let keep: Vec<bool> = status.iter().map(|&s| s == 0).collect();
        let renumber = renumbering(&keep);
        let rot: Vec<Vec<usize>> = rotations
            .into_iter()
            .flatten()
            .map(|r| r.into_iter().map(|d| 2 * renumber[d >> 1] + (d & 1)).collect())
            .collect();
        let w = (0..ne).filter(|&e| keep[e]).map(|e| self.weights[e].clone()).collect();
        RibbonGraph::new(rot, w)
    }

    /// Weight product over `edges`.
    pub fn weight_product(&self, edges: impl IntoIterator<Item = usize>) -> Rat {
        edges.into_iter().fold(Rat::one(), |p, e| p * &self.weights[e])
    }
}

/// Spanning subgraph of a ribbon graph with its induced ribbon structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonSubgraph {
    pub edges: Vec<usize>,
    pub is_connected: bool,
    pub components: usize,
    /// Boundary components of the ribbon surface; an isolated vertex counts
    /// as one.
    pub boundary_components: usize,
    /// Sum of the genera of the components.
    pub ribbon_genus: usize,
    /// Present when connected; edge `i` is `edges[i]`.
    pub induced: Option<RibbonGraph>,
}

fn renumbering(keep: &[bool]) -> Vec<usize> {
    let mut out = alloc::vec![usize::MAX; keep.len()];
    let mut n = 0;
    for (e, &k) in keep.iter().enumerate() {
        if k {
            out[e] = n;
            n += 1;
        }
    }
    out
}

fn trace(next: &[usize], nd: usize) -> FaceSet {
    let mut face_of_dart = alloc::vec![usize::MAX; nd];
    let mut faces = Vec::new();
    for d0 in 0..nd {
        if face_of_dart[d0] != usize::MAX {
            continue;
        }
        let f = faces.len();
        let mut walk = Vec::new();
        let mut d = d0;
        while face_of_dart[d] == usize::MAX {
            face_of_dart[d] = f;
            walk.push(d);
            d = next[d ^ 1];
        }
        faces.push(walk);
    }
    FaceSet { faces, face_of_dart }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat_int;
    use alloc::vec;

    fn unit(n: usize) -> Vec<Rat> {
        vec![rat_int(1); n]
    }

    fn torus() -> RibbonGraph {
        RibbonGraph::new(vec![vec![0, 2, 1, 3]], unit(2)).unwrap()
    }

    fn planar_bouquet() -> RibbonGraph {
        RibbonGraph::new(vec![vec![0, 1, 2, 3]], unit(2)).unwrap()
    }

    #[test]
    fn torus_bouquet_faces() {
        let g = torus();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.faces().faces[0].len(), 4);
        assert_eq!(g.genus(), 1);
    }

    #[test]
    fn planar_bouquet_faces() {
        let g = planar_bouquet();
        assert_eq!(g.num_faces(), 3);
        assert_eq!(g.genus(), 0);
    }

    #[test]
    fn single_edge_path() {
        let g = RibbonGraph::new(vec![vec![0], vec![1]], unit(1)).unwrap();
        assert_eq!(g.num_faces(), 1);
        assert_eq!(g.faces().faces[0].len(), 2);
        assert_eq!(g.genus(), 0);
    }

    #[test]
    fn octagon_bouquet_genus() {
        assert_eq!(bouquet(2).genus(), 2);
        assert_eq!(bouquet(2).num_faces(), 1);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(RibbonGraph::new(vec![vec![0, 0, 1]], unit(1)), Err(RibbonError::DartRepeated(0)));
        assert_eq!(RibbonGraph::new(vec![vec![0]], unit(1)), Err(RibbonError::DartMissing(1)));
        assert_eq!(RibbonGraph::new(vec![vec![0, 5]], unit(1)), Err(RibbonError::DartOutOfRange(5)));
        assert_eq!(RibbonGraph::new(vec![vec![0, 1], vec![]], unit(1)), Err(RibbonError::IsolatedVertex(1)));
        assert_eq!(RibbonGraph::new(vec![vec![0, 1]], vec![rat_int(0)]), Err(RibbonError::NonPositiveWeight(0)));
        assert_eq!(RibbonGraph::new(vec![vec![0, 1], vec![2, 3]], unit(2)), Err(RibbonError::Disconnected));
        assert_eq!(RibbonGraph::new(vec![vec![]], vec![]).unwrap().genus(), 0);
    }

    #[test]
    fn duals() {
        let d = torus().dual();
        assert_eq!((d.num_vertices(), d.num_edges(), d.genus()), (1, 2, 1));
        assert_eq!(d.weight(0), &rat_int(1));
        let p = planar_bouquet().dual();
        assert_eq!((p.num_vertices(), p.num_edges(), p.genus()), (3, 2, 0));
        assert!((0..2).all(|e| p.ends(e).0 != p.ends(e).1));
        for g in [torus(), planar_bouquet(), bouquet(2), torus_grid(2, 2), torus_grid(2, 3)] {
            let dd = g.dual().dual();
            assert_eq!(dd.num_vertices(), g.num_vertices());
            assert_eq!(dd.num_edges(), g.num_edges());
            assert_eq!(dd.genus(), g.genus());
            assert_eq!(g.dual().genus(), g.genus());
            assert_eq!(dd.weights(), g.weights());
        }
    }

    #[test]
    fn dual_orientation_is_right_to_left() {
        let g = torus_grid(2, 3);
        let d = g.dual();
        for e in 0..g.num_edges() {
            assert_eq!(d.ends(e), g.sides(e));
        }
    }

    #[test]
    fn subgraphs_of_octagon() {
        let g = bouquet(2);
        let s = g.subgraph(&[1, 3]);
        assert!(s.is_connected);
        assert_eq!(s.ribbon_genus, 0);
        let s = g.subgraph(&[0, 1]);
        assert_eq!(s.ribbon_genus, 1);
        assert_eq!(s.induced.unwrap().genus(), 1);
        let grid = torus_grid(2, 2);
        let empty = grid.subgraph(&[]);
        assert!(!empty.is_connected);
        assert_eq!(empty.boundary_components, 4);
        let full = grid.subgraph(&(0..8).collect::<Vec<_>>());
        assert_eq!(full.ribbon_genus, 1);
    }

    #[test]
    fn contraction_and_deletion() {
        let g = torus_grid(2, 2);
        let tree = g.skeleton().greedy_spanning_tree(0..8).unwrap();
        let c = g.contract_delete(&tree, &[]).unwrap();
        assert_eq!((c.num_vertices(), c.genus()), (1, 1));
        assert_eq!(g.contract_delete(&[], &[]).unwrap(), g);
        assert_eq!(torus().contract_delete(&[0], &[]), Err(RibbonError::ContractLoop(0)));
        assert_eq!(g.contract_delete(&[0], &[0]), Err(RibbonError::Overlap(0)));
    }
}
