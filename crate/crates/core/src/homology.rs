//! Tree-cotree decompositions, fundamental (co)cycles, intersection numbers
//! and symplectic frames.
//!
//! The dual-primal pairing is `ι(x★, y) = Σ_e x★[e] y[e]`, i.e. a dual edge
//! crosses its primal edge with index `+1`. Intersections of two primal
//! cycles are computed geometrically: the first cycle is pushed off to its
//! left into a dual cycle and paired against the second with the sign that
//! matches the counterclockwise orientation of the surface. Under this sign
//! the torus bouquet has `ι(a, b) = +1`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::exactla::{IntMatrix, RatMatrix};
use crate::graph::EdgeGraph;
use crate::ribbon::RibbonGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("seed edges contain a cycle or an invalid edge id")]
    SeedNotATree,
    #[error("seed tree leaves no dual spanning tree in its complement")]
    SeedNotExtendable,
    #[error("edge {0} lies in the tree")]
    EdgeInTree(usize),
    #[error("chains live on the wrong sides")]
    SideMismatch,
    #[error("intersection matrix is not unimodular")]
    NotUnimodular,
    #[error("chain is not a cycle")]
    NotACycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Primal,
    Dual,
}

/// Integer 1-chain, one coefficient per (primal or dual) edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain1 {
    pub side: Side,
    pub coeffs: Vec<i64>,
}

impl Chain1 {
    pub fn zero(side: Side, ne: usize) -> Self {
        Chain1 { side, coeffs: alloc::vec![0; ne] }
    }

    pub fn unit(side: Side, ne: usize, e: usize) -> Self {
        let mut c = Self::zero(side, ne);
        c.coeffs[e] = 1;
        c
    }

    pub fn get(&self, e: usize) -> i64 {
        self.coeffs[e]
    }

    /// `self + f * other`.
    pub fn add_scaled(&self, other: &Chain1, f: i64) -> Chain1 {
        assert_eq!(self.side, other.side, "adding chains on different sides");
        Chain1 { side: self.side, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + f * b).collect() }
    }

    pub fn scale(&self, f: i64) -> Chain1 {
        Chain1 { side: self.side, coeffs: self.coeffs.iter().map(|a| f * a).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Boundary vanishes at every vertex (primal) or face (dual).
    pub fn is_cycle(&self, g: &RibbonGraph) -> bool {
        let skel = match self.side {
            Side::Primal => g.skeleton(),
            Side::Dual => g.dual_skeleton(),
        };
        skel.boundary(&self.coeffs).iter().all(|&b| b == 0)
    }
}

/// `ι(dual, primal)`.
pub fn intersection(dual: &Chain1, primal: &Chain1) -> Result<i64, HomologyError> {
    if dual.side != Side::Dual || primal.side != Side::Primal {
        return Err(HomologyError::SideMismatch);
    }
    Ok(dual.coeffs.iter().zip(&primal.coeffs).map(|(a, b)| a * b).sum())
}

/// Dual chain running parallel to the closed primal walk on its left. At
/// each vertex the darts strictly between the outgoing and the incoming dart
/// (counterclockwise from the outgoing one) are crossed.
pub fn push_off(g: &RibbonGraph, walk: &[usize]) -> Chain1 {
    let mut c = Chain1::zero(Side::Dual, g.num_edges());
    let n = walk.len();
    for i in 0..n {
        let incoming = walk[i] ^ 1;
        let outgoing = walk[(i + 1) % n];
        debug_assert_eq!(g.vertex_of(incoming), g.vertex_of(outgoing), "walk is not closed");
        let mut x = g.next_ccw(outgoing);
        while x != incoming {
            c.coeffs[x >> 1] += if x & 1 == 1 { 1 } else { -1 };
            x = g.next_ccw(x);
        }
    }
    c
}

/// Intersection number of a closed primal walk with a primal chain.
pub fn primal_intersection(g: &RibbonGraph, walk: &[usize], chain: &Chain1) -> Result<i64, HomologyError> {
    Ok(-intersection(&push_off(g, walk), chain)?)
}

/// `E = T0 ⊔ R ⊔ C0`, `T0` a spanning tree and `C0★` a dual spanning tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCotree {
    pub tree: Vec<usize>,
    pub cotree: Vec<usize>,
    pub rest: Vec<usize>,
}

/// Greedy decomposition by edge id, starting from `seed` if given.
pub fn tree_cotree(g: &RibbonGraph, seed: Option<&[usize]>) -> Result<TreeCotree, HomologyError> {
    let ne = g.num_edges();
    let skel = g.skeleton();
    let seed = seed.unwrap_or(&[]);
    if seed.iter().any(|&e| e >= ne) || skel.greedy_forest(seed.iter().copied()).len() != seed.len() {
        return Err(HomologyError::SeedNotATree);
    }
    let mut tree = skel.greedy_forest(seed.iter().copied().chain(0..ne));
    tree.sort_unstable();
    let mut in_tree = alloc::vec![false; ne];
    for &e in &tree {
        in_tree[e] = true;
    }
    let dual = g.dual_skeleton();
    let mut cotree =
        dual.greedy_spanning_tree((0..ne).filter(|&e| !in_tree[e])).ok_or(HomologyError::SeedNotExtendable)?;
    cotree.sort_unstable();
    let mut in_cotree = alloc::vec![false; ne];
    for &e in &cotree {
        in_cotree[e] = true;
    }
    let rest = (0..ne).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();
    Ok(TreeCotree { tree, cotree, rest })
}

/// Closed walk of `e` through `tree`, with the chain it carries.
pub fn fundamental_cycle_walk(skel: &EdgeGraph, tree: &[usize], e: usize) -> Result<Vec<usize>, HomologyError> {
    if tree.contains(&e) {
        return Err(HomologyError::EdgeInTree(e));
    }
    Ok(skel.fundamental_walk(tree, e).expect("tree spans the ends of e"))
}

pub fn fundamental_cycle(g: &RibbonGraph, tree: &[usize], e: usize) -> Result<Chain1, HomologyError> {
    let skel = g.skeleton();
    let walk = fundamental_cycle_walk(&skel, tree, e)?;
    Ok(Chain1 { side: Side::Primal, coeffs: skel.walk_chain(&walk) })
}

/// Dual cycle through `e★` closed up in the dual tree `cotree★`.
pub fn fundamental_cocycle(g: &RibbonGraph, cotree: &[usize], e: usize) -> Result<Chain1, HomologyError> {
    let skel = g.dual_skeleton();
    let walk = fundamental_cycle_walk(&skel, cotree, e)?;
    Ok(Chain1 { side: Side::Dual, coeffs: skel.walk_chain(&walk) })
}

/// Symplectic basis `γ_1..γ_2g` with dual basis `γ^1..γ^2g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyFrame {
    pub genus: usize,
    pub decomposition: TreeCotree,
    pub basis: Vec<Chain1>,
    pub dual_basis: Vec<Chain1>,
    /// Dual chains homologous to each `γ_j` (left push-offs).
    pub basis_pushoffs: Vec<Chain1>,
    /// `M[e, i] = ι(γ^i, e)`, `|E| x 2g`.
    pub m: IntMatrix,
}

/// Standard `[[0, I], [-I, 0]]`.
pub fn standard_omega(g: usize) -> IntMatrix {
    IntMatrix::from_fn(2 * g, 2 * g, |i, j| {
        if j == i + g && i < g {
            BigInt::from(1)
        } else if i == j + g && j < g {
            BigInt::from(-1)
        } else {
            BigInt::zero()
        }
    })
}

fn bilinear(om: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for (i, xi) in x.iter().enumerate() {
        if *xi != 0 {
            for (j, yj) in y.iter().enumerate() {
                s += xi * om[i][j] * yj;
            }
        }
    }
    s
}

/// Columns `e_1..e_g, f_1..f_g` of a unimodular `N` with `Nᵗ Ω' N`
/// standard, by symplectic Gram-Schmidt over `Z`.
pub fn symplectic_reduction(om: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, HomologyError> {
    let n = om.len();
    if !n.is_multiple_of(2) {
        return Err(HomologyError::NotUnimodular);
    }
    let mut remaining: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    while !remaining.is_empty() {
        let e = remaining.remove(0);
        // Euclid on the pairings with e until a single ±1 survives.
        let f_index = loop {
            let vals: Vec<i64> = remaining.iter().map(|z| bilinear(om, &e, z)).collect();
            let nonzero: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] != 0).collect();
            let Some(&p) = nonzero.iter().min_by_key(|&&i| vals[i].abs()) else {
                return Err(HomologyError::NotUnimodular);
            };
            if nonzero.len() == 1 {
                if vals[p].abs() != 1 {
                    return Err(HomologyError::NotUnimodular);
                }
                if vals[p] == -1 {
                    remaining[p].iter_mut().for_each(|x| *x = -*x);
                }
                break p;
            }
            let pivot = remaining[p].clone();
            for &i in &nonzero {
                if i != p {
                    let q = vals[i] / vals[p];
                    for (x, y) in remaining[i].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                }
            }
        };
        let f = remaining.remove(f_index);
        for z in remaining.iter_mut() {
            let (zf, ze) = (bilinear(om, z, &f), bilinear(om, z, &e));
            for i in 0..n {
                z[i] += -zf * e[i] + ze * f[i];
            }
        }
        es.push(e);
        fs.push(f);
    }
    es.extend(fs);
    Ok(es)
}

/// Builds the frame from the fundamental (co)cycles of `R`.
pub fn symplectic_frame(g: &RibbonGraph, tc: &TreeCotree) -> Result<HomologyFrame, HomologyError> {
    let ne = g.num_edges();
    let skel = g.skeleton();
    let dskel = g.dual_skeleton();
    let r = &tc.rest;
    let n = r.len();
    let walks: Vec<Vec<usize>> =
        r.iter().map(|&e| fundamental_cycle_walk(&skel, &tc.tree, e)).collect::<Result<_, _>>()?;
    let cycles: Vec<Chain1> = walks.iter().map(|w| Chain1 { side: Side::Primal, coeffs: skel.walk_chain(w) }).collect();
    let pushoffs: Vec<Chain1> = walks.iter().map(|w| push_off(g, w)).collect();
    let cocycles: Vec<Chain1> = r
        .iter()
        .map(|&e| {
            let w = fundamental_cycle_walk(&dskel, &tc.cotree, e)?;
            Ok(Chain1 { side: Side::Dual, coeffs: dskel.walk_chain(&w) })
        })
        .collect::<Result<_, HomologyError>>()?;
    let om: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| -intersection(&pushoffs[i], &cycles[j]).expect("sides match")).collect())
        .collect();
    let cols = symplectic_reduction(&om)?;
    let nmat = IntMatrix::from_fn(n, n, |i, j| BigInt::from(cols[j][i]));
    let ninv = nmat.to_rat().inverse().map_err(|_| HomologyError::NotUnimodular)?;
    let ninv_t: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = &ninv[(j, i)];
                    if !x.is_integer() {
                        return Err(HomologyError::NotUnimodular);
                    }
                    x.to_integer().to_i64().ok_or(HomologyError::NotUnimodular)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let combine = |side: Side, src: &[Chain1], coeff: &dyn Fn(usize, usize) -> i64| -> Vec<Chain1> {
        (0..n).map(|j| (0..n).fold(Chain1::zero(side, ne), |acc, s| acc.add_scaled(&src[s], coeff(s, j)))).collect()
    };
    let basis = combine(Side::Primal, &cycles, &|s, j| cols[j][s]);
    let basis_pushoffs = combine(Side::Dual, &pushoffs, &|s, j| cols[j][s]);
    let dual_basis = combine(Side::Dual, &cocycles, &|s, i| ninv_t[s][i]);
    let m = IntMatrix::from_fn(ne, n, |e, i| BigInt::from(dual_basis[i].coeffs[e]));
    Ok(HomologyFrame { genus: n / 2, decomposition: tc.clone(), basis, dual_basis, basis_pushoffs, m })
}

/// Frame from the default tree-cotree decomposition.
pub fn default_frame(g: &RibbonGraph) -> HomologyFrame {
    let tc = tree_cotree(g, None).expect("unseeded decomposition always exists");
    symplectic_frame(g, &tc).expect("tree-cotree intersection form is unimodular")
}

impl HomologyFrame {
    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    /// `M` as a rational matrix.
    pub fn m_rat(&self) -> RatMatrix {
        self.m.to_rat()
    }

    /// Row `e` of `M`.
    pub fn m_row(&self, e: usize) -> Vec<i64> {
        (0..self.dim()).map(|i| self.m[(e, i)].to_i64().expect("small entries")).collect()
    }

    /// `a_i = ι(γ^i, z)` for a primal cycle `z`.
    pub fn class_coordinates(&self, g: &RibbonGraph, z: &Chain1) -> Result<Vec<i64>, HomologyError> {
        if z.side != Side::Primal {
            return Err(HomologyError::SideMismatch);
        }
        if !z.is_cycle(g) {
            return Err(HomologyError::NotACycle);
        }
        self.dual_basis.iter().map(|d| intersection(d, z)).collect()
    }

    /// `ι(γ^i, γ_j)`.
    pub fn kronecker_matrix(&self) -> IntMatrix {
        let n = self.dim();
        IntMatrix::from_fn(n, n, |i, j| BigInt::from(intersection(&self.dual_basis[i], &self.basis[j]).expect("sides")))
    }

    /// Intersection matrix `ι(γ_i, γ_j)` of the primal basis.
    pub fn gram_matrix(&self) -> IntMatrix {
        let n = self.dim();
        IntMatrix::from_fn(n, n, |i, j| {
            BigInt::from(-intersection(&self.basis_pushoffs[i], &self.basis[j]).expect("sides"))
        })
    }

    /// Every stored chain is a cycle on its side, and every column of `M` sums
    /// to zero around every face.
    pub fn chains_are_cycles(&self, g: &RibbonGraph) -> bool {
        self.basis.iter().chain(&self.dual_basis).chain(&self.basis_pushoffs).all(|c| c.is_cycle(g))
            && self.m_columns_closed(g)
    }

    pub fn m_columns_closed(&self, g: &RibbonGraph) -> bool {
        let skel = g.skeleton();
        g.faces().faces.iter().all(|f| {
            let chain = skel.walk_chain(f);
            (0..self.dim()).all(|i| (0..g.num_edges()).map(|e| chain[e] * self.m_row(e)[i]).sum::<i64>() == 0)
        })
    }

    /// `ι(γ^i, γ_j) = δ_ij`, Gram matrix standard, all chains closed.
    pub fn checks_pass(&self, g: &RibbonGraph) -> bool {
        self.kronecker_matrix() == IntMatrix::identity(self.dim())
            && self.gram_matrix() == standard_omega(self.genus)
            && self.chains_are_cycles(g)
    }
}
