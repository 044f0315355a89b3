//! Plain multigraph utilities over the dart numbering shared with
//! [`crate::ribbon`]: edge `e` owns darts `2e` (at its tail) and `2e + 1`
//! (at its head). A walk is a sequence of darts, each leaving the vertex it
//! sits at.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactla::Rat;

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: alloc::vec![1; n], components: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Oriented multigraph; loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGraph {
    nv: usize,
    ends: Vec<(usize, usize)>,
}

impl EdgeGraph {
    /// `ends[e] = (tail, head)`.
    pub fn new(nv: usize, ends: Vec<(usize, usize)>) -> Self {
        assert!(ends.iter().all(|&(a, b)| a < nv && b < nv), "edge endpoint out of range");
        EdgeGraph { nv, ends }
    }

    pub fn num_vertices(&self) -> usize {
        self.nv
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn dart_vertex(&self, d: usize) -> usize {
        let (t, h) = self.ends[d >> 1];
        if d & 1 == 0 {
            t
        } else {
            h
        }
    }

    /// Union-find over the given edges.
    pub fn components_of(&self, edges: impl IntoIterator<Item = usize>) -> UnionFind {
        let mut uf = UnionFind::new(self.nv);
        for e in edges {
            let (a, b) = self.ends[e];
            uf.union(a, b);
        }
        uf
    }

    /// Whether the spanning subgraph on `edges` is connected.
    pub fn is_connected_spanning(&self, edges: impl IntoIterator<Item = usize>) -> bool {
        self.nv <= 1 || self.components_of(edges).components() == 1
    }

    /// Greedy spanning forest taking edges in the given order.
    pub fn greedy_forest(&self, edges: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut uf = UnionFind::new(self.nv);
        edges.into_iter().filter(|&e| uf.union(self.ends[e].0, self.ends[e].1)).collect()
    }

    /// Greedy spanning tree, or `None` when `edges` do not connect every vertex.
    pub fn greedy_spanning_tree(&self, edges: impl IntoIterator<Item = usize>) -> Option<Vec<usize>> {
        let t = self.greedy_forest(edges);
        (t.len() + 1 == self.nv.max(1)).then_some(t)
    }

    /// Darts of the unique path from `from` to `to` inside the forest `tree`.
    pub fn tree_walk(&self, tree: &[usize], from: usize, to: usize) -> Option<Vec<usize>> {
        let mut adj: Vec<Vec<usize>> = alloc::vec![Vec::new(); self.nv];
        for &e in tree {
            adj[self.ends[e].0].push(2 * e);
            adj[self.ends[e].1].push(2 * e + 1);
        }
        // Parent dart pointing into each reached vertex.
        let mut via: Vec<Option<usize>> = alloc::vec![None; self.nv];
        let mut seen = alloc::vec![false; self.nv];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &d in &adj[v] {
                let w = self.dart_vertex(d ^ 1);
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut walk = Vec::new();
        let mut v = to;
        while v != from {
            let d = via[v].expect("reached vertices have a parent dart");
            walk.push(d);
            v = self.dart_vertex(d);
        }
        walk.reverse();
        Some(walk)
    }

    /// Closed walk along `e` and back through `tree`. `e` must not lie in
    /// `tree`, and `tree` must connect the ends of `e`.
    pub fn fundamental_walk(&self, tree: &[usize], e: usize) -> Option<Vec<usize>> {
        let (t, h) = self.ends[e];
        let mut walk = alloc::vec![2 * e];
        walk.extend(self.tree_walk(tree, h, t)?);
        Some(walk)
    }

    /// Signed edge coefficients of a walk.
    pub fn walk_chain(&self, walk: &[usize]) -> Vec<i64> {
        let mut c = alloc::vec![0i64; self.ends.len()];
        for &d in walk {
            c[d >> 1] += if d & 1 == 0 { 1 } else { -1 };
        }
        c
    }

    /// Boundary of an integer chain: `head - tail` per edge.
    pub fn boundary(&self, chain: &[i64]) -> Vec<i64> {
        let mut b = alloc::vec![0i64; self.nv];
        for (e, &c) in chain.iter().enumerate() {
            let (t, h) = self.ends[e];
            b[h] += c;
            b[t] -= c;
        }
        b
    }

    /// Every spanning tree as an edge bitmask. Exhaustive; small graphs only.
    pub fn spanning_tree_masks(&self) -> Vec<u64> {
        assert!(self.ends.len() <= 64, "edge count exceeds mask width");
        subsets_of_size(self.ends.len(), self.nv.saturating_sub(1))
            .filter(|&m| self.is_connected_spanning(mask_edges(m)))
            .collect()
    }

    /// `sum over spanning trees of prod weights`, by brute force.
    pub fn spanning_tree_weight_sum(&self, weights: &[Rat]) -> Rat {
        self.spanning_tree_masks()
            .into_iter()
            .map(|m| mask_edges(m).fold(Rat::one(), |p, e| p * &weights[e]))
            .fold(Rat::zero(), |s, x| s + x)
    }
}

/// Edge ids set in a bitmask, ascending.
pub fn mask_edges(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

pub fn edges_mask(edges: &[usize]) -> u64 {
    edges.iter().fold(0u64, |m, &e| m | 1 << e)
}

/// All `k`-subsets of `0..n` as bitmasks in increasing numeric order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 64, "subset width exceeds 64");
    let limit: u128 = 1u128 << n;
    let mut cur: Option<u128> = if k > n { None } else { Some((1u128 << k) - 1) };
    core::iter::from_fn(move || {
        let c = cur?;
        if c >= limit {
            cur = None;
            return None;
        }
        cur = if c == 0 {
            None
        } else {
            // Gosper's hack.
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            Some((((ripple ^ c) >> 2) / low) | ripple)
        };
        Some(c as u64)
    })
}

/// All `k`-subsets of `0..n` as sorted index vectors, lexicographic.
pub fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}
