use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::RibbonGraph;
use crate::exactla::rat_int;

/// One vertex with loops `a_1, b_1, ..., a_g, b_g` (edges `2i`, `2i + 1`),
/// rotation `a_1+ b_1+ a_1- b_1- ...`: the standard `4g`-gon identification.
/// `g = 0` gives the single-vertex edgeless graph. Unit weights.
pub fn bouquet(g: usize) -> RibbonGraph {
    let mut rot = Vec::with_capacity(4 * g);
    for i in 0..g {
        let (a, b) = (2 * i, 2 * i + 1);
        rot.extend([2 * a, 2 * b, 2 * a + 1, 2 * b + 1]);
    }
    RibbonGraph::new(alloc::vec![rot], alloc::vec![rat_int(1); 2 * g]).expect("bouquet is valid")
}

pub fn bouquet_labels(g: usize) -> Vec<String> {
    (1..=g).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect()
}

/// `m x n` square grid on the torus. Vertex `(i, j)` is `i * n + j`. Edge
/// `i * n + j` runs `(i, j) -> (i, j + 1)`, edge `m * n + i * n + j` runs
/// `(i, j) -> (i + 1, j)`, indices mod `m`, `n`. Requires `m, n >= 2`.
pub fn torus_grid(m: usize, n: usize) -> RibbonGraph {
    assert!(m >= 2 && n >= 2, "torus grid needs m, n >= 2");
    let h = |i: usize, j: usize| (i % m) * n + (j % n);
    let v = |i: usize, j: usize| m * n + (i % m) * n + (j % n);
    let rotations = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| alloc::vec![2 * h(i, j), 2 * v(i, j), 2 * h(i, j + n - 1) + 1, 2 * v(i + m - 1, j) + 1,])
        .collect();
    RibbonGraph::new(rotations, alloc::vec![rat_int(1); 2 * m * n]).expect("torus grid is valid")
}

pub fn torus_grid_labels(m: usize, n: usize) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        for j in 0..n {
            out.push(format!("h{i}_{j}"));
        }
    }
    for i in 0..m {
        for j in 0..n {
            out.push(format!("v{i}_{j}"));
        }
    }
    out
}
