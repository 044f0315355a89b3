//! Built-in families with labelled graph files.

use std::str::FromStr;

use periods_core::exactla::{rat, Rat};
use periods_core::ribbon::{bouquet, bouquet_labels, torus_grid, torus_grid_labels};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::{parse_rational, GraphDoc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("bad parameters: {0}")]
    BadParams(String),
}

fn bad(msg: impl Into<String>) -> GenerateError {
    GenerateError::BadParams(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Bouquet(usize),
    TorusGrid(usize, usize),
}

impl FromStr for Family {
    type Err = GenerateError;

    /// `bouquet:G` or `torus:MxN`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, arg) =
            s.split_once(':').ok_or_else(|| bad(format!("family {s:?}: expected bouquet:G or torus:MxN")))?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad(format!("family {s:?}: {t:?} is not a count")));
        match kind {
            "bouquet" => Ok(Family::Bouquet(num(arg)?)),
            "torus" => {
                let (m, n) = arg.split_once('x').ok_or_else(|| bad(format!("family {s:?}: expected torus:MxN")))?;
                Ok(Family::TorusGrid(num(m)?, num(n)?))
            }
            _ => Err(bad(format!("unknown family {kind:?}"))),
        }
    }
}

impl Family {
    pub fn num_edges(&self) -> usize {
        match *self {
            Family::Bouquet(g) => 2 * g,
            Family::TorusGrid(m, n) => 2 * m * n,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Family::Bouquet(g) => format!("bouquet_{g}"),
            Family::TorusGrid(m, n) => format!("torus_grid_{m}x{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSpec {
    Unit,
    List(Vec<Rat>),
    /// Numerators and denominators uniform in `1..=10`.
    Random(u64),
}

impl FromStr for WeightSpec {
    type Err = GenerateError;

    /// `unit`, `random:SEED`, or a comma-separated list of rationals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "unit" {
            return Ok(WeightSpec::Unit);
        }
        if let Some(seed) = s.strip_prefix("random:") {
            return seed.parse().map(WeightSpec::Random).map_err(|_| bad(format!("bad seed {seed:?}")));
        }
        s.split(',')
            .map(|t| parse_rational(t.trim()).ok_or_else(|| bad(format!("bad weight {t:?}"))))
            .collect::<Result<_, _>>()
            .map(WeightSpec::List)
    }
}

pub fn random_weights(n: usize, seed: u64) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rat(rng.random_range(1..=10), rng.random_range(1..=10))).collect()
}

impl WeightSpec {
    pub fn resolve(&self, n: usize) -> Result<Vec<Rat>, GenerateError> {
        match self {
            WeightSpec::Unit => Ok(vec![rat(1, 1); n]),
            WeightSpec::Random(seed) => Ok(random_weights(n, *seed)),
            WeightSpec::List(w) if w.len() == n => Ok(w.clone()),
            WeightSpec::List(w) => Err(bad(format!("{} weights given for {n} edges", w.len()))),
        }
    }
}

pub fn generate(family: Family, weights: &WeightSpec) -> Result<GraphDoc, GenerateError> {
    let w = weights.resolve(family.num_edges())?;
    let (graph, vertices, edges) = match family {
        Family::Bouquet(g) if g >= 1 => (bouquet(g), vec!["v".to_string()], bouquet_labels(g)),
        Family::Bouquet(_) => return Err(bad("bouquet needs g >= 1")),
        Family::TorusGrid(m, n) if m >= 2 && n >= 2 => {
            let vs = (0..m).flat_map(|i| (0..n).map(move |j| format!("p{i}_{j}"))).collect();
            (torus_grid(m, n), vs, torus_grid_labels(m, n))
        }
        Family::TorusGrid(..) => return Err(bad("torus grid needs m, n >= 2")),
    };
    let graph = graph.with_weights(w).map_err(|e| bad(e.to_string()))?;
    Ok(GraphDoc::with_default_darts(Some(family.name()), vertices, edges, graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse, serialize};

    #[test]
    fn families() {
        let b1 = generate(Family::Bouquet(1), &WeightSpec::Unit).unwrap();
        assert_eq!(serialize(&b1).lines().last().unwrap(), "vertex v : a1+ b1+ a1- b1-");
        let b2 = generate(Family::Bouquet(2), &WeightSpec::Unit).unwrap();
        assert_eq!(b2.graph.genus(), 2);
        let t = generate(Family::TorusGrid(2, 2), &WeightSpec::Unit).unwrap();
        let g = &t.graph;
        assert_eq!((g.num_vertices(), g.num_edges(), g.num_faces(), g.genus()), (4, 8, 4, 1));
        assert_eq!(generate(Family::Bouquet(0), &WeightSpec::Unit), Err(bad("bouquet needs g >= 1")));
        assert!(generate(Family::TorusGrid(1, 3), &WeightSpec::Unit).is_err());
    }

    #[test]
    fn round_trips() {
        for fam in ["bouquet:1", "bouquet:3", "torus:2x2", "torus:3x2"] {
            for seed in 0..3 {
                let d = generate(fam.parse().unwrap(), &WeightSpec::Random(seed)).unwrap();
                assert_eq!(parse(&serialize(&d)).unwrap(), d);
            }
        }
    }

    #[test]
    fn weight_specs() {
        assert_eq!("2,3/4".parse::<WeightSpec>().unwrap().resolve(2).unwrap(), vec![rat(2, 1), rat(3, 4)]);
        assert!("2,3".parse::<WeightSpec>().unwrap().resolve(3).is_err());
        assert!("2,x".parse::<WeightSpec>().is_err());
        let r = random_weights(50, 9);
        assert_eq!(r, random_weights(50, 9));
        assert!(r.iter().all(|w| *w.numer() <= 10.into() && *w.denom() <= 10.into() && *w.numer() >= 1.into()));
        assert!("torus:2".parse::<Family>().is_err());
    }
}
