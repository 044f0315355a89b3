//! Acceptance gate: every criterion over the corpus of bouquets and torus
//! grids with seeded random weights, exact comparison throughout. Runs
//! without the test harness so the per-criterion lines always print.

use std::time::Instant;

use periods::generate::{generate, Family, WeightSpec};
use periods::suites::{bilinear_checks, frame_checks, structure_checks};
use periods_core::bundle::verify_bundle_hessian;
use periods_core::homology::default_frame;
use periods_core::period::omega_l;
use periods_core::quasitree::{
    verify_covering, verify_delta_matroid, verify_det_dual_trees, verify_duality, verify_minor_expansion,
    verify_wp_identity, DEFAULT_MAX_EDGES,
};
use periods_core::report::Report;
use periods_core::{HomologyFrame, PeriodData, RibbonGraph};

const FAMILIES: [Family; 4] =
    [Family::Bouquet(1), Family::Bouquet(2), Family::TorusGrid(2, 2), Family::TorusGrid(2, 3)];
const SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

struct Case {
    family: Family,
    seed: u64,
    graph: RibbonGraph,
    frame: HomologyFrame,
    periods: PeriodData,
}

fn corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for family in FAMILIES {
        for seed in SEEDS {
            let graph = generate(family, &WeightSpec::Random(seed)).unwrap().graph;
            let frame = default_frame(&graph);
            let periods = omega_l(&graph, &frame, 0);
            out.push(Case { family, seed, graph, frame, periods });
        }
    }
    out
}

struct Criterion {
    id: usize,
    title: &'static str,
    check: fn(&Case) -> Option<Report>,
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        title: "every minor of OmegaL equals its quasi-tree expansion",
        check: |c| Some(verify_minor_expansion(&c.graph, &c.frame, &c.periods, DEFAULT_MAX_EDGES).unwrap()),
    },
    Criterion {
        id: 2,
        title: "det OmegaL equals the dual spanning tree expression",
        check: |c| Some(verify_det_dual_trees(&c.graph, &c.periods)),
    },
    Criterion {
        id: 3,
        title: "quasi-tree duality and top-rank count equals dual spanning trees",
        check: |c| Some(verify_duality(&c.graph, &c.frame, DEFAULT_MAX_EDGES).unwrap()),
    },
    Criterion {
        id: 4,
        title: "bundle Laplacian determinant: P(1), gradient and Hessian",
        check: |c| Some(verify_bundle_hessian(&c.graph, &c.frame, &c.periods)),
    },
    Criterion {
        id: 5,
        title: "symmetric exchange over the full quasi-tree family",
        check: |c| Some(verify_delta_matroid(&c.graph, &c.frame, DEFAULT_MAX_EDGES).unwrap()),
    },
    Criterion {
        id: 6,
        title: "WP potential equals the g-quasi-tree sum",
        check: |c| Some(verify_wp_identity(&c.graph, &c.frame, &c.periods, DEFAULT_MAX_EDGES).unwrap()),
    },
    Criterion {
        id: 7,
        title: "covering components equal |det T_I| on bouquet g=2",
        check: |c| {
            (c.family == Family::Bouquet(2)).then(|| verify_covering(&c.graph, &c.frame, DEFAULT_MAX_EDGES).unwrap())
        },
    },
    Criterion {
        id: 8,
        title: "frame, positivity, root independence, Matrix-Tree",
        check: |c| {
            let mut r = frame_checks(&c.graph, &c.frame);
            r.extend(structure_checks(&c.graph, &c.frame, &c.periods, DEFAULT_MAX_EDGES));
            Some(r)
        },
    },
    Criterion {
        id: 9,
        title: "energy pairing equals A^t OmegaL B for 10 random pairs",
        check: |c| Some(bilinear_checks(&c.graph, &c.frame, &c.periods, 10, c.seed)),
    },
];

fn main() {
    let start = Instant::now();
    let cases = corpus();
    let mut failed = Vec::new();
    for crit in &CRITERIA {
        let (mut records, mut bad, mut graphs) = (0, 0, 0);
        let mut first_failure = None;
        for case in &cases {
            let Some(rep) = (crit.check)(case) else { continue };
            graphs += 1;
            records += rep.records.len();
            bad += rep.failed();
            if first_failure.is_none() {
                first_failure = rep.failures().next().map(|r| {
                    format!(
                        "{} seed {}: {} [{}] {} != {}",
                        case.family.name(),
                        case.seed,
                        r.check,
                        r.params,
                        r.lhs,
                        r.rhs
                    )
                });
            }
        }
        let ok = bad == 0 && records > 0;
        println!(
            "{} criterion {}: {} ({} checks over {} graphs, {} failed)",
            if ok { "PASS" } else { "FAIL" },
            crit.id,
            crit.title,
            records,
            graphs,
            bad
        );
        if let Some(f) = first_failure {
            println!("    first failure: {f}");
        }
        if !ok {
            failed.push(crit.id);
        }
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
