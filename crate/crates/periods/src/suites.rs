//! Named verification suites over one weighted ribbon graph.

use clap::ValueEnum;
use periods_core::bundle::verify_bundle_hessian;
use periods_core::exactla::{rat, Rat, RatMatrix};
use periods_core::homology::{standard_omega, HomologyFrame};
use periods_core::period::{harmonic_form, omega_l, PeriodData};
use periods_core::quasitree::{
    verify_covering, verify_delta_matroid, verify_det_dual_trees, verify_duality, verify_minor_expansion,
    verify_ribbon_comparison, verify_wp_identity, QuasiTreeError,
};
use periods_core::report::{CheckRecord, Report};
use periods_core::ribbon::RibbonGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Suite {
    Frame,
    Structure,
    Bilinear,
    MinorExpansion,
    Duality,
    DetDualTrees,
    BundleHessian,
    DeltaMatroid,
    WpIdentity,
    Covering,
    RibbonComparison,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Frame,
        Suite::Structure,
        Suite::Bilinear,
        Suite::MinorExpansion,
        Suite::Duality,
        Suite::DetDualTrees,
        Suite::BundleHessian,
        Suite::DeltaMatroid,
        Suite::WpIdentity,
        Suite::Covering,
        Suite::RibbonComparison,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Frame => "frame",
            Suite::Structure => "structure",
            Suite::Bilinear => "bilinear",
            Suite::MinorExpansion => "minor_expansion",
            Suite::Duality => "duality",
            Suite::DetDualTrees => "det_dual_trees",
            Suite::BundleHessian => "bundle_hessian",
            Suite::DeltaMatroid => "delta_matroid",
            Suite::WpIdentity => "wp_identity",
            Suite::Covering => "covering",
            Suite::RibbonComparison => "ribbon_comparison",
        }
    }
}

/// Graph, frame and period data shared by all suites.
pub struct Context<'a> {
    pub graph: &'a RibbonGraph,
    pub frame: HomologyFrame,
    pub periods: PeriodData,
    pub max_edges: usize,
}

impl<'a> Context<'a> {
    pub fn new(graph: &'a RibbonGraph, frame: HomologyFrame, max_edges: usize) -> Self {
        let periods = omega_l(graph, &frame, 0);
        Context { graph, frame, periods, max_edges }
    }

    pub fn run(&self, suite: Suite) -> Result<Report, QuasiTreeError> {
        let (g, fr, pd, cap) = (self.graph, &self.frame, &self.periods, self.max_edges);
        Ok(match suite {
            Suite::Frame => frame_checks(g, fr),
            Suite::Structure => structure_checks(g, fr, pd, cap),
            Suite::Bilinear => bilinear_checks(g, fr, pd, 10, 0),
            Suite::MinorExpansion => verify_minor_expansion(g, fr, pd, cap)?,
            Suite::Duality => verify_duality(g, fr, cap)?,
            Suite::DetDualTrees => verify_det_dual_trees(g, pd),
            Suite::BundleHessian => verify_bundle_hessian(g, fr, pd),
            Suite::DeltaMatroid => verify_delta_matroid(g, fr, cap)?,
            Suite::WpIdentity if fr.genus == 0 => Report::new(),
            Suite::WpIdentity => verify_wp_identity(g, fr, pd, cap)?,
            Suite::Covering => verify_covering(g, fr, cap)?,
            Suite::RibbonComparison => verify_ribbon_comparison(g, fr, cap)?,
        })
    }
}

/// `ι(γ^i, γ_j) = δ_ij`, `Gram(γ) = Ω`, and closedness of all chains.
pub fn frame_checks(g: &RibbonGraph, fr: &HomologyFrame) -> Report {
    let mut rep = Report::new();
    let n = fr.dim();
    let (kr, gram, om) = (fr.kronecker_matrix(), fr.gram_matrix(), standard_omega(fr.genus));
    for i in 0..n {
        for j in 0..n {
            let params = format!("i={} j={}", i + 1, j + 1);
            rep.push(CheckRecord::new("kronecker", params.clone(), &kr[(i, j)], u8::from(i == j)));
            rep.push(CheckRecord::new("gram", params, &gram[(i, j)], &om[(i, j)]));
        }
    }
    rep.push(CheckRecord::property("chains_are_cycles", "", fr.chains_are_cycles(g)));
    rep.push(CheckRecord::property("m_columns_closed", "", fr.m_columns_closed(g)));
    rep
}

/// Symmetry, positive definiteness, root independence of `ΩL`, and the
/// Matrix-Tree cross-check when the graph is small enough to enumerate.
pub fn structure_checks(g: &RibbonGraph, fr: &HomologyFrame, pd: &PeriodData, max_edges: usize) -> Report {
    let mut rep = Report::new();
    rep.push(CheckRecord::property("symmetric", "", pd.omega_l.is_symmetric()));
    for (k, m) in pd.omega_l.leading_principal_minors().iter().enumerate() {
        rep.push(CheckRecord::property(
            "leading_minor_positive",
            format!("k={} minor={m}", k + 1),
            m > &Rat::from_integer(0.into()),
        ));
    }
    for root in 1..g.num_vertices() {
        let other = omega_l(g, fr, root);
        rep.push(CheckRecord::property("root_independent", format!("root={}", root + 1), other.omega_l == pd.omega_l));
    }
    if g.num_edges() <= max_edges.min(10) {
        rep.push(CheckRecord::new("matrix_tree", "", &pd.tree_sum, g.skeleton().spanning_tree_weight_sum(g.weights())));
    }
    rep
}

/// Random period vectors: numerators in `-10..=10`, denominators in `1..=10`.
pub fn random_periods(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| rat(rng.random_range(-10..=10), rng.random_range(1..=10))).collect()
}

/// `Σ c ω η = Aᵗ ΩL B` for harmonic forms with seeded random periods `A`, `B`.
pub fn bilinear_checks(g: &RibbonGraph, fr: &HomologyFrame, pd: &PeriodData, pairs: usize, seed: u64) -> Report {
    let mut rep = Report::new();
    let n = fr.dim();
    if n == 0 {
        return rep;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in 0..pairs {
        let a = random_periods(&mut rng, n);
        let b = random_periods(&mut rng, n);
        let (w, _) = harmonic_form(g, fr, &a, 0);
        let (h, _) = harmonic_form(g, fr, &b, 0);
        let rhs = RatMatrix::column_vector(&a)
            .transpose()
            .mul(&pd.omega_l)
            .and_then(|x| x.mul(&RatMatrix::column_vector(&b)))
            .expect("shapes");
        rep.push(CheckRecord::new("bilinear", format!("pair={}", p + 1), w.energy_pairing(&h, g), &rhs[(0, 0)]));
    }
    rep
}
