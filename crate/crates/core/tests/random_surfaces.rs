//! Identities on randomly generated rotation systems of mixed genus.

use periods_core::bundle::verify_bundle_hessian;
use periods_core::exactla::{rat, Rat, RatMatrix};
use periods_core::homology::{default_frame, symplectic_frame, tree_cotree, Chain1, Side};
use periods_core::period::{dual_periods, harmonic_form, omega_l, omega_l_from_dual_periods, periods};
use periods_core::quasitree::{verify_delta_matroid, verify_duality, verify_minor_expansion, verify_wp_identity};
use periods_core::ribbon::RibbonGraph;
use proptest::prelude::*;

/// Darts distributed over `nv` vertices in a random cyclic order.
fn ribbon_graph() -> impl Strategy<Value = RibbonGraph> {
    (1usize..=4, 1usize..=7)
        .prop_flat_map(|(nv, ne)| {
            let darts = 2 * ne;
            (
                Just(nv),
                Just(ne),
                proptest::collection::vec(0..nv, darts),
                Just((0..darts).collect::<Vec<_>>()).prop_shuffle(),
                proptest::collection::vec((1i64..=9, 1i64..=9), ne),
            )
        })
        .prop_filter_map("not a connected ribbon graph", |(nv, _ne, owner, order, w)| {
            let mut rot = vec![Vec::new(); nv];
            for d in order {
                rot[owner[d]].push(d);
            }
            let weights = w.into_iter().map(|(p, q)| rat(p, q)).collect();
            RibbonGraph::new(rot, weights).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frames_are_symplectic(g in ribbon_graph()) {
        let fr = default_frame(&g);
        prop_assert!(fr.checks_pass(&g));
        prop_assert_eq!(fr.dim(), 2 * g.genus());
        prop_assert_eq!(g.dual().genus(), g.genus());
    }

    #[test]
    fn seeded_frames_are_symplectic(g in ribbon_graph(), start in 0usize..5) {
        let skel = g.skeleton();
        let seed = skel.greedy_spanning_tree((0..g.num_edges()).map(|e| (e + start) % g.num_edges())).unwrap();
        let tc = tree_cotree(&g, Some(&seed)).unwrap();
        let mut sorted = seed.clone();
        sorted.sort_unstable();
        prop_assert_eq!(&tc.tree, &sorted);
        prop_assert!(symplectic_frame(&g, &tc).unwrap().checks_pass(&g));
        let reduced = g.contract_delete(&tc.tree, &tc.cotree).unwrap();
        prop_assert_eq!((reduced.num_vertices(), reduced.num_faces()), (1, 1));
        prop_assert_eq!(reduced.num_edges(), 2 * g.genus());
    }

    #[test]
    fn period_matrix_invariants(g in ribbon_graph()) {
        prop_assume!(g.genus() >= 1);
        let fr = default_frame(&g);
        let pd = omega_l(&g, &fr, 0);
        prop_assert!(pd.omega_l.is_positive_definite());
        prop_assert_eq!(&omega_l_from_dual_periods(&g, &fr), &pd.omega_l);
        for root in 1..g.num_vertices() {
            prop_assert_eq!(&omega_l(&g, &fr, root).omega_l, &pd.omega_l);
        }
        prop_assert_eq!(&pd.tree_sum, &g.skeleton().spanning_tree_weight_sum(g.weights()));
        let scaled = g.with_weights(g.weights().iter().map(|c| c * rat(7, 3)).collect()).unwrap();
        prop_assert_eq!(omega_l(&scaled, &default_frame(&scaled), 0).omega_l, pd.omega_l.scale(&rat(7, 3)));
    }

    #[test]
    fn harmonic_forms_have_prescribed_periods(g in ribbon_graph(), a in proptest::collection::vec((-5i64..=5, 1i64..=4), 10)) {
        prop_assume!(g.genus() >= 1);
        let fr = default_frame(&g);
        let pd = omega_l(&g, &fr, 0);
        let n = fr.dim();
        let av: Vec<Rat> = a.iter().take(n).map(|&(p, q)| rat(p, q)).collect();
        let bv: Vec<Rat> = a.iter().rev().take(n).map(|&(p, q)| rat(q, p.abs() + 1)).collect();
        let (w, _) = harmonic_form(&g, &fr, &av, 0);
        let (h, _) = harmonic_form(&g, &fr, &bv, 0);
        prop_assert!(w.is_harmonic(&g));
        prop_assert_eq!(&periods(&fr, &w), &av);
        let lhs = w.energy_pairing(&h, &g);
        let rhs = RatMatrix::column_vector(&av).transpose().mul(&pd.omega_l).unwrap().mul(&RatMatrix::column_vector(&bv)).unwrap();
        prop_assert_eq!(&lhs, &rhs[(0, 0)]);
        let astar = dual_periods(&g, &fr, &w).unwrap();
        let la = pd.l.mul(&RatMatrix::column_vector(&av)).unwrap();
        prop_assert_eq!(astar, la.column(0));
    }

    #[test]
    fn dual_face_boundaries_do_not_change_periods(g in ribbon_graph(), f in 0usize..16, coef in -3i64..=3) {
        prop_assume!(g.genus() >= 1);
        let mut fr = default_frame(&g);
        let pd = omega_l(&g, &fr, 0);
        // Boundary of the dual face around vertex v: the darts at v, signed.
        let v = f % g.num_vertices();
        let mut bd = Chain1::zero(Side::Dual, g.num_edges());
        for &d in g.rotation(v) {
            bd.coeffs[d >> 1] += if d & 1 == 0 { 1 } else { -1 };
        }
        prop_assert!(bd.is_cycle(&g));
        fr.dual_basis[0] = fr.dual_basis[0].add_scaled(&bd, coef);
        fr.m = periods_core::IntMatrix::from_fn(g.num_edges(), fr.dim(), |e, i| fr.dual_basis[i].coeffs[e].into());
        prop_assert!(fr.checks_pass(&g));
        prop_assert_eq!(omega_l(&g, &fr, 0).omega_l, pd.omega_l);
    }

    #[test]
    fn quasi_tree_identities(g in ribbon_graph()) {
        let fr = default_frame(&g);
        let pd = omega_l(&g, &fr, 0);
        for rep in [
            verify_minor_expansion(&g, &fr, &pd, 16).unwrap(),
            verify_duality(&g, &fr, 16).unwrap(),
            verify_delta_matroid(&g, &fr, 16).unwrap(),
            verify_bundle_hessian(&g, &fr, &pd),
        ] {
            prop_assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
        if g.genus() >= 1 {
            prop_assert!(verify_wp_identity(&g, &fr, &pd, 16).unwrap().all_pass());
        }
    }
}
