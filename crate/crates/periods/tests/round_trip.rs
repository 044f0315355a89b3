//! Graph files survive serialization, and in-process runs match the binary's contract.

use periods::{generate, parse, run_args, serialize, Family, WeightSpec};

#[test]
fn generated_graphs_round_trip() {
    for fam in
        [Family::Bouquet(1), Family::Bouquet(2), Family::Bouquet(4), Family::TorusGrid(2, 2), Family::TorusGrid(3, 4)]
    {
        for w in [WeightSpec::Unit, WeightSpec::Random(1), WeightSpec::Random(99)] {
            let d = generate(fam, &w).unwrap();
            let text = serialize(&d);
            let back = parse(&text).unwrap();
            assert_eq!(back, d);
            assert_eq!(serialize(&back), text);
        }
    }
}

#[test]
fn torus_document_parses() {
    let d = parse("name torus\ngenus 1\nedge a a+ a-\nedge b b+ b-\nvertex v : a+ b+ a- b-\n").unwrap();
    assert_eq!((d.graph.num_vertices(), d.graph.num_edges(), d.graph.genus()), (1, 2, 1));
    assert_eq!(
        d,
        generate(Family::Bouquet(1), &WeightSpec::Unit)
            .map(|mut g| {
                g.name = Some("torus".into());
                g.edge_labels = vec!["a".into(), "b".into()];
                g.dart_labels = ["a+", "a-", "b+", "b-"].map(String::from).to_vec();
                g
            })
            .unwrap()
    );
}

#[test]
fn in_process_verify() {
    let (out, err, code) = run_args([
        "periods",
        "verify",
        "--suite",
        "minor_expansion",
        "--suite",
        "wp_identity",
        "--family",
        "bouquet:2",
    ]);
    assert_eq!((code, err.as_str()), (0, ""));
    assert!(out.contains("PASS minor_expansion"));
    assert!(out.contains("PASS wp_identity"));
    let (_, err, code) = run_args(["periods", "period", "--family", "torus:2"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}
