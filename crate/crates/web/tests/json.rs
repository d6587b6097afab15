use pathdensity_web::{bound_curves_json, extremal_graphs_json, optimize_json};

#[test]
fn curves_have_matching_lengths() {
    let v = bound_curves_json(11).unwrap();
    for key in ["c", "lower", "star", "clique"] {
        assert_eq!(v[key].as_array().unwrap().len(), 11, "{key}");
    }
    assert_eq!(v["c"][10], 1.0);
    let c0 = v["c0"].as_f64().unwrap();
    assert!((0.086..0.087).contains(&c0));
    assert!(bound_curves_json(1).is_err());
}

#[test]
fn extremal_graphs_for_k5() {
    let v = extremal_graphs_json(5, 10).unwrap();
    assert_eq!(v["quasi_clique"]["p4"], "60");
    assert_eq!(v["quasi_clique"]["walks4"], "1280");
    assert_eq!(v["quasi_star"]["edges"].as_array().unwrap().len(), 10);
    assert!(extremal_graphs_json(4, 7).is_err());
    assert!(extremal_graphs_json(1000, 3).is_err());
}

#[test]
fn optimize_is_seeded() {
    let a = optimize_json(0.3, 4, 2, 7).unwrap();
    let b = optimize_json(0.3, 4, 2, 7).unwrap();
    assert_eq!(a, b);
    let s = a["s"].as_f64().unwrap();
    assert!(s <= 0.3f64.powf(2.5) + 1e-9);
    let trace = a["trace"].as_array().unwrap();
    assert!(trace.windows(2).all(|w| w[1].as_f64() > w[0].as_f64()));
    assert!(optimize_json(1.5, 4, 2, 7).is_err());
}
