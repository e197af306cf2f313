use proptest::prelude::*;

use shatter::disintegrate::{algorithm1, theorem_b_disintegrate, Orientation};
use shatter::generators::{assign_weights, GraphModel, WeightModel};
use shatter::graph::{max_component_size, read_edge_list, write_edge_list};
use shatter::harness::Method;
use shatter::RngSeed;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn edge_lists_round_trip_exactly(n in 1usize..60, density in 0.0f64..2.0, seed in any::<u64>(), model in 0usize..4) {
        let m = ((n as f64 * density) as usize).min(n * (n - 1) / 2);
        let graph: GraphModel = format!("gnm:n={n},m={m}").parse().unwrap();
        let weights: WeightModel = ["unif", "exp:2", "pareto:3,0.25", "const:1.5"][model].parse().unwrap();
        let g = assign_weights(&graph.generate(RngSeed::new(seed, 0)).unwrap(), &weights, RngSeed::new(seed, 1)).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = read_edge_list(&buf[..]).unwrap();
        prop_assert_eq!(back.node_count(), g.node_count());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
}

#[test]
fn power_law_instances_disintegrate_completely() {
    let graph: GraphModel = "powlaw-deg:n=50,exp=3".parse().unwrap();
    let weights: WeightModel = "pareto:3,0.25".parse().unwrap();
    for i in 0..10 {
        let g = assign_weights(
            &graph.generate(RngSeed::new(3, i)).unwrap(),
            &weights,
            RngSeed::new(4, i),
        )
        .unwrap();
        let total = g.total_weight();
        for method in Method::ALL {
            for orientation in [Orientation::Minimize, Orientation::Maximize] {
                let t = algorithm1(&g, &method.spec(orientation), RngSeed::new(5, i), None).unwrap();
                assert_eq!(t.final_max_component(), 1);
                assert!((t.final_cost() - total).abs() <= 1e-9 * total.max(1.0), "{method}");
            }
        }
        let r = theorem_b_disintegrate(&g, 0.5, None).unwrap();
        let mut h = g.clone();
        for e in &r.removed {
            h.remove_edge(e.u, e.v).unwrap();
        }
        assert_eq!(max_component_size(&h), r.final_max_component);
        assert!(r.final_max_component as f64 <= r.params.t);
    }
}
