use hyperell::canon::{canonical_label, Decorated};
use hyperell::graph::{ConstrainedType, Graph};
use hyperell::moduli::enumerate_stable_types;

fn main() {
    let g = Graph::new(
        vec!["u".into(), "v".into()],
        vec![
            ("l".into(), "u".into(), "u".into()),
            ("e1".into(), "u".into(), "v".into()),
            ("e2".into(), "u".into(), "v".into()),
        ],
    )
    .unwrap();
    let t = ConstrainedType::with_trivial_relation(g, vec![1, 1]).unwrap();
    let want = canonical_label(&Decorated::from_type(&t));
    let types = enumerate_stable_types(4).unwrap();
    println!("total: {}", types.len());
    let found = types.iter().any(|x| canonical_label(&Decorated::from_type(x)) == want);
    println!("loop+double-edge w=(1,1) present: {}", found);
    // count by (V, E, total weight)
    let mut v2e3: Vec<_> = types
        .iter()
        .filter(|t| t.graph().n_vertices() == 2 && t.graph().n_edges() == 3)
        .collect();
    v2e3.sort_by_key(|t| t.weights().to_vec());
    for t in v2e3 {
        let loops = (0..3).filter(|&e| t.graph().is_loop(e)).count();
        println!("V=2 E=3 w={:?} loops={}", t.weights(), loops);
    }
}
