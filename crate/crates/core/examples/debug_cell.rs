use hyperell::graph::{Graph, Model};
use hyperell::harmonic::{involutions, tree_quotient, tree_quotient_involutions};
use hyperell::moduli::hyperelliptic_relation;

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
    let weights = vec![1u32, 1u32];
    let m = Model::unit(g.clone(), weights.clone()).unwrap();
    println!("genus = {}", m.genus());
    let expanded = m.add_weight_loops().unwrap();
    let cl = expanded.canonical_loopless_model();
    println!(
        "cl: V={} E={} ids={:?}",
        cl.graph().n_vertices(),
        cl.graph().n_edges(),
        cl.graph().vertex_ids()
    );
    println!("involutions: {}", involutions(&cl).len());
    for inv in involutions(&cl) {
        if let Some((q, _)) = tree_quotient(&cl, &inv) {
            println!(
                "tree witness: vmap={:?} quotient V={} E={}",
                inv.vmap,
                q.graph().n_vertices(),
                q.graph().n_edges()
            );
        }
    }
    println!("tree quotient count: {}", tree_quotient_involutions(&cl).len());
    println!("relation: {:?}", hyperelliptic_relation(&g, &weights));
}
