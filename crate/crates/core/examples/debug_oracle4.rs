use hyperell::divisor::is_hyperelliptic_by_rank;
use hyperell::harmonic::is_hyperelliptic;
use hyperell::moduli::enumerate_stable_types;

fn main() {
    let mut disagreements = 0;
    for t in enumerate_stable_types(4).unwrap() {
        if !t.graph().bridges().is_empty() {
            continue;
        }
        let m = t.unit_model().unwrap();
        let inv = match is_hyperelliptic(&m) {
            Ok(d) => d.hyperelliptic,
            Err(e) => {
                println!("involution error: {} on V={} E={} w={:?}", e, t.graph().n_vertices(), t.graph().n_edges(), t.weights());
                continue;
            }
        };
        let rank = is_hyperelliptic_by_rank(&m).unwrap().hyperelliptic;
        if inv != rank {
            disagreements += 1;
            let ends: Vec<_> = (0..t.graph().n_edges()).map(|e| t.graph().ends(e)).collect();
            println!(
                "DISAGREE: involution={} rank={} V={} E={} w={:?} ends={:?}",
                inv, rank, t.graph().n_vertices(), t.graph().n_edges(), t.weights(), ends
            );
        }
    }
    println!("disagreements: {}", disagreements);
}
