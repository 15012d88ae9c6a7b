use hyperell::moduli::enumerate_h2;

fn main() {
    let poset = enumerate_h2(4).unwrap();
    for c in &poset.cells {
        if c.dimension == 2 {
            let t = &c.ctype;
            let ends: Vec<_> = (0..t.graph().n_edges())
                .map(|e| {
                    let (a, b) = t.graph().ends(e);
                    (a, b)
                })
                .collect();
            println!(
                "V={} E={} w={:?} ends={:?} classes={:?}",
                t.graph().n_vertices(),
                t.graph().n_edges(),
                t.weights(),
                ends,
                t.classes()
            );
        }
    }
}
