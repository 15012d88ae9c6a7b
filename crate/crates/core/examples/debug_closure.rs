use hyperell::canon::{canonical_label, Decorated};
use hyperell::moduli::{enumerate_h2, maximal_cells};
use std::collections::{BTreeMap, BTreeSet};

fn main() {
    let maximal = maximal_cells(4).unwrap();
    println!("maximal cells: {}", maximal.len());
    let top = &maximal[0].ctype;
    println!("top classes: {:?}", top.classes());
    // full closure under single-class contractions
    let mut seen: BTreeMap<String, hyperell::graph::ConstrainedType> = BTreeMap::new();
    let mut frontier = vec![top.clone()];
    seen.insert(canonical_label(&Decorated::from_type(top)), top.clone());
    while let Some(t) = frontier.pop() {
        for c in 0..t.dimension() {
            let ct = t.contract(&BTreeSet::from([c])).unwrap();
            let label = canonical_label(&Decorated::from_type(&ct));
            if !seen.contains_key(&label) {
                seen.insert(label, ct.clone());
                frontier.push(ct);
            }
        }
    }
    println!("closure size: {}", seen.len());
    let mut f = vec![0usize; 8];
    for t in seen.values() {
        f[t.dimension()] += 1;
    }
    println!("closure f-vector: {:?}", f);
    // compare against enumerate_h2(4)
    let poset = enumerate_h2(4).unwrap();
    let mine: BTreeSet<String> = poset.cells.iter().map(|c| c.label.clone()).collect();
    for (label, t) in &seen {
        if !mine.contains(label) {
            println!(
                "closure cell missing from enumerate_h2: V={} E={} w={:?} classes={:?} dim={}",
                t.graph().n_vertices(),
                t.graph().n_edges(),
                t.weights(),
                t.classes(),
                t.dimension()
            );
        }
    }
    for label in &mine {
        if !seen.contains_key(label) {
            let c = poset.cells.iter().find(|c| &c.label == label).unwrap();
            println!(
                "enumerated cell not in closure: V={} E={} w={:?} classes={:?} dim={}",
                c.ctype.graph().n_vertices(),
                c.ctype.graph().n_edges(),
                c.ctype.weights(),
                c.ctype.classes(),
                c.dimension
            );
        }
    }
}
