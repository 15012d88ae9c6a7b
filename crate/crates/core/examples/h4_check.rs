fn main() {
    let t0 = std::time::Instant::now();
    let types = hyperell::moduli::enumerate_stable_types(4).unwrap();
    println!("genus 4 stable types: {} ({:?})", types.len(), t0.elapsed());
    let t1 = std::time::Instant::now();
    let poset = hyperell::moduli::enumerate_h2(4).unwrap();
    println!("H2(4): {} cells, f = {:?} ({:?})", poset.cells.len(), poset.f_vector(), t1.elapsed());
}
