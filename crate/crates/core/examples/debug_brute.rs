use hyperell::newton::{all_unimodular_triangulations, core_is_bridgeless, newton_triangle};

fn main() {
    let t0 = std::time::Instant::now();
    let all = all_unimodular_triangulations(&newton_triangle(3));
    println!("total unimodular triangulations of the genus-3 triangle: {} ({:?})", all.len(), t0.elapsed());
    let t1 = std::time::Instant::now();
    let bridgeless = all.iter().filter(|t| core_is_bridgeless(t)).count();
    println!("with bridgeless core: {} ({:?})", bridgeless, t1.elapsed());
}
