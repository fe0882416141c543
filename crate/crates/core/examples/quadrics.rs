// Quadric binomial generators and generation in degree three.
//
// `cargo run --example quadrics -- 1,3,4,4`

use gwpskit::toric::{self, SpanningTree};
use gwpskit::WeightedSpace;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(WeightedSpace::new([2, 3, 3, 4])?)
}

fn run(space: WeightedSpace) -> Result<(), Box<dyn std::error::Error>> {
    let ideal = toric::quadric_generators(&space)?;
    let g = ideal.n_vars() - 2;
    println!("{space}: g = {g}, {} quadrics (C(g-2,2) = {})", ideal.generators().len(), (g - 2) * (g - 3) / 2);
    for gen in ideal.generators().iter().take(3) {
        let (a, b) = gen.lhs;
        let (c, d) = gen.rhs;
        println!("  y{a}*y{b} - y{c}*y{d}   at {}", gen.multidegree);
    }
    let path = toric::quadric_generators_with(&space, SpanningTree::Path)?;
    println!("  path tree also gives {} generators", path.generators().len());

    let report = toric::check_degree3_generation(&ideal);
    println!("  degree-3 fibers: {}, all connected: {}", report.multidegrees, report.connected);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args().nth(1) {
        Some(w) => run(w.parse()?),
        None => run_example(),
    }
}
