// Linear syzygies, beta_2 and the quartic-syzygy check.
//
// `cargo run --release --example syzygies -- 1,2,2,5`

use std::time::Instant;

use gwpskit::exactla::Primes;
use gwpskit::{resolution, toric, WeightedSpace};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(WeightedSpace::new([2, 3, 10, 15])?)
}

fn run(space: WeightedSpace) -> Result<(), Box<dyn std::error::Error>> {
    let primes = Primes::default();
    let ideal = toric::quadric_generators(&space)?;
    let degree3 = toric::check_degree3_generation(&ideal);
    let b2 = resolution::beta2_of(&ideal, &degree3)?;

    let start = Instant::now();
    let syz = resolution::linear_syzygies(&ideal, &primes)?;
    println!("{space}: beta2 = {b2} by counting, {} explicit syzygies", syz.total_count());
    if let Some(sigma) = syz.elements().first() {
        let terms: Vec<String> = sigma.terms.iter().map(|(i, k, c)| format!("{c:+} y{i} e{k}")).collect();
        println!("  first: {} at {}", terms.join(" "), sigma.multidegree);
    }
    let quartic = resolution::check_no_quartic_syzygies(&ideal, &syz, &primes)?;
    println!(
        "  no quartic syzygies: {} ({} blocks, {:.2?})",
        quartic.holds,
        quartic.multidegrees,
        start.elapsed()
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args().nth(1) {
        Some(w) => run(w.parse()?),
        None => run_example(),
    }
}
