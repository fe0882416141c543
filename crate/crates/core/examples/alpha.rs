// The degree -1 piece of T^1, block by block.
//
// `cargo run --release --example alpha -- 1,6,14,21`

use gwpskit::exactla::Primes;
use gwpskit::tangent;
use gwpskit::{resolution, toric, WeightedSpace};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(WeightedSpace::new([2, 3, 3, 4])?)
}

fn run(space: WeightedSpace) -> Result<(), Box<dyn std::error::Error>> {
    let primes = Primes::default();
    let ideal = toric::quadric_generators(&space)?;
    let syz = resolution::linear_syzygies(&ideal, &primes)?;
    let table = tangent::hom_dimension_minus1(&ideal, &syz, &primes)?;
    println!("{space}: {} shift blocks, dim Hom(I,A)_-1 = {}", table.blocks.len(), table.hom_dim);
    for (shift, dim) in table.nonzero().iter().take(8) {
        println!("  shift {shift}: {dim}");
    }

    let derivations = tangent::derivation_vectors(&ideal, &syz)?;
    println!("  {} derivations, each a nonzero solution in its own block", derivations.len());

    let report = tangent::alpha_report(&space)?;
    println!(
        "  T1_-1 = {}, alpha(P) = {}, alpha(S) = {}, alpha(C) = {}, extendable {} times",
        report.t1_dim, report.alpha_p, report.alpha_s, report.alpha_c, report.extendability
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args().nth(1) {
        Some(w) => run(w.parse()?),
        None => run_example(),
    }
}
