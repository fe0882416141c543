// T^1_-1 of cones over toric linear sections y_b = -y_a.
//
// The preset forms are y_7 + y_{g+1} and y_3 + y_g in the canonical slice
// order.

use gwpskit::exactla::Primes;
use gwpskit::tangent::{self, Identification};
use gwpskit::{resolution, toric, WeightedSpace};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let primes = Primes::default();
    let space = WeightedSpace::new([2, 3, 3, 4])?;
    let ideal = toric::quadric_generators(&space)?;
    let syz = resolution::linear_syzygies(&ideal, &primes)?;
    let g = ideal.n_vars() - 2;
    let alpha_p = tangent::alpha_report(&space)?.alpha_p;

    let [l0, l1] = Identification::preset(g);
    for (name, ids) in [("cone over P", vec![]), ("surface section", vec![l0]), ("curve section", vec![l0, l1])] {
        let r = tangent::t1_section_minus1(&ideal, &syz, &ids, &primes)?;
        println!(
            "{space} {name:16} T1_-1 = {} (alpha(P) + {}), dim A'_2 = {} (regular: {})",
            r.t1_dim,
            r.t1_dim as i64 - alpha_p as i64,
            r.a2_dim,
            r.regular()
        );
    }

    let bad = tangent::t1_section_minus1(&ideal, &syz, &[Identification::new(5, 5)], &primes);
    println!("y_5 + y_5 is rejected: {}", bad.is_err());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
