// Degree slices, point counts, projective normality and h-vectors.

use gwpskit::lattice;
use gwpskit::WeightedSpace;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let space = WeightedSpace::new([2, 3, 3, 4])?;
    let s = space.sum();
    let slice = lattice::slice(&space, s);
    println!("{space}: {} monomials of degree {s}", slice.len());
    for (i, p) in slice.points().iter().enumerate().take(5) {
        println!("  y_{i} = x^{p}");
    }
    for d in 1..=4 {
        println!("  N({}) = {}", d * s, lattice::count_points(&space, (d * s) as i64));
    }
    for check in lattice::verify_projective_normality(&space, 4) {
        println!("  degree {}s spanned by products: {}", check.degree, check.holds);
    }
    println!("  h-vector {:?}", lattice::h_vector(&space));

    // off the anticanonical degree the sums of slice points can miss monomials
    let odd = WeightedSpace::new([1, 1, 2, 3])?;
    let check = &lattice::verify_projective_normality(&odd, 2)[0];
    println!("{odd}: degree 2s spanned: {}, witness {:?}", check.holds, check.witness);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
