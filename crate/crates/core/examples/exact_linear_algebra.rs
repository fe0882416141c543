// Rank, kernels and two-prime solution dimensions over prime fields.

use gwpskit::exactla::{self, FieldSpec, SparseMatrix};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p1 = FieldSpec::new(2_147_483_647)?;
    let p2 = FieldSpec::new(1_073_741_789)?;

    let m = SparseMatrix::from_rows(3, &[vec![(0, 1), (1, -1)], vec![(1, 1), (2, -1)], vec![(0, 1), (2, -1)]]);
    println!("rank {} kernel {:?}", exactla::rank_mod_p(&m, &p1)?, exactla::kernel_basis_mod_p(&m, &p1)?);
    println!("solution dim {}", exactla::solution_dim(&m, &p1, &p2)?);

    // det = 6, so the rank depends on the characteristic
    let small = [FieldSpec::new(3)?, FieldSpec::new(5)?];
    let d = SparseMatrix::from_rows(2, &[vec![(0, 2), (1, 2)], vec![(0, 1), (1, 4)]]);
    match exactla::solution_dim(&d, &small[0], &small[1]) {
        Err(e) => println!("{e}"),
        Ok(dim) => println!("agreed on {dim}"),
    }
    let wide = SparseMatrix::from_triplets(2, 400, (0..400).map(|c| (c % 2, c, 1 + (c % 3) as i64)).collect());
    println!("sparse path: rank {} of a 2x400 matrix", exactla::rank_mod_p(&wide, &p1)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
