// Presentations of Veronese subrings R^(d) of weighted polynomial rings.
//
// `cargo run --example veronese -- 1,1,4,6 2`

use gwpskit::report;
use gwpskit::wps;
use gwpskit::WeightedSpace;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (w, d) in [([1, 1, 4, 6], 2), ([1, 2, 2, 5], 2), ([1, 1, 2, 4], 2), ([2, 3, 3, 4], 6), ([1, 1, 1, 1], 1)] {
        let space = WeightedSpace::new(w)?;
        println!("{space} d={d}: {}", report::cmd_veronese(&space, d, 8)?);
    }
    let space = WeightedSpace::new([1, 2, 2, 5])?;
    match wps::veronese_presentation(&space, 2, 3) {
        Err(e) => println!("cutoff 3 is too small: {e}"),
        Ok(p) => println!("unexpected: {p:?}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.as_slice() {
        [w, d] => {
            let space: WeightedSpace = w.parse()?;
            println!("{}", report::cmd_veronese(&space, d.parse()?, 8)?);
            Ok(())
        }
        _ => run_example(),
    }
}
