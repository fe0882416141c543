// Enumerates the Gorenstein weight systems and prints their invariants.
//
// `cargo run --example classify -- 30`

use gwpskit::report::{self, OutputFormat, RunConfig};
use gwpskit::wps;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(50)
}

fn run(bound: u32) -> Result<(), Box<dyn std::error::Error>> {
    let config = RunConfig { bound, check: true, ..Default::default() };
    let outcome = report::cmd_classify(&config)?;
    print!("{}", outcome.render(OutputFormat::Markdown));

    // the count is stable well past the largest weight that occurs
    let counts: Vec<usize> = [10, 21, 35, 50].iter().map(|&b| wps::enumerate_gorenstein(b).len()).collect();
    println!("spaces with weights <= 10, 21, 35, 50: {counts:?}");

    let space = "(2,3,3,4)".parse()?;
    let inv = wps::invariants(&space);
    println!(
        "{space}: -K^3 = {}, g = {:?}, i_S = {:?}, g1 = {:?}, O(2) invertible on S: {}",
        inv.anti_k_cubed,
        inv.g,
        inv.i_s,
        inv.g1,
        wps::restriction_invertible(&space, 2)
    );
    if !outcome.success() {
        return Err(outcome.failures.join("; ").into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args().nth(1) {
        Some(b) => run(b.parse()?),
        None => run_example(),
    }
}
