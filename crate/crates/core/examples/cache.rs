// Writing and reading the plain-text cache.

use gwpskit::exactla::Primes;
use gwpskit::report::{self, Cache, RunConfig};
use gwpskit::WeightedSpace;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("gwpskit-example-{}", std::process::id()));
    let cache = Cache::new(&dir)?;
    let space = WeightedSpace::new([1, 3, 4, 4])?;
    let config = RunConfig { cache_dir: Some(dir.clone()), ..Default::default() };

    let cold = report::alpha_for(&space, &config, Some(&cache))?;
    let ideal = report::load_ideal(&space, Some(&cache))?;
    let syz = report::load_syzygies(&ideal, &Primes::default(), Some(&cache))?;
    let warm = report::alpha_for(&space, &config, Some(&cache))?;
    println!("{space}: alpha(S) cold {} warm {}, {} syzygies cached", cold.alpha_s, warm.alpha_s, syz.total_count());

    let mut files: Vec<_> = std::fs::read_dir(&dir)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>()?;
    files.sort();
    for path in &files {
        let text = std::fs::read_to_string(path)?;
        println!("  {} lines  {}", text.lines().count(), text.lines().next().unwrap_or(""));
    }
    std::fs::remove_dir_all(&dir)?;
    assert_eq!(cold, warm);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
