//! Table reconstructions, the expected-values check and the run
//! configuration shared by the binary and the examples.

pub mod cache;
pub mod expected;
pub mod format;

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::exactla::Primes;
use crate::resolution::{self, SyzygyBasis};
use crate::tangent::{self, T1Options, T1Report};
use crate::toric::{self, ToricIdeal};
use crate::wps::{self, WeightedSpace, WpsInvariants};

pub use cache::Cache;
pub use format::{OutputFormat, Table};

use format::col;

/// Environment variable that overrides the cache directory.
pub const CACHE_ENV: &str = "GWPSKIT_CACHE";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Largest weight enumerated.
    pub bound: u32,
    pub verify: bool,
    /// Run spaces above `max_genus_for_heavy_checks` too.
    pub all: bool,
    pub strict: bool,
    /// Compare every computed value with the expected-values table.
    pub check: bool,
    pub primes: Primes,
    pub max_genus_for_heavy_checks: u64,
    pub threads: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            bound: 50,
            verify: false,
            all: false,
            strict: false,
            check: false,
            primes: Primes::default(),
            max_genus_for_heavy_checks: 26,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            cache_dir: None,
            format: OutputFormat::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.threads == 0 {
            return Err(Error::Inconsistent("threads must be at least 1".into()));
        }
        Primes::new(self.primes.p1.prime(), self.primes.p2.prime())?;
        Ok(())
    }

    /// Applies the cache-directory environment override.
    pub fn with_env(mut self) -> Self {
        if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
            self.cache_dir = Some(dir.into());
        }
        self
    }

    pub fn cache(&self) -> Result<Option<Cache>> {
        self.cache_dir.as_ref().map(Cache::new).transpose()
    }

    /// Runs `f` on a worker pool of `threads` threads.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        self.validate()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::Inconsistent(format!("worker pool: {e}")))?;
        Ok(pool.install(f))
    }

    fn t1_options(&self) -> T1Options {
        T1Options { primes: self.primes, strict: self.strict, ..Default::default() }
    }

    fn heavy_allowed(&self, g: u64) -> bool {
        self.all || g <= self.max_genus_for_heavy_checks
    }
}

/// A rendered table plus diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub table: Table,
    /// Informational lines (budget estimates, skipped rows).
    pub notes: Vec<String>,
    /// Verification failures and mismatches against the expected values.
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn render(&self, format: OutputFormat) -> String {
        self.table.render(format)
    }

    pub fn success(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The Gorenstein spaces with weights up to `bound` in table order: by
/// `g_1`, then `i_S` decreasing, then weights.
pub fn table_order(bound: u32) -> Vec<(WeightedSpace, WpsInvariants)> {
    let mut rows: Vec<(WeightedSpace, WpsInvariants)> =
        wps::enumerate_gorenstein(bound).into_iter().map(|s| (s, wps::invariants(&s))).collect();
    rows.sort_by_key(|(s, inv)| (inv.g1, std::cmp::Reverse(inv.i_s), s.weights()));
    rows
}

fn num(x: Option<u64>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

/// `(column, computed value, expected value)`.
type Field<'a> = (&'a str, String, fn(&expected::ExpectedRow) -> u64);

fn check_against(failures: &mut Vec<String>, space: &WeightedSpace, fields: &[Field]) {
    match expected::lookup(space) {
        None => failures.push(format!("{space}: not in the expected-values table")),
        Some(row) => {
            for (what, got, pick) in fields {
                let want = pick(&row);
                if *got != want.to_string() {
                    failures.push(format!("{space}: {what} = {got}, expected {want}"));
                }
            }
        }
    }
}

/// Every expected row within the bound must have been produced.
fn check_coverage(failures: &mut Vec<String>, bound: u32, produced: &[WeightedSpace]) {
    for row in expected::table() {
        if row.weights.iter().all(|&w| w <= bound) && !produced.iter().any(|s| s.weights() == row.weights) {
            failures.push(format!("missing row {} {:?}", row.row, row.weights));
        }
    }
}

/// Weights, `-K^3`, `m`, `s`, `i_S`, `g_1` of every Gorenstein space.
pub fn cmd_classify(config: &RunConfig) -> Result<Outcome> {
    let mut table = Table::new(
        "Gorenstein 3-dimensional weighted projective spaces",
        vec![
            col("#", "\\#"),
            col("weights", "weights"),
            col("-K^3", "$-K_\\mathcal{P}^3$"),
            col("m", "$m$"),
            col("s", "$s$"),
            col("i_S", "$i_S$"),
            col("g1", "$g_1$"),
        ],
    );
    let mut failures = Vec::new();
    let rows = table_order(config.bound);
    for (n, (space, inv)) in rows.iter().enumerate() {
        table.push(vec![
            (n + 1).to_string(),
            space.to_string(),
            inv.anti_k_cubed.to_string(),
            inv.m.to_string(),
            inv.s.to_string(),
            num(inv.i_s),
            num(inv.g1),
        ]);
        if config.check {
            check_against(
                &mut failures,
                space,
                &[
                    ("-K^3", inv.anti_k_cubed.to_string(), |r| r.anti_k3),
                    ("m", inv.m.to_string(), |r| r.m),
                    ("s", inv.s.to_string(), |r| r.s),
                    ("i_S", num(inv.i_s), |r| r.i_s),
                    ("g1", num(inv.g1), |r| r.g1),
                ],
            );
        }
    }
    if config.check {
        let produced: Vec<WeightedSpace> = rows.iter().map(|r| r.0).collect();
        check_coverage(&mut failures, config.bound, &produced);
    }
    let notes = vec!["singularities of the general anticanonical surface are not computed".to_string()];
    Ok(Outcome { table, notes, failures })
}

/// Ideal from the cache, or computed and stored.
pub fn load_ideal(space: &WeightedSpace, cache: Option<&Cache>) -> Result<ToricIdeal> {
    if let Some(c) = cache {
        if let Some(ideal) = c.load_ideal(space)? {
            return Ok(ideal);
        }
    }
    let ideal = toric::quadric_generators(space)?;
    if let Some(c) = cache {
        c.store_ideal(&ideal)?;
    }
    Ok(ideal)
}

/// Linear syzygies from the cache, or computed and stored.
pub fn load_syzygies(ideal: &ToricIdeal, primes: &Primes, cache: Option<&Cache>) -> Result<SyzygyBasis> {
    if let Some(c) = cache {
        if let Some(syz) = c.load_syzygies(ideal.space())? {
            return Ok(syz);
        }
    }
    let syz = resolution::linear_syzygies(ideal, primes)?;
    if let Some(c) = cache {
        c.store_syzygies(ideal.space(), &syz)?;
    }
    Ok(syz)
}

fn pass(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.to_string()
}

/// `g`, `beta_1`, `beta_2`, optionally with the degree-3 and quartic checks.
pub fn cmd_betti(config: &RunConfig) -> Result<Outcome> {
    let mut columns = vec![
        col("#", "\\#"),
        col("weights", "weights"),
        col("g1", "$g_1$"),
        col("i_S", "$i_S$"),
        col("g", "$g$"),
        col("beta1", "$\\beta_1$"),
        col("beta2", "$\\beta_2$"),
    ];
    if config.verify {
        columns.push(col("deg3", "deg.~3"));
        columns.push(col("N2", "$N_2$"));
    }
    let mut table = Table::new("First Betti numbers of Gorenstein weighted projective spaces", columns);
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let cache = config.cache()?;
    let rows = table_order(config.bound);
    for (n, (space, inv)) in rows.iter().enumerate() {
        let g = inv.g.expect("table rows are Gorenstein");
        let ideal = load_ideal(space, cache.as_ref())?;
        let degree3 = toric::check_degree3_generation(&ideal);
        let b1 = toric::beta1_of(&ideal)?;
        let b2 = match resolution::beta2_of(&ideal, &degree3) {
            Ok(b) => b.to_string(),
            Err(e) => {
                failures.push(format!("{space}: {e}"));
                "-".into()
            }
        };
        let mut row = vec![(n + 1).to_string(), space.to_string(), num(inv.g1), num(inv.i_s), g.to_string(), b1.to_string(), b2.clone()];
        if config.verify {
            row.push(pass(degree3.connected));
            if let Some(w) = degree3.witness {
                failures.push(format!("{space}: degree-3 fiber at {w} is disconnected"));
            }
            if config.heavy_allowed(g) {
                let syz = load_syzygies(&ideal, &config.primes, cache.as_ref())?;
                if syz.total_count().to_string() != b2 {
                    failures.push(format!("{space}: {} explicit linear syzygies, formula gives {b2}", syz.total_count()));
                }
                let quartic = resolution::check_no_quartic_syzygies(&ideal, &syz, &config.primes)?;
                row.push(pass(quartic.holds));
                if let Some(w) = quartic.witness {
                    failures.push(format!("{space}: quartic syzygy at {w}"));
                }
            } else {
                row.push("skipped".into());
                notes.push(format!("{space}: quartic check skipped (g = {g}); use --all"));
            }
        }
        if config.check {
            check_against(
                &mut failures,
                space,
                &[("g", g.to_string(), |r| r.g), ("beta1", b1.to_string(), |r| r.beta1), ("beta2", b2, |r| r.beta2)],
            );
        }
        table.push(row);
    }
    if config.check {
        let produced: Vec<WeightedSpace> = rows.iter().map(|r| r.0).collect();
        check_coverage(&mut failures, config.bound, &produced);
    }
    Ok(Outcome { table, notes, failures })
}

/// Rough wall-clock estimate for the `alpha` pipeline, in seconds.
pub fn budget_estimate(space: &WeightedSpace) -> Result<u64> {
    let b2 = resolution::beta2(space)? as f64;
    Ok((3e-8 * b2 * b2).ceil().max(1.0) as u64)
}

/// `alpha` report for one space, using and filling the cache.
pub fn alpha_for(space: &WeightedSpace, config: &RunConfig, cache: Option<&Cache>) -> Result<T1Report> {
    if let (Some(c), false) = (cache, config.strict) {
        if let Some(blocks) = c.load_blocks(space)? {
            return T1Report::from_blocks(*space, &blocks);
        }
    }
    let ideal = load_ideal(space, cache)?;
    if let Some(w) = toric::check_degree3_generation(&ideal).witness {
        return Err(Error::CubicGenerator(w));
    }
    let syz = load_syzygies(&ideal, &config.primes, cache)?;
    let table = tangent::checked_hom_table(&ideal, &syz, &config.t1_options())?;
    if let Some(c) = cache {
        c.store_blocks(space, &table.all())?;
    }
    T1Report::from_blocks(*space, &table.all())
}

/// `alpha(S) = alpha(P) + 1` and the extendability of every space within
/// the genus budget.
pub fn cmd_alpha(config: &RunConfig) -> Result<Outcome> {
    let mut table = Table::new(
        "Dimension of the weight -1 piece of T^1",
        vec![
            col("#", "\\#"),
            col("weights", "weights"),
            col("g1", "$g_1$"),
            col("i_S", "$i_S$"),
            col("alpha(S)", "$\\alpha(S)$"),
            col("alpha(P)", "$\\alpha(\\mathcal{P})$"),
            col("extendability", "ext."),
        ],
    );
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let cache = config.cache()?;
    for (n, (space, inv)) in table_order(config.bound).iter().enumerate() {
        let g = inv.g.expect("table rows are Gorenstein");
        let mut row = vec![(n + 1).to_string(), space.to_string(), num(inv.g1), num(inv.i_s)];
        if !config.heavy_allowed(g) {
            let est = budget_estimate(space)?;
            notes.push(format!("{space}: g = {g} over budget, estimated {est} s; use --all"));
            row.extend(["skipped: over budget".to_string(), "-".into(), "-".into()]);
            table.push(row);
            continue;
        }
        let report = alpha_for(space, config, cache.as_ref())?;
        row.extend([report.alpha_s.to_string(), report.alpha_p.to_string(), report.extendability.to_string()]);
        if config.check {
            check_against(&mut failures, space, &[("alpha(S)", report.alpha_s.to_string(), |r| r.alpha_s)]);
        }
        table.push(row);
    }
    Ok(Outcome { table, notes, failures })
}

/// `"(1,1,1,2,3); relations: [2]"`: generator degrees of `R^(d)` and the
/// degrees of its minimal relations.
pub fn cmd_veronese(space: &WeightedSpace, d: u32, cutoff: u32) -> Result<String> {
    let p = wps::veronese_presentation(space, d, cutoff)?;
    let gens: Vec<String> = p.generator_degrees.iter().map(|x| x.to_string()).collect();
    let rels: Vec<String> = p.relation_degrees.iter().map(|x| x.to_string()).collect();
    Ok(format!("({}); relations: [{}]", gens.join(","), rels.join(", ")))
}
