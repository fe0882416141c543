macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(classify, "classify.rs", classify_example_runs);
example!(lattice_points, "lattice_points.rs", lattice_points_example_runs);
example!(quadrics, "quadrics.rs", quadrics_example_runs);
example!(syzygies, "syzygies.rs", syzygies_example_runs);
example!(alpha, "alpha.rs", alpha_example_runs);
example!(sections, "sections.rs", sections_example_runs);
example!(veronese, "veronese.rs", veronese_example_runs);
example!(cache, "cache.rs", cache_example_runs);
example!(exact_linear_algebra, "exact_linear_algebra.rs", exact_linear_algebra_example_runs);
