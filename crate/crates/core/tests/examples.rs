macro_rules! example {
    ($module:ident, $test:ident, $file:literal) => {
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

example!(disk_mobius_example, disk_mobius_example_runs, "disk_mobius.rs");
example!(weights_example, weights_and_curvature_example_runs, "weights_and_curvature.rs");
example!(liouville_example, liouville_ode_example_runs, "liouville_ode.rs");
example!(planar_example, planar_distances_example_runs, "planar_distances.rs");
example!(ball_example, ball_bergman_example_runs, "ball_bergman.rs");
example!(catalog_example, holomorphic_catalog_example_runs, "holomorphic_catalog.rs");
example!(suite_example, contraction_suite_example_runs, "contraction_suite.rs");
