//! Runs every example in `examples/` as a smoke test.

macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().unwrap();
        }
    };
}

example!(construct, "construct.rs");
example!(verify, "verify.rs");
example!(stabilizers, "stabilizers.rs");
example!(mu, "mu.rs");
example!(beta, "beta.rs");
example!(framework, "framework.rs");
example!(lemma_sweeps, "lemma_sweeps.rs");
example!(fp, "fp.rs");
example!(group_params, "group_params.rs");
example!(grid, "grid.rs");
