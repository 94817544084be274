// Reads group files and prints q(G), n(G) and the minimal faithful degree.

use std::path::Path;

use invariant_word::io::load_group;
use invariant_word::params::{is_simple, min_faithful_degree, n_param, q_param};
use invariant_word::{Ceilings, FiniteGroup};

pub fn run_example() -> invariant_word::Result<()> {
    let c = Ceilings::default();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    for name in ["c3", "s3", "s4", "a5", "s5"] {
        let g = load_group(&dir.join(format!("{name}.group")), &c)?;
        let simple = is_simple(&g, &c)?;
        let m = if simple { Some(min_faithful_degree(&g, &c)?) } else { None };
        println!(
            "{name}: order {}, simple {simple}, q {}, n {}, min faithful degree {m:?}",
            g.order(),
            q_param(&g),
            n_param(&g, &c)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
