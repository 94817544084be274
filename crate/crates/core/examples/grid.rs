// A small grid of cyclic cells as a TSV table, then one corrupted cell.

use invariant_word::grid::{product, run_grid, GridOptions};
use invariant_word::report::grid_tsv;
use invariant_word::Ceilings;

pub fn run_example() -> invariant_word::Result<()> {
    let c = Ceilings::default();
    let cells = product(&[2, 3], &[2, 4], &[1, 2]);
    let rows = run_grid(&cells, &GridOptions::default(), &c)?;
    print!("{}", grid_tsv(&rows));

    let opts = GridOptions {
        mutate: Some(3),
        ..GridOptions::default()
    };
    let rows = run_grid(&cells[..4], &opts, &c)?;
    println!("with cell 3 corrupted: {} failing rows", rows.iter().filter(|r| !r.pass).count());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
