//! Reading and writing system and measure files.

use ising_zonoids::io::{parse_measure, parse_system, write_measure, write_system};

fn main() -> ising_zonoids::Result<()> {
    let text = "# knight moves\n1 2  1/2\n2 1  1/2\n";
    let file = parse_system(text)?;
    print!("{}", write_system(&file));
    let system = file.undirected()?;
    let measure = system.generating_measure();
    let written = write_measure(&measure);
    print!("{written}");
    assert_eq!(parse_measure(&written)?, measure);
    let periodic = "periodic 2\n0 0  1 0  1\n1 0  1 0  3\n0 0  0 1  1\n";
    print!("{}", write_system(&parse_system(periodic)?));
    Ok(())
}
