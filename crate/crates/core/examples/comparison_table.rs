//! Token counts and short throughput runs for every game, as markdown.

use ggsys::bench::{emit_table, measure_row, Budget, TableFormat};
use ggsys::library::list_games;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = list_games()
        .iter()
        .map(|e| measure_row(e, Budget::FixedSeconds(0.5), 0))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", emit_table(&rows, TableFormat::Markdown)?);
    Ok(())
}
