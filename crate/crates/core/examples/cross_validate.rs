//! Cross-checks the three engines on every bundled game and prints the
//! report for the first one as JSON.

use ggsys::bench::cross_validate;
use ggsys::library::list_games;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (i, entry) in list_games().iter().enumerate() {
        let r = cross_validate(entry.name, 1, 10, 42)?;
        println!(
            "{:<13} {}",
            entry.title,
            if r.is_clean() { "agree" } else { "MISMATCH" }
        );
        if i == 0 {
            println!("{}", serde_json::to_string_pretty(&r)?);
        }
    }
    Ok(())
}
