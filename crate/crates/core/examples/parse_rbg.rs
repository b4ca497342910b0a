//! Parses the Amazons regex description, expands its macros and builds the
//! move automaton.

use ggsys::library::{load_description, Dialect};
use ggsys::rbg::{build_nfa, expand_macros, parse_rbg_source, tokenize_rbg};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let src = load_description("amazons", Dialect::Rbg)?;
    println!("tokens: {}", tokenize_rbg(src)?.len());
    let def = parse_rbg_source(src)?;
    println!("players: {:?}", def.players);
    println!(
        "macros: {:?}",
        def.macros.iter().map(|m| &m.name).collect::<Vec<_>>()
    );
    let expanded = expand_macros(&def)?;
    let nfa = build_nfa(&expanded.rules);
    println!(
        "automaton: {} nodes, {} edges",
        nfa.node_count,
        nfa.edges.len()
    );
    Ok(())
}
