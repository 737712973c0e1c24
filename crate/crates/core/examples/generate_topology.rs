//! Generates each topology family, prints a degree summary and round-trips
//! one of them through the edge-list format.
//!
//! cargo run --example generate_topology

use active_consensus::topology::{parse_edge_list, to_edge_list, Family};

fn main() -> active_consensus::Result<()> {
    let families = [
        Family::Uniform { n: 100, d: 5 },
        Family::Uniform { n: 100, d: 20 },
        Family::Clustered,
        Family::Star { n: 50 },
        Family::Chain { n: 50 },
    ];
    println!("{:<16} {:>5} {:>6} {:>8} {:>6} {:>6}", "family", "nodes", "edges", "mean deg", "min", "max");
    for family in families {
        let g = family.generate(7)?;
        let degrees = g.degrees();
        println!(
            "{:<16} {:>5} {:>6} {:>8.2} {:>6} {:>6}",
            family.to_string(),
            g.node_count(),
            g.edge_count(),
            g.mean_degree(),
            degrees.iter().min().unwrap(),
            degrees.iter().max().unwrap()
        );
    }

    let g = Family::Uniform { n: 12, d: 3 }.generate(1)?;
    let text = to_edge_list(&g);
    let back = parse_edge_list(&text)?;
    assert_eq!(back.edges(), g.edges());
    println!("\nedge list of a 12-node graph:\n{text}");
    Ok(())
}
