// SPDX-License-Identifier: Apache-2.0

// Generate a Barabási–Albert graph, inspect its statistics and node
// features, and round-trip it through the edge-list format.

use cgsrank::graph::{feature_matrix, generate_ba, load_edge_list, network_stats};

pub fn run_example() -> cgsrank::Result<()> {
    let g = generate_ba(1000, 2, 42)?;
    let stats = network_stats(&g)?;
    println!("{}", cgsrank::NetworkStats::CSV_HEADER);
    println!("{}", stats.csv_row());
    println!("threshold mu_c = {:.4}; labels would use mu = {:.4}", stats.mu_c, 1.5 * stats.mu_c);

    let x = feature_matrix(&g);
    for v in 0..3 {
        let [deg, and] = x.rows()[v];
        println!("node {v}: degree {deg}, average neighbor degree {and:.2}");
    }

    let mut buf = Vec::new();
    g.write_edge_list(&mut buf)?;
    let (back, report) = load_edge_list(buf.as_slice())?;
    assert_eq!(back.edge_count(), g.edge_count());
    println!("reloaded {} edges, dropped {:?}", back.edge_count(), report);
    Ok(())
}

#[allow(dead_code)]
fn main() -> cgsrank::Result<()> {
    run_example()
}
