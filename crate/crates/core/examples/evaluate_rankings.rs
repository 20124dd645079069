// SPDX-License-Identifier: Apache-2.0

// Ranking metrics: Kendall's tau (plain and tie-corrected), top-k Jaccard,
// the monotonicity index and a rank histogram.

use cgsrank::metrics::{
    jaccard_top_k, kendall_tau, kendall_tau_with, monotonicity_index, monotonicity_index_with, rank_histogram,
    MiDenominator, TauVariant,
};

pub fn run_example() -> cgsrank::Result<()> {
    let truth = [9.0, 7.5, 7.0, 4.0, 3.0, 2.5, 1.0, 1.0];
    let degree = [5.0, 5.0, 3.0, 3.0, 2.0, 2.0, 1.0, 1.0];
    let learned = [8.1, 7.9, 6.2, 4.4, 2.9, 3.1, 1.2, 0.8];

    for (name, scores) in [("degree", &degree), ("learned", &learned)] {
        println!(
            "{name:<8} tau-a {:+.3}  tau-b {:+.3}  js@3 {:.3}  mi {:.3} (unique-rank variant {:.3})",
            kendall_tau(scores, &truth)?,
            kendall_tau_with(scores, &truth, TauVariant::B)?,
            jaccard_top_k(scores, &truth, 3)?,
            monotonicity_index(scores)?,
            monotonicity_index_with(scores, MiDenominator::UniqueRanks)?,
        );
    }
    println!("degree rank histogram (first rank of bin -> nodes): {:?}", rank_histogram(&degree, 2)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> cgsrank::Result<()> {
    run_example()
}
