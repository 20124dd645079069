// SPDX-License-Identifier: Apache-2.0

//! Ranking-quality metrics: Kendall's tau, top-k Jaccard similarity, the
//! monotonicity index and rank histograms.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TauVariant {
    /// `(C - D) / (n (n - 1) / 2)`; tied pairs count as neither.
    #[default]
    A,
    /// Tie-corrected: `(C - D) / sqrt((n0 - n1) (n0 - n2))`.
    B,
}

/// Which pair count the monotonicity index divides by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum MiDenominator {
    /// Total node count `N`.
    #[default]
    Nodes,
    /// Number of distinct ranks.
    UniqueRanks,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingReport {
    pub graph: String,
    pub method: String,
    pub kendall_tau: f64,
    pub jaccard_at_k: BTreeMap<usize, f64>,
    pub monotonicity: f64,
    /// Dense rank (1 = highest score) to node count.
    pub rank_histogram: BTreeMap<usize, usize>,
    pub wall_time_seconds: f64,
}

fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).expect("scores must not be NaN")
}

fn check_scores(a: &[f64]) -> Result<()> {
    if a.iter().any(|x| x.is_nan()) {
        return Err(Error::invalid("scores contain NaN"));
    }
    Ok(())
}

pub fn kendall_tau(a: &[f64], b: &[f64]) -> Result<f64> {
    kendall_tau_with(a, b, TauVariant::A)
}

/// Kendall's tau in O(n log n): sort by `(a, b)`, then count the inversions
/// of `b` with a merge sort.
pub fn kendall_tau_with(a: &[f64], b: &[f64], variant: TauVariant) -> Result<f64> {
    let counts = PairCounts::fast(a, b)?;
    Ok(counts.tau(variant))
}

/// Exact pair statistics shared by both tau variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCounts {
    pub n: usize,
    /// Concordant minus discordant pairs.
    pub net: i64,
    pub ties_a: u64,
    pub ties_b: u64,
}

impl PairCounts {
    pub fn fast(a: &[f64], b: &[f64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::invalid(format!("score lengths differ: {} vs {}", a.len(), b.len())));
        }
        let n = a.len();
        if n < 2 {
            return Err(Error::invalid("Kendall's tau needs at least 2 items"));
        }
        check_scores(a)?;
        check_scores(b)?;

        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_unstable_by(|&i, &j| cmp_f64(a[i], a[j]).then(cmp_f64(b[i], b[j])));

        let mut ties_a = 0u64;
        let mut ties_ab = 0u64;
        let mut run_a = 1u64;
        let mut run_ab = 1u64;
        for w in idx.windows(2) {
            let (i, j) = (w[0], w[1]);
            if a[i] == a[j] {
                run_a += 1;
                if b[i] == b[j] {
                    run_ab += 1;
                } else {
                    ties_ab += run_ab * (run_ab - 1) / 2;
                    run_ab = 1;
                }
            } else {
                ties_a += run_a * (run_a - 1) / 2;
                ties_ab += run_ab * (run_ab - 1) / 2;
                run_a = 1;
                run_ab = 1;
            }
        }
        ties_a += run_a * (run_a - 1) / 2;
        ties_ab += run_ab * (run_ab - 1) / 2;

        let mut seq: Vec<f64> = idx.iter().map(|&i| b[i]).collect();
        let mut buf = vec![0.0; n];
        let swaps = merge_count(&mut seq, &mut buf);

        let mut ties_b = 0u64;
        let mut run_b = 1u64;
        for w in seq.windows(2) {
            if w[0] == w[1] {
                run_b += 1;
            } else {
                ties_b += run_b * (run_b - 1) / 2;
                run_b = 1;
            }
        }
        ties_b += run_b * (run_b - 1) / 2;

        let n0 = (n as u64) * (n as u64 - 1) / 2;
        let net = n0 as i64 - ties_a as i64 - ties_b as i64 + ties_ab as i64 - 2 * swaps as i64;
        Ok(PairCounts { n, net, ties_a, ties_b })
    }

    pub fn pairs(&self) -> u64 {
        (self.n as u64) * (self.n as u64 - 1) / 2
    }

    pub fn tau(&self, variant: TauVariant) -> f64 {
        let n0 = self.pairs() as f64;
        match variant {
            TauVariant::A => self.net as f64 / n0,
            TauVariant::B => {
                let denom = ((n0 - self.ties_a as f64) * (n0 - self.ties_b as f64)).sqrt();
                if denom == 0.0 {
                    0.0
                } else {
                    self.net as f64 / denom
                }
            }
        }
    }
}

/// Sorts `v` ascending and returns the number of strictly inverted pairs.
fn merge_count(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = {
        let (left, right) = v.split_at_mut(mid);
        let (bl, br) = buf.split_at_mut(mid);
        merge_count(left, bl) + merge_count(right, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            buf[k] = v[j];
            // v[j] jumps over every remaining left element
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    swaps
}

/// Indices of the `k` highest scores; ties broken by ascending index.
pub fn top_k(scores: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&i, &j| cmp_f64(scores[j], scores[i]).then(i.cmp(&j)));
    idx.truncate(k);
    idx
}

/// `|A ∩ B| / |A ∪ B|` for the top-`k` node sets of two score vectors.
pub fn jaccard_top_k(a: &[f64], b: &[f64], k: usize) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::invalid("score lengths differ"));
    }
    if k == 0 || k > a.len() {
        return Err(Error::invalid(format!("k = {k} outside 1..={}", a.len())));
    }
    check_scores(a)?;
    check_scores(b)?;
    let mut in_a = vec![false; a.len()];
    for i in top_k(a, k) {
        in_a[i] = true;
    }
    let inter = top_k(b, k).into_iter().filter(|&i| in_a[i]).count();
    Ok(inter as f64 / (2 * k - inter) as f64)
}

/// Dense ranks: the highest score gets rank 1 and equal scores share a rank.
pub fn dense_ranks(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&i, &j| cmp_f64(scores[j], scores[i]));
    let mut ranks = vec![0; scores.len()];
    let mut rank = 0;
    let mut prev: Option<f64> = None;
    for i in idx {
        if prev != Some(scores[i]) {
            rank += 1;
            prev = Some(scores[i]);
        }
        ranks[i] = rank;
    }
    ranks
}

fn tie_groups(scores: &[f64]) -> Vec<usize> {
    let mut sorted = scores.to_vec();
    sorted.sort_by(|x, y| cmp_f64(*x, *y));
    let mut groups = Vec::new();
    let mut run = 1;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            groups.push(run);
            run = 1;
        }
    }
    groups.push(run);
    groups
}

/// `(1 - Σ N_r (N_r - 1) / (N (N - 1)))^2` over the tie groups `N_r`.
pub fn monotonicity_index(scores: &[f64]) -> Result<f64> {
    monotonicity_index_with(scores, MiDenominator::Nodes)
}

/// Monotonicity index with a choice of denominator. With
/// [`MiDenominator::UniqueRanks`] a fully tied list has a single rank and the
/// ratio is undefined; it is reported as 0.
pub fn monotonicity_index_with(scores: &[f64], denominator: MiDenominator) -> Result<f64> {
    let n = scores.len();
    if n < 2 {
        return Err(Error::invalid("monotonicity index needs at least 2 items"));
    }
    check_scores(scores)?;
    let groups = tie_groups(scores);
    let tied: u64 = groups.iter().map(|&g| (g * (g - 1)) as u64).sum();
    let base = match denominator {
        MiDenominator::Nodes => n,
        MiDenominator::UniqueRanks => groups.len(),
    } as u64;
    if base < 2 {
        return Ok(0.0);
    }
    let frac = tied as f64 / (base * (base - 1)) as f64;
    Ok((1.0 - frac).powi(2))
}

/// Histogram of dense ranks in `bins` equal-width bins over `1..=max_rank`.
/// Keys are the first rank of each bin.
pub fn rank_histogram(scores: &[f64], bins: usize) -> Result<BTreeMap<usize, usize>> {
    if bins == 0 {
        return Err(Error::invalid("bins must be at least 1"));
    }
    check_scores(scores)?;
    let ranks = dense_ranks(scores);
    let max_rank = ranks.iter().copied().max().unwrap_or(0);
    let mut hist = BTreeMap::new();
    if max_rank == 0 {
        return Ok(hist);
    }
    let bins = bins.min(max_rank);
    let start_of = |b: usize| 1 + b * max_rank / bins;
    for b in 0..bins {
        hist.insert(start_of(b), 0);
    }
    for r in ranks {
        // bin b covers ranks start_of(b)..start_of(b + 1)
        let mut b = (r - 1) * bins / max_rank;
        while b + 1 < bins && r >= start_of(b + 1) {
            b += 1;
        }
        while r < start_of(b) {
            b -= 1;
        }
        *hist.get_mut(&start_of(b)).expect("bin exists") += 1;
    }
    Ok(hist)
}
