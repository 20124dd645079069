// SPDX-License-Identifier: Apache-2.0

//! Discrete-time synchronous SIR spreading.
//!
//! One step: every node infected at the start of the step tries once to
//! infect each susceptible neighbor (probability `mu` per contact), then each
//! of those nodes recovers with probability `beta`. Nodes infected during the
//! step start spreading on the next one. The outbreak size is the number of
//! recovered nodes once nobody is infected, source included.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SirParams {
    /// Infection probability per infected-susceptible contact per step.
    pub mu: f64,
    /// Recovery probability per step.
    pub beta: f64,
    pub trials: usize,
    pub seed: u64,
}

impl SirParams {
    pub fn new(mu: f64, beta: f64, trials: usize, seed: u64) -> Result<Self> {
        let p = SirParams { mu, beta, trials, seed };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_rates(self.mu, self.beta)?;
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        Ok(())
    }
}

fn check_rates(mu: f64, beta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::invalid(format!("mu = {mu} outside [0, 1]")));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::invalid(format!("beta = {beta} outside (0, 1]")));
    }
    Ok(())
}

/// Mean outbreak size per source node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfluenceLabels {
    pub values: Vec<f64>,
    /// Standard error of each mean (sample standard deviation / sqrt(trials)).
    pub std_errors: Vec<f64>,
    pub params: SirParams,
    pub graph_fingerprint: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Susceptible,
    Infected,
    Recovered,
}

/// Reusable buffers so repeated trials on one graph do not allocate.
struct Scratch {
    state: Vec<State>,
    touched: Vec<NodeId>,
    infected: Vec<NodeId>,
    next: Vec<NodeId>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            state: vec![State::Susceptible; n],
            touched: Vec::new(),
            infected: Vec::new(),
            next: Vec::new(),
        }
    }

    fn run<R: Rng + ?Sized>(&mut self, g: &Graph, source: NodeId, mu: f64, beta: f64, rng: &mut R) -> usize {
        for &v in &self.touched {
            self.state[v] = State::Susceptible;
        }
        self.touched.clear();
        self.infected.clear();

        self.state[source] = State::Infected;
        self.touched.push(source);
        self.infected.push(source);
        let mut recovered = 0;
        while !self.infected.is_empty() {
            self.next.clear();
            for &i in &self.infected {
                for &s in g.neighbors(i) {
                    if self.state[s] == State::Susceptible && rng.gen::<f64>() < mu {
                        self.state[s] = State::Infected;
                        self.touched.push(s);
                        self.next.push(s);
                    }
                }
            }
            for &i in &self.infected {
                if beta >= 1.0 || rng.gen::<f64>() < beta {
                    self.state[i] = State::Recovered;
                    recovered += 1;
                } else {
                    self.next.push(i);
                }
            }
            std::mem::swap(&mut self.infected, &mut self.next);
        }
        recovered
    }
}

/// Runs one outbreak from `source` and returns its final size.
pub fn sir_trial<R: Rng + ?Sized>(g: &Graph, source: NodeId, mu: f64, beta: f64, rng: &mut R) -> Result<usize> {
    if source >= g.node_count() {
        return Err(Error::invalid(format!("source {source} out of range")));
    }
    check_rates(mu, beta)?;
    Ok(Scratch::new(g.node_count()).run(g, source, mu, beta, rng))
}

/// Largest graph [`exact_influence`] will enumerate.
pub const EXACT_NODE_LIMIT: usize = 12;

/// Expected outbreak size from `source`, by exhaustive enumeration of every
/// stochastic branch of the process [`sir_trial`] samples.
pub fn exact_influence(g: &Graph, source: NodeId, mu: f64, beta: f64) -> Result<f64> {
    let n = g.node_count();
    if n > EXACT_NODE_LIMIT {
        return Err(Error::TooLarge { n, limit: EXACT_NODE_LIMIT });
    }
    if source >= n {
        return Err(Error::invalid(format!("source {source} out of range")));
    }
    check_rates(mu, beta)?;
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let mut solver = Enumerator { masks, n, mu, beta, memo: HashMap::new() };
    Ok(solver.expected(1 << source, 0))
}

struct Enumerator {
    masks: Vec<u32>,
    n: usize,
    mu: f64,
    beta: f64,
    memo: HashMap<(u32, u32), f64>,
}

impl Enumerator {
    fn expected(&mut self, infected: u32, recovered: u32) -> f64 {
        if infected == 0 {
            return recovered.count_ones() as f64;
        }
        if let Some(&e) = self.memo.get(&(infected, recovered)) {
            return e;
        }
        let all = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        let susceptible = all & !infected & !recovered;

        // susceptible nodes exposed to at least one infected neighbor
        let mut exposed = Vec::new();
        for s in 0..self.n {
            if susceptible >> s & 1 == 1 {
                let k = (self.masks[s] & infected).count_ones();
                if k > 0 {
                    exposed.push((s, 1.0 - (1.0 - self.mu).powi(k as i32)));
                }
            }
        }
        let infected_nodes: Vec<usize> = (0..self.n).filter(|&v| infected >> v & 1 == 1).collect();

        let mut total = 0.0;
        let mut p_stay = 0.0;
        for hit in 0u32..(1 << exposed.len()) {
            let mut p_hit = 1.0;
            let mut newly = 0u32;
            for (j, &(s, p)) in exposed.iter().enumerate() {
                if hit >> j & 1 == 1 {
                    p_hit *= p;
                    newly |= 1 << s;
                } else {
                    p_hit *= 1.0 - p;
                }
            }
            if p_hit == 0.0 {
                continue;
            }
            for rec in 0u32..(1 << infected_nodes.len()) {
                let mut p = p_hit;
                let mut healed = 0u32;
                for (j, &v) in infected_nodes.iter().enumerate() {
                    if rec >> j & 1 == 1 {
                        p *= self.beta;
                        healed |= 1 << v;
                    } else {
                        p *= 1.0 - self.beta;
                    }
                }
                if p == 0.0 {
                    continue;
                }
                if newly == 0 && healed == 0 {
                    p_stay += p;
                    continue;
                }
                total += p * self.expected((infected & !healed) | newly, recovered | healed);
            }
        }
        // the only cycle in the chain is the "nothing happened" self-transition
        let e = total / (1.0 - p_stay);
        self.memo.insert((infected, recovered), e);
        e
    }
}

/// Mean outbreak size from every node, over `params.trials` independent runs each.
///
/// Trial `t` from node `v` draws from the substream keyed by
/// `(params.seed, v, t)`, so the result is bit-identical at any thread count.
pub fn influence_labels(g: &Graph, params: &SirParams) -> Result<InfluenceLabels> {
    params.validate()?;
    let n = g.node_count();
    let per_node: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map_init(
            || Scratch::new(n),
            |scratch, v| {
                let mut sum = 0u64;
                let mut sum_sq = 0u128;
                for t in 0..params.trials {
                    let mut rng = rng::substream(params.seed, v as u64, t as u64);
                    let size = scratch.run(g, v, params.mu, params.beta, &mut rng) as u64;
                    sum += size;
                    sum_sq += (size as u128) * (size as u128);
                }
                summarize(sum, sum_sq, params.trials)
            },
        )
        .collect();
    let (values, std_errors) = per_node.into_iter().unzip();
    Ok(InfluenceLabels {
        values,
        std_errors,
        params: *params,
        graph_fingerprint: g.fingerprint(),
    })
}

fn summarize(sum: u64, sum_sq: u128, trials: usize) -> (f64, f64) {
    let t = trials as f64;
    let mean = sum as f64 / t;
    if trials < 2 {
        return (mean, 0.0);
    }
    // exact integer arithmetic: t * sum_sq - sum^2 = t * (t - 1) * sample_var
    let scaled = (trials as u128) * sum_sq - (sum as u128) * (sum as u128);
    let var = scaled as f64 / (t * (t - 1.0));
    (mean, (var / t).sqrt())
}
