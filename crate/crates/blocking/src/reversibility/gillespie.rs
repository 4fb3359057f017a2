use super::balance::{Chain, State};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stop {
    Events(u64),
    Time(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryStats {
    pub seed: u64,
    pub events: u64,
    pub total_time: f64,
    pub occupation: Vec<f64>,
    pub empirical: Vec<f64>,
    pub tv_distance: f64,
}

/// Half the L1 distance between two laws on the same index set.
pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

pub fn simulate<St: State>(chain: &Chain<St, f64>, initial: usize, seed: u64, stop: Stop, exact: &[f64]) -> Result<TrajectoryStats> {
    simulate_with(chain, initial, seed, stop, exact, |_, _| {})
}

/// Event-driven trajectory from `initial`; `observer` sees (jump time, new
/// state) after every event.
pub fn simulate_with<St: State>(
    chain: &Chain<St, f64>,
    initial: usize,
    seed: u64,
    stop: Stop,
    exact: &[f64],
    mut observer: impl FnMut(f64, usize),
) -> Result<TrajectoryStats> {
    let n = chain.states.len();
    let mut targets: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut cumulative: Vec<Vec<f64>> = vec![Vec::new(); n];
    for e in chain.edges.iter().filter(|e| e.rate > 0.0) {
        let last = cumulative[e.from].last().copied().unwrap_or(0.0);
        cumulative[e.from].push(last + e.rate);
        targets[e.from].push(e.to);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut occupation = vec![0.0; n];
    let mut state = initial;
    let mut time = 0.0;
    let mut events = 0u64;
    loop {
        if let Stop::Events(cap) = stop {
            if events >= cap {
                break;
            }
        }
        let Some(&total) = cumulative[state].last() else {
            return Err(Error::Absorbing(state));
        };
        let hold = -(1.0 - rng.gen::<f64>()).ln() / total;
        if let Stop::Time(t_max) = stop {
            if time + hold >= t_max {
                occupation[state] += t_max - time;
                time = t_max;
                break;
            }
        }
        occupation[state] += hold;
        time += hold;
        let pick = rng.gen::<f64>() * total;
        let k = cumulative[state].partition_point(|&c| c <= pick).min(targets[state].len() - 1);
        state = targets[state][k];
        events += 1;
        observer(time, state);
    }

    let empirical = if time > 0.0 {
        occupation.iter().map(|t| t / time).collect()
    } else {
        let mut e = vec![0.0; n];
        e[initial] = 1.0;
        e
    };
    Ok(TrajectoryStats { seed, events, total_time: time, occupation, tv_distance: total_variation(&empirical, exact), empirical })
}
