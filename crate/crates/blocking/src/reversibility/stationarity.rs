use super::balance::{build_chain, Chain, State};
use crate::error::Result;
use crate::par;
use crate::scalar::Scalar;
use crate::transition::TransitionRecord;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub states: usize,
    pub max_abs: f64,
    pub exact_zero: bool,
}

/// Residual of π G for the normalised weights π and generator G.
pub fn stationarity_check<St, S, G, W>(states: Vec<St>, generator: G, weight: W) -> Result<Residual>
where
    St: State,
    S: Scalar,
    G: Fn(&St) -> Result<Vec<TransitionRecord<St, S>>> + Sync + Send,
    W: Fn(&St) -> Result<S> + Sync + Send,
{
    let chain = build_chain(states, generator)?;
    let weights = par::map(&chain.states, &weight).into_iter().collect::<Result<Vec<S>>>()?;
    let pi = crate::dynamics_nn::conditional_measure(&weights)?;
    Ok(residual_of(&chain, &pi))
}

pub fn residual_of<St: State, S: Scalar>(chain: &Chain<St, S>, pi: &[S]) -> Residual {
    let mut flow = vec![S::zero(); chain.states.len()];
    for e in &chain.edges {
        let out = pi[e.from].clone() * e.rate.clone();
        flow[e.to] = flow[e.to].clone() + out.clone();
        flow[e.from] = flow[e.from].clone() - out;
    }
    Residual {
        states: chain.states.len(),
        max_abs: flow.iter().map(|r| r.to_f64().abs()).fold(0.0, f64::max),
        exact_zero: flow.iter().all(Scalar::is_zero),
    }
}

/// Whether every state reaches every other along positive-rate edges, which
/// makes the stationary law unique.
pub fn is_irreducible<St: State, S: Scalar>(chain: &Chain<St, S>) -> bool {
    let n = chain.states.len();
    if n == 0 {
        return false;
    }
    let mut forward = vec![Vec::new(); n];
    let mut backward = vec![Vec::new(); n];
    for e in chain.edges.iter().filter(|e| e.rate.is_positive()) {
        forward[e.from].push(e.to);
        backward[e.to].push(e.from);
    }
    let reach_all = |adj: &[Vec<usize>]| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach_all(&forward) && reach_all(&backward)
}
