use crate::error::{Error, Result};
use crate::par;
use crate::scalar::Scalar;
use crate::transition::{Move, TransitionRecord};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Display;
use std::hash::Hash;

pub trait State: Clone + Eq + Hash + Display + Send + Sync {}
impl<T: Clone + Eq + Hash + Display + Send + Sync> State for T {}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge<S> {
    pub from: usize,
    pub to: usize,
    pub rate: S,
    pub descriptor: Move,
}

/// A finite chain: states with indexed transitions between them.
#[derive(Debug, Clone)]
pub struct Chain<St, S> {
    pub states: Vec<St>,
    pub edges: Vec<Edge<S>>,
    index: HashMap<St, usize>,
}

impl<St: State, S: Scalar> Chain<St, S> {
    pub fn index_of(&self, s: &St) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Edges leaving each state.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for (k, e) in self.edges.iter().enumerate() {
            out[e.from].push(k);
        }
        out
    }

    /// Total rate for each ordered pair, summing parallel moves.
    pub fn pair_rates(&self) -> BTreeMap<(usize, usize), S> {
        let mut rates: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for e in &self.edges {
            let slot = rates.entry((e.from, e.to)).or_insert_with(S::zero);
            *slot = slot.clone() + e.rate.clone();
        }
        rates
    }
}

/// Drops transitions whose target ranks above `cap`.
pub fn within_cap<St, S>(records: Vec<TransitionRecord<St, S>>, cap: u64, rank: impl Fn(&St) -> u64) -> Vec<TransitionRecord<St, S>> {
    records.into_iter().filter(|t| rank(&t.target) <= cap).collect()
}

/// Runs the generator on every state and indexes the transitions. Any
/// transition leaving the state list is a closure violation.
pub fn build_chain<St, S, G>(states: Vec<St>, generator: G) -> Result<Chain<St, S>>
where
    St: State,
    S: Scalar,
    G: Fn(&St) -> Result<Vec<TransitionRecord<St, S>>> + Sync + Send,
{
    let index: HashMap<St, usize> = states.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
    if index.len() != states.len() {
        return Err(Error::Inconsistent("state list contains duplicates".into()));
    }
    let per_state = par::map_range(0..states.len(), |from| -> Result<(Vec<Edge<S>>, Vec<String>)> {
        let mut edges = Vec::new();
        let mut escaped = Vec::new();
        for t in generator(&states[from])? {
            match index.get(&t.target) {
                Some(&to) => edges.push(Edge { from, to, rate: t.rate, descriptor: t.descriptor }),
                None => escaped.push(format!("{} -> {} via {}", t.source, t.target, t.descriptor.label())),
            }
        }
        Ok((edges, escaped))
    });
    let mut edges = Vec::new();
    let mut escaped = Vec::new();
    for r in per_state {
        let (e, x) = r?;
        edges.extend(e);
        escaped.extend(x);
    }
    if let Some(first) = escaped.first() {
        return Err(Error::Closure { count: escaped.len(), first: first.clone() });
    }
    Ok(Chain { states, edges, index })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum CheckMode {
    Exact,
    Float { tolerance: f64 },
}

impl CheckMode {
    pub fn tolerance(&self) -> f64 {
        match self {
            CheckMode::Exact => 0.0,
            CheckMode::Float { tolerance } => *tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalanceFailure {
    pub source: usize,
    pub target: usize,
    pub source_state: String,
    pub target_state: String,
    pub moves: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalanceReport {
    pub states: usize,
    pub transitions: usize,
    pub pairs_checked: usize,
    pub failures: Vec<BalanceFailure>,
    #[serde(flatten)]
    pub mode: CheckMode,
}

impl BalanceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks weight(x) w(x, y) = weight(y) w(y, x) for every connected pair.
pub fn check_detailed_balance<St, S, G, W>(states: Vec<St>, generator: G, weight: W, mode: CheckMode) -> Result<BalanceReport>
where
    St: State,
    S: Scalar,
    G: Fn(&St) -> Result<Vec<TransitionRecord<St, S>>> + Sync + Send,
    W: Fn(&St) -> Result<S> + Sync + Send,
{
    let chain = build_chain(states, generator)?;
    let weights = par::map(&chain.states, &weight).into_iter().collect::<Result<Vec<S>>>()?;
    Ok(balance_of(&chain, &weights, mode))
}

pub fn balance_of<St: State, S: Scalar>(chain: &Chain<St, S>, weights: &[S], mode: CheckMode) -> BalanceReport {
    let rates = chain.pair_rates();
    let mut moves: HashMap<(usize, usize), Vec<String>> = HashMap::new();
    for e in &chain.edges {
        moves.entry((e.from, e.to)).or_default().push(e.descriptor.label());
    }
    let mut pairs: Vec<(usize, usize)> = rates.keys().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let tol = mode.tolerance();
    let failures: Vec<BalanceFailure> = par::map(&pairs, |&(x, y)| {
        let forward = rates.get(&(x, y)).cloned().unwrap_or_else(S::zero);
        let backward = rates.get(&(y, x)).cloned().unwrap_or_else(S::zero);
        let lhs = weights[x].clone() * forward;
        let rhs = weights[y].clone() * backward;
        if lhs.close(&rhs, tol) {
            return None;
        }
        let mut labels = moves.get(&(x, y)).cloned().unwrap_or_default();
        labels.extend(moves.get(&(y, x)).cloned().unwrap_or_default());
        Some(BalanceFailure {
            source: x,
            target: y,
            source_state: chain.states[x].to_string(),
            target_state: chain.states[y].to_string(),
            moves: labels,
            lhs: lhs.render(),
            rhs: rhs.render(),
        })
    })
    .into_iter()
    .flatten()
    .collect();
    BalanceReport {
        states: chain.states.len(),
        transitions: chain.edges.len(),
        pairs_checked: pairs.len(),
        failures,
        mode,
    }
}
