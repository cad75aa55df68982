//! Exact enumeration and analysis of small state spaces.
//!
//! A chain is anything that can list its one-step successors with exact
//! probabilities ([`ChainSpec`]). From a start state the reachable space is
//! enumerated by breadth-first search, the transition matrix is assembled
//! with `Ratio<i128>` entries and everything else (stationarity, symmetry,
//! total variation, conductance, diameter) is computed from that matrix.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use num_rational::Ratio;
use num_traits::Signed;
use thiserror::Error;

mod brute;
mod chains;
mod gadget;
mod report;

pub use brute::{brute_force_orientations, canonical_code, CanonicalCode, MAX_BRUTE_FORCE_EDGES};
pub use chains::{CrChain, DkChain, EfChain, TrChain};
pub use gadget::{gadget_bottleneck, green_position, BottleneckReport};
pub use report::{write_conductance_csv, write_enumeration_csv, write_tv_csv};

pub type Rational = Ratio<i128>;

/// Default bound on the number of states visited by [`enumerate_reachable`].
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("state space exceeds the cap of {cap} states ({found} found so far)")]
    CapExceeded { cap: usize, found: usize },
    #[error("{edges} internal edges is too many for brute force (limit {limit})")]
    TooLarge { edges: usize, limit: usize },
    #[error("a move from state {from} leaves the state space")]
    IncompleteSpace { from: usize },
    #[error("total variation stays above {eps} up to t = {tmax}")]
    HorizonTooShort { eps: f64, tmax: usize },
    #[error("one side of the cut is empty")]
    EmptySide,
}

/// A Markov chain given by its exact one-step successor lists. The self-loop
/// is implicit: it carries whatever probability the successors leave.
pub trait ChainSpec {
    type State: Clone;
    type Key: Clone + Ord + Hash;

    fn tag(&self) -> &'static str;
    fn key(&self, s: &Self::State) -> Self::Key;
    fn successors(&self, s: &Self::State) -> Vec<(Rational, Self::State)>;
}

/// States sorted by key, with a reverse index.
#[derive(Debug, Clone)]
pub struct StateSpace<K, S> {
    keys: Vec<K>,
    states: Vec<S>,
    index: HashMap<K, usize>,
}

impl<K: Clone + Ord + Hash, S> StateSpace<K, S> {
    fn from_pairs(mut pairs: Vec<(K, S)>) -> Self {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let index = pairs.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect();
        let (keys, states) = pairs.into_iter().unzip();
        StateSpace { keys, states, index }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &S {
        &self.states[i]
    }

    pub fn index_of(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }
}

/// Breadth-first closure of `start` under the moves of `chain`.
pub fn enumerate_reachable<C: ChainSpec>(
    chain: &C,
    start: C::State,
    cap: usize,
) -> Result<StateSpace<C::Key, C::State>, OracleError> {
    let mut seen: HashMap<C::Key, ()> = HashMap::new();
    let mut pairs = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(chain.key(&start), ());
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        for (_, next) in chain.successors(&s) {
            let k = chain.key(&next);
            if seen.contains_key(&k) {
                continue;
            }
            if seen.len() >= cap {
                return Err(OracleError::CapExceeded { cap, found: seen.len() });
            }
            seen.insert(k, ());
            queue.push_back(next);
        }
        pairs.push((chain.key(&s), s));
    }
    Ok(StateSpace::from_pairs(pairs))
}

/// A state space given up front (for instance all Dyck pairs of size `n`).
pub fn space_from_states<C: ChainSpec>(chain: &C, states: Vec<C::State>) -> StateSpace<C::Key, C::State> {
    StateSpace::from_pairs(states.into_iter().map(|s| (chain.key(&s), s)).collect())
}

/// Sparse row-stochastic matrix with exact entries. Row `i` lists
/// `(column, probability)` sorted by column, diagonal included.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    pub tag: &'static str,
    rows: Vec<Vec<(usize, Rational)>>,
}

pub fn build_transition_matrix<C: ChainSpec>(
    chain: &C,
    space: &StateSpace<C::Key, C::State>,
) -> Result<TransitionMatrix, OracleError> {
    let mut rows = Vec::with_capacity(space.len());
    for (i, s) in space.states().iter().enumerate() {
        let mut row: HashMap<usize, Rational> = HashMap::new();
        let mut out = Rational::from_integer(0);
        for (p, next) in chain.successors(s) {
            let j = space.index_of(&chain.key(&next)).ok_or(OracleError::IncompleteSpace { from: i })?;
            *row.entry(j).or_insert_with(|| Rational::from_integer(0)) += p;
            out += p;
        }
        *row.entry(i).or_insert_with(|| Rational::from_integer(0)) += Rational::from_integer(1) - out;
        let mut row: Vec<_> = row.into_iter().filter(|(_, p)| *p != Rational::from_integer(0)).collect();
        row.sort_by_key(|&(j, _)| j);
        rows.push(row);
    }
    Ok(TransitionMatrix { tag: chain.tag(), rows })
}

impl TransitionMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map(|k| self.rows[i][k].1)
            .unwrap_or_else(|_| Rational::from_integer(0))
    }

    /// Largest `|row sum - 1|`.
    pub fn row_sum_deviation(&self) -> Rational {
        self.rows
            .iter()
            .map(|r| (r.iter().map(|&(_, p)| p).sum::<Rational>() - 1).abs())
            .max()
            .unwrap_or_else(|| Rational::from_integer(0))
    }

    /// Largest `|(uP)_j - u_j|` for the uniform vector `u`, times `|space|`
    /// (that is, largest deviation of a column sum from 1).
    pub fn uniform_stationarity_deviation(&self) -> Rational {
        let mut col = vec![Rational::from_integer(0); self.len()];
        for r in &self.rows {
            for &(j, p) in r {
                col[j] += p;
            }
        }
        col.into_iter().map(|c| (c - 1).abs()).max().unwrap_or_else(|| Rational::from_integer(0))
    }

    pub fn is_uniform_stationary(&self) -> bool {
        self.uniform_stationarity_deviation() == Rational::from_integer(0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|i| self.rows[i].iter().all(|&(j, p)| self.get(j, i) == p))
    }

    /// Whether every state reaches every other.
    pub fn is_connected(&self) -> bool {
        (0..self.len()).all(|s| self.bfs(s, None).iter().all(|d| d.is_some()))
    }

    /// Distances from `s` along positive off-diagonal entries, never
    /// entering `avoid`.
    fn bfs(&self, s: usize, avoid: Option<usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let d = dist[x].expect("queued states have a distance");
            for &(y, _) in &self.rows[x] {
                if dist[y].is_none() && Some(y) != avoid {
                    dist[y] = Some(d + 1);
                    q.push_back(y);
                }
            }
        }
        dist
    }

    /// Maximum over all states of the BFS eccentricity, or `None` when the
    /// state graph is not strongly connected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.len() {
            for d in self.bfs(s, None) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// True when removing state `v` disconnects every state of `a` from
    /// every state of `b`.
    pub fn separates(&self, v: usize, a: &[usize], b: &[usize]) -> bool {
        a.iter().filter(|&&x| x != v).all(|&x| {
            let d = self.bfs(x, Some(v));
            b.iter().all(|&y| y == v || d[y].is_none())
        })
    }

    /// Exact conductance of the cut `{i : in_cut[i]}` under the uniform
    /// distribution, measured from whichever side has at most half the mass.
    pub fn conductance_of_cut(&self, in_cut: &[bool]) -> Result<Rational, OracleError> {
        let size = in_cut.iter().filter(|&&b| b).count();
        if size == 0 || size == self.len() {
            return Err(OracleError::EmptySide);
        }
        let side = if 2 * size <= self.len() { true } else { false };
        let s_size = if side { size } else { self.len() - size };
        let mut flow = Rational::from_integer(0);
        for (i, r) in self.rows.iter().enumerate() {
            if in_cut[i] != side {
                continue;
            }
            for &(j, p) in r {
                if in_cut[j] != side {
                    flow += p;
                }
            }
        }
        Ok(flow / s_size as i128)
    }

    fn float_rows(&self) -> Vec<Vec<(usize, f64)>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&(j, p)| (j, *p.numer() as f64 / *p.denom() as f64)).collect())
            .collect()
    }

    /// `TV(t)` between `P^t(start, .)` and the uniform distribution for
    /// `t = 0..=tmax`.
    pub fn tv_curve(&self, start: usize, tmax: usize) -> Vec<f64> {
        self.tv_curves(&[start], tmax).remove(0)
    }

    fn tv_curves(&self, starts: &[usize], tmax: usize) -> Vec<Vec<f64>> {
        let rows = self.float_rows();
        let n = self.len();
        let u = 1.0 / n as f64;
        starts
            .iter()
            .map(|&s| {
                let mut dist = vec![0.0; n];
                dist[s] = 1.0;
                let mut curve = Vec::with_capacity(tmax + 1);
                for t in 0..=tmax {
                    curve.push(0.5 * dist.iter().map(|p| (p - u).abs()).sum::<f64>());
                    if t == tmax {
                        break;
                    }
                    let mut next = vec![0.0; n];
                    for (i, &p) in dist.iter().enumerate() {
                        if p != 0.0 {
                            for &(j, q) in &rows[i] {
                                next[j] += p * q;
                            }
                        }
                    }
                    dist = next;
                }
                curve
            })
            .collect()
    }

    /// Pointwise maximum of the TV curves over all starts when the space has
    /// at most [`WORST_CASE_LIMIT`] states, otherwise the curve from state 0.
    pub fn worst_tv_curve(&self, tmax: usize) -> Vec<f64> {
        let starts: Vec<usize> = if self.len() <= WORST_CASE_LIMIT { (0..self.len()).collect() } else { vec![0] };
        let curves = self.tv_curves(&starts, tmax);
        (0..=tmax).map(|t| curves.iter().map(|c| c[t]).fold(0.0, f64::max)).collect()
    }
}

/// Largest space for which [`TransitionMatrix::worst_tv_curve`] tries every start.
pub const WORST_CASE_LIMIT: usize = 500;

/// First `t` after which the curve stays at or below `eps`.
pub fn mixing_time(curve: &[f64], eps: f64) -> Result<usize, OracleError> {
    let tmax = curve.len().saturating_sub(1);
    match curve.iter().rposition(|&tv| tv > eps) {
        None => Ok(0),
        Some(t) if t == tmax => Err(OracleError::HorizonTooShort { eps, tmax }),
        Some(t) => Ok(t + 1),
    }
}

/// Empirical total variation of a sample histogram against the uniform
/// distribution on `space_size` states. An estimate, not an exact value.
pub fn sampled_tv<K>(counts: &HashMap<K, u64>, space_size: usize) -> f64 {
    let total: u64 = counts.values().sum();
    let u = 1.0 / space_size as f64;
    let seen: f64 = counts.values().map(|&c| (c as f64 / total as f64 - u).abs()).sum();
    let unseen = (space_size - counts.len()) as f64 * u;
    0.5 * (seen + unseen)
}
