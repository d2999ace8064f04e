//! Explicit finite Markov chain on a fixed gray-particle sector.
//!
//! Gray count is conserved by every transition rule, so the chain on
//! `C(N, r) 2^(N-r)` states (rather than all `3^N`) is the right unit of
//! analysis. The stationary distribution is obtained by exact rational
//! Gaussian elimination; no floating point enters the oracle. A
//! seed-deterministic simulator provides an independent statistical
//! check, sampling with exact integer thresholds.

use crate::linalg::{solve_exact, Matrix};
use crate::states::{Site, StateWord};
use crate::QRat;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("invalid chain parameters: {0}")]
    InvalidParams(String),
    #[error("chain is reducible: {} recurrent classes {classes:?}", classes.len())]
    Reducible { classes: Vec<Vec<String>> },
}

/// The 2-PASEP restricted to states with exactly `r` gray particles,
/// with its exact transition matrix.
#[derive(Debug, Clone)]
pub struct ChainModel {
    n: usize,
    r: usize,
    q: QRat,
    states: Vec<StateWord>,
    p: Matrix<QRat>,
}

/// Exact stationary distribution, indexed like [`ChainModel::states`].
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution {
    probabilities: Vec<QRat>,
}

impl StationaryDistribution {
    pub fn probabilities(&self) -> &[QRat] {
        &self.probabilities
    }
}

/// Occupancy counts of a simulated trajectory.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub counts: Vec<u64>,
    pub steps: u64,
}

impl Simulation {
    /// Exact empirical frequencies (counts over steps).
    pub fn empirical(&self) -> Vec<QRat> {
        let steps = BigInt::from(self.steps);
        self.counts
            .iter()
            .map(|&c| QRat::new(BigInt::from(c), steps.clone()))
            .collect()
    }

    /// Exact total-variation distance to a reference distribution.
    pub fn total_variation(&self, reference: &[QRat]) -> QRat {
        let emp = self.empirical();
        assert_eq!(emp.len(), reference.len());
        let sum: QRat = emp
            .iter()
            .zip(reference)
            .map(|(a, b)| (a - b).abs())
            .fold(QRat::zero(), |acc, d| acc + d);
        sum / QRat::from_integer(BigInt::from(2))
    }
}

impl ChainModel {
    /// Build the sector chain. Requires `1 <= N`, `r <= N`, and
    /// `0 <= q <= 1`.
    pub fn build(n: usize, r: usize, q: QRat) -> Result<Self, ChainError> {
        if n < 1 {
            return Err(ChainError::InvalidParams("need at least one site".into()));
        }
        if r > n {
            return Err(ChainError::InvalidParams(format!("r = {r} exceeds N = {n}")));
        }
        if q < QRat::zero() || q > QRat::one() {
            return Err(ChainError::InvalidParams(format!("q = {q} outside [0, 1]")));
        }
        let states = StateWord::enumerate(n, r);
        let hop = QRat::new(BigInt::one(), BigInt::from(n as u32 + 1));
        let back = &q * &hop;
        let count = states.len();
        let mut p = Matrix::<QRat>::zeros(count, count);
        let index_of = |sites: &[Site]| -> usize {
            states
                .binary_search_by(|s| s.sites().cmp(sites))
                .expect("gray count is conserved, target stays in the sector")
        };
        for (i, state) in states.iter().enumerate() {
            let sites = state.sites();
            let mut total = QRat::zero();
            let mut push = |target: Vec<Site>, prob: &QRat, p: &mut Matrix<QRat>| {
                let j = index_of(&target);
                p[(i, j)] = &p[(i, j)] + prob;
                total = &total + prob;
            };
            for pos in 0..n - 1 {
                let rate = match (sites[pos], sites[pos + 1]) {
                    (Site::Black, Site::Hole) => Some(&hop), // black hops right
                    (Site::Hole, Site::Black) => Some(&back), // black hops left
                    (Site::Gray, Site::Hole) => Some(&hop),  // gray hops right
                    (Site::Hole, Site::Gray) => Some(&back), // gray hops left
                    (Site::Black, Site::Gray) => Some(&hop), // black passes gray
                    (Site::Gray, Site::Black) => Some(&back),
                    _ => None,
                };
                if let Some(rate) = rate {
                    let mut target = sites.to_vec();
                    target.swap(pos, pos + 1);
                    push(target, rate, &mut p);
                }
            }
            if sites[0] == Site::Hole {
                let mut target = sites.to_vec();
                target[0] = Site::Black;
                push(target, &hop, &mut p); // particle enters from the left
            }
            if sites[n - 1] == Site::Black {
                let mut target = sites.to_vec();
                target[n - 1] = Site::Hole;
                push(target, &hop, &mut p); // particle exits to the right
            }
            p[(i, i)] = QRat::one() - total;
        }
        // row-stochasticity is exact by construction; verify anyway
        for i in 0..count {
            let sum = (0..count).fold(QRat::zero(), |acc, j| acc + p[(i, j)].clone());
            debug_assert!(sum.is_one(), "row {i} sums to {sum}");
        }
        Ok(ChainModel { n, r, q, states, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> &QRat {
        &self.q
    }

    /// States of the sector in lexicographic order.
    pub fn states(&self) -> &[StateWord] {
        &self.states
    }

    pub fn state_index(&self, state: &StateWord) -> Option<usize> {
        self.states.binary_search_by(|s| s.sites().cmp(state.sites())).ok()
    }

    pub fn transition(&self, from: usize, to: usize) -> &QRat {
        &self.p[(from, to)]
    }

    /// The recurrent classes of the transition digraph.
    fn recurrent_classes(&self) -> Vec<Vec<usize>> {
        let count = self.states.len();
        let adjacency: Vec<Vec<usize>> = (0..count)
            .map(|i| {
                (0..count)
                    .filter(|&j| j != i && self.p[(i, j)].is_positive())
                    .collect()
            })
            .collect();
        let components = strongly_connected_components(&adjacency);
        let mut component_of = vec![0usize; count];
        for (c, members) in components.iter().enumerate() {
            for &m in members {
                component_of[m] = c;
            }
        }
        components
            .iter()
            .enumerate()
            .filter(|(c, members)| {
                members
                    .iter()
                    .all(|&m| adjacency[m].iter().all(|&t| component_of[t] == *c))
            })
            .map(|(_, members)| members.clone())
            .collect()
    }

    /// Exact stationary distribution: the unique probability vector with
    /// `pi P = pi`, found by Gaussian elimination on the transpose system
    /// with the normalization row appended.
    pub fn stationary(&self) -> Result<StationaryDistribution, ChainError> {
        let recurrent = self.recurrent_classes();
        if recurrent.len() != 1 {
            return Err(ChainError::Reducible {
                classes: recurrent
                    .iter()
                    .map(|class| class.iter().map(|&i| self.states[i].to_string()).collect())
                    .collect(),
            });
        }
        let count = self.states.len();
        // rows 0..count: (P^T - I) pi = 0; final row: sum pi = 1
        let a = Matrix::from_fn(count + 1, count, |i, j| {
            if i < count {
                let mut entry = self.p[(j, i)].clone();
                if i == j {
                    entry -= QRat::one();
                }
                entry
            } else {
                QRat::one()
            }
        });
        let mut rhs = vec![QRat::zero(); count + 1];
        rhs[count] = QRat::one();
        let pi = solve_exact(&a, &rhs)
            .expect("an irreducible finite chain has a unique stationary distribution");
        debug_assert!(pi.iter().all(|p| !p.is_negative()));
        Ok(StationaryDistribution { probabilities: pi })
    }

    /// Run a single trajectory from the lexicographically first state and
    /// count state occupancies after each of `steps` transitions.
    ///
    /// Sampling is exact: every transition probability in the sector has
    /// denominator dividing `(N + 1) * denom(q)`, so one uniform integer
    /// draw below that modulus picks the move. The generator is ChaCha8
    /// seeded with `seed` (rejection sampling for the range), so the
    /// trajectory is fully reproducible.
    pub fn simulate(&self, steps: u64, seed: u64) -> Result<Simulation, ChainError> {
        if steps == 0 {
            return Err(ChainError::InvalidParams("need at least one step".into()));
        }
        let modulus_big = BigInt::from(self.n as u32 + 1) * self.q.denom();
        let modulus = modulus_big
            .to_u64()
            .ok_or_else(|| ChainError::InvalidParams("q denominator too large".into()))?;
        let count = self.states.len();
        // cumulative integer thresholds per row
        let mut table: Vec<Vec<(u64, usize)>> = Vec::with_capacity(count);
        for i in 0..count {
            let mut acc = 0u64;
            let mut row = Vec::new();
            for j in 0..count {
                let p = &self.p[(i, j)];
                if p.is_zero() {
                    continue;
                }
                let scaled = p * QRat::from_integer(modulus_big.clone());
                debug_assert!(scaled.is_integer());
                acc += scaled.to_integer().to_u64().expect("threshold fits in u64");
                row.push((acc, j));
            }
            debug_assert_eq!(acc, modulus);
            table.push(row);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut current = 0usize;
        let mut counts = vec![0u64; count];
        for _ in 0..steps {
            let draw = uniform_below(&mut rng, modulus);
            current = table[current]
                .iter()
                .find(|(threshold, _)| draw < *threshold)
                .map(|&(_, j)| j)
                .expect("thresholds cover the modulus");
            counts[current] += 1;
        }
        Ok(Simulation { counts, steps })
    }
}

/// Uniform draw in `[0, m)` by rejection from 64-bit words.
fn uniform_below(rng: &mut ChaCha8Rng, m: u64) -> u64 {
    debug_assert!(m > 0);
    let zone = u64::MAX - u64::MAX % m;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % m;
        }
    }
}

fn strongly_connected_components(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adjacency.len();
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        // iterative DFS recording finish order
        let mut stack = vec![(start, 0usize)];
        visited[start] = true;
        while let Some((node, child)) = stack.last_mut() {
            if let Some(&next) = adjacency[*node].get(*child) {
                *child += 1;
                if !visited[next] {
                    visited[next] = true;
                    stack.push((next, 0));
                }
            } else {
                order.push(*node);
                stack.pop();
            }
        }
    }
    let mut reverse = vec![Vec::new(); n];
    for (i, targets) in adjacency.iter().enumerate() {
        for &j in targets {
            reverse[j].push(i);
        }
    }
    let mut component = vec![usize::MAX; n];
    let mut components = Vec::new();
    for &start in order.iter().rev() {
        if component[start] != usize::MAX {
            continue;
        }
        let c = components.len();
        let mut members = vec![start];
        component[start] = c;
        let mut stack = vec![start];
        while let Some(node) = stack.pop() {
            for &prev in &reverse[node] {
                if component[prev] == usize::MAX {
                    component[prev] = c;
                    members.push(prev);
                    stack.push(prev);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

/// One state's failure of the `q = 1` sector-projection identity.
#[derive(Debug, Clone, PartialEq)]
pub struct LumpingFailure {
    pub state: String,
    pub lhs: QRat,
    pub rhs: QRat,
}

/// Result of checking the `q = 1` projection onto the gray-free chain.
#[derive(Debug, Clone, PartialEq)]
pub struct LumpingReport {
    pub states_checked: usize,
    pub failures: Vec<LumpingFailure>,
}

impl LumpingReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// At `q = 1` the stationary probability of a sector state equals the
/// average, over the `2^r` ways of filling its gray sites with a black
/// particle or a hole, of the gray-free chain's probabilities divided by
/// `C(N, r)`. Verify the identity exactly for every state of the
/// `(n, r)` sector.
pub fn lumping_check_q1(n: usize, r: usize) -> Result<LumpingReport, ChainError> {
    let one = QRat::one();
    let sector = ChainModel::build(n, r, one.clone())?;
    let base = ChainModel::build(n, 0, one)?;
    let pi_sector = sector.stationary()?;
    let pi_base = base.stationary()?;
    let choose = QRat::from_integer(crate::qseries::binomial(n, r));
    let mut failures = Vec::new();
    for (i, state) in sector.states().iter().enumerate() {
        let gray_positions: Vec<usize> = state
            .sites()
            .iter()
            .enumerate()
            .filter_map(|(p, s)| (*s == Site::Gray).then_some(p))
            .collect();
        let mut sum = QRat::zero();
        for mask in 0u64..(1 << gray_positions.len()) {
            let mut filled = state.sites().to_vec();
            for (bit, &pos) in gray_positions.iter().enumerate() {
                filled[pos] = if mask >> bit & 1 == 1 { Site::Black } else { Site::Hole };
            }
            let word = StateWord::new(filled).expect("same length");
            let j = base.state_index(&word).expect("gray-free state exists");
            sum += pi_base.probabilities()[j].clone();
        }
        let lhs = pi_sector.probabilities()[i].clone();
        let rhs = sum / choose.clone();
        if lhs != rhs {
            failures.push(LumpingFailure { state: state.to_string(), lhs, rhs });
        }
    }
    Ok(LumpingReport { states_checked: sector.states().len(), failures })
}
