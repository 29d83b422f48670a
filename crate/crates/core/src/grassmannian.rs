//! The rectangle seed of `Gr(m, n)`, labels-to-`L`, geometric exchanges, and
//! breadth-first exploration of the exchange graph.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{
    c_exponent, subset_from_partition, CombinatoricsError, GrassParams, IndexSubset, Partition,
};
use crate::invariants::{lambda_pair, InvariantError};
use crate::matrix::IntMatrix;
use crate::seed::{ExchangeMatrix, LambdaMatrix, Position, QuantumSeed, SeedError};
use crate::Error;

/// `λ_ij = c(I_i, I_j)`.
pub fn l_from_labels(labels: &[IndexSubset]) -> Result<LambdaMatrix, CombinatoricsError> {
    let n = labels.len();
    let mut l = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let c = c_exponent(&labels[i], &labels[j])?;
            l[(i, j)] = c;
            l[(j, i)] = -c;
        }
    }
    Ok(LambdaMatrix::new(l).expect("skew by construction"))
}

/// `λ_ij = κ(M_j, M_i) - κ(M_i, M_j)` from the rank-one modules.
pub fn l_from_modules(labels: &[IndexSubset]) -> Result<IntMatrix, InvariantError> {
    let n = labels.len();
    let mut l = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                l[(i, j)] = lambda_pair(&labels[i], &labels[j])?;
            }
        }
    }
    Ok(l)
}

/// Label of the grid box `(i, j)`: the subset of the `i x j` rectangle
/// partition, i.e. `{1..m-i} ∪ {m-i+1+j..m+j}`.
pub fn grid_label(params: GrassParams, i: usize, j: usize) -> IndexSubset {
    let p = Partition::new(vec![j; i]).expect("rectangle");
    subset_from_partition(&p, params).expect("rectangle fits the box")
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
enum Node {
    Base,
    Grid(usize, usize),
}

/// Initial rectangle seed with unit-monomial variables.
pub fn initial_seed(m: usize, n: usize) -> Result<QuantumSeed, Error> {
    initial_seed_with(m, n, true)
}

/// As [`initial_seed`], optionally without variable tracking (cheaper when
/// only `B`, `L` and labels matter).
pub fn initial_seed_with(m: usize, n: usize, track_variables: bool) -> Result<QuantumSeed, Error> {
    let params = GrassParams::new(m, n)?;
    let w = n - m;
    let frozen = |node: Node| match node {
        Node::Base => true,
        Node::Grid(i, j) => i == m || j == w,
    };
    let label = |node: Node| match node {
        Node::Base => params.cyclic_interval(1),
        Node::Grid(i, j) => grid_label(params, i, j),
    };

    let mut order: Vec<Node> = Vec::new();
    for i in 1..m {
        for j in 1..w {
            order.push(Node::Grid(i, j));
        }
    }
    let n_mut = order.len();
    let mut frozen_nodes: Vec<(usize, Node)> = vec![(1, Node::Base)];
    for j in 1..=w {
        frozen_nodes.push((j + 1, Node::Grid(m, j)));
    }
    for i in 1..m {
        frozen_nodes.push((n - i + 1, Node::Grid(i, w)));
    }
    frozen_nodes.sort();
    order.extend(frozen_nodes.into_iter().map(|(_, node)| node));
    let index: HashMap<Node, usize> = order.iter().enumerate().map(|(p, &nd)| (nd, p)).collect();

    let mut arrows: Vec<(Node, Node)> = Vec::new();
    for i in 1..=m {
        for j in 1..=w {
            if j < w {
                arrows.push((Node::Grid(i, j + 1), Node::Grid(i, j)));
            }
            if i < m {
                arrows.push((Node::Grid(i + 1, j), Node::Grid(i, j)));
            }
            if i < m && j < w {
                arrows.push((Node::Grid(i, j), Node::Grid(i + 1, j + 1)));
            }
        }
    }
    arrows.push((Node::Grid(1, 1), Node::Base));

    let total = order.len();
    let mut b = IntMatrix::zeros(total, n_mut);
    for (s, t) in arrows {
        if frozen(s) && frozen(t) {
            continue;
        }
        let (si, ti) = (index[&s], index[&t]);
        if si < n_mut {
            b[(ti, si)] += 1;
        }
        if ti < n_mut {
            b[(si, ti)] -= 1;
        }
    }

    let labels: Vec<IndexSubset> = order.iter().map(|&nd| label(nd)).collect();
    let l = l_from_labels(&labels)?;
    let positions = order
        .iter()
        .zip(&labels)
        .map(|(&nd, &lab)| Position { label: Some(lab), frozen: frozen(nd) })
        .collect();
    let seed = QuantumSeed::new(Some(params), positions, ExchangeMatrix::new(b)?, l, track_variables)?;
    if seed.degrees().iter().any(|&d| d != 2) {
        return Err(Error::Degrees(seed.degrees().to_vec()));
    }
    Ok(seed)
}

/// A mutation that replaces `Jac` by `Jbd`, with `a, b, c, d` in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometricExchange {
    pub common: IndexSubset,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub old_label: IndexSubset,
    pub new_label: IndexSubset,
}

/// Recognizes a geometric exchange at `k`: column `k` of `B` has exactly four
/// unit entries, all five labels share `J` with `|J| = m - 2`, the four
/// neighbors are `Jab, Jbc, Jcd, Jad` and each sign class is a pair of
/// opposite sides, and `I_k = Jac`.
pub fn detect_geometric_exchange(
    seed: &QuantumSeed,
    k: usize,
) -> Result<Option<GeometricExchange>, SeedError> {
    if k >= seed.mutable() {
        return Err(SeedError::FrozenIndex(k));
    }
    let old = seed.label(k).ok_or(SeedError::NoLabel(k))?;
    let col = seed.b().matrix().column(k);
    let nbrs: Vec<(usize, i64)> =
        col.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)).collect();
    if nbrs.len() != 4 || nbrs.iter().any(|&(_, x)| x.abs() != 1) {
        return Ok(None);
    }
    let mut labels = Vec::with_capacity(4);
    for &(j, sign) in &nbrs {
        match seed.label(j) {
            Some(lab) => labels.push((lab, sign)),
            None => return Ok(None),
        }
    }
    let common_bits = labels.iter().fold(old.bits(), |acc, (lab, _)| acc & lab.bits());
    if common_bits.count_ones() as usize + 2 != old.len() {
        return Ok(None);
    }
    let diff = |s: &IndexSubset| s.bits() & !common_bits;
    let quad = labels.iter().fold(diff(&old), |acc, (lab, _)| acc | diff(lab));
    if quad.count_ones() != 4 || labels.iter().any(|(lab, _)| diff(lab).count_ones() != 2) {
        return Ok(None);
    }
    let p: Vec<usize> = (0..64).filter(|&i| quad >> i & 1 == 1).map(|i| i + 1).collect();
    let bit = |e: usize| 1u64 << (e - 1);
    let side = |x: usize, y: usize| bit(p[x]) | bit(p[y]);
    let sides = [side(0, 1), side(1, 2), side(2, 3), side(0, 3)];
    let got: BTreeSet<u64> = labels.iter().map(|(lab, _)| diff(lab)).collect();
    if got != sides.iter().copied().collect() {
        return Ok(None);
    }
    let plus: BTreeSet<u64> =
        labels.iter().filter(|(_, s)| *s > 0).map(|(lab, _)| diff(lab)).collect();
    let opposite_a: BTreeSet<u64> = [sides[0], sides[2]].into();
    let opposite_b: BTreeSet<u64> = [sides[1], sides[3]].into();
    if plus != opposite_a && plus != opposite_b {
        return Ok(None);
    }
    let (a, b, c, d) = if diff(&old) == side(0, 2) {
        (p[0], p[1], p[2], p[3])
    } else if diff(&old) == side(1, 3) {
        (p[1], p[2], p[3], p[0])
    } else {
        return Ok(None);
    };
    let n = old.n();
    let common = IndexSubset::from_bits(n, common_bits);
    let new_label = IndexSubset::from_bits(n, common_bits | bit(b) | bit(d));
    Ok(Some(GeometricExchange { common, a, b, c, d, old_label: old, new_label }))
}

/// The label the position would carry after mutation, when that mutation is
/// a geometric exchange.
pub fn relabel_after_exchange(seed: &QuantumSeed, k: usize) -> Result<Option<IndexSubset>, SeedError> {
    Ok(detect_geometric_exchange(seed, k)?.map(|x| x.new_label))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExploreOptions {
    pub max_seeds: usize,
    pub max_depth: usize,
    pub geometric_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeGraphSummary {
    pub seeds: usize,
    /// Distinct mutable labels seen, sorted.
    pub labels: Vec<IndexSubset>,
    pub truncated: bool,
    pub depth: usize,
}

/// Seeds reached by the breadth-first search, in discovery order, with
/// their depths.
#[derive(Debug, Clone)]
pub struct Exploration {
    pub seeds: Vec<(QuantumSeed, usize)>,
    pub truncated: bool,
}

impl Exploration {
    pub fn summary(&self) -> ExchangeGraphSummary {
        let mut labels = BTreeSet::new();
        for (s, _) in &self.seeds {
            labels.extend((0..s.mutable()).filter_map(|k| s.label(k)));
        }
        ExchangeGraphSummary {
            seeds: self.seeds.len(),
            labels: labels.into_iter().collect(),
            truncated: self.truncated,
            depth: self.seeds.iter().map(|&(_, d)| d).max().unwrap_or(0),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum SeedKey {
    Labels(Vec<IndexSubset>),
    Variables(Vec<String>),
}

/// Labels identify clusters reached by geometric exchanges. Unrestricted
/// search keys on the variables themselves, since a minor reached through a
/// non-geometric move carries no label.
fn seed_key(seed: &QuantumSeed) -> SeedKey {
    if seed.variables().is_none() {
        if let Some(labels) = seed.label_key() {
            return SeedKey::Labels(labels);
        }
    }
    let mut vars: Vec<String> = seed
        .variables()
        .map(|v| v.iter().map(|x| x.to_string()).collect())
        .unwrap_or_default();
    vars.sort();
    SeedKey::Variables(vars)
}

/// Breadth-first search from the rectangle seed. Variables are tracked only
/// when unrestricted mutations are allowed, since unlabeled seeds are keyed
/// by their variables.
pub fn explore(m: usize, n: usize, opts: ExploreOptions) -> Result<Exploration, Error> {
    let start = initial_seed_with(m, n, !opts.geometric_only)?;
    let mut seen: HashSet<SeedKey> = HashSet::from([seed_key(&start)]);
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    let mut found = vec![(start, 0usize)];
    let mut truncated = false;
    if opts.max_seeds <= 1 {
        truncated = start_has_moves(&found[0].0, opts)?;
        return Ok(Exploration { seeds: found, truncated });
    }
    while let Some((seed, depth)) = queue.pop_front() {
        for k in 0..seed.mutable() {
            let mutation = seed.mutate(k)?;
            if opts.geometric_only && mutation.exchange.is_none() {
                continue;
            }
            let key = seed_key(&mutation.seed);
            if seen.contains(&key) {
                continue;
            }
            if depth >= opts.max_depth || found.len() >= opts.max_seeds {
                truncated = true;
                continue;
            }
            seen.insert(key);
            found.push((mutation.seed.clone(), depth + 1));
            queue.push_back((mutation.seed, depth + 1));
        }
    }
    Ok(Exploration { seeds: found, truncated })
}

fn start_has_moves(seed: &QuantumSeed, opts: ExploreOptions) -> Result<bool, Error> {
    for k in 0..seed.mutable() {
        if !opts.geometric_only || seed.mutate(k)?.exchange.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn explore_exchange_graph(
    m: usize,
    n: usize,
    max_seeds: usize,
    max_depth: usize,
    geometric_only: bool,
) -> Result<ExchangeGraphSummary, Error> {
    Ok(explore(m, n, ExploreOptions { max_seeds, max_depth, geometric_only })?.summary())
}

/// Exact determinant by Gaussian elimination over `Q`.
pub fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        let prow = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot;
            for (x, y) in row.iter_mut().zip(&prow).skip(col) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// The maximal minor of an `m x n` matrix on the columns in `cols`.
pub fn classical_plucker_eval(values: &[Vec<BigRational>], cols: &IndexSubset) -> BigRational {
    let sub = values
        .iter()
        .map(|row| cols.elements().iter().map(|&c| row[c - 1].clone()).collect())
        .collect();
    determinant(sub)
}
