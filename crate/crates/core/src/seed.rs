//! Compatible pairs `(B, L)`, their mutation, and quantum seeds whose cluster
//! variables are tracked as elements of the initial quantum torus.
//!
//! Positions are 0-based in this API; mutable positions come first.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{GrassParams, IndexSubset};
use crate::grassmannian::{detect_geometric_exchange, GeometricExchange};
use crate::matrix::IntMatrix;
use crate::torus::{gamma, mul_monomials, QCoefficient, TorusElement, TorusError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeedError {
    #[error("B and L are not compatible: (BᵗL)[{k}][{l}] = {value}")]
    NotCompatible { k: usize, l: usize, value: i64 },
    #[error("position {0} is frozen or out of range")]
    FrozenIndex(usize),
    #[error("position {0} carries no label")]
    NoLabel(usize),
    #[error("exchange matrix must be N x M with M <= N and skew-symmetric principal part")]
    BadExchangeMatrix,
    #[error("L must be skew-symmetric of size {0}")]
    BadLambdaMatrix(usize),
    #[error("quantum Laurent phenomenon violated at position {position}: {detail}")]
    LaurentViolation { position: usize, detail: String },
    #[error("mutation changed the compatibility degrees from {before:?} to {after:?}")]
    CompatibilityLost { before: Vec<i64>, after: Vec<i64> },
    #[error("seed does not track cluster variables")]
    Untracked,
}

/// `N_total x N_mut` exchange matrix whose principal part is skew-symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct ExchangeMatrix(IntMatrix);

impl ExchangeMatrix {
    pub fn new(m: IntMatrix) -> Result<Self, SeedError> {
        if m.cols() > m.rows() || !m.principal(m.cols()).is_skew_symmetric() {
            return Err(SeedError::BadExchangeMatrix);
        }
        Ok(ExchangeMatrix(m))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.rows()
    }

    pub fn mutable(&self) -> usize {
        self.0.cols()
    }

    pub fn get(&self, j: usize, k: usize) -> i64 {
        self.0[(j, k)]
    }
}

impl TryFrom<IntMatrix> for ExchangeMatrix {
    type Error = SeedError;
    fn try_from(m: IntMatrix) -> Result<Self, SeedError> {
        ExchangeMatrix::new(m)
    }
}

impl From<ExchangeMatrix> for IntMatrix {
    fn from(b: ExchangeMatrix) -> IntMatrix {
        b.0
    }
}

/// Skew-symmetric `N_total x N_total` quasi-commutation matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct LambdaMatrix(IntMatrix);

impl LambdaMatrix {
    pub fn new(m: IntMatrix) -> Result<Self, SeedError> {
        if !m.is_skew_symmetric() {
            return Err(SeedError::BadLambdaMatrix(m.rows()));
        }
        Ok(LambdaMatrix(m))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[(i, j)]
    }
}

impl TryFrom<IntMatrix> for LambdaMatrix {
    type Error = SeedError;
    fn try_from(m: IntMatrix) -> Result<Self, SeedError> {
        LambdaMatrix::new(m)
    }
}

impl From<LambdaMatrix> for IntMatrix {
    fn from(l: LambdaMatrix) -> IntMatrix {
        l.0
    }
}

/// Returns `d` with `Σ_j b_jk λ_jl = δ_kl d_k` and every `d_k > 0`.
pub fn check_compatible(b: &ExchangeMatrix, l: &LambdaMatrix) -> Result<Vec<i64>, SeedError> {
    if b.total() != l.size() {
        return Err(SeedError::BadLambdaMatrix(b.total()));
    }
    let prod = b.matrix().transpose().mul(l.matrix());
    let mut d = Vec::with_capacity(b.mutable());
    for k in 0..b.mutable() {
        for col in 0..l.size() {
            let v = prod[(k, col)];
            let ok = if col == k { v > 0 } else { v == 0 };
            if !ok {
                return Err(SeedError::NotCompatible { k, l: col, value: v });
            }
        }
        d.push(prod[(k, k)]);
    }
    Ok(d)
}

fn check_mutable(b: &ExchangeMatrix, k: usize) -> Result<(), SeedError> {
    if k >= b.mutable() {
        return Err(SeedError::FrozenIndex(k));
    }
    Ok(())
}

/// `E`: identity except column `k`, which is `max(0, b_ik)` off the diagonal
/// and `-1` on it.
pub fn e_matrix(b: &ExchangeMatrix, k: usize) -> Result<IntMatrix, SeedError> {
    check_mutable(b, k)?;
    let mut e = IntMatrix::identity(b.total());
    for i in 0..b.total() {
        e[(i, k)] = if i == k { -1 } else { b.get(i, k).max(0) };
    }
    Ok(e)
}

/// `F`: identity except row `k`, which is `max(0, -b_kj)` off the diagonal
/// and `-1` on it.
pub fn f_matrix(b: &ExchangeMatrix, k: usize) -> Result<IntMatrix, SeedError> {
    check_mutable(b, k)?;
    let mut f = IntMatrix::identity(b.mutable());
    for j in 0..b.mutable() {
        f[(k, j)] = if j == k { -1 } else { (-b.get(k, j)).max(0) };
    }
    Ok(f)
}

/// `(EBF, EᵗLE)`.
pub fn mutate_bl(
    b: &ExchangeMatrix,
    l: &LambdaMatrix,
    k: usize,
) -> Result<(ExchangeMatrix, LambdaMatrix), SeedError> {
    let e = e_matrix(b, k)?;
    let f = f_matrix(b, k)?;
    let et = e.transpose();
    let b2 = ExchangeMatrix::new(e.mul(b.matrix()).mul(&f))?;
    let l2 = LambdaMatrix::new(et.mul(l.matrix()).mul(&e))?;
    Ok((b2, l2))
}

/// The two exponent vectors `a'` (positive part of column `k`) and `a''`
/// (negative part), both `-1` at `k`.
pub fn exchange_exponents(b: &ExchangeMatrix, k: usize) -> Result<(Vec<i64>, Vec<i64>), SeedError> {
    check_mutable(b, k)?;
    let col = b.matrix().column(k);
    let pos = col
        .iter()
        .enumerate()
        .map(|(j, &x)| if j == k { -1 } else { x.max(0) })
        .collect();
    let neg = col
        .iter()
        .enumerate()
        .map(|(j, &x)| if j == k { -1 } else { (-x).max(0) })
        .collect();
    Ok((pos, neg))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Position {
    pub label: Option<IndexSubset>,
    pub frozen: bool,
}

/// Result of mutating a seed at one position.
#[derive(Debug, Clone)]
pub struct Mutation {
    pub seed: QuantumSeed,
    /// Present when the mutation was a geometric exchange `Jac -> Jbd`.
    pub exchange: Option<GeometricExchange>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumSeed {
    params: Option<GrassParams>,
    positions: Vec<Position>,
    b: ExchangeMatrix,
    l: LambdaMatrix,
    d: Vec<i64>,
    vars: Option<Vec<Arc<TorusElement>>>,
    history: Vec<usize>,
    /// Label held at the mutated position before each step of `history`.
    replaced: Vec<Option<IndexSubset>>,
}

impl QuantumSeed {
    /// Builds an initial seed. When `track_variables` is set, the cluster
    /// variables start as the generators of the torus of `l`.
    pub fn new(
        params: Option<GrassParams>,
        positions: Vec<Position>,
        b: ExchangeMatrix,
        l: LambdaMatrix,
        track_variables: bool,
    ) -> Result<Self, SeedError> {
        if positions.len() != b.total()
            || positions.iter().enumerate().any(|(i, p)| p.frozen != (i >= b.mutable()))
        {
            return Err(SeedError::BadExchangeMatrix);
        }
        let d = check_compatible(&b, &l)?;
        let vars = track_variables.then(|| {
            let ambient = Arc::new(l.matrix().clone());
            (0..b.total())
                .map(|i| Arc::new(TorusElement::generator(ambient.clone(), i)))
                .collect()
        });
        Ok(QuantumSeed { params, positions, b, l, d, vars, history: Vec::new(), replaced: Vec::new() })
    }

    /// An unlabeled seed from a compatible pair.
    pub fn from_matrices(b: ExchangeMatrix, l: LambdaMatrix, track_variables: bool) -> Result<Self, SeedError> {
        let positions = (0..b.total())
            .map(|i| Position { label: None, frozen: i >= b.mutable() })
            .collect();
        Self::new(None, positions, b, l, track_variables)
    }

    pub fn params(&self) -> Option<GrassParams> {
        self.params
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn label(&self, i: usize) -> Option<IndexSubset> {
        self.positions.get(i).and_then(|p| p.label)
    }

    /// Labels in position order, `None` if any position is unlabeled.
    pub fn labels(&self) -> Option<Vec<IndexSubset>> {
        self.positions.iter().map(|p| p.label).collect()
    }

    pub fn b(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn l(&self) -> &LambdaMatrix {
        &self.l
    }

    /// Compatibility degrees `d_k`.
    pub fn degrees(&self) -> &[i64] {
        &self.d
    }

    pub fn total(&self) -> usize {
        self.b.total()
    }

    pub fn mutable(&self) -> usize {
        self.b.mutable()
    }

    /// Reduced mutation path from the initial seed (immediate repeats cancel).
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn is_tracking(&self) -> bool {
        self.vars.is_some()
    }

    /// Initial-torus expansion of the variable at `i`.
    pub fn variable(&self, i: usize) -> Option<&Arc<TorusElement>> {
        self.vars.as_ref().and_then(|v| v.get(i))
    }

    pub fn variables(&self) -> Option<&[Arc<TorusElement>]> {
        self.vars.as_deref()
    }

    /// Mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Mutation, SeedError> {
        check_mutable(&self.b, k)?;
        let exchange = match self.positions[k].label {
            Some(_) => detect_geometric_exchange(self, k)?,
            None => None,
        };
        let (b2, l2) = mutate_bl(&self.b, &self.l, k)?;
        let d2 = check_compatible(&b2, &l2)?;
        if d2 != self.d {
            return Err(SeedError::CompatibilityLost { before: self.d.clone(), after: d2 });
        }
        let vars = match &self.vars {
            Some(vars) => {
                let fresh = self.exchanged_variable(vars, k)?;
                let mut next = vars.clone();
                next[k] = Arc::new(fresh);
                Some(next)
            }
            None => None,
        };
        let mut positions = self.positions.clone();
        let mut history = self.history.clone();
        let mut replaced = self.replaced.clone();
        if history.last() == Some(&k) {
            // undoing the previous step brings back the variable it replaced
            history.pop();
            positions[k].label = replaced.pop().flatten();
        } else {
            history.push(k);
            replaced.push(positions[k].label);
            positions[k].label = exchange.as_ref().map(|x| x.new_label);
        }
        let seed =
            QuantumSeed { params: self.params, positions, b: b2, l: l2, d: d2, vars, history, replaced };
        Ok(Mutation { seed, exchange })
    }

    /// `X_k^* = X^{a'} + X^{a''}` rewritten as `(X^{a'} X_k + X^{a''} X_k) X_k^{-1}`
    /// in the initial torus. Each `X^a X_k` is a based monomial in the
    /// current cluster with nonnegative exponents, which expands as an
    /// ordered product of stored variables.
    fn exchanged_variable(&self, vars: &[Arc<TorusElement>], k: usize) -> Result<TorusElement, SeedError> {
        let (a1, a2) = exchange_exponents(&self.b, k)?;
        let mut ek = vec![0; self.total()];
        ek[k] = 1;
        let ambient = vars[0].ambient().clone();
        let mut numerator = TorusElement::zero(ambient.clone());
        for a in [&a1, &a2] {
            let (shift, c) = mul_monomials(a, &ek, self.l.matrix()).map_err(torus_err(k))?;
            let g = gamma(&c, self.l.matrix()).map_err(torus_err(k))?;
            let mut prod = TorusElement::one(ambient.clone());
            for (i, &e) in c.iter().enumerate() {
                debug_assert!(e >= 0);
                for _ in 0..e {
                    prod = prod.mul(&vars[i]).map_err(torus_err(k))?;
                }
            }
            let term = prod.scale(&QCoefficient::u_power(shift.u_exponent() + g.u_exponent()));
            numerator = numerator.add(&term).map_err(torus_err(k))?;
        }
        let fresh = numerator.right_divide(&vars[k]).map_err(torus_err(k))?;
        if !fresh.is_laurent() {
            return Err(SeedError::LaurentViolation {
                position: k,
                detail: format!("non-Laurent coefficient in {fresh}"),
            });
        }
        Ok(fresh)
    }

    /// Checks `P_i P_j = q^{λ_ij} P_j P_i` for every pair of stored variables.
    /// Returns the first failing pair.
    pub fn check_variable_quasi_commutation(&self) -> Result<Option<(usize, usize)>, SeedError> {
        let vars = self.vars.as_ref().ok_or(SeedError::Untracked)?;
        for i in 0..vars.len() {
            for j in i + 1..vars.len() {
                let ij = vars[i].mul(&vars[j]).map_err(torus_err(i))?;
                let ji = vars[j].mul(&vars[i]).map_err(torus_err(i))?;
                if ij != ji.scale(&QCoefficient::u_power(2 * self.l.get(i, j))) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    /// Sorted labels, or `None` when some position is unlabeled.
    pub fn label_key(&self) -> Option<Vec<IndexSubset>> {
        let mut v = self.labels()?;
        v.sort();
        Some(v)
    }

    /// Path-independent identity: labels, `B`, `L` and variable expansions.
    pub fn fingerprint(&self) -> String {
        let mut json = self.to_json();
        json.history.clear();
        let mut out = serde_json::to_string(&json).expect("plain data");
        for v in self.vars.iter().flatten() {
            out.push('|');
            out.push_str(&v.to_string());
        }
        out
    }

    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            m: self.params.map(|p| p.m),
            n: self.params.map(|p| p.n),
            positions: self
                .positions
                .iter()
                .map(|p| PositionJson { label: p.label.map(|s| s.elements()), frozen: p.frozen })
                .collect(),
            b: self.b.matrix().to_rows(),
            l: self.l.matrix().to_rows(),
            history: self.history.iter().map(|k| k + 1).collect(),
        }
    }
}

fn torus_err(position: usize) -> impl Fn(TorusError) -> SeedError {
    move |e| SeedError::LaurentViolation { position, detail: e.to_string() }
}

/// Wire form of a seed; positions and history are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub positions: Vec<PositionJson>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(rename = "L")]
    pub l: Vec<Vec<i64>>,
    pub history: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionJson {
    pub label: Option<Vec<usize>>,
    pub frozen: bool,
}
