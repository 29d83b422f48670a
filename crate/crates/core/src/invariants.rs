//! The `κ` and `λ` invariants of rank-one modules `M_I`.
//!
//! `M_I` has a copy of `Z = k[[t]]` at every vertex of the `n`-cycle; across
//! edge `a` (vertex `a-1` to `a`) the arrow `x_a` acts by `1` if `a ∈ I` and by
//! `t` otherwise, and `y_a` the other way round. `Hom(M_I, M_J)` is generated
//! by a single monomial `t^α`, and `κ(M_I, M_J)` is `α` at vertex `0`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::IndexSubset;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("subsets {0} and {1} differ in size or ambient n")]
    SizeMismatch(IndexSubset, IndexSubset),
    #[error("truncation order {d} must exceed n = {n}")]
    TruncationTooSmall { d: usize, n: usize },
}

/// Exponents of the generator `t^α` of `Hom(M_I, M_J)`, indexed by cycle
/// vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ExponentVector(pub Vec<usize>);

impl ExponentVector {
    pub fn at(&self, vertex: usize) -> usize {
        self.0[vertex]
    }
}

fn check_sizes(i: &IndexSubset, j: &IndexSubset) -> Result<(), InvariantError> {
    if i.len() != j.len() || i.n() != j.n() {
        return Err(InvariantError::SizeMismatch(*i, *j));
    }
    Ok(())
}

/// Walk `0 -> 1 -> ... -> n-1 -> 0`; crossing edge `a` the value goes up by
/// one for `a ∈ I \ J`, down by one for `a ∈ J \ I`. Shifted so the minimum
/// is zero.
pub fn min_exponent_vector(
    i: &IndexSubset,
    j: &IndexSubset,
) -> Result<ExponentVector, InvariantError> {
    check_sizes(i, j)?;
    let n = i.n();
    let mut raw = Vec::with_capacity(n);
    let mut cur = 0i64;
    raw.push(cur);
    for a in 1..n {
        cur += step(i, j, a);
        raw.push(cur);
    }
    debug_assert_eq!(cur + step(i, j, n), 0, "walk must close up");
    let min = *raw.iter().min().unwrap();
    Ok(ExponentVector(raw.into_iter().map(|v| (v - min) as usize).collect()))
}

fn step(i: &IndexSubset, j: &IndexSubset, a: usize) -> i64 {
    match (i.contains(a), j.contains(a)) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// `κ(M_I, M_J)`, with the distinguished vertex fixed at `0`.
pub fn kappa(i: &IndexSubset, j: &IndexSubset) -> Result<usize, InvariantError> {
    Ok(min_exponent_vector(i, j)?.at(0))
}

/// `λ(M_I, M_J) = κ(M_J, M_I) - κ(M_I, M_J)`.
pub fn lambda_pair(i: &IndexSubset, j: &IndexSubset) -> Result<i64, InvariantError> {
    Ok(kappa(j, i)? as i64 - kappa(i, j)? as i64)
}

/// Independent computation of `κ` by linear algebra over `Q[t]/(t^D)`.
///
/// A homomorphism `M_I -> M_J` is multiplication by some `g_v` at every
/// vertex, subject to commuting with every `x_a` and `y_a`. The result is the
/// codimension (in the `D`-dimensional space of endomorphisms of the vertex-0
/// component) of the set of vertex-0 components of such homomorphisms.
pub fn kappa_truncated_oracle(
    i: &IndexSubset,
    j: &IndexSubset,
    d: usize,
) -> Result<usize, InvariantError> {
    check_sizes(i, j)?;
    let n = i.n();
    if d <= n {
        return Err(InvariantError::TruncationTooSmall { d, n });
    }
    // unknown (vertex v, coefficient of t^e) lives in column v*d + e
    let var = |v: usize, e: usize| v * d + e;
    let ncols = n * d;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for a in 1..=n {
        let (tail, head) = (a - 1, a % n);
        let x_pow = |s: &IndexSubset| usize::from(!s.contains(a));
        let y_pow = |s: &IndexSubset| usize::from(s.contains(a));
        // x_a: tail -> head
        push_square(&mut rows, ncols, d, (head, x_pow(j)), (tail, x_pow(i)), var);
        // y_a: head -> tail
        push_square(&mut rows, ncols, d, (tail, y_pow(j)), (head, y_pow(i)), var);
    }
    let full = rank(rows.clone());
    let without_v0: Vec<Vec<BigRational>> =
        rows.into_iter().map(|r| r[d..].to_vec()).collect();
    let reduced = rank(without_v0);
    let nullity_full = ncols - full;
    let nullity_reduced = (ncols - d) - reduced;
    let image_dim = nullity_full - nullity_reduced;
    Ok(d - image_dim)
}

/// Adds the scalar equations of `f_target ∘ act_M = act_N ∘ f_source` for one
/// arrow `source -> target`: `g_target * t^{p_M} = t^{p_N} * g_source` where
/// `p_M`, `p_N` are the exponents of the arrow in the domain and codomain.
fn push_square(
    rows: &mut Vec<Vec<BigRational>>,
    ncols: usize,
    d: usize,
    (target, codomain_pow): (usize, usize),
    (source, domain_pow): (usize, usize),
    var: impl Fn(usize, usize) -> usize,
) {
    for e in 0..d {
        let mut row = vec![BigRational::zero(); ncols];
        if e >= domain_pow {
            row[var(target, e - domain_pow)] += BigRational::one();
        }
        if e >= codomain_pow {
            row[var(source, e - codomain_pow)] -= BigRational::one();
        }
        rows.push(row);
    }
}

/// Rank over `Q` by Gaussian elimination.
pub(crate) fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        let prow = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot;
            for (x, y) in row.iter_mut().zip(&prow).skip(col) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[usize]) -> IndexSubset {
        IndexSubset::new(n, e).unwrap()
    }

    #[test]
    fn exponent_vectors() {
        let a = s(4, &[1, 2]);
        let b = s(4, &[3, 4]);
        assert_eq!(min_exponent_vector(&a, &b).unwrap().0, vec![0, 1, 2, 1]);
        assert_eq!(min_exponent_vector(&b, &a).unwrap().0, vec![2, 1, 0, 1]);
        assert_eq!(min_exponent_vector(&a, &a).unwrap().0, vec![0; 4]);
    }

    #[test]
    fn kappa_and_lambda_examples() {
        let a = s(4, &[1, 2]);
        let b = s(4, &[3, 4]);
        assert_eq!(kappa(&a, &b).unwrap(), 0);
        assert_eq!(kappa(&b, &a).unwrap(), 2);
        assert_eq!(kappa(&s(4, &[2, 4]), &s(4, &[1, 3])).unwrap(), 1);
        assert_eq!(lambda_pair(&a, &b).unwrap(), 2);
        assert_eq!(lambda_pair(&a, &a).unwrap(), 0);
        assert_eq!(lambda_pair(&s(4, &[1, 3]), &s(4, &[2, 4])).unwrap(), 1);
    }

    #[test]
    fn size_mismatch() {
        assert!(matches!(
            kappa(&s(4, &[1]), &s(4, &[1, 2])),
            Err(InvariantError::SizeMismatch(..))
        ));
        assert!(matches!(
            lambda_pair(&s(4, &[1, 2]), &s(5, &[1, 2])),
            Err(InvariantError::SizeMismatch(..))
        ));
    }

    #[test]
    fn truncated_oracle_examples() {
        let a = s(4, &[1, 2]);
        let b = s(4, &[3, 4]);
        assert_eq!(kappa_truncated_oracle(&a, &b, 8).unwrap(), 0);
        assert_eq!(kappa_truncated_oracle(&b, &a, 8).unwrap(), 2);
        assert_eq!(kappa_truncated_oracle(&a, &a, 8).unwrap(), 0);
        assert_eq!(
            kappa_truncated_oracle(&a, &b, 4),
            Err(InvariantError::TruncationTooSmall { d: 4, n: 4 })
        );
    }
}
