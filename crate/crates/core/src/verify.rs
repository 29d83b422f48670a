//! Machine checks shared by the command line and the acceptance tests. Each
//! returns a serializable report whose `violations` list is empty on success.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::combinatorics::{is_maximal, IndexSubset};
use crate::grassmannian::{classical_plucker_eval, initial_seed, initial_seed_with, l_from_labels, l_from_modules};
use crate::matrix::IntMatrix;
use crate::qmatrix::QMatrixAlgebra;
use crate::seed::QuantumSeed;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1-based mutation path leading to the failure.
    pub path: Vec<usize>,
    pub detail: String,
}

fn violation(path: &[usize], detail: impl Into<String>) -> Violation {
    Violation { path: path.iter().map(|k| k + 1).collect(), detail: detail.into() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    pub m: usize,
    pub n: usize,
    pub degrees: Vec<i64>,
    pub violations: Vec<Violation>,
}

/// `BᵗL = [2·Id | 0]` on the rectangle seed, compared entrywise.
pub fn initial_compatibility(m: usize, n: usize) -> Result<CompatReport, Error> {
    let seed = initial_seed_with(m, n, false)?;
    let prod = seed.b().matrix().transpose().mul(seed.l().matrix());
    let mut want = IntMatrix::zeros(seed.mutable(), seed.total());
    for k in 0..seed.mutable() {
        want[(k, k)] = 2;
    }
    let mut violations = Vec::new();
    if prod != want {
        violations.push(violation(&[], format!("BᵗL = {prod:?}")));
    }
    Ok(CompatReport { m, n, degrees: seed.degrees().to_vec(), violations })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathReport {
    pub paths: usize,
    pub steps: usize,
    pub violations: Vec<Violation>,
}

/// Random paths through geometric exchanges. After each step the engine's
/// `L`, the matrix of `c(I, J)` on the new labels and the matrix of module
/// invariants must coincide, and the labels must stay a maximal weakly
/// separated collection.
pub fn mutation_consistency(
    m: usize,
    n: usize,
    paths: usize,
    depth: usize,
    rng_seed: u64,
) -> Result<PathReport, Error> {
    let start = initial_seed_with(m, n, false)?;
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let mut report = PathReport { paths, steps: 0, violations: Vec::new() };
    for _ in 0..paths {
        let mut seed = start.clone();
        let mut path = Vec::new();
        for _ in 0..depth {
            let mut moves = Vec::new();
            for k in 0..seed.mutable() {
                let mu = seed.mutate(k)?;
                if mu.exchange.is_some() {
                    moves.push((k, mu.seed));
                }
            }
            let Some((k, next)) = moves.choose(&mut rng).cloned() else {
                break;
            };
            path.push(k);
            report.steps += 1;
            let labels = next.labels().expect("geometric exchanges keep labels");
            let from_c = l_from_labels(&labels)?;
            let from_modules = l_from_modules(&labels)?;
            if next.l() != &from_c {
                report.violations.push(violation(&path, "engine L differs from c(I,J) matrix"));
            }
            if from_c.matrix() != &from_modules {
                report.violations.push(violation(&path, "c(I,J) matrix differs from module λ matrix"));
            }
            if next.degrees().iter().any(|&d| d != 2) {
                report.violations.push(violation(&path, format!("degrees {:?}", next.degrees())));
            }
            if !is_maximal(&labels.iter().copied().collect::<BTreeSet<_>>())? {
                report.violations.push(violation(&path, "labels not a maximal weakly separated collection"));
            }
            seed = next;
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PluckerReport {
    /// Geometric exchanges examined (seed, position).
    pub exchanges: usize,
    /// Distinct short Plücker relations verified by straightening.
    pub relations: usize,
    pub evaluations: usize,
    pub violations: Vec<Violation>,
}

/// A random integer `m x n` matrix whose minors at `labels` are all nonzero.
pub fn random_generic_matrix(
    m: usize,
    n: usize,
    labels: &[IndexSubset],
    rng: &mut impl Rng,
) -> Vec<Vec<BigRational>> {
    loop {
        let mat: Vec<Vec<BigRational>> = (0..m)
            .map(|_| (0..n).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-9..=9)))).collect())
            .collect();
        if labels.iter().all(|l| !classical_plucker_eval(&mat, l).is_zero()) {
            return mat;
        }
    }
}

/// Every geometric exchange reachable within `depth` mutations (of any kind)
/// from the rectangle seed. Each one must satisfy its short quantum Plücker
/// relation by straightening, and the engine's new variable at `q = 1`,
/// evaluated at the minors of `samples` random integer matrices, must equal
/// the minor of the new label.
pub fn plucker_exchanges(
    m: usize,
    n: usize,
    depth: usize,
    samples: usize,
    rng_seed: u64,
) -> Result<PluckerReport, Error> {
    let start = initial_seed(m, n)?;
    let initial_labels = start.labels().expect("rectangle seed is labeled");
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let matrices: Vec<_> =
        (0..samples).map(|_| random_generic_matrix(m, n, &initial_labels, &mut rng)).collect();
    let values: Vec<Vec<BigRational>> = matrices
        .iter()
        .map(|mat| initial_labels.iter().map(|l| classical_plucker_eval(mat, l)).collect())
        .collect();
    let alg = QMatrixAlgebra::new(m, n);
    let mut checked: HashMap<(IndexSubset, [usize; 4]), bool> = HashMap::new();
    let mut report = PluckerReport { exchanges: 0, relations: 0, evaluations: 0, violations: Vec::new() };

    let mut seen = HashSet::from([start.fingerprint()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((seed, d)) = queue.pop_front() {
        if d >= depth {
            continue;
        }
        for k in 0..seed.mutable() {
            let mu = seed.mutate(k)?;
            let path: Vec<usize> = mu.seed.history().to_vec();
            if let Some(x) = &mu.exchange {
                report.exchanges += 1;
                let key = (x.common, [x.a, x.b, x.c, x.d]);
                let ok = match checked.get(&key) {
                    Some(&ok) => ok,
                    None => {
                        let ok = alg.verify_short_plucker(&x.common, key.1)?;
                        checked.insert(key, ok);
                        report.relations += 1;
                        ok
                    }
                };
                if !ok {
                    report.violations.push(violation(&path, format!("short Plücker fails for {} {:?}", x.common, key.1)));
                }
                let var = mu.seed.variable(k).expect("tracked");
                for (mat, vals) in matrices.iter().zip(&values) {
                    report.evaluations += 1;
                    let got = var.evaluate_classical(vals)?;
                    let want = classical_plucker_eval(mat, &x.new_label);
                    if got != want {
                        report.violations.push(violation(
                            &path,
                            format!("X* at q=1 gives {got}, minor {} gives {want}", x.new_label),
                        ));
                    }
                }
            }
            if seen.insert(mu.seed.fingerprint()) {
                queue.push_back((mu.seed, d + 1));
            }
        }
    }
    Ok(report)
}

/// Random unrestricted paths with variable tracking. Every stored variable
/// must have integer Laurent coefficients, and mutating again at the same
/// position must return the previous seed exactly.
pub fn laurent_involution(
    m: usize,
    n: usize,
    paths: usize,
    depth: usize,
    rng_seed: u64,
) -> Result<PathReport, Error> {
    let start = initial_seed(m, n)?;
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let mut report = PathReport { paths, steps: 0, violations: Vec::new() };
    if start.mutable() == 0 {
        return Ok(report);
    }
    for _ in 0..paths {
        let mut seed = start.clone();
        let mut path = Vec::new();
        for _ in 0..depth {
            let k = rng.gen_range(0..seed.mutable());
            path.push(k);
            report.steps += 1;
            let next = match seed.mutate(k) {
                Ok(mu) => mu.seed,
                Err(e) => {
                    report.violations.push(violation(&path, e.to_string()));
                    break;
                }
            };
            if let Some(bad) = next.variables().into_iter().flatten().position(|v| !v.is_laurent()) {
                report.violations.push(violation(&path, format!("variable {} not Laurent", bad + 1)));
            }
            match next.mutate(k) {
                Ok(back) if back.seed == seed => {}
                Ok(_) => report.violations.push(violation(&path, "re-mutation does not restore the seed")),
                Err(e) => report.violations.push(violation(&path, e.to_string())),
            }
            seed = next;
        }
    }
    Ok(report)
}

/// Variables of one seed whose label also occurs in another seed must agree.
/// Returns the labels compared and any disagreement.
pub fn same_label_same_variable(a: &QuantumSeed, b: &QuantumSeed) -> (usize, Vec<IndexSubset>) {
    let mut compared = 0;
    let mut bad = Vec::new();
    for i in 0..a.total() {
        let Some(label) = a.label(i) else { continue };
        for j in 0..b.total() {
            if b.label(j) == Some(label) {
                compared += 1;
                if a.variable(i) != b.variable(j) {
                    bad.push(label);
                }
            }
        }
    }
    (compared, bad)
}
