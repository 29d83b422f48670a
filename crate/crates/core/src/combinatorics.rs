//! Subsets of `{1..n}`, weak separation, the exponent `c(I, J)`, and the
//! partition correspondence used for `MaxDiag`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest ambient size supported by the bitmask representation.
pub const MAX_N: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatoricsError {
    #[error("invalid parameters m={m}, n={n} (need 1 <= m < n <= {MAX_N})")]
    InvalidParams { m: usize, n: usize },
    #[error("element {elem} outside 1..={n}")]
    OutOfRange { elem: usize, n: usize },
    #[error("elements must be strictly increasing: {0:?}")]
    NotSorted(Vec<usize>),
    #[error("{0} and {1} are crossing")]
    CrossingPair(IndexSubset, IndexSubset),
    #[error("partition {parts:?} does not fit in the {m}x{width} box")]
    BoxOverflow { parts: Vec<usize>, m: usize, width: usize },
    #[error("collection mixes subsets of different size or ambient n")]
    MixedParams,
}

/// `1 <= m < n`: minors are `m x m`, indices run over `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrassParams {
    pub m: usize,
    pub n: usize,
}

impl GrassParams {
    pub fn new(m: usize, n: usize) -> Result<Self, CombinatoricsError> {
        if m == 0 || m >= n || n > MAX_N {
            return Err(CombinatoricsError::InvalidParams { m, n });
        }
        Ok(GrassParams { m, n })
    }

    /// Size of a maximal weakly separated collection, `m(n-m)+1`.
    pub fn cluster_size(&self) -> usize {
        self.m * (self.n - self.m) + 1
    }

    /// All `m`-subsets in lexicographic order.
    pub fn subsets(&self) -> Vec<IndexSubset> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.m);
        fn rec(start: usize, p: &GrassParams, cur: &mut Vec<usize>, out: &mut Vec<IndexSubset>) {
            if cur.len() == p.m {
                out.push(IndexSubset::new(p.n, cur).expect("valid by construction"));
                return;
            }
            for e in start..=p.n {
                cur.push(e);
                rec(e + 1, p, cur, out);
                cur.pop();
            }
        }
        rec(1, self, &mut cur, &mut out);
        out
    }

    /// The cyclic interval `{s, s+1, ..., s+m-1}` (mod `n`, 1-based).
    pub fn cyclic_interval(&self, start: usize) -> IndexSubset {
        let elems: Vec<usize> = (0..self.m).map(|i| (start - 1 + i) % self.n + 1).collect();
        IndexSubset::from_unsorted(self.n, &elems).expect("cyclic interval is valid")
    }
}

/// Sorted subset of `{1..n}` stored as a bitmask (bit `i-1` for element `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSubset {
    n: u8,
    bits: u64,
}

impl IndexSubset {
    /// From a strictly increasing list of 1-based elements.
    pub fn new(n: usize, elems: &[usize]) -> Result<Self, CombinatoricsError> {
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CombinatoricsError::NotSorted(elems.to_vec()));
        }
        Self::from_unsorted(n, elems)
    }

    pub fn from_unsorted(n: usize, elems: &[usize]) -> Result<Self, CombinatoricsError> {
        if n == 0 || n > MAX_N {
            return Err(CombinatoricsError::InvalidParams { m: elems.len(), n });
        }
        let mut bits = 0u64;
        for &e in elems {
            if e == 0 || e > n {
                return Err(CombinatoricsError::OutOfRange { elem: e, n });
            }
            if bits & (1 << (e - 1)) != 0 {
                return Err(CombinatoricsError::NotSorted(elems.to_vec()));
            }
            bits |= 1 << (e - 1);
        }
        Ok(IndexSubset { n: n as u8, bits })
    }

    pub(crate) fn from_bits(n: usize, bits: u64) -> Self {
        IndexSubset { n: n as u8, bits }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, e: usize) -> bool {
        e >= 1 && e <= self.n() && self.bits & (1 << (e - 1)) != 0
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&e| self.contains(e)).collect()
    }

    /// `self \ other` as sorted elements.
    pub fn minus(&self, other: &IndexSubset) -> Vec<usize> {
        IndexSubset::from_bits(self.n(), self.bits & !other.bits).elements()
    }

    /// Adds `shift` to every element modulo `n` (elements stay in `1..=n`).
    pub fn rotate(&self, shift: usize) -> IndexSubset {
        let elems: Vec<usize> = self
            .elements()
            .into_iter()
            .map(|e| (e - 1 + shift) % self.n() + 1)
            .collect();
        IndexSubset::from_unsorted(self.n(), &elems).unwrap()
    }

    /// Whether this is a cyclic interval of `{1..n}`.
    pub fn is_cyclic_interval(&self) -> bool {
        let n = self.n();
        let m = self.len();
        if m == 0 || m == n {
            return true;
        }
        (1..=n).any(|s| {
            (0..m).all(|i| self.contains((s - 1 + i) % n + 1))
        })
    }
}

impl Ord for IndexSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.elements().cmp(&other.elements()))
    }
}

impl PartialOrd for IndexSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Serialized as the sorted element list; `n` is not carried.
impl Serialize for IndexSubset {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.elements().serialize(ser)
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Split of a difference set around the other difference set, e.g.
/// `J \ I = before ∪ after` with `before < I \ J < after`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Split {
    pub before: Vec<usize>,
    pub after: Vec<usize>,
}

/// Outcome of the weak-separation test for a pair `(I, J)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoncrossingClassification {
    pub crossing: bool,
    /// `J \ I = J' ∪ J''` with `J' < I \ J < J''`.
    pub case_i: Option<Split>,
    /// `I \ J = I' ∪ I''` with `I' < J \ I < I''`.
    pub case_ii: Option<Split>,
    pub c: Option<i64>,
}

/// Splits `outer` around the span of `inner`; `None` if some element of
/// `outer` lies strictly inside that span.
fn split_around(outer: &[usize], inner: &[usize]) -> Option<Split> {
    let (lo, hi) = match (inner.first(), inner.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Some(Split { before: Vec::new(), after: outer.to_vec() }),
    };
    if outer.iter().any(|&x| lo < x && x < hi) {
        return None;
    }
    let (before, after) = outer.iter().partition(|&&x| x < lo);
    Some(Split { before, after })
}

pub fn classify_noncrossing(i: &IndexSubset, j: &IndexSubset) -> NoncrossingClassification {
    let i_minus_j = i.minus(j);
    let j_minus_i = j.minus(i);
    if i_minus_j.is_empty() && j_minus_i.is_empty() {
        let empty = Split { before: Vec::new(), after: Vec::new() };
        return NoncrossingClassification {
            crossing: false,
            case_i: Some(empty.clone()),
            case_ii: Some(empty),
            c: Some(0),
        };
    }
    let case_i = split_around(&j_minus_i, &i_minus_j);
    let case_ii = split_around(&i_minus_j, &j_minus_i);
    let c = match (&case_i, &case_ii) {
        (Some(s), _) => Some(s.after.len() as i64 - s.before.len() as i64),
        (None, Some(s)) => Some(s.before.len() as i64 - s.after.len() as i64),
        (None, None) => None,
    };
    NoncrossingClassification { crossing: c.is_none(), case_i, case_ii, c }
}

pub fn is_noncrossing(i: &IndexSubset, j: &IndexSubset) -> bool {
    !classify_noncrossing(i, j).crossing
}

/// Exponent `c(I, J)` in the quasi-commutation rule of non-crossing minors.
pub fn c_exponent(i: &IndexSubset, j: &IndexSubset) -> Result<i64, CombinatoricsError> {
    classify_noncrossing(i, j)
        .c
        .ok_or(CombinatoricsError::CrossingPair(*i, *j))
}

/// Weakly decreasing partition inside the `m x (n-m)` box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Trailing zero parts are dropped; `parts` must be weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Option<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Some(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `r` (1-based), zero past the end.
    pub fn part(&self, r: usize) -> usize {
        self.parts.get(r - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    fn contains_box(&self, row: usize, col: usize) -> bool {
        col <= self.part(row)
    }
}

/// `λ_{m+1-k} = i_k - k` for `I = {i_1 < ... < i_m}`.
pub fn partition_from_subset(i: &IndexSubset) -> Partition {
    let elems = i.elements();
    let m = elems.len();
    let mut parts = vec![0; m];
    for (k0, &e) in elems.iter().enumerate() {
        let k = k0 + 1;
        parts[m - k] = e - k;
    }
    Partition::new(parts).expect("increasing subsets give partitions")
}

/// Inverse of [`partition_from_subset`]: `i_k = k + λ_{m+1-k}`.
pub fn subset_from_partition(
    p: &Partition,
    params: GrassParams,
) -> Result<IndexSubset, CombinatoricsError> {
    let GrassParams { m, n } = params;
    let width = n - m;
    if p.parts.len() > m || p.parts.first().is_some_and(|&w| w > width) {
        return Err(CombinatoricsError::BoxOverflow { parts: p.parts.clone(), m, width });
    }
    let elems: Vec<usize> = (1..=m).map(|k| k + p.part(m + 1 - k)).collect();
    IndexSubset::new(n, &elems)
}

/// Largest number of boxes of `outer \ inner` on a single diagonal
/// `col - row = const`.
pub fn max_diag(outer: &Partition, inner: &Partition) -> usize {
    let mut counts = std::collections::HashMap::<i64, usize>::new();
    for (r0, &len) in outer.parts.iter().enumerate() {
        let row = r0 + 1;
        for col in 1..=len {
            if !inner.contains_box(row, col) {
                *counts.entry(col as i64 - row as i64).or_default() += 1;
            }
        }
    }
    counts.values().copied().max().unwrap_or(0)
}

/// Whether all pairs are non-crossing. Errors when sizes or ambient `n`
/// disagree.
pub fn is_ws_collection(labels: &BTreeSet<IndexSubset>) -> Result<bool, CombinatoricsError> {
    uniform_params(labels)?;
    let v: Vec<&IndexSubset> = labels.iter().collect();
    for (a, x) in v.iter().enumerate() {
        for y in &v[a + 1..] {
            if !is_noncrossing(x, y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pairwise non-crossing with exactly `m(n-m)+1` labels.
pub fn is_maximal(labels: &BTreeSet<IndexSubset>) -> Result<bool, CombinatoricsError> {
    let Some((m, n)) = uniform_params(labels)? else {
        return Ok(false);
    };
    if m == 0 || m >= n || labels.len() != m * (n - m) + 1 {
        return Ok(false);
    }
    is_ws_collection(labels)
}

fn uniform_params(
    labels: &BTreeSet<IndexSubset>,
) -> Result<Option<(usize, usize)>, CombinatoricsError> {
    let mut it = labels.iter();
    let Some(first) = it.next() else {
        return Ok(None);
    };
    let key = (first.len(), first.n());
    if it.any(|s| (s.len(), s.n()) != key) {
        return Err(CombinatoricsError::MixedParams);
    }
    Ok(Some(key))
}
