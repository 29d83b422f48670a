//! The quantum matrix algebra on generators `x_ij` (`1 <= i <= m`,
//! `1 <= j <= n`), straightened to descending row-major words.
//!
//! For `(i,j) < (s,t)` the rewrite rules are
//!
//! * same row or same column: `x_ij x_st = q x_st x_ij`
//! * `i < s`, `j > t`: `x_ij x_st = x_st x_ij`
//! * `i < s`, `j < t`: `x_ij x_st = x_st x_ij + (q - q^-1) x_sj x_it`

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{
    c_exponent, is_noncrossing, CombinatoricsError, GrassParams, IndexSubset,
};
use crate::invariants::lambda_pair;
use crate::poly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QMatrixError {
    #[error("generator x_{row},{col} outside the {m}x{n} matrix")]
    IndexOutOfRange { row: usize, col: usize, m: usize, n: usize },
    #[error("minor columns {0} do not have size m = {1}")]
    SizeMismatch(IndexSubset, usize),
    #[error("bad short Plücker configuration: {0}")]
    BadConfiguration(String),
    #[error(transparent)]
    Params(#[from] CombinatoricsError),
}

type Word = Vec<u8>;
type Terms = BTreeMap<Word, LaurentPoly>;

/// An element of the quantum matrix algebra in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrixElement {
    m: usize,
    n: usize,
    terms: Terms,
}

fn add_into(terms: &mut Terms, w: Word, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&w) {
        Some(cur) => {
            let s = &*cur + c;
            if s.is_zero() {
                terms.remove(&w);
            } else {
                *cur = s;
            }
        }
        None => {
            terms.insert(w, c.clone());
        }
    }
}

fn q_pow(k: i64) -> LaurentPoly {
    LaurentPoly::monomial(BigInt::one(), k)
}

fn q_minus_inverse() -> LaurentPoly {
    LaurentPoly::from_terms([(1, BigInt::one()), (-1, -BigInt::one())])
}

impl QMatrixElement {
    pub fn zero(m: usize, n: usize) -> Self {
        QMatrixElement { m, n, terms: Terms::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Terms keyed by descending words of `(row, col)` pairs (1-based).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(usize, usize)>, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(w, c)| (w.iter().map(|&g| self.pair(g)).collect(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn pair(&self, g: u8) -> (usize, usize) {
        (g as usize / self.n + 1, g as usize % self.n + 1)
    }

    pub fn add(&self, other: &QMatrixElement) -> QMatrixElement {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_into(&mut terms, w.clone(), c);
        }
        QMatrixElement { m: self.m, n: self.n, terms }
    }

    pub fn scale(&self, c: &LaurentPoly) -> QMatrixElement {
        let mut terms = Terms::new();
        for (w, x) in &self.terms {
            add_into(&mut terms, w.clone(), &(x * c));
        }
        QMatrixElement { m: self.m, n: self.n, terms }
    }

    /// `q -> 1`: commutative polynomial keyed by sorted words.
    pub fn specialize_q1(&self) -> BTreeMap<Vec<(usize, usize)>, BigInt> {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let v = c.eval_one();
            if !v.is_zero() {
                out.insert(w.iter().map(|&g| self.pair(g)).collect(), v);
            }
        }
        out
    }

    /// `Some(c)` when `self = q^c other` termwise.
    pub fn ratio_exponent(&self, other: &QMatrixElement) -> Option<i64> {
        if self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return Some(0);
        }
        let (w, a) = self.terms.iter().next().unwrap();
        let b = other.terms.get(w)?;
        let c = a.low_degree() - b.low_degree();
        (*self == other.scale(&q_pow(c))).then_some(c)
    }
}

impl fmt::Display for QMatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| {
                let word: String = w
                    .iter()
                    .map(|&g| {
                        let (i, j) = self.pair(g);
                        format!("x{i}{j}")
                    })
                    .collect();
                format!("({c})·{}", if word.is_empty() { "1".into() } else { word })
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for QMatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Which adjacent inversion the naive straightening rewrites first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Straightening context for one `m x n` matrix; memoizes insertion of a
/// generator at the end of a normal word.
pub struct QMatrixAlgebra {
    m: usize,
    n: usize,
    memo: RefCell<HashMap<(Word, u8), Rc<Terms>>>,
}

impl QMatrixAlgebra {
    pub fn new(m: usize, n: usize) -> Self {
        QMatrixAlgebra { m, n, memo: RefCell::new(HashMap::new()) }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    fn index(&self, row: usize, col: usize) -> Result<u8, QMatrixError> {
        if row == 0 || col == 0 || row > self.m || col > self.n || self.m * self.n > 256 {
            return Err(QMatrixError::IndexOutOfRange { row, col, m: self.m, n: self.n });
        }
        Ok(((row - 1) * self.n + (col - 1)) as u8)
    }

    fn split(&self, g: u8) -> (usize, usize) {
        (g as usize / self.n, g as usize % self.n)
    }

    fn join(&self, r: usize, c: usize) -> u8 {
        (r * self.n + c) as u8
    }

    /// Rewrites `x_lo x_hi` with `lo < hi` into descending two-letter words.
    fn rewrite_pair(&self, lo: u8, hi: u8) -> Vec<([u8; 2], LaurentPoly)> {
        let (i, j) = self.split(lo);
        let (s, t) = self.split(hi);
        if i == s || j == t {
            vec![([hi, lo], q_pow(1))]
        } else if j > t {
            vec![([hi, lo], LaurentPoly::one())]
        } else {
            vec![([hi, lo], LaurentPoly::one()), ([self.join(s, j), self.join(i, t)], q_minus_inverse())]
        }
    }

    pub fn generator(&self, row: usize, col: usize) -> Result<QMatrixElement, QMatrixError> {
        let g = self.index(row, col)?;
        Ok(self.wrap(Terms::from([(vec![g], LaurentPoly::one())])))
    }

    pub fn one(&self) -> QMatrixElement {
        self.wrap(Terms::from([(Word::new(), LaurentPoly::one())]))
    }

    fn wrap(&self, terms: Terms) -> QMatrixElement {
        QMatrixElement { m: self.m, n: self.n, terms }
    }

    /// Normal form of `word · g` where `word` is already descending.
    fn insert(&self, word: &[u8], g: u8) -> Rc<Terms> {
        match word.last() {
            None => return Rc::new(Terms::from([(vec![g], LaurentPoly::one())])),
            Some(&h) if h >= g => {
                let mut w = word.to_vec();
                w.push(g);
                return Rc::new(Terms::from([(w, LaurentPoly::one())]));
            }
            _ => {}
        }
        let key = (word.to_vec(), g);
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let (prefix, h) = (&word[..word.len() - 1], word[word.len() - 1]);
        let mut out = Terms::new();
        for ([x, y], c) in self.rewrite_pair(h, g) {
            for (v, cv) in self.insert(prefix, x).iter() {
                let cv = cv * &c;
                for (u, cu) in self.insert(v, y).iter() {
                    add_into(&mut out, u.clone(), &(cu * &cv));
                }
            }
        }
        let out = Rc::new(out);
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn normal_word(&self, word: &[u8]) -> Terms {
        let mut acc = Terms::from([(Word::new(), LaurentPoly::one())]);
        for &g in word {
            let mut next = Terms::new();
            for (w, c) in &acc {
                for (u, cu) in self.insert(w, g).iter() {
                    add_into(&mut next, u.clone(), &(cu * c));
                }
            }
            acc = next;
        }
        acc
    }

    /// Normal form of a formal sum of words of `(row, col)` generators.
    pub fn normal_form(
        &self,
        expr: &[(Vec<(usize, usize)>, LaurentPoly)],
    ) -> Result<QMatrixElement, QMatrixError> {
        let mut out = Terms::new();
        for (word, c) in expr {
            let w = self.encode(word)?;
            for (u, cu) in self.normal_word(&w) {
                add_into(&mut out, u, &(&cu * c));
            }
        }
        Ok(self.wrap(out))
    }

    fn encode(&self, word: &[(usize, usize)]) -> Result<Word, QMatrixError> {
        word.iter().map(|&(r, c)| self.index(r, c)).collect()
    }

    /// Straightening by repeatedly rewriting one adjacent inversion, without
    /// memoization. Used to cross-check the fast path.
    pub fn normal_form_naive(
        &self,
        expr: &[(Vec<(usize, usize)>, LaurentPoly)],
        strategy: Strategy,
    ) -> Result<QMatrixElement, QMatrixError> {
        let mut pending = Terms::new();
        for (word, c) in expr {
            add_into(&mut pending, self.encode(word)?, c);
        }
        let mut done = Terms::new();
        while let Some((w, c)) = pending.pop_first() {
            let positions = (0..w.len().saturating_sub(1)).filter(|&p| w[p] < w[p + 1]);
            let p = match strategy {
                Strategy::Leftmost => positions.min(),
                Strategy::Rightmost => positions.max(),
            };
            let Some(p) = p else {
                add_into(&mut done, w, &c);
                continue;
            };
            for ([x, y], r) in self.rewrite_pair(w[p], w[p + 1]) {
                let mut v = w.clone();
                v[p] = x;
                v[p + 1] = y;
                add_into(&mut pending, v, &(&c * &r));
            }
        }
        Ok(self.wrap(done))
    }

    pub fn mul(&self, a: &QMatrixElement, b: &QMatrixElement) -> QMatrixElement {
        let mut out = Terms::new();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let coeff = ca * cb;
                let mut acc = Terms::from([(wa.clone(), coeff)]);
                for &g in wb {
                    let mut next = Terms::new();
                    for (w, c) in &acc {
                        for (u, cu) in self.insert(w, g).iter() {
                            add_into(&mut next, u.clone(), &(cu * c));
                        }
                    }
                    acc = next;
                }
                for (w, c) in acc {
                    add_into(&mut out, w, &c);
                }
            }
        }
        self.wrap(out)
    }

    /// `Δ_I = Σ_σ (-q)^{ℓ(σ)} x_{1,i_σ(1)} ... x_{m,i_σ(m)}` on rows `1..m`.
    pub fn quantum_minor(&self, cols: &IndexSubset) -> Result<QMatrixElement, QMatrixError> {
        if cols.len() != self.m || cols.n() != self.n {
            return Err(QMatrixError::SizeMismatch(*cols, self.m));
        }
        let c = cols.elements();
        let mut expr = Vec::new();
        for perm in permutations(self.m) {
            let inv = inversions(&perm) as i64;
            let sign = if inv % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let word = perm.iter().enumerate().map(|(r, &p)| (r + 1, c[p])).collect();
            expr.push((word, LaurentPoly::monomial(sign, inv)));
        }
        self.normal_form(&expr)
    }

    /// `Some(c)` if `AB = q^c BA` after straightening.
    pub fn quasi_comm_exponent(&self, a: &QMatrixElement, b: &QMatrixElement) -> Option<i64> {
        self.mul(a, b).ratio_exponent(&self.mul(b, a))
    }

    /// Checks the short quantum Plücker relation for `J ∪ {a, b, c, d}` with
    /// `a, b, c, d` in cyclic order:
    ///
    /// * `a<b<c<d`: `Δ_Jac Δ_Jbd = q^-1 Δ_Jab Δ_Jcd + q Δ_Jad Δ_Jbc`
    /// * `d<a<b<c`: `Δ_Jbd Δ_Jac = q^-1 Δ_Jad Δ_Jbc + q Δ_Jcd Δ_Jab`
    ///
    /// The other two cyclic rotations reduce to these by `(a,b,c,d) -> (c,d,a,b)`.
    pub fn verify_short_plucker(
        &self,
        common: &IndexSubset,
        quad: [usize; 4],
    ) -> Result<bool, QMatrixError> {
        let [a, b, c, d] = quad;
        let bad = |why: &str| QMatrixError::BadConfiguration(format!("{common} {quad:?}: {why}"));
        if common.len() + 2 != self.m || common.n() != self.n {
            return Err(bad("|J| must be m - 2"));
        }
        if quad.iter().any(|&x| x == 0 || x > self.n || common.contains(x)) {
            return Err(bad("indices must lie outside J and within 1..=n"));
        }
        let cyclic = |[a, b, c, d]: [usize; 4]| (a < b && b < c && c < d, d < a && a < b && b < c);
        let (lin, wrapped, quad) = match cyclic(quad) {
            (false, false) => match cyclic([c, d, a, b]) {
                (false, false) => return Err(bad("not in cyclic order")),
                (l, w) => (l, w, [c, d, a, b]),
            },
            (l, w) => (l, w, quad),
        };
        let [a, b, c, d] = quad;
        let minor = |x: usize, y: usize| -> Result<QMatrixElement, QMatrixError> {
            let mut e = common.elements();
            e.extend([x, y]);
            self.quantum_minor(&IndexSubset::from_unsorted(self.n, &e)?)
        };
        let (ac, bd, ab, cd, ad, bc) =
            (minor(a, c)?, minor(b, d)?, minor(a, b)?, minor(c, d)?, minor(a, d)?, minor(b, c)?);
        let (lhs, rhs) = if lin {
            (
                self.mul(&ac, &bd),
                self.mul(&ab, &cd).scale(&q_pow(-1)).add(&self.mul(&ad, &bc).scale(&q_pow(1))),
            )
        } else {
            debug_assert!(wrapped);
            (
                self.mul(&bd, &ac),
                self.mul(&ad, &bc).scale(&q_pow(-1)).add(&self.mul(&cd, &ab).scale(&q_pow(1))),
            )
        };
        Ok(lhs == rhs)
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

/// A disagreement found by [`verify_lz`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LzViolation {
    #[serde(rename = "I")]
    pub i: IndexSubset,
    #[serde(rename = "J")]
    pub j: IndexSubset,
    /// Which comparison failed: `quasiCommutation` or `lambda`.
    pub check: &'static str,
    pub expected: Option<i64>,
    pub got: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LzReport {
    pub pairs: usize,
    pub violations: Vec<LzViolation>,
}

/// For every unordered pair of `m`-subsets: the quantum minors quasi-commute
/// exactly when the labels are non-crossing, with exponent `c(I, J)`, which in
/// turn equals the module invariant `λ(M_I, M_J)`.
pub fn verify_lz(m: usize, n: usize) -> Result<LzReport, QMatrixError> {
    let params = GrassParams::new(m, n)?;
    let alg = QMatrixAlgebra::new(m, n);
    let subsets = params.subsets();
    let minors: Vec<QMatrixElement> =
        subsets.iter().map(|s| alg.quantum_minor(s)).collect::<Result<_, _>>()?;
    let mut pairs = 0;
    let mut violations = Vec::new();
    for x in 0..subsets.len() {
        for y in x + 1..subsets.len() {
            pairs += 1;
            let (i, j) = (subsets[x], subsets[y]);
            let got = alg.quasi_comm_exponent(&minors[x], &minors[y]);
            let expected = if is_noncrossing(&i, &j) { Some(c_exponent(&i, &j)?) } else { None };
            if got != expected {
                violations.push(LzViolation { i, j, check: "quasiCommutation", expected, got });
            }
            if let Some(c) = expected {
                let lam = lambda_pair(&i, &j).expect("same size");
                if lam != c {
                    violations.push(LzViolation { i, j, check: "lambda", expected, got: Some(lam) });
                }
            }
        }
    }
    Ok(LzReport { pairs, violations })
}

/// Descending check for words given as `(row, col)` pairs.
pub fn is_normal_word(word: &[(usize, usize)]) -> bool {
    word.windows(2).all(|p| p[0] >= p[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn s(n: usize, e: &[usize]) -> IndexSubset {
        IndexSubset::new(n, e).unwrap()
    }

    #[test]
    fn rewrite_examples() {
        let alg = QMatrixAlgebra::new(2, 2);
        let nf = alg.normal_form(&[(vec![(1, 1), (1, 2)], LaurentPoly::one())]).unwrap();
        let want = alg.normal_form(&[(vec![(1, 2), (1, 1)], lp(&[(1, 1)]))]).unwrap();
        assert_eq!(nf, want);
        let desc = vec![(2, 2), (1, 1)];
        let nf = alg.normal_form(&[(desc.clone(), LaurentPoly::one())]).unwrap();
        assert_eq!(nf.terms().next().unwrap().0, desc);
        let nf = alg.normal_form(&[(vec![(1, 1), (2, 2)], LaurentPoly::one())]).unwrap();
        let want = alg
            .normal_form(&[
                (vec![(2, 2), (1, 1)], LaurentPoly::one()),
                (vec![(2, 1), (1, 2)], lp(&[(1, 1), (-1, -1)])),
            ])
            .unwrap();
        assert_eq!(nf, want);
        assert!(matches!(
            alg.generator(3, 1),
            Err(QMatrixError::IndexOutOfRange { row: 3, col: 1, .. })
        ));
    }

    #[test]
    fn two_by_two_minor() {
        let alg = QMatrixAlgebra::new(2, 2);
        let d = alg.quantum_minor(&s(2, &[1, 2])).unwrap();
        let want = alg
            .normal_form(&[
                (vec![(1, 1), (2, 2)], LaurentPoly::one()),
                (vec![(1, 2), (2, 1)], lp(&[(1, -1)])),
            ])
            .unwrap();
        assert_eq!(d, want);
        assert_eq!(d.len(), 2);
        let one = QMatrixAlgebra::new(1, 3);
        assert_eq!(one.quantum_minor(&s(3, &[2])).unwrap(), one.generator(1, 2).unwrap());
    }

    #[test]
    fn quasi_commutation_examples() {
        let alg = QMatrixAlgebra::new(2, 4);
        let m = |e: &[usize]| alg.quantum_minor(&s(4, e)).unwrap();
        assert_eq!(alg.quasi_comm_exponent(&m(&[1, 2]), &m(&[1, 3])), Some(1));
        assert_eq!(alg.quasi_comm_exponent(&m(&[1, 3]), &m(&[2, 4])), None);
        assert_eq!(alg.quasi_comm_exponent(&m(&[1, 3]), &m(&[1, 3])), Some(0));
    }

    #[test]
    fn short_plucker_gr24() {
        let alg = QMatrixAlgebra::new(2, 4);
        let empty = IndexSubset::new(4, &[]).unwrap();
        assert!(alg.verify_short_plucker(&empty, [1, 2, 3, 4]).unwrap());
        assert!(alg.verify_short_plucker(&empty, [2, 3, 4, 1]).unwrap());
        assert!(alg.verify_short_plucker(&empty, [3, 4, 1, 2]).unwrap());
        assert!(matches!(
            alg.verify_short_plucker(&empty, [1, 3, 2, 4]),
            Err(QMatrixError::BadConfiguration(_))
        ));
    }

    #[test]
    fn lz_small() {
        let r = verify_lz(2, 4).unwrap();
        assert_eq!((r.pairs, r.violations.len()), (15, 0));
        let r = verify_lz(1, 4).unwrap();
        assert!(r.violations.is_empty());
    }

    #[test]
    fn descending_words() {
        assert!(!is_normal_word(&[(1, 1), (1, 2)]));
        assert!(is_normal_word(&[(2, 1), (1, 2)]));
    }
}
