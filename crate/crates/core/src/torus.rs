//! The based quantum torus: Laurent combinations of based monomials `X^a`
//! with coefficients in `Q(u)`, `u = q^{1/2}`.
//!
//! Relations are `X_i X_j = q^{λ_ij} X_j X_i` and the based monomial is
//! `X^a = q^{γ(a)} X_1^{a_1} ... X_N^{a_N}` with `γ(a) = ½ Σ_{i>j} a_i a_j λ_ij`,
//! so that `X^a X^b = q^{½ aᵀLb} X^{a+b}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::IntMatrix;
use crate::poly::{IntPoly, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TorusError {
    #[error("exponent vector of length {got} in a torus of rank {expected}")]
    DimMismatch { expected: usize, got: usize },
    #[error("operands live in different quantum tori")]
    AmbientMismatch,
    #[error("dividend is not a right multiple of the divisor")]
    NotDivisible,
    #[error("coefficient {0} has a pole at u = 1")]
    PoleAtOne(String),
    #[error("variable {index} is zero but appears with a negative exponent")]
    ZeroValueAtNegativeExponent { index: usize },
    #[error("cannot parse coefficient `{0}`")]
    Parse(String),
}

/// Exact element of `(1/2)Z`, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt {
    pub twice: i64,
}

impl HalfInt {
    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(v: i64) -> Self {
        HalfInt { twice: 2 * v }
    }

    /// The exponent of `u` representing `q^self`.
    pub fn u_exponent(self) -> i64 {
        self.twice
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Element of `Q(u)` in lowest terms: `num / den` with `den(0) != 0`,
/// positive leading coefficient, and no common factor (including integer
/// content) between `num` and `den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QCoefficient {
    num: LaurentPoly,
    den: IntPoly,
}

impl QCoefficient {
    pub fn zero() -> Self {
        QCoefficient { num: LaurentPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(BigInt::from(c), 0))
    }

    /// `u^k`.
    pub fn u_power(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(BigInt::one(), k))
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        QCoefficient { num, den: IntPoly::one() }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let shift = num.low_degree() - den.low_degree();
        Self::reduce(num.poly().clone(), den.poly().clone(), shift)
    }

    fn reduce(mut num: IntPoly, mut den: IntPoly, shift: i64) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if !den.is_one() {
            let g = num.primitive_gcd(&den);
            if g.degree().unwrap_or(0) > 0 {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
            let c = num_integer::Integer::gcd(&num.content(), &den.content());
            if !c.is_one() {
                num = num.div_exact(&IntPoly::constant(c.clone()));
                den = den.div_exact(&IntPoly::constant(c));
            }
            if den.leading().unwrap().is_negative() {
                num = -&num;
                den = -&den;
            }
        }
        QCoefficient { num: LaurentPoly::new(shift, num), den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Whether this lies in `Z[u, u^-1]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    /// Multiplies by `u^k`.
    pub fn shift_u(&self, k: i64) -> Self {
        QCoefficient { num: self.num.shifted(k), den: self.den.clone() }
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let den = LaurentPoly::new(0, self.den.clone());
        Self::new(den, self.num.clone())
    }

    /// Value at `u = 1`.
    pub fn eval_one(&self) -> Result<BigRational, TorusError> {
        let d = self.den.eval(&BigInt::one());
        if d.is_zero() {
            return Err(TorusError::PoleAtOne(self.to_string()));
        }
        Ok(BigRational::new(self.num.eval_one(), d))
    }
}

impl Add for &QCoefficient {
    type Output = QCoefficient;
    fn add(self, rhs: &QCoefficient) -> QCoefficient {
        if self.den.is_one() && rhs.den.is_one() {
            return QCoefficient::from_laurent(&self.num + &rhs.num);
        }
        let a = &self.num * &LaurentPoly::new(0, rhs.den.clone());
        let b = &rhs.num * &LaurentPoly::new(0, self.den.clone());
        let num = &a + &b;
        QCoefficient::new(num, LaurentPoly::new(0, &self.den * &rhs.den))
    }
}

impl Neg for &QCoefficient {
    type Output = QCoefficient;
    fn neg(self) -> QCoefficient {
        QCoefficient { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &QCoefficient {
    type Output = QCoefficient;
    fn sub(self, rhs: &QCoefficient) -> QCoefficient {
        self + &(-rhs)
    }
}

impl Mul for &QCoefficient {
    type Output = QCoefficient;
    fn mul(self, rhs: &QCoefficient) -> QCoefficient {
        if self.den.is_one() && rhs.den.is_one() {
            return QCoefficient::from_laurent(&self.num * &rhs.num);
        }
        QCoefficient::new(
            &self.num * &rhs.num,
            LaurentPoly::new(0, &self.den * &rhs.den),
        )
    }
}

impl Div for &QCoefficient {
    type Output = QCoefficient;
    fn div(self, rhs: &QCoefficient) -> QCoefficient {
        if let (true, Some((c, k))) = (self.den.is_one(), rhs.num.as_monomial()) {
            if rhs.den.is_one() && c.abs().is_one() {
                return QCoefficient::from_laurent(self.num.shifted(-k).scale(c));
            }
        }
        self * &rhs.inverse()
    }
}

impl fmt::Display for QCoefficient {
    /// Canonical `u^k·(N)/(D)` with `N(0) != 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u^{}·({})/({})",
            self.num.low_degree(),
            self.num.poly(),
            self.den
        )
    }
}

impl fmt::Debug for QCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QCoefficient {
    type Err = TorusError;
    fn from_str(s: &str) -> Result<Self, TorusError> {
        let err = || TorusError::Parse(s.to_string());
        let (k, rest) = s.split_once('·').ok_or_else(err)?;
        let k: i64 = k.trim().strip_prefix("u^").ok_or_else(err)?.parse().map_err(|_| err())?;
        let (n, d) = rest.split_once(")/(").ok_or_else(err)?;
        let n = n.trim().strip_prefix('(').ok_or_else(err)?;
        let d = d.trim().strip_suffix(')').ok_or_else(err)?;
        let n = LaurentPoly::parse_var(n, "u").map_err(|_| err())?;
        let d = LaurentPoly::parse_var(d, "u").map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(QCoefficient::new(n.shifted(k), d))
    }
}

/// `γ(a) = ½ Σ_{i>j} a_i a_j λ_ij`.
pub fn gamma(a: &[i64], l: &IntMatrix) -> Result<HalfInt, TorusError> {
    check_dim(a, l)?;
    let mut twice = 0;
    for i in 0..a.len() {
        if a[i] == 0 {
            continue;
        }
        for j in 0..i {
            twice += a[i] * a[j] * l[(i, j)];
        }
    }
    Ok(HalfInt::from_twice(twice))
}

/// `X^a X^b = q^h X^{a+b}`; returns `(h, a+b)` with
/// `h = ½ Σ_{i>j} (a_i b_j - b_i a_j) λ_ij = ½ aᵀ L b`.
pub fn mul_monomials(
    a: &[i64],
    b: &[i64],
    l: &IntMatrix,
) -> Result<(HalfInt, Vec<i64>), TorusError> {
    check_dim(a, l)?;
    check_dim(b, l)?;
    Ok((HalfInt::from_twice(bilinear(a, b, l)), a.iter().zip(b).map(|(x, y)| x + y).collect()))
}

fn bilinear(a: &[i64], b: &[i64], l: &IntMatrix) -> i64 {
    let mut s = 0;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let row = l.row(i);
        for (j, &bj) in b.iter().enumerate() {
            s += ai * bj * row[j];
        }
    }
    s
}

fn check_dim(a: &[i64], l: &IntMatrix) -> Result<(), TorusError> {
    if a.len() != l.rows() {
        return Err(TorusError::DimMismatch { expected: l.rows(), got: a.len() });
    }
    Ok(())
}

/// Finite combination `Σ c_a X^a` over the based-monomial basis.
#[derive(Clone)]
pub struct TorusElement {
    ambient: Arc<IntMatrix>,
    terms: BTreeMap<Vec<i64>, QCoefficient>,
}

impl PartialEq for TorusElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
            && (Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient)
    }
}

impl Eq for TorusElement {}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| format!("[{}] X^{:?}", c, a))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl TorusElement {
    /// The zero element of the torus with quasi-commutation matrix `ambient`.
    pub fn zero(ambient: Arc<IntMatrix>) -> Self {
        TorusElement { ambient, terms: BTreeMap::new() }
    }

    pub fn one(ambient: Arc<IntMatrix>) -> Self {
        let n = ambient.rows();
        Self::monomial(ambient, vec![0; n], QCoefficient::one()).unwrap()
    }

    /// `c X^a`.
    pub fn monomial(
        ambient: Arc<IntMatrix>,
        a: Vec<i64>,
        c: QCoefficient,
    ) -> Result<Self, TorusError> {
        check_dim(&a, &ambient)?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(a, c);
        }
        Ok(TorusElement { ambient, terms })
    }

    /// The generator `X_i` (0-based).
    pub fn generator(ambient: Arc<IntMatrix>, i: usize) -> Self {
        let mut a = vec![0; ambient.rows()];
        a[i] = 1;
        Self::monomial(ambient, a, QCoefficient::one()).unwrap()
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I>(ambient: Arc<IntMatrix>, terms: I) -> Result<Self, TorusError>
    where
        I: IntoIterator<Item = (Vec<i64>, QCoefficient)>,
    {
        let mut out = Self::zero(ambient);
        for (a, c) in terms {
            check_dim(&a, &out.ambient)?;
            out.add_term(a, &c);
        }
        Ok(out)
    }

    pub fn ambient(&self) -> &Arc<IntMatrix> {
        &self.ambient
    }

    pub fn rank(&self) -> usize {
        self.ambient.rows()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, QCoefficient> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Vec<i64>, &QCoefficient)> {
        self.terms.last_key_value()
    }

    fn add_term(&mut self, a: Vec<i64>, c: &QCoefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_ambient(&self, other: &TorusElement) -> Result<(), TorusError> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient {
            Ok(())
        } else {
            Err(TorusError::AmbientMismatch)
        }
    }

    pub fn add(&self, other: &TorusElement) -> Result<TorusElement, TorusError> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TorusElement) -> Result<TorusElement, TorusError> {
        self.add(&other.scale(&QCoefficient::from_int(-1)))
    }

    pub fn scale(&self, c: &QCoefficient) -> TorusElement {
        let mut out = Self::zero(self.ambient.clone());
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(a, x)| (a.clone(), x * c)).collect();
        out
    }

    /// Product in the quantum torus.
    pub fn mul(&self, other: &TorusElement) -> Result<TorusElement, TorusError> {
        self.same_ambient(other)?;
        let mut out = Self::zero(self.ambient.clone());
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let h = bilinear(a, b, &self.ambient);
                let e: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, &(c * d).shift_u(h));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> TorusElement {
        let mut acc = Self::one(self.ambient.clone());
        for _ in 0..k {
            acc = acc.mul(self).expect("same ambient");
        }
        acc
    }

    /// Coordinatewise `(min, max)` of the exponent support.
    pub fn support_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let (mut lo, mut hi) = (first.clone(), first.clone());
        for a in it {
            for i in 0..a.len() {
                lo[i] = lo[i].min(a[i]);
                hi[i] = hi[i].max(a[i]);
            }
        }
        Some((lo, hi))
    }

    /// Returns `Q` with `Q * divisor == self`.
    ///
    /// In a quantum torus the lexicographic leading term of a product is the
    /// product of the leading terms, and likewise for the extreme exponents
    /// in every coordinate. This fixes a box for the support of `Q`; leading
    /// terms are then eliminated one by one and any quotient monomial outside
    /// the box proves non-divisibility.
    pub fn right_divide(&self, divisor: &TorusElement) -> Result<TorusElement, TorusError> {
        self.same_ambient(divisor)?;
        assert!(!divisor.is_zero(), "division by zero");
        let mut quotient = Self::zero(self.ambient.clone());
        if self.is_zero() {
            return Ok(quotient);
        }
        let (p_lo, p_hi) = self.support_box().unwrap();
        let (d_lo, d_hi) = divisor.support_box().unwrap();
        let q_lo: Vec<i64> = p_lo.iter().zip(&d_lo).map(|(a, b)| a - b).collect();
        let q_hi: Vec<i64> = p_hi.iter().zip(&d_hi).map(|(a, b)| a - b).collect();
        if q_lo.iter().zip(&q_hi).any(|(lo, hi)| lo > hi) {
            return Err(TorusError::NotDivisible);
        }
        let (d_lead, d_coeff) = divisor.leading_term().unwrap();
        let mut rem = self.clone();
        while let Some((r_lead, r_coeff)) = rem.leading_term() {
            let e: Vec<i64> = r_lead.iter().zip(d_lead).map(|(a, b)| a - b).collect();
            let inside = e
                .iter()
                .enumerate()
                .all(|(i, &x)| q_lo[i] <= x && x <= q_hi[i]);
            if !inside {
                return Err(TorusError::NotDivisible);
            }
            let h = bilinear(&e, d_lead, &self.ambient);
            let c = r_coeff / &d_coeff.shift_u(h);
            let step = Self::monomial(self.ambient.clone(), e.clone(), c.clone())?;
            rem = rem.sub(&step.mul(divisor)?)?;
            quotient.add_term(e, &c);
        }
        debug_assert_eq!(quotient.support_box(), Some((q_lo, q_hi)), "support box bound");
        Ok(quotient)
    }

    /// Whether every coefficient lies in `Z[u, u^-1]`.
    pub fn is_laurent(&self) -> bool {
        self.terms.values().all(|c| c.is_laurent())
    }

    /// Coefficients at `u = 1`.
    pub fn specialize_q1(&self) -> Result<BTreeMap<Vec<i64>, BigRational>, TorusError> {
        self.terms
            .iter()
            .map(|(a, c)| Ok((a.clone(), c.eval_one()?)))
            .filter(|r| !matches!(r, Ok((_, v)) if v.is_zero()))
            .collect()
    }

    /// Substitutes commuting values for the generators after `q -> 1`.
    pub fn evaluate_classical(&self, values: &[BigRational]) -> Result<BigRational, TorusError> {
        if values.len() != self.rank() {
            return Err(TorusError::DimMismatch { expected: self.rank(), got: values.len() });
        }
        let mut total = BigRational::zero();
        for (a, c) in self.specialize_q1()? {
            let mut term = c;
            for (i, &e) in a.iter().enumerate() {
                if e < 0 && values[i].is_zero() {
                    return Err(TorusError::ZeroValueAtNegativeExponent { index: i });
                }
                term *= num_traits::pow::Pow::pow(&values[i], e as i32);
            }
            total += term;
        }
        Ok(total)
    }

    /// Coefficients with respect to ordered monomials `X_1^{a_1}⋯X_N^{a_N}`,
    /// i.e. `c_a · q^{γ(a)}`.
    pub fn ordered_coefficients(&self) -> BTreeMap<Vec<i64>, QCoefficient> {
        self.terms
            .iter()
            .map(|(a, c)| {
                let g = gamma(a, &self.ambient).expect("dimension checked on insert");
                (a.clone(), c.shift_u(g.u_exponent()))
            })
            .collect()
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        let ordered = self.ordered_coefficients();
        self.terms
            .iter()
            .map(|(a, c)| TermJson {
                exponents: a.clone(),
                coeff: c.to_string(),
                ordered_coeff: ordered[a].to_string(),
            })
            .collect()
    }

    pub fn from_json(ambient: Arc<IntMatrix>, terms: &[TermJson]) -> Result<Self, TorusError> {
        Self::from_terms(
            ambient,
            terms
                .iter()
                .map(|t| Ok((t.exponents.clone(), t.coeff.parse::<QCoefficient>()?)))
                .collect::<Result<Vec<_>, TorusError>>()?,
        )
    }
}

/// One serialized term. `coeff` is relative to the based monomial `X^a`,
/// `orderedCoeff` relative to the ordered product `X_1^{a_1}⋯X_N^{a_N}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TermJson {
    pub exponents: Vec<i64>,
    pub coeff: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub ordered_coeff: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn gr24_l() -> Arc<IntMatrix> {
        // order {1,3}; {1,2},{2,3},{3,4},{1,4}
        Arc::new(
            IntMatrix::from_rows(&[
                vec![0, -1, 1, 1, 1],
                vec![1, 0, 1, 2, 1],
                vec![-1, -1, 0, 1, 0],
                vec![-1, -2, -1, 0, -1],
                vec![-1, -1, 0, 1, 0],
            ])
            .unwrap(),
        )
    }

    #[test]
    fn coefficient_canonical_form() {
        // (u^2 - 1)/(u - 1) = u + 1
        let c = QCoefficient::new(lp(&[(0, -1), (2, 1)]), lp(&[(0, -1), (1, 1)]));
        assert!(c.is_laurent());
        assert_eq!(c.to_string(), "u^0·(1+u)/(1)");
        assert_eq!(c.eval_one().unwrap(), BigRational::from_integer(2.into()));
        // 2u / (4u^3 + 2u) = 1 / (2u^2 + 1)
        let d = QCoefficient::new(lp(&[(1, 2)]), lp(&[(1, 2), (3, 4)]));
        assert_eq!(d.to_string(), "u^0·(1)/(1+2u^2)");
        assert_eq!(d.to_string().parse::<QCoefficient>().unwrap(), d);
        let neg = QCoefficient::new(lp(&[(0, 1)]), lp(&[(0, -1)]));
        assert_eq!(neg, QCoefficient::from_int(-1));
        assert_eq!(QCoefficient::u_power(3).eval_one().unwrap(), BigRational::one());
    }

    #[test]
    fn pole_at_one() {
        let c = QCoefficient::new(lp(&[(0, 1)]), lp(&[(0, -1), (1, 1)]));
        assert!(matches!(c.eval_one(), Err(TorusError::PoleAtOne(_))));
    }

    #[test]
    fn coefficient_field_ops() {
        let a = QCoefficient::new(lp(&[(0, 1), (1, 1)]), lp(&[(0, 1), (1, -1)]));
        let b = QCoefficient::new(lp(&[(2, 3)]), lp(&[(0, 1), (2, 1)]));
        let s = &(&a + &b) - &b;
        assert_eq!(s, a);
        let p = &(&a * &b) / &b;
        assert_eq!(p, a);
        assert!((&a * &a.inverse()).is_one());
    }

    #[test]
    fn gamma_examples() {
        let l = gr24_l();
        assert_eq!(gamma(&[0, 0, 3, 0, 0], &l).unwrap(), HalfInt::from_twice(0));
        assert_eq!(gamma(&[1, 1, 0, 1, 0], &l).unwrap(), HalfInt::from_int(-1));
        assert_eq!(gamma(&[-1, 1, 0, 1, 0], &l).unwrap(), HalfInt::from_int(-1));
        let a = [2, -1, 0, 3, 1];
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        assert_eq!(gamma(&a, &l).unwrap(), gamma(&neg, &l).unwrap());
        assert!(matches!(gamma(&[1, 2], &l), Err(TorusError::DimMismatch { .. })));
    }

    #[test]
    fn monomial_products() {
        let l = Arc::new(IntMatrix::from_rows(&[vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap());
        let (h, e) = mul_monomials(&[1, 0, 0], &[0, 1, 0], &l).unwrap();
        assert_eq!((h, e), (HalfInt::from_twice(-1), vec![1, 1, 0]));
        let (h2, _) = mul_monomials(&[0, 1, 0], &[1, 0, 0], &l).unwrap();
        assert_eq!(h2, HalfInt::from_twice(1));
        // X1 X2 = q^{λ12} X2 X1
        assert_eq!(h.twice - h2.twice, 2 * l[(0, 1)]);
        let (h3, e3) = mul_monomials(&[2, 1, -1], &[2, 1, -1], &l).unwrap();
        assert_eq!((h3.twice, e3), (0, vec![4, 2, -2]));
    }

    #[test]
    fn unit_and_commutation() {
        let l = gr24_l();
        let x1 = TorusElement::generator(l.clone(), 0);
        let x2 = TorusElement::generator(l.clone(), 1);
        let one = TorusElement::one(l.clone());
        assert_eq!(x1.mul(&one).unwrap(), x1);
        let ab = x1.mul(&x2).unwrap();
        let ba = x2.mul(&x1).unwrap();
        assert_eq!(ab, ba.scale(&QCoefficient::u_power(2 * l[(0, 1)])));
    }

    #[test]
    fn monomial_division() {
        let l = Arc::new(IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap());
        let p = TorusElement::monomial(l.clone(), vec![1, 1], QCoefficient::one()).unwrap();
        let d = TorusElement::monomial(l.clone(), vec![0, 1], QCoefficient::one()).unwrap();
        let q = p.right_divide(&d).unwrap();
        // X^{(1,0)} X^{(0,1)} = u^{λ12} X^{(1,1)}
        assert_eq!(q, TorusElement::monomial(l.clone(), vec![1, 0], QCoefficient::u_power(-1)).unwrap());
        assert_eq!(q.mul(&d).unwrap(), p);
    }

    #[test]
    fn not_divisible() {
        let l = Arc::new(IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap());
        let p = TorusElement::from_terms(
            l.clone(),
            [(vec![1, 0], QCoefficient::one()), (vec![0, 1], QCoefficient::one())],
        )
        .unwrap();
        // monomials are units
        let d = TorusElement::monomial(l.clone(), vec![2, 0], QCoefficient::one()).unwrap();
        assert_eq!(p.right_divide(&d).unwrap().mul(&d).unwrap(), p);
        let two = TorusElement::from_terms(
            l.clone(),
            [(vec![1, 0], QCoefficient::one()), (vec![0, 0], QCoefficient::one())],
        )
        .unwrap();
        // X1 + 1 does not divide X1 + X2
        assert_eq!(p.right_divide(&two), Err(TorusError::NotDivisible));
    }

    #[test]
    fn classical_evaluation() {
        let l = gr24_l();
        let x1 = TorusElement::generator(l.clone(), 0);
        let mut vals = vec![BigRational::from_integer(5.into()); 5];
        assert_eq!(x1.evaluate_classical(&vals).unwrap(), BigRational::from_integer(5.into()));
        let inv = TorusElement::monomial(l.clone(), vec![-1, 0, 0, 0, 0], QCoefficient::one()).unwrap();
        vals[0] = BigRational::from_integer(2.into());
        assert_eq!(inv.evaluate_classical(&vals).unwrap(), BigRational::new(1.into(), 2.into()));
        vals[0] = BigRational::zero();
        assert_eq!(
            inv.evaluate_classical(&vals),
            Err(TorusError::ZeroValueAtNegativeExponent { index: 0 })
        );
    }

    #[test]
    fn json_round_trip() {
        let l = gr24_l();
        let p = TorusElement::from_terms(
            l.clone(),
            [
                (vec![-1, 1, 0, 1, 0], QCoefficient::one()),
                (vec![-1, 0, 1, 0, 1], QCoefficient::u_power(3)),
            ],
        )
        .unwrap();
        let j = p.to_json();
        assert_eq!(j[1].ordered_coeff, "u^-2·(1)/(1)");
        assert_eq!(TorusElement::from_json(l, &j).unwrap(), p);
    }
}
