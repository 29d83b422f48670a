//! Dense univariate integer polynomials and integer Laurent polynomials.
//!
//! These back both the rational-function coefficients of the quantum torus
//! (variable `u`, a square root of `q`) and the `q`-Laurent coefficients of the
//! quantum matrix algebra.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial with integer coefficients, stored ascending by degree with no
/// trailing zeros. The zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Number of leading zero coefficients from the constant end
    /// (the `u`-adic valuation). Zero for the zero polynomial.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Drops the first `k` coefficients, i.e. divides by `u^k`. The caller
    /// guarantees those coefficients are zero.
    fn drop_low(&self, k: usize) -> IntPoly {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        IntPoly::from_coeffs(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Gcd of all coefficients (nonnegative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(c);
                    debug_assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        )
    }

    /// Content-free part with a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a mod d`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shift = dr - dd;
            let mut next = r.scale(&lc).coeffs;
            for (i, c) in d.coeffs.iter().enumerate() {
                next[i + shift] -= &lr * c;
            }
            r = IntPoly::from_coeffs(next);
        }
        r
    }

    /// Greatest common divisor as a primitive polynomial with positive
    /// leading coefficient (contents are ignored).
    pub fn primitive_gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Exact quotient `self / d`. Panics if `d` does not divide `self` over
    /// the integers.
    pub fn div_exact(&self, d: &IntPoly) -> IntPoly {
        let (q, r) = self.div_rem_int(d).expect("inexact polynomial division");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Long division when every step divides exactly over the integers.
    fn div_rem_int(&self, d: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let top = r.len() - 1;
            let (qc, rem) = r[top].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            let shift = top - dd;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[i + shift] -= &qc * c;
            }
            q[shift] = qc;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Some((IntPoly::from_coeffs(q), IntPoly::from_coeffs(r)))
    }

    fn fmt_in(&self, f: &mut fmt::Formatter<'_>, var: &str, offset: i64) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let deg = i as i64 + offset;
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if deg == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if deg == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{deg}")?;
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in(f, "u", 0)
    }
}

/// Integer Laurent polynomial `var^shift * poly(var)` with `poly(0) != 0`
/// unless the whole thing is zero (then `shift == 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    shift: i64,
    poly: IntPoly,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { shift: 0, poly: IntPoly::zero() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `c * var^exp`.
    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::new(exp, IntPoly::constant(c))
    }

    pub fn new(shift: i64, poly: IntPoly) -> Self {
        if poly.is_zero() {
            return Self::zero();
        }
        let v = poly.valuation();
        LaurentPoly { shift: shift + v as i64, poly: poly.drop_low(v) }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (e, c)| &acc + &Self::monomial(c, e))
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.poly.is_one()
    }

    /// Lowest exponent present (zero for the zero polynomial).
    pub fn low_degree(&self) -> i64 {
        self.shift
    }

    pub fn high_degree(&self) -> i64 {
        self.shift + self.poly.degree().map_or(0, |d| d as i64)
    }

    /// Normalized polynomial part (nonzero constant term).
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.shift + i as i64, c))
    }

    /// Multiplies by `var^k`.
    pub fn shifted(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { shift: self.shift + k, poly: self.poly.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        LaurentPoly::new(self.shift, self.poly.scale(c))
    }

    /// `Some((c, k))` if this is the single term `c * var^k`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        match self.poly.coeffs() {
            [c] => Some((c, self.shift)),
            _ => None,
        }
    }

    /// Value at `var = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.poly.coeffs().iter().sum()
    }

    /// Substitutes `var -> var^2` (used to move from `q` to `u`).
    pub fn square_variable(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (2 * e, c.clone())))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        struct Shown<'a>(&'a LaurentPoly, &'a str);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.poly.fmt_in(f, self.1, self.0.shift)
            }
        }
        Shown(self, var).to_string()
    }

    /// Parses the output of [`LaurentPoly::fmt_var`] (e.g. `2-q^-1+3q^4`).
    pub fn parse_var(s: &str, var: &str) -> Result<LaurentPoly, ParsePolyError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ParsePolyError(s));
        }
        let err = || ParsePolyError(s.clone());
        // split into signed terms, careful with exponents like u^-2
        let bytes: Vec<char> = s.chars().collect();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '^' {
                terms.push(bytes[start..i].iter().collect::<String>());
                start = i;
            }
        }
        terms.push(bytes[start..].iter().collect::<String>());
        let mut out = LaurentPoly::zero();
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (coef, exp) = match body.find(var) {
                None => (BigInt::from_str(body).map_err(|_| err())?, 0),
                Some(pos) => {
                    let c = if pos == 0 {
                        BigInt::one()
                    } else {
                        BigInt::from_str(&body[..pos]).map_err(|_| err())?
                    };
                    let rest = &body[pos + var.len()..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|r| r.parse::<i64>().ok())
                            .ok_or_else(err)?
                    };
                    (c, e)
                }
            };
            let coef = if neg { -coef } else { coef };
            out = &out + &LaurentPoly::monomial(coef, exp);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial `{0}`")]
pub struct ParsePolyError(pub String);

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let base = self.shift.min(rhs.shift);
        let a = lift(&self.poly, (self.shift - base) as usize);
        let b = lift(&rhs.poly, (rhs.shift - base) as usize);
        LaurentPoly::new(base, &a + &b)
    }
}

fn lift(p: &IntPoly, k: usize) -> IntPoly {
    if k == 0 {
        return p.clone();
    }
    let mut c = vec![BigInt::zero(); k];
    c.extend(p.coeffs().iter().cloned());
    IntPoly::from_coeffs(c)
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { shift: self.shift, poly: -&self.poly }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        // constant terms are nonzero, so the product has nonzero constant term
        LaurentPoly { shift: self.shift + rhs.shift, poly: &self.poly * &rhs.poly }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt_in(f, "q", self.shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn gcd_and_exact_division() {
        // (u+1)(u-2) and (u+1)(2u+3)
        let a = &p(&[1, 1]) * &p(&[-2, 1]);
        let b = &p(&[1, 1]) * &p(&[3, 2]);
        assert_eq!(a.primitive_gcd(&b), p(&[1, 1]));
        assert_eq!(a.div_exact(&p(&[1, 1])), p(&[-2, 1]));
        assert_eq!(p(&[4, 6]).primitive_part(), p(&[2, 3]));
        assert_eq!(p(&[-4, -6]).content(), BigInt::from(2));
    }

    #[test]
    fn laurent_normalizes_valuation() {
        let l = LaurentPoly::new(-3, p(&[0, 0, 1, 2]));
        assert_eq!(l.low_degree(), -1);
        assert_eq!(l.high_degree(), 0);
        assert_eq!(l.fmt_var("q"), "q^-1+2");
        let sum = &l + &(-&l);
        assert!(sum.is_zero());
    }

    #[test]
    fn parse_round_trip() {
        let l = LaurentPoly::from_terms([(-2, BigInt::from(-1)), (0, BigInt::from(3)), (5, BigInt::from(1))]);
        let s = l.fmt_var("u");
        assert_eq!(s, "-u^-2+3+u^5");
        assert_eq!(LaurentPoly::parse_var(&s, "u").unwrap(), l);
        assert_eq!(LaurentPoly::parse_var("q-q^-1", "q").unwrap().eval_one(), BigInt::zero());
        assert!(LaurentPoly::parse_var("x+", "u").is_err());
    }
}
