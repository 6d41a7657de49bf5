//! The field Q(q) of rational functions in the formal parameter q.
//!
//! Values are kept in a canonical form so that mathematical equality is
//! representation equality:
//!  - the numerator is a Laurent polynomial `q^lo * p(q)` with `p(0) != 0`,
//!  - the denominator is a monic polynomial with nonzero constant term
//!    (powers of q and the leading coefficient are absorbed into the
//!    numerator),
//!  - numerator and denominator share no polynomial factor.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{QPoly, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QRational {
    /// Exponent of the implicit power of q carried by the numerator.
    lo: i64,
    /// Numerator polynomial; nonzero constant term unless the value is zero.
    num: QPoly,
    /// Denominator polynomial; monic with nonzero constant term.
    den: QPoly,
}

impl QRational {
    fn make(lo: i64, num: QPoly, den: QPoly) -> QRational {
        assert!(!den.is_zero(), "zero denominator in Q(q)");
        if num.is_zero() {
            return QRational {
                lo: 0,
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        // Move powers of q out of both parts into the exponent.
        let vn = num.valuation().unwrap();
        let vd = den.valuation().unwrap();
        let mut lo = lo + vn as i64 - vd as i64;
        let mut num = num.unshift(vn);
        let den = den.unshift(vd);
        // Cancel the common polynomial factor (nothing to cancel against a
        // constant denominator).
        let (mut num2, den2);
        if den.degree() == Some(0) {
            num2 = num;
            den2 = den;
        } else {
            let g = num.gcd(&den);
            if g.degree() == Some(0) {
                num2 = num;
                den2 = den;
            } else {
                num2 = num.divrem(&g).0;
                den2 = den.divrem(&g).0;
            }
        }
        // gcd cancellation can reintroduce a power of q in the numerator.
        if let Some(v) = num2.valuation() {
            if v > 0 {
                lo += v as i64;
                num2 = num2.unshift(v);
            }
        }
        let lead = den2.leading().unwrap().clone();
        let den_monic = den2.monic();
        let inv = Rational::one() / lead;
        num = num2.scale(&inv);
        QRational {
            lo,
            num,
            den: den_monic,
        }
    }

    pub fn zero() -> QRational {
        QRational::make(0, QPoly::zero(), QPoly::one())
    }

    pub fn one() -> QRational {
        QRational::make(0, QPoly::one(), QPoly::one())
    }

    pub fn from_int(n: i64) -> QRational {
        QRational::make(0, QPoly::constant(Rational::from_integer(n.into())), QPoly::one())
    }

    pub fn from_rational(r: Rational) -> QRational {
        QRational::make(0, QPoly::constant(r), QPoly::one())
    }

    /// The generator q.
    pub fn q() -> QRational {
        QRational::q_pow(1)
    }

    /// q^k for any integer k.
    pub fn q_pow(k: i64) -> QRational {
        QRational::make(k, QPoly::one(), QPoly::one())
    }

    /// c * q^k.
    pub fn monomial(c: Rational, k: i64) -> QRational {
        QRational::make(k, QPoly::constant(c), QPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == QRational::one()
    }

    /// True when the value is a rational constant (no q dependence).
    pub fn is_constant(&self) -> bool {
        self.den.degree() == Some(0) && self.num.degree().is_none_or(|d| d == 0) && self.lo == 0
    }

    /// The constant value, when [`is_constant`](Self::is_constant) holds.
    pub fn as_rational(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.coeff(0))
    }

    pub fn inverse(&self) -> Result<QRational> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRational::make(-self.lo, self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: i64) -> Result<QRational> {
        if k == 0 {
            return Ok(QRational::one());
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = QRational::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact evaluation at q = r; fails on poles and at r = 0 when the value
    /// has a genuine negative power of q.
    pub fn eval_at_q(&self, r: &Rational) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let d = self.den.eval(r);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.num.eval(r);
        let shift = if self.lo >= 0 {
            pow_rational(r, self.lo as u64)
        } else {
            if r.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Rational::one() / pow_rational(r, (-self.lo) as u64)
        };
        Ok(n * shift / d)
    }

    /// Numerator as (exponent, coefficient) pairs in ascending exponent order.
    pub fn numer_terms(&self) -> Vec<(i64, Rational)> {
        self.num
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.lo + i as i64, c.clone()))
            .collect()
    }

    /// Denominator as (exponent, coefficient) pairs; always plain polynomial.
    pub fn denom_terms(&self) -> Vec<(i64, Rational)> {
        self.den
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.clone()))
            .collect()
    }
}

fn pow_rational(r: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}

/// The q-integer [k] = (q^k - q^{-k}) / (q - q^{-1}).
///
/// For k > 0 this is the Laurent polynomial q^{k-1} + q^{k-3} + ... + q^{1-k};
/// [0] = 0 and [-k] = -[k].
pub fn qint(k: i64) -> QRational {
    if k == 0 {
        return QRational::zero();
    }
    let n = k.unsigned_abs();
    let mut coeffs = Vec::with_capacity(n as usize);
    for _ in 0..n {
        coeffs.push(Rational::one());
    }
    // q^{1-k} (1 + q^2 + ... + q^{2(k-1)}) written densely.
    let mut dense = Vec::with_capacity(2 * n as usize - 1);
    for (i, c) in coeffs.into_iter().enumerate() {
        if i > 0 {
            dense.push(Rational::zero());
        }
        dense.push(c);
    }
    let v = QRational::make(1 - k.abs(), QPoly::from_coeffs(dense), QPoly::one());
    if k < 0 {
        -v
    } else {
        v
    }
}

/// The q-factorial [k]! = [k][k-1]...[1], with [0]! = 1.
pub fn qfact(k: i64) -> Result<QRational> {
    if k < 0 {
        return Err(Error::Invalid(format!("qfact of negative {k}")));
    }
    let mut acc = QRational::one();
    for j in 1..=k {
        acc = &acc * &qint(j);
    }
    Ok(acc)
}

impl Add for &QRational {
    type Output = QRational;
    fn add(self, rhs: &QRational) -> QRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        if self.den == rhs.den {
            let a = self.num.shift((self.lo - lo) as usize);
            let b = rhs.num.shift((rhs.lo - lo) as usize);
            return QRational::make(lo, a.add(&b), self.den.clone());
        }
        let a = self.num.shift((self.lo - lo) as usize).mul(&rhs.den);
        let b = rhs.num.shift((rhs.lo - lo) as usize).mul(&self.den);
        QRational::make(lo, a.add(&b), self.den.mul(&rhs.den))
    }
}

impl Sub for &QRational {
    type Output = QRational;
    fn sub(self, rhs: &QRational) -> QRational {
        self + &(-rhs)
    }
}

impl Mul for &QRational {
    type Output = QRational;
    fn mul(self, rhs: &QRational) -> QRational {
        if self.is_zero() || rhs.is_zero() {
            return QRational::zero();
        }
        QRational::make(self.lo + rhs.lo, self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for &QRational {
    type Output = QRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QRational) -> QRational {
        let inv = rhs.inverse().expect("division by zero in Q(q)");
        self * &inv
    }
}

impl Neg for &QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational {
            lo: self.lo,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for QRational {
            type Output = QRational;
            fn $method(self, rhs: QRational) -> QRational {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        -&self
    }
}

impl AddAssign<&QRational> for QRational {
    fn add_assign(&mut self, rhs: &QRational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QRational> for QRational {
    fn sub_assign(&mut self, rhs: &QRational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QRational> for QRational {
    fn mul_assign(&mut self, rhs: &QRational) {
        *self = &*self * rhs;
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(i64, Rational)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (n, (e, c)) in terms.iter().enumerate() {
        if n > 0 {
            write!(f, " + ")?;
        }
        if *e == 0 {
            write!(f, "{c}")?;
        } else {
            write!(f, "{c}*q^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for QRational {
    /// Canonical textual form `(num)/(den)`, each side a sum of
    /// `coeff*q^exp` terms in ascending exponent order; round-trips exactly
    /// through [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_terms(f, &self.numer_terms())?;
        write!(f, ")/(")?;
        write_terms(f, &self.denom_terms())?;
        write!(f, ")")
    }
}

fn parse_terms(s: &str) -> Result<QRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut acc = QRational::zero();
    for term in s.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        let (coeff_str, exp) = match term.find('*') {
            Some(star) => {
                let qpart = term[star + 1..].trim();
                let exp = parse_qpower(qpart)?;
                (term[..star].trim(), exp)
            }
            None => {
                if term == "q" || term.starts_with("q^") || term.starts_with("-q") {
                    // bare q-power, optionally negated
                    let (sign, qpart) = if let Some(rest) = term.strip_prefix('-') {
                        (-1i64, rest.trim())
                    } else {
                        (1i64, term)
                    };
                    let exp = parse_qpower(qpart)?;
                    acc += &QRational::monomial(Rational::from_integer(sign.into()), exp);
                    continue;
                }
                (term, 0)
            }
        };
        let coeff = parse_rational(coeff_str)?;
        acc += &QRational::monomial(coeff, exp);
    }
    Ok(acc)
}

fn parse_qpower(s: &str) -> Result<i64> {
    if s == "q" {
        return Ok(1);
    }
    let exp = s
        .strip_prefix("q^")
        .ok_or_else(|| Error::Parse(format!("expected q-power, found {s:?}")))?;
    exp.parse::<i64>()
        .map_err(|_| Error::Parse(format!("bad exponent {exp:?}")))
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num_str, den_str) = match s.find('/') {
        Some(p) => (&s[..p], &s[p + 1..]),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num_str.trim()).map_err(|_| Error::Parse(format!("bad integer {num_str:?}")))?;
    let d = BigInt::from_str(den_str.trim()).map_err(|_| Error::Parse(format!("bad integer {den_str:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator in coefficient".into()));
    }
    let r = BigRational::new(n, d);
    if r.denom().is_negative() {
        return Err(Error::Parse("negative coefficient denominator".into()));
    }
    Ok(r)
}

impl FromStr for QRational {
    type Err = Error;

    /// Accepts the canonical `(num)/(den)` form and, leniently, a bare term
    /// sum such as `1*q^-1 + 2/3` or `q^2` (denominator 1).
    fn from_str(s: &str) -> Result<QRational> {
        let s = s.trim();
        if let Some(split) = s.find(")/(") {
            let num_part = s[..split]
                .trim()
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let den_part = s[split + 3..]
                .trim()
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("expected ')' in {s:?}")))?;
            let num = parse_terms(num_part)?;
            let den = parse_terms(den_part)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(&num / &den)
        } else {
            let inner = s
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(s);
            if let Ok(v) = parse_terms(inner) {
                return Ok(v);
            }
            // lenient quotient form like `1/q` or `q^2/3`
            for (pos, ch) in inner.char_indices() {
                if ch != '/' {
                    continue;
                }
                if let (Ok(num), Ok(den)) =
                    (parse_terms(&inner[..pos]), parse_terms(&inner[pos + 1..]))
                {
                    if !den.is_zero() {
                        return Ok(&num / &den);
                    }
                }
            }
            Err(Error::Parse(format!("cannot parse {s:?} as a scalar")))
        }
    }
}

impl Serialize for QRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
