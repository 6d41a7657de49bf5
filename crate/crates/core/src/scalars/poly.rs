//! Dense polynomials in `q` over arbitrary-precision rationals.
//!
//! Internal representation layer for [`super::QRational`]. Coefficient 0 is
//! the constant term; trailing zeros are trimmed, so the zero polynomial has
//! an empty coefficient vector.

use num::{BigRational, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct QPoly {
    pub(crate) coeffs: Vec<Rational>,
}

impl QPoly {
    pub(crate) fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub(crate) fn one() -> Self {
        QPoly::constant(Rational::from_integer(1.into()))
    }

    pub(crate) fn constant(c: Rational) -> Self {
        let mut p = QPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub(crate) fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; the zero polynomial has no degree.
    pub(crate) fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub(crate) fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub(crate) fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Multiplication by `q^k`.
    pub(crate) fn shift(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Order of vanishing at q = 0 (index of the first nonzero coefficient).
    pub(crate) fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divide by `q^k`; caller guarantees the first `k` coefficients vanish.
    pub(crate) fn unshift(&self, k: usize) -> QPoly {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        QPoly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub(crate) fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }

    pub(crate) fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }

    pub(crate) fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub(crate) fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    pub(crate) fn scale(&self, c: &Rational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg(remainder) < deg(divisor).
    pub(crate) fn divrem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap() / &lead;
            let k = rd - dd;
            quot[k] = c.clone();
            let sub = divisor.shift(k).scale(&c);
            rem = rem.sub(&sub);
        }
        (QPoly::from_coeffs(quot), rem)
    }

    /// Monic gcd over the field of rationals.
    pub(crate) fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rescale to leading coefficient 1; the zero polynomial is unchanged.
    pub(crate) fn monic(&self) -> QPoly {
        match self.leading() {
            None => QPoly::zero(),
            Some(l) => {
                let inv = Rational::from_integer(1.into()) / l;
                self.scale(&inv)
            }
        }
    }

    pub(crate) fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn poly(cs: &[i64]) -> QPoly {
        QPoly::from_coeffs(cs.iter().map(|&c| r(c)).collect())
    }

    #[test]
    fn divrem_exact() {
        // (q^2 - 1) / (q - 1) = q + 1
        let (quot, rem) = poly(&[-1, 0, 1]).divrem(&poly(&[-1, 1]));
        assert_eq!(quot, poly(&[1, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn gcd_common_factor() {
        // gcd((q-1)(q+2), (q-1)(q-3)) = q - 1
        let a = poly(&[-1, 1]).mul(&poly(&[2, 1]));
        let b = poly(&[-1, 1]).mul(&poly(&[-3, 1]));
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));
    }

    #[test]
    fn valuation_and_unshift() {
        let p = poly(&[0, 0, 3, 1]);
        assert_eq!(p.valuation(), Some(2));
        assert_eq!(p.unshift(2), poly(&[3, 1]));
    }
}
