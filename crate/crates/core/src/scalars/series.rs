//! Truncated Laurent series in the generating-function variable ω.
//!
//! A series stores exact coefficients for ω^lo through ω^T with lo >= -1;
//! a simple pole at ω = 0 is the worst singularity the eigen-series of the
//! commuting family ever produces. Arithmetic never reports terms above the
//! truncation order.

use std::fmt;

use serde::Serialize;

use super::qrational::QRational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct OmegaSeries {
    lo: i64,
    trunc: i64,
    /// coeffs[j] is the coefficient of ω^{lo + j}.
    coeffs: Vec<QRational>,
}

impl OmegaSeries {
    pub fn new(lo: i64, trunc: i64, coeffs: Vec<QRational>) -> Result<OmegaSeries> {
        if lo < -1 {
            return Err(Error::EssentialPole);
        }
        if trunc < lo || coeffs.len() != (trunc - lo + 1) as usize {
            return Err(Error::Invalid(format!(
                "series range {lo}..={trunc} needs {} coefficients, got {}",
                trunc - lo + 1,
                coeffs.len()
            )));
        }
        Ok(OmegaSeries { lo, trunc, coeffs })
    }

    pub fn constant(c: QRational, trunc: i64) -> OmegaSeries {
        let mut coeffs = vec![QRational::zero(); (trunc + 1).max(1) as usize];
        if trunc >= 0 {
            coeffs[0] = c;
        }
        OmegaSeries {
            lo: 0,
            trunc: trunc.max(0),
            coeffs,
        }
    }

    pub fn one(trunc: i64) -> OmegaSeries {
        OmegaSeries::constant(QRational::one(), trunc)
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn lowest(&self) -> i64 {
        self.lo
    }

    pub fn coeff(&self, e: i64) -> QRational {
        if e < self.lo || e > self.trunc {
            return QRational::zero();
        }
        self.coeffs[(e - self.lo) as usize].clone()
    }

    pub fn add(&self, other: &OmegaSeries) -> OmegaSeries {
        let lo = self.lo.min(other.lo);
        let trunc = self.trunc.min(other.trunc);
        let coeffs = (lo..=trunc)
            .map(|e| &self.coeff(e) + &other.coeff(e))
            .collect();
        OmegaSeries { lo, trunc, coeffs }
    }

    pub fn scale(&self, c: &QRational) -> OmegaSeries {
        OmegaSeries {
            lo: self.lo,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Product truncated at the smaller truncation order. Fails if the
    /// product has a pole of order > 1 that does not cancel.
    pub fn mul(&self, other: &OmegaSeries) -> Result<OmegaSeries> {
        let trunc = self.trunc.min(other.trunc);
        let lo_raw = self.lo + other.lo;
        let len = (trunc - lo_raw + 1).max(0) as usize;
        let mut coeffs = vec![QRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.lo + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = ea + other.lo + j as i64;
                if e > trunc {
                    break;
                }
                coeffs[(e - lo_raw) as usize] += &(a * b);
            }
        }
        // Trim a vanishing deep pole before enforcing the lo >= -1 invariant.
        let mut lo = lo_raw;
        while lo < -1 {
            if coeffs.first().is_some_and(|c| c.is_zero()) {
                coeffs.remove(0);
                lo += 1;
            } else {
                return Err(Error::EssentialPole);
            }
        }
        OmegaSeries::new(lo, trunc, coeffs)
    }

    /// Coefficient-wise equality on the common stored range (missing
    /// coefficients are zero); both series must have equal truncation.
    pub fn eq_series(&self, other: &OmegaSeries) -> bool {
        if self.trunc != other.trunc {
            return false;
        }
        let lo = self.lo.min(other.lo);
        (lo..=self.trunc).all(|e| self.coeff(e) == other.coeff(e))
    }
}

impl fmt::Display for OmegaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.lo..=self.trunc {
            let c = self.coeff(e);
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]*w^{e}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(w^{})", self.trunc + 1)
    }
}

/// A rational function of ω with coefficients in Q(q), kept as a
/// numerator/denominator pair of ω-polynomials.
#[derive(Debug, Clone)]
pub struct OmegaRational {
    num: Vec<QRational>,
    den: Vec<QRational>,
}

impl OmegaRational {
    pub fn new(num: Vec<QRational>, den: Vec<QRational>) -> Result<OmegaRational> {
        if den.iter().all(|c| c.is_zero()) {
            return Err(Error::DivisionByZero);
        }
        Ok(OmegaRational { num, den })
    }

    /// Product of linear factors ∏ (1 - γ_p ω).
    pub fn product_one_minus(gammas: &[QRational]) -> Vec<QRational> {
        let mut poly = vec![QRational::one()];
        for g in gammas {
            let mut next = vec![QRational::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i] += c;
                let t = c * g;
                next[i + 1] -= &t;
            }
            poly = next;
        }
        poly
    }

    /// Exact Taylor/Laurent expansion about ω = 0 through order `trunc`.
    ///
    /// The denominator may vanish at ω = 0 to order at most one more than
    /// the numerator; a deeper pole is rejected.
    pub fn series_expand(&self, trunc: i64) -> Result<OmegaSeries> {
        let vnum = self.num.iter().position(|c| !c.is_zero());
        let vden = self
            .den
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero denominator");
        let Some(vnum) = vnum else {
            return OmegaSeries::new(0, trunc.max(0), vec![QRational::zero(); trunc.max(0) as usize + 1]);
        };
        let val = vnum as i64 - vden as i64;
        if val < -1 {
            return Err(Error::EssentialPole);
        }
        if trunc < val {
            return Err(Error::Invalid(format!(
                "truncation order {trunc} below series valuation {val}"
            )));
        }
        let num: Vec<_> = self.num[vnum..].to_vec();
        let den: Vec<_> = self.den[vden..].to_vec();
        let order = (trunc - val) as usize;
        // Power-series division num / den with den[0] invertible.
        let den0_inv = den[0].inverse()?;
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = num.get(k).cloned().unwrap_or_else(QRational::zero);
            for j in 1..=k.min(den.len() - 1) {
                let prev: &QRational = &out[k - j];
                acc -= &(&den[j] * prev);
            }
            out.push(&acc * &den0_inv);
        }
        OmegaSeries::new(val, trunc, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> QRational {
        QRational::from_int(n)
    }

    #[test]
    fn geometric_series() {
        // 1/(1 - γω) = 1 + γω + γ²ω² + ...
        let g = QRational::q(); // use γ = q for variety
        let f = OmegaRational::new(vec![c(1)], vec![c(1), -g.clone()]).unwrap();
        let s = f.series_expand(2).unwrap();
        assert_eq!(s.coeff(0), c(1));
        assert_eq!(s.coeff(1), g);
        assert_eq!(s.coeff(2), &g * &g);
    }

    #[test]
    fn long_division_oracle() {
        // (1 - q^{-2} γ ω)/(1 - γ ω) expanded by explicit long division:
        // 1 + (1 - q^{-2}) γ ω + (1 - q^{-2}) γ² ω²
        let g = c(3);
        let qm2 = QRational::q_pow(-2);
        let f = OmegaRational::new(
            vec![c(1), -(&qm2 * &g)],
            vec![c(1), -g.clone()],
        )
        .unwrap();
        let s = f.series_expand(2).unwrap();
        let one_minus = &c(1) - &qm2;
        assert_eq!(s.coeff(0), c(1));
        assert_eq!(s.coeff(1), &one_minus * &g);
        assert_eq!(s.coeff(2), &one_minus * &(&g * &g));
    }

    #[test]
    fn constant_expansion() {
        let f = OmegaRational::new(vec![c(7)], vec![c(1)]).unwrap();
        let s = f.series_expand(3).unwrap();
        assert_eq!(s.coeff(0), c(7));
        for e in 1..=3 {
            assert!(s.coeff(e).is_zero());
        }
    }

    #[test]
    fn simple_pole_allowed_deep_pole_rejected() {
        let f = OmegaRational::new(vec![c(1)], vec![QRational::zero(), c(1)]).unwrap();
        let s = f.series_expand(2).unwrap();
        assert_eq!(s.lowest(), -1);
        assert_eq!(s.coeff(-1), c(1));
        let g = OmegaRational::new(vec![c(1)], vec![QRational::zero(), QRational::zero(), c(1)]).unwrap();
        assert!(matches!(g.series_expand(2), Err(Error::EssentialPole)));
    }

    #[test]
    fn product_of_expansions_is_expansion_of_product() {
        let a = OmegaRational::new(vec![c(1), c(2)], vec![c(1), -c(5)]).unwrap();
        let b = OmegaRational::new(vec![c(3)], vec![c(1), c(1), c(4)]).unwrap();
        let t = 6;
        let sa = a.series_expand(t).unwrap();
        let sb = b.series_expand(t).unwrap();
        let prod = OmegaRational::new(
            poly_mul(&a.num, &b.num),
            poly_mul(&a.den, &b.den),
        )
        .unwrap();
        let sp = prod.series_expand(t).unwrap();
        assert!(sa.mul(&sb).unwrap().eq_series(&sp));
    }

    fn poly_mul(a: &[QRational], b: &[QRational]) -> Vec<QRational> {
        let mut out = vec![QRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        out
    }
}
