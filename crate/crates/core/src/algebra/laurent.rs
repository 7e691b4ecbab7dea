use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::field::{Field, Q};
use super::frac::RatFunc;
use super::poly::Poly;

/// Laurent polynomials in `q` with rational coefficients, `Z[q, q^-1]`
/// tensored up to `Q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Q::one(), 0)
    }

    pub fn monomial(c: Q, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `(-q)^e`.
    pub fn neg_q_pow(e: i64) -> Self {
        let c = if e.rem_euclid(2) == 1 { -Q::one() } else { Q::one() };
        Self::monomial(c, e)
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (i64, Q)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Q)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Q {
        self.terms.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    /// Lowest and highest exponents, `None` for zero.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    pub fn eval(&self, q: &Q) -> Result<Q, crate::error::AlgebraError> {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            acc += c.clone() * Field::pow(q, *e)?;
        }
        Ok(acc)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let Some((lo, _)) = self.degree_range() else {
            return RatFunc::zero();
        };
        let shift = lo.min(0);
        let mut coeffs = vec![Q::zero(); (self.degree_range().unwrap().1 - shift + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e - shift) as usize] = c.clone();
        }
        RatFunc::from_poly(Poly::from_coeffs(coeffs)) * &RatFunc::q_pow(shift)
    }

    /// Inverse of [`to_ratfunc`](Self::to_ratfunc) when the denominator is a
    /// monomial times a constant.
    pub fn from_ratfunc(f: &RatFunc) -> Option<Self> {
        let den = f.denom();
        let v = den.valuation();
        if den.degree()? != v {
            return None;
        }
        let c = den.coeff(v);
        let mut out = Self::zero();
        for (k, a) in f.numer().coeffs().iter().enumerate() {
            out.add_term(k as i64 - v as i64, a.clone() / c.clone());
        }
        Some(out)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = a == Q::one();
            match (*e, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;

    #[test]
    fn roundtrip_through_ratfunc() {
        let p = LaurentPoly::from_terms([(-2, rat(3, 1)), (0, rat(-1, 2)), (5, rat(1, 1))]);
        assert_eq!(LaurentPoly::from_ratfunc(&p.to_ratfunc()), Some(p));
    }

    #[test]
    fn neg_q_power_signs() {
        let a = LaurentPoly::neg_q_pow(3);
        assert_eq!(a.coeff(3), rat(-1, 1));
        let b = &a * &LaurentPoly::neg_q_pow(-1);
        assert_eq!(b, LaurentPoly::neg_q_pow(2));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = LaurentPoly::monomial(rat(2, 1), -1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(-1, rat(1, 1)), (2, rat(-2, 1))]);
        assert_eq!(p.to_string(), "-2*q^2 + q^-1");
    }
}
