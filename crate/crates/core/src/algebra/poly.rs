use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{var_name, Field};
use crate::error::AlgebraError;

/// Dense univariate polynomial over a field `C`.
///
/// `coeffs[k]` is the coefficient of `x^k`; trailing zeros are never stored,
/// so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Field> Poly<C> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn monomial(c: C, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); deg + 1];
        coeffs[deg] = c;
        Self { coeffs }
    }

    /// `x - root`.
    pub fn linear(root: C) -> Self {
        Self::from_coeffs(vec![-root, C::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Lowest degree with a nonzero coefficient (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Divide by `x^k`; the low coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// Returns `(lc, p / lc)`; the zero polynomial maps to `(0, 0)`.
    pub fn monic(&self) -> (C, Self) {
        match self.leading() {
            None => (C::zero(), Self::zero()),
            Some(lc) if lc.is_one() => (C::one(), self.clone()),
            Some(lc) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                (lc.clone(), self.scale(&inv))
            }
        }
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division: `self = quot * d + rem` with `deg rem < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        let dd = d.degree().ok_or(AlgebraError::DivisionByZero)?;
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lc_inv = d.coeffs[dd].inv()?;
        let d_monic = d.coeffs[dd].is_one();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let c = if d_monic {
                top.clone()
            } else {
                top.clone() * &lc_inv
            };
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] = rem[k + j].clone() - &(c.clone() * dj);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn exact_div(&self, d: &Self) -> Result<Self, AlgebraError> {
        if d.is_one() {
            return Ok(self.clone());
        }
        let (quot, rem) = self.divrem(d)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(AlgebraError::InexactDivision)
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_one() || b.is_one() {
            return Self::one();
        }
        if b.is_zero() {
            return a.monic().1;
        }
        if a.is_zero() {
            return b.monic().1;
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        let (mut r0, mut r1) = if a.degree() >= b.degree() {
            (a.monic().1, b.monic().1)
        } else {
            (b.monic().1, a.monic().1)
        };
        while !r1.is_zero() {
            let (_, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r.monic().1;
        }
        r0
    }

    pub fn lcm(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        let g = Self::gcd(a, b);
        let prod = a.monic().1 * b.monic().1;
        prod.exact_div(&g).expect("gcd divides product")
    }

    /// Apply a coefficient map.
    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Substitute `x -> c x`.
    pub fn scale_var(&self, c: &C) -> Self {
        let mut pw = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * &pw);
            pw = pw * c;
        }
        Self::from_coeffs(out)
    }
}

fn add_coeffs<C: Field>(a: &[C], b: &[C], negate_b: bool) -> Vec<C> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => {
                if negate_b {
                    x.clone() - y
                } else {
                    x.clone() + y
                }
            }
            (Some(x), None) => x.clone(),
            (None, Some(y)) => {
                if negate_b {
                    -y.clone()
                } else {
                    y.clone()
                }
            }
            (None, None) => unreachable!(),
        })
        .collect()
}

fn mul_coeffs<C: Field>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].clone() + &(x.clone() * y);
            }
        }
    }
    out
}

impl<C: Field> Add<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        Poly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, false))
    }
}

impl<C: Field> Sub<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        Poly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, true))
    }
}

impl<C: Field> Mul<&Poly<C>> for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        Poly::from_coeffs(mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl<C: Field> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Field> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Field> $tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: &Poly<C>) -> Poly<C> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Field> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Field> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = var_name(C::depth() + 1);
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative_display() && c.is_atomic();
            let body = if neg { (-c.clone()).to_string() } else { c.to_string() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                if c.is_atomic() {
                    write!(f, "{body}")?;
                } else {
                    write!(f, "({body})")?;
                }
            } else if body == "1" {
                write!(f, "{mono}")?;
            } else if c.is_atomic() {
                write!(f, "{body}*{mono}")?;
            } else {
                write!(f, "({body})*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, Q};

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::from_coeffs(c.iter().map(|&v| Q::from_i64(v)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (quot, rem) = a.divrem(&b).unwrap();
        assert_eq!(quot, p(&[1, 1, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn gcd_is_monic() {
        let a = p(&[2, -2]) * p(&[3, 1]);
        let b = p(&[-1, 1]) * p(&[5, 1]);
        assert_eq!(Poly::gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn eval_horner() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.eval(&rat(1, 2)), rat(11, 4));
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(
            p(&[1, 1]).divrem(&Poly::zero()),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 2]).to_string(), "2*q^2 - 1");
    }
}
