use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Q};
use super::poly::Poly;
use crate::error::AlgebraError;

/// Rational functions `C(x)`, kept as a reduced fraction of polynomials.
///
/// Canonical form: the denominator is monic and coprime to the numerator;
/// zero is `0/1`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Frac<C> {
    num: Poly<C>,
    den: Poly<C>,
}

/// Rational functions in `q` over the rationals.
pub type RatFunc = Frac<Q>;
/// Polynomials in the spectral parameter `z` with coefficients in `Q(q)`.
pub type PolyZ = Poly<RatFunc>;
/// Rational functions in `z` over `Q(q)`.
pub type RatFuncZ = Frac<RatFunc>;

impl<C: Field> Frac<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<C>, den: Poly<C>) -> Self {
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_unit(num, den)
    }

    /// Make the denominator monic; assumes the pair is already coprime.
    fn normalize_unit(num: Poly<C>, den: Poly<C>) -> Self {
        let (lc, den) = den.monic();
        let num = if lc.is_one() {
            num
        } else {
            num.scale(&lc.inv().expect("nonzero leading coefficient"))
        };
        Self { num, den }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_const(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The adjoined variable.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    /// `var^e` for any integer `e`.
    pub fn var_pow(e: i64) -> Self {
        let m = Poly::monomial(C::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_poly(m)
        } else {
            Self {
                num: Poly::one(),
                den: m,
            }
        }
    }

    pub fn numer(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if the function does not depend on the variable.
    pub fn as_const(&self) -> Option<C> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    /// Evaluate at a point of the coefficient field.
    pub fn eval(&self, x: &C) -> Result<C, AlgebraError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::EvaluationPole);
        }
        self.num.eval(x).div(&d)
    }

    /// Substitute `var -> c * var`.
    pub fn scale_var(&self, c: &C) -> Result<Self, AlgebraError> {
        if c.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Self::new(self.num.scale_var(c), self.den.scale_var(c))
    }

    /// Substitute the variable by an arbitrary element of a field `F` that
    /// receives the coefficients through `embed`.
    pub fn substitute<F: Field>(
        &self,
        value: &F,
        embed: &impl Fn(&C) -> F,
    ) -> Result<F, AlgebraError> {
        let horner = |p: &Poly<C>| {
            let mut acc = F::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc * value + &embed(c);
            }
            acc
        };
        let d = horner(&self.den);
        if d.is_zero() {
            return Err(AlgebraError::EvaluationPole);
        }
        horner(&self.num).div(&d)
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let rn = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.num.is_zero() {
            return Self {
                num: rn,
                den: rhs.den.clone(),
            };
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rn;
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::reduce(num, self.den.clone());
        }
        if self.den.is_one() {
            return Self {
                num: &(&self.num * &rhs.den) + &rn,
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            return Self {
                num: &self.num + &(&rn * &self.den),
                den: self.den.clone(),
            };
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rn * &self.den);
            return Self {
                num,
                den: &self.den * &rhs.den,
            };
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rn * &b1);
        let den = &self.den * &d1;
        let g2 = Poly::gcd(&num, &g);
        if g2.is_one() {
            Self::normalize_unit(num, den)
        } else {
            Self::normalize_unit(
                num.exact_div(&g2).expect("gcd divides"),
                den.exact_div(&g2).expect("gcd divides"),
            )
        }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel so the product is reduced without a full gcd
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let c = rhs.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        Self::normalize_unit(&a * &c, &b * &d)
    }
}

impl<C: Field> Field for Frac<C> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::from_const(C::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        if self.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize_unit(self.den.clone(), self.num.clone()))
    }
    fn depth() -> usize {
        C::depth() + 1
    }
    fn is_atomic(&self) -> bool {
        self.den.is_one()
            && match self.num.coeffs().iter().filter(|c| !c.is_zero()).count() {
                0 => true,
                1 => self.num.coeffs().iter().all(|c| c.is_zero() || c.is_atomic()),
                _ => false,
            }
    }
    fn is_negative_display(&self) -> bool {
        self.den.is_one()
            && self
                .num
                .leading()
                .is_some_and(|c| c.is_atomic() && c.is_negative_display())
    }
}

impl<C: Field> Add<&Frac<C>> for Frac<C> {
    type Output = Frac<C>;
    fn add(self, rhs: &Frac<C>) -> Frac<C> {
        self.add_impl(rhs, false)
    }
}
impl<C: Field> Sub<&Frac<C>> for Frac<C> {
    type Output = Frac<C>;
    fn sub(self, rhs: &Frac<C>) -> Frac<C> {
        self.add_impl(rhs, true)
    }
}
impl<C: Field> Mul<&Frac<C>> for Frac<C> {
    type Output = Frac<C>;
    fn mul(self, rhs: &Frac<C>) -> Frac<C> {
        self.mul_impl(rhs)
    }
}
impl<C: Field> Add for Frac<C> {
    type Output = Frac<C>;
    fn add(self, rhs: Frac<C>) -> Frac<C> {
        self.add_impl(&rhs, false)
    }
}
impl<C: Field> Sub for Frac<C> {
    type Output = Frac<C>;
    fn sub(self, rhs: Frac<C>) -> Frac<C> {
        self.add_impl(&rhs, true)
    }
}
impl<C: Field> Mul for Frac<C> {
    type Output = Frac<C>;
    fn mul(self, rhs: Frac<C>) -> Frac<C> {
        self.mul_impl(&rhs)
    }
}
impl<C: Field> Add<&Frac<C>> for &Frac<C> {
    type Output = Frac<C>;
    fn add(self, rhs: &Frac<C>) -> Frac<C> {
        self.add_impl(rhs, false)
    }
}
impl<C: Field> Sub<&Frac<C>> for &Frac<C> {
    type Output = Frac<C>;
    fn sub(self, rhs: &Frac<C>) -> Frac<C> {
        self.add_impl(rhs, true)
    }
}
impl<C: Field> Mul<&Frac<C>> for &Frac<C> {
    type Output = Frac<C>;
    fn mul(self, rhs: &Frac<C>) -> Frac<C> {
        self.mul_impl(rhs)
    }
}
impl<C: Field> Neg for Frac<C> {
    type Output = Frac<C>;
    fn neg(self) -> Frac<C> {
        Frac {
            num: -self.num,
            den: self.den,
        }
    }
}
impl<C: Field> Neg for &Frac<C> {
    type Output = Frac<C>;
    fn neg(self) -> Frac<C> {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<C: Field> fmt::Display for Frac<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly<C>| {
            let s = p.to_string();
            let single = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
                && p.coeffs().iter().all(|c| c.is_zero() || c.is_atomic());
            if single {
                s
            } else {
                format!("({s})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl RatFunc {
    /// The element `q`.
    pub fn q() -> Self {
        Self::var()
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::var_pow(e)
    }

    /// `(-q)^e`.
    pub fn neg_q_pow(e: i64) -> Self {
        let m = Self::var_pow(e);
        if e.rem_euclid(2) == 1 {
            -m
        } else {
            m
        }
    }

    /// The quantum integer `[k] = (q^k - q^-k) / (q - q^-1)`.
    pub fn q_int(k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let num = Self::q_pow(k) - &Self::q_pow(-k);
        let den = Self::q() - &Self::q_pow(-1);
        num.div(&den).expect("q - 1/q is nonzero")
    }
}

impl RatFuncZ {
    /// The spectral parameter `z`.
    pub fn z() -> Self {
        Self::var()
    }

    pub fn q() -> Self {
        Self::from_const(RatFunc::q())
    }

    pub fn from_ratfunc(c: RatFunc) -> Self {
        Self::from_const(c)
    }
}
