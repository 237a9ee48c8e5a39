//! Dense univariate polynomials with exact integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{Coefficient, Real};

/// Coefficients in ascending degree; the zero polynomial has none and the
/// leading coefficient is otherwise nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    /// `c x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x^d - 1`
    pub fn x_pow_minus_one(d: usize) -> Self {
        let mut coeffs = vec![T::zero(); d + 1];
        coeffs[0] = -T::one();
        coeffs[d] = coeffs[d].clone() + T::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Coefficients reversed, i.e. `x^deg p(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `p(x^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k > 0, "compose_power needs k >= 1");
        let Some(deg) = self.degree() else { return Self::zero() };
        let mut coeffs = vec![T::zero(); deg * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Evaluation in a real scalar type.
    pub fn eval_real<R: Real>(&self, x: &R, bits: usize) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::from_i64(0, bits), |acc, c| acc * x.clone() + R::from_bigint(&c.to_bigint(), bits))
    }

    /// Quotient and remainder; the divisor's leading coefficient must divide
    /// every leading term met, otherwise `InexactDivision` is reported.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let lead = divisor.coeffs[dd].clone();
        let Some(pd) = self.degree() else { return Ok((Self::zero(), Self::zero())) };
        if pd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let support: Vec<(usize, T)> = divisor.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); pd - dd + 1];
        for i in (0..=pd - dd).rev() {
            let top = std::mem::replace(&mut rem[i + dd], T::zero());
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision { remainder_degree: i + dd });
            }
            for (j, c) in &support {
                rem[i + j] = rem[i + j].clone() - q.clone() * c.clone();
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; fails with `InexactDivision` on a nonzero remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        match r.degree() {
            None => Ok(q),
            Some(remainder_degree) => Err(Error::InexactDivision { remainder_degree }),
        }
    }

    /// Reinterpret the coefficients in another scalar type.
    pub fn convert<U: Coefficient>(&self) -> Option<Poly<U>> {
        self.coeffs.iter().map(|c| U::from_bigint(&c.to_bigint())).collect::<Option<Vec<_>>>().map(Poly::new)
    }

    pub fn to_bigint(&self) -> Poly<BigInt> {
        Poly::new(self.coeffs.iter().map(Coefficient::to_bigint).collect())
    }
}

impl<T: Coefficient> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Coefficient> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Coefficient> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coefficient> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // iterate over the sparser operand's nonzero terms
        let (sparse, dense) = if self.coeffs.iter().filter(|c| !c.is_zero()).count()
            <= rhs.coeffs.iter().filter(|c| !c.is_zero()).count()
        {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in sparse.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in dense.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Poly::new(out)
    }
}

impl<T: Coefficient> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        &self * &rhs
    }
}

impl<T: Coefficient> std::iter::Product for Poly<T> {
    fn product<I: Iterator<Item = Poly<T>>>(iter: I) -> Self {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}

impl<T: Coefficient> fmt::Display for Poly<T> {
    /// Human-readable expansion, highest degree first: `x^3 - x^2 + x - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// A formal product `prod base^exponent` with signed exponents.
#[derive(Clone, Debug, Default)]
pub struct RationalFunctionProduct<T> {
    factors: Vec<(Poly<T>, i64)>,
}

impl<T: Coefficient> RationalFunctionProduct<T> {
    pub fn new() -> Self {
        RationalFunctionProduct { factors: Vec::new() }
    }

    pub fn push(&mut self, base: Poly<T>, exponent: i64) {
        if exponent != 0 {
            self.factors.push((base, exponent));
        }
    }

    pub fn factors(&self) -> &[(Poly<T>, i64)] {
        &self.factors
    }

    /// Multiply every positive-exponent factor, then exact-divide by the
    /// negative ones in insertion order. A nonzero remainder means the
    /// product is not a polynomial.
    pub fn resolve(&self) -> Result<Poly<T>> {
        let mut acc = Poly::one();
        for (base, e) in self.factors.iter().filter(|(_, e)| *e > 0) {
            for _ in 0..*e {
                acc = &acc * base;
            }
        }
        for (base, e) in self.factors.iter().filter(|(_, e)| *e < 0) {
            for _ in 0..e.unsigned_abs() {
                acc = acc.exact_div(base)?;
            }
        }
        Ok(acc)
    }
}

impl<T: Coefficient> FromIterator<(Poly<T>, i64)> for RationalFunctionProduct<T> {
    fn from_iter<I: IntoIterator<Item = (Poly<T>, i64)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (b, e) in iter {
            out.push(b, e);
        }
        out
    }
}
