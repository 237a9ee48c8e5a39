//! Scalar abstractions.
//!
//! Exact code is generic over [`Coefficient`] (machine integers or
//! [`BigInt`]); numeric cross-checks are generic over [`Real`] (`f32`, `f64` or
//! the arbitrary precision [`MpFloat`]).

use std::cell::RefCell;
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Exact integer scalar used for polynomial and cyclotomic-integer
/// coefficients.
pub trait Coefficient:
    Clone + Debug + Display + PartialEq + Eq + Ord + Signed + Integer + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

macro_rules! coefficient_impl {
    ($($t:ty),+) => {
        $(
            impl Coefficient for $t {
                fn from_i64(v: i64) -> Self {
                    v as $t
                }
                fn from_bigint(v: &BigInt) -> Option<Self> {
                    <$t>::try_from(v).ok()
                }
                fn to_bigint(&self) -> BigInt {
                    BigInt::from(*self)
                }
            }
        )+
    };
}

coefficient_impl!(i64, i128);

impl Coefficient for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Real scalar with transcendental functions.
///
/// Constructors take a precision in bits which implementations are free to
/// ignore (the machine floats do). Binary operations on [`MpFloat`] run at the larger
/// precision of the two operands.
pub trait Real:
    Clone + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn from_i64(v: i64, bits: usize) -> Self;
    fn from_bigint(v: &BigInt, bits: usize) -> Self;
    fn pi(bits: usize) -> Self;
    fn cos(&self) -> Self;
    fn sin(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// Nearest integer, `None` for non-finite values.
    fn round_to_bigint(&self) -> Option<BigInt>;

    fn from_ratio(v: &BigRational, bits: usize) -> Self {
        Self::from_bigint(v.numer(), bits) / Self::from_bigint(v.denom(), bits)
    }

    /// `cos(2*pi*num/den)`.
    fn cos_turns(num: i64, den: u64, bits: usize) -> Self {
        (Self::pi(bits) * Self::from_i64(2 * num, bits) / Self::from_i64(den as i64, bits)).cos()
    }
}

macro_rules! real_impl {
    ($($t:ident),+) => {
        $(
            impl Real for $t {
                fn from_i64(v: i64, _bits: usize) -> Self {
                    v as $t
                }
                fn from_bigint(v: &BigInt, _bits: usize) -> Self {
                    v.to_f64().map_or($t::NAN, |x| x as $t)
                }
                fn pi(_bits: usize) -> Self {
                    std::$t::consts::PI
                }
                fn cos(&self) -> Self {
                    $t::cos(*self)
                }
                fn sin(&self) -> Self {
                    $t::sin(*self)
                }
                fn exp(&self) -> Self {
                    $t::exp(*self)
                }
                fn ln(&self) -> Self {
                    $t::ln(*self)
                }
                fn abs(&self) -> Self {
                    $t::abs(*self)
                }
                fn to_f64(&self) -> f64 {
                    *self as f64
                }
                fn round_to_bigint(&self) -> Option<BigInt> {
                    if self.is_finite() {
                        BigInt::from_f64(self.round() as f64)
                    } else {
                        None
                    }
                }
            }
        )+
    };
}

real_impl!(f32, f64);

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

const RM: RoundingMode = RoundingMode::ToEven;

/// Arbitrary precision binary float carrying its working precision.
#[derive(Clone, Debug)]
pub struct MpFloat {
    value: BigFloat,
    bits: usize,
}

impl MpFloat {
    pub fn precision(&self) -> usize {
        self.bits
    }

    pub fn inner(&self) -> &BigFloat {
        &self.value
    }

    fn wrap(value: BigFloat, bits: usize) -> Self {
        MpFloat { value, bits }
    }

    fn with_consts<F: FnOnce(&mut Consts) -> BigFloat>(f: F) -> BigFloat {
        CONSTS.with(|cc| f(&mut cc.borrow_mut()))
    }
}

impl Display for MpFloat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! mp_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for MpFloat {
            type Output = MpFloat;
            fn $method(self, rhs: MpFloat) -> MpFloat {
                let bits = self.bits.max(rhs.bits);
                MpFloat::wrap(self.value.$method(&rhs.value, bits, RM), bits)
            }
        }
    };
}

mp_binop!(Add, add);
mp_binop!(Sub, sub);
mp_binop!(Mul, mul);
mp_binop!(Div, div);

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        MpFloat::wrap(self.value.neg(), self.bits)
    }
}

impl Real for MpFloat {
    fn from_i64(v: i64, bits: usize) -> Self {
        let mut value = BigFloat::from_i64(v, bits.max(64));
        value.set_precision(bits, RM).ok();
        MpFloat::wrap(value, bits)
    }

    fn from_bigint(v: &BigInt, bits: usize) -> Self {
        // Horner over 32-bit digits; every partial value is exact at
        // precision >= bit length, and rounds once otherwise.
        let work = bits.max(v.bits() as usize + 64);
        let (sign, digits) = v.to_u32_digits();
        let base = BigFloat::from_u64(1 << 32, work);
        let mut acc = BigFloat::from_u64(0, work);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, work, RM).add(&BigFloat::from_u64(*d as u64, work), work, RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        acc.set_precision(bits, RM).ok();
        MpFloat::wrap(acc, bits)
    }

    fn pi(bits: usize) -> Self {
        MpFloat::wrap(Self::with_consts(|cc| cc.pi(bits, RM)), bits)
    }

    fn cos(&self) -> Self {
        MpFloat::wrap(Self::with_consts(|cc| self.value.cos(self.bits, RM, cc)), self.bits)
    }

    fn sin(&self) -> Self {
        MpFloat::wrap(Self::with_consts(|cc| self.value.sin(self.bits, RM, cc)), self.bits)
    }

    fn exp(&self) -> Self {
        MpFloat::wrap(Self::with_consts(|cc| self.value.exp(self.bits, RM, cc)), self.bits)
    }

    fn ln(&self) -> Self {
        MpFloat::wrap(Self::with_consts(|cc| self.value.ln(self.bits, RM, cc)), self.bits)
    }

    fn abs(&self) -> Self {
        MpFloat::wrap(self.value.abs(), self.bits)
    }

    fn to_f64(&self) -> f64 {
        if self.value.is_zero() {
            return 0.0;
        }
        match self.value.as_raw_parts() {
            Some((words, _, sign, exponent, _)) => {
                let top = *words.last().unwrap_or(&0) as f64;
                let v = top * 2f64.powi(exponent - 64);
                if sign == Sign::Neg {
                    -v
                } else {
                    v
                }
            }
            None => f64::NAN,
        }
    }

    fn round_to_bigint(&self) -> Option<BigInt> {
        if self.value.is_nan() || self.value.is_inf() {
            return None;
        }
        if self.value.is_zero() {
            return Some(BigInt::zero());
        }
        let rounded = self.value.round(0, RM);
        if rounded.is_zero() {
            return Some(BigInt::zero());
        }
        let (words, _, sign, exponent, _) = rounded.as_raw_parts()?;
        // value = 0.mantissa * 2^exponent with the mantissa spanning all words
        let mut m = BigInt::zero();
        for w in words.iter().rev() {
            m = (m << 64) + BigInt::from(*w);
        }
        let shift = exponent as i64 - 64 * words.len() as i64;
        let v = if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize };
        Some(if sign == Sign::Neg { -v } else { v })
    }
}
