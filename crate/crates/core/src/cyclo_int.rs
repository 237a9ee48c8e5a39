//! Exact elements of `Z[zeta_m]`, stored as residues modulo `Phi_m`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclotomic::cyclotomic_in;
use crate::poly::Poly;
use crate::scalar::Coefficient;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloInt<T> {
    m: u64,
    residue: Poly<T>,
}

impl<T: Coefficient> CycloInt<T> {
    fn reduce(m: u64, p: Poly<T>) -> Self {
        assert!(m > 0, "conductor must be positive");
        let phi = cyclotomic_in::<T>(m);
        let residue = if p.degree() >= phi.degree() { p.div_rem(&phi).expect("Phi_m is monic").1 } else { p };
        CycloInt { m, residue }
    }

    pub fn zero(m: u64) -> Self {
        CycloInt { m, residue: Poly::zero() }
    }

    pub fn from_integer(m: u64, c: T) -> Self {
        CycloInt { m, residue: Poly::new(vec![c]) }
    }

    pub fn one(m: u64) -> Self {
        Self::from_integer(m, T::one())
    }

    /// `zeta_m^r`.
    pub fn root_of_unity(m: u64, r: u64) -> Self {
        Self::reduce(m, Poly::monomial(T::one(), (r % m) as usize))
    }

    /// `sum c_r zeta_m^r` from `(r, c_r)` pairs; residues are taken mod `m`.
    pub fn from_weighted_exponents(m: u64, terms: impl IntoIterator<Item = (u64, T)>) -> Self {
        let mut coeffs = vec![T::zero(); m as usize];
        for (r, c) in terms {
            let slot = &mut coeffs[(r % m) as usize];
            *slot = slot.clone() + c;
        }
        Self::reduce(m, Poly::new(coeffs))
    }

    /// `sum zeta_m^r` over a multiset of residues.
    pub fn from_exponents(m: u64, residues: impl IntoIterator<Item = u64>) -> Self {
        Self::from_weighted_exponents(m, residues.into_iter().map(|r| (r, T::one())))
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// Reduced representative of degree below `phi(m)`.
    pub fn residue(&self) -> &Poly<T> {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// The rational integer value, if the element lies in `Z`.
    pub fn as_integer(&self) -> Option<T> {
        match self.residue.degree() {
            None => Some(T::zero()),
            Some(0) => Some(self.residue.coeff(0)),
            Some(_) => None,
        }
    }

    /// Complex conjugation, `zeta_m -> zeta_m^-1`.
    pub fn conj(&self) -> Self {
        let m = self.m;
        Self::from_weighted_exponents(
            m,
            self.residue.coeffs().iter().enumerate().map(|(i, c)| ((m - i as u64 % m) % m, c.clone())),
        )
    }

    /// The same element viewed in `Z[zeta_big]` for a multiple `big` of `m`.
    pub fn lift(&self, big: u64) -> Self {
        assert!(big.is_multiple_of(self.m), "{big} is not a multiple of {}", self.m);
        Self::reduce(big, self.residue.compose_power((big / self.m) as usize))
    }

    fn same_conductor(&self, other: &Self) {
        assert_eq!(self.m, other.m, "cyclotomic integers with different conductors");
    }
}

impl<T: Coefficient> Add for &CycloInt<T> {
    type Output = CycloInt<T>;
    fn add(self, rhs: &CycloInt<T>) -> CycloInt<T> {
        self.same_conductor(rhs);
        CycloInt { m: self.m, residue: &self.residue + &rhs.residue }
    }
}

impl<T: Coefficient> Sub for &CycloInt<T> {
    type Output = CycloInt<T>;
    fn sub(self, rhs: &CycloInt<T>) -> CycloInt<T> {
        self.same_conductor(rhs);
        CycloInt { m: self.m, residue: &self.residue - &rhs.residue }
    }
}

impl<T: Coefficient> Neg for &CycloInt<T> {
    type Output = CycloInt<T>;
    fn neg(self) -> CycloInt<T> {
        CycloInt { m: self.m, residue: -&self.residue }
    }
}

impl<T: Coefficient> Mul for &CycloInt<T> {
    type Output = CycloInt<T>;
    fn mul(self, rhs: &CycloInt<T>) -> CycloInt<T> {
        self.same_conductor(rhs);
        CycloInt::reduce(self.m, &self.residue * &rhs.residue)
    }
}
