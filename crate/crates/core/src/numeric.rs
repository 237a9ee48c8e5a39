//! Floating-point expansion of `prod (x - zeta_n^j)` over the roots selected
//! by `(j, n)_A in S`, used as an independent check of the exact
//! constructions.

use num_bigint::BigInt;

use crate::divisor_set::DivisorSet;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{MpFloat, Real};
use crate::system::{positive, RegularSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootProductOracle {
    /// Largest `n` accepted; expansion cost grows quadratically in `n`.
    pub max_n: u64,
    pub precision_bits: usize,
}

impl Default for RootProductOracle {
    fn default() -> Self {
        RootProductOracle { max_n: 200, precision_bits: 128 }
    }
}

impl RootProductOracle {
    pub fn with_precision(precision_bits: usize) -> Self {
        RootProductOracle { precision_bits, ..Self::default() }
    }

    /// Maximum distance from an integer accepted for a coefficient.
    pub fn tolerance(&self) -> f64 {
        2f64.powi(-((self.precision_bits / 4) as i32)).min(1e-10)
    }

    /// Expand with arbitrary precision floats.
    pub fn expand(&self, sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<Poly<BigInt>> {
        self.expand_in::<MpFloat>(sys, set, n)
    }

    /// Expand in the real type `R` and round every coefficient, failing with
    /// `PrecisionExhausted` when a coefficient is not within tolerance of an
    /// integer.
    pub fn expand_in<R: Real>(&self, sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<Poly<BigInt>> {
        positive(n)?;
        if n > self.max_n {
            return Err(Error::OracleBound { n, max_n: self.max_n });
        }
        sys.a_divisors(n)?;
        let bits = self.precision_bits;
        let selected: Vec<u64> = (1..=n).filter(|&j| set.contains(sys.gcd_a(j, n))).collect();
        // (j, n)_A only depends on gcd(j, n), so j and n - j are selected together
        // and the non-real roots pair into real quadratics.
        let mut linear = Vec::new();
        let mut quadratic = Vec::new();
        for &j in &selected {
            match (2 * j).cmp(&n) {
                _ if j == n => linear.push(-1),
                std::cmp::Ordering::Equal => linear.push(1),
                std::cmp::Ordering::Less => quadratic.push(j),
                std::cmp::Ordering::Greater => {}
            }
        }
        let one = R::from_i64(1, bits);
        let mut coeffs = vec![one.clone()];
        for c in linear {
            coeffs = mul_linear(&coeffs, &R::from_i64(c, bits));
        }
        for j in leja_order(&quadratic, n) {
            let two_cos = R::from_i64(2, bits) * R::cos_turns(j as i64, n, bits);
            coeffs = mul_quadratic(&coeffs, &two_cos);
        }
        let tol = self.tolerance();
        let mut out = Vec::with_capacity(coeffs.len());
        for (index, c) in coeffs.iter().enumerate() {
            let rounded = c.round_to_bigint().ok_or(Error::PrecisionExhausted { n, index, distance: f64::INFINITY })?;
            let distance = (c.clone() - R::from_bigint(&rounded, bits)).abs().to_f64();
            if distance.is_nan() || distance >= tol {
                return Err(Error::PrecisionExhausted { n, index, distance });
            }
            out.push(rounded);
        }
        Ok(Poly::new(out))
    }
}

/// `numeric_root_product_oracle` with the default bound and the given precision.
pub fn numeric_root_product_oracle(
    sys: &RegularSystem,
    set: &DivisorSet,
    n: u64,
    precision_bits: usize,
) -> Result<Poly<BigInt>> {
    RootProductOracle::with_precision(precision_bits).expand(sys, set, n)
}

/// Multiply by `x + c`.
fn mul_linear<R: Real>(p: &[R], c: &R) -> Vec<R> {
    let mut out = Vec::with_capacity(p.len() + 1);
    out.push(p[0].clone() * c.clone());
    for i in 1..p.len() {
        out.push(p[i - 1].clone() + p[i].clone() * c.clone());
    }
    out.push(p[p.len() - 1].clone());
    out
}

/// Multiply by `x^2 - t x + 1`.
fn mul_quadratic<R: Real>(p: &[R], t: &R) -> Vec<R> {
    let len = p.len() + 2;
    (0..len)
        .map(|i| {
            let at = |k: isize| if k >= 0 && (k as usize) < p.len() { Some(p[k as usize].clone()) } else { None };
            let i = i as isize;
            let mut acc = at(i);
            if let Some(v) = at(i - 1) {
                let term = -(v * t.clone());
                acc = Some(acc.map_or(term.clone(), |a| a + term));
            }
            if let Some(v) = at(i - 2) {
                acc = Some(acc.map_or(v.clone(), |a| a + v));
            }
            acc.expect("every output slot has a contribution")
        })
        .collect()
}

/// Greedy Leja ordering of the angles `2 pi j / n`: each next root maximises
/// the product of distances to those already taken. Multiplying in this
/// order keeps intermediate coefficients small.
fn leja_order(js: &[u64], n: u64) -> Vec<u64> {
    let point = |j: u64| {
        let a = std::f64::consts::TAU * j as f64 / n as f64;
        (a.cos(), a.sin())
    };
    let mut remaining: Vec<u64> = js.to_vec();
    let mut score = vec![0f64; remaining.len()];
    let mut out = Vec::with_capacity(js.len());
    while !remaining.is_empty() {
        let best = (0..remaining.len())
            .max_by(|&a, &b| score[a].total_cmp(&score[b]).then(remaining[b].cmp(&remaining[a])))
            .unwrap();
        let j = remaining.swap_remove(best);
        score.swap_remove(best);
        let (x, y) = point(j);
        for (k, s) in remaining.iter().zip(score.iter_mut()) {
            let (u, v) = point(*k);
            // the conjugate partner is multiplied in with the same quadratic
            *s += ((x - u).hypot(y - v) * (x - u).hypot(y + v)).ln();
        }
        out.push(j);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{cyclotomic, phi_as};

    #[test]
    fn matches_classical_cyclotomics() {
        let d = RegularSystem::all_divisors();
        for n in [1u64, 2, 3, 4, 12, 30, 105] {
            assert_eq!(numeric_root_product_oracle(&d, &DivisorSet::one(), n, 128).unwrap(), *cyclotomic(n));
        }
    }

    #[test]
    fn matches_exact_constructions() {
        let oracle = RootProductOracle::default();
        for sys in RegularSystem::builtins() {
            for set in DivisorSet::builtins() {
                for n in [1u64, 6, 16, 36, 48, 60] {
                    assert_eq!(oracle.expand(&sys, &set, n).unwrap(), phi_as(&sys, &set, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn double_precision_suffices_for_small_n() {
        let oracle = RootProductOracle::default();
        let d = RegularSystem::all_divisors();
        assert_eq!(oracle.expand_in::<f64>(&d, &DivisorSet::one(), 105).unwrap(), *cyclotomic(105));
    }

    #[test]
    fn bound_and_precision_errors() {
        let d = RegularSystem::all_divisors();
        let oracle = RootProductOracle::default();
        assert_eq!(oracle.expand(&d, &DivisorSet::one(), 201), Err(Error::OracleBound { n: 201, max_n: 200 }));
        let err = oracle.expand_in::<f32>(&d, &DivisorSet::non_one(), 60).unwrap_err();
        assert!(matches!(err, Error::PrecisionExhausted { n: 60, .. }), "{err:?}");
    }

    #[test]
    fn tolerance_tracks_precision() {
        assert_eq!(RootProductOracle::with_precision(128).tolerance(), 1e-10);
        assert_eq!(RootProductOracle::with_precision(256).tolerance(), 2f64.powi(-64));
    }
}
