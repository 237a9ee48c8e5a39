//! Closed-form and recursive formulas for the coefficients of
//! `Phi_(A,S,n)`, independent of polynomial multiplication.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::divisor_set::{mobius_as, DivisorSet};
use crate::error::{Error, Result};
use crate::system::{positive, RegularSystem};

/// `(-1)^j binom(m, j)` for `j = 0..=max_j`, with `m` possibly negative.
fn signed_binomials(m: i64, max_j: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max_j as usize + 1);
    let mut b = BigInt::one();
    out.push(b.clone());
    for j in 1..=max_j {
        b = b * BigInt::from(m - j as i64 + 1) / BigInt::from(j);
        if b.is_zero() {
            break;
        }
        out.push(if j % 2 == 0 { b.clone() } else { -b.clone() });
    }
    out
}

/// Coefficient of `x^k` by summing over partitions `j_1 + 2 j_2 + ... + k j_k = k`:
///
/// `a(k) = (-1)^{rho_S(n)} sum prod_d (-1)^{j_d} binom(mu_(A,S)(n/d), j_d)`.
///
/// The exponent attached to a part `d` is `mu_(A,S)(n/d)` when `d in A(n)`
/// and zero otherwise, so only `A`-divisors of `n` appear as parts.
pub fn coeff_moller_endo(sys: &RegularSystem, set: &DivisorSet, n: u64, k: u64) -> Result<BigInt> {
    positive(n)?;
    let mut parts: Vec<(u64, Vec<BigInt>)> = sys
        .a_divisors(n)?
        .into_iter()
        .filter(|&d| d <= k.max(1))
        .filter_map(|d| {
            let m = mobius_as(sys, set, n / d);
            (m != 0).then(|| (d, signed_binomials(m, k / d)))
        })
        .collect();
    // largest parts first keeps the search tree narrow
    parts.sort_by_key(|p| std::cmp::Reverse(p.0));
    let sum = partition_sum(&parts, k, BigInt::one());
    Ok(if set.rho(n) % 2 == 0 { sum } else { -sum })
}

fn partition_sum(parts: &[(u64, Vec<BigInt>)], rest: u64, acc: BigInt) -> BigInt {
    let Some(((d, weights), tail)) = parts.split_first() else {
        return if rest == 0 { acc } else { BigInt::zero() };
    };
    if tail.is_empty() {
        return match rest.div_rem(d) {
            (j, 0) => weights.get(j as usize).map_or_else(BigInt::zero, |w| acc * w),
            _ => BigInt::zero(),
        };
    }
    let mut total = BigInt::zero();
    for (j, w) in weights.iter().enumerate().take((rest / d) as usize + 1) {
        total += partition_sum(tail, rest - j as u64 * d, &acc * w);
    }
    total
}

/// All coefficients of `Phi_(A,n)` from the recursion
///
/// `a(k) = -mu_A(n)/k sum_{j=1}^k a(k-j) mu_A((j,n)_A) phi_A((j,n)_A)`,
///
/// valid when `n > 1` is a product of `A`-primitive integers
/// (`mu_A(n) != 0`). The seed `a(0) = 1` excludes `n = 1`, where
/// `Phi_1(0) = -1`.
pub fn coeff_recursion(sys: &RegularSystem, n: u64) -> Result<Vec<BigInt>> {
    if positive(n)? == 1 {
        return Err(Error::InvalidArgument("the coefficient recursion needs n > 1".into()));
    }
    sys.a_divisors(n)?;
    let mu_n = sys.mobius_a(n);
    if mu_n == 0 {
        return Err(Error::NotPrimitiveProduct { n });
    }
    let degree = sys.euler_phi_a(n) as usize;
    // weight(j) depends on j only through (j, n)_A
    let weights: Vec<i64> = (1..=degree as u64)
        .map(|j| {
            let g = sys.gcd_a(j, n);
            sys.mobius_a(g) * sys.euler_phi_a(g) as i64
        })
        .collect();
    let mut a = vec![BigInt::one()];
    for k in 1..=degree {
        let s: BigInt = (1..=k).filter(|&j| weights[j - 1] != 0).map(|j| &a[k - j] * weights[j - 1]).sum();
        let (q, r) = (s * -mu_n).div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::InexactCoefficient { k });
        }
        a.push(q);
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{cyclotomic, phi_a, phi_as};

    #[test]
    fn binomials_with_negative_top() {
        let b = signed_binomials(-1, 4);
        assert_eq!(b, [1, 1, 1, 1, 1].map(BigInt::from));
        let b = signed_binomials(2, 5);
        assert_eq!(b, [1, -2, 1].map(BigInt::from));
        let b = signed_binomials(-2, 3);
        assert_eq!(b, [1, 2, 3, 4].map(BigInt::from));
    }

    #[test]
    fn partition_formula_matches_phi_105() {
        let d = RegularSystem::all_divisors();
        let poly = cyclotomic(105);
        for k in 0..=48 {
            assert_eq!(coeff_moller_endo(&d, &DivisorSet::one(), 105, k).unwrap(), poly.coeff(k as usize), "k={k}");
        }
        assert_eq!(coeff_moller_endo(&d, &DivisorSet::one(), 105, 7).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn partition_formula_matches_products() {
        for sys in RegularSystem::builtins() {
            for set in DivisorSet::builtins() {
                for n in 1..=40u64 {
                    let poly = phi_as(&sys, &set, n).unwrap();
                    let deg = poly.degree().unwrap() as u64;
                    for k in 0..=deg + 2 {
                        let got = coeff_moller_endo(&sys, &set, n, k).unwrap();
                        assert_eq!(got, poly.coeff(k as usize), "{sys} {} n={n} k={k}", set.name());
                    }
                }
            }
        }
    }

    #[test]
    fn parts_outside_a_divisors_would_be_wrong() {
        // Phi*_4 = x^3 + x^2 + x + 1; letting d = 2 carry mu*(2) = -1 would
        // contribute an extra factor (1 - x^2)^-1 and break x^2.
        let u = RegularSystem::unitary();
        assert_eq!(coeff_moller_endo(&u, &DivisorSet::one(), 4, 2).unwrap(), BigInt::one());
    }

    #[test]
    fn recursion_matches_products() {
        for sys in RegularSystem::builtins() {
            for n in (2..=120u64).filter(|&n| sys.mobius_a(n) != 0) {
                let coeffs = coeff_recursion(&sys, n).unwrap();
                assert_eq!(coeffs, phi_a(&sys, n).into_coeffs(), "{sys} n={n}");
            }
        }
    }

    #[test]
    fn recursion_rejects_non_primitive_products() {
        let d = RegularSystem::all_divisors();
        assert_eq!(coeff_recursion(&d, 4), Err(Error::NotPrimitiveProduct { n: 4 }));
        let u = RegularSystem::unitary();
        assert!(coeff_recursion(&u, 4).is_ok());
        assert!(matches!(coeff_recursion(&u, 1), Err(Error::InvalidArgument(_))));
    }
}
