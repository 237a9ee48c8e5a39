use num_bigint::BigInt;
use proptest::prelude::*;
use rayon::prelude::*;

use cyclo_core::coefficients::coeff_moller_endo;
use cyclo_core::divisor_set::{euler_phi_as, mobius_as, ramanujan_as};
use cyclo_core::identities::{verify_kappa, verify_palindrome};
use cyclo_core::{phi_a, phi_as, CyclotomicInteger, DivisorSet, IntPolynomial, RegularSystem};

#[test]
fn palindrome_law_up_to_200() {
    for sys in RegularSystem::builtins() {
        for set in DivisorSet::builtins() {
            (1..=200u64).into_par_iter().for_each(|n| {
                let r = verify_palindrome(&sys, &set, n).unwrap();
                assert!(r.passed(), "{r}");
            });
        }
    }
}

#[test]
fn kappa_substitution_up_to_300() {
    for sys in RegularSystem::builtins() {
        (1..=300u64).into_par_iter().for_each(|n| {
            let r = verify_kappa(&sys, n).unwrap();
            assert!(r.passed(), "{r}");
        });
    }
}

#[test]
fn extreme_coefficients() {
    for sys in RegularSystem::builtins() {
        for set in DivisorSet::builtins() {
            (1..=200u64).into_par_iter().for_each(|n| {
                let p = phi_as(&sys, &set, n).unwrap();
                let mu = mobius_as(&sys, &set, n);
                let sign = if set.rho(n) % 2 == 0 { 1 } else { -1 };
                let deg = euler_phi_as(&sys, &set, n) as usize;
                assert_eq!(coeff_moller_endo(&sys, &set, n, 1).unwrap(), BigInt::from(-sign * mu), "{sys} n={n}");
                if deg >= 1 {
                    assert_eq!(p.coeff(deg - 1), BigInt::from(-mu), "{sys} {} n={n}", set.name());
                }
                assert_eq!(p.coeff(0), BigInt::from(sign));
            });
        }
    }
}

#[test]
fn root_of_unity_sums_are_ramanujan_sums() {
    for sys in RegularSystem::builtins() {
        for set in DivisorSet::builtins() {
            for n in 1..=60u64 {
                let members: Vec<u64> = (1..=n).filter(|&j| set.contains(sys.gcd_a(j, n))).collect();
                for k in 0..=n {
                    let sum = CyclotomicInteger::from_exponents(n, members.iter().map(|j| j * k % n));
                    assert_eq!(sum.as_integer(), Some(BigInt::from(ramanujan_as(&sys, &set, n, k))));
                }
            }
        }
    }
}

#[test]
fn machine_width_polynomials_agree_with_bigint() {
    let u = RegularSystem::unitary();
    for n in 1..=120u64 {
        let big = phi_a(&u, n);
        let narrow = big.convert::<i64>().expect("small coefficients");
        assert_eq!(narrow.to_bigint(), big);
        let divided = IntPolynomial::x_pow_minus_one(n as usize).exact_div(&big).unwrap();
        let narrow_divided = cyclo_core::Poly::<i64>::x_pow_minus_one(n as usize).exact_div(&narrow).unwrap();
        assert_eq!(narrow_divided.to_bigint(), divided);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_a_divides_x_n_minus_1(n in 1u64..400, which in 0usize..3) {
        let sys = RegularSystem::builtins()[which].clone();
        let p = phi_a(&sys, n);
        let (_, r) = IntPolynomial::x_pow_minus_one(n as usize).div_rem(&p).unwrap();
        prop_assert!(r.is_zero());
        prop_assert_eq!(p.degree(), Some(sys.euler_phi_a(n) as usize));
    }

    #[test]
    fn phi_as_vanishes_only_on_selected_roots(n in 2u64..80, which in 0usize..3, set_idx in 0usize..4) {
        // evaluate at every n-th root of unity exactly via reduction mod Phi_m
        let sys = RegularSystem::builtins()[which].clone();
        let set = DivisorSet::builtins()[set_idx].clone();
        let p = phi_as(&sys, &set, n).unwrap();
        for j in 1..=n {
            let value = CyclotomicInteger::from_weighted_exponents(
                n,
                p.coeffs().iter().enumerate().map(|(i, c)| ((i as u64 * j) % n, c.clone())),
            );
            prop_assert_eq!(value.is_zero(), set.contains(sys.gcd_a(j, n)), "j={}", j);
        }
    }
}
