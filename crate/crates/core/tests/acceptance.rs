//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use cyclo_core::arith;
use cyclo_core::characters::{count_crt_coprime_brute, count_crt_coprime_closed, enumerate_characters};
use cyclo_core::coefficients::{coeff_moller_endo, coeff_recursion};
use cyclo_core::cyclotomic::{phi_as_classical_product, phi_as_mobius_product, phi_as_via_phi_a};
use cyclo_core::divisor_set::h_as;
use cyclo_core::identities::{
    class_exponent_sums, verify_exp_series, verify_gamma_lift, verify_menon_char_product, verify_menon_poly,
    verify_menon_sum, verify_ramanujan, ClassIndex, VerificationReport,
};
use cyclo_core::numeric::RootProductOracle;
use cyclo_core::{
    cyclotomic, inverse_cyclotomic, phi_a, phi_as, q_star, DivisorSet, IntPolynomial, RationalFunctionProduct,
    RegularSystem,
};

type Outcome = Result<String, String>;

fn first_failure(reports: impl IntoIterator<Item = VerificationReport>) -> Result<usize, String> {
    let mut count = 0;
    for r in reports {
        if !r.passed() {
            return Err(r.to_string());
        }
        count += 1;
    }
    Ok(count)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn systems() -> [RegularSystem; 3] {
    RegularSystem::builtins()
}

/// Routes R1, R2, R3 and the 128-bit root product agree for n <= 120.
fn construction_agreement() -> Outcome {
    let oracle = RootProductOracle::with_precision(128);
    let mut cases = Vec::new();
    for sys in systems() {
        for set in DivisorSet::builtins() {
            for n in 1..=120u64 {
                cases.push((sys.clone(), set.clone(), n));
            }
        }
    }
    let count = cases.len();
    cases.par_iter().try_for_each(|(sys, set, n)| {
        let tag = || format!("A={sys} S={} n={n}", set.name());
        let r1 = phi_as_mobius_product(sys, set, *n).map_err(|e| format!("{}: {e}", tag()))?;
        let r2 = phi_as_via_phi_a(sys, set, *n).map_err(|e| format!("{}: {e}", tag()))?;
        let r3 = phi_as_classical_product(sys, set, *n).map_err(|e| format!("{}: {e}", tag()))?;
        ensure(r1 == r2 && r1 == r3, || format!("{}: routes disagree: {r1} / {r2} / {r3}", tag()))?;
        let numeric = oracle.expand(sys, set, *n).map_err(|e| format!("{}: oracle: {e}", tag()))?;
        ensure(numeric == r1, || format!("{}: oracle {numeric} != exact {r1}", tag()))
    })?;
    Ok(format!("{count} instances, oracle tolerance {:e}", oracle.tolerance()))
}

/// Classical products and the unitary / square-set special cases.
fn classical_regressions() -> Outcome {
    (1..=300u64).into_par_iter().try_for_each(|n| {
        let prod: IntPolynomial = arith::divisors(n).into_iter().map(|d| (*cyclotomic(d)).clone()).product();
        ensure(prod == IntPolynomial::x_pow_minus_one(n as usize), || format!("prod Phi_d != x^{n} - 1"))?;
        let psi = &inverse_cyclotomic(n) * &cyclotomic(n);
        ensure(psi == IntPolynomial::x_pow_minus_one(n as usize), || format!("Psi_{n} Phi_{n} != x^{n} - 1"))
    })?;
    let u12 = phi_a(&RegularSystem::unitary(), 12);
    ensure(u12 == &*cyclotomic(6) * &*cyclotomic(12), || format!("Phi*_12 = {u12}"))?;
    let q4 = phi_as(&RegularSystem::all_divisors(), &DivisorSet::squares(), 4).map_err(|e| e.to_string())?;
    ensure(q4.to_string() == "x^3 - x^2 + x - 1", || format!("Q_4 = {q4}"))?;
    Ok("n <= 300, Phi*_12 = Phi_6 Phi_12, Q_4 = x^3 - x^2 + x - 1".into())
}

/// Core-divisor lifting for random g; three forms of the Ramanujan sum.
fn gamma_lifting() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let tables: Vec<Vec<i64>> = (0..50).map(|_| (0..=300).map(|_| rng.gen_range(-1000..=1000)).collect()).collect();
    let mut lifts = 0;
    for sys in systems() {
        let reports: Vec<VerificationReport> = tables
            .par_iter()
            .flat_map_iter(|t| {
                (1..=300u64).map(|n| verify_gamma_lift(&sys, |d| t[d as usize], n).expect("valid input"))
            })
            .collect();
        lifts += first_failure(reports)?;
    }
    let one = DivisorSet::one();
    let mut sums = 0;
    for sys in systems() {
        let reports: Vec<VerificationReport> = (1..=100u64)
            .into_par_iter()
            .flat_map_iter(|n| {
                let (sys, one) = (&sys, &one);
                (1..=100u64).map(move |k| verify_ramanujan(sys, one, n, k).expect("valid input"))
            })
            .collect();
        sums += first_failure(reports)?;
    }
    Ok(format!("{lifts} lifts (50 random g, n <= 300), {sums} Ramanujan triples (n, k <= 100)"))
}

/// Menon sum, Menon product and the character products.
fn menon_suite() -> Outcome {
    let d = RegularSystem::all_divisors();
    (1..=500u64).into_par_iter().try_for_each(|n| {
        let direct: u64 = (1..=n).filter(|&j| arith::gcd(j, n) == 1).map(|j| arith::gcd(j - 1, n)).sum();
        ensure(direct == arith::tau(n) * arith::euler_phi(n), || format!("Menon sum at n={n}: {direct}"))?;
        let id = |m: u64| BigRational::from_integer(BigInt::from(m));
        let r = verify_menon_sum(&d, id, n).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())
    })?;
    let mut polys = 0;
    for sys in systems() {
        let reports: Vec<_> =
            (1..=150u64).into_par_iter().map(|n| verify_menon_poly(&sys, n).expect("valid")).collect();
        polys += first_failure(reports)?;
    }
    let mut chars = 0;
    for sys in systems() {
        let reports: Vec<VerificationReport> = (1..=60u64)
            .into_par_iter()
            .flat_map_iter(|n| {
                let sys = &sys;
                enumerate_characters(n)
                    .expect("n >= 1")
                    .into_iter()
                    .map(move |chi| verify_menon_char_product(sys, n, &chi, 256).expect("valid input"))
            })
            .collect();
        chars += first_failure(reports)?;
        // primitive characters: the class-sum product alone is Phi_(A,n)
        (1..=60u64).into_par_iter().try_for_each(|n| {
            for chi in enumerate_characters(n).expect("n >= 1").into_iter().filter(|c| c.is_primitive()) {
                let sums = class_exponent_sums(&sys, n, ClassIndex::ShiftedGcd, chi.order(), |j| chi.exponent_at(j))
                    .map_err(|e| e.to_string())?;
                let product: RationalFunctionProduct<BigInt> =
                    sums.iter().map(|(&e, &t)| (IntPolynomial::x_pow_minus_one(e as usize), t)).collect();
                let resolved = product.resolve().map_err(|e| format!("{sys} n={n} {chi}: {e}"))?;
                ensure(resolved == phi_a(&sys, n), || format!("{sys} n={n} {chi}: primitive product {resolved}"))?;
            }
            Ok::<(), String>(())
        })?;
    }
    Ok(format!(
        "tau*phi n <= 500, {polys} Menon products (n <= 150), {chars} character products (n <= 60, exact + 256-bit)"
    ))
}

/// Character counts, induced characters, conductors, CRT counting lemma.
fn character_machinery() -> Outcome {
    (1..=100u64).into_par_iter().try_for_each(|n| {
        let chars = enumerate_characters(n).map_err(|e| e.to_string())?;
        ensure(chars.len() as u64 == arith::euler_phi(n), || format!("{} characters mod {n}", chars.len()))?;
        let units: Vec<u64> = (1..=n).filter(|&k| arith::gcd(k, n) == 1).collect();
        for chi in &chars {
            let star = chi.induced_primitive().map_err(|e| e.to_string())?;
            ensure(star.is_primitive() && star.modulus() == chi.conductor(), || format!("{chi}: induced {star}"))?;
            for &k in &units {
                let ord = num_integer::lcm(chi.order(), star.order());
                ensure(chi.value(k).lift(ord) == star.value(k).lift(ord), || format!("{chi} vs {star} at {k}"))?;
            }
            // conductor by definition: least d | n with chi constant on unit classes mod d
            let brute = arith::divisors(n)
                .into_iter()
                .find(|&d| {
                    units
                        .iter()
                        .all(|&a| units.iter().all(|&b| a % d != b % d || chi.exponent_at(a) == chi.exponent_at(b)))
                })
                .expect("d = n works");
            ensure(brute == chi.conductor(), || format!("{chi}: conductor {} vs {brute}", chi.conductor()))?;
        }
        let divs = arith::divisors(n);
        for &d in &divs {
            for &e in &divs {
                for r in 1..=d {
                    let a = count_crt_coprime_brute(n, d, e, r).map_err(|e| e.to_string())?;
                    let b = count_crt_coprime_closed(n, d, e, r).map_err(|e| e.to_string())?;
                    ensure(a == b, || format!("CRT count n={n} d={d} e={e} r={r}: brute {a}, closed {b}"))?;
                }
            }
        }
        Ok::<(), String>(())
    })?;
    Ok("n <= 100: phi(n) characters, induced characters, conductors, CRT lemma".into())
}

/// Partition formula for every coefficient; recursion for primitive products.
fn coefficient_formulas() -> Outcome {
    let mut coeffs = 0usize;
    for sys in systems() {
        for set in DivisorSet::builtins() {
            let counts: Vec<usize> = (1..=100u64)
                .into_par_iter()
                .map(|n| {
                    let p = phi_as(&sys, &set, n).map_err(|e| e.to_string())?;
                    let deg = p.degree().expect("nonzero") as u64;
                    for k in 0..=deg {
                        let got = coeff_moller_endo(&sys, &set, n, k).map_err(|e| e.to_string())?;
                        ensure(got == p.coeff(k as usize), || {
                            format!(
                                "A={sys} S={} n={n} x^{k}: formula {got}, polynomial {}",
                                set.name(),
                                p.coeff(k as usize)
                            )
                        })?;
                    }
                    Ok(deg as usize + 1)
                })
                .collect::<Result<_, String>>()?;
            coeffs += counts.iter().sum::<usize>();
        }
    }
    let mut recursions = 0usize;
    for sys in systems() {
        let eligible: Vec<u64> = (2..=200u64).filter(|&n| sys.mobius_a(n) != 0).collect();
        if sys.name() == "U" {
            ensure(eligible.len() == 199, || "unitary: every n should be a primitive product".into())?;
        }
        if sys.name() == "D" {
            ensure(eligible.iter().all(|&n| arith::is_squarefree(n)), || "D: eligible n must be squarefree".into())?;
        }
        eligible.par_iter().try_for_each(|&n| {
            let c = coeff_recursion(&sys, n).map_err(|e| format!("{sys} n={n}: {e}"))?;
            ensure(c.as_slice() == phi_a(&sys, n).coeffs(), || format!("{sys} n={n}: recursion {c:?}"))
        })?;
        recursions += eligible.len();
    }
    Ok(format!("{coeffs} coefficients (n <= 100), {recursions} recursions (n <= 200)"))
}

/// `Phi_(A,n)(x) = exp(-sum c_(A,n)(k) x^k / k)` truncated at K = 200.
fn exp_series() -> Outcome {
    let xs = [BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into())];
    let mut count = 0;
    for sys in systems() {
        let reports: Vec<VerificationReport> = (2..=50u64)
            .into_par_iter()
            .flat_map_iter(|n| {
                let (sys, xs) = (&sys, &xs);
                xs.iter().map(move |x| verify_exp_series(sys, n, x, 200, 256).expect("valid input"))
            })
            .collect();
        count += first_failure(reports)?;
    }
    Ok(format!("{count} instances, x in {{1/2, 1/3}}, K = 200"))
}

/// `h_(U,squares)` is the exponentially-odd indicator; unitary square products.
fn special_sets() -> Outcome {
    let u = RegularSystem::unitary();
    let sq = DivisorSet::squares();
    (1..=500u64).into_par_iter().try_for_each(|n| {
        let h = h_as(&u, &sq, n).map_err(|e| e.to_string())?;
        let want = BigInt::from(arith::is_exponentially_odd(n) as i64);
        ensure(h == want, || format!("h_(U,squares)({n}) = {h}"))
    })?;
    (1..=200u64).into_par_iter().try_for_each(|n| {
        let mut prod = IntPolynomial::one();
        for d in u.members(n).into_iter().filter(|&d| arith::is_exponentially_odd(n / d)) {
            prod = &prod * &q_star(d).map_err(|e| e.to_string())?;
        }
        ensure(prod == IntPolynomial::x_pow_minus_one(n as usize), || {
            format!("unitary square product at n={n}: {prod}")
        })
    })?;
    Ok("h_(U,squares) n <= 500, prod Q*_d = x^n - 1 for n <= 200".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 construction agreement", construction_agreement),
        ("2 classical regressions", classical_regressions),
        ("3 core-divisor lifting and Ramanujan sums", gamma_lifting),
        ("4 Menon-type identities", menon_suite),
        ("5 character machinery", character_machinery),
        ("6 coefficient formulas", coefficient_formulas),
        ("7 exponential series", exp_series),
        ("8 special-set corollaries", special_sets),
    ];
    let mut results = BTreeMap::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(summary) => println!("[PASS] criterion {name}: {summary} ({secs:.1}s)"),
            Err(failure) => println!("[FAIL] criterion {name}: {failure} ({secs:.1}s)"),
        }
        results.insert(name, outcome.is_ok());
    }
    let failed = results.values().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
