//! Checkers for the product, Menon-type, Fourier and series identities.
//!
//! Every checker returns a [`VerificationReport`]; a failing report names
//! the instance and both sides so it can be re-run in isolation. Errors
//! (`Err`) are reserved for invalid input and internal invariant breaks.
//!
//! Identities with real exponents (`cos(2 pi j/n)`, `Re chi(j)`) are checked
//! exactly by grouping the factors `x^g - 1` by `g`: the exponent sum over
//! each class is a rational integer, so the product becomes an ordinary
//! rational function. A floating-point evaluation at `x = 2` runs alongside.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::characters::{enumerate_characters, menon_char_rhs, menon_char_sum, DirichletCharacter};
use crate::coefficients::{coeff_moller_endo, coeff_recursion};
use crate::cyclo_int::CycloInt;
use crate::cyclotomic::{phi_a, phi_as};
use crate::divisor_set::{h_as, ramanujan_a_holder, ramanujan_as, ramanujan_via_gamma, DivisorSet};
use crate::error::{Error, Result};
use crate::numeric::RootProductOracle;
use crate::poly::{Poly, RationalFunctionProduct};
use crate::scalar::{Coefficient, MpFloat, Real};
use crate::system::{positive, RegularSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Identity {
    Routes,
    ProductXn,
    Gen3,
    XnViaH,
    Dft,
    Cos,
    MenonPoly,
    MenonSum,
    MenonChar,
    MenonCharSum,
    ExpSeries,
    Palindrome,
    Kappa,
    MollerEndo,
    Recursion,
    Ramanujan,
    GammaLift,
}

impl Identity {
    pub const ALL: [Identity; 17] = [
        Identity::Routes,
        Identity::ProductXn,
        Identity::Gen3,
        Identity::XnViaH,
        Identity::Dft,
        Identity::Cos,
        Identity::MenonPoly,
        Identity::MenonSum,
        Identity::MenonChar,
        Identity::MenonCharSum,
        Identity::ExpSeries,
        Identity::Palindrome,
        Identity::Kappa,
        Identity::MollerEndo,
        Identity::Recursion,
        Identity::Ramanujan,
        Identity::GammaLift,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Identity::Routes => "routes",
            Identity::ProductXn => "gen4",
            Identity::Gen3 => "gen3",
            Identity::XnViaH => "xn-via-h",
            Identity::Dft => "dft",
            Identity::Cos => "cos",
            Identity::MenonPoly => "menon-poly",
            Identity::MenonSum => "menon-sum",
            Identity::MenonChar => "menon-char",
            Identity::MenonCharSum => "menon-char-sum",
            Identity::ExpSeries => "exp-series",
            Identity::Palindrome => "palindrome",
            Identity::Kappa => "kappa",
            Identity::MollerEndo => "moller-endo",
            Identity::Recursion => "recursion",
            Identity::Ramanujan => "ramanujan",
            Identity::GammaLift => "gamma-lift",
        }
    }

    /// Whether the divisor set `S` enters the identity.
    pub fn uses_set(self) -> bool {
        matches!(
            self,
            Identity::Routes
                | Identity::Gen3
                | Identity::XnViaH
                | Identity::Dft
                | Identity::Palindrome
                | Identity::MollerEndo
                | Identity::Ramanujan
        )
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown identity `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: u64,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub system: String,
    pub set: Option<String>,
    /// Instance parameters (`n`, `k`, character, ...), rendered as strings.
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    fn new(identity: Identity, sys: &RegularSystem, set: Option<&DivisorSet>, n: u64) -> Self {
        VerificationReport {
            identity: identity.id().to_string(),
            system: sys.name().to_string(),
            set: set.map(|s| s.name().to_string()),
            params: BTreeMap::from([("n".to_string(), n.to_string())]),
            status: Status::Pass,
            counterexample: None,
        }
    }

    fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Record a failed sub-check; the first failure wins.
    fn check(mut self, ok: bool, details: impl FnOnce() -> String) -> Self {
        if !ok && self.status == Status::Pass {
            let n = self.params["n"].parse().expect("n is recorded at construction");
            self.status = Status::Fail;
            self.counterexample = Some(Counterexample { n, details: details() });
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Fold per-instance reports (e.g. over `k` or characters) into one,
    /// keeping the first failure.
    fn absorb(self, other: VerificationReport) -> Self {
        if self.passed() && !other.passed() {
            let mut out = self;
            out.status = Status::Fail;
            let extra: Vec<String> = other
                .params
                .iter()
                .filter(|(k, v)| k.as_str() != "n" && out.params.get(k.as_str()) != Some(v))
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            out.counterexample = other.counterexample.map(|mut c| {
                if !extra.is_empty() {
                    c.details = format!("[{}] {}", extra.join(" "), c.details);
                }
                c
            });
            out
        } else {
            self
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "{status} {} system={}", self.identity, self.system)?;
        if let Some(set) = &self.set {
            write!(f, " set={set}")?;
        }
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, " counterexample(n={}): {}", c.n, c.details)?;
        }
        Ok(())
    }
}

/// `prod_{d in A(n)} Phi_(A,d) = x^n - 1`.
pub fn verify_product_xn_minus_1(sys: &RegularSystem, n: u64) -> Result<VerificationReport> {
    positive(n)?;
    let lhs: Poly<BigInt> = sys.a_divisors(n)?.into_iter().map(|d| phi_a(sys, d)).product();
    let rhs = Poly::x_pow_minus_one(n as usize);
    Ok(VerificationReport::new(Identity::ProductXn, sys, None, n).check(lhs == rhs, || format!("product = {lhs}")))
}

/// `prod_{d in A(n)} Phi_(A,S,d) = prod_{d in A(n), n/d in S} (x^d - 1)`.
pub fn verify_gen3(sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<VerificationReport> {
    positive(n)?;
    let members = sys.a_divisors(n)?;
    let mut lhs = Poly::one();
    for &d in &members {
        lhs = &lhs * &phi_as(sys, set, d)?;
    }
    let rhs: Poly<BigInt> =
        members.iter().filter(|&&d| set.contains(n / d)).map(|&d| Poly::x_pow_minus_one(d as usize)).product();
    Ok(VerificationReport::new(Identity::Gen3, sys, Some(set), n)
        .check(lhs == rhs, || format!("lhs = {lhs}, rhs = {rhs}")))
}

/// `x^n - 1 = prod_{d in A(n)} Phi_(A,S,d)^{h_(A,S)(n/d)}`; needs `1 in S`.
pub fn verify_xn_via_h(sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<VerificationReport> {
    positive(n)?;
    let mut product = RationalFunctionProduct::new();
    for d in sys.a_divisors(n)? {
        let h = h_as(sys, set, n / d)?;
        let e = h.to_i64().ok_or_else(|| Error::InvalidArgument(format!("h_(A,S)({}) = {h} is too large", n / d)))?;
        product.push(phi_as(sys, set, d)?, e);
    }
    let report = VerificationReport::new(Identity::XnViaH, sys, Some(set), n);
    Ok(match product.resolve() {
        Ok(p) => {
            let ok = p == Poly::x_pow_minus_one(n as usize);
            report.check(ok, || format!("product resolves to {p}"))
        }
        Err(e) => report.check(false, || format!("product is not a polynomial: {e}")),
    })
}

/// `sum_j f((j,n)_A) zeta_n^{jk} = sum_{d in A(n), d | k} d (mu_A *_A f)(n/d)`,
/// with the left side evaluated exactly in `Z[zeta_n]`.
pub fn verify_dft<T, F>(sys: &RegularSystem, f: F, n: u64, k: u64) -> Result<VerificationReport>
where
    T: Coefficient,
    F: Fn(u64) -> T,
{
    positive(n)?;
    let members = sys.a_divisors(n)?;
    let lhs = CycloInt::from_weighted_exponents(n, (1..=n).map(|j| ((j * (k % n)) % n, f(sys.gcd_a(j, n)))));
    let mobius_f = |m: u64| sys.convolve(|d| T::from_i64(sys.mobius_a(d)), &f, m);
    let rhs = members
        .into_iter()
        .filter(|&d| k.is_multiple_of(d))
        .fold(T::zero(), |acc, d| acc + T::from_i64(d as i64) * mobius_f(n / d));
    let report = VerificationReport::new(Identity::Dft, sys, None, n).param("k", k);
    Ok(match lhs.as_integer() {
        Some(v) => {
            let ok = v == rhs;
            report.check(ok, || format!("lhs = {v}, rhs = {rhs}"))
        }
        None => report.check(false, || format!("lhs is not rational: {:?}", lhs.residue())),
    })
}

/// Which gcd labels the class of `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassIndex {
    /// `(j, n)_A`
    Gcd,
    /// `(j - 1, n)_A`
    ShiftedGcd,
}

/// For each `d in A(n)`, the sum of `zeta_m^{w(j)}` over `1 <= j <= n` in the
/// class of `d` (terms with `w(j) = None` count as zero). Each sum must be a
/// rational integer.
pub fn class_exponent_sums<W>(
    sys: &RegularSystem,
    n: u64,
    classes: ClassIndex,
    m: u64,
    weight: W,
) -> Result<BTreeMap<u64, i64>>
where
    W: Fn(u64) -> Option<u64>,
{
    positive(n)?;
    let members = sys.a_divisors(n)?;
    let mut buckets: BTreeMap<u64, Vec<u64>> = members.iter().map(|&d| (d, Vec::new())).collect();
    for j in 1..=n {
        let label = match classes {
            ClassIndex::Gcd => sys.gcd_a(j, n),
            ClassIndex::ShiftedGcd => sys.gcd_a(j - 1, n),
        };
        if let Some(r) = weight(j) {
            buckets.get_mut(&label).expect("labels lie in A(n)").push(r);
        }
    }
    buckets
        .into_iter()
        .map(|(d, rs)| {
            CycloInt::<i64>::from_exponents(m, rs)
                .as_integer()
                .map(|v| (d, v))
                .ok_or(Error::NonIntegerClassSum { n, class: d })
        })
        .collect()
}

fn grouped_product(sums: &BTreeMap<u64, i64>) -> RationalFunctionProduct<BigInt> {
    sums.iter().map(|(&d, &e)| (Poly::x_pow_minus_one(d as usize), e)).collect()
}

fn relative_error(a: &MpFloat, b: &MpFloat) -> f64 {
    ((a.clone() - b.clone()) / b.clone()).abs().to_f64()
}

/// `ln(2^g - 1)`.
fn ln_two_pow_minus_one(g: u64, bits: usize) -> MpFloat {
    MpFloat::from_bigint(&((BigInt::one() << g) - 1), bits).ln()
}

const NUMERIC_TOL: f64 = 1e-30;

/// `Phi_(A,n)(x) = prod_j (x^{(j,n)_A} - 1)^{cos(2 pi j/n)}`, exactly via class
/// sums and numerically at `x = 2`.
pub fn verify_cos_product(sys: &RegularSystem, n: u64, bits: usize) -> Result<VerificationReport> {
    positive(n)?;
    let sums = class_exponent_sums(sys, n, ClassIndex::Gcd, n, |j| Some(j % n))?;
    let target = phi_a(sys, n);
    let report = VerificationReport::new(Identity::Cos, sys, None, n);
    let report = match grouped_product(&sums).resolve() {
        Ok(p) => {
            let ok = p == target;
            report.check(ok, || format!("class-sum product {p} != Phi_(A,n) {target}"))
        }
        Err(e) => report.check(false, || format!("class-sum product is not a polynomial: {e}")),
    };
    // (j,n)_A >= 1, so every logarithm below is finite
    let log_lhs = (1..=n).fold(MpFloat::from_i64(0, bits), |acc, j| {
        acc + MpFloat::cos_turns(j as i64, n, bits) * ln_two_pow_minus_one(sys.gcd_a(j, n), bits)
    });
    let lhs = log_lhs.exp();
    let rhs = MpFloat::from_bigint(&target.eval(&BigInt::from(2)), bits);
    let err = relative_error(&lhs, &rhs);
    Ok(report.check(err < NUMERIC_TOL, || format!("relative error {err:e} at x = 2")))
}

/// `prod_{(j,n)_A = 1} (x^{(j-1,n)_A} - 1) = prod_{d in A(n)} Phi_(A,d)^{phi_A(n)/phi_A(d)}`.
pub fn verify_menon_poly(sys: &RegularSystem, n: u64) -> Result<VerificationReport> {
    positive(n)?;
    let members = sys.a_divisors(n)?;
    let mut counts: BTreeMap<u64, u32> = BTreeMap::new();
    for j in (1..=n).filter(|&j| sys.gcd_a(j, n) == 1) {
        *counts.entry(sys.gcd_a(j - 1, n)).or_default() += 1;
    }
    let mut lhs = Poly::one();
    for (&g, &c) in &counts {
        let factor = Poly::x_pow_minus_one(g as usize);
        for _ in 0..c {
            lhs = &lhs * &factor;
        }
    }
    let phi_n = sys.euler_phi_a(n);
    let mut rhs = Poly::one();
    for &d in &members {
        let phi_d = sys.euler_phi_a(d);
        if !phi_n.is_multiple_of(phi_d) {
            return Err(Error::InternalInconsistency(format!("phi_A({d}) does not divide phi_A({n}) in {sys}")));
        }
        rhs = &rhs * &phi_a(sys, d).pow((phi_n / phi_d) as u32);
    }
    Ok(VerificationReport::new(Identity::MenonPoly, sys, None, n)
        .check(lhs == rhs, || format!("lhs = {lhs}, rhs = {rhs}")))
}

/// `sum_{(j,n)_A = 1} f((j-1,n)_A) = phi_A(n) sum_{d in A(n)} (mu_A *_A f)(d) / phi_A(d)`.
///
/// `T` must be a field for the right-hand side (e.g. `BigRational`).
pub fn verify_menon_sum<T, F>(sys: &RegularSystem, f: F, n: u64) -> Result<VerificationReport>
where
    T: Clone + Num + FromPrimitive + fmt::Display,
    F: Fn(u64) -> T,
{
    positive(n)?;
    let members = sys.a_divisors(n)?;
    let int = |v: i64| T::from_i64(v).expect("small integers embed");
    let lhs = (1..=n).filter(|&j| sys.gcd_a(j, n) == 1).fold(T::zero(), |acc, j| acc + f(sys.gcd_a(j - 1, n)));
    let sum = members.into_iter().fold(T::zero(), |acc, d| {
        let conv = sys.convolve(|e| int(sys.mobius_a(e)), &f, d);
        acc + conv / int(sys.euler_phi_a(d) as i64)
    });
    let rhs = int(sys.euler_phi_a(n) as i64) * sum;
    Ok(VerificationReport::new(Identity::MenonSum, sys, None, n)
        .check(lhs == rhs, || format!("lhs = {lhs}, rhs = {rhs}")))
}

/// `sum_j f((j-1,n)_A) chi(j)` against its closed form (and, for primitive
/// `chi`, against `(mu_A *_A f)(n)`).
pub fn verify_menon_char_sum<T, F>(
    sys: &RegularSystem,
    f: F,
    n: u64,
    chi: &DirichletCharacter,
) -> Result<VerificationReport>
where
    T: Coefficient,
    F: Fn(u64) -> T,
{
    let report = VerificationReport::new(Identity::MenonCharSum, sys, None, n).param("chi", chi);
    let lhs = match menon_char_sum(sys, &f, n, chi) {
        Ok(v) => v,
        Err(Error::NonRationalResult { .. }) => {
            return Ok(report.check(false, || "character sum is not rational".into()));
        }
        Err(e) => return Err(e),
    };
    let rhs = menon_char_rhs(sys, &f, n, chi)?;
    let lhs_q = BigRational::from_integer(lhs.to_bigint());
    let mut report = report.check(lhs_q == rhs, || format!("lhs = {lhs}, rhs = {rhs}"));
    if chi.is_primitive() {
        let conv: T = sys.convolve(|d| T::from_i64(sys.mobius_a(d)), &f, n);
        report = report.check(conv == lhs, || format!("primitive character: lhs = {lhs}, (mu_A *_A f)(n) = {conv}"));
    }
    Ok(report)
}

/// `prod_j (x^{(j-1,n)_A} - 1)^{Re chi(j)} = prod_{e in A(n), cond | e} Phi_(A,e)^{phi(n)/phi(e)}`.
///
/// Exact check: with `T_e(chi)` the class sums of `chi` over `(j-1,n)_A = e`,
/// `prod_e (x^e - 1)^{T_e(chi) + T_e(conj chi)}` must equal the square of the
/// right side. A 256-bit evaluation at `x = 2` runs alongside.
pub fn verify_menon_char_product(
    sys: &RegularSystem,
    n: u64,
    chi: &DirichletCharacter,
    bits: usize,
) -> Result<VerificationReport> {
    positive(n)?;
    if chi.modulus() != n {
        return Err(Error::InvalidArgument(format!("{chi} is not a character mod {n}")));
    }
    let ord = chi.order();
    let conj = chi.conj();
    let t = class_exponent_sums(sys, n, ClassIndex::ShiftedGcd, ord, |j| chi.exponent_at(j))?;
    let t_bar = class_exponent_sums(sys, n, ClassIndex::ShiftedGcd, ord, |j| conj.exponent_at(j))?;
    let doubled: BTreeMap<u64, i64> = t.iter().map(|(&e, &v)| (e, v + t_bar[&e])).collect();

    let cond = chi.conductor();
    let phi_n = arith::euler_phi(n);
    let rhs_factors: Vec<(Poly<BigInt>, u32)> = sys
        .a_divisors(n)?
        .into_iter()
        .filter(|e| e % cond == 0)
        .map(|e| (phi_a(sys, e), (phi_n / arith::euler_phi(e)) as u32))
        .collect();
    let rhs_squared: Poly<BigInt> = rhs_factors.iter().map(|(p, e)| p.pow(2 * e)).product();

    let report = VerificationReport::new(Identity::MenonChar, sys, None, n).param("chi", chi);
    let report = match grouped_product(&doubled).resolve() {
        Ok(p) => {
            let ok = p == rhs_squared;
            report.check(ok, || format!("squared class-sum product {p} != squared right side {rhs_squared}"))
        }
        Err(e) => report.check(false, || format!("class-sum product is not a polynomial: {e}")),
    };

    let two = BigInt::from(2);
    let log_lhs = (1..=n).fold(MpFloat::from_i64(0, bits), |acc, j| match chi.exponent_at(j) {
        Some(r) => acc + MpFloat::cos_turns(r as i64, ord, bits) * ln_two_pow_minus_one(sys.gcd_a(j - 1, n), bits),
        None => acc,
    });
    let rhs_value: BigInt = rhs_factors.iter().map(|(p, e)| num_traits::pow(p.eval(&two), *e as usize)).product();
    let err = relative_error(&log_lhs.exp(), &MpFloat::from_bigint(&rhs_value, bits));
    Ok(report.check(err < NUMERIC_TOL, || format!("relative error {err:e} at x = 2")))
}

/// `Phi_(A,n)(x) = exp(-sum_{k>=1} c_(A,n)(k) x^k / k)` for `n > 1`, `0 < |x| < 1`,
/// truncated after `terms` terms. The error must stay below the tail bound
/// `n |x|^{K+1} / (1 - |x|)` and below `1e-30`. The working precision is
/// `bits`, raised when needed to resolve the bound.
pub fn verify_exp_series(
    sys: &RegularSystem,
    n: u64,
    x: &BigRational,
    terms: u64,
    bits: usize,
) -> Result<VerificationReport> {
    if positive(n)? < 2 {
        return Err(Error::InvalidArgument("the exponential series needs n > 1".into()));
    }
    if x.is_zero() || x.abs() >= BigRational::one() || terms == 0 {
        return Err(Error::InvalidArgument(format!("need 0 < |x| < 1 and K >= 1, got x = {x}, K = {terms}")));
    }
    sys.a_divisors(n)?;
    let ax = x.abs().to_f64().expect("|x| < 1");
    let bound = n as f64 * ax.powi(terms as i32 + 1) / (1.0 - ax);
    // work at least 64 bits below the bound so rounding cannot mask it
    let bits = bits.max((-bound.log2()).ceil() as usize + 64);
    let one = DivisorSet::one();
    let mut power = BigRational::one();
    let mut series = BigRational::zero();
    for k in 1..=terms {
        power *= x;
        let c = ramanujan_as(sys, &one, n, k);
        if c != 0 {
            series += &power * BigRational::new(BigInt::from(c), BigInt::from(k));
        }
    }
    let poly = phi_a(sys, n);
    let exact =
        poly.coeffs().iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()));
    let approx = MpFloat::from_ratio(&-series, bits).exp();
    let err = (MpFloat::from_ratio(&exact, bits) - approx).abs().to_f64();
    Ok(VerificationReport::new(Identity::ExpSeries, sys, None, n)
        .param("x", x)
        .param("K", terms)
        .param("bits", bits)
        .check(err <= bound && err < NUMERIC_TOL, || format!("error {err:e}, tail bound {bound:e}")))
}

/// `Phi_(A,S,n)(x) = (-1)^{rho_S(n)} x^{phi_(A,S)(n)} Phi_(A,S,n)(1/x)`.
pub fn verify_palindrome(sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<VerificationReport> {
    let p = phi_as(sys, set, n)?;
    let expected = if set.rho(n) % 2 == 0 { p.clone() } else { -&p };
    Ok(VerificationReport::new(Identity::Palindrome, sys, Some(set), n)
        .check(p.reversed() == expected, || format!("{p} is not (anti)palindromic as predicted")))
}

/// `Phi_(A,n)(x) = Phi_(A,kappa_A(n))(x^{n/kappa_A(n)})`.
pub fn verify_kappa(sys: &RegularSystem, n: u64) -> Result<VerificationReport> {
    positive(n)?;
    sys.a_divisors(n)?;
    let kappa = sys.kappa_a(n);
    let lhs = phi_a(sys, n);
    let rhs = phi_a(sys, kappa).compose_power((n / kappa) as usize);
    Ok(VerificationReport::new(Identity::Kappa, sys, None, n)
        .param("kappa", kappa)
        .check(lhs == rhs, || format!("Phi_(A,n) = {lhs}, substituted = {rhs}")))
}

/// The three exact constructions of `Phi_(A,S,n)` and, within its bound, the
/// numeric root product.
pub fn verify_routes(
    sys: &RegularSystem,
    set: &DivisorSet,
    n: u64,
    oracle: &RootProductOracle,
) -> Result<VerificationReport> {
    let report = VerificationReport::new(Identity::Routes, sys, Some(set), n);
    let exact = match phi_as(sys, set, n) {
        Ok(p) => p,
        Err(Error::RouteMismatch { detail, .. }) => return Ok(report.check(false, || detail)),
        Err(e) => return Err(e),
    };
    let report = report.check(exact.is_monic(), || format!("{exact} is not monic"));
    if n > oracle.max_n {
        return Ok(report.param("oracle", "skipped"));
    }
    let report = report.param("oracle", format!("{} bits", oracle.precision_bits));
    Ok(match oracle.expand(sys, set, n) {
        Ok(numeric) => {
            let ok = numeric == exact;
            report.check(ok, || format!("exact {exact}, numeric {numeric}"))
        }
        Err(e @ Error::PrecisionExhausted { .. }) => report.check(false, || e.to_string()),
        Err(e) => return Err(e),
    })
}

/// The partition formula for every coefficient of `Phi_(A,S,n)`.
pub fn verify_moller_endo(sys: &RegularSystem, set: &DivisorSet, n: u64) -> Result<VerificationReport> {
    let p = phi_as(sys, set, n)?;
    let mut report = VerificationReport::new(Identity::MollerEndo, sys, Some(set), n);
    for k in 0..=p.degree().unwrap_or(0) as u64 {
        let got = coeff_moller_endo(sys, set, n, k)?;
        let want = p.coeff(k as usize);
        report = report.check(got == want, || format!("x^{k}: formula {got}, polynomial {want}"));
    }
    Ok(report)
}

/// The coefficient recursion, for `n > 1` with `mu_A(n) != 0`.
pub fn verify_recursion(sys: &RegularSystem, n: u64) -> Result<VerificationReport> {
    let coeffs = coeff_recursion(sys, n)?;
    let p = phi_a(sys, n);
    let ok = coeffs.as_slice() == p.coeffs();
    Ok(VerificationReport::new(Identity::Recursion, sys, None, n)
        .check(ok, || format!("recursion {coeffs:?}, polynomial {p}")))
}

/// `c_(A,S,n)(k)` as an exact sum of roots of unity against its divisor-sum
/// formula; for `S = {1}` also the Hoelder form and the core-divisor lift.
pub fn verify_ramanujan(sys: &RegularSystem, set: &DivisorSet, n: u64, k: u64) -> Result<VerificationReport> {
    positive(n)?;
    sys.a_divisors(n)?;
    let direct =
        CycloInt::<i64>::from_exponents(n, (1..=n).filter(|&j| set.contains(sys.gcd_a(j, n))).map(|j| j * (k % n) % n));
    let formula = ramanujan_as(sys, set, n, k);
    let mut report = VerificationReport::new(Identity::Ramanujan, sys, Some(set), n)
        .param("k", k)
        .check(direct.as_integer() == Some(formula), || {
            format!("root sum {:?}, formula {formula}", direct.as_integer())
        });
    let one = DivisorSet::one();
    let direct_one =
        CycloInt::<i64>::from_exponents(n, (1..=n).filter(|&j| sys.gcd_a(j, n) == 1).map(|j| j * (k % n) % n));
    let holder = ramanujan_a_holder(sys, n, k)?;
    let gamma = ramanujan_via_gamma(sys, n, k);
    let base = ramanujan_as(sys, &one, n, k);
    report = report.check(direct_one.as_integer() == Some(base) && holder == base && gamma == base, || {
        format!(
            "S={{1}}: root sum {:?}, divisor sum {base}, Hoelder {holder}, core lift {gamma}",
            direct_one.as_integer()
        )
    });
    Ok(report)
}

/// `g_A` defined by `sum_{d | n} g(d) = sum_{d in A(n)} g_A(d)` (solved by
/// recursion over `A(n)`) equals the core-divisor sum `lift_via_core`.
pub fn verify_gamma_lift<G>(sys: &RegularSystem, g: G, n: u64) -> Result<VerificationReport>
where
    G: Fn(u64) -> i64,
{
    positive(n)?;
    let members = sys.a_divisors(n)?;
    let mut implicit: BTreeMap<u64, i64> = BTreeMap::new();
    for &d in &members {
        let full: i64 = arith::divisors(d).into_iter().map(&g).sum();
        let below: i64 = sys.members(d).into_iter().filter(|&e| e < d).map(|e| implicit[&e]).sum();
        implicit.insert(d, full - below);
    }
    let got = implicit[&n];
    let want: i64 = sys.lift_via_core(&g, n);
    Ok(VerificationReport::new(Identity::GammaLift, sys, None, n)
        .check(got == want, || format!("implicit g_A = {got}, core lift = {want}")))
}

/// Options for [`check`] and [`sweep`].
#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Precision of the numeric cross-checks (`x = 2` evaluations, exp series).
    pub precision_bits: usize,
    /// Restrict `k`-indexed identities to one `k`; all residues otherwise.
    pub k: Option<u64>,
    pub oracle: RootProductOracle,
    pub exp_terms: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { precision_bits: 256, k: None, oracle: RootProductOracle::default(), exp_terms: 200 }
    }
}

fn fold_reports(
    first: VerificationReport,
    rest: impl IntoIterator<Item = Result<VerificationReport>>,
) -> Result<VerificationReport> {
    rest.into_iter().try_fold(first, |acc, r| Ok(acc.absorb(r?)))
}

/// Deterministic integer-valued test function for the lifting identity.
fn scrambled(d: u64) -> i64 {
    (d.wrapping_mul(2_654_435_761) % 97) as i64 - 48
}

/// Run one identity at one `n`. Identities that do not apply (e.g.
/// `xn-via-h` with `1 not in S`) yield no reports.
pub fn check(
    identity: Identity,
    sys: &RegularSystem,
    set: &DivisorSet,
    n: u64,
    opts: &CheckOptions,
) -> Result<Vec<VerificationReport>> {
    positive(n)?;
    let ks: Vec<u64> = opts.k.map_or_else(|| (1..=n).collect(), |k| vec![k]);
    let k_label = opts.k.map_or_else(|| format!("1..={n}"), |k| k.to_string());
    let bits = opts.precision_bits;
    let one_report = |r: Result<VerificationReport>| r.map(|r| vec![r]);
    match identity {
        Identity::Routes => one_report(verify_routes(sys, set, n, &opts.oracle)),
        Identity::ProductXn => one_report(verify_product_xn_minus_1(sys, n)),
        Identity::Gen3 => one_report(verify_gen3(sys, set, n)),
        Identity::XnViaH if set.contains(1) => one_report(verify_xn_via_h(sys, set, n)),
        Identity::XnViaH => Ok(vec![]),
        Identity::Dft => {
            type TestFn = fn(u64) -> i64;
            let fns: [(&str, TestFn); 3] = [("id", |m| m as i64), ("one", |_| 1), ("square", |m| (m * m) as i64)];
            let mut out = Vec::new();
            for (name, f) in fns {
                let head = VerificationReport::new(Identity::Dft, sys, None, n).param("f", name).param("k", &k_label);
                out.push(fold_reports(head, ks.iter().map(|&k| verify_dft(sys, f, n, k)))?);
            }
            let indicator = |m: u64| set.contains(m) as i64;
            let head = VerificationReport::new(Identity::Dft, sys, Some(set), n)
                .param("f", "set-indicator")
                .param("k", &k_label);
            out.push(fold_reports(head, ks.iter().map(|&k| verify_dft(sys, indicator, n, k)))?);
            Ok(out)
        }
        Identity::Cos => one_report(verify_cos_product(sys, n, bits)),
        Identity::MenonPoly => one_report(verify_menon_poly(sys, n)),
        Identity::MenonSum => {
            let id = |m: u64| BigRational::from_integer(BigInt::from(m));
            let sq = |m: u64| BigRational::from_integer(BigInt::from(m) * BigInt::from(m));
            Ok(vec![verify_menon_sum(sys, id, n)?.param("f", "id"), verify_menon_sum(sys, sq, n)?.param("f", "square")])
        }
        Identity::MenonChar => {
            let chars = enumerate_characters(n)?;
            let head = VerificationReport::new(Identity::MenonChar, sys, None, n).param("characters", chars.len());
            one_report(fold_reports(head, chars.iter().map(|chi| verify_menon_char_product(sys, n, chi, bits))))
        }
        Identity::MenonCharSum => {
            let chars = enumerate_characters(n)?;
            let id = |m: u64| BigInt::from(m);
            let head = VerificationReport::new(Identity::MenonCharSum, sys, None, n).param("characters", chars.len());
            one_report(fold_reports(head, chars.iter().map(|chi| verify_menon_char_sum(sys, id, n, chi))))
        }
        Identity::ExpSeries if n > 1 => {
            let xs = [BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into())];
            xs.iter().map(|x| verify_exp_series(sys, n, x, opts.exp_terms, bits)).collect()
        }
        Identity::ExpSeries => Ok(vec![]),
        Identity::Palindrome => one_report(verify_palindrome(sys, set, n)),
        Identity::Kappa => one_report(verify_kappa(sys, n)),
        Identity::MollerEndo => one_report(verify_moller_endo(sys, set, n)),
        Identity::Recursion if n > 1 && sys.mobius_a(n) != 0 => one_report(verify_recursion(sys, n)),
        Identity::Recursion => Ok(vec![]),
        Identity::Ramanujan => {
            let head = VerificationReport::new(Identity::Ramanujan, sys, Some(set), n).param("k", &k_label);
            one_report(fold_reports(head, ks.iter().map(|&k| verify_ramanujan(sys, set, n, k))))
        }
        Identity::GammaLift => one_report(verify_gamma_lift(sys, scrambled, n)),
    }
}

/// Run identities over a range of `n` in parallel. Reports are ordered by
/// identity, then `n`, independent of scheduling.
pub fn sweep(
    identities: &[Identity],
    sys: &RegularSystem,
    set: &DivisorSet,
    range: std::ops::RangeInclusive<u64>,
    opts: &CheckOptions,
) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for &identity in identities {
        let per_n: Vec<Vec<VerificationReport>> =
            range.clone().into_par_iter().map(|n| check(identity, sys, set, n, opts)).collect::<Result<_>>()?;
        out.extend(per_n.into_iter().flatten());
    }
    Ok(out)
}
