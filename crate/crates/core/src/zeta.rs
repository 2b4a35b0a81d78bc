//! Zeta functions of a toral endomorphism and the data derived from them.
//!
//! The Lefschetz zeta function is the alternating product of the
//! polynomials `P_k(z) = det(1 - z Λ^k(M))`. The Artin-Mazur zeta function
//! follows from it by the substitution `z -> δ z` and the exponent `ε`,
//! where the signs are read off the characteristic polynomial at `x = ±1`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::poly::{self, char_poly, det_poly_linear, poly_gcd, IntPoly, PolyError, RatFunc, Sign};
use crate::roots::root_modulus_bounds;

/// Default error bound for numeric root moduli.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("functional equation undefined: det(M) = 0")]
    Singular,
    #[error("internal error: exponent c_{m} is not an integer")]
    NonIntegralExponent { m: usize },
    #[error("iterate index must be at least 1")]
    ZeroIterate,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Multiplicities of the eigenvalues `1` and `-1` and the orbit signs.
///
/// With these, `a_m = ã_m δ^m ε` for every `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignData {
    pub sigma: usize,
    pub tau: usize,
    pub delta: Sign,
    pub epsilon: Sign,
}

/// `P_0 .. P_d` with `P_k(z) = det(1 - z Λ^k(M))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharFactors {
    pub factors: Vec<IntPoly>,
}

impl CharFactors {
    /// Exponent `(-1)^(k+1)` of `P_k` in the Lefschetz zeta function.
    pub fn exponent(k: usize) -> Sign {
        Sign::parity(k + 1)
    }
}

pub fn char_factors(m: &IntMatrix) -> CharFactors {
    let one = |n| IntMatrix::identity(n);
    let factors = (0..=m.dim())
        .map(|k| {
            let wedge = m.exterior_power(k).expect("k <= dim");
            det_poly_linear(&one(wedge.dim()), &-&wedge).expect("square exterior power")
        })
        .collect();
    CharFactors { factors }
}

fn alternating_product(factors: &[IntPoly], outer: Sign) -> RatFunc {
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for (k, f) in factors.iter().enumerate() {
        match CharFactors::exponent(k) * outer {
            Sign::Plus => num = &num * f,
            Sign::Minus => den = &den * f,
        }
    }
    RatFunc::new(num, den).expect("every P_k has constant term 1")
}

/// The Lefschetz zeta function `exp(sum ã_m z^m / m)`.
pub fn lefschetz_zeta(m: &IntMatrix) -> RatFunc {
    alternating_product(&char_factors(m).factors, Sign::Plus)
}

/// `ã_m = det(1 - M^m)`.
pub fn signed_count(m: &IntMatrix, iterate: u64) -> Result<BigInt, ZetaError> {
    if iterate == 0 {
        return Err(ZetaError::ZeroIterate);
    }
    Ok((&IntMatrix::identity(m.dim()) - &m.pow(iterate)).det())
}

/// `a_m = |det(1 - M^m)|`, the number of isolated fixed points of `M^m`.
///
/// Zero exactly when the fixed points of `M^m` form subtori of positive
/// dimension.
pub fn isolated_fixed_count(m: &IntMatrix, iterate: u64) -> Result<BigInt, ZetaError> {
    Ok(signed_count(m, iterate)?.abs())
}

pub fn signs(m: &IntMatrix) -> SignData {
    let one = BigInt::one();
    let minus_one = -BigInt::one();
    let p = char_poly(m);
    let sigma = p
        .multiplicity_at(&one)
        .expect("characteristic polynomial is monic");
    let tau = p
        .multiplicity_at(&minus_one)
        .expect("characteristic polynomial is monic");
    // det(x + M) vanishes to order tau at x = 1
    let q = det_poly_linear(m, &IntMatrix::identity(m.dim())).expect("square matrix");
    let delta = Sign::of(&q.strip_root(&one, tau).eval(&one)).expect("root stripped");
    let p_sign = Sign::of(&p.strip_root(&one, sigma).eval(&one)).expect("root stripped");
    let epsilon = delta * p_sign;

    if sigma == 0 && tau == 0 {
        let id = IntMatrix::identity(m.dim());
        let fast_delta = Sign::of(&(&id + m).det());
        let fast_epsilon = Sign::of(&(&id - m).det()).map(|s| s * delta);
        assert_eq!(fast_delta, Some(delta), "sign paths disagree on delta");
        assert_eq!(
            fast_epsilon,
            Some(epsilon),
            "sign paths disagree on epsilon"
        );
    }
    SignData {
        sigma,
        tau,
        delta,
        epsilon,
    }
}

/// `ζ(z) = ζ̃(δ z)^ε` for given sign data.
pub fn compose_artin_mazur(lefschetz: &RatFunc, signs: &SignData) -> RatFunc {
    lefschetz
        .substitute_signed(signs.delta)
        .pow(signs.epsilon.to_i64())
        .expect("zeta functions are nonzero")
}

/// The Artin-Mazur zeta function `exp(sum a_m z^m / m)`.
pub fn artin_mazur_zeta(m: &IntMatrix) -> RatFunc {
    compose_artin_mazur(&lefschetz_zeta(m), &signs(m))
}

/// `prod_k det(1 - δ z Λ^k(M))^(ε (-1)^(k+1))`, built factor by factor.
pub fn artin_mazur_product_form(m: &IntMatrix, delta: Sign, epsilon: Sign) -> RatFunc {
    let scale = BigInt::from(-delta.to_i64());
    let factors: Vec<IntPoly> = (0..=m.dim())
        .map(|k| {
            let wedge = m.exterior_power(k).expect("k <= dim");
            det_poly_linear(&IntMatrix::identity(wedge.dim()), &wedge.scale(&scale))
                .expect("square exterior power")
        })
        .collect();
    alternating_product(&factors, epsilon)
}

pub fn mobius(n: u64) -> i64 {
    assert!(n > 0);
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Möbius inversion of `a_m = sum_{l | m} l c_l`.
pub fn exponents_from_counts(counts: &[BigInt]) -> Result<Vec<BigInt>, ZetaError> {
    (1..=counts.len())
        .map(|m| {
            let mut sum = BigInt::zero();
            for l in (1..=m).filter(|l| m % l == 0) {
                let mu = mobius((m / l) as u64);
                if mu != 0 {
                    sum += &counts[l - 1] * mu;
                }
            }
            let (c, r) = sum.div_rem(&BigInt::from(m));
            if r.is_zero() {
                Ok(c)
            } else {
                Err(ZetaError::NonIntegralExponent { m })
            }
        })
        .collect()
}

/// Exponents `c_1..c_n` of the Euler product `prod (1 - z^m)^(-c_m)`.
pub fn euler_exponents(m: &IntMatrix, n: usize) -> Result<Vec<BigInt>, ZetaError> {
    let counts = (1..=n as u64)
        .map(|i| isolated_fixed_count(m, i))
        .collect::<Result<Vec<_>, _>>()?;
    exponents_from_counts(&counts)
}

/// `z ζ'(z) / ζ(z) = sum a_m z^m`.
pub fn generating_function(m: &IntMatrix) -> RatFunc {
    artin_mazur_zeta(m)
        .log_derivative()
        .expect("zeta functions are nonzero")
}

/// A real number known to lie within `error` of `value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// `1 / ρ` where `ρ` is the smallest modulus of a pole of `generating`.
///
/// `None` when the reduced denominator is constant.
pub fn growth_rate_of(generating: &RatFunc) -> Option<Estimate> {
    if generating.den().is_constant() {
        return None;
    }
    let bounds = root_modulus_bounds(generating.den());
    let lo = bounds.iter().map(|b| b.lo).fold(f64::INFINITY, f64::min);
    let hi = bounds.iter().map(|b| b.hi).fold(f64::INFINITY, f64::min);
    let (upper, lower) = (1.0 / lo, 1.0 / hi);
    Some(Estimate {
        value: 0.5 * (upper + lower),
        error: 0.5 * (upper - lower),
    })
}

pub fn growth_rate(m: &IntMatrix) -> Option<Estimate> {
    growth_rate_of(&generating_function(m))
}

/// Both sides of the functional equations under `z -> 1 / (D z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalEquation {
    pub det: BigInt,
    pub b: BigInt,
    pub lefschetz_holds: bool,
    pub artin_mazur_holds: bool,
}

impl FunctionalEquation {
    pub fn holds(&self) -> bool {
        self.lefschetz_holds && self.artin_mazur_holds
    }
}

pub fn functional_equation_check(m: &IntMatrix) -> Result<FunctionalEquation, ZetaError> {
    let lefschetz = lefschetz_zeta(m);
    let s = signs(m);
    functional_equation_for(m, &lefschetz, &compose_artin_mazur(&lefschetz, &s), &s)
}

pub(crate) fn functional_equation_for(
    m: &IntMatrix,
    lefschetz: &RatFunc,
    artin_mazur: &RatFunc,
    signs: &SignData,
) -> Result<FunctionalEquation, ZetaError> {
    let det = m.det();
    if det.is_zero() {
        return Err(ZetaError::Singular);
    }
    let b = if m.dim() == 1 {
        det.clone()
    } else {
        BigInt::one()
    };
    let power = Sign::parity(m.dim()).to_i64();
    let b_fn = RatFunc::constant(b.clone());

    let lhs = lefschetz.substitute_reciprocal(&det)?;
    let rhs = b_fn.mul(&lefschetz.pow(power)?);
    let lefschetz_holds = lhs == rhs;

    let lhs = artin_mazur.substitute_reciprocal(&det)?;
    let rhs = b_fn
        .pow(signs.epsilon.to_i64())?
        .mul(&artin_mazur.pow(power)?);
    let artin_mazur_holds = lhs == rhs;

    Ok(FunctionalEquation {
        det,
        b,
        lefschetz_holds,
        artin_mazur_holds,
    })
}

/// How the hyperbolicity verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// Decided by integer arithmetic alone.
    Exact,
    /// Decided by certified numeric bounds on root moduli.
    Numeric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub singular: bool,
    /// `n` such that the `n`-th cyclotomic polynomial divides `det(x - M)`.
    pub root_of_unity_orders: BTreeSet<u64>,
    pub quasihyperbolic: bool,
    pub hyperbolic: bool,
    pub certificate: Certificate,
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `Φ_1 .. Φ_max` by `x^n - 1 = prod_{k | n} Φ_k`.
pub fn cyclotomic_polynomials(max: u64) -> Vec<IntPoly> {
    let mut out: Vec<IntPoly> = Vec::with_capacity(max as usize);
    for n in 1..=max {
        let mut p = &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one();
        for k in (1..n).filter(|k| n % k == 0) {
            p = p
                .div_exact(&out[k as usize - 1])
                .expect("Φ_k divides x^n - 1");
        }
        out.push(p);
    }
    out
}

/// Orders `n` of the roots of unity among the roots of `p`.
pub fn root_of_unity_orders(p: &IntPoly) -> BTreeSet<u64> {
    let d = p.degree().unwrap_or(0) as u64;
    // φ(n) >= sqrt(n / 2), so φ(n) <= d forces n <= 2 d^2
    let max = (2 * d * d).max(2);
    cyclotomic_polynomials(max)
        .iter()
        .enumerate()
        .map(|(i, phi)| (i as u64 + 1, phi))
        .filter(|(n, phi)| euler_phi(*n) <= d && p.div_exact(phi).is_some())
        .map(|(n, _)| n)
        .collect()
}

/// Number of distinct roots of `p` on the unit circle, by integer arithmetic.
///
/// Unimodular roots of an integer polynomial are shared with its reversal.
/// After removing `±1`, the common factor is palindromic of even degree
/// `2k` and equals `x^k h(x + 1/x)`; unimodular roots correspond to the real
/// roots of `h` in `(-2, 2)`, two for each.
pub fn unimodular_root_count(p: &IntPoly) -> usize {
    let one = BigInt::one();
    let minus_one = -BigInt::one();
    let v = p.valuation().expect("nonzero polynomial");
    let p = p.shift_down(v);
    let deg = p.degree().unwrap();
    let g = poly_gcd(&p, &p.reversed(deg));
    let g = g
        .div_exact(&poly_gcd(&g, &g.derivative()))
        .expect("gcd divides g");
    let mut count = 0;
    let mut g = g;
    for x0 in [&one, &minus_one] {
        if g.eval(x0).is_zero() {
            g = g.strip_root(x0, 1);
            count += 1;
        }
    }
    if g.is_constant() {
        return count;
    }
    let h = palindromic_trace_form(&g);
    let two = BigInt::from(2);
    count + 2 * poly::distinct_roots_between(&h, &-&two, &two)
}

/// `h` with `g(x) = x^k h(x + 1/x)` for palindromic `g` of degree `2k`.
fn palindromic_trace_form(g: &IntPoly) -> IntPoly {
    let deg = g.degree().unwrap();
    assert!(
        deg.is_multiple_of(2),
        "palindromic factor must have even degree"
    );
    let k = deg / 2;
    debug_assert!((0..=deg).all(|i| g.coeff(i) == g.coeff(deg - i)));
    // x^j + x^-j as a polynomial in y = x + 1/x
    let y = IntPoly::monomial(BigInt::one(), 1);
    let mut dickson = vec![IntPoly::constant(BigInt::from(2)), y.clone()];
    for j in 2..=k {
        let next = &(&y * &dickson[j - 1]) - &dickson[j - 2];
        dickson.push(next);
    }
    let mut h = IntPoly::constant(g.coeff(k));
    for (j, d) in dickson.iter().enumerate().take(k + 1).skip(1) {
        h = &h + &d.scale(&g.coeff(k + j));
    }
    h
}

pub fn classify(m: &IntMatrix) -> ClassificationReport {
    classify_with_tolerance(m, DEFAULT_TOLERANCE)
}

/// Numeric root moduli count as off the unit circle only when their
/// certified interval clears `1` by more than `tolerance`.
pub fn classify_with_tolerance(m: &IntMatrix, tolerance: f64) -> ClassificationReport {
    let p = char_poly(m);
    let singular = m.det().is_zero();
    let orders = root_of_unity_orders(&p);
    let quasihyperbolic = orders.is_empty();

    let (hyperbolic, certificate) = if !quasihyperbolic {
        (false, Certificate::Exact)
    } else {
        let v = p.valuation().unwrap();
        let stripped = p.shift_down(v);
        let deg = stripped.degree().unwrap();
        if poly_gcd(&stripped, &stripped.reversed(deg)).is_constant() {
            (true, Certificate::Exact)
        } else if root_modulus_bounds(&p)
            .iter()
            .all(|b| b.hi < 1.0 - tolerance || b.lo > 1.0 + tolerance)
        {
            (true, Certificate::Numeric)
        } else {
            (unimodular_root_count(&p) == 0, Certificate::Exact)
        }
    };
    ClassificationReport {
        singular,
        root_of_unity_orders: orders,
        quasihyperbolic,
        hyperbolic,
        certificate,
    }
}

/// Deliberate corruption of the pipeline, used to prove that `check`
/// catches a wrong sign.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    FlipEpsilon,
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub max_m: usize,
    pub tolerance: f64,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            max_m: 10,
            tolerance: DEFAULT_TOLERANCE,
            fault: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ZetaReport {
    pub matrix: IntMatrix,
    pub char_factors: CharFactors,
    pub lefschetz_zeta: RatFunc,
    pub artin_mazur_zeta: RatFunc,
    pub generating_function: RatFunc,
    pub signs: SignData,
    /// `a_1 .. a_N`
    pub counts: Vec<BigInt>,
    /// `ã_1 .. ã_N`
    pub signed_counts: Vec<BigInt>,
    /// `c_1 .. c_N`
    pub exponents: Vec<BigInt>,
    pub classification: ClassificationReport,
    /// `None` when `det(M) = 0`.
    pub functional_equation: Option<FunctionalEquation>,
    pub growth_rate: Option<Estimate>,
    /// Whether the growth rate error meets the requested tolerance.
    pub growth_rate_within_tolerance: bool,
}

impl ZetaReport {
    pub fn compute(m: &IntMatrix, options: &ReportOptions) -> Result<Self, ZetaError> {
        let n = options.max_m.max(1);
        let factors = char_factors(m);
        let lefschetz = alternating_product(&factors.factors, Sign::Plus);
        let mut sign_data = signs(m);
        if options.fault == Some(Fault::FlipEpsilon) {
            sign_data.epsilon = sign_data.epsilon.flip();
        }
        let artin_mazur = compose_artin_mazur(&lefschetz, &sign_data);
        let generating = artin_mazur.log_derivative()?;

        let signed_counts = (1..=n as u64)
            .map(|i| signed_count(m, i))
            .collect::<Result<Vec<_>, _>>()?;
        let counts: Vec<BigInt> = signed_counts.iter().map(Signed::abs).collect();
        let exponents = exponents_from_counts(&counts)?;

        let functional_equation =
            match functional_equation_for(m, &lefschetz, &artin_mazur, &sign_data) {
                Ok(fe) => Some(fe),
                Err(ZetaError::Singular) => None,
                Err(e) => return Err(e),
            };
        let growth = growth_rate_of(&generating);
        let within = growth.is_none_or(|g| g.error <= options.tolerance);

        Ok(Self {
            matrix: m.clone(),
            char_factors: factors,
            lefschetz_zeta: lefschetz,
            artin_mazur_zeta: artin_mazur,
            generating_function: generating,
            signs: sign_data,
            counts,
            signed_counts,
            exponents,
            classification: classify_with_tolerance(m, options.tolerance),
            functional_equation,
            growth_rate: growth,
            growth_rate_within_tolerance: within,
        })
    }
}

/// Taylor coefficients of a rational function that are known to be
/// integers.
pub fn integer_series(f: &RatFunc, n: usize) -> Result<Vec<BigInt>, PolyError> {
    Ok(f.series_expand(n)?
        .into_iter()
        .map(|c: BigRational| {
            assert!(c.is_integer(), "series coefficient {c} is not integral");
            c.to_integer()
        })
        .collect())
}

/// Sum of `(-1)^k trace Λ^k(A)`, which equals `det(1 - A)`.
pub fn alternating_trace_sum(a: &IntMatrix) -> BigInt {
    (0..=a.dim())
        .map(|k| {
            let t = a.exterior_power(k).expect("k <= dim").trace();
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    fn cat() -> IntMatrix {
        IntMatrix::from_i64(&[&[2, 1], &[1, 1]])
    }

    fn swap() -> IntMatrix {
        IntMatrix::from_i64(&[&[0, 1], &[1, 0]])
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn scalar(n: i64) -> IntMatrix {
        IntMatrix::from_i64(&[&[n]])
    }

    #[test]
    fn factors() {
        assert_eq!(
            char_factors(&scalar(5)).factors,
            vec![p(&[1, -1]), p(&[1, -5])]
        );
        assert_eq!(
            char_factors(&cat()).factors,
            vec![p(&[1, -1]), p(&[1, -3, 1]), p(&[1, -1])]
        );
        assert_eq!(
            char_factors(&IntMatrix::zero(2)).factors,
            vec![p(&[1, -1]), p(&[1]), p(&[1])]
        );
    }

    #[test]
    fn lefschetz() {
        for n in -4..=4 {
            assert_eq!(lefschetz_zeta(&scalar(n)), rf(&[1, -n], &[1, -1]));
        }
        assert_eq!(lefschetz_zeta(&cat()), rf(&[1, -3, 1], &[1, -2, 1]));
        assert_eq!(lefschetz_zeta(&swap()), RatFunc::one());
    }

    #[test]
    fn counts() {
        assert_eq!(signed_count(&cat(), 1).unwrap(), BigInt::from(-1));
        assert_eq!(signed_count(&swap(), 2).unwrap(), BigInt::zero());
        assert_eq!(signed_count(&scalar(6), 1).unwrap(), BigInt::from(-5));
        let a: Vec<BigInt> = (1..=4)
            .map(|m| isolated_fixed_count(&cat(), m).unwrap())
            .collect();
        assert_eq!(a, ints(&[1, 5, 16, 45]));
        assert_eq!(
            isolated_fixed_count(&scalar(-1), 1).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            isolated_fixed_count(&scalar(-1), 2).unwrap(),
            BigInt::zero()
        );
        for m in 1..=5 {
            assert!(isolated_fixed_count(&IntMatrix::identity(2), m)
                .unwrap()
                .is_zero());
        }
        assert_eq!(signed_count(&cat(), 0), Err(ZetaError::ZeroIterate));
    }

    #[test]
    fn sign_data() {
        let s = signs(&cat());
        assert_eq!(
            s,
            SignData {
                sigma: 0,
                tau: 0,
                delta: Sign::Plus,
                epsilon: Sign::Minus
            }
        );
        let s = signs(&scalar(-1));
        assert_eq!(
            s,
            SignData {
                sigma: 0,
                tau: 1,
                delta: Sign::Plus,
                epsilon: Sign::Plus
            }
        );
        let s = signs(&swap());
        assert_eq!(
            s,
            SignData {
                sigma: 1,
                tau: 1,
                delta: Sign::Plus,
                epsilon: Sign::Plus
            }
        );
        let s = signs(&scalar(-2));
        assert_eq!((s.delta, s.epsilon), (Sign::Minus, Sign::Minus));
    }

    #[test]
    fn one_dimensional_closed_form() {
        for n in (-5i64..=5).filter(|&n| n != 0) {
            let expected = rf(&[1, -n.signum()], &[1, -n.abs()]);
            assert_eq!(artin_mazur_zeta(&scalar(n)), expected, "n = {n}");
        }
        assert_eq!(artin_mazur_zeta(&scalar(0)), rf(&[1], &[1, -1]));
    }

    #[test]
    fn cat_map_zeta() {
        let z = artin_mazur_zeta(&cat());
        assert_eq!(z, rf(&[1, -2, 1], &[1, -3, 1]));
        assert_eq!(artin_mazur_product_form(&cat(), Sign::Plus, Sign::Minus), z);
        let series = integer_series(&generating_function(&cat()), 4).unwrap();
        assert_eq!(series, ints(&[0, 1, 5, 16, 45]));
    }

    #[test]
    fn exponents() {
        assert_eq!(
            euler_exponents(&scalar(-1), 4).unwrap(),
            ints(&[2, -1, 0, 0])
        );
        assert_eq!(euler_exponents(&scalar(2), 4).unwrap(), ints(&[1, 1, 2, 3]));
        assert_eq!(
            euler_exponents(&IntMatrix::identity(3), 5).unwrap(),
            ints(&[0; 5])
        );
        assert_eq!(
            exponents_from_counts(&ints(&[1, 2])),
            Err(ZetaError::NonIntegralExponent { m: 2 })
        );
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn generating_functions() {
        let g = generating_function(&scalar(2));
        assert_eq!(
            g,
            RatFunc::new(p(&[0, 1]), &p(&[1, -1]) * &p(&[1, -2])).unwrap()
        );
        assert_eq!(integer_series(&g, 4).unwrap(), ints(&[0, 1, 3, 7, 15]));
        assert_eq!(
            generating_function(&IntMatrix::identity(2)),
            RatFunc::zero()
        );
    }

    #[test]
    fn growth_rates() {
        let g = growth_rate(&scalar(2)).unwrap();
        assert!((g.value - 2.0).abs() <= 1e-9 && g.error <= 1e-9);
        let g = growth_rate(&cat()).unwrap();
        assert!((g.value - (3.0 + 5f64.sqrt()) / 2.0).abs() <= 1e-9 && g.error <= 1e-9);
        assert_eq!(growth_rate(&IntMatrix::identity(2)), None);
    }

    #[test]
    fn functional_equations() {
        for n in (-5i64..=5).filter(|&n| n != 0) {
            let fe = functional_equation_check(&scalar(n)).unwrap();
            assert!(fe.holds(), "n = {n}");
            assert_eq!(fe.b, BigInt::from(n));
        }
        let fe = functional_equation_check(&cat()).unwrap();
        assert!(fe.holds());
        assert_eq!(fe.b, BigInt::one());
        assert!(functional_equation_check(&swap()).unwrap().holds());
        assert_eq!(
            functional_equation_check(&IntMatrix::zero(2)),
            Err(ZetaError::Singular)
        );
    }

    #[test]
    fn cyclotomics() {
        let phi = cyclotomic_polynomials(12);
        assert_eq!(phi[0], p(&[-1, 1]));
        assert_eq!(phi[1], p(&[1, 1]));
        assert_eq!(phi[3], p(&[1, 0, 1]));
        assert_eq!(phi[5], p(&[1, -1, 1]));
        assert_eq!(phi[11], p(&[1, 0, -1, 0, 1]));
        let totients: Vec<u64> = (1..=10).map(euler_phi).collect();
        assert_eq!(totients, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4]);
    }

    #[test]
    fn classification() {
        let c = classify(&cat());
        assert!(c.root_of_unity_orders.is_empty());
        assert!(c.quasihyperbolic && c.hyperbolic && !c.singular);
        assert_eq!(c.certificate, Certificate::Numeric);

        let c = classify(&swap());
        assert_eq!(c.root_of_unity_orders, BTreeSet::from([1, 2]));
        assert!(!c.quasihyperbolic && !c.hyperbolic);

        let c = classify(&IntMatrix::from_i64(&[&[0, -1], &[1, 0]]));
        assert_eq!(c.root_of_unity_orders, BTreeSet::from([4]));
        assert!(!c.quasihyperbolic);

        let c = classify(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert!(c.hyperbolic);
        assert_eq!(c.certificate, Certificate::Exact);

        assert!(classify(&IntMatrix::zero(2)).singular);
    }

    #[test]
    fn salem_type_spectrum_is_not_hyperbolic() {
        // x^4 - x^3 - x^2 - x + 1: Salem number, two conjugates on the circle
        let companion =
            IntMatrix::from_i64(&[&[0, 0, 0, -1], &[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        assert_eq!(char_poly(&companion), p(&[1, -1, -1, -1, 1]));
        let c = classify(&companion);
        assert!(c.quasihyperbolic);
        assert!(!c.hyperbolic);
        assert_eq!(c.certificate, Certificate::Exact);
        assert_eq!(unimodular_root_count(&p(&[1, -1, -1, -1, 1])), 2);
    }

    #[test]
    fn unimodular_counts() {
        assert_eq!(unimodular_root_count(&p(&[1, -3, 1])), 0);
        assert_eq!(unimodular_root_count(&p(&[1, 0, 1])), 2);
        assert_eq!(unimodular_root_count(&p(&[-1, 0, 1])), 2);
        assert_eq!(unimodular_root_count(&(&p(&[0, 0, 1]) * &p(&[1, 1, 1]))), 2);
    }

    #[test]
    fn trace_sum() {
        assert_eq!(alternating_trace_sum(&cat()), BigInt::from(-1));
        assert_eq!(alternating_trace_sum(&cat().pow(2)), BigInt::from(-5));
    }

    #[test]
    fn report_assembles() {
        let r = ZetaReport::compute(
            &cat(),
            &ReportOptions {
                max_m: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.counts, ints(&[1, 5, 16, 45]));
        assert_eq!(r.signed_counts, ints(&[-1, -5, -16, -45]));
        assert!(r.functional_equation.unwrap().holds());
        assert!(r.growth_rate_within_tolerance);
        let r = ZetaReport::compute(&IntMatrix::zero(1), &ReportOptions::default()).unwrap();
        assert!(r.functional_equation.is_none());
    }
}
