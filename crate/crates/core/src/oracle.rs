//! Independent verification routes.
//!
//! None of these call the determinant of `1 - M^m` or the exterior-power
//! factors of the main pipeline. Fixed points are counted and enumerated
//! from the Smith normal form, the zeta series is rebuilt from its
//! exponential definition, and the orbit signs come from Sturm counts on a
//! characteristic polynomial computed by Faddeev-LeVerrier.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::poly::{real_root_count_region, IntPoly, RootRegion, Sign};
use crate::zeta::{self, integer_series, ZetaError, ZetaReport};

/// Largest fixed point set [`enumerate_fixed_points`] will list.
pub const ENUMERATION_GUARD: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration too large: {count} fixed points exceed the guard of {guard}")]
    EnumerationTooLarge { count: BigInt, guard: u64 },
    #[error("iterate index must be at least 1")]
    ZeroIterate,
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

/// Fixed points of `M^m` on the torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointSet {
    /// `false` when the fixed points contain a positive-dimensional subtorus.
    pub finite: bool,
    /// Points in `[0, 1)^d`, sorted lexicographically. Empty when infinite.
    pub points: Vec<Vec<BigRational>>,
}

impl FixedPointSet {
    pub fn count(&self) -> Option<usize> {
        self.finite.then_some(self.points.len())
    }
}

fn smith_diagonal_of_fixed_lattice(m: &IntMatrix, iterate: u64) -> (IntMatrix, Vec<BigInt>) {
    let a = &IntMatrix::identity(m.dim()) - &m.pow(iterate);
    let (_, d, v) = a.smith_normal_form();
    let diag = (0..d.dim()).map(|i| d.get(i, i).clone()).collect();
    (v, diag)
}

/// Index of the lattice `(1 - M^m) Z^d`, or 0 when it is not of full rank.
pub fn snf_fixed_count(m: &IntMatrix, iterate: u64) -> Result<BigInt, OracleError> {
    if iterate == 0 {
        return Err(OracleError::ZeroIterate);
    }
    let (_, diag) = smith_diagonal_of_fixed_lattice(m, iterate);
    if diag.iter().any(Zero::is_zero) {
        return Ok(BigInt::zero());
    }
    Ok(diag.iter().product())
}

/// Lists every fixed point of `M^m` when there are finitely many.
///
/// With `U (1 - M^m) V = D`, the fixed points are `V y mod 1` for
/// `y_i in {0, 1/d_i, ..., (d_i - 1)/d_i}`.
pub fn enumerate_fixed_points(m: &IntMatrix, iterate: u64) -> Result<FixedPointSet, OracleError> {
    if iterate == 0 {
        return Err(OracleError::ZeroIterate);
    }
    let (v, diag) = smith_diagonal_of_fixed_lattice(m, iterate);
    if diag.iter().any(Zero::is_zero) {
        return Ok(FixedPointSet {
            finite: false,
            points: Vec::new(),
        });
    }
    let count: BigInt = diag.iter().product();
    if count > BigInt::from(ENUMERATION_GUARD) {
        return Err(OracleError::EnumerationTooLarge {
            count,
            guard: ENUMERATION_GUARD,
        });
    }
    let dims: Vec<u64> = diag.iter().map(|x| x.to_u64().expect("guarded")).collect();
    let n = m.dim();
    let power = m.pow(iterate);

    let mut points = Vec::with_capacity(count.to_usize().unwrap());
    let mut index = vec![0u64; n];
    loop {
        let y: Vec<BigRational> = index
            .iter()
            .zip(&dims)
            .map(|(&k, &d)| BigRational::new(BigInt::from(k), BigInt::from(d)))
            .collect();
        let x: Vec<BigRational> = (0..n)
            .map(|i| {
                let s: BigRational = (0..n)
                    .map(|j| BigRational::from_integer(v.get(i, j).clone()) * &y[j])
                    .sum();
                s.fract_positive()
            })
            .collect();
        assert!(is_fixed(&power, &x), "enumerated point is not fixed");
        points.push(x);

        // odometer over the box prod [0, d_i)
        let Some(pos) = (0..n).find(|&i| index[i] + 1 < dims[i]) else {
            break;
        };
        index[pos] += 1;
        for slot in index.iter_mut().take(pos) {
            *slot = 0;
        }
    }
    points.sort();
    points.dedup();
    Ok(FixedPointSet {
        finite: true,
        points,
    })
}

trait FractPositive {
    fn fract_positive(&self) -> Self;
}

impl FractPositive for BigRational {
    /// Representative in `[0, 1)`.
    fn fract_positive(&self) -> Self {
        self - BigRational::from_integer(self.floor().to_integer())
    }
}

/// `(A x - x)` has integer coordinates.
pub fn is_fixed(a: &IntMatrix, x: &[BigRational]) -> bool {
    (0..a.dim()).all(|i| {
        let ax: BigRational = (0..a.dim())
            .map(|j| BigRational::from_integer(a.get(i, j).clone()) * &x[j])
            .sum();
        (ax - &x[i]).is_integer()
    })
}

/// Taylor coefficients of `exp(sum_{m<=n} a_m z^m / m)` through degree `n`.
pub fn exp_sum_zeta_series(m: &IntMatrix, n: usize) -> Result<Vec<BigRational>, OracleError> {
    let counts = (1..=n as u64)
        .map(|i| zeta::isolated_fixed_count(m, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(exp_of_count_series(&counts, n))
}

/// `E = exp(g)` with `g_k = a_k / k` via `n E_n = sum_{k=1}^n a_k E_{n-k}`.
pub fn exp_of_count_series(counts: &[BigInt], n: usize) -> Vec<BigRational> {
    let mut e: Vec<BigRational> = vec![BigRational::one()];
    for j in 1..=n {
        let mut acc = BigRational::zero();
        for k in 1..=j.min(counts.len()) {
            acc += BigRational::from_integer(counts[k - 1].clone()) * &e[j - k];
        }
        e.push(acc / BigRational::from_integer(BigInt::from(j)));
    }
    e
}

/// Coefficients of `prod_{m} (1 - z^m)^(-c_m)` through degree `n`, by
/// direct multiplication of truncated integer series.
pub fn euler_product_series(exponents: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut series = vec![BigInt::zero(); n + 1];
    series[0] = BigInt::one();
    for (i, c) in exponents.iter().enumerate().take(n) {
        let m = i + 1;
        if c.is_zero() {
            continue;
        }
        // (1 - w)^(-c) = sum_j binom(-c, j) (-w)^j, with w = z^m
        let mut factor = Vec::with_capacity(n / m + 1);
        let mut term = BigInt::one();
        for j in 0..=n / m {
            factor.push(term.clone());
            let jb = BigInt::from(j);
            term = term * (c + &jb) / (jb + 1u32);
        }
        let mut next = vec![BigInt::zero(); n + 1];
        for (k, s) in series.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (j, f) in factor.iter().enumerate() {
                if k + j * m > n {
                    break;
                }
                next[k + j * m] += s * f;
            }
        }
        series = next;
    }
    series
}

/// Characteristic polynomial `det(x - M)` by the Faddeev-LeVerrier
/// recurrence; all divisions are exact.
pub fn faddeev_leverrier(m: &IntMatrix) -> IntPoly {
    let n = m.dim();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let id = IntMatrix::identity(n);
    let mut aux = IntMatrix::zero(n);
    for k in 1..=n {
        let prev = coeffs[n - k + 1].clone();
        aux = &(m * &aux) + &id.scale(&prev);
        let t = (m * &aux).trace();
        coeffs[n - k] = -t / BigInt::from(k);
    }
    IntPoly::new(coeffs)
}

/// `(δ, ε)` from eigenvalue counts: `δ = (-1)^(n_-)`, `ε = (-1)^(n_- + n_+)`
/// with `n_-` real eigenvalues below `-1` and `n_+` above `1`.
pub fn sturm_sign_oracle(m: &IntMatrix) -> (Sign, Sign) {
    let p = faddeev_leverrier(m);
    let below = real_root_count_region(&p, RootRegion::BelowMinusOne).expect("monic");
    let above = real_root_count_region(&p, RootRegion::AboveOne).expect("monic");
    (Sign::parity(below), Sign::parity(below + above))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckOutcome {
    fn from_bool(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            name,
            status,
            detail: detail.into(),
        }
    }
}

/// Cross-checks every field of `report` against the independent routes.
pub fn cross_check(report: &ZetaReport) -> Vec<CheckOutcome> {
    let m = &report.matrix;
    let n = report.counts.len();
    let mut out = Vec::new();

    out.push(match &report.functional_equation {
        Some(fe) => CheckOutcome::from_bool(
            "functional_equation",
            fe.holds(),
            format!("D = {}, B = {}", fe.det, fe.b),
        ),
        None => CheckOutcome {
            name: "functional_equation",
            status: CheckStatus::Skipped,
            detail: "functional equation skipped (det = 0)".into(),
        },
    });

    let snf: Vec<BigInt> = (1..=n as u64)
        .map(|i| snf_fixed_count(m, i).expect("iterate >= 1"))
        .collect();
    out.push(CheckOutcome::from_bool(
        "snf_fixed_counts",
        snf == report.counts,
        format!("m = 1..{n}"),
    ));

    let mut enumerated = 0;
    let mut enum_ok = true;
    for (i, a) in report.counts.iter().enumerate() {
        match enumerate_fixed_points(m, i as u64 + 1) {
            Ok(set) => {
                enumerated += 1;
                let count = set.count().map_or(BigInt::zero(), BigInt::from);
                enum_ok &= &count == a;
            }
            Err(OracleError::EnumerationTooLarge { .. }) => {}
            Err(_) => enum_ok = false,
        }
    }
    out.push(CheckOutcome::from_bool(
        "fixed_point_enumeration",
        enum_ok,
        format!("{enumerated} iterates enumerated"),
    ));

    let gen_series = integer_series(&report.generating_function, n);
    out.push(CheckOutcome::from_bool(
        "generating_function_series",
        gen_series.is_ok_and(|s| s[1..] == report.counts[..] && s[0].is_zero()),
        "coefficients of z zeta'/zeta against a_m",
    ));

    let lef_series = report
        .lefschetz_zeta
        .log_derivative()
        .ok()
        .and_then(|f| integer_series(&f, n).ok());
    out.push(CheckOutcome::from_bool(
        "lefschetz_series",
        lef_series.is_some_and(|s| s[1..] == report.signed_counts[..]),
        "coefficients of z zeta~'/zeta~ against det(1 - M^m)",
    ));

    let exp_series = exp_of_count_series(&snf, n);
    let zeta_series = report.artin_mazur_zeta.series_expand(n).ok();
    out.push(CheckOutcome::from_bool(
        "exp_sum_series",
        zeta_series.as_ref().is_some_and(|s| *s == exp_series),
        "exp(sum a_m z^m / m) against the zeta series",
    ));

    let (delta, epsilon) = sturm_sign_oracle(m);
    out.push(CheckOutcome::from_bool(
        "sturm_signs",
        (delta, epsilon) == (report.signs.delta, report.signs.epsilon),
        format!(
            "oracle delta = {:+}, epsilon = {:+}",
            delta.to_i64(),
            epsilon.to_i64()
        ),
    ));

    let euler = euler_product_series(&report.exponents, n);
    out.push(CheckOutcome::from_bool(
        "euler_product",
        zeta_series.is_some_and(|s| {
            s.iter()
                .zip(&euler)
                .all(|(a, b)| *a == BigRational::from_integer(b.clone()))
        }),
        "prod (1 - z^m)^(-c_m) against the zeta series",
    ));

    let traces_ok = (1..=n.min(6) as u64)
        .all(|i| zeta::alternating_trace_sum(&m.pow(i)) == report.signed_counts[i as usize - 1]);
    out.push(CheckOutcome::from_bool(
        "trace_identity",
        traces_ok,
        "sum (-1)^k tr Λ^k(M^m) against det(1 - M^m)",
    ));

    let product = zeta::artin_mazur_product_form(m, delta, epsilon);
    out.push(CheckOutcome::from_bool(
        "product_form",
        product == report.artin_mazur_zeta,
        "factor-by-factor product with oracle signs",
    ));

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{Fault, ReportOptions};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn cat() -> IntMatrix {
        IntMatrix::from_i64(&[&[2, 1], &[1, 1]])
    }

    #[test]
    fn snf_counts() {
        assert_eq!(snf_fixed_count(&cat(), 2).unwrap(), BigInt::from(5));
        assert_eq!(
            snf_fixed_count(&IntMatrix::identity(2), 1).unwrap(),
            BigInt::zero()
        );
        assert_eq!(
            snf_fixed_count(&IntMatrix::from_i64(&[&[2]]), 3).unwrap(),
            BigInt::from(7)
        );
        assert_eq!(snf_fixed_count(&cat(), 0), Err(OracleError::ZeroIterate));
    }

    #[test]
    fn enumeration() {
        let doubling = IntMatrix::from_i64(&[&[2]]);
        let set = enumerate_fixed_points(&doubling, 1).unwrap();
        assert_eq!(set.points, vec![vec![q(0, 1)]]);
        let set = enumerate_fixed_points(&doubling, 2).unwrap();
        assert_eq!(
            set.points,
            vec![vec![q(0, 1)], vec![q(1, 3)], vec![q(2, 3)]]
        );
        let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let set = enumerate_fixed_points(&swap, 1).unwrap();
        assert!(!set.finite);
        assert_eq!(set.count(), None);
    }

    #[test]
    fn enumeration_of_cat_map() {
        let set = enumerate_fixed_points(&cat(), 2).unwrap();
        assert_eq!(set.count(), Some(5));
        let power = cat().pow(2);
        assert!(set.points.iter().all(|x| is_fixed(&power, x)));
        assert!(set.points.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_guard() {
        let err = enumerate_fixed_points(&IntMatrix::from_i64(&[&[3]]), 9).unwrap_err();
        assert!(matches!(err, OracleError::EnumerationTooLarge { .. }));
    }

    #[test]
    fn exp_series() {
        let ints = |xs: &[i64]| xs.iter().map(|&x| q(x, 1)).collect::<Vec<_>>();
        assert_eq!(
            exp_sum_zeta_series(&IntMatrix::from_i64(&[&[2]]), 3).unwrap(),
            ints(&[1, 1, 2, 4])
        );
        assert_eq!(
            exp_sum_zeta_series(&IntMatrix::identity(2), 3).unwrap(),
            ints(&[1, 0, 0, 0])
        );
        assert_eq!(
            exp_sum_zeta_series(&IntMatrix::from_i64(&[&[-1]]), 3).unwrap(),
            ints(&[1, 2, 2, 2])
        );
    }

    #[test]
    fn euler_products() {
        // c = [2, -1]: (1 - z^2) / (1 - z)^2 = 1 + 2z + 2z^2 + ...
        let s = euler_product_series(&[BigInt::from(2), BigInt::from(-1)], 4);
        assert_eq!(s, [1, 2, 2, 2, 2].map(BigInt::from).to_vec());
        // c = [1, 1, 2, 3] from the doubling map: (1 - z)/(1 - 2z)
        let c = [1, 1, 2, 3].map(BigInt::from);
        assert_eq!(
            euler_product_series(&c, 4),
            [1, 1, 2, 4, 8].map(BigInt::from).to_vec()
        );
        // large exponents stay cheap
        let s = euler_product_series(&[BigInt::from(1_000_000_000i64)], 2);
        assert_eq!(s[2], BigInt::from(500_000_000_500_000_000i64));
    }

    #[test]
    fn characteristic_polynomial() {
        assert_eq!(faddeev_leverrier(&cat()), IntPoly::from_i64(&[1, -3, 1]));
        let m = IntMatrix::from_i64(&[&[1, 2, 0], &[-1, 3, 4], &[2, 0, -2]]);
        assert_eq!(faddeev_leverrier(&m), crate::poly::char_poly(&m));
    }

    #[test]
    fn sturm_signs() {
        assert_eq!(sturm_sign_oracle(&cat()), (Sign::Plus, Sign::Minus));
        assert_eq!(
            sturm_sign_oracle(&IntMatrix::from_i64(&[&[-2]])),
            (Sign::Minus, Sign::Minus)
        );
        assert_eq!(
            sturm_sign_oracle(&IntMatrix::from_i64(&[&[0, -1], &[1, 0]])),
            (Sign::Plus, Sign::Plus)
        );
    }

    #[test]
    fn cross_check_passes_and_catches_fault() {
        let opts = ReportOptions {
            max_m: 6,
            ..Default::default()
        };
        let report = ZetaReport::compute(&cat(), &opts).unwrap();
        let outcomes = cross_check(&report);
        assert!(
            outcomes.iter().all(|o| o.status == CheckStatus::Pass),
            "{outcomes:?}"
        );

        let faulty = ReportOptions {
            fault: Some(Fault::FlipEpsilon),
            ..opts
        };
        let report = ZetaReport::compute(&cat(), &faulty).unwrap();
        assert!(cross_check(&report)
            .iter()
            .any(|o| o.status == CheckStatus::Fail));
    }

    #[test]
    fn cross_check_skips_singular_functional_equation() {
        let report = ZetaReport::compute(&IntMatrix::zero(2), &ReportOptions::default()).unwrap();
        let outcomes = cross_check(&report);
        assert_eq!(outcomes[0].status, CheckStatus::Skipped);
        assert!(
            outcomes[1..].iter().all(|o| o.status == CheckStatus::Pass),
            "{outcomes:?}"
        );
    }
}
