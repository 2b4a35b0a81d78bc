//! Univariate polynomials over the integers and reduced rational functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::linalg::{IntMatrix, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("pole at origin")]
    PoleAtOrigin,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("reciprocal substitution needs a nonzero scale")]
    ZeroScale,
    #[error("internal error: determinant interpolation produced a non-integral coefficient")]
    NonIntegralInterpolation,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A sign, used for the substitution `z -> ±z` and the orbit sign data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: &BigInt) -> Option<Self> {
        if x.is_positive() {
            Some(Sign::Plus)
        } else if x.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    /// `(-1)^n`.
    pub fn parity(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Polynomial with integer coefficients in ascending degree order.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x - root`.
    pub fn linear_root(root: &BigInt) -> Self {
        Self::new(vec![-root, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest-order nonzero coefficient.
    pub fn trailing(&self) -> Option<&BigInt> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Order of vanishing at zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides by the content; the sign is kept.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Divides every coefficient by `c`, which must divide each exactly.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|x| {
                    debug_assert!(x.is_multiple_of(c));
                    x / c
                })
                .collect(),
        )
    }

    /// Same polynomial with positive leading coefficient.
    pub fn with_positive_lead(self) -> Self {
        if self.lead().is_some_and(Signed::is_negative) {
            -&self
        } else {
            self
        }
    }

    /// `p(-x)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^n p(1/x)`, requires `n >= deg p`.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(self.degree().is_none_or(|d| d <= n));
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::new(coeffs)
    }

    /// `p(x) / x^k` where `x^k` divides `p`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lead().unwrap();
        let mut r = self.coeffs.clone();
        let mut exponent = da - db + 1;
        while r.len() > db && !r.is_empty() {
            let deg = r.len() - 1;
            let lr = r[deg].clone();
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[deg - db + i] -= &lr * bc;
            }
            exponent -= 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.len() <= db {
                break;
            }
        }
        let r = Self::new(r);
        if exponent > 0 {
            r.scale(&Pow::pow(lb, exponent))
        } else {
            r
        }
    }

    /// Quotient `self / d` when `d` divides `self` in `Z[x]`, else `None`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let Some(da) = self.degree() else {
            return Some(Self::zero());
        };
        if da < dd {
            return None;
        }
        let ld = d.lead().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - dd + 1];
        for k in (0..=da - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (quot, rem) = top.div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &quot * dc;
            }
            q[k] = quot;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Order of vanishing at `x0` by repeated exact division by `x - x0`.
    pub fn multiplicity_at(&self, x0: &BigInt) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let factor = Self::linear_root(x0);
        let mut p = self.clone();
        let mut count = 0;
        while p.eval(x0).is_zero() {
            p = p
                .div_exact(&factor)
                .expect("x - x0 divides p when p(x0) = 0");
            count += 1;
        }
        Ok(count)
    }

    /// Divides out `(x - x0)^k`; the caller guarantees divisibility.
    pub fn strip_root(&self, x0: &BigInt, k: usize) -> Self {
        let factor = Self::linear_root(x0);
        (0..k).fold(self.clone(), |p, _| {
            p.div_exact(&factor)
                .expect("root multiplicity was computed exactly")
        })
    }

    /// Squarefree decomposition `p = unit * prod q_i^i` (Yun).
    ///
    /// Factors are primitive with positive leading coefficient and pairwise
    /// coprime; constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Result<SquarefreeDecomposition, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut factors = Vec::new();
        if !self.is_constant() {
            let f = self.primitive_part();
            let df = f.derivative();
            let a0 = poly_gcd(&f, &df);
            let mut b = f.div_exact(&a0).expect("gcd divides f");
            let mut c = df.div_exact(&a0).expect("gcd divides f'");
            let mut d = &c - &b.derivative();
            let mut i = 1;
            while !b.is_constant() {
                let a = poly_gcd(&b, &d);
                if !a.is_constant() {
                    factors.push((a.clone(), i));
                }
                b = b.div_exact(&a).expect("gcd divides b");
                c = d.div_exact(&a).expect("gcd divides d");
                d = &c - &b.derivative();
                i += 1;
            }
        }
        let product = factors
            .iter()
            .fold(Self::one(), |acc, (q, i)| &acc * &q.pow(*i as u32));
        let unit = self.div_exact(&product).expect("factor product divides p");
        debug_assert!(unit.is_constant());
        Ok(SquarefreeDecomposition {
            unit: unit.coeff(0),
            factors,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

/// `p = unit * prod factor^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

/// Primitive gcd with positive leading coefficient, by the subresultant
/// polynomial remainder sequence.
///
/// `gcd(0, 0)` is defined as `0`.
pub fn poly_gcd(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let (mut a, mut b) = if p.degree() >= q.degree() {
        (p.primitive_part(), q.primitive_part())
    } else {
        (q.primitive_part(), p.primitive_part())
    };
    if b.is_zero() {
        return a.with_positive_lead();
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b.primitive_part().with_positive_lead();
        }
        if r.degree() == Some(0) {
            return IntPoly::one();
        }
        a = b;
        let divisor = &g * Pow::pow(&h, delta);
        b = r.div_scalar_exact(&divisor);
        g = a.lead().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => Pow::pow(&g, delta) / Pow::pow(&h, delta - 1),
        };
    }
}

/// `det(constant + z * linear)` by evaluation at `z = 0..=n` and exact
/// interpolation.
pub fn det_poly_linear(constant: &IntMatrix, linear: &IntMatrix) -> Result<IntPoly, PolyError> {
    let n = constant.dim();
    if linear.dim() != n {
        return Err(LinalgError::DimensionMismatch {
            left: n,
            right: linear.dim(),
        }
        .into());
    }
    let values: Vec<BigInt> = (0..=n)
        .map(|z| {
            let zl = linear.scale(&BigInt::from(z));
            (constant + &zl).det()
        })
        .collect();

    // Newton forward differences: p(z) = sum_k diff_k * z(z-1)...(z-k+1) / k!
    let mut diffs = values;
    let mut newton = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        newton.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }

    // n! * p(z) accumulated with integer weights n!/k!, divided at the end.
    let mut scaled = IntPoly::zero();
    let mut falling = IntPoly::one();
    let n_factorial: BigInt = (1..=n).map(BigInt::from).product();
    for (k, dk) in newton.iter().enumerate() {
        let weight: BigInt = (k + 1..=n).map(BigInt::from).product();
        scaled = &scaled + &falling.scale(&(dk * weight));
        falling = &falling * &IntPoly::linear_root(&BigInt::from(k));
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for c in scaled.coeffs() {
        let (q, r) = c.div_rem(&n_factorial);
        if !r.is_zero() {
            return Err(PolyError::NonIntegralInterpolation);
        }
        coeffs.push(q);
    }
    Ok(IntPoly::new(coeffs))
}

/// Characteristic polynomial `det(x - m)`.
pub fn char_poly(m: &IntMatrix) -> IntPoly {
    det_poly_linear(&-m, &IntMatrix::identity(m.dim())).expect("dimensions agree")
}

/// Open regions of the real line used for eigenvalue sign bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootRegion {
    /// `(-inf, -1)`
    BelowMinusOne,
    /// `(1, inf)`
    AboveOne,
}

/// Number of real roots of `p` in `region`, counted with multiplicity.
pub fn real_root_count_region(p: &IntPoly, region: RootRegion) -> Result<usize, PolyError> {
    let sqf = p.squarefree_decomposition()?;
    let one = BigInt::one();
    let minus_one = -BigInt::one();
    let mut total = 0;
    for (q, mult) in &sqf.factors {
        // q is squarefree, so each of +-1 is at most a simple root.
        let mut q = q.clone();
        for x0 in [&one, &minus_one] {
            if q.eval(x0).is_zero() {
                q = q.strip_root(x0, 1);
            }
        }
        let chain = sturm_chain(&q);
        let distinct = match region {
            RootRegion::AboveOne => {
                variations(&chain, Point::Finite(&one)) - variations(&chain, Point::PosInf)
            }
            RootRegion::BelowMinusOne => {
                variations(&chain, Point::NegInf) - variations(&chain, Point::Finite(&minus_one))
            }
        };
        total += mult * distinct;
    }
    Ok(total)
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`,
/// neither endpoint being a root.
pub(crate) fn distinct_roots_between(p: &IntPoly, lo: &BigInt, hi: &BigInt) -> usize {
    debug_assert!(!p.eval(lo).is_zero() && !p.eval(hi).is_zero());
    let chain = sturm_chain(p);
    variations(&chain, Point::Finite(lo)) - variations(&chain, Point::Finite(hi))
}

enum Point<'a> {
    Finite(&'a BigInt),
    PosInf,
    NegInf,
}

/// Sturm sequence built from sign-corrected pseudo-remainders; every
/// element is made primitive, which keeps signs intact.
fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.primitive_part(), p.derivative().primitive_part()];
    if chain[1].is_zero() {
        chain.pop();
        return chain;
    }
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        let mut r = a.pseudo_rem(b);
        let lb_negative = b.lead().unwrap().is_negative();
        let exponent = a.degree().unwrap() - b.degree().unwrap() + 1;
        if lb_negative && exponent % 2 == 1 {
            r = -&r;
        }
        if r.is_zero() {
            return chain;
        }
        chain.push((-&r).primitive_part());
    }
}

fn variations(chain: &[IntPoly], at: Point<'_>) -> usize {
    let signs = chain.iter().filter_map(|p| {
        let s = match at {
            Point::Finite(x) => p.eval(x).signum(),
            Point::PosInf => p.lead().map_or(BigInt::zero(), |l| l.signum()),
            Point::NegInf => {
                let l = p.lead().map_or(BigInt::zero(), |l| l.signum());
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -l
                } else {
                    l
                }
            }
        };
        (!s.is_zero()).then_some(s)
    });
    let mut count = 0;
    let mut last: Option<BigInt> = None;
    for s in signs {
        if last.as_ref().is_some_and(|l| *l != s) {
            count += 1;
        }
        last = Some(s);
    }
    count
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: Self) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: Self) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: Self) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Ascending plain-text form in `z`, e.g. `1 - 3 z + z^2`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag} ")?;
                    }
                    if i == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A reduced element of `Q(z)` with integer numerator and denominator.
///
/// Canonical form: `gcd(num, den) = 1` as polynomials, the coefficients of
/// `num` and `den` share no common integer factor, and the lowest-order
/// nonzero coefficient of `den` is positive. Equal functions therefore have
/// identical representations. Zero is `0 / 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.trailing().unwrap().is_negative() {
            num = -&num;
            den = -&den;
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Self::new(p, IntPoly::one()).expect("unit denominator")
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_poly(IntPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("nonzero denominators")
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self, PolyError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Self::new(base.num.pow(e), base.den.pow(e))
    }

    /// `f(s z)`.
    pub fn substitute_signed(&self, s: Sign) -> Self {
        match s {
            Sign::Plus => self.clone(),
            Sign::Minus => Self::new(self.num.negate_variable(), self.den.negate_variable())
                .expect("substitution keeps the denominator nonzero"),
        }
    }

    /// `f(1 / (scale * z))`, cleared of negative powers of `z`.
    pub fn substitute_reciprocal(&self, scale: &BigInt) -> Result<Self, PolyError> {
        if scale.is_zero() {
            return Err(PolyError::ZeroScale);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // p(1/(Dz)) = sum c_i (Dz)^(n-i) / (Dz)^n
        let lift = |p: &IntPoly| -> (IntPoly, usize) {
            let n = p.degree().unwrap();
            let coeffs = (0..=n)
                .map(|j| {
                    let i = n - j;
                    p.coeff(i) * Pow::pow(scale, j)
                })
                .collect();
            (IntPoly::new(coeffs), n)
        };
        let (top, n_num) = lift(&self.num);
        let (bottom, n_den) = lift(&self.den);
        // top / (Dz)^n_num  over  bottom / (Dz)^n_den
        let num = &top * &IntPoly::monomial(Pow::pow(scale, n_den), n_den);
        let den = &bottom * &IntPoly::monomial(Pow::pow(scale, n_num), n_num);
        Self::new(num, den)
    }

    /// Taylor coefficients at zero through degree `n`.
    pub fn series_expand(&self, n: usize) -> Result<Vec<BigRational>, PolyError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(PolyError::PoleAtOrigin);
        }
        let d0 = BigRational::from_integer(d0);
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = BigRational::from_integer(self.num.coeff(k));
            for j in 1..=k.min(self.den.degree().unwrap()) {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    acc -= &out[k - j] * BigRational::from_integer(dj);
                }
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    /// `z f'(z) / f(z)`.
    pub fn log_derivative(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let wronskian =
            &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let num = &wronskian * &IntPoly::monomial(BigInt::one(), 1);
        Self::new(num, &self.num * &self.den)
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_rational(x) / d)
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
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

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ints(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn ring_ops() {
        assert_eq!(&p(&[1, -1]) + &p(&[0, 1]), p(&[1]));
        assert_eq!(&p(&[1, -1]) * &p(&[1, 1]), p(&[1, 0, -1]));
        assert_eq!(p(&[1, -3, 1]).derivative(), p(&[-3, 2]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), IntPoly::zero());
        assert_eq!(p(&[0, 0, 0]), IntPoly::zero());
        assert_eq!(p(&[2, 4]).scale(&BigInt::from(-3)), p(&[-6, -12]));
    }

    #[test]
    fn gcds() {
        // gcd(1 - z^2, (1 - z)^2) = z - 1
        assert_eq!(poly_gcd(&p(&[1, 0, -1]), &p(&[1, -2, 1])), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[2, -6, 2]), &IntPoly::zero()), p(&[1, -3, 1]));
        assert_eq!(poly_gcd(&p(&[1, -3, 1]), &p(&[1, -1])), p(&[1]));
        // (x^2+1)(x-3) and (x^2+1)(2x+5)
        let a = &p(&[1, 0, 1]) * &p(&[-3, 1]);
        let b = &p(&[1, 0, 1]) * &p(&[5, 2]);
        assert_eq!(poly_gcd(&a, &b), p(&[1, 0, 1]));
        // classic subresultant test case (Knuth)
        let a = p(&[-5, 2, 8, -3, -3, 0, 1, 0, 1]);
        let b = p(&[21, -9, -4, 0, 5, 0, 3]);
        assert_eq!(poly_gcd(&a, &b), p(&[1]));
    }

    #[test]
    fn exact_division() {
        let f = &p(&[1, 1]) * &p(&[2, -3, 5]);
        assert_eq!(f.div_exact(&p(&[1, 1])), Some(p(&[2, -3, 5])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[1, 2]).div_exact(&p(&[0, 2])), None);
    }

    #[test]
    fn pseudo_remainder() {
        // prem(x^2 + 1, 2x + 1) = 4 * (x^2+1) mod (2x+1) = 5
        assert_eq!(p(&[1, 0, 1]).pseudo_rem(&p(&[1, 2])), p(&[5]));
    }

    #[test]
    fn determinant_polynomials() {
        let cat = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let id = IntMatrix::identity(2);
        assert_eq!(det_poly_linear(&id, &-&cat).unwrap(), p(&[1, -3, 1]));
        let n = IntMatrix::from_i64(&[&[7]]);
        assert_eq!(
            det_poly_linear(&IntMatrix::identity(1), &-&n).unwrap(),
            p(&[1, -7])
        );
        assert_eq!(det_poly_linear(&id, &IntMatrix::zero(2)).unwrap(), p(&[1]));
        assert_eq!(char_poly(&cat), p(&[1, -3, 1]));
        assert!(det_poly_linear(&id, &IntMatrix::identity(3)).is_err());
    }

    #[test]
    fn det_poly_matches_pointwise_determinants() {
        let c =
            IntMatrix::from_i64(&[&[1, -2, 0, 3], &[2, 1, 1, 0], &[0, 3, -1, 2], &[1, 1, 1, 1]]);
        let l = IntMatrix::from_i64(&[
            &[0, 1, 2, -1],
            &[3, 0, 0, 1],
            &[-2, 2, 1, 0],
            &[1, 0, -3, 2],
        ]);
        let poly = det_poly_linear(&c, &l).unwrap();
        for z in [-7i64, -2, 5, 11, 40] {
            let z = BigInt::from(z);
            assert_eq!(poly.eval(&z), (&c + &l.scale(&z)).det());
        }
    }

    #[test]
    fn canonical_rational_functions() {
        // (1 - z^2)/(1 - z)^2 = (1 + z)/(1 - z)
        assert_eq!(rf(&[1, 0, -1], &[1, -2, 1]), rf(&[1, 1], &[1, -1]));
        let r = rf(&[1, 1], &[1, -1]);
        assert_eq!(r.num(), &p(&[1, 1]));
        assert_eq!(r.den(), &p(&[1, -1]));
        assert_eq!(rf(&[0], &[1, -3, 1]), RatFunc::zero());
        assert_eq!(rf(&[1, -3, 1], &[1, -3, 1]), RatFunc::one());
        assert_eq!(
            RatFunc::new(p(&[1]), IntPoly::zero()),
            Err(PolyError::ZeroDenominator)
        );
        // constants survive normalization
        assert_eq!(rf(&[2, 2], &[1, 1]), RatFunc::constant(BigInt::from(2)));
        assert_eq!(rf(&[1], &[-2]).num(), &p(&[-1]));
        assert_eq!(rf(&[1], &[-2]).den(), &p(&[2]));
    }

    #[test]
    fn field_ops() {
        let f = rf(&[1, -2], &[1, -1]);
        let inv = f.pow(-1).unwrap();
        assert_eq!(inv, rf(&[1, -1], &[1, -2]));
        assert_eq!(f.mul(&inv), RatFunc::one());
        assert_eq!(
            RatFunc::from_poly(p(&[1, 0, -1])).mul(&rf(&[1], &[1, -1])),
            RatFunc::from_poly(p(&[1, 1]))
        );
        assert_eq!(RatFunc::zero().inv(), Err(PolyError::DivisionByZero));
        assert_eq!(f.pow(0).unwrap(), RatFunc::one());
        assert_eq!(f.pow(2).unwrap(), rf(&[1, -4, 4], &[1, -2, 1]));
    }

    #[test]
    fn signed_substitution() {
        assert_eq!(
            rf(&[1, -2], &[1, -1]).substitute_signed(Sign::Minus),
            rf(&[1, 2], &[1, 1])
        );
        let f = rf(&[1, -3, 1], &[1, -2, 1]);
        assert_eq!(f.substitute_signed(Sign::Plus), f);
        assert_eq!(f.substitute_signed(Sign::Minus), rf(&[1, 3, 1], &[1, 2, 1]));
    }

    #[test]
    fn reciprocal_substitution() {
        for n in [-5i64, -2, 2, 3, 7] {
            let f = rf(&[1, -n], &[1, -1]);
            let g = f.substitute_reciprocal(&BigInt::from(n)).unwrap();
            // n (1 - z) / (1 - n z)
            assert_eq!(g, rf(&[n, -n], &[1, -n]));
        }
        assert_eq!(
            RatFunc::one()
                .substitute_reciprocal(&BigInt::from(9))
                .unwrap(),
            RatFunc::one()
        );
        let z = RatFunc::from_poly(p(&[0, 1]));
        let inv_z = z.substitute_reciprocal(&BigInt::one()).unwrap();
        assert_eq!(inv_z.num(), &p(&[1]));
        assert_eq!(inv_z.den(), &p(&[0, 1]));
        assert_eq!(
            z.substitute_reciprocal(&BigInt::zero()),
            Err(PolyError::ZeroScale)
        );
    }

    #[test]
    fn series() {
        assert_eq!(
            rf(&[1], &[1, -1]).series_expand(3).unwrap(),
            ints(&[1, 1, 1, 1])
        );
        assert_eq!(
            rf(&[1, -1], &[1, -2]).series_expand(4).unwrap(),
            ints(&[1, 1, 2, 4, 8])
        );
        assert_eq!(RatFunc::one().series_expand(2).unwrap(), ints(&[1, 0, 0]));
        assert_eq!(
            rf(&[1], &[0, 1]).series_expand(2),
            Err(PolyError::PoleAtOrigin)
        );
        // 1/(2 - z) = 1/2 + z/4 + ...
        let s = rf(&[1], &[2, -1]).series_expand(1).unwrap();
        assert_eq!(s[1], BigRational::new(BigInt::one(), BigInt::from(4)));
    }

    #[test]
    fn log_derivatives() {
        assert_eq!(
            rf(&[1], &[1, -1]).log_derivative().unwrap(),
            rf(&[0, 1], &[1, -1])
        );
        let g = rf(&[1, -1], &[1, -2]).log_derivative().unwrap();
        assert_eq!(
            g,
            RatFunc::new(p(&[0, 1]), &p(&[1, -1]) * &p(&[1, -2])).unwrap()
        );
        assert_eq!(g.series_expand(4).unwrap(), ints(&[0, 1, 3, 7, 15]));
        assert_eq!(RatFunc::one().log_derivative().unwrap(), RatFunc::zero());
        assert!(RatFunc::zero().log_derivative().is_err());
    }

    #[test]
    fn multiplicities() {
        let one = BigInt::one();
        assert_eq!(p(&[-1, 0, 1]).multiplicity_at(&one).unwrap(), 1);
        let f = &p(&[1, -2, 1]) * &p(&[1, 1]);
        assert_eq!(f.multiplicity_at(&one).unwrap(), 2);
        assert_eq!(f.multiplicity_at(&-&one).unwrap(), 1);
        assert_eq!(p(&[1, -3, 1]).multiplicity_at(&one).unwrap(), 0);
        assert_eq!(
            IntPoly::zero().multiplicity_at(&one),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn squarefree() {
        // 3 (x - 1)^2 (x + 2)^3 (x^2 + 1)
        let f = [
            &p(&[3]),
            &p(&[-1, 1]).pow(2),
            &p(&[2, 1]).pow(3),
            &p(&[1, 0, 1]),
        ]
        .into_iter()
        .fold(IntPoly::one(), |acc, x| &acc * x);
        let sqf = f.squarefree_decomposition().unwrap();
        assert_eq!(sqf.unit, BigInt::from(3));
        assert_eq!(
            sqf.factors,
            vec![(p(&[1, 0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]
        );
        let neg = p(&[5, -5]).squarefree_decomposition().unwrap();
        assert_eq!(neg.unit, BigInt::from(-5));
        assert_eq!(neg.factors, vec![(p(&[-1, 1]), 1)]);
    }

    #[test]
    fn root_counting() {
        let cat = p(&[1, -3, 1]);
        assert_eq!(
            real_root_count_region(&cat, RootRegion::AboveOne).unwrap(),
            1
        );
        assert_eq!(
            real_root_count_region(&cat, RootRegion::BelowMinusOne).unwrap(),
            0
        );
        let double = p(&[2, 1]).pow(2);
        assert_eq!(
            real_root_count_region(&double, RootRegion::BelowMinusOne).unwrap(),
            2
        );
        // roots exactly at +-1 are excluded
        let edge = &p(&[-1, 0, 1]) * &p(&[-1, 1]);
        assert_eq!(
            real_root_count_region(&edge, RootRegion::AboveOne).unwrap(),
            0
        );
        assert_eq!(
            real_root_count_region(&edge, RootRegion::BelowMinusOne).unwrap(),
            0
        );
        // (x - 3)^2 (x - 1/2) (x + 5) (x^2 + 4)
        let f = [
            &p(&[-3, 1]).pow(2),
            &p(&[-1, 2]),
            &p(&[5, 1]),
            &p(&[4, 0, 1]),
        ]
        .into_iter()
        .fold(IntPoly::one(), |acc, x| &acc * x);
        assert_eq!(real_root_count_region(&f, RootRegion::AboveOne).unwrap(), 2);
        assert_eq!(
            real_root_count_region(&f, RootRegion::BelowMinusOne).unwrap(),
            1
        );
        // negative leading coefficient
        let g = -&f;
        assert_eq!(real_root_count_region(&g, RootRegion::AboveOne).unwrap(), 2);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -3, 1]).to_string(), "1 - 3 z + z^2");
        assert_eq!(p(&[0, -1]).to_string(), "-z");
        assert_eq!(rf(&[1, 1], &[1, -1]).to_string(), "(1 + z) / (1 - z)");
    }
}
