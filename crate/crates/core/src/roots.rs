//! Certified bounds on the moduli of complex polynomial roots.
//!
//! Roots are approximated with Aberth iteration in `f64`, then enclosed by
//! the inclusion disks `D(z_i, n |W_i|)` where `W_i` is the Weierstrass
//! correction. `W_i` is evaluated exactly over the dyadic rationals the
//! approximations already are, so the enclosure does not depend on the
//! floating point iteration being accurate. Every connected component of
//! `k` overlapping disks contains exactly `k` roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::poly::{poly_gcd, IntPoly};

/// Closed interval containing the moduli of `count` roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ModulusBound {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[cfg(test)]
impl ModulusBound {
    fn excludes(&self, r: f64) -> bool {
        self.hi < r || self.lo > r
    }
}

/// Bounds on the moduli of the distinct roots of `p`, one entry per
/// cluster of inclusion disks. Roots at zero are reported exactly.
pub(crate) fn root_modulus_bounds(p: &IntPoly) -> Vec<ModulusBound> {
    let mut out = Vec::new();
    let Some(v) = p.valuation() else {
        return out;
    };
    if v > 0 {
        out.push(ModulusBound {
            lo: 0.0,
            hi: 0.0,
            count: 1,
        });
    }
    let p = p.shift_down(v);
    if p.is_constant() {
        return out;
    }
    let squarefree = p
        .div_exact(&poly_gcd(&p, &p.derivative()))
        .expect("gcd divides p");
    let approx = aberth(&squarefree);
    out.extend(enclose(&squarefree, &approx));
    out
}

fn aberth(p: &IntPoly) -> Vec<Complex64> {
    let n = p.degree().unwrap();
    let lead = p.lead().unwrap().to_f64().unwrap();
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap() / lead)
        .collect();
    let dcoeffs: Vec<f64> = (1..=n).map(|i| coeffs[i] * i as f64).collect();

    // Cauchy bound on root moduli.
    let radius = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(0.5 * radius, theta)
        })
        .collect();

    let horner = |c: &[f64], x: Complex64| {
        c.iter()
            .rev()
            .fold(Complex64::zero(), |acc, &a| acc * x + a)
    };
    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pz = horner(&coeffs, z[i]);
            let dpz = horner(&dcoeffs, z[i]);
            if pz == Complex64::zero() {
                continue;
            }
            let ratio = pz / dpz;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::one() / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1e-300));
            }
        }
        if max_step < 1e-17 {
            break;
        }
    }
    z
}

#[derive(Clone)]
struct QComplex {
    re: BigRational,
    im: BigRational,
}

impl QComplex {
    fn from_f64(z: Complex64) -> Self {
        Self {
            re: BigRational::from_f64(z.re).unwrap_or_else(BigRational::zero),
            im: BigRational::from_f64(z.im).unwrap_or_else(BigRational::zero),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn enclose(p: &IntPoly, approx: &[Complex64]) -> Vec<ModulusBound> {
    let n = approx.len();
    let exact: Vec<QComplex> = approx.iter().map(|&z| QComplex::from_f64(z)).collect();
    let lead = BigRational::from_integer(p.lead().unwrap().clone());
    let lead_sqr = &lead * &lead;
    let n_sqr = BigRational::from_integer(BigInt::from(n * n));

    let radii: Vec<f64> = (0..n)
        .map(|i| {
            let z = &exact[i];
            let value = p.coeffs().iter().rev().fold(
                QComplex {
                    re: BigRational::zero(),
                    im: BigRational::zero(),
                },
                |acc, c| {
                    let mut next = acc.mul(z);
                    next.re += BigRational::from_integer(c.clone());
                    next
                },
            );
            let mut denom = lead_sqr.clone();
            for (j, w) in exact.iter().enumerate() {
                if j != i {
                    denom *= z.sub(w).norm_sqr();
                }
            }
            if denom.is_zero() {
                return f64::INFINITY;
            }
            let r_sqr = &n_sqr * value.norm_sqr() / denom;
            upper_sqrt(&r_sqr)
        })
        .collect();

    // Union-find over overlapping disks.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = (approx[i] - approx[j]).norm() * (1.0 - 1e-15);
            if gap <= radii[i] + radii[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }

    let mut clusters: Vec<(usize, ModulusBound)> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        let m = approx[i].norm();
        let lo = (m * (1.0 - 4.0 * f64::EPSILON) - radii[i]).max(0.0);
        let hi = m * (1.0 + 4.0 * f64::EPSILON) + radii[i];
        match clusters.iter_mut().find(|(r, _)| *r == root) {
            Some((_, b)) => {
                b.lo = b.lo.min(lo);
                b.hi = b.hi.max(hi);
                b.count += 1;
            }
            None => clusters.push((root, ModulusBound { lo, hi, count: 1 })),
        }
    }
    clusters.into_iter().map(|(_, b)| b).collect()
}

/// An `f64` no smaller than `sqrt(x)`.
fn upper_sqrt(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let approx = x.to_f64().unwrap_or(f64::INFINITY);
    if approx == 0.0 {
        // below the f64 range; any tiny positive bound works
        return f64::MIN_POSITIVE.sqrt();
    }
    approx.sqrt() * (1.0 + 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn golden_ratio_squares() {
        let bounds = root_modulus_bounds(&p(&[1, -3, 1]));
        assert_eq!(bounds.len(), 2);
        let big = (3.0 + 5f64.sqrt()) / 2.0;
        let small = 1.0 / big;
        for target in [big, small] {
            let b = bounds
                .iter()
                .find(|b| b.lo <= target && target <= b.hi)
                .unwrap();
            assert!(b.hi - b.lo < 1e-12);
        }
    }

    #[test]
    fn unit_circle_and_zero() {
        // x (x^2 + 1) (x - 2)
        let f = &(&p(&[0, 1]) * &p(&[1, 0, 1])) * &p(&[-2, 1]);
        let bounds = root_modulus_bounds(&f);
        assert_eq!(bounds.iter().map(|b| b.count).sum::<usize>(), 4);
        assert!(bounds.iter().any(|b| b.lo == 0.0 && b.hi == 0.0));
        assert!(bounds.iter().any(|b| !b.excludes(1.0)));
        assert!(bounds
            .iter()
            .any(|b| !b.excludes(2.0) && b.hi - b.lo < 1e-12));
    }

    #[test]
    fn repeated_roots_are_collapsed() {
        let f = p(&[-1, 1]).pow(3);
        let bounds = root_modulus_bounds(&f);
        assert_eq!(bounds.len(), 1);
        assert!(!bounds[0].excludes(1.0));
    }
}
