//! Complex roots of integer polynomials with certified inclusion disks.
//!
//! Roots are approximated with the Aberth iteration in double precision and
//! then enclosed in Weierstrass disks: when the disks are pairwise disjoint
//! each one holds exactly one root. Rounding in the residual evaluation is
//! accounted for in the radii.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::exactalg::{Monomial, QPoly, Rational, Rationals};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("coefficient does not fit a double")]
    Overflow,
    #[error("root iteration did not converge")]
    NoConvergence,
    #[error("inclusion disks overlap; roots are not separated in double precision")]
    Unseparated,
}

/// A disk known to contain exactly one root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootDisk {
    pub center: Complex64,
    pub radius: f64,
}

/// Coefficients from the leading one down to the constant term.
pub fn to_f64_coeffs(coeffs: &[BigInt]) -> Result<Vec<f64>, RootError> {
    coeffs
        .iter()
        .map(|c| c.to_f64().filter(|v| v.is_finite()).ok_or(RootError::Overflow))
        .collect()
}

fn trim(coeffs: &[BigInt]) -> &[BigInt] {
    let start = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
    &coeffs[start..]
}

/// Univariate polynomial from descending integer coefficients.
pub fn qpoly_from_desc(coeffs: &[BigInt]) -> QPoly {
    let n = coeffs.len();
    QPoly::from_terms(
        1,
        Rationals,
        coeffs.iter().enumerate().map(|(i, c)| (Monomial(vec![(n - 1 - i) as u32]), Rational::from_integer(c.clone()))),
    )
}

/// Descending integer coefficients of a univariate polynomial with
/// integer coefficients.
pub fn desc_from_qpoly(p: &QPoly) -> Vec<BigInt> {
    let d = p.total_degree().unwrap_or(0) as usize;
    let mut out = vec![BigInt::zero(); d + 1];
    for (m, c) in p.terms() {
        out[d - m.0[0] as usize] = c.to_integer();
    }
    out
}

/// p / gcd(p, p'), as primitive integer coefficients.
pub fn squarefree_part(coeffs: &[BigInt]) -> Vec<BigInt> {
    let p = qpoly_from_desc(trim(coeffs));
    if p.total_degree().unwrap_or(0) <= 1 {
        return desc_from_qpoly(&p.normalized());
    }
    let g = p.gcd(&p.derivative(0)).expect("same ring");
    let q = p.div_exact(&g).expect("same ring").expect("gcd divides");
    desc_from_qpoly(&q.normalized())
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Approximate roots of a polynomial with nonzero leading coefficient.
pub fn aberth(coeffs: &[f64]) -> Result<Vec<Complex64>, RootError> {
    let n = coeffs.len().saturating_sub(1);
    if coeffs.is_empty() || coeffs[0] == 0.0 {
        return Err(RootError::ZeroPolynomial);
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let lc = coeffs[0];
    let bound = 1.0 + coeffs[1..].iter().map(|c| (c / lc).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * bound, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(coeffs, z[i]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::one() / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::one() - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1e-300));
        }
        if moved < 1e-15 {
            return Ok(z);
        }
    }
    // tolerate stagnation at the rounding floor; the inclusion test decides
    if z.iter().all(|r| r.re.is_finite() && r.im.is_finite()) {
        Ok(z)
    } else {
        Err(RootError::NoConvergence)
    }
}

/// Certified disks around every root of a square-free integer polynomial.
pub fn certified_roots(coeffs: &[BigInt]) -> Result<Vec<RootDisk>, RootError> {
    let coeffs = trim(coeffs);
    if coeffs.is_empty() {
        return Err(RootError::ZeroPolynomial);
    }
    let f = to_f64_coeffs(coeffs)?;
    let z = aberth(&f)?;
    let n = z.len();
    let eps = f64::EPSILON;
    let mut disks = Vec::with_capacity(n);
    for i in 0..n {
        let (p, _) = horner(&f, z[i]);
        let absz = z[i].norm();
        // bound on |computed p(z) - p(z)|, including coefficient rounding
        let mut scale = 0.0;
        for c in &f {
            scale = scale * absz + c.abs();
        }
        let err = 4.0 * (n as f64 + 2.0) * eps * scale;
        let mut denom = f[0].abs();
        for j in (0..n).filter(|&j| j != i) {
            denom *= (z[i] - z[j]).norm();
        }
        if denom == 0.0 || !denom.is_finite() {
            return Err(RootError::Unseparated);
        }
        let w = (p.norm() + err) / denom;
        let radius = (n as f64 * w) * (1.0 + 1e-9) + 4.0 * eps * absz;
        disks.push(RootDisk { center: z[i], radius });
    }
    for i in 0..n {
        for j in i + 1..n {
            if (disks[i].center - disks[j].center).norm() <= disks[i].radius + disks[j].radius {
                return Err(RootError::Unseparated);
            }
        }
    }
    Ok(disks)
}

/// Mahler measure |lc|·∏ max(1, |root|) of a square-free polynomial.
pub fn mahler_measure(coeffs: &[BigInt]) -> Result<f64, RootError> {
    let coeffs = trim(coeffs);
    let lc = coeffs.first().ok_or(RootError::ZeroPolynomial)?.to_f64().ok_or(RootError::Overflow)?;
    let f = to_f64_coeffs(coeffs)?;
    let z = aberth(&f)?;
    Ok(lc.abs() * z.iter().map(|r| r.norm().max(1.0)).product::<f64>())
}

/// Rational roots of a univariate polynomial over Q, ascending, without
/// multiplicity. Candidates come from the numeric roots and are confirmed
/// by exact evaluation.
pub fn rational_roots(p: &QPoly) -> Vec<Rational> {
    if p.is_zero() || p.total_degree() == Some(0) {
        return Vec::new();
    }
    let sq = squarefree_part(&desc_from_qpoly(&p.normalized()));
    let q = qpoly_from_desc(&sq);
    let lc = Rational::from_integer(sq[0].clone());
    let Ok(f) = to_f64_coeffs(&sq) else {
        return Vec::new();
    };
    let Ok(approx) = aberth(&f) else {
        return Vec::new();
    };
    let lcf = lc.to_f64().unwrap_or(f64::INFINITY);
    let mut out: Vec<Rational> = Vec::new();
    for z in approx {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        // a root n/d in lowest terms has d | lc, so lc·root is an integer
        let scaled = (z.re * lcf).round();
        let Some(num) = num_bigint::BigInt::from_f64(scaled) else {
            continue;
        };
        let cand = Rational::from_integer(num) / &lc;
        if q.eval(std::slice::from_ref(&cand)).map(|v| v.is_zero()).unwrap_or(false) && !out.contains(&cand) {
            out.push(cand);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn golden_ratio_square() {
        let d = certified_roots(&big(&[1, -3, 1])).unwrap();
        let top = d.iter().map(|r| r.center.norm()).fold(0.0, f64::max);
        assert!((top - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(d.iter().all(|r| r.radius < 1e-10));
    }

    #[test]
    fn complex_pair() {
        let d = certified_roots(&big(&[1, 0, 1])).unwrap();
        assert!(d.iter().all(|r| (r.center.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn squarefree() {
        // (x-1)^2 (x+2)
        assert_eq!(squarefree_part(&big(&[1, 0, -3, 2])), big(&[1, 1, -2]));
        assert!(certified_roots(&big(&[1, -2, 1])).is_err());
    }

    #[test]
    fn rational_root_search() {
        let p = crate::exactalg::parse_poly_with("6x^3 - 7x^2 + 1", &["x"]).unwrap();
        // (x - 1)(2x - 1)(3x + 1)
        assert_eq!(rational_roots(&p), vec![Rational::new((-1).into(), 3.into()), Rational::new(1.into(), 2.into()), Rational::one()]);
        let q = crate::exactalg::parse_poly_with("x^3 (x^2 + 1)", &["x"]).unwrap();
        assert_eq!(rational_roots(&q), vec![Rational::zero()]);
    }

    #[test]
    fn mahler() {
        assert!((mahler_measure(&big(&[1, -1, -1])).unwrap() - 1.618033988749895).abs() < 1e-12);
        assert!((mahler_measure(&big(&[1, 0, 1])).unwrap() - 1.0).abs() < 1e-12);
        assert!((mahler_measure(&big(&[2, 0, 1])).unwrap() - 2.0).abs() < 1e-12);
    }
}
