//! Cyclotomic polynomials and minimal polynomials of `2cos(2π/n)`.
//!
//! All polynomials here are univariate `QPoly`s in one variable.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::exactalg::{rat, Monomial, QPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("expected a univariate polynomial")]
    NotUnivariate,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has non-integer coefficients")]
    NotInteger,
    #[error("order must be at least 1")]
    ZeroOrder,
}

type Cache = RwLock<HashMap<u64, QPoly>>;

fn phi_cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn psi_cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn cached(cache: &Cache, n: u64, compute: impl FnOnce() -> QPoly) -> QPoly {
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    let p = compute();
    // concurrent writers compute the same value; keep the first
    cache.write().unwrap().entry(n).or_insert(p).clone()
}

fn x_pow(e: u64) -> QPoly {
    QPoly::monomial(1, Default::default(), Monomial(vec![e as u32]), Rational::one())
}

fn x() -> QPoly {
    QPoly::q_var(1, 0)
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The n-th cyclotomic polynomial Φ_n.
pub fn cyclotomic(n: u64) -> Result<QPoly, CycloError> {
    if n == 0 {
        return Err(CycloError::ZeroOrder);
    }
    Ok(cached(phi_cache(), n, || {
        let mut p = &x_pow(n) - &QPoly::q_one(1);
        for d in (1..n).filter(|d| n % d == 0) {
            let phi_d = cyclotomic(d).expect("d >= 1");
            p = p.div_exact(&phi_d).expect("same ring").expect("Φ_d divides x^n - 1");
        }
        p
    }))
}

/// Minimal polynomial Ψ_n of `2cos(2π/n)`.
pub fn cos_min_poly(n: u64) -> Result<QPoly, CycloError> {
    match n {
        0 => Err(CycloError::ZeroOrder),
        1 => Ok(&x() - &QPoly::q_const(1, rat(2))),
        2 => Ok(&x() + &QPoly::q_const(1, rat(2))),
        _ => Ok(cached(psi_cache(), n, || {
            // Φ_n(z) = z^k Σ a_{k+j} (z^j + z^-j), and z^j + z^-j = P_j(z + 1/z)
            let phi = cyclotomic(n).unwrap();
            let deg = phi.total_degree().unwrap();
            let k = deg / 2;
            let coeff = |e: u64| {
                phi.terms()
                    .iter()
                    .find(|(m, _)| m.0[0] as u64 == e)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Rational::zero)
            };
            let mut psi = QPoly::q_const(1, coeff(k));
            let mut prev = QPoly::q_const(1, rat(2));
            let mut cur = x();
            for j in 1..=k {
                psi = &psi + &cur.scale(&coeff(k + j));
                let next = &(&x() * &cur) - &prev;
                prev = cur;
                cur = next;
            }
            psi
        })),
    }
}

/// Order n when `min_poly` equals Φ_n, searching all n with φ(n) = deg.
pub fn is_root_of_unity(min_poly: &QPoly) -> Result<Option<u64>, CycloError> {
    if min_poly.nvars() != 1 {
        return Err(CycloError::NotUnivariate);
    }
    if min_poly.terms().iter().any(|(_, c)| !c.is_integer()) {
        return Err(CycloError::NotInteger);
    }
    if !min_poly.leading_coeff().is_some_and(|c| c.is_one()) {
        return Err(CycloError::NotMonic);
    }
    let d = min_poly.total_degree().unwrap_or(0);
    if d == 0 {
        return Ok(None);
    }
    // φ(n) ≥ sqrt(n/2), so n ≤ 2d²
    for n in 1..=2 * d * d {
        if totient(n) == d && cyclotomic(n).unwrap() == *min_poly {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// All rational values of ζ + 1/ζ over roots of unity ζ, ascending.
pub fn rational_two_cos_values() -> Vec<Rational> {
    // 2cos(2πk/n) with gcd(k, n) = 1 is a root of Ψ_n, which has degree
    // φ(n)/2; rational values need φ(n) ≤ 2, hence n ≤ 8
    let mut vals: Vec<Rational> = (1..=8u64)
        .filter_map(|n| {
            let psi = cos_min_poly(n).unwrap();
            (psi.total_degree() == Some(1)).then(|| {
                let c0 = psi.terms().iter().find(|(m, _)| m.0[0] == 0).map(|(_, c)| c.clone());
                -c0.unwrap_or_else(Rational::zero)
            })
        })
        .collect();
    vals.sort();
    vals.dedup();
    vals
}

/// Orders n whose primitive roots of unity ζ give a rational ζ + 1/ζ.
pub fn orders_with_rational_cos() -> Vec<u64> {
    (1..=8u64).filter(|&n| totient(n) <= 2).collect()
}

/// The order n such that `value` is a root of Ψ_n, when `value` is one of
/// the rational cosine values.
pub fn two_cos_order(value: &Rational) -> Option<u64> {
    orders_with_rational_cos().into_iter().find(|&n| {
        let psi = cos_min_poly(n).unwrap();
        psi.eval(&[value.clone()]).map(|v| v.is_zero()).unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly_with;

    fn px(s: &str) -> QPoly {
        parse_poly_with(s, &["x"]).unwrap()
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), px("x-1"));
        assert_eq!(cyclotomic(3).unwrap(), px("x^2+x+1"));
        assert_eq!(cyclotomic(12).unwrap(), px("x^4-x^2+1"));
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn cosine_polys() {
        assert_eq!(cos_min_poly(1).unwrap(), px("x-2"));
        assert_eq!(cos_min_poly(2).unwrap(), px("x+2"));
        assert_eq!(cos_min_poly(3).unwrap(), px("x+1"));
        assert_eq!(cos_min_poly(4).unwrap(), px("x"));
        assert_eq!(cos_min_poly(5).unwrap(), px("x^2+x-1"));
        assert_eq!(cos_min_poly(6).unwrap(), px("x-1"));
        assert_eq!(cos_min_poly(12).unwrap(), px("x^2-3"));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(is_root_of_unity(&px("x^2+x+1")).unwrap(), Some(3));
        assert_eq!(is_root_of_unity(&px("x-1")).unwrap(), Some(1));
        assert_eq!(is_root_of_unity(&px("x^2-x-1")).unwrap(), None);
        assert!(is_root_of_unity(&px("2x-1")).is_err());
        assert!(is_root_of_unity(&px("x-1/2")).is_err());
    }

    #[test]
    fn rational_cosines() {
        let v: Vec<Rational> = [-2, -1, 0, 1, 2].iter().map(|&k| rat(k)).collect();
        assert_eq!(rational_two_cos_values(), v);
        assert_eq!(orders_with_rational_cos(), vec![1, 2, 3, 4, 6]);
        assert_eq!(two_cos_order(&rat(1)), Some(6));
        assert_eq!(two_cos_order(&rat(3)), None);
    }
}
