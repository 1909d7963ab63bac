use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::roots::{certified_roots, squarefree_part};

use super::{MonomialError, MonomialMap};

/// Spectral radius with a certified enclosure `lower ≤ λ ≤ upper`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralRadius {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Largest modulus of an eigenvalue of A, certified to relative error
/// `rel_tol` (which must lie in (0, 1e-3]).
pub fn spectral_radius(a: &MonomialMap, rel_tol: f64) -> Result<SpectralRadius, MonomialError> {
    if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
        return Err(MonomialError::InvalidArgument(format!("relTol {rel_tol} outside (0, 1e-3]")));
    }
    let cp = squarefree_part(&a.char_poly());
    let disks = certified_roots(&cp).map_err(|e| MonomialError::Uncertified(e.to_string()))?;
    let mut value = 0.0f64;
    let mut lower = 0.0f64;
    let mut upper = 0.0f64;
    for d in &disks {
        let m = d.center.norm();
        value = value.max(m);
        lower = lower.max(m - d.radius);
        upper = upper.max(m + d.radius);
    }
    if lower <= 0.0 || upper - lower > rel_tol * lower {
        return Err(MonomialError::Uncertified(format!("enclosure [{lower}, {upper}] too wide")));
    }
    Ok(SpectralRadius { value, lower, upper })
}

/// γ_N = (2^{1/N} - 1) / (2N²).
pub fn gamma(n: usize) -> f64 {
    let n = n as f64;
    (2f64.powf(1.0 / n) - 1.0) / (2.0 * n * n)
}

/// Natural log of a positive big integer.
fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// D(A)/(2N) ≤ ‖A‖ ≤ N·D(A), in exact arithmetic.
pub fn verify_norm_equivalence(a: &MonomialMap) -> bool {
    let n = BigInt::from(a.dim());
    let d = a.degree_d();
    let norm = a.sup_norm();
    d <= BigInt::from(2) * &n * &norm && norm <= n * d
}

/// Least k in [0, N-1] with ‖A^{k+1}‖(2^{1/N} - 1) ≤ λ̂(1 + 2relTol)‖A^k‖.
pub fn find_k_contraction(a: &MonomialMap, rel_tol: f64) -> Result<usize, MonomialError> {
    let lambda = spectral_radius(a, rel_tol)?.value;
    let n = a.dim();
    let c = 2f64.powf(1.0 / n as f64) - 1.0;
    let mut cur = MonomialMap::identity(n);
    for k in 0..n {
        let next = cur.mul(a);
        let lhs = ln_big(&next.sup_norm()) + c.ln();
        let rhs = (lambda * (1.0 + 2.0 * rel_tol)).ln() + ln_big(&cur.sup_norm());
        if lhs <= rhs {
            return Ok(k);
        }
        cur = next;
    }
    Err(MonomialError::InvariantViolation(format!("no contraction index below {n} for {a}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DegreeRatioBound {
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
}

/// Compares λ̂(A) with γ_N · min_{0≤k<N} D(A^{k+1})/D(A^k), where D(A^0) = 1.
pub fn degree_ratio_bound_check(a: &MonomialMap, rel_tol: f64) -> Result<DegreeRatioBound, MonomialError> {
    let lhs = spectral_radius(a, rel_tol)?.value;
    let n = a.dim();
    let mut prev = BigInt::from(1);
    let mut cur = MonomialMap::identity(n);
    let mut min_ratio = f64::INFINITY;
    for _ in 0..n {
        cur = cur.mul(a);
        let d = cur.degree_d();
        min_ratio = min_ratio.min((ln_big(&d) - ln_big(&prev)).exp());
        prev = d;
    }
    let rhs = gamma(n) * min_ratio;
    Ok(DegreeRatioBound { holds: lhs * (1.0 + 2.0 * rel_tol) >= rhs, lhs, rhs })
}

/// D(A⁻¹) ≤ D(A)^{N-1} for |det A| = 1.
pub fn inverse_degree_bound_check(a: &MonomialMap) -> Result<bool, MonomialError> {
    let inv = a.inverse_unimodular()?;
    Ok(inv.degree_d() <= num_traits::pow(a.degree_d(), a.dim() - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindM {
    Found(u64),
    NotFoundWithinCap(u64),
}

/// Least m ≤ m_cap with (γ_N · D(A^{(k+1)m}) / D(A^{km}))^{1/m} ≥ λ̂ - ε
/// for every 0 ≤ k < N.
pub fn find_m_epsilon(a: &MonomialMap, epsilon: f64, rel_tol: f64, m_cap: u64) -> Result<FindM, MonomialError> {
    if !(epsilon > 0.0) {
        return Err(MonomialError::InvalidArgument("epsilon must be positive".into()));
    }
    let lambda = spectral_radius(a, rel_tol)?.value;
    let target = lambda - epsilon;
    let n = a.dim();
    let ln_gamma = gamma(n).ln();
    let guard = (1.0 + 2.0 * rel_tol).ln();
    for m in 1..=m_cap {
        if target <= 0.0 {
            return Ok(FindM::Found(m));
        }
        let am = a.pow(m);
        let mut prev_d = BigInt::from(1);
        let mut cur = MonomialMap::identity(n);
        let mut ok = true;
        for _ in 0..n {
            cur = cur.mul(&am);
            let d = cur.degree_d();
            let lhs = (ln_gamma + ln_big(&d) - ln_big(&prev_d)) / m as f64;
            if lhs + guard < target.ln() {
                ok = false;
                break;
            }
            prev_d = d;
        }
        if ok {
            return Ok(FindM::Found(m));
        }
    }
    Ok(FindM::NotFoundWithinCap(m_cap))
}

/// Everything the verifier reports about one matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialAnalysis {
    pub n: usize,
    pub d: BigInt,
    pub sup_norm: BigInt,
    pub char_poly: Vec<BigInt>,
    pub lambda: SpectralRadius,
    pub norm_equivalence: bool,
    pub contraction_k: usize,
    pub degree_ratio_bound: DegreeRatioBound,
    /// `None` when |det A| ≠ 1.
    pub inverse_degree_bound: Option<bool>,
}

fn int_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

impl MonomialAnalysis {
    pub fn run(a: &MonomialMap, rel_tol: f64) -> Result<Self, MonomialError> {
        let inverse_degree_bound = match inverse_degree_bound_check(a) {
            Ok(b) => Some(b),
            Err(MonomialError::NotUnimodular) => None,
            Err(e) => return Err(e),
        };
        Ok(MonomialAnalysis {
            n: a.dim(),
            d: a.degree_d(),
            sup_norm: a.sup_norm(),
            char_poly: a.char_poly(),
            lambda: spectral_radius(a, rel_tol)?,
            norm_equivalence: verify_norm_equivalence(a),
            contraction_k: find_k_contraction(a, rel_tol)?,
            degree_ratio_bound: degree_ratio_bound_check(a, rel_tol)?,
            inverse_degree_bound,
        })
    }

    /// All checks passed (the inverse bound only when it applies).
    pub fn all_hold(&self) -> bool {
        self.norm_equivalence && self.degree_ratio_bound.holds && self.inverse_degree_bound != Some(false)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.n,
            "D": int_json(&self.d),
            "sup_norm": int_json(&self.sup_norm),
            "char_poly": self.char_poly.iter().map(int_json).collect::<Vec<_>>(),
            "lambda": self.lambda.value,
            "lambda_enclosure": [self.lambda.lower, self.lambda.upper],
            "norm_equivalence": self.norm_equivalence,
            "contraction_k": self.contraction_k,
            "degree_ratio_bound": self.degree_ratio_bound,
            "inverse_degree_bound": self.inverse_degree_bound,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(rows: &[&[i64]]) -> MonomialMap {
        MonomialMap::from_i64(rows).unwrap()
    }

    const TOL: f64 = 1e-9;

    #[test]
    fn spectral_radius_examples() {
        let cat = mm(&[&[2, 1], &[1, 1]]);
        let s = spectral_radius(&cat, TOL).unwrap();
        assert!((s.value - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!(s.lower <= s.value && s.value <= s.upper);
        assert!((spectral_radius(&MonomialMap::identity(3), TOL).unwrap().value - 1.0).abs() < 1e-12);
        assert!((spectral_radius(&mm(&[&[0, 1], &[-1, 0]]), TOL).unwrap().value - 1.0).abs() < 1e-12);
        assert!(spectral_radius(&cat, 0.0).is_err());
        assert!(spectral_radius(&cat, 0.1).is_err());
    }

    #[test]
    fn norm_equivalence_examples() {
        assert!(verify_norm_equivalence(&mm(&[&[2, 1], &[1, 1]])));
        assert!(verify_norm_equivalence(&MonomialMap::identity(2)));
        assert!(verify_norm_equivalence(&mm(&[&[-1, 0], &[0, -1]])));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(find_k_contraction(&mm(&[&[2, 1], &[1, 1]]), TOL).unwrap(), 0);
        assert_eq!(find_k_contraction(&MonomialMap::identity(2), TOL).unwrap(), 0);
        assert!(find_k_contraction(&mm(&[&[3, -2], &[1, 0]]), TOL).unwrap() <= 1);
    }

    #[test]
    fn degree_ratio_examples() {
        let r = degree_ratio_bound_check(&mm(&[&[2, 1], &[1, 1]]), TOL).unwrap();
        let expected = (2f64.sqrt() - 1.0) / 8.0 * (8.0 / 3.0);
        assert!(r.holds && (r.rhs - expected).abs() < 1e-12);
        let r = degree_ratio_bound_check(&MonomialMap::identity(2), TOL).unwrap();
        assert!(r.holds && (r.rhs - (2f64.sqrt() - 1.0) / 8.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_bound_examples() {
        assert!(inverse_degree_bound_check(&mm(&[&[2, 1], &[1, 1]])).unwrap());
        assert!(inverse_degree_bound_check(&MonomialMap::identity(3)).unwrap());
        assert_eq!(inverse_degree_bound_check(&mm(&[&[2, 0], &[0, 1]])), Err(MonomialError::NotUnimodular));
    }

    #[test]
    fn find_m_examples() {
        let id = MonomialMap::identity(2);
        assert_eq!(find_m_epsilon(&id, 0.9, TOL, 64).unwrap(), FindM::Found(2));
        assert_eq!(find_m_epsilon(&id, 0.5, TOL, 64).unwrap(), FindM::Found(5));
        assert_eq!(find_m_epsilon(&id, 0.5, TOL, 3).unwrap(), FindM::NotFoundWithinCap(3));
    }

    #[test]
    fn analysis_json() {
        let a = MonomialAnalysis::run(&mm(&[&[2, 1], &[1, 1]]), TOL).unwrap();
        let j = a.to_json();
        assert_eq!(j["D"], 3);
        assert_eq!(j["sup_norm"], 2);
        assert_eq!(j["char_poly"], serde_json::json!([1, -3, 1]));
        assert_eq!(j["contraction_k"], 0);
        assert_eq!(j["inverse_degree_bound"], true);
        assert!(a.all_hold());
    }
}
