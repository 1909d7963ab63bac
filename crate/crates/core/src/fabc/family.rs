use num_complex::Complex64;
use serde::Serialize;

use crate::cyclo::cos_min_poly;
use crate::exactalg::{format_poly, parse_poly_with, QPoly};
use crate::roots::{aberth, desc_from_qpoly, mahler_measure, squarefree_part, to_f64_coeffs};

use super::stability::verdict_for_ratio;
use super::{FabcError, StabilityVerdict};

/// a(T), b(T), c(T) defining the one-parameter family f_{a(T),b(T),c(T)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub a: QPoly,
    pub b: QPoly,
    pub c: QPoly,
}

impl FamilyParams {
    pub fn new(a: QPoly, b: QPoly, c: QPoly) -> Result<Self, FabcError> {
        for p in [&a, &b, &c] {
            if p.nvars() != 1 {
                return Err(FabcError::InvalidArgument("family polynomials must be univariate".into()));
            }
            if p.is_zero() {
                return Err(FabcError::InvalidArgument("family polynomials must be nonzero".into()));
            }
        }
        Ok(FamilyParams { a, b, c })
    }

    /// Parses three polynomials in the variable `T`.
    pub fn parse(a: &str, b: &str, c: &str) -> Result<Self, FabcError> {
        let p = |s: &str| parse_poly_with(s, &["T"]);
        Self::new(p(a)?, p(b)?, p(c)?)
    }

    /// c(T)² and a(T)b(T) with their common factor removed.
    fn ratio_parts(&self) -> (QPoly, QPoly) {
        let num = &self.c * &self.c;
        let den = &self.a * &self.b;
        let g = num.gcd(&den).expect("univariate");
        let r = num.div_exact(&g).unwrap().unwrap();
        let s = den.div_exact(&g).unwrap().unwrap();
        (r, s)
    }
}

pub fn fmt_t(p: &QPoly) -> String {
    format_poly(p, &["T"])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenericVerdict {
    GenericallyStable,
    GenericallyUnstable { zeta_order: u64, vanishing_index: usize },
}

/// Stability over the function field Q(T): only a constant ratio
/// c²/(ab) = κ can make the generic member unstable.
pub fn family_generic_stability(f: &FamilyParams) -> GenericVerdict {
    let (r, s) = f.ratio_parts();
    if r.is_constant() && s.is_constant() {
        let kappa = r.leading_coeff().unwrap() / s.leading_coeff().unwrap();
        if let StabilityVerdict::Unstable { zeta_order, vanishing_index } = verdict_for_ratio(&kappa) {
            return GenericVerdict::GenericallyUnstable { zeta_order, vanishing_index };
        }
    }
    GenericVerdict::GenericallyStable
}

/// Primitive integer numerator of Ψ_n(-2 - r/s), with r/s = c²/(ab) reduced.
fn locus_poly(r: &QPoly, s: &QPoly, n: u64) -> QPoly {
    let psi = cos_min_poly(n).expect("n >= 1");
    let d = psi.total_degree().unwrap() as usize;
    let u = &(-s).scale(&crate::rat(2)) - r;
    let mut u_pows = vec![QPoly::q_one(1)];
    let mut s_pows = vec![QPoly::q_one(1)];
    for _ in 0..d {
        u_pows.push(u_pows.last().unwrap() * &u);
        s_pows.push(s_pows.last().unwrap() * s);
    }
    let mut acc = QPoly::q_zero(1);
    for (m, c) in psi.terms() {
        let k = m.0[0] as usize;
        acc = &acc + &(&u_pows[k] * &s_pows[d - k]).scale(c);
    }
    acc.normalized()
}

fn numeric_roots(p: &QPoly) -> Vec<Complex64> {
    if p.total_degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sq = squarefree_part(&desc_from_qpoly(p));
    to_f64_coeffs(&sq).ok().and_then(|f| aberth(&f).ok()).unwrap_or_default()
}

/// Absolute logarithmic height (1/deg)·log M(p), shared by every root.
fn height(p: &QPoly) -> f64 {
    let sq = squarefree_part(&desc_from_qpoly(p));
    let deg = (sq.len() - 1) as f64;
    mahler_measure(&sq).map(|m| m.ln() / deg).unwrap_or(f64::NAN).max(0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocusEntry {
    pub n: u64,
    pub poly: QPoly,
    pub roots: Vec<Complex64>,
    pub heights: Vec<f64>,
}

/// Parameters t where f_{a(t),b(t),c(t)} is unstable with ζ of order
/// 3..=truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalLocus {
    pub truncation: u64,
    pub entries: Vec<LocusEntry>,
    /// Roots of a(T)b(T)c(T).
    pub degenerate_params: Vec<Complex64>,
    /// c(T)² + 4a(T)b(T), the ζ = 1 condition, which does not cause
    /// instability; `None` when it is identically zero.
    pub excluded_poly: Option<QPoly>,
    pub excluded_roots: Vec<Complex64>,
}

fn complex_json(z: &Complex64) -> serde_json::Value {
    serde_json::json!({"re": z.re, "im": z.im})
}

impl ExceptionalLocus {
    pub fn num_points(&self) -> usize {
        self.entries.iter().map(|e| e.roots.len()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "truncation": self.truncation,
            "entries": self.entries.iter().map(|e| serde_json::json!({
                "n": e.n,
                "poly": fmt_t(&e.poly),
                "roots": e.roots.iter().map(complex_json).collect::<Vec<_>>(),
                "heights": e.heights,
            })).collect::<Vec<_>>(),
            "degenerate_params": self.degenerate_params.iter().map(complex_json).collect::<Vec<_>>(),
            "excluded_zeta_one": {
                "poly": self.excluded_poly.as_ref().map(fmt_t),
                "roots": self.excluded_roots.iter().map(complex_json).collect::<Vec<_>>(),
            },
        })
    }
}

fn locus_polys(f: &FamilyParams, n_max: u64) -> Result<Vec<(u64, QPoly)>, FabcError> {
    if n_max < 3 {
        return Err(FabcError::InvalidArgument("truncation order must be at least 3".into()));
    }
    if let GenericVerdict::GenericallyUnstable { .. } = family_generic_stability(f) {
        return Err(FabcError::GenericallyUnstable);
    }
    let (r, s) = f.ratio_parts();
    let polys: Vec<(u64, QPoly)> = (3..=n_max).map(|n| (n, locus_poly(&r, &s, n))).collect();
    if polys.iter().any(|(_, p)| p.is_zero()) {
        return Err(FabcError::GenericallyUnstable);
    }
    Ok(polys)
}

/// The exceptional set truncated at root-of-unity order `n_max`.
pub fn family_exceptional_locus(f: &FamilyParams, n_max: u64) -> Result<ExceptionalLocus, FabcError> {
    use rayon::prelude::*;
    let polys = locus_polys(f, n_max)?;
    let entries: Vec<LocusEntry> = polys
        .into_par_iter()
        .filter(|(_, p)| p.total_degree().unwrap_or(0) > 0)
        .map(|(n, poly)| {
            let roots = numeric_roots(&poly);
            let h = height(&poly);
            LocusEntry { n, heights: vec![h; roots.len()], roots, poly }
        })
        .collect();
    let abc = &(&f.a * &f.b) * &f.c;
    let excluded = &(&f.c * &f.c) + &(&f.a * &f.b).scale(&crate::rat(4));
    let (excluded_poly, excluded_roots) = if excluded.is_zero() {
        (None, Vec::new())
    } else {
        let e = excluded.normalized();
        let roots = numeric_roots(&e);
        (Some(e), roots)
    };
    Ok(ExceptionalLocus {
        truncation: n_max,
        entries,
        degenerate_params: numeric_roots(&abc.normalized()),
        excluded_poly,
        excluded_roots,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairGcd {
    pub n1: u64,
    pub n2: u64,
    pub gcd: String,
    pub degree: u64,
}

/// Exact comparison of two truncated exceptional sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub truncation: u64,
    pub locus1_size: u64,
    pub locus2_size: u64,
    pub intersection_size: u64,
    pub symmetric_difference_size: u64,
    /// c1²/(a1b1) = c2²/(a2b2) as rational functions.
    pub same_ratio: bool,
    pub pair_gcds: Vec<PairGcd>,
}

fn distinct_root_count(p: &QPoly) -> u64 {
    if p.total_degree().unwrap_or(0) == 0 {
        return 0;
    }
    (squarefree_part(&desc_from_qpoly(p)).len() - 1) as u64
}

/// Compares the truncated loci of two families by exact gcds of their
/// defining polynomials. Loci for different orders are disjoint, so the
/// counts add up.
pub fn unlikely_intersection_explorer(
    f1: &FamilyParams,
    f2: &FamilyParams,
    n_max: u64,
) -> Result<IntersectionReport, FabcError> {
    let l1 = locus_polys(f1, n_max)?;
    let l2 = locus_polys(f2, n_max)?;
    let sq = |p: &QPoly| crate::roots::qpoly_from_desc(&squarefree_part(&desc_from_qpoly(p)));
    let s1: Vec<(u64, QPoly)> = l1.iter().filter(|(_, p)| !p.is_constant()).map(|(n, p)| (*n, sq(p))).collect();
    let s2: Vec<(u64, QPoly)> = l2.iter().filter(|(_, p)| !p.is_constant()).map(|(n, p)| (*n, sq(p))).collect();
    let locus1_size: u64 = s1.iter().map(|(_, p)| distinct_root_count(p)).sum();
    let locus2_size: u64 = s2.iter().map(|(_, p)| distinct_root_count(p)).sum();
    let mut pair_gcds = Vec::new();
    let mut intersection_size = 0;
    for (n1, p1) in &s1 {
        for (n2, p2) in &s2 {
            let g = p1.gcd(p2)?;
            let d = g.total_degree().unwrap_or(0);
            if d > 0 {
                intersection_size += d;
                pair_gcds.push(PairGcd { n1: *n1, n2: *n2, gcd: fmt_t(&g), degree: d });
            }
        }
    }
    let same_ratio = &(&f1.c * &f1.c) * &(&f2.a * &f2.b) == &(&f2.c * &f2.c) * &(&f1.a * &f1.b);
    Ok(IntersectionReport {
        truncation: n_max,
        locus1_size,
        locus2_size,
        intersection_size,
        symmetric_difference_size: locus1_size + locus2_size - 2 * intersection_size,
        same_ratio,
        pair_gcds,
    })
}
