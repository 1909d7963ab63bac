use serde::{Deserialize, Serialize};

use crate::exactalg::{
    default_var_names, format_poly, jacobian_det, parse_poly, Coeff, MultiPoly, Rational, Rationals,
};

use super::point::{ApplyOutcome, Orbit, OrbitEnd, ProjectivePoint};
use super::{MapError, ResourceCaps};

/// A rational self-map of P^N given by N+1 homogeneous forms of a common
/// degree with no common factor, jointly scaled to a canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveMap<C: Coeff = Rational> {
    coords: Vec<MultiPoly<C>>,
    degree: u64,
}

impl<C: Coeff> ProjectiveMap<C> {
    /// Validates and normalizes raw coordinate forms.
    pub fn new(raw: Vec<MultiPoly<C>>) -> Result<Self, MapError> {
        if raw.len() < 2 {
            return Err(MapError::InvalidArgument("a map needs at least two coordinates".into()));
        }
        let nvars = raw.len();
        let domain = raw[0].domain().clone();
        let mut degree = None;
        for (i, p) in raw.iter().enumerate() {
            if p.nvars() != nvars {
                return Err(MapError::DimensionMismatch { expected: nvars, got: p.nvars() });
            }
            if *p.domain() != domain {
                return Err(MapError::Poly(crate::exactalg::PolyError::DomainMismatch(
                    "coordinates over different fields".into(),
                )));
            }
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return Err(MapError::Inhomogeneous(i));
            }
            let d = p.total_degree().unwrap();
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return Err(MapError::DegreeMismatch(e, d)),
                _ => {}
            }
        }
        if degree.is_none() {
            return Err(MapError::AllZero);
        }
        Ok(Self::normalize(raw))
    }

    fn normalize(raw: Vec<MultiPoly<C>>) -> Self {
        let coords = cancel_common_factor(raw);
        let degree = coords.iter().find_map(|p| p.total_degree()).unwrap();
        ProjectiveMap { coords, degree }
    }

    pub fn identity(n: usize, domain: C::Domain) -> Self {
        let coords = (0..=n).map(|i| MultiPoly::var(n + 1, domain.clone(), i)).collect();
        ProjectiveMap { coords, degree: 1 }
    }

    /// N, the dimension of the projective space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[MultiPoly<C>] {
        &self.coords
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn domain(&self) -> &C::Domain {
        self.coords[0].domain()
    }

    /// Largest number of terms in a coordinate.
    pub fn max_terms(&self) -> usize {
        self.coords.iter().map(|p| p.num_terms()).max().unwrap_or(0)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ProjectiveMap<C>) -> Result<Self, MapError> {
        self.compose_capped(g, &ResourceCaps::unlimited())
    }

    /// `self ∘ g`, refusing work that would exceed `caps`.
    pub fn compose_capped(&self, g: &ProjectiveMap<C>, caps: &ResourceCaps) -> Result<Self, MapError> {
        if self.dim() != g.dim() {
            return Err(MapError::DimensionMismatch { expected: self.dim(), got: g.dim() });
        }
        if self.domain() != g.domain() {
            return Err(MapError::Poly(crate::exactalg::PolyError::DomainMismatch(
                "maps over different fields".into(),
            )));
        }
        let work = self.composition_work(g);
        if work > caps.max_work as f64 {
            return Err(MapError::ResourceLimit(format!(
                "composition needs about {work:.3e} term products (cap {})",
                caps.max_work
            )));
        }
        let mut raw = Vec::with_capacity(self.coords.len());
        for p in &self.coords {
            let q = p.substitute(&g.coords)?;
            if q.num_terms() > caps.max_terms {
                return Err(MapError::ResourceLimit(format!(
                    "coordinate has {} terms (cap {})",
                    q.num_terms(),
                    caps.max_terms
                )));
            }
            raw.push(q);
        }
        if raw.iter().all(|p| p.is_zero()) {
            return Err(MapError::AllZero);
        }
        Ok(Self::normalize(raw))
    }

    /// Rough count of coefficient products needed by `self ∘ g`.
    fn composition_work(&self, g: &ProjectiveMap<C>) -> f64 {
        let sizes: Vec<f64> = g.coords.iter().map(|p| p.num_terms().max(1) as f64).collect();
        let mut total = 0.0;
        for p in &self.coords {
            for (m, _) in p.terms() {
                let mut t = 1.0;
                for (v, &e) in m.exps().iter().enumerate() {
                    t *= sizes[v].powi(e as i32);
                }
                total += t;
            }
        }
        total
    }

    /// Evaluates the map at `p`.
    pub fn apply(&self, p: &ProjectivePoint<C>) -> Result<ApplyOutcome<C>, MapError> {
        if p.coords().len() != self.coords.len() {
            return Err(MapError::DimensionMismatch { expected: self.dim(), got: p.dim() });
        }
        let mut vals = Vec::with_capacity(self.coords.len());
        for f in &self.coords {
            vals.push(f.eval(p.coords())?);
        }
        if vals.iter().all(|v| v.is_zero()) {
            return Ok(ApplyOutcome::Indeterminate);
        }
        Ok(ApplyOutcome::Point(ProjectivePoint::new(vals)?))
    }

    /// `[P, f(P), f²(P), ...]` with at most `n_max` steps, stopping at the
    /// first point of the indeterminacy locus.
    pub fn orbit(&self, p: &ProjectivePoint<C>, n_max: usize) -> Result<Orbit<C>, MapError> {
        let mut points = vec![p.clone()];
        for i in 0..n_max {
            match self.apply(&points[i])? {
                ApplyOutcome::Point(q) => points.push(q),
                ApplyOutcome::Indeterminate => return Ok(Orbit { points, end: OrbitEnd::HitIndeterminacy(i) }),
            }
        }
        Ok(Orbit { points, end: OrbitEnd::Completed })
    }

    /// Coordinates printed with the default variable names.
    pub fn coord_strings(&self) -> Vec<String> {
        let names = default_var_names(self.coords.len());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.coords.iter().map(|p| format_poly(p, &refs)).collect()
    }
}

impl ProjectiveMap<Rational> {
    /// Jacobian criterion; only meaningful in characteristic zero.
    pub fn dominance_check(&self) -> bool {
        match jacobian_det(&self.coords) {
            Ok(det) => !det.is_zero(),
            Err(_) => false,
        }
    }

    pub fn from_strings(n: usize, coords: &[&str]) -> Result<Self, MapError> {
        if coords.len() != n + 1 {
            return Err(MapError::DimensionMismatch { expected: n + 1, got: coords.len() });
        }
        let raw = coords.iter().map(|s| parse_poly(s, n + 1)).collect::<Result<Vec<_>, _>>()?;
        Self::new(raw)
    }

    pub fn from_document(doc: &MapDocument) -> Result<Self, MapError> {
        let refs: Vec<&str> = doc.coords.iter().map(String::as_str).collect();
        Self::from_strings(doc.n, &refs)
    }

    pub fn from_json(text: &str) -> Result<Self, MapError> {
        let doc: MapDocument =
            serde_json::from_str(text).map_err(|e| MapError::InvalidArgument(format!("bad map document: {e}")))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> MapDocument {
        MapDocument { n: self.dim(), coords: self.coord_strings() }
    }

    pub fn identity_q(n: usize) -> Self {
        Self::identity(n, Rationals)
    }
}

/// Divides a list of polynomials (not all zero) by their gcd and applies
/// the joint canonical scaling. Works in any number of variables.
pub fn cancel_common_factor<C: Coeff>(raw: Vec<MultiPoly<C>>) -> Vec<MultiPoly<C>> {
    let mut g = MultiPoly::zero(raw[0].nvars(), raw[0].domain().clone());
    for p in raw.iter().filter(|p| !p.is_zero()) {
        g = g.gcd(p).expect("compatible");
        if g.is_constant() {
            break;
        }
    }
    let mut coords: Vec<MultiPoly<C>> = if g.is_constant() {
        raw
    } else {
        raw.iter().map(|p| p.div_exact(&g).expect("compatible").expect("gcd divides")).collect()
    };
    let s = C::joint_normalizer(&coords);
    if !s.is_one() {
        coords = coords.iter().map(|p| p.scale(&s)).collect();
    }
    coords
}

/// Text form of a map: `{"N": 2, "coords": ["X*Y", "X*Y+Z^2", "-1*Y*Z+Z^2"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDocument {
    #[serde(rename = "N")]
    pub n: usize,
    pub coords: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn m(coords: &[&str]) -> ProjectiveMap {
        ProjectiveMap::from_strings(coords.len() - 1, coords).unwrap()
    }

    fn pt(v: &[i64]) -> ProjectivePoint<Rational> {
        ProjectivePoint::new(v.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn normalization_examples() {
        let f = m(&["X^2", "X*Y", "X*Z"]);
        assert_eq!(f, ProjectiveMap::identity_q(2));
        let f = m(&["X*Y", "X*Y+Z^2", "Y*Z+Z^2"]);
        assert_eq!(f.degree(), 2);
        assert_eq!(f.coord_strings(), vec!["X*Y", "X*Y + Z^2", "Y*Z + Z^2"]);
        assert!(ProjectiveMap::from_strings(2, &["X^2", "Y^2", "0"]).is_ok());
        assert_eq!(ProjectiveMap::from_strings(2, &["0", "0", "0"]), Err(MapError::AllZero));
        assert_eq!(ProjectiveMap::from_strings(2, &["X^2", "Y", "Z"]), Err(MapError::DegreeMismatch(2, 1)));
        assert_eq!(ProjectiveMap::from_strings(2, &["X^2+Y", "Y^2", "Z^2"]), Err(MapError::Inhomogeneous(0)));
    }

    #[test]
    fn joint_scaling_is_canonical() {
        let a = m(&["-2*X", "4*Y", "6*Z"]);
        let b = m(&["1/3*X", "-2/3*Y", "-Z"]);
        assert_eq!(a, b);
        assert_eq!(a.coord_strings(), vec!["X", "-2*Y", "-3*Z"]);
    }

    #[test]
    fn apply_and_orbit() {
        let f = m(&["X*Y", "X*Y+Z^2", "Y*Z+Z^2"]);
        assert_eq!(f.apply(&pt(&[0, 1, 0])).unwrap(), ApplyOutcome::Indeterminate);
        assert_eq!(f.apply(&pt(&[1, 0, 0])).unwrap(), ApplyOutcome::Indeterminate);
        assert_eq!(f.apply(&pt(&[1, 2, 0])).unwrap(), ApplyOutcome::Point(pt(&[1, 1, 0])));
        assert_eq!(f.apply(&pt(&[0, 0, 1])).unwrap(), ApplyOutcome::Point(pt(&[0, 1, 1])));
        let o = f.orbit(&pt(&[1, 1, 0]), 4).unwrap();
        assert_eq!(o.end, OrbitEnd::Completed);
        assert!(o.points.iter().all(|p| *p == pt(&[1, 1, 0])));
        // a = 1, b = -1, c = 1
        let g = m(&["X*Y", "X*Y+Z^2", "-Y*Z+Z^2"]);
        let o = g.orbit(&pt(&[0, 0, 1]), 5).unwrap();
        assert_eq!(o.points, vec![pt(&[0, 0, 1]), pt(&[0, 1, 1]), pt(&[0, 1, 0])]);
        assert_eq!(o.end, OrbitEnd::HitIndeterminacy(2));
    }

    #[test]
    fn composition_degrees() {
        let f = m(&["X*Y", "X*Y+Z^2", "Y*Z+Z^2"]);
        let id = ProjectiveMap::identity_q(2);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(f.compose(&f).unwrap().degree(), 4);
        let g = m(&["X*Y", "X*Y+Z^2", "-Y*Z+Z^2"]);
        let g3 = g.compose(&g.compose(&g).unwrap()).unwrap();
        assert!(g3.degree() < 8);
    }

    #[test]
    fn dominance() {
        assert!(m(&["X*Y", "X*Y+Z^2", "Y*Z+Z^2"]).dominance_check());
        assert!(!m(&["X", "X", "X"]).dominance_check());
        assert!(ProjectiveMap::identity_q(3).dominance_check());
    }

    #[test]
    fn json_round_trip() {
        let f = ProjectiveMap::from_json(r#"{"N": 2, "coords": ["X*Y", "X*Y+Z^2", "-1*Y*Z+Z^2"]}"#).unwrap();
        let doc = f.to_document();
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(ProjectiveMap::from_json(&text).unwrap(), f);
        assert!(ProjectiveMap::from_json(r#"{"N": 2, "coords": ["X"]}"#).is_err());
    }
}
