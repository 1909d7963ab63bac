use serde::Serialize;

use crate::exactalg::Coeff;

use super::{MapError, ProjectiveMap};

/// Limits on iterate size. Both are checked before the work is done.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceCaps {
    /// Maximum number of terms in any coordinate of an iterate.
    pub max_terms: usize,
    /// Maximum estimated number of term products for one composition.
    pub max_work: u64,
}

impl Default for ResourceCaps {
    fn default() -> Self {
        ResourceCaps { max_terms: 200_000, max_work: 50_000_000 }
    }
}

impl ResourceCaps {
    pub fn unlimited() -> Self {
        ResourceCaps { max_terms: usize::MAX, max_work: u64::MAX }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    /// The iterate that could not be computed.
    pub at: usize,
    pub reason: String,
}

/// `degrees[n-1] = deg(f^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    pub degrees: Vec<u64>,
    pub n_max: usize,
    pub truncation: Option<Truncation>,
}

impl DegreeSequence {
    /// deg(f^n), 1-based.
    pub fn get(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.degrees.get(i)).copied()
    }

    /// Least n with deg(f^n) < deg(f)^n among the recorded entries.
    pub fn drop_at(&self) -> Option<usize> {
        let d = *self.degrees.first()? as u128;
        let mut expected: u128 = 1;
        for (i, &e) in self.degrees.iter().enumerate() {
            expected = expected.saturating_mul(d);
            if (e as u128) < expected {
                return Some(i + 1);
            }
        }
        None
    }

    pub fn is_truncated(&self) -> bool {
        self.truncation.is_some()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let drop = self.drop_at();
        serde_json::json!({
            "degrees": self.degrees,
            "stable_up_to": if drop.is_none() { Some(self.degrees.len()) } else { None },
            "drop_at": drop,
            "truncated": self.truncation,
        })
    }
}

/// Exact deg(f^n) for n = 1..=n_max with f^{n+1} = f ∘ f^n. Stops early,
/// with a truncation record, when an iterate would exceed `caps`.
pub fn degree_sequence<C: Coeff>(
    f: &ProjectiveMap<C>,
    n_max: usize,
    caps: &ResourceCaps,
) -> Result<DegreeSequence, MapError> {
    let mut degrees = Vec::new();
    let truncation = iterate(f, n_max, caps, |_, g| {
        degrees.push(g.degree());
        true
    })?;
    Ok(DegreeSequence { degrees, n_max, truncation })
}

/// Runs the iteration, calling `visit(n, f^n)` until it returns false.
fn iterate<C: Coeff>(
    f: &ProjectiveMap<C>,
    n_max: usize,
    caps: &ResourceCaps,
    mut visit: impl FnMut(usize, &ProjectiveMap<C>) -> bool,
) -> Result<Option<Truncation>, MapError> {
    if n_max == 0 {
        return Err(MapError::InvalidArgument("nMax must be at least 1".into()));
    }
    if f.max_terms() > caps.max_terms {
        return Ok(Some(Truncation { at: 1, reason: "input map exceeds the term cap".into() }));
    }
    let mut cur = f.clone();
    if !visit(1, &cur) {
        return Ok(None);
    }
    for n in 2..=n_max {
        cur = match f.compose_capped(&cur, caps) {
            Ok(g) => g,
            Err(MapError::ResourceLimit(reason)) => return Ok(Some(Truncation { at: n, reason })),
            Err(e) => return Err(e),
        };
        if !visit(n, &cur) {
            break;
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    /// deg(f^n) = deg(f)^n for every n up to the bound.
    StableSoFar(usize),
    /// Least n with deg(f^n) < deg(f)^n.
    DropAt(usize),
}

pub fn is_algebraically_stable_up_to<C: Coeff>(
    f: &ProjectiveMap<C>,
    n_max: usize,
    caps: &ResourceCaps,
) -> Result<Stability, MapError> {
    let d = f.degree() as u128;
    let mut expected: u128 = 1;
    let mut drop = None;
    let trunc = iterate(f, n_max, caps, |n, g| {
        expected = expected.saturating_mul(d);
        if (g.degree() as u128) < expected {
            drop = Some(n);
            return false;
        }
        true
    })?;
    if let Some(n) = drop {
        return Ok(Stability::DropAt(n));
    }
    if let Some(t) = trunc {
        return Err(MapError::ResourceLimit(format!("iterate {}: {}", t.at, t.reason)));
    }
    Ok(Stability::StableSoFar(n_max))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DynDegEstimate {
    pub root_estimate: f64,
    pub ratio_estimate: f64,
}

/// Root and ratio estimates of the dynamical degree from the last entries.
pub fn dyndeg_estimate(degrees: &[u64]) -> Result<DynDegEstimate, MapError> {
    let n = degrees.len();
    if n < 2 {
        return Err(MapError::InvalidArgument("need at least two degrees".into()));
    }
    let last = degrees[n - 1] as f64;
    Ok(DynDegEstimate { root_estimate: last.powf(1.0 / n as f64), ratio_estimate: last / degrees[n - 2] as f64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;

    fn m(coords: &[&str]) -> ProjectiveMap<Rational> {
        ProjectiveMap::from_strings(coords.len() - 1, coords).unwrap()
    }

    #[test]
    fn stable_and_unstable_sequences() {
        let caps = ResourceCaps::default();
        let f = m(&["X*Y", "X*Y+Z^2", "Y*Z+Z^2"]);
        let s = degree_sequence(&f, 5, &caps).unwrap();
        assert_eq!(s.degrees, vec![2, 4, 8, 16, 32]);
        assert_eq!(s.drop_at(), None);
        assert_eq!(is_algebraically_stable_up_to(&f, 5, &caps).unwrap(), Stability::StableSoFar(5));
        let g = m(&["X*Y", "X*Y+Z^2", "-Y*Z+Z^2"]);
        let s = degree_sequence(&g, 4, &caps).unwrap();
        assert!(s.degrees[2] < 8);
        assert_eq!(s.drop_at(), Some(3));
        assert_eq!(is_algebraically_stable_up_to(&g, 5, &caps).unwrap(), Stability::DropAt(3));
        let id = ProjectiveMap::identity_q(2);
        assert_eq!(degree_sequence(&id, 3, &caps).unwrap().degrees, vec![1, 1, 1]);
        assert!(degree_sequence(&id, 0, &caps).is_err());
    }

    #[test]
    fn caps_truncate_loudly() {
        let f = m(&["X*Y", "X*Y+Z^2", "Y*Z+Z^2"]);
        let caps = ResourceCaps { max_terms: 20, max_work: u64::MAX };
        let s = degree_sequence(&f, 8, &caps).unwrap();
        assert!(s.is_truncated());
        assert!(s.degrees.len() < 8);
        assert!(is_algebraically_stable_up_to(&f, 8, &caps).is_err());
        let json = s.to_json();
        assert!(json["truncated"]["at"].as_u64().is_some());
    }

    #[test]
    fn estimates() {
        let e = dyndeg_estimate(&[2, 4, 8, 16]).unwrap();
        assert!((e.root_estimate - 2.0).abs() < 1e-12 && (e.ratio_estimate - 2.0).abs() < 1e-12);
        let e = dyndeg_estimate(&[1, 1, 1]).unwrap();
        assert_eq!((e.root_estimate, e.ratio_estimate), (1.0, 1.0));
        assert!(dyndeg_estimate(&[3]).is_err());
    }
}
