//! The family g_t = [(aX+bZ)(X-tZ) + (X-Z)Y, (X-Z)Y, (X-tZ)Z].
//!
//! On the invariant line Y = 0 the map acts as X ↦ aX + b, so the marked
//! point [1,0,1] walks through e_n = a^n + b(a^{n-1} + ... + 1) and the
//! degree drops exactly when it reaches the indeterminacy point [t,0,1].

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::exactalg::{format_rational, QPoly, Rational};
use crate::ratmap::{is_algebraically_stable_up_to, MapError, ProjectiveMap, ProjectivePoint, ResourceCaps, Stability};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfamError {
    #[error("the parameter a must be nonzero")]
    ZeroA,
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GFamilyParams {
    a: Rational,
    b: Rational,
}

impl GFamilyParams {
    pub fn new(a: Rational, b: Rational) -> Result<Self, GfamError> {
        if a.is_zero() {
            return Err(GfamError::ZeroA);
        }
        Ok(GFamilyParams { a, b })
    }

    pub fn ints(a: i64, b: i64) -> Result<Self, GfamError> {
        Self::new(crate::rat(a), crate::rat(b))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The specialized map g_t, normalized.
    pub fn build_g(&self, t: &Rational) -> Result<ProjectiveMap, GfamError> {
        let (x, y, z) = (QPoly::q_var(3, 0), QPoly::q_var(3, 1), QPoly::q_var(3, 2));
        let k = |v: &Rational| QPoly::q_const(3, v.clone());
        let x_tz = &x - &(&k(t) * &z);
        let x_z = &x - &z;
        let ax_bz = &(&k(&self.a) * &x) + &(&k(&self.b) * &z);
        let coords = vec![&(&ax_bz * &x_tz) + &(&x_z * &y), &x_z * &y, &x_tz * &z];
        Ok(ProjectiveMap::new(coords)?)
    }

    /// e_0..=e_{n_max} with e_0 = 1 and e_{n+1} = a·e_n + b.
    pub fn exceptional_set(&self, n_max: usize) -> Vec<Rational> {
        let mut e = vec![Rational::one()];
        while e.len() <= n_max {
            let next = &(&self.a * e.last().unwrap()) + &self.b;
            e.push(next);
        }
        e
    }

    /// Membership of t in the exceptional set. Exact when a = 1, otherwise
    /// decided up to index `n_max`.
    pub fn is_exceptional(&self, t: &Rational, n_max: usize) -> Membership {
        if self.a.is_one() {
            // e_n = 1 + n·b
            let d = t - Rational::one();
            if self.b.is_zero() {
                return if d.is_zero() { Membership::Member(0) } else { Membership::NotMember };
            }
            let q = &d / &self.b;
            return if q.is_integer() && !q.is_negative() {
                Membership::Member(q.to_integer().to_u64().unwrap_or(u64::MAX) as usize)
            } else {
                Membership::NotMember
            };
        }
        match self.exceptional_set(n_max).iter().position(|e| e == t) {
            Some(n) => Membership::Member(n),
            None => Membership::NotWithin(n_max),
        }
    }

    /// Least n with g_t^n([1,0,1]) = [t,0,1], by iterating the map itself.
    pub fn orbit_marked_point(&self, t: &Rational, n_max: usize) -> Result<MarkedOrbit, GfamError> {
        let g = self.build_g(t)?;
        let one = Rational::one();
        let zero = Rational::zero();
        let target = ProjectivePoint::new(vec![t.clone(), zero.clone(), one.clone()])?;
        let mut p = ProjectivePoint::new(vec![one.clone(), zero, one])?;
        for n in 0..=n_max {
            if p == target {
                return Ok(MarkedOrbit::HitsIndeterminacyAt(n));
            }
            if n == n_max {
                break;
            }
            p = match g.apply(&p)?.point() {
                Some(q) => q.clone(),
                None => return Ok(MarkedOrbit::HitsIndeterminacyAt(n)),
            };
        }
        Ok(MarkedOrbit::NoHitWithin(n_max))
    }

    /// Why (and whether) deg(g_t^n) falls below 2^n for some n ≤ n_max.
    pub fn degree_drop(&self, t: &Rational, n_max: usize, caps: &ResourceCaps) -> Result<DegreeDrop, GfamError> {
        let g = self.build_g(t)?;
        if g.degree() < 2 {
            return Ok(DegreeDrop::DegenerateMap { degree: g.degree() });
        }
        Ok(match is_algebraically_stable_up_to(&g, n_max, caps)? {
            Stability::DropAt(n) => DegreeDrop::DropAt(n),
            Stability::StableSoFar(n) => DegreeDrop::StableSoFar(n),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// t = e_n.
    Member(usize),
    NotMember,
    /// Not among e_0..=e_n; larger indices were not examined.
    NotWithin(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkedOrbit {
    HitsIndeterminacyAt(usize),
    NoHitWithin(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeDrop {
    /// The coordinates share a factor, so g_t itself has degree below 2.
    DegenerateMap { degree: u64 },
    DropAt(usize),
    StableSoFar(usize),
}

/// Integer values of the exceptional set in [1, bound], assuming the
/// sequence is nondecreasing from 1 (a ≥ 1, b ≥ 0).
fn integers_up_to(p: &GFamilyParams, bound: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let limit = Rational::from_integer(BigInt::from(bound));
    let mut e = Rational::one();
    for _ in 0..=bound {
        if e > limit {
            break;
        }
        if e.is_integer() && e.is_positive() {
            out.insert(e.to_integer().to_u64().unwrap());
        }
        let next = &(&p.a * &e) + &p.b;
        if next == e {
            break;
        }
        e = next;
    }
    out
}

/// Truncated comparison of E(g_{1,1,T}) and E(g_{1,2,T}), with naive
/// heights and the sparse subset E(g_{2,0,T}).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NegativeAnswerReport {
    pub truncation: u64,
    pub e_1_1: Vec<u64>,
    pub e_1_2: Vec<u64>,
    pub intersection: Vec<u64>,
    pub symmetric_difference: Vec<u64>,
    /// log e for e in E(g_{1,1,T}) ∩ [1, truncation], in order.
    pub heights: Vec<f64>,
    pub max_height: f64,
    pub e_2_0: Vec<u64>,
    pub e_2_0_inside_e_1_1: bool,
}

pub fn negative_answer_report(n_max: u64) -> NegativeAnswerReport {
    let e11 = integers_up_to(&GFamilyParams::ints(1, 1).unwrap(), n_max);
    let e12 = integers_up_to(&GFamilyParams::ints(1, 2).unwrap(), n_max);
    let e20 = integers_up_to(&GFamilyParams::ints(2, 0).unwrap(), n_max);
    let heights: Vec<f64> = e11.iter().map(|&e| (e as f64).ln()).collect();
    NegativeAnswerReport {
        truncation: n_max,
        intersection: e11.intersection(&e12).copied().collect(),
        symmetric_difference: e11.symmetric_difference(&e12).copied().collect(),
        max_height: heights.iter().copied().fold(0.0, f64::max),
        heights,
        e_2_0_inside_e_1_1: e20.is_subset(&e11),
        e_1_1: e11.into_iter().collect(),
        e_1_2: e12.into_iter().collect(),
        e_2_0: e20.into_iter().collect(),
    }
}

/// Rational as a JSON number when integral and small, else as a string.
pub fn rational_json(r: &Rational) -> serde_json::Value {
    match r.is_integer().then(|| r.to_integer().to_i64()).flatten() {
        Some(v) => v.into(),
        None => format_rational(r).into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::ratmap::ApplyOutcome;

    fn pt(v: &[i64]) -> ProjectivePoint<Rational> {
        ProjectivePoint::new(v.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn construction() {
        let p = GFamilyParams::ints(1, 1).unwrap();
        let g = p.build_g(&rat(0)).unwrap();
        let expected = ProjectiveMap::from_strings(2, &["(X+Z)*X+(X-Z)*Y", "(X-Z)*Y", "X*Z"]).unwrap();
        assert_eq!(g, expected);
        let g = p.build_g(&rat(3)).unwrap();
        assert_eq!(g.apply(&pt(&[0, 1, 0])).unwrap(), ApplyOutcome::Indeterminate);
        assert_eq!(g.apply(&pt(&[3, 0, 1])).unwrap(), ApplyOutcome::Indeterminate);
        for (x, z) in [(2, 5), (-7, 3), (1, 0)] {
            let q = g.apply(&pt(&[x, 0, z])).unwrap();
            assert!(q.point().unwrap().coords()[1].is_zero());
        }
        for (x, y) in [(2, 5), (-7, 3)] {
            let q = g.apply(&pt(&[x, y, 0])).unwrap();
            assert!(q.point().unwrap().coords()[2].is_zero());
        }
        assert!(GFamilyParams::ints(0, 1).is_err());
    }

    #[test]
    fn exceptional_sets() {
        let ints = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        assert_eq!(GFamilyParams::ints(1, 1).unwrap().exceptional_set(3), ints(&[1, 2, 3, 4]));
        assert_eq!(GFamilyParams::ints(1, 2).unwrap().exceptional_set(3), ints(&[1, 3, 5, 7]));
        assert_eq!(GFamilyParams::ints(2, 0).unwrap().exceptional_set(3), ints(&[1, 2, 4, 8]));
        let p = GFamilyParams::ints(1, 2).unwrap();
        assert_eq!(p.is_exceptional(&rat(9), 0), Membership::Member(4));
        assert_eq!(p.is_exceptional(&rat(4), 0), Membership::NotMember);
        assert_eq!(GFamilyParams::ints(2, 0).unwrap().is_exceptional(&rat(3), 10), Membership::NotWithin(10));
    }

    #[test]
    fn marked_orbits() {
        let p = GFamilyParams::ints(1, 1).unwrap();
        assert_eq!(p.orbit_marked_point(&rat(5), 50).unwrap(), MarkedOrbit::HitsIndeterminacyAt(4));
        assert_eq!(p.orbit_marked_point(&rat(1), 50).unwrap(), MarkedOrbit::HitsIndeterminacyAt(0));
        let q = GFamilyParams::ints(1, 2).unwrap();
        assert_eq!(q.orbit_marked_point(&rat(4), 50).unwrap(), MarkedOrbit::NoHitWithin(50));
    }

    #[test]
    fn degree_drops() {
        let p = GFamilyParams::ints(1, 1).unwrap();
        let caps = ResourceCaps::default();
        assert_eq!(p.degree_drop(&rat(1), 5, &caps).unwrap(), DegreeDrop::DegenerateMap { degree: 1 });
        assert!(matches!(p.degree_drop(&rat(2), 5, &caps).unwrap(), DegreeDrop::DropAt(n) if n <= 5));
        assert!(matches!(p.degree_drop(&rat(3), 5, &caps).unwrap(), DegreeDrop::DropAt(n) if n <= 5));
        assert_eq!(p.degree_drop(&rat(-1), 5, &caps).unwrap(), DegreeDrop::StableSoFar(5));
    }

    #[test]
    fn negative_answer() {
        let r = negative_answer_report(10);
        assert_eq!(r.intersection, vec![1, 3, 5, 7, 9]);
        assert_eq!(r.symmetric_difference, vec![2, 4, 6, 8, 10]);
        assert!((r.max_height - 10f64.ln()).abs() < 1e-12);
        assert_eq!(r.e_2_0, vec![1, 2, 4, 8]);
        assert!(r.e_2_0_inside_e_1_1);
    }
}
