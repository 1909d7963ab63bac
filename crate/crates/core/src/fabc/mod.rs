//! The quadratic family f_{a,b,c}([X,Y,Z]) = [XY, XY + aZ², bYZ + cZ²].

mod family;
mod stability;

pub use family::{
    family_exceptional_locus, family_generic_stability, fmt_t, unlikely_intersection_explorer, ExceptionalLocus,
    FamilyParams, GenericVerdict, IntersectionReport, LocusEntry, PairGcd,
};
pub use stability::{classify, classify_mod_p, vn_sequence, ModPVerdict, StabilityVerdict};

use num_traits::{One, Zero};

use crate::exactalg::{
    jacobian_det, jacobian_det_wrt, parse_poly, parse_poly_with, PolyError, QPoly, Rational,
};
use crate::ratmap::{ApplyOutcome, MapError, ProjectiveMap, ProjectivePoint};

/// Variable names of the symbolic ring: coordinates first, then parameters.
pub const SYMBOLIC_NAMES: [&str; 6] = ["X", "Y", "Z", "a", "b", "c"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FabcError {
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("family is generically unstable, its exceptional set is everything")]
    GenericallyUnstable,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FabcParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl FabcParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        FabcParams { a, b, c }
    }

    pub fn ints(a: i64, b: i64, c: i64) -> Self {
        FabcParams { a: crate::rat(a), b: crate::rat(b), c: crate::rat(c) }
    }

    /// Which of a, b, c vanish, if any.
    pub fn degeneracy(&self) -> Option<String> {
        let zeros: Vec<&str> = [("a", &self.a), ("b", &self.b), ("c", &self.c)]
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(n, _)| *n)
            .collect();
        (!zeros.is_empty()).then(|| format!("{} = 0", zeros.join(" = ")))
    }

    fn check(&self) -> Result<(), FabcError> {
        match self.degeneracy() {
            Some(r) => Err(FabcError::Degenerate(r)),
            None => Ok(()),
        }
    }

    fn k(&self, v: &Rational) -> QPoly {
        QPoly::q_const(3, v.clone())
    }

    /// The map f_{a,b,c}.
    pub fn build_map(&self) -> Result<ProjectiveMap, FabcError> {
        self.check()?;
        let (x, y, z) = (QPoly::q_var(3, 0), QPoly::q_var(3, 1), QPoly::q_var(3, 2));
        let xy = &x * &y;
        let zz = &z * &z;
        let coords = vec![xy.clone(), &xy + &(&self.k(&self.a) * &zz), &(&self.k(&self.b) * &(&y * &z)) + &(&self.k(&self.c) * &zz)];
        Ok(ProjectiveMap::new(coords)?)
    }

    /// The inverse map [ab²X(Y−X), (cX−cY+aZ)², b(cX−cY+aZ)(Y−X)].
    pub fn inverse_map(&self) -> Result<ProjectiveMap, FabcError> {
        self.check()?;
        let (x, y, z) = (QPoly::q_var(3, 0), QPoly::q_var(3, 1), QPoly::q_var(3, 2));
        let (a, b, c) = (self.k(&self.a), self.k(&self.b), self.k(&self.c));
        let l = &(&(&c * &x) - &(&c * &y)) + &(&a * &z);
        let ymx = &y - &x;
        let coords = vec![&(&(&a * &b) * &b) * &(&x * &ymx), &l * &l, &(&b * &l) * &ymx];
        Ok(ProjectiveMap::new(coords)?)
    }

    /// Rational points where every coordinate of f vanishes, found by
    /// solving the equations.
    pub fn indeterminacy_points(&self) -> Result<Vec<ProjectivePoint<Rational>>, FabcError> {
        Ok(self.build_map()?.rational_indeterminacy_points()?)
    }

    /// Jacobian determinant of the coordinate forms.
    pub fn critical_locus(&self) -> Result<QPoly, FabcError> {
        Ok(jacobian_det(self.build_map()?.coords())?)
    }

    /// The fiber f⁻¹(Q).
    pub fn preimage(&self, q: &ProjectivePoint<Rational>) -> Result<Preimage, FabcError> {
        self.check()?;
        if q.dim() != 2 {
            return Err(MapError::DimensionMismatch { expected: 2, got: q.dim() }.into());
        }
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let [al, be, ga] = [0, 1, 2].map(|i| q.coords()[i].clone());
        let pt = |v: [Rational; 3]| ProjectivePoint::new(v.to_vec());
        let one = Rational::one();
        let zero = Rational::zero();
        if al.is_zero() {
            if be.is_zero() {
                return Ok(Preimage::Empty);
            }
            let special = pt([zero.clone(), a.clone(), c.clone()])?;
            if *q == special {
                return Ok(Preimage::LineMinusPoints {
                    line: parse_poly("Y", 3)?,
                    removed: vec![pt([one, zero.clone(), zero])?],
                });
            }
            return Ok(Preimage::Point(pt([zero, a * &ga - c * &be, b * &be])?));
        }
        if al == be {
            if ga.is_zero() {
                return Ok(Preimage::LineMinusPoints {
                    line: parse_poly("Z", 3)?,
                    removed: vec![pt([zero.clone(), one.clone(), zero.clone()])?, pt([one, zero.clone(), zero])?],
                });
            }
            // f(X,Y,Z) has equal first coordinates only when Z = 0, and then
            // its last coordinate vanishes
            return Ok(Preimage::Empty);
        }
        let l = &(&(&al * c) - &(&be * c)) + &(&ga * a);
        if l.is_zero() {
            return Ok(Preimage::Empty);
        }
        let d = &al - &be;
        Ok(Preimage::Point(pt([-(&(&al * &d) * &(&(a * b) * b)), &l * &l, -(&(&d * &l) * b)])?))
    }

    pub fn apply(&self, p: &ProjectivePoint<Rational>) -> Result<ApplyOutcome<Rational>, FabcError> {
        Ok(self.build_map()?.apply(p)?)
    }
}

/// A fiber of f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preimage {
    Point(ProjectivePoint<Rational>),
    /// The line `line = 0` with finitely many points removed.
    LineMinusPoints { line: QPoly, removed: Vec<ProjectivePoint<Rational>> },
    Empty,
}

fn sym(s: &str) -> QPoly {
    parse_poly_with(s, &SYMBOLIC_NAMES).expect("valid symbolic form")
}

/// Coordinates of f with a, b, c as indeterminates (ring [`SYMBOLIC_NAMES`]).
pub fn symbolic_map() -> Vec<QPoly> {
    vec![sym("X*Y"), sym("X*Y + a*Z^2"), sym("b*Y*Z + c*Z^2")]
}

/// Coordinates of the inverse with a, b, c as indeterminates.
pub fn symbolic_inverse() -> Vec<QPoly> {
    vec![sym("a*b^2*X*(Y - X)"), sym("(c*X - c*Y + a*Z)^2"), sym("b*(c*X - c*Y + a*Z)*(Y - X)")]
}

/// Substitutes `inner` into the coordinates of `outer`, both in the
/// symbolic ring.
pub fn symbolic_compose(outer: &[QPoly], inner: &[QPoly]) -> Result<Vec<QPoly>, FabcError> {
    let mut assignment = inner.to_vec();
    for v in 3..6 {
        assignment.push(QPoly::q_var(6, v));
    }
    Ok(outer.iter().map(|p| p.substitute(&assignment)).collect::<Result<_, _>>()?)
}

/// Jacobian of the symbolic map in X, Y, Z.
pub fn symbolic_critical_locus() -> Result<QPoly, FabcError> {
    Ok(jacobian_det_wrt(&symbolic_map(), &[0, 1, 2])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmap::cancel_common_factor;

    fn pt(v: &[i64]) -> ProjectivePoint<Rational> {
        ProjectivePoint::new(v.iter().map(|&x| crate::rat(x)).collect()).unwrap()
    }

    #[test]
    fn build_examples() {
        let f = FabcParams::ints(1, 1, 1).build_map().unwrap();
        assert_eq!(f.coord_strings(), vec!["X*Y", "X*Y + Z^2", "Y*Z + Z^2"]);
        let f = FabcParams::ints(-2, 1, 3).build_map().unwrap();
        assert_eq!(f.coord_strings(), vec!["X*Y", "X*Y - 2*Z^2", "Y*Z + 3*Z^2"]);
        assert!(matches!(FabcParams::ints(0, 1, 1).build_map(), Err(FabcError::Degenerate(_))));
    }

    #[test]
    fn inverse_examples() {
        let composed = symbolic_compose(&symbolic_inverse(), &symbolic_map()).unwrap();
        let factor = sym("a^2*b^2*Y*Z^2");
        for (i, p) in composed.iter().enumerate() {
            assert_eq!(*p, &factor * &QPoly::q_var(6, i));
        }
        let reduced = cancel_common_factor(composed);
        assert_eq!(reduced, (0..3).map(|i| QPoly::q_var(6, i)).collect::<Vec<_>>());

        let p = FabcParams::ints(1, 1, 1);
        let g = p.inverse_map().unwrap();
        let expected = ProjectiveMap::from_strings(2, &["X*(Y-X)", "(X-Y+Z)^2", "(X-Y+Z)*(Y-X)"]).unwrap();
        assert_eq!(g, expected);
        assert_eq!(g.degree(), 2);
        assert_eq!(g.compose(&p.build_map().unwrap()).unwrap(), ProjectiveMap::identity_q(2));
    }

    #[test]
    fn indeterminacy_examples() {
        for p in [FabcParams::ints(1, 1, 1), FabcParams::ints(2, -3, 5)] {
            let pts = p.indeterminacy_points().unwrap();
            assert_eq!(pts, vec![pt(&[0, 1, 0]), pt(&[1, 0, 0])]);
            for q in &pts {
                assert_eq!(p.apply(q).unwrap(), ApplyOutcome::Indeterminate);
            }
        }
    }

    #[test]
    fn critical_examples() {
        assert_eq!(symbolic_critical_locus().unwrap(), sym("-2*a*b*Y*Z^2"));
        let yz2 = parse_poly("Y*Z^2", 3).unwrap();
        assert_eq!(FabcParams::ints(1, 1, 1).critical_locus().unwrap().normalized(), yz2);
        assert_eq!(FabcParams::ints(1, -1, 1).critical_locus().unwrap().normalized(), yz2);
    }

    #[test]
    fn preimage_examples() {
        let p = FabcParams::ints(1, 1, 1);
        match p.preimage(&pt(&[0, 1, 1])).unwrap() {
            Preimage::LineMinusPoints { line, removed } => {
                assert_eq!(line.to_string(), "Y");
                assert_eq!(removed, vec![pt(&[1, 0, 0])]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(p.preimage(&pt(&[0, 0, 1])).unwrap(), Preimage::Empty);
        assert_eq!(p.preimage(&pt(&[1, 2, 3])).unwrap(), Preimage::Point(pt(&[1, 4, 2])));
        assert_eq!(p.apply(&pt(&[1, 4, 2])).unwrap(), ApplyOutcome::Point(pt(&[1, 2, 3])));
        assert!(matches!(p.preimage(&pt(&[1, 1, 0])).unwrap(), Preimage::LineMinusPoints { .. }));
        // [a, at, ct - c] with t = 2
        assert_eq!(p.preimage(&pt(&[1, 2, 1])).unwrap(), Preimage::Empty);
        assert_eq!(p.preimage(&pt(&[1, 1, 5])).unwrap(), Preimage::Empty);
        assert_eq!(p.preimage(&pt(&[0, 1, 3])).unwrap(), Preimage::Point(pt(&[0, 2, 1])));
        assert_eq!(p.apply(&pt(&[0, 2, 1])).unwrap(), ApplyOutcome::Point(pt(&[0, 1, 3])));
    }
}
