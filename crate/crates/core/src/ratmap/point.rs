use crate::exactalg::Coeff;

use super::MapError;

/// A point of projective space with its first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint<C: Coeff> {
    coords: Vec<C>,
}

impl<C: Coeff> ProjectivePoint<C> {
    pub fn new(coords: Vec<C>) -> Result<Self, MapError> {
        let lead = coords.iter().find(|c| !c.is_zero()).ok_or(MapError::ZeroPoint)?;
        let inv = lead.inv().expect("nonzero");
        Ok(ProjectivePoint { coords: coords.iter().map(|c| c.mul(&inv)).collect() })
    }

    pub fn coords(&self) -> &[C] {
        &self.coords
    }

    /// Dimension of the ambient projective space.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

impl<C: Coeff> std::fmt::Display for ProjectivePoint<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Result of evaluating a map at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ApplyOutcome<C: Coeff> {
    Point(ProjectivePoint<C>),
    /// Every coordinate vanished: the point is in the indeterminacy locus.
    Indeterminate,
}

impl<C: Coeff> ApplyOutcome<C> {
    pub fn point(&self) -> Option<&ProjectivePoint<C>> {
        match self {
            ApplyOutcome::Point(p) => Some(p),
            ApplyOutcome::Indeterminate => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitEnd {
    Completed,
    /// `points[n]` lies in the indeterminacy locus.
    HitIndeterminacy(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit<C: Coeff> {
    pub points: Vec<ProjectivePoint<C>>,
    pub end: OrbitEnd,
}
