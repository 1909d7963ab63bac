use crate::exactalg::{rat, resultant, QPoly, Rational};
use crate::roots::rational_roots;

use super::{MapError, ProjectiveMap, ProjectivePoint};

impl ProjectiveMap<Rational> {
    /// Rational points of the indeterminacy locus of a plane map, found by
    /// solving the coordinate equations (resultants plus exact checks).
    pub fn rational_indeterminacy_points(&self) -> Result<Vec<ProjectivePoint<Rational>>, MapError> {
        if self.dim() != 2 {
            return Err(MapError::InvalidArgument("indeterminacy solver needs a plane map".into()));
        }
        let one = rat(1);
        let zero = rat(0);
        let mut pts = Vec::new();
        // chart Z = 1, affine coordinates (X, Y)
        let affine: Vec<QPoly> = self.coords().iter().map(|p| p.specialize(2, &one)).collect();
        for (x, y) in common_zeros(&affine)? {
            pts.push(ProjectivePoint::new(vec![x, y, one.clone()])?);
        }
        // line Z = 0, chart Y = 1
        let on_line: Vec<QPoly> =
            self.coords().iter().map(|p| p.specialize(2, &zero).specialize(1, &one)).collect();
        let mut g = QPoly::q_zero(3);
        for p in &on_line {
            g = g.gcd(p)?;
        }
        if g.is_zero() {
            return Err(MapError::InvalidArgument("the line Z = 0 is indeterminate".into()));
        }
        for x in rational_roots(&univariate(&g)) {
            pts.push(ProjectivePoint::new(vec![x, one.clone(), zero.clone()])?);
        }
        let corner = ProjectivePoint::new(vec![one.clone(), zero.clone(), zero.clone()])?;
        if self.coords().iter().all(|p| p.eval(corner.coords()).map(|v| v == zero).unwrap_or(false)) {
            pts.push(corner);
        }
        pts.sort_by_key(|p| p.to_string());
        Ok(pts)
    }
}

/// Views a polynomial that involves at most one variable as univariate.
fn univariate(p: &QPoly) -> QPoly {
    p.remap_vars(1, &vec![0; p.nvars()])
}

/// Common zeros in Q² of polynomials in the first two of three variables.
fn common_zeros(polys: &[QPoly]) -> Result<Vec<(Rational, Rational)>, MapError> {
    let polys: Vec<QPoly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(Vec::new());
    }
    if polys.len() < 2 {
        return Err(MapError::InvalidArgument("indeterminacy locus contains a curve".into()));
    }
    let (p, q) = (&polys[0], &polys[1]);
    let g = p.gcd(q)?;
    if !g.is_constant() {
        let rest = &polys[2..];
        let mut with_g = vec![g.clone()];
        with_g.extend_from_slice(rest);
        let mut without = vec![
            p.div_exact(&g)?.expect("gcd divides"),
            q.div_exact(&g)?.expect("gcd divides"),
        ];
        without.extend_from_slice(rest);
        let mut out = common_zeros(&with_g)?;
        for z in common_zeros(&without)? {
            if !out.contains(&z) {
                out.push(z);
            }
        }
        return Ok(out);
    }
    // coprime pair: finitely many common zeros, X-coordinates among the
    // roots of the resultant in Y
    let elim = if !p.involves(1) {
        p.clone()
    } else if !q.involves(1) {
        q.clone()
    } else {
        resultant(p, q, 1)
    };
    let mut out = Vec::new();
    for x in rational_roots(&univariate(&elim)) {
        let mut h = QPoly::q_zero(1);
        for f in &polys {
            let fy = univariate(&f.specialize(0, &x));
            h = h.gcd(&fy)?;
        }
        for y in rational_roots(&h) {
            if polys.iter().all(|f| f.eval(&[x.clone(), y.clone(), rat(1)]).map(|v| v == rat(0)).unwrap_or(false)) {
                out.push((x.clone(), y));
            }
        }
    }
    Ok(out)
}
