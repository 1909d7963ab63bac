use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactalg::{Monomial, QPoly, Rational, Rationals};
use crate::ratmap::ProjectiveMap;

use super::MonomialError;

/// An invertible integer matrix A, acting as the monomial map φ_A.
/// Composition follows φ_A ∘ φ_B = φ_{AB}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    a: Vec<Vec<BigInt>>,
}

impl MonomialMap {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self, MonomialError> {
        let m = Self::new_unchecked(rows)?;
        if m.det().is_zero() {
            return Err(MonomialError::Singular);
        }
        Ok(m)
    }

    fn new_unchecked(rows: Vec<Vec<BigInt>>) -> Result<Self, MonomialError> {
        let n = rows.len();
        if n == 0 {
            return Err(MonomialError::Empty);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(MonomialError::NotSquare);
        }
        Ok(MonomialMap { a: rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, MonomialError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// Parses a JSON array of integer rows.
    pub fn from_json(text: &str) -> Result<Self, MonomialError> {
        let rows: Vec<Vec<serde_json::Number>> =
            serde_json::from_str(text).map_err(|e| MonomialError::InvalidArgument(e.to_string()))?;
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        x.to_string().parse::<BigInt>().map_err(|_| MonomialError::InvalidArgument(format!("{x} is not an integer")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    pub fn identity(n: usize) -> Self {
        let a = (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        MonomialMap { a }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.a
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i][j]
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &MonomialMap) -> MonomialMap {
        let n = self.dim();
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for k in 0..n {
                    *cell += &self.a[i][k] * &other.a[k][j];
                }
            }
        }
        MonomialMap { a: out }
    }

    /// A^k; A^0 is the identity.
    pub fn pow(&self, mut k: u64) -> MonomialMap {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.dim();
        let mut m = self.a.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> Result<MonomialMap, MonomialError> {
        let det = self.det();
        if det.abs() != BigInt::one() {
            return Err(MonomialError::NotUnimodular);
        }
        let n = self.dim();
        if n == 1 {
            return Ok(MonomialMap { a: vec![vec![det]] });
        }
        let mut inv = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<BigInt>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| (0..n).filter(|&c| c != i).map(|c| self.a[r][c].clone()).collect())
                    .collect();
                let cof = MonomialMap { a: minor }.det();
                let s = if (i + j) % 2 == 0 { cof } else { -cof };
                inv[i][j] = s * &det;
            }
        }
        Ok(MonomialMap { a: inv })
    }

    /// ‖A‖ = max |a_ij|.
    pub fn sup_norm(&self) -> BigInt {
        self.a.iter().flatten().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Per-column shifts e_j = max(0, max_i -a_ij) that clear negative exponents.
    fn shifts(&self) -> Vec<BigInt> {
        let n = self.dim();
        (0..n)
            .map(|j| self.a.iter().map(|r| -&r[j]).max().unwrap().max(BigInt::zero()))
            .collect()
    }

    /// D(A) = Σ_j max⁺(-a_ij over i) + max⁺(row sums).
    pub fn degree_d(&self) -> BigInt {
        let shift: BigInt = self.shifts().iter().sum();
        let rows = self.a.iter().map(|r| r.iter().sum::<BigInt>()).max().unwrap().max(BigInt::zero());
        shift + rows
    }

    /// The map on P^N in coordinates X_0..X_{N-1}, Z with Z last.
    pub fn homogenize(&self) -> Result<ProjectiveMap<Rational>, MonomialError> {
        let n = self.dim();
        let e = self.shifts();
        let mut exps: Vec<Vec<BigInt>> = self.a.iter().map(|r| r.iter().zip(&e).map(|(x, s)| x + s).collect()).collect();
        exps.push(e);
        let degs: Vec<BigInt> = exps.iter().map(|r| r.iter().sum()).collect();
        let total = degs.iter().max().unwrap().clone();
        let to_u32 = |x: &BigInt| x.to_u32().ok_or(MonomialError::ExponentTooLarge);
        let mut coords = Vec::with_capacity(n + 1);
        for (row, d) in exps.iter().zip(&degs) {
            let mut m = row.iter().map(to_u32).collect::<Result<Vec<u32>, _>>()?;
            m.push(to_u32(&(&total - d))?);
            coords.push(QPoly::monomial(n + 1, Rationals, Monomial(m), Rational::one()));
        }
        ProjectiveMap::new(coords).map_err(|e| MonomialError::InvariantViolation(e.to_string()))
    }

    /// Coefficients of det(xI - A), leading one first (Berkowitz).
    pub fn char_poly(&self) -> Vec<BigInt> {
        let n = self.dim();
        // Berkowitz: build Toeplitz products for the leading principal submatrices
        let mut c: Vec<BigInt> = vec![BigInt::one(), -self.a[0][0].clone()];
        for r in 1..n {
            // partition the (r+1)x(r+1) leading block as [[A_r, C],[R, a_rr]]
            let a_rr = &self.a[r][r];
            let col: Vec<BigInt> = (0..r).map(|i| self.a[i][r].clone()).collect();
            let row: Vec<BigInt> = (0..r).map(|j| self.a[r][j].clone()).collect();
            // q_0 = 1, q_1 = -a_rr, q_{k+2} = -R A_r^k C
            let mut q = vec![BigInt::one(), -a_rr.clone()];
            let mut v = col.clone();
            for _ in 0..r {
                let rv: BigInt = row.iter().zip(&v).map(|(x, y)| x * y).sum();
                q.push(-rv);
                v = (0..r).map(|i| (0..r).map(|k| &self.a[i][k] * &v[k]).sum()).collect();
            }
            // new = T · c, T lower-triangular Toeplitz of q with r+2 rows
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, out) in next.iter_mut().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if i >= j && i - j < q.len() {
                        *out += &q[i - j] * cj;
                    }
                }
            }
            c = next;
        }
        c
    }
}

impl std::fmt::Display for MonomialMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .a
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(rows: &[&[i64]]) -> MonomialMap {
        MonomialMap::from_i64(rows).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn degree_formula() {
        assert_eq!(MonomialMap::identity(2).degree_d(), BigInt::from(1));
        assert_eq!(mm(&[&[2, 1], &[1, 1]]).degree_d(), BigInt::from(3));
        assert_eq!(mm(&[&[-1, 0], &[0, -1]]).degree_d(), BigInt::from(2));
        assert_eq!(MonomialMap::from_i64(&[&[1, 2], &[2, 4]]), Err(MonomialError::Singular));
    }

    #[test]
    fn homogenization() {
        let h = mm(&[&[2, 1], &[1, 1]]).homogenize().unwrap();
        assert_eq!(h.coord_strings(), vec!["X^2*Y", "X*Y*Z", "Z^3"]);
        assert_eq!(MonomialMap::identity(2).homogenize().unwrap(), ProjectiveMap::identity_q(2));
        assert_eq!(mm(&[&[0, 1], &[1, 0]]).homogenize().unwrap().coord_strings(), vec!["Y", "X", "Z"]);
        assert_eq!(mm(&[&[-1, 0], &[0, -1]]).homogenize().unwrap().coord_strings(), vec!["Y*Z", "X*Z", "X*Y"]);
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(mm(&[&[2, 1], &[1, 1]]).char_poly(), big(&[1, -3, 1]));
        assert_eq!(MonomialMap::identity(2).char_poly(), big(&[1, -2, 1]));
        assert_eq!(mm(&[&[0, 1], &[-1, 0]]).char_poly(), big(&[1, 0, 1]));
        // companion matrix of x^3 - 2x^2 + 3x - 5
        assert_eq!(mm(&[&[0, 0, 5], &[1, 0, -3], &[0, 1, 2]]).char_poly(), big(&[1, -2, 3, -5]));
    }

    #[test]
    fn inverse_and_powers() {
        let a = mm(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(inv, mm(&[&[1, -1], &[-1, 2]]));
        assert_eq!(a.mul(&inv), MonomialMap::identity(2));
        assert_eq!(a.pow(2), mm(&[&[5, 3], &[3, 2]]));
        assert_eq!(a.pow(0), MonomialMap::identity(2));
        assert!(mm(&[&[2, 0], &[0, 1]]).inverse_unimodular().is_err());
        assert_eq!(mm(&[&[0, 0, 5], &[1, 0, -3], &[0, 1, 2]]).det(), BigInt::from(5));
    }
}
