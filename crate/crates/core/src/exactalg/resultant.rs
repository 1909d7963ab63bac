use super::coeff::Coeff;
use super::poly::MultiPoly;

/// Sylvester resultant of `p` and `q` with respect to variable `var`.
/// Both must have positive degree in `var`.
pub fn resultant<C: Coeff>(p: &MultiPoly<C>, q: &MultiPoly<C>, var: usize) -> MultiPoly<C> {
    let m = p.degree_in(var).unwrap_or(0) as usize;
    let n = q.degree_in(var).unwrap_or(0) as usize;
    let size = m + n;
    let zero = MultiPoly::zero(p.nvars(), p.domain().clone());
    if size == 0 {
        return MultiPoly::one(p.nvars(), p.domain().clone());
    }
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let mut rows = vec![vec![zero.clone(); size]; size];
    for i in 0..n {
        for (k, c) in pc.iter().enumerate() {
            rows[i][i + m - k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in qc.iter().enumerate() {
            rows[n + i][i + n - k] = c.clone();
        }
    }
    bareiss_det(rows)
}

/// Fraction-free determinant over a polynomial ring.
fn bareiss_det<C: Coeff>(mut m: Vec<Vec<MultiPoly<C>>>) -> MultiPoly<C> {
    let n = m.len();
    let mut negate = false;
    let mut prev: MultiPoly<C> = MultiPoly::one(m[0][0].nvars(), m[0][0].domain().clone());
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return MultiPoly::zero(prev.nvars(), prev.domain().clone()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.div_exact(&prev).expect("same ring").expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
