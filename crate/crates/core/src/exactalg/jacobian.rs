use super::coeff::Coeff;
use super::poly::MultiPoly;
use super::PolyError;

/// Determinant of the Jacobian matrix of a square system: one form per
/// variable.
pub fn jacobian_det<C: Coeff>(forms: &[MultiPoly<C>]) -> Result<MultiPoly<C>, PolyError> {
    let nvars = forms.first().map(|f| f.nvars()).unwrap_or(0);
    if forms.len() != nvars {
        return Err(PolyError::NonSquare { forms: forms.len(), vars: nvars });
    }
    let vars: Vec<usize> = (0..nvars).collect();
    jacobian_det_wrt(forms, &vars)
}

/// Determinant of `(d forms[i] / d x_{vars[j]})`. Variables not listed act
/// as symbolic parameters.
pub fn jacobian_det_wrt<C: Coeff>(forms: &[MultiPoly<C>], vars: &[usize]) -> Result<MultiPoly<C>, PolyError> {
    if forms.len() != vars.len() {
        return Err(PolyError::NonSquare { forms: forms.len(), vars: vars.len() });
    }
    let Some(first) = forms.first() else {
        return Err(PolyError::NonSquare { forms: 0, vars: 0 });
    };
    for f in forms {
        if f.nvars() != first.nvars() || f.domain() != first.domain() {
            return Err(PolyError::DomainMismatch("forms live in different rings".into()));
        }
    }
    if let Some(&v) = vars.iter().find(|&&v| v >= first.nvars()) {
        return Err(PolyError::Arity { expected: first.nvars(), got: v + 1 });
    }
    let matrix: Vec<Vec<MultiPoly<C>>> =
        forms.iter().map(|f| vars.iter().map(|&v| f.derivative(v)).collect()).collect();
    Ok(det(&matrix))
}

/// Laplace expansion along the first row; systems here are tiny.
fn det<C: Coeff>(m: &[Vec<MultiPoly<C>>]) -> MultiPoly<C> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(m[0][0].nvars(), m[0][0].domain().clone());
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly<C>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
