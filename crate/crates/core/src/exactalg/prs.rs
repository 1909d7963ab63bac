//! Recursive primitive-PRS gcd over any coefficient field.
//!
//! Used directly for prime fields and as an independent check on the
//! modular algorithm over the rationals.

use super::coeff::Coeff;
use super::poly::{Monomial, MultiPoly};

pub fn gcd_prs<C: Coeff>(a: &MultiPoly<C>, b: &MultiPoly<C>) -> MultiPoly<C> {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let nvars = a.nvars();
    let Some(v) = (0..nvars).find(|&v| a.involves(v) || b.involves(v)) else {
        return MultiPoly::one(nvars, a.domain().clone());
    };
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_prs(&ca, &cb);
    let mut x = a.div_exact(&ca).unwrap().expect("content divides");
    let mut y = b.div_exact(&cb).unwrap().expect("content divides");
    if x.degree_in(v) < y.degree_in(v) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() && y.degree_in(v).unwrap_or(0) > 0 {
        let r = prem(&x, &y, v);
        x = y;
        y = if r.is_zero() { r } else { primitive_in(&r, v) };
    }
    let g = if y.is_zero() {
        primitive_in(&x, v)
    } else {
        // a nonzero remainder free of v: primitive parts are coprime in v
        MultiPoly::one(nvars, a.domain().clone())
    };
    (&c * &g).normalized()
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in<C: Coeff>(p: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let coeffs = p.coefficients_in(v);
    let mut g = MultiPoly::zero(p.nvars(), p.domain().clone());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = gcd_prs(&g, c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn primitive_in<C: Coeff>(p: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let c = content_in(p, v);
    p.div_exact(&c).unwrap().expect("content divides").normalized()
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn prem<C: Coeff>(a: &MultiPoly<C>, b: &MultiPoly<C>, v: usize) -> MultiPoly<C> {
    let db = b.degree_in(v).unwrap_or(0);
    let bc = b.coefficients_in(v);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(v) {
        if r.is_zero() || dr < db {
            break;
        }
        let lr = r.coefficients_in(v)[dr as usize].clone();
        let mut shift = Monomial::one(r.nvars());
        shift.0[v] = dr - db;
        r = &(&r * &lb) - &(&lr * &b.mul_monomial(&shift));
    }
    r
}
