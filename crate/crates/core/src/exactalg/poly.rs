use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::coeff::{Coeff, Rational, Rationals};
use super::PolyError;

/// Exponent vector. Ordered by graded lexicographic order: total degree
/// first, then lexicographically with variable 0 largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree of a polynomial; the zero polynomial has degree `NegInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept sorted in descending graded lex order with no zero
/// coefficients and no repeated exponent vectors, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<C: Coeff> {
    nvars: usize,
    domain: C::Domain,
    terms: Vec<(Monomial, C)>,
}

pub type QPoly = MultiPoly<Rational>;

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(nvars: usize, domain: C::Domain) -> Self {
        MultiPoly { nvars, domain, terms: Vec::new() }
    }

    pub fn one(nvars: usize, domain: C::Domain) -> Self {
        let c = C::one_in(&domain);
        Self::constant(nvars, domain, c)
    }

    pub fn constant(nvars: usize, domain: C::Domain, c: C) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(Monomial::one(nvars), c)] };
        MultiPoly { nvars, domain, terms }
    }

    /// The `i`-th coordinate variable. Panics if `i >= nvars`.
    pub fn var(nvars: usize, domain: C::Domain, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let one = C::one_in(&domain);
        MultiPoly { nvars, domain, terms: vec![(Monomial::var(nvars, i), one)] }
    }

    pub fn monomial(nvars: usize, domain: C::Domain, m: Monomial, c: C) -> Self {
        assert_eq!(m.0.len(), nvars);
        Self::from_terms(nvars, domain, vec![(m, c)])
    }

    /// Builds a canonical polynomial from arbitrary terms: repeated
    /// monomials are merged and zero coefficients dropped.
    pub fn from_terms(nvars: usize, domain: C::Domain, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial length does not match variable count");
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(nvars, domain, acc)
    }

    fn from_map(nvars: usize, domain: C::Domain, acc: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { nvars, domain, terms }
    }

    /// Terms in canonical (descending graded lex) order.
    pub(crate) fn from_sorted_unchecked(nvars: usize, domain: C::Domain, terms: Vec<(Monomial, C)>) -> Self {
        MultiPoly { nvars, domain, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn domain(&self) -> &C::Domain {
        &self.domain
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.degree() == 0)
    }

    pub fn degree(&self) -> Degree {
        match self.terms.first() {
            None => Degree::NegInf,
            Some((m, _)) => Degree::Finite(m.degree()),
        }
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.degree().finite()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.0[var]).max()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// True for the zero polynomial and for polynomials whose terms all
    /// share one total degree.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Whether variable `var` occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.domain.clone());
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect();
        MultiPoly { nvars: self.nvars, domain: self.domain.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect();
        MultiPoly { nvars: self.nvars, domain: self.domain.clone(), terms }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DomainMismatch(format!(
                "variable counts differ: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        if self.domain != other.domain {
            return Err(PolyError::DomainMismatch(format!(
                "coefficient domains differ: {:?} vs {:?}",
                self.domain, other.domain
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => b.0.cmp(&a.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { c.neg() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let s = if negate { a.sub(b) } else { a.add(b) };
                    if !s.is_zero() {
                        out.push((m.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { nvars: self.nvars, domain: self.domain.clone(), terms: out }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars, self.domain.clone());
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.terms.len() * 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.nvars, self.domain.clone(), acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            let mut cc = C::one_in(&self.domain);
            for _ in 0..e {
                cc = cc.mul(c);
            }
            let mon = Monomial(m.0.iter().map(|x| x.checked_mul(e).expect("exponent overflow")).collect());
            return Self::monomial(self.nvars, self.domain.clone(), mon, cc);
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars, self.domain.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Replaces variable `i` by `assignment[i]`. All assignment polynomials
    /// must share a variable count and the domain of `self`.
    pub fn substitute(&self, assignment: &[MultiPoly<C>]) -> Result<Self, PolyError> {
        if assignment.len() != self.nvars {
            return Err(PolyError::Arity { expected: self.nvars, got: assignment.len() });
        }
        let target_nvars = match assignment.first() {
            Some(a) => a.nvars,
            None => 0,
        };
        for a in assignment {
            if a.nvars != target_nvars {
                return Err(PolyError::DomainMismatch("assignment polynomials differ in variable count".into()));
            }
            if a.domain != self.domain {
                return Err(PolyError::DomainMismatch("assignment domain differs".into()));
            }
        }
        let mut powers: Vec<Vec<MultiPoly<C>>> = assignment
            .iter()
            .map(|a| vec![MultiPoly::one(target_nvars, self.domain.clone()), a.clone()])
            .collect();
        let mut acc = MultiPoly::zero(target_nvars, self.domain.clone());
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target_nvars, self.domain.clone(), c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                if assignment[v].terms.len() <= 1 {
                    t = t.mul_unchecked(&assignment[v].pow(e as u32));
                    continue;
                }
                while powers[v].len() <= e {
                    let next = powers[v].last().unwrap().mul_unchecked(&assignment[v]);
                    powers[v].push(next);
                }
                t = t.mul_unchecked(&powers[v][e]);
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Evaluates at a point given by one scalar per variable.
    pub fn eval(&self, point: &[C]) -> Result<C, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::Arity { expected: self.nvars, got: point.len() });
        }
        let mut acc = C::zero_in(&self.domain);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[var] -= 1;
            let k = C::from_bigint(&self.domain, &BigInt::from(e));
            terms.push((nm, c.mul(&k)));
        }
        Self::from_terms(self.nvars, self.domain.clone(), terms)
    }

    /// Largest monomial dividing every term (the zero polynomial yields 1).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some((m, _)) => it.fold(m.clone(), |acc, (t, _)| acc.gcd(t)),
        }
    }

    /// Division by a single polynomial in graded lex order. Returns
    /// `(quotient, remainder)`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        self.check_compatible(d)?;
        let (lm, lc) = d.leading_term().ok_or(PolyError::DivisionByZero)?.clone();
        let lc_inv = lc.inv().expect("leading coefficient is nonzero");
        let mut rem: BTreeMap<Monomial, C> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        let mut out_rem = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            match m.div(&lm) {
                Some(qm) => {
                    let qc = c.mul(&lc_inv);
                    for (dm, dc) in d.terms.iter().skip(1) {
                        let key = dm.mul(&qm);
                        let delta = dc.mul(&qc);
                        match rem.get_mut(&key) {
                            Some(v) => {
                                *v = v.sub(&delta);
                                if v.is_zero() {
                                    rem.remove(&key);
                                }
                            }
                            None => {
                                rem.insert(key, delta.neg());
                            }
                        }
                    }
                    quot.push((qm, qc));
                }
                None => out_rem.push((m, c)),
            }
        }
        Ok((
            Self::from_terms(self.nvars, self.domain.clone(), quot),
            Self::from_terms(self.nvars, self.domain.clone(), out_rem),
        ))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>, PolyError> {
        self.check_compatible(d)?;
        let (lm, lc) = d.leading_term().ok_or(PolyError::DivisionByZero)?.clone();
        let lc_inv = lc.inv().expect("leading coefficient is nonzero");
        let mut rem: BTreeMap<Monomial, C> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let Some(qm) = m.div(&lm) else {
                return Ok(None);
            };
            let qc = c.mul(&lc_inv);
            for (dm, dc) in d.terms.iter().skip(1) {
                let key = dm.mul(&qm);
                let delta = dc.mul(&qc);
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v = v.sub(&delta);
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, delta.neg());
                    }
                }
            }
            quot.push((qm, qc));
        }
        // quotient terms were produced in descending order
        Ok(Some(Self::from_sorted_unchecked(self.nvars, self.domain.clone(), quot)))
    }

    /// Canonical scalar multiple (primitive integer with positive leading
    /// coefficient over Q, monic over a prime field).
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        C::normalize_poly(self)
    }

    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        Ok(C::poly_gcd(self, other))
    }

    /// Coefficients with respect to `var`: entry `k` collects the terms
    /// carrying `var^k`, with `var` removed.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut nm = m.clone();
            nm.0[var] = 0;
            buckets[k].push((nm, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Self::from_sorted_unchecked(self.nvars, self.domain.clone(), sorted(t)))
            .collect()
    }

    /// Sum of `coeffs[k] * var^k`.
    pub fn from_coefficients_in(var: usize, coeffs: &[Self], nvars: usize, domain: C::Domain) -> Self {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut nm = m.clone();
                nm.0[var] += k as u32;
                terms.push((nm, c.clone()));
            }
        }
        Self::from_terms(nvars, domain, terms)
    }

    /// Sets variable `var` to the scalar `value`, keeping the variable count.
    pub fn specialize(&self, var: usize, value: &C) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..m.0[var] {
                t = t.mul(value);
            }
            let mut nm = m.clone();
            nm.0[var] = 0;
            terms.push((nm, t));
        }
        Self::from_terms(self.nvars, self.domain.clone(), terms)
    }

    /// Homogenizes with respect to `var` up to total degree `deg`
    /// (at least the polynomial's degree).
    pub fn homogenize(&self, var: usize, deg: u64) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut nm = m.clone();
            nm.0[var] += (deg - m.degree()) as u32;
            (nm, c.clone())
        });
        Self::from_terms(self.nvars, self.domain.clone(), terms)
    }

    /// Re-embeds into `new_nvars` variables, sending variable `i` to
    /// `mapping[i]`.
    pub fn remap_vars(&self, new_nvars: usize, mapping: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; new_nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[mapping[i]] += x;
            }
            (Monomial(e), c.clone())
        });
        Self::from_terms(new_nvars, self.domain.clone(), terms)
    }
}

fn sorted<C: Coeff>(mut t: Vec<(Monomial, C)>) -> Vec<(Monomial, C)> {
    t.sort_by(|a, b| b.0.cmp(&a.0));
    t
}

impl MultiPoly<Rational> {
    /// Polynomial over Q from integer-exponent terms and integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            nvars,
            Rationals,
            terms.iter().map(|(e, c)| (Monomial(e.to_vec()), Rational::from_integer(BigInt::from(*c)))),
        )
    }

    pub fn q_zero(nvars: usize) -> Self {
        Self::zero(nvars, Rationals)
    }

    pub fn q_one(nvars: usize) -> Self {
        Self::one(nvars, Rationals)
    }

    pub fn q_var(nvars: usize, i: usize) -> Self {
        Self::var(nvars, Rationals, i)
    }

    pub fn q_const(nvars: usize, c: Rational) -> Self {
        Self::constant(nvars, Rationals, c)
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

// Operator impls panic on incompatible operands; use the `try_*` methods
// when operands come from untrusted input.
impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        MultiPoly { nvars: self.nvars, domain: self.domain.clone(), terms }
    }
}

impl<C: Coeff> Add for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}
