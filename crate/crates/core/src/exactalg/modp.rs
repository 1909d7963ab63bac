//! Word-sized arithmetic modulo a large prime, used by the modular GCD.
//!
//! Univariate polynomials are dense little-endian `Vec<u64>` without
//! trailing zeros; multivariate ones are sparse `(exponents, coeff)` lists.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::coeff::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod};
use super::poly::Monomial;

pub(crate) type Uni = Vec<u64>;

pub(crate) fn trim(a: &mut Uni) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn uni_deg(a: &Uni) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub(crate) fn uni_eval(a: &Uni, x: u64, p: u64) -> u64 {
    let mut acc = 0;
    for &c in a.iter().rev() {
        acc = add_mod(mul_mod(acc, x, p), c, p);
    }
    acc
}

pub(crate) fn uni_mul(a: &Uni, b: &Uni, p: u64) -> Uni {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn uni_scale(a: &Uni, s: u64, p: u64) -> Uni {
    let mut out: Uni = a.iter().map(|&c| mul_mod(c, s, p)).collect();
    trim(&mut out);
    out
}

pub(crate) fn uni_add(a: &Uni, b: &Uni, p: u64) -> Uni {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p));
    }
    trim(&mut out);
    out
}

/// Returns `(q, r)` with `a = q*b + r`. `b` must be nonzero.
pub(crate) fn uni_divrem(a: &Uni, b: &Uni, p: u64) -> (Uni, Uni) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = mul_mod(*r.last().unwrap(), inv, p);
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = sub_mod(r[k + j], mul_mod(c, bj, p), p);
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn uni_monic(a: &Uni, p: u64) -> Uni {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => uni_scale(a, inv_mod(lc, p), p),
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub(crate) fn uni_gcd(a: &Uni, b: &Uni, p: u64) -> Uni {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let (_, r) = uni_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    uni_monic(&x, p)
}

/// Sparse polynomial over `Z/p` in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SPoly {
    pub nvars: usize,
    /// Sorted in descending graded lex order.
    pub terms: Vec<(Monomial, u64)>,
}

impl SPoly {
    pub fn from_map(nvars: usize, map: HashMap<Monomial, u64>) -> Self {
        let mut terms: Vec<(Monomial, u64)> = map.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        SPoly { nvars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.degree() == 0
    }

    pub fn monic(&self, p: u64) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, lc)) => self.scale(inv_mod(lc, p), p),
        }
    }

    pub fn scale(&self, s: u64, p: u64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), mul_mod(*c, s, p)))
            .filter(|(_, c)| *c != 0)
            .collect();
        SPoly { nvars: self.nvars, terms }
    }

    /// Restricts to one variable with every other variable set to `point`.
    pub fn to_uni_at(&self, var: usize, point: &[u64], p: u64) -> Uni {
        let mut out: Uni = Vec::new();
        for (m, c) in &self.terms {
            let mut v = *c;
            for (i, &e) in m.0.iter().enumerate() {
                if i != var && e > 0 {
                    v = mul_mod(v, pow_mod(point[i], e as u64, p), p);
                }
            }
            let k = m.0[var] as usize;
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            out[k] = add_mod(out[k], v, p);
        }
        trim(&mut out);
        out
    }

    /// Groups by the first `nvars - 1` exponents; values are dense in the
    /// last variable.
    fn split_last(&self) -> BTreeMap<Monomial, Uni> {
        let k = self.nvars - 1;
        let mut view: BTreeMap<Monomial, Uni> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = Monomial(m.0[..k].to_vec());
            let e = m.0[k] as usize;
            let entry = view.entry(key).or_default();
            if entry.len() <= e {
                entry.resize(e + 1, 0);
            }
            entry[e] = *c;
        }
        view
    }
}

fn join_last(nvars: usize, view: &BTreeMap<Monomial, Uni>) -> SPoly {
    let mut map = HashMap::new();
    for (key, u) in view {
        for (e, &c) in u.iter().enumerate() {
            if c != 0 {
                let mut ex = key.0.clone();
                ex.push(e as u32);
                map.insert(Monomial(ex), c);
            }
        }
    }
    SPoly::from_map(nvars, map)
}

fn eval_view(view: &BTreeMap<Monomial, Uni>, nvars: usize, alpha: u64, p: u64) -> SPoly {
    let mut terms: Vec<(Monomial, u64)> = view
        .iter()
        .map(|(k, u)| (k.clone(), uni_eval(u, alpha, p)))
        .filter(|(_, c)| *c != 0)
        .collect();
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    SPoly { nvars, terms }
}

fn view_content(view: &BTreeMap<Monomial, Uni>, p: u64) -> Uni {
    let mut g: Uni = Vec::new();
    for u in view.values() {
        g = uni_gcd(&g, u, p);
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn view_div(view: &BTreeMap<Monomial, Uni>, d: &Uni, p: u64) -> BTreeMap<Monomial, Uni> {
    view.iter().map(|(k, u)| (k.clone(), uni_divrem(u, d, p).0)).collect()
}

/// Monic (graded lex) gcd of two polynomials over `Z/p` by dense
/// evaluation/interpolation in the last variable, recursively.
///
/// `p` must be large enough that random evaluation points do not run out;
/// callers use primes near 2^61.
pub(crate) fn pgcd(a: &SPoly, b: &SPoly, p: u64, rng: &mut ChaCha8Rng) -> SPoly {
    let nvars = a.nvars;
    if a.is_zero() {
        return b.monic(p);
    }
    if b.is_zero() {
        return a.monic(p);
    }
    if nvars == 0 {
        return SPoly { nvars, terms: vec![(Monomial(vec![]), 1)] };
    }
    if nvars == 1 {
        let ua = a.to_uni_at(0, &[0], p);
        let ub = b.to_uni_at(0, &[0], p);
        let g = uni_gcd(&ua, &ub, p);
        let terms = g
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(e, c)| (Monomial(vec![e as u32]), *c))
            .collect();
        return SPoly { nvars, terms };
    }

    let va = a.split_last();
    let vb = b.split_last();
    let ca = view_content(&va, p);
    let cb = view_content(&vb, p);
    let cont = uni_gcd(&ca, &cb, p);
    let va = view_div(&va, &ca, p);
    let vb = view_div(&vb, &cb, p);
    let lca = va.values().next_back().cloned().unwrap_or_default();
    let lcb = vb.values().next_back().cloned().unwrap_or_default();
    let gamma = uni_gcd(&lca, &lcb, p);

    let deg_last = |v: &BTreeMap<Monomial, Uni>| v.values().map(|u| u.len().saturating_sub(1)).max().unwrap_or(0);
    let bound = deg_last(&va).min(deg_last(&vb)) + uni_deg(&gamma).unwrap_or(0);

    let cont_poly = |g: &BTreeMap<Monomial, Uni>| -> SPoly {
        // cont * g, made monic
        let scaled: BTreeMap<Monomial, Uni> = g.iter().map(|(k, u)| (k.clone(), uni_mul(u, &cont, p))).collect();
        join_last(nvars, &scaled).monic(p)
    };

    let mut used: HashSet<u64> = HashSet::new();
    let mut interp: Option<BTreeMap<Monomial, Uni>> = None;
    let mut modulus: Uni = vec![1];
    let mut npts = 0usize;
    loop {
        let alpha = rng.gen_range(1..p);
        if !used.insert(alpha) {
            continue;
        }
        if uni_eval(&lca, alpha, p) == 0 || uni_eval(&lcb, alpha, p) == 0 {
            continue;
        }
        let ea = eval_view(&va, nvars - 1, alpha, p);
        let eb = eval_view(&vb, nvars - 1, alpha, p);
        let img = pgcd(&ea, &eb, p, rng);
        if img.is_constant() {
            // primitive parts are coprime
            let mut one = BTreeMap::new();
            one.insert(Monomial(vec![0; nvars - 1]), vec![1u64]);
            return cont_poly(&one);
        }
        let img = img.scale(uni_eval(&gamma, alpha, p), p);
        let img_lm = img.leading_monomial().cloned().expect("nonzero image");
        let restart = match &interp {
            None => true,
            Some(h) => {
                let h_lm = h.keys().next_back().expect("nonempty interpolant");
                match img_lm.cmp(h_lm) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => continue,
                    std::cmp::Ordering::Equal => false,
                }
            }
        };
        if restart {
            let h: BTreeMap<Monomial, Uni> = img.terms.iter().map(|(m, c)| (m.clone(), vec![*c])).collect();
            interp = Some(h);
            modulus = vec![sub_mod(0, alpha, p), 1];
            npts = 1;
        } else {
            // Newton step: H += (img - H(alpha)) * modulus / modulus(alpha)
            let h = interp.as_mut().unwrap();
            let q_inv = inv_mod(uni_eval(&modulus, alpha, p), p);
            let img_map: HashMap<&Monomial, u64> = img.terms.iter().map(|(m, c)| (m, *c)).collect();
            let mut keys: Vec<Monomial> = h.keys().cloned().collect();
            for m in img_map.keys() {
                if !h.contains_key(*m) {
                    keys.push((*m).clone());
                }
            }
            for k in keys {
                let cur = h.get(&k).map(|u| uni_eval(u, alpha, p)).unwrap_or(0);
                let target = img_map.get(&k).copied().unwrap_or(0);
                let delta = mul_mod(sub_mod(target, cur, p), q_inv, p);
                if delta == 0 {
                    continue;
                }
                let add = uni_scale(&modulus, delta, p);
                let entry = h.entry(k.clone()).or_default();
                *entry = uni_add(entry, &add, p);
                if entry.is_empty() {
                    h.remove(&k);
                }
            }
            modulus = uni_mul(&modulus, &vec![sub_mod(0, alpha, p), 1], p);
            npts += 1;
        }
        if npts > bound {
            let h = interp.as_ref().unwrap();
            let hc = view_content(h, p);
            let prim = view_div(h, &hc, p);
            return cont_poly(&prim);
        }
    }
}
