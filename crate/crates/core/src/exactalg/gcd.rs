//! GCD over the rationals.
//!
//! The driver strips monomial content, dehomogenizes when both operands are
//! homogeneous, certifies coprimality cheaply when it can, and otherwise
//! runs a multi-prime modular algorithm whose result is confirmed by exact
//! trial division.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::coeff::{is_prime_u64, mul_mod, primitive_integer_part, Rational, Rationals};
use super::modp::{pgcd, uni_deg, uni_gcd, SPoly};
use super::poly::{Monomial, MultiPoly};

type QPoly = MultiPoly<Rational>;

const SEED: u64 = 0x5eed_9cd0;

/// Normalized gcd of two polynomials over Q (primitive integer
/// coefficients, positive leading coefficient). `gcd(0, 0) = 0`.
pub(crate) fn gcd_rational(a: &QPoly, b: &QPoly) -> QPoly {
    let nvars = a.nvars();
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let a1 = strip_monomial(a, &ma);
    let b1 = strip_monomial(b, &mb);
    let core = gcd_no_monomial(&a1, &b1);
    QPoly::monomial(nvars, Rationals, mono, Rational::one()).try_mul(&core).expect("same ring")
}

fn strip_monomial(p: &QPoly, m: &Monomial) -> QPoly {
    let terms = p.terms().iter().map(|(t, c)| (t.div(m).expect("content divides"), c.clone())).collect();
    QPoly::from_sorted_unchecked(p.nvars(), Rationals, terms)
}

/// gcd of polynomials that carry no monomial factor.
fn gcd_no_monomial(a: &QPoly, b: &QPoly) -> QPoly {
    let nvars = a.nvars();
    if a.is_constant() || b.is_constant() {
        return QPoly::q_one(nvars);
    }
    // restrict to the variables actually present
    let used: Vec<usize> = (0..nvars).filter(|&v| a.involves(v) || b.involves(v)).collect();
    if used.len() < nvars {
        let ca = compress(a, &used);
        let cb = compress(b, &used);
        let g = gcd_no_monomial(&ca, &cb);
        return g.remap_vars(nvars, &used);
    }
    if nvars >= 2 && a.is_homogeneous() && b.is_homogeneous() {
        // Neither operand is divisible by the last variable, so the gcd is
        // the homogenization of the affine gcd.
        let last = nvars - 1;
        let one = Rational::one();
        let da = a.specialize(last, &one);
        let db = b.specialize(last, &one);
        let g = gcd_rational(&da, &db);
        let d = g.total_degree().unwrap_or(0);
        return g.homogenize(last, d).normalized();
    }
    let (pa, _) = primitive_integer_part(a);
    let (pb, _) = primitive_integer_part(b);
    let ia = to_int_terms(&pa);
    let ib = to_int_terms(&pb);
    if certify_coprime(&ia, &ib, nvars) {
        return QPoly::q_one(nvars);
    }
    modular_gcd(&pa, &pb, &ia, &ib)
}

fn compress(p: &QPoly, used: &[usize]) -> QPoly {
    let terms = p.terms().iter().map(|(m, c)| (Monomial(used.iter().map(|&v| m.0[v]).collect()), c.clone()));
    QPoly::from_terms(used.len(), Rationals, terms)
}

fn to_int_terms(p: &QPoly) -> Vec<(Monomial, BigInt)> {
    p.terms()
        .iter()
        .map(|(m, c)| {
            debug_assert!(c.is_integer());
            (m.clone(), c.numer().clone())
        })
        .collect()
}

fn reduce(terms: &[(Monomial, BigInt)], nvars: usize, p: u64) -> SPoly {
    let pb = BigInt::from(p);
    let mut map = HashMap::with_capacity(terms.len());
    for (m, c) in terms {
        let r = c.mod_floor(&pb).to_u64().expect("residue fits");
        if r != 0 {
            map.insert(m.clone(), r);
        }
    }
    SPoly::from_map(nvars, map)
}

fn residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Primes descending from 2^61 - 1.
fn big_primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 61) - 1;
    std::iter::from_fn(move || {
        while !is_prime_u64(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

/// Sound certificate that gcd(a, b) is constant: for each variable, a
/// random restriction to that variable keeps the degree of `a` and the two
/// restrictions are coprime. Returns `false` when no certificate was found,
/// which says nothing about the gcd.
fn certify_coprime(a: &[(Monomial, BigInt)], b: &[(Monomial, BigInt)], nvars: usize) -> bool {
    let p = big_primes().next().unwrap();
    let sa = reduce(a, nvars, p);
    let sb = reduce(b, nvars, p);
    if sa.terms.len() != a.len() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let point: Vec<u64> = (0..nvars).map(|_| rng.gen_range(1..p)).collect();
    for v in 0..nvars {
        let full_deg = a.iter().map(|(m, _)| m.0[v]).max().unwrap_or(0) as usize;
        let ua = sa.to_uni_at(v, &point, p);
        if uni_deg(&ua) != Some(full_deg) {
            return false;
        }
        if full_deg == 0 {
            continue;
        }
        let ub = sb.to_uni_at(v, &point, p);
        let g = uni_gcd(&ua, &ub, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn modular_gcd(pa: &QPoly, pb: &QPoly, ia: &[(Monomial, BigInt)], ib: &[(Monomial, BigInt)]) -> QPoly {
    let nvars = pa.nvars();
    let lca = &ia[0].1;
    let lcb = &ib[0].1;
    let gamma = lca.gcd(lcb);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xa5a5);

    // accumulated image: leading monomial, modulus, coefficients mod modulus
    let mut acc: Option<(Monomial, BigInt, HashMap<Monomial, BigInt>)> = None;
    let mut prev_lift: Option<Vec<(Monomial, BigInt)>> = None;

    for p in big_primes() {
        if residue(lca, p) == 0 || residue(lcb, p) == 0 {
            continue;
        }
        let sa = reduce(ia, nvars, p);
        let sb = reduce(ib, nvars, p);
        let g = pgcd(&sa, &sb, p, &mut rng);
        if g.is_constant() {
            return QPoly::q_one(nvars);
        }
        let g = g.scale(residue(&gamma, p), p);
        let lm = g.leading_monomial().cloned().expect("nonzero");
        let combine = match &acc {
            None => false,
            Some((acc_lm, _, _)) => match lm.cmp(acc_lm) {
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => true,
            },
        };
        if !combine {
            let coeffs: HashMap<Monomial, BigInt> = g.terms.iter().map(|(m, c)| (m.clone(), BigInt::from(*c))).collect();
            let modulus = BigInt::from(p);
            prev_lift = Some(symmetric_lift(&coeffs, &modulus));
            acc = Some((lm, modulus, coeffs));
            continue;
        }
        let (_, modulus, coeffs) = acc.as_mut().unwrap();
        crt_merge(coeffs, modulus, &g, p);
        let lift = symmetric_lift(coeffs, modulus);
        if prev_lift.as_ref() == Some(&lift) {
            let cand = QPoly::from_terms(
                nvars,
                Rationals,
                lift.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))),
            )
            .normalized();
            if divides(&cand, pa) && divides(&cand, pb) {
                return cand;
            }
            // a corrupted image slipped in; start over
            acc = None;
            prev_lift = None;
            continue;
        }
        prev_lift = Some(lift);
    }
    unreachable!("prime iterator is unbounded")
}

fn divides(d: &QPoly, p: &QPoly) -> bool {
    matches!(p.div_exact(d), Ok(Some(_)))
}

fn crt_merge(coeffs: &mut HashMap<Monomial, BigInt>, modulus: &mut BigInt, img: &SPoly, p: u64) {
    let pb = BigInt::from(p);
    // m_inv = modulus^{-1} mod p
    let m_mod = residue(modulus, p);
    let m_inv = super::coeff::inv_mod(m_mod, p);
    let img_map: HashMap<&Monomial, u64> = img.terms.iter().map(|(m, c)| (m, *c)).collect();
    let mut keys: Vec<Monomial> = coeffs.keys().cloned().collect();
    for m in img_map.keys() {
        if !coeffs.contains_key(*m) {
            keys.push((*m).clone());
        }
    }
    for k in keys {
        let cur = coeffs.get(&k).cloned().unwrap_or_else(BigInt::zero);
        let target = img_map.get(&k).copied().unwrap_or(0);
        // x = cur + modulus * t,  t = (target - cur) * m_inv mod p
        let diff = super::coeff::sub_mod(target, residue(&cur, p), p);
        let t = mul_mod(diff, m_inv, p);
        let x = cur + &*modulus * BigInt::from(t);
        coeffs.insert(k, x);
    }
    *modulus *= pb;
}

fn symmetric_lift(coeffs: &HashMap<Monomial, BigInt>, modulus: &BigInt) -> Vec<(Monomial, BigInt)> {
    let half: BigInt = modulus >> 1;
    let mut out: Vec<(Monomial, BigInt)> = coeffs
        .iter()
        .map(|(m, c)| {
            let r = c.mod_floor(modulus);
            let r = if r > half { r - modulus } else { r };
            (m.clone(), r)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}
