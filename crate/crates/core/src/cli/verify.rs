//! Seeded property suites behind `dyndeg verify`.

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::fabc::{classify, FabcParams, StabilityVerdict};
use crate::gfam::{GFamilyParams, MarkedOrbit};
use crate::monomial::{
    degree_ratio_bound_check, find_k_contraction, inverse_degree_bound_check, spectral_radius, verify_norm_equivalence,
    MonomialMap,
};
use crate::ratmap::{is_algebraically_stable_up_to, ResourceCaps, Stability};
use crate::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    FabcGrid,
    Monomial,
    Gfam,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseFailure {
    pub instance: String,
    pub check: String,
    pub repro: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub instances: usize,
    pub checks: usize,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "instances": self.instances,
            "checks": self.checks,
            "failed": self.failures.len(),
            "failures": self.failures,
            "passed": self.passed(),
        })
    }
}

/// One instance's outcome: number of checks run and the failures.
type CaseResult = (usize, Vec<CaseFailure>);

fn collect(suite: Suite, seed: u64, results: Vec<CaseResult>) -> SuiteReport {
    let instances = results.len();
    let checks = results.iter().map(|r| r.0).sum();
    let failures = results.into_iter().flat_map(|r| r.1).collect();
    SuiteReport { suite, seed, instances, checks, failures }
}

pub fn run_suite(suite: Suite, count: usize, seed: u64, tol: f64) -> SuiteReport {
    match suite {
        Suite::FabcGrid => fabc_grid(seed),
        Suite::Monomial => monomial_suite(count, seed, tol),
        Suite::Gfam => gfam_suite(seed),
    }
}

fn fail(instance: &str, check: &str, repro: String) -> CaseFailure {
    CaseFailure { instance: instance.to_string(), check: check.to_string(), repro }
}

/// Every nonzero (a,b,c) in {-3..3}³. Triples with abc = 0 must be
/// reported degenerate; the rest are checked against the V_n recurrence,
/// and on |a|,|b|,|c| ≤ 2 against degree sequences.
fn fabc_grid(seed: u64) -> SuiteReport {
    let mut triples = Vec::new();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in -3i64..=3 {
                if (a, b, c) != (0, 0, 0) {
                    triples.push((a, b, c));
                }
            }
        }
    }
    let results: Vec<CaseResult> = triples.par_iter().map(|&(a, b, c)| fabc_case(a, b, c)).collect();
    collect(Suite::FabcGrid, seed, results)
}

pub(crate) fn fabc_case(a: i64, b: i64, c: i64) -> CaseResult {
    let name = format!("({a},{b},{c})");
    let repro = format!("dyndeg fabc-classify -a {a} -b {b} -c {c} --vn 24");
    let p = FabcParams::ints(a, b, c);
    let verdict = classify(&p);
    if a * b * c == 0 {
        let ok = matches!(verdict, StabilityVerdict::Degenerate { .. });
        return (1, if ok { vec![] } else { vec![fail(&name, "degenerate triple", repro)] });
    }
    let v = p.vn_sequence(200).expect("nondegenerate");
    let first_zero = v.iter().skip(1).position(|x| x.is_zero()).map(|i| i + 1);
    let mut failures = Vec::new();
    let mut checks = 1;
    match (&verdict, first_zero) {
        (StabilityVerdict::Unstable { vanishing_index, .. }, Some(m)) if *vanishing_index == m && m <= 24 => {}
        (StabilityVerdict::Stable, None) => {}
        _ => failures.push(fail(&name, "classifier vs recurrence", repro)),
    }
    if a.abs() <= 2 && b.abs() <= 2 && c.abs() <= 2 {
        checks += 1;
        let f = p.build_map().expect("nondegenerate");
        let bound = if verdict.is_unstable() { 6 } else { 5 };
        let ok = match is_algebraically_stable_up_to(&f, bound, &ResourceCaps::default()) {
            Ok(Stability::DropAt(_)) => verdict.is_unstable(),
            Ok(Stability::StableSoFar(_)) => !verdict.is_unstable(),
            Err(_) => false,
        };
        if !ok {
            failures.push(fail(
                &name,
                "classifier vs degree sequence",
                format!("dyndeg stability --map '{}' --nmax {bound}", serde_json::to_string(&f.to_document()).unwrap()),
            ));
        }
    }
    (checks, failures)
}

/// Random invertible matrix with N ∈ 1..=5 and entries in [-9, 9].
pub fn random_matrix(rng: &mut ChaCha8Rng) -> MonomialMap {
    loop {
        let n = rng.gen_range(1..=5usize);
        let rows: Vec<Vec<BigInt>> =
            (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect()).collect();
        if let Ok(m) = MonomialMap::new(rows) {
            return m;
        }
    }
}

/// Random product of elementary integer matrices (determinant ±1),
/// N ∈ 2..=4.
pub fn random_unimodular(rng: &mut ChaCha8Rng) -> MonomialMap {
    let n = rng.gen_range(2..=4usize);
    let mut m = MonomialMap::identity(n);
    for _ in 0..rng.gen_range(1..=6) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = rng.gen_range(-2i64..=2);
        let mut rows: Vec<Vec<BigInt>> = MonomialMap::identity(n).rows().to_vec();
        match rng.gen_range(0..3) {
            0 => rows[i][j] = BigInt::from(k),
            1 => rows.swap(i, j),
            _ => rows[i][i] = -BigInt::one(),
        }
        m = m.mul(&MonomialMap::new(rows).expect("elementary matrices are invertible"));
    }
    m
}

fn matrix_json(m: &MonomialMap) -> String {
    m.to_string()
}

pub(crate) fn monomial_case(m: &MonomialMap, tol: f64) -> CaseResult {
    let name = matrix_json(m);
    let repro = format!("dyndeg monomial --matrix '{name}'");
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut check = |ok: bool, what: &str| {
        checks += 1;
        if !ok {
            failures.push(fail(&name, what, repro.clone()));
        }
    };
    check(verify_norm_equivalence(m), "norm equivalence");
    check(find_k_contraction(m, tol).is_ok(), "contraction index");
    check(degree_ratio_bound_check(m, tol).map(|r| r.holds).unwrap_or(false), "degree ratio bound");
    check(sigma_bound(m, tol), "elementary symmetric bound");
    if m.dim() <= 3 {
        let same = m.homogenize().map(|h| BigInt::from(h.degree()) == m.degree_d()).unwrap_or(false);
        check(same, "degree formula vs homogenization");
    }
    (checks, failures)
}

/// |σ_j| ≤ C(N,j)·λ^j with the tolerance band.
fn sigma_bound(m: &MonomialMap, tol: f64) -> bool {
    let Ok(s) = spectral_radius(m, tol) else {
        return false;
    };
    let n = m.dim();
    let lam = s.value * (1.0 + 2.0 * tol);
    let cp = m.char_poly();
    let mut binom = 1.0f64;
    for (j, c) in cp.iter().enumerate() {
        if j > 0 {
            binom = binom * (n + 1 - j) as f64 / j as f64;
        }
        let mag = num_traits::ToPrimitive::to_f64(&num_traits::Signed::abs(c)).unwrap();
        if mag > binom * lam.powi(j as i32) * (1.0 + 1e-12) {
            return false;
        }
    }
    true
}

fn monomial_suite(count: usize, seed: u64, tol: f64) -> SuiteReport {
    let mut results: Vec<CaseResult> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            monomial_case(&random_matrix(&mut rng), tol)
        })
        .collect();
    let unimodular: Vec<CaseResult> = (0..count / 2)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(!seed ^ (i as u64).wrapping_mul(0xc2b2_ae3d_27d4_eb4f));
            let m = random_unimodular(&mut rng);
            let ok = inverse_degree_bound_check(&m).unwrap_or(false);
            let name = matrix_json(&m);
            let f = (!ok).then(|| fail(&name, "inverse degree bound", format!("dyndeg monomial --matrix '{name}'")));
            (1, f.into_iter().collect())
        })
        .collect();
    results.extend(unimodular);
    collect(Suite::Monomial, seed, results)
}

/// Closed form against the iterated map for (a,b) ∈ {-2..2}², a ≠ 0.
fn gfam_suite(seed: u64) -> SuiteReport {
    let mut pairs = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            if a != 0 {
                pairs.push((a, b));
            }
        }
    }
    let results: Vec<CaseResult> = pairs.par_iter().map(|&(a, b)| gfam_case(a, b)).collect();
    collect(Suite::Gfam, seed, results)
}

pub(crate) fn gfam_case(a: i64, b: i64) -> CaseResult {
    let name = format!("({a},{b})");
    let p = GFamilyParams::ints(a, b).unwrap();
    let prefix = p.exceptional_set(12);
    let mut failures = Vec::new();
    let mut checks = 0;
    // recurrence and closed form
    checks += 1;
    let closed: Vec<Rational> = (0..=12u32)
        .map(|n| {
            let an = num_traits::pow(rat(a), n as usize);
            let geo: Rational = (0..n).map(|j| num_traits::pow(rat(a), j as usize)).fold(Rational::zero(), |s, x| s + x);
            an + rat(b) * geo
        })
        .collect();
    if closed != prefix {
        failures.push(fail(&name, "closed form", format!("dyndeg gfam -a {a} -b {b} --nmax 12")));
    }
    // orbit of [1,0,1] under g_t for a t outside the prefix
    checks += 1;
    let t = Rational::new(BigInt::from(997), BigInt::from(991));
    let g = p.build_g(&t).unwrap();
    let mut pt = crate::ratmap::ProjectivePoint::new(vec![rat(1), rat(0), rat(1)]).unwrap();
    let mut ok = !prefix.contains(&t);
    for e in &prefix {
        let expected = crate::ratmap::ProjectivePoint::new(vec![e.clone(), rat(0), rat(1)]).unwrap();
        if pt != expected {
            ok = false;
            break;
        }
        match g.apply(&pt).ok().and_then(|o| o.point().cloned()) {
            Some(q) => pt = q,
            None => {
                ok = false;
                break;
            }
        }
    }
    if !ok {
        failures.push(fail(&name, "orbit vs closed form", format!("dyndeg gfam -a {a} -b {b} -t 997/991 --nmax 12")));
    }
    // the marked orbit reaches t = e_n exactly at step n
    for (n, e) in prefix.iter().enumerate().take(6) {
        checks += 1;
        let first = prefix.iter().position(|x| x == e).unwrap();
        if p.orbit_marked_point(e, 12).ok() != Some(MarkedOrbit::HitsIndeterminacyAt(first)) {
            failures.push(fail(&name, &format!("marked orbit at e_{n}"), format!("dyndeg gfam -a {a} -b {b} -t {e}")));
        }
    }
    (checks, failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(run_suite(Suite::Gfam, 0, 1, 1e-9).passed());
        let r = run_suite(Suite::Monomial, 40, 7, 1e-9);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.instances, 60);
        assert!(fabc_case(1, -1, 1).1.is_empty());
        assert!(fabc_case(1, 1, 1).1.is_empty());
    }

    #[test]
    fn deterministic() {
        let a = run_suite(Suite::Monomial, 30, 99, 1e-9).to_json();
        let b = run_suite(Suite::Monomial, 30, 99, 1e-9).to_json();
        assert_eq!(a, b);
    }
}
