use dyndeg::cyclo::{cos_min_poly, cyclotomic, is_root_of_unity};
use dyndeg::exactalg::{Monomial, Rationals};
use dyndeg::fabc::{family_exceptional_locus, FabcParams, FamilyParams, Preimage};
use dyndeg::monomial::{spectral_radius, MonomialMap};
use dyndeg::ratmap::{ApplyOutcome, ProjectiveMap, ProjectivePoint};
use dyndeg::{rat, QPoly, Rational};
use num_complex::Complex64;
use proptest::prelude::*;

/// Monomials of total degree `d` in 3 variables.
fn monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            out.push(Monomial(vec![i, j, d - i - j]));
        }
    }
    out
}

fn homogeneous(d: u32, coeffs: &[i64]) -> QPoly {
    let terms = monomials(d).into_iter().zip(coeffs.iter()).map(|(m, &c)| (m, rat(c)));
    QPoly::from_terms(3, Rationals, terms)
}

/// A random plane map of degree 1 or 2 with small integer coefficients.
fn plane_map() -> impl Strategy<Value = ProjectiveMap> {
    (1u32..=2)
        .prop_flat_map(|d| {
            let k = monomials(d).len();
            (Just(d), prop::collection::vec(prop::collection::vec(-2i64..=2, k), 3))
        })
        .prop_filter_map("all coordinates vanish", |(d, cs)| {
            let coords: Vec<QPoly> = cs.iter().map(|c| homogeneous(d, c)).collect();
            ProjectiveMap::new(coords).ok()
        })
}

fn point() -> impl Strategy<Value = ProjectivePoint<Rational>> {
    prop::collection::vec(-5i64..=5, 3)
        .prop_filter_map("zero point", |v| ProjectivePoint::new(v.into_iter().map(rat).collect()).ok())
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-6i64..=-1, 1i64..=6]
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (nonzero(), 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_degree_is_submultiplicative(f in plane_map(), g in plane_map()) {
        let h = f.compose(&g).unwrap();
        prop_assert!(h.degree() <= f.degree() * g.degree());
    }

    #[test]
    fn normalization_is_idempotent(f in plane_map(), k in nonzero()) {
        let again = ProjectiveMap::new(f.coords().to_vec()).unwrap();
        prop_assert_eq!(&again, &f);
        let scaled: Vec<QPoly> = f.coords().iter().map(|p| p.scale(&rat(k))).collect();
        prop_assert_eq!(ProjectiveMap::new(scaled).unwrap(), f);
    }

    #[test]
    fn apply_commutes_with_compose(f in plane_map(), g in plane_map(), x in point()) {
        let h = f.compose(&g).unwrap();
        if let ApplyOutcome::Point(gx) = g.apply(&x).unwrap() {
            if let (ApplyOutcome::Point(fgx), ApplyOutcome::Point(hx)) = (f.apply(&gx).unwrap(), h.apply(&x).unwrap()) {
                prop_assert_eq!(fgx, hx);
            }
        }
    }

    #[test]
    fn inverse_composes_to_identity(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational()) {
        let p = FabcParams::new(a, b, c);
        let f = p.build_map().unwrap();
        let g = p.inverse_map().unwrap();
        prop_assert_eq!(g.compose(&f).unwrap(), ProjectiveMap::identity_q(2));
        prop_assert_eq!(f.compose(&g).unwrap(), ProjectiveMap::identity_q(2));
    }

    #[test]
    fn preimage_round_trip(a in nonzero(), b in nonzero(), c in nonzero(), x in point()) {
        let p = FabcParams::ints(a, b, c);
        if let ApplyOutcome::Point(y) = p.apply(&x).unwrap() {
            match p.preimage(&y).unwrap() {
                Preimage::Point(q) => prop_assert_eq!(q, x),
                Preimage::LineMinusPoints { line, removed } => {
                    prop_assert!(line.eval(x.coords()).unwrap() == rat(0));
                    prop_assert!(!removed.contains(&x));
                }
                Preimage::Empty => prop_assert!(false, "image point has empty fiber"),
            }
        }
    }

    #[test]
    fn spectral_radius_of_powers(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 2), k in 1u64..=5) {
        let r: Vec<&[i64]> = rows.iter().map(|v| v.as_slice()).collect();
        if let Ok(m) = MonomialMap::from_i64(&r) {
            let l = spectral_radius(&m, 1e-10).unwrap().value;
            let lk = spectral_radius(&m.pow(k), 1e-10).unwrap().value;
            prop_assert!((lk - l.powi(k as i32)).abs() <= 1e-8 * lk.max(1.0));
        }
    }
}

fn desc(p: &QPoly) -> Vec<f64> {
    let d = p.total_degree().unwrap() as usize;
    let mut out = vec![0.0; d + 1];
    for (m, c) in p.terms() {
        out[d - m.0[0] as usize] = num_traits::ToPrimitive::to_f64(c).unwrap();
    }
    out
}

fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

#[test]
fn cyclotomic_products() {
    // x^n - 1 = prod over d | n of Phi_d, checked by evaluation at many points
    for n in 1..=100u64 {
        for z in [Complex64::new(0.3, 0.7), Complex64::new(-1.1, 0.2), Complex64::new(0.9, -0.4)] {
            let mut prod = Complex64::new(1.0, 0.0);
            for d in (1..=n).filter(|d| n % d == 0) {
                prod *= horner(&desc(&cyclotomic(d).unwrap()), z);
            }
            let lhs = z.powu(n as u32) - 1.0;
            assert!((prod - lhs).norm() <= 1e-9 * lhs.norm().max(1.0), "n = {n}");
        }
    }
}

#[test]
fn cyclotomic_order_detection() {
    for n in 1..=60 {
        assert_eq!(is_root_of_unity(&cyclotomic(n).unwrap()).unwrap(), Some(n));
    }
}

#[test]
fn cos_min_poly_roots() {
    for n in 1..=40u64 {
        let c = desc(&cos_min_poly(n).unwrap());
        for k in (1..=n).filter(|k| num_integer::gcd(*k, n) == 1) {
            let x = 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos();
            let scale: f64 = c.iter().map(|a| a.abs()).sum::<f64>() * 4f64.powi(c.len() as i32);
            assert!(horner(&c, Complex64::new(x, 0.0)).norm() <= 1e-12 * scale, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn locus_roots_kill_the_recurrence() {
    // at a root t of p_n, V_{n-1}(1, 1, t) vanishes
    let fam = FamilyParams::parse("1", "1", "T").unwrap();
    let locus = family_exceptional_locus(&fam, 20).unwrap();
    for e in &locus.entries {
        for &t in &e.roots {
            let mut v = vec![Complex64::new(1.0, 0.0), t];
            for k in 1..e.n as usize {
                let next = t * v[k] + v[k - 1];
                v.push(next);
            }
            let scale = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
            assert!(v[e.n as usize - 1].norm() <= 1e-8 * scale, "n = {}, t = {t}", e.n);
        }
    }
}
