//! Degrees and spectral radius of a monomial map.

use dyndeg::monomial::{find_m_epsilon, spectral_radius, MonomialAnalysis, MonomialMap};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "[[2,1],[1,1]]".into());
    let a = MonomialMap::from_json(&text).expect("square integer matrix with det != 0");
    println!("A = {a}");
    println!("homogenized: [{}]", a.homogenize().unwrap().coord_strings().join(" : "));
    let lam = spectral_radius(&a, 1e-9).unwrap();
    println!("lambda = {:.9}", lam.value);
    for k in [1u64, 2, 4, 8, 12] {
        let d = a.pow(k).degree_d();
        let root = (d.to_string().parse::<f64>().unwrap()).powf(1.0 / k as f64);
        println!("D(A^{k:<2}) = {d:<8}  D^(1/k) = {root:.6}");
    }
    let report = MonomialAnalysis::run(&a, 1e-9).unwrap();
    println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
    println!("m for eps = 1: {:?}", find_m_epsilon(&a, 1.0, 1e-9, 64).unwrap());
}
