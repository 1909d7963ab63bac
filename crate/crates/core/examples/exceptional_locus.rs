//! Parameters t where f_{1,1,t} becomes unstable, with their heights.

use dyndeg::fabc::{family_exceptional_locus, fmt_t, FamilyParams};

fn main() {
    let n_max: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    let fam = FamilyParams::parse("1", "1", "T").unwrap();
    let locus = family_exceptional_locus(&fam, n_max).unwrap();
    for e in &locus.entries {
        let h = e.heights.first().copied().unwrap_or(0.0);
        println!("n = {:>2}  {:<40} height {:.6}", e.n, fmt_t(&e.poly), h);
    }
    println!("{} points up to order {n_max}", locus.num_points());
    if let Some(p) = &locus.excluded_poly {
        println!("excluded (c^2 + 4ab): {}", fmt_t(p));
    }
}
