//! The family g_{a,b,T}: exceptional set, marked orbit and degree drop.

use dyndeg::gfam::{negative_answer_report, GFamilyParams};
use dyndeg::ratmap::ResourceCaps;
use dyndeg::{rat, Rational};

fn main() {
    for (a, b) in [(1, 1), (1, 2), (2, 0)] {
        let g = GFamilyParams::ints(a, b).unwrap();
        let e: Vec<String> = g.exceptional_set(9).iter().map(Rational::to_string).collect();
        println!("E(g_{{{a},{b}}}) starts {}", e.join(", "));
    }
    let g = GFamilyParams::ints(1, 1).unwrap();
    for t in [2, 3] {
        let t = rat(t);
        println!(
            "t = {t}: orbit {:?}, degrees {:?}",
            g.orbit_marked_point(&t, 10).unwrap(),
            g.degree_drop(&t, 5, &ResourceCaps::default()).unwrap()
        );
    }
    println!("{}", serde_json::to_string_pretty(&negative_answer_report(10)).unwrap());
}
