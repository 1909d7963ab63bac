//! Cyclotomic polynomials, minimal polynomials of 2cos(2π/n), and the
//! rational values 2cos can take.

use dyndeg::fabc::fmt_t;
use dyndeg::cyclo::{cos_min_poly, cyclotomic, is_root_of_unity, orders_with_rational_cos, rational_two_cos_values};

fn main() {
    for n in 1..=12 {
        let phi = cyclotomic(n).unwrap();
        println!("Phi_{n:<2} = {:<44} Psi_{n:<2} = {}", fmt_t(&phi), fmt_t(&cos_min_poly(n).unwrap()));
        assert_eq!(is_root_of_unity(&phi).unwrap(), Some(n));
    }
    let vals: Vec<String> = rational_two_cos_values().iter().map(|v| v.to_string()).collect();
    println!("rational values of 2cos(2pi q): {}", vals.join(", "));
    println!("orders: {:?}", orders_with_rational_cos());
}
