//! Parsing, arithmetic and gcd of exact multivariate polynomials.

use dyndeg::exactalg::{parse_poly, resultant};

fn main() {
    let p = |s: &str| parse_poly(s, 3).expect("valid polynomial");
    let a = p("X^2 - Y^2");
    let b = p("X^2 + 2*X*Y + Y^2");
    println!("a = {a}");
    println!("b = {b}");
    println!("a*b = {}", &a * &b);
    println!("gcd(a, b) = {}", a.gcd(&b).unwrap());

    let f = p("X^2 + Y^2 - Z^2");
    let g = p("X - Y");
    // eliminate X
    println!("Res_X(f, g) = {}", resultant(&f, &g, 0));
}
