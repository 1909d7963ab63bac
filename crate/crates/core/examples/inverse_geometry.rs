//! Inverse, indeterminacy, critical locus and fibers of f_{a,b,c}.

use dyndeg::exactalg::format_poly;
use dyndeg::fabc::{symbolic_critical_locus, FabcParams, Preimage, SYMBOLIC_NAMES};
use dyndeg::ratmap::ProjectivePoint;
use dyndeg::{rat, ratio};

fn main() {
    let p = FabcParams::new(rat(2), ratio(-1, 3), rat(5));
    let f = p.build_map().unwrap();
    let g = p.inverse_map().unwrap();
    println!("f      = [{}]", f.coord_strings().join(" : "));
    println!("f^-1   = [{}]", g.coord_strings().join(" : "));
    println!("f^-1 f = [{}]", g.compose(&f).unwrap().coord_strings().join(" : "));
    let pts: Vec<String> = p.indeterminacy_points().unwrap().iter().map(|q| q.to_string()).collect();
    println!("I(f) = {{{}}}", pts.join(", "));
    println!("Jacobian: {}", format_poly(&symbolic_critical_locus().unwrap(), &SYMBOLIC_NAMES));

    let x = ProjectivePoint::new(vec![rat(3), rat(1), rat(2)]).unwrap();
    let y = f.apply(&x).unwrap();
    let y = y.point().unwrap();
    println!("f({x}) = {y}");
    match p.preimage(y).unwrap() {
        Preimage::Point(q) => println!("preimage: {q}"),
        Preimage::LineMinusPoints { line, .. } => println!("preimage: line {line} = 0"),
        Preimage::Empty => println!("preimage: empty"),
    }
    let off = ProjectivePoint::new(vec![rat(0), rat(0), rat(1)]).unwrap();
    println!("preimage of {off}: {:?}", p.preimage(&off).unwrap());
}
