//! Degree sequence of a plane map given as a JSON document.

use dyndeg::ratmap::{degree_sequence, dyndeg_estimate, ProjectiveMap, ResourceCaps};

fn main() {
    let doc = std::env::args()
        .nth(1)
        .unwrap_or_else(|| r#"{"N":2,"coords":["Y*Z","X*Y","Z^2"]}"#.to_string());
    let f = ProjectiveMap::from_json(&doc).expect("valid map document");
    println!("f = [{}]", f.coord_strings().join(" : "));

    let seq = degree_sequence(&f, 8, &ResourceCaps::default()).unwrap();
    println!("degrees: {:?}", seq.degrees);
    match seq.drop_at() {
        Some(n) => println!("first drop at n = {n}"),
        None => println!("no drop through n = {}", seq.degrees.len()),
    }
    let est = dyndeg_estimate(&seq.degrees).unwrap();
    println!("dynamical degree ~ {:.6} (root), {:.6} (ratio)", est.root_estimate, est.ratio_estimate);
}
