//! Stability of f_{a,b,c} = [XY : XY + aZ² : bYZ + cZ²] from the
//! parameters alone, checked against the iterates.

use dyndeg::fabc::{classify, FabcParams};
use dyndeg::ratmap::{degree_sequence, ResourceCaps};

fn main() {
    for (a, b, c) in [(1, 1, 1), (1, -1, 1), (1, -1, 2), (2, -1, 2), (1, 3, -3)] {
        let p = FabcParams::ints(a, b, c);
        let verdict = classify(&p);
        let f = p.build_map().unwrap();
        let seq = degree_sequence(&f, 6, &ResourceCaps::default()).unwrap();
        let vn: Vec<String> = p.vn_sequence(8).unwrap().iter().map(|v| v.to_string()).collect();
        println!("({a},{b},{c}): {}  degrees {:?}  V = [{}]", verdict.to_json(), seq.degrees, vn.join(", "));
    }
}
