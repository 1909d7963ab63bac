//! A map stable over Q whose reductions mod p all drop degree.

use dyndeg::fabc::{classify, classify_mod_p, FabcParams};
use num_bigint::BigInt;

fn main() {
    let (a, b, c) = (BigInt::from(-2), BigInt::from(1), BigInt::from(3));
    println!("over Q: {}", classify(&FabcParams::ints(-2, 1, 3)).to_json());
    for p in [2u64, 3, 5, 7, 11, 13, 31, 97] {
        let v = classify_mod_p(&a, &b, &c, p, None).unwrap();
        println!("p = {p:>3}: {}", v.to_json(p));
    }
}
