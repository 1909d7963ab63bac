use num_bigint::BigInt;

use crate::cyclo::two_cos_order;
use crate::exactalg::{Coeff, PrimeField, PrimeModulus, Rational};

use super::{FabcError, FabcParams};

/// V_0..=V_{n_max} from V_0 = 1, V_1 = c, V_{n+1} = c·V_n + ab·V_{n-1}.
/// These are the last coordinates of f^n([0,0,1]) = [0, U_n, V_n].
pub fn vn_sequence<C: Coeff>(a: &C, b: &C, c: &C, n_max: usize) -> Result<Vec<C>, FabcError> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(FabcError::Degenerate("abc = 0 in the coefficient field".into()));
    }
    let ab = a.mul(b);
    let mut v = vec![C::one_in(&a.domain()), c.clone()];
    while v.len() <= n_max {
        let k = v.len();
        v.push(c.mul(&v[k - 1]).add(&ab.mul(&v[k - 2])));
    }
    v.truncate(n_max + 1);
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable,
    /// ζ has order `zeta_order` and V_{vanishing_index} = 0.
    Unstable { zeta_order: u64, vanishing_index: usize },
    Degenerate { reason: String },
}

impl StabilityVerdict {
    pub fn is_unstable(&self) -> bool {
        matches!(self, StabilityVerdict::Unstable { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            StabilityVerdict::Stable => serde_json::json!({"status": "stable"}),
            StabilityVerdict::Unstable { zeta_order, vanishing_index } => serde_json::json!({
                "status": "unstable", "zeta_order": zeta_order, "vanishing_index": vanishing_index
            }),
            StabilityVerdict::Degenerate { reason } => serde_json::json!({"status": "degenerate", "reason": reason}),
        }
    }
}

/// Unstable exactly when ζ + 1/ζ = -2 - c²/(ab) for a root of unity ζ ≠ ±1.
/// For rational parameters that value must be rational, leaving
/// c²/(ab) ∈ {-1, -2, -3} (orders 3, 4, 6). The case c² + 4ab = 0 (ζ = 1)
/// is stable since V_n = (n+1)(c/2)^n never vanishes.
pub fn classify(p: &FabcParams) -> StabilityVerdict {
    if let Some(reason) = p.degeneracy() {
        return StabilityVerdict::Degenerate { reason };
    }
    let kappa = &(&p.c * &p.c) / &(&p.a * &p.b);
    verdict_for_ratio(&kappa)
}

/// Verdict from κ = c²/(ab) alone.
pub(crate) fn verdict_for_ratio(kappa: &Rational) -> StabilityVerdict {
    let w = -(kappa + crate::rat(2));
    match two_cos_order(&w) {
        Some(n) if n >= 3 => StabilityVerdict::Unstable { zeta_order: n, vanishing_index: (n - 1) as usize },
        _ => StabilityVerdict::Stable,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModPVerdict {
    /// Least m ≥ 1 with V_m ≡ 0 mod p.
    ExceptionalAt(u64),
    /// No vanishing among the first `searched` terms; `periodic` is set when
    /// the search stopped because the sequence returned to its start, which
    /// rules out vanishing altogether.
    NotFoundWithinCap { searched: u64, periodic: bool },
    DegenerateModP,
}

impl ModPVerdict {
    pub fn to_json(&self, p: u64) -> serde_json::Value {
        match self {
            ModPVerdict::ExceptionalAt(m) => serde_json::json!({"p": p, "m": m}),
            ModPVerdict::NotFoundWithinCap { searched, periodic } => {
                serde_json::json!({"p": p, "m": null, "searched": searched, "periodic": periodic})
            }
            ModPVerdict::DegenerateModP => serde_json::json!({"p": p, "m": null, "degenerate": true}),
        }
    }
}

/// Least m ≥ 1 with V_m ≡ 0 (mod p), searching at most `cap` terms
/// (default p²).
pub fn classify_mod_p(a: &BigInt, b: &BigInt, c: &BigInt, p: u64, cap: Option<u64>) -> Result<ModPVerdict, FabcError> {
    let m = PrimeModulus::new(p).map_err(|_| FabcError::NotPrime(p))?;
    let [a, b, c] = [a, b, c].map(|v| PrimeField::from_bigint(&m, v));
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Ok(ModPVerdict::DegenerateModP);
    }
    let cap = cap.unwrap_or_else(|| p.saturating_mul(p));
    let ab = a.mul(&b);
    let one = PrimeField::one_in(&m);
    let (mut prev, mut cur) = (one, c);
    for n in 1..=cap {
        if cur.is_zero() {
            return Ok(ModPVerdict::ExceptionalAt(n));
        }
        let next = c.mul(&cur).add(&ab.mul(&prev));
        prev = cur;
        cur = next;
        // (V_n, V_{n+1}) back at (V_0, V_1): the sequence is periodic
        if prev == one && cur == c {
            return Ok(ModPVerdict::NotFoundWithinCap { searched: n, periodic: true });
        }
    }
    Ok(ModPVerdict::NotFoundWithinCap { searched: cap, periodic: false })
}

impl FabcParams {
    /// Exact V_0..=V_{n_max} over Q.
    pub fn vn_sequence(&self, n_max: usize) -> Result<Vec<Rational>, FabcError> {
        vn_sequence(&self.a, &self.b, &self.c, n_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(FabcParams::ints(-2, 1, 3).vn_sequence(5).unwrap(), ints(&[1, 3, 7, 15, 31, 63]));
        assert_eq!(FabcParams::ints(1, -1, 1).vn_sequence(2).unwrap(), ints(&[1, 1, 0]));
        assert_eq!(FabcParams::ints(1, -1, 2).vn_sequence(4).unwrap(), ints(&[1, 2, 3, 4, 5]));
        assert!(FabcParams::ints(1, 0, 2).vn_sequence(4).is_err());
    }

    #[test]
    fn classifier_examples() {
        assert_eq!(classify(&FabcParams::ints(1, 1, 1)), StabilityVerdict::Stable);
        assert_eq!(
            classify(&FabcParams::ints(1, -1, 1)),
            StabilityVerdict::Unstable { zeta_order: 3, vanishing_index: 2 }
        );
        assert_eq!(classify(&FabcParams::ints(1, -1, 2)), StabilityVerdict::Stable);
        assert_eq!(
            classify(&FabcParams::ints(1, -2, 2)),
            StabilityVerdict::Unstable { zeta_order: 4, vanishing_index: 3 }
        );
        assert!(matches!(classify(&FabcParams::ints(0, 1, 1)), StabilityVerdict::Degenerate { .. }));
        let j = classify(&FabcParams::ints(1, -1, 1)).to_json();
        assert_eq!(j, serde_json::json!({"status":"unstable","zeta_order":3,"vanishing_index":2}));
    }

    #[test]
    fn mod_p_examples() {
        let (a, b, c) = (BigInt::from(-2), BigInt::from(1), BigInt::from(3));
        assert_eq!(classify_mod_p(&a, &b, &c, 7, None).unwrap(), ModPVerdict::ExceptionalAt(2));
        assert_eq!(classify_mod_p(&a, &b, &c, 5, None).unwrap(), ModPVerdict::ExceptionalAt(3));
        assert_eq!(classify_mod_p(&a, &b, &c, 3, None).unwrap(), ModPVerdict::DegenerateModP);
        assert!(classify_mod_p(&a, &b, &c, 9, None).is_err());
        // (1,1,1) mod 2: V = 1,1,0
        let one = BigInt::from(1);
        assert_eq!(classify_mod_p(&one, &one, &one, 2, None).unwrap(), ModPVerdict::ExceptionalAt(2));
        assert_eq!(ModPVerdict::ExceptionalAt(2).to_json(7), serde_json::json!({"p":7,"m":2}));
    }
}
