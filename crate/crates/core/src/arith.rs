//! Modular helpers over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Least non-negative residue of `a` modulo `|m|`; `a` itself when `m = 0`.
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        return a.clone();
    }
    a.mod_floor(&m.abs())
}

/// Inverse of `a` modulo `|m|`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let m = m.abs();
    if m.is_zero() {
        return None;
    }
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let ext = a.mod_floor(&m).extended_gcd(&m);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(&m))
}

/// `a ≡ b (mod |m|)`, with equality when `m = 0`.
pub fn congruent(a: &BigInt, b: &BigInt, m: &BigInt) -> bool {
    modulo(&(a - b), m).is_zero()
}

/// Exact integer square root of a non-negative perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Positive divisors of `n != 0`, in increasing order.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(&b(30), &b(49)), Some(b(18)));
        assert_eq!(mod_inverse(&b(-30), &b(49)), Some(b(31)));
        assert_eq!(mod_inverse(&b(2), &b(4)), None);
        assert_eq!(mod_inverse(&b(5), &b(1)), Some(b(0)));
    }

    #[test]
    fn residues_and_roots() {
        assert_eq!(modulo(&b(-9), &b(16)), b(7));
        assert_eq!(modulo(&b(-9), &b(-16)), b(7));
        assert!(congruent(&b(31), &b(-18), &b(49)));
        assert_eq!(exact_sqrt(&b(49)), Some(b(7)));
        assert_eq!(exact_sqrt(&b(50)), None);
        assert_eq!(divisors(&b(-12)), [1, 2, 3, 4, 6, 12].map(b).to_vec());
        assert_eq!(divisors(&b(1)), vec![b(1)]);
    }
}
