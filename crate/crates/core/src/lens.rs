//! Oriented lens spaces `L(p, q)`, taken as `-p/q` surgery on the unknot.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{congruent, mod_inverse, modulo};
use crate::cfrac::{expand_cf, CfExpansion, ExtendedRational};
use crate::error::{Error, Result};

/// Canonical oriented lens space.
///
/// `L(0,1)` is `S^1 x S^2` and `L(1,0)` is `S^3`; for `p >= 2` the residue
/// `q` is the least positive one and coprime to `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensSpace {
    #[serde(with = "crate::serde_int")]
    p: BigInt,
    #[serde(with = "crate::serde_int")]
    q: BigInt,
}

/// Residue transforms `q -> q, -q, q^-1, -q^-1` relating homeomorphic lens spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidueTransform {
    Oriented,
    Reversed,
    Inverse,
    ReversedInverse,
}

impl ResidueTransform {
    pub const ALL: [ResidueTransform; 4] = [Self::Oriented, Self::Reversed, Self::Inverse, Self::ReversedInverse];

    /// Orientation-preserving transforms.
    pub fn preserves_orientation(self) -> bool {
        matches!(self, Self::Oriented | Self::Inverse)
    }

    /// Applies the transform to a residue mod `p`; `None` if `q` is not a unit.
    pub fn apply(self, q: &BigInt, p: &BigInt) -> Option<BigInt> {
        let r = match self {
            Self::Oriented => q.clone(),
            Self::Reversed => -q,
            Self::Inverse => mod_inverse(q, p)?,
            Self::ReversedInverse => -mod_inverse(q, p)?,
        };
        Some(modulo(&r, p))
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Oriented => "oriented",
            Self::Reversed => "reversed",
            Self::Inverse => "inverse",
            Self::ReversedInverse => "reversed-inverse",
        }
    }
}

impl fmt::Display for ResidueTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl LensSpace {
    /// Normalizes `(p, q)`; a negative `p` is absorbed as `L(-p,q) = L(p,-q)`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (mut p, mut q) = (p.into(), q.into());
        let invalid = |p: &BigInt, q: &BigInt| Error::InvalidPair { p: p.to_string(), q: q.to_string() };
        if p.is_zero() && q.is_zero() {
            return Err(invalid(&p, &q));
        }
        if p.is_negative() {
            p = -p;
            q = -q;
        }
        if p.is_zero() {
            if !q.abs().is_one() {
                return Err(invalid(&p, &q));
            }
            return Ok(Self { p, q: BigInt::one() });
        }
        if p.is_one() {
            return Ok(Self { p, q: BigInt::zero() });
        }
        if !p.gcd(&q).is_one() {
            return Err(invalid(&p, &q));
        }
        let q = modulo(&q, &p);
        Ok(Self { p, q })
    }

    pub fn from_i64(p: i64, q: i64) -> Result<Self> {
        Self::new(p, q)
    }

    pub fn s1_x_s2() -> Self {
        Self { p: BigInt::zero(), q: BigInt::one() }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `-L(p,q) = L(p, p-q)`.
    pub fn mirror(&self) -> Self {
        if self.p <= BigInt::one() {
            return self.clone();
        }
        Self { q: &self.p - &self.q, p: self.p.clone() }
    }

    /// The lens space with residue `transform(q)`.
    pub fn transformed(&self, transform: ResidueTransform) -> Self {
        if self.p <= BigInt::one() {
            return self.clone();
        }
        let q = transform.apply(&self.q, &self.p).expect("canonical residue is a unit");
        Self { p: self.p.clone(), q }
    }

    /// Standard expansion of `p/q` (all terms `>= 2`), the plumbing string.
    pub fn to_standard_string(&self) -> Result<CfExpansion> {
        if self.p <= BigInt::one() {
            return Err(Error::domain(format!("{self} has no standard string")));
        }
        expand_cf(&ExtendedRational::new(self.p.clone(), self.q.clone())?)
    }
}

/// Decides `a ≅ b`, returning the residue transform that carries `a.q` to `b.q`.
///
/// With `oriented` only `q` and `q^-1` are allowed; otherwise `-q` and `-q^-1`
/// are also tried.
pub fn is_homeomorphic(a: &LensSpace, b: &LensSpace, oriented: bool) -> Option<ResidueTransform> {
    if a.p != b.p {
        return None;
    }
    ResidueTransform::ALL.into_iter().filter(|t| !oriented || t.preserves_orientation()).find(|t| {
        match t.apply(&a.q, &a.p) {
            Some(r) => congruent(&r, &b.q, &a.p),
            None => false,
        }
    })
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

impl FromStr for LensSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "lens space", token: s.to_string() };
        let t = s.trim();
        let (p, q) = if let Some(inner) = t.strip_prefix("L(").and_then(|r| r.strip_suffix(')')) {
            inner.split_once(',').ok_or_else(bad)?
        } else {
            t.split_once('/').ok_or_else(bad)?
        };
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        Self::new(p, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::eval_cf;

    fn l(p: i64, q: i64) -> LensSpace {
        LensSpace::from_i64(p, q).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(l(16, -9), l(16, 7));
        assert_eq!(l(16, 7).q(), &BigInt::from(7));
        assert_eq!(l(-16, 9), l(16, 7));
        assert_eq!(l(0, -1), LensSpace::s1_x_s2());
        assert_eq!(l(1, 5).q(), &BigInt::zero());
        assert!(LensSpace::from_i64(0, 0).is_err());
        assert!(LensSpace::from_i64(12, 4).is_err());
        assert!(LensSpace::from_i64(0, 2).is_err());
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(l(16, 9).mirror(), l(16, 7));
        assert_eq!(LensSpace::s1_x_s2().mirror(), LensSpace::s1_x_s2());
        assert_eq!(l(49, 31).mirror(), l(49, 18));
    }

    #[test]
    fn homeomorphism_examples() {
        assert_eq!(is_homeomorphic(&l(49, 31), &l(49, 30), false), Some(ResidueTransform::ReversedInverse));
        assert_eq!(is_homeomorphic(&l(49, 31), &l(49, 30), true), None);
        assert_eq!(is_homeomorphic(&l(4, 1), &l(4, 3), true), None);
        assert_eq!(is_homeomorphic(&l(4, 1), &l(4, 3), false), Some(ResidueTransform::Reversed));
        assert_eq!(is_homeomorphic(&l(7, 3), &l(7, 3), true), Some(ResidueTransform::Oriented));
        assert_eq!(is_homeomorphic(&l(7, 3), &l(7, 5), true), Some(ResidueTransform::Inverse));
        assert_eq!(is_homeomorphic(&l(7, 3), &l(8, 3), false), None);
    }

    #[test]
    fn standard_strings() {
        assert_eq!(l(3, 2).to_standard_string().unwrap(), CfExpansion::from_i64s(&[2, 2]));
        assert_eq!(l(49, 31).to_standard_string().unwrap(), CfExpansion::from_i64s(&[2, 3, 2, 3, 3]));
        assert_eq!(l(4, 3).to_standard_string().unwrap(), CfExpansion::from_i64s(&[2, 2, 2]));
        assert_eq!(l(5, 1).to_standard_string().unwrap(), CfExpansion::from_i64s(&[5]));
        assert!(l(1, 0).to_standard_string().is_err());
        assert!(LensSpace::s1_x_s2().to_standard_string().is_err());
    }

    #[test]
    fn equivalence_relation_and_round_trip() {
        for p in 2..=60i64 {
            let spaces: Vec<_> = (1..p).filter_map(|q| LensSpace::from_i64(p, q).ok()).collect();
            for a in &spaces {
                let s = a.to_standard_string().unwrap();
                let v = eval_cf(&s).unwrap();
                assert_eq!((v.numer(), v.denom()), (a.p(), a.q()));
                assert_eq!(a.mirror().mirror(), *a);
                assert!(is_homeomorphic(a, &a.mirror(), false).is_some());
                for oriented in [true, false] {
                    assert!(is_homeomorphic(a, a, oriented).is_some());
                    for b in &spaces {
                        let ab = is_homeomorphic(a, b, oriented).is_some();
                        assert_eq!(ab, is_homeomorphic(b, a, oriented).is_some());
                        if !ab {
                            continue;
                        }
                        for c in &spaces {
                            if is_homeomorphic(b, c, oriented).is_some() {
                                assert!(is_homeomorphic(a, c, oriented).is_some());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("L(16,-9)".parse::<LensSpace>().unwrap(), l(16, 7));
        assert_eq!("49/31".parse::<LensSpace>().unwrap().to_string(), "L(49,31)");
        assert!("L(4,2)".parse::<LensSpace>().is_err());
        assert!("L 4 1".parse::<LensSpace>().is_err());
    }
}
