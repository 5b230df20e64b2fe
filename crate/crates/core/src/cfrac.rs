//! Negative continued fractions `[a1, ..., an]^- = a1 - 1/(a2 - 1/(... - 1/an))`.
//!
//! Values live in the extended rationals `Q ∪ {1/0}` so that expansions with
//! zero or negative terms evaluate without special cases.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `Q ∪ {1/0}` in lowest terms with non-negative denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtendedRational {
    #[serde(with = "crate::serde_int")]
    num: BigInt,
    #[serde(with = "crate::serde_int")]
    den: BigInt,
}

impl ExtendedRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (mut num, mut den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(Error::Undefined);
        }
        if den.is_zero() {
            return Ok(Self::infinity());
        }
        let g = num.gcd(&den);
        num /= &g;
        den /= &g;
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(Self { num, den })
    }

    pub fn infinity() -> Self {
        Self { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self { num: n.into(), den: BigInt::one() }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn recip(&self) -> Self {
        if self.num.is_zero() {
            return Self::infinity();
        }
        if self.is_infinite() {
            return Self::integer(0);
        }
        // num and den are already coprime; only the sign needs fixing
        let (num, den) =
            if self.num.is_negative() { (-&self.den, -&self.num) } else { (self.den.clone(), self.num.clone()) };
        Self { num, den }
    }

    /// `t - 1/self`, the single step of a negative continued fraction.
    pub fn sub_recip_from(&self, t: &BigInt) -> Self {
        let r = self.recip();
        if r.is_infinite() {
            return Self::infinity();
        }
        // (t*den - num)/den is already in lowest terms
        Self { num: t * &r.den - &r.num, den: r.den }
    }

    /// Exact sum, `None` when both operands are infinite.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => None,
            (true, false) | (false, true) => Some(Self::infinity()),
            _ => Self::new(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den).ok(),
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { what: "rational", token: s.to_string() };
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Self::new(n, d).map_err(|_| bad())
            }
            None => Ok(Self::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

/// A finite sequence of integer terms `(a1, ..., an)` read as `[a1, ..., an]^-`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CfExpansion {
    #[serde(with = "crate::serde_int::vec")]
    terms: Vec<BigInt>,
}

impl CfExpansion {
    pub fn new(terms: Vec<BigInt>) -> Self {
        Self { terms }
    }

    pub fn from_i64s(terms: &[i64]) -> Self {
        Self { terms: terms.iter().map(|&t| BigInt::from(t)).collect() }
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All terms are at least 2.
    pub fn is_standard(&self) -> bool {
        let two = BigInt::from(2);
        self.terms.iter().all(|t| *t >= two)
    }

    pub fn reversed(&self) -> Self {
        Self { terms: self.terms.iter().rev().cloned().collect() }
    }

    /// Terms as machine integers, failing if any term does not fit.
    pub fn to_i64s(&self) -> Result<Vec<i64>> {
        self.terms.iter().map(|t| i64::try_from(t).map_err(|_| Error::Overflow(t.to_string()))).collect()
    }
}

impl From<Vec<i64>> for CfExpansion {
    fn from(v: Vec<i64>) -> Self {
        Self::from_i64s(&v)
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for CfExpansion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.trim().is_empty() {
            return Ok(Self::default());
        }
        s.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse { what: "integer", token: tok.trim().to_string() })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

/// Forward and backward convergents of an expansion.
///
/// Both tables are stored for indices `-1..=n`; `forward(i)` is `(P_i, Q_i)`
/// with `P_i/Q_i = [a1, ..., ai]^-`. The backward table follows the same
/// recurrence run from the right-hand end, so `backward(i) = (p_i, q_i)` with
/// `p_i/q_i` the value of the last `i` terms and `q_i = p_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    forward: Vec<(BigInt, BigInt)>,
    backward: Vec<(BigInt, BigInt)>,
}

impl ConvergentTable {
    pub fn len(&self) -> usize {
        self.forward.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(P_i, Q_i)` for `-1 <= i <= n`.
    pub fn forward(&self, i: isize) -> (&BigInt, &BigInt) {
        let (p, q) = &self.forward[(i + 1) as usize];
        (p, q)
    }

    /// `(p_i, q_i)` for `-1 <= i <= n`.
    pub fn backward(&self, i: isize) -> (&BigInt, &BigInt) {
        let (p, q) = &self.backward[(i + 1) as usize];
        (p, q)
    }

    pub fn numerators(&self) -> impl Iterator<Item = &BigInt> {
        self.forward.iter().map(|(p, _)| p)
    }
}

/// Computes both convergent tables with the three-term recurrences.
pub fn convergents(expansion: &CfExpansion) -> ConvergentTable {
    let a = expansion.terms();
    let n = a.len();

    let mut forward = Vec::with_capacity(n + 2);
    forward.push((BigInt::zero(), -BigInt::one()));
    forward.push((BigInt::one(), BigInt::zero()));
    for (i, ai) in a.iter().enumerate() {
        let (p1, q1) = &forward[i + 1];
        let (p2, q2) = &forward[i];
        let next = (ai * p1 - p2, ai * q1 - q2);
        forward.push(next);
    }

    // backward term i is the i-th term counted from the right
    let term = |i: usize| &a[n - i];
    let mut backward = Vec::with_capacity(n + 2);
    backward.push((BigInt::zero(), -BigInt::one()));
    backward.push((BigInt::one(), BigInt::zero()));
    for i in 1..=n {
        let (p1, q1) = &backward[i];
        let (p2, q2) = &backward[i - 1];
        let p = term(i) * p1 - p2;
        // q_1 = -q_{-1}; the coefficient of q_0 = 0 is never read
        let q = if i == 1 { -q2 } else { term(i - 1) * q1 - q2 };
        backward.push((p, q));
    }

    ConvergentTable { forward, backward }
}

/// Evaluates `[a1, ..., an]^-`; the empty expansion is `1/0`.
pub fn eval_cf(expansion: &CfExpansion) -> Result<ExtendedRational> {
    let table = convergents(expansion);
    let (p, q) = table.forward(expansion.len() as isize);
    ExtendedRational::new(p.clone(), q.clone())
}

/// The unique expansion with all terms `>= 2` of a rational `p/q > 1`.
pub fn expand_cf(value: &ExtendedRational) -> Result<CfExpansion> {
    if value.is_infinite() || value.numer() <= value.denom() {
        return Err(Error::domain(format!("expand_cf needs p > q >= 1, got {value}")));
    }
    let (mut p, mut q) = (value.numer().clone(), value.denom().clone());
    let mut terms = Vec::new();
    loop {
        let a = p.div_ceil(&q);
        let rem = &a * &q - &p;
        terms.push(a);
        if rem.is_zero() {
            break;
        }
        p = std::mem::replace(&mut q, rem);
    }
    Ok(CfExpansion::new(terms))
}

/// Closed form `c P_k^2 / (c P_k Q_k + 1)` of `[b1, ..., bk, c, -bk, ..., -b1]^-`.
pub fn palindrome_value(b: &[BigInt], c: &BigInt) -> Result<ExtendedRational> {
    let table = convergents(&CfExpansion::new(b.to_vec()));
    let (p, q) = table.forward(b.len() as isize);
    ExtendedRational::new(c * p * p, c * p * q + BigInt::one())
}

/// The expansion `[b1, ..., bk, c, -bk, ..., -b1]`.
pub fn palindrome(b: &[BigInt], c: &BigInt) -> CfExpansion {
    let mut terms = b.to_vec();
    terms.push(c.clone());
    terms.extend(b.iter().rev().map(|x| -x));
    CfExpansion::new(terms)
}

/// For standard `b` with value `p/q`, the standard `c` with value `r/s`
/// such that `q/p + s/r = 1`.
pub fn complementary_string(b: &CfExpansion) -> Result<CfExpansion> {
    if b.is_empty() || !b.is_standard() {
        return Err(Error::domain(format!("complementary string needs a non-empty standard expansion, got [{b}]")));
    }
    let v = eval_cf(b)?;
    let (p, q) = (v.numer(), v.denom());
    expand_cf(&ExtendedRational::new(p.clone(), p - q)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(t: &[i64]) -> CfExpansion {
        CfExpansion::from_i64s(t)
    }

    fn q(n: i64, d: i64) -> ExtendedRational {
        ExtendedRational::new(n, d).unwrap()
    }

    #[test]
    fn extended_rational_normalizes() {
        assert_eq!(q(-6, -4), q(3, 2));
        assert_eq!(q(4, -6).to_string(), "-2/3");
        assert_eq!(q(-5, 0), ExtendedRational::infinity());
        assert_eq!(ExtendedRational::new(0, 0), Err(Error::Undefined));
        assert_eq!("12/5".parse::<ExtendedRational>().unwrap(), q(12, 5));
        assert_eq!("7".parse::<ExtendedRational>().unwrap().to_string(), "7");
        assert!("x/2".parse::<ExtendedRational>().is_err());
    }

    #[test]
    fn step_through_infinity() {
        let inf = ExtendedRational::infinity();
        assert_eq!(inf.sub_recip_from(&BigInt::from(5)), q(5, 1));
        assert_eq!(q(0, 1).sub_recip_from(&BigInt::from(5)), inf);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_cf(&cf(&[2, 2, 1, -2, -2])).unwrap(), q(9, 7));
        assert_eq!(eval_cf(&cf(&[0])).unwrap(), q(0, 1));
        assert_eq!(eval_cf(&cf(&[-1, 2, 2, 2, 2, -1])).unwrap(), q(-16, 9));
        assert_eq!(eval_cf(&cf(&[])).unwrap(), ExtendedRational::infinity());
        assert_eq!(eval_cf(&cf(&[0, 0])).unwrap(), ExtendedRational::infinity());
    }

    #[test]
    fn convergent_examples() {
        let t = convergents(&cf(&[2, 2]));
        assert_eq!(t.forward(1), (&BigInt::from(2), &BigInt::from(1)));
        assert_eq!(t.forward(2), (&BigInt::from(3), &BigInt::from(2)));

        let t = convergents(&cf(&[3, 2, 3]));
        assert_eq!(t.forward(3), (&BigInt::from(12), &BigInt::from(5)));
        assert_eq!(eval_cf(&cf(&[3, 2, 3])).unwrap(), q(12, 5));
        // backward: suffixes [3]=3, [2,3]=5/3, [3,2,3]=12/5
        assert_eq!(t.backward(1), (&BigInt::from(3), &BigInt::from(1)));
        assert_eq!(t.backward(2), (&BigInt::from(5), &BigInt::from(3)));
        assert_eq!(t.backward(3), (&BigInt::from(12), &BigInt::from(5)));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand_cf(&q(3, 1)).unwrap(), cf(&[3]));
        assert_eq!(expand_cf(&q(9, 7)).unwrap(), cf(&[2, 2, 2, 3]));
        assert_eq!(expand_cf(&q(49, 31)).unwrap(), cf(&[2, 3, 2, 3, 3]));
        assert!(expand_cf(&q(1, 1)).is_err());
        assert!(expand_cf(&q(1, 2)).is_err());
        assert!(expand_cf(&ExtendedRational::infinity()).is_err());
    }

    #[test]
    fn palindrome_examples() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(palindrome_value(&b(&[2, 2]), &BigInt::from(1)).unwrap(), q(9, 7));
        assert_eq!(palindrome_value(&b(&[]), &BigInt::from(4)).unwrap(), q(4, 1));
        assert_eq!(palindrome_value(&b(&[2]), &BigInt::from(4)).unwrap(), q(16, 9));
        assert_eq!(eval_cf(&palindrome(&b(&[2]), &BigInt::from(4))).unwrap(), q(16, 9));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complementary_string(&cf(&[2])).unwrap(), cf(&[2]));
        assert_eq!(complementary_string(&cf(&[2, 2, 2])).unwrap(), cf(&[4]));
        assert_eq!(complementary_string(&cf(&[3, 2])).unwrap(), cf(&[2, 3]));
        assert!(complementary_string(&cf(&[3, 1])).is_err());
        assert!(complementary_string(&cf(&[])).is_err());
    }

    #[test]
    fn expansion_text_round_trip() {
        let e: CfExpansion = "-1, 2,2,2,2,-1".parse().unwrap();
        assert_eq!(e.to_string(), "-1,2,2,2,2,-1");
        assert_eq!("[2,3]".parse::<CfExpansion>().unwrap(), cf(&[2, 3]));
        let err = "2,x,3".parse::<CfExpansion>().unwrap_err();
        assert_eq!(err, Error::Parse { what: "integer", token: "x".into() });
    }
}
