//! First homology of surgery on a linear chain link, dual-knot classes of the
//! doubly primitive families, and an S¹×S² check through the Smith normal form.
//!
//! A presentation is given by its framings `(-a_1, ..., -a_n)`; signs are
//! arbitrary. With `P_0 = 1`, `P_1 = a_1`, `P_i = a_i P_{i-1} - P_{i-2}`, the
//! meridians satisfy `μ_i = P_{i-1} μ_1` and `P_n μ_1 = 0`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{congruent, mod_inverse, modulo};
use crate::error::{Error, Result};
use crate::keystone::SuggestedKnot;
use crate::lens::{is_homeomorphic, LensSpace};
use crate::snf::smith_diagonal;

/// `P_0, ..., P_n` for the framings `coefficients`.
pub fn chain_numerators(coefficients: &[i64]) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    let mut prev = BigInt::zero();
    for &f in coefficients {
        let cur = p.last().expect("nonempty");
        let next = BigInt::from(-f) * cur - &prev;
        prev = cur.clone();
        p.push(next);
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeridianClasses {
    /// `|P_n|`.
    #[serde(with = "crate::serde_int")]
    pub order: BigInt,
    /// Class of `μ_i` in the `μ_1` basis, i.e. `P_{i-1} mod p`, for `i = 1..n`.
    #[serde(with = "crate::serde_int::vec")]
    pub classes: Vec<BigInt>,
    /// `P_{n-1} mod p`, the class of `μ_n`.
    #[serde(with = "crate::serde_int")]
    pub q_inverse: BigInt,
    /// `μ_1 = factor · μ_n`, the inverse of `q_inverse`.
    #[serde(with = "crate::serde_int")]
    pub mu1_in_mun: BigInt,
    /// The lens space `L(P_n, Q_n)` presented by the chain.
    pub lens: LensSpace,
}

pub fn meridian_classes(coefficients: &[i64]) -> Result<MeridianClasses> {
    if coefficients.is_empty() {
        return Err(Error::domain("empty chain"));
    }
    let nums = chain_numerators(coefficients);
    let n = coefficients.len();
    let pn = &nums[n];
    if pn.is_zero() {
        return Err(Error::Degenerate);
    }
    let p = pn.abs();
    let classes: Vec<BigInt> = nums[..n].iter().map(|x| modulo(x, &p)).collect();
    let q_inverse = modulo(&nums[n - 1], &p);
    let mu1_in_mun =
        if p.is_one() { BigInt::zero() } else { mod_inverse(&q_inverse, &p).expect("P_{n-1} is a unit mod P_n") };
    let lens = LensSpace::new(pn.clone(), chain_q(coefficients))?;
    Ok(MeridianClasses { order: p, classes, q_inverse, mu1_in_mun, lens })
}

/// `Q_n` for `Q_0 = 0`, `Q_1 = 1`, the same recurrence as `P`.
fn chain_q(coefficients: &[i64]) -> BigInt {
    let (mut prev, mut cur) = (-BigInt::one(), BigInt::zero());
    for &f in coefficients {
        let next = BigInt::from(-f) * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// A knot written as `Σ c_i μ_i` in a chain presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainKnotExpression {
    pub coefficients: Vec<i64>,
    pub combination: Vec<i64>,
}

impl ChainKnotExpression {
    /// The combination `Σ sign · μ_index` with 1-based indices.
    pub fn from_terms(coefficients: Vec<i64>, terms: &[(usize, i64)]) -> Result<Self> {
        let mut combination = vec![0; coefficients.len()];
        for &(i, c) in terms {
            let slot = i
                .checked_sub(1)
                .and_then(|i| combination.get_mut(i))
                .ok_or_else(|| Error::domain(format!("meridian index {i} out of range")))?;
            *slot += c;
        }
        Ok(Self { coefficients, combination })
    }
}

/// Class of a knot in the `μ_1` and `μ_n` bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotClass {
    #[serde(with = "crate::serde_int")]
    pub order: BigInt,
    #[serde(with = "crate::serde_int")]
    pub first: BigInt,
    #[serde(with = "crate::serde_int")]
    pub last: BigInt,
}

pub fn knot_class(expr: &ChainKnotExpression) -> Result<KnotClass> {
    if expr.combination.len() != expr.coefficients.len() {
        return Err(Error::DimensionMismatch { expected: expr.coefficients.len(), found: expr.combination.len() });
    }
    let mc = meridian_classes(&expr.coefficients)?;
    let sum: BigInt = expr.combination.iter().zip(&mc.classes).map(|(&c, m)| BigInt::from(c) * m).sum();
    let first = modulo(&sum, &mc.order);
    let last = modulo(&(&first * &mc.mu1_in_mun), &mc.order);
    Ok(KnotClass { order: mc.order, first, last })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum DualFamily {
    Bgi,
    Gofk,
    Bgii,
    Bgiii,
    Bgv,
    Spor,
    Bgiv,
    #[serde(rename = "BGIV'")]
    BgivPrime,
}

impl DualFamily {
    pub const ALL: [DualFamily; 8] =
        [Self::Bgi, Self::Gofk, Self::Bgii, Self::Bgiii, Self::Bgv, Self::Spor, Self::Bgiv, Self::BgivPrime];

    pub fn name(self) -> &'static str {
        match self {
            Self::Bgi => "BGI",
            Self::Gofk => "GOFK",
            Self::Bgii => "BGII",
            Self::Bgiii => "BGIII",
            Self::Bgv => "BGV",
            Self::Spor => "SPOR",
            Self::Bgiv => "BGIV",
            Self::BgivPrime => "BGIV'",
        }
    }

    /// Which lens-space family the knot lives in, numbered 1 to 4.
    pub fn lens_family(self) -> u8 {
        match self {
            Self::Bgi | Self::Gofk => 1,
            Self::Bgii => 2,
            Self::Bgiii | Self::Bgv | Self::Spor => 3,
            Self::Bgiv | Self::BgivPrime => 4,
        }
    }
}

impl fmt::Display for DualFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DualFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse { what: "knot family", token: s.to_string() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyParams {
    /// The `b` sequence of families (1) and (2).
    Sequence { b: Vec<i64> },
    /// `s, t` of families (3) and (4).
    Pair { s: i64, t: i64 },
}

/// One dual-knot computation compared with its closed form.
///
/// `claimed` and `computed` are `[class in the μ_1 basis, class in the μ_n basis]`;
/// they match when each computed class is `±` the claimed one and `p = m²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem16Row {
    pub family: DualFamily,
    pub params: FamilyParams,
    #[serde(with = "crate::serde_int")]
    pub p: BigInt,
    #[serde(with = "crate::serde_int")]
    pub q: BigInt,
    #[serde(with = "crate::serde_int")]
    pub m: BigInt,
    #[serde(with = "crate::serde_int::vec")]
    pub claimed: Vec<BigInt>,
    #[serde(with = "crate::serde_int::vec")]
    pub computed: Vec<BigInt>,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Forward convergent `(P_k, Q_k)` of the terms `b`.
fn cf_pair(b: &[i64]) -> (BigInt, BigInt) {
    let framings: Vec<i64> = b.iter().map(|x| -x).collect();
    let p = chain_numerators(&framings).pop().expect("nonempty");
    (p, chain_q(&framings))
}

/// Chain framings, knot as `(meridian, coefficient)` terms, `m`, and the claimed classes.
type Instance = (Vec<i64>, Vec<(usize, i64)>, BigInt, [BigInt; 2]);

/// Builds the chain string and knot of `family`, computes the knot's class,
/// and compares it with the closed form in both bases.
pub fn theorem16_instance(family: DualFamily, params: &FamilyParams) -> Result<Theorem16Row> {
    let int = BigInt::from;
    let (coefficients, terms, m, claimed): Instance = match (family, params) {
        (DualFamily::Bgi | DualFamily::Gofk, FamilyParams::Sequence { b }) => {
            if b.is_empty() || b.len() % 2 != 0 || b.contains(&0) {
                return Err(Error::domain("family (1) needs a nonempty even-length b sequence of nonzero terms"));
            }
            let mut s: Vec<i64> = b.iter().map(|x| -x).collect();
            s.push(-1);
            s.extend(b.iter().rev());
            let (m, d) = cf_pair(b);
            let len = b.len();
            if family == DualFamily::Bgi {
                let c = -&m;
                (s, vec![(len + 1, -1)], m, [c.clone(), c])
            } else {
                let c = -(&d * &m);
                (s, vec![(1, 1), (2 * len + 1, -1)], m, [c.clone(), c])
            }
        }
        (DualFamily::Bgii, FamilyParams::Sequence { b }) => {
            if b.is_empty() || b.contains(&0) {
                return Err(Error::domain("family (2) needs a nonempty b sequence of nonzero terms"));
            }
            let mut s: Vec<i64> = b.iter().map(|x| -x).collect();
            s.push(-4);
            s.extend(b.iter().rev());
            let k = b.len();
            let m: BigInt = cf_pair(b).0 * 2;
            (s, vec![(k, 1), (k + 1, -2), (k + 2, 1)], m.clone(), [m.clone(), m])
        }
        (DualFamily::Bgiii | DualFamily::Bgv | DualFamily::Spor, &FamilyParams::Pair { s, t }) => {
            if family == DualFamily::Spor && t != 1 {
                return Err(Error::domain("SPOR requires t = 1"));
            }
            let string = vec![t + 1, -s - 2, -2, -t - 2, -2, s + 1];
            let m = int(4 + 3 * t + 2 * s + 2 * s * t);
            let d = int(-(3 + 2 * s));
            match family {
                DualFamily::Bgiii => (string, vec![(1, 1), (4, 1)], m.clone(), [-&m, &d * &m]),
                DualFamily::Bgv => (string, vec![(3, 1), (5, -1)], m.clone(), [int(1 + t) * &m, -&m]),
                _ => (string, vec![(2, 1), (6, -1)], m.clone(), [&m * 4, &m * -2]),
            }
        }
        (DualFamily::Bgiv | DualFamily::BgivPrime, &FamilyParams::Pair { s, t }) => {
            let string = vec![t + 1, -2, -s - 2, -t - 2, -2, s + 1];
            let m = int(4 + 3 * s + 3 * t + 2 * s * t);
            let d = int(-(3 + 2 * s));
            if family == DualFamily::Bgiv {
                (string, vec![(1, 1), (4, 1)], m.clone(), [-&m, &d * &m])
            } else {
                (string, vec![(3, 1), (6, 1)], m.clone(), [-int(3 + 2 * t) * &m, -&m])
            }
        }
        _ => return Err(Error::domain(format!("{family} takes the other parameter shape"))),
    };
    let expr = ChainKnotExpression::from_terms(coefficients, &terms)?;
    let class = knot_class(&expr)?;
    let p = class.order.clone();
    let claimed: Vec<BigInt> = claimed.iter().map(|c| modulo(c, &p)).collect();
    let computed = vec![class.first, class.last];
    let matches =
        &m * &m == p && claimed.iter().zip(&computed).all(|(c, k)| congruent(c, k, &p) || congruent(&-c, k, &p));
    let q = meridian_classes(&expr.coefficients)?.lens.q().clone();
    Ok(Theorem16Row { family, params: params.clone(), p, q, m, claimed, computed, matches })
}

/// Homological S¹×S² test for `framing` surgery on a knot linking the chain
/// components `ε_j` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct S1S2Verdict {
    pub pass: bool,
    #[serde(with = "crate::serde_int::vec")]
    pub diagonal: Vec<BigInt>,
}

impl S1S2Verdict {
    /// Order of the torsion part of the cokernel, if it is finite.
    pub fn cokernel_order(&self) -> Option<BigInt> {
        if self.diagonal.iter().any(Zero::is_zero) {
            None
        } else {
            Some(self.diagonal.iter().product())
        }
    }
}

/// The `(n+1)×(n+1)` linking matrix: chain, then the extra knot.
#[allow(clippy::needless_range_loop)]
pub fn extended_matrix(coefficients: &[i64], epsilon: &[i64], framing: i64) -> Result<Vec<Vec<i64>>> {
    let n = coefficients.len();
    if epsilon.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: epsilon.len() });
    }
    let mut m = vec![vec![0; n + 1]; n + 1];
    for i in 0..n {
        m[i][i] = coefficients[i];
        if i + 1 < n {
            m[i][i + 1] = 1;
            m[i + 1][i] = 1;
        }
        m[i][n] = epsilon[i];
        m[n][i] = epsilon[i];
    }
    m[n][n] = framing;
    Ok(m)
}

/// Passes iff the surgered manifold has first homology `Z`, i.e. the Smith
/// normal form is `(1, ..., 1, 0)`. This is a necessary condition only.
pub fn verify_s1s2(coefficients: &[i64], epsilon: &[i64], framing: i64) -> Result<S1S2Verdict> {
    let m = extended_matrix(coefficients, epsilon, framing)?;
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let diagonal = smith_diagonal(&big);
    let (last, rest) = diagonal.split_last().expect("matrix is nonempty");
    let pass = last.is_zero() && rest.iter().all(One::is_one);
    Ok(S1S2Verdict { pass, diagonal })
}

/// Slides the knot over chain component `j` (0-based) with sign `sigma`.
pub fn handle_slide(knot: &SuggestedKnot, j: usize, sigma: i64) -> Result<SuggestedKnot> {
    let n = knot.coefficients.len();
    if j >= n || sigma.abs() != 1 {
        return Err(Error::domain(format!("cannot slide over component {j} with sign {sigma}")));
    }
    let m = extended_matrix(&knot.coefficients, &knot.epsilon, knot.framing)?;
    let mut out = knot.clone();
    for (e, x) in out.epsilon.iter_mut().zip(&m[j]) {
        *e += sigma * x;
    }
    out.framing += m[j][j] + 2 * sigma * knot.epsilon[j];
    Ok(out)
}

/// The simple knot `K(p, q, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleKnotClass {
    #[serde(with = "crate::serde_int")]
    pub p: BigInt,
    #[serde(with = "crate::serde_int")]
    pub q: BigInt,
    #[serde(with = "crate::serde_int")]
    pub k: BigInt,
}

impl SimpleKnotClass {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, k: impl Into<BigInt>) -> Result<Self> {
        let lens = LensSpace::new(p, q)?;
        let k = if lens.p().is_zero() { k.into() } else { modulo(&k.into(), lens.p()) };
        Ok(Self { p: lens.p().clone(), q: lens.q().clone(), k })
    }

    pub fn lens(&self) -> LensSpace {
        LensSpace::new(self.p.clone(), self.q.clone()).expect("normalized on construction")
    }
}

/// Parses `K(p,q,k)` or `p,q,k`.
impl FromStr for SimpleKnotClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix("K(").and_then(|r| r.strip_suffix(')')).unwrap_or(t);
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let [p, q, k] = parts[..] else {
            return Err(Error::Parse { what: "simple knot", token: s.to_string() });
        };
        let int = |x: &str| x.parse::<BigInt>().map_err(|_| Error::Parse { what: "integer", token: x.to_string() });
        Self::new(int(p)?, int(q)?, int(k)?)
    }
}

impl fmt::Display for SimpleKnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({},{},{})", self.p, self.q, self.k)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryOptions {
    /// Also allow the orientation-reversing self-map of `L(p,q)` that exists
    /// when `q² ≡ -1 mod p`; it multiplies classes by `q`.
    pub reversing_square_root: bool,
}

/// Whether two simple-knot classes are related by homeomorphisms of the
/// ambient lens spaces.
///
/// The maps are negation `k -> -k`, the swap of the two solid tori
/// `(q, k) -> (q^-1, q^-1 k)`, and the mirror `(q, k) -> (-q, k)`. Without the
/// option the composite must preserve orientation when the two lens spaces are
/// orientation-preservingly homeomorphic and reverse it otherwise; so inside a
/// single `L(p,q)` the class can only be multiplied by `q` when `q² ≡ 1`.
pub fn simple_knot_equivalent(a: &SimpleKnotClass, b: &SimpleKnotClass, opts: SymmetryOptions) -> bool {
    if a.p != b.p {
        return false;
    }
    let p = &a.p;
    if p <= &BigInt::one() {
        return p.is_one() || a.k == b.k || a.k == -&b.k;
    }
    let (la, lb) = (a.lens(), b.lens());
    let Some(_) = is_homeomorphic(&la, &lb, false) else {
        return false;
    };
    let wanted_parity: Option<bool> =
        if opts.reversing_square_root { None } else { Some(is_homeomorphic(&la, &lb, true).is_none()) };
    let start = (a.q.clone(), a.k.clone(), false);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((q, k, odd)) = queue.pop_front() {
        if congruent(&q, &b.q, p) && congruent(&k, &b.k, p) && wanted_parity.is_none_or(|w| w == odd) {
            return true;
        }
        let qi = mod_inverse(&q, p).expect("unit");
        let next = [
            (q.clone(), modulo(&-&k, p), odd),
            (qi.clone(), modulo(&(&qi * &k), p), odd),
            (modulo(&-&q, p), k.clone(), !odd),
        ];
        for s in next {
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    false
}

/// `n`-surgery on the `(p, q)` torus knot with slope `npq + 1`: `L(np², npq+1)`.
pub fn torus_knot_surgery(p: i64, q: i64, n: i64) -> Result<LensSpace> {
    if p < 0 || n == 0 || p.gcd(&q) != 1 {
        return Err(Error::domain(format!("invalid torus knot parameters ({p}, {q}, {n})")));
    }
    let (p, q, n) = (BigInt::from(p), BigInt::from(q), BigInt::from(n));
    LensSpace::new(&n * &p * &p, &n * &p * &q + 1)
}

/// The cable surgery `L(4p², 4pq ± 1)`.
pub fn cable_surgery(p: i64, q: i64, sign: i64) -> Result<LensSpace> {
    if p < 0 || sign.abs() != 1 || p.gcd(&q) != 1 {
        return Err(Error::domain(format!("invalid cable parameters ({p}, {q}, {sign})")));
    }
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    LensSpace::new(&p * &p * 4, &p * &q * 4 + sign)
}
