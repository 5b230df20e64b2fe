//! The four lens-space families `L(m^2, md+1)`, `L(m^2, d(m-1))` and the seven
//! coefficient-string types that describe their plumbings.
//!
//! Strings are stored as chain-link framings, i.e. the negatives `-a_i` of the
//! continued-fraction terms, so every entry is `<= -2` for a standard string.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{congruent, divisors, exact_sqrt};
use crate::cfrac::{complementary_string, CfExpansion};
use crate::lens::{LensSpace, ResidueTransform};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `L(m^2, md+1)`, `gcd(m,d) = 1`.
    F1,
    /// `L(m^2, md+1)`, `gcd(m,d) = 2`.
    F2,
    /// `L(m^2, d(m-1))`, `d` odd and `d | m-1`.
    F3,
    /// `L(m^2, d(m-1))`, `d | 2m+1`.
    F4,
}

/// Membership certificate: `transform(q)` satisfies the family congruence for `(m, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyWitness {
    pub family: Family,
    #[serde(with = "crate::serde_int")]
    pub m: BigInt,
    #[serde(with = "crate::serde_int")]
    pub d: BigInt,
    pub mode: ResidueTransform,
}

/// Every way `lens` belongs to one of the four families.
///
/// Both signs of `m` are searched. For the first two families `d` runs over a
/// full period mod `m` (both conditions only see `d mod m`); for the last two
/// `d` ranges over the signed divisors named by the divisibility condition.
pub fn classify_family(lens: &LensSpace) -> Vec<FamilyWitness> {
    let p = lens.p();
    let Some(root) = exact_sqrt(p) else {
        return Vec::new();
    };
    let ms: Vec<BigInt> = if root.is_zero() { vec![root] } else { vec![root.clone(), -root] };

    let mut out = BTreeSet::new();
    for mode in ResidueTransform::ALL {
        let target = lens.transformed(mode);
        let target = target.q();
        for m in &ms {
            let fits = |r: BigInt| congruent(&r, target, p);
            let mut push = |family, d: BigInt| {
                out.insert(FamilyWitness { family, m: m.clone(), d, mode });
            };

            // md + 1
            let period: Vec<BigInt> =
                if m.is_zero() { [-2, -1, 1, 2].map(BigInt::from).to_vec() } else { num_iter(m.abs()) };
            for d in period {
                let g = m.gcd(&d);
                let r: BigInt = m * &d + 1;
                if g.is_one() && fits(r.clone()) {
                    push(Family::F1, d.clone());
                }
                if g == BigInt::from(2) && fits(r) {
                    push(Family::F2, d);
                }
            }

            // d(m - 1)
            let m1: BigInt = m - 1;
            let f3: Vec<BigInt> = if m1.is_zero() { vec![BigInt::one()] } else { signed(divisors(&m1)) };
            for d in f3.into_iter().filter(|d| d.is_odd()) {
                if fits(&d * &m1) {
                    push(Family::F3, d);
                }
            }
            for d in signed(divisors(&(m * 2 + 1))) {
                if fits(&d * &m1) {
                    push(Family::F4, d);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn num_iter(n: BigInt) -> Vec<BigInt> {
    let mut v = Vec::new();
    let mut d = BigInt::zero();
    while d < n {
        v.push(d.clone());
        d += 1;
    }
    v
}

fn signed(ds: Vec<BigInt>) -> Vec<BigInt> {
    ds.iter().cloned().chain(ds.iter().map(|d| -d)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LiscaType {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
}

impl LiscaType {
    pub const ALL: [LiscaType; 7] = [Self::T1, Self::T2, Self::T3, Self::T4, Self::T5, Self::T6, Self::T7];

    /// Types generated from a seed by expansions (a) and (b).
    pub fn is_expanded(self) -> bool {
        matches!(self, Self::T1 | Self::T4)
    }

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.get(usize::from(n).checked_sub(1)?).copied()
    }
}

impl fmt::Display for LiscaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.number())
    }
}

/// The two string expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Expansion {
    /// `(-a1, ..., -an) -> (-2, -a1, ..., -an - 1)`
    A,
    /// `(-a1, ..., -an) -> (-a1 - 1, ..., -an, -2)`
    B,
}

pub fn expansion_a(s: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(s.len() + 1);
    out.push(-2);
    out.extend_from_slice(s);
    if let Some(last) = out.last_mut() {
        *last -= 1;
    }
    out
}

pub fn expansion_b(s: &[i64]) -> Vec<i64> {
    let mut out = s.to_vec();
    if let Some(first) = out.first_mut() {
        *first -= 1;
    }
    out.push(-2);
    out
}

pub fn apply_expansion(op: Expansion, s: &[i64]) -> Vec<i64> {
    match op {
        Expansion::A => expansion_a(s),
        Expansion::B => expansion_b(s),
    }
}

pub const SEED_T1: [i64; 3] = [-2, -2, -2];
pub const SEED_T4: [i64; 4] = [-3, -2, -2, -3];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StringParams {
    /// Parameters of the patterned types T2, T3, T5, T6, T7.
    Pattern { s: u32, t: u32 },
    /// T1/T4: the `b` and `c` sequences and the expansions applied to the seed.
    Expanded { b: Vec<i64>, c: Vec<i64>, history: Vec<Expansion> },
}

/// A coefficient string matched to a type.
///
/// `reversed` means `coefficients` equals the type's pattern read backwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LiscaString {
    pub coefficients: Vec<i64>,
    #[serde(rename = "type")]
    pub kind: LiscaType,
    pub params: StringParams,
    pub reversed: bool,
}

impl LiscaString {
    /// The string in the orientation the type's pattern is written in.
    pub fn pattern_coefficients(&self) -> Vec<i64> {
        if self.reversed {
            self.coefficients.iter().rev().copied().collect()
        } else {
            self.coefficients.clone()
        }
    }
}

fn twos(k: u32) -> impl Iterator<Item = i64> {
    std::iter::repeat_n(-2, k as usize)
}

/// The string of a patterned type at `(s, t)`; `None` for T1/T4.
pub fn pattern_string(kind: LiscaType, s: u32, t: u32) -> Option<Vec<i64>> {
    let (si, ti) = (i64::from(s), i64::from(t));
    let mut v = Vec::new();
    match kind {
        LiscaType::T2 => {
            v.extend(twos(t));
            v.extend([-3, -2 - si, -2 - ti, -3]);
            v.extend(twos(s));
        }
        LiscaType::T3 => {
            v.extend(twos(t));
            v.extend([-3 - si, -2, -2 - ti, -3]);
            v.extend(twos(s));
        }
        LiscaType::T5 => {
            v.extend([-ti - 2, -si - 2, -3]);
            v.extend(twos(t));
            v.push(-4);
            v.extend(twos(s));
        }
        LiscaType::T6 => {
            v.extend([-ti - 2, -2, -3 - si]);
            v.extend(twos(t));
            v.push(-4);
            v.extend(twos(s));
        }
        LiscaType::T7 => {
            v.extend([-ti - 3, -2, -3 - si, -3]);
            v.extend(twos(t));
            v.push(-3);
            v.extend(twos(s));
        }
        LiscaType::T1 | LiscaType::T4 => return None,
    }
    Some(v)
}

/// Length of a patterned string minus `s + t`.
fn pattern_base_len(kind: LiscaType) -> usize {
    if kind == LiscaType::T7 {
        5
    } else {
        4
    }
}

fn match_pattern(kind: LiscaType, coeffs: &[i64]) -> Vec<StringParams> {
    let base = pattern_base_len(kind);
    if coeffs.len() < base {
        return Vec::new();
    }
    let total = (coeffs.len() - base) as u32;
    (0..=total)
        .filter(|&t| pattern_string(kind, total - t, t).as_deref() == Some(coeffs))
        .map(|t| StringParams::Pattern { s: total - t, t })
        .collect()
}

/// Undoes expansions until no inverse applies; returns the residue and the
/// expansions in the order they were applied to it.
pub fn reduce_expansions(coeffs: &[i64]) -> (Vec<i64>, Vec<Expansion>) {
    let mut cur = coeffs.to_vec();
    let mut undone = Vec::new();
    while cur.len() > 3 {
        let (first, last) = (cur[0], cur[cur.len() - 1]);
        if first == -2 && last <= -3 {
            cur.remove(0);
            *cur.last_mut().unwrap() += 1;
            undone.push(Expansion::A);
        } else if last == -2 && first <= -3 {
            cur.pop();
            cur[0] += 1;
            undone.push(Expansion::B);
        } else {
            break;
        }
    }
    undone.reverse();
    (cur, undone)
}

/// Position of the central `-2` (T1) or the first of the central pair (T4)
/// after replaying `history` on the seed.
fn central_index(kind: LiscaType, history: &[Expansion]) -> usize {
    let _ = kind;
    1 + history.iter().filter(|&&op| op == Expansion::A).count()
}

/// Splits an expanded string into its `b` and `c` sequences and checks that
/// `q/p + s/r = 1` for `p/q = [b]^-` and `r/s = [c]^-`.
fn split_expanded(kind: LiscaType, coeffs: &[i64], center: usize) -> Option<(Vec<i64>, Vec<i64>)> {
    let width = if kind == LiscaType::T4 { 2 } else { 1 };
    if center == 0 || center + width >= coeffs.len() {
        return None;
    }
    if coeffs[center..center + width].iter().any(|&x| x != -2) {
        return None;
    }
    let mut b: Vec<i64> = coeffs[..center].iter().rev().map(|x| -x).collect();
    let mut c: Vec<i64> = coeffs[center + width..].iter().map(|x| -x).collect();
    if kind == LiscaType::T4 {
        b[0] -= 1;
        c[0] -= 1;
    }
    if b.iter().chain(&c).any(|&x| x < 2) {
        return None;
    }
    let comp = complementary_string(&CfExpansion::from_i64s(&b)).ok()?;
    (comp == CfExpansion::from_i64s(&c)).then_some((b, c))
}

fn match_expanded(kind: LiscaType, coeffs: &[i64]) -> Option<StringParams> {
    let seed: &[i64] = if kind == LiscaType::T1 { &SEED_T1 } else { &SEED_T4 };
    let (residue, history) = reduce_expansions(coeffs);
    if residue != seed {
        return None;
    }
    let center = central_index(kind, &history);
    let (b, c) = split_expanded(kind, coeffs, center)?;
    Some(StringParams::Expanded { b, c, history })
}

/// Every `(type, params, reversed)` under which the string matches.
pub fn recognize_string_type(coeffs: &[i64]) -> Vec<LiscaString> {
    let mut out = BTreeSet::new();
    let backwards: Vec<i64> = coeffs.iter().rev().copied().collect();
    let orientations: &[(bool, &[i64])] =
        if backwards == coeffs { &[(false, coeffs)] } else { &[(false, coeffs), (true, &backwards)] };
    for &(reversed, s) in orientations {
        for kind in LiscaType::ALL {
            let params =
                if kind.is_expanded() { match_expanded(kind, s).into_iter().collect() } else { match_pattern(kind, s) };
            for params in params {
                out.insert(LiscaString { coefficients: coeffs.to_vec(), kind, params, reversed });
            }
        }
    }
    out.into_iter().collect()
}

/// All strings of `kind` with length at most `length_bound`, in canonical order.
pub fn generate_type_strings(kind: LiscaType, length_bound: usize) -> Vec<LiscaString> {
    let mut out = BTreeSet::new();
    if kind.is_expanded() {
        let seed: Vec<i64> = if kind == LiscaType::T1 { SEED_T1.to_vec() } else { SEED_T4.to_vec() };
        let mut queue = VecDeque::from([(seed, Vec::new())]);
        while let Some((s, history)) = queue.pop_front() {
            if s.len() > length_bound {
                continue;
            }
            if let Some((b, c)) = split_expanded(kind, &s, central_index(kind, &history)) {
                out.insert(LiscaString {
                    coefficients: s.clone(),
                    kind,
                    params: StringParams::Expanded { b, c, history: history.clone() },
                    reversed: false,
                });
            }
            for op in [Expansion::A, Expansion::B] {
                let mut h = history.clone();
                h.push(op);
                queue.push_back((apply_expansion(op, &s), h));
            }
        }
    } else {
        let base = pattern_base_len(kind);
        for total in 0..=length_bound.saturating_sub(base) as u32 {
            for t in 0..=total {
                let s = total - t;
                let coefficients = pattern_string(kind, s, t).expect("patterned type");
                out.insert(LiscaString { coefficients, kind, params: StringParams::Pattern { s, t }, reversed: false });
            }
        }
    }
    out.into_iter().collect()
}

/// Every generated string of every type up to `length_bound`.
pub fn generate_all(length_bound: usize) -> Vec<LiscaString> {
    LiscaType::ALL.into_iter().flat_map(|k| generate_type_strings(k, length_bound)).collect()
}
