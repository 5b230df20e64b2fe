//! Keystone vectors of an embedding and the knots they suggest.
//!
//! Basis vectors are reported with 1-based labels (`e1`, `e2`, ...) in
//! [`KeystoneReport`]; functions taking a column take the 0-based index.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeEmbedding;

/// A removal order `e^1, ..., e^n` together with the vectors certifying each
/// removal after the first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filtration {
    /// Basis labels in removal order, starting with the keystone itself.
    pub order: Vec<usize>,
    /// `certificates[k]` is the label of the row `v` whose projection is
    /// `±order[k + 1]`.
    pub certificates: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeystoneReport {
    pub e2: Vec<usize>,
    pub keystones: Vec<usize>,
    pub witnesses: BTreeMap<usize, Filtration>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuggestedKnot {
    pub coefficients: Vec<i64>,
    pub epsilon: Vec<i64>,
    pub framing: i64,
}

impl SuggestedKnot {
    /// The same knot with `ε` negated if needed so its first nonzero entry is negative.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        if self.epsilon.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
            out.epsilon.iter_mut().for_each(|x| *x = -*x);
        }
        out
    }
}

/// Columns with a nonzero entry in some row of square `-2`, 0-based.
pub fn two_support_basis(emb: &LatticeEmbedding) -> BTreeSet<usize> {
    let n = emb.rank();
    (0..n).filter(|&i| emb.pairing(i, i) == -2).flat_map(|i| (0..n).filter(move |&c| emb.entry(i, c) != 0)).collect()
}

/// Searches for a filtration starting at column `e`.
///
/// A removal that is available for some remaining set stays available after
/// any other column is removed (the projection only loses other entries), so
/// the greedy closure finds a full filtration whenever one exists.
pub fn is_keystone(emb: &LatticeEmbedding, e: usize) -> Option<Filtration> {
    let n = emb.rank();
    if e >= n {
        return None;
    }
    let mut remaining = vec![true; n];
    remaining[e] = false;
    let mut order = vec![e + 1];
    let mut certificates = Vec::new();
    'outer: while order.len() < n {
        for (i, row) in emb.rows().iter().enumerate() {
            let mut support = (0..n).filter(|&c| remaining[c] && row[c] != 0);
            if let (Some(c), None) = (support.next(), support.next()) {
                if row[c].abs() == 1 {
                    remaining[c] = false;
                    order.push(c + 1);
                    certificates.push(i + 1);
                    continue 'outer;
                }
            }
        }
        return None;
    }
    Some(Filtration { order, certificates })
}

/// Checks a filtration against the definition, independently of how it was found.
pub fn check_filtration(emb: &LatticeEmbedding, f: &Filtration) -> bool {
    let n = emb.rank();
    let distinct: BTreeSet<usize> = f.order.iter().copied().collect();
    if f.order.len() != n || distinct.len() != n || f.order.iter().any(|&l| l == 0 || l > n) {
        return false;
    }
    if f.certificates.len() + 1 != n {
        return false;
    }
    let mut remaining: BTreeSet<usize> = (0..n).collect();
    remaining.remove(&(f.order[0] - 1));
    for (k, &label) in f.order.iter().enumerate().skip(1) {
        let Some(row) = f.certificates[k - 1].checked_sub(1).and_then(|i| emb.rows().get(i)) else {
            return false;
        };
        let c = label - 1;
        let projection_is_unit = remaining.iter().all(|&j| if j == c { row[j].abs() == 1 } else { row[j] == 0 });
        if !projection_is_unit || !remaining.remove(&c) {
            return false;
        }
    }
    remaining.is_empty()
}

pub fn keystone_set(emb: &LatticeEmbedding) -> KeystoneReport {
    let e2: Vec<usize> = two_support_basis(emb).into_iter().collect();
    let witnesses: BTreeMap<usize, Filtration> =
        e2.par_iter().filter_map(|&e| is_keystone(emb, e).map(|w| (e + 1, w))).collect();
    KeystoneReport { e2: e2.iter().map(|e| e + 1).collect(), keystones: witnesses.keys().copied().collect(), witnesses }
}

/// The `-1` framed knot linking chain component `j` with `ε_j = e · v_j = -λ_je`.
pub fn suggested_knot(emb: &LatticeEmbedding, coefficients: &[i64], e: usize) -> Result<SuggestedKnot> {
    if coefficients.len() != emb.rank() {
        return Err(Error::DimensionMismatch { expected: emb.rank(), found: coefficients.len() });
    }
    if is_keystone(emb, e).is_none() {
        return Err(Error::NotKeystone(e + 1));
    }
    Ok(SuggestedKnot {
        coefficients: coefficients.to_vec(),
        epsilon: emb.column(e).iter().map(|x| -x).collect(),
        framing: -1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::table_embedding;
    use crate::lisca::{recognize_string_type, LiscaType};

    fn seed() -> LatticeEmbedding {
        LatticeEmbedding::new(vec![vec![1, -1, 0], vec![0, 1, -1], vec![-1, -1, 0]]).unwrap()
    }

    fn t4_seed() -> LatticeEmbedding {
        LatticeEmbedding::new(vec![vec![0, 1, 1, 1], vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![-1, -1, 0, 1]]).unwrap()
    }

    fn example(n: usize) -> (Vec<i64>, LatticeEmbedding) {
        let mut s = vec![-2, -(n as i64) - 1, -2, -3, -3];
        s.extend(std::iter::repeat_n(-2, n - 2));
        let ls = recognize_string_type(&s).into_iter().find(|l| l.kind == LiscaType::T3 && !l.reversed).unwrap();
        let e = table_embedding(&ls).unwrap();
        (s, e)
    }

    #[test]
    fn two_support_examples() {
        assert_eq!(two_support_basis(&seed()), BTreeSet::from([0, 1, 2]));
        assert_eq!(two_support_basis(&t4_seed()), BTreeSet::from([0, 1, 2]));
        let (_, e) = example(4);
        assert_eq!(two_support_basis(&e), (0..7).collect());
    }

    #[test]
    fn seed_keystones() {
        let w = is_keystone(&seed(), 0).unwrap();
        assert_eq!(w.order, vec![1, 2, 3]);
        assert_eq!(w.certificates, vec![1, 2]);
        assert!(check_filtration(&seed(), &w));
        let r = keystone_set(&seed());
        assert_eq!(r.keystones, vec![1, 2, 3]);
        for w in r.witnesses.values() {
            assert!(check_filtration(&seed(), w));
        }
    }

    #[test]
    fn explicit_example_keystones() {
        for n in 3..=8 {
            let (_, e) = example(n);
            let r = keystone_set(&e);
            assert_eq!(r.keystones, vec![1, 2, 3, 5], "n = {n}");
            assert!(is_keystone(&e, n + 2).is_none());
            for w in r.witnesses.values() {
                assert!(check_filtration(&e, w));
            }
        }
    }

    #[test]
    fn rank_five_example_records_the_collision() {
        // e_{n+3} = e5 is both the last column and one of the keystones here.
        let (_, e) = example(2);
        assert_eq!(keystone_set(&e).keystones, vec![1, 2, 3, 5]);
        assert!(is_keystone(&e, 4).is_some());
    }

    #[test]
    fn keystones_follow_column_permutations() {
        let (_, e) = example(5);
        let n = e.rank();
        let perm: Vec<usize> = (0..n).rev().collect();
        let rows: Vec<Vec<i64>> = e
            .rows()
            .iter()
            .map(|r| perm.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { -r[c] } else { r[c] }).collect())
            .collect();
        let moved = LatticeEmbedding::new(rows).unwrap();
        let a: BTreeSet<usize> = keystone_set(&e).keystones.into_iter().collect();
        let b: BTreeSet<usize> = keystone_set(&moved).keystones.iter().map(|&l| perm[l - 1] + 1).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn suggested_examples() {
        let k = suggested_knot(&seed(), &[-2, -2, -2], 0).unwrap();
        assert_eq!(k.epsilon, vec![-1, 0, 1]);
        assert_eq!(k.framing, -1);
        let (s, e) = example(2);
        assert_eq!(suggested_knot(&e, &s, 0).unwrap().epsilon, vec![0, 0, -1, 0, 1]);
        let (s, e) = example(4);
        assert_eq!(suggested_knot(&e, &s, 6), Err(Error::NotKeystone(7)));
        let a = suggested_knot(&e, &s, 2).unwrap();
        let b = suggested_knot(&e, &s, 4).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn report_json() {
        let r = keystone_set(&seed());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["e2"], serde_json::json!([1, 2, 3]));
        assert_eq!(v["keystones"], serde_json::json!([1, 2, 3]));
        assert_eq!(v["witnesses"]["1"]["order"], serde_json::json!([1, 2, 3]));
        let k = suggested_knot(&seed(), &[-2, -2, -2], 0).unwrap();
        assert_eq!(
            serde_json::to_string(&k).unwrap(),
            r#"{"coefficients":[-2,-2,-2],"epsilon":[-1,0,1],"framing":-1}"#
        );
    }
}
