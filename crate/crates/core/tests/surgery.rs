use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use lenskit::cfrac::{eval_cf, CfExpansion};
use lenskit::snf::smith_diagonal_i64;
use lenskit::surgery::{meridian_classes, theorem16_instance, DualFamily, FamilyParams};
use lenskit::Error;

fn signed_sequences(len: usize) -> Vec<Vec<i64>> {
    let values: Vec<i64> = (-5..=-2).chain(2..=5).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s: Vec<i64>| values.iter().map(move |&x| [s.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

#[test]
fn closed_forms_hold_for_signed_b_sequences() {
    let mut checked = 0;
    for k in 1..=2 {
        for b in signed_sequences(2 * k) {
            for f in [DualFamily::Bgi, DualFamily::Gofk] {
                match theorem16_instance(f, &FamilyParams::Sequence { b: b.clone() }) {
                    Ok(r) => {
                        assert!(r.matches, "{f} {b:?}: {r:?}");
                        checked += 1;
                    }
                    Err(Error::Degenerate) => {}
                    Err(e) => panic!("{f} {b:?}: {e}"),
                }
            }
        }
        for b in signed_sequences(k) {
            match theorem16_instance(DualFamily::Bgii, &FamilyParams::Sequence { b: b.clone() }) {
                Ok(r) => {
                    assert!(r.matches, "BGII {b:?}: {r:?}");
                    checked += 1;
                }
                Err(Error::Degenerate) => {}
                Err(e) => panic!("BGII {b:?}: {e}"),
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn spor_needs_t_one() {
    assert!(theorem16_instance(DualFamily::Spor, &FamilyParams::Pair { s: 0, t: 2 }).is_err());
    assert!(theorem16_instance(DualFamily::Bgi, &FamilyParams::Pair { s: 0, t: 1 }).is_err());
}

fn chain_matrix(f: &[i64]) -> Vec<Vec<i64>> {
    let n = f.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        f[i]
                    } else if i.abs_diff(j) == 1 {
                        1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

proptest! {
    #[test]
    fn chain_order_matches_smith_form(f in prop::collection::vec(-6i64..=6, 1..8)) {
        let diag = smith_diagonal_i64(&chain_matrix(&f));
        let det: BigInt = diag.iter().product();
        match meridian_classes(&f) {
            Ok(mc) => {
                prop_assert_eq!(&mc.order, &det);
                // The group is cyclic, generated by μ_1.
                prop_assert!(diag[..diag.len() - 1].iter().all(|d| d == &BigInt::from(1)));
                let terms: Vec<i64> = f.iter().map(|x| -x).collect();
                let v = eval_cf(&CfExpansion::from_i64s(&terms)).unwrap();
                prop_assert_eq!(v.numer().abs(), det);
            }
            Err(Error::Degenerate) => prop_assert!(det == BigInt::from(0)),
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
