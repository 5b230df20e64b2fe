use lenskit::keystone::{check_filtration, is_keystone, keystone_set, suggested_knot, two_support_basis};
use lenskit::lattice::{find_embeddings, form_from_string, LatticeEmbedding};
use lenskit::lisca::generate_all;
use lenskit::surgery::{handle_slide, verify_s1s2};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Tries every removal order; a step is valid when some row restricted to the
/// remaining columns is a unit multiple of the column being removed.
fn brute_force_keystone(emb: &LatticeEmbedding, e: usize, perms: &[Vec<usize>]) -> bool {
    let n = emb.rank();
    perms.iter().filter(|p| p[0] == e).any(|order| {
        let mut remaining = vec![true; n];
        remaining[order[0]] = false;
        order[1..].iter().all(|&c| {
            let ok = emb.rows().iter().any(|row| {
                (0..n).filter(|&j| remaining[j]).all(|j| if j == c { row[j].abs() == 1 } else { row[j] == 0 })
            });
            remaining[c] = false;
            ok
        })
    })
}

#[test]
fn greedy_matches_all_removal_orders() {
    let mut checked = 0;
    for ls in generate_all(7) {
        let n = ls.coefficients.len();
        let perms = permutations(n);
        for emb in find_embeddings(&form_from_string(&ls.coefficients).unwrap()) {
            for e in 0..n {
                let greedy = is_keystone(&emb, e);
                assert_eq!(greedy.is_some(), brute_force_keystone(&emb, e, &perms), "{ls:?} e{}", e + 1);
                if let Some(f) = greedy {
                    assert!(check_filtration(&emb, &f));
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn keystones_lie_in_the_two_support() {
    for ls in generate_all(9) {
        for emb in find_embeddings(&form_from_string(&ls.coefficients).unwrap()) {
            let r = keystone_set(&emb);
            let e2 = two_support_basis(&emb);
            assert!(r.keystones.iter().all(|k| e2.contains(&(k - 1))));
        }
    }
}

#[test]
fn handle_slides_preserve_the_s1s2_verdict() {
    for ls in generate_all(8) {
        let s = &ls.coefficients;
        for emb in find_embeddings(&form_from_string(s).unwrap()) {
            for &k in &keystone_set(&emb).keystones {
                let knot = suggested_knot(&emb, s, k - 1).unwrap();
                for j in 0..s.len() {
                    for sigma in [-1, 1] {
                        let slid = handle_slide(&knot, j, sigma).unwrap();
                        let v = verify_s1s2(s, &slid.epsilon, slid.framing).unwrap();
                        assert!(v.pass, "{s:?} e{k} slid over v{} by {sigma}", j + 1);
                    }
                }
            }
        }
    }
}
