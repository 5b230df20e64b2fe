//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Diagonal of the Smith normal form of `m` (length `min(rows, cols)`), with
/// nonnegative entries each dividing the next; zeros come last.
#[allow(clippy::needless_range_loop)]
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            // Pivot on the smallest nonzero entry of the remaining block.
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(x, y)| a[i][j].abs().cmp(&a[x][y].abs()))
            else {
                return finish(a, k);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let d = &q * &a[i][t];
                    a[i][j] -= d;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    finish(a, k)
}

fn finish(a: Vec<Vec<BigInt>>, k: usize) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = (0..k).map(|i| a[i][i].abs()).collect();
    // Nonzero entries were produced in divisibility order; move zeros last.
    d.sort_by_key(|x| x.is_zero());
    d
}

pub fn smith_diagonal_i64(m: &[Vec<i64>]) -> Vec<BigInt> {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    smith_diagonal(&big)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &[Vec<i64>]) -> Vec<i64> {
        smith_diagonal_i64(m).iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(diag(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(diag(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(diag(&[vec![0, 0], vec![0, 5]]), vec![5, 0]);
        assert_eq!(diag(&[vec![-2, 1], vec![1, -2]]), vec![1, 3]);
        assert_eq!(diag(&[vec![1, 2, 3]]), vec![1]);
        assert_eq!(diag(&[]), Vec::<i64>::new());
    }
}
