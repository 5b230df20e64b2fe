//! Intersection lattices of linear plumbings and their embeddings into the
//! standard negative-diagonal lattice of the same rank.
//!
//! An embedding is stored as an integer matrix `λ` whose row `i` is the image
//! of `v_i` in the basis `e_1..e_n`. The pairing is `e_i · e_j = -δ_ij`, so the
//! Gram identity reads `-Σ_k λ_ik λ_jk = Q(v_i, v_j)`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lisca::{recognize_string_type, Expansion, LiscaString, LiscaType, StringParams, SEED_T1, SEED_T4};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionForm {
    diagonal: Vec<i64>,
}

impl IntersectionForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The framings `-a_i`.
    pub fn diagonal(&self) -> &[i64] {
        &self.diagonal
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.diagonal[i]
        } else if i.abs_diff(j) == 1 {
            1
        } else {
            0
        }
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }
}

/// The tridiagonal form of a chain with framings `coefficients`; each must be `<= -1`.
pub fn form_from_string(coefficients: &[i64]) -> Result<IntersectionForm> {
    if let Some(c) = coefficients.iter().find(|&&c| c > -1) {
        return Err(Error::domain(format!("framing {c} is not <= -1")));
    }
    Ok(IntersectionForm { diagonal: coefficients.to_vec() })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeEmbedding {
    rows: Vec<Vec<i64>>,
}

impl LatticeEmbedding {
    /// Builds an embedding from its rows; every row must have the same length.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        Ok(Self { rows })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.rows[row][col]
    }

    pub fn column(&self, col: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[col]).collect()
    }

    /// `φ(v_i) · φ(v_j)` under the negative-diagonal pairing.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        -dot(&self.rows[i], &self.rows[j])
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.pairing(i, j)).collect()).collect()
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.rows.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Orbit representative under column permutations and column sign flips:
    /// each column's first nonzero entry is made negative, then columns are
    /// sorted lexicographically (top to bottom). This is the row-major
    /// lexicographic minimum of the orbit.
    pub fn canonical(&self) -> Self {
        let n = self.rank();
        let mut cols: Vec<Vec<i64>> = (0..n)
            .map(|c| {
                let mut col = self.column(c);
                if col.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
                    col.iter_mut().for_each(|x| *x = -*x);
                }
                col
            })
            .collect();
        cols.sort();
        let rows = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        Self { rows }
    }

    /// Rows reversed, i.e. the same embedding read along the reversed chain.
    pub fn reversed_rows(&self) -> Self {
        Self { rows: self.rows.iter().rev().cloned().collect() }
    }

    /// Sign table in the layout `v_i | e_1 ... e_n`: `+`, `-`, `0`, or the
    /// signed value for entries of absolute value at least 2.
    pub fn sign_table(&self) -> String {
        let n = self.rank();
        let cell = |x: i64| match x {
            0 => "0".to_string(),
            1 => "+".to_string(),
            -1 => "-".to_string(),
            x => format!("{x:+}"),
        };
        let mut grid: Vec<Vec<String>> =
            vec![std::iter::once(String::new()).chain((1..=n).map(|j| format!("e{j}"))).collect()];
        for (i, r) in self.rows.iter().enumerate() {
            grid.push(std::iter::once(format!("v{}", i + 1)).chain(r.iter().map(|&x| cell(x))).collect());
        }
        let widths: Vec<usize> = (0..=n).map(|c| grid.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for r in &grid {
            let line: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for LatticeEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.sign_table())
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// True iff the rows of `emb` realize `form` exactly.
pub fn verify_embedding(form: &IntersectionForm, emb: &LatticeEmbedding) -> Result<bool> {
    if form.rank() != emb.rank() {
        return Err(Error::DimensionMismatch { expected: form.rank(), found: emb.rank() });
    }
    let n = form.rank();
    Ok((0..n).all(|i| (i..n).all(|j| emb.pairing(i, j) == form.entry(i, j))))
}

pub fn embeddings_equivalent(a: &LatticeEmbedding, b: &LatticeEmbedding) -> bool {
    a.rank() == b.rank() && a.canonical() == b.canonical()
}

/// All embeddings of `form` up to column permutations and signs, as sorted
/// canonical representatives.
///
/// Rows are assigned in order. Every column is normalized so that its first
/// nonzero entry is positive and columns stay in descending lexicographic
/// order, which leaves exactly one search leaf per equivalence class. Entries
/// are bounded only by the norm equation.
pub fn find_embeddings(form: &IntersectionForm) -> Vec<LatticeEmbedding> {
    let n = form.rank();
    if n == 0 {
        return vec![LatticeEmbedding { rows: Vec::new() }];
    }
    let norms: Vec<i64> = form.diagonal.iter().map(|d| -d).collect();

    // Split the tree two levels down and run the subtrees in parallel.
    let root = Search::new(norms.clone());
    let mut prefixes = Vec::new();
    for r0 in root.candidates() {
        let mut s = root.clone();
        s.push_row(r0.clone());
        if n == 1 {
            prefixes.push(vec![r0]);
            continue;
        }
        for r1 in s.candidates() {
            prefixes.push(vec![r0.clone(), r1]);
        }
    }
    let found: BTreeSet<LatticeEmbedding> = prefixes
        .into_par_iter()
        .flat_map_iter(|prefix| {
            let mut s = Search::new(norms.clone());
            for r in prefix {
                s.push_row(r);
            }
            let mut out = Vec::new();
            s.run(&mut out);
            out
        })
        .map(|rows| LatticeEmbedding { rows }.canonical())
        .collect();
    found.into_iter().collect()
}

/// Depth-first row assignment state.
#[derive(Clone)]
struct Search {
    n: usize,
    norms: Vec<i64>,
    rows: Vec<Vec<i64>>,
    /// Columns carrying at least one nonzero entry; always a prefix.
    used: usize,
    /// `same_next[c]`: columns `c` and `c+1` agree on every assigned row.
    same_next: Vec<bool>,
    /// Nonzero entries `(row, value)` of each column.
    col_rows: Vec<Vec<(usize, i64)>>,
    /// Largest column index in each assigned row's support.
    last_support: Vec<usize>,
}

impl Search {
    fn new(norms: Vec<i64>) -> Self {
        let n = norms.len();
        Self {
            n,
            norms,
            rows: Vec::new(),
            used: 0,
            same_next: vec![true; n.saturating_sub(1)],
            col_rows: vec![Vec::new(); n],
            last_support: Vec::new(),
        }
    }

    fn push_row(&mut self, row: Vec<i64>) {
        let i = self.rows.len();
        for (c, &x) in row.iter().enumerate() {
            if x != 0 {
                self.col_rows[c].push((i, x));
                self.used = self.used.max(c + 1);
            }
        }
        for c in 0..self.same_next.len() {
            self.same_next[c] &= row[c] == row[c + 1];
        }
        self.last_support.push(row.iter().rposition(|&x| x != 0).unwrap_or(0));
        self.rows.push(row);
    }

    fn run(&mut self, out: &mut Vec<Vec<Vec<i64>>>) {
        if self.rows.len() == self.n {
            out.push(self.rows.clone());
            return;
        }
        for row in self.candidates() {
            let mut next = self.clone();
            next.push_row(row);
            next.run(out);
        }
    }

    /// Candidate next rows respecting norm, adjacency and the column ordering.
    fn candidates(&self) -> Vec<Vec<i64>> {
        let i = self.rows.len();
        let mut st = RowState { values: vec![0; self.n], dots: vec![0; i], touched: Vec::new(), out: Vec::new() };
        self.extend_used(&mut st, 0, self.norms[i]);
        st.out
    }

    fn target(&self, j: usize) -> i64 {
        if j + 1 == self.rows.len() {
            -1
        } else {
            0
        }
    }

    fn off_rows<'a>(&'a self, st: &'a RowState) -> impl Iterator<Item = usize> + 'a {
        let prev = self.rows.len().checked_sub(1);
        st.touched.iter().copied().chain(prev).filter(move |&j| st.dots[j] != self.target(j))
    }

    /// Columns `< start` are decided; the next nonzero used column is `>= start`.
    fn extend_used(&self, st: &mut RowState, start: usize, budget: i64) {
        let last_val = if start == 0 { 0 } else { st.values[start - 1] };
        let same = |c: usize| c + 1 < self.used && self.same_next[c];

        // Stop here: remaining used columns are zero.
        let tail_ok = start == 0 || start >= self.used || !same(start - 1) || last_val >= 0;
        if tail_ok && self.off_rows(st).next().is_none() {
            self.fill_fresh(st, budget);
        }
        if budget == 0 {
            return;
        }
        let off_min = self.off_rows(st).map(|j| self.last_support[j]).min();
        for c in start..self.used {
            if off_min.is_some_and(|m| m < c) {
                break;
            }
            // Columns start..c are skipped (zero).
            if c > start && start > 0 && same(start - 1) && last_val < 0 {
                break;
            }
            let upper = if c > 0 && same(c - 1) {
                if c == start {
                    last_val
                } else {
                    0
                }
            } else {
                i64::MAX
            };
            let bound = isqrt(budget);
            for x in (-bound..=bound.min(upper)).rev() {
                if x == 0 {
                    continue;
                }
                st.values[c] = x;
                let mark = st.touched.len();
                for &(j, y) in &self.col_rows[c] {
                    if st.dots[j] == 0 && !st.touched[..mark].contains(&j) {
                        st.touched.push(j);
                    }
                    st.dots[j] += x * y;
                }
                self.extend_used(st, c + 1, budget - x * x);
                for &(j, y) in &self.col_rows[c] {
                    st.dots[j] -= x * y;
                }
                st.touched.truncate(mark);
                st.values[c] = 0;
            }
        }
    }

    /// Places the remaining norm on fresh columns as a non-increasing
    /// sequence of positive entries.
    fn fill_fresh(&self, st: &mut RowState, budget: i64) {
        fn rec(s: &Search, st: &mut RowState, col: usize, budget: i64, cap: i64) {
            if budget == 0 {
                st.out.push(st.values.clone());
                return;
            }
            if col >= s.n {
                return;
            }
            for x in (1..=isqrt(budget).min(cap)).rev() {
                st.values[col] = x;
                rec(s, st, col + 1, budget - x * x, x);
                st.values[col] = 0;
            }
        }
        rec(self, st, self.used, budget, i64::MAX);
    }
}

struct RowState {
    values: Vec<i64>,
    dots: Vec<i64>,
    touched: Vec<usize>,
    out: Vec<Vec<i64>>,
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Row builder with 1-based column labels.
struct Table {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl Table {
    fn new(n: usize) -> Self {
        Self { n, rows: Vec::new() }
    }

    fn row(&mut self, terms: impl IntoIterator<Item = (usize, i64)>) {
        let mut r = vec![0; self.n];
        for (c, x) in terms {
            r[c - 1] += x;
        }
        self.rows.push(r);
    }

    fn finish(self) -> LatticeEmbedding {
        LatticeEmbedding { rows: self.rows }
    }
}

fn plus(cols: impl IntoIterator<Item = usize>) -> impl Iterator<Item = (usize, i64)> {
    cols.into_iter().map(|c| (c, 1))
}

fn minus(cols: impl IntoIterator<Item = usize>) -> impl Iterator<Item = (usize, i64)> {
    cols.into_iter().map(|c| (c, -1))
}

/// The explicit embedding attached to a recognized string: the patterned
/// tables for T2, T3, T5, T6, T7, and for T1/T4 the seed table carried along
/// the expansion history.
pub fn table_embedding(ls: &LiscaString) -> Result<LatticeEmbedding> {
    let emb = match (&ls.params, ls.kind) {
        (StringParams::Pattern { s, t }, kind) if !kind.is_expanded() => pattern_table(kind, *s as usize, *t as usize),
        (StringParams::Expanded { history, .. }, kind) if kind.is_expanded() => expanded_table(kind, history),
        _ => return Err(Error::Unrecognized),
    };
    let emb = if ls.reversed { emb.reversed_rows() } else { emb };
    let form = form_from_string(&ls.coefficients)?;
    if !verify_embedding(&form, &emb)? {
        return Err(Error::Unrecognized);
    }
    Ok(emb)
}

/// `emb` written in the basis labels of a closed-form table, when the string
/// is recognized and some table lies in the same class. Keystone labels are
/// basis dependent; this is the labelling the tables are stated in.
pub fn table_labelled(coefficients: &[i64], emb: &LatticeEmbedding) -> Option<LatticeEmbedding> {
    let mut found = recognize_string_type(coefficients);
    found.sort_by_key(|l| l.reversed);
    found.iter().filter_map(|l| table_embedding(l).ok()).find(|t| embeddings_equivalent(t, emb))
}

fn pattern_table(kind: LiscaType, s: usize, t: usize) -> LatticeEmbedding {
    match kind {
        LiscaType::T2 | LiscaType::T3 => {
            let n = t + s + 4;
            let chain = |i: usize| if i == 0 { 3 } else { 4 + i };
            let tail = t + 5..=t + s + 4;
            let mut tb = Table::new(n);
            for i in (1..=t).rev() {
                tb.row([(chain(i - 1), -1), (chain(i), 1)]);
            }
            if kind == LiscaType::T2 {
                tb.row(plus([2, 3, 4]));
                tb.row([(1, 1), (2, -1)].into_iter().chain(minus(tail.clone())));
            } else {
                tb.row(plus([2, 3, 4]).chain(plus(tail.clone())));
                tb.row([(1, 1), (2, -1)]);
            }
            tb.row([(2, 1)].into_iter().chain(minus((0..=t).map(chain))));
            tb.row([(1, -1), (2, -1), (4, 1)]);
            if s > 0 {
                let first = if kind == LiscaType::T2 { (1, 1) } else { (4, -1) };
                tb.row([first, (t + 5, 1)]);
                for j in 1..s {
                    tb.row([(t + 4 + j, -1), (t + 5 + j, 1)]);
                }
            }
            tb.finish()
        }
        LiscaType::T5 | LiscaType::T6 => {
            let n = t + s + 4;
            let chain = |i: usize| if i == 0 { 1 } else { 4 + i };
            let tail = t + 5..=t + s + 4;
            let mut tb = Table::new(n);
            tb.row([(2, -1)].into_iter().chain(plus((0..=t).map(chain))));
            if kind == LiscaType::T5 {
                tb.row([(2, 1), (3, -1)].into_iter().chain(minus(tail.clone())));
                tb.row([(1, -1), (2, -1), (4, 1)]);
            } else {
                tb.row([(2, 1), (3, -1)]);
                tb.row([(1, -1), (2, -1), (4, 1)].into_iter().chain(plus(tail.clone())));
            }
            for i in 1..=t {
                tb.row([(chain(i - 1), 1), (chain(i), -1)]);
            }
            tb.row(plus([2, 3, 4, chain(t)]));
            if s > 0 {
                let first = if kind == LiscaType::T5 { 3 } else { 4 };
                tb.row([(first, -1), (t + 5, 1)]);
                for j in 1..s {
                    tb.row([(t + 4 + j, -1), (t + 5 + j, 1)]);
                }
            }
            tb.finish()
        }
        LiscaType::T7 => {
            let n = t + s + 5;
            let chain = |i: usize| if i == 0 { 1 } else { 5 + i };
            let mut tb = Table::new(n);
            tb.row(plus([2, 3]).chain(plus((0..=t).map(chain))));
            tb.row([(3, -1), (4, 1)]);
            tb.row([(2, -1), (3, 1), (5, 1)].into_iter().chain(plus(t + 6..=t + s + 5)));
            tb.row([(1, 1), (3, -1), (4, -1)]);
            for i in 1..=t {
                tb.row([(chain(i - 1), -1), (chain(i), 1)]);
            }
            tb.row([(2, 1), (5, 1), (chain(t), -1)]);
            if s > 0 {
                tb.row([(5, -1), (t + 6, 1)]);
                for j in 1..s {
                    tb.row([(t + 5 + j, -1), (t + 6 + j, 1)]);
                }
            }
            tb.finish()
        }
        LiscaType::T1 | LiscaType::T4 => unreachable!("expanded types have no pattern table"),
    }
}

/// Seed tables with the column that the expansions attach to, and that
/// column's coefficients in the first and last rows.
fn seed_table(kind: LiscaType) -> (Vec<Vec<i64>>, usize, i64, i64) {
    if kind == LiscaType::T1 {
        debug_assert_eq!(SEED_T1.len(), 3);
        (vec![vec![1, -1, 0], vec![0, 1, -1], vec![-1, -1, 0]], 0, 1, -1)
    } else {
        debug_assert_eq!(SEED_T4.len(), 4);
        (vec![vec![0, 1, 1, 1], vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![-1, -1, 0, 1]], 3, 1, 1)
    }
}

fn expanded_table(kind: LiscaType, history: &[Expansion]) -> LatticeEmbedding {
    let (mut rows, mut special, mut sigma, mut tau) = seed_table(kind);
    for &op in history {
        let new = rows.len();
        rows.iter_mut().for_each(|r| r.push(0));
        let mut fresh = vec![0; new + 1];
        fresh[new] = 1;
        match op {
            Expansion::A => {
                fresh[special] = -sigma;
                rows.last_mut().expect("nonempty")[new] = sigma * tau;
                rows.insert(0, fresh);
                tau *= sigma;
                sigma = 1;
            }
            Expansion::B => {
                fresh[special] = -tau;
                rows[0][new] = sigma * tau;
                rows.push(fresh);
                sigma *= tau;
                tau = 1;
            }
        }
        special = new;
    }
    LatticeEmbedding { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lisca::{generate_all, recognize_string_type};

    fn emb(rows: &[&[i64]]) -> LatticeEmbedding {
        LatticeEmbedding::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn seed_t1() -> LatticeEmbedding {
        emb(&[&[1, -1, 0], &[0, 1, -1], &[-1, -1, 0]])
    }

    /// The explicit rank `n + 3` table for `(-2, -n-1, -2, -3, -3, -2^[n-2])`.
    pub(crate) fn example_table(n: usize) -> LatticeEmbedding {
        let r = n + 3;
        let mut tb = Table::new(r);
        tb.row([(3, -1), (5, 1)]);
        tb.row(plus([2, 3, 4]).chain(plus(6..=r)));
        tb.row([(1, 1), (2, -1)]);
        tb.row([(2, 1), (3, -1), (5, -1)]);
        tb.row([(1, -1), (2, -1), (4, 1)]);
        if r >= 6 {
            tb.row([(4, -1), (6, 1)]);
        }
        for j in 7..=r {
            tb.row([(j - 1, -1), (j, 1)]);
        }
        tb.finish()
    }

    fn example_string(n: usize) -> Vec<i64> {
        let mut v = vec![-2, -(n as i64) - 1, -2, -3, -3];
        v.extend(std::iter::repeat_n(-2, n - 2));
        v
    }

    #[test]
    fn forms() {
        let f = form_from_string(&[-2, -3]).unwrap();
        assert_eq!(f.matrix(), vec![vec![-2, 1], vec![1, -3]]);
        assert_eq!(form_from_string(&[-2, -3, -2, -3, -3]).unwrap().rank(), 5);
        assert!(form_from_string(&[-2, 0]).is_err());
        assert!(form_from_string(&[-1, -2]).is_ok());
    }

    #[test]
    fn verify_examples() {
        let f = form_from_string(&SEED_T1).unwrap();
        assert!(verify_embedding(&f, &seed_t1()).unwrap());
        let bad = emb(&[&[1, 1, 0], &[0, 1, -1], &[-1, -1, 0]]);
        assert!(!verify_embedding(&f, &bad).unwrap());
        let t4 = emb(&[&[0, 1, 1, 1], &[1, -1, 0, 0], &[0, 1, -1, 0], &[-1, -1, 0, 1]]);
        assert!(verify_embedding(&form_from_string(&SEED_T4).unwrap(), &t4).unwrap());
        assert!(matches!(
            verify_embedding(&form_from_string(&[-2, -2]).unwrap(), &seed_t1()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn search_examples() {
        let found = find_embeddings(&form_from_string(&SEED_T1).unwrap());
        assert_eq!(found.len(), 1);
        assert!(embeddings_equivalent(&found[0], &seed_t1()));
        assert!(find_embeddings(&form_from_string(&[-2, -3]).unwrap()).is_empty());
        let found = find_embeddings(&form_from_string(&[-2, -3, -2, -3, -3]).unwrap());
        assert_eq!(found.len(), 1);
        assert!(embeddings_equivalent(&found[0], &example_table(2)));
    }

    #[test]
    fn search_results_verify_and_are_canonical() {
        for s in [vec![-1, -1], vec![-5], vec![-2, -5, -2, -3, -3, -2, -2, -2], vec![-4, -1, -4], vec![-3, -3, -3]] {
            let f = form_from_string(&s).unwrap();
            for e in find_embeddings(&f) {
                assert!(verify_embedding(&f, &e).unwrap(), "{s:?}");
                assert_eq!(e.canonical(), e);
            }
        }
    }

    #[test]
    fn expanded_tables() {
        let ls = &recognize_string_type(&[-2, -2, -2, -3]).into_iter().find(|l| l.kind == LiscaType::T1).unwrap();
        let e = table_embedding(ls).unwrap();
        // v'_1 = -e1 + e4, v'_2 = v1, v'_3 = v2, v'_4 = v3 - e4
        assert_eq!(e, emb(&[&[-1, 0, 0, 1], &[1, -1, 0, 0], &[0, 1, -1, 0], &[-1, -1, 0, -1]]));
    }

    #[test]
    fn example_table_is_type_three() {
        for n in 2..=8 {
            let s = example_string(n);
            let ls = recognize_string_type(&s).into_iter().find(|l| l.kind == LiscaType::T3 && !l.reversed).unwrap();
            assert_eq!(ls.params, StringParams::Pattern { s: n as u32 - 2, t: 1 });
            assert_eq!(table_embedding(&ls).unwrap(), example_table(n));
        }
    }

    #[test]
    fn every_generated_table_verifies() {
        for ls in generate_all(12) {
            let e = table_embedding(&ls).unwrap_or_else(|_| panic!("{ls:?}"));
            assert!(e.max_abs_entry() <= 1);
            let mut rev = ls.clone();
            rev.coefficients.reverse();
            rev.reversed = true;
            assert_eq!(table_embedding(&rev).unwrap(), e.reversed_rows());
        }
    }

    #[test]
    fn equivalence_examples() {
        let e = seed_t1();
        let flipped = LatticeEmbedding { rows: e.rows.iter().map(|r| r.iter().rev().map(|x| -x).collect()).collect() };
        assert!(embeddings_equivalent(&e, &flipped));
        // At s = t = 0 the two patterns give the same string and the same table.
        assert_eq!(pattern_table(LiscaType::T2, 0, 0), pattern_table(LiscaType::T3, 0, 0));
        let t2 = pattern_table(LiscaType::T2, 1, 0);
        let t3 = pattern_table(LiscaType::T3, 1, 0);
        assert!(!embeddings_equivalent(&t2, &t3));
        assert!(verify_embedding(&form_from_string(&[-3, -3, -2, -3, -2]).unwrap(), &t2).unwrap());
        assert!(!verify_embedding(&form_from_string(&[-3, -3, -2, -3, -2]).unwrap(), &t3).unwrap());
    }

    #[test]
    fn sign_table_and_json() {
        let e = seed_t1();
        assert_eq!(e.sign_table(), "   e1 e2 e3\nv1  +  -  0\nv2  0  +  -\nv3  -  -  0\n");
        assert_eq!(serde_json::to_string(&e).unwrap(), "[[1,-1,0],[0,1,-1],[-1,-1,0]]");
        let back: LatticeEmbedding = serde_json::from_str("[[1,-1,0],[0,1,-1],[-1,-1,0]]").unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn table_labels_for_search_results() {
        let s = [-2, -3, -2, -3, -3];
        let found = find_embeddings(&form_from_string(&s).unwrap());
        let t = table_labelled(&s, &found[0]).unwrap();
        assert!(embeddings_equivalent(&t, &found[0]));
        assert_eq!(t.rows()[0], vec![0, 0, -1, 0, 1]);
        assert!(table_labelled(&[-4], &find_embeddings(&form_from_string(&[-4]).unwrap())[0]).is_none());
    }
}
