//! Smith normal form of sparse integer matrices.
//!
//! Unit pivots are eliminated sparsely in `i64` with checked arithmetic. Whatever
//! block survives (no unit entries left, or an overflow) is finished densely over
//! `BigInt`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Column-sparse integer matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    /// `cols[j]` lists `(row, value)` with distinct rows and non-zero values.
    pub cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.cols.len()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out[i as usize][j] = v;
            }
        }
        out
    }

    /// `self · other`, in `i128` to stay exact on boundary-sized entries.
    pub fn compose_is_zero(&self, other: &SparseMatrix) -> bool {
        debug_assert_eq!(self.cols.len(), other.rows);
        other.cols.iter().all(|col| {
            let mut acc: BTreeMap<u32, i128> = BTreeMap::new();
            for &(k, b) in col {
                for &(i, a) in &self.cols[k as usize] {
                    *acc.entry(i).or_insert(0) += a as i128 * b as i128;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

/// Non-zero invariant factors (positive, each dividing the next).
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut elim = Eliminator::new(m);
    let ones = elim.run();
    let mut out = vec![BigInt::one(); ones];
    out.extend(dense_snf(elim.remaining()));
    out
}

pub fn rank(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}

struct Eliminator {
    cols: Vec<BTreeMap<u32, i64>>,
    rows: Vec<BTreeSet<u32>>,
    alive: Vec<bool>,
}

impl Eliminator {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows = vec![BTreeSet::new(); m.rows];
        let cols = m
            .cols
            .iter()
            .enumerate()
            .map(|(j, c)| {
                for &(i, _) in c {
                    rows[i as usize].insert(j as u32);
                }
                c.iter().copied().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        let alive = vec![true; m.cols.len()];
        Eliminator { cols, rows, alive }
    }

    /// Eliminates unit pivots until none is left; returns how many.
    fn run(&mut self) -> usize {
        let mut count = 0;
        loop {
            let mut progressed = false;
            for c in 0..self.cols.len() {
                if !self.alive[c] {
                    continue;
                }
                let pivot = self.cols[c]
                    .iter()
                    .filter(|(_, v)| v.abs() == 1)
                    .min_by_key(|(r, _)| (self.rows[**r as usize].len(), **r))
                    .map(|(&r, &v)| (r, v));
                let Some((r, p)) = pivot else { continue };
                if self.pivot(c, r, p).is_err() {
                    return count;
                }
                count += 1;
                progressed = true;
            }
            if !progressed {
                return count;
            }
        }
    }

    fn pivot(&mut self, c: usize, r: u32, p: i64) -> Result<(), ()> {
        let others: Vec<u32> = self.rows[r as usize].iter().copied().filter(|&j| j as usize != c).collect();
        // Compute every updated column first so an overflow leaves the state intact.
        let mut updates = Vec::with_capacity(others.len());
        for &j in &others {
            let f = self.cols[j as usize][&r].checked_mul(p).ok_or(())?;
            let mut col = self.cols[j as usize].clone();
            for (&i, &v) in &self.cols[c] {
                let delta = f.checked_mul(v).ok_or(())?;
                let e = col.entry(i).or_insert(0);
                *e = e.checked_sub(delta).ok_or(())?;
            }
            col.retain(|_, v| *v != 0);
            updates.push((j, col));
        }
        for (j, col) in updates {
            for &i in self.cols[j as usize].keys() {
                self.rows[i as usize].remove(&j);
            }
            for &i in col.keys() {
                self.rows[i as usize].insert(j);
            }
            self.cols[j as usize] = col;
        }
        for &i in self.cols[c].keys() {
            self.rows[i as usize].remove(&(c as u32));
        }
        self.cols[c].clear();
        self.alive[c] = false;
        Ok(())
    }

    fn remaining(&self) -> Vec<Vec<BigInt>> {
        let live: Vec<usize> = (0..self.cols.len()).filter(|&c| self.alive[c] && !self.cols[c].is_empty()).collect();
        let row_ids: BTreeSet<u32> = live.iter().flat_map(|&c| self.cols[c].keys().copied()).collect();
        let row_pos: BTreeMap<u32, usize> = row_ids.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut out = vec![vec![BigInt::zero(); live.len()]; row_ids.len()];
        for (jj, &c) in live.iter().enumerate() {
            for (&i, &v) in &self.cols[c] {
                out[row_pos[&i]][jj] = BigInt::from(v);
            }
        }
        out
    }
}

/// Diagonal of the Smith normal form of a dense matrix, non-zero entries only.
pub fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs(&a, t..m, t..n) else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..n {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..m {
                        let d = &q * &a[i][t];
                        a[i][j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // A smaller remainder sits in row or column t; move it to the pivot.
                let (pi, pj) = smallest_in_cross(&a, t);
                a.swap(t, pi);
                swap_cols(&mut a, t, pj);
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn min_abs(a: &[Vec<BigInt>], rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let m = a.len();
    let n = a[0].len();
    let mut best = (t, t);
    let cands = (t..m).map(|i| (i, t)).chain((t..n).map(|j| (t, j)));
    for (i, j) in cands {
        if !a[i][j].is_zero() && (a[best.0][best.1].is_zero() || a[i][j].abs() < a[best.0][best.1].abs()) {
            best = (i, j);
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn sparse(d: &[&[i64]]) -> SparseMatrix {
        let rows = d.len();
        let ncols = d.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::zero(rows, ncols);
        for (i, r) in d.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v != 0 {
                    m.cols[j].push((i as u32, v));
                }
            }
        }
        m
    }

    #[test]
    fn torsion_survives() {
        assert_eq!(invariant_factors(&sparse(&[&[2, 0], &[0, 3]])), big(&[1, 6]));
        assert_eq!(invariant_factors(&sparse(&[&[2, 4], &[6, 8]])), big(&[2, 4]));
        assert_eq!(invariant_factors(&sparse(&[&[1, 2], &[3, 4]])), big(&[1, 2]));
    }

    #[test]
    fn rank_of_zero_and_empty() {
        assert_eq!(rank(&SparseMatrix::zero(3, 2)), 0);
        assert_eq!(rank(&SparseMatrix::zero(0, 0)), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigints() {
        let huge = i64::MAX / 2;
        let m = sparse(&[&[1, huge], &[huge, 1], &[0, 7]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn projective_plane_boundary_torsion() {
        // ∂₂ of the 6-vertex real projective plane has a single 2 among its factors.
        let tris: [[u32; 3]; 10] = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
            [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
        ];
        let mut edges: Vec<[u32; 2]> = tris
            .iter()
            .flat_map(|t| [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]])
            .collect();
        edges.sort();
        edges.dedup();
        let mut m = SparseMatrix::zero(edges.len(), tris.len());
        for (j, t) in tris.iter().enumerate() {
            for (k, e) in [[t[1], t[2]], [t[0], t[2]], [t[0], t[1]]].iter().enumerate() {
                let i = edges.binary_search(e).unwrap();
                m.cols[j].push((i as u32, if k % 2 == 0 { 1 } else { -1 }));
            }
        }
        let f = invariant_factors(&m);
        assert_eq!(f.len(), 10);
        assert_eq!(f.iter().filter(|d| **d > BigInt::one()).cloned().collect::<Vec<_>>(), big(&[2]));
    }
}
