//! Breadth-first enumeration of the ball of radius `R` in the Cayley graph.
//!
//! Layers are built from right descent sets alone: for `ws > w`, a generator
//! `r ≠ s` is a right descent of `ws` iff the `{r, s}`-parabolic part of `w`
//! (obtained by stripping `r, s, r, …` off the right) has length `m_rs − 1`.
//! The creating pair of each new element is `(w, s)` with `s` its smallest right
//! descent; every other pair `(w, s)` finds its target through the dihedral
//! relation. ShortLex canonical words come from
//! `canon(v) = min_{r ∈ D_R(v)} canon(vr)·r`.

use std::collections::HashMap;

use super::group::Element;
use super::matrix::{CoxeterMatrix, Gen, GenSet, Order};
use super::word::{alternating, Word};

const NONE: u32 = u32::MAX;

/// The elements of length `≤ R`, indexed in ShortLex order, with the right
/// multiplication table restricted to the ball.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    radius: usize,
    rank: usize,
    elements: Vec<Element>,
    descents: Vec<GenSet>,
    right: Vec<u32>,
    layer_starts: Vec<usize>,
    index: HashMap<Word, u32>,
}

impl CayleyBall {
    pub fn new(matrix: &CoxeterMatrix, radius: usize) -> Self {
        let n = matrix.rank();
        let mut words: Vec<Word> = vec![Word::empty()];
        let mut descents: Vec<GenSet> = vec![GenSet::EMPTY];
        let mut right: Vec<u32> = vec![NONE; n];
        let mut layer_starts = vec![0usize];

        for k in 0..radius {
            let start = layer_starts[k];
            let end = words.len();
            // Pass 1: create every element of layer k+1 from its canonical pair.
            let mut created: Vec<(u32, Gen)> = Vec::new();
            let mut new_descents: Vec<GenSet> = Vec::new();
            let mut pending: Vec<(u32, Gen, Gen)> = Vec::new();
            for w in start..end {
                let dw = descents[w];
                for s in 0..n as Gen {
                    if dw.contains(s) {
                        continue;
                    }
                    let d = descent_set_of_product(matrix, &descents, &right, n, w as u32, s);
                    let min = d.iter().next().expect("s is a descent");
                    if min == s {
                        created.push((w as u32, s));
                        new_descents.push(d);
                    } else {
                        pending.push((w as u32, s, min));
                    }
                }
            }
            // Temporary ids: end + position in `created`.
            let base = end as u32;
            for (i, &(w, s)) in created.iter().enumerate() {
                let v = base + i as u32;
                right[w as usize * n + s as usize] = v;
            }
            right.resize(right.len() + created.len() * n, NONE);
            for (i, &(w, s)) in created.iter().enumerate() {
                right[(end + i) * n + s as usize] = w;
            }
            descents.extend(new_descents.iter().copied());
            // Pass 2: the remaining pairs (w, s) land on elements created above.
            for &(w, s, r) in &pending {
                let m = matrix.m(r, s).finite().expect("finite by construction") as usize;
                // w = w' · x with x alternating of length m-1 ending in r.
                let mut base_elt = w;
                let mut next = r;
                for _ in 0..m - 1 {
                    base_elt = right[base_elt as usize * n + next as usize];
                    next = if next == r { s } else { r };
                }
                // ws·r = w' · y, y alternating of length m-1 ending in s.
                let y: Vec<Gen> = alternating(s, r, m - 1).into_iter().rev().collect();
                let mut w2 = base_elt;
                for &g in &y {
                    w2 = right[w2 as usize * n + g as usize];
                    debug_assert_ne!(w2, NONE);
                }
                let v = right[w2 as usize * n + r as usize];
                debug_assert!(v >= base);
                right[w as usize * n + s as usize] = v;
                right[v as usize * n + s as usize] = w;
            }
            // Canonical words for the new layer.
            for i in 0..created.len() {
                let v = end + i;
                let d = descents[v];
                let best = d
                    .iter()
                    .map(|r| words[right[v * n + r as usize] as usize].concat(&[r]))
                    .min()
                    .expect("non-identity element has a descent");
                words.push(best);
            }
            // Re-index the new layer in ShortLex order.
            let mut order: Vec<usize> = (end..words.len()).collect();
            order.sort_by(|&a, &b| words[a].cmp(&words[b]));
            let mut remap = vec![0u32; words.len() - end];
            for (new_pos, &old) in order.iter().enumerate() {
                remap[old - end] = (end + new_pos) as u32;
            }
            let fix = |x: u32| if x != NONE && x >= base { remap[(x - base) as usize] } else { x };
            let new_words: Vec<Word> = order.iter().map(|&o| words[o].clone()).collect();
            let new_desc: Vec<GenSet> = order.iter().map(|&o| descents[o]).collect();
            let new_rows: Vec<u32> = order
                .iter()
                .flat_map(|&o| right[o * n..(o + 1) * n].to_vec())
                .collect();
            words.truncate(end);
            words.extend(new_words);
            descents.truncate(end);
            descents.extend(new_desc);
            right.truncate(end * n);
            right.extend(new_rows);
            for x in right.iter_mut() {
                *x = fix(*x);
            }
            layer_starts.push(end);
        }
        layer_starts.push(words.len());

        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let elements = words.into_iter().map(Element::from_canonical).collect();
        CayleyBall { radius, rank: n, elements, descents, right, layer_starts, index }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, idx: u32) -> &Element {
        &self.elements[idx as usize]
    }

    /// Indices of the elements of length exactly `k`.
    pub fn layer(&self, k: usize) -> std::ops::Range<usize> {
        if k > self.radius {
            return 0..0;
        }
        self.layer_starts[k]..self.layer_starts[k + 1]
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        (0..=self.radius).map(|k| self.layer(k).len()).collect()
    }

    pub fn index_of(&self, e: &Element) -> Option<u32> {
        self.index.get(e.word()).copied()
    }

    pub fn index_of_word(&self, w: &Word) -> Option<u32> {
        self.index.get(w).copied()
    }

    pub fn right_descents(&self, idx: u32) -> GenSet {
        self.descents[idx as usize]
    }

    /// `idx · s` if it lies in the ball.
    pub fn mul_gen(&self, idx: u32, s: Gen) -> Option<u32> {
        let v = self.right[idx as usize * self.rank + s as usize];
        (v != NONE).then_some(v)
    }

    /// `idx · w`, following the table letter by letter.
    pub fn mul_word(&self, idx: u32, w: &[Gen]) -> Option<u32> {
        w.iter().try_fold(idx, |acc, &s| self.mul_gen(acc, s))
    }

    /// Minimal representative of `idx · W_T`, by greedy stripping.
    pub fn coset_min_rep(&self, idx: u32, t: GenSet) -> u32 {
        let mut cur = idx;
        while let Some(s) = self.descents[cur as usize].intersection(t).iter().next() {
            cur = self.right[cur as usize * self.rank + s as usize];
        }
        cur
    }
}

fn descent_set_of_product(
    matrix: &CoxeterMatrix,
    descents: &[GenSet],
    right: &[u32],
    n: usize,
    w: u32,
    s: Gen,
) -> GenSet {
    let mut d = GenSet::singleton(s);
    for r in 0..n as Gen {
        if r == s {
            continue;
        }
        let m = match matrix.m(r, s) {
            Order::Finite(m) => m as usize,
            Order::Infinite => continue,
        };
        let mut cur = w;
        let mut next = r;
        let mut len = 0;
        while len < m && descents[cur as usize].contains(next) {
            cur = right[cur as usize * n + next as usize];
            next = if next == r { s } else { r };
            len += 1;
        }
        if len == m - 1 {
            d = d.with(r);
        }
    }
    d
}
