use std::cmp::Ordering;
use std::collections::HashSet;
use std::ops::Deref;

use super::matrix::{CoxeterMatrix, Gen, GenSet, Order};

/// A word in the generators. Ordered ShortLex: length first, then lexicographically
/// by generator index (input order).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn support(&self) -> GenSet {
        GenSet::from_gens(self.0.iter().copied())
    }

    pub fn count(&self, g: Gen) -> usize {
        self.0.iter().filter(|&&x| x == g).count()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn has_adjacent_repeat(&self) -> bool {
        self.0.windows(2).any(|w| w[0] == w[1])
    }

    pub fn concat(&self, other: &[Gen]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }
}

impl Deref for Word {
    type Target = [Gen];

    fn deref(&self) -> &[Gen] {
        &self.0
    }
}

impl From<Vec<Gen>> for Word {
    fn from(v: Vec<Gen>) -> Self {
        Word(v)
    }
}

impl From<&[Gen]> for Word {
    fn from(v: &[Gen]) -> Self {
        Word(v.to_vec())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Alternating word `a b a b …` of the given length.
pub fn alternating(a: Gen, b: Gen, len: usize) -> Vec<Gen> {
    (0..len).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

/// All words obtained from `w` by one braid move.
pub fn braid_neighbors(matrix: &CoxeterMatrix, w: &[Gen]) -> Vec<Vec<Gen>> {
    let mut out = Vec::new();
    if w.len() < 2 {
        return out;
    }
    for i in 0..w.len() - 1 {
        let (a, b) = (w[i], w[i + 1]);
        if a == b {
            continue;
        }
        let m = match matrix.m(a, b) {
            Order::Finite(m) => m as usize,
            Order::Infinite => continue,
        };
        if i + m > w.len() {
            continue;
        }
        let run = &w[i..i + m];
        if run.iter().enumerate().all(|(k, &x)| x == if k % 2 == 0 { a } else { b }) {
            let mut next = w.to_vec();
            next[i..i + m].copy_from_slice(&alternating(b, a, m));
            out.push(next);
        }
    }
    out
}

/// Closure of `{w}` under braid moves, sorted ShortLex.
pub fn braid_closure(matrix: &CoxeterMatrix, w: &[Gen]) -> Vec<Word> {
    let mut seen: HashSet<Vec<Gen>> = HashSet::new();
    seen.insert(w.to_vec());
    let mut stack = vec![w.to_vec()];
    while let Some(cur) = stack.pop() {
        for next in braid_neighbors(matrix, &cur) {
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<Word> = seen.into_iter().map(Word).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sysa() -> CoxeterMatrix {
        CoxeterMatrix::parse("generators: s t\nm: s t 4").unwrap()
    }

    #[test]
    fn shortlex_order() {
        assert!(Word(vec![1]) < Word(vec![0, 0]));
        assert!(Word(vec![0, 1]) < Word(vec![1, 0]));
    }

    #[test]
    fn longest_word_has_two_expressions() {
        let class = braid_closure(&sysa(), &[0, 1, 0, 1]);
        assert_eq!(class, vec![Word(vec![0, 1, 0, 1]), Word(vec![1, 0, 1, 0])]);
    }

    #[test]
    fn single_letter_is_alone() {
        assert_eq!(braid_closure(&sysa(), &[0]), vec![Word(vec![0])]);
    }

    #[test]
    fn commuting_letters_swap() {
        let m = CoxeterMatrix::parse("generators: a b c\nm: a b 2").unwrap();
        let class = braid_closure(&m, &[0, 1, 2]);
        assert_eq!(class.len(), 2);
        assert!(class.contains(&Word(vec![1, 0, 2])));
    }
}
