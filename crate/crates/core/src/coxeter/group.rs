//! The word problem: canonical ShortLex normal forms computed from braid classes.
//!
//! Every element is stored as its ShortLex-minimal reduced word. The full set of
//! reduced words of an element is its braid class (Tits), which is memoized per
//! canonical word; left and right descents, multiplication by generators and
//! coset representatives are all read off these classes.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, RwLock};

use serde::Serialize;

use super::matrix::{CoxeterMatrix, Gen, GenSet};
use super::word::{braid_closure, Word};
use crate::error::{Error, Result};

/// A group element, carried by its canonical (ShortLex-minimal reduced) word.
#[derive(Clone, Debug)]
pub struct Element {
    word: Word,
    support: GenSet,
}

impl Element {
    pub(crate) fn from_canonical(word: Word) -> Self {
        let support = word.support();
        Element { word, support }
    }

    pub fn identity() -> Self {
        Element { word: Word::empty(), support: GenSet::EMPTY }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `S(w)`: the generators occurring in any reduced expression.
    pub fn support(&self) -> GenSet {
        self.support
    }

    /// Number of occurrences of `g` in the canonical word.
    pub fn count(&self, g: Gen) -> usize {
        self.word.count(g)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state)
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word.cmp(&other.word)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A Coxeter system together with a memo of braid classes.
///
/// The memo maps a canonical word to the sorted list of all reduced words of the
/// element. Concurrent readers share it; concurrent writers only ever insert the
/// value that any other writer would insert for the same key.
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    classes: RwLock<HashMap<Word, Arc<Vec<Word>>>>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup").field("generators", &self.matrix.names()).finish()
    }
}

impl CoxeterGroup {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let mut map = HashMap::new();
        map.insert(Word::empty(), Arc::new(vec![Word::empty()]));
        CoxeterGroup { matrix, classes: RwLock::new(map) }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_even(&self) -> bool {
        self.matrix.is_even()
    }

    pub fn identity(&self) -> Element {
        Element::identity()
    }

    pub fn generator(&self, s: Gen) -> Element {
        Element::from_canonical(Word(vec![s]))
    }

    pub fn format(&self, e: &Element) -> String {
        self.matrix.format_word(e.word())
    }

    /// The braid class of an arbitrary word (closure under braid moves).
    pub fn braid_class(&self, word: &[Gen]) -> Vec<Word> {
        braid_closure(&self.matrix, word)
    }

    /// A word is reduced iff no word in its braid class has two equal adjacent letters.
    pub fn is_reduced(&self, word: &[Gen]) -> bool {
        !self.braid_class(word).iter().any(Word::has_adjacent_repeat)
    }

    fn cached(&self, canonical: &Word) -> Option<Arc<Vec<Word>>> {
        self.classes.read().expect("class cache poisoned").get(canonical).cloned()
    }

    fn insert(&self, class: Vec<Word>) -> Element {
        debug_assert!(!class.is_empty());
        let canonical = class[0].clone();
        let mut map = self.classes.write().expect("class cache poisoned");
        map.entry(canonical.clone()).or_insert_with(|| Arc::new(class));
        Element::from_canonical(canonical)
    }

    /// Element represented by a word already known to be reduced.
    pub fn from_reduced(&self, word: &[Gen]) -> Element {
        let class = braid_closure(&self.matrix, word);
        debug_assert!(!class.iter().any(Word::has_adjacent_repeat), "word is not reduced");
        self.insert(class)
    }

    /// All reduced words of `e`, sorted ShortLex (so the first is canonical).
    pub fn reduced_words(&self, e: &Element) -> Arc<Vec<Word>> {
        if let Some(c) = self.cached(e.word()) {
            return c;
        }
        let class = braid_closure(&self.matrix, e.word());
        let arc = Arc::new(class);
        self.classes
            .write()
            .expect("class cache poisoned")
            .entry(e.word().clone())
            .or_insert_with(|| arc.clone())
            .clone()
    }

    pub fn has_right_descent(&self, e: &Element, s: Gen) -> bool {
        self.reduced_words(e).iter().any(|w| w.last() == Some(&s))
    }

    pub fn has_left_descent(&self, e: &Element, s: Gen) -> bool {
        self.reduced_words(e).iter().any(|w| w.first() == Some(&s))
    }

    pub fn right_descents(&self, e: &Element) -> GenSet {
        self.reduced_words(e).iter().filter_map(|w| w.last().copied()).collect()
    }

    pub fn left_descents(&self, e: &Element) -> GenSet {
        self.reduced_words(e).iter().filter_map(|w| w.first().copied()).collect()
    }

    /// `e · s`.
    pub fn mul_gen(&self, e: &Element, s: Gen) -> Element {
        let class = self.reduced_words(e);
        if class.iter().any(|w| w.last() == Some(&s)) {
            // Reduced words of es are exactly the prefixes of reduced words of e ending in s.
            let mut shorter: Vec<Word> = class
                .iter()
                .filter(|w| w.last() == Some(&s))
                .map(|w| Word(w[..w.len() - 1].to_vec()))
                .collect();
            shorter.sort();
            self.insert(shorter)
        } else {
            let longer = braid_closure(&self.matrix, &e.word().concat(&[s]));
            self.insert(longer)
        }
    }

    /// `s · e`.
    pub fn gen_mul(&self, s: Gen, e: &Element) -> Element {
        let class = self.reduced_words(e);
        if class.iter().any(|w| w.first() == Some(&s)) {
            let mut shorter: Vec<Word> = class
                .iter()
                .filter(|w| w.first() == Some(&s))
                .map(|w| Word(w[1..].to_vec()))
                .collect();
            shorter.sort();
            self.insert(shorter)
        } else {
            let mut letters = vec![s];
            letters.extend_from_slice(e.word());
            self.insert(braid_closure(&self.matrix, &letters))
        }
    }

    /// Canonical element of an arbitrary word.
    pub fn normal_form(&self, word: &[Gen]) -> Element {
        word.iter().fold(self.identity(), |acc, &s| self.mul_gen(&acc, s))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        b.word().iter().fold(a.clone(), |acc, &s| self.mul_gen(&acc, s))
    }

    pub fn inverse(&self, a: &Element) -> Element {
        let rev: Vec<Word> = {
            let mut r: Vec<Word> = self.reduced_words(a).iter().map(Word::reversed).collect();
            r.sort();
            r
        };
        self.insert(rev)
    }

    /// `l(xw) > l(w)` for all `x ∈ X` and `l(wy) > l(w)` for all `y ∈ Y`.
    pub fn is_xy_reduced(&self, e: &Element, x: GenSet, y: GenSet) -> bool {
        self.left_descents(e).intersection(x).is_empty() && self.right_descents(e).intersection(y).is_empty()
    }

    /// The unique minimal-length element of `e W_T`, by greedy right stripping.
    pub fn coset_min_rep(&self, e: &Element, t: GenSet) -> Element {
        let mut cur = e.clone();
        loop {
            let d = self.right_descents(&cur).intersection(t);
            match d.iter().next() {
                Some(s) => cur = self.mul_gen(&cur, s),
                None => return cur,
            }
        }
    }

    /// The unique minimal-length element of `W_X e`.
    pub fn left_coset_min_rep(&self, x: GenSet, e: &Element) -> Element {
        let mut cur = e.clone();
        loop {
            let d = self.left_descents(&cur).intersection(x);
            match d.iter().next() {
                Some(s) => cur = self.gen_mul(s, &cur),
                None => return cur,
            }
        }
    }

    /// The minimal element of the double coset `W_X e W_Y`.
    pub fn double_coset_min_rep(&self, x: GenSet, e: &Element, y: GenSet) -> Element {
        let mut cur = e.clone();
        loop {
            if let Some(s) = self.left_descents(&cur).intersection(x).iter().next() {
                cur = self.gen_mul(s, &cur);
            } else if let Some(s) = self.right_descents(&cur).intersection(y).iter().next() {
                cur = self.mul_gen(&cur, s);
            } else {
                return cur;
            }
        }
    }

    /// Whether `e ∈ W_X · W_Y`.
    pub fn in_product(&self, x: GenSet, e: &Element, y: GenSet) -> bool {
        self.double_coset_min_rep(x, e, y).is_identity()
    }

    /// All elements of the finite special subgroup `W_T`, ShortLex sorted.
    ///
    /// Loops forever on infinite `W_T`; callers check sphericity first.
    pub fn parabolic_elements(&self, t: GenSet) -> Vec<Element> {
        let mut all = vec![self.identity()];
        let mut frontier = vec![self.identity()];
        let mut seen: std::collections::HashSet<Element> = all.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for e in &frontier {
                for s in t.iter() {
                    if self.has_right_descent(e, s) {
                        continue;
                    }
                    let f = self.mul_gen(e, s);
                    if seen.insert(f.clone()) {
                        next.push(f);
                    }
                }
            }
            next.sort();
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    /// `g_VT`: delete the letters of `V − T` from `e ∈ W_V`. Defined on even systems,
    /// where it is a homomorphism `W_V → W_T`.
    pub fn g_vt(&self, e: &Element, v: GenSet, t: GenSet) -> Result<Element> {
        self.matrix.require_even()?;
        if !e.support().is_subset(v) {
            return Err(Error::SupportNotContained(self.format(e), self.matrix.format_set(v)));
        }
        let kept: Vec<Gen> = e.word().iter().copied().filter(|&g| t.contains(g)).collect();
        Ok(self.normal_form(&kept))
    }

    /// Parity of the number of `t`s in any expression of `e` (even systems only).
    pub fn t_parity(&self, e: &Element, t: Gen) -> Result<Parity> {
        self.matrix.require_even()?;
        Ok(Parity::of(e.count(t)))
    }

    /// `{s, t} ⊆ S(e)` and the `t`-count is even and at least two.
    pub fn is_t_even(&self, e: &Element, s: Gen, t: Gen) -> Result<bool> {
        self.matrix.require_even()?;
        let c = e.count(t);
        Ok(e.support().contains(s) && c >= 2 && c.is_multiple_of(2))
    }
}
