//! Finite special subgroups `W_T` held as complete multiplication tables.

use super::ball::CayleyBall;
use super::matrix::{CoxeterMatrix, Gen, GenSet};
use super::spherical::longest_length;
use super::word::Word;
use crate::Result;

/// All of `W_T` for a spherical `T`, indexed in ShortLex order of the global
/// generator numbering.
#[derive(Clone, Debug)]
pub struct FiniteParabolic {
    set: GenSet,
    local_to_global: Vec<Gen>,
    global_to_local: [Option<Gen>; 64],
    ball: CayleyBall,
    words: Vec<Word>,
}

impl FiniteParabolic {
    pub fn new(matrix: &CoxeterMatrix, set: GenSet) -> Result<Self> {
        let radius = longest_length(matrix, set)?;
        let local_to_global: Vec<Gen> = set.iter().collect();
        let mut global_to_local = [None; 64];
        for (i, &g) in local_to_global.iter().enumerate() {
            global_to_local[g as usize] = Some(i as Gen);
        }
        // Restriction keeps the relative order of generators, so local ShortLex
        // order agrees with global ShortLex order.
        let ball = CayleyBall::new(&matrix.restrict(set), radius);
        let words = ball
            .elements()
            .iter()
            .map(|e| Word(e.word().iter().map(|&g| local_to_global[g as usize]).collect()))
            .collect();
        Ok(FiniteParabolic { set, local_to_global, global_to_local, ball, words })
    }

    pub fn set(&self) -> GenSet {
        self.set
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Canonical word of element `idx`, in global generators.
    pub fn word(&self, idx: u32) -> &Word {
        &self.words[idx as usize]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Index of the longest element.
    pub fn longest(&self) -> u32 {
        (self.words.len() - 1) as u32
    }

    fn local(&self, g: Gen) -> Gen {
        self.global_to_local[g as usize].expect("generator outside the parabolic subgroup")
    }

    pub fn mul_gen(&self, idx: u32, g: Gen) -> u32 {
        self.ball.mul_gen(idx, self.local(g)).expect("finite group table is complete")
    }

    /// Product of the letters of `word` lying in `T`; the others are deleted.
    /// On an even system this is the deletion map `g_VT`.
    pub fn delete_outside(&self, word: &[Gen]) -> u32 {
        word.iter()
            .filter(|&&g| self.set.contains(g))
            .fold(0, |acc, &g| self.mul_gen(acc, g))
    }

    pub fn mul_word(&self, idx: u32, word: &[Gen]) -> u32 {
        word.iter().fold(idx, |acc, &g| self.mul_gen(acc, g))
    }

    pub fn index_of(&self, word: &[Gen]) -> u32 {
        self.mul_word(0, word)
    }

    pub fn right_descents(&self, idx: u32) -> GenSet {
        self.ball.right_descents(idx).iter().map(|g| self.local_to_global[g as usize]).collect()
    }

    /// Minimal representative of `idx · W_V` for `V ⊆ T`.
    pub fn coset_min_rep(&self, idx: u32, v: GenSet) -> u32 {
        let local: GenSet = v.intersection(self.set).iter().map(|g| self.local(g)).collect();
        self.ball.coset_min_rep(idx, local)
    }

    /// The `(∅, V)`-reduced elements: one representative per coset of `W_V`.
    pub fn min_reps(&self, v: GenSet) -> Vec<u32> {
        (0..self.len() as u32)
            .filter(|&i| self.right_descents(i).intersection(v).is_empty())
            .collect()
    }

    pub fn inverse(&self, idx: u32) -> u32 {
        self.index_of(&self.words[idx as usize].reversed())
    }

    pub fn multiply(&self, a: u32, b: u32) -> u32 {
        self.mul_word(a, &self.words[b as usize])
    }
}
