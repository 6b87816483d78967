//! Complete deterministic automata without initial or final states.
//!
//! States are the indices `0..n`. A state numbered `i` in the usual 1-based
//! textbook presentation is index `i - 1` here. The transition table is stored
//! letter-major: `row(j)` is the full selfmap induced by letter `j`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// A finite word over an automaton's alphabet, stored as letter indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

impl From<&[usize]> for Word {
    fn from(letters: &[usize]) -> Self {
        Word(letters.to_vec())
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A subset of `0..capacity`, bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    bits: Vec<u64>,
    capacity: usize,
}

impl StateSet {
    pub fn empty(capacity: usize) -> Self {
        StateSet {
            bits: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut set = Self::empty(capacity);
        for (i, word) in set.bits.iter_mut().enumerate() {
            let remaining = capacity - 64 * i;
            *word = if remaining >= 64 {
                u64::MAX
            } else {
                (1u64 << remaining) - 1
            };
        }
        set
    }

    pub fn from_states(capacity: usize, states: &[usize]) -> Result<Self> {
        let mut set = Self::empty(capacity);
        for &q in states {
            if q >= capacity {
                return Err(Error::StateOutOfRange { state: q, n: capacity });
            }
            set.insert(q);
        }
        Ok(set)
    }

    /// Builds a set from the low `capacity` bits of `mask`.
    ///
    /// Panics if `capacity > 64` or a bit at or above `capacity` is set.
    pub fn from_mask(capacity: usize, mask: u64) -> Self {
        assert!(capacity <= 64, "mask form holds at most 64 states");
        assert!(
            capacity == 64 || mask >> capacity == 0,
            "mask has bits beyond capacity"
        );
        let mut set = Self::empty(capacity);
        if capacity > 0 {
            set.bits[0] = mask;
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Panics if `q` is not below the capacity.
    pub fn insert(&mut self, q: usize) {
        assert!(q < self.capacity, "state {q} beyond capacity {}", self.capacity);
        self.bits[q / 64] |= 1 << (q % 64);
    }

    pub fn remove(&mut self, q: usize) {
        if q < self.capacity {
            self.bits[q / 64] &= !(1 << (q % 64));
        }
    }

    pub fn contains(&self, q: usize) -> bool {
        q < self.capacity && self.bits[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(64 * i + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A complete deterministic automaton `(Q, Σ, δ)` with `Q = 0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    n: usize,
    letters: Vec<String>,
    delta: Vec<Vec<usize>>,
}

fn check_letter_name(name: &str) -> Result<()> {
    let reason = if name.is_empty() {
        "empty"
    } else if name.chars().any(char::is_whitespace) {
        "contains whitespace"
    } else if name.starts_with('#') {
        "starts with '#'"
    } else {
        return Ok(());
    };
    Err(Error::InvalidLetterName {
        name: name.to_owned(),
        reason,
    })
}

impl Dfa {
    /// Builds an automaton from letter names and one transition row per letter.
    pub fn new<S: Into<String>>(letters: Vec<S>, delta: Vec<Vec<usize>>) -> Result<Self> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::NoLetters);
        }
        if letters.len() != delta.len() {
            return Err(Error::Usage(format!(
                "{} letter names but {} transition rows",
                letters.len(),
                delta.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in &letters {
            check_letter_name(name)?;
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateLetter(name.clone()));
            }
        }
        let n = delta[0].len();
        if n == 0 {
            return Err(Error::NoStates);
        }
        for (j, row) in delta.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RowLength {
                    letter: j,
                    found: row.len(),
                    expected: n,
                });
            }
            if let Some(&bad) = row.iter().find(|&&t| t >= n) {
                return Err(Error::StateOutOfRange { state: bad, n });
            }
        }
        Ok(Dfa { n, letters, delta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter_name(&self, j: usize) -> &str {
        &self.letters[j]
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    /// The selfmap of letter `j`. Panics if `j >= k`.
    pub fn row(&self, j: usize) -> &[usize] {
        &self.delta[j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.delta
    }

    fn check_state(&self, q: usize) -> Result<()> {
        if q < self.n {
            Ok(())
        } else {
            Err(Error::StateOutOfRange { state: q, n: self.n })
        }
    }

    fn check_letter(&self, j: usize) -> Result<()> {
        if j < self.k() {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                letter: j,
                k: self.k(),
            })
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.letters().iter().try_for_each(|&j| self.check_letter(j))
    }

    pub fn apply_letter(&self, q: usize, j: usize) -> Result<usize> {
        self.check_state(q)?;
        self.check_letter(j)?;
        Ok(self.delta[j][q])
    }

    /// `q.w`, folding the letters left to right.
    pub fn apply_word(&self, q: usize, w: &Word) -> Result<usize> {
        self.check_state(q)?;
        self.check_word(w)?;
        Ok(self.run(q, w.letters()))
    }

    pub(crate) fn run(&self, q: usize, letters: &[usize]) -> usize {
        letters.iter().fold(q, |q, &j| self.delta[j][q])
    }

    /// `S.w = { q.w | q ∈ S }`.
    pub fn image_of_set(&self, set: &StateSet, w: &Word) -> Result<StateSet> {
        if set.capacity() != self.n {
            return Err(Error::CapacityMismatch {
                found: set.capacity(),
                expected: self.n,
            });
        }
        self.check_word(w)?;
        let mut current = set.clone();
        for &j in w.letters() {
            let mut next = StateSet::empty(self.n);
            for q in current.iter() {
                next.insert(self.delta[j][q]);
            }
            current = next;
        }
        Ok(current)
    }

    /// `|Q.a_j|`.
    pub fn letter_rank(&self, j: usize) -> Result<usize> {
        self.check_letter(j)?;
        let mut image = StateSet::empty(self.n);
        for &t in &self.delta[j] {
            image.insert(t);
        }
        Ok(image.len())
    }

    pub fn is_idempotent_letter(&self, j: usize) -> Result<bool> {
        self.check_letter(j)?;
        let row = &self.delta[j];
        Ok(row.iter().all(|&t| row[t] == t))
    }

    /// Whether `q.w = q.w²` for every state.
    pub fn is_idempotent_word(&self, w: &Word) -> Result<bool> {
        self.check_word(w)?;
        Ok((0..self.n).all(|q| {
            let once = self.run(q, w.letters());
            self.run(once, w.letters()) == once
        }))
    }

    /// States fixed by every letter.
    pub fn find_sinks(&self) -> StateSet {
        let mut sinks = StateSet::empty(self.n);
        for q in 0..self.n {
            if self.delta.iter().all(|row| row[q] == q) {
                sinks.insert(q);
            }
        }
        sinks
    }

    /// States reachable from `q`, including `q` itself.
    pub fn reachable_from(&self, q: usize) -> StateSet {
        let mut seen = StateSet::empty(self.n);
        seen.insert(q);
        let mut stack = vec![q];
        while let Some(p) = stack.pop() {
            for row in &self.delta {
                let t = row[p];
                if !seen.contains(t) {
                    seen.insert(t);
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.reachable_from(0).len() != self.n {
            return false;
        }
        // every state must also reach 0: search the reversed graph
        let mut preds = vec![Vec::new(); self.n];
        for row in &self.delta {
            for (p, &t) in row.iter().enumerate() {
                preds[t].push(p);
            }
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    count += 1;
                    stack.push(p);
                }
            }
        }
        count == self.n
    }

    /// Restriction to a letter-closed set of states, re-indexed in ascending
    /// order of the members of `set`.
    pub fn subautomaton(&self, set: &StateSet) -> Result<Dfa> {
        if set.capacity() != self.n {
            return Err(Error::CapacityMismatch {
                found: set.capacity(),
                expected: self.n,
            });
        }
        if set.is_empty() {
            return Err(Error::EmptyStateSet);
        }
        let members = set.to_vec();
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &q) in members.iter().enumerate() {
            new_index[q] = i;
        }
        for &q in &members {
            for (j, row) in self.delta.iter().enumerate() {
                if !set.contains(row[q]) {
                    return Err(Error::NotClosed { state: q, letter: j });
                }
            }
        }
        let delta = self
            .delta
            .iter()
            .map(|row| members.iter().map(|&q| new_index[row[q]]).collect())
            .collect();
        Ok(Dfa {
            n: members.len(),
            letters: self.letters.clone(),
            delta,
        })
    }

    /// Same states, only the listed letters (in the given order).
    pub fn restrict_letters(&self, keep: &[usize]) -> Result<Dfa> {
        for &j in keep {
            self.check_letter(j)?;
        }
        Dfa::new(
            keep.iter().map(|&j| self.letters[j].clone()).collect(),
            keep.iter().map(|&j| self.delta[j].clone()).collect(),
        )
    }

    /// `A/π`, whose states are the classes of `pi`.
    pub fn quotient(&self, pi: &Congruence) -> Result<Dfa> {
        if pi.class_of.len() != self.n {
            return Err(Error::PartitionLength {
                found: pi.class_of.len(),
                expected: self.n,
            });
        }
        let c = pi.num_classes;
        let mut representative = vec![usize::MAX; c];
        for (q, &class) in pi.class_of.iter().enumerate().rev() {
            representative[class] = q;
        }
        let delta = self
            .delta
            .iter()
            .map(|row| {
                representative
                    .iter()
                    .map(|&q| pi.class_of[row[q]])
                    .collect()
            })
            .collect();
        Ok(Dfa {
            n: c,
            letters: self.letters.clone(),
            delta,
        })
    }

    /// Parses whitespace-separated letter names into a word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace()
            .map(|name| {
                self.letter_index(name)
                    .ok_or_else(|| Error::UnknownLetter(name.to_owned()))
            })
            .collect()
    }

    /// Renders a word as space-separated letter names.
    pub fn format_word(&self, w: &Word) -> String {
        w.letters()
            .iter()
            .map(|&j| self.letters[j].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A partition of the states compatible with every letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    class_of: Vec<usize>,
    num_classes: usize,
}

impl Congruence {
    /// Validates `class_of` against `dfa`. Class labels are arbitrary and get
    /// renumbered in order of first appearance.
    pub fn new(dfa: &Dfa, class_of: &[usize]) -> Result<Self> {
        if class_of.len() != dfa.n() {
            return Err(Error::PartitionLength {
                found: class_of.len(),
                expected: dfa.n(),
            });
        }
        let mut relabel = std::collections::HashMap::new();
        let class_of: Vec<usize> = class_of
            .iter()
            .map(|label| {
                let next = relabel.len();
                *relabel.entry(*label).or_insert(next)
            })
            .collect();
        let num_classes = relabel.len();

        // Comparing each state against the first member of its class suffices,
        // since class equality is transitive.
        let mut first = vec![usize::MAX; num_classes];
        for (q, &c) in class_of.iter().enumerate() {
            if first[c] == usize::MAX {
                first[c] = q;
                continue;
            }
            let p = first[c];
            for (j, row) in dfa.rows().iter().enumerate() {
                if class_of[row[p]] != class_of[row[q]] {
                    return Err(Error::NotCongruence { p, q, letter: j });
                }
            }
        }
        Ok(Congruence {
            class_of,
            num_classes,
        })
    }

    pub fn identity(dfa: &Dfa) -> Self {
        Congruence {
            class_of: (0..dfa.n()).collect(),
            num_classes: dfa.n(),
        }
    }

    pub fn total(dfa: &Dfa) -> Self {
        Congruence {
            class_of: vec![0; dfa.n()],
            num_classes: 1,
        }
    }

    pub fn class_of(&self, q: usize) -> usize {
        self.class_of[q]
    }

    pub fn classes(&self) -> &[usize] {
        &self.class_of
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }
}
