//! Synchronizability, exact reset thresholds and the checks built on them.
//!
//! Synchronizability is decided by the quadratic pair test. Reset thresholds
//! come from a breadth-first search over the power automaton, starting at the
//! full state set; the first singleton reached gives the threshold and its
//! parent chain a witness.

use std::collections::HashMap;

use serde::Serialize;

use crate::dfa::{Dfa, StateSet, Word};
use crate::error::{Error, Result};
use crate::generators::{cerny, chi_encode, higgins_transform};

/// Largest state count the subset search accepts.
pub const MAX_SEARCH_STATES: usize = 63;

/// Default cap on the number of subsets the search may store.
pub const DEFAULT_MAX_SUBSETS: usize = 1 << 24;

/// Limits for [`reset_threshold`]. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_subsets: Option<usize>,
    pub max_depth: Option<usize>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_subsets: Some(DEFAULT_MAX_SUBSETS),
            max_depth: None,
        }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget {
            max_subsets: None,
            max_depth: None,
        }
    }

    pub fn with_max_subsets(max_subsets: usize) -> Result<Self> {
        if max_subsets == 0 {
            return Err(Error::Usage("subset budget must be positive".into()));
        }
        Ok(SearchBudget {
            max_subsets: Some(max_subsets),
            ..Self::default()
        })
    }

    pub fn with_max_depth(self, max_depth: usize) -> Result<Self> {
        if max_depth == 0 {
            return Err(Error::Usage("depth budget must be positive".into()));
        }
        Ok(SearchBudget {
            max_depth: Some(max_depth),
            ..self
        })
    }
}

/// Outcome of [`reset_threshold`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncResult {
    pub synchronizing: bool,
    pub threshold: Option<usize>,
    /// Lexicographically least among the shortest reset words.
    pub witness: Option<Word>,
    pub states_explored: usize,
    /// The budget ran out before the search resolved.
    pub truncated: bool,
}

impl SyncResult {
    fn not_synchronizing(states_explored: usize) -> Self {
        SyncResult {
            synchronizing: false,
            threshold: None,
            witness: None,
            states_explored,
            truncated: false,
        }
    }

    fn truncated(synchronizing: bool, states_explored: usize) -> Self {
        SyncResult {
            synchronizing,
            threshold: None,
            witness: None,
            states_explored,
            truncated: true,
        }
    }
}

/// Pair test: every pair of states can be merged by some word.
pub fn is_synchronizing(dfa: &Dfa) -> bool {
    let letters: Vec<usize> = (0..dfa.k()).collect();
    synchronizes_with_letters(dfa, &letters)
}

/// Pair test restricted to a subset of the alphabet. With no letters, only a
/// 1-state automaton is synchronizing.
pub fn synchronizes_with_letters(dfa: &Dfa, letters: &[usize]) -> bool {
    let n = dfa.n();
    if n == 1 {
        return true;
    }
    // preimages[l][q] = states sent to q by letters[l]
    let preimages: Vec<Vec<Vec<usize>>> = letters
        .iter()
        .map(|&j| {
            let mut pre = vec![Vec::new(); n];
            for (p, &q) in dfa.row(j).iter().enumerate() {
                pre[q].push(p);
            }
            pre
        })
        .collect();

    // Backward search from the diagonal over unordered pairs.
    let mut mergeable = vec![false; n * n];
    let mut queue: Vec<(usize, usize)> = (0..n).map(|q| (q, q)).collect();
    let mut merged_pairs = 0;
    let target = n * (n - 1) / 2;
    while let Some((p, q)) = queue.pop() {
        for pre in &preimages {
            for &p2 in &pre[p] {
                for &q2 in &pre[q] {
                    if p2 == q2 {
                        continue;
                    }
                    let (lo, hi) = if p2 < q2 { (p2, q2) } else { (q2, p2) };
                    if !mergeable[lo * n + hi] {
                        mergeable[lo * n + hi] = true;
                        merged_pairs += 1;
                        if merged_pairs == target {
                            return true;
                        }
                        queue.push((lo, hi));
                    }
                }
            }
        }
    }
    false
}

/// Per-letter lookup tables mapping each byte of a subset mask to the mask of
/// its image.
struct ImageTables {
    chunks: usize,
    // [letter][chunk][byte]
    tables: Vec<Vec<[u64; 256]>>,
}

impl ImageTables {
    fn new(dfa: &Dfa) -> Self {
        let n = dfa.n();
        let chunks = n.div_ceil(8);
        let tables = dfa
            .rows()
            .iter()
            .map(|row| {
                (0..chunks)
                    .map(|c| {
                        let mut table = [0u64; 256];
                        for byte in 1..256usize {
                            let low = byte.trailing_zeros() as usize;
                            let q = 8 * c + low;
                            let bit = if q < n { 1u64 << row[q] } else { 0 };
                            table[byte] = table[byte & (byte - 1)] | bit;
                        }
                        table
                    })
                    .collect()
            })
            .collect();
        ImageTables { chunks, tables }
    }

    fn image(&self, set: u64, letter: usize) -> u64 {
        let tables = &self.tables[letter];
        let mut out = 0;
        for (c, table) in tables.iter().enumerate().take(self.chunks) {
            out |= table[(set >> (8 * c)) as usize & 0xff];
        }
        out
    }
}

/// Exact reset threshold and lexicographically least shortest reset word.
pub fn reset_threshold(dfa: &Dfa, budget: &SearchBudget) -> Result<SyncResult> {
    let n = dfa.n();
    if n > MAX_SEARCH_STATES {
        return Err(Error::CapacityExceeded {
            n,
            max: MAX_SEARCH_STATES,
        });
    }
    if n == 1 {
        return Ok(SyncResult {
            synchronizing: true,
            threshold: Some(0),
            witness: Some(Word::empty()),
            states_explored: 1,
            truncated: false,
        });
    }
    if !is_synchronizing(dfa) {
        return Ok(SyncResult::not_synchronizing(0));
    }

    let tables = ImageTables::new(dfa);
    let full = (1u64 << n) - 1;
    // subset -> (parent subset, letter)
    let mut parents: HashMap<u64, (u64, usize)> = HashMap::new();
    parents.insert(full, (0, usize::MAX));
    let mut frontier = vec![full];
    let mut depth = 0;

    // Frontier order is the lexicographic order of the parent-chain words, so
    // the first singleton discovered carries the least shortest reset word.
    loop {
        if frontier.is_empty() {
            // unreachable when the pair test passed
            return Ok(SyncResult::not_synchronizing(parents.len()));
        }
        if budget.max_depth.is_some_and(|d| depth >= d) {
            return Ok(SyncResult::truncated(true, parents.len()));
        }
        let mut next = Vec::new();
        for &set in &frontier {
            for letter in 0..dfa.k() {
                let image = tables.image(set, letter);
                if parents.contains_key(&image) {
                    continue;
                }
                parents.insert(image, (set, letter));
                if image.count_ones() == 1 {
                    let witness = reconstruct(&parents, image);
                    debug_assert_eq!(witness.len(), depth + 1);
                    return Ok(SyncResult {
                        synchronizing: true,
                        threshold: Some(witness.len()),
                        witness: Some(witness),
                        states_explored: parents.len(),
                        truncated: false,
                    });
                }
                if budget.max_subsets.is_some_and(|m| parents.len() >= m) {
                    return Ok(SyncResult::truncated(true, parents.len()));
                }
                next.push(image);
            }
        }
        frontier = next;
        depth += 1;
    }
}

fn reconstruct(parents: &HashMap<u64, (u64, usize)>, mut set: u64) -> Word {
    let mut letters = Vec::new();
    while let Some(&(parent, letter)) = parents.get(&set) {
        if letter == usize::MAX {
            break;
        }
        letters.push(letter);
        set = parent;
    }
    letters.reverse();
    Word::new(letters)
}

/// Whether `Q.w` is a singleton.
pub fn verify_reset_word(dfa: &Dfa, w: &Word) -> Result<bool> {
    let image = dfa.image_of_set(&StateSet::full(dfa.n()), w)?;
    Ok(image.len() == 1)
}

/// Whether removing any single letter destroys synchronizability.
pub fn all_letters_essential(dfa: &Dfa) -> bool {
    (0..dfa.k()).all(|drop| {
        let rest: Vec<usize> = (0..dfa.k()).filter(|&j| j != drop).collect();
        !synchronizes_with_letters(dfa, &rest)
    })
}

/// More than two letters, synchronizing, and every reset word uses every letter.
pub fn is_proper(dfa: &Dfa) -> bool {
    dfa.k() > 2 && is_synchronizing(dfa) && all_letters_essential(dfa)
}

/// Idempotency and rank of every letter of `H(A)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubledLettersReport {
    pub base_n: usize,
    pub idempotent: Vec<bool>,
    pub ranks: Vec<usize>,
}

impl DoubledLettersReport {
    pub fn passed(&self) -> bool {
        self.idempotent.iter().all(|&i| i) && self.ranks.iter().all(|&r| r == self.base_n)
    }
}

pub fn check_doubled_letters(base: &Dfa) -> DoubledLettersReport {
    let h = higgins_transform(base).result;
    DoubledLettersReport {
        base_n: base.n(),
        idempotent: (0..h.k())
            .map(|j| h.is_idempotent_letter(j).expect("letter in range"))
            .collect(),
        ranks: (0..h.k())
            .map(|j| h.letter_rank(j).expect("letter in range"))
            .collect(),
    }
}

/// Compares `A` with `H(A)`: synchronizability, doubled threshold and the
/// encoded witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingReport {
    pub base: SyncResult,
    pub transformed: SyncResult,
    pub pair_test_base: bool,
    pub pair_test_transformed: bool,
    /// `χ(w)` for the base witness `w`, when there is one.
    pub encoded_witness: Option<Word>,
    pub encoded_witness_resets: Option<bool>,
}

impl DoublingReport {
    pub fn equivalence_holds(&self) -> bool {
        self.pair_test_base == self.pair_test_transformed
            && self.base.synchronizing == self.transformed.synchronizing
            && self.base.synchronizing == self.pair_test_base
    }

    /// `ret(H(A)) = 2·ret(A)`. A 1-state `A` is the exception: `H(A)` has two
    /// states, so its threshold is 1 rather than 0.
    pub fn doubling_holds(&self) -> bool {
        match (self.base.threshold, self.transformed.threshold) {
            (Some(0), Some(rh)) => rh == 1,
            (Some(r), Some(rh)) => rh == 2 * r,
            (None, None) => !self.base.synchronizing && !self.base.truncated,
            _ => false,
        }
    }

    /// `χ(w)` resets `H(A)` and has length `2|w|`. Vacuous for a 1-state `A`,
    /// whose empty witness cannot reset the 2-state `H(A)`.
    pub fn encoding_holds(&self) -> bool {
        match (&self.base.witness, &self.encoded_witness) {
            (Some(w), Some(_)) if w.is_empty() => true,
            (Some(w), Some(enc)) => {
                enc.len() == 2 * w.len() && self.encoded_witness_resets == Some(true)
            }
            (None, None) => !self.base.synchronizing,
            _ => false,
        }
    }

    pub fn truncated(&self) -> bool {
        self.base.truncated || self.transformed.truncated
    }

    pub fn passed(&self) -> bool {
        !self.truncated()
            && self.equivalence_holds()
            && self.doubling_holds()
            && self.encoding_holds()
    }
}

pub fn check_doubling(base: &Dfa, budget: &SearchBudget) -> Result<DoublingReport> {
    let image = higgins_transform(base);
    let base_result = reset_threshold(base, budget)?;
    let transformed = reset_threshold(&image.result, budget)?;
    let (encoded_witness, encoded_witness_resets) = match &base_result.witness {
        Some(w) => {
            let enc = chi_encode(&image, w)?;
            let resets = verify_reset_word(&image.result, &enc)?;
            (Some(enc), Some(resets))
        }
        None => (None, None),
    };
    Ok(DoublingReport {
        base: base_result,
        transformed,
        pair_test_base: is_synchronizing(base),
        pair_test_transformed: is_synchronizing(&image.result),
        encoded_witness,
        encoded_witness_resets,
    })
}

/// Facts about `B_m = H(C_{m/2})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProperFamilyReport {
    pub m: usize,
    pub letters: usize,
    pub all_idempotent: bool,
    pub ranks: Vec<usize>,
    pub proper: bool,
    pub threshold: Option<usize>,
    pub expected_threshold: usize,
}

impl ProperFamilyReport {
    pub fn passed(&self) -> bool {
        self.letters == 3
            && self.all_idempotent
            && self.ranks.iter().all(|&r| r == self.m / 2)
            && self.proper
            && self.threshold == Some(self.expected_threshold)
    }
}

/// `m²/2 − 2m + 2`, i.e. `2(m/2 − 1)²`.
pub fn proper_family_threshold(m: usize) -> usize {
    let half = m / 2;
    2 * (half - 1) * (half - 1)
}

pub fn check_proper_family(m: usize, budget: &SearchBudget) -> Result<ProperFamilyReport> {
    if m % 2 == 1 || m < 4 {
        return Err(Error::Usage(format!("proper family check needs an even m >= 4, got {m}")));
    }
    let b = higgins_transform(&cerny(m / 2)?).result;
    let result = reset_threshold(&b, budget)?;
    Ok(ProperFamilyReport {
        m,
        letters: b.k(),
        all_idempotent: (0..b.k()).all(|j| b.is_idempotent_letter(j).expect("in range")),
        ranks: (0..b.k()).map(|j| b.letter_rank(j).expect("in range")).collect(),
        proper: is_proper(&b),
        threshold: result.threshold,
        expected_threshold: proper_family_threshold(m),
    })
}

/// Structural and synchronization facts about one automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub states: usize,
    pub letters: Vec<String>,
    pub ranks: Vec<usize>,
    pub idempotent: Vec<bool>,
    pub sinks: Vec<usize>,
    pub strongly_connected: bool,
    pub synchronizing: bool,
    pub proper: bool,
    pub reset_threshold: Option<usize>,
    /// Letter names of the shortest reset word.
    pub witness: Option<Vec<String>>,
    pub subsets_explored: usize,
    pub truncated: bool,
    /// Set when the automaton is too large for subset search.
    pub search_skipped: bool,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain report")
    }
}

pub fn analyze(dfa: &Dfa, budget: &SearchBudget) -> AnalysisReport {
    let search = if dfa.n() <= MAX_SEARCH_STATES {
        Some(reset_threshold(dfa, budget).expect("within capacity"))
    } else {
        None
    };
    let synchronizing = is_synchronizing(dfa);
    AnalysisReport {
        states: dfa.n(),
        letters: dfa.letters().to_vec(),
        ranks: (0..dfa.k()).map(|j| dfa.letter_rank(j).expect("in range")).collect(),
        idempotent: (0..dfa.k())
            .map(|j| dfa.is_idempotent_letter(j).expect("in range"))
            .collect(),
        sinks: dfa.find_sinks().to_vec(),
        strongly_connected: dfa.is_strongly_connected(),
        synchronizing,
        proper: dfa.k() > 2 && synchronizing && all_letters_essential(dfa),
        reset_threshold: search.as_ref().and_then(|s| s.threshold),
        witness: search.as_ref().and_then(|s| {
            s.witness.as_ref().map(|w| {
                w.letters()
                    .iter()
                    .map(|&j| dfa.letter_name(j).to_owned())
                    .collect()
            })
        }),
        subsets_explored: search.as_ref().map_or(0, |s| s.states_explored),
        truncated: search.as_ref().is_some_and(|s| s.truncated),
        search_skipped: search.is_none(),
    }
}
