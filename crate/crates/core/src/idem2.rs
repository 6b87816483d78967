//! Automata with exactly two idempotent letters.
//!
//! A strongly connected one is either the flip-flop or not synchronizing; the
//! classifier follows the alternating `(ab)^k` cycle through state 0 to tell
//! which. An automaton with a unique sink is reset by peeling off states that
//! have no predecessors, one letter per state, which gives a reset word of
//! length at most `n - 1`.

use crate::analysis::verify_reset_word;
use crate::dfa::{Dfa, StateSet, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoIdemClassification {
    /// The 2-state flip-flop; any single letter resets it.
    FlipFlop { q0: usize, p0: usize },
    /// The alternating cycle through `q0` has length at least 2. Entry `i` is
    /// `(q_i, p_i)` with `q_i.a = p_i`, `q_i.b = q_i`, `p_i.a = p_i` and
    /// `p_i.b = q_{i+1 mod k}`, where `a` is `moving_letter`.
    NotSynchronizing {
        moving_letter: usize,
        cycle: Vec<(usize, usize)>,
    },
    NotApplicable { reason: String },
}

impl TwoIdemClassification {
    pub fn cycle_length(&self) -> Option<usize> {
        match self {
            TwoIdemClassification::FlipFlop { .. } => Some(1),
            TwoIdemClassification::NotSynchronizing { cycle, .. } => Some(cycle.len()),
            TwoIdemClassification::NotApplicable { .. } => None,
        }
    }
}

fn not_applicable(reason: impl Into<String>) -> TwoIdemClassification {
    TwoIdemClassification::NotApplicable {
        reason: reason.into(),
    }
}

fn two_idempotent_letters(dfa: &Dfa) -> bool {
    dfa.k() == 2 && (0..2).all(|j| dfa.is_idempotent_letter(j).expect("in range"))
}

/// Classifies a strongly connected automaton with two idempotent letters.
pub fn classify_strongly_connected_2idem(dfa: &Dfa) -> TwoIdemClassification {
    if dfa.k() != 2 {
        return not_applicable(format!("needs exactly 2 letters, found {}", dfa.k()));
    }
    if !two_idempotent_letters(dfa) {
        return not_applicable("a letter is not idempotent");
    }
    if dfa.n() < 2 {
        return not_applicable("needs at least 2 states");
    }
    if !dfa.is_strongly_connected() {
        return not_applicable("not strongly connected");
    }

    let q0 = 0;
    let Some(a) = (0..2).find(|&j| dfa.row(j)[q0] != q0) else {
        return not_applicable("state 0 is a sink");
    };
    let b = 1 - a;
    let (row_a, row_b) = (dfa.row(a), dfa.row(b));

    let mut cycle = Vec::new();
    let mut q = q0;
    loop {
        let p = row_a[q];
        cycle.push((q, p));
        q = row_b[p];
        if q == q0 {
            break;
        }
        if cycle.len() > dfa.n() {
            return not_applicable("alternating walk from state 0 does not close");
        }
    }

    if cycle.len() == 1 {
        // {q0, p0} is closed, so strong connectivity forces n = 2
        if dfa.n() != 2 {
            return not_applicable("closed pair in a larger automaton");
        }
        let (q0, p0) = cycle[0];
        TwoIdemClassification::FlipFlop { q0, p0 }
    } else {
        TwoIdemClassification::NotSynchronizing {
            moving_letter: a,
            cycle,
        }
    }
}

/// States `q` with no `p ≠ q` such that `p.x = q` for some letter `x`.
pub fn predecessor_free_states(dfa: &Dfa) -> StateSet {
    let mut has_pred = vec![false; dfa.n()];
    for row in dfa.rows() {
        for (p, &q) in row.iter().enumerate() {
            if p != q {
                has_pred[q] = true;
            }
        }
    }
    let mut free = StateSet::empty(dfa.n());
    for (q, _) in has_pred.iter().enumerate().filter(|(_, &h)| !h) {
        free.insert(q);
    }
    free
}

/// Reset word of length at most `n - 1` for a synchronizing automaton with
/// two idempotent letters and a unique sink.
///
/// Repeatedly removes the lowest predecessor-free non-sink state `q` of the
/// remaining subautomaton and appends the lowest letter moving `q`.
pub fn synchronize_sink_2idem(dfa: &Dfa) -> Result<Word> {
    if dfa.k() != 2 {
        return Err(Error::Usage(format!(
            "needs exactly 2 letters, found {}",
            dfa.k()
        )));
    }
    if !two_idempotent_letters(dfa) {
        return Err(Error::Usage("both letters must be idempotent".into()));
    }
    let sinks = dfa.find_sinks();
    if sinks.len() != 1 {
        return Err(Error::Usage(format!(
            "needs a unique sink, found {}",
            sinks.len()
        )));
    }
    let sink = sinks.iter().next().expect("one sink");
    let n = dfa.n();

    let mut alive = StateSet::full(n);
    let mut word = Word::empty();
    while alive.len() > 1 {
        let mut has_pred = vec![false; n];
        for row in dfa.rows() {
            for p in alive.iter() {
                if row[p] != p {
                    has_pred[row[p]] = true;
                }
            }
        }
        let Some(q) = alive.iter().find(|&q| q != sink && !has_pred[q]) else {
            return Err(Error::NoPredecessorFree {
                remaining: alive.len(),
            });
        };
        let letter = (0..2)
            .find(|&j| dfa.row(j)[q] != q)
            .expect("only the sink is fixed by both letters");
        word.push(letter);
        alive.remove(q);
    }

    if !verify_reset_word(dfa, &word)? {
        return Err(Error::Usage(
            "constructed word does not reset the automaton".into(),
        ));
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::is_synchronizing;
    use crate::generators::{flipflop, ladder};

    fn eq5_cycle() -> Dfa {
        // q0=0, p0=1, q1=2, p1=3
        Dfa::new(vec!["a", "b"], vec![vec![1, 1, 3, 3], vec![0, 2, 2, 0]]).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_strongly_connected_2idem(&flipflop()),
            TwoIdemClassification::FlipFlop { q0: 0, p0: 1 }
        );
        let c = classify_strongly_connected_2idem(&eq5_cycle());
        assert_eq!(
            c,
            TwoIdemClassification::NotSynchronizing {
                moving_letter: 0,
                cycle: vec![(0, 1), (2, 3)],
            }
        );
        assert_eq!(c.cycle_length(), Some(2));
        assert!(!is_synchronizing(&eq5_cycle()));
        assert!(matches!(
            classify_strongly_connected_2idem(&ladder(5).unwrap()),
            TwoIdemClassification::NotApplicable { .. }
        ));
        let three = Dfa::new(vec!["a", "b", "c"], vec![vec![0, 0]; 3]).unwrap();
        assert!(matches!(
            classify_strongly_connected_2idem(&three),
            TwoIdemClassification::NotApplicable { .. }
        ));
    }

    #[test]
    fn predecessor_free() {
        assert_eq!(predecessor_free_states(&ladder(5).unwrap()).to_vec(), vec![0]);
        assert!(predecessor_free_states(&flipflop()).is_empty());
        let one = Dfa::new(vec!["a", "b"], vec![vec![0], vec![0]]).unwrap();
        assert_eq!(predecessor_free_states(&one).to_vec(), vec![0]);
    }

    #[test]
    fn synchronizer_on_ladders() {
        let i5 = ladder(5).unwrap();
        let w = synchronize_sink_2idem(&i5).unwrap();
        assert_eq!(i5.format_word(&w), "b a b a");
        assert_eq!(synchronize_sink_2idem(&ladder(3).unwrap()).unwrap().len(), 2);
        let one = Dfa::new(vec!["a", "b"], vec![vec![0], vec![0]]).unwrap();
        assert_eq!(synchronize_sink_2idem(&one).unwrap(), Word::empty());
    }

    #[test]
    fn synchronizer_rejects_bad_input() {
        assert!(matches!(
            synchronize_sink_2idem(&flipflop()),
            Err(Error::Usage(_))
        ));
        let c3 = crate::generators::cerny(3).unwrap();
        assert!(matches!(synchronize_sink_2idem(&c3), Err(Error::Usage(_))));
        // two idempotent letters, unique sink 2, but {0,1} is a closed flip-flop
        // with no predecessor-free state
        let stuck = Dfa::new(vec!["a", "b"], vec![vec![0, 0, 2], vec![1, 1, 2]]).unwrap();
        assert_eq!(
            synchronize_sink_2idem(&stuck),
            Err(Error::NoPredecessorFree { remaining: 3 })
        );
    }
}
