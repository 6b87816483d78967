//! Automaton families and the idempotent doubling transform `H(A)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dfa::{Dfa, Word};
use crate::error::{Error, Result};

/// The Černý automaton `C_n`: `s1` fixes every state except `n-1`, which it
/// sends to `0`; `s2` is the cyclic shift `i ↦ i+1 mod n`.
pub fn cerny(n: usize) -> Result<Dfa> {
    if n < 2 {
        return Err(Error::Usage(format!("cerny needs n >= 2, got {n}")));
    }
    let s1 = (0..n).map(|i| if i + 1 == n { 0 } else { i }).collect();
    let s2 = (0..n).map(|i| (i + 1) % n).collect();
    Dfa::new(vec!["s1", "s2"], vec![s1, s2])
}

/// The ladder `I_n` with two idempotent letters and the unique sink `n-1`.
///
/// In 1-based numbering, `a` moves even `i < n` to `i+1`, `b` moves odd
/// `i < n` to `i+1`, and everything else is fixed.
pub fn ladder(n: usize) -> Result<Dfa> {
    if n < 1 {
        return Err(Error::Usage("ladder needs n >= 1".into()));
    }
    // 0-based index i is 1-based i+1, so "1-based even" means "index odd".
    let a = (0..n)
        .map(|i| if i % 2 == 1 && i + 1 < n { i + 1 } else { i })
        .collect();
    let b = (0..n)
        .map(|i| if i % 2 == 0 && i + 1 < n { i + 1 } else { i })
        .collect();
    Dfa::new(vec!["a", "b"], vec![a, b])
}

/// The ladder with the sink's `b`-transition redirected to state 0.
///
/// At `n = 7` this is exactly the 7-state member of Gusev's series. For other
/// odd `n` it is a conjectural generalization whose reset threshold the
/// harness only reports.
pub fn gusev_like(n: usize) -> Result<Dfa> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Usage(format!(
            "gusev needs an odd n >= 3, got {n}"
        )));
    }
    let base = ladder(n)?;
    let a = base.row(0).to_vec();
    let mut b = base.row(1).to_vec();
    b[n - 1] = 0;
    Dfa::new(vec!["a", "b"], vec![a, b])
}

/// The 2-state flip-flop: `a` sends both states to 0, `b` sends both to 1.
pub fn flipflop() -> Dfa {
    Dfa::new(vec!["a", "b"], vec![vec![0, 0], vec![1, 1]]).expect("valid table")
}

fn default_letter_names(k: usize) -> Vec<String> {
    (0..k).map(|j| format!("l{}", j + 1)).collect()
}

/// `k` random idempotent letters on `n` states.
///
/// Each letter picks a nonempty image set uniformly among nonempty subsets,
/// fixes it pointwise and sends every other state to a uniform member of it.
pub fn random_idempotent(n: usize, k: usize, seed: u64) -> Result<Dfa> {
    if n < 1 || k < 1 {
        return Err(Error::Usage("random-idem needs n >= 1 and k >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..k)
        .map(|_| {
            let image: Vec<usize> = loop {
                let image: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                if !image.is_empty() {
                    break image;
                }
            };
            let mut row: Vec<usize> = (0..n).collect();
            for (q, target) in row.iter_mut().enumerate() {
                if image.binary_search(&q).is_err() {
                    *target = image[rng.gen_range(0..image.len())];
                }
            }
            row
        })
        .collect();
    Dfa::new(default_letter_names(k), rows)
}

/// `k` letters with independent uniform transitions on `n` states.
pub fn random_dfa(n: usize, k: usize, seed: u64) -> Result<Dfa> {
    if n < 1 || k < 1 {
        return Err(Error::Usage("random needs n >= 1 and k >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..k)
        .map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    Dfa::new(default_letter_names(k), rows)
}

/// The result of [`higgins_transform`].
///
/// States `0..n` are the original states, `n..2n` their primed copies (`i′`
/// is `n + i`). Letters `0..k` are `a_1..a_k` and letter `k` is `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigginsImage {
    pub result: Dfa,
    pub base_n: usize,
    pub base_k: usize,
}

impl HigginsImage {
    /// Index of the transformed letter `a_j` for base letter `j`.
    pub fn a_letter(&self, j: usize) -> usize {
        assert!(j < self.base_k);
        j
    }

    pub fn b_letter(&self) -> usize {
        self.base_k
    }

    pub fn primed(&self, q: usize) -> usize {
        self.base_n + q
    }
}

/// Doubles the states and adds a letter `b` so that every letter becomes an
/// idempotent of rank `n`:
///
/// * `i.a_j = i` and `i′.a_j = i.σ_j`,
/// * `i.b = i′.b = i′`.
pub fn higgins_transform(base: &Dfa) -> HigginsImage {
    let n = base.n();
    let k = base.k();
    let mut rows: Vec<Vec<usize>> = (0..k)
        .map(|j| (0..n).chain(base.row(j).iter().copied()).collect())
        .collect();
    rows.push((0..n).chain(0..n).map(|i| n + i).collect());
    let mut names: Vec<String> = (1..=k).map(|j| format!("a{j}")).collect();
    names.push("b".into());
    HigginsImage {
        result: Dfa::new(names, rows).expect("doubling keeps the table valid"),
        base_n: n,
        base_k: k,
    }
}

/// The morphism `σ_j ↦ b·a_j`.
pub fn chi_encode(image: &HigginsImage, w: &Word) -> Result<Word> {
    let mut out = Vec::with_capacity(2 * w.len());
    for &j in w.letters() {
        if j >= image.base_k {
            return Err(Error::LetterOutOfRange {
                letter: j,
                k: image.base_k,
            });
        }
        out.push(image.b_letter());
        out.push(image.a_letter(j));
    }
    Ok(Word::new(out))
}

/// A word of `H(A)` that does not factor into blocks `b·a_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotInImage {
    /// Position of the first letter that breaks the block structure.
    pub position: usize,
}

/// Inverse of [`chi_encode`] on its image.
pub fn chi_decode(image: &HigginsImage, w: &Word) -> std::result::Result<Word, NotInImage> {
    let b = image.b_letter();
    let letters = w.letters();
    let mut out = Vec::with_capacity(letters.len() / 2);
    for (block, pair) in letters.chunks(2).enumerate() {
        let start = 2 * block;
        if pair[0] != b {
            return Err(NotInImage { position: start });
        }
        match pair.get(1) {
            Some(&a) if a < image.base_k => out.push(a),
            _ => return Err(NotInImage { position: start + 1 }),
        }
    }
    Ok(Word::new(out))
}
