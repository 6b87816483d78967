//! Reproduces the quantitative claims about the automaton families as a
//! report of pass/fail records.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    check_proper_family, check_doubled_letters, check_doubling, proper_family_threshold, is_synchronizing,
    reset_threshold, verify_reset_word, SearchBudget,
};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::generators::{
    cerny, gusev_like, higgins_transform, ladder, random_dfa, random_idempotent,
};
use crate::idem2::synchronize_sink_2idem;

/// Seeds for the sampled claims. Fixed so reports are reproducible.
pub const DOUBLED_LETTERS_SEED: u64 = 0x1e33a1;
pub const IDEM2_BOUND_SEED: u64 = 0x9905;
pub const IDEM2_SYNC_SEED: u64 = 0x5c2;
pub const PRESERVATION_SEED: u64 = 0x9e5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    Cerny,
    DoubledLetters,
    Doubling,
    ProperFamily,
    Idem2Bound,
    Ladder,
    Idem2Synchronizer,
    GusevSeven,
    GusevSeries,
    Preservation,
}

impl Claim {
    pub const ALL: [Claim; 10] = [
        Claim::Cerny,
        Claim::DoubledLetters,
        Claim::Doubling,
        Claim::ProperFamily,
        Claim::Idem2Bound,
        Claim::Ladder,
        Claim::Idem2Synchronizer,
        Claim::GusevSeven,
        Claim::GusevSeries,
        Claim::Preservation,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Cerny => "cerny",
            Claim::DoubledLetters => "lemma1",
            Claim::Doubling => "thm2",
            Claim::ProperFamily => "cor3",
            Claim::Idem2Bound => "prop5",
            Claim::Ladder => "ladder",
            Claim::Idem2Synchronizer => "sync2",
            Claim::GusevSeven => "gusev7",
            Claim::GusevSeries => "gusev-series",
            Claim::Preservation => "preserve",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Usage(format!("unknown claim {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub claim: String,
    pub params: String,
    pub expected: String,
    pub measured: String,
    pub pass: bool,
    /// Reported only; never fails the run.
    pub informational: bool,
    pub millis: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub records: Vec<ClaimRecord>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass || r.informational)
    }

    /// One JSON object per line.
    pub fn to_jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("plain record") + "\n")
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = match (r.pass, r.informational) {
                (true, _) => "PASS",
                (false, true) => "INFO",
                (false, false) => "FAIL",
            };
            out.push_str(&format!(
                "{status} {:<13} {:<18} expected {} | measured {} ({} ms)\n",
                r.claim, r.params, r.expected, r.measured, r.millis
            ));
        }
        let failed = self
            .records
            .iter()
            .filter(|r| !r.pass && !r.informational)
            .count();
        out.push_str(&format!(
            "{} records, {} failed\n",
            self.records.len(),
            failed
        ));
        out
    }
}

struct Recorder {
    claim: Claim,
    records: Vec<ClaimRecord>,
}

impl Recorder {
    fn new(claim: Claim) -> Self {
        Recorder {
            claim,
            records: Vec::new(),
        }
    }

    /// Times `check`, which returns (expected, measured, pass).
    fn record(
        &mut self,
        params: impl Into<String>,
        check: impl FnOnce() -> Result<(String, String, bool)>,
    ) {
        self.push(params, false, check);
    }

    fn inform(
        &mut self,
        params: impl Into<String>,
        check: impl FnOnce() -> Result<(String, String, bool)>,
    ) {
        self.push(params, true, check);
    }

    fn push(
        &mut self,
        params: impl Into<String>,
        informational: bool,
        check: impl FnOnce() -> Result<(String, String, bool)>,
    ) {
        let start = Instant::now();
        let (expected, measured, pass) = match check() {
            Ok(outcome) => outcome,
            Err(e) => ("no error".into(), format!("error: {e}"), false),
        };
        self.records.push(ClaimRecord {
            claim: self.claim.id().into(),
            params: params.into(),
            expected,
            measured,
            pass,
            informational,
            millis: start.elapsed().as_millis() as u64,
        });
    }
}

fn show(threshold: Option<usize>) -> String {
    threshold.map_or_else(|| "none".into(), |t| t.to_string())
}

/// Draws `count` synchronizing automata with two idempotent letters and
/// `1..=max_n` states. With `unique_sink`, also requires exactly one sink.
pub fn sample_two_idempotent(count: usize, max_n: usize, seed: u64, unique_sink: bool) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=max_n);
        let dfa = random_idempotent(n, 2, rng.gen()).expect("n, k >= 1");
        if is_synchronizing(&dfa) && (!unique_sink || dfa.find_sinks().len() == 1) {
            out.push(dfa);
        }
    }
    out
}

/// `count` uniform random automata with `1..=max_n` states and `1..=max_k`
/// letters.
pub fn sample_random(count: usize, max_n: usize, max_k: usize, seed: u64) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let k = rng.gen_range(1..=max_k);
            random_dfa(n, k, rng.gen()).expect("n, k >= 1")
        })
        .collect()
}

fn run_claim(claim: Claim, budget: &SearchBudget) -> Vec<ClaimRecord> {
    let mut rec = Recorder::new(claim);
    match claim {
        Claim::Cerny => {
            for n in 2..=10 {
                rec.record(format!("n={n}"), || {
                    let r = reset_threshold(&cerny(n)?, budget)?;
                    let expected = (n - 1) * (n - 1);
                    Ok((expected.to_string(), show(r.threshold), r.threshold == Some(expected)))
                });
            }
        }
        Claim::DoubledLetters => {
            rec.record("200 random, n<=10, k<=3", || {
                let samples = sample_random(200, 10, 3, DOUBLED_LETTERS_SEED);
                let ok = samples.iter().filter(|a| check_doubled_letters(a).passed()).count();
                Ok((
                    "every letter idempotent of rank n".into(),
                    format!("{ok}/{} automata", samples.len()),
                    ok == samples.len(),
                ))
            });
        }
        Claim::Doubling => {
            for n in 2..=9 {
                rec.record(format!("cerny n={n}"), || {
                    let r = check_doubling(&cerny(n)?, budget)?;
                    Ok((
                        format!("ret {}, ret(H) {}, chi(w) resets", (n - 1) * (n - 1), 2 * (n - 1) * (n - 1)),
                        format!(
                            "ret {}, ret(H) {}, chi(w) resets: {}",
                            show(r.base.threshold),
                            show(r.transformed.threshold),
                            r.encoded_witness_resets.unwrap_or(false)
                        ),
                        r.passed() && r.base.threshold == Some((n - 1) * (n - 1)),
                    ))
                });
            }
        }
        Claim::ProperFamily => {
            for m in (4..=16).step_by(2) {
                rec.record(format!("m={m}"), || {
                    let r = check_proper_family(m, budget)?;
                    Ok((
                        format!(
                            "ret {}, 3 idempotent letters of rank {}, proper",
                            proper_family_threshold(m),
                            m / 2
                        ),
                        format!(
                            "ret {}, {} letters, idempotent: {}, ranks {:?}, proper: {}",
                            show(r.threshold),
                            r.letters,
                            r.all_idempotent,
                            r.ranks,
                            r.proper
                        ),
                        r.passed(),
                    ))
                });
            }
        }
        Claim::Idem2Bound => {
            rec.record("500 synchronizing, n<=12", || {
                let samples = sample_two_idempotent(500, 12, IDEM2_BOUND_SEED, false);
                let mut violations = 0;
                let mut worst_gap = i64::MIN;
                for a in &samples {
                    let r = reset_threshold(a, budget)?;
                    let t = r.threshold.ok_or_else(|| Error::Usage("search truncated".into()))?;
                    worst_gap = worst_gap.max(t as i64 - (a.n() as i64 - 1));
                    if t + 1 > a.n() {
                        violations += 1;
                    }
                }
                Ok((
                    "ret <= n-1".into(),
                    format!("{violations} violations, max ret-(n-1) = {worst_gap}"),
                    violations == 0,
                ))
            });
        }
        Claim::Ladder => {
            for n in 1..=15 {
                rec.record(format!("n={n}"), || {
                    let r = reset_threshold(&ladder(n)?, budget)?;
                    Ok(((n - 1).to_string(), show(r.threshold), r.threshold == Some(n - 1)))
                });
            }
        }
        Claim::Idem2Synchronizer => {
            rec.record("ladders n=3..15", || {
                let mut ok = 0;
                for n in 3..=15 {
                    let a = ladder(n)?;
                    let w = synchronize_sink_2idem(&a)?;
                    if w.len() < n && verify_reset_word(&a, &w)? {
                        ok += 1;
                    }
                }
                Ok(("13/13 verified, length <= n-1".into(), format!("{ok}/13"), ok == 13))
            });
            rec.record("200 random unique-sink, n<=12", || {
                let samples = sample_two_idempotent(200, 12, IDEM2_SYNC_SEED, true);
                let mut ok = 0;
                for a in &samples {
                    let w = synchronize_sink_2idem(a)?;
                    if w.len() < a.n() && verify_reset_word(a, &w)? {
                        ok += 1;
                    }
                }
                Ok((
                    "200/200 verified, length <= n-1".into(),
                    format!("{ok}/{}", samples.len()),
                    ok == samples.len(),
                ))
            });
        }
        Claim::GusevSeven => {
            rec.record("n=7", || {
                let r = reset_threshold(&gusev_like(7)?, budget)?;
                Ok(("16".into(), show(r.threshold), r.threshold == Some(16)))
            });
        }
        Claim::GusevSeries => {
            for n in (3..=13).step_by(2) {
                rec.inform(format!("n={n}"), || {
                    let r = reset_threshold(&gusev_like(n)?, budget)?;
                    let formula = (n * n + 4 - 3 * n) / 2;
                    Ok((formula.to_string(), show(r.threshold), r.threshold == Some(formula)))
                });
            }
        }
        Claim::Preservation => {
            rec.record("100 random, n<=8, k<=3", || {
                let samples = sample_random(100, 8, 3, PRESERVATION_SEED);
                let ok = samples
                    .iter()
                    .filter(|a| {
                        let h = higgins_transform(a).result;
                        a.is_strongly_connected() == h.is_strongly_connected()
                            && is_synchronizing(a) == is_synchronizing(&h)
                    })
                    .count();
                Ok((
                    "strong connectivity and synchronizability preserved".into(),
                    format!("{ok}/{}", samples.len()),
                    ok == samples.len(),
                ))
            });
        }
    }
    rec.records
}

/// Runs the selected claims concurrently; records come back ordered by claim.
pub fn run_harness(claims: &[Claim], budget: &SearchBudget) -> HarnessReport {
    let mut claims = claims.to_vec();
    claims.sort();
    claims.dedup();
    let records = std::thread::scope(|scope| {
        let handles: Vec<_> = claims
            .iter()
            .map(|&c| scope.spawn(move || run_claim(c, budget)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("claim thread panicked"))
            .collect()
    });
    HarnessReport { records }
}
