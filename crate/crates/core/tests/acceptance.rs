//! Acceptance criteria, one test per criterion. Each prints a PASS/FAIL line;
//! run with `--nocapture` to see them all.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use idemsync::analysis::{
    check_proper_family, check_doubling, proper_family_threshold, is_synchronizing, reset_threshold,
    verify_reset_word, SearchBudget,
};
use idemsync::generators::{cerny, gusev_like, higgins_transform, ladder, random_dfa};
use idemsync::harness::{sample_random, sample_two_idempotent};
use idemsync::idem2::synchronize_sink_2idem;
use idemsync::Dfa;

fn report(id: u32, name: &str, limit: Duration, start: Instant, failures: &[String]) {
    let elapsed = start.elapsed();
    let ok = failures.is_empty();
    println!(
        "[{}] criterion {id}: {name} ({:.3}s, limit {}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    for f in failures {
        println!("    {f}");
    }
    assert!(ok, "criterion {id} failed: {failures:?}");
    assert!(elapsed <= limit, "criterion {id} exceeded {limit:?}: {elapsed:?}");
}

fn budget() -> SearchBudget {
    SearchBudget::default()
}

#[test]
fn criterion_01_cerny_thresholds() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=10 {
        let r = reset_threshold(&cerny(n).unwrap(), &budget()).unwrap();
        if r.threshold != Some((n - 1) * (n - 1)) {
            failures.push(format!("n={n}: ret {:?}, expected {}", r.threshold, (n - 1) * (n - 1)));
        }
    }
    report(1, "ret(C_n) = (n-1)^2 for n = 2..10", Duration::from_secs(5), start, &failures);
}

#[test]
fn criterion_02_idempotent_half_rank() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (i, a) in sample_random(200, 10, 3, 0xa11ce).iter().enumerate() {
        let h = higgins_transform(a).result;
        for j in 0..h.k() {
            let idem = h.is_idempotent_letter(j).unwrap();
            let rank = h.letter_rank(j).unwrap();
            if !idem || rank != a.n() {
                failures.push(format!("sample {i}, letter {j}: idempotent {idem}, rank {rank}, n {}", a.n()));
            }
        }
    }
    report(2, "every letter of H(A) idempotent of rank n (200 samples)", Duration::from_secs(1), start, &failures);
}

#[test]
fn criterion_03_doubling_on_cerny() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=9 {
        let r = check_doubling(&cerny(n).unwrap(), &budget()).unwrap();
        let expected = (n - 1) * (n - 1);
        let ok = r.base.synchronizing
            && r.transformed.synchronizing
            && r.pair_test_base
            && r.pair_test_transformed
            && r.base.threshold == Some(expected)
            && r.transformed.threshold == Some(2 * expected)
            && r.encoded_witness.as_ref().map(|w| w.len()) == Some(2 * expected)
            && r.encoded_witness_resets == Some(true);
        if !ok {
            failures.push(format!("n={n}: {r:?}"));
        }
    }
    report(3, "H(C_n) synchronizing, ret doubles, encoded witness resets (n = 2..9)", Duration::from_secs(60), start, &failures);
}

#[test]
fn criterion_04_proper_family() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in (4..=16).step_by(2) {
        let r = check_proper_family(m, &budget()).unwrap();
        assert_eq!(proper_family_threshold(m), m * m / 2 + 2 - 2 * m);
        if !r.passed() {
            failures.push(format!("m={m}: {r:?}"));
        }
    }
    report(4, "B_m: ret m^2/2-2m+2, proper, 3 idempotents of rank m/2 (m = 4..16 even)", Duration::from_secs(120), start, &failures);
}

#[test]
fn criterion_05_idem2_bound() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let samples = sample_two_idempotent(500, 12, 0x9905, false);
    for (i, a) in samples.iter().enumerate() {
        let r = reset_threshold(a, &budget()).unwrap();
        match r.threshold {
            Some(t) if t < a.n() => {}
            other => failures.push(format!("sample {i} (n={}): ret {other:?}", a.n())),
        }
    }
    report(5, "ret <= n-1 for 500 synchronizing two-idempotent automata, n <= 12", Duration::from_secs(30), start, &failures);
}

#[test]
fn criterion_06_ladder_tightness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 3..=15 {
        let r = reset_threshold(&ladder(n).unwrap(), &budget()).unwrap();
        if r.threshold != Some(n - 1) {
            failures.push(format!("n={n}: ret {:?}", r.threshold));
        }
    }
    report(6, "ret(I_n) = n-1 for n = 3..15", Duration::from_secs(60), start, &failures);
}

#[test]
fn criterion_07_constructive_synchronizer() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut check = |label: String, a: &Dfa| match synchronize_sink_2idem(a) {
        Ok(w) if w.len() < a.n() && verify_reset_word(a, &w).unwrap() => {}
        other => failures.push(format!("{label}: {other:?}")),
    };
    for n in 3..=15 {
        check(format!("ladder n={n}"), &ladder(n).unwrap());
    }
    let samples = sample_two_idempotent(200, 12, 0x5c2, true);
    assert_eq!(samples.len(), 200);
    for (i, a) in samples.iter().enumerate() {
        assert_eq!(a.find_sinks().len(), 1);
        check(format!("sample {i}"), a);
    }
    report(7, "sink synchronizer returns verified words of length <= n-1", Duration::from_secs(30), start, &failures);
}

#[test]
fn criterion_08_gusev_seven() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let g = gusev_like(7).unwrap();
    // 1-based (state, letter, target) reference edges
    let reference = [
        (1, 0, 1), (1, 1, 2), (2, 0, 3), (2, 1, 2), (3, 0, 3), (3, 1, 4), (4, 0, 5),
        (4, 1, 4), (5, 0, 5), (5, 1, 6), (6, 0, 7), (6, 1, 6), (7, 0, 7), (7, 1, 1),
    ];
    if g.n() != 7 || g.k() != 2 {
        failures.push(format!("shape {}x{}", g.n(), g.k()));
    }
    for (q, j, t) in reference {
        if g.row(j)[q - 1] != t - 1 {
            failures.push(format!("{q}.{} = {}, reference says {t}", g.letter_name(j), g.row(j)[q - 1] + 1));
        }
    }
    let r = reset_threshold(&g, &budget()).unwrap();
    if r.threshold != Some(16) {
        failures.push(format!("ret {:?}, expected 16", r.threshold));
    }
    for n in (3..=13).step_by(2) {
        let r = reset_threshold(&gusev_like(n).unwrap(), &budget()).unwrap();
        println!(
            "    info: odd n={n}: measured ret {:?}, (n^2-3n+4)/2 = {}",
            r.threshold,
            (n * n + 4 - 3 * n) / 2
        );
    }
    report(8, "Gusev n=7 matches the reference edges and has ret 16", Duration::from_secs(1), start, &failures);
}

/// Independent oracle: enumerate words by increasing length in lexicographic
/// order, tracking the image of every state. Gives up at (n^3 - n)/6, above
/// which no automaton with n states has its shortest reset word.
fn brute_force(a: &Dfa) -> Option<(usize, Vec<usize>)> {
    fn search(a: &Dfa, images: &[usize], left: usize, word: &mut Vec<usize>) -> bool {
        if left == 0 {
            return images.iter().all(|&q| q == images[0]);
        }
        for j in 0..a.k() {
            let next: Vec<usize> = images.iter().map(|&q| a.row(j)[q]).collect();
            word.push(j);
            if search(a, &next, left - 1, word) {
                return true;
            }
            word.pop();
        }
        false
    }
    let n = a.n();
    let start: Vec<usize> = (0..n).collect();
    for len in 0..=(n * n * n - n) / 6 {
        let mut word = Vec::new();
        if search(a, &start, len, &mut word) {
            return Some((len, word));
        }
    }
    None
}

#[test]
fn criterion_09_oracle_equivalence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c1e);
    let samples: Vec<Dfa> = (0..300)
        .map(|_| random_dfa(rng.gen_range(1..=5), 2, rng.gen()).unwrap())
        .collect();
    let mut synchronizing = 0;
    for (i, a) in samples.iter().enumerate() {
        let r = reset_threshold(a, &budget()).unwrap();
        let oracle = brute_force(a);
        let measured = r.threshold.zip(r.witness.map(|w| w.into_vec()));
        if measured.is_some() {
            synchronizing += 1;
        }
        if measured != oracle {
            failures.push(format!("sample {i}: search {measured:?}, brute force {oracle:?}"));
        }
    }
    println!("    info: {synchronizing}/300 samples synchronizing");
    report(9, "subset search matches brute-force enumeration (300 samples, n <= 5, k = 2)", Duration::from_secs(60), start, &failures);
}

#[test]
fn criterion_10_preservation() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (i, a) in sample_random(100, 8, 3, 0x9e5).iter().enumerate() {
        let h = higgins_transform(a).result;
        let (sc, sc_h) = (a.is_strongly_connected(), h.is_strongly_connected());
        let (sy, sy_h) = (is_synchronizing(a), is_synchronizing(&h));
        if sc != sc_h || sy != sy_h {
            failures.push(format!("sample {i}: strongly connected {sc}/{sc_h}, synchronizing {sy}/{sy_h}"));
        }
    }
    report(10, "H preserves strong connectivity and synchronizability (100 samples)", Duration::from_secs(10), start, &failures);
}
