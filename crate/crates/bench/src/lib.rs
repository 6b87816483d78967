//! Benchmark workloads shared by the bench targets.

use idemsync::generators::{cerny, gusev_like, higgins_transform, ladder, random_idempotent};
use idemsync::Dfa;

/// Named automata with nontrivial reset thresholds.
pub fn threshold_workloads() -> Vec<(String, Dfa)> {
    let mut out = Vec::new();
    for n in [6, 10] {
        out.push((format!("cerny/{n}"), cerny(n).unwrap()));
    }
    for n in [4, 8] {
        out.push((format!("doubled-cerny/{n}"), higgins_transform(&cerny(n).unwrap()).result));
    }
    out.push(("gusev/13".into(), gusev_like(13).unwrap()));
    out.push(("ladder/15".into(), ladder(15).unwrap()));
    out
}

/// Larger automata for the quadratic pair test.
pub fn pair_test_workloads() -> Vec<(String, Dfa)> {
    [64, 256]
        .into_iter()
        .flat_map(|n| {
            [
                (format!("cerny/{n}"), cerny(n).unwrap()),
                (format!("random-idem/{n}"), random_idempotent(n, 3, n as u64).unwrap()),
            ]
        })
        .collect()
}
