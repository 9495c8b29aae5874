//! Bound cross-checks: the reduced classical-bound scan against full
//! brute-force enumeration, and both against the closed forms.

use gscert_core::{classical_bound_fast, quantum_bound, Inequality};

fn choose3(n: i64) -> i64 {
    n * (n - 1) * (n - 2) / 6
}

#[test]
fn fast_scan_matches_brute_force_for_small_n() {
    for n in 3..=11 {
        let ineq = Inequality::build(n).unwrap();
        let brute = ineq.classical_bound_bruteforce().unwrap();
        let fast = classical_bound_fast(n).unwrap();
        assert_eq!(brute, fast, "n = {n}");
        assert_eq!(ineq.classical_bound(), brute, "n = {n}");
    }
}

#[test]
fn fast_scan_matches_brute_force_at_twelve() {
    // 2^24 assignments; the largest case under the enumeration cap.
    let ineq = Inequality::build(12).unwrap();
    assert_eq!(ineq.classical_bound_bruteforce().unwrap(), 440);
    assert_eq!(classical_bound_fast(12).unwrap(), 440);
}

#[test]
fn bounds_match_the_closed_forms() {
    for n in 3..=100i64 {
        let fast = classical_bound_fast(n as usize).unwrap();
        assert_eq!(fast, 2 * choose3(n), "classical bound at n = {n}");
        let quantum = quantum_bound(n as usize).unwrap();
        assert_eq!(quantum, 4 * choose3(n), "quantum bound at n = {n}");
        assert_eq!(quantum, 2 * fast, "ratio at n = {n}");
    }
}

#[test]
fn frozen_bound_table() {
    for (n, classical) in [
        (3usize, 2i64),
        (4, 8),
        (5, 20),
        (6, 40),
        (7, 70),
        (8, 112),
        (10, 240),
        (12, 440),
        (64, 83_328),
        (256, 5_527_040),
    ] {
        assert_eq!(classical_bound_fast(n).unwrap(), classical, "n = {n}");
        assert_eq!(quantum_bound(n).unwrap(), 2 * classical, "n = {n}");
    }
}

#[test]
fn reported_bound_is_attained_and_never_beaten() {
    // Re-enumerate all ±1 assignments through the label interface (an
    // independent path from the popcount-mask enumeration) and confirm the
    // reported bound is tight.
    for n in 3..=7usize {
        let ineq = Inequality::build(n).unwrap();
        let bound = ineq.classical_bound();
        let mut best = i64::MIN;
        for assignment in 0u64..(1 << (2 * n)) {
            let mut value = 0i64;
            for term in ineq.terms() {
                let mut sign = 1i64;
                for slot in 1..=n {
                    let label = term.label_at(slot);
                    let bit = match label.kind {
                        gscert_core::LabelKind::A => (assignment >> (slot - 1)) & 1,
                        gscert_core::LabelKind::B => (assignment >> (n + slot - 1)) & 1,
                    };
                    if bit == 1 {
                        sign = -sign;
                    }
                }
                value += term.coefficient() * sign;
            }
            assert!(
                value <= bound,
                "assignment beats the reported bound at n = {n}"
            );
            best = best.max(value);
        }
        assert_eq!(best, bound, "bound not attained at n = {n}");
    }
}
