//! Certification cross-checks: closed-form fidelities, correlators, and
//! residuals of the block noise models against direct dense linear
//! algebra, plus randomized validation of the bound theorems.

use gscert_core::{
    actual_fidelities, anticommutator_residual, canonical_form_check, certify_jordan,
    epsilon_from_statistics, ideal_block_amplitudes, jordan_realization, validate_robustness,
    Backend, Inequality, JordanBlock, JordanBlockSpec, PauliLetter, PauliString, Realization,
    Statistics, ValidationConfig,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_angles(n: usize, cap: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-cap..=cap)).collect()
}

/// A random multi-block spec with ideal or slightly perturbed amplitudes.
fn random_spec(n: usize, blocks: usize, rng: &mut ChaCha8Rng) -> JordanBlockSpec {
    let mut weights: Vec<f64> = (0..blocks).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let drift = 1.0 - weights.iter().sum::<f64>();
    weights[0] += drift;
    let blocks = weights
        .into_iter()
        .map(|weight| {
            let mut amplitudes = ideal_block_amplitudes(n);
            if rng.gen_bool(0.5) {
                for c in &mut amplitudes {
                    *c += Complex64::new(rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1));
                }
                let norm: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                for c in &mut amplitudes {
                    *c /= norm;
                }
            }
            JordanBlock {
                weight,
                angles: random_angles(n, 0.4, rng),
                amplitudes,
            }
        })
        .collect();
    JordanBlockSpec::new(n, blocks).unwrap()
}

/// Analytic correlator of a single ideal-state block: a positive term at
/// slot j sees cos(Σ_{m≠j} θ_m); a negative term over {i,j,k} sees
/// −cos(Σ_{m∉{i,j,k}} θ_m).
fn block_closed_form(n: usize, angles: &[f64], term: &gscert_core::CorrelatorTerm) -> f64 {
    let excluded = term.a_sites();
    let sum: f64 = (1..=n as u32)
        .filter(|m| !excluded.contains(m))
        .map(|m| angles[m as usize - 1])
        .sum();
    if term.coefficient() > 0 {
        sum.cos()
    } else {
        -sum.cos()
    }
}

#[test]
fn block_correlators_match_the_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [3usize, 4, 5] {
        let ineq = Inequality::build(n).unwrap();
        for _ in 0..5 {
            let angles = random_angles(n, 0.5, &mut rng);
            let spec = JordanBlockSpec::new(
                n,
                vec![JordanBlock {
                    weight: 1.0,
                    angles: angles.clone(),
                    amplitudes: ideal_block_amplitudes(n),
                }],
            )
            .unwrap();
            let r = jordan_realization(&spec).unwrap();
            for term in ineq.terms() {
                let measured = r.correlator(term).unwrap();
                let predicted = block_closed_form(n, &angles, term);
                assert!(
                    (measured - predicted).abs() < 1e-12,
                    "n = {n}, term {}: measured {measured}, predicted {predicted}",
                    term.text(n)
                );
            }
        }
    }
}

#[test]
fn multi_block_correlators_are_weight_averages() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let n = 3;
    let ineq = Inequality::build(n).unwrap();
    let weights = [0.2, 0.5, 0.3];
    let all_angles: Vec<Vec<f64>> = (0..3).map(|_| random_angles(n, 0.5, &mut rng)).collect();
    let spec = JordanBlockSpec::new(
        n,
        weights
            .iter()
            .zip(&all_angles)
            .map(|(&weight, angles)| JordanBlock {
                weight,
                angles: angles.clone(),
                amplitudes: ideal_block_amplitudes(n),
            })
            .collect(),
    )
    .unwrap();
    let r = jordan_realization(&spec).unwrap();
    for term in ineq.terms() {
        let measured = r.correlator(term).unwrap();
        let predicted: f64 = weights
            .iter()
            .zip(&all_angles)
            .map(|(&w, angles)| w * block_closed_form(n, angles, term))
            .sum();
        assert!((measured - predicted).abs() < 1e-12);
    }
}

#[test]
fn epsilon_matches_the_per_term_deficit_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 4;
    let ineq = Inequality::build(n).unwrap();
    for _ in 0..10 {
        let angles = random_angles(n, 0.4, &mut rng);
        let spec = JordanBlockSpec::new(
            n,
            vec![JordanBlock {
                weight: 1.0,
                angles: angles.clone(),
                amplitudes: ideal_block_amplitudes(n),
            }],
        )
        .unwrap();
        let r = jordan_realization(&spec).unwrap();
        let eps = epsilon_from_statistics(&Statistics::from_realization(&r).unwrap()).unwrap();
        let predicted = ineq
            .terms()
            .iter()
            .map(|t| 1.0 - t.coefficient().signum() as f64 * block_closed_form(n, &angles, t))
            .fold(0.0f64, f64::max);
        assert!((eps - predicted).abs() < 1e-12);
    }
}

#[test]
fn state_fidelity_matches_a_direct_overlap_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in [3usize, 4] {
        for blocks in [1usize, 2, 3] {
            let spec = random_spec(n, blocks, &mut rng);
            let closed = actual_fidelities(&spec);
            // Oracle: slice the assembled state vector per block, overlap
            // against the ideal block vector, align phases, and square.
            let r = jordan_realization(&spec).unwrap();
            let (_, _, state) = r.dense_parts().unwrap();
            let dim = 1usize << n;
            let ideal = ideal_block_amplitudes(n);
            let mut aligned_sum = 0.0;
            for (l, block) in spec.blocks().iter().enumerate() {
                let overlap: Complex64 =
                    (0..dim).map(|k| ideal[k].conj() * state[l * dim + k]).sum();
                aligned_sum += block.weight.sqrt() * overlap.norm();
            }
            let oracle = aligned_sum * aligned_sum;
            assert!(
                (closed.state - oracle).abs() < 1e-12,
                "n = {n}, blocks = {blocks}: closed {}, oracle {oracle}",
                closed.state
            );
        }
    }
}

#[test]
fn observable_fidelities_match_a_block_trace_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in [3usize, 4] {
        let spec = random_spec(n, 3, &mut rng);
        let closed = actual_fidelities(&spec);
        let r = jordan_realization(&spec).unwrap();
        let (a, b, _) = r.dense_parts().unwrap();
        let dim = 1usize << n;
        for i in 1..=n {
            let ideal_b = PauliString::embed(PauliLetter::Y, i, n)
                .unwrap()
                .to_dense()
                .unwrap();
            let ideal_a = PauliString::embed(PauliLetter::X, i, n)
                .unwrap()
                .to_dense()
                .unwrap();
            let mut trace_b = 0.0;
            let mut trace_a = 0.0;
            for (l, block) in spec.blocks().iter().enumerate() {
                let offset = l * dim;
                let mut tb = Complex64::new(0.0, 0.0);
                let mut ta = Complex64::new(0.0, 0.0);
                for r_ in 0..dim {
                    for c in 0..dim {
                        tb += ideal_b[(r_, c)] * b[i - 1][(offset + c, offset + r_)];
                        ta += ideal_a[(r_, c)] * a[i - 1][(offset + c, offset + r_)];
                    }
                }
                trace_b += block.weight * tb.re / dim as f64;
                trace_a += block.weight * ta.re / dim as f64;
            }
            assert!((closed.b[i - 1] - trace_b).abs() < 1e-12, "B{i}");
            assert!((closed.a[i - 1] - trace_a).abs() < 1e-12, "A{i}");
        }
    }
}

#[test]
fn anticommutator_residual_matches_the_weighted_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let n = 3;
    let weights = [0.5, 0.3, 0.2];
    let all_angles: Vec<Vec<f64>> = (0..3).map(|_| random_angles(n, 0.6, &mut rng)).collect();
    let spec = JordanBlockSpec::new(
        n,
        weights
            .iter()
            .zip(&all_angles)
            .map(|(&weight, angles)| JordanBlock {
                weight,
                angles: angles.clone(),
                amplitudes: ideal_block_amplitudes(n),
            })
            .collect(),
    )
    .unwrap();
    let r = jordan_realization(&spec).unwrap();
    for i in 1..=n {
        let measured = anticommutator_residual(&r, i).unwrap();
        let predicted = 2.0
            * weights
                .iter()
                .zip(&all_angles)
                .map(|(&w, angles)| w * angles[i - 1].sin().powi(2))
                .sum::<f64>()
                .sqrt();
        assert!(
            (measured - predicted).abs() < 1e-12,
            "pair {i}: measured {measured}, predicted {predicted}"
        );
    }
}

#[test]
fn certification_bounds_hold_on_an_angle_grid() {
    for t in [0.02, 0.1, 0.2, 0.3, 0.45] {
        let shapes: Vec<Vec<Vec<f64>>> = vec![
            vec![vec![t, 0.0, 0.0]],
            vec![vec![t, t, t]],
            vec![vec![t, -t, t / 2.0]],
            vec![vec![t, 0.0, 0.0], vec![0.0, t, -t]],
        ];
        for shape in shapes {
            let count = shape.len();
            let spec = JordanBlockSpec::new(
                3,
                shape
                    .into_iter()
                    .map(|angles| JordanBlock {
                        weight: 1.0 / count as f64,
                        angles,
                        amplitudes: ideal_block_amplitudes(3),
                    })
                    .collect(),
            )
            .unwrap();
            let report = certify_jordan(&spec).unwrap();
            assert!(
                report.bound_violations.is_empty(),
                "t = {t}: {:?}",
                report.bound_violations
            );
            // The anticommutator lemma: every residual within 4√(2ε).
            let r = jordan_realization(&spec).unwrap();
            let cap = 4.0 * (2.0 * report.epsilon).sqrt();
            for i in 1..=3 {
                let residual = anticommutator_residual(&r, i).unwrap();
                assert!(
                    residual <= cap + 1e-9,
                    "t = {t}, pair {i}: residual {residual} vs cap {cap}"
                );
            }
        }
    }
}

#[test]
fn randomized_validation_holds_at_four_and_five() {
    for (n, trials, max_blocks, seed) in [(4usize, 48usize, 3usize, 20260814u64), (5, 32, 2, 31415)]
    {
        let outcome = validate_robustness(&ValidationConfig {
            n,
            trials,
            max_angle: 0.3,
            max_blocks,
            seed,
        })
        .unwrap();
        assert!(
            outcome.violations.is_empty(),
            "n = {n}: {:?}",
            outcome.violations
        );
        assert!(outcome.min_state_margin >= 0.0, "n = {n}");
        assert!(outcome.min_b_margin >= 0.0, "n = {n}");
        assert!(outcome.max_anticommutator_ratio <= 1.0, "n = {n}");
    }
}

#[test]
fn rotated_pair_fails_exactly_the_anticommutation_predicate() {
    let theta = 0.2f64;
    let spec = JordanBlockSpec::new(
        3,
        vec![JordanBlock {
            weight: 1.0,
            angles: vec![theta, 0.0, 0.0],
            amplitudes: ideal_block_amplitudes(3),
        }],
    )
    .unwrap();
    let r = jordan_realization(&spec).unwrap();
    let report = canonical_form_check(&r).unwrap();
    assert!(!report.certified);
    assert!(report.dimension_ok, "the span is still full");
    assert!(report.involution_ok);
    assert!(report.commutation_ok);
    assert!(report.traceless_ok);
    assert!(!report.anticommutation_ok);
    assert!(
        (report.anticommutation_residual - 2.0 * theta.sin()).abs() < 1e-9,
        "{{A₁,B₁}} = 2·sin θ on the invariant subspace, got {}",
        report.anticommutation_residual
    );
}

#[test]
fn symbolic_statistics_are_exactly_ideal() {
    let r = Realization::ideal(3, Backend::Symbolic).unwrap();
    let stats = Statistics::from_realization(&r).unwrap();
    assert_eq!(stats.values(), &[1.0, 1.0, 1.0, -1.0]);
    assert_eq!(epsilon_from_statistics(&stats).unwrap(), 0.0);
}
