//! Backend-agreement sweeps: the symbolic stabilizer engine and the dense
//! matrix engine must produce identical correlators, witness values, and
//! compatibility verdicts for the same Pauli data.

use gscert_core::{
    quantum_bound, Backend, Graph, Inequality, PauliLetter, PauliString, Phase, Realization,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn random_string(n: usize, rng: &mut ChaCha8Rng) -> PauliString {
    let letters: Vec<PauliLetter> = (0..n)
        .map(|_| match rng.gen_range(0..4) {
            0 => PauliLetter::I,
            1 => PauliLetter::X,
            2 => PauliLetter::Y,
            _ => PauliLetter::Z,
        })
        .collect();
    let p = PauliString::from_letters(&letters, Phase::One).unwrap();
    if rng.gen_bool(0.5) {
        p.negated()
    } else {
        p
    }
}

#[test]
fn ideal_realizations_agree_across_backends() {
    for n in 3..=8 {
        let symbolic = Realization::ideal(n, Backend::Symbolic).unwrap();
        let dense = Realization::ideal(n, Backend::Dense).unwrap();
        let ineq = Inequality::build(n).unwrap();
        for term in ineq.terms() {
            let s = symbolic.correlator(term).unwrap();
            let d = dense.correlator(term).unwrap();
            assert!(
                (s - d).abs() < 1e-12,
                "n = {n}, term {}: symbolic {s}, dense {d}",
                term.text(n)
            );
        }
        let expected = quantum_bound(n).unwrap();
        assert_eq!(symbolic.evaluate_exact(&ineq).unwrap(), expected);
        assert!((symbolic.evaluate(&ineq).unwrap() - expected as f64).abs() < 1e-12);
        assert!((dense.evaluate(&ineq).unwrap() - expected as f64).abs() < 1e-9);
    }
}

#[test]
fn random_pauli_realizations_agree_across_backends() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut hermitian_terms = 0usize;
    let mut skew_terms = 0usize;
    for n in 3..=7 {
        let ineq = Inequality::build(n).unwrap();
        for _ in 0..6 {
            let graph = random_graph(n, &mut rng);
            let a: Vec<PauliString> = (0..n).map(|_| random_string(n, &mut rng)).collect();
            let b: Vec<PauliString> = (0..n).map(|_| random_string(n, &mut rng)).collect();
            let symbolic =
                Realization::symbolic(a.clone(), b.clone(), graph.stabilizer_generators()).unwrap();
            let dense =
                Realization::dense_from_paulis(&a, &b, graph.state_vector().unwrap()).unwrap();
            for term in ineq.terms() {
                // Random draws often make a slot product non-Hermitian;
                // the symbolic engine rejects those structurally, so only
                // Hermitian products have comparable values.
                let product = term
                    .labels(n)
                    .map(|l| match l.kind {
                        gscert_core::LabelKind::A => &a[l.index as usize - 1],
                        gscert_core::LabelKind::B => &b[l.index as usize - 1],
                    })
                    .cloned()
                    .reduce(|p, q| p.multiply(&q).unwrap())
                    .unwrap();
                if product.is_hermitian() {
                    let s = symbolic.correlator(term).unwrap();
                    let d = dense.correlator(term).unwrap();
                    assert!(
                        (s - d).abs() < 1e-12,
                        "n = {n}, term {}: symbolic {s}, dense {d}",
                        term.text(n)
                    );
                    hermitian_terms += 1;
                } else {
                    assert!(symbolic.correlator(term).is_err());
                    skew_terms += 1;
                }
            }
        }
    }
    assert!(
        hermitian_terms > 200 && skew_terms > 200,
        "sweep hit both branches: {hermitian_terms} Hermitian, {skew_terms} skew"
    );
}

#[test]
fn compatibility_reports_agree_across_backends() {
    // The canonical data through both engines.
    for n in 3..=6 {
        let symbolic = Realization::ideal(n, Backend::Symbolic).unwrap();
        let dense = Realization::ideal(n, Backend::Dense).unwrap();
        let rs = symbolic.compatibility_report().unwrap();
        let rd = dense.compatibility_report().unwrap();
        assert!(rs.admissible && rd.admissible, "n = {n}");
        assert_eq!(rs.commuting_pairs.len(), rd.commuting_pairs.len());
        assert!(rs.max_commutation_residual.abs() < 1e-12);
        assert!(rd.max_commutation_residual.abs() < 1e-9);
        for (ps, pd) in rs.same_index.iter().zip(rd.same_index.iter()) {
            assert!(
                (ps.residual - pd.residual).abs() < 1e-9,
                "n = {n}: same-index residuals {} vs {}",
                ps.residual,
                pd.residual
            );
        }
    }

    // The three-slot alternative: anticommuting same-index pairs on both
    // engines.
    let a: Vec<PauliString> = ["XII", "IXZ", "IZX"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let b: Vec<PauliString> = ["ZII", "IZI", "IIZ"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let star = Graph::star(3).unwrap();
    let symbolic = Realization::alternative_3().unwrap();
    let dense = Realization::dense_from_paulis(&a, &b, star.state_vector().unwrap()).unwrap();
    let rs = symbolic.compatibility_report().unwrap();
    let rd = dense.compatibility_report().unwrap();
    assert!(rs.admissible && rd.admissible);
    for (ps, pd) in rs.same_index.iter().zip(rd.same_index.iter()) {
        assert!((ps.residual - pd.residual).abs() < 1e-9);
        assert!(ps.residual.abs() < 1e-12, "A_i and B_i anticommute here");
    }
}

#[test]
fn witness_value_is_linear_in_the_terms() {
    // evaluate() must equal the coefficient-weighted sum of correlator()
    // calls on both backends.
    let ineq = Inequality::build(5).unwrap();
    for backend in [Backend::Symbolic, Backend::Dense] {
        let r = Realization::ideal(5, backend).unwrap();
        let by_terms: f64 = ineq
            .terms()
            .iter()
            .map(|t| t.coefficient() as f64 * r.correlator(t).unwrap())
            .sum();
        assert!((r.evaluate(&ineq).unwrap() - by_terms).abs() < 1e-9);
    }
}

#[test]
fn symbolic_engine_handles_large_witnesses() {
    for n in [32usize, 64] {
        let r = Realization::ideal(n, Backend::Symbolic).unwrap();
        let ineq = Inequality::build(n).unwrap();
        assert_eq!(r.evaluate_exact(&ineq).unwrap(), quantum_bound(n).unwrap());
    }
}
