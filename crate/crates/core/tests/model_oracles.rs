//! Collision unitaries against matrices written out by hand from the
//! basis-state rules, and the reduced single-collision map against the
//! generalized amplitude-damping channel.

mod common;

use common::*;
use proptest::prelude::*;
use qcollide::model::{composite_from_system, DensityMatrix};
use qcollide::{kron, pair_collision_unitary, partial_trace, ComplexMatrix, ThermalAncilla};

const P_GRID: [f64; 11] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

fn index(label: &str) -> usize {
    label.chars().fold(0, |acc, ch| acc * 2 + usize::from(ch == 'e'))
}

/// Matrix whose column `in` is `Σ coef·|out⟩` for each listed rule.
/// `'c'` stands for √(1−p), `'s'` for √p, `'-s'` for −√p.
fn from_rules(dim: usize, p: f64, rules: &[(&str, &[(&str, &str)])]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for (input, outputs) in rules {
        for (coef, output) in *outputs {
            let v = match *coef {
                "1" => 1.0,
                "c" => (1.0 - p).sqrt(),
                "s" => p.sqrt(),
                "-s" => -p.sqrt(),
                other => panic!("unknown coefficient {other}"),
            };
            m[(index(output), index(input))] = c(v);
        }
    }
    m
}

fn rules_ab(p: f64) -> ComplexMatrix {
    from_rules(
        8,
        p,
        &[
            ("ggg", &[("1", "ggg")]),
            ("gge", &[("1", "gge")]),
            ("geg", &[("c", "geg"), ("-s", "egg")]),
            ("gee", &[("c", "gee"), ("-s", "ege")]),
            ("egg", &[("c", "egg"), ("s", "geg")]),
            ("ege", &[("c", "ege"), ("s", "gee")]),
            ("eeg", &[("1", "eeg")]),
            ("eee", &[("1", "eee")]),
        ],
    )
}

fn rules_ac(p: f64) -> ComplexMatrix {
    from_rules(
        8,
        p,
        &[
            ("ggg", &[("1", "ggg")]),
            ("gge", &[("c", "gge"), ("-s", "egg")]),
            ("geg", &[("1", "geg")]),
            ("gee", &[("c", "gee"), ("-s", "eeg")]),
            ("egg", &[("c", "egg"), ("s", "gge")]),
            ("ege", &[("1", "ege")]),
            ("eeg", &[("c", "eeg"), ("s", "gee")]),
            ("eee", &[("1", "eee")]),
        ],
    )
}

fn rules_bc(p: f64) -> ComplexMatrix {
    from_rules(
        8,
        p,
        &[
            ("ggg", &[("1", "ggg")]),
            ("gge", &[("c", "gge"), ("-s", "geg")]),
            ("geg", &[("c", "geg"), ("s", "gge")]),
            ("gee", &[("1", "gee")]),
            ("egg", &[("1", "egg")]),
            ("ege", &[("c", "ege"), ("-s", "eeg")]),
            ("eeg", &[("c", "eeg"), ("s", "ege")]),
            ("eee", &[("1", "eee")]),
        ],
    )
}

#[test]
fn every_unitary_is_unitary_on_the_grid() {
    for n in 2..=4 {
        for i in 0..n {
            for j in (i + 1)..n {
                for p in P_GRID {
                    let u = pair_collision_unitary(n, (i, j), p).unwrap();
                    assert!(u.matrix.unitarity_deviation() < 1e-12, "n={n} ({i},{j}) p={p}");
                }
            }
        }
    }
}

#[test]
fn three_qubit_builder_matches_rules() {
    for p in P_GRID {
        let cases = [((0, 1), rules_ab(p)), ((0, 2), rules_ac(p)), ((1, 2), rules_bc(p))];
        for (pair, oracle) in cases {
            let u = pair_collision_unitary(3, pair, p).unwrap();
            assert!(u.matrix.max_abs_diff(&oracle) < 1e-14, "{pair:?} p={p}");
        }
    }
}

#[test]
fn explicit_three_qubit_ab_and_ac_matrices() {
    let p: f64 = 0.37;
    let (s, k) = (p.sqrt(), (1.0 - p).sqrt());
    #[rustfmt::skip]
    let ab = ComplexMatrix::from_real(8, &[
        1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, k,   0.0, s,   0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, k,   0.0, s,   0.0, 0.0,
        0.0, 0.0, -s,  0.0, k,   0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, -s,  0.0, k,   0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0,
    ]).unwrap();
    #[rustfmt::skip]
    let ac = ComplexMatrix::from_real(8, &[
        1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, k,   0.0, 0.0, s,   0.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, k,   0.0, 0.0, s,   0.0,
        0.0, -s,  0.0, 0.0, k,   0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 0.0, -s,  0.0, 0.0, k,   0.0,
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0,
    ]).unwrap();
    assert!(pair_collision_unitary(3, (0, 1), p).unwrap().matrix.max_abs_diff(&ab) < 1e-15);
    assert!(pair_collision_unitary(3, (0, 2), p).unwrap().matrix.max_abs_diff(&ac) < 1e-15);
}

#[test]
fn swapped_bc_block_is_not_a_collision() {
    // A B–C block with row 3 = (0, −√(1−p), √p, 0, …) breaks unitarity and
    // disagrees with the basis-state rules; the builder follows the rules.
    let p: f64 = 0.3;
    let (s, k) = (p.sqrt(), (1.0 - p).sqrt());
    let mut written = ComplexMatrix::identity(8);
    written[(1, 1)] = c(k);
    written[(1, 2)] = c(s);
    written[(2, 1)] = c(-k);
    written[(2, 2)] = c(s);
    written[(5, 5)] = c(k);
    written[(5, 6)] = c(s);
    written[(6, 5)] = c(-s);
    written[(6, 6)] = c(k);
    assert!(written.unitarity_deviation() > 0.1);
    let built = pair_collision_unitary(3, (1, 2), p).unwrap().matrix;
    assert!(built.max_abs_diff(&written) > 0.1);
    assert!(built.max_abs_diff(&rules_bc(p)) < 1e-15);
}

#[test]
fn explicit_four_qubit_cd_matrix() {
    let p: f64 = 0.61;
    let (s, k) = (p.sqrt(), (1.0 - p).sqrt());
    // Four identical 2×2 blocks on basis pairs (|2⟩,|3⟩), (|6⟩,|7⟩), ... (1-based).
    let mut written = ComplexMatrix::identity(16);
    for base in [1, 5, 9, 13] {
        written[(base, base)] = c(k);
        written[(base, base + 1)] = c(s);
        written[(base + 1, base)] = c(-s);
        written[(base + 1, base + 1)] = c(k);
    }
    let u = pair_collision_unitary(4, (2, 3), p).unwrap();
    assert!(u.matrix.max_abs_diff(&written) < 1e-15);
}

#[test]
fn four_qubit_system_ancilla_sign_pattern() {
    // A–B ket expansion: −√p |9⟩⟨5| (g_A e_B → e_A g_B), +√p |5⟩⟨9|.
    let p: f64 = 0.4;
    let u = pair_collision_unitary(4, (0, 1), p).unwrap().matrix;
    assert!((u[(8, 4)].re + p.sqrt()).abs() < 1e-15);
    assert!((u[(4, 8)].re - p.sqrt()).abs() < 1e-15);
    // A–C: −√p |9⟩⟨3|; A–D: −√p |9⟩⟨2|; B–C: −√p |5⟩⟨3|; B–D: −√p |5⟩⟨2|.
    let cases = [((0, 2), 8, 2), ((0, 3), 8, 1), ((1, 2), 4, 2), ((1, 3), 4, 1)];
    for (pair, row, col) in cases {
        let u = pair_collision_unitary(4, pair, p).unwrap().matrix;
        assert!((u[(row, col)].re + p.sqrt()).abs() < 1e-15, "{pair:?}");
        assert!((u[(col, row)].re - p.sqrt()).abs() < 1e-15, "{pair:?}");
    }
}

#[test]
fn embedding_is_kron_consistent() {
    let i2 = ComplexMatrix::identity(2);
    let i4 = ComplexMatrix::identity(4);
    for p in P_GRID {
        let two = pair_collision_unitary(2, (0, 1), p).unwrap().matrix;
        let pairs = [
            (3, (0, 1), kron(&two, &i2)),
            (3, (1, 2), kron(&i2, &two)),
            (4, (0, 1), kron(&two, &i4)),
            (4, (1, 2), kron(&kron(&i2, &two), &i2)),
            (4, (2, 3), kron(&i4, &two)),
        ];
        for (n, pair, expected) in pairs {
            let u = pair_collision_unitary(n, pair, p).unwrap().matrix;
            assert_eq!(u, expected, "n={n} {pair:?} p={p}");
        }
    }
}

fn gadc_kraus(p: f64, w_g: f64, w_e: f64) -> Vec<ComplexMatrix> {
    let (gp, ge) = (w_g.sqrt(), w_e.sqrt());
    let (s, k) = (p.sqrt(), (1.0 - p).sqrt());
    vec![
        ComplexMatrix::from_real(2, &[gp, 0.0, 0.0, gp * k]).unwrap(),
        ComplexMatrix::from_real(2, &[0.0, gp * s, 0.0, 0.0]).unwrap(),
        ComplexMatrix::from_real(2, &[ge * k, 0.0, 0.0, ge]).unwrap(),
        ComplexMatrix::from_real(2, &[0.0, 0.0, ge * s, 0.0]).unwrap(),
    ]
}

#[test]
fn kraus_oracle_is_trace_preserving() {
    let ks = gadc_kraus(0.3, 0.8, 0.2);
    let sum = ks.iter().fold(ComplexMatrix::zeros(2), |acc, k| &acc + &(&k.adjoint() * k));
    assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn single_collision_is_generalized_amplitude_damping(
        rho in qubit_state(),
        p in 0.0f64..=1.0,
        w_g in 0.0f64..=1.0,
    ) {
        let anc = ThermalAncilla::new(w_g, 1.0 - w_g).unwrap();
        let reg = composite_from_system(&rho, &[anc]).unwrap();
        let u = pair_collision_unitary(2, (0, 1), p).unwrap();
        let reduced = reg.apply(&u).unwrap().system();
        let oracle = apply_kraus(rho.matrix(), &gadc_kraus(p, anc.w_g, anc.w_e));
        prop_assert!(reduced.matrix().max_abs_diff(&oracle) < 1e-10);
    }

    #[test]
    fn spectators_are_untouched(rho in density(16), p in 0.0f64..=1.0, pick in 0usize..6) {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let pair = pairs[pick];
        let u = pair_collision_unitary(4, pair, p).unwrap();
        let after = rho.conjugate_by(&u.matrix);
        for q in (0..4).filter(|&q| q != pair.0 && q != pair.1) {
            let before = partial_trace(&rho, &[2; 4], &[q]).unwrap();
            let now = partial_trace(&after, &[2; 4], &[q]).unwrap();
            prop_assert!(before.max_abs_diff(&now) < 1e-12);
        }
    }

    #[test]
    fn collisions_conserve_excitation_number(rho in density(8), p in 0.0f64..=1.0) {
        // The number operator Σ n_q is diagonal with entries = popcount.
        let number: Vec<f64> = (0..8usize).map(|k| k.count_ones() as f64).collect();
        let expect = |m: &ComplexMatrix| -> f64 { (0..8).map(|k| number[k] * m[(k, k)].re).sum() };
        for pair in [(0, 1), (0, 2), (1, 2)] {
            let u = pair_collision_unitary(3, pair, p).unwrap();
            prop_assert!((expect(&rho) - expect(&rho.conjugate_by(&u.matrix))).abs() < 1e-12);
        }
    }
}

#[test]
fn registers_reject_non_states() {
    assert!(DensityMatrix::new(ComplexMatrix::diag(&[0.5, 0.5, 0.5, -0.5]), vec![2, 2]).is_err());
}
