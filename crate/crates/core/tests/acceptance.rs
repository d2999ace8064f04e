//! Acceptance suite: one test per criterion, exact tolerances pinned in
//! code. Each test prints a `[criterion N] PASS` line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use num_bigint::BigInt;
use num_traits::Zero;
use pasep2::ansatz::{check_recurrences, verify_relations, verify_relations_q1, z_sector_ansatz, z_word_ansatz};
use pasep2::bijections::{
    francon_viennot, francon_viennot_inverse, history_to_large, large_to_history,
    marked_francon_viennot, marked_francon_viennot_inverse, particle_hole_involution,
};
use pasep2::chain::{lumping_check_q1, ChainModel};
use pasep2::histories::{
    mnk_by_enumeration, mnk_closed_form, z_sector_paths, z_word_paths, MarkedLaguerreHistory,
    MarkedLargeLaguerreHistory, PathStep, StepKind,
};
use pasep2::permutations::{z_word_perms, PartiallySignedPermutation};
use pasep2::qseries::{binomial, factorial, q_factorial};
use pasep2::states::{AdeWord, StateWord};
use pasep2::{QPoly, QRat};
use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

fn rat(num: i64, den: i64) -> QRat {
    QRat::new(BigInt::from(num), BigInt::from(den))
}

fn q_values() -> [QRat; 3] {
    [rat(1, 1), rat(1, 2), rat(1, 3)]
}

/// Stationary probability of one state from the chain backend.
fn chain_probability(state: &StateWord, q: &QRat) -> QRat {
    let chain = ChainModel::build(state.len(), state.gray_count(), q.clone()).unwrap();
    let pi = chain.stationary().unwrap();
    pi.probabilities()[chain.state_index(state).unwrap()].clone()
}

#[test]
fn acceptance_01_worked_example_probability() {
    let start = Instant::now();
    let state: StateWord = "bgo".parse().unwrap();
    let expected = rat(14, 72);
    let q = rat(1, 1);
    // chain backend
    assert_eq!(chain_probability(&state, &q), expected);
    // matrix product backend
    let word = state.to_ade();
    let ansatz = z_word_ansatz(&word).eval(&q) / z_sector_ansatz(3, 1).eval(&q);
    assert_eq!(ansatz, expected);
    // path enumeration backend
    let paths = z_word_paths(&word, false).eval(&q) / z_sector_paths(3, 1).eval(&q);
    assert_eq!(paths, expected);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("[criterion 1] PASS worked example 14/72 from all three backends ({elapsed:?})");
}

#[test]
fn acceptance_02_three_backend_equivalence() {
    let start = Instant::now();
    let mut states_checked = 0usize;
    for n in 1..=4usize {
        for r in 0..=n {
            // polynomials once per word, shared across the q values
            let z_total_poly = z_sector_ansatz(n, r);
            assert_eq!(z_total_poly, z_sector_paths(n, r), "sector ({n}, {r})");
            for q in q_values() {
                let chain = ChainModel::build(n, r, q.clone()).unwrap();
                let pi = chain.stationary().unwrap();
                let denom = z_total_poly.eval(&q);
                for (i, state) in chain.states().iter().enumerate() {
                    let word = state.to_ade();
                    let by_chain = &pi.probabilities()[i];
                    let by_ansatz = z_word_ansatz(&word).eval(&q) / denom.clone();
                    let by_paths = z_word_paths(&word, false).eval(&q) / denom.clone();
                    assert_eq!(*by_chain, by_ansatz, "state {state} q {q}");
                    assert_eq!(*by_chain, by_paths, "state {state} q {q}");
                    states_checked += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget 2 min");
    println!("[criterion 2] PASS three-backend equivalence on {states_checked} state evaluations ({elapsed:?})");
}

#[test]
fn acceptance_03_permutation_backend() {
    let start = Instant::now();
    let mut words_checked = 0usize;
    for len in 0..=4usize {
        // bucket q^tw by label over all partially signed permutations of
        // size len + 1, then compare against the path enumeration
        let mut buckets: HashMap<String, Vec<u64>> = HashMap::new();
        for sigma in PartiallySignedPermutation::enumerate(len + 1) {
            let label = sigma.genocchi_composition().to_ade().to_string();
            let tw = sigma.tw() as usize;
            let counts = buckets.entry(label).or_default();
            if counts.len() <= tw {
                counts.resize(tw + 1, 0);
            }
            counts[tw] += 1;
        }
        for word in AdeWord::all_words(len) {
            let by_perms = buckets
                .remove(&word.to_string())
                .map(|counts| QPoly::new(counts.into_iter().map(BigInt::from).collect()))
                .unwrap_or_else(QPoly::zero);
            assert_eq!(by_perms, z_word_paths(&word, false), "word {word}");
            words_checked += 1;
        }
        assert!(buckets.is_empty(), "labels outside the word set: {buckets:?}");
    }
    // the by-filter operation agrees on a sample
    for word in ["A", "DAE", "EAD", "DDE"] {
        let word: AdeWord = word.parse().unwrap();
        assert_eq!(z_word_perms(&word), z_word_paths(&word, false));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 1 min");
    println!("[criterion 3] PASS permutation backend matches paths on {words_checked} words ({elapsed:?})");
}

#[test]
fn acceptance_04_closed_forms() {
    let start = Instant::now();
    // Z_{N,r}(1) = C(N, r) (N+1)!
    let one = rat(1, 1);
    for n in 0..=6usize {
        for r in 0..=n {
            let expected = QRat::from_integer(binomial(n, r) * factorial(n + 1));
            assert_eq!(z_sector_ansatz(n, r).eval(&one), expected, "Z_({n},{r})(1)");
            if n <= 5 {
                // the same count realized as marked Laguerre histories
                assert_eq!(z_sector_paths(n, r).eval(&one), expected, "paths ({n},{r})");
            }
        }
    }
    // Z_{r,r}(q) = [r+1]_q!
    for r in 0..=6usize {
        assert_eq!(z_sector_ansatz(r, r), q_factorial(r + 1), "Z_({r},{r})");
    }
    // closed form of m_n^k against the enumeration oracle
    for n in 1..=6usize {
        for k in 0..=n {
            assert_eq!(
                mnk_closed_form(n, k).unwrap(),
                mnk_by_enumeration(n, k),
                "m_{n}^{k}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget 2 min");
    println!("[criterion 4] PASS closed forms (sector counts, fully marked prefixes) ({elapsed:?})");
}

#[test]
fn acceptance_05_recurrence_suite() {
    let start = Instant::now();
    assert_eq!(check_recurrences(6), Ok(()));
    let elapsed = start.elapsed();
    println!("[criterion 5] PASS word recurrences for all shapes of size <= 6 ({elapsed:?})");
}

#[test]
fn acceptance_06_factorization() {
    let start = Instant::now();
    // [r+1]_q! divides Z_X with nonnegative integer quotient
    let mut words_checked = 0usize;
    for len in 0..=5usize {
        for word in AdeWord::all_words(len) {
            let z = z_word_ansatz(&word);
            // extends the backend agreement of criterion 2 to length 5
            assert_eq!(z, z_word_paths(&word, false), "backends at {word}");
            let quotient = z
                .div_exact(&q_factorial(word.count_a() + 1))
                .unwrap_or_else(|e| panic!("word {word}: {e}"));
            assert!(
                quotient.coeffs().iter().all(|c| c >= &BigInt::zero()),
                "word {word}: negative quotient coefficient"
            );
            words_checked += 1;
        }
    }
    // sector level: [r+1]_q! divides the whole normalization too
    for n in 0..=5usize {
        for r in 0..=n {
            let quotient = z_sector_ansatz(n, r).div_exact(&q_factorial(r + 1)).unwrap();
            assert!(quotient.coeffs().iter().all(|c| c >= &BigInt::zero()));
        }
    }
    // the q = 1 combinatorial mechanism: equivalence classes of size
    // exactly (r+1)! with constant Genocchi composition, partitioning
    // each label fiber
    for n in 1..=5usize {
        let mut fibers: HashMap<String, Vec<PartiallySignedPermutation>> = HashMap::new();
        for sigma in PartiallySignedPermutation::enumerate(n) {
            fibers
                .entry(sigma.genocchi_composition().to_string())
                .or_default()
                .push(sigma);
        }
        for (label, fiber) in fibers {
            let mut seen: BTreeSet<String> = BTreeSet::new();
            let mut classes: Vec<BTreeSet<String>> = Vec::new();
            for sigma in &fiber {
                if seen.contains(&sigma.to_string()) {
                    continue;
                }
                let class: BTreeSet<String> =
                    sigma.equivalence_class().iter().map(|t| t.to_string()).collect();
                let r = sigma.overline_count();
                assert_eq!(class.len(), (2..=r + 1).product::<usize>().max(1), "{label}");
                for member in &class {
                    assert!(seen.insert(member.clone()), "classes overlap at {member}");
                }
                classes.push(class);
            }
            assert_eq!(seen.len(), fiber.len(), "classes must cover the fiber of {label}");
        }
    }
    let elapsed = start.elapsed();
    println!("[criterion 6] PASS factorization on {words_checked} words + class partition ({elapsed:?})");
}

#[test]
fn acceptance_07_bijection_suite() {
    let start = Instant::now();
    // plain round trips and the statistic equalities, n <= 6
    for n in 1..=6usize {
        for sigma in PartiallySignedPermutation::enumerate_with_overlines(n, 0) {
            let h = francon_viennot(sigma.values());
            assert_eq!(francon_viennot_inverse(&h), sigma.values());
        }
        for sigma in PartiallySignedPermutation::enumerate(n) {
            let h = marked_francon_viennot(&sigma);
            assert_eq!(h.total_weight(), sigma.tw(), "tw of {sigma}");
            assert_eq!(h.label(), sigma.genocchi_composition().to_ade(), "label of {sigma}");
        }
    }
    // marked round trips and bijectivity per (n, r), n <= 5
    for n in 1..=5usize {
        for r in 0..n {
            let mut images: BTreeSet<Vec<PathStep>> = BTreeSet::new();
            for sigma in PartiallySignedPermutation::enumerate_with_overlines(n, r) {
                let h = marked_francon_viennot(&sigma);
                assert_eq!(h.total_weight(), sigma.tw());
                assert_eq!(h.label(), sigma.genocchi_composition().to_ade());
                assert_eq!(marked_francon_viennot_inverse(&h), sigma);
                assert!(images.insert(h.steps().to_vec()), "injectivity");
            }
            // surjectivity onto all valid marked histories of size n with
            // r marks
            let mut all: BTreeSet<Vec<PathStep>> = BTreeSet::new();
            for word in AdeWord::enumerate(n - 1, r) {
                for h in MarkedLaguerreHistory::enumerate_with_label(&word) {
                    all.insert(h.steps().to_vec());
                }
            }
            assert_eq!(images, all, "surjectivity at (n, r) = ({n}, {r})");
        }
    }
    // large round trips, involution laws, height relation, label length <= 5
    for len in 0..=5usize {
        for word in AdeWord::all_words(len) {
            for h in MarkedLaguerreHistory::enumerate_with_label(&word) {
                let image = history_to_large(&h);
                assert_eq!(image.label(), h.label());
                assert_eq!(image.total_weight(), h.total_weight());
                assert_eq!(large_to_history(&image), h);
                // height relation on the unmarked skeleton
                if h.marked_positions().is_empty() {
                    let hs = h.start_heights();
                    let is = image.start_heights();
                    for (k, step) in h.steps()[..h.len() - 1].iter().enumerate() {
                        let expected = if step.kind.is_up_class() { hs[k] } else { hs[k] - 1 };
                        assert_eq!(is[k], expected, "height relation at step {k}");
                    }
                }
            }
            for g in MarkedLargeLaguerreHistory::enumerate_with_label(&word) {
                let image = particle_hole_involution(&g);
                assert_eq!(image.label(), g.label().iota());
                assert_eq!(image.total_weight(), g.total_weight());
                assert_eq!(particle_hole_involution(&image), g);
                // marks mirror under reversal
                let n = g.len();
                let mirrored: BTreeSet<usize> =
                    g.marked_positions().iter().map(|i| n - 1 - i).collect();
                let image_marks: BTreeSet<usize> = image.marked_positions().into_iter().collect();
                assert_eq!(image_marks, mirrored);
                assert_eq!(history_to_large(&large_to_history(&g)), g);
            }
        }
    }
    // fixed vectors from the worked examples
    let h = francon_viennot(&[2, 5, 7, 8, 3, 6, 4, 1]);
    let weight_word: String =
        h.steps().iter().map(|s| char::from_digit(s.weight, 10).unwrap()).collect();
    assert_eq!(weight_word, "00010100");
    assert_eq!(francon_viennot_inverse(&h), vec![2, 5, 7, 8, 3, 6, 4, 1]);
    let adadeee: AdeWord = "ADADEEE".parse().unwrap();
    assert_eq!(adadeee.iota().to_string(), "DDDEAEA");
    let input = MarkedLargeLaguerreHistory::new(vec![
        PathStep::marked(StepKind::Rise, 1),
        PathStep::new(StepKind::LevelSolid, 0),
        PathStep::marked(StepKind::LevelSolid, 2),
        PathStep::new(StepKind::Rise, 1),
        PathStep::new(StepKind::Fall, 0),
        PathStep::new(StepKind::LevelDashed, 1),
        PathStep::new(StepKind::Fall, 0),
    ])
    .unwrap();
    assert_eq!(input.label(), adadeee);
    assert_eq!(particle_hole_involution(&input).label().to_string(), "DDDEAEA");
    let elapsed = start.elapsed();
    println!("[criterion 7] PASS bijection suite (round trips, involution, height law, fixed vectors) ({elapsed:?})");
}

#[test]
fn acceptance_08_particle_hole_symmetry() {
    let start = Instant::now();
    // transition symmetry P_{x,y} = P_{iota(x),iota(y)}
    for n in 1..=4usize {
        for r in 0..=n {
            let chain = ChainModel::build(n, r, rat(1, 2)).unwrap();
            for (i, x) in chain.states().iter().enumerate() {
                let xi = chain.state_index(&x.particle_hole()).unwrap();
                for (j, y) in chain.states().iter().enumerate() {
                    let yj = chain.state_index(&y.particle_hole()).unwrap();
                    assert_eq!(chain.transition(i, j), chain.transition(xi, yj));
                }
            }
        }
    }
    // generating-function symmetry Z_X = Z_{iota(X)}
    for len in 0..=5usize {
        for word in AdeWord::all_words(len) {
            assert_eq!(
                z_word_paths(&word, false),
                z_word_paths(&word.iota(), false),
                "word {word}"
            );
            assert_eq!(
                z_word_paths(&word, true),
                z_word_paths(&word.iota(), true),
                "large word {word}"
            );
        }
    }
    let elapsed = start.elapsed();
    println!("[criterion 8] PASS particle-hole symmetry (transitions and partition functions) ({elapsed:?})");
}

#[test]
fn acceptance_09_ansatz_relations() {
    let start = Instant::now();
    assert_eq!(verify_relations(8), Ok(()));
    assert_eq!(verify_relations_q1(8), Ok(()));
    let elapsed = start.elapsed();
    println!("[criterion 9] PASS commutation relations at d = 8 and q = 1 degeneration ({elapsed:?})");
}

#[test]
fn acceptance_10_lumping() {
    let start = Instant::now();
    for (n, r) in [(3, 1), (3, 2), (4, 1), (4, 2)] {
        let report = lumping_check_q1(n, r).unwrap();
        assert!(report.is_ok(), "lumping failed at ({n}, {r}): {:?}", report.failures);
    }
    let elapsed = start.elapsed();
    println!("[criterion 10] PASS q = 1 sector projection at (3,1), (3,2), (4,1), (4,2) ({elapsed:?})");
}

#[test]
fn acceptance_11_simulator_sanity() {
    let start = Instant::now();
    let chain = ChainModel::build(3, 1, rat(1, 1)).unwrap();
    let sim = chain.simulate(1_000_000, 42).unwrap();
    let pi = chain.stationary().unwrap();
    let tv = sim.total_variation(pi.probabilities());
    let bound = rat(1, 50); // 0.02
    assert!(tv <= bound, "total variation {tv} exceeds 0.02");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    println!("[criterion 11] PASS seed-pinned million-step trajectory, TV = {tv} <= 0.02 ({elapsed:?})");
}
