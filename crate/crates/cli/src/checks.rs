//! Named verification suites and the pinned worked-example table.

use num_bigint::BigInt;
use num_traits::{One, Zero};
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
use pasep2::permutations::PartiallySignedPermutation;
use pasep2::qseries::{binomial, factorial, q_factorial, q_int};
use pasep2::states::{AdeWord, SegComposition, StateWord};
use pasep2::{QPoly, QRat};

type Check = (&'static str, Box<dyn Fn() -> Result<String, String>>);

fn rat(num: i64, den: i64) -> QRat {
    QRat::new(BigInt::from(num), BigInt::from(den))
}

/// Parse a compact path description like `R0 L1* X3 F0`: kind letter,
/// weight digits, optional `*` mark.
fn path_steps(spec: &str) -> Vec<PathStep> {
    spec.split_whitespace()
        .map(|tok| {
            let marked = tok.ends_with('*');
            let tok = tok.trim_end_matches('*');
            let kind = match &tok[..1] {
                "R" => StepKind::Rise,
                "L" => StepKind::LevelSolid,
                "X" => StepKind::LevelDashed,
                "F" => StepKind::Fall,
                other => panic!("bad kind {other}"),
            };
            let weight: u32 = tok[1..].parse().expect("weight digits");
            PathStep { kind, weight, marked }
        })
        .collect()
}

fn small_path(spec: &str) -> MarkedLaguerreHistory {
    MarkedLaguerreHistory::new(path_steps(spec)).expect("valid fixture path")
}

fn large_path(spec: &str) -> MarkedLargeLaguerreHistory {
    MarkedLargeLaguerreHistory::new(path_steps(spec)).expect("valid fixture path")
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

pub fn verify_suites(name: &str, max_size: usize) -> Option<Vec<Check>> {
    let all = [
        "ansatz-relations",
        "recurrences",
        "factorization",
        "lumping",
        "particle-hole",
        "mnk",
        "backends",
        "bijections",
    ];
    let selected: Vec<&'static str> = if name == "all" {
        all.to_vec()
    } else {
        all.iter().copied().filter(|s| *s == name).collect()
    };
    if selected.is_empty() {
        return None;
    }
    Some(
        selected
            .into_iter()
            .map(|s| match s {
                "ansatz-relations" => suite_ansatz_relations(),
                "recurrences" => suite_recurrences(max_size),
                "factorization" => suite_factorization(),
                "lumping" => suite_lumping(),
                "particle-hole" => suite_particle_hole(),
                "mnk" => suite_mnk(),
                "backends" => suite_backends(),
                "bijections" => suite_bijections(),
                _ => unreachable!(),
            })
            .collect(),
    )
}

fn suite_ansatz_relations() -> Check {
    ("ansatz-relations", Box::new(|| {
        verify_relations(8).map_err(|e| e.to_string())?;
        verify_relations_q1(8).map_err(|e| e.to_string())?;
        Ok("five relations at d = 8, and at q = 1 with D + E in place of A".into())
    }))
}

fn suite_recurrences(max_size: usize) -> Check {
    ("recurrences", Box::new(move || {
        check_recurrences(max_size).map_err(|e| e.to_string())?;
        Ok(format!("word recurrences for all shapes of size <= {max_size}"))
    }))
}

fn suite_factorization() -> Check {
    ("factorization", Box::new(|| {
        let mut words = 0usize;
        for len in 0..=5usize {
            for word in AdeWord::all_words(len) {
                let z = z_word_ansatz(&word);
                let quotient = z
                    .div_exact(&q_factorial(word.count_a() + 1))
                    .map_err(|e| format!("word {word}: {e}"))?;
                if quotient.coeffs().iter().any(|c| c < &BigInt::zero()) {
                    return Err(format!("word {word}: negative quotient coefficient"));
                }
                words += 1;
            }
        }
        Ok(format!("[r+1]_q! divides Z with nonnegative quotient on {words} words"))
    }))
}

fn suite_lumping() -> Check {
    ("lumping", Box::new(|| {
        let mut states = 0usize;
        for (n, r) in [(3, 1), (3, 2), (4, 1), (4, 2)] {
            let report = lumping_check_q1(n, r).map_err(|e| e.to_string())?;
            if !report.is_ok() {
                return Err(format!("({n}, {r}): {:?}", report.failures));
            }
            states += report.states_checked;
        }
        Ok(format!("q = 1 sector projection on {states} states"))
    }))
}

fn suite_particle_hole() -> Check {
    ("particle-hole", Box::new(|| {
        for n in 1..=4usize {
            for r in 0..=n {
                let chain = ChainModel::build(n, r, rat(1, 2)).map_err(|e| e.to_string())?;
                for (i, x) in chain.states().iter().enumerate() {
                    let xi = chain.state_index(&x.particle_hole()).unwrap();
                    for (j, y) in chain.states().iter().enumerate() {
                        let yj = chain.state_index(&y.particle_hole()).unwrap();
                        if chain.transition(i, j) != chain.transition(xi, yj) {
                            return Err(format!("transition symmetry fails at {x} -> {y}"));
                        }
                    }
                }
            }
        }
        for len in 0..=5usize {
            for word in AdeWord::all_words(len) {
                expect_eq(
                    &format!("Z_{word} under iota"),
                    z_word_paths(&word, false),
                    z_word_paths(&word.iota(), false),
                )?;
            }
        }
        Ok("transition symmetry (N <= 4) and Z_X = Z_iota(X) (|X| <= 5)".into())
    }))
}

fn suite_mnk() -> Check {
    ("mnk", Box::new(|| {
        for n in 1..=6usize {
            for k in 0..=n {
                let closed = mnk_closed_form(n, k).map_err(|e| format!("m_{n}^{k}: {e}"))?;
                expect_eq(&format!("m_{n}^{k}"), closed, mnk_by_enumeration(n, k))?;
            }
        }
        Ok("closed form equals enumeration for n <= 6, all k".into())
    }))
}

fn suite_backends() -> Check {
    ("backends", Box::new(|| {
        let mut evaluations = 0usize;
        for n in 1..=4usize {
            for r in 0..=n {
                let z_total = z_sector_ansatz(n, r);
                expect_eq(&format!("sector ({n}, {r})"), z_total.clone(), z_sector_paths(n, r))?;
                for q in [rat(1, 1), rat(1, 2), rat(1, 3)] {
                    let chain = ChainModel::build(n, r, q.clone()).map_err(|e| e.to_string())?;
                    let pi = chain.stationary().map_err(|e| e.to_string())?;
                    let denom = z_total.eval(&q);
                    for (i, state) in chain.states().iter().enumerate() {
                        let word = state.to_ade();
                        let by_ansatz = z_word_ansatz(&word).eval(&q) / denom.clone();
                        let by_paths = z_word_paths(&word, false).eval(&q) / denom.clone();
                        expect_eq(&format!("{state} at q = {q}"), pi.probabilities()[i].clone(), by_ansatz)?;
                        expect_eq(&format!("{state} at q = {q}"), pi.probabilities()[i].clone(), by_paths)?;
                        evaluations += 1;
                    }
                }
            }
        }
        Ok(format!("chain = ansatz = paths on {evaluations} state evaluations"))
    }))
}

fn suite_bijections() -> Check {
    ("bijections", Box::new(|| {
        for n in 1..=5usize {
            for sigma in PartiallySignedPermutation::enumerate(n) {
                let h = marked_francon_viennot(&sigma);
                expect_eq("tw", h.total_weight(), sigma.tw())?;
                expect_eq("label", h.label(), sigma.genocchi_composition().to_ade())?;
                expect_eq("fv round trip", marked_francon_viennot_inverse(&h), sigma.clone())?;
            }
        }
        for len in 0..=4usize {
            for word in AdeWord::all_words(len) {
                for h in MarkedLaguerreHistory::enumerate_with_label(&word) {
                    let image = history_to_large(&h);
                    expect_eq("psi label", image.label(), h.label())?;
                    expect_eq("psi weight", image.total_weight(), h.total_weight())?;
                    expect_eq("psi round trip", large_to_history(&image), h.clone())?;
                }
                for g in MarkedLargeLaguerreHistory::enumerate_with_label(&word) {
                    let image = particle_hole_involution(&g);
                    expect_eq("iota label", image.label(), g.label().iota())?;
                    expect_eq("iota weight", image.total_weight(), g.total_weight())?;
                    expect_eq("iota involution", particle_hole_involution(&image), g.clone())?;
                }
            }
        }
        Ok("round trips, label/weight laws, involution (sizes <= 5)".into())
    }))
}

/// Every pinned worked example, as (name, check) pairs.
pub fn paper_examples() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    fn push(
        checks: &mut Vec<Check>,
        name: &'static str,
        f: impl Fn() -> Result<String, String> + 'static,
    ) {
        checks.push((name, Box::new(f)));
    }

    push(&mut checks, "state-to-ade bgo", || {
        let s: StateWord = "bgo".parse().unwrap();
        expect_eq("ade", s.to_ade().to_string(), "DAE".into())?;
        Ok("bgo encodes to DAE".into())
    });

    push(&mut checks, "word involution", || {
        let w: AdeWord = "ADADEEE".parse().unwrap();
        expect_eq("iota", w.iota().to_string(), "DDDEAEA".into())?;
        Ok("ADADEEE maps to DDDEAEA".into())
    });

    push(&mut checks, "segmented composition encodings", || {
        let c: SegComposition = "1|2|1,2,2".parse().unwrap();
        expect_eq("descents", format!("{:?}", c.descent_set()), "{4, 6}".into())?;
        expect_eq("segments", format!("{:?}", c.segmentation_set()), "{1, 3}".into())?;
        expect_eq("to ade", c.to_ade().to_string(), "ADAEDED".into())?;
        let w: AdeWord = "ADAEDED".parse().unwrap();
        expect_eq("from ade", w.to_seg_composition().to_string(), "1|2|1,2,2".into())?;
        let c: SegComposition = "1|2|2,2,1".parse().unwrap();
        expect_eq("to ade", c.to_ade().to_string(), "ADADEDE".into())?;
        Ok("both worked compositions round-trip".into())
    });

    push(&mut checks, "marked history fixture", || {
        let h = small_path("R0 L1* R0 X3* L0 F1 L0 F0");
        expect_eq("total weight", h.total_weight(), 5)?;
        expect_eq("label", h.label().to_string(), "ADADEDE".into())?;
        Ok("size-8 marked path: weight 5, label ADADEDE".into())
    });

    push(&mut checks, "plain history fixture", || {
        let h = small_path("R0 L0 R0 X1 L0 F1 L0 F0");
        expect_eq("total weight", h.total_weight(), 2)?;
        let weights: String = h.steps().iter().map(|s| s.weight.to_string()).collect();
        expect_eq("weight word", weights, "00010100".into())?;
        Ok("size-8 path of weight word 00010100".into())
    });

    push(&mut checks, "large history label", || {
        let paths = MarkedLargeLaguerreHistory::enumerate_with_label(&"ADADDEDE".parse().unwrap());
        if paths.is_empty() {
            return Err("no marked large Laguerre history with label ADADDEDE".into());
        }
        for p in &paths {
            expect_eq("label", p.label().to_string(), "ADADDEDE".into())?;
        }
        Ok(format!("{} paths carry label ADADDEDE", paths.len()))
    });

    push(&mut checks, "weight polynomials at q = 1", || {
        let one = rat(1, 1);
        expect_eq("Z_DDE(1)", z_word_paths(&"DDE".parse().unwrap(), false).eval(&one), rat(7, 1))?;
        expect_eq("Z_DAE(1)", z_word_paths(&"DAE".parse().unwrap(), false).eval(&one), rat(14, 1))?;
        expect_eq("Z_(3,1)(1)", z_sector_ansatz(3, 1).eval(&one), rat(72, 1))?;
        for n in 0..=6usize {
            for r in 0..=n {
                let expected = QRat::from_integer(binomial(n, r) * factorial(n + 1));
                expect_eq(&format!("Z_({n},{r})(1)"), z_sector_ansatz(n, r).eval(&one), expected)?;
            }
        }
        for r in 0..=5usize {
            expect_eq(&format!("Z_({r},{r})"), z_sector_ansatz(r, r), q_factorial(r + 1))?;
        }
        Ok("sector counts C(N,r)(N+1)! and the fully gray column [r+1]_q!".into())
    });

    push(&mut checks, "fully marked prefix base case", || {
        expect_eq("m_1^0", mnk_closed_form(1, 0).unwrap(), QPoly::one())?;
        expect_eq("m_1^1", mnk_closed_form(1, 1).unwrap(), QPoly::one())?;
        Ok("single path of generating weight 1 in both cases".into())
    });

    push(&mut checks, "opposing steps walkthrough", || {
        let p = large_path("R0 R0 F0 X0 R0 R0 F0 L0 F0 F0");
        expect_eq("opposing of step 5", p.opposing_step(4).map_err(|e| e.to_string())?, 8)?;
        Ok("the rise at step 5 opposes the fall at step 9".into())
    });

    push(&mut checks, "pattern statistics of the running permutation", || {
        let sigma: PartiallySignedPermutation = "2~ 5 7 8 3 6 4~ 1".parse().unwrap();
        expect_eq("tw", sigma.tw(), 5)?;
        expect_eq("GDes", format!("{:?}", sigma.genocchi_descents()), "{6, 8}".into())?;
        expect_eq("GC", sigma.genocchi_composition().to_string(), "1|2|2,2,1".into())?;
        expect_eq("ade(GC)", sigma.genocchi_composition().to_ade().to_string(), "ADADEDE".into())?;
        Ok("tw = 5, GDes = {6, 8}, GC = (1|2|2,2,1)".into())
    });

    push(&mut checks, "partially signed permutations of size 2", || {
        let got: Vec<String> =
            PartiallySignedPermutation::enumerate(2).iter().map(|p| p.to_string()).collect();
        expect_eq("B'_2", got, vec!["1 2".into(), "1 2~".into(), "2 1".into(), "2~ 1".into()])?;
        Ok("B'_2 = {12, 12~, 21, 2~1}".into())
    });

    push(&mut checks, "equivalence class of the worked permutation", || {
        let sigma: PartiallySignedPermutation = "2~ 7 3 4~ 5 1 8 6".parse().unwrap();
        let mut got: Vec<String> =
            sigma.equivalence_class().iter().map(|p| p.to_string()).collect();
        got.sort();
        let want: Vec<String> = [
            "2~ 5 1 7 3 4~ 8 6",
            "2~ 7 3 4~ 5 1 8 6",
            "5 1 2~ 7 3 4~ 8 6",
            "5 1 7 3 4~ 2~ 8 6",
            "7 3 4~ 2~ 5 1 8 6",
            "7 3 4~ 5 1 2~ 8 6",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        expect_eq("class", got, want)?;
        Ok("all six rearrangements, matching the listing".into())
    });

    push(&mut checks, "Françon-Viennot on 25783641", || {
        let h = francon_viennot(&[2, 5, 7, 8, 3, 6, 4, 1]);
        expect_eq("path", h.clone(), small_path("R0 L0 R0 X1 L0 F1 L0 F0"))?;
        expect_eq("inverse", francon_viennot_inverse(&h), vec![2, 5, 7, 8, 3, 6, 4, 1])?;
        Ok("weight word 00010100 and exact round trip".into())
    });

    push(&mut checks, "marked Françon-Viennot on the signed permutation", || {
        let sigma: PartiallySignedPermutation = "2~ 5 7 8 3 6 4~ 1".parse().unwrap();
        let h = marked_francon_viennot(&sigma);
        expect_eq("path", h.clone(), small_path("R0 L1* R0 X3* L0 F1 L0 F0"))?;
        expect_eq("inverse", marked_francon_viennot_inverse(&h), sigma)?;
        Ok("marks on steps 2 and 4 carrying weights 1 and 3".into())
    });

    push(&mut checks, "size-reducing map on the worked path", || {
        let h = small_path("R0 L0 R0 X1 L0 F1 L0 F0");
        let image = history_to_large(&h);
        expect_eq("image", image.clone(), large_path("R0 L0 X0 R1 F0 L1 F0"))?;
        expect_eq("round trip", large_to_history(&image), h)?;
        Ok("labels and weights carried to the size-7 image".into())
    });

    push(&mut checks, "size-reducing map on the worked marked path", || {
        let h = small_path("R0 L1* R0 X3* L0 F1 L0 F0");
        let image = history_to_large(&h);
        expect_eq("image", image.clone(), large_path("R1* L0 L2* R1 F0 L1 F0"))?;
        expect_eq("label", image.label().to_string(), "ADADEDE".into())?;
        expect_eq("weight", image.total_weight(), 5)?;
        expect_eq("round trip", large_to_history(&image), h)?;
        Ok("marked image keeps label ADADEDE and weight 5".into())
    });

    push(&mut checks, "particle-hole involution walkthrough", || {
        let input = large_path("R1* L0 L2* R1 F0 X1 F0");
        expect_eq("input label", input.label().to_string(), "ADADEEE".into())?;
        let image = particle_hole_involution(&input);
        expect_eq("image", image.clone(), large_path("R0 L1 R1 F0 L2* X0 F1*"))?;
        expect_eq("image label", image.label().to_string(), "DDDEAEA".into())?;
        expect_eq("weight", image.total_weight(), input.total_weight())?;
        expect_eq("involution", particle_hole_involution(&image), input)?;
        Ok("label ADADEEE maps to DDDEAEA at constant weight 5".into())
    });

    push(&mut checks, "explicit matrices", || {
        let m = pasep2::ansatz::build_matrices(4);
        expect_eq("D[1][1]", m.d[(0, 0)].clone(), QPoly::one())?;
        expect_eq("D[1][2]", m.d[(0, 1)].clone(), QPoly::one())?;
        expect_eq("D[2][2]", m.d[(1, 1)].clone(), q_int(2))?;
        expect_eq("A[1][1]", m.a[(0, 0)].clone(), QPoly::one())?;
        let wv = m.w.iter().zip(&m.v).fold(QPoly::zero(), |acc, (x, y)| &acc + &(x * y));
        expect_eq("W.V", wv, QPoly::one())?;
        verify_relations(6).map_err(|e| e.to_string())?;
        verify_relations_q1(6).map_err(|e| e.to_string())?;
        Ok("top-left blocks, W.V = 1, relations at d = 6 and the q = 1 degeneration".into())
    });

    push(&mut checks, "chain transitions on three sites", || {
        let chain = ChainModel::build(3, 2, rat(1, 3)).map_err(|e| e.to_string())?;
        let idx = |s: &str| chain.state_index(&s.parse().unwrap()).unwrap();
        expect_eq("ogg -> bgg", chain.transition(idx("ogg"), idx("bgg")).clone(), rat(1, 4))?;
        expect_eq("bgg -> gbg", chain.transition(idx("bgg"), idx("gbg")).clone(), rat(1, 4))?;
        expect_eq("gbg -> bgg", chain.transition(idx("gbg"), idx("bgg")).clone(), rat(1, 12))?;
        Ok("entering edge 1/(N+1) and the 1, q pair across a gray".into())
    });

    push(&mut checks, "worked stationary probabilities", || {
        let chain = ChainModel::build(3, 1, rat(1, 1)).map_err(|e| e.to_string())?;
        let pi = chain.stationary().map_err(|e| e.to_string())?;
        let idx = chain.state_index(&"bgo".parse().unwrap()).unwrap();
        expect_eq("P(bgo)", pi.probabilities()[idx].clone(), rat(14, 72))?;
        let base = ChainModel::build(3, 0, rat(1, 1)).map_err(|e| e.to_string())?;
        let pi0 = base.stationary().map_err(|e| e.to_string())?;
        for s in ["bbo", "boo"] {
            let i = base.state_index(&s.parse().unwrap()).unwrap();
            expect_eq(&format!("P({s})"), pi0.probabilities()[i].clone(), rat(7, 24))?;
        }
        expect_eq(
            "projection instance",
            rat(14, 72),
            (rat(7, 24) + rat(7, 24)) / rat(3, 1),
        )?;
        let report = lumping_check_q1(3, 1).map_err(|e| e.to_string())?;
        if !report.is_ok() {
            return Err(format!("{:?}", report.failures));
        }
        Ok("14/72, twice 7/24, and the q = 1 projection identity".into())
    });

    push(&mut checks, "recurrence instances", || {
        let a: AdeWord = "A".parse().unwrap();
        expect_eq("Z_A", z_word_ansatz(&a), q_factorial(2))?;
        let ae: AdeWord = "AE".parse().unwrap();
        expect_eq("Z_AE", z_word_ansatz(&ae), &q_int(2) * &z_word_ansatz(&a))?;
        Ok("Z_A = [2]_q! and Z_AE = [2]_q Z_A".into())
    });

    checks
}
