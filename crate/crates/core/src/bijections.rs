//! The bijections and involutions connecting permutations and paths.
//!
//! - [`francon_viennot`] / [`francon_viennot_inverse`]: permutations of
//!   size `n` ↔ Laguerre histories of size `n`;
//! - [`marked_francon_viennot`] / [`marked_francon_viennot_inverse`]:
//!   partially signed permutations ↔ marked Laguerre histories, carrying
//!   `tw` to the total weight and the Genocchi composition to the label;
//! - [`history_to_large`] / [`large_to_history`]: marked Laguerre
//!   histories of size `n` ↔ marked large Laguerre histories of size
//!   `n - 1`, preserving label and weight;
//! - [`particle_hole_involution`]: the weight-preserving involution on
//!   marked large Laguerre histories whose effect on labels is the
//!   particle-hole map (reverse and swap D/E), and its conjugate
//!   [`induced_particle_hole`] on marked Laguerre histories.

use crate::histories::{
    opposing_step, start_heights, MarkedLaguerreHistory, MarkedLargeLaguerreHistory, PathStep,
    StepKind,
};
use crate::permutations::{validate_permutation, PartiallySignedPermutation};
use std::collections::BTreeSet;

/// Mark increment of a step at starting height `h` in a marked Laguerre
/// history: always `h`.
fn small_increment(h: i64) -> u32 {
    h as u32
}

/// Mark increment in a marked large Laguerre history, judged on the kind
/// stored in the marked object: `h + 1` for rising/solid steps, `h` for
/// falling/dashed ones.
fn large_increment(kind: StepKind, h: i64) -> u32 {
    if kind.is_up_class() {
        (h + 1) as u32
    } else {
        h as u32
    }
}

/// Mark a step of a large history in place. Level steps flip between
/// solid and dashed when marked, and the weight rises by the increment
/// of the kind as stored after the flip.
fn mark_large(step: &mut PathStep, h: i64) {
    debug_assert!(!step.marked);
    step.kind = step.kind.toggled_level();
    step.weight += large_increment(step.kind, h);
    step.marked = true;
}

/// Inverse of [`mark_large`].
fn unmark_large(step: &mut PathStep, h: i64) {
    debug_assert!(step.marked);
    step.weight -= large_increment(step.kind, h);
    step.kind = step.kind.toggled_level();
    step.marked = false;
}

/// Map a permutation of `{1..n}` to its Laguerre history: step `k`
/// records whether the value `k` is a valley, peak, double rise, or
/// double descent (with boundary values `σ_0 = 0` and `σ_{n+1} = n+1`),
/// weighted by the 31-2 patterns in which `k` plays the role of the 2.
pub fn francon_viennot(perm: &[usize]) -> MarkedLaguerreHistory {
    validate_permutation(perm).expect("input must be a permutation of 1..=n");
    let n = perm.len();
    assert!(n >= 1, "need a nonempty permutation");
    let mut position = vec![0usize; n + 1];
    for (i, &v) in perm.iter().enumerate() {
        position[v] = i;
    }
    let mut steps = Vec::with_capacity(n);
    for (k, &j) in position.iter().enumerate().skip(1) {
        let left = if j == 0 { 0 } else { perm[j - 1] };
        let right = if j + 1 == n { n + 1 } else { perm[j + 1] };
        let kind = match (left > k, k > right) {
            (true, false) => StepKind::Rise,        // valley
            (false, true) => StepKind::Fall,        // peak
            (false, false) => StepKind::LevelSolid, // double rise
            (true, true) => StepKind::LevelDashed,  // double descent
        };
        let mut weight = 0u32;
        for i in 0..n.saturating_sub(1) {
            if i + 1 < j && perm[i] > k && k > perm[i + 1] {
                weight += 1;
            }
        }
        steps.push(PathStep::new(kind, weight));
    }
    MarkedLaguerreHistory::new(steps).expect("image of a permutation is a valid Laguerre history")
}

/// Slot of the placeholder word used by the inverse construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Value(usize),
    Hole,
}

/// Inverse of [`francon_viennot`] for unmarked histories: insert the
/// values `1..n` into a placeholder word, replacing the `(w_k + 1)`-st
/// hole according to the step kind, then drop the final trailing hole.
pub fn francon_viennot_inverse(history: &MarkedLaguerreHistory) -> Vec<usize> {
    assert!(
        history.marked_positions().is_empty(),
        "inverse Françon-Viennot expects an unmarked history",
    );
    let mut word = vec![Slot::Hole];
    for (idx, step) in history.steps().iter().enumerate() {
        let k = idx + 1;
        let target = word
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Slot::Hole)
            .nth(step.weight as usize)
            .map(|(i, _)| i)
            .expect("weight bound guarantees enough holes");
        let replacement: &[Slot] = match step.kind {
            StepKind::Rise => &[Slot::Hole, Slot::Value(k), Slot::Hole],
            StepKind::LevelSolid => &[Slot::Value(k), Slot::Hole],
            StepKind::LevelDashed => &[Slot::Hole, Slot::Value(k)],
            StepKind::Fall => &[Slot::Value(k)],
        };
        word.splice(target..=target, replacement.iter().copied());
    }
    let trailing = word.pop();
    debug_assert_eq!(trailing, Some(Slot::Hole), "exactly one hole remains, at the end");
    word.iter()
        .map(|s| match s {
            Slot::Value(v) => *v,
            Slot::Hole => unreachable!("only the trailing hole survives"),
        })
        .collect()
}

/// Marked extension of the Françon-Viennot map: strip the signs, build
/// the history of the underlying permutation, then mark step `i` for
/// every overlined value `i`, raising its weight by its starting height.
pub fn marked_francon_viennot(sigma: &PartiallySignedPermutation) -> MarkedLaguerreHistory {
    let plain = francon_viennot(sigma.values());
    let heights = plain.start_heights();
    let mut steps = plain.steps().to_vec();
    for &v in sigma.signs() {
        let idx = v - 1;
        steps[idx].weight += small_increment(heights[idx]);
        steps[idx].marked = true;
    }
    MarkedLaguerreHistory::new(steps).expect("marking yields a valid marked Laguerre history")
}

/// Inverse of [`marked_francon_viennot`]: unmark (remembering where the
/// marks were), invert the plain map, then overline the values matching
/// the marked positions.
pub fn marked_francon_viennot_inverse(
    history: &MarkedLaguerreHistory,
) -> PartiallySignedPermutation {
    let heights = history.start_heights();
    let mut steps = history.steps().to_vec();
    let mut signs = BTreeSet::new();
    for (i, step) in steps.iter_mut().enumerate() {
        if step.marked {
            step.weight -= small_increment(heights[i]);
            step.marked = false;
            signs.insert(i + 1);
        }
    }
    let plain = MarkedLaguerreHistory::new(steps).expect("unmarking preserves validity");
    let values = francon_viennot_inverse(&plain);
    PartiallySignedPermutation::new(values, signs)
        .expect("marked positions are valid overline values")
}

/// Kind table of the size-reducing map: output step `i` is computed from
/// the classes of input steps `i` and `i+1`.
fn shrink_kind(cur: StepKind, next: StepKind) -> StepKind {
    let row_up = matches!(cur, StepKind::Rise | StepKind::LevelDashed);
    let col_up = next.is_up_class();
    match (row_up, col_up) {
        (true, true) => StepKind::Rise,
        (true, false) => StepKind::LevelDashed,
        (false, true) => StepKind::LevelSolid,
        (false, false) => StepKind::Fall,
    }
}

/// Inverse kind table: the input step at `t` is pinned by the output
/// steps at `t` (row class) and `t - 1` (column class).
fn grow_kind(row_up: bool, col_up: bool) -> StepKind {
    match (row_up, col_up) {
        (true, true) => StepKind::Rise,
        (true, false) => StepKind::LevelDashed,
        (false, true) => StepKind::LevelSolid,
        (false, false) => StepKind::Fall,
    }
}

/// Size-reducing bijection onto marked large Laguerre histories: unmark,
/// apply the kind table (each output step keeps the weight of the input
/// step at the same position), then re-mark one position earlier.
/// Labels and total weights are preserved.
pub fn history_to_large(history: &MarkedLaguerreHistory) -> MarkedLargeLaguerreHistory {
    let marks = history.marked_positions();
    let heights = start_heights(history.steps());
    let mut base = history.steps().to_vec();
    for &i in &marks {
        base[i].weight -= small_increment(heights[i]);
        base[i].marked = false;
    }
    let n = base.len();
    let mut out = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        out.push(PathStep::new(shrink_kind(base[i].kind, base[i + 1].kind), base[i].weight));
    }
    let out_heights = start_heights(&out);
    for &i in &marks {
        // the first step of the small history is never marked, so i >= 1
        mark_large(&mut out[i - 1], out_heights[i - 1]);
    }
    MarkedLargeLaguerreHistory::new(out).expect("image is a valid marked large Laguerre history")
}

/// Inverse of [`history_to_large`].
pub fn large_to_history(history: &MarkedLargeLaguerreHistory) -> MarkedLaguerreHistory {
    let marks = history.marked_positions();
    let heights = start_heights(history.steps());
    let mut base = history.steps().to_vec();
    for &i in &marks {
        unmark_large(&mut base[i], heights[i]);
    }
    let n = base.len();
    let mut steps = Vec::with_capacity(n + 1);
    let mut h: i64 = 0;
    for t in 0..=n {
        let kind = if t == 0 && n == 0 {
            StepKind::LevelSolid
        } else if t == 0 {
            // the path starts at height 0: column class is rising/solid
            grow_kind(matches!(base[0].kind, StepKind::Rise | StepKind::LevelDashed), true)
        } else if t < n {
            grow_kind(
                matches!(base[t].kind, StepKind::Rise | StepKind::LevelDashed),
                base[t - 1].kind.is_up_class(),
            )
        } else {
            // last step: the column class of the final input step and the
            // requirement to close the path at height 0 pin the kind
            match (base[n - 1].kind.is_up_class(), h) {
                (true, 0) => StepKind::LevelSolid,
                (false, 1) => StepKind::Fall,
                (col, h) => unreachable!("impossible closing step: col_up={col}, height={h}"),
            }
        };
        let weight = if t < n { base[t].weight } else { 0 };
        steps.push(PathStep::new(kind, weight));
        h += kind.delta();
    }
    let heights = start_heights(&steps);
    for &i in &marks {
        let t = i + 1;
        steps[t].weight += small_increment(heights[t]);
        steps[t].marked = true;
    }
    MarkedLaguerreHistory::new(steps).expect("preimage is a valid marked Laguerre history")
}

/// The particle-hole involution on marked large Laguerre histories:
/// unmark, reverse the path, exchange the weights of opposing
/// rise/fall pairs, re-mark at the mirrored positions, and swap the
/// unmarked horizontal kinds. Total weight is preserved and the label
/// maps by reverse-and-swap-D/E.
///
/// A step marked at 1-based position `i` of a size-`n` path is re-marked
/// at position `n + 1 - i` (0-based: `n - 1 - i`), i.e. every mark
/// follows its step through the reversal; this is the convention under
/// which the map is an involution, which the exhaustive tests pin down.
pub fn particle_hole_involution(
    history: &MarkedLargeLaguerreHistory,
) -> MarkedLargeLaguerreHistory {
    let n = history.len();
    let marks = history.marked_positions();
    let heights = start_heights(history.steps());
    let mut steps = history.steps().to_vec();
    // 1. unmark
    for &i in &marks {
        unmark_large(&mut steps[i], heights[i]);
    }
    // 2. reverse: rises become falls and conversely, weights travel
    steps.reverse();
    for step in &mut steps {
        step.kind = match step.kind {
            StepKind::Rise => StepKind::Fall,
            StepKind::Fall => StepKind::Rise,
            level => level,
        };
    }
    // 3. exchange the weights of opposing rise/fall pairs
    for i in 0..n {
        if steps[i].kind == StepKind::Rise {
            let j = opposing_step(&steps, i).expect("closed Motzkin path");
            let (wi, wj) = (steps[i].weight, steps[j].weight);
            steps[i].weight = wj;
            steps[j].weight = wi;
        }
    }
    // 4. re-mark: a step marked at position i lands at position n-1-i
    //    (0-based) after the reversal
    let heights = start_heights(&steps);
    for &i in &marks {
        let t = n - 1 - i;
        mark_large(&mut steps[t], heights[t]);
    }
    // 5. swap unmarked solid and dashed horizontal steps
    for step in &mut steps {
        if !step.marked {
            step.kind = step.kind.toggled_level();
        }
    }
    MarkedLargeLaguerreHistory::new(steps).expect("involution image is valid")
}

/// The involution induced on marked Laguerre histories by conjugating
/// the particle-hole involution with the size-reducing bijection.
pub fn induced_particle_hole(history: &MarkedLaguerreHistory) -> MarkedLaguerreHistory {
    large_to_history(&particle_hole_involution(&history_to_large(history)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::AdeWord;

    fn step(kind: StepKind, weight: u32) -> PathStep {
        PathStep::new(kind, weight)
    }

    fn mstep(kind: StepKind, weight: u32) -> PathStep {
        PathStep::marked(kind, weight)
    }

    /// Size-8 history of the permutation 25783641: weight word 00010100.
    fn history_of_25783641() -> MarkedLaguerreHistory {
        MarkedLaguerreHistory::new(vec![
            step(StepKind::Rise, 0),
            step(StepKind::LevelSolid, 0),
            step(StepKind::Rise, 0),
            step(StepKind::LevelDashed, 1),
            step(StepKind::LevelSolid, 0),
            step(StepKind::Fall, 1),
            step(StepKind::LevelSolid, 0),
            step(StepKind::Fall, 0),
        ])
        .unwrap()
    }

    fn marked_history_of_running_example() -> MarkedLaguerreHistory {
        MarkedLaguerreHistory::new(vec![
            step(StepKind::Rise, 0),
            mstep(StepKind::LevelSolid, 1),
            step(StepKind::Rise, 0),
            mstep(StepKind::LevelDashed, 3),
            step(StepKind::LevelSolid, 0),
            step(StepKind::Fall, 1),
            step(StepKind::LevelSolid, 0),
            step(StepKind::Fall, 0),
        ])
        .unwrap()
    }

    #[test]
    fn francon_viennot_fixed_vector() {
        let h = francon_viennot(&[2, 5, 7, 8, 3, 6, 4, 1]);
        assert_eq!(h, history_of_25783641());
        let weight_word: String =
            h.steps().iter().map(|s| char::from_digit(s.weight, 10).unwrap()).collect();
        assert_eq!(weight_word, "00010100");
    }

    #[test]
    fn francon_viennot_smallest_cases() {
        let h = francon_viennot(&[1]);
        assert_eq!(h.steps(), &[step(StepKind::LevelSolid, 0)]);
        assert_eq!(francon_viennot_inverse(&h), vec![1]);
        // 1 is a valley (0-convention on the left), 2 a peak
        let h = francon_viennot(&[2, 1]);
        assert_eq!(h.steps(), &[step(StepKind::Rise, 0), step(StepKind::Fall, 0)]);
        assert_eq!(francon_viennot_inverse(&h), vec![2, 1]);
        for p in PartiallySignedPermutation::enumerate_with_overlines(3, 0) {
            let h = francon_viennot(p.values());
            assert_eq!(francon_viennot_inverse(&h), p.values());
        }
    }

    #[test]
    fn inverse_francon_viennot_fixed_vector() {
        assert_eq!(francon_viennot_inverse(&history_of_25783641()), vec![2, 5, 7, 8, 3, 6, 4, 1]);
    }

    #[test]
    fn marked_francon_viennot_fixed_vector() {
        let sigma: PartiallySignedPermutation = "2~ 5 7 8 3 6 4~ 1".parse().unwrap();
        let h = marked_francon_viennot(&sigma);
        assert_eq!(h, marked_history_of_running_example());
        assert_eq!(h.total_weight(), sigma.tw());
        assert_eq!(h.label(), sigma.genocchi_composition().to_ade());
        assert_eq!(marked_francon_viennot_inverse(&h), sigma);
    }

    #[test]
    fn unsigned_input_gives_plain_history() {
        let sigma = PartiallySignedPermutation::unsigned(vec![2, 5, 7, 8, 3, 6, 4, 1]).unwrap();
        assert_eq!(marked_francon_viennot(&sigma), history_of_25783641());
    }

    #[test]
    fn shrink_fixed_vector() {
        // the table output for the worked 8-step history
        let expected = MarkedLargeLaguerreHistory::new(vec![
            step(StepKind::Rise, 0),
            step(StepKind::LevelSolid, 0),
            step(StepKind::LevelDashed, 0),
            step(StepKind::Rise, 1),
            step(StepKind::Fall, 0),
            step(StepKind::LevelSolid, 1),
            step(StepKind::Fall, 0),
        ])
        .unwrap();
        let image = history_to_large(&history_of_25783641());
        assert_eq!(image, expected);
        // label preservation, dropped-first against full-length
        assert_eq!(image.label(), history_of_25783641().label());
        assert_eq!(large_to_history(&image), history_of_25783641());
    }

    #[test]
    fn shrink_marked_fixed_vector() {
        let image = history_to_large(&marked_history_of_running_example());
        let expected = MarkedLargeLaguerreHistory::new(vec![
            mstep(StepKind::Rise, 1),
            step(StepKind::LevelSolid, 0),
            mstep(StepKind::LevelSolid, 2),
            step(StepKind::Rise, 1),
            step(StepKind::Fall, 0),
            step(StepKind::LevelSolid, 1),
            step(StepKind::Fall, 0),
        ])
        .unwrap();
        assert_eq!(image, expected);
        assert_eq!(image.label(), marked_history_of_running_example().label());
        assert_eq!(image.total_weight(), marked_history_of_running_example().total_weight());
        assert_eq!(large_to_history(&image), marked_history_of_running_example());
    }

    #[test]
    fn size_one_history_maps_to_empty_large() {
        let single = MarkedLaguerreHistory::new(vec![step(StepKind::LevelSolid, 0)]).unwrap();
        let image = history_to_large(&single);
        assert!(image.is_empty());
        assert_eq!(large_to_history(&image), single);
    }

    /// The worked involution example: label ADADEEE to label DDDEAEA.
    fn involution_input() -> MarkedLargeLaguerreHistory {
        MarkedLargeLaguerreHistory::new(vec![
            mstep(StepKind::Rise, 1),
            step(StepKind::LevelSolid, 0),
            mstep(StepKind::LevelSolid, 2),
            step(StepKind::Rise, 1),
            step(StepKind::Fall, 0),
            step(StepKind::LevelDashed, 1),
            step(StepKind::Fall, 0),
        ])
        .unwrap()
    }

    #[test]
    fn involution_fixed_vector() {
        let input = involution_input();
        assert_eq!(input.label().to_string(), "ADADEEE");
        let image = particle_hole_involution(&input);
        let expected = MarkedLargeLaguerreHistory::new(vec![
            step(StepKind::Rise, 0),
            step(StepKind::LevelSolid, 1),
            step(StepKind::Rise, 1),
            step(StepKind::Fall, 0),
            mstep(StepKind::LevelSolid, 2),
            step(StepKind::LevelDashed, 0),
            mstep(StepKind::Fall, 1),
        ])
        .unwrap();
        assert_eq!(image, expected);
        assert_eq!(image.label().to_string(), "DDDEAEA");
        assert_eq!(image.label(), input.label().iota());
        assert_eq!(image.total_weight(), input.total_weight());
        assert_eq!(particle_hole_involution(&image), input);
    }

    #[test]
    fn involution_on_empty_path() {
        let empty = MarkedLargeLaguerreHistory::new(vec![]).unwrap();
        assert_eq!(particle_hole_involution(&empty), empty);
    }

    #[test]
    fn induced_involution_small_cases() {
        let single = MarkedLaguerreHistory::new(vec![step(StepKind::LevelSolid, 0)]).unwrap();
        assert_eq!(induced_particle_hole(&single), single);
        // composition consistency and involution on every history with
        // labels of length <= 3
        for len in 0..=3 {
            for word in AdeWord::all_words(len) {
                for h in MarkedLaguerreHistory::enumerate_with_label(&word) {
                    let composed =
                        large_to_history(&particle_hole_involution(&history_to_large(&h)));
                    let induced = induced_particle_hole(&h);
                    assert_eq!(induced, composed);
                    assert_eq!(induced.label(), h.label().iota());
                    assert_eq!(induced.total_weight(), h.total_weight());
                    assert_eq!(induced_particle_hole(&induced), h);
                }
            }
        }
    }

    #[test]
    fn round_trips_small_sizes() {
        for len in 0..=3 {
            for word in AdeWord::all_words(len) {
                for h in MarkedLaguerreHistory::enumerate_with_label(&word) {
                    assert_eq!(large_to_history(&history_to_large(&h)), h);
                    let sigma = marked_francon_viennot_inverse(&h);
                    assert_eq!(marked_francon_viennot(&sigma), h);
                }
                for g in MarkedLargeLaguerreHistory::enumerate_with_label(&word) {
                    assert_eq!(history_to_large(&large_to_history(&g)), g);
                    let back = particle_hole_involution(&particle_hole_involution(&g));
                    assert_eq!(back, g);
                }
            }
        }
    }
}
