//! Laguerre histories and their marked and large variants.
//!
//! These are weighted Motzkin paths with two horizontal step kinds and
//! height-bounded weights. Marking a step raises its weight by an amount
//! depending on the step kind and the path family; a path's label is an
//! ADE word reading marks as `A`, rising/solid steps as `D`, and the
//! rest as `E`. The generating polynomial of all paths with a given
//! label is one of the three backends for the stationary distribution.

use crate::qseries::{q_factorial, PolyError};
use crate::states::{AdeLetter, AdeWord};
use crate::QPoly;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Step kind of a Motzkin path. The declaration order (`Rise` <
/// `LevelSolid` < `LevelDashed` < `Fall`) fixes the deterministic
/// enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StepKind {
    /// Increasing step (`R` in JSON).
    #[serde(rename = "R")]
    Rise,
    /// Solid horizontal step (`L`).
    #[serde(rename = "L")]
    LevelSolid,
    /// Dashed horizontal step (`X`).
    #[serde(rename = "X")]
    LevelDashed,
    /// Decreasing step (`F`).
    #[serde(rename = "F")]
    Fall,
}

impl StepKind {
    /// Height change of the step.
    pub fn delta(self) -> i64 {
        match self {
            StepKind::Rise => 1,
            StepKind::Fall => -1,
            _ => 0,
        }
    }

    /// Rising or solid-horizontal: the kinds labeled `D` when unmarked.
    pub fn is_up_class(self) -> bool {
        matches!(self, StepKind::Rise | StepKind::LevelSolid)
    }

    pub fn is_level(self) -> bool {
        matches!(self, StepKind::LevelSolid | StepKind::LevelDashed)
    }

    /// Swap solid and dashed horizontal kinds; leave rises and falls.
    pub fn toggled_level(self) -> StepKind {
        match self {
            StepKind::LevelSolid => StepKind::LevelDashed,
            StepKind::LevelDashed => StepKind::LevelSolid,
            other => other,
        }
    }
}

/// One weighted, possibly marked step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PathStep {
    pub kind: StepKind,
    #[serde(rename = "w")]
    pub weight: u32,
    pub marked: bool,
}

impl PathStep {
    pub fn new(kind: StepKind, weight: u32) -> Self {
        PathStep { kind, weight, marked: false }
    }

    pub fn marked(kind: StepKind, weight: u32) -> Self {
        PathStep { kind, weight, marked: true }
    }

    fn letter(&self) -> AdeLetter {
        if self.marked {
            AdeLetter::A
        } else if self.kind.is_up_class() {
            AdeLetter::D
        } else {
            AdeLetter::E
        }
    }
}

/// Which weight-bound regime a path lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    /// Marked Laguerre history: size >= 1, first step never marked.
    /// Unmarked rise/solid weights lie in `[0, h]`, unmarked fall/dashed
    /// in `[0, h-1]`; marking adds `h`.
    Marked,
    /// Marked large Laguerre history: any step may be marked, unmarked
    /// weights lie in `[0, h]` for every kind; marking adds `h + 1` to
    /// rise/solid steps and `h` to fall/dashed steps.
    MarkedLarge,
}

impl Family {
    /// Inclusive weight bounds for a step of `kind` at starting height
    /// `h`; an empty range (`lo > hi`) means the step is impossible.
    fn weight_bounds(self, kind: StepKind, marked: bool, h: i64) -> (i64, i64) {
        match (self, marked, kind.is_up_class()) {
            (Family::Marked, false, true) => (0, h),
            (Family::Marked, false, false) => (0, h - 1),
            (Family::Marked, true, true) => (h, 2 * h),
            (Family::Marked, true, false) => (h, 2 * h - 1),
            (Family::MarkedLarge, false, _) => (0, h),
            (Family::MarkedLarge, true, true) => (h + 1, 2 * h + 1),
            (Family::MarkedLarge, true, false) => (h, 2 * h),
        }
    }
}

/// Validation failure, naming the first offending step (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("a Laguerre history needs at least one step")]
    Empty,
    #[error("step {step}: path dips below the axis")]
    NegativeHeight { step: usize },
    #[error("path ends at height {final_height}, not 0")]
    OpenEnd { final_height: i64 },
    #[error("step 0: the first step of a Laguerre history is never marked")]
    FirstStepMarked,
    #[error("step {step}: weight {weight} outside [{lo}, {hi}]")]
    WeightOutOfRange { step: usize, weight: u32, lo: i64, hi: i64 },
    #[error("step {step} is not a rise")]
    NotARise { step: usize },
    #[error("step {step}: no opposing fall (path not a closed Motzkin path)")]
    NoOpposingStep { step: usize },
}

fn validate_steps(steps: &[PathStep], family: Family) -> Result<(), PathError> {
    if family == Family::Marked && steps.is_empty() {
        return Err(PathError::Empty);
    }
    let mut h: i64 = 0;
    for (i, step) in steps.iter().enumerate() {
        if i == 0 && family == Family::Marked && step.marked {
            return Err(PathError::FirstStepMarked);
        }
        if h + step.kind.delta() < 0 {
            return Err(PathError::NegativeHeight { step: i });
        }
        let (lo, hi) = family.weight_bounds(step.kind, step.marked, h);
        let w = i64::from(step.weight);
        if w < lo || w > hi {
            return Err(PathError::WeightOutOfRange { step: i, weight: step.weight, lo, hi });
        }
        h += step.kind.delta();
    }
    if h != 0 {
        return Err(PathError::OpenEnd { final_height: h });
    }
    Ok(())
}

/// Starting heights of every step (assumes a valid profile; heights may
/// go negative on arbitrary input).
pub fn start_heights(steps: &[PathStep]) -> Vec<i64> {
    let mut h = 0;
    steps
        .iter()
        .map(|s| {
            let start = h;
            h += s.kind.delta();
            start
        })
        .collect()
}

/// Index of the opposing fall of the rise at `i` (all 0-based): the
/// first later fall that starts one level above the rise's start.
pub fn opposing_step(steps: &[PathStep], i: usize) -> Result<usize, PathError> {
    let heights = start_heights(steps);
    if steps.get(i).map(|s| s.kind) != Some(StepKind::Rise) {
        return Err(PathError::NotARise { step: i });
    }
    let target = heights[i] + 1;
    for j in i + 1..steps.len() {
        if steps[j].kind == StepKind::Fall && heights[j] == target {
            return Ok(j);
        }
    }
    Err(PathError::NoOpposingStep { step: i })
}

macro_rules! history_common {
    ($ty:ident, $family:expr) => {
        impl $ty {
            /// Validate and wrap a step sequence.
            pub fn new(steps: Vec<PathStep>) -> Result<Self, PathError> {
                Self::validate_steps(&steps)?;
                Ok($ty { steps })
            }

            /// Check every invariant of this path family, reporting the
            /// first violated step.
            pub fn validate_steps(steps: &[PathStep]) -> Result<(), PathError> {
                validate_steps(steps, $family)
            }

            pub fn steps(&self) -> &[PathStep] {
                &self.steps
            }

            pub fn len(&self) -> usize {
                self.steps.len()
            }

            pub fn is_empty(&self) -> bool {
                self.steps.is_empty()
            }

            /// Sum of all step weights.
            pub fn total_weight(&self) -> u64 {
                self.steps.iter().map(|s| u64::from(s.weight)).sum()
            }

            /// Starting height of every step.
            pub fn start_heights(&self) -> Vec<i64> {
                start_heights(&self.steps)
            }

            /// 0-based positions of the marked steps.
            pub fn marked_positions(&self) -> Vec<usize> {
                self.steps
                    .iter()
                    .enumerate()
                    .filter_map(|(i, s)| s.marked.then_some(i))
                    .collect()
            }

            /// See [`opposing_step`].
            pub fn opposing_step(&self, i: usize) -> Result<usize, PathError> {
                opposing_step(&self.steps, i)
            }
        }

        impl Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                self.steps.serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let steps = Vec::<PathStep>::deserialize(d)?;
                $ty::new(steps).map_err(serde::de::Error::custom)
            }
        }
    };
}

/// Marked Laguerre history: a closed Motzkin path of size `n >= 1` where
/// any step but the first may be marked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedLaguerreHistory {
    steps: Vec<PathStep>,
}

/// Marked large Laguerre history: a closed Motzkin path of size `n >= 0`
/// where every step may be marked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedLargeLaguerreHistory {
    steps: Vec<PathStep>,
}

history_common!(MarkedLaguerreHistory, Family::Marked);
history_common!(MarkedLargeLaguerreHistory, Family::MarkedLarge);

impl MarkedLaguerreHistory {
    /// Label of length `n - 1`: marks read `A`, rising/solid steps `D`,
    /// the rest `E`; the first step's letter (always `D`) is dropped.
    pub fn label(&self) -> AdeWord {
        AdeWord::new(self.steps[1..].iter().map(PathStep::letter).collect())
    }

    /// Every marked Laguerre history of size `|label| + 1` with the given
    /// label, in deterministic depth-first order.
    pub fn enumerate_with_label(label: &AdeWord) -> Vec<Self> {
        let mut out = Vec::new();
        for_each_path(label, Family::Marked, &mut |steps| {
            out.push(MarkedLaguerreHistory { steps: steps.to_vec() })
        });
        out
    }

    /// The empty marked large Laguerre history corresponds to size 1
    /// here, so sizes shift by one between the two families.
    pub fn size(&self) -> usize {
        self.steps.len()
    }
}

impl MarkedLargeLaguerreHistory {
    /// Label of length `n`: same letter map as the small family, no
    /// dropped step.
    pub fn label(&self) -> AdeWord {
        AdeWord::new(self.steps.iter().map(PathStep::letter).collect())
    }

    /// Every marked large Laguerre history of size `|label|` with the
    /// given label, in deterministic depth-first order.
    pub fn enumerate_with_label(label: &AdeWord) -> Vec<Self> {
        let mut out = Vec::new();
        for_each_path(label, Family::MarkedLarge, &mut |steps| {
            out.push(MarkedLargeLaguerreHistory { steps: steps.to_vec() })
        });
        out
    }
}

/// Drive a depth-first walk over all valid paths with the given label.
///
/// The label pins each step's letter: `D` and `E` force an unmarked step
/// of the rising/solid resp. falling/dashed class, while `A` forces a
/// mark and leaves all four kinds open. For the small family an extra
/// unmarked leading step (letter `D`, dropped from the label) is
/// prepended. Kinds are explored in `StepKind` order and weights
/// ascending.
fn for_each_path(label: &AdeWord, family: Family, visit: &mut impl FnMut(&[PathStep])) {
    // (marked, candidate kinds) per step
    let mut slots: Vec<(bool, &[StepKind])> = Vec::with_capacity(label.len() + 1);
    const UP: &[StepKind] = &[StepKind::Rise, StepKind::LevelSolid];
    const DOWN: &[StepKind] = &[StepKind::LevelDashed, StepKind::Fall];
    const ALL: &[StepKind] = &[
        StepKind::Rise,
        StepKind::LevelSolid,
        StepKind::LevelDashed,
        StepKind::Fall,
    ];
    if family == Family::Marked {
        slots.push((false, UP));
    }
    for letter in label.letters() {
        slots.push(match letter {
            AdeLetter::D => (false, UP),
            AdeLetter::E => (false, DOWN),
            AdeLetter::A => (true, ALL),
        });
    }
    let mut current: Vec<PathStep> = Vec::with_capacity(slots.len());
    fn rec(
        slots: &[(bool, &[StepKind])],
        i: usize,
        h: i64,
        family: Family,
        current: &mut Vec<PathStep>,
        visit: &mut impl FnMut(&[PathStep]),
    ) {
        if i == slots.len() {
            if h == 0 {
                visit(current);
            }
            return;
        }
        // the path must still be able to come back down to 0
        if h > (slots.len() - i) as i64 {
            return;
        }
        let (marked, kinds) = slots[i];
        for &kind in kinds {
            if h + kind.delta() < 0 {
                continue;
            }
            let (lo, hi) = family.weight_bounds(kind, marked, h);
            let mut w = lo;
            while w <= hi {
                current.push(PathStep { kind, weight: w as u32, marked });
                rec(slots, i + 1, h + kind.delta(), family, current, visit);
                current.pop();
                w += 1;
            }
        }
    }
    rec(&slots, 0, 0, family, &mut current, visit);
}

/// Generating polynomial of all paths with the given label: the sum of
/// `q^(total weight)` over the small family (`large = false`) or the
/// large family (`large = true`).
pub fn z_word_paths(label: &AdeWord, large: bool) -> QPoly {
    let family = if large { Family::MarkedLarge } else { Family::Marked };
    let mut counts: Vec<u128> = Vec::new();
    for_each_path(label, family, &mut |steps| {
        let tw: usize = steps.iter().map(|s| s.weight as usize).sum();
        if counts.len() <= tw {
            counts.resize(tw + 1, 0);
        }
        counts[tw] += 1;
    });
    QPoly::new(counts.into_iter().map(BigInt::from).collect())
}

/// Sector partition function: the sum of [`z_word_paths`] over every
/// word of length `n` with `r` letters `A`.
pub fn z_sector_paths(n: usize, r: usize) -> QPoly {
    assert!(r <= n, "need r <= n");
    let mut acc = QPoly::zero();
    for word in AdeWord::enumerate(n, r) {
        acc = &acc + &z_word_paths(&word, false);
    }
    acc
}

/// Closed form for the weight polynomial of fully marked prefixes:
/// `q^C(k,2) [n]_q!^2 / ([n-k]_q! [k]_q!)`.
///
/// A `NotDivisible` error here would mean the closed form is wrong, i.e.
/// an implementation bug.
pub fn mnk_closed_form(n: usize, k: usize) -> Result<QPoly, PolyError> {
    assert!(n >= 1 && k <= n, "need 1 <= n and k <= n");
    let fact_n = q_factorial::<BigInt>(n);
    let shift = k * k.saturating_sub(1) / 2;
    let numerator = &(&fact_n * &fact_n) * &QPoly::monomial(BigInt::from(1), shift);
    numerator
        .div_exact(&q_factorial(n - k))?
        .div_exact(&q_factorial(k))
}

/// Brute-force mate of [`mnk_closed_form`]: enumerate all open Motzkin
/// prefixes of size `n` ending at height `k` whose steps are all marked
/// except the first, and sum `q^(total weight)`.
///
/// These prefixes relax the closed-path invariant (they need not return
/// to height 0), so they are generated directly rather than through the
/// history types.
pub fn mnk_by_enumeration(n: usize, k: usize) -> QPoly {
    assert!(n >= 1 && k <= n, "need 1 <= n and k <= n");
    let mut counts: Vec<u128> = Vec::new();
    fn rec(
        remaining: usize,
        h: i64,
        target: i64,
        weight: usize,
        first: bool,
        counts: &mut Vec<u128>,
    ) {
        if remaining == 0 {
            if h == target {
                if counts.len() <= weight {
                    counts.resize(weight + 1, 0);
                }
                counts[weight] += 1;
            }
            return;
        }
        if (h - target).abs() > remaining as i64 {
            return;
        }
        for kind in [StepKind::Rise, StepKind::LevelSolid, StepKind::LevelDashed, StepKind::Fall] {
            if h + kind.delta() < 0 {
                continue;
            }
            let marked = !first;
            let (lo, hi) = Family::Marked.weight_bounds(kind, marked, h);
            let mut w = lo;
            while w <= hi {
                rec(remaining - 1, h + kind.delta(), target, weight + w as usize, false, counts);
                w += 1;
            }
        }
    }
    rec(n, 0, k as i64, 0, true, &mut counts);
    QPoly::new(counts.into_iter().map(BigInt::from).collect())
}
