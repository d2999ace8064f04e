//! 2-PASEP configurations and their word encodings.
//!
//! A configuration of the process on `N` sites is a [`StateWord`] over
//! holes, black particles, and gray particles. Each state has an
//! [`AdeWord`] encoding (hole ↦ `E`, black ↦ `D`, gray ↦ `A`), and every
//! ADE word of length `n - 1` corresponds to a [`SegComposition`] of `n`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("a state needs at least one site")]
    EmptyState,
    #[error("invalid site character {0:?} (expected 'o', 'b', or 'g')")]
    BadSiteChar(char),
    #[error("invalid letter {0:?} (expected 'A', 'D', or 'E')")]
    BadLetter(char),
    #[error("invalid segmented composition: {0}")]
    BadComposition(String),
}

/// One lattice site of the process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Site {
    Hole,
    Black,
    Gray,
}

/// A 2-PASEP configuration: at least one site.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateWord {
    sites: Vec<Site>,
}

impl StateWord {
    pub fn new(sites: Vec<Site>) -> Result<Self, WordError> {
        if sites.is_empty() {
            return Err(WordError::EmptyState);
        }
        Ok(StateWord { sites })
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn gray_count(&self) -> usize {
        self.sites.iter().filter(|s| **s == Site::Gray).count()
    }

    /// Letter-wise encoding: hole ↦ E, black ↦ D, gray ↦ A.
    pub fn to_ade(&self) -> AdeWord {
        AdeWord::new(
            self.sites
                .iter()
                .map(|s| match s {
                    Site::Hole => AdeLetter::E,
                    Site::Black => AdeLetter::D,
                    Site::Gray => AdeLetter::A,
                })
                .collect(),
        )
    }

    /// Particle-hole image: reverse the lattice and exchange holes with
    /// black particles; gray particles stay gray.
    pub fn particle_hole(&self) -> StateWord {
        StateWord {
            sites: self
                .sites
                .iter()
                .rev()
                .map(|s| match s {
                    Site::Hole => Site::Black,
                    Site::Black => Site::Hole,
                    Site::Gray => Site::Gray,
                })
                .collect(),
        }
    }

    /// All states with `n` sites and exactly `r` gray particles, in
    /// lexicographic order (Hole < Black < Gray).
    pub fn enumerate(n: usize, r: usize) -> Vec<StateWord> {
        assert!(n >= 1 && r <= n, "need 1 <= n and r <= n");
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        fn rec(current: &mut Vec<Site>, n: usize, grays_left: usize, out: &mut Vec<StateWord>) {
            let remaining = n - current.len();
            if remaining == 0 {
                out.push(StateWord { sites: current.clone() });
                return;
            }
            for site in [Site::Hole, Site::Black, Site::Gray] {
                let g = match site {
                    Site::Gray => {
                        if grays_left == 0 {
                            continue;
                        }
                        grays_left - 1
                    }
                    _ => {
                        if grays_left > remaining - 1 {
                            continue;
                        }
                        grays_left
                    }
                };
                current.push(site);
                rec(current, n, g, out);
                current.pop();
            }
        }
        rec(&mut current, n, r, &mut out);
        out
    }
}

impl fmt::Display for StateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sites {
            let c = match s {
                Site::Hole => 'o',
                Site::Black => 'b',
                Site::Gray => 'g',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for StateWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        let sites = s
            .chars()
            .map(|c| match c {
                'o' => Ok(Site::Hole),
                'b' => Ok(Site::Black),
                'g' => Ok(Site::Gray),
                other => Err(WordError::BadSiteChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        StateWord::new(sites)
    }
}

/// Letter of an ADE word. The derived order `A < D < E` fixes the
/// lexicographic enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdeLetter {
    A,
    D,
    E,
}

/// Word over the alphabet {A, D, E}; may be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdeWord {
    letters: Vec<AdeLetter>,
}

impl AdeWord {
    pub fn new(letters: Vec<AdeLetter>) -> Self {
        AdeWord { letters }
    }

    pub fn empty() -> Self {
        AdeWord::default()
    }

    pub fn letters(&self) -> &[AdeLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn count_a(&self) -> usize {
        self.letters.iter().filter(|l| **l == AdeLetter::A).count()
    }

    /// Particle-hole involution on words: reverse, then swap D and E.
    pub fn iota(&self) -> AdeWord {
        AdeWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| match l {
                    AdeLetter::A => AdeLetter::A,
                    AdeLetter::D => AdeLetter::E,
                    AdeLetter::E => AdeLetter::D,
                })
                .collect(),
        }
    }

    /// Inverse of [`StateWord::to_ade`]; fails only on the empty word.
    pub fn to_state(&self) -> Result<StateWord, WordError> {
        StateWord::new(
            self.letters
                .iter()
                .map(|l| match l {
                    AdeLetter::E => Site::Hole,
                    AdeLetter::D => Site::Black,
                    AdeLetter::A => Site::Gray,
                })
                .collect(),
        )
    }

    /// All words of length `n` with exactly `r` letters `A`, in
    /// lexicographic order (A < D < E).
    pub fn enumerate(n: usize, r: usize) -> Vec<AdeWord> {
        assert!(r <= n, "need r <= n");
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        fn rec(current: &mut Vec<AdeLetter>, n: usize, a_left: usize, out: &mut Vec<AdeWord>) {
            let remaining = n - current.len();
            if remaining == 0 {
                out.push(AdeWord { letters: current.clone() });
                return;
            }
            for letter in [AdeLetter::A, AdeLetter::D, AdeLetter::E] {
                let a = match letter {
                    AdeLetter::A => {
                        if a_left == 0 {
                            continue;
                        }
                        a_left - 1
                    }
                    _ => {
                        if a_left > remaining - 1 {
                            continue;
                        }
                        a_left
                    }
                };
                current.push(letter);
                rec(current, n, a, out);
                current.pop();
            }
        }
        rec(&mut current, n, r, &mut out);
        out
    }

    /// All `3^n` words of length `n`, lexicographic.
    pub fn all_words(n: usize) -> Vec<AdeWord> {
        let mut out = vec![AdeWord::empty()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * 3);
            for w in &out {
                for letter in [AdeLetter::A, AdeLetter::D, AdeLetter::E] {
                    let mut letters = w.letters.clone();
                    letters.push(letter);
                    next.push(AdeWord { letters });
                }
            }
            out = next;
        }
        out
    }

    /// The segmented composition whose ADE word is `self`: letters at
    /// positions `1..n-1` cut the composition, `A` with a bar and `E`
    /// with a comma.
    pub fn to_seg_composition(&self) -> SegComposition {
        let n = self.letters.len() + 1;
        let mut parts = Vec::new();
        let mut seps = Vec::new();
        let mut prev = 0usize;
        for (idx, letter) in self.letters.iter().enumerate() {
            let pos = idx + 1; // 1-based position in {1..n-1}
            match letter {
                AdeLetter::A => {
                    parts.push(pos - prev);
                    seps.push(Separator::Bar);
                    prev = pos;
                }
                AdeLetter::E => {
                    parts.push(pos - prev);
                    seps.push(Separator::Comma);
                    prev = pos;
                }
                AdeLetter::D => {}
            }
        }
        parts.push(n - prev);
        SegComposition { parts, seps }
    }
}

impl fmt::Display for AdeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", match l {
                AdeLetter::A => 'A',
                AdeLetter::D => 'D',
                AdeLetter::E => 'E',
            })?;
        }
        Ok(())
    }
}

impl FromStr for AdeWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        let letters = s
            .chars()
            .map(|c| match c {
                'A' => Ok(AdeLetter::A),
                'D' => Ok(AdeLetter::D),
                'E' => Ok(AdeLetter::E),
                other => Err(WordError::BadLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AdeWord { letters })
    }
}

/// Separator between two parts of a segmented composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Separator {
    Bar,
    Comma,
}

/// Composition of `n` whose parts are separated by bars or commas,
/// rendered as in `1|2|1,2,2`. Bars carry the segmentation set, commas
/// the descent set; both are derived, never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SegComposition {
    parts: Vec<usize>,
    seps: Vec<Separator>,
}

impl SegComposition {
    pub fn new(parts: Vec<usize>, seps: Vec<Separator>) -> Result<Self, WordError> {
        if parts.is_empty() {
            return Err(WordError::BadComposition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(WordError::BadComposition("parts must be positive".into()));
        }
        if seps.len() + 1 != parts.len() {
            return Err(WordError::BadComposition(format!(
                "{} parts need {} separators, got {}",
                parts.len(),
                parts.len() - 1,
                seps.len()
            )));
        }
        Ok(SegComposition { parts, seps })
    }

    /// The unique segmented composition of `n` with the given descent
    /// set (commas) and segmentation set (bars). The two sets must be
    /// disjoint subsets of `{1..n-1}`.
    pub fn from_sets(
        n: usize,
        descents: &std::collections::BTreeSet<usize>,
        segments: &std::collections::BTreeSet<usize>,
    ) -> Result<Self, WordError> {
        if descents.intersection(segments).next().is_some() {
            return Err(WordError::BadComposition(
                "descent and segmentation sets must be disjoint".into(),
            ));
        }
        let mut parts = Vec::new();
        let mut seps = Vec::new();
        let mut prev = 0usize;
        for &cut in descents.union(segments) {
            if cut == 0 || cut >= n {
                return Err(WordError::BadComposition(format!(
                    "cut position {cut} outside 1..{}",
                    n - 1
                )));
            }
            parts.push(cut - prev);
            seps.push(if segments.contains(&cut) { Separator::Bar } else { Separator::Comma });
            prev = cut;
        }
        parts.push(n - prev);
        SegComposition::new(parts, seps)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn separators(&self) -> &[Separator] {
        &self.seps
    }

    /// Sum of the parts.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Prefix sums of parts followed by a comma.
    pub fn descent_set(&self) -> std::collections::BTreeSet<usize> {
        self.cut_set(Separator::Comma)
    }

    /// Prefix sums of parts followed by a bar.
    pub fn segmentation_set(&self) -> std::collections::BTreeSet<usize> {
        self.cut_set(Separator::Bar)
    }

    fn cut_set(&self, which: Separator) -> std::collections::BTreeSet<usize> {
        let mut acc = 0;
        let mut out = std::collections::BTreeSet::new();
        for (part, sep) in self.parts.iter().zip(&self.seps) {
            acc += part;
            if *sep == which {
                out.insert(acc);
            }
        }
        out
    }

    /// The ADE word of length `n - 1`: position `i` holds `E` on a
    /// descent, `A` on a segmentation, `D` otherwise.
    pub fn to_ade(&self) -> AdeWord {
        let n = self.n();
        let des = self.descent_set();
        let seg = self.segmentation_set();
        AdeWord::new(
            (1..n)
                .map(|i| {
                    if des.contains(&i) {
                        AdeLetter::E
                    } else if seg.contains(&i) {
                        AdeLetter::A
                    } else {
                        AdeLetter::D
                    }
                })
                .collect(),
        )
    }
}

impl fmt::Display for SegComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "{}", match self.seps[i - 1] {
                    Separator::Bar => '|',
                    Separator::Comma => ',',
                })?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

impl FromStr for SegComposition {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        let mut parts = Vec::new();
        let mut seps = Vec::new();
        let mut digits = String::new();
        let finish_part = |digits: &mut String, parts: &mut Vec<usize>| -> Result<(), WordError> {
            if digits.is_empty() {
                return Err(WordError::BadComposition(format!("missing part in {s:?}")));
            }
            let value: usize = digits
                .parse()
                .map_err(|_| WordError::BadComposition(format!("bad part {digits:?}")))?;
            parts.push(value);
            digits.clear();
            Ok(())
        };
        for c in s.chars() {
            match c {
                '0'..='9' => digits.push(c),
                '|' => {
                    finish_part(&mut digits, &mut parts)?;
                    seps.push(Separator::Bar);
                }
                ',' => {
                    finish_part(&mut digits, &mut parts)?;
                    seps.push(Separator::Comma);
                }
                other => {
                    return Err(WordError::BadComposition(format!("unexpected {other:?} in {s:?}")))
                }
            }
        }
        finish_part(&mut digits, &mut parts)?;
        SegComposition::new(parts, seps)
    }
}
