//! Partially signed permutations and their descent machinery.
//!
//! A partially signed permutation is a permutation of `{1..n}` where any
//! value except 1 may carry an overline; comparisons use the order
//! `1̄ < 1 < 2̄ < 2 < ...`. The statistic `tw` (generalized pattern count)
//! matches the total weight of the corresponding marked Laguerre history,
//! and the Genocchi composition of descents matches its label.

use crate::states::{AdeWord, SegComposition};
use crate::QPoly;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("values {0:?} are not a permutation of 1..=n")]
    NotAPermutation(Vec<usize>),
    #[error("value 1 can never be overlined")]
    SignOnOne,
    #[error("overlined value {0} does not appear")]
    SignOutOfRange(usize),
    #[error("cannot parse {0:?} as a partially signed permutation")]
    Parse(String),
}

/// A value together with its sign, ordered `1̄ < 1 < 2̄ < 2 < ...`:
/// the overlined copy of a value sits just below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedValue {
    pub magnitude: usize,
    pub overlined: bool,
}

impl Ord for SignedValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.magnitude, !self.overlined).cmp(&(other.magnitude, !other.overlined))
    }
}

impl PartialOrd for SignedValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.magnitude, if self.overlined { "~" } else { "" })
    }
}

/// Permutation of `{1..n}` with overlines on a subset of `{2..n}`.
///
/// Text form: space-separated values with `~` marking an overline, e.g.
/// `2~ 5 7 8 3 6 4~ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPsp", into = "RawPsp")]
pub struct PartiallySignedPermutation {
    values: Vec<usize>,
    signs: BTreeSet<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPsp {
    values: Vec<usize>,
    signs: Vec<usize>,
}

impl TryFrom<RawPsp> for PartiallySignedPermutation {
    type Error = PermError;
    fn try_from(raw: RawPsp) -> Result<Self, PermError> {
        PartiallySignedPermutation::new(raw.values, raw.signs.into_iter().collect())
    }
}

impl From<PartiallySignedPermutation> for RawPsp {
    fn from(p: PartiallySignedPermutation) -> RawPsp {
        RawPsp { values: p.values, signs: p.signs.into_iter().collect() }
    }
}

/// Check that `values` is a permutation of `1..=values.len()`.
pub fn validate_permutation(values: &[usize]) -> Result<(), PermError> {
    let n = values.len();
    let mut seen = vec![false; n + 1];
    for &v in values {
        if v == 0 || v > n || seen[v] {
            return Err(PermError::NotAPermutation(values.to_vec()));
        }
        seen[v] = true;
    }
    Ok(())
}

impl PartiallySignedPermutation {
    pub fn new(values: Vec<usize>, signs: BTreeSet<usize>) -> Result<Self, PermError> {
        validate_permutation(&values)?;
        if signs.contains(&1) {
            return Err(PermError::SignOnOne);
        }
        if let Some(&bad) = signs.iter().find(|s| **s > values.len()) {
            return Err(PermError::SignOutOfRange(bad));
        }
        Ok(PartiallySignedPermutation { values, signs })
    }

    /// An unsigned permutation.
    pub fn unsigned(values: Vec<usize>) -> Result<Self, PermError> {
        PartiallySignedPermutation::new(values, BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The set of overlined values.
    pub fn signs(&self) -> &BTreeSet<usize> {
        &self.signs
    }

    pub fn overline_count(&self) -> usize {
        self.signs.len()
    }

    /// The signed value at 0-based position `i`.
    pub fn at(&self, i: usize) -> SignedValue {
        let v = self.values[i];
        SignedValue { magnitude: v, overlined: self.signs.contains(&v) }
    }

    fn signed_values(&self) -> Vec<SignedValue> {
        (0..self.len()).map(|i| self.at(i)).collect()
    }

    /// The `tw` statistic: occurrences of the vincular pattern 31-2
    /// (pairs `(i, j)` with `j > i + 1` and `σ_i > σ_j > σ_{i+1}`) plus
    /// occurrences of the (31, 2̄) pattern (pairs of an adjacent descent
    /// and an overlined value `k̄` with `σ_i ≥ k̄ > σ_{i+1}`; the
    /// overlined value may sit anywhere, including inside the descent).
    pub fn tw(&self) -> u64 {
        let sv = self.signed_values();
        let n = sv.len();
        let mut count = 0u64;
        for i in 0..n.saturating_sub(1) {
            for j in i + 2..n {
                if sv[i] > sv[j] && sv[j] > sv[i + 1] {
                    count += 1;
                }
            }
        }
        for i in 0..n.saturating_sub(1) {
            for &k in &self.signs {
                let kbar = SignedValue { magnitude: k, overlined: true };
                if sv[i] >= kbar && kbar > sv[i + 1] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Genocchi descent set: unsigned values followed by a smaller value
    /// (with the convention that position `n + 1` holds `n + 1`, so the
    /// last value never qualifies).
    pub fn genocchi_descents(&self) -> BTreeSet<usize> {
        let sv = self.signed_values();
        let n = sv.len();
        let mut out = BTreeSet::new();
        for j in 0..n {
            let v = self.values[j];
            if self.signs.contains(&v) {
                continue;
            }
            let right = if j + 1 < n {
                sv[j + 1]
            } else {
                SignedValue { magnitude: n + 1, overlined: false }
            };
            if sv[j] > right {
                out.insert(v);
            }
        }
        out
    }

    /// Genocchi composition of descents: the segmented composition of
    /// `n` whose descent set is `GDes - 1` and segmentation set is
    /// `Sign - 1`. Its ADE word has length `n - 1`.
    pub fn genocchi_composition(&self) -> SegComposition {
        let descents: BTreeSet<usize> = self.genocchi_descents().iter().map(|d| d - 1).collect();
        let segments: BTreeSet<usize> = self.signs.iter().map(|s| s - 1).collect();
        SegComposition::from_sets(self.len(), &descents, &segments)
            .expect("descents and signs are disjoint values in 2..=n")
    }

    /// All partially signed permutations equivalent to `self`: cut after
    /// each overlined value and after the value 1 into blocks
    /// `u_1 .. u_{r+1}` plus the tail, and rearrange the blocks in every
    /// possible order. The class has exactly `(r+1)!` members (including
    /// `self`), all sharing the same Genocchi composition.
    pub fn equivalence_class(&self) -> Vec<PartiallySignedPermutation> {
        let n = self.len();
        let mut cuts = Vec::new();
        for (i, &v) in self.values.iter().enumerate() {
            if v == 1 || self.signs.contains(&v) {
                cuts.push(i);
            }
        }
        let mut blocks: Vec<&[usize]> = Vec::with_capacity(cuts.len());
        let mut prev = 0;
        for &c in &cuts {
            blocks.push(&self.values[prev..=c]);
            prev = c + 1;
        }
        let tail = &self.values[prev..n];
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        let mut out = Vec::with_capacity(factorial_usize(blocks.len()));
        loop {
            let mut values = Vec::with_capacity(n);
            for &b in &order {
                values.extend_from_slice(blocks[b]);
            }
            values.extend_from_slice(tail);
            out.push(PartiallySignedPermutation { values, signs: self.signs.clone() });
            if !next_permutation(&mut order) {
                break;
            }
        }
        out
    }

    /// All `n! 2^(n-1)` partially signed permutations of size `n`:
    /// values in lexicographic order, sign subsets in binary order.
    pub fn enumerate(n: usize) -> Vec<PartiallySignedPermutation> {
        assert!(n >= 1);
        let mut out = Vec::new();
        let mut values: Vec<usize> = (1..=n).collect();
        loop {
            for mask in 0u64..(1 << (n - 1)) {
                let signs: BTreeSet<usize> =
                    (2..=n).filter(|v| mask >> (v - 2) & 1 == 1).collect();
                out.push(PartiallySignedPermutation { values: values.clone(), signs });
            }
            if !next_permutation(&mut values) {
                break;
            }
        }
        out
    }

    /// The `n! C(n-1, r)` elements with exactly `r` overlines.
    pub fn enumerate_with_overlines(n: usize, r: usize) -> Vec<PartiallySignedPermutation> {
        assert!(n >= 1 && r < n, "need 1 <= n and r < n");
        PartiallySignedPermutation::enumerate(n)
            .into_iter()
            .filter(|p| p.overline_count() == r)
            .collect()
    }
}

fn factorial_usize(n: usize) -> usize {
    (2..=n).product::<usize>().max(1)
}

/// Advance to the lexicographically next arrangement; false after the
/// last one.
fn next_permutation(arr: &mut [usize]) -> bool {
    let n = arr.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

/// Generating polynomial of `q^tw` over the partially signed
/// permutations of size `|word| + 1` whose Genocchi composition encodes
/// to `word`.
pub fn z_word_perms(word: &AdeWord) -> QPoly {
    let n = word.len() + 1;
    let mut counts: Vec<u128> = Vec::new();
    for p in PartiallySignedPermutation::enumerate(n) {
        if &p.genocchi_composition().to_ade() == word {
            let tw = p.tw() as usize;
            if counts.len() <= tw {
                counts.resize(tw + 1, 0);
            }
            counts[tw] += 1;
        }
    }
    QPoly::new(counts.into_iter().map(BigInt::from).collect())
}

impl fmt::Display for PartiallySignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, _) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.at(i))?;
        }
        Ok(())
    }
}

impl FromStr for PartiallySignedPermutation {
    type Err = PermError;
    fn from_str(s: &str) -> Result<Self, PermError> {
        let mut values = Vec::new();
        let mut signs = BTreeSet::new();
        for token in s.split_whitespace() {
            let (digits, overlined) = match token.strip_suffix('~') {
                Some(d) => (d, true),
                None => (token, false),
            };
            let v: usize = digits.parse().map_err(|_| PermError::Parse(s.to_string()))?;
            if overlined {
                signs.insert(v);
            }
            values.push(v);
        }
        if values.is_empty() {
            return Err(PermError::Parse(s.to_string()));
        }
        PartiallySignedPermutation::new(values, signs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn psp(s: &str) -> PartiallySignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn order_of_signed_values() {
        let v = |m, o| SignedValue { magnitude: m, overlined: o };
        assert!(v(1, true) < v(1, false));
        assert!(v(1, false) < v(2, true));
        assert!(v(2, true) < v(2, false));
        assert!(v(4, true) > v(3, false));
    }

    #[test]
    fn tw_paper_example() {
        // two 31-2 patterns and three (31, 2̄) patterns
        assert_eq!(psp("2~ 5 7 8 3 6 4~ 1").tw(), 5);
    }

    #[test]
    fn tw_trivial_cases() {
        assert_eq!(psp("1 2 3 4").tw(), 0);
        assert_eq!(psp("2~ 1").tw(), 1);
        // brute-force over all of B'_2: tw values are {0, 0, 0, 1}
        let tws: Vec<u64> =
            PartiallySignedPermutation::enumerate(2).iter().map(|p| p.tw()).collect();
        assert_eq!(tws.iter().sum::<u64>(), 1);
    }

    #[test]
    fn genocchi_descents_examples() {
        let gd: Vec<usize> = psp("2~ 5 7 8 3 6 4~ 1").genocchi_descents().into_iter().collect();
        assert_eq!(gd, vec![6, 8]);
        assert!(psp("1 2 3").genocchi_descents().is_empty());
        let gd: Vec<usize> = psp("2 1").genocchi_descents().into_iter().collect();
        assert_eq!(gd, vec![2]);
    }

    #[test]
    fn genocchi_composition_examples() {
        let sigma = psp("2~ 5 7 8 3 6 4~ 1");
        assert_eq!(sigma.genocchi_composition().to_string(), "1|2|2,2,1");
        assert_eq!(sigma.genocchi_composition().to_ade().to_string(), "ADADEDE");
        assert_eq!(psp("1 2 3 4 5").genocchi_composition().to_string(), "5");
    }

    #[test]
    fn enumerate_small_sizes() {
        let b2: Vec<String> =
            PartiallySignedPermutation::enumerate(2).iter().map(|p| p.to_string()).collect();
        assert_eq!(b2, vec!["1 2", "1 2~", "2 1", "2~ 1"]);
        assert_eq!(PartiallySignedPermutation::enumerate(1).len(), 1);
        assert_eq!(PartiallySignedPermutation::enumerate(3).len(), 24);
        assert_eq!(PartiallySignedPermutation::enumerate_with_overlines(3, 1).len(), 12);
    }

    #[test]
    fn equivalence_class_paper_example() {
        let sigma = psp("2~ 7 3 4~ 5 1 8 6");
        let class: BTreeSet<String> =
            sigma.equivalence_class().iter().map(|p| p.to_string()).collect();
        let expected: BTreeSet<String> = [
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
        assert_eq!(class, expected);
    }

    #[test]
    fn equivalence_class_properties() {
        // class size (r+1)!, constant Genocchi composition, contains self
        for p in PartiallySignedPermutation::enumerate(4) {
            let class = p.equivalence_class();
            assert_eq!(class.len(), factorial_usize(p.overline_count() + 1));
            assert!(class.contains(&p));
            for member in &class {
                assert_eq!(member.genocchi_composition(), p.genocchi_composition());
                assert_eq!(member.signs(), p.signs());
            }
        }
    }

    #[test]
    fn no_sign_and_one_last_has_singleton_class() {
        let p = psp("2 3 1");
        assert_eq!(p.equivalence_class(), vec![p]);
    }

    #[test]
    fn z_word_examples() {
        let a: AdeWord = "A".parse().unwrap();
        let z = z_word_perms(&a);
        assert_eq!(z.to_string(), "1 + q");
        let dae: AdeWord = "DAE".parse().unwrap();
        assert_eq!(
            z_word_perms(&dae).eval(&crate::QRat::from_integer(BigInt::one())),
            crate::QRat::from_integer(BigInt::from(14))
        );
        assert_eq!(z_word_perms(&AdeWord::empty()), QPoly::one());
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!("1 1".parse::<PartiallySignedPermutation>().is_err());
        assert!("1~ 2".parse::<PartiallySignedPermutation>().is_err());
        assert!("3 1".parse::<PartiallySignedPermutation>().is_err());
        assert!("".parse::<PartiallySignedPermutation>().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let p = psp("2~ 5 7 8 3 6 4~ 1");
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"values":[2,5,7,8,3,6,4,1],"signs":[2,4]}"#);
        let back: PartiallySignedPermutation = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PartiallySignedPermutation>(
            r#"{"values":[2,1],"signs":[1]}"#
        )
        .is_err());
    }

    fn arb_signed_value() -> impl Strategy<Value = SignedValue> {
        (1usize..20, any::<bool>()).prop_map(|(m, o)| SignedValue {
            magnitude: m,
            overlined: o && m > 1,
        })
    }

    proptest! {
        #[test]
        fn signed_order_is_total_and_transitive(
            a in arb_signed_value(),
            b in arb_signed_value(),
            c in arb_signed_value(),
        ) {
            // antisymmetry
            if a < b { prop_assert!(!(b < a)); }
            if a == b { prop_assert!(!(a < b) && !(b < a)); }
            // transitivity
            if a < b && b < c { prop_assert!(a < c); }
            // totality
            prop_assert!(a < b || b < a || a == b);
        }
    }
}
