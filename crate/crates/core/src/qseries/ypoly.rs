use super::Polynomial;
use crate::scalar::Coeff;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Sparse polynomial in `y` with [`Polynomial`] coefficients, i.e. an
/// element of `Z[q][y]`. Zero coefficients are never stored.
///
/// Used to carry the bookkeeping variable that tags gray-particle letters
/// in the matrix product, so a single matrix power yields every sector's
/// partition function at once.
#[derive(Clone, PartialEq, Eq)]
pub struct YPolynomial<T> {
    terms: BTreeMap<usize, Polynomial<T>>,
}

impl<T: Coeff> YPolynomial<T> {
    /// `p * y^degree`.
    pub fn from_poly(p: Polynomial<T>, degree: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(degree, p);
        }
        YPolynomial { terms }
    }

    /// Coefficient of `y^r` (zero if absent).
    pub fn coeff_y(&self, r: usize) -> Polynomial<T> {
        self.terms.get(&r).cloned().unwrap_or_else(Polynomial::zero)
    }

    /// Degree in `y`, or `None` for zero.
    pub fn y_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Iterate `(y-degree, coefficient)` pairs in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Polynomial<T>)> {
        self.terms.iter().map(|(d, p)| (*d, p))
    }
}

impl<T: Coeff> Add for &YPolynomial<T> {
    type Output = YPolynomial<T>;
    fn add(self, rhs: &YPolynomial<T>) -> YPolynomial<T> {
        let mut terms = self.terms.clone();
        for (d, p) in &rhs.terms {
            let sum = match terms.remove(d) {
                Some(existing) => &existing + p,
                None => p.clone(),
            };
            if !sum.is_zero() {
                terms.insert(*d, sum);
            }
        }
        YPolynomial { terms }
    }
}

impl<T: Coeff> Mul for &YPolynomial<T> {
    type Output = YPolynomial<T>;
    fn mul(self, rhs: &YPolynomial<T>) -> YPolynomial<T> {
        let mut terms: BTreeMap<usize, Polynomial<T>> = BTreeMap::new();
        for (da, pa) in &self.terms {
            for (db, pb) in &rhs.terms {
                let prod = pa * pb;
                let d = da + db;
                let sum = match terms.remove(&d) {
                    Some(existing) => &existing + &prod,
                    None => prod,
                };
                if !sum.is_zero() {
                    terms.insert(d, sum);
                }
            }
        }
        YPolynomial { terms }
    }
}

impl<T: Coeff> Sub for &YPolynomial<T> {
    type Output = YPolynomial<T>;
    fn sub(self, rhs: &YPolynomial<T>) -> YPolynomial<T> {
        let mut terms = self.terms.clone();
        for (d, p) in &rhs.terms {
            let diff = match terms.remove(d) {
                Some(existing) => &existing - p,
                None => -p,
            };
            if !diff.is_zero() {
                terms.insert(*d, diff);
            }
        }
        YPolynomial { terms }
    }
}

impl<T: Coeff> Add for YPolynomial<T> {
    type Output = YPolynomial<T>;
    fn add(self, rhs: YPolynomial<T>) -> YPolynomial<T> {
        &self + &rhs
    }
}

impl<T: Coeff> Sub for YPolynomial<T> {
    type Output = YPolynomial<T>;
    fn sub(self, rhs: YPolynomial<T>) -> YPolynomial<T> {
        &self - &rhs
    }
}

impl<T: Coeff> Mul for YPolynomial<T> {
    type Output = YPolynomial<T>;
    fn mul(self, rhs: YPolynomial<T>) -> YPolynomial<T> {
        &self * &rhs
    }
}

impl<T: Coeff> Zero for YPolynomial<T> {
    fn zero() -> Self {
        YPolynomial { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Coeff> One for YPolynomial<T> {
    fn one() -> Self {
        YPolynomial::from_poly(Polynomial::one(), 0)
    }
}

impl<T: Coeff> fmt::Debug for YPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(d, p)| match d {
                0 => format!("({p})"),
                1 => format!("({p})y"),
                _ => format!("({p})y^{d}"),
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}
