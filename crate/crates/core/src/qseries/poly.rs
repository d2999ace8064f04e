use crate::scalar::Coeff;
use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Error from exact polynomial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PolyError {
    /// Division left a nonzero remainder, or a quotient coefficient was
    /// not exactly representable in the coefficient ring. When raised for
    /// a quantity that a theorem claims is divisible, this signals a bug.
    #[error("polynomial division left a nonzero remainder")]
    NotDivisible,
}

/// Dense univariate polynomial in canonical form: the coefficient of
/// `q^i` is `coeffs[i]` and the top coefficient is nonzero. The zero
/// polynomial has an empty coefficient vector, so structural equality
/// coincides with mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Polynomial<T> {
    /// Build from low-to-high coefficients, stripping trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `c * q^degree`.
    pub fn monomial(c: T, degree: usize) -> Self {
        if c.is_zero() {
            return Polynomial::new(Vec::new());
        }
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial { coeffs }
    }

    /// Low-to-high coefficients (no trailing zero).
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Exact evaluation by Horner's rule in any ring containing `T`.
    pub fn eval<R>(&self, x: &R) -> R
    where
        R: Coeff + From<T>,
    {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + R::from(c.clone());
        }
        acc
    }

    /// Exact quotient `self / divisor`, or [`PolyError::NotDivisible`].
    ///
    /// Long division over the coefficient ring; every quotient coefficient
    /// is checked to be exact (for integer coefficients, `b * (a / b) == a`),
    /// and the final remainder must vanish.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        let db = divisor.degree().expect("nonzero divisor");
        let da = match self.degree() {
            Some(da) if da >= db => da,
            _ => return Err(PolyError::NotDivisible),
        };
        let lead_b = &divisor.coeffs[db];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let lead_r = rem[k + db].clone();
            if lead_r.is_zero() {
                continue;
            }
            let c = lead_r.clone() / lead_b.clone();
            if c.clone() * lead_b.clone() != lead_r {
                return Err(PolyError::NotDivisible);
            }
            for (i, bc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * bc.clone();
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NotDivisible);
        }
        Ok(Polynomial::new(quot))
    }

    /// `self^exp` by repeated multiplication.
    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl<T: Coeff> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(out)
    }
}

impl<T: Coeff> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::new(out)
    }
}

impl<T: Coeff> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Coeff> Add for Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Polynomial<T>) -> Polynomial<T> {
        &self + &rhs
    }
}

impl<T: Coeff> Sub for Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Polynomial<T>) -> Polynomial<T> {
        &self - &rhs
    }
}

impl<T: Coeff> Mul for Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Polynomial<T>) -> Polynomial<T> {
        &self * &rhs
    }
}

impl<T: Coeff> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coeff> Neg for Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

impl<T: Coeff> Zero for Polynomial<T> {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Coeff> One for Polynomial<T> {
    fn one() -> Self {
        Polynomial::constant(T::one())
    }
}

impl<T: Coeff> fmt::Display for Polynomial<T> {
    /// Human rendering in ascending powers, e.g. `1 + 2q + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign_neg, mag) = {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                }
            };
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag == "1";
            match (i, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}q^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Coeff> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<T: Coeff> Serialize for Polynomial<T> {
    /// JSON form: array of decimal coefficient strings, lowest degree
    /// first. Strings rather than numbers so coefficients beyond 64 bits
    /// survive any JSON reader.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de, T: Coeff> Deserialize<'de> for Polynomial<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(raw.len());
        for s in &raw {
            let c = T::from_str_radix(s, 10)
                .map_err(|_| D::Error::custom(format!("bad coefficient {s:?}")))?;
            coeffs.push(c);
        }
        Ok(Polynomial::new(coeffs))
    }
}
