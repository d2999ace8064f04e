//! Exact arithmetic in the polynomial ring of `q`-expressions.
//!
//! Everything downstream (partition functions, matrix products, path
//! weights) is a polynomial in `q` with integer coefficients, or a
//! rational number obtained by evaluating one. This module provides:
//!
//! - [`Polynomial`]: dense univariate polynomials, generic over the
//!   coefficient scalar, canonical form (no trailing zeros);
//! - [`YPolynomial`]: sparse polynomials in a second variable `y` whose
//!   coefficients are `Polynomial`s (used to extract the `y^r`
//!   normalization of the matrix product);
//! - the `q`-analog quantities `[n]_q`, `[n]_q!` and small integer
//!   combinatorics helpers.

mod poly;
mod ypoly;

pub use poly::{Polynomial, PolyError};
pub use ypoly::YPolynomial;

use crate::scalar::Coeff;
use num_bigint::BigInt;
use num_traits::One;

/// The `q`-integer `[n]_q = 1 + q + ... + q^(n-1)`; `[0]_q = 0`.
pub fn q_int<T: Coeff>(n: usize) -> Polynomial<T> {
    Polynomial::new(vec![T::one(); n])
}

/// The `q`-factorial `[n]_q! = [1]_q [2]_q ... [n]_q`; `[0]_q! = 1`.
pub fn q_factorial<T: Coeff>(n: usize) -> Polynomial<T> {
    let mut acc = Polynomial::one();
    for i in 1..=n {
        acc = &acc * &q_int(i);
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a big integer; 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QPoly, QRat};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> QPoly {
        QPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn q_int_small_values() {
        assert_eq!(q_int::<BigInt>(0), QPoly::zero());
        assert_eq!(q_int::<BigInt>(1), QPoly::one());
        assert_eq!(q_int::<BigInt>(3), poly(&[1, 1, 1]));
    }

    #[test]
    fn q_factorial_small_values() {
        assert_eq!(q_factorial::<BigInt>(0), QPoly::one());
        assert_eq!(q_factorial::<BigInt>(2), poly(&[1, 1]));
        // (1)(1+q)(1+q+q^2) expanded by hand
        assert_eq!(q_factorial::<BigInt>(3), poly(&[1, 2, 2, 1]));
    }

    #[test]
    fn q_factorial_recurrence() {
        for n in 1..=20 {
            let expected = &q_factorial::<BigInt>(n - 1) * &q_int(n);
            assert_eq!(q_factorial::<BigInt>(n), expected);
        }
    }

    #[test]
    fn div_exact_examples() {
        let one_plus_q = poly(&[1, 1]);
        let sq = &one_plus_q * &one_plus_q;
        assert_eq!(sq.div_exact(&one_plus_q).unwrap(), one_plus_q);
        assert_eq!(QPoly::zero().div_exact(&one_plus_q).unwrap(), QPoly::zero());
        assert_eq!(
            q_factorial::<BigInt>(3).div_exact(&q_int(2)).unwrap(),
            poly(&[1, 1, 1])
        );
    }

    #[test]
    fn div_exact_rejects_nonzero_remainder() {
        let a = poly(&[1, 0, 1]);
        let b = poly(&[1, 1]);
        assert_eq!(a.div_exact(&b), Err(PolyError::NotDivisible));
        // non-integer quotient coefficient
        let c = poly(&[0, 1]);
        let d = poly(&[0, 2]);
        assert_eq!(c.div_exact(&d), Err(PolyError::NotDivisible));
    }

    #[test]
    fn eval_rational_examples() {
        let half = QRat::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(
            poly(&[1, 1]).eval(&QRat::from_integer(BigInt::one())),
            QRat::from_integer(BigInt::from(2))
        );
        assert_eq!(
            q_int::<BigInt>(3).eval(&half),
            QRat::new(BigInt::from(7), BigInt::from(4))
        );
        assert_eq!(QPoly::zero().eval(&half), QRat::zero());
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 5), BigInt::ZERO);
        assert_eq!(binomial(50, 25) % BigInt::from(2), BigInt::ZERO);
    }

    fn arb_poly() -> impl Strategy<Value = QPoly> {
        proptest::collection::vec(-6i64..=6, 0..6)
            .prop_map(|v| QPoly::new(v.into_iter().map(BigInt::from).collect()))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn mul_then_div_roundtrips(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn eval_is_ring_homomorphism(a in arb_poly(), b in arb_poly(), n in -9i64..=9, d in 1i64..=9) {
            let x = QRat::new(BigInt::from(n), BigInt::from(d));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }

        #[test]
        fn canonical_form_strips_trailing_zeros(v in proptest::collection::vec(-3i64..=3, 0..8)) {
            let p = QPoly::new(v.into_iter().map(BigInt::from).collect());
            if let Some(d) = p.degree() {
                prop_assert_eq!(p.coeffs().len(), d + 1);
                prop_assert!(!p.coeffs()[d].is_zero());
            } else {
                prop_assert!(p.coeffs().is_empty());
            }
        }
    }
}
