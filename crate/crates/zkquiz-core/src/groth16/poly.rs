//! Dense univariate polynomials over the scalar field.
//!
//! Everything here is deliberately the O(n^2) schoolbook version: the
//! questionnaire circuit is a few hundred constraints, where naive
//! interpolation and long division are fast and easy to audit. An FFT
//! domain could replace this behind the same interface if circuits grow.

use crate::backend::Scalar;

/// Coefficient vector, lowest degree first, trailing zeros trimmed.
/// The zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::ZERO, |acc, c| acc * x + *c)
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Poly, scale: Scalar) {
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Scalar::ZERO);
        }
        for (dst, src) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *dst += scale * *src;
        }
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, -Scalar::ONE);
        out
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += *a * *b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and
    /// `deg(remainder) < deg(divisor)`.
    ///
    /// Panics on a zero divisor (never constructed here: the only
    /// divisors are vanishing polynomials and monic linear factors).
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor
            .coeffs
            .last()
            .expect("nonzero divisor")
            .invert()
            .expect("leading coefficient is nonzero");
        let mut remainder = self.coeffs.clone();
        let quot_len = self.coeffs.len() - divisor.coeffs.len() + 1;
        let mut quotient = vec![Scalar::ZERO; quot_len];
        for k in (0..quot_len).rev() {
            let factor = remainder[k + divisor.coeffs.len() - 1] * lead_inv;
            if factor.is_zero() {
                continue;
            }
            quotient[k] = factor;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                remainder[k + j] -= factor * *d;
            }
        }
        (Poly::from_coeffs(quotient), Poly::from_coeffs(remainder))
    }

    /// The vanishing polynomial `prod (x - d)` over the domain.
    pub fn vanishing(domain: &[Scalar]) -> Poly {
        let mut out = Poly::from_coeffs(vec![Scalar::ONE]);
        for d in domain {
            out = out.mul(&Poly::from_coeffs(vec![-*d, Scalar::ONE]));
        }
        out
    }

    /// Lagrange basis over pairwise-distinct points: `basis[j]` is 1 at
    /// `domain[j]` and 0 at every other domain point.
    pub fn lagrange_basis(domain: &[Scalar]) -> Vec<Poly> {
        let vanishing = Poly::vanishing(domain);
        domain
            .iter()
            .map(|d| {
                let (numerator, rem) =
                    vanishing.div_rem(&Poly::from_coeffs(vec![-*d, Scalar::ONE]));
                assert!(rem.is_zero(), "domain point is not a root of the vanishing polynomial");
                let denom = numerator.eval(*d);
                let mut basis = Poly::zero();
                basis.add_scaled(
                    &numerator,
                    denom.invert().expect("distinct domain points"),
                );
                basis
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[u64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| Scalar::from(c)).collect())
    }

    #[test]
    fn eval_and_length() {
        let p = poly(&[1, 2, 3]); // 1 + 2x + 3x^2
        assert_eq!(p.coeffs().len(), 3);
        assert_eq!(p.eval(Scalar::from(2)), Scalar::from(17));
        assert_eq!(Poly::zero().eval(Scalar::from(9)), Scalar::ZERO);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Poly::from_coeffs(vec![Scalar::from(1), Scalar::ZERO, Scalar::ZERO]);
        assert_eq!(p.coeffs().len(), 1);
    }

    #[test]
    fn mul_and_div_round_trip() {
        let a = poly(&[3, 0, 1, 7]);
        let b = poly(&[2, 5, 1]);
        let product = a.mul(&b);
        let (q, r) = product.div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());

        // now with a remainder
        let c = poly(&[1, 1]);
        let shifted = product.sub(&c);
        let (_, r2) = shifted.div_rem(&b);
        assert!(!r2.is_zero());
    }

    #[test]
    fn vanishing_has_domain_roots() {
        let domain: Vec<Scalar> = (1u64..=5).map(Scalar::from).collect();
        let t = Poly::vanishing(&domain);
        assert_eq!(t.coeffs().len(), 6);
        for d in &domain {
            assert_eq!(t.eval(*d), Scalar::ZERO);
        }
        assert_ne!(t.eval(Scalar::from(99)), Scalar::ZERO);
    }

    #[test]
    fn lagrange_basis_is_the_indicator_family() {
        let domain: Vec<Scalar> = (1u64..=6).map(Scalar::from).collect();
        let basis = Poly::lagrange_basis(&domain);
        for (j, b) in basis.iter().enumerate() {
            for (k, d) in domain.iter().enumerate() {
                let expected = if j == k { Scalar::ONE } else { Scalar::ZERO };
                assert_eq!(b.eval(*d), expected, "basis {j} at point {k}");
            }
        }
    }
}
