//! Truncated power series in `u = t - 1`.
//!
//! Coefficient `k` stores `f^(k)(1) / k!`, so products are plain truncated
//! convolutions and the Leibniz rule comes for free.

use super::{factorial, MultiPoly, Rational, Ring};

/// Coefficient rings that admit scaling by a rational.
pub trait RatScale: Ring {
    fn scale_rat(&self, r: &Rational) -> Self;
}

impl RatScale for Rational {
    fn scale_rat(&self, r: &Rational) -> Self {
        self * r
    }
}

impl RatScale for MultiPoly {
    fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Taylor<C> {
    coeffs: Vec<C>,
}

impl<C: RatScale> Taylor<C> {
    pub fn zero(order: usize) -> Self {
        Taylor {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    /// From derivative values `f(1), f'(1), ..., f^(K)(1)`.
    pub fn from_derivs(derivs: Vec<C>) -> Self {
        Taylor {
            coeffs: derivs
                .iter()
                .enumerate()
                .map(|(k, d)| d.scale_rat(&(Rational::from_integer(1.into()) / factorial(k))))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Derivative values at `t = 1`.
    pub fn derivs(&self) -> Vec<C> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale_rat(&factorial(k)))
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        Taylor {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                out[i + j].add_assign_ref(&a.mul_ref(b));
            }
        }
        Taylor { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn leibniz_on_monomials() {
        // t^2 * t^3 = t^5: derivatives 1, 5, 20, 60, 120
        let a = Taylor::from_derivs(vec![rat(1), rat(2), rat(2), rat(0), rat(0)]);
        let b = Taylor::from_derivs(vec![rat(1), rat(3), rat(6), rat(6), rat(0)]);
        assert_eq!(a.mul(&b).derivs(), vec![rat(1), rat(5), rat(20), rat(60), rat(120)]);
    }
}
