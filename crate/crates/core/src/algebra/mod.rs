//! Exact arithmetic: Laurent polynomials in `t^(1/2)`, multivariate
//! polynomials over the rationals, truncated Taylor series and the ring of
//! fifth roots of unity.

pub mod cyclo5;
pub mod expr;
pub mod fraction;
pub mod laurent;
pub mod multipoly;
pub mod taylor;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use cyclo5::Cyclo5;
pub use fraction::Fraction;
pub use laurent::{HalfLaurent, Laurent, ParamLaurent};
pub use multipoly::{Monomial, MultiPoly, VarNames};
pub use taylor::Taylor;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Minimal commutative ring interface shared by the coefficient types.
///
/// Everything generic in this crate (Laurent polynomials, determinants,
/// Taylor products) is written against this trait so that the same code
/// runs over integers, rationals and parameter polynomials.
pub trait Ring: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_i64(v: i64) -> Self;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    fn pow_u32(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

/// `v` as an exact rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Determinant by cofactor expansion along the first row.
///
/// Only used for the 4x4 Seifert matrices, where Laplace expansion is
/// cheap and keeps everything division free.
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    match n {
        0 => R::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].mul_ref(&m[1][1]).sub_ref(&m[0][1].mul_ref(&m[1][0])),
        _ => {
            let mut acc = R::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<R>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][col].mul_ref(&determinant(&minor));
                acc = if col % 2 == 0 {
                    acc.add_ref(&term)
                } else {
                    acc.sub_ref(&term)
                };
            }
            acc
        }
    }
}

/// Falling factorial `x (x-1) ... (x-k+1)` over the rationals.
pub fn falling_factorial(x: &Rational, k: usize) -> Rational {
    let mut acc = rat(1);
    for j in 0..k {
        acc *= x - rat(j as i64);
    }
    acc
}

/// `k!` as a rational.
pub fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(rat(1), |acc, j| acc * rat(j))
}

/// Stirling numbers of the second kind `S(n, k)` for `0 <= k <= n <= nmax`.
pub fn stirling2_table(nmax: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::from(0); nmax + 1]; nmax + 1];
    s[0][0] = BigInt::from(1);
    for n in 1..=nmax {
        for k in 1..=n {
            s[n][k] = BigInt::from(k as i64) * &s[n - 1][k] + &s[n - 1][k - 1];
        }
    }
    s
}
