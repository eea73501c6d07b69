//! Laurent polynomials in `t^(1/2)`.
//!
//! Exponents are stored doubled: the key `e` stands for `t^(e/2)`. Storage
//! is dense from the lowest to the highest nonzero exponent; the zero
//! polynomial has no coefficients at all.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{cyclo5::Cyclo5, multipoly::MultiPoly, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent<C> {
    lo: i64,
    coeffs: Vec<C>,
}

/// Laurent polynomial in `t^(1/2)` with integer coefficients.
pub type HalfLaurent = Laurent<BigInt>;

/// Laurent polynomial in `t^(1/2)` whose coefficients are polynomials in
/// the twist parameters.
pub type ParamLaurent = Laurent<MultiPoly>;

impl<C: Ring> Laurent<C> {
    pub fn zero() -> Self {
        Laurent {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    /// `c * t^(doubled/2)`.
    pub fn monomial(c: C, doubled: i64) -> Self {
        Laurent {
            lo: doubled,
            coeffs: vec![c],
        }
        .normalized()
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from `(doubled exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|(e, _)| *e).min().unwrap();
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize].add_assign_ref(&c);
        }
        Laurent { lo, coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            return Self::zero();
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn coeff(&self, doubled: i64) -> C {
        if self.is_zero() || doubled < self.lo {
            return C::zero();
        }
        self.coeffs
            .get((doubled - self.lo) as usize)
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Lowest and highest doubled exponent, `None` for zero.
    pub fn span(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.lo, self.lo + self.coeffs.len() as i64 - 1))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a0, a1) = self.span().unwrap();
        let (b0, b1) = other.span().unwrap();
        let lo = a0.min(b0);
        let hi = a1.max(b1);
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(a0 - lo) as usize + i].add_assign_ref(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(b0 - lo) as usize + i].add_assign_ref(c);
        }
        Laurent { lo, coeffs }.normalized()
    }

    pub fn neg(&self) -> Self {
        Laurent {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(Ring::neg_ref).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j].add_assign_ref(&a.mul_ref(b));
            }
        }
        Laurent {
            lo: self.lo + other.lo,
            coeffs,
        }
        .normalized()
    }

    pub fn scale(&self, c: &C) -> Self {
        Laurent {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
        }
        .normalized()
    }

    /// Multiplication by `t^(doubled/2)`.
    pub fn shift(&self, doubled: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Laurent {
            lo: self.lo + doubled,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `t -> t^(-1)`.
    pub fn mirror(&self) -> Self {
        match self.span() {
            None => Self::zero(),
            Some((_, hi)) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                Laurent { lo: -hi, coeffs }
            }
        }
    }

    /// True when every exponent is an integral power of `t`.
    pub fn is_integral(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Applies a coefficient map, keeping exponents.
    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
        .normalized()
    }
}

impl<C: Ring> Ring for Laurent<C> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn one() -> Self {
        Laurent::one()
    }
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn from_i64(v: i64) -> Self {
        Laurent::constant(C::from_i64(v))
    }
}

impl HalfLaurent {
    /// `t^(1/2) - t^(-1/2)`.
    pub fn z() -> Self {
        Self::from_terms([(1, BigInt::from(1)), (-1, BigInt::from(-1))])
    }

    /// Jones polynomial of the two-component unlink, `-(t^(1/2) + t^(-1/2))`.
    pub fn unlink_factor() -> Self {
        Self::from_terms([(1, BigInt::from(-1)), (-1, BigInt::from(-1))])
    }

    pub fn int_monomial(c: i64, doubled: i64) -> Self {
        Self::monomial(BigInt::from(c), doubled)
    }

    /// Values `p^(k)(1)` for `k = 0..=kmax`.
    pub fn derivs_at_one(&self, kmax: usize) -> Vec<Rational> {
        // (e/2)(e/2 - 1)...(e/2 - k + 1) = e (e - 2) ... (e - 2k + 2) / 2^k
        let mut sums = vec![BigInt::from(0); kmax + 1];
        for (e, c) in self.terms() {
            let mut prod = BigInt::from(1);
            for (k, slot) in sums.iter_mut().enumerate() {
                *slot += c * &prod;
                prod *= e - 2 * k as i64;
            }
        }
        sums.into_iter()
            .enumerate()
            .map(|(k, s)| Rational::new(s, BigInt::from(1) << k))
            .collect()
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms().fold(BigInt::from(0), |acc, (_, c)| acc + c)
    }

    /// Image under `t -> x` in the ring of fifth roots of unity.
    pub fn eval_root5(&self) -> Result<Cyclo5> {
        let mut acc = Cyclo5::zero();
        for (e, c) in self.terms() {
            if e % 2 != 0 {
                return Err(Error::HalfIntegralExponent(e));
            }
            let power = (e / 2).rem_euclid(5) as u32;
            acc = acc.add(&Cyclo5::x_pow(power).scale(&Rational::from_integer(c.clone())));
        }
        Ok(acc)
    }

    /// Parses the canonical text form, e.g. `-t^(5/2) - t^(1/2)` or
    /// `t^2 + 1 - 3t^(-1)`.
    pub fn parse(input: &str) -> Result<Self> {
        let s: String = input
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .filter(|c| !c.is_whitespace())
            .collect();
        let bad = || Error::Parse(format!("bad Laurent polynomial `{input}`"));
        if s.is_empty() {
            return Err(bad());
        }
        let bytes = s.as_bytes();
        let mut i = 0;
        let mut terms = Vec::new();
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if !terms.is_empty() {
                return Err(bad());
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut coeff = if i > start {
                s[start..i].parse::<BigInt>().map_err(|_| bad())?
            } else {
                BigInt::from(1)
            };
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            let mut doubled = 0i64;
            if i < bytes.len() && bytes[i] == b't' {
                i += 1;
                doubled = 2;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let (e, used) = parse_exponent(&s[i..]).ok_or_else(bad)?;
                    doubled = e;
                    i += used;
                }
            } else if i == start {
                return Err(bad());
            }
            if sign < 0 {
                coeff = -coeff;
            }
            terms.push((doubled, coeff));
        }
        Ok(Self::from_terms(terms))
    }
}

/// Parses `k`, `(k)`, `(-k)` or `(p/2)`; returns the doubled exponent and
/// the number of bytes consumed.
fn parse_exponent(s: &str) -> Option<(i64, usize)> {
    if let Some(rest) = s.strip_prefix('(') {
        let close = rest.find(')')?;
        let inner = &rest[..close];
        let doubled = match inner.split_once('/') {
            Some((p, "2")) => p.parse::<i64>().ok()?,
            Some(_) => return None,
            None => 2 * inner.parse::<i64>().ok()?,
        };
        Some((doubled, close + 2))
    } else {
        let len = s.bytes().take_while(|b| b.is_ascii_digit()).count();
        if len == 0 {
            return None;
        }
        Some((2 * s[..len].parse::<i64>().ok()?, len))
    }
}

fn fmt_power(doubled: i64) -> String {
    match doubled {
        0 => String::new(),
        2 => "t".to_string(),
        e if e % 2 != 0 => format!("t^({e}/2)"),
        e if e > 0 => format!("t^{}", e / 2),
        e => format!("t^({})", e / 2),
    }
}

impl fmt::Display for HalfLaurent {
    /// Canonical form: descending exponents, ASCII signs, `t^(p/2)` for
    /// half-integral and `t^(-k)` for negative powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(i64, &BigInt)> = self.terms().collect();
        for (idx, (e, c)) in terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let one = mag == BigInt::from(1);
            if *e == 0 {
                write!(f, "{mag}")?;
            } else if one {
                write!(f, "{}", fmt_power(*e))?;
            } else {
                write!(f, "{mag}{}", fmt_power(*e))?;
            }
        }
        Ok(())
    }
}

impl ParamLaurent {
    /// Coefficients evaluated at a point of the parameter space.
    pub fn eval_params(&self, point: &[Rational]) -> Result<Laurent<Rational>> {
        let terms = self
            .terms()
            .map(|(e, c)| c.eval(point).map(|v| (e, v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Laurent::from_terms(terms))
    }
}

impl Laurent<Rational> {
    /// Integer view; fails if a coefficient is not an integer.
    pub fn to_integer(&self) -> Option<HalfLaurent> {
        let terms: Option<Vec<(i64, BigInt)>> = self
            .terms()
            .map(|(e, c)| c.is_integer().then(|| (e, c.to_integer())))
            .collect();
        terms.map(HalfLaurent::from_terms)
    }
}

/// Converts a small integer polynomial into `(doubled exponent, i64)` pairs,
/// mainly for tests and reports.
pub fn small_terms(p: &HalfLaurent) -> Vec<(i64, i64)> {
    p.terms()
        .map(|(e, c)| (e, c.to_i64().expect("coefficient fits in i64")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn hl(s: &str) -> HalfLaurent {
        HalfLaurent::parse(s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = hl("t^(1/2) - t^(-1/2)");
        let b = hl("t^(1/2) + t^(-1/2)");
        assert_eq!(a.mul(&b), hl("t - t^(-1)"));
    }

    #[test]
    fn identity_and_square() {
        let p = hl("-t^(5/2) - t^(1/2)");
        assert_eq!(HalfLaurent::one().mul(&p), p);
        let q = hl("1 + t^2");
        assert_eq!(q.mul(&q), hl("1 + 2t^2 + t^4"));
    }

    #[test]
    fn derivatives_at_one() {
        let d = hl("t^2").derivs_at_one(4);
        assert_eq!(d, vec![rat(1), rat(2), rat(2), rat(0), rat(0)]);
        assert_eq!(hl("t^(1/2)").derivs_at_one(1)[1], ratio(1, 2));
        assert_eq!(HalfLaurent::unlink_factor().derivs_at_one(0)[0], rat(-2));
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(hl("t - t^(-1)").mirror(), hl("t^(-1) - t"));
        assert_eq!(HalfLaurent::one().mirror(), HalfLaurent::one());
        let p = hl("3t^(7/2) - t^(-1/2) + 2");
        assert_eq!(p.mirror().mirror(), p);
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(HalfLaurent::one().eval_root5().unwrap(), Cyclo5::one());
        assert_eq!(hl("t^5").eval_root5().unwrap(), Cyclo5::one());
        let minus_one = Cyclo5::new([rat(-1), rat(-1), rat(-1), rat(-1)]);
        assert_eq!(hl("t^4").eval_root5().unwrap(), minus_one);
        assert!(matches!(
            hl("t^(1/2)").eval_root5(),
            Err(Error::HalfIntegralExponent(1))
        ));
    }

    #[test]
    fn canonical_text() {
        let p = HalfLaurent::from_terms([(5, BigInt::from(-1)), (1, BigInt::from(-1))]);
        assert_eq!(p.to_string(), "-t^(5/2) - t^(1/2)");
        assert_eq!(hl("t^(-4) - 2t + 7").to_string(), "-2t + 7 + t^(-4)");
        assert_eq!(HalfLaurent::zero().to_string(), "0");
        assert_eq!(hl("\u{2212}t^(5/2) \u{2212} t^(1/2)"), p);
        assert!(HalfLaurent::parse("t^(1/3)").is_err());
        assert!(HalfLaurent::parse("").is_err());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = hl("t^3 - t^3 + t");
        assert_eq!(p, hl("t"));
        assert_eq!(p.span(), Some((2, 2)));
        assert!(hl("t - t").is_zero());
    }
}
