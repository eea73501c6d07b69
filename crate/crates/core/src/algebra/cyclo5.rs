//! The ring `Q[x]/(1 + x + x^2 + x^3 + x^4)`, i.e. `Q(zeta_5)`.

use std::fmt;

use num_traits::{One, Zero};

use super::{rat, Rational, Ring};

/// Element `c0 + c1 x + c2 x^2 + c3 x^3`, always reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclo5([Rational; 4]);

impl Cyclo5 {
    pub fn new(c: [Rational; 4]) -> Self {
        Cyclo5(c)
    }

    pub fn zero() -> Self {
        Cyclo5([rat(0), rat(0), rat(0), rat(0)])
    }

    pub fn one() -> Self {
        Cyclo5([rat(1), rat(0), rat(0), rat(0)])
    }

    /// `x^k` reduced; `x^4 = -1 - x - x^2 - x^3`.
    pub fn x_pow(k: u32) -> Self {
        let mut out = Self::zero();
        match k % 5 {
            4 => out.0.iter_mut().for_each(|c| *c = rat(-1)),
            r => out.0[r as usize] = rat(1),
        }
        out
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0[0].is_one() && self.0[1..].iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Cyclo5(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Cyclo5(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }

    pub fn neg(&self) -> Self {
        Cyclo5(std::array::from_fn(|i| -&self.0[i]))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Cyclo5(std::array::from_fn(|i| &self.0[i] * c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut full = vec![rat(0); 7];
        for i in 0..4 {
            for j in 0..4 {
                full[i + j] += &self.0[i] * &o.0[j];
            }
        }
        // x^5 = 1, then x^4 = -(1 + x + x^2 + x^3)
        let mut r: [Rational; 5] = std::array::from_fn(|i| full[i].clone());
        r[0] += &full[5];
        r[1] += &full[6];
        let top = r[4].clone();
        Cyclo5(std::array::from_fn(|i| &r[i] - &top))
    }
}

impl Ring for Cyclo5 {
    fn zero() -> Self {
        Cyclo5::zero()
    }
    fn one() -> Self {
        Cyclo5::one()
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn from_i64(v: i64) -> Self {
        Cyclo5::one().scale(&rat(v))
    }
}

impl fmt::Display for Cyclo5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}
