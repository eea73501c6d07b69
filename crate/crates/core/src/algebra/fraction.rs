//! Quotients of parameter polynomials, used only to clear denominators
//! when checking identities under constraint chains.

use num_traits::Zero;

use super::{MultiPoly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Fraction {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl Fraction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Ok(Fraction { num, den }.tidy())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Fraction {
            num: p,
            den: MultiPoly::from_int(1),
        }
    }

    /// Folds a constant denominator into the numerator.
    fn tidy(self) -> Self {
        match self.den.as_constant() {
            Some(c) if !c.is_zero() => Fraction {
                num: self.num.scale(&(Rational::from_integer(1.into()) / c)),
                den: MultiPoly::from_int(1),
            },
            _ => self,
        }
    }

    pub fn to_poly(&self) -> Option<MultiPoly> {
        self.den
            .as_constant()
            .map(|c| self.num.scale(&(Rational::from_integer(1.into()) / c)))
    }

    pub fn neg(&self) -> Self {
        Fraction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Fraction {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            };
        }
        Fraction {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .tidy()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Fraction {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
        .tidy()
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Fraction::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        Fraction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
        .tidy()
    }

    /// Replaces variable `i` by `value`, keeping numerator and denominator
    /// polynomial by homogenizing in the denominator of `value`.
    pub fn substitute(&self, i: usize, value: &Fraction) -> Fraction {
        let sub = |p: &MultiPoly| -> (MultiPoly, u32) {
            let cs = p.coeffs_in(i);
            let d = (cs.len() - 1) as u32;
            let mut acc = MultiPoly::zero();
            for (k, c) in cs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let k = k as u32;
                acc = acc.add(&c.mul(&value.num.pow(k)).mul(&value.den.pow(d - k)));
            }
            (acc, d)
        };
        let (n, dn) = sub(&self.num);
        let (d, dd) = sub(&self.den);
        // num / den = (n / q^dn) / (d / q^dd)
        let (num, den) = if dn >= dd {
            (n, d.mul(&value.den.pow(dn - dd)))
        } else {
            (n.mul(&value.den.pow(dd - dn)), d)
        };
        Fraction { num, den }.tidy()
    }

    /// Cross-multiplied equality.
    pub fn equals(&self, o: &Fraction) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}
