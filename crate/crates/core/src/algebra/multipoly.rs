//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are positional. Names only matter for parsing and printing and
//! are supplied through [`VarNames`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use super::{rat, Rational};
use crate::error::{Error, Result};

/// Exponent vector with trailing zeros trimmed, so `x0` and `x0 * x1^0`
/// compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    fn without(&self, i: usize) -> Monomial {
        let mut v = self.0.clone();
        if i < v.len() {
            v[i] = 0;
        }
        Monomial::new(v)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// first variable, and so on.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            (0..n)
                .map(|i| self.exp(i).cmp(&other.exp(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Display and parse names for positional variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames(Vec<String>);

impl VarNames {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarNames(names.into_iter().map(Into::into).collect())
    }

    /// `a, b, c, d, e`: the twist parameters of a five-band family.
    pub fn letters(k: usize) -> Self {
        Self::new((0..k).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    pub fn name(&self, i: usize) -> String {
        self.0.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn var(i: usize) -> Self {
        Self::term(rat(1), Monomial::var(i))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    /// Number of variable slots that any term touches.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    fn insert_add(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::from_int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact value at `point`; `point[i]` is the value of variable `i`.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        self.eval_named(point, None)
    }

    pub fn eval_named(&self, point: &[Rational], names: Option<&VarNames>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point.get(i).ok_or_else(|| {
                    Error::MissingVariable(names.map_or_else(|| format!("x{}", i + 1), |n| n.name(i)))
                })?;
                v *= num_traits::pow(x.clone(), e as usize);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Replaces variable `i` by `value` everywhere.
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> MultiPoly {
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::from_int(1)];
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let rest = MultiPoly::term(c.clone(), m.without(i));
            out = out.add(&rest.mul(&powers[e]));
        }
        out
    }

    /// Coefficients of `self` as a polynomial in variable `i`, lowest
    /// degree first.
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exp(i) as usize].insert_add(m.without(i), c.clone());
        }
        out
    }

    /// Rebuilds a polynomial from its coefficients in variable `i`.
    pub fn from_coeffs_in(i: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let x = MultiPoly::var(i);
        let mut out = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            out = out.mul(&x).add(c);
        }
        out
    }

    /// Certificate that the polynomial is strictly positive whenever every
    /// variable is an integer `>= 1`: after `x_i -> 1 + y_i` all
    /// coefficients are nonnegative and the constant term is positive.
    pub fn positive_on_positive_integers(&self) -> bool {
        let shifted = self.shift_all(1);
        shifted.constant_term().is_positive() && shifted.terms.values().all(|c| !c.is_negative())
    }

    /// `x_i -> x_i + by` for every variable.
    pub fn shift_all(&self, by: i64) -> MultiPoly {
        let mut out = self.clone();
        for i in 0..self.nvars() {
            out = out.substitute(i, &MultiPoly::var(i).add(&MultiPoly::from_int(by)));
        }
        out
    }

    pub fn is_affine(&self) -> bool {
        self.total_degree() <= 1
    }

    pub fn to_string_with(&self, names: &VarNames) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_monomial(m, names);
            if mono.is_empty() {
                let _ = write!(s, "{mag}");
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{mag}*{mono}");
            }
        }
        s
    }
}

fn fmt_monomial(m: &Monomial, names: &VarNames) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names.name(i)),
            _ => parts.push(format!("{}^{e}", names.name(i))),
        }
    }
    parts.join("*")
}

impl super::Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::from_int(1)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
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
        MultiPoly::from_int(v)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.insert_add(m.clone(), c.clone());
        }
    }
}
