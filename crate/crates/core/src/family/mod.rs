//! Twist families: band data, the prefactor expansion of the Jones
//! polynomial and its derivatives at `t = 1`.

mod definition;
mod engine;
mod prefactor;
mod xn;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use definition::{builtin, BaseFactor, BaseRule, FamilyDef, SeifertRows};
pub use engine::{assemble_jones, assemble_raw, band_split, jones_derivs, skein_holds, CaseEngine};
pub use prefactor::{prefactor, prefactor_deriv_poly, prefactor_derivs};
pub use xn::xn_jones;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// The `m` of a band: 0 for even, 1 for odd.
    pub fn m(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BandSpec {
    pub sign: Sign,
    pub parity: Parity,
}

/// Signs of all bands, written like `++-+-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignCase(Vec<Sign>);

impl SignCase {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignCase(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mirror(&self) -> SignCase {
        SignCase(self.0.iter().map(|s| s.flip()).collect())
    }

    /// All `2^k` cases, `++...+` first, in lexicographic order with `+`
    /// before `-`.
    pub fn all(k: usize) -> Vec<SignCase> {
        (0..1u32 << k)
            .map(|bits| {
                SignCase(
                    (0..k)
                        .map(|i| {
                            if bits >> (k - 1 - i) & 1 == 1 {
                                Sign::Minus
                            } else {
                                Sign::Plus
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl FromStr for SignCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '\u{2212}' => Ok(Sign::Minus),
                _ => Err(Error::Parse(format!("bad sign `{c}` in sign case `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .and_then(|v| {
                if v.is_empty() {
                    Err(Error::Parse("empty sign case".into()))
                } else {
                    Ok(SignCase(v))
                }
            })
    }
}

impl fmt::Display for SignCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s == Sign::Plus { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Positive twist counts, one per band.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistVector(Vec<u32>);

impl TwistVector {
    pub fn new(n: Vec<u32>) -> Result<Self> {
        if n.contains(&0) {
            return Err(Error::Invalid(format!("twist counts must be positive, got {n:?}")));
        }
        Ok(TwistVector(n))
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every vector in `[1..=n]^k`, lexicographic.
    pub fn box_iter(k: usize, n: u32) -> impl Iterator<Item = TwistVector> {
        let total = (n as u64).pow(k as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![0u32; k];
            for slot in v.iter_mut().rev() {
                *slot = (idx % n as u64) as u32 + 1;
                idx /= n as u64;
            }
            TwistVector(v)
        })
    }
}

impl FromStr for TwistVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad twist count `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        TwistVector::new(v)
    }
}

impl fmt::Display for TwistVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Which bands are retained (`x_i = 1`) in a term of the expansion. Bit
/// `i` holds `x_{i+1}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResolutionVector {
    bits: u32,
    k: usize,
}

impl ResolutionVector {
    pub fn from_bits(bits: u32, k: usize) -> Self {
        ResolutionVector { bits, k }
    }

    pub fn from_slice(x: &[u8]) -> Self {
        let bits = x.iter().enumerate().fold(0, |acc, (i, &v)| acc | ((v as u32 & 1) << i));
        ResolutionVector { bits, k: x.len() }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    /// `x_{i+1}` for zero-based band index `i`.
    pub fn get(&self, i: usize) -> u8 {
        (self.bits >> i & 1) as u8
    }
}

/// A family together with a sign for each band.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    def: Arc<FamilyDef>,
    signs: SignCase,
}

impl FamilySpec {
    pub fn new(def: Arc<FamilyDef>, signs: SignCase) -> Result<Self> {
        if signs.len() != def.band_count() {
            return Err(Error::Invalid(format!(
                "family {} has {} bands, sign case `{signs}` has {}",
                def.name(),
                def.band_count(),
                signs.len()
            )));
        }
        Ok(FamilySpec { def, signs })
    }

    /// Built-in family by name (`7_6`, `10_58`, `8_12`) with the given
    /// sign string.
    pub fn builtin(name: &str, signs: &str) -> Result<Self> {
        FamilySpec::new(builtin(name)?, signs.parse()?)
    }

    pub fn def(&self) -> &Arc<FamilyDef> {
        &self.def
    }

    pub fn name(&self) -> &str {
        self.def.name()
    }

    pub fn signs(&self) -> &SignCase {
        &self.signs
    }

    pub fn band_count(&self) -> usize {
        self.def.band_count()
    }

    pub fn bands(&self) -> Vec<BandSpec> {
        self.signs
            .signs()
            .iter()
            .zip(self.def.parities())
            .map(|(&sign, &parity)| BandSpec { sign, parity })
            .collect()
    }

    pub fn mirror(&self) -> FamilySpec {
        FamilySpec {
            def: self.def.clone(),
            signs: self.signs.mirror(),
        }
    }

    pub fn check_twists(&self, n: &TwistVector) -> Result<()> {
        if n.len() != self.band_count() {
            return Err(Error::Invalid(format!(
                "family {} has {} bands, twist vector {n} has {}",
                self.name(),
                self.band_count(),
                n.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_case_roundtrip() {
        let c: SignCase = "++-+-".parse().unwrap();
        assert_eq!(c.to_string(), "++-+-");
        assert_eq!(c.mirror().to_string(), "--+-+");
        assert!("++x".parse::<SignCase>().is_err());
        let all = SignCase::all(5);
        assert_eq!(all.len(), 32);
        assert_eq!(all[0].to_string(), "+++++");
        assert_eq!(all[31].to_string(), "-----");
    }

    #[test]
    fn twist_vectors() {
        let n: TwistVector = "1,2,1,1,1".parse().unwrap();
        assert_eq!(n.counts(), &[1, 2, 1, 1, 1]);
        assert!("1,0,1".parse::<TwistVector>().is_err());
        let all: Vec<_> = TwistVector::box_iter(2, 3).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[1].counts(), &[1, 2]);
    }
}
