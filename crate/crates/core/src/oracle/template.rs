//! Twist-region templates.
//!
//! ```text
//! family 7_6
//! # band  SW SE NE NW
//! box 1   5 8 7 1
//! ```
//!
//! A box is a twist region between two strands, entered on the left by
//! arcs `SW`, `NW` and left on the right by `SE`, `NE`. Every band of the
//! family owns exactly one box. A band with `n` twists and parity `m`
//! becomes a row of `2n - m` crossings whose handedness is chosen so that
//! each crossing has the band's sign.

use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use super::bracket::jones_from_pd;
use super::pd::PdCode;
use crate::error::{Error, Result};
use crate::family::{assemble_jones, FamilySpec, TwistVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistBox {
    /// 1-based band index.
    pub band: usize,
    /// `[SW, SE, NE, NW]`.
    pub ports: [u32; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramTemplate {
    pub family: String,
    pub boxes: Vec<TwistBox>,
}

impl DiagramTemplate {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    /// Shipped template for a built-in family.
    pub fn builtin(name: &str) -> Result<&'static DiagramTemplate> {
        static CACHE: OnceLock<HashMap<&'static str, DiagramTemplate>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| {
            [
                ("7_6", include_str!("../../data/templates/7_6.tpl")),
                ("10_58", include_str!("../../data/templates/10_58.tpl")),
                ("8_12", include_str!("../../data/templates/8_12.tpl")),
            ]
            .into_iter()
            .map(|(n, src)| (n, src.parse().expect("built-in template parses")))
            .collect()
        });
        cache
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("no built-in template for family `{name}`")))
    }

    fn check_bands(&self, spec: &FamilySpec) -> Result<()> {
        if self.family != spec.name() {
            return Err(Error::Invalid(format!(
                "template is for family {}, not {}",
                self.family,
                spec.name()
            )));
        }
        let k = spec.band_count();
        let mut owned = vec![0; k];
        for b in &self.boxes {
            if b.band == 0 || b.band > k {
                return Err(Error::Invalid(format!("box for band {} outside 1..{k}", b.band)));
            }
            owned[b.band - 1] += 1;
        }
        if owned.iter().any(|&c| c != 1) {
            return Err(Error::Invalid("every band must own exactly one box".into()));
        }
        Ok(())
    }

    /// Crossing rows for the given box sizes and handednesses. Also
    /// returns the index of the first crossing of each box.
    fn expand(&self, counts: &[usize], flipped: &[bool]) -> (Vec<[u32; 4]>, Vec<usize>) {
        let mut fresh = self.boxes.iter().flat_map(|b| b.ports).max().unwrap_or(0);
        let mut crossings = Vec::new();
        let mut first = Vec::new();
        for (bi, b) in self.boxes.iter().enumerate() {
            let [sw, se, ne, nw] = b.ports;
            let k = counts[bi];
            let mut top = vec![nw];
            let mut bottom = vec![sw];
            for _ in 1..k {
                fresh += 1;
                top.push(fresh);
                fresh += 1;
                bottom.push(fresh);
            }
            top.push(ne);
            bottom.push(se);
            first.push(crossings.len());
            for j in 0..k {
                let (sw, nw, ne, se) = (bottom[j], top[j], top[j + 1], bottom[j + 1]);
                crossings.push(if flipped[bi] {
                    [se, ne, nw, sw]
                } else {
                    [sw, se, ne, nw]
                });
            }
        }
        (crossings, first)
    }
}

/// The diagram of `spec` at twist vector `n`.
pub fn expand_twists(tpl: &DiagramTemplate, spec: &FamilySpec, n: &TwistVector) -> Result<PdCode> {
    spec.check_twists(n)?;
    tpl.check_bands(spec)?;
    let bands = spec.bands();
    let counts: Vec<usize> = tpl
        .boxes
        .iter()
        .map(|b| {
            let i = b.band - 1;
            (2 * n.counts()[i] as i64 - bands[i].parity.m()) as usize
        })
        .collect();

    let (plain, first) = tpl.expand(&counts, &vec![false; tpl.boxes.len()]);
    let pd = PdCode::with_seeds(plain, &[])?;
    let mut flipped = Vec::with_capacity(tpl.boxes.len());
    for (bi, b) in tpl.boxes.iter().enumerate() {
        let ci = first[bi];
        // the two strands of a band run in opposite directions; a half turn
        // of the crossing during normalization flips both flags together
        if pd.entering(ci, 0) == pd.entering(ci, 3) {
            return Err(Error::Invalid(format!("box of band {} has parallel strands", b.band)));
        }
        flipped.push(pd.sign(ci) != bands[b.band - 1].sign.value());
    }

    let (crossings, _) = tpl.expand(&counts, &flipped);
    let pd = PdCode::with_seeds(crossings, &[])?;
    if pd.components() != 1 {
        return Err(Error::Invalid(format!("expansion has {} components", pd.components())));
    }
    if !pd.is_planar() {
        return Err(Error::Invalid("expansion is not planar".into()));
    }
    Ok(pd)
}

/// Oracle agreement at one instance: bracket state sum on the expanded
/// diagram against the family engine.
pub fn crosscheck(spec: &FamilySpec, tpl: &DiagramTemplate, n: &TwistVector, budget: usize) -> Result<bool> {
    let pd = match expand_twists(tpl, spec, n) {
        Ok(pd) => pd,
        Err(Error::Invalid(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let oracle = jones_from_pd(&pd, budget)?;
    Ok(oracle == assemble_jones(spec, n)?)
}

impl FromStr for DiagramTemplate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut family = None;
        let mut boxes = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "family" if words.len() == 2 => family = Some(words[1].to_string()),
                "box" if words.len() == 6 => {
                    let nums: Vec<u32> = words[1..]
                        .iter()
                        .map(|w| w.parse().map_err(|_| err("expected integers")))
                        .collect::<Result<_>>()?;
                    boxes.push(TwistBox {
                        band: nums[0] as usize,
                        ports: [nums[1], nums[2], nums[3], nums[4]],
                    });
                }
                _ => return Err(err("expected `family NAME` or `box BAND SW SE NE NW`")),
            }
        }
        let family = family.ok_or_else(|| Error::Parse("missing `family` line".into()))?;
        Ok(DiagramTemplate { family, boxes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::SignCase;

    fn spec(name: &str, signs: &str) -> FamilySpec {
        FamilySpec::builtin(name, signs).unwrap()
    }

    #[test]
    fn base_diagrams_have_the_knot_table_crossing_numbers() {
        for (name, signs, c) in [("7_6", "+++++", 7), ("10_58", "+++++", 10), ("8_12", "++++", 8)] {
            let s = spec(name, signs);
            let ones = TwistVector::new(vec![1; s.band_count()]).unwrap();
            let pd = expand_twists(DiagramTemplate::builtin(name).unwrap(), &s, &ones).unwrap();
            assert_eq!(pd.len(), c);
        }
    }

    #[test]
    fn one_more_twist_adds_two_crossings() {
        let s = spec("7_6", "++-+-");
        let tpl = DiagramTemplate::builtin("7_6").unwrap();
        let a = expand_twists(tpl, &s, &"1,1,1,1,1".parse().unwrap()).unwrap();
        let b = expand_twists(tpl, &s, &"2,1,1,1,1".parse().unwrap()).unwrap();
        assert_eq!(b.len(), a.len() + 2);
    }

    #[test]
    fn every_sign_case_agrees_with_the_engine() {
        for name in ["7_6", "10_58", "8_12"] {
            let tpl = DiagramTemplate::builtin(name).unwrap();
            let k = spec(name, &"+".repeat(if name == "8_12" { 4 } else { 5 })).band_count();
            for case in SignCase::all(k) {
                let s = FamilySpec::builtin(name, &case.to_string()).unwrap();
                let mut n = vec![1; k];
                n[0] = 2;
                for n in [vec![1; k], n] {
                    let n = TwistVector::new(n).unwrap();
                    assert!(crosscheck(&s, tpl, &n, 16).unwrap(), "{name} {case} {n}");
                }
            }
        }
    }

    #[test]
    fn corrupted_template_is_caught() {
        let mut tpl = DiagramTemplate::builtin("10_58").unwrap().clone();
        tpl.boxes[1].band = 3;
        tpl.boxes[2].band = 2;
        let s = spec("10_58", "++-+-");
        assert!(!crosscheck(&s, &tpl, &"1,2,1,1,1".parse().unwrap(), 16).unwrap());
    }
}
