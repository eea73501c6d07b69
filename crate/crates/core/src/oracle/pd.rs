//! Planar diagram codes.
//!
//! ```text
//! # left-handed trefoil
//! X 1 4 2 5
//! X 3 6 4 1
//! X 5 2 6 3
//! ```
//!
//! Each crossing lists its four arc labels counterclockwise, starting at
//! the incoming under-strand. That convention already orients every
//! component that passes under somewhere. An optional orientation block
//! overrides it:
//!
//! ```text
//! path 1 2 3 4 5 6
//! ```
//!
//! lists arcs in travel order along one component.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A position on a crossing: `(crossing index, slot 0..4)`.
pub type Slot = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
    /// `entering[c][p]`: the strand through slot `p` of crossing `c` enters it.
    entering: Vec<[bool; 4]>,
    components: usize,
}

impl PdCode {
    /// Oriented by the incoming-under convention.
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self> {
        let seeds: Vec<Slot> = (0..crossings.len()).map(|c| (c, 0)).collect();
        Self::with_seeds(crossings, &seeds)
    }

    /// Oriented so that the strand enters each slot in `seeds`; components
    /// without a seed get an arbitrary direction.
    pub fn with_seeds(crossings: Vec<[u32; 4]>, seeds: &[Slot]) -> Result<Self> {
        let occ = occurrences(&crossings)?;
        let (entering, components) = orient(&crossings, &occ, seeds)?;
        Ok(PdCode {
            crossings,
            entering,
            components,
        }
        .normalized())
    }

    /// Rotates crossings by a half turn where needed so that slot 0 holds
    /// the incoming under-strand, making the text form self-orienting.
    fn normalized(mut self) -> Self {
        for (x, e) in self.crossings.iter_mut().zip(self.entering.iter_mut()) {
            if !e[0] {
                x.rotate_left(2);
                e.rotate_left(2);
            }
        }
        self
    }

    /// Oriented by component paths, each a list of arcs in travel order.
    pub fn with_paths(crossings: Vec<[u32; 4]>, paths: &[Vec<u32>]) -> Result<Self> {
        let mut seeds = Vec::new();
        for path in paths {
            for w in path.windows(2) {
                seeds.push(find_passage(&crossings, w[0], w[1])?);
            }
            if path.len() > 2 {
                seeds.push(find_passage(&crossings, path[path.len() - 1], path[0])?);
            }
        }
        Self::with_seeds(crossings, &seeds)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn components(&self) -> usize {
        self.components.max(1)
    }

    pub fn entering(&self, c: usize, p: usize) -> bool {
        self.entering[c][p]
    }

    /// +1 or -1. The under-strand runs through slots 0 and 2.
    pub fn sign(&self, c: usize) -> i64 {
        let e = &self.entering[c];
        let s = if e[3] { 1 } else { -1 };
        if e[0] {
            s
        } else {
            -s
        }
    }

    pub fn writhe(&self) -> i64 {
        (0..self.len()).map(|c| self.sign(c)).sum()
    }

    /// Same diagram with every crossing switched.
    pub fn mirror(&self) -> PdCode {
        let rot = |x: &[u32; 4]| [x[1], x[2], x[3], x[0]];
        let rot_b = |x: &[bool; 4]| [x[1], x[2], x[3], x[0]];
        PdCode {
            crossings: self.crossings.iter().map(rot).collect(),
            entering: self.entering.iter().map(rot_b).collect(),
            components: self.components,
        }
        .normalized()
    }

    /// Faces of the diagram viewed as a 4-valent map with counterclockwise
    /// rotation at each crossing.
    pub fn face_count(&self) -> usize {
        let occ = occurrences(&self.crossings).expect("validated on construction");
        let n = self.len();
        let mut seen = vec![[false; 4]; n];
        let mut faces = 0;
        for c in 0..n {
            for p in 0..4 {
                if seen[c][p] {
                    continue;
                }
                faces += 1;
                let (mut cc, mut pp) = (c, p);
                while !seen[cc][pp] {
                    seen[cc][pp] = true;
                    let (oc, op) = other_end(&occ, &self.crossings, (cc, pp));
                    cc = oc;
                    pp = (op + 1) % 4;
                }
            }
        }
        faces
    }

    /// Euler characteristic check for a connected diagram: `F = V + 2`.
    pub fn is_planar(&self) -> bool {
        self.is_empty() || (self.is_connected() && self.face_count() == self.len() + 2)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let occ = occurrences(&self.crossings).expect("validated on construction");
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for p in 0..4 {
                let (oc, _) = other_end(&occ, &self.crossings, (c, p));
                if !seen[oc] {
                    seen[oc] = true;
                    stack.push(oc);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

fn occurrences(crossings: &[[u32; 4]]) -> Result<HashMap<u32, Vec<Slot>>> {
    let mut occ: HashMap<u32, Vec<Slot>> = HashMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (p, &l) in x.iter().enumerate() {
            occ.entry(l).or_default().push((c, p));
        }
    }
    for (l, v) in &occ {
        if v.len() != 2 {
            return Err(Error::Invalid(format!("arc {l} appears {} times", v.len())));
        }
    }
    Ok(occ)
}

fn other_end(occ: &HashMap<u32, Vec<Slot>>, crossings: &[[u32; 4]], s: Slot) -> Slot {
    let v = &occ[&crossings[s.0][s.1]];
    if v[0] == s {
        v[1]
    } else {
        v[0]
    }
}

fn find_passage(crossings: &[[u32; 4]], from: u32, to: u32) -> Result<Slot> {
    for (c, x) in crossings.iter().enumerate() {
        for p in 0..4 {
            if x[p] == from && x[(p + 2) % 4] == to {
                return Ok((c, p));
            }
        }
    }
    Err(Error::Invalid(format!(
        "no crossing takes arc {from} straight to arc {to}"
    )))
}

fn orient(crossings: &[[u32; 4]], occ: &HashMap<u32, Vec<Slot>>, seeds: &[Slot]) -> Result<(Vec<[bool; 4]>, usize)> {
    let n = crossings.len();
    let mut enter: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
    let mut components = 0;

    let arbitrary = (0..n).flat_map(|c| (0..4).map(move |p| (c, p)));
    for (start, seeded) in seeds.iter().map(|&s| (s, true)).chain(arbitrary.map(|s| (s, false))) {
        if let Some(e) = enter[start.0][start.1] {
            if seeded && !e {
                return Err(Error::Invalid(format!(
                    "inconsistent orientation at crossing {} slot {}",
                    start.0, start.1
                )));
            }
            continue;
        }
        components += 1;
        let mut tgt = start;
        while enter[tgt.0][tgt.1].is_none() {
            let (c, p) = tgt;
            let q = (p + 2) % 4;
            if enter[c][q].is_some() {
                return Err(Error::Invalid(format!("strand meets itself at crossing {c}")));
            }
            enter[c][p] = Some(true);
            enter[c][q] = Some(false);
            tgt = other_end(occ, crossings, (c, q));
        }
        if enter[tgt.0][tgt.1] != Some(true) {
            return Err(Error::Invalid("traversal closed up against its direction".into()));
        }
    }
    let entering = enter
        .into_iter()
        .map(|e| e.map(|v| v.expect("every slot visited")))
        .collect();
    Ok((entering, components))
}

impl FromStr for PdCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut crossings = Vec::new();
        let mut paths = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().unwrap_or_default();
            let nums: Vec<u32> = words
                .map(|w| {
                    w.trim_matches(|ch| ch == ',' || ch == '[' || ch == ']')
                        .parse()
                        .map_err(|_| Error::Parse(format!("line {}: bad arc label `{w}`", lineno + 1)))
                })
                .collect::<Result<_>>()?;
            match head {
                "X" => {
                    let x: [u32; 4] = nums
                        .try_into()
                        .map_err(|_| Error::Parse(format!("line {}: a crossing needs 4 arcs", lineno + 1)))?;
                    crossings.push(x);
                }
                "path" => paths.push(nums),
                other => return Err(Error::Parse(format!("line {}: unknown keyword `{other}`", lineno + 1))),
            }
        }
        if paths.is_empty() {
            PdCode::new(crossings)
        } else {
            PdCode::with_paths(crossings, &paths)
        }
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.crossings {
            writeln!(f, "X {} {} {} {}", x[0], x[1], x[2], x[3])?;
        }
        Ok(())
    }
}
