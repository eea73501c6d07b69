//! Exception patterns and the classification of surviving instances.
//!
//! A pattern such as `(1,e+1,-1,d,-e)` lists the signed twist of each
//! band: entry `i` is `s_i t_i`. Bare (possibly negated) variables bind
//! to the instance, every other entry must then evaluate to its signed
//! twist, and bound variables must be positive.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::registry::Registry;
use super::sweep::CaseReport;
use super::CaseContext;
use crate::algebra::{expr::Expr, rat, HalfLaurent, Rational};
use crate::error::{Error, Result};
use crate::family::{SignCase, TwistVector};
use crate::obstruction::{root5_gate, Root5Verdict};

#[derive(Clone, Debug)]
pub struct ExceptionPattern {
    pub text: String,
    entries: Vec<Expr>,
}

impl ExceptionPattern {
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("pattern `{text}` must be parenthesized")))?;
        let entries = inner.split(',').map(Expr::parse).collect::<Result<Vec<_>>>()?;
        Ok(ExceptionPattern {
            text: text.trim().to_string(),
            entries,
        })
    }

    /// Whitespace separated patterns; entries themselves contain no spaces
    /// outside their parentheses.
    pub fn parse_list(text: &str) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        let mut depth = 0;
        let mut start = None;
        for (i, ch) in text.char_indices() {
            match ch {
                '(' => {
                    if depth == 0 {
                        start = Some(i);
                    }
                    depth += 1;
                }
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        let s = start.take().expect("balanced");
                        out.push(Self::parse(&text[s..=i])?);
                    }
                }
                _ => {}
            }
        }
        if depth != 0 || out.is_empty() {
            return Err(Error::Parse(format!("bad pattern list `{text}`")));
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Does the instance `n` of sign case `signs` fit the pattern?
    pub fn matches(&self, signs: &SignCase, n: &TwistVector) -> bool {
        if self.entries.len() != n.len() || signs.len() != n.len() {
            return false;
        }
        let signed: Vec<Rational> = signs
            .signs()
            .iter()
            .zip(n.counts())
            .map(|(s, &t)| rat(s.value() * t as i64))
            .collect();
        let mut bound: HashMap<String, Rational> = HashMap::new();
        for (e, v) in self.entries.iter().zip(&signed) {
            let (name, value) = match e {
                Expr::Var(x) => (x, v.clone()),
                Expr::Neg(inner) => match inner.as_ref() {
                    Expr::Var(x) => (x, -v.clone()),
                    _ => continue,
                },
                _ => continue,
            };
            if bound.get(name).is_some_and(|old| *old != value) {
                return false;
            }
            bound.insert(name.clone(), value);
        }
        if bound.values().any(|v| *v < rat(1)) {
            return false;
        }
        let lookup = |s: &str| bound.get(s).cloned();
        self.entries
            .iter()
            .zip(&signed)
            .all(|(e, v)| e.eval(&lookup).is_ok_and(|x| x == *v))
    }
}

impl fmt::Display for ExceptionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// The instances of one sign case that fit one pattern, with the checks
/// that make them unknot candidates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExceptionRecord {
    pub family: String,
    pub case: String,
    pub pattern: String,
    pub instances: Vec<String>,
    pub jones_trivial: bool,
    pub conway_trivial: bool,
    pub root5_inconclusive: bool,
}

/// Matches every EXCEPTION instance of the reports against the registered
/// patterns of its case. An exception that fits no pattern is an error.
pub fn classify_exceptions(reports: &[CaseReport]) -> Result<Vec<ExceptionRecord>> {
    let mut out = Vec::new();
    for report in reports {
        if report.exceptions.is_empty() {
            continue;
        }
        let reg = Registry::builtin(&report.family)?;
        let case: SignCase = report.case.parse()?;
        let patterns = reg.block_for(&case).map(|b| b.exception_patterns()).unwrap_or_default();
        let ctx = CaseContext::builtin(&report.family, &case)?;

        let mut per_pattern: Vec<ExceptionRecord> = patterns
            .iter()
            .map(|p| ExceptionRecord {
                family: report.family.clone(),
                case: report.case.clone(),
                pattern: p.text.clone(),
                instances: Vec::new(),
                jones_trivial: true,
                conway_trivial: true,
                root5_inconclusive: true,
            })
            .collect();
        for text in &report.exceptions {
            let n: TwistVector = text.trim_start_matches('(').trim_end_matches(')').parse()?;
            let hits: Vec<usize> = (0..patterns.len())
                .filter(|&i| patterns[i].matches(&case, &n))
                .collect();
            if hits.is_empty() {
                return Err(Error::Invalid(format!(
                    "exception {} {} {} matches no registered pattern",
                    report.family, report.case, n
                )));
            }
            let inst = ctx.evaluate(&n, false)?;
            let jones_trivial = inst.jones == HalfLaurent::one();
            let conway_trivial = inst.conway.is_trivial();
            let root5 = root5_gate(&inst.jones)? == Root5Verdict::Inconclusive;
            for i in hits {
                let r = &mut per_pattern[i];
                r.instances.push(n.to_string());
                r.jones_trivial &= jones_trivial;
                r.conway_trivial &= conway_trivial;
                r.root5_inconclusive &= root5;
            }
        }
        out.extend(per_pattern.into_iter().filter(|r| !r.instances.is_empty()));
    }
    Ok(out)
}
