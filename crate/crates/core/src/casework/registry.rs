//! Per-case formula registry and its symbolic verification.
//!
//! The registry files under `data/registry` hold the case formulas as
//! written, grouped in blocks:
//!
//! ```text
//! case 7_6 ++-++ --+--
//!   lead = (ab - c(a+b-1))de
//!   d2 = -6(ab - c(a+b+d-1) + d(b+e))
//!   given lead = 0: c = ab/(a + b - 1)
//!   d2 -> -6d(b^2 + b(e-1) + (a-1)e)/(a + b - 1)
//!   sign d2 negative
//! ```
//!
//! Substitutions are never carried out as rational functions of the
//! remaining variables; every comparison is a polynomial identity after
//! clearing denominators.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::exceptions::ExceptionPattern;
use super::CaseContext;
use crate::algebra::{expr::Expr, rat, Fraction, MultiPoly, Rational, VarNames};
use crate::error::{Error, Result};
use crate::family::{SignCase, TwistVector};
use crate::obstruction::{Classification, Gate};
use crate::seifert::{leading_coeff_symbolic, second_coeff_symbolic};

/// Upper end of the grid used when a sign claim has no certificate.
const NUMERIC_RANGE: i64 = 6;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `det S`, the leading Alexander coefficient.
    Lead,
    /// `a2 - 4 a4`.
    Second,
    D2,
    D3,
    D4,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Lead => "lead",
            Quantity::Second => "second",
            Quantity::D2 => "d2",
            Quantity::D3 => "d3",
            Quantity::D4 => "d4",
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lead" => Quantity::Lead,
            "second" => Quantity::Second,
            "d2" => Quantity::D2,
            "d3" => Quantity::D3,
            "d4" => Quantity::D4,
            _ => return Err(Error::Parse(format!("unknown quantity `{s}`"))),
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub enum Statement {
    Equals(Quantity, Expr),
    Given {
        quantity: Quantity,
        var: String,
        value: Expr,
    },
    After(Quantity, Expr),
    Sign {
        quantity: Quantity,
        positive: bool,
        condition: Option<(Expr, Expr)>,
    },
    Exceptions(Vec<ExceptionPattern>),
    Witness(Gate, TwistVector),
    /// A printed formula that is off by a constant factor: the computed
    /// quantity equals `factor` times the expression as printed.
    Erratum {
        factor: Expr,
        statement: Box<Statement>,
    },
}

#[derive(Clone, Debug)]
pub struct CaseBlock {
    pub cases: Vec<SignCase>,
    /// `(line number, verbatim text, parsed statement)`.
    pub statements: Vec<(usize, String, Statement)>,
}

impl CaseBlock {
    pub fn exception_patterns(&self) -> Vec<ExceptionPattern> {
        self.statements
            .iter()
            .filter_map(|(_, _, s)| match s {
                Statement::Exceptions(p) => Some(p.clone()),
                _ => None,
            })
            .flatten()
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Registry {
    pub family: String,
    pub blocks: Vec<CaseBlock>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Printed formula wrong by a recorded constant factor; the corrected
    /// identity holds.
    Erratum,
}

impl CheckStatus {
    pub fn is_ok(self) -> bool {
        self != CheckStatus::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormulaCheck {
    pub family: String,
    pub case: String,
    pub line: usize,
    pub statement: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Registry {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    pub fn builtin(family: &str) -> Result<&'static Registry> {
        static CACHE: OnceLock<HashMap<&'static str, Registry>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| {
            [
                ("7_6", include_str!("../../data/registry/7_6.reg")),
                ("10_58", include_str!("../../data/registry/10_58.reg")),
                ("8_12", include_str!("../../data/registry/8_12.reg")),
            ]
            .into_iter()
            .map(|(n, src)| (n, src.parse().expect("built-in registry parses")))
            .collect()
        });
        cache
            .get(family)
            .ok_or_else(|| Error::Invalid(format!("no registry for family `{family}`")))
    }

    pub fn block_for(&self, case: &SignCase) -> Option<&CaseBlock> {
        self.blocks.iter().find(|b| b.cases.contains(case))
    }

    /// Sign relating `det S` to the registered leading terms, fixed by the
    /// first block. Every other block must agree with it.
    pub fn lead_sign(&self) -> Result<i64> {
        for block in &self.blocks {
            for (_, _, st) in &block.statements {
                if let Statement::Equals(Quantity::Lead, e) = st {
                    let ctx = CaseContext::builtin(&self.family, &block.cases[0])?;
                    let names = VarNames::letters(ctx.spec().band_count());
                    let registered = e.to_fraction(&names)?;
                    let computed = Fraction::from_poly(leading_coeff_symbolic(&ctx.seifert));
                    return if computed.equals(&registered) {
                        Ok(1)
                    } else if computed.neg().equals(&registered) {
                        Ok(-1)
                    } else {
                        Err(Error::Invalid(format!(
                            "first registered leading term of {} does not match up to sign",
                            self.family
                        )))
                    };
                }
            }
        }
        Ok(1)
    }

    /// Every registered statement for every case of the family.
    pub fn verify(&self) -> Result<Vec<FormulaCheck>> {
        let sign = self.lead_sign()?;
        let mut out = Vec::new();
        for block in &self.blocks {
            for case in &block.cases {
                out.extend(verify_block(&self.family, block, case, sign)?);
            }
        }
        Ok(out)
    }
}

/// Checks of the formulas registered for one sign case.
pub fn verify_paper_case(family: &str, case: &SignCase) -> Result<Vec<FormulaCheck>> {
    let reg = Registry::builtin(family)?;
    let block = reg
        .block_for(case)
        .ok_or_else(|| Error::Invalid(format!("no formulas registered for {family} {case}")))?;
    verify_block(family, block, case, reg.lead_sign()?)
}

pub fn verify_family(family: &str) -> Result<Vec<FormulaCheck>> {
    Registry::builtin(family)?.verify()
}

struct Computed<'a> {
    ctx: &'a CaseContext,
    cache: HashMap<Quantity, MultiPoly>,
    lead_sign: i64,
}

impl Computed<'_> {
    fn get(&mut self, q: Quantity) -> Result<MultiPoly> {
        if let Some(p) = self.cache.get(&q) {
            return Ok(p.clone());
        }
        let p = match q {
            Quantity::Lead => leading_coeff_symbolic(&self.ctx.seifert).scale(&rat(self.lead_sign)),
            Quantity::Second => second_coeff_symbolic(&self.ctx.seifert)?,
            Quantity::D2 => self.ctx.engine.symbolic_derivs()[2].clone(),
            Quantity::D3 => self.ctx.engine.symbolic_derivs()[3].clone(),
            Quantity::D4 => self.ctx.engine.symbolic_derivs()[4].clone(),
        };
        self.cache.insert(q, p.clone());
        Ok(p)
    }
}

fn apply(subs: &[(usize, Fraction)], f: Fraction) -> Fraction {
    subs.iter().fold(f, |acc, (i, v)| acc.substitute(*i, v))
}

fn verify_block(family: &str, block: &CaseBlock, case: &SignCase, lead_sign: i64) -> Result<Vec<FormulaCheck>> {
    let ctx = CaseContext::builtin(family, case)?;
    let k = ctx.spec().band_count();
    let names = VarNames::letters(k);
    let mut computed = Computed {
        ctx: &ctx,
        cache: HashMap::new(),
        lead_sign,
    };
    let mut subs: Vec<(usize, Fraction)> = Vec::new();
    let mut out = Vec::new();

    for (line, text, st) in &block.statements {
        let (status, detail) = match st {
            Statement::Exceptions(_) => continue,
            Statement::Erratum { factor, statement } => {
                let scale = factor.to_fraction(&names)?;
                let (printed_ok, _) = check(statement, *line, None, &mut computed, &mut subs, &ctx, &names)?;
                let (ok, detail) = check(statement, *line, Some(&scale), &mut computed, &mut subs, &ctx, &names)?;
                if ok && !printed_ok {
                    (
                        CheckStatus::Erratum,
                        format!("holds with factor {}", scale.num.to_string_with(&names)),
                    )
                } else if printed_ok {
                    (
                        CheckStatus::Fail,
                        "printed formula already holds; erratum is stale".to_string(),
                    )
                } else {
                    (CheckStatus::Fail, detail)
                }
            }
            _ => {
                let (ok, detail) = check(st, *line, None, &mut computed, &mut subs, &ctx, &names)?;
                (if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail)
            }
        };
        out.push(FormulaCheck {
            family: family.to_string(),
            case: case.to_string(),
            line: *line,
            statement: text.clone(),
            status,
            detail,
        });
    }
    Ok(out)
}

/// One statement against the computed quantities; `scale` multiplies the
/// registered expression.
#[allow(clippy::too_many_arguments)]
fn check(
    st: &Statement,
    line: usize,
    scale: Option<&Fraction>,
    computed: &mut Computed<'_>,
    subs: &mut Vec<(usize, Fraction)>,
    ctx: &CaseContext,
    names: &VarNames,
) -> Result<(bool, String)> {
    let expected = |e: &Expr| -> Result<Fraction> {
        let f = e.to_fraction(names)?;
        Ok(match scale {
            Some(s) => f.mul(s),
            None => f,
        })
    };
    Ok(match st {
        Statement::Equals(q, e) => {
            let c = Fraction::from_poly(computed.get(*q)?);
            let ok = c.equals(&expected(e)?);
            (ok, if ok { "exact".to_string() } else { mismatch(&c, names) })
        }
        Statement::After(q, e) => {
            let c = apply(subs, Fraction::from_poly(computed.get(*q)?));
            let ok = c.equals(&expected(e)?);
            (
                ok,
                if ok {
                    "exact after substitution".to_string()
                } else {
                    mismatch(&c, names)
                },
            )
        }
        Statement::Given { quantity, var, value } => {
            let i = names
                .index_of(var)
                .ok_or_else(|| Error::Parse(format!("line {line}: unknown variable `{var}`")))?;
            subs.push((i, value.to_fraction(names)?));
            let c = apply(subs, Fraction::from_poly(computed.get(*quantity)?));
            let ok = c.is_zero();
            (
                ok,
                if ok {
                    "vanishes".to_string()
                } else {
                    mismatch(&c, names)
                },
            )
        }
        Statement::Sign {
            quantity,
            positive,
            condition,
        } => {
            let c = apply(subs, Fraction::from_poly(computed.get(*quantity)?));
            check_sign(&c, *positive, condition.as_ref(), names)?
        }
        Statement::Witness(gate, n) => {
            let inst = ctx.evaluate(n, false)?;
            let got = inst.verdict.classification;
            (got == Classification::Excluded(*gate), got.to_string())
        }
        Statement::Exceptions(_) | Statement::Erratum { .. } => {
            return Err(Error::Invalid(format!("line {line}: statement cannot be checked here")))
        }
    })
}

fn mismatch(c: &Fraction, names: &VarNames) -> String {
    let den = c.den.to_string_with(names);
    if den == "1" {
        format!("computed {}", c.num.to_string_with(names))
    } else {
        format!("computed ({}) / ({})", c.num.to_string_with(names), den)
    }
}

/// Certificate first (numerator and denominator each of fixed sign on
/// positive integers), otherwise every grid point `[1..6]^free`.
fn check_sign(
    c: &Fraction,
    positive: bool,
    condition: Option<&(Expr, Expr)>,
    names: &VarNames,
) -> Result<(bool, String)> {
    let want = if positive { c.num.clone() } else { c.num.neg() };
    let fixed = |p: &MultiPoly| p.positive_on_positive_integers() || p.neg().positive_on_positive_integers();
    if condition.is_none() && fixed(&c.den) {
        let den_pos = c.den.positive_on_positive_integers();
        let num_ok = if den_pos {
            want.positive_on_positive_integers()
        } else {
            want.neg().positive_on_positive_integers()
        };
        if num_ok {
            return Ok((true, "certificate".to_string()));
        }
    }

    let k = names.len();
    let free: Vec<usize> = (0..k)
        .filter(|&i| c.num.degree_in(i) > 0 || c.den.degree_in(i) > 0)
        .collect();
    let mut point = vec![rat(1); k];
    let mut idx = vec![1i64; free.len()];
    let mut checked = 0u64;
    loop {
        for (slot, &v) in free.iter().zip(&idx) {
            point[*slot] = rat(v);
        }
        let lookup = |s: &str| names.index_of(s).map(|i| point[i].clone());
        let admitted = match condition {
            Some((lhs, rhs)) => lhs.eval(&lookup)? > rhs.eval(&lookup)?,
            None => true,
        };
        let den = c.den.eval(&point)?;
        if admitted && den != rat(0) {
            let v: Rational = c.num.eval(&point)? / den;
            let good = if positive { v > rat(0) } else { v < rat(0) };
            if !good {
                let at: Vec<String> = free
                    .iter()
                    .map(|&i| format!("{}={}", names.name(i), point[i]))
                    .collect();
                return Ok((false, format!("wrong sign at {}", at.join(", "))));
            }
            checked += 1;
        }
        // odometer over the free variables
        let mut j = 0;
        while j < idx.len() && idx[j] == NUMERIC_RANGE {
            idx[j] = 1;
            j += 1;
        }
        if j == idx.len() {
            break;
        }
        idx[j] += 1;
    }
    Ok((
        checked > 0,
        format!("numeric, {checked} points in [1..{NUMERIC_RANGE}]^{}", free.len()),
    ))
}

impl FromStr for Registry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut family: Option<String> = None;
        let mut blocks: Vec<CaseBlock> = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Parse(format!("registry line {line}: {m}"));
            if let Some(rest) = text.strip_prefix("case ") {
                let mut words = rest.split_whitespace();
                let fam = words.next().ok_or_else(|| err("missing family"))?;
                match &family {
                    Some(f) if f != fam => return Err(err("one family per registry")),
                    _ => family = Some(fam.to_string()),
                }
                let cases = words.map(str::parse).collect::<Result<Vec<SignCase>>>()?;
                if cases.is_empty() {
                    return Err(err("no sign cases"));
                }
                blocks.push(CaseBlock {
                    cases,
                    statements: Vec::new(),
                });
                continue;
            }
            let block = blocks.last_mut().ok_or_else(|| err("statement outside a case block"))?;
            let st = parse_statement(text).map_err(|e| err(&e.to_string()))?;
            block.statements.push((line, text.to_string(), st));
        }
        let family = family.ok_or_else(|| Error::Parse("empty registry".into()))?;
        Ok(Registry { family, blocks })
    }
}

fn parse_statement(text: &str) -> Result<Statement> {
    if let Some(rest) = text.strip_prefix("erratum ") {
        let (factor, st) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse("expected `erratum FACTOR: STATEMENT`".into()))?;
        let statement = parse_statement(st.trim())?;
        if !matches!(statement, Statement::Equals(..) | Statement::After(..)) {
            return Err(Error::Parse("an erratum applies to `=` or `->` statements".into()));
        }
        return Ok(Statement::Erratum {
            factor: Expr::parse(factor)?,
            statement: Box::new(statement),
        });
    }
    if let Some(rest) = text.strip_prefix("given ") {
        let (cond, assign) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse("expected `given Q = 0: v = EXPR`".into()))?;
        let (q, zero) = cond
            .split_once('=')
            .ok_or_else(|| Error::Parse("expected `Q = 0`".into()))?;
        if zero.trim() != "0" {
            return Err(Error::Parse("a condition must read `Q = 0`".into()));
        }
        let (var, value) = assign
            .split_once('=')
            .ok_or_else(|| Error::Parse("expected `v = EXPR`".into()))?;
        return Ok(Statement::Given {
            quantity: q.trim().parse()?,
            var: var.trim().to_string(),
            value: Expr::parse(value)?,
        });
    }
    if let Some(rest) = text.strip_prefix("sign ") {
        let (claim, condition) = match rest.split_once(" where ") {
            Some((c, w)) => {
                let (l, r) = w
                    .split_once('>')
                    .ok_or_else(|| Error::Parse("condition must read `EXPR > EXPR`".into()))?;
                (c, Some((Expr::parse(l)?, Expr::parse(r)?)))
            }
            None => (rest, None),
        };
        let words: Vec<&str> = claim.split_whitespace().collect();
        let positive = match words.get(1).copied() {
            Some("positive") => true,
            Some("negative") => false,
            _ => return Err(Error::Parse("expected `positive` or `negative`".into())),
        };
        return Ok(Statement::Sign {
            quantity: words[0].parse()?,
            positive,
            condition,
        });
    }
    if let Some(rest) = text.strip_prefix("exceptions ") {
        return Ok(Statement::Exceptions(ExceptionPattern::parse_list(rest)?));
    }
    if let Some(rest) = text.strip_prefix("witness ") {
        let (gate, n) = rest
            .trim()
            .split_once(' ')
            .ok_or_else(|| Error::Parse("expected `witness GATE (t1,...)`".into()))?;
        let gate = crate::obstruction::Gate::ALL
            .into_iter()
            .find(|g| g.name() == gate)
            .ok_or_else(|| Error::Parse(format!("unknown gate `{gate}`")))?;
        let n = n.trim().trim_start_matches('(').trim_end_matches(')').parse()?;
        return Ok(Statement::Witness(gate, n));
    }
    if let Some((q, e)) = text.split_once("->") {
        return Ok(Statement::After(q.trim().parse()?, Expr::parse(e)?));
    }
    if let Some((q, e)) = text.split_once('=') {
        return Ok(Statement::Equals(q.trim().parse()?, Expr::parse(e)?));
    }
    Err(Error::Parse(format!("unrecognized statement `{text}`")))
}
