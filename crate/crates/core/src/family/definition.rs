//! Family definition files.
//!
//! ```text
//! name 7_6
//! bands odd odd odd even even
//!
//! [base]
//! x4=0 x5=0 : X(1,2,3)
//! x4=1 x5=0 : X(1,2,3) U
//!
//! [seifert]
//! odd = s(2t - 1)
//! even = 2st
//! row -(n1+n2)/2, (-n1-1)/2, 0, 1
//! ```
//!
//! `[base]` maps each resolution vector to a link. A rule's conditions
//! constrain some `x_i`; every resolution vector must match exactly one
//! rule. The body is a product of factors:
//!
//! * `X(i,j,...)`: the `X_n` pattern on the listed bands. A retained odd
//!   band contributes its residual half twist `-s_i`, anything else 0.
//! * `U`: a split unknot, multiplying by `-(t^(1/2) + t^(-1/2))`.
//! * `unknots(expr)`: an unlink of `expr` components, `expr` in `x1..xk`.
//!
//! Juxtaposed factors are connected sums, so their Jones polynomials
//! multiply.
//!
//! `[seifert]` gives a Seifert matrix in the signed band twist numbers
//! `n1..nk`, and for each parity how `n_i` depends on the band sign `s`
//! and the twist parameter `t`.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use num_traits::ToPrimitive;

use super::{xn::xn_jones, Parity, ResolutionVector, SignCase};
use crate::algebra::{expr::Expr, rat, HalfLaurent, MultiPoly, Rational, VarNames};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum BaseFactor {
    X(Vec<usize>),
    Unknot,
    Unknots(Expr),
}

#[derive(Clone, Debug)]
pub struct BaseRule {
    pub conditions: Vec<(usize, u8)>,
    pub factors: Vec<BaseFactor>,
}

impl BaseRule {
    fn matches(&self, x: ResolutionVector) -> bool {
        self.conditions.iter().all(|&(i, v)| x.get(i) == v)
    }
}

/// Seifert matrix rows in `n1..nk` plus the per-parity substitution.
#[derive(Clone, Debug)]
pub struct SeifertRows {
    pub rows: Vec<Vec<MultiPoly>>,
    /// `n_i` as a polynomial in `s` (variable 0) and `t` (variable 1).
    pub odd: MultiPoly,
    pub even: MultiPoly,
}

#[derive(Clone, Debug)]
pub struct FamilyDef {
    name: String,
    parities: Vec<Parity>,
    rules: Vec<BaseRule>,
    seifert: Option<SeifertRows>,
}

impl FamilyDef {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn band_count(&self) -> usize {
        self.parities.len()
    }

    pub fn rules(&self) -> &[BaseRule] {
        &self.rules
    }

    pub fn seifert(&self) -> Option<&SeifertRows> {
        self.seifert.as_ref()
    }

    pub fn load(path: &Path) -> Result<FamilyDef> {
        FamilyDef::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<FamilyDef> {
        let mut name = None;
        let mut parities = None;
        let mut rules = Vec::new();
        let mut odd = None;
        let mut even = None;
        let mut rows = Vec::new();
        let mut section = "";
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("family file line {}: {msg}", lineno + 1));
            if line.starts_with('[') {
                section = match line {
                    "[base]" => "base",
                    "[seifert]" => "seifert",
                    _ => return Err(err("unknown section")),
                };
                continue;
            }
            match section {
                "" => {
                    let (key, rest) = line
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| err("expected `key value`"))?;
                    match key {
                        "name" => name = Some(rest.trim().to_string()),
                        "bands" => {
                            parities = Some(
                                rest.split_whitespace()
                                    .map(|w| match w {
                                        "odd" => Ok(Parity::Odd),
                                        "even" => Ok(Parity::Even),
                                        _ => Err(err("band parity must be `odd` or `even`")),
                                    })
                                    .collect::<Result<Vec<_>>>()?,
                            )
                        }
                        _ => return Err(err("unknown key")),
                    }
                }
                "base" => rules.push(parse_rule(line).map_err(|e| err(&e.to_string()))?),
                "seifert" => {
                    let st = VarNames::new(["s", "t"]);
                    if let Some(rest) = line.strip_prefix("odd") {
                        let rhs = rest
                            .trim()
                            .strip_prefix('=')
                            .ok_or_else(|| err("expected `odd = ...`"))?;
                        odd = Some(Expr::parse(rhs)?.to_poly(&st)?);
                    } else if let Some(rest) = line.strip_prefix("even") {
                        let rhs = rest
                            .trim()
                            .strip_prefix('=')
                            .ok_or_else(|| err("expected `even = ...`"))?;
                        even = Some(Expr::parse(rhs)?.to_poly(&st)?);
                    } else if let Some(rest) = line.strip_prefix("row") {
                        rows.push(rest.split(',').map(str::to_string).collect::<Vec<_>>());
                    } else {
                        return Err(err("expected `odd`, `even` or `row`"));
                    }
                }
                _ => unreachable!(),
            }
        }
        let name = name.ok_or_else(|| Error::Parse("family file has no `name`".into()))?;
        let parities = parities.ok_or_else(|| Error::Parse("family file has no `bands`".into()))?;
        let k = parities.len();
        if k == 0 || k > 16 {
            return Err(Error::Parse(format!("unsupported band count {k}")));
        }
        let seifert = if rows.is_empty() {
            None
        } else {
            let names = VarNames::new((1..=k).map(|i| format!("n{i}")));
            let rows = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|e| Expr::parse(e)?.to_poly(&names))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            if rows.iter().any(|r| r.len() != rows.len()) {
                return Err(Error::Parse("Seifert matrix must be square".into()));
            }
            Some(SeifertRows {
                rows,
                odd: odd.ok_or_else(|| Error::Parse("[seifert] needs `odd = ...`".into()))?,
                even: even.ok_or_else(|| Error::Parse("[seifert] needs `even = ...`".into()))?,
            })
        };
        let def = FamilyDef {
            name,
            parities,
            rules,
            seifert,
        };
        def.validate()?;
        Ok(def)
    }

    fn validate(&self) -> Result<()> {
        let k = self.band_count();
        for rule in &self.rules {
            for &(i, _) in &rule.conditions {
                if i >= k {
                    return Err(Error::Parse(format!("rule refers to band {} of {k}", i + 1)));
                }
            }
            for f in &rule.factors {
                if let BaseFactor::X(bands) = f {
                    if bands.iter().any(|&i| i >= k) {
                        return Err(Error::Parse(format!("X(...) refers to a band beyond {k}")));
                    }
                }
            }
        }
        for bits in 0..1u32 << k {
            let x = ResolutionVector::from_bits(bits, k);
            let hits = self.rules.iter().filter(|r| r.matches(x)).count();
            if hits != 1 {
                return Err(Error::Parse(format!(
                    "resolution {:?} matches {hits} base rules in family {}",
                    (0..k).map(|i| x.get(i)).collect::<Vec<_>>(),
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Jones polynomial of the link in the expansion term `x`.
    pub fn base_case(&self, x: ResolutionVector, signs: &SignCase) -> Result<HalfLaurent> {
        let rule = self
            .rules
            .iter()
            .find(|r| r.matches(x))
            .ok_or_else(|| Error::Internal("no base rule".into()))?;
        let s = signs.signs();
        let mut acc = HalfLaurent::one();
        for f in &rule.factors {
            let v = match f {
                BaseFactor::X(bands) => {
                    let args: Vec<i8> = bands
                        .iter()
                        .map(|&i| {
                            if x.get(i) == 1 && self.parities[i] == Parity::Odd {
                                -s[i].value() as i8
                            } else {
                                0
                            }
                        })
                        .collect();
                    xn_jones(&args)
                }
                BaseFactor::Unknot => HalfLaurent::unlink_factor(),
                BaseFactor::Unknots(e) => {
                    let lookup = |name: &str| -> Option<Rational> {
                        let i: usize = name.strip_prefix('x')?.parse().ok()?;
                        (1..=self.band_count()).contains(&i).then(|| rat(x.get(i - 1) as i64))
                    };
                    let count = e.eval(&lookup)?;
                    let count = count
                        .to_integer()
                        .to_i64()
                        .filter(|c| *c >= 1 && count.is_integer())
                        .ok_or_else(|| {
                            Error::Internal(format!("unlink component count {count} in family {}", self.name))
                        })?;
                    HalfLaurent::unlink_factor().pow(count as u32 - 1)
                }
            };
            acc = acc.mul(&v);
        }
        Ok(acc)
    }
}

fn parse_rule(line: &str) -> Result<BaseRule> {
    let (lhs, rhs) = line
        .split_once(':')
        .ok_or_else(|| Error::Parse("base rule needs `conditions : factors`".into()))?;
    let conditions = lhs
        .split_whitespace()
        .map(|c| {
            let (var, val) = c
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad condition `{c}`")))?;
            let i: usize = var
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .filter(|&i| i >= 1)
                .ok_or_else(|| Error::Parse(format!("bad condition `{c}`")))?;
            let v = match val {
                "0" => 0,
                "1" => 1,
                _ => return Err(Error::Parse(format!("bad condition `{c}`"))),
            };
            Ok((i - 1, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let factors = split_top_level(rhs)
        .into_iter()
        .map(|tok| parse_factor(&tok))
        .collect::<Result<Vec<_>>>()?;
    Ok(BaseRule { conditions, factors })
}

/// Splits on whitespace outside parentheses.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_factor(tok: &str) -> Result<BaseFactor> {
    if tok == "U" {
        return Ok(BaseFactor::Unknot);
    }
    let inner = |prefix: &str| {
        tok.strip_prefix(prefix)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
    };
    if let Some(args) = inner("X") {
        let bands = args
            .split(',')
            .map(str::trim)
            .filter(|a| !a.is_empty())
            .map(|a| {
                a.parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1)
                    .map(|i| i - 1)
                    .ok_or_else(|| Error::Parse(format!("bad band `{a}` in `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(BaseFactor::X(bands));
    }
    if let Some(e) = inner("unknots") {
        return Ok(BaseFactor::Unknots(Expr::parse(e)?));
    }
    Err(Error::Parse(format!("unknown base factor `{tok}`")))
}

/// Built-in family by name: `7_6`, `10_58` or `8_12`.
pub fn builtin(name: &str) -> Result<Arc<FamilyDef>> {
    static CACHE: OnceLock<HashMap<&'static str, Arc<FamilyDef>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let sources = [
            ("7_6", include_str!("../../data/families/7_6.family")),
            ("10_58", include_str!("../../data/families/10_58.family")),
            ("8_12", include_str!("../../data/families/8_12.family")),
        ];
        sources
            .into_iter()
            .map(|(n, src)| (n, Arc::new(FamilyDef::parse(src).expect("built-in family file parses"))))
            .collect()
    });
    cache
        .get(name)
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("unknown family `{name}` (expected 7_6, 10_58 or 8_12)")))
}
