//! Sweeps over twist boxes and the per-case reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::registry::{verify_paper_case, CheckStatus, FormulaCheck, Registry};
use super::CaseContext;
use crate::error::{Error, Result};
use crate::family::{SignCase, TwistVector};
use crate::obstruction::{Classification, Gate};
use crate::oracle::{crosscheck, DiagramTemplate};

/// Names of the per-instance properties, in the order
/// [`CaseContext::properties`] reports them.
pub const PROPERTIES: [&str; 9] = [
    "jones_at_one",
    "jones_first_derivative",
    "alexander_at_one",
    "conway_constant_term",
    "d2_is_minus_six_a2",
    "mirror",
    "skein_every_band",
    "ito_residual_is_j4",
    "j4_routes_agree",
];

const MAX_FAILURES_KEPT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub family: String,
    /// Each twist count runs over `1..=range`.
    pub range: u32,
    pub use_root5: bool,
    /// Oracle spot checks per case, taken in box order among instances
    /// whose diagram fits the budget.
    pub oracle_samples: usize,
    pub oracle_budget: usize,
}

impl SweepConfig {
    pub fn new(family: &str, range: u32) -> Self {
        SweepConfig {
            family: family.to_string(),
            range,
            use_root5: false,
            oracle_samples: 2,
            oracle_budget: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCount {
    pub checked: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub family: String,
    pub case: String,
    pub range: u32,
    pub instances: u64,
    /// First excluding gate, by gate name.
    pub histogram: BTreeMap<String, u64>,
    pub exceptions: Vec<String>,
    pub properties: BTreeMap<String, PropertyCount>,
    /// A few failing `(property, instance)` pairs, for diagnosis.
    pub property_failures: Vec<String>,
    pub oracle: PropertyCount,
    pub formulas: Vec<FormulaCheck>,
}

impl CaseReport {
    pub fn excluded_by(&self, gate: Gate) -> u64 {
        self.histogram.get(gate.name()).copied().unwrap_or(0)
    }

    pub fn properties_hold(&self) -> bool {
        self.properties.values().all(|p| p.failed == 0)
    }

    pub fn formulas_pass(&self) -> bool {
        self.formulas.iter().all(|f| f.status.is_ok())
    }

    /// Histogram total plus exceptions equals the instance count.
    pub fn is_consistent(&self) -> bool {
        self.histogram.values().sum::<u64>() + self.exceptions.len() as u64 == self.instances
    }
}

/// One report per sign case, in canonical case order.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<CaseReport>> {
    if cfg.range < 1 {
        return Err(Error::Invalid("sweep range must be at least 1".into()));
    }
    let k = crate::family::builtin(&cfg.family)?.band_count();
    SignCase::all(k).iter().map(|case| sweep_case(cfg, case)).collect()
}

pub fn sweep_case(cfg: &SweepConfig, case: &SignCase) -> Result<CaseReport> {
    let ctx = CaseContext::builtin(&cfg.family, case)?;
    let k = ctx.spec().band_count();
    let box_points: Vec<TwistVector> = TwistVector::box_iter(k, cfg.range).collect();

    let results = box_points
        .par_iter()
        .map(|n| {
            let inst = ctx.evaluate(n, cfg.use_root5)?;
            let props = ctx.properties(&inst)?;
            Ok((inst.verdict.classification, props))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut histogram: BTreeMap<String, u64> = Gate::ALL.iter().map(|g| (g.name().to_string(), 0)).collect();
    let mut properties: BTreeMap<String, PropertyCount> = PROPERTIES
        .iter()
        .map(|p| (p.to_string(), PropertyCount::default()))
        .collect();
    let mut property_failures = Vec::new();
    let mut exceptions = Vec::new();
    for (n, (class, props)) in box_points.iter().zip(&results) {
        match class {
            Classification::Excluded(g) => *histogram.entry(g.name().to_string()).or_default() += 1,
            Classification::Exception => exceptions.push(n.to_string()),
        }
        for (name, outcome) in PROPERTIES.iter().zip(props) {
            if let Some(ok) = outcome {
                let p = properties.get_mut(*name).expect("known property");
                p.checked += 1;
                if !ok {
                    p.failed += 1;
                    if property_failures.len() < MAX_FAILURES_KEPT {
                        property_failures.push(format!("{name} at {n}"));
                    }
                }
            }
        }
    }

    let mut oracle = PropertyCount::default();
    if cfg.oracle_samples > 0 {
        let tpl = DiagramTemplate::builtin(&cfg.family)?;
        let bands = ctx.spec().bands();
        let crossings = |n: &TwistVector| -> usize {
            n.counts()
                .iter()
                .zip(&bands)
                .map(|(&t, b)| 2 * t as usize - b.parity.m() as usize)
                .sum()
        };
        for n in box_points
            .iter()
            .filter(|n| crossings(n) <= cfg.oracle_budget)
            .take(cfg.oracle_samples)
        {
            oracle.checked += 1;
            if !crosscheck(ctx.spec(), tpl, n, cfg.oracle_budget)? {
                oracle.failed += 1;
            }
        }
    }

    let formulas = match Registry::builtin(&cfg.family)?.block_for(case) {
        Some(_) => verify_paper_case(&cfg.family, case)?,
        None => Vec::new(),
    };

    Ok(CaseReport {
        family: cfg.family.clone(),
        case: case.to_string(),
        range: cfg.range,
        instances: box_points.len() as u64,
        histogram,
        exceptions,
        properties,
        property_failures,
        oracle,
        formulas,
    })
}

/// Human-readable table, one row per case, gates in order.
pub fn render_text(reports: &[CaseReport]) -> String {
    let mut out = String::new();
    let Some(first) = reports.first() else {
        return out;
    };
    let _ = writeln!(out, "family {}  twists 1..{} per band", first.family, first.range);
    let _ = write!(out, "{:<8} {:>9}", "case", "instances");
    for g in Gate::ALL {
        let _ = write!(out, " {:>17}", g.name());
    }
    let _ = writeln!(
        out,
        " {:>10} {:>10} {:>8} {:>8}",
        "exceptions", "properties", "oracle", "formulas"
    );
    for r in reports {
        let _ = write!(out, "{:<8} {:>9}", r.case, r.instances);
        for g in Gate::ALL {
            let _ = write!(out, " {:>17}", r.excluded_by(g));
        }
        let passed = r.formulas.iter().filter(|f| f.status.is_ok()).count();
        let _ = writeln!(
            out,
            " {:>10} {:>10} {:>8} {:>8}",
            r.exceptions.len(),
            if r.properties_hold() { "ok" } else { "FAIL" },
            format!("{}/{}", r.oracle.checked - r.oracle.failed, r.oracle.checked),
            format!("{}/{}", passed, r.formulas.len()),
        );
    }
    for r in reports {
        for f in r.formulas.iter().filter(|f| f.status != CheckStatus::Pass) {
            let tag = if f.status == CheckStatus::Erratum {
                "ERRATUM"
            } else {
                "FAIL"
            };
            let _ = writeln!(
                out,
                "{tag} {} {} line {}: {}  [{}]",
                r.family, r.case, f.line, f.statement, f.detail
            );
        }
        for p in &r.property_failures {
            let _ = writeln!(out, "PROPERTY FAIL {} {}: {}", r.family, r.case, p);
        }
    }
    out
}
