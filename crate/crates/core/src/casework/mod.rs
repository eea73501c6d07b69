//! Exhaustive casework: every sign case of a family swept over a box of
//! twist counts, the registered per-case formulas checked symbolically,
//! and the surviving instances matched against the exception patterns.

mod exceptions;
mod registry;
mod sweep;

use num_bigint::BigInt;

use crate::algebra::{determinant, HalfLaurent, Rational};
use crate::error::Result;
use crate::family::{CaseEngine, FamilySpec, SignCase, TwistVector};
use crate::obstruction::{
    cosmetic_gate, finite_type, fourth_derivative_gate, h_coeffs, h_coeffs_from_derivs, ito_residual,
    ObstructionVerdict,
};
use crate::seifert::{alexander_poly, conway_poly, ConwaySeries, SeifertTemplate};

pub use exceptions::{classify_exceptions, ExceptionPattern, ExceptionRecord};
pub use registry::{
    verify_family, verify_paper_case, CaseBlock, CheckStatus, FormulaCheck, Quantity, Registry, Statement,
};
pub use sweep::{render_text, sweep, sweep_case, CaseReport, PropertyCount, SweepConfig, PROPERTIES};

/// Everything needed to evaluate instances of one sign case.
#[derive(Debug)]
pub struct CaseContext {
    pub engine: CaseEngine,
    pub mirror: CaseEngine,
    pub seifert: SeifertTemplate,
}

impl CaseContext {
    pub fn new(spec: FamilySpec) -> Result<Self> {
        let seifert = SeifertTemplate::for_spec(&spec)?;
        let mirror = CaseEngine::new(spec.mirror())?;
        Ok(CaseContext {
            engine: CaseEngine::new(spec)?,
            mirror,
            seifert,
        })
    }

    pub fn builtin(family: &str, signs: &SignCase) -> Result<Self> {
        Self::new(FamilySpec::builtin(family, &signs.to_string())?)
    }

    pub fn spec(&self) -> &FamilySpec {
        self.engine.spec()
    }

    /// All invariants and the verdict for one instance.
    pub fn evaluate(&self, n: &TwistVector, use_root5: bool) -> Result<Instance> {
        let jones = self.engine.jones(n)?;
        let derivs = self.engine.derivs(n.counts(), &jones, 4)?;
        let conway = conway_poly(&self.seifert, n)?;
        let alexander = alexander_poly(&self.seifert, n)?;
        let lead = Rational::from_integer(determinant(&self.seifert.instantiate(n)?));
        let verdict = cosmetic_gate(
            format!("{} {} {}", self.spec().name(), self.spec().signs(), n),
            &jones,
            &derivs,
            &conway,
            &lead,
            use_root5,
        )?;
        Ok(Instance {
            twists: n.clone(),
            jones,
            derivs,
            conway,
            alexander,
            verdict,
        })
    }

    /// Outcome of each property in [`PROPERTIES`] order; `None` where a
    /// property does not apply to the instance.
    pub fn properties(&self, inst: &Instance) -> Result<Vec<Option<bool>>> {
        let n = inst.twists.counts();
        let d = &inst.derivs;
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        let a2 = inst.conway.a_rational(1);
        let delta_one = inst.alexander.eval_at_one();
        let skein = (0..n.len()).all(|i| self.engine.skein_holds(n, i, &inst.jones));
        let mirror = self.mirror.jones_raw(n) == inst.jones.mirror();

        let (ito, j4_routes) = if inst.conway.is_trivial() {
            let j4 = h_coeffs(&inst.jones, 4).get(4);
            let ft = finite_type(&a2, &inst.conway.a_rational(2), &inst.conway.a_rational(3), &j4);
            let gate = fourth_derivative_gate(&inst.jones, &inst.conway)?;
            let from_derivs = h_coeffs_from_derivs(d).get(4);
            (
                Some(ito_residual(2, 1, &ft) == j4),
                Some(gate.j4 == from_derivs && gate.j4 == j4),
            )
        } else {
            (None, None)
        };

        Ok(vec![
            Some(d[0] == one),
            Some(d[1] == zero),
            Some(delta_one == BigInt::from(1) || delta_one == BigInt::from(-1)),
            Some(inst.conway.a(0) == BigInt::from(1)),
            Some(d[2] == Rational::from_integer((-6).into()) * &a2),
            Some(mirror),
            Some(skein),
            ito,
            j4_routes,
        ])
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub twists: TwistVector,
    pub jones: HalfLaurent,
    pub derivs: Vec<Rational>,
    pub conway: ConwaySeries<BigInt>,
    pub alexander: HalfLaurent,
    pub verdict: ObstructionVerdict,
}
