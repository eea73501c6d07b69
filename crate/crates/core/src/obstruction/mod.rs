//! Surgery obstructions: the h-expansion of the Jones polynomial, the
//! finite-type invariants `v4`, `w4`, `v6`, the slope relation, and the
//! gates that exclude an instance.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{factorial, rat, ratio, stirling2_table, HalfLaurent, Rational};
use crate::error::{Error, Result};
use crate::seifert::ConwaySeries;

/// Coefficients `j_0..j_N` of `h^n` in `V(e^h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HExpansion {
    pub j: Vec<Rational>,
}

impl HExpansion {
    pub fn get(&self, n: usize) -> Rational {
        self.j.get(n).cloned().unwrap_or_else(Rational::zero)
    }
}

/// `V(e^h)` expanded term by term: `t^(e/2) = sum_n (e/2)^n h^n / n!`.
pub fn h_coeffs(v: &HalfLaurent, n_max: usize) -> HExpansion {
    let mut sums = vec![BigInt::zero(); n_max + 1];
    for (e, c) in v.terms() {
        let mut p = BigInt::from(1);
        for slot in sums.iter_mut() {
            *slot += c * &p;
            p *= e;
        }
    }
    let j = sums
        .into_iter()
        .enumerate()
        .map(|(n, s)| Rational::from_integer(s) / (factorial(n) * Rational::from_integer(BigInt::from(1) << n)))
        .collect();
    HExpansion { j }
}

/// Same expansion from derivatives at 1: `j_n = sum_k V^(k)(1) S(n,k) / n!`.
pub fn h_coeffs_from_derivs(derivs: &[Rational]) -> HExpansion {
    let n_max = derivs.len() - 1;
    let s = stirling2_table(n_max);
    let j = (0..=n_max)
        .map(|n| {
            let total: Rational = (0..=n)
                .map(|k| &derivs[k] * Rational::from_integer(s[n][k].clone()))
                .sum();
            total / factorial(n)
        })
        .collect();
    HExpansion { j }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteTypeInvariants {
    pub v4: Rational,
    pub w4: Rational,
    pub v6: Rational,
}

/// The three invariants in terms of Conway coefficients and `j_4`:
///
/// ```text
/// v4 = -a4/2 - a2/24 + a2^2/4
/// w4 = j4/96 + 3 a4/32 - 9 a2^2/2
/// v6 = -a6/2 - a4/12 - a2/720 + a2^2/24 + a2 a4/2 - a2^3/6
/// ```
pub fn finite_type(a2: &Rational, a4: &Rational, a6: &Rational, j4: &Rational) -> FiniteTypeInvariants {
    let a2sq = a2 * a2;
    let v4 = -a4 * ratio(1, 2) - a2 * ratio(1, 24) + &a2sq * ratio(1, 4);
    let w4 = j4 * ratio(1, 96) + a4 * ratio(3, 32) - &a2sq * ratio(9, 2);
    let v6 = -a6 * ratio(1, 2) - a4 * ratio(1, 12) - a2 * ratio(1, 720) + &a2sq * ratio(1, 24) + a2 * a4 * ratio(1, 2)
        - &a2sq * a2 * ratio(1, 6);
    FiniteTypeInvariants { v4, w4, v6 }
}

/// `p^2 (24 w4 - 5 v4) + 5 v4 + q^2 (210 v6 + 5 v4)`, which vanishes for a
/// knot with a pair of cosmetic surgeries of slope `+-p/q`.
pub fn ito_residual(p: i64, q: i64, ft: &FiniteTypeInvariants) -> Rational {
    let (p2, q2) = (rat(p * p), rat(q * q));
    let five_v4 = rat(5) * &ft.v4;
    p2 * (rat(24) * &ft.w4 - &five_v4) + &five_v4 + q2 * (rat(210) * &ft.v6 + &five_v4)
}

/// Outcome of the fourth-derivative test.
#[derive(Clone, Debug, PartialEq)]
pub struct FourthDerivative {
    /// Conway polynomial trivial, so the test applies at all.
    pub applicable: bool,
    pub j4: Rational,
    pub excludes: bool,
}

/// With trivial Conway polynomial a cosmetic surgery forces `j_4 = 0`.
/// `j_4` is computed from the series and from the derivatives
/// `(V'''' + 6V''' + 7V'' + V')/24`; the two must agree.
pub fn fourth_derivative_gate(v: &HalfLaurent, conway: &ConwaySeries<BigInt>) -> Result<FourthDerivative> {
    let series = h_coeffs(v, 4).get(4);
    let d = v.derivs_at_one(4);
    let from_derivs = (&d[4] + rat(6) * &d[3] + rat(7) * &d[2] + &d[1]) / rat(24);
    if series != from_derivs {
        return Err(Error::Internal(format!("j4 mismatch: {series} vs {from_derivs}")));
    }
    let applicable = conway.is_trivial();
    Ok(FourthDerivative {
        applicable,
        excludes: applicable && !series.is_zero(),
        j4: series,
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Root5Verdict {
    Excludes,
    Inconclusive,
}

/// Slopes `+-2` are incompatible with `V(zeta_5) != 1`.
pub fn root5_gate(v: &HalfLaurent) -> Result<Root5Verdict> {
    Ok(if v.eval_root5()?.is_one() {
        Root5Verdict::Inconclusive
    } else {
        Root5Verdict::Excludes
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gate {
    AlexanderLeading,
    Conway,
    D2,
    D3,
    D4,
    Root5,
}

impl Gate {
    pub const ALL: [Gate; 6] = [
        Gate::AlexanderLeading,
        Gate::Conway,
        Gate::D2,
        Gate::D3,
        Gate::D4,
        Gate::Root5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gate::AlexanderLeading => "alexander_leading",
            Gate::Conway => "conway",
            Gate::D2 => "d2",
            Gate::D3 => "d3",
            Gate::D4 => "d4",
            Gate::Root5 => "root5",
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    Excluded(Gate),
    Exception,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Excluded(g) => write!(f, "EXCLUDED({g})"),
            Classification::Exception => f.write_str("EXCEPTION"),
        }
    }
}

/// Every gate's result for one instance, plus the first excluding gate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionVerdict {
    pub instance: String,
    pub alexander_leading_nonzero: bool,
    pub conway_trivial: bool,
    pub d2_zero: bool,
    pub d3_zero: bool,
    /// `V''''(1) = 0`.
    pub d4_zero: bool,
    /// `j_4 = 0`, the quantity the fourth-derivative gate tests.
    pub j4_zero: bool,
    pub root5_excludes: Option<bool>,
    pub classification: Classification,
}

/// Applies the gates in order: leading Alexander coefficient, Conway
/// triviality, `V''(1)`, `V'''(1)`, `j_4` (that is `V''''(1)` once the
/// lower ones vanish), then optionally `V(zeta_5)`.
pub fn cosmetic_gate(
    instance: String,
    jones: &HalfLaurent,
    derivs: &[Rational],
    conway: &ConwaySeries<BigInt>,
    alex_leading: &Rational,
    use_root5: bool,
) -> Result<ObstructionVerdict> {
    if derivs.len() < 5 {
        return Err(Error::Invalid("need derivatives up to order 4".into()));
    }
    let fourth = fourth_derivative_gate(jones, conway)?;
    let root5 = if use_root5 {
        Some(root5_gate(jones)? == Root5Verdict::Excludes)
    } else {
        None
    };
    let alexander_leading_nonzero = !alex_leading.is_zero();
    let conway_trivial = conway.is_trivial();
    let d2_zero = derivs[2].is_zero();
    let d3_zero = derivs[3].is_zero();
    let order = [
        (Gate::AlexanderLeading, alexander_leading_nonzero),
        (Gate::Conway, !conway_trivial),
        (Gate::D2, !d2_zero),
        (Gate::D3, !d3_zero),
        (Gate::D4, fourth.excludes),
        (Gate::Root5, root5 == Some(true)),
    ];
    let classification = order
        .iter()
        .find(|(_, excl)| *excl)
        .map_or(Classification::Exception, |(g, _)| Classification::Excluded(*g));
    Ok(ObstructionVerdict {
        instance,
        alexander_leading_nonzero,
        conway_trivial,
        d2_zero,
        d3_zero,
        d4_zero: derivs[4].is_zero(),
        j4_zero: fourth.j4.is_zero(),
        root5_excludes: root5,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hl(s: &str) -> HalfLaurent {
        HalfLaurent::parse(s).unwrap()
    }

    fn trivial() -> ConwaySeries<BigInt> {
        ConwaySeries::from_symmetric(&HalfLaurent::one()).unwrap()
    }

    #[test]
    fn h_expansion_examples() {
        assert_eq!(
            h_coeffs(&HalfLaurent::one(), 6).j,
            vec![rat(1), rat(0), rat(0), rat(0), rat(0), rat(0), rat(0)]
        );
        assert_eq!(h_coeffs(&hl("t^2"), 6).get(4), ratio(2, 3));
        let j = h_coeffs(&hl("t"), 6);
        for n in 0..=6 {
            assert_eq!(j.get(n), rat(1) / factorial(n));
        }
    }

    #[test]
    fn h_expansion_routes_agree() {
        let v = hl("t + t^3 - t^4");
        assert_eq!(h_coeffs(&v, 6), h_coeffs_from_derivs(&v.derivs_at_one(6)));
    }

    #[test]
    fn finite_type_examples() {
        let z = rat(0);
        let ft = finite_type(&z, &z, &z, &rat(96));
        assert_eq!((ft.v4.clone(), ft.w4.clone(), ft.v6.clone()), (rat(0), rat(1), rat(0)));
        let ft = finite_type(&rat(1), &z, &z, &z);
        assert_eq!(ft.v4, ratio(5, 24));
        let zero = finite_type(&z, &z, &z, &z);
        assert_eq!(ito_residual(2, 1, &zero), rat(0));
    }

    #[test]
    fn ito_examples() {
        let j = ratio(7, 3);
        let ft = finite_type(&rat(0), &rat(0), &rat(0), &j);
        assert_eq!(ito_residual(2, 1, &ft), j);
        let ft = FiniteTypeInvariants {
            v4: rat(1),
            w4: rat(0),
            v6: rat(0),
        };
        assert_eq!(ito_residual(2, 1, &ft), rat(-10));
    }

    #[test]
    fn fourth_derivative_examples() {
        let g = fourth_derivative_gate(&HalfLaurent::one(), &trivial()).unwrap();
        assert!(g.applicable && !g.excludes);
        // V'' = V''' = 0 but V'''' != 0: 1 + 4(t-1)^4 / t^2 expanded
        let v = hl("4t^2 - 16t + 25 - 16t^(-1) + 4t^(-2)");
        let d = v.derivs_at_one(4);
        assert_eq!(
            (d[0].clone(), d[1].clone(), d[2].clone(), d[3].clone()),
            (rat(1), rat(0), rat(0), rat(0))
        );
        assert!(fourth_derivative_gate(&v, &trivial()).unwrap().excludes);
        let nontrivial = ConwaySeries::from_symmetric(&hl("t - 1 + t^(-1)")).unwrap();
        let g = fourth_derivative_gate(&v, &nontrivial).unwrap();
        assert!(!g.applicable && !g.excludes);
    }

    #[test]
    fn root5_examples() {
        assert_eq!(root5_gate(&HalfLaurent::one()).unwrap(), Root5Verdict::Inconclusive);
        assert_eq!(root5_gate(&hl("t^5")).unwrap(), Root5Verdict::Inconclusive);
        assert_eq!(root5_gate(&hl("t")).unwrap(), Root5Verdict::Excludes);
    }

    #[test]
    fn gate_order() {
        let v = HalfLaurent::one();
        let d = v.derivs_at_one(4);
        let verdict = cosmetic_gate("x".into(), &v, &d, &trivial(), &rat(0), true).unwrap();
        assert_eq!(verdict.classification, Classification::Exception);
        let verdict = cosmetic_gate("x".into(), &v, &d, &trivial(), &rat(3), true).unwrap();
        assert_eq!(verdict.classification, Classification::Excluded(Gate::AlexanderLeading));
        assert_eq!(verdict.classification.to_string(), "EXCLUDED(alexander_leading)");
    }
}
