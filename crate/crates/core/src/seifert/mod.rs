//! Parametric Seifert matrices, Alexander and Conway polynomials.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::{determinant, HalfLaurent, Laurent, MultiPoly, ParamLaurent, Rational, Ring};
use crate::error::{Error, Result};
use crate::family::{builtin, FamilyDef, FamilySpec, Parity, SignCase, TwistVector};

/// Seifert matrix with affine entries in the twist parameters `t_1..t_k`
/// (variable `i` is band `i + 1`), for one sign case.
#[derive(Clone, Debug, PartialEq)]
pub struct SeifertTemplate {
    pub family: String,
    pub signs: SignCase,
    pub matrix: Vec<Vec<MultiPoly>>,
}

impl SeifertTemplate {
    pub fn from_def(def: &FamilyDef, signs: &SignCase) -> Result<Self> {
        let rows = def
            .seifert()
            .ok_or_else(|| Error::Invalid(format!("family {} has no Seifert matrix", def.name())))?;
        if signs.len() != def.band_count() {
            return Err(Error::Invalid(format!(
                "sign case `{signs}` does not fit family {}",
                def.name()
            )));
        }
        // n_i -> formula(s_i, t_i); the formula lives in variables (s, t)
        let subs: Vec<MultiPoly> = signs
            .signs()
            .iter()
            .zip(def.parities())
            .enumerate()
            .map(|(i, (s, p))| {
                let f = if *p == Parity::Odd { &rows.odd } else { &rows.even };
                f.substitute(0, &MultiPoly::from_int(s.value()))
                    .substitute(1, &MultiPoly::var(i))
            })
            .collect();
        let matrix = rows
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        // all substitutions at once: variable i of `e` is n_i
                        let mut out = MultiPoly::zero();
                        for (m, c) in e.terms() {
                            let mut term = MultiPoly::constant(c.clone());
                            for (i, &p) in m.exps().iter().enumerate() {
                                term = term.mul(&subs[i].pow(p));
                            }
                            out = out.add(&term);
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        Ok(SeifertTemplate {
            family: def.name().to_string(),
            signs: signs.clone(),
            matrix,
        })
    }

    pub fn for_spec(spec: &FamilySpec) -> Result<Self> {
        Self::from_def(spec.def(), spec.signs())
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    pub fn is_affine(&self) -> bool {
        self.matrix.iter().flatten().all(MultiPoly::is_affine)
    }

    /// Integer Seifert matrix of one instance.
    pub fn instantiate(&self, n: &TwistVector) -> Result<Vec<Vec<BigInt>>> {
        let point: Vec<Rational> = n.counts().iter().map(|&v| Rational::from_integer(v.into())).collect();
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        let v = e.eval(&point)?;
                        if !v.is_integer() {
                            return Err(Error::Internal(format!("non-integral Seifert entry {v}")));
                        }
                        Ok(v.to_integer())
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn template_7_6(signs: &SignCase) -> Result<SeifertTemplate> {
    SeifertTemplate::from_def(&*builtin("7_6")?, signs)
}

pub fn template_10_58(signs: &SignCase) -> Result<SeifertTemplate> {
    SeifertTemplate::from_def(&*builtin("10_58")?, signs)
}

pub fn template_8_12(signs: &SignCase) -> Result<SeifertTemplate> {
    SeifertTemplate::from_def(&*builtin("8_12")?, signs)
}

/// `det(a S + b S^T)` over Laurent polynomials with coefficients in `C`.
fn pencil_det<C: Ring>(s: &[Vec<C>], a: &Laurent<C>, b: &Laurent<C>) -> Laurent<C> {
    let n = s.len();
    let m: Vec<Vec<Laurent<C>>> = (0..n)
        .map(|i| (0..n).map(|j| a.scale(&s[i][j]).add(&b.scale(&s[j][i]))).collect())
        .collect();
    determinant(&m)
}

/// `Delta(t) = det(S - t S^T)`; fails unless `Delta(1) = +-1`.
pub fn alexander_poly(tpl: &SeifertTemplate, n: &TwistVector) -> Result<HalfLaurent> {
    let s = tpl.instantiate(n)?;
    let delta = pencil_det(&s, &HalfLaurent::one(), &HalfLaurent::int_monomial(-1, 2));
    let at_one = delta.eval_at_one();
    if at_one.abs() != BigInt::from(1) {
        return Err(Error::Internal(format!(
            "Alexander polynomial of {} {} at {n} has Delta(1) = {at_one}",
            tpl.family, tpl.signs
        )));
    }
    Ok(delta)
}

/// Conway polynomial as coefficients of `z^0, z^2, z^4, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConwaySeries<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> ConwaySeries<C> {
    /// Coefficient of `z^(2i)`.
    pub fn a(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// True when the polynomial is the constant 1.
    pub fn is_trivial(&self) -> bool {
        self.a(0) == C::one() && self.coeffs.iter().skip(1).all(Ring::is_zero)
    }

    /// Rewrites a symmetric Laurent polynomial in `z = t^(1/2) - t^(-1/2)`
    /// by peeling off the top power; the remainder must vanish.
    pub fn from_symmetric(p: &Laurent<C>) -> Result<Self> {
        let mut rest = p.clone();
        let mut coeffs: Vec<C> = Vec::new();
        while let Some((lo, hi)) = rest.span() {
            if hi < 0 || hi % 2 != 0 || lo != -hi {
                return Err(Error::Internal(format!(
                    "Conway rewrite left a non-symmetric remainder (span {lo}..{hi})"
                )));
            }
            let j = (hi / 2) as usize;
            let c = rest.coeff(hi);
            let z2j = Laurent::<C>::from_terms([(1, C::one()), (-1, C::one().neg_ref())]).pow(2 * j as u32);
            rest = rest.sub(&z2j.scale(&c));
            if coeffs.len() <= j {
                coeffs.resize(j + 1, C::zero());
            }
            coeffs[j] = c;
        }
        Ok(ConwaySeries { coeffs })
    }
}

impl ConwaySeries<BigInt> {
    pub fn a_rational(&self, i: usize) -> Rational {
        Rational::from_integer(self.a(i))
    }
}

/// `det(t^(1/2) S - t^(-1/2) S^T)` rewritten in `z`.
pub fn conway_poly(tpl: &SeifertTemplate, n: &TwistVector) -> Result<ConwaySeries<BigInt>> {
    let s = tpl.instantiate(n)?;
    let p = pencil_det(&s, &HalfLaurent::int_monomial(1, 1), &HalfLaurent::int_monomial(-1, -1));
    ConwaySeries::from_symmetric(&p)
}

/// Conway coefficients as polynomials in the twist parameters.
pub fn conway_symbolic(tpl: &SeifertTemplate) -> Result<ConwaySeries<MultiPoly>> {
    let one = MultiPoly::from_int(1);
    let a = ParamLaurent::monomial(one.clone(), 1);
    let b = ParamLaurent::monomial(one.neg(), -1);
    ConwaySeries::from_symmetric(&pencil_det(&tpl.matrix, &a, &b))
}

/// `det(S)`: the top coefficient of `det(t^(1/2) S - t^(-1/2) S^T)` and,
/// for genus 2, the Conway coefficient `a_4`.
pub fn leading_coeff_symbolic(tpl: &SeifertTemplate) -> MultiPoly {
    determinant(&tpl.matrix)
}

/// The coefficient of `t^(g-1)` in the symmetrized Alexander polynomial,
/// `a_2 - 4 a_4` for genus 2, as a polynomial in the parameters.
pub fn second_coeff_symbolic(tpl: &SeifertTemplate) -> Result<MultiPoly> {
    let c = conway_symbolic(tpl)?;
    Ok(c.a(1).sub(&c.a(2).scale(&Rational::from_integer(4.into()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{expr::Expr, VarNames};

    fn poly(s: &str) -> MultiPoly {
        Expr::parse(s).unwrap().to_poly(&VarNames::letters(5)).unwrap()
    }

    fn sc(s: &str) -> SignCase {
        s.parse().unwrap()
    }

    #[test]
    fn seven_six_entries() {
        let t = template_7_6(&sc("+++++")).unwrap();
        assert_eq!(t.matrix[0][0], poly("-a - b + 1"));
        assert_eq!(t.matrix[1][0], poly("-a + 1"));
        assert_eq!(t.matrix[2][3], poly("1"));
        assert!(t.is_affine());
        for s in SignCase::all(5) {
            assert_eq!(template_7_6(&s).unwrap().matrix[2][3], poly("1"));
        }
    }

    #[test]
    fn ten_fifty_eight_and_eight_twelve_entries() {
        let t = template_10_58(&sc("+++++")).unwrap();
        assert_eq!(t.matrix[0][1], poly("a"));
        assert_eq!(t.matrix[2][3], poly("0"));
        let t = template_8_12(&sc("++++")).unwrap();
        assert_eq!(t.matrix[0][0], poly("-a"));
    }

    #[test]
    fn leading_coefficients() {
        let t = template_7_6(&sc("+++++")).unwrap();
        assert_eq!(leading_coeff_symbolic(&t), poly("((b-1)(c-1) + a(b+c-1))de"));
        let t = template_10_58(&sc("+++++")).unwrap();
        assert_eq!(leading_coeff_symbolic(&t), poly("bc(ad + (d + a)e)"));
        let t = template_8_12(&sc("++++")).unwrap();
        assert_eq!(leading_coeff_symbolic(&t), poly("abcd"));
    }

    #[test]
    fn unknot_instance_has_trivial_polynomials() {
        let t = template_7_6(&sc("++-+-")).unwrap();
        let n: TwistVector = "1,2,1,1,1".parse().unwrap();
        let d = alexander_poly(&t, &n).unwrap();
        assert_eq!(d.terms().count(), 1);
        assert!(conway_poly(&t, &n).unwrap().is_trivial());
    }

    #[test]
    fn conway_matches_symbolic() {
        let t = template_10_58(&sc("++-+-")).unwrap();
        let sym = conway_symbolic(&t).unwrap();
        for n in ["1,1,1,1,1", "2,3,1,4,2"] {
            let n: TwistVector = n.parse().unwrap();
            let c = conway_poly(&t, &n).unwrap();
            let point: Vec<Rational> = n.counts().iter().map(|&v| Rational::from_integer(v.into())).collect();
            for i in 0..3 {
                assert_eq!(sym.a(i).eval(&point).unwrap(), c.a_rational(i));
            }
            assert_eq!(c.a(0), BigInt::from(1));
        }
    }
}
