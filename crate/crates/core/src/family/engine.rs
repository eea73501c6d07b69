//! Assembly of `V = sum_x (prod_i c^{s_i}(t, n_i, x_i)) V_x` and of its
//! derivatives at `t = 1`.
//!
//! The `2^k` base polynomials are contracted one band at a time, so an
//! instance costs `2^k - 1` polynomial products rather than `k 2^k`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{prefactor, prefactor_deriv_poly, prefactor_derivs, FamilySpec, ResolutionVector, TwistVector};
use crate::algebra::{taylor::Taylor, HalfLaurent, MultiPoly, Rational};
use crate::error::{Error, Result};

/// Highest derivative order carried through the engine.
pub const KMAX: usize = 4;

/// `16 f^(k)(1)` for `k = 0..=4`. Every derivative of a Laurent polynomial
/// in `t^(1/2)` up to order 4 at `t = 1` lies in `Z/16`, so these are
/// integers and the Leibniz rule stays in integer arithmetic.
#[derive(Clone, Debug, PartialEq)]
struct Scaled([BigInt; KMAX + 1]);

const SCALE: i64 = 16;
const BINOM: [[i64; KMAX + 1]; KMAX + 1] = [
    [1, 0, 0, 0, 0],
    [1, 1, 0, 0, 0],
    [1, 2, 1, 0, 0],
    [1, 3, 3, 1, 0],
    [1, 4, 6, 4, 1],
];

impl Scaled {
    fn from_rationals(d: &[Rational]) -> Scaled {
        Scaled(std::array::from_fn(|k| {
            let v = &d[k] * Rational::from_integer(SCALE.into());
            debug_assert!(v.is_integer());
            v.to_integer()
        }))
    }

    fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|v| Rational::new(v.clone(), SCALE.into())).collect()
    }

    fn mul_add(&self, a: &Scaled, other: &Scaled, b: &Scaled) -> Scaled {
        Scaled(std::array::from_fn(|k| {
            let mut acc = BigInt::zero();
            for (j, &c) in BINOM[k].iter().enumerate().take(k + 1) {
                acc += c * (&self.0[j] * &a.0[k - j] + &other.0[j] * &b.0[k - j]);
            }
            debug_assert!((&acc % SCALE).is_zero());
            acc / SCALE
        }))
    }
}

/// Scaled prefactor derivatives, cached for small `n`.
fn prefactor_scaled(s: super::Sign, x: u8, n: u32) -> Scaled {
    const CACHED: u32 = 64;
    static CACHE: OnceLock<Vec<Scaled>> = OnceLock::new();
    let idx = |s: super::Sign, x: u8, n: u32| {
        (((s == super::Sign::Minus) as usize * 2 + x as usize) * CACHED as usize) + n as usize
    };
    if n >= CACHED {
        return Scaled::from_rationals(&prefactor_derivs(s, x, n, KMAX));
    }
    let cache = CACHE.get_or_init(|| {
        let mut v = Vec::with_capacity(4 * CACHED as usize);
        for s in [super::Sign::Plus, super::Sign::Minus] {
            for x in [0, 1] {
                for n in 0..CACHED {
                    v.push(Scaled::from_rationals(&prefactor_derivs(s, x, n, KMAX)));
                }
            }
        }
        v
    });
    cache[idx(s, x, n)].clone()
}

/// Precomputed base cases for one family and sign case.
#[derive(Debug)]
pub struct CaseEngine {
    spec: FamilySpec,
    base: Vec<HalfLaurent>,
    base_taylor: Vec<Taylor<Rational>>,
    base_scaled: Vec<Scaled>,
    symbolic: OnceLock<Vec<MultiPoly>>,
}

impl CaseEngine {
    pub fn new(spec: FamilySpec) -> Result<Self> {
        let k = spec.band_count();
        let base = (0..1u32 << k)
            .map(|bits| spec.def().base_case(ResolutionVector::from_bits(bits, k), spec.signs()))
            .collect::<Result<Vec<_>>>()?;
        let base_taylor = base
            .iter()
            .map(|b| Taylor::from_derivs(b.derivs_at_one(KMAX)))
            .collect();
        let base_scaled = base
            .iter()
            .map(|b| Scaled::from_rationals(&b.derivs_at_one(KMAX)))
            .collect();
        Ok(CaseEngine {
            spec,
            base,
            base_taylor,
            base_scaled,
            symbolic: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn base_cases(&self) -> &[HalfLaurent] {
        &self.base
    }

    fn sign(&self, i: usize) -> super::Sign {
        self.spec.signs().signs()[i]
    }

    /// Contracts bands `from..k` (highest first) out of `table`.
    fn contract_from(&self, mut table: Vec<HalfLaurent>, n: &[u32], from: usize) -> Vec<HalfLaurent> {
        let k = self.spec.band_count();
        for i in (from..k).rev() {
            let half = table.len() / 2;
            let c0 = prefactor(self.sign(i), 0, n[i]);
            let shift = 4 * self.sign(i).value() * n[i] as i64;
            let (lo, hi) = table.split_at(half);
            table = lo
                .iter()
                .zip(hi)
                .map(|(t0, t1)| c0.mul(t0).add(&t1.shift(shift)))
                .collect();
        }
        table
    }

    /// Jones polynomial; twist counts may be 0 here.
    pub fn jones_raw(&self, n: &[u32]) -> HalfLaurent {
        self.contract_from(self.base.clone(), n, 0)
            .pop()
            .expect("nonempty table")
    }

    pub fn jones(&self, n: &TwistVector) -> Result<HalfLaurent> {
        self.spec.check_twists(n)?;
        Ok(self.jones_raw(n.counts()))
    }

    /// `(Q, P_0)` for band `i`: the instance's Jones polynomial is
    /// `c(s_i, 0, n_i) Q + c(s_i, 1, n_i) P_0`.
    pub fn band_split(&self, n: &[u32], i: usize) -> (HalfLaurent, HalfLaurent) {
        let k = self.spec.band_count();
        // move band i to the top bit, contract the rest, read off both halves
        let perm: Vec<HalfLaurent> = (0..1u32 << k)
            .map(|b| {
                let low = b & ((1 << i) - 1);
                let mid = (b >> i) & ((1 << (k - 1 - i)) - 1);
                let top = b >> (k - 1);
                self.base[(low | top << i | mid << (i + 1)) as usize].clone()
            })
            .collect();
        let others: Vec<u32> = (0..k).filter(|&j| j != i).map(|j| n[j]).collect();
        let half = perm.len() / 2;
        let contract_half = |part: Vec<HalfLaurent>| {
            let mut table = part;
            for (pos, j) in (0..k)
                .filter(|&j| j != i)
                .enumerate()
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
            {
                let h = table.len() / 2;
                let c0 = prefactor(self.sign(j), 0, others[pos]);
                let shift = 4 * self.sign(j).value() * others[pos] as i64;
                let (lo, hi) = table.split_at(h);
                table = lo
                    .iter()
                    .zip(hi)
                    .map(|(t0, t1)| c0.mul(t0).add(&t1.shift(shift)))
                    .collect();
            }
            table.pop().expect("nonempty")
        };
        let q = contract_half(perm[..half].to_vec());
        let p0 = contract_half(perm[half..].to_vec());
        (q, p0)
    }

    /// Checks `P_n = t^(2s) P_{n-1} + s t^s (t^(1/2) - t^(-1/2)) Q` for band
    /// `i` at the instance `n` (`n_i >= 1`).
    pub fn skein_holds(&self, n: &[u32], i: usize, v_n: &HalfLaurent) -> bool {
        let s = self.sign(i).value();
        let mut prev = n.to_vec();
        prev[i] -= 1;
        let v_prev = self.jones_raw(&prev);
        let (q, _) = self.band_split(n, i);
        let rhs = v_prev
            .shift(4 * s)
            .add(&q.mul(&HalfLaurent::z()).shift(2 * s).scale(&s.into()));
        *v_n == rhs
    }

    /// `V^(k)(1)` for `k = 0..=kmax` by the Leibniz rule over the expansion.
    pub fn derivs_leibniz(&self, n: &[u32], kmax: usize) -> Vec<Rational> {
        let k = self.spec.band_count();
        let mut table: Vec<Scaled> = self.base_scaled.clone();
        for i in (0..k).rev() {
            let c0 = prefactor_scaled(self.sign(i), 0, n[i]);
            let c1 = prefactor_scaled(self.sign(i), 1, n[i]);
            let half = table.len() / 2;
            let (lo, hi) = table.split_at(half);
            table = lo.iter().zip(hi).map(|(t0, t1)| c0.mul_add(t0, &c1, t1)).collect();
        }
        let mut d = table.pop().expect("nonempty").to_rationals();
        d.truncate(kmax + 1);
        d
    }

    /// `V^(k)(1)` two ways; errors if they disagree.
    pub fn derivs(&self, n: &[u32], v: &HalfLaurent, kmax: usize) -> Result<Vec<Rational>> {
        let kmax = kmax.min(KMAX);
        let direct = v.derivs_at_one(kmax);
        let leibniz = self.derivs_leibniz(n, kmax);
        if direct != leibniz {
            return Err(Error::Internal(format!(
                "derivative routes disagree for {} {} at {n:?}: {direct:?} vs {leibniz:?}",
                self.spec.name(),
                self.spec.signs()
            )));
        }
        Ok(direct)
    }

    /// `V^(k)(1)`, `k = 0..=4`, as polynomials in the twist parameters
    /// (variable `i` is the twist count of band `i + 1`).
    pub fn symbolic_derivs(&self) -> &[MultiPoly] {
        self.symbolic.get_or_init(|| {
            let k = self.spec.band_count();
            let mut table: Vec<Taylor<MultiPoly>> = self
                .base_taylor
                .iter()
                .map(|t| Taylor::from_derivs(t.derivs().into_iter().map(MultiPoly::constant).collect()))
                .collect();
            for i in (0..k).rev() {
                let poly_taylor = |x: u8| {
                    Taylor::from_derivs(
                        (0..=KMAX)
                            .map(|d| prefactor_deriv_poly(self.sign(i), x, d).substitute(0, &MultiPoly::var(i)))
                            .collect(),
                    )
                };
                let (c0, c1) = (poly_taylor(0), poly_taylor(1));
                let half = table.len() / 2;
                let (lo, hi) = table.split_at(half);
                table = lo.iter().zip(hi).map(|(t0, t1)| c0.mul(t0).add(&c1.mul(t1))).collect();
            }
            table.pop().expect("nonempty").derivs()
        })
    }
}

/// Jones polynomial of one instance.
pub fn assemble_jones(spec: &FamilySpec, n: &TwistVector) -> Result<HalfLaurent> {
    CaseEngine::new(spec.clone())?.jones(n)
}

/// As [`assemble_jones`] but allowing zero twist counts.
pub fn assemble_raw(spec: &FamilySpec, n: &[u32]) -> Result<HalfLaurent> {
    if n.len() != spec.band_count() {
        return Err(Error::Invalid("twist vector length does not match the family".into()));
    }
    Ok(CaseEngine::new(spec.clone())?.jones_raw(n))
}

/// `(Q, P_0)` for band `i`, see [`CaseEngine::band_split`].
pub fn band_split(spec: &FamilySpec, n: &TwistVector, i: usize) -> Result<(HalfLaurent, HalfLaurent)> {
    spec.check_twists(n)?;
    Ok(CaseEngine::new(spec.clone())?.band_split(n.counts(), i))
}

/// Skein recursion check for every band of one instance.
pub fn skein_holds(spec: &FamilySpec, n: &TwistVector) -> Result<bool> {
    let engine = CaseEngine::new(spec.clone())?;
    let v = engine.jones(n)?;
    Ok((0..spec.band_count()).all(|i| engine.skein_holds(n.counts(), i, &v)))
}

/// `V^(k)(1)` for `k = 0..=kmax`, cross-checked by two routes.
pub fn jones_derivs(spec: &FamilySpec, n: &TwistVector, kmax: usize) -> Result<Vec<Rational>> {
    let engine = CaseEngine::new(spec.clone())?;
    let v = engine.jones(n)?;
    engine.derivs(n.counts(), &v, kmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{expr::Expr, rat, VarNames};

    fn spec(f: &str, s: &str) -> FamilySpec {
        FamilySpec::builtin(f, s).unwrap()
    }

    fn tv(s: &str) -> TwistVector {
        s.parse().unwrap()
    }

    #[test]
    fn unknot_exception_instances() {
        let e = CaseEngine::new(spec("7_6", "++-+-")).unwrap();
        for n in ["1,2,1,1,1", "1,3,1,2,2", "1,2,1,4,1"] {
            assert_eq!(e.jones(&tv(n)).unwrap(), HalfLaurent::one(), "{n}");
        }
    }

    #[test]
    fn derivative_routes_agree() {
        let e = CaseEngine::new(spec("7_6", "++-++")).unwrap();
        let n = [1, 1, 1, 1, 1];
        let v = e.jones_raw(&n);
        let d = e.derivs(&n, &v, 4).unwrap();
        assert_eq!(d[0], rat(1));
        assert_eq!(d[1], rat(0));
        assert_eq!(d[2], rat(-6));
    }

    #[test]
    fn symbolic_second_derivative() {
        let names = VarNames::letters(5);
        let e = CaseEngine::new(spec("7_6", "++-++")).unwrap();
        let want = Expr::parse("-6(ab - c(a+b+d-1) + d(b+e))")
            .unwrap()
            .to_poly(&names)
            .unwrap();
        assert_eq!(e.symbolic_derivs()[2], want);
        assert!(e.symbolic_derivs()[1].is_zero());
        let e = CaseEngine::new(spec("7_6", "+--++")).unwrap();
        let want = Expr::parse("6(-bc + a(b+c-1) + d(b+c-e-1))")
            .unwrap()
            .to_poly(&names)
            .unwrap();
        assert_eq!(e.symbolic_derivs()[2], want);
    }

    #[test]
    fn zero_fifth_band_gives_8_12() {
        for signs in ["++++", "+-+-", "--+-"] {
            let a = spec("8_12", signs);
            let b = spec("10_58", &format!("{signs}+"));
            for n in [[1, 1, 1, 1], [2, 1, 3, 1], [1, 2, 2, 3]] {
                let mut n5 = n.to_vec();
                n5.push(0);
                assert_eq!(assemble_raw(&a, &n).unwrap(), assemble_raw(&b, &n5).unwrap());
            }
        }
    }

    #[test]
    fn skein_and_split() {
        let s = spec("10_58", "++-+-");
        assert!(skein_holds(&s, &tv("2,1,3,1,2")).unwrap());
        let n = tv("2,1,3,1,2");
        let v = assemble_jones(&s, &n).unwrap();
        for i in 0..5 {
            let (q, p0) = band_split(&s, &n, i).unwrap();
            let sign = s.signs().signs()[i];
            let rebuilt = prefactor(sign, 0, n.counts()[i])
                .mul(&q)
                .add(&prefactor(sign, 1, n.counts()[i]).mul(&p0));
            assert_eq!(rebuilt, v);
        }
    }
}
