//! The band prefactors `c^s(t, n, x)`.
//!
//! `c^s(t, n, 1) = t^(2sn)` and
//! `c^s(t, n, 0) = (1 + t^(2s) + ... + t^(2s(n-1))) (s t^s) (t^(1/2) - t^(-1/2))`.

use std::sync::OnceLock;

use num_bigint::BigInt;

use super::Sign;
use crate::algebra::{rat, ratio, stirling2_table, HalfLaurent, MultiPoly, Rational};

/// `c^s(t, n, x)`. `n = 0` is allowed and gives 1 for `x = 1` and 0 for
/// `x = 0`.
pub fn prefactor(s: Sign, x: u8, n: u32) -> HalfLaurent {
    let sv = s.value();
    if x == 1 {
        return HalfLaurent::int_monomial(1, 4 * sv * n as i64);
    }
    // sum_j s (t^(2sj + s + 1/2) - t^(2sj + s - 1/2)), doubled exponents
    let terms = (0..n as i64).flat_map(|j| {
        let centre = 4 * sv * j + 2 * sv;
        [(centre + 1, BigInt::from(sv)), (centre - 1, BigInt::from(-sv))]
    });
    HalfLaurent::from_terms(terms)
}

/// Linear polynomial `a n + b` in the single variable `n`.
fn affine(a: Rational, b: Rational) -> MultiPoly {
    MultiPoly::var(0).scale(&a).add(&MultiPoly::constant(b))
}

/// Symbolic falling factorial `(a n + b)(a n + b - 1)...` with `k` factors.
fn falling_poly(a: &Rational, b: &Rational, k: usize) -> MultiPoly {
    (0..k).fold(MultiPoly::from_int(1), |acc, j| {
        acc.mul(&affine(a.clone(), b - rat(j as i64)))
    })
}

/// `d^k/dt^k c^s(t, n, x)` at `t = 1` as a polynomial in `n` (variable 0).
///
/// For `x = 0` the prefactor is a sum over `j < n` of two monomials; the
/// summand's derivative is a polynomial in `j`, which is summed in closed
/// form through `j^p = sum_m S(p, m) j^(m)` and
/// `sum_{j<n} j^(m) = n^(m+1) / (m + 1)` (falling powers).
pub fn prefactor_deriv_poly(s: Sign, x: u8, k: usize) -> MultiPoly {
    let sv = rat(s.value());
    if x == 1 {
        return falling_poly(&(&sv * rat(2)), &rat(0), k);
    }
    // exponents 2sj + s +- 1/2, as affine functions of j
    let slope = &sv * rat(2);
    let plus = falling_poly(&slope, &(&sv + ratio(1, 2)), k);
    let minus = falling_poly(&slope, &(&sv - ratio(1, 2)), k);
    let summand = plus.sub(&minus).scale(&sv);

    let stirling = stirling2_table(k + 1);
    let mut out = MultiPoly::zero();
    for (p, cp) in summand.coeffs_in(0).iter().enumerate() {
        let c = cp.constant_term();
        if c == rat(0) {
            continue;
        }
        for (m, sm) in stirling[p].iter().enumerate().take(p + 1) {
            if *sm == BigInt::from(0) {
                continue;
            }
            let falling_n = falling_poly(&rat(1), &rat(0), m + 1);
            let coeff = &c * Rational::from_integer(sm.clone()) / rat(m as i64 + 1);
            out = out.add(&falling_n.scale(&coeff));
        }
    }
    out
}

/// Cached `prefactor_deriv_poly` for `k <= 4`, indexed `[sign][x][k]`.
fn cached_polys() -> &'static [[Vec<MultiPoly>; 2]; 2] {
    static CACHE: OnceLock<[[Vec<MultiPoly>; 2]; 2]> = OnceLock::new();
    CACHE.get_or_init(|| {
        let row = |s, x| (0..=4).map(|k| prefactor_deriv_poly(s, x, k)).collect();
        [
            [row(Sign::Plus, 0), row(Sign::Plus, 1)],
            [row(Sign::Minus, 0), row(Sign::Minus, 1)],
        ]
    })
}

/// Numeric derivatives `c^(k)(1)` for `k = 0..=kmax` at a given `n`.
pub fn prefactor_derivs(s: Sign, x: u8, n: u32, kmax: usize) -> Vec<Rational> {
    let nv = [rat(n as i64)];
    let polys = &cached_polys()[(s == Sign::Minus) as usize][x as usize];
    (0..=kmax)
        .map(|k| {
            match polys.get(k) {
                Some(p) => p.eval(&nv),
                None => prefactor_deriv_poly(s, x, k).eval(&nv),
            }
            .expect("univariate")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{expr::Expr, VarNames};

    fn hl(s: &str) -> HalfLaurent {
        HalfLaurent::parse(s).unwrap()
    }

    fn npoly(s: &str) -> MultiPoly {
        Expr::parse(s).unwrap().to_poly(&VarNames::new(["n"])).unwrap()
    }

    #[test]
    fn prefactor_values() {
        assert_eq!(prefactor(Sign::Plus, 1, 3), hl("t^6"));
        assert_eq!(prefactor(Sign::Plus, 0, 1), hl("t^(3/2) - t^(1/2)"));
        assert_eq!(prefactor(Sign::Minus, 0, 1), hl("t^(-3/2) - t^(-1/2)"));
        assert_eq!(prefactor(Sign::Plus, 0, 0), HalfLaurent::zero());
        assert_eq!(prefactor(Sign::Minus, 1, 0), HalfLaurent::one());
    }

    #[test]
    fn geometric_sum_identity() {
        // (1 - t^(2n)) c(+,0,n) = (1 - t^2) t z  times the geometric sum's closed form
        for n in 1..6 {
            let lhs = HalfLaurent::one().sub(&hl("t^2")).mul(&prefactor(Sign::Plus, 0, n));
            let rhs = HalfLaurent::one()
                .sub(&prefactor(Sign::Plus, 1, n))
                .mul(&hl("t"))
                .mul(&HalfLaurent::z());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivative_polys_spot_values() {
        assert_eq!(prefactor_deriv_poly(Sign::Plus, 0, 1), npoly("n"));
        assert_eq!(prefactor_deriv_poly(Sign::Minus, 1, 2), npoly("2n(2n+1)"));
        assert_eq!(
            prefactor_deriv_poly(Sign::Plus, 0, 4),
            npoly("(n/2)(-3 + 38n - 48n^2 + 16n^3)")
        );
    }

    #[test]
    fn derivative_polys_match_direct_evaluation() {
        for s in [Sign::Plus, Sign::Minus] {
            for x in [0, 1] {
                for n in 0..7 {
                    let direct = prefactor(s, x, n).derivs_at_one(4);
                    assert_eq!(prefactor_derivs(s, x, n, 4), direct, "s={s:?} x={x} n={n}");
                }
            }
        }
    }
}
