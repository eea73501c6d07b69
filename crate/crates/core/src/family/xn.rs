//! `X_n`: `n` odd bands, each carrying a single residual half twist,
//! joining two circles.

use num_bigint::BigInt;

use crate::algebra::HalfLaurent;

/// Drops zero entries, then removes cyclically adjacent `+`/`-` pairs
/// until none remain. The bands sit in a ring between the two circles, so
/// the first and last entries are neighbours.
fn canonical(signs: &[i8]) -> Vec<i8> {
    let mut v: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    loop {
        let n = v.len();
        if n < 2 {
            return v;
        }
        let hit = (0..n).find(|&i| v[i] != v[(i + 1) % n]);
        match hit {
            None => return v,
            Some(i) => {
                let j = (i + 1) % n;
                let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                v.remove(hi);
                v.remove(lo);
            }
        }
    }
}

/// Jones polynomial of `X_n(signs)`; entries are `+1`, `-1` or `0`
/// (resolved).
pub fn xn_jones(signs: &[i8]) -> HalfLaurent {
    let v = canonical(signs);
    let delta = HalfLaurent::unlink_factor();
    if v.is_empty() {
        return delta;
    }
    let plus = v[0] > 0;
    let (shift, a, b) = if plus { (4, 3, 1) } else { (-4, -3, -1) };
    let step = HalfLaurent::from_terms([(a, BigInt::from(1)), (b, BigInt::from(-1))]);
    // X_n = t^(+-2) X_{n-2} + (t^(+-3/2) - t^(+-1/2)) X_{n-1}
    let mut prev = delta;
    let mut cur = HalfLaurent::one();
    for _ in 1..v.len() {
        let next = prev.shift(shift).add(&step.mul(&cur));
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hl(s: &str) -> HalfLaurent {
        HalfLaurent::parse(s).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(xn_jones(&[]), hl("-t^(1/2) - t^(-1/2)"));
        assert_eq!(xn_jones(&[1]), HalfLaurent::one());
        assert_eq!(xn_jones(&[-1]), HalfLaurent::one());
        assert_eq!(xn_jones(&[1, 1]), hl("-t^(5/2) - t^(1/2)"));
        // the right-handed trefoil
        assert_eq!(xn_jones(&[1, 1, 1]), hl("t + t^3 - t^4"));
        assert_eq!(xn_jones(&[-1, -1, -1]), hl("t + t^3 - t^4").mirror());
    }

    #[test]
    fn cancellation() {
        assert_eq!(canonical(&[1, 0, -1]), Vec::<i8>::new());
        assert_eq!(canonical(&[1, -1, 1]), vec![1]);
        // first and last are adjacent
        assert_eq!(canonical(&[-1, 1, 1, -1, -1]), vec![-1]);
        assert_eq!(xn_jones(&[1, -1, 1, 1]), xn_jones(&[1, 1]));
        assert_eq!(xn_jones(&[0, 0, 0]), xn_jones(&[]));
    }
}
