use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::GeometryError;

/// The Gaussian binomial coefficient `[l, m]_q`, exactly.
pub fn gaussian_binomial(l: u32, m: u32, q: u32) -> Result<BigUint, GeometryError> {
    if m > l {
        return Err(GeometryError::Domain(format!(
            "gaussian binomial requires m ≤ l, got [{l}, {m}]"
        )));
    }
    if q < 2 {
        return Err(GeometryError::Domain(format!("q = {q} is not a field order")));
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m {
        num *= q.pow(l - i) - 1u32;
        den *= q.pow(m - i) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// The three closed-form counts of subspace incidence, inside an
/// `k`-dimensional space over `F_q`:
///
/// 1. `[k, m]_q` subspaces of dimension `m`;
/// 2. `[k-s, m-s]_q` of them contain a fixed `s`-dimensional subspace;
/// 3. `q^((m-s)(t-s)) [k-t, m-s]_q` of them meet a fixed `t`-dimensional
///    subspace in exactly a fixed `s`-dimensional subspace of it.
///
/// The third count is zero when `m - s > k - t`.
pub fn incidence_counts(
    q: u32,
    k: u32,
    m: u32,
    s: u32,
    t: u32,
) -> Result<(BigUint, BigUint, BigUint), GeometryError> {
    if s > m || s > t || m > k || t > k {
        return Err(GeometryError::Domain(format!(
            "requires 0 ≤ s ≤ m, t ≤ k, got k = {k}, m = {m}, s = {s}, t = {t}"
        )));
    }
    let all = gaussian_binomial(k, m, q)?;
    let containing = gaussian_binomial(k - s, m - s, q)?;
    let meeting = if m - s > k - t {
        BigUint::zero()
    } else {
        BigUint::from(q).pow((m - s) * (t - s)) * gaussian_binomial(k - t, m - s, q)?
    };
    Ok((all, containing, meeting))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gb(l: u32, m: u32, q: u32) -> BigUint {
        gaussian_binomial(l, m, q).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(gb(3, 3, 2), BigUint::from(1u32));
        assert_eq!(gb(5, 0, 3), BigUint::from(1u32));
        assert_eq!(gb(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gb(3, 1, 2), BigUint::from(7u32));
        assert_eq!(gb(4, 2, 3), BigUint::from(130u32));
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn symmetry_and_pascal() {
        for q in [2, 3, 4, 5] {
            for l in 0..=8 {
                for m in 0..=l {
                    assert_eq!(gb(l, m, q), gb(l, l - m, q));
                    if 0 < m && m < l {
                        let rhs = gb(l - 1, m - 1, q) + BigUint::from(q).pow(m) * gb(l - 1, m, q);
                        assert_eq!(gb(l, m, q), rhs, "q={q} l={l} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn large_values_do_not_overflow() {
        // [40, 20]_3 is far beyond 64 bits
        assert!(gb(40, 20, 3).bits() > 200);
    }

    #[test]
    fn incidence_examples() {
        let (a, b, c) = incidence_counts(2, 3, 1, 0, 1).unwrap();
        assert_eq!((a, b, c), (7u32.into(), 7u32.into(), 6u32.into()));
        let (_, _, c) = incidence_counts(2, 2, 1, 1, 1).unwrap();
        assert_eq!(c, BigUint::from(1u32));
        let (_, _, c) = incidence_counts(2, 4, 2, 0, 2).unwrap();
        assert_eq!(c, BigUint::from(16u32));
        assert!(incidence_counts(2, 3, 1, 2, 2).is_err());
    }
}
