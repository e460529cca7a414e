//! Closed geodesic counts from the zeta function, and prime counts from them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::PolyZ;

/// `counts[m - 1]` is `N_m`, the number of closed backtrackless tailless
/// paths of length `m` with a distinguished starting dart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeodesicSeries {
    #[serde(serialize_with = "crate::serialize_bigints")]
    pub counts: Vec<BigInt>,
}

impl GeodesicSeries {
    pub fn horizon(&self) -> usize {
        self.counts.len()
    }

    /// `N_m`, 1-based.
    pub fn get(&self, m: usize) -> &BigInt {
        &self.counts[m - 1]
    }

    pub fn from_u64s(counts: &[u64]) -> Self {
        GeodesicSeries {
            counts: counts.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }
}

/// Coefficients `N_1..N_L` of `z d/dz log zeta(z) = -z f'(z) / f(z)` where
/// `f` is the reciprocal zeta polynomial.
///
/// Uses the Newton-type recurrence `N_m = -m f_m - sum_{j=1}^{m-1} f_j N_{m-j}`,
/// which follows from `f * (sum N_m z^m) = -z f'` and `f_0 = 1`; every step
/// stays in the integers.
pub fn log_derivative_series(zeta_inverse: &PolyZ, horizon: usize) -> Result<GeodesicSeries> {
    let c0 = zeta_inverse.constant_term();
    if !c0.is_one() {
        return Err(Error::ConstantTerm(c0));
    }
    let f = zeta_inverse.coeffs();
    let coeff = |k: usize| f.get(k).cloned().unwrap_or_default();
    let mut counts: Vec<BigInt> = Vec::with_capacity(horizon);
    for m in 1..=horizon {
        let mut n = -(coeff(m) * BigInt::from(m));
        for j in 1..m.min(f.len()) {
            if !f[j].is_zero() {
                n -= &f[j] * &counts[m - j - 1];
            }
        }
        counts.push(n);
    }
    Ok(GeodesicSeries { counts })
}

/// Möbius function by trial division.
pub fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Prime counts `pi(m) = (1/m) sum_{d | m} mu(m/d) N_d`, the inverse of
/// `N_m = sum_{d | m} d pi(d)`.
pub fn mobius_invert(series: &GeodesicSeries) -> Result<Vec<BigInt>> {
    let mut primes = Vec::with_capacity(series.horizon());
    for m in 1..=series.horizon() {
        let mut acc = BigInt::zero();
        for d in (1..=m).filter(|d| m % d == 0) {
            match mobius(m / d) {
                0 => {}
                mu => acc += series.get(d) * BigInt::from(mu),
            }
        }
        let (pi, rem) = acc.div_rem(&BigInt::from(m));
        if !rem.is_zero() {
            return Err(Error::InconsistentCounts {
                length: m,
                reason: format!("Möbius sum {acc} is not divisible by {m}"),
            });
        }
        if pi.is_negative() {
            return Err(Error::InconsistentCounts {
                length: m,
                reason: format!("negative prime count {pi}"),
            });
        }
        primes.push(pi);
    }
    Ok(primes)
}

/// Gcd of the lengths carrying at least one prime; zero when there are none.
pub fn prime_length_gcd(primes: &[BigInt]) -> usize {
    primes
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .fold(0, |g, (i, _)| g.gcd(&(i + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn triangle_series() {
        let s = log_derivative_series(&PolyZ::from_i64s(&[1, 0, 0, -2, 0, 0, 1]), 6).unwrap();
        assert_eq!(s.counts, big(&[0, 0, 6, 0, 0, 6]));
    }

    #[test]
    fn worked_example_series() {
        let s = log_derivative_series(&PolyZ::from_i64s(&[1, -2, 0, 0, 1]), 4).unwrap();
        assert_eq!(s.counts, big(&[2, 4, 8, 12]));
    }

    #[test]
    fn trivial_and_bad_constant() {
        let s = log_derivative_series(&PolyZ::one(), 5).unwrap();
        assert_eq!(s.counts, big(&[0; 5]));
        assert!(matches!(
            log_derivative_series(&PolyZ::from_i64s(&[2, 1]), 3),
            Err(Error::ConstantTerm(_))
        ));
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn inversion_examples() {
        let pi = mobius_invert(&GeodesicSeries::from_u64s(&[0, 0, 6])).unwrap();
        assert_eq!(pi, big(&[0, 0, 2]));
        let pi = mobius_invert(&GeodesicSeries::from_u64s(&[6])).unwrap();
        assert_eq!(pi, big(&[6]));
        let pi = mobius_invert(&GeodesicSeries::from_u64s(&[0; 7])).unwrap();
        assert_eq!(pi, big(&[0; 7]));
        assert_eq!(prime_length_gcd(&big(&[0, 0, 2, 0, 0, 0])), 3);
        assert_eq!(prime_length_gcd(&big(&[0, 0])), 0);
    }

    #[test]
    fn inconsistent_counts_rejected() {
        assert!(mobius_invert(&GeodesicSeries::from_u64s(&[0, 1])).is_err());
        // N = (2, 0): pi(2) = (0 - 2) / 2 = -1.
        assert!(mobius_invert(&GeodesicSeries::from_u64s(&[2, 0])).is_err());
    }
}
