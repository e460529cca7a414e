//! Dense univariate polynomials over the integers.
//!
//! Coefficients are arbitrary precision and stored constant term first. The
//! representation is canonical: the coefficient vector never ends in a zero,
//! so the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyZ {
    coeffs: Vec<BigInt>,
}

impl PolyZ {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyZ { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        PolyZ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyZ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyZ { coeffs }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Exact quotient `self / divisor`; fails unless the remainder is zero.
    ///
    /// Long division runs from the top coefficient down and requires every
    /// partial quotient to be an integer. Since an exact quotient of integer
    /// polynomials by a divisor is unique, a non-integral step can only mean
    /// the division is not exact.
    pub fn exact_div(&self, divisor: &PolyZ) -> Result<PolyZ> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let Some(nd) = self.degree() else {
            return Ok(Self::zero());
        };
        if nd < dd {
            return Err(Error::NotDivisible);
        }
        if let (Some(a), Some(b)) = (self.small(), divisor.small()) {
            if let Some(q) = div_small(&a, &b) {
                return q.map(Self::from_i128s);
            }
        }
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + i] -= &q * d;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(Self::new(quot))
    }

    /// Coefficients as machine words, when they all fit.
    fn small(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    fn from_i128s(c: Vec<i128>) -> Self {
        Self::new(c.into_iter().map(BigInt::from).collect())
    }

    /// Gcd of the coefficients, zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content; the leading coefficient is made positive.
    pub fn primitive_part(&self) -> PolyZ {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        PolyZ {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Primitive greatest common divisor (positive leading coefficient),
    /// computed with a primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &PolyZ) -> PolyZ {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// A nonzero scalar multiple of the remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &PolyZ) -> PolyZ {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let top = rem.len() - 1;
            let t = rem[top].clone();
            if t.is_zero() {
                rem.pop();
                continue;
            }
            let g = t.gcd(lead);
            let (mul, tq) = (lead / &g, &t / &g);
            let shift = top - dd;
            for c in rem.iter_mut() {
                *c *= &mul;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &tq * d;
            }
            debug_assert!(rem[top].is_zero());
            rem.pop();
        }
        PolyZ::new(rem)
    }

    /// Square-free decomposition `p = c * prod f_i^i` (Yun's algorithm over
    /// the integers). Returns the primitive factors `f_i` of positive degree
    /// paired with their multiplicity `i`.
    pub fn squarefree_decomposition(&self) -> Vec<(PolyZ, usize)> {
        let mut out = Vec::new();
        let a = self.primitive_part();
        if a.is_constant() {
            return out;
        }
        let da = a.derivative();
        let c = a.gcd(&da);
        let mut w = a.exact_div(&c).expect("gcd divides the polynomial");
        let mut y = da.exact_div(&c).expect("gcd divides the derivative");
        let mut z = &y - &w.derivative();
        let mut i = 1;
        while !w.is_constant() {
            let g = w.gcd(&z);
            if !g.is_constant() {
                out.push((g.clone(), i));
            }
            w = w.exact_div(&g).expect("gcd divides w");
            y = z.exact_div(&g).expect("gcd divides z");
            z = &y - &w.derivative();
            i += 1;
        }
        out
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        horner(&self.to_f64_coeffs(), z)
    }

    pub fn eval_i64(&self, z: i64) -> BigInt {
        let z = BigInt::from(z);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &z + c)
    }

    /// `(1 - z^2)^k`
    pub fn one_minus_z_squared_pow(k: u32) -> PolyZ {
        PolyZ::from_i64s(&[1, 0, -1]).pow(k)
    }
}

/// Word-sized product; `None` on overflow.
fn mul_small(a: &[i64], b: &[i64]) -> Option<Vec<i128>> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(i128::from(x) * i128::from(y))?;
        }
    }
    Some(out)
}

/// Word-sized long division; the outer `None` means overflow, the inner
/// result reports divisibility.
fn div_small(a: &[i64], b: &[i64]) -> Option<Result<Vec<i128>>> {
    let (nd, dd) = (a.len() - 1, b.len() - 1);
    let lead = i128::from(b[dd]);
    let mut rem: Vec<i128> = a.iter().map(|&x| i128::from(x)).collect();
    let mut quot = vec![0i128; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let top = rem[k + dd];
        if top == 0 {
            continue;
        }
        if top % lead != 0 {
            return Some(Err(Error::NotDivisible));
        }
        let q = top / lead;
        for (i, &d) in b.iter().enumerate() {
            if d != 0 {
                rem[k + i] = rem[k + i].checked_sub(q.checked_mul(i128::from(d))?)?;
            }
        }
        quot[k] = q;
    }
    if rem.iter().any(|&c| c != 0) {
        return Some(Err(Error::NotDivisible));
    }
    Some(Ok(quot))
}

pub(crate) fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

impl Add for &PolyZ {
    type Output = PolyZ;

    fn add(self, rhs: &PolyZ) -> PolyZ {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        PolyZ::new(coeffs)
    }
}

impl Sub for &PolyZ {
    type Output = PolyZ;

    fn sub(self, rhs: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        PolyZ::new(coeffs)
    }
}

impl Mul for &PolyZ {
    type Output = PolyZ;

    fn mul(self, rhs: &PolyZ) -> PolyZ {
        if self.is_zero() || rhs.is_zero() {
            return PolyZ::zero();
        }
        if let (Some(a), Some(b)) = (self.small(), rhs.small()) {
            if let Some(c) = mul_small(&a, &b) {
                return PolyZ::from_i128s(c);
            }
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PolyZ::new(coeffs)
    }
}

impl Neg for &PolyZ {
    type Output = PolyZ;

    fn neg(self) -> PolyZ {
        PolyZ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyZ {
            type Output = PolyZ;
            fn $m(self, rhs: PolyZ) -> PolyZ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyZ {
    type Output = PolyZ;
    fn neg(self) -> PolyZ {
        -&self
    }
}

/// Ascending powers of `z`, e.g. `1 - 2*z^3 + z^6`.
impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as a list of decimal strings, constant term first.
impl serde::Serialize for PolyZ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serialize_bigints(&self.coeffs, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> PolyZ {
        PolyZ::from_i64s(c)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn exact_division_examples() {
        let a = p(&[1, 0, -1]).pow(2);
        assert_eq!(a.exact_div(&p(&[1, 0, -1])).unwrap(), p(&[1, 0, -1]));

        // 28z^4 - 44z^3 + 23z^2 - 8z + 1 has the root z = 1.
        let b = p(&[1, -8, 23, -44, 28]);
        assert_eq!(b.exact_div(&p(&[1, -1])).unwrap(), p(&[1, -7, 16, -28]));

        assert!(matches!(
            p(&[1, 0, 0, -1]).exact_div(&p(&[1, 0, -1])),
            Err(Error::NotDivisible)
        ));
        assert!(matches!(
            p(&[1]).exact_div(&PolyZ::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn non_integral_quotient_is_rejected() {
        // (2z + 1) does not divide z^2 + 1 over the integers or rationals.
        assert!(p(&[1, 0, 1]).exact_div(&p(&[1, 2])).is_err());
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = p(&[1, -1]); // 1 - z
        let g = p(&[1, -3, 5]); // 5z^2 - 3z + 1
        let h = p(&[-1, 5]); // 5z - 1
        let prod = &(&f.pow(3) * &g.pow(2)) * &h;
        let d = prod.squarefree_decomposition();
        let degs: Vec<(usize, usize)> = d.iter().map(|(q, m)| (q.degree().unwrap(), *m)).collect();
        assert_eq!(degs, vec![(1, 1), (2, 2), (1, 3)]);
        assert_eq!(d[0].0, p(&[-1, 5]));
        assert_eq!(d[2].0, p(&[-1, 1]));
        assert_eq!(f.pow(2).gcd(&(&f * &g)), p(&[-1, 1]));
    }

    #[test]
    fn display_ascending() {
        assert_eq!(p(&[1, 0, 0, -2, 0, 0, 1]).to_string(), "1 - 2*z^3 + z^6");
        assert_eq!(p(&[0, -1, 3]).to_string(), "-z + 3*z^2");
        assert_eq!(PolyZ::zero().to_string(), "0");
    }

    #[test]
    fn eval_and_derivative() {
        let q = p(&[1, -2, 0, 0, 1]);
        assert_eq!(q.eval_i64(1), BigInt::zero());
        assert_eq!(q.derivative(), p(&[-2, 0, 0, 4]));
        assert_eq!(q.eval_i64(2), BigInt::from(13));
    }
}
