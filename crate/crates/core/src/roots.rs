//! Complex roots of integer polynomials.
//!
//! Repeated roots are separated exactly before any floating point work: the
//! factors `z`, `z - 1` and `z + 1` are divided out, the rest goes through a
//! square-free decomposition, and only square-free factors reach the
//! Aberth–Ehrlich iteration. Multiplicities are therefore exact rather than
//! inferred from clustering.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{horner, PolyZ};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MERGE: f64 = 1e-8;
const MAX_ITERATIONS: usize = 2000;
/// Largest accepted residual relative to `sum |a_k| |r|^k`.
const RELATIVE_RESIDUAL_LIMIT: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

impl Root {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(&self) -> f64 {
        self.value().norm()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexRootSet {
    pub roots: Vec<Root>,
    /// Largest `|p(r)|` over the reported roots, evaluated on the input.
    pub residual_bound: f64,
}

impl ComplexRootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn min_modulus(&self) -> Option<f64> {
        self.roots.iter().map(Root::modulus).min_by(f64::total_cmp)
    }

    pub fn max_modulus(&self) -> Option<f64> {
        self.roots.iter().map(Root::modulus).max_by(f64::total_cmp)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootOptions {
    /// Relative step size at which the iteration is considered converged.
    pub tol: f64,
    /// Roots closer than this are reported once with summed multiplicity.
    pub merge: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: DEFAULT_TOL,
            merge: DEFAULT_MERGE,
        }
    }
}

/// All complex roots of a nonzero polynomial with multiplicities.
pub fn roots(p: &PolyZ, opts: RootOptions) -> Result<ComplexRootSet> {
    if p.is_zero() {
        return Err(Error::Numerical("the zero polynomial has no finite root set".into()));
    }
    let mut found: Vec<(Complex64, usize)> = Vec::new();
    let mut rest = p.clone();

    let zero_mult = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        found.push((Complex64::new(0.0, 0.0), zero_mult));
        rest = PolyZ::new(p.coeffs()[zero_mult..].to_vec());
    }
    for (root, lin) in [(1.0, PolyZ::from_i64s(&[-1, 1])), (-1.0, PolyZ::from_i64s(&[1, 1]))] {
        let mut mult = 0;
        while let Ok(q) = rest.exact_div(&lin) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            found.push((Complex64::new(root, 0.0), mult));
        }
    }

    for (factor, mult) in rest.squarefree_decomposition() {
        for r in squarefree_roots(&factor, opts.tol)? {
            found.push((r, mult));
        }
    }

    let roots = merge_roots(found, opts.merge);
    let coeffs = p.to_f64_coeffs();
    let residual_bound = roots
        .iter()
        .map(|r| horner(&coeffs, r.value()).norm())
        .fold(0.0, f64::max);
    Ok(ComplexRootSet {
        roots,
        residual_bound,
    })
}

/// Roots of a square-free polynomial of positive degree.
fn squarefree_roots(f: &PolyZ, tol: f64) -> Result<Vec<Complex64>> {
    let coeffs = f.to_f64_coeffs();
    let degree = coeffs.len() - 1;
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Numerical(format!(
            "coefficients of a degree-{degree} factor exceed the floating point range"
        )));
    }
    let found = match degree {
        0 => Vec::new(),
        1 => vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)],
        _ => aberth_ehrlich(&coeffs, tol)?,
    };
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let mut polished = Vec::with_capacity(found.len());
    for z0 in found {
        let z = newton_polish(&coeffs, &deriv, z0);
        let scale = horner(
            &coeffs.iter().map(|c| c.abs()).collect::<Vec<_>>(),
            Complex64::new(z.norm(), 0.0),
        )
        .re;
        let resid = horner(&coeffs, z).norm();
        if resid > RELATIVE_RESIDUAL_LIMIT * scale {
            return Err(Error::Numerical(format!(
                "root {z} of a degree-{degree} factor has relative residual {:e}",
                resid / scale
            )));
        }
        polished.push(z);
    }
    Ok(polished)
}

fn newton_polish(coeffs: &[f64], deriv: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..3 {
        let d = horner(deriv, z);
        if d.norm() == 0.0 {
            break;
        }
        let step = horner(coeffs, z) / d;
        if !step.is_finite() || step.norm() > 1e-6 * z.norm().max(1.0) {
            break;
        }
        z -= step;
    }
    z
}

/// Simultaneous Aberth–Ehrlich iteration.
///
/// Initial guesses sit on a circle whose radius is the geometric mean of the
/// root moduli, at angles offset from the axes so that real and conjugate
/// symmetric starting configurations do not occur.
pub fn aberth_ehrlich(coeffs: &[f64], tol: f64) -> Result<Vec<Complex64>> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    let radius = (coeffs[0].abs() / lead.abs()).powf(1.0 / degree as f64);
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / degree as f64 + 0.4))
        .collect();
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();

    let abs_coeffs: Vec<f64> = coeffs.iter().map(|c| c.abs()).collect();
    // A root is done once its residual is at the rounding level of evaluating
    // the polynomial there; further steps only chase noise.
    let noise = |z: Complex64| {
        4.0 * (degree as f64 + 1.0) * f64::EPSILON * horner(&abs_coeffs, Complex64::new(z.norm(), 0.0)).re
    };
    let mut done = vec![false; degree];
    let mut last_step = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for k in 0..degree {
            if done[k] {
                continue;
            }
            let pk = horner(coeffs, z[k]);
            if pk.norm() <= noise(z[k]) {
                done[k] = true;
                continue;
            }
            let ratio = pk / horner(&deriv, z[k]);
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            } else {
                // Perturb off a critical point.
                z[k] += Complex64::new(tol.sqrt(), tol.sqrt());
                max_step = f64::INFINITY;
            }
        }
        last_step = max_step;
        if max_step <= tol || done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        degree,
        iterations: MAX_ITERATIONS,
        last_step,
    })
}

/// Snap negligible imaginary parts, merge close roots, and sort by
/// (real part, imaginary part).
fn merge_roots(found: Vec<(Complex64, usize)>, merge: f64) -> Vec<Root> {
    let mut roots: Vec<Root> = Vec::new();
    for (z, multiplicity) in found {
        let im = if z.im.abs() <= 1e-14 * z.norm().max(1.0) { 0.0 } else { z.im };
        let z = Complex64::new(z.re + 0.0, im + 0.0);
        if let Some(existing) = roots.iter_mut().find(|r| (r.value() - z).norm() <= merge) {
            existing.multiplicity += multiplicity;
        } else {
            roots.push(Root {
                re: z.re,
                im: z.im,
                multiplicity,
            });
        }
    }
    roots.sort_by(|a, b| match a.re.total_cmp(&b.re) {
        Ordering::Equal => a.im.total_cmp(&b.im),
        other => other,
    });
    roots
}
