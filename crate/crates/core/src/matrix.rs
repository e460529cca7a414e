//! Square matrices over `Z` and `Z[z]`, with exact determinants.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::PolyZ;

/// Row-major square integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] += v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(<[i64]>::to_vec).take(self.n).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        (0..self.n).map(|j| self.get(i, j)).sum()
    }

    /// Exact characteristic polynomial `det(λI - M)`, as a polynomial in `λ`.
    pub fn char_poly(&self) -> PolyZ {
        let lambda = PolyZ::from_i64s(&[0, 1]);
        let m = PolyMatrix::from_fn(self.n, |i, j| {
            let entry = PolyZ::constant(BigInt::from(-self.get(i, j)));
            if i == j {
                &entry + &lambda
            } else {
                entry
            }
        });
        m.det()
    }

    /// Integer determinant via the same fraction-free elimination.
    pub fn det(&self) -> BigInt {
        PolyMatrix::from_fn(self.n, |i, j| PolyZ::constant(BigInt::from(self.get(i, j))))
            .det()
            .constant_term()
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.rows()
    }
}

/// Square matrix with integer-polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<PolyZ>,
}

impl PolyMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> PolyZ) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<PolyZ>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(PolyMatrix { n, entries })
    }

    /// `I - A z + Q z^2 + P z^3`, the matrix whose determinant is the
    /// denominator of the zeta function.
    pub fn ihara_pencil(a: &IntMatrix, q: &IntMatrix, p: &IntMatrix) -> Self {
        let n = a.dim();
        PolyMatrix::from_fn(n, |i, j| {
            let c = [
                i64::from(i == j),
                -a.get(i, j),
                q.get(i, j),
                p.get(i, j),
            ];
            PolyZ::from_i64s(&c)
        })
    }

    /// `I - A z`
    pub fn linear_pencil(a: &IntMatrix) -> Self {
        PolyMatrix::from_fn(a.dim(), |i, j| {
            PolyZ::from_i64s(&[i64::from(i == j), -a.get(i, j)])
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &PolyZ {
        &self.entries[i * self.n + j]
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    ///
    /// After step `k` every trailing entry equals a `(k+1) x (k+1)` minor of
    /// the input, so each update divides exactly by the previous pivot. A row
    /// whose entry in the pivot column is zero would only be rescaled by
    /// `p_k / p_(k-1)`; those rescalings telescope, so they are deferred until
    /// the row is next used. Sparse inputs then cost roughly one row update
    /// per nonzero below the diagonal.
    pub fn det(&self) -> PolyZ {
        let n = self.n;
        if n == 0 {
            return PolyZ::one();
        }
        let mut m: Vec<Vec<PolyZ>> = self.entries.chunks(n).map(<[PolyZ]>::to_vec).collect();
        // `frame[i] = f` means row `i` is stored as its true value times
        // `p_f / p_(k-1)` at step `k`; `pivots[f + 1] = p_f`, `pivots[0] = 1`.
        let mut frame: Vec<usize> = vec![0; n];
        let mut pivots: Vec<PolyZ> = vec![PolyZ::one()];
        let mut negate = false;
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return PolyZ::zero();
                };
                m.swap(k, swap);
                frame.swap(k, swap);
                negate = !negate;
            }
            bring_current(&mut m[k], k, &mut frame[k], &pivots);
            if k == n - 1 {
                break;
            }
            let (head, tail) = m.split_at_mut(k + 1);
            let pivot_row = &head[k];
            let pivot = &pivot_row[k];
            let prev = &pivots[k];
            for (offset, row) in tail.iter_mut().enumerate() {
                if row[k].is_zero() {
                    continue;
                }
                let f = &mut frame[k + 1 + offset];
                bring_current(row, k, f, &pivots);
                *f = k + 1;
                let factor = std::mem::take(&mut row[k]);
                for j in k + 1..n {
                    let keep = if row[j].is_zero() {
                        PolyZ::zero()
                    } else {
                        pivot * &row[j]
                    };
                    let updated = if pivot_row[j].is_zero() {
                        keep
                    } else {
                        &keep - &(&factor * &pivot_row[j])
                    };
                    row[j] = divide(updated, prev);
                }
            }
            pivots.push(pivot.clone());
        }
        let det = m[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Determinant by Laplace expansion along the first row; exponential, for
    /// cross-checking small matrices.
    pub fn det_cofactor(&self) -> PolyZ {
        fn rec(m: &[Vec<PolyZ>]) -> PolyZ {
            let n = m.len();
            match n {
                0 => PolyZ::one(),
                1 => m[0][0].clone(),
                _ => {
                    let mut acc = PolyZ::zero();
                    for c in 0..n {
                        if m[0][c].is_zero() {
                            continue;
                        }
                        let minor: Vec<Vec<PolyZ>> = m[1..]
                            .iter()
                            .map(|row| {
                                row.iter()
                                    .enumerate()
                                    .filter(|&(j, _)| j != c)
                                    .map(|(_, e)| e.clone())
                                    .collect()
                            })
                            .collect();
                        let term = &m[0][c] * &rec(&minor);
                        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
                    }
                    acc
                }
            }
        }
        let rows: Vec<Vec<PolyZ>> = self.entries.chunks(self.n.max(1)).map(<[PolyZ]>::to_vec).take(self.n).collect();
        rec(&rows)
    }
}

fn divide(p: PolyZ, by: &PolyZ) -> PolyZ {
    if p.is_zero() || (by.is_constant() && by.constant_term().is_one()) {
        p
    } else {
        p.exact_div(by)
            .expect("Bareiss update is divisible by the previous pivot")
    }
}

/// Applies the deferred factor `p_(k-1) / p_f` to the entries from column `k` on.
fn bring_current(row: &mut [PolyZ], k: usize, frame: &mut usize, pivots: &[PolyZ]) {
    if *frame == k {
        return;
    }
    let (num, den) = (&pivots[k], &pivots[*frame]);
    for e in row[k..].iter_mut() {
        if !e.is_zero() {
            *e = divide(num * &*e, den);
        }
    }
    *frame = k;
}

/// Determinant of a square matrix of polynomials given as rows.
pub fn det_poly(rows: Vec<Vec<PolyZ>>) -> Result<PolyZ> {
    Ok(PolyMatrix::from_rows(rows)?.det())
}

/// Characteristic polynomial of a square integer matrix given as rows.
pub fn char_poly(rows: &[Vec<i64>]) -> Result<PolyZ> {
    Ok(IntMatrix::from_rows(rows)?.char_poly())
}
