//! `∂`-semilinear maps `D: V -> W ⊗ B` on finite-dimensional `K`-spaces,
//! their exterior powers, and constancy of dependencies among constants.

use serde::Serialize;

use crate::basefield::{Field, Ring};
use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::{BOperator, TensorRing};

type Elem<O> = <<O as BOperator>::F as Ring>::Elem;

/// `D(sum a_i e_i) = sum ∂(a_i) D(e_i)`, determined by the images `D(e_i)`.
#[derive(Clone, Debug)]
pub struct SemilinearMap<O: BOperator> {
    op: O,
    dim_v: usize,
    dim_w: usize,
    /// `matrix[w][v]` is the `w`-th coordinate of `D(e_v)`, in `K ⊗ B`.
    matrix: Vec<Vec<Vec<Elem<O>>>>,
}

impl<O: BOperator + Clone> SemilinearMap<O> {
    pub fn new(op: O, dim_v: usize, dim_w: usize, matrix: Vec<Vec<Vec<Elem<O>>>>) -> Result<Self> {
        let e = op.algebra().dim();
        if matrix.len() != dim_w {
            return Err(Error::DimensionMismatch {
                expected: dim_w,
                got: matrix.len(),
            });
        }
        for row in &matrix {
            if row.len() != dim_v {
                return Err(Error::DimensionMismatch {
                    expected: dim_v,
                    got: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|x| x.len() != e) {
                return Err(Error::DimensionMismatch {
                    expected: e,
                    got: bad.len(),
                });
            }
        }
        Ok(SemilinearMap {
            op,
            dim_v,
            dim_w,
            matrix,
        })
    }

    /// `D(v) = (∂(v_1), ..., ∂(v_n))` on `K^n`.
    pub fn coordinatewise(op: O, n: usize) -> Self {
        let t = op.tensor_ring();
        let matrix = (0..n)
            .map(|w| {
                (0..n)
                    .map(|v| if v == w { t.one() } else { t.zero() })
                    .collect()
            })
            .collect();
        SemilinearMap {
            op,
            dim_v: n,
            dim_w: n,
            matrix,
        }
    }

    pub fn operator(&self) -> &O {
        &self.op
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_v, self.dim_w)
    }

    pub fn matrix(&self) -> &[Vec<Vec<Elem<O>>>] {
        &self.matrix
    }

    fn ring(&self) -> TensorRing<O::F> {
        self.op.tensor_ring()
    }

    pub fn apply_vec(&self, v: &[Elem<O>]) -> Result<Vec<Vec<Elem<O>>>> {
        if v.len() != self.dim_v {
            return Err(Error::DimensionMismatch {
                expected: self.dim_v,
                got: v.len(),
            });
        }
        let t = self.ring();
        let images = v
            .iter()
            .map(|a| self.op.apply(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&images)
                    .fold(t.zero(), |acc, (m, da)| t.add(&acc, &t.mul(da, m)))
            })
            .collect())
    }

    /// `D(v) = v ⊗ 1`.
    pub fn is_constant_vec(&self, v: &[Elem<O>]) -> Result<bool> {
        if self.dim_v != self.dim_w {
            return Err(Error::DimensionMismatch {
                expected: self.dim_v,
                got: self.dim_w,
            });
        }
        let t = self.ring();
        let image = self.apply_vec(v)?;
        Ok(image.iter().zip(v).all(|(d, a)| *d == t.scalar(a)))
    }

    /// `Λ^n D` in the bases `e_S`, `S` running over `n`-subsets in
    /// lexicographic order; entries are minors over `K ⊗ B`.
    pub fn exterior_power(&self, n: usize) -> Result<Self> {
        if n > self.dim_v || n > self.dim_w {
            return Err(Error::BadExponent(n));
        }
        let t = self.ring();
        let rows = subsets(self.dim_w, n);
        let cols = subsets(self.dim_v, n);
        let matrix = rows
            .iter()
            .map(|s| {
                cols.iter()
                    .map(|c| {
                        let minor: Vec<Vec<Elem<O>>> = s
                            .iter()
                            .flat_map(|&i| c.iter().map(move |&j| (i, j)))
                            .map(|(i, j)| self.matrix[i][j].clone())
                            .collect();
                        determinant(&t, minor, n)
                    })
                    .collect()
            })
            .collect();
        Ok(SemilinearMap {
            op: self.op.clone(),
            dim_v: cols.len(),
            dim_w: rows.len(),
            matrix,
        })
    }

    /// Computes the canonical kernel basis of the matrix with columns
    /// `vectors` and checks that each coefficient is a constant.
    pub fn dependency_constancy_check(&self, vectors: &[Vec<Elem<O>>]) -> Result<DependencyReport> {
        for (i, v) in vectors.iter().enumerate() {
            if !self.is_constant_vec(v)? {
                return Err(Error::NotConstantInput(i));
            }
        }
        let field = self.op.field();
        let rows: Vec<Vec<Elem<O>>> = (0..self.dim_v)
            .map(|r| vectors.iter().map(|v| v[r].clone()).collect())
            .collect();
        let kernel = linalg::kernel(field, &rows, vectors.len());
        let mut violation = None;
        'outer: for (b, vec) in kernel.iter().enumerate() {
            for (i, c) in vec.iter().enumerate() {
                if !self.op.is_constant(c)? {
                    violation = Some([b, i]);
                    break 'outer;
                }
            }
        }
        Ok(DependencyReport {
            kernel: kernel
                .iter()
                .map(|v| v.iter().map(|c| field.display(c)).collect())
                .collect(),
            constant_coefficients: violation.is_none(),
            violation,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DependencyReport {
    /// Reduced-echelon kernel basis, one coefficient list per dependency.
    pub kernel: Vec<Vec<String>>,
    pub constant_coefficients: bool,
    /// `[basis vector, coefficient]` of the first non-constant entry.
    pub violation: Option<[usize; 2]>,
}

/// `n`-subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, n, &mut Vec::new(), &mut out);
    out
}

/// Determinant of a row-major `n x n` matrix over a commutative ring, by
/// Laplace expansion along the first row.
pub fn determinant<R: Ring>(ring: &R, m: Vec<R::Elem>, n: usize) -> R::Elem {
    match n {
        0 => ring.one(),
        1 => m[0].clone(),
        _ => {
            let mut acc = ring.zero();
            for j in 0..n {
                if ring.is_zero(&m[j]) {
                    continue;
                }
                let minor: Vec<R::Elem> = (1..n)
                    .flat_map(|i| (0..n).filter(move |&c| c != j).map(move |c| (i, c)))
                    .map(|(i, c)| m[i * n + c].clone())
                    .collect();
                let term = ring.mul(&m[j], &determinant(ring, minor, n - 1));
                acc = if j % 2 == 0 {
                    ring.add(&acc, &term)
                } else {
                    ring.sub(&acc, &term)
                };
            }
            acc
        }
    }
}

/// Coordinates of `v1 ∧ ... ∧ vn` in the basis `e_S` of `Λ^n K^m`.
pub fn wedge<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let n = vectors.len();
    let m = vectors.first().map_or(0, Vec::len);
    subsets(m, n)
        .iter()
        .map(|s| {
            let minor = s
                .iter()
                .flat_map(|&r| vectors.iter().map(move |v| v[r].clone()))
                .collect();
            determinant(field, minor, n)
        })
        .collect()
}
