//! Exact rational linear algebra: rank by Gaussian elimination, pointwise
//! antisymmetric matrices of 2-forms, and tangent-space restriction at
//! sphere points. No tolerances anywhere.

use num_traits::Zero;
use thiserror::Error;

use crate::poly::NVARS;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("basis vector {0} is not orthogonal to the gradient")]
    NotTangent(usize),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("expected {expected} basis vectors, got {got}")]
    BasisSize { expected: usize, got: usize },
}

/// Rank over the rationals via exact Gaussian elimination.
pub fn rank_exact(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        // Find a pivot at or below `row`.
        let pivot = (row..nrows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        let pivot_val = m[row][col].clone();
        for r in (row + 1)..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot_val;
            for c in col..ncols {
                let delta = &factor * &m[row][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

/// Exactly antisymmetric square matrix (M = -M^T), the pointwise value of a
/// 2-form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AntisymMatrix {
    rows: Vec<Vec<Rational>>,
}

impl AntisymMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(MatrixError::NotAntisymmetric);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if rows[i][j] != -&rows[j][i] {
                    return Err(MatrixError::NotAntisymmetric);
                }
            }
        }
        Ok(AntisymMatrix { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        rank_exact(&self.rows)
    }
}

fn dot(a: &[Rational; NVARS], b: &[Rational; NVARS]) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..NVARS {
        acc += &a[i] * &b[i];
    }
    acc
}

/// Deterministic rational basis of the hyperplane orthogonal to `gradient`:
/// the gradient is extended by the standard basis, orthogonalized exactly
/// (Gram-Schmidt without normalization, dependent vectors skipped), and the
/// gradient direction dropped.
#[derive(Clone, Debug)]
pub struct TangentBasis {
    pub gradient: [Rational; NVARS],
    pub vectors: Vec<[Rational; NVARS]>,
}

pub fn tangent_basis(gradient: &[Rational; NVARS]) -> TangentBasis {
    assert!(
        gradient.iter().any(|g| !g.is_zero()),
        "gradient must be nonzero"
    );
    let mut ortho: Vec<[Rational; NVARS]> = vec![gradient.clone()];
    for k in 0..NVARS {
        let mut v: [Rational; NVARS] = std::array::from_fn(|i| {
            if i == k {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        });
        for b in &ortho {
            let scale = dot(&v, b) / dot(b, b);
            for i in 0..NVARS {
                let delta = &scale * &b[i];
                v[i] = &v[i] - &delta;
            }
        }
        if v.iter().any(|c| !c.is_zero()) {
            ortho.push(v);
        }
        if ortho.len() == NVARS {
            break;
        }
    }
    debug_assert_eq!(ortho.len(), NVARS);
    TangentBasis {
        gradient: gradient.clone(),
        vectors: ortho[1..].to_vec(),
    }
}

/// Restriction B[i][j] = b_i^T M b_j of an antisymmetric 6x6 matrix to a
/// 5-dimensional tangent space. The basis must consist of five linearly
/// independent vectors orthogonal to the gradient; anything else is
/// rejected.
pub fn restrict_two_form(
    m: &AntisymMatrix,
    basis: &TangentBasis,
) -> Result<AntisymMatrix, MatrixError> {
    if basis.vectors.len() != NVARS - 1 {
        return Err(MatrixError::BasisSize {
            expected: NVARS - 1,
            got: basis.vectors.len(),
        });
    }
    for (i, v) in basis.vectors.iter().enumerate() {
        if !dot(v, &basis.gradient).is_zero() {
            return Err(MatrixError::NotTangent(i));
        }
    }
    let basis_rows: Vec<Vec<Rational>> = basis.vectors.iter().map(|v| v.to_vec()).collect();
    if rank_exact(&basis_rows) != NVARS - 1 {
        return Err(MatrixError::DependentBasis);
    }
    let k = basis.vectors.len();
    let mut out = vec![vec![Rational::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut acc = Rational::zero();
            for (r, m_row) in m.rows().iter().enumerate() {
                if basis.vectors[i][r].is_zero() {
                    continue;
                }
                let mut inner = Rational::zero();
                for c in 0..NVARS {
                    inner += &m_row[c] * &basis.vectors[j][c];
                }
                acc += &basis.vectors[i][r] * &inner;
            }
            out[i][j] = acc;
        }
    }
    AntisymMatrix::new(out)
}
