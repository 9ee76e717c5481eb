//! Dense matrices over the scalar tower, with determinant and rank engines
//! chosen per representation: fraction-free Bareiss elimination for exact
//! rationals, partially pivoted LU for f64 (returning the pivot-magnitude
//! product as a scale estimate for sign classification), plain Gaussian
//! elimination for extended precision, and SVD-based numerical rank.

use num::{BigRational, One, Signed, ToPrimitive, Zero};

use super::scalar::{Mode, Scalar};
use super::wide::Wide;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Matrix {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<Scalar>,
}

/// Determinant plus a magnitude estimate of the elimination that produced
/// it. For exact determinants the magnitude is the |det| itself.
#[derive(Clone, Debug)]
pub struct DetResult {
    pub value: Scalar,
    pub magnitude: f64,
}

/// Pivot-magnitude product with the weakest pivot dropped (1 for orders
/// ≤ 1): the scale against which a computed near-zero determinant must be
/// judged.
fn cancelled_scale(pivots: &[f64]) -> f64 {
    if pivots.len() < 2 {
        return 1.0;
    }
    let min = pivots.iter().cloned().fold(f64::INFINITY, f64::min);
    let product: f64 = pivots.iter().product();
    if min > 0.0 {
        product / min
    } else {
        pivots.iter().filter(|&&p| p > 0.0).product()
    }
}

impl Matrix {
    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Matrix { nrows, ncols, data }
    }

    pub fn try_from_fn(
        nrows: usize,
        ncols: usize,
        mut f: impl FnMut(usize, usize) -> Result<Scalar>,
    ) -> Result<Matrix> {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j)?);
            }
        }
        Ok(Matrix { nrows, ncols, data })
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    /// Submatrix given by row/column index lists (indices may repeat or be
    /// out of order; callers validate as needed).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ncols, self.nrows, |i, j| self.get(j, i).clone())
    }

    pub fn to_f64_matrix(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.nrows, self.ncols, |i, j| self.get(i, j).to_f64())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|s| s.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(Scalar::is_exact)
    }

    pub fn in_mode(&self, mode: Mode) -> Result<Matrix> {
        Matrix::try_from_fn(self.nrows, self.ncols, |i, j| self.get(i, j).in_mode(mode))
    }

    pub fn det(&self) -> Result<DetResult> {
        if !self.is_square() {
            return Err(Error::structural("determinant of a non-square matrix"));
        }
        if self.nrows == 0 {
            return Ok(DetResult { value: Scalar::from_int(1), magnitude: 1.0 });
        }
        if self.is_exact() {
            let d = self.det_bareiss()?;
            let magnitude = d.abs().to_f64().unwrap_or(f64::MAX);
            return Ok(DetResult { value: Scalar::Exact(d), magnitude });
        }
        if self.data.iter().any(|s| matches!(s, Scalar::Wide(_))) {
            return self.det_wide();
        }
        self.det_lu()
    }

    /// Fraction-free Bareiss elimination over the rationals. All sample
    /// kernels used in exact mode produce rational entries, so this gives
    /// exact determinant signs with bounded intermediate growth.
    fn det_bareiss(&self) -> Result<BigRational> {
        let n = self.nrows;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).as_exact().unwrap().clone()).collect())
            .collect();
        let mut sign = BigRational::one();
        let mut prev = BigRational::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Ok(BigRational::zero());
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(sign * m[n - 1][n - 1].clone())
    }

    /// Partially pivoted LU over f64. The magnitude estimate is the product
    /// of pivot magnitudes with the smallest one dropped: since the
    /// determinant itself is the full pivot product, excluding the weakest
    /// pivot measures the scale the elimination cancelled through, which is
    /// what the zero band must be proportional to for near-singular minors.
    fn det_lu(&self) -> Result<DetResult> {
        let n = self.nrows;
        let mut m = self.to_f64_matrix();
        let mut det = 1.0f64;
        let mut pivots: Vec<f64> = Vec::with_capacity(n);
        for k in 0..n {
            let mut p = k;
            for r in k + 1..n {
                if m[(r, k)].abs() > m[(p, k)].abs() {
                    p = r;
                }
            }
            if m[(p, k)] == 0.0 {
                return Ok(DetResult { value: Scalar::Float(0.0), magnitude: cancelled_scale(&pivots) });
            }
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            let pivot = m[(k, k)];
            det *= pivot;
            pivots.push(pivot.abs());
            for r in k + 1..n {
                let factor = m[(r, k)] / pivot;
                for c in k + 1..n {
                    m[(r, c)] -= factor * m[(k, c)];
                }
            }
        }
        Ok(DetResult { value: Scalar::Float(det), magnitude: cancelled_scale(&pivots) })
    }

    fn det_wide(&self) -> Result<DetResult> {
        let n = self.nrows;
        let mut m: Vec<Vec<Wide>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).to_wide()).collect())
            .collect();
        let mut det = Wide::from_i64(1);
        let mut pivots: Vec<f64> = Vec::with_capacity(n);
        for k in 0..n {
            let mut p = k;
            for r in k + 1..n {
                if m[r][k].abs().cmp(&m[p][k].abs()) == std::cmp::Ordering::Greater {
                    p = r;
                }
            }
            if m[p][k].is_zero() {
                return Ok(DetResult { value: Scalar::Wide(Wide::zero()), magnitude: cancelled_scale(&pivots) });
            }
            if p != k {
                m.swap(p, k);
                det = det.neg();
            }
            let pivot = m[k][k].clone();
            det = det.mul(&pivot);
            pivots.push(pivot.to_f64().abs());
            for r in k + 1..n {
                let factor = m[r][k].div(&pivot);
                for c in k + 1..n {
                    m[r][c] = m[r][c].sub(&factor.mul(&m[k][c]));
                }
            }
        }
        Ok(DetResult { value: Scalar::Wide(det), magnitude: cancelled_scale(&pivots) })
    }

    pub fn rank(&self, rel_eps: f64) -> usize {
        if self.is_exact() {
            self.rank_exact()
        } else {
            self.rank_svd(rel_eps)
        }
    }

    fn rank_exact(&self) -> usize {
        let mut m: Vec<Vec<BigRational>> = (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j).as_exact().unwrap().clone()).collect())
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.ncols {
            if row >= self.nrows {
                break;
            }
            let Some(p) = (row..self.nrows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            for r in row + 1..self.nrows {
                if !m[r][col].is_zero() {
                    let factor = &m[r][col] / &m[row][col];
                    for c in col..self.ncols {
                        let v = &m[r][c] - &factor * &m[row][c];
                        m[r][c] = v;
                    }
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }

    fn rank_svd(&self, rel_eps: f64) -> usize {
        let svd = self.to_f64_matrix().svd(false, false);
        let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
        if smax == 0.0 {
            return 0;
        }
        svd.singular_values.iter().filter(|&&s| s > rel_eps * smax).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(rows: &[&[i64]]) -> Matrix {
        Matrix::from_fn(rows.len(), rows[0].len(), |i, j| Scalar::from_int(rows[i][j]))
    }

    #[test]
    fn small_exact_determinants() {
        let m = exact(&[&[1, 1], &[1, 2]]);
        assert_eq!(m.det().unwrap().value.as_exact().unwrap(), &BigRational::one());
        let id4 = Matrix::from_fn(4, 4, |i, j| Scalar::from_int((i == j) as i64));
        assert_eq!(id4.det().unwrap().value.as_exact().unwrap(), &BigRational::one());
    }

    #[test]
    fn bareiss_handles_zero_pivot() {
        let m = exact(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det().unwrap().value.to_f64(), -1.0);
        let s = exact(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]]);
        assert_eq!(s.det().unwrap().value.to_f64(), 0.0);
    }

    #[test]
    fn float_det_matches_exact() {
        let e = exact(&[&[3, 2, 0], &[2, 3, 1], &[0, 1, 3]]);
        let f = e.in_mode(Mode::Float).unwrap();
        let de = e.det().unwrap().value.to_f64();
        let df = f.det().unwrap().value.to_f64();
        assert!((de - df).abs() < 1e-12);
    }

    #[test]
    fn wide_det() {
        let e = exact(&[&[3, 2], &[2, 3]]);
        let w = e.in_mode(Mode::Extended).unwrap();
        assert!((w.det().unwrap().value.to_f64() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn ranks() {
        // (1 + j*k) over j,k = 1..4 has rank 2: columns are affine in k.
        let m = Matrix::from_fn(4, 4, |i, j| Scalar::from_int(1 + (i as i64 + 1) * (j as i64 + 1)));
        assert_eq!(m.rank(1e-9), 2);
        let f = m.in_mode(Mode::Float).unwrap();
        assert_eq!(f.rank(1e-9), 2);
        // Squaring entrywise bumps the rank to 3.
        let sq = Matrix::from_fn(4, 4, |i, j| m.get(i, j).powi(2));
        assert_eq!(sq.rank(1e-9), 3);
    }
}
