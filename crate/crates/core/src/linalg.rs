//! Small dense linear algebra in the Euclidean space Rⁿ.
//!
//! Dimensions here are desk scale (n ≤ 16 for simplices, n ≤ 3 for grids), so
//! everything is plain row-major `Vec<f64>` storage with partial-pivoting
//! Gaussian elimination.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative pivot threshold used by [`solve_linear`] and [`Lu`].
pub const PIVOT_THRESHOLD: f64 = 1e-12;

/// A point (or displacement) in Rⁿ with finite coordinates.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    /// Builds a vector, rejecting empty input and non-finite coordinates.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("vector must have dimension >= 1".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Vector(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Vector(vec![0.0; dim])
    }

    /// The k-th standard basis vector of Rⁿ.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.0[k] = 1.0;
        v
    }

    /// The all-ones vector.
    pub fn ones(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Vector(vec![1.0; dim])
    }

    /// Wraps coordinates that the caller already knows to be valid.
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Vector(coords)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    #[inline]
    pub fn dot(&self, other: &Vector) -> f64 {
        dot(&self.0, &other.0)
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Euclidean distance to `other`.
    #[inline]
    pub fn dist(&self, other: &Vector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|c| c * s).collect())
    }

    /// `(1 − λ)·self + λ·other`.
    pub fn lerp(&self, other: &Vector, lambda: f64) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (1.0 - lambda) * a + lambda * b)
                .collect(),
        )
    }

    /// `self + s·other` in place.
    pub fn axpy(&mut self, s: f64, other: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += s * b;
        }
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Vector::new(v)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Vector> for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        &self + &rhs
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        &self - &rhs
    }
}

impl AddAssign<&Vector> for Vector {
    fn add_assign(&mut self, rhs: &Vector) {
        self.axpy(1.0, rhs);
    }
}

impl SubAssign<&Vector> for Vector {
    fn sub_assign(&mut self, rhs: &Vector) {
        self.axpy(-1.0, rhs);
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, s: f64) -> Vector {
        self.scale(s)
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    fn mul(self, s: f64) -> Vector {
        self.scale(s)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vector::dim);
        let mut m = Matrix::zeros(r, c);
        for (j, v) in cols.iter().enumerate() {
            for i in 0..r {
                m[(i, j)] = v[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.cols)?;
        Ok(Vector::from_raw((0..self.rows).map(|i| dot(self.row(i), x.coords())).collect()))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Frobenius norm; an upper bound on the spectral norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorization with partial (row) pivoting, `P·A = L·U`.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// Factors a square matrix. Fails with `SingularMatrix` when a pivot falls
    /// below [`PIVOT_THRESHOLD`] times the largest initial entry magnitude.
    pub fn factor(a: &Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
        }
        let n = a.rows();
        let threshold = PIVOT_THRESHOLD * a.max_abs();
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;

        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, lu[i * n + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pivot > threshold) {
                return Err(Error::SingularMatrix { pivot, threshold });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let d = lu[k * n + k];
            for i in (k + 1)..n {
                let f = lu[i * n + k] / d;
                lu[i * n + k] = f;
                if f != 0.0 {
                    for j in (k + 1)..n {
                        lu[i * n + j] -= f * lu[k * n + j];
                    }
                }
            }
        }
        Ok(Lu { n, lu, perm, sign })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve_slice(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s = dot(&self.lu[i * n..i * n + i], &x[..i]);
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s = dot(&self.lu[i * n + i + 1..(i + 1) * n], &x[i + 1..]);
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        x
    }

    pub fn solve(&self, b: &Vector) -> Result<Vector> {
        b.check_dim(self.n)?;
        Ok(Vector::from_raw(self.solve_slice(b.coords())))
    }

    pub fn determinant(&self) -> f64 {
        (0..self.n).fold(self.sign, |d, i| d * self.lu[i * self.n + i])
    }

    pub fn inverse(&self) -> Matrix {
        let n = self.n;
        let mut inv = Matrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|x| *x = 0.0);
            e[j] = 1.0;
            let col = self.solve_slice(&e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }
}

/// Solves `A·x = b` by Gaussian elimination with row pivoting.
pub fn solve_linear(a: &Matrix, b: &Vector) -> Result<Vector> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    b.check_dim(a.rows())?;
    Lu::factor(a)?.solve(b)
}

/// Determinant, returning 0 for matrices that are singular to working precision.
pub fn determinant(a: &Matrix) -> f64 {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows();
    let mut m = a.data.clone();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i * n + k].abs().total_cmp(&m[j * n + k].abs())).unwrap();
        if m[p * n + k] == 0.0 {
            return 0.0;
        }
        if p != k {
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let d = m[k * n + k];
        det *= d;
        for i in (k + 1)..n {
            let f = m[i * n + k] / d;
            for j in (k + 1)..n {
                m[i * n + j] -= f * m[k * n + j];
            }
        }
    }
    det
}

/// A hyperplane `{x : ⟨normal, x⟩ = offset}`. Polytopes read it as the closed
/// half-space `⟨normal, x⟩ ≤ offset`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Vector,
    offset: f64,
}

impl Hyperplane {
    pub fn new(normal: Vector, offset: f64) -> Result<Self> {
        if !(normal.norm() > 0.0) {
            return Err(Error::InvalidArgument("hyperplane normal must be nonzero".into()));
        }
        if !offset.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// Signed Euclidean distance of `x` from the hyperplane; negative on the
    /// `≤` side.
    #[inline]
    pub fn signed_distance(&self, x: &Vector) -> f64 {
        (self.normal.dot(x) - self.offset) / self.normal.norm()
    }

    /// Same hyperplane with unit normal.
    pub fn normalized(&self) -> Hyperplane {
        let n = self.normal.norm();
        Hyperplane { normal: self.normal.scale(1.0 / n), offset: self.offset / n }
    }

    /// The hyperplane of the translated set `{x − a : ⟨normal, x⟩ = offset}`.
    pub fn translated(&self, a: &Vector) -> Hyperplane {
        Hyperplane { normal: self.normal.clone(), offset: self.offset - self.normal.dot(a) }
    }
}

/// Affine weights of a point with respect to the vertices of a simplex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarycentricCoords {
    weights: Vec<f64>,
}

impl BarycentricCoords {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// All weights strictly positive: the point is in the open simplex.
    pub fn is_strictly_inside(&self) -> bool {
        self.min_weight() > 0.0
    }

    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Barycentric coordinates of `p` with respect to `n + 1` affinely independent
/// vertices in Rⁿ. Weights go negative outside the simplex.
pub fn barycentric(vertices: &[Vector], p: &Vector) -> Result<BarycentricCoords> {
    let n = p.dim();
    if vertices.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: vertices.len() });
    }
    for v in vertices {
        v.check_dim(n)?;
    }
    let apex = &vertices[n];
    let edges: Vec<Vector> = vertices[..n].iter().map(|v| v - apex).collect();
    let mu = solve_linear(&Matrix::from_columns(&edges), &(p - apex))?;
    let mut weights = mu.into_inner();
    let last = 1.0 - weights.iter().sum::<f64>();
    weights.push(last);
    Ok(BarycentricCoords { weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(Vector::new(vec![]).is_err());
        assert_eq!(Vector::new(vec![1.0, f64::NAN]), Err(Error::NonFinite));
        assert_eq!(Vector::new(vec![f64::INFINITY]), Err(Error::NonFinite));
    }

    #[test]
    fn identity_solve() {
        let x = solve_linear(&Matrix::identity(3), &v(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(x, v(&[1.0, 2.0, 3.0]));
    }

    #[test]
    fn diagonal_solve() {
        let a = Matrix::from_rows(&[[2.0, 0.0], [0.0, 4.0]]).unwrap();
        let x = solve_linear(&a, &v(&[2.0, 8.0])).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix_is_singular() {
        let a = Matrix::zeros(2, 2);
        assert!(matches!(solve_linear(&a, &v(&[1.0, 1.0])), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn rank_deficient_is_singular() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(matches!(solve_linear(&a, &v(&[1.0, 1.0])), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let x = solve_linear(&a, &v(&[3.0, 5.0])).unwrap();
        assert_eq!(x, v(&[5.0, 3.0]));
    }

    #[test]
    fn dimension_checks() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(solve_linear(&a, &v(&[1.0, 1.0])), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(
            solve_linear(&Matrix::identity(2), &v(&[1.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = Matrix::from_rows(&[[4.0, 3.0], [6.0, 3.0]]).unwrap();
        assert!((determinant(&a) + 6.0).abs() < 1e-12);
        let lu = Lu::factor(&a).unwrap();
        assert!((lu.determinant() + 6.0).abs() < 1e-12);
        let inv = lu.inverse();
        assert!((inv[(0, 0)] + 0.5).abs() < 1e-12);
        assert!((inv[(0, 1)] - 0.5).abs() < 1e-12);
        assert!((inv[(1, 0)] - 1.0).abs() < 1e-12);
        assert!((inv[(1, 1)] + 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(determinant(&Matrix::zeros(3, 3)), 0.0);
    }

    #[test]
    fn barycentric_vertex_and_outside() {
        let tri = [v(&[0.0, 0.0]), v(&[1.0, 0.0]), v(&[0.0, 1.0])];
        let w = barycentric(&tri, &v(&[1.0, 0.0])).unwrap();
        for (a, b) in w.weights().iter().zip([0.0, 1.0, 0.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        // (1,1) = −1·(0,0) + 1·(1,0) + 1·(0,1), weights summing to 1.
        let w = barycentric(&tri, &v(&[1.0, 1.0])).unwrap();
        for (a, b) in w.weights().iter().zip([-1.0, 1.0, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(!w.is_strictly_inside());
    }

    #[test]
    fn barycentric_degenerate() {
        let tri = [v(&[0.0, 0.0]), v(&[1.0, 1.0]), v(&[2.0, 2.0])];
        assert!(matches!(barycentric(&tri, &v(&[0.5, 0.5])), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn hyperplane_distance() {
        let h = Hyperplane::new(v(&[3.0, 4.0]), 5.0).unwrap();
        assert!((h.signed_distance(&v(&[0.0, 0.0])) + 1.0).abs() < 1e-15);
        assert!(Hyperplane::new(v(&[0.0, 0.0]), 1.0).is_err());
        let t = h.translated(&v(&[1.0, 0.0]));
        assert!((t.signed_distance(&v(&[-1.0, 0.0])) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn serde_round_trip_validates() {
        let x: Vector = serde_json::from_str("[1.0, 2.5]").unwrap();
        assert_eq!(x, v(&[1.0, 2.5]));
        assert!(serde_json::from_str::<Vector>("[]").is_err());
    }
}
