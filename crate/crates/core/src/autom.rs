//! Real linear automorphisms of the plane and of spacetime coordinates
//! `(t, x, y, z)`: polar decomposition, the `B±` frequency maps, reflections
//! and rotations built from them, adjoints, and conjugation by an axis
//! reflection.

use core::ops::Mul;

use crate::clifford::{Multivector, Signature};
use crate::math;
use crate::{Error, Result};

pub type Vector2 = [f64; 2];
pub type Vector4 = [f64; 4];

/// Operations shared by [`LinearMap2`] and [`LinearMap4`].
pub trait Automorphism: Sized + Copy {
    fn det(&self) -> f64;
    fn inverse(&self) -> Self;
    /// Adjoint with respect to the Euclidean pairing, i.e. the transpose.
    fn adjoint(&self) -> Self;
    /// `U_e M U_e` where `U_e` flips coordinate `axis`.
    fn conj_by_axis_reflection(&self, axis: usize) -> Self;
    fn max_abs_diff(&self, other: &Self) -> f64;
}

/// A non-singular real 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearMap2 {
    m: [[f64; 2]; 2],
    det: f64,
}

impl LinearMap2 {
    pub const IDENTITY: Self = Self {
        m: [[1.0, 0.0], [0.0, 1.0]],
        det: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::from_rows([[a, b], [c, d]])
    }

    pub fn from_rows(m: [[f64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Singular);
        }
        Ok(Self { m, det })
    }

    pub fn diag(a: f64, b: f64) -> Result<Self> {
        Self::new(a, 0.0, 0.0, b)
    }

    /// Counter-clockwise rotation by `theta`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = math::sin_cos(theta);
        Self {
            m: [[c, -s], [s, c]],
            det: 1.0,
        }
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.m[row][col]
    }

    pub fn apply(&self, v: Vector2) -> Vector2 {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        math::abs(self.m[0][1] - self.m[1][0]) <= tol
    }

    /// `‖Mᵀ M − I‖_max ≤ tol`.
    pub fn is_orthogonal(&self, tol: f64) -> bool {
        (self.adjoint() * *self).max_abs_diff(&Self::IDENTITY) <= tol
    }

    /// Singular values, largest first.
    pub fn singular_values(&self) -> [f64; 2] {
        let [[a, b], [c, d]] = self.m;
        let s1 = math::hypot(a + d, c - b);
        let s2 = math::hypot(a - d, c + b);
        [(s1 + s2) / 2.0, math::abs(s1 - s2) / 2.0]
    }

    /// Eigenvalues of a symmetric matrix, largest first.
    pub fn symmetric_eigenvalues(&self) -> [f64; 2] {
        let [[a, b], [_, d]] = self.m;
        let mean = (a + d) / 2.0;
        let r = math::hypot((a - d) / 2.0, b);
        [mean + r, mean - r]
    }

    /// Signed permutation structure: for each output coordinate, the source
    /// coordinate and its sign. `None` unless every row holds a single `±1`.
    pub fn signed_permutation(&self) -> Option<[(usize, f64); 2]> {
        signed_permutation_rows(&self.m.map(|r| r.to_vec()))
            .map(|v| [v[0], v[1]])
    }
}

impl Mul for LinearMap2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut m = [[0.0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j];
            }
        }
        Self {
            m,
            det: self.det * o.det,
        }
    }
}

impl Automorphism for LinearMap2 {
    fn det(&self) -> f64 {
        self.det
    }

    fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        let s = 1.0 / self.det;
        Self {
            m: [[d * s, -b * s], [-c * s, a * s]],
            det: s,
        }
    }

    fn adjoint(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        Self {
            m: [[a, c], [b, d]],
            det: self.det,
        }
    }

    fn conj_by_axis_reflection(&self, axis: usize) -> Self {
        assert!(axis < 2, "axis out of range");
        let mut out = *self;
        for (i, row) in out.m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                if (i == axis) != (j == axis) {
                    *v = -*v;
                }
            }
        }
        out
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max(math::abs(self.m[i][j] - other.m[i][j]));
            }
        }
        d
    }
}

/// Right polar decomposition `A = R·S` with `R` orthogonal and `S`
/// symmetric positive definite. When `det A < 0` the reflection stays in
/// `R` (`det R = −1`). The left form `A = T·R` follows as `T = R S Rᵀ`.
pub fn polar_decompose(a: &LinearMap2) -> Result<(LinearMap2, LinearMap2)> {
    if a.det == 0.0 {
        return Err(Error::Singular);
    }
    let [[p, q], [r, s]] = a.m;
    // R ∝ A + sign(det A)·cof(A), which is orthogonal up to scale in 2D.
    let sign = if a.det > 0.0 { 1.0 } else { -1.0 };
    let m = [[p + sign * s, q - sign * r], [r - sign * q, s + sign * p]];
    let scale = math::hypot(m[0][0], m[1][0]);
    let rot = LinearMap2 {
        m: [[m[0][0] / scale, m[0][1] / scale], [m[1][0] / scale, m[1][1] / scale]],
        det: sign,
    };
    let mut sym = rot.adjoint() * *a;
    let off = 0.5 * (sym.m[0][1] + sym.m[1][0]);
    sym.m[0][1] = off;
    sym.m[1][0] = off;
    sym.det = a.det * sign;
    Ok((rot, sym))
}

/// The frequency maps `B₊ = (A⁻¹)ᵀ` and `B₋ = (1/det A)[[d, c], [b, a]]`
/// together with their common determinant `1/det A`.
pub fn b_matrices(a: &LinearMap2) -> Result<(LinearMap2, LinearMap2, f64)> {
    if a.det == 0.0 {
        return Err(Error::Singular);
    }
    let [[p, q], [r, s]] = a.m;
    let inv_det = 1.0 / a.det;
    let b_plus = a.inverse().adjoint();
    let b_minus = LinearMap2::new(s * inv_det, r * inv_det, q * inv_det, p * inv_det)?;
    let tol = 1e-12 * math::abs(inv_det).max(1.0);
    if math::abs(b_plus.det() - inv_det) > tol || math::abs(b_minus.det() - inv_det) > tol {
        return Err(Error::Precondition("B± determinants disagree with 1/det A"));
    }
    Ok((b_plus, b_minus, inv_det))
}

fn plane_vector(v: Vector2) -> Multivector {
    let mut m = Multivector::zero(Signature::CL20);
    m.set(0b01, v[0]);
    m.set(0b10, v[1]);
    m
}

/// Reflection `U_n x = −n⁻¹ x n` at the line through the origin normal to
/// `n`, evaluated with the geometric product of `Cl(2,0)`.
pub fn reflect(n: Vector2, x: Vector2) -> Result<Vector2> {
    let nn = n[0] * n[0] + n[1] * n[1];
    if nn == 0.0 {
        return Err(Error::ZeroVector);
    }
    let nv = plane_vector(n);
    let n_inv = nv * (1.0 / nn);
    let out = -(n_inv * plane_vector(x) * nv);
    Ok([out.get(0b01), out.get(0b10)])
}

/// Matrix of `U_n`: `x − 2 (x·n̂) n̂`.
pub fn reflection_matrix(n: Vector2) -> Result<LinearMap2> {
    let nn = n[0] * n[0] + n[1] * n[1];
    if nn == 0.0 {
        return Err(Error::ZeroVector);
    }
    let (a, b) = (n[0], n[1]);
    LinearMap2::new(
        1.0 - 2.0 * a * a / nn,
        -2.0 * a * b / nn,
        -2.0 * a * b / nn,
        1.0 - 2.0 * b * b / nn,
    )
}

/// `R_ab` acting as `x ↦ U_b U_a x`: rotation by twice the angle from `a` to
/// `b`, with `R_ab⁻¹ = R_ba`.
pub fn rotation_from_reflections(a: Vector2, b: Vector2) -> Result<LinearMap2> {
    let first = reflection_matrix(a)?;
    let second = reflection_matrix(b)?;
    // Columns from the Clifford route keep both constructions honest.
    let c0 = reflect(b, reflect(a, [1.0, 0.0])?)?;
    let c1 = reflect(b, reflect(a, [0.0, 1.0])?)?;
    let composed = LinearMap2::new(c0[0], c1[0], c0[1], c1[1])?;
    debug_assert!(composed.max_abs_diff(&(second * first)) < 1e-12);
    Ok(composed)
}

/// A non-singular real 4×4 matrix on spacetime coordinates `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearMap4 {
    m: [[f64; 4]; 4],
    det: f64,
}

impl LinearMap4 {
    pub const IDENTITY: Self = Self {
        m: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
        det: 1.0,
    };

    pub fn from_rows(m: [[f64; 4]; 4]) -> Result<Self> {
        let det = det4(&m);
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Singular);
        }
        Ok(Self { m, det })
    }

    /// Flips coordinate `axis`.
    pub fn axis_reflection(axis: usize) -> Self {
        let mut m = Self::IDENTITY;
        m.m[axis][axis] = -1.0;
        m.det = -1.0;
        m
    }

    /// Exchanges coordinates `a` and `b`.
    pub fn axis_swap(a: usize, b: usize) -> Self {
        let mut m = Self::IDENTITY;
        if a != b {
            m.m[a][a] = 0.0;
            m.m[b][b] = 0.0;
            m.m[a][b] = 1.0;
            m.m[b][a] = 1.0;
            m.det = -1.0;
        }
        m
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        self.m
    }

    pub fn apply(&self, v: Vector4) -> Vector4 {
        let mut out = [0.0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.m[i][j] * v[j]).sum();
        }
        out
    }

    pub fn signed_permutation(&self) -> Option<[(usize, f64); 4]> {
        signed_permutation_rows(&self.m.map(|r| r.to_vec()))
            .map(|v| [v[0], v[1], v[2], v[3]])
    }
}

impl Mul for LinearMap4 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.m[i][k] * o.m[k][j]).sum();
            }
        }
        Self {
            m,
            det: self.det * o.det,
        }
    }
}

impl Automorphism for LinearMap4 {
    fn det(&self) -> f64 {
        self.det
    }

    fn inverse(&self) -> Self {
        // Gauss-Jordan with partial pivoting; non-singularity is an invariant.
        let mut a = self.m;
        let mut inv = Self::IDENTITY.m;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&x, &y| math::abs(a[x][col]).total_cmp(&math::abs(a[y][col])))
                .unwrap_or(col);
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col];
            for j in 0..4 {
                a[col][j] /= p;
                inv[col][j] /= p;
            }
            for row in 0..4 {
                if row != col {
                    let f = a[row][col];
                    for j in 0..4 {
                        a[row][j] -= f * a[col][j];
                        inv[row][j] -= f * inv[col][j];
                    }
                }
            }
        }
        Self {
            m: inv,
            det: 1.0 / self.det,
        }
    }

    fn adjoint(&self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.m[j][i];
            }
        }
        Self { m, det: self.det }
    }

    fn conj_by_axis_reflection(&self, axis: usize) -> Self {
        assert!(axis < 4, "axis out of range");
        let mut out = *self;
        for (i, row) in out.m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                if (i == axis) != (j == axis) {
                    *v = -*v;
                }
            }
        }
        out
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max(math::abs(self.m[i][j] - other.m[i][j]));
            }
        }
        d
    }
}

/// Newton polar iteration `R ← ½(R + R⁻ᵀ)` for `A = R·S`, stopped once the
/// update falls below `1e-13` (max-norm).
pub fn polar_decompose4(a: &LinearMap4) -> Result<(LinearMap4, LinearMap4)> {
    if a.det == 0.0 {
        return Err(Error::Singular);
    }
    let mut r = *a;
    for _ in 0..100 {
        let inv_t = r.inverse().adjoint();
        let mut next = r;
        for i in 0..4 {
            for j in 0..4 {
                next.m[i][j] = 0.5 * (r.m[i][j] + inv_t.m[i][j]);
            }
        }
        next.det = det4(&next.m);
        let delta = next.max_abs_diff(&r);
        r = next;
        if delta < 1e-13 {
            break;
        }
    }
    let mut s = r.adjoint() * *a;
    for i in 0..4 {
        for j in (i + 1)..4 {
            let v = 0.5 * (s.m[i][j] + s.m[j][i]);
            s.m[i][j] = v;
            s.m[j][i] = v;
        }
    }
    s.det = det4(&s.m);
    Ok((r, s))
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&x, &y| math::abs(a[x][col]).total_cmp(&math::abs(a[y][col])))
            .unwrap_or(col);
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= a[col][col];
        for row in (col + 1)..4 {
            let f = a[row][col] / a[col][col];
            for j in col..4 {
                a[row][j] -= f * a[col][j];
            }
        }
    }
    det
}

fn signed_permutation_rows(rows: &[alloc::vec::Vec<f64>]) -> Option<alloc::vec::Vec<(usize, f64)>> {
    let n = rows.len();
    let mut used = alloc::vec![false; n];
    let mut out = alloc::vec::Vec::with_capacity(n);
    for row in rows {
        let nz: alloc::vec::Vec<usize> = (0..n).filter(|&j| row[j] != 0.0).collect();
        if nz.len() != 1 || math::abs(row[nz[0]]) != 1.0 || used[nz[0]] {
            return None;
        }
        used[nz[0]] = true;
        out.push((nz[0], row[nz[0]]));
    }
    Some(out)
}
