//! Real quaternions `q = r + i·𝒊 + j·𝒋 + k·𝒌` with `𝒊𝒋 = 𝒌` and
//! `𝒊² = 𝒋² = 𝒌² = 𝒊𝒋𝒌 = −1`.

use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::math;
use crate::{Error, Result};

/// Tolerance used when checking that a kernel axis is a unit pure quaternion.
pub const AXIS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub r: f64,
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(r: f64, i: f64, j: f64, k: f64) -> Self {
        Self { r, i, j, k }
    }

    #[inline]
    pub const fn real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub const fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 4] {
        [self.r, self.i, self.j, self.k]
    }

    /// Builds `r + 𝒊·i + j·𝒋 + 𝒊·k·𝒋`, keeping every 𝒊 on the left and every
    /// 𝒋 on the right of its term. Evaluated with actual products, so it is
    /// the ij-form read back through the multiplication table.
    pub fn from_ij_form(r: f64, i: f64, j: f64, k: f64) -> Self {
        Self::real(r) + Self::I * i + Self::J * j + Self::I * Self::real(k) * Self::J
    }

    /// Hamilton product.
    #[inline]
    pub fn mul_q(self, b: Self) -> Self {
        let a = self;
        Self {
            r: a.r * b.r - a.i * b.i - a.j * b.j - a.k * b.k,
            i: a.r * b.i + a.i * b.r + a.j * b.k - a.k * b.j,
            j: a.r * b.j - a.i * b.k + a.j * b.r + a.k * b.i,
            k: a.r * b.k + a.i * b.j - a.j * b.i + a.k * b.r,
        }
    }

    /// Quaternion conjugate `q̃`: negates the three imaginary parts.
    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.r, -self.i, -self.j, -self.k)
    }

    /// `|q|² = q q̃`.
    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.r * self.r + self.i * self.i + self.j * self.j + self.k * self.k
    }

    #[inline]
    pub fn norm(self) -> f64 {
        math::sqrt(self.norm_sqr())
    }

    /// Grade-zero part `⟨q⟩₀`.
    #[inline]
    pub fn scalar_part(self) -> f64 {
        self.r
    }

    #[inline]
    pub fn is_pure(self, tol: f64) -> bool {
        math::abs(self.r) <= tol
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sqr();
        (n > 0.0).then(|| self.conj() / n)
    }

    /// The `±` split `q± = ½(q ± 𝒊 q 𝒋)`; returns `(q₊, q₋)`.
    pub fn split_pm(self) -> (Self, Self) {
        let iqj = Self::I * self * Self::J;
        ((self + iqj) * 0.5, (self - iqj) * 0.5)
    }

    /// Components in the complex `i`-plane of the two split halves:
    /// `q₊ = c₊ (1+𝒌)/2`, `q₋ = c₋ (1−𝒌)/2` with `c± ∈ span{1, 𝒊}`, returned as
    /// `((re₊, im₊), (re₋, im₋))`.
    #[inline]
    pub(crate) fn split_complex(self) -> ((f64, f64), (f64, f64)) {
        (
            (self.r + self.k, self.i - self.j),
            (self.r - self.k, self.i + self.j),
        )
    }

    /// Inverse of [`split_complex`](Self::split_complex): `c₊(1+𝒌)/2 + c₋(1−𝒌)/2`.
    #[inline]
    pub(crate) fn from_split_complex(plus: (f64, f64), minus: (f64, f64)) -> Self {
        let (a, b) = plus;
        let (c, d) = minus;
        Self::new(
            0.5 * (a + c),
            0.5 * (b + d),
            0.5 * (d - b),
            0.5 * (a - c),
        )
    }

    /// `cos(angle) + axis·sin(angle)` for a unit pure quaternion `axis`.
    pub fn axis_exp(axis: Self, angle: f64) -> Result<Self> {
        if !axis.is_pure(AXIS_TOLERANCE) {
            return Err(Error::Precondition("kernel axis must be a pure quaternion"));
        }
        if math::abs(axis.norm() - 1.0) > AXIS_TOLERANCE {
            return Err(Error::Precondition("kernel axis must have unit length"));
        }
        let (s, c) = math::sin_cos(angle);
        Ok(Self::new(c, axis.i * s, axis.j * s, axis.k * s))
    }

    /// `e^{𝒊θ}`.
    #[inline]
    pub fn exp_i(angle: f64) -> Self {
        let (s, c) = math::sin_cos(angle);
        Self::new(c, s, 0.0, 0.0)
    }

    /// `e^{𝒋θ}`.
    #[inline]
    pub fn exp_j(angle: f64) -> Self {
        let (s, c) = math::sin_cos(angle);
        Self::new(c, 0.0, s, 0.0)
    }

    /// True when `q` lies in `span{1, 𝒊}`, i.e. `𝒊q = q𝒊`.
    pub fn commutes_with_i(self, tol: f64) -> bool {
        math::abs(self.j) <= tol && math::abs(self.k) <= tol
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        math::abs(d.r)
            .max(math::abs(d.i))
            .max(math::abs(d.j))
            .max(math::abs(d.k))
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.r, self.i, self.j, self.k)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        Self::new(self.r + b.r, self.i + b.i, self.j + b.j, self.k + b.k)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        Self::new(self.r - b.r, self.i - b.i, self.j - b.j, self.k - b.k)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.r, -self.i, -self.j, -self.k)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        self.mul_q(b)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.r * s, self.i * s, self.j * s, self.k * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        self * (1.0 / s)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, b: Self) {
        *self = *self - b;
    }
}

impl MulAssign<f64> for Quaternion {
    #[inline]
    fn mul_assign(&mut self, s: f64) {
        *self = *self * s;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    const Q: Quaternion = Quaternion::new(0.3, -1.2, 0.7, 2.5);

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    #[test]
    fn basis_products() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        for u in [i, j, k] {
            assert_eq!(u * u, -Quaternion::ONE);
        }
        assert_eq!(i * j * k, -Quaternion::ONE);
        assert_eq!(Quaternion::ONE * Q, Q);
        assert_eq!(Q * Quaternion::ONE, Q);
    }

    #[test]
    fn sum_difference_product() {
        // (𝒊+𝒋)(𝒊−𝒋) = 𝒊𝒊 − 𝒊𝒋 + 𝒋𝒊 − 𝒋𝒋 = −1 − 𝒌 − 𝒌 + 1 = −2𝒌
        let a = Quaternion::I + Quaternion::J;
        let b = Quaternion::I - Quaternion::J;
        assert_eq!(a * b, Quaternion::new(0.0, 0.0, 0.0, -2.0));
    }

    #[test]
    fn conjugate_and_norm() {
        assert_eq!(Quaternion::ONE.conj(), Quaternion::ONE);
        assert_eq!(Quaternion::I.conj(), -Quaternion::I);
        assert_eq!(
            Quaternion::new(1.0, 1.0, 1.0, 1.0).conj(),
            Quaternion::new(1.0, -1.0, -1.0, -1.0)
        );
        assert_eq!(Quaternion::ZERO.norm(), 0.0);
        assert_eq!(Quaternion::K.norm(), 1.0);
        assert_eq!(Quaternion::new(1.0, 1.0, 1.0, 1.0).norm(), 2.0);
        let qq = Q * Q.conj();
        assert!(close(qq, Quaternion::real(Q.norm_sqr()), 1e-14));
    }

    #[test]
    fn scalar_part_and_cyclic() {
        assert_eq!(Quaternion::I.scalar_part(), 0.0);
        assert_eq!(Quaternion::new(3.0, 0.0, 0.0, -2.0).scalar_part(), 3.0);
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!((i * j * k).scalar_part(), -1.0);
        assert_eq!((j * k * i).scalar_part(), -1.0);
        assert_eq!((k * i * j).scalar_part(), -1.0);
    }

    #[test]
    fn split_examples() {
        let half = 0.5;
        let (p, m) = Quaternion::ONE.split_pm();
        assert_eq!(p, Quaternion::new(half, 0.0, 0.0, half));
        assert_eq!(m, Quaternion::new(half, 0.0, 0.0, -half));

        let (p, m) = Quaternion::K.split_pm();
        assert_eq!(p, Quaternion::new(half, 0.0, 0.0, half));
        assert_eq!(m, Quaternion::new(-half, 0.0, 0.0, half));

        // 𝒊(1±𝒌)/2 = (𝒊 ∓ 𝒋)/2
        let (p, m) = Quaternion::I.split_pm();
        assert_eq!(p, Quaternion::I * Quaternion::new(half, 0.0, 0.0, half));
        assert_eq!(m, Quaternion::I * Quaternion::new(half, 0.0, 0.0, -half));
    }

    #[test]
    fn split_matches_closed_form() {
        let one_pk = Quaternion::new(0.5, 0.0, 0.0, 0.5);
        let one_mk = Quaternion::new(0.5, 0.0, 0.0, -0.5);
        let (p, m) = Q.split_pm();
        let p_left = Quaternion::new(Q.r + Q.k, Q.i - Q.j, 0.0, 0.0) * one_pk;
        let m_left = Quaternion::new(Q.r - Q.k, Q.i + Q.j, 0.0, 0.0) * one_mk;
        let p_right = one_pk * Quaternion::new(Q.r + Q.k, 0.0, Q.j - Q.i, 0.0);
        let m_right = one_mk * Quaternion::new(Q.r - Q.k, 0.0, Q.j + Q.i, 0.0);
        assert!(close(p, p_left, 1e-15) && close(p, p_right, 1e-15));
        assert!(close(m, m_left, 1e-15) && close(m, m_right, 1e-15));
        let ((a, b), (c, d)) = Q.split_complex();
        assert!(close(Quaternion::from_split_complex((a, b), (c, d)), Q, 1e-15));
    }

    #[test]
    fn ij_form_reconstructs() {
        let q = Quaternion::from_ij_form(Q.r, Q.i, Q.j, Q.k);
        assert_eq!(q, Q);
    }

    #[test]
    fn axis_exponentials() {
        assert_eq!(Quaternion::axis_exp(Quaternion::I, 0.0).unwrap(), Quaternion::ONE);
        let e = Quaternion::axis_exp(Quaternion::J, FRAC_PI_2).unwrap();
        assert!(close(e, Quaternion::J, 1e-15));
        let e = Quaternion::axis_exp(Quaternion::I, FRAC_PI_3).unwrap();
        assert!(close(e, Quaternion::new(0.5, 3f64.sqrt() / 2.0, 0.0, 0.0), 1e-15));
    }

    #[test]
    fn axis_exp_rejects_bad_axes() {
        assert!(matches!(
            Quaternion::axis_exp(Quaternion::I * 2.0, 1.0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            Quaternion::axis_exp(Quaternion::new(0.1, 1.0, 0.0, 0.0), 1.0),
            Err(Error::Precondition(_))
        ));
        let axis = Quaternion::new(0.0, 1.0, 1.0, 1.0) / 3f64.sqrt();
        assert!(Quaternion::axis_exp(axis, 0.4).is_ok());
    }
}
