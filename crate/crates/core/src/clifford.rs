//! Dense multivectors of `Cl(p,q)` for `p + q ≤ 4`.
//!
//! Blades are addressed by bitmask: bit `b` set means basis vector `b` is a
//! factor, and the stored coefficient multiplies the product of those vectors
//! in ascending index order. Vectors `0..p` square to `+1`, vectors `p..p+q`
//! to `−1`. For the spacetime algebra `Cl(3,1)` the index order is
//! `(e1, e2, e3, e0)`, so the Euclidean blades of `Cl(3,0)` occupy masks
//! `0..8` and `e0` is bit 3. Note that mask `0b1111` is `e1e2e3e0 = −i4`.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::math;
use crate::quat::Quaternion;
use crate::{Error, Result};

/// Largest supported dimension `p + q`.
pub const MAX_DIM: usize = 4;
/// Coefficient slots per multivector.
pub const MAX_BLADES: usize = 1 << MAX_DIM;

const fn blade_sign(p: u8, q: u8, a: usize, b: usize) -> i8 {
    let n = (p + q) as usize;
    let mut swaps = 0u32;
    let mut bit = 0;
    while bit < n {
        if b & (1 << bit) != 0 {
            // factors of `a` with a higher index must hop over this one
            swaps += (a >> (bit + 1)).count_ones();
        }
        bit += 1;
    }
    let mut sign: i8 = if swaps.is_multiple_of(2) { 1 } else { -1 };
    let common = a & b;
    let mut v = p as usize;
    while v < n {
        if common & (1 << v) != 0 {
            sign = -sign;
        }
        v += 1;
    }
    sign
}

const fn build_tables() -> [[[i8; MAX_BLADES]; MAX_BLADES]; 25] {
    let mut t = [[[0i8; MAX_BLADES]; MAX_BLADES]; 25];
    let mut p = 0u8;
    while p <= 4 {
        let mut q = 0u8;
        while p + q <= 4 {
            let size = 1usize << (p + q);
            let mut a = 0;
            while a < size {
                let mut b = 0;
                while b < size {
                    t[(p * 5 + q) as usize][a][b] = blade_sign(p, q, a, b);
                    b += 1;
                }
                a += 1;
            }
            q += 1;
        }
        p += 1;
    }
    t
}

/// Sign of `blade(a) · blade(b) = sign · blade(a ^ b)` for every supported
/// signature, computed at compile time.
static SIGN_TABLES: [[[i8; MAX_BLADES]; MAX_BLADES]; 25] = build_tables();

const CL31_TABLE: [[i8; MAX_BLADES]; MAX_BLADES] = build_tables()[3 * 5 + 1];
const MASK_E0: usize = 0b1000;
const MASK_I3: usize = 0b0111;
const MASK_E1230: usize = 0b1111;

// The spacetime transforms rely on e0² = i3² = i4² = −1 under this ordering.
const _: () = assert!(CL31_TABLE[MASK_E0][MASK_E0] == -1);
const _: () = assert!(CL31_TABLE[MASK_I3][MASK_I3] == -1);
const _: () = assert!(CL31_TABLE[MASK_E1230][MASK_E1230] == -1);
// e0·(e1e2e3) = −(e1e2e3e0), so i4 is stored as −1 on mask 0b1111.
const _: () = assert!(CL31_TABLE[MASK_E0][MASK_I3] == -1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: u8,
    q: u8,
}

impl Signature {
    /// Quaternion-isomorphic `Cl(0,2)`.
    pub const CL02: Self = Self { p: 0, q: 2 };
    /// Euclidean plane algebra `Cl(2,0)`.
    pub const CL20: Self = Self { p: 2, q: 0 };
    /// Euclidean space algebra `Cl(3,0)`.
    pub const CL30: Self = Self { p: 3, q: 0 };
    /// Spacetime algebra `Cl(3,1)`, basis order `(e1, e2, e3, e0)`.
    pub const CL31: Self = Self { p: 3, q: 1 };

    pub fn new(p: u8, q: u8) -> Result<Self> {
        if (p as usize) + (q as usize) > MAX_DIM {
            return Err(Error::UnsupportedSignature(p, q));
        }
        Ok(Self { p, q })
    }

    pub fn p(self) -> u8 {
        self.p
    }

    pub fn q(self) -> u8 {
        self.q
    }

    pub fn dim(self) -> usize {
        (self.p + self.q) as usize
    }

    pub fn blade_count(self) -> usize {
        1 << self.dim()
    }

    /// Basis-vector labels in index order.
    pub fn basis_order(self) -> &'static [&'static str] {
        const GENERIC: [&str; 4] = ["e1", "e2", "e3", "e4"];
        const STA: [&str; 4] = ["e1", "e2", "e3", "e0"];
        if self == Self::CL31 {
            &STA
        } else {
            &GENERIC[..self.dim()]
        }
    }

    /// Square of basis vector `index`.
    pub fn square(self, index: usize) -> f64 {
        if index < self.p as usize {
            1.0
        } else {
            -1.0
        }
    }

    #[inline]
    fn table(self) -> &'static [[i8; MAX_BLADES]; MAX_BLADES] {
        &SIGN_TABLES[(self.p * 5 + self.q) as usize]
    }

    /// Sign `s` with `blade(a)·blade(b) = s·blade(a ^ b)`.
    #[inline]
    pub fn product_sign(self, a: usize, b: usize) -> f64 {
        self.table()[a][b] as f64
    }

    fn check(self, other: Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(self.p, self.q, other.p, other.q))
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

#[inline]
pub fn grade_of(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// `(−1)^{g(g−1)/2}`
#[inline]
fn reverse_sign(mask: usize) -> f64 {
    match grade_of(mask) % 4 {
        0 | 1 => 1.0,
        _ => -1.0,
    }
}

/// A multivector with dense blade coefficients.
///
/// Arithmetic operators panic on signature mismatch; use
/// [`Multivector::product`] for the fallible form.
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: [f64; MAX_BLADES],
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.sig)?;
        for (m, c) in self.coeffs().iter().enumerate() {
            if m > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m:#06b}:{c}")?;
        }
        write!(f, "]")
    }
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            coeffs: [0.0; MAX_BLADES],
        }
    }

    pub fn scalar(sig: Signature, value: f64) -> Self {
        Self::blade(sig, 0, value)
    }

    /// `value · blade(mask)`; mask bits beyond the signature are dropped.
    pub fn blade(sig: Signature, mask: usize, value: f64) -> Self {
        let mut m = Self::zero(sig);
        m.coeffs[mask & (sig.blade_count() - 1)] = value;
        m
    }

    pub fn basis_vector(sig: Signature, index: usize) -> Result<Self> {
        if index >= sig.dim() {
            return Err(Error::Precondition("basis vector index out of range"));
        }
        Ok(Self::blade(sig, 1 << index, 1.0))
    }

    pub fn from_coeffs(sig: Signature, coeffs: &[f64]) -> Result<Self> {
        if coeffs.len() != sig.blade_count() {
            return Err(Error::Precondition("coefficient count must be 2^(p+q)"));
        }
        let mut m = Self::zero(sig);
        m.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(m)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..self.sig.blade_count()]
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        let n = self.sig.blade_count();
        &mut self.coeffs[..n]
    }

    #[inline]
    pub fn get(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    #[inline]
    pub fn set(&mut self, mask: usize, value: f64) {
        self.coeffs[mask] = value;
    }

    /// Geometric product.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.sig.check(other.sig)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.sig.blade_count();
        let table = self.sig.table();
        let mut out = [0.0; MAX_BLADES];
        for (a, &x) in self.coeffs[..n].iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let row = &table[a];
            for (b, &y) in other.coeffs[..n].iter().enumerate() {
                if y != 0.0 {
                    out[a ^ b] += row[b] as f64 * x * y;
                }
            }
        }
        Self {
            sig: self.sig,
            coeffs: out,
        }
    }

    /// Reversion: each grade-`g` part picks up `(−1)^{g(g−1)/2}`.
    pub fn reverse(&self) -> Self {
        let mut out = *self;
        for (m, c) in out.coeffs_mut().iter_mut().enumerate() {
            *c *= reverse_sign(m);
        }
        out
    }

    /// Grade-`g` projection.
    pub fn grade(&self, g: usize) -> Result<Self> {
        if g > self.sig.dim() {
            return Err(Error::GradeOutOfRange {
                grade: g,
                max: self.sig.dim(),
            });
        }
        let mut out = Self::zero(self.sig);
        for (m, &c) in self.coeffs().iter().enumerate() {
            if grade_of(m) == g {
                out.coeffs[m] = c;
            }
        }
        Ok(out)
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Sum of squared blade coefficients (Euclidean coefficient norm).
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs().iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        math::sqrt(self.norm_sqr())
    }

    /// Inverse of a versor `v` via `ṽ / (v ṽ)`; `None` when `v ṽ` is not a
    /// nonzero scalar.
    pub fn versor_inverse(&self) -> Option<Self> {
        let rev = self.reverse();
        let vv = self.mul_unchecked(&rev);
        let s = vv.scalar_part();
        let rest: f64 = vv.coeffs()[1..].iter().map(|c| c * c).sum();
        if s == 0.0 || rest > 1e-24 * s * s {
            return None;
        }
        Some(rev * (1.0 / s))
    }

    /// Duality in `Cl(3,1)`: `a · i4⁻¹`.
    pub fn dual(&self) -> Result<Self> {
        Signature::CL31.check(self.sig)?;
        // i4⁻¹ = −i4 since i4² = −1
        Ok(self.mul_unchecked(&-sta::i4()))
    }

    /// True when every coefficient outside `masks` is within `tol` of zero.
    pub fn supported_on(&self, masks: &[usize], tol: f64) -> bool {
        self.coeffs()
            .iter()
            .enumerate()
            .all(|(m, c)| masks.contains(&m) || math::abs(*c) <= tol)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs()
            .iter()
            .zip(other.coeffs())
            .map(|(a, b)| math::abs(a - b))
            .fold(0.0, f64::max)
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(mut self, b: Self) -> Self {
        self += b;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, b: Self) {
        assert_eq!(self.sig, b.sig, "signature mismatch in multivector sum");
        for (x, y) in self.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.coeffs.iter_mut() {
            *c = -*c;
        }
        self
    }
}

impl Mul for Multivector {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        assert_eq!(self.sig, b.sig, "signature mismatch in geometric product");
        self.mul_unchecked(&b)
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(mut self, s: f64) -> Self {
        for c in self.coeffs.iter_mut() {
            *c *= s;
        }
        self
    }
}

/// Named elements of the spacetime algebra `Cl(3,1)`.
pub mod sta {
    use super::*;

    /// Time vector, `e0² = −1`.
    pub fn e0() -> Multivector {
        Multivector::blade(Signature::CL31, MASK_E0, 1.0)
    }

    /// Spatial basis vector `e_k` for `k ∈ {1, 2, 3}`.
    pub fn e(k: usize) -> Multivector {
        assert!((1..=3).contains(&k), "spatial index must be 1, 2 or 3");
        Multivector::blade(Signature::CL31, 1 << (k - 1), 1.0)
    }

    /// Spatial unit volume trivector `i3 = e1e2e3`.
    pub fn i3() -> Multivector {
        Multivector::blade(Signature::CL31, MASK_I3, 1.0)
    }

    /// Pseudoscalar `i4 = e0e1e2e3`.
    pub fn i4() -> Multivector {
        Multivector::blade(Signature::CL31, MASK_E1230, -1.0)
    }

    pub fn scalar(v: f64) -> Multivector {
        Multivector::scalar(Signature::CL31, v)
    }
}

/// Image of the quaternion basis `(1, 𝒊, 𝒋, 𝒌)` as signed blades.
type BasisImage = [(usize, f64); 4];

const CL02_IMAGE: BasisImage = [(0b00, 1.0), (0b01, 1.0), (0b10, 1.0), (0b11, 1.0)];
// 𝒊 → e32 = −e23, 𝒋 → e13, 𝒌 → e21 = −e12
const CL30_EVEN_IMAGE: BasisImage = [(0b000, 1.0), (0b110, -1.0), (0b101, 1.0), (0b011, -1.0)];
// 𝒊 → e0, 𝒋 → i3, 𝒌 → i4
const VT_IMAGE: BasisImage = [(0, 1.0), (MASK_E0, 1.0), (MASK_I3, 1.0), (MASK_E1230, -1.0)];

/// Blade masks spanning the volume-time subalgebra `{1, e0, i3, i4}`.
pub const VT_MASKS: [usize; 4] = [0, MASK_E0, MASK_I3, MASK_E1230];

fn to_image(sig: Signature, image: &BasisImage, q: Quaternion) -> Multivector {
    let mut m = Multivector::zero(sig);
    for (&(mask, sign), c) in image.iter().zip(q.to_array()) {
        m.coeffs[mask] = sign * c;
    }
    m
}

fn from_image(sig: Signature, image: &BasisImage, m: &Multivector) -> Result<Quaternion> {
    sig.check(m.sig)?;
    let masks = image.map(|(mask, _)| mask);
    if !m.supported_on(&masks, 0.0) {
        return Err(Error::NotInSubalgebra);
    }
    Ok(Quaternion::from_array(image.map(|(mask, sign)| sign * m.coeffs[mask])))
}

/// `ℍ → Cl(0,2)`: `𝒊 → e1`, `𝒋 → e2`, `𝒌 → e1e2`.
pub fn iso_h_to_cl02(q: Quaternion) -> Multivector {
    to_image(Signature::CL02, &CL02_IMAGE, q)
}

pub fn iso_cl02_to_h(m: &Multivector) -> Result<Quaternion> {
    from_image(Signature::CL02, &CL02_IMAGE, m)
}

/// `ℍ → Cl⁺(3,0)`: `𝒊 → e32`, `𝒋 → e13`, `𝒌 → e21`.
pub fn iso_h_to_cl30plus(q: Quaternion) -> Multivector {
    to_image(Signature::CL30, &CL30_EVEN_IMAGE, q)
}

pub fn iso_cl30plus_to_h(m: &Multivector) -> Result<Quaternion> {
    from_image(Signature::CL30, &CL30_EVEN_IMAGE, m)
}

/// `ℍ → V_t ⊂ Cl(3,1)`: `𝒊 → e0`, `𝒋 → i3`, `𝒌 → i4`.
pub fn iso_h_to_vt(q: Quaternion) -> VtElement {
    VtElement(to_image(Signature::CL31, &VT_IMAGE, q))
}

pub fn iso_vt_to_h(v: &VtElement) -> Quaternion {
    Quaternion::from_array(VT_IMAGE.map(|(mask, sign)| sign * v.0.coeffs[mask]))
}

/// An element of the volume-time subalgebra `span{1, e0, i3, i4}` of `Cl(3,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VtElement(Multivector);

impl VtElement {
    /// Accepts a `Cl(3,1)` multivector whose coefficients outside the four
    /// volume-time blades are within `tol` of zero; those are dropped.
    pub fn new(m: Multivector, tol: f64) -> Result<Self> {
        Signature::CL31.check(m.sig)?;
        if !m.supported_on(&VT_MASKS, tol) {
            return Err(Error::NotInSubalgebra);
        }
        let mut clean = Multivector::zero(Signature::CL31);
        for mask in VT_MASKS {
            clean.coeffs[mask] = m.coeffs[mask];
        }
        Ok(Self(clean))
    }

    pub fn as_multivector(&self) -> &Multivector {
        &self.0
    }

    pub fn into_multivector(self) -> Multivector {
        self.0
    }
}

impl Mul for VtElement {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        Self(self.0.mul_unchecked(&b.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use sta::{e, e0, i3, i4};

    /// Independent blade-product oracle: multiply the factor lists as words,
    /// bubble-sort them while counting swaps, then contract equal neighbours.
    fn oracle_blade_product(sig: Signature, a: usize, b: usize) -> (f64, usize) {
        let mut word: Vec<usize> = (0..sig.dim()).filter(|i| a & (1 << i) != 0).collect();
        word.extend((0..sig.dim()).filter(|i| b & (1 << i) != 0));
        let mut sign = 1.0;
        let mut changed = true;
        while changed {
            changed = false;
            for t in 0..word.len().saturating_sub(1) {
                if word[t] > word[t + 1] {
                    word.swap(t, t + 1);
                    sign = -sign;
                    changed = true;
                }
            }
        }
        let mut mask = 0;
        let mut t = 0;
        while t < word.len() {
            if t + 1 < word.len() && word[t] == word[t + 1] {
                sign *= sig.square(word[t]);
                t += 2;
            } else {
                mask |= 1 << word[t];
                t += 1;
            }
        }
        (sign, mask)
    }

    #[test]
    fn tables_match_word_oracle() {
        for p in 0..=4u8 {
            for q in 0..=(4 - p) {
                let sig = Signature::new(p, q).unwrap();
                for a in 0..sig.blade_count() {
                    for b in 0..sig.blade_count() {
                        let (s, m) = oracle_blade_product(sig, a, b);
                        assert_eq!(m, a ^ b);
                        assert_eq!(sig.product_sign(a, b), s, "{sig} {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn spacetime_squares() {
        let minus_one = sta::scalar(-1.0);
        assert_eq!(e0() * e0(), minus_one);
        assert_eq!(i3() * i3(), minus_one);
        assert_eq!(i4() * i4(), minus_one);
        assert_eq!(e0() * i3(), i4());
        assert_eq!(i3() * e0(), -i4());
        assert_eq!(e0() * e(1) * e(2) * e(3), i4());
    }

    #[test]
    fn identity_and_mismatch() {
        let x = Multivector::from_coeffs(Signature::CL30, &[1., 2., 3., 4., 5., 6., 7., 8.]).unwrap();
        assert_eq!(Multivector::scalar(Signature::CL30, 1.0) * x, x);
        assert!(matches!(
            x.product(&e0()),
            Err(Error::SignatureMismatch(3, 0, 3, 1))
        ));
        assert!(Signature::new(3, 2).is_err());
    }

    #[test]
    fn reverse_signs() {
        let s = sta::scalar(2.5);
        assert_eq!(s.reverse(), s);
        let e12 = e(1) * e(2);
        assert_eq!(e12.reverse(), -e12);
        assert_eq!(i4().reverse(), i4());
        assert_eq!(i3().reverse(), -i3());
    }

    #[test]
    fn grade_projection() {
        let a = sta::scalar(3.0) + e(1);
        assert_eq!(a.grade(0).unwrap(), sta::scalar(3.0));
        let b = e0() * e(1) + e(2);
        assert_eq!(b.grade(2).unwrap(), e0() * e(1));
        let c = e0() * (e0() * e(1));
        assert_eq!(c.grade(1).unwrap(), -e(1));
        assert_eq!(
            a.grade(5),
            Err(Error::GradeOutOfRange { grade: 5, max: 4 })
        );
    }

    #[test]
    fn duality() {
        assert_eq!(e0().dual().unwrap(), i3());
        assert_eq!(i4().dual().unwrap(), sta::scalar(1.0));
        // e1·(−i4) = −e1e0e1e2e3 = e0e1e1e2e3 = e0e2e3
        assert_eq!(e(1).dual().unwrap(), e0() * e(2) * e(3));
        assert!(Multivector::scalar(Signature::CL30, 1.0).dual().is_err());
    }

    #[test]
    fn i3_commutes_with_space() {
        for k in 1..=3 {
            assert_eq!(i3() * e(k), e(k) * i3());
        }
        assert_eq!(e0() * i3(), -(i3() * e0()));
    }

    #[test]
    fn isomorphism_images() {
        let (qi, qj, qk) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(iso_h_to_vt(qi).0, e0());
        assert_eq!(iso_h_to_vt(qj).0, i3());
        assert_eq!(iso_h_to_vt(qk).0, i4());
        assert_eq!((iso_h_to_vt(qi) * iso_h_to_vt(qj)).0, i4());

        let e32 = Multivector::blade(Signature::CL30, 0b100, 1.0)
            * Multivector::blade(Signature::CL30, 0b010, 1.0);
        let e13 = Multivector::blade(Signature::CL30, 0b001, 1.0)
            * Multivector::blade(Signature::CL30, 0b100, 1.0);
        let e21 = Multivector::blade(Signature::CL30, 0b010, 1.0)
            * Multivector::blade(Signature::CL30, 0b001, 1.0);
        assert_eq!(iso_h_to_cl30plus(qi), e32);
        assert_eq!(iso_h_to_cl30plus(qj), e13);
        assert_eq!(iso_h_to_cl30plus(qk), e21);
        assert_eq!(e13 * e21, e32);

        for (m, sig) in [
            (iso_h_to_cl02(Quaternion::ONE), Signature::CL02),
            (iso_h_to_cl30plus(Quaternion::ONE), Signature::CL30),
            (iso_h_to_vt(Quaternion::ONE).0, Signature::CL31),
        ] {
            assert_eq!(m, Multivector::scalar(sig, 1.0));
        }
    }

    #[test]
    fn inverse_maps_reject_outside_support() {
        let v = Multivector::blade(Signature::CL02, 0b01, 1.0);
        assert_eq!(iso_cl02_to_h(&v).unwrap(), Quaternion::I);
        let odd = Multivector::blade(Signature::CL30, 0b001, 1.0);
        assert_eq!(iso_cl30plus_to_h(&odd), Err(Error::NotInSubalgebra));
        assert_eq!(VtElement::new(e(1), 0.0), Err(Error::NotInSubalgebra));
        let vt = VtElement::new(e0() + i4() * 2.0, 0.0).unwrap();
        assert_eq!(iso_vt_to_h(&vt), Quaternion::new(0.0, 1.0, 0.0, 2.0));
    }

    #[test]
    fn versor_inverse() {
        let v = e0() * 2.0;
        assert_eq!(v.versor_inverse().unwrap() * v, sta::scalar(1.0));
        assert!(Multivector::zero(Signature::CL31).versor_inverse().is_none());
    }
}
