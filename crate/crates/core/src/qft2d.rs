//! Discrete two-sided QFT and right-sided QFTr on 2D quaternion grids.
//!
//! Conventions: samples are stored row-major with `x` fastest, index
//! `y·M + x`. The forward transforms are unnormalized, the inverses carry
//! `1/(MN)`, and bin `(m, n)` sits at angular frequency
//! `(2πm/(M·dx), 2πn/(N·dy))` with indices read modulo the grid (DC at 0).
//!
//! ```text
//! QFT   F[m,n] = Σ e^{−𝒊·2πmx/M} f[x,y] e^{−𝒋·2πny/N}
//! QFTr  F[m,n] = Σ f[x,y] e^{−𝒊·2πmx/M} e^{−𝒋·2πny/N}
//! ```

use alloc::vec;
use alloc::vec::Vec;

use crate::fft::{self, C64};
use crate::math;
use crate::par::collect_indexed;
use crate::quat::Quaternion;
use crate::{Error, Result, TransformPath};

macro_rules! grid2d {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name {
            m: usize,
            n: usize,
            dx: f64,
            dy: f64,
            data: Vec<Quaternion>,
        }

        impl $name {
            /// `m` samples along `x`, `n` along `y`, unit spacings.
            pub fn new(m: usize, n: usize, data: Vec<Quaternion>) -> Result<Self> {
                Self::with_spacing(m, n, 1.0, 1.0, data)
            }

            pub fn with_spacing(m: usize, n: usize, dx: f64, dy: f64, data: Vec<Quaternion>) -> Result<Self> {
                if m == 0 || n == 0 {
                    return Err(Error::InvalidGrid("dimensions must be positive"));
                }
                if !(dx > 0.0 && dy > 0.0 && dx.is_finite() && dy.is_finite()) {
                    return Err(Error::InvalidGrid("spacings must be positive and finite"));
                }
                if data.len() != m * n {
                    return Err(Error::InvalidGrid("sample count does not match dimensions"));
                }
                Ok(Self { m, n, dx, dy, data })
            }

            pub fn zeros(m: usize, n: usize) -> Result<Self> {
                Self::new(m, n, vec![Quaternion::ZERO; m * n])
            }

            /// Builds the grid from `f(x, y)`.
            pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Result<Self> {
                let mut data = Vec::with_capacity(m * n);
                for y in 0..n {
                    for x in 0..m {
                        data.push(f(x, y));
                    }
                }
                Self::new(m, n, data)
            }

            /// Sample count along `x`.
            pub fn width(&self) -> usize {
                self.m
            }

            /// Sample count along `y`.
            pub fn height(&self) -> usize {
                self.n
            }

            /// `(dx, dy)`.
            pub fn spacing(&self) -> (f64, f64) {
                (self.dx, self.dy)
            }

            pub fn data(&self) -> &[Quaternion] {
                &self.data
            }

            pub fn data_mut(&mut self) -> &mut [Quaternion] {
                &mut self.data
            }

            pub fn into_data(self) -> Vec<Quaternion> {
                self.data
            }

            /// Value at `(x, y)`; both indices wrap around the grid.
            pub fn get(&self, x: i64, y: i64) -> Quaternion {
                let xi = x.rem_euclid(self.m as i64) as usize;
                let yi = y.rem_euclid(self.n as i64) as usize;
                self.data[yi * self.m + xi]
            }

            pub fn set(&mut self, x: usize, y: usize, q: Quaternion) {
                self.data[y * self.m + x] = q;
            }

            fn same_shape(&self, data: Vec<Quaternion>) -> Self {
                Self { m: self.m, n: self.n, dx: self.dx, dy: self.dy, data }
            }

            /// Pointwise map.
            pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
                self.same_shape(self.data.iter().map(|&q| f(q)).collect())
            }

            /// `Σ |q|²`.
            pub fn energy(&self) -> f64 {
                self.data.iter().map(|q| q.norm_sqr()).sum()
            }

            fn check_shape(&self, other: &Self) -> Result<()> {
                if self.m == other.m && self.n == other.n {
                    Ok(())
                } else {
                    Err(Error::ShapeMismatch(vec![self.m, self.n], vec![other.m, other.n]))
                }
            }

            /// `‖self − other‖_F / max(‖other‖_F, tiny)` over all coefficients.
            pub fn relative_error(&self, reference: &Self) -> Result<f64> {
                self.check_shape(reference)?;
                Ok(relative_frobenius(&self.data, &reference.data))
            }

            pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
                self.check_shape(other)?;
                Ok(self
                    .data
                    .iter()
                    .zip(&other.data)
                    .map(|(a, b)| a.max_abs_diff(*b))
                    .fold(0.0, f64::max))
            }
        }
    };
}

grid2d!(
    /// Quaternion-valued samples on an `M × N` grid with spacings `dx, dy`.
    QuaternionField2D
);
grid2d!(
    /// Spectrum of a [`QuaternionField2D`]; same shape as its source.
    QSpectrum2D
);

impl QSpectrum2D {
    /// Angular frequency `(u, v)` of bin `(m, n)`, with indices above half the
    /// grid read as negative frequencies.
    pub fn angular_frequency(&self, m: usize, n: usize) -> (f64, f64) {
        (
            math::TAU * signed_index(m, self.m) as f64 / (self.m as f64 * self.dx),
            math::TAU * signed_index(n, self.n) as f64 / (self.n as f64 * self.dy),
        )
    }
}

/// Symmetric representative of `k` modulo `n`, in `(−n/2, n/2]`.
pub fn signed_index(k: usize, n: usize) -> i64 {
    let k = (k % n) as i64;
    if 2 * k > n as i64 {
        k - n as i64
    } else {
        k
    }
}

pub(crate) fn relative_frobenius(a: &[Quaternion], reference: &[Quaternion]) -> f64 {
    let num: f64 = a.iter().zip(reference).map(|(x, y)| (*x - *y).norm_sqr()).sum();
    let den: f64 = reference.iter().map(|q| q.norm_sqr()).sum();
    math::sqrt(num) / math::sqrt(den).max(f64::MIN_POSITIVE)
}

/// `e^{s·𝒊·2πk/n}` for `k = 0..n`, exact at multiples of a quarter turn.
fn phase_table(n: usize, sign: f64, axis: Quaternion) -> Vec<Quaternion> {
    (0..n)
        .map(|k| {
            let (c, s) = math::unit_root(k as i64, n);
            Quaternion::real(c) + axis * (sign * s)
        })
        .collect()
}

fn shape_of(m: usize, n: usize) -> [usize; 2] {
    [n, m]
}

fn direct_two_sided(data: &[Quaternion], m: usize, n: usize, sign: f64) -> Vec<Quaternion> {
    let left = phase_table(m, sign, Quaternion::I);
    let right = phase_table(n, sign, Quaternion::J);
    collect_indexed(m * n, |bin| {
        let (u, v) = (bin % m, bin / m);
        let mut acc = Quaternion::ZERO;
        for y in 0..n {
            let ry = right[(v * y) % n];
            for x in 0..m {
                acc += left[(u * x) % m] * data[y * m + x] * ry;
            }
        }
        acc
    })
}

fn direct_right_sided(data: &[Quaternion], m: usize, n: usize, sign: f64, inverse: bool) -> Vec<Quaternion> {
    let ex = phase_table(m, sign, Quaternion::I);
    let ey = phase_table(n, sign, Quaternion::J);
    collect_indexed(m * n, |bin| {
        let (u, v) = (bin % m, bin / m);
        let mut acc = Quaternion::ZERO;
        for y in 0..n {
            let py = ey[(v * y) % n];
            for x in 0..m {
                let px = ex[(u * x) % m];
                let kernel = if inverse { py * px } else { px * py };
                acc += data[y * m + x] * kernel;
            }
        }
        acc
    })
}

fn scale_all(mut v: Vec<Quaternion>, s: f64) -> Vec<Quaternion> {
    v.iter_mut().for_each(|q| *q *= s);
    v
}

fn use_fast(path: TransformPath, m: usize, n: usize) -> Result<bool> {
    let pow2 = fft::is_power_of_two(m) && fft::is_power_of_two(n);
    match path {
        TransformPath::Direct => Ok(false),
        TransformPath::Fast if !pow2 => Err(Error::UnsupportedSize(vec![m, n])),
        TransformPath::Fast => Ok(true),
        TransformPath::Auto => Ok(pow2),
    }
}

/// Two-sided QFT by direct double summation; the oracle for every fast path.
pub fn qft_forward_direct(f: &QuaternionField2D) -> QSpectrum2D {
    let data = direct_two_sided(&f.data, f.m, f.n, -1.0);
    QSpectrum2D { m: f.m, n: f.n, dx: f.dx, dy: f.dy, data }
}

/// Two-sided QFT through the `±` split: one complex 2D FFT per half, the
/// `+` half with its `y`-frequency index reversed.
pub fn qft_forward_fast(f: &QuaternionField2D) -> Result<QSpectrum2D> {
    let data = fft::two_sided_split(&f.data, &shape_of(f.m, f.n), 1, false)?;
    Ok(QSpectrum2D { m: f.m, n: f.n, dx: f.dx, dy: f.dy, data })
}

/// Two-sided QFT on the requested path.
pub fn qft_forward(f: &QuaternionField2D, path: TransformPath) -> Result<QSpectrum2D> {
    if use_fast(path, f.m, f.n)? {
        qft_forward_fast(f)
    } else {
        Ok(qft_forward_direct(f))
    }
}

pub fn qft_inverse_direct(spec: &QSpectrum2D) -> QuaternionField2D {
    let data = direct_two_sided(&spec.data, spec.m, spec.n, 1.0);
    let data = scale_all(data, 1.0 / (spec.m * spec.n) as f64);
    QuaternionField2D { m: spec.m, n: spec.n, dx: spec.dx, dy: spec.dy, data }
}

pub fn qft_inverse_fast(spec: &QSpectrum2D) -> Result<QuaternionField2D> {
    let data = fft::two_sided_split(&spec.data, &shape_of(spec.m, spec.n), 1, true)?;
    Ok(QuaternionField2D { m: spec.m, n: spec.n, dx: spec.dx, dy: spec.dy, data })
}

/// Inverse two-sided QFT: `f[x,y] = (1/MN) Σ e^{𝒊·2πmx/M} F[m,n] e^{𝒋·2πny/N}`.
pub fn qft_inverse(spec: &QSpectrum2D, path: TransformPath) -> Result<QuaternionField2D> {
    if use_fast(path, spec.m, spec.n)? {
        qft_inverse_fast(spec)
    } else {
        Ok(qft_inverse_direct(spec))
    }
}

pub fn qftr_forward_direct(f: &QuaternionField2D) -> QSpectrum2D {
    let data = direct_right_sided(&f.data, f.m, f.n, -1.0, false);
    QSpectrum2D { m: f.m, n: f.n, dx: f.dx, dy: f.dy, data }
}

pub fn qftr_inverse_direct(spec: &QSpectrum2D) -> QuaternionField2D {
    let data = direct_right_sided(&spec.data, spec.m, spec.n, 1.0, true);
    let data = scale_all(data, 1.0 / (spec.m * spec.n) as f64);
    QuaternionField2D { m: spec.m, n: spec.n, dx: spec.dx, dy: spec.dy, data }
}

/// `x` pass of the right-sided transform. Writing `q = a + b𝒋` with
/// `a, b ∈ span{1, 𝒊}` and using `𝒋 e^{𝒊θ} = e^{−𝒊θ} 𝒋`, the sum over `x`
/// is `A[m] + B[−m]·𝒋`, where `A` and `B` are complex DFTs of `a` and `b`.
fn right_pass_x(data: &[Quaternion], shape: [usize; 2], inverse: bool) -> Result<Vec<Quaternion>> {
    let mut a: Vec<C64> = data.iter().map(|q| C64::new(q.r, q.i)).collect();
    let mut b: Vec<C64> = data.iter().map(|q| C64::new(q.j, q.k)).collect();
    fft::fft_axis(&mut a, &shape, 1, inverse)?;
    fft::fft_axis(&mut b, &shape, 1, inverse)?;
    let reflect = fft::negated_index_map(&shape, &[false, true]);
    Ok(a.iter()
        .zip(&reflect)
        .map(|(a, &src)| {
            let b = b[src];
            Quaternion::new(a.re, a.im, b.re, b.im)
        })
        .collect())
}

/// `y` pass: `q = c + 𝒊d` with `c, d ∈ span{1, 𝒋}`; right factors in the
/// `𝒋`-plane commute with `c` and `d`, so both transform as complex arrays.
fn right_pass_y(data: &[Quaternion], shape: [usize; 2], inverse: bool) -> Result<Vec<Quaternion>> {
    let mut c: Vec<C64> = data.iter().map(|q| C64::new(q.r, q.j)).collect();
    let mut d: Vec<C64> = data.iter().map(|q| C64::new(q.i, q.k)).collect();
    fft::fft_axis(&mut c, &shape, 0, inverse)?;
    fft::fft_axis(&mut d, &shape, 0, inverse)?;
    Ok(c.iter()
        .zip(&d)
        .map(|(c, d)| Quaternion::new(c.re, d.re, c.im, d.im))
        .collect())
}

/// Right-sided QFT from two complex FFT passes per axis.
pub fn qftr_forward_fast(f: &QuaternionField2D) -> Result<QSpectrum2D> {
    let shape = shape_of(f.m, f.n);
    fft::require_power_of_two(&shape)?;
    let g = right_pass_x(&f.data, shape, false)?;
    let data = right_pass_y(&g, shape, false)?;
    Ok(QSpectrum2D { m: f.m, n: f.n, dx: f.dx, dy: f.dy, data })
}

/// Inverse of [`qftr_forward_fast`]: the `y` factor is undone first, then `x`.
pub fn qftr_inverse_fast(spec: &QSpectrum2D) -> Result<QuaternionField2D> {
    let shape = shape_of(spec.m, spec.n);
    fft::require_power_of_two(&shape)?;
    let h = right_pass_y(&spec.data, shape, true)?;
    let data = right_pass_x(&h, shape, true)?;
    let data = scale_all(data, 1.0 / (spec.m * spec.n) as f64);
    Ok(QuaternionField2D { m: spec.m, n: spec.n, dx: spec.dx, dy: spec.dy, data })
}

pub fn qftr_forward(f: &QuaternionField2D, path: TransformPath) -> Result<QSpectrum2D> {
    if use_fast(path, f.m, f.n)? {
        qftr_forward_fast(f)
    } else {
        Ok(qftr_forward_direct(f))
    }
}

/// Inverse QFTr: `f = (1/MN) Σ F e^{𝒋·2πny/N} e^{𝒊·2πmx/M}`.
pub fn qftr_inverse(spec: &QSpectrum2D, path: TransformPath) -> Result<QuaternionField2D> {
    if use_fast(path, spec.m, spec.n)? {
        qftr_inverse_fast(spec)
    } else {
        Ok(qftr_inverse_direct(spec))
    }
}

/// Pointwise `±` split, returned as `(f₊, f₋)`.
pub fn split_field_pm(f: &QuaternionField2D) -> (QuaternionField2D, QuaternionField2D) {
    let (plus, minus) = f.data.iter().map(|q| q.split_pm()).unzip();
    (f.same_shape(plus), f.same_shape(minus))
}

/// Same split on a spectrum.
pub fn split_spectrum_pm(s: &QSpectrum2D) -> (QSpectrum2D, QSpectrum2D) {
    let (plus, minus) = s.data.iter().map(|q| q.split_pm()).unzip();
    (s.same_shape(plus), s.same_shape(minus))
}

/// QFT assembled from the transforms of the four real component fields:
/// `F = F_r + 𝒊F_i + F_j𝒋 + 𝒊F_k𝒋`.
pub fn qft_via_components(f: &QuaternionField2D, path: TransformPath) -> Result<QSpectrum2D> {
    let parts: [fn(&Quaternion) -> f64; 4] = [|q| q.r, |q| q.i, |q| q.j, |q| q.k];
    let mut spectra = Vec::with_capacity(4);
    for part in parts {
        let g = f.same_shape(f.data.iter().map(|q| Quaternion::real(part(q))).collect());
        spectra.push(qft_forward(&g, path)?);
    }
    let (i, j) = (Quaternion::I, Quaternion::J);
    let data = (0..f.data.len())
        .map(|t| {
            spectra[0].data[t] + i * spectra[1].data[t] + spectra[2].data[t] * j + i * spectra[3].data[t] * j
        })
        .collect();
    Ok(QSpectrum2D { m: f.m, n: f.n, dx: f.dx, dy: f.dy, data })
}

/// `g[x,y] = f[x − x0, y − y0]` with wrap-around.
pub fn circular_shift(f: &QuaternionField2D, x0: i64, y0: i64) -> QuaternionField2D {
    QuaternionField2D::from_fn(f.m, f.n, |x, y| f.get(x as i64 - x0, y as i64 - y0))
        .expect("shape taken from a valid field")
        .with_spacing_of(f)
}

/// `g[x,y] = e^{𝒊·2πm0x/M} f[x,y] e^{𝒋·2πn0y/N}`.
pub fn modulate(f: &QuaternionField2D, m0: i64, n0: i64) -> QuaternionField2D {
    let (m, n) = (f.m, f.n);
    QuaternionField2D::from_fn(m, n, |x, y| {
        let (cx, sx) = math::unit_root(m0 * x as i64, m);
        let (cy, sy) = math::unit_root(n0 * y as i64, n);
        Quaternion::new(cx, sx, 0.0, 0.0) * f.data[y * m + x] * Quaternion::new(cy, 0.0, sy, 0.0)
    })
    .expect("shape taken from a valid field")
    .with_spacing_of(f)
}

/// Right-hand side of the shift law: `e^{−𝒊·2πm x0/M} F[m,n] e^{−𝒋·2πn y0/N}`.
pub fn shifted_spectrum(spec: &QSpectrum2D, x0: i64, y0: i64) -> QSpectrum2D {
    let (m, n) = (spec.m, spec.n);
    let mut out = spec.clone();
    for v in 0..n {
        for u in 0..m {
            let (cx, sx) = math::unit_root(-(u as i64) * x0, m);
            let (cy, sy) = math::unit_root(-(v as i64) * y0, n);
            out.data[v * m + u] =
                Quaternion::new(cx, sx, 0.0, 0.0) * spec.data[v * m + u] * Quaternion::new(cy, 0.0, sy, 0.0);
        }
    }
    out
}

/// Right-hand side of the modulation law: `F[m − m0, n − n0]`.
pub fn modulated_spectrum(spec: &QSpectrum2D, m0: i64, n0: i64) -> QSpectrum2D {
    let mut out = spec.clone();
    for v in 0..spec.n {
        for u in 0..spec.m {
            out.data[v * spec.m + u] = spec.get(u as i64 - m0, v as i64 - n0);
        }
    }
    out
}

impl QuaternionField2D {
    fn with_spacing_of(mut self, other: &Self) -> Self {
        self.dx = other.dx;
        self.dy = other.dy;
        self
    }

    /// Same samples read with spacings scaled by `(a, b)`, i.e. the field
    /// `x ↦ f(x/a, y/b)`.
    pub fn stretched(&self, a: f64, b: f64) -> Result<Self> {
        Self::with_spacing(self.m, self.n, self.dx * a, self.dy * b, self.data.clone())
    }
}

impl QSpectrum2D {
    /// Riemann-sum estimate of the continuous transform at bin `(m, n)`:
    /// `dx·dy·F[m,n]`.
    pub fn continuous_estimate(&self, m: usize, n: usize) -> Quaternion {
        self.data[n * self.m + m] * (self.dx * self.dy)
    }
}

/// `Σ ⟨f g̃⟩₀`.
pub fn scalar_inner(f: &[Quaternion], g: &[Quaternion]) -> f64 {
    f.iter().zip(g).map(|(a, b)| (*a * b.conj()).r).sum()
}

/// `Σ f g̃`, the quaternion-valued inner product.
pub fn quaternion_inner(f: &[Quaternion], g: &[Quaternion]) -> Quaternion {
    f.iter().zip(g).map(|(a, b)| *a * b.conj()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_field(m: usize, n: usize, seed: u64) -> QuaternionField2D {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        QuaternionField2D::from_fn(m, n, |_, _| {
            Quaternion::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
        })
        .unwrap()
    }

    fn delta(m: usize, n: usize, x: usize, y: usize, q: Quaternion) -> QuaternionField2D {
        let mut f = QuaternionField2D::zeros(m, n).unwrap();
        f.set(x, y, q);
        f
    }

    #[test]
    fn constant_and_delta() {
        let one = QuaternionField2D::from_fn(4, 4, |_, _| Quaternion::ONE).unwrap();
        for spec in [qft_forward_direct(&one), qft_forward_fast(&one).unwrap(), qftr_forward_direct(&one)] {
            assert_eq!(spec.data()[0], Quaternion::real(16.0));
            assert!(spec.data()[1..].iter().all(|q| q.norm() < 1e-13));
        }
        let d = qft_forward_direct(&delta(4, 4, 0, 0, Quaternion::ONE));
        assert!(d.data().iter().all(|q| q.max_abs_diff(Quaternion::ONE) < 1e-15));
    }

    #[test]
    fn shifted_delta_signs() {
        let f = delta(4, 4, 1, 0, Quaternion::J);
        let two = qft_forward_direct(&f);
        assert!(two.get(1, 0).max_abs_diff(-Quaternion::K) < 1e-15);
        for m in 0..4 {
            let want = Quaternion::exp_i(-core::f64::consts::FRAC_PI_2 * m as f64) * Quaternion::J;
            for n in 0..4 {
                assert!(two.get(m, n).max_abs_diff(want) < 1e-15);
            }
        }
        let right = qftr_forward_direct(&f);
        assert!(right.get(1, 0).max_abs_diff(Quaternion::K) < 1e-15);
        assert!(qftr_forward_fast(&f).unwrap().get(1, 0).max_abs_diff(Quaternion::K) < 1e-15);
    }

    #[test]
    fn fast_paths_match_oracles() {
        for (m, n) in [(16, 16), (8, 4), (1, 8), (2, 1)] {
            let f = random_field(m, n, 7);
            let fast = qft_forward_fast(&f).unwrap();
            assert!(fast.relative_error(&qft_forward_direct(&f)).unwrap() < 1e-12);
            let fast_r = qftr_forward_fast(&f).unwrap();
            assert!(fast_r.relative_error(&qftr_forward_direct(&f)).unwrap() < 1e-12);
            let inv = qft_inverse_fast(&fast).unwrap();
            assert!(inv.relative_error(&qft_inverse_direct(&fast)).unwrap() < 1e-12);
            let inv_r = qftr_inverse_fast(&fast_r).unwrap();
            assert!(inv_r.relative_error(&qftr_inverse_direct(&fast_r)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn minus_half_is_plain_complex_fft() {
        // f = c(x,y)·(1−𝒌)/2 with c ∈ span{1,𝒊}.
        let c = random_field(8, 8, 3).map(|q| Quaternion::new(q.r, q.i, 0.0, 0.0));
        let half = Quaternion::new(0.5, 0.0, 0.0, -0.5);
        let f = c.map(|q| q * half);
        let mut z: Vec<C64> = c.data().iter().map(|q| C64::new(q.r, q.i)).collect();
        fft::fft_nd(&mut z, &[8, 8], false).unwrap();
        let want: Vec<Quaternion> = z.iter().map(|w| Quaternion::new(w.re, w.im, 0.0, 0.0) * half).collect();
        let got = qft_forward_fast(&f).unwrap();
        assert!(relative_frobenius(got.data(), &want) < 1e-13);
    }

    #[test]
    fn round_trips() {
        let f = random_field(8, 8, 11);
        for path in [TransformPath::Direct, TransformPath::Fast] {
            let back = qft_inverse(&qft_forward(&f, path).unwrap(), path).unwrap();
            assert!(back.relative_error(&f).unwrap() < 1e-12);
            let back = qftr_inverse(&qftr_forward(&f, path).unwrap(), path).unwrap();
            assert!(back.relative_error(&f).unwrap() < 1e-12);
        }
        let mut dc = QSpectrum2D::zeros(4, 2).unwrap();
        dc.set(0, 0, Quaternion::real(8.0));
        let one = qft_inverse_direct(&dc);
        assert!(one.data().iter().all(|q| q.max_abs_diff(Quaternion::ONE) < 1e-15));
        let flat = QSpectrum2D::from_fn(4, 4, |_, _| Quaternion::ONE).unwrap();
        let d = qft_inverse_direct(&flat);
        assert!(d.max_abs_diff(&delta(4, 4, 0, 0, Quaternion::ONE)).unwrap() < 1e-15);
        let c = qftr_inverse_direct(&dc);
        assert!(c.data().iter().all(|q| q.max_abs_diff(Quaternion::ONE) < 1e-15));
    }

    #[test]
    fn swapped_inverse_order_breaks_round_trip() {
        let f = random_field(8, 8, 5);
        let spec = qftr_forward_direct(&f);
        let wrong = direct_right_sided(spec.data(), 8, 8, 1.0, false);
        let wrong = scale_all(wrong, 1.0 / 64.0);
        assert!(relative_frobenius(&wrong, f.data()) > 1e-2);
    }

    #[test]
    fn non_power_of_two() {
        let f = random_field(6, 4, 1);
        assert_eq!(qft_forward_fast(&f).unwrap_err(), Error::UnsupportedSize(vec![4, 6]));
        assert!(matches!(qft_forward(&f, TransformPath::Fast), Err(Error::UnsupportedSize(_))));
        let auto = qft_forward(&f, TransformPath::Auto).unwrap();
        assert_eq!(auto, qft_forward_direct(&f));
    }

    #[test]
    fn split_examples() {
        let one = QuaternionField2D::from_fn(2, 2, |_, _| Quaternion::ONE).unwrap();
        let (p, m) = split_field_pm(&one);
        assert!(p.data().iter().all(|q| *q == Quaternion::new(0.5, 0.0, 0.0, 0.5)));
        assert!(m.data().iter().all(|q| *q == Quaternion::new(0.5, 0.0, 0.0, -0.5)));
        let i = one.map(|_| Quaternion::I);
        let (p, m) = split_field_pm(&i);
        assert!(p.data()[0].max_abs_diff(Quaternion::I * Quaternion::new(0.5, 0.0, 0.0, 0.5)) < 1e-15);
        assert!(m.data()[0].max_abs_diff(Quaternion::I * Quaternion::new(0.5, 0.0, 0.0, -0.5)) < 1e-15);
    }

    #[test]
    fn components_route() {
        let f = random_field(8, 8, 9);
        let direct = qft_forward_direct(&f);
        for path in [TransformPath::Direct, TransformPath::Fast] {
            assert!(qft_via_components(&f, path).unwrap().relative_error(&direct).unwrap() < 1e-12);
        }
        let g = f.map(|q| Quaternion::real(q.r));
        let ig = g.map(|q| Quaternion::I * q);
        let want = qft_forward_direct(&g).map(|q| Quaternion::I * q);
        assert!(qft_via_components(&ig, TransformPath::Auto).unwrap().max_abs_diff(&want).unwrap() < 1e-12);
    }

    #[test]
    fn shift_and_modulation() {
        let f = random_field(8, 8, 2);
        assert_eq!(circular_shift(&f, 0, 0), f);
        let spec = qft_forward_direct(&f);
        let lhs = qft_forward_direct(&circular_shift(&f, 3, -2));
        assert!(lhs.relative_error(&shifted_spectrum(&spec, 3, -2)).unwrap() < 1e-12);
        let lhs = qft_forward_direct(&modulate(&f, 1, 5));
        assert!(lhs.relative_error(&modulated_spectrum(&spec, 1, 5)).unwrap() < 1e-12);
    }

    #[test]
    fn stretch_rescales_frequencies() {
        let f = random_field(8, 4, 4);
        let g = f.stretched(2.0, 0.5).unwrap();
        let (sf, sg) = (qft_forward_direct(&f), qft_forward_direct(&g));
        let (u, v) = sf.angular_frequency(3, 1);
        let (ug, vg) = sg.angular_frequency(3, 1);
        assert!((ug - u / 2.0).abs() < 1e-15 && (vg - v * 2.0).abs() < 1e-15);
        let ratio = sg.continuous_estimate(3, 1) - sf.continuous_estimate(3, 1) * (2.0 * 0.5);
        assert!(ratio.norm() < 1e-12);
        assert_eq!(sf.angular_frequency(5, 3).0, -core::f64::consts::TAU * 3.0 / 8.0);
    }
}
