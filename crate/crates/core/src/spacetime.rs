//! Volume-time (VtFT) and spacetime (SFT) Fourier transforms on 4D grids
//! of `Cl(3,1)` multivectors.
//!
//! Grids are indexed `(t, x, y, z)`, stored t-major with `z` fastest. The
//! kernel is `e^{−e0·ts}` on the left and the single spatial exponential
//! `e^{−i3·(x⃗·u⃗)}` on the right; on the lattice `ts = 2π·st/T` and
//! `x⃗·u⃗ = 2π(mx/X + ny/Y + pz/Z)`. Forward transforms are unnormalized,
//! inverses carry `1/(T·X·Y·Z)`.
//!
//! Magnitudes use the Euclidean coefficient norm `Σ c²`, which is what the
//! `ℍ ≅ V_t` isomorphism carries the quaternion norm to. The reversion form
//! `⟨f f̃⟩₀` is indefinite in `Cl(3,1)` (`e0 ẽ0 = −1`) and is not used.

use alloc::vec;
use alloc::vec::Vec;

use crate::autom::{Automorphism, LinearMap4};
use crate::clifford::{iso_h_to_vt, iso_vt_to_h, sta, Multivector, Signature, VtElement, VT_MASKS};
use crate::fft;
use crate::math;
use crate::par::collect_indexed;
use crate::quat::Quaternion;
use crate::{Error, Result, TransformPath};

/// Tolerance for accepting a sample as volume-time valued.
pub const VT_TOLERANCE: f64 = 0.0;

macro_rules! grid4d {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq)]
        pub struct $name {
            dims: [usize; 4],
            spacing: [f64; 4],
            data: Vec<Multivector>,
        }

        impl $name {
            /// Unit spacings.
            pub fn new(dims: [usize; 4], data: Vec<Multivector>) -> Result<Self> {
                Self::with_spacing(dims, [1.0; 4], data)
            }

            pub fn with_spacing(dims: [usize; 4], spacing: [f64; 4], data: Vec<Multivector>) -> Result<Self> {
                if dims.iter().any(|&d| d == 0) {
                    return Err(Error::InvalidGrid("dimensions must be positive"));
                }
                if spacing.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
                    return Err(Error::InvalidGrid("spacings must be positive and finite"));
                }
                if data.len() != dims.iter().product::<usize>() {
                    return Err(Error::InvalidGrid("sample count does not match dimensions"));
                }
                if let Some(bad) = data.iter().find(|m| m.signature() != Signature::CL31) {
                    let s = bad.signature();
                    return Err(Error::SignatureMismatch(s.p(), s.q(), 3, 1));
                }
                Ok(Self { dims, spacing, data })
            }

            pub fn zeros(dims: [usize; 4]) -> Result<Self> {
                Self::new(dims, vec![Multivector::zero(Signature::CL31); dims.iter().product()])
            }

            /// Builds the grid from `f([t, x, y, z])`.
            pub fn from_fn(dims: [usize; 4], mut f: impl FnMut([usize; 4]) -> Multivector) -> Result<Self> {
                let total: usize = dims.iter().product();
                let data = (0..total).map(|i| f(unflatten(i, dims))).collect();
                Self::new(dims, data)
            }

            /// `(T, X, Y, Z)`.
            pub fn dims(&self) -> [usize; 4] {
                self.dims
            }

            /// `(dt, dx, dy, dz)`.
            pub fn spacing(&self) -> [f64; 4] {
                self.spacing
            }

            pub fn data(&self) -> &[Multivector] {
                &self.data
            }

            pub fn data_mut(&mut self) -> &mut [Multivector] {
                &mut self.data
            }

            pub fn into_data(self) -> Vec<Multivector> {
                self.data
            }

            /// Sample at a multi-index; every component wraps around.
            pub fn get(&self, idx: [i64; 4]) -> &Multivector {
                let mut flat = 0;
                for a in 0..4 {
                    flat = flat * self.dims[a] + idx[a].rem_euclid(self.dims[a] as i64) as usize;
                }
                &self.data[flat]
            }

            fn same_shape(&self, data: Vec<Multivector>) -> Self {
                Self { dims: self.dims, spacing: self.spacing, data }
            }

            pub fn map(&self, f: impl Fn(&Multivector) -> Multivector) -> Self {
                self.same_shape(self.data.iter().map(f).collect())
            }

            /// `Σ ‖f‖²` with the coefficient norm.
            pub fn energy(&self) -> f64 {
                self.data.iter().map(|m| m.norm_sqr()).sum()
            }

            fn check_shape(&self, other: &Self) -> Result<()> {
                if self.dims == other.dims {
                    Ok(())
                } else {
                    Err(Error::ShapeMismatch(self.dims.to_vec(), other.dims.to_vec()))
                }
            }

            /// Relative Frobenius error over all coefficients.
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
                    .map(|(a, b)| a.max_abs_diff(b))
                    .fold(0.0, f64::max))
            }

            /// Index of the first sample outside `V_t`, if any.
            pub fn first_non_vt(&self) -> Option<usize> {
                self.data.iter().position(|m| !m.supported_on(&VT_MASKS, VT_TOLERANCE))
            }
        }
    };
}

grid4d!(
    /// `Cl(3,1)`-valued samples on a `T × X × Y × Z` grid.
    SpacetimeField4D
);
grid4d!(
    /// Spectrum of a [`SpacetimeField4D`]; same shape as its source.
    STSpectrum4D
);

impl STSpectrum4D {
    /// Angular frequencies `(ω, u, v, w)` of bin `(s, m, n, p)`, indices above
    /// half the grid read as negative.
    pub fn angular_frequency(&self, idx: [usize; 4]) -> [f64; 4] {
        core::array::from_fn(|a| {
            let n = self.dims[a];
            math::TAU * crate::qft2d::signed_index(idx[a], n) as f64 / (n as f64 * self.spacing[a])
        })
    }
}

fn unflatten(mut i: usize, dims: [usize; 4]) -> [usize; 4] {
    let mut idx = [0; 4];
    for a in (0..4).rev() {
        idx[a] = i % dims[a];
        i /= dims[a];
    }
    idx
}

fn relative_frobenius(a: &[Multivector], reference: &[Multivector]) -> f64 {
    let num: f64 = a.iter().zip(reference).map(|(x, y)| (*x - *y).norm_sqr()).sum();
    let den: f64 = reference.iter().map(|m| m.norm_sqr()).sum();
    math::sqrt(num) / math::sqrt(den).max(f64::MIN_POSITIVE)
}

fn axis_exp(blade: &Multivector, c: f64, s: f64) -> Multivector {
    sta::scalar(c) + *blade * s
}

/// Numerator of the spatial phase `mx/X + ny/Y + pz/Z` over the common
/// denominator `X·Y·Z`.
fn spatial_phase(freq: [usize; 4], pos: [usize; 4], dims: [usize; 4]) -> i64 {
    let (x, y, z) = (dims[1], dims[2], dims[3]);
    let term = |a: usize, other: usize| ((freq[a] * pos[a]) % dims[a] * other) as i64;
    term(1, y * z) + term(2, x * z) + term(3, x * y)
}

/// Direct two-sided summation with Clifford products; `sign` is `−1` for
/// forward kernels and `+1` for inverse ones.
fn direct_sum(data: &[Multivector], dims: [usize; 4], sign: f64) -> Vec<Multivector> {
    let total: usize = dims.iter().product();
    let spatial: usize = dims[1] * dims[2] * dims[3];
    let (e0, i3) = (sta::e0(), sta::i3());
    let left: Vec<Multivector> = (0..dims[0])
        .map(|k| {
            let (c, s) = math::unit_root(k as i64, dims[0]);
            axis_exp(&e0, c, sign * s)
        })
        .collect();
    let right: Vec<Multivector> = (0..spatial)
        .map(|k| {
            let (c, s) = math::unit_root(k as i64, spatial);
            axis_exp(&i3, c, sign * s)
        })
        .collect();
    let positions: Vec<[usize; 4]> = (0..total).map(|i| unflatten(i, dims)).collect();
    collect_indexed(total, |bin| {
        let freq = positions[bin];
        let mut acc = Multivector::zero(Signature::CL31);
        for (f, &pos) in data.iter().zip(&positions) {
            let l = &left[(freq[0] * pos[0]) % dims[0]];
            let r = &right[spatial_phase(freq, pos, dims) as usize % spatial];
            acc += *l * *f * *r;
        }
        acc
    })
}

fn require_vt(f: &[Multivector]) -> Result<()> {
    match f.iter().position(|m| !m.supported_on(&VT_MASKS, VT_TOLERANCE)) {
        Some(index) => Err(Error::NotVolumeTime { index }),
        None => Ok(()),
    }
}

fn use_fast(path: TransformPath, dims: [usize; 4]) -> Result<bool> {
    let pow2 = dims.iter().all(|&d| fft::is_power_of_two(d));
    match path {
        TransformPath::Direct => Ok(false),
        TransformPath::Fast if !pow2 => Err(Error::UnsupportedSize(dims.to_vec())),
        TransformPath::Fast => Ok(true),
        TransformPath::Auto => Ok(pow2),
    }
}

/// VtFT through `V_t ≅ ℍ` and the split-based two-sided engine with the
/// time axis on the left.
fn vt_fast(data: &[Multivector], dims: [usize; 4], inverse: bool) -> Result<Vec<Multivector>> {
    let quats: Vec<Quaternion> = data
        .iter()
        .map(|m| VtElement::new(*m, VT_TOLERANCE).map(|v| iso_vt_to_h(&v)))
        .collect::<Result<_>>()?;
    let out = fft::two_sided_split(&quats, &dims, 0, inverse)?;
    Ok(out.into_iter().map(|q| iso_h_to_vt(q).into_multivector()).collect())
}

fn scaled(mut v: Vec<Multivector>, s: f64) -> Vec<Multivector> {
    v.iter_mut().for_each(|m| *m = *m * s);
    v
}

/// Volume-time transform of a `V_t`-valued field.
pub fn vtft_forward(f: &SpacetimeField4D, path: TransformPath) -> Result<STSpectrum4D> {
    require_vt(&f.data)?;
    let data = if use_fast(path, f.dims)? {
        vt_fast(&f.data, f.dims, false)?
    } else {
        direct_sum(&f.data, f.dims, -1.0)
    };
    Ok(STSpectrum4D { dims: f.dims, spacing: f.spacing, data })
}

/// Inverse volume-time transform of a `V_t`-valued spectrum.
pub fn vtft_inverse(spec: &STSpectrum4D, path: TransformPath) -> Result<SpacetimeField4D> {
    require_vt(&spec.data)?;
    let total = spec.data.len() as f64;
    let data = if use_fast(path, spec.dims)? {
        vt_fast(&spec.data, spec.dims, true)?
    } else {
        scaled(direct_sum(&spec.data, spec.dims, 1.0), 1.0 / total)
    };
    Ok(SpacetimeField4D { dims: spec.dims, spacing: spec.spacing, data })
}

/// `f± = ½(f ± e0 f i3)` pointwise, returned as `(f₊, f₋)`.
pub fn split_spacetime_pm(f: &SpacetimeField4D) -> (SpacetimeField4D, SpacetimeField4D) {
    let (plus, minus) = f.data.iter().map(split_multivector).unzip();
    (f.same_shape(plus), f.same_shape(minus))
}

/// Same split on a spectrum.
pub fn split_spectrum_pm(s: &STSpectrum4D) -> (STSpectrum4D, STSpectrum4D) {
    let (plus, minus) = s.data.iter().map(split_multivector).unzip();
    (s.same_shape(plus), s.same_shape(minus))
}

pub fn split_multivector(m: &Multivector) -> (Multivector, Multivector) {
    let sandwich = sta::e0() * *m * sta::i3();
    ((*m + sandwich) * 0.5, (*m - sandwich) * 0.5)
}

/// Right factors `{1, e1, e2, e3}` of the four-component decomposition.
fn right_factor(k: usize) -> Multivector {
    if k == 0 {
        sta::scalar(1.0)
    } else {
        sta::e(k)
    }
}

/// Splits one multivector as `g₀ + g₁e1 + g₂e2 + g₃e3` with `V_t`-valued
/// `g_k`. Each `b·e_k` (`b` a `V_t` blade) is `±` a distinct basis blade,
/// so every coefficient lands in exactly one slot.
pub fn decompose_multivector(m: &Multivector) -> [Multivector; 4] {
    let sig = Signature::CL31;
    core::array::from_fn(|k| {
        let mut g = Multivector::zero(sig);
        let ek = if k == 0 { 0 } else { 1 << (k - 1) };
        for b in VT_MASKS {
            let mask = b ^ ek;
            g.set(b, sig.product_sign(b, ek) * m.get(mask));
        }
        g
    })
}

/// Four `V_t`-valued fields `g_k` with `f = Σ g_k e_k` (`e_0 = 1`).
pub fn decompose_vt(f: &SpacetimeField4D) -> [SpacetimeField4D; 4] {
    let parts: Vec<[Multivector; 4]> = f.data.iter().map(decompose_multivector).collect();
    core::array::from_fn(|k| f.same_shape(parts.iter().map(|p| p[k]).collect()))
}

/// `Σ g_k e_k`.
pub fn recompose_vt(parts: &[SpacetimeField4D; 4]) -> Result<SpacetimeField4D> {
    for p in &parts[1..] {
        parts[0].check_shape(p)?;
    }
    let total = parts[0].data.len();
    let data = (0..total)
        .map(|i| {
            (0..4).fold(Multivector::zero(Signature::CL31), |acc, k| {
                acc + parts[k].data[i] * right_factor(k)
            })
        })
        .collect();
    Ok(parts[0].same_shape(data))
}

fn sft_via_decomposition(f: &SpacetimeField4D, path: TransformPath, inverse: bool) -> Result<Vec<Multivector>> {
    let parts = decompose_vt(f);
    let mut out = vec![Multivector::zero(Signature::CL31); f.data.len()];
    for (k, part) in parts.iter().enumerate() {
        let transformed = if inverse {
            let spec = STSpectrum4D { dims: part.dims, spacing: part.spacing, data: part.data.clone() };
            vtft_inverse(&spec, path)?.data
        } else {
            vtft_forward(part, path)?.data
        };
        let ek = right_factor(k);
        for (o, t) in out.iter_mut().zip(transformed) {
            *o += t * ek;
        }
    }
    Ok(out)
}

/// Spacetime transform of a general `Cl(3,1)` field, computed as four
/// volume-time transforms by right linearity.
pub fn sft_forward(f: &SpacetimeField4D, path: TransformPath) -> Result<STSpectrum4D> {
    let data = sft_via_decomposition(f, path, false)?;
    Ok(STSpectrum4D { dims: f.dims, spacing: f.spacing, data })
}

pub fn sft_inverse(spec: &STSpectrum4D, path: TransformPath) -> Result<SpacetimeField4D> {
    let as_field = SpacetimeField4D { dims: spec.dims, spacing: spec.spacing, data: spec.data.clone() };
    let data = sft_via_decomposition(&as_field, path, true)?;
    Ok(SpacetimeField4D { dims: spec.dims, spacing: spec.spacing, data })
}

/// Per-sample Clifford-product summation of the spacetime transform; the
/// oracle for [`sft_forward`]. Cost grows with the square of the sample
/// count.
pub fn sft_forward_direct(f: &SpacetimeField4D) -> STSpectrum4D {
    STSpectrum4D { dims: f.dims, spacing: f.spacing, data: direct_sum(&f.data, f.dims, -1.0) }
}

pub fn sft_inverse_direct(spec: &STSpectrum4D) -> SpacetimeField4D {
    let total = spec.data.len() as f64;
    let data = scaled(direct_sum(&spec.data, spec.dims, 1.0), 1.0 / total);
    SpacetimeField4D { dims: spec.dims, spacing: spec.spacing, data }
}

/// Transforms of the split halves with right-only kernels:
/// `F₊ = Σ f₊ e^{−i3(x⃗·u⃗ − ts)}` and `F₋ = Σ f₋ e^{−i3(x⃗·u⃗ + ts)}`.
/// Their sum is the spacetime transform of `f`.
pub fn minkowski_split_transform(f: &SpacetimeField4D) -> (STSpectrum4D, STSpectrum4D) {
    let (plus, minus) = split_spacetime_pm(f);
    let dims = f.dims;
    let total: usize = dims.iter().product();
    let spatial = dims[1] * dims[2] * dims[3];
    // Common denominator T·X·Y·Z for the combined phase.
    let i3 = sta::i3();
    let phases: Vec<Multivector> = (0..total)
        .map(|k| {
            let (c, s) = math::unit_root(k as i64, total);
            axis_exp(&i3, c, -s)
        })
        .collect();
    let positions: Vec<[usize; 4]> = (0..total).map(|i| unflatten(i, dims)).collect();
    let run = |g: &[Multivector], time_sign: i64| {
        collect_indexed(total, |bin| {
            let freq = positions[bin];
            let mut acc = Multivector::zero(Signature::CL31);
            for (v, &pos) in g.iter().zip(&positions) {
                let space = spatial_phase(freq, pos, dims) * dims[0] as i64;
                let time = ((freq[0] * pos[0]) % dims[0] * spatial) as i64;
                let k = (space + time_sign * time).rem_euclid(total as i64) as usize;
                acc += *v * phases[k];
            }
            acc
        })
    };
    let fp = run(&plus.data, -1);
    let fm = run(&minus.data, 1);
    (
        STSpectrum4D { dims, spacing: f.spacing, data: fp },
        STSpectrum4D { dims, spacing: f.spacing, data: fm },
    )
}

/// `(Σ‖f₊‖², Σ‖f₋‖²)`. The map `f ↦ e0 f i3` is an orthogonal involution
/// of the coefficient space, so the two halves are orthogonal and their
/// energies add up to the total.
pub fn wave_packet_energy_split(f: &SpacetimeField4D) -> (f64, f64) {
    let (plus, minus) = split_spacetime_pm(f);
    (plus.energy(), minus.energy())
}

/// `Σ ⟨f g†⟩₀` where `†` is the coefficient-wise adjoint, i.e. the
/// Euclidean inner product of coefficient vectors.
pub fn coefficient_inner(f: &[Multivector], g: &[Multivector]) -> f64 {
    f.iter()
        .zip(g)
        .map(|(a, b)| a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| x * y).sum::<f64>())
        .sum()
}

/// Applies a lattice automorphism: `g[x] = f[A x]`, indices modulo the grid.
pub fn apply_lattice_map(f: &SpacetimeField4D, a: &LinearMap4) -> Result<SpacetimeField4D> {
    let perm = lattice_permutation(a, f.dims)?;
    let data = (0..f.data.len())
        .map(|i| {
            let x = unflatten(i, f.dims);
            *f.get(permute(&perm, x))
        })
        .collect();
    Ok(f.same_shape(data))
}

fn lattice_permutation(a: &LinearMap4, dims: [usize; 4]) -> Result<[(usize, f64); 4]> {
    let perm = a
        .signed_permutation()
        .ok_or(Error::UnsupportedMap("only signed axis permutations are supported"))?;
    for (row, &(col, _)) in perm.iter().enumerate() {
        if dims[row] != dims[col] {
            return Err(Error::UnsupportedMap("permuted axes must have equal sizes"));
        }
    }
    Ok(perm)
}

fn permute(perm: &[(usize, f64); 4], x: [usize; 4]) -> [i64; 4] {
    core::array::from_fn(|row| {
        let (col, sign) = perm[row];
        sign as i64 * x[col] as i64
    })
}

/// Checks `{f(Ax)}^(u) = |det A⁻¹|{F₋(A⁻ᵀu) + F₊(U_{e0}A⁻ᵀU_{e0}u)}` on the
/// lattice for a signed axis permutation `A`; returns the relative error.
pub fn verify_sft_gl(a: &LinearMap4, f: &SpacetimeField4D, path: TransformPath) -> Result<f64> {
    lattice_permutation(a, f.dims)?;
    let lhs = sft_forward(&apply_lattice_map(f, a)?, path)?;
    let spec = sft_forward(f, path)?;
    let (plus, minus) = split_spectrum_pm(&spec);
    let adj_inv = a.inverse().adjoint();
    let reflected = adj_inv.conj_by_axis_reflection(0);
    let p_minus = lattice_permutation(&adj_inv, f.dims)?;
    let p_plus = lattice_permutation(&reflected, f.dims)?;
    let scale = math::abs(1.0 / a.det());
    let rhs: Vec<Multivector> = (0..spec.data.len())
        .map(|i| {
            let u = unflatten(i, f.dims);
            (*minus.get(permute(&p_minus, u)) + *plus.get(permute(&p_plus, u))) * scale
        })
        .collect();
    Ok(relative_frobenius(&lhs.data, &rhs))
}
