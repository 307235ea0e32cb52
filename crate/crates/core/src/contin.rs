//! Continuous-domain transforms by trapezoid quadrature on Gaussian test
//! functions, for laws that do not hold exactly on a finite lattice:
//! derivative and powers-of-`x,y` rules, shifts and modulations of
//! continuous arguments, and the `GL(ℝ²)` transformation law.

use alloc::vec;
use alloc::vec::Vec;

use crate::autom::{b_matrices, reflection_matrix, Automorphism, LinearMap2, Vector2};
use crate::fft::C64;
use crate::math;
use crate::par::collect_indexed;
use crate::quat::Quaternion;
use crate::{Error, Result};

/// Central finite-difference step in frequency units.
pub const FD_STEP: f64 = 1e-3;
/// Step used once the total derivative order exceeds two, where roundoff
/// from the `h^{−order}` amplification dominates at [`FD_STEP`].
pub const FD_STEP_HIGH_ORDER: f64 = 1e-2;

/// A real factor `P(x)·exp(−(x − c)²/(2σ²))` with polynomial `P` given by its
/// coefficients in ascending powers of `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianFactor {
    center: f64,
    sigma: f64,
    poly: Vec<f64>,
}

impl GaussianFactor {
    pub fn new(center: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::Precondition("Gaussian width must be positive"));
        }
        Ok(Self { center, sigma, poly: vec![1.0] })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn eval(&self, x: f64) -> f64 {
        let p = self.poly.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let s = (x - self.center) / self.sigma;
        p * math::exp(-0.5 * s * s)
    }

    /// `x^k` times this factor.
    pub fn times_monomial(&self, k: usize) -> Self {
        let mut poly = vec![0.0; k];
        poly.extend_from_slice(&self.poly);
        Self { poly, ..self.clone() }
    }

    /// `d/dx [P G] = (P' − P·(x − c)/σ²)·G`.
    pub fn derivative(&self) -> Self {
        let s2 = self.sigma * self.sigma;
        let mut poly = vec![0.0; self.poly.len() + 1];
        for (k, &p) in self.poly.iter().enumerate() {
            if k > 0 {
                poly[k - 1] += k as f64 * p;
            }
            poly[k + 1] -= p / s2;
            poly[k] += p * self.center / s2;
        }
        Self { poly, ..self.clone() }
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |g, _| g.derivative())
    }

    /// `∫ P(x) G(x) e^{−iωx} dx` in closed form. With `s = x − c` and
    /// `I_k = ∫ s^k G e^{−iωs} ds`, integration by parts gives
    /// `I_{k+1} = σ²(k I_{k−1} − iω I_k)`.
    pub fn fourier(&self, omega: f64) -> C64 {
        let s2 = self.sigma * self.sigma;
        let q = shift_polynomial(&self.poly, self.center);
        let mut moments = Vec::with_capacity(q.len());
        moments.push(C64::new(
            self.sigma * math::sqrt(math::TAU) * math::exp(-0.5 * s2 * omega * omega),
            0.0,
        ));
        for k in 1..q.len() {
            let prev = if k >= 2 { moments[k - 2] } else { C64::new(0.0, 0.0) };
            let next = (prev * (k - 1) as f64 - C64::new(0.0, omega) * moments[k - 1]) * s2;
            moments.push(next);
        }
        let sum: C64 = q.iter().zip(&moments).map(|(c, m)| m * c).sum();
        let (s, c) = math::sin_cos(-omega * self.center);
        sum * C64::new(c, s)
    }

    /// Interval holding all but a negligible tail: `c ± L·σ`.
    pub fn support(&self, half_width: f64) -> (f64, f64) {
        (self.center - half_width * self.sigma, self.center + half_width * self.sigma)
    }
}

/// Coefficients of `P(s + c)` in powers of `s`.
fn shift_polynomial(p: &[f64], c: f64) -> Vec<f64> {
    let mut out = vec![0.0; p.len()];
    for (k, &pk) in p.iter().enumerate() {
        let mut binom = 1.0;
        let mut cpow = 1.0;
        // (s + c)^k = Σ_j C(k, j) s^{k−j} c^j
        for j in 0..=k {
            out[k - j] += pk * binom * cpow;
            binom = binom * (k - j) as f64 / (j + 1) as f64;
            cpow *= c;
        }
    }
    out
}

/// `f(x, y) = q · X(x) · Y(y)` with Gaussian-times-polynomial factors. Since
/// `X` and `Y` are real, `q` sits in the normal form `r + 𝒊i + j𝒋 + 𝒊k𝒋`
/// with every `𝒊` to the left and every `𝒋` to the right.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticTestFunction {
    coeff: Quaternion,
    x: GaussianFactor,
    y: GaussianFactor,
}

impl AnalyticTestFunction {
    pub fn new(coeff: Quaternion, x: GaussianFactor, y: GaussianFactor) -> Self {
        Self { coeff, x, y }
    }

    /// `e^{−(x²+y²)/2}`.
    pub fn unit_gaussian() -> Self {
        Self::gaussian(Quaternion::ONE, (0.0, 0.0), (1.0, 1.0)).expect("unit widths are valid")
    }

    pub fn gaussian(coeff: Quaternion, center: (f64, f64), sigma: (f64, f64)) -> Result<Self> {
        Ok(Self {
            coeff,
            x: GaussianFactor::new(center.0, sigma.0)?,
            y: GaussianFactor::new(center.1, sigma.1)?,
        })
    }

    pub fn coeff(&self) -> Quaternion {
        self.coeff
    }

    pub fn x_factor(&self) -> &GaussianFactor {
        &self.x
    }

    pub fn y_factor(&self) -> &GaussianFactor {
        &self.y
    }

    pub fn with_coeff(&self, coeff: Quaternion) -> Self {
        Self { coeff, ..self.clone() }
    }

    pub fn eval(&self, x: f64, y: f64) -> Quaternion {
        self.coeff * (self.x.eval(x) * self.y.eval(y))
    }

    /// `x^m y^n f`.
    pub fn times_powers(&self, m: usize, n: usize) -> Self {
        Self { coeff: self.coeff, x: self.x.times_monomial(m), y: self.y.times_monomial(n) }
    }

    /// `∂^{m+n} f / ∂x^m ∂y^n`.
    pub fn partial(&self, m: usize, n: usize) -> Self {
        Self { coeff: self.coeff, x: self.x.nth_derivative(m), y: self.y.nth_derivative(n) }
    }

    /// Closed-form two-sided transform `X̂(u)|_𝒊 · q · Ŷ(v)|_𝒋`.
    pub fn analytic_qft(&self, u: f64, v: f64) -> Quaternion {
        let (a, b) = (self.x.fourier(u), self.y.fourier(v));
        Quaternion::new(a.re, a.im, 0.0, 0.0) * self.coeff * Quaternion::new(b.re, 0.0, b.im, 0.0)
    }

    /// Closed-form right-sided transform `q · X̂(u)|_𝒊 · Ŷ(v)|_𝒋`.
    pub fn analytic_qftr(&self, u: f64, v: f64) -> Quaternion {
        let (a, b) = (self.x.fourier(u), self.y.fourier(v));
        self.coeff * Quaternion::new(a.re, a.im, 0.0, 0.0) * Quaternion::new(b.re, 0.0, b.im, 0.0)
    }

    /// Integration box `[x0, x1] × [y0, y1]` covering `c ± Lσ` on each axis.
    pub fn support_box(&self, half_width: f64) -> [(f64, f64); 2] {
        [self.x.support(half_width), self.y.support(half_width)]
    }

    /// Probe frequencies `{−2, −1, 0, 1, 2}/σ` per axis.
    pub fn probe_grid(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(25);
        for a in -2..=2 {
            for b in -2..=2 {
                out.push((a as f64 / self.x.sigma, b as f64 / self.y.sigma));
            }
        }
        out
    }
}

/// Truncation half-width `L` (in units of σ) and samples per axis `S` of a
/// tensor-product trapezoid rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub half_width: f64,
    pub samples: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { half_width: 8.0, samples: 256 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.half_width >= 6.0) {
            return Err(Error::InvalidQuadrature("half-width must be at least 6σ"));
        }
        if self.samples < 128 {
            return Err(Error::InvalidQuadrature("at least 128 samples per axis are required"));
        }
        Ok(())
    }
}

/// Integrand values on a trapezoid grid, ready for transform evaluation at
/// any frequency.
#[derive(Debug, Clone)]
pub struct SampledIntegrand {
    xs: Vec<f64>,
    ys: Vec<f64>,
    wx: Vec<f64>,
    wy: Vec<f64>,
    /// Row `ix` holds `f(xs[ix], ys[·])`.
    values: Vec<Quaternion>,
}

fn trapezoid(lo: f64, hi: f64, samples: usize) -> (Vec<f64>, Vec<f64>) {
    let h = (hi - lo) / (samples - 1) as f64;
    let xs = (0..samples).map(|k| lo + h * k as f64).collect();
    let ws = (0..samples)
        .map(|k| if k == 0 || k == samples - 1 { 0.5 * h } else { h })
        .collect();
    (xs, ws)
}

impl SampledIntegrand {
    pub fn from_fn<F>(bounds: [(f64, f64); 2], samples: usize, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Quaternion + Sync + Send,
    {
        if samples < 2 || !(bounds[0].1 > bounds[0].0) || !(bounds[1].1 > bounds[1].0) {
            return Err(Error::InvalidQuadrature("empty integration box"));
        }
        let (xs, wx) = trapezoid(bounds[0].0, bounds[0].1, samples);
        let (ys, wy) = trapezoid(bounds[1].0, bounds[1].1, samples);
        let values = collect_indexed(samples * samples, |t| f(xs[t / samples], ys[t % samples]));
        Ok(Self { xs, ys, wx, wy, values })
    }

    /// Samples of `f` on its own support box.
    pub fn of(f: &AnalyticTestFunction, spec: &QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        Self::from_fn(f.support_box(spec.half_width), spec.samples, |x, y| f.eval(x, y))
    }

    /// Samples of `x ↦ f(A x)` on the bounding box of `A⁻¹(support box)`.
    pub fn of_composed(f: &AnalyticTestFunction, a: &LinearMap2, spec: &QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        let [(x0, x1), (y0, y1)] = f.support_box(spec.half_width);
        let inv = a.inverse();
        let corners = [[x0, y0], [x0, y1], [x1, y0], [x1, y1]].map(|c| inv.apply(c));
        let lo = |k: usize| corners.iter().map(|c| c[k]).fold(f64::INFINITY, f64::min);
        let hi = |k: usize| corners.iter().map(|c| c[k]).fold(f64::NEG_INFINITY, f64::max);
        let a = *a;
        Self::from_fn([(lo(0), hi(0)), (lo(1), hi(1))], spec.samples, move |x, y| {
            let [p, q] = a.apply([x, y]);
            f.eval(p, q)
        })
    }

    /// Pointwise `±` split of the samples, `(f₊, f₋)`.
    pub fn split_pm(&self) -> (Self, Self) {
        let (plus, minus) = self.values.iter().map(|q| q.split_pm()).unzip();
        (
            Self { values: plus, ..self.clone_grid() },
            Self { values: minus, ..self.clone_grid() },
        )
    }

    fn clone_grid(&self) -> Self {
        Self {
            xs: self.xs.clone(),
            ys: self.ys.clone(),
            wx: self.wx.clone(),
            wy: self.wy.clone(),
            values: Vec::new(),
        }
    }

    /// `Σ w e^{−𝒊xu} f e^{−𝒋yv}`.
    pub fn qft_at(&self, u: f64, v: f64) -> Quaternion {
        self.sum_rows(v, |x, row| Quaternion::exp_i(-x * u) * row)
    }

    /// `Σ w f e^{−𝒊xu} e^{−𝒋yv}`, accumulated per row as
    /// `Σ_y w f(x, y) · e^{−𝒊xu}` before the `𝒋` factor is applied.
    pub fn qftr_at(&self, u: f64, v: f64) -> Quaternion {
        let s = self.ys.len();
        let ex: Vec<Quaternion> = self.xs.iter().map(|&x| Quaternion::exp_i(-x * u)).collect();
        let ey: Vec<Quaternion> = self.ys.iter().map(|&y| Quaternion::exp_j(-y * v)).collect();
        let cols = collect_indexed(s, |iy| {
            let mut acc = Quaternion::ZERO;
            for ix in 0..self.xs.len() {
                acc += self.values[ix * s + iy] * ex[ix] * self.wx[ix];
            }
            acc * ey[iy] * self.wy[iy]
        });
        cols.into_iter().sum()
    }

    fn sum_rows(&self, v: f64, left: impl Fn(f64, Quaternion) -> Quaternion + Sync + Send) -> Quaternion {
        let s = self.ys.len();
        let ey: Vec<Quaternion> = self
            .ys
            .iter()
            .zip(&self.wy)
            .map(|(&y, &w)| Quaternion::exp_j(-y * v) * w)
            .collect();
        let rows = collect_indexed(self.xs.len(), |ix| {
            let row = &self.values[ix * s..(ix + 1) * s];
            let inner: Quaternion = row.iter().zip(&ey).map(|(&f, &e)| f * e).sum();
            left(self.xs[ix], inner) * self.wx[ix]
        });
        rows.into_iter().sum()
    }
}

/// Two-sided transform of `f` at `(u, v)` by quadrature.
pub fn cqft_eval(f: &AnalyticTestFunction, u: f64, v: f64, spec: &QuadratureSpec) -> Result<Quaternion> {
    Ok(SampledIntegrand::of(f, spec)?.qft_at(u, v))
}

/// Right-sided transform of `f` at `(u, v)` by quadrature.
pub fn cqftr_eval(f: &AnalyticTestFunction, u: f64, v: f64, spec: &QuadratureSpec) -> Result<Quaternion> {
    Ok(SampledIntegrand::of(f, spec)?.qftr_at(u, v))
}

/// Which transform a law is checked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sidedness {
    TwoSided,
    RightSided,
}

impl SampledIntegrand {
    pub fn transform_at(&self, kind: Sidedness, u: f64, v: f64) -> Quaternion {
        match kind {
            Sidedness::TwoSided => self.qft_at(u, v),
            Sidedness::RightSided => self.qftr_at(u, v),
        }
    }
}

/// `max_k |a_k − b_k| / max_k |b_k|`.
pub fn relative_deviation(a: &[Quaternion], b: &[Quaternion]) -> f64 {
    let num = a.iter().zip(b).map(|(x, y)| (*x - *y).norm()).fold(0.0, f64::max);
    let den = b.iter().map(|y| y.norm()).fold(0.0, f64::max);
    num / den.max(f64::MIN_POSITIVE)
}

fn stencil(order: usize) -> &'static [(i32, f64)] {
    match order {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        _ => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
    }
}

/// Central finite-difference `∂^{m+n}F/∂u^m∂v^n` for `m, n ≤ 2`.
pub fn mixed_derivative(f: impl Fn(f64, f64) -> Quaternion, u: f64, v: f64, m: usize, n: usize) -> Quaternion {
    let h = if m + n > 2 { FD_STEP_HIGH_ORDER } else { FD_STEP };
    let mut acc = Quaternion::ZERO;
    for &(a, wa) in stencil(m) {
        for &(b, wb) in stencil(n) {
            acc += f(u + a as f64 * h, v + b as f64 * h) * (wa * wb);
        }
    }
    acc * (1.0 / libm::pow(h, (m + n) as f64))
}

fn quaternion_power(q: Quaternion, n: usize) -> Quaternion {
    (0..n).fold(Quaternion::ONE, |acc, _| acc * q)
}

/// Deviation of a law together with the deviation of a deliberately wrong
/// variant that a correct implementation must reject.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LawReport {
    pub deviation: f64,
    pub control_deviation: f64,
}

fn check_powers(f: &AnalyticTestFunction, m: usize, n: usize, spec: &QuadratureSpec, kind: Sidedness) -> Result<LawReport> {
    if m > 2 || n > 2 {
        return Err(Error::Precondition("powers are supported up to order 2 per axis"));
    }
    let base = SampledIntegrand::of(f, spec)?;
    let weighted = SampledIntegrand::of(&f.times_powers(m, n), spec)?;
    let (im, jn) = (quaternion_power(Quaternion::I, m), quaternion_power(Quaternion::J, n));
    let probes = f.probe_grid();
    let mut lhs = Vec::with_capacity(probes.len());
    let mut rhs = Vec::with_capacity(probes.len());
    let mut wrong = Vec::with_capacity(probes.len());
    for &(u, v) in &probes {
        lhs.push(weighted.transform_at(kind, u, v));
        let d = if m + n == 0 {
            base.transform_at(kind, u, v)
        } else {
            mixed_derivative(|a, b| base.transform_at(kind, a, b), u, v, m, n)
        };
        rhs.push(im * d * jn);
        wrong.push(jn * d * im);
    }
    Ok(LawReport { deviation: relative_deviation(&lhs, &rhs), control_deviation: relative_deviation(&lhs, &wrong) })
}

fn check_partials(f: &AnalyticTestFunction, m: usize, n: usize, spec: &QuadratureSpec, kind: Sidedness) -> Result<LawReport> {
    let base = SampledIntegrand::of(f, spec)?;
    let derived = SampledIntegrand::of(&f.partial(m, n), spec)?;
    let probes = f.probe_grid();
    let mut lhs = Vec::with_capacity(probes.len());
    let mut rhs = Vec::with_capacity(probes.len());
    let mut wrong = Vec::with_capacity(probes.len());
    for &(u, v) in &probes {
        let iu = quaternion_power(Quaternion::new(0.0, u, 0.0, 0.0), m);
        let jv = quaternion_power(Quaternion::new(0.0, 0.0, v, 0.0), n);
        let fhat = base.transform_at(kind, u, v);
        lhs.push(derived.transform_at(kind, u, v));
        rhs.push(iu * fhat * jv);
        wrong.push(jv * fhat * iu);
    }
    Ok(LawReport { deviation: relative_deviation(&lhs, &rhs), control_deviation: relative_deviation(&lhs, &wrong) })
}

/// Two-sided powers law `x^m y^n f ↦ 𝒊^m ∂^{m+n}f̂/∂u^m∂v^n 𝒋^n`; the
/// control puts the unit powers on the opposite sides.
pub fn verify_powers_xy(f: &AnalyticTestFunction, m: usize, n: usize, spec: &QuadratureSpec) -> Result<LawReport> {
    check_powers(f, m, n, spec, Sidedness::TwoSided)
}

/// Two-sided derivative law `∂^{m+n}f/∂x^m∂y^n ↦ (𝒊u)^m f̂ (𝒋v)^n`; the
/// control exchanges the sides of the two factors.
pub fn verify_partial_deriv(f: &AnalyticTestFunction, m: usize, n: usize, spec: &QuadratureSpec) -> Result<LawReport> {
    check_partials(f, m, n, spec, Sidedness::TwoSided)
}

/// The unmodified powers law applied to the right-sided transform; it holds
/// only when `𝒊f = f𝒊`.
pub fn verify_powers_xy_right(f: &AnalyticTestFunction, m: usize, n: usize, spec: &QuadratureSpec) -> Result<LawReport> {
    check_powers(f, m, n, spec, Sidedness::RightSided)
}

/// The unmodified derivative law applied to the right-sided transform; it
/// holds only when `𝒊f = f𝒊`.
pub fn verify_partial_deriv_right(f: &AnalyticTestFunction, m: usize, n: usize, spec: &QuadratureSpec) -> Result<LawReport> {
    check_partials(f, m, n, spec, Sidedness::RightSided)
}

/// Outcome of a `GL(ℝ²)` law check over the probe grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlReport {
    /// Quadrature LHS against `|det A⁻¹|{f̂₋(A⁻ᵀu) + f̂₊(U_{e1}A⁻ᵀU_{e1}u)}`.
    pub deviation: f64,
    /// Geometric form against the matrix form built from `B±`.
    pub matrix_vs_geometric: f64,
    /// LHS against the matrix form with `f̂₊` fed `B₊u` and `f̂₋` fed `B₋u`.
    pub swapped_halves_deviation: f64,
    /// LHS against the geometric form with `det A⁻¹` in place of its
    /// absolute value; equals `deviation` when `det A > 0`.
    pub signed_determinant_deviation: f64,
}

/// Checks `{f(Ax)}^(u) = |det A⁻¹|{f̂₋(A⁻ᵀu) + f̂₊(U_{e1}A⁻ᵀU_{e1}u)}`.
///
/// The matrix form evaluates `f̂` at `P = f̂(B₊u)` and `Q = f̂(B₋u)` and
/// recombines `|det B|{½(P + Q) + ½𝒊(Q − P)𝒋} = |det B|{P₋ + Q₊}`.
pub fn verify_gl_law(a: &LinearMap2, f: &AnalyticTestFunction, spec: &QuadratureSpec) -> Result<GlReport> {
    let (b_plus, b_minus, det_b) = b_matrices(a)?;
    let lhs_samples = SampledIntegrand::of_composed(f, a, spec)?;
    let base = SampledIntegrand::of(f, spec)?;
    let (plus, minus) = base.split_pm();

    let adj_inv = a.inverse().adjoint();
    let reflected = adj_inv.conj_by_axis_reflection(0);
    let scale = math::abs(det_b);

    let probes = f.probe_grid();
    let evaluate = |u: f64, v: f64| {
        let lhs = lhs_samples.qft_at(u, v);
        let [pu, pv] = adj_inv.apply([u, v]);
        let [ru, rv] = reflected.apply([u, v]);
        let geometric = minus.qft_at(pu, pv) + plus.qft_at(ru, rv);

        let [bpu, bpv] = b_plus.apply([u, v]);
        let [bmu, bmv] = b_minus.apply([u, v]);
        let p = base.qft_at(bpu, bpv);
        let q = base.qft_at(bmu, bmv);
        let ij = |x: Quaternion| Quaternion::I * x * Quaternion::J;
        let matrix = (p + q) * 0.5 + ij(q - p) * 0.5;
        let swapped = (p + q) * 0.5 + ij(p - q) * 0.5;
        (lhs, geometric * scale, matrix * scale, swapped * scale, geometric * det_b)
    };
    let rows: Vec<_> = probes.iter().map(|&(u, v)| evaluate(u, v)).collect();
    let col = |k: usize| -> Vec<Quaternion> {
        rows.iter()
            .map(|r| match k {
                0 => r.0,
                1 => r.1,
                2 => r.2,
                3 => r.3,
                _ => r.4,
            })
            .collect()
    };
    let (lhs, geo, mat, swp, sgn) = (col(0), col(1), col(2), col(3), col(4));
    Ok(GlReport {
        deviation: relative_deviation(&lhs, &geo),
        matrix_vs_geometric: relative_deviation(&mat, &geo),
        swapped_halves_deviation: relative_deviation(&lhs, &swp),
        signed_determinant_deviation: relative_deviation(&lhs, &sgn),
    })
}

/// Reflection law for `U_a`: `{f(U_a x)}^(u) = f̂₋(U_a u) + f̂₊(U_{a′} u)` with
/// `a′ = U_{e1} a`. Returns the quadrature deviation over the probe grid.
pub fn verify_reflection_law(a: Vector2, f: &AnalyticTestFunction, spec: &QuadratureSpec) -> Result<f64> {
    let ua = reflection_matrix(a)?;
    let ua_prime = reflection_matrix([-a[0], a[1]])?;
    let lhs_samples = SampledIntegrand::of_composed(f, &ua, spec)?;
    let (plus, minus) = SampledIntegrand::of(f, spec)?.split_pm();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for (u, v) in f.probe_grid() {
        lhs.push(lhs_samples.qft_at(u, v));
        let [mu, mv] = ua.apply([u, v]);
        let [pu, pv] = ua_prime.apply([u, v]);
        rhs.push(minus.qft_at(mu, mv) + plus.qft_at(pu, pv));
    }
    Ok(relative_deviation(&lhs, &rhs))
}

/// Rotation by `θ`: `{f(Rx)}^(u) = f̂₋(Ru) + f̂₊(R⁻¹u)`. The control feeds
/// `R⁻¹u` to `f̂₋` and `Ru` to `f̂₊` instead.
pub fn verify_rotation_law(theta: f64, f: &AnalyticTestFunction, spec: &QuadratureSpec) -> Result<LawReport> {
    let r = LinearMap2::rotation(theta);
    let r_inv = r.inverse();
    let lhs_samples = SampledIntegrand::of_composed(f, &r, spec)?;
    let (plus, minus) = SampledIntegrand::of(f, spec)?.split_pm();
    let (mut lhs, mut rhs, mut wrong) = (Vec::new(), Vec::new(), Vec::new());
    for (u, v) in f.probe_grid() {
        lhs.push(lhs_samples.qft_at(u, v));
        let [a, b] = r.apply([u, v]);
        let [c, d] = r_inv.apply([u, v]);
        rhs.push(minus.qft_at(a, b) + plus.qft_at(c, d));
        wrong.push(minus.qft_at(c, d) + plus.qft_at(a, b));
    }
    Ok(LawReport { deviation: relative_deviation(&lhs, &rhs), control_deviation: relative_deviation(&lhs, &wrong) })
}

/// Shift and modulation rows for continuous offsets: returns the deviations
/// of `f(x − x0) ↦ e^{−𝒊x0u} f̂ e^{−𝒋y0v}` and
/// `e^{𝒊xu0} f e^{𝒋yv0} ↦ f̂(u − u0, v − v0)`.
pub fn verify_shift_modulation(
    f: &AnalyticTestFunction,
    shift: (f64, f64),
    modulation: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    spec.validate()?;
    let [(x0, x1), (y0, y1)] = f.support_box(spec.half_width);
    let (sx, sy) = shift;
    let (mu, mv) = modulation;
    let shifted = SampledIntegrand::from_fn([(x0 + sx, x1 + sx), (y0 + sy, y1 + sy)], spec.samples, |x, y| {
        f.eval(x - sx, y - sy)
    })?;
    let modulated = SampledIntegrand::from_fn([(x0, x1), (y0, y1)], spec.samples, |x, y| {
        Quaternion::exp_i(x * mu) * f.eval(x, y) * Quaternion::exp_j(y * mv)
    })?;
    let base = SampledIntegrand::of(f, spec)?;
    let (mut ls, mut rs, mut lm, mut rm) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (u, v) in f.probe_grid() {
        ls.push(shifted.qft_at(u, v));
        rs.push(Quaternion::exp_i(-sx * u) * base.qft_at(u, v) * Quaternion::exp_j(-sy * v));
        lm.push(modulated.qft_at(u, v));
        rm.push(base.qft_at(u - mu, v - mv));
    }
    Ok((relative_deviation(&ls, &rs), relative_deviation(&lm, &rm)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_6, TAU};

    fn generic() -> AnalyticTestFunction {
        AnalyticTestFunction::gaussian(Quaternion::new(0.3, 0.5, -0.7, 0.4), (0.4, -0.3), (1.0, 0.8)).unwrap()
    }

    #[test]
    fn unit_gaussian_transform() {
        let f = AnalyticTestFunction::unit_gaussian();
        let spec = QuadratureSpec::default();
        let dc = cqft_eval(&f, 0.0, 0.0, &spec).unwrap();
        assert!(dc.max_abs_diff(Quaternion::real(TAU)) < 1e-12);
        for (u, v) in [(1.0, -0.5), (2.0, 3.0), (-4.0, 4.0)] {
            let want = TAU * libm::exp(-(u * u + v * v) / 2.0);
            let got = cqft_eval(&f, u, v, &spec).unwrap();
            assert!((got - Quaternion::real(want)).norm() <= 1e-4 * TAU);
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let spec = QuadratureSpec::default();
        let f = generic().times_powers(1, 2);
        let s = SampledIntegrand::of(&f, &spec).unwrap();
        for (u, v) in [(0.0, 0.0), (1.3, -0.7), (-2.0, 2.5)] {
            assert!(s.qft_at(u, v).max_abs_diff(f.analytic_qft(u, v)) < 1e-10);
            assert!(s.qftr_at(u, v).max_abs_diff(f.analytic_qftr(u, v)) < 1e-10);
        }
    }

    #[test]
    fn k_coefficient_sits_between_kernels() {
        let g = AnalyticTestFunction::unit_gaussian();
        let spec = QuadratureSpec::default();
        let (u, v) = (0.7, -1.1);
        let gk = cqft_eval(&g.with_coeff(Quaternion::K), u, v, &spec).unwrap();
        let want = Quaternion::I * cqft_eval(&g, u, v, &spec).unwrap() * Quaternion::J;
        assert!(gk.max_abs_diff(want) < 1e-12);
    }

    #[test]
    fn factor_derivatives() {
        let g = GaussianFactor::new(0.3, 0.7).unwrap().times_monomial(2);
        let d = g.derivative();
        let h = 1e-5;
        for x in [-1.0, 0.2, 1.4] {
            let fd = (g.eval(x + h) - g.eval(x - h)) / (2.0 * h);
            assert!((fd - d.eval(x)).abs() < 1e-8);
        }
        assert_eq!(shift_polynomial(&[1.0, 2.0, 3.0], 2.0), vec![17.0, 14.0, 3.0]);
    }

    #[test]
    fn spec_validation() {
        let f = AnalyticTestFunction::unit_gaussian();
        let bad = QuadratureSpec { half_width: 5.0, samples: 256 };
        assert!(matches!(cqft_eval(&f, 0.0, 0.0, &bad), Err(Error::InvalidQuadrature(_))));
        let bad = QuadratureSpec { half_width: 8.0, samples: 64 };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn powers_and_derivatives() {
        let spec = QuadratureSpec::default();
        let r = verify_powers_xy(&AnalyticTestFunction::unit_gaussian(), 0, 0, &spec).unwrap();
        assert!(r.deviation <= 1e-12);
        let r = verify_powers_xy(&AnalyticTestFunction::unit_gaussian(), 1, 0, &spec).unwrap();
        assert!(r.deviation <= 1e-3);
        let r = verify_powers_xy(&generic(), 1, 1, &spec).unwrap();
        assert!(r.deviation <= 1e-3 && r.control_deviation > 1e-1);
        let r = verify_partial_deriv(&AnalyticTestFunction::unit_gaussian(), 1, 0, &spec).unwrap();
        assert!(r.deviation <= 1e-4);
        let r = verify_partial_deriv(&generic(), 0, 1, &spec).unwrap();
        assert!(r.deviation <= 1e-4 && r.control_deviation > 1e-1);
    }

    #[test]
    fn gl_identity_and_stretch() {
        let spec = QuadratureSpec::default();
        let f = generic();
        let r = verify_gl_law(&LinearMap2::IDENTITY, &f, &spec).unwrap();
        assert!(r.deviation <= 1e-6 && r.matrix_vs_geometric <= 1e-12);
        let r = verify_gl_law(&LinearMap2::diag(2.0, 1.0).unwrap(), &f, &spec).unwrap();
        assert!(r.deviation <= 1e-4);
        // Stretch row: {f(2x, y)}^(u, v) = ½ f̂(u/2, v).
        let s = SampledIntegrand::of_composed(&f, &LinearMap2::diag(2.0, 1.0).unwrap(), &spec).unwrap();
        let base = SampledIntegrand::of(&f, &spec).unwrap();
        let (u, v) = (1.5, -0.5);
        assert!(s.qft_at(u, v).max_abs_diff(base.qft_at(u / 2.0, v) * 0.5) < 1e-4);
    }

    #[test]
    fn gl_rotation_and_negative_determinant() {
        let spec = QuadratureSpec::default();
        let f = generic();
        let r = verify_gl_law(&LinearMap2::rotation(FRAC_PI_6), &f, &spec).unwrap();
        assert!(r.deviation <= 1e-4 && r.matrix_vs_geometric <= 1e-10);
        assert!(r.swapped_halves_deviation > 1e-1);
        let rot = verify_rotation_law(FRAC_PI_6, &f, &spec).unwrap();
        assert!(rot.deviation <= 1e-4 && rot.control_deviation > 1e-1);

        let r = verify_gl_law(&LinearMap2::diag(-2.0, 1.0).unwrap(), &f, &spec).unwrap();
        assert!(r.deviation <= 1e-4);
        assert!(r.signed_determinant_deviation > 1.0);
    }

    #[test]
    fn reflection_and_shift_rows() {
        let spec = QuadratureSpec::default();
        let f = generic();
        assert!(verify_reflection_law([1.0, 2.0], &f, &spec).unwrap() <= 1e-4);
        let (s, m) = verify_shift_modulation(&f, (0.7, -1.2), (0.5, 1.5), &spec).unwrap();
        assert!(s <= 1e-4 && m <= 1e-4);
    }

    #[test]
    fn right_sided_footnote_conditions() {
        let spec = QuadratureSpec::default();
        let commuting = generic().with_coeff(Quaternion::new(0.6, -0.8, 0.0, 0.0));
        assert!(verify_partial_deriv_right(&commuting, 1, 1, &spec).unwrap().deviation <= 1e-4);
        assert!(verify_partial_deriv_right(&generic(), 1, 1, &spec).unwrap().deviation > 1e-1);
        assert!(verify_powers_xy_right(&commuting, 1, 0, &spec).unwrap().deviation <= 1e-3);
        assert!(verify_powers_xy_right(&generic(), 1, 0, &spec).unwrap().deviation > 1e-1);
    }
}
