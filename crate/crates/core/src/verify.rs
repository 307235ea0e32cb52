//! Seeded numerical checks of the algebraic identities and transform laws,
//! grouped into topics and suites. Every check records the measured
//! deviation next to its tolerance; negative controls must exceed theirs.
//!
//! Relative deviations use the natural scale of each identity: Frobenius
//! norms for field equalities, `‖f‖·‖g‖` for inner products, and the total
//! energy for Parseval.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autom::{self, Automorphism, LinearMap2, LinearMap4};
use crate::clifford::{self, sta, Multivector, Signature, VtElement};
use crate::contin::{self, AnalyticTestFunction, QuadratureSpec};
use crate::math;
use crate::qft2d::{self, QSpectrum2D, QuaternionField2D};
use crate::quat::Quaternion;
use crate::spacetime::{self, STSpectrum4D, SpacetimeField4D};
use crate::{Error, Result, TransformPath};

/// Whether a check passes by staying within or by exceeding its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    AtMost,
    /// Negative control: the identity must visibly fail.
    Exceeds,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub expect: Expect,
}

impl Check {
    pub fn at_most(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self { name: name.into(), deviation, tolerance, expect: Expect::AtMost }
    }

    pub fn exceeds(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self { name: name.into(), deviation, tolerance, expect: Expect::Exceeds }
    }

    /// NaN deviations never pass.
    pub fn passed(&self) -> bool {
        match self.expect {
            Expect::AtMost => self.deviation <= self.tolerance,
            Expect::Exceeds => self.deviation > self.tolerance,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.expect {
            Expect::AtMost => "<=",
            Expect::Exceeds => "> ",
        };
        write!(
            f,
            "{:<4} {:<52} {:>11.3e} {} {:.1e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.deviation,
            rel,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Quat,
    Clifford,
    Qft,
    Qftr,
    Gl2,
    Spacetime,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Quat,
        Suite::Clifford,
        Suite::Qft,
        Suite::Qftr,
        Suite::Gl2,
        Suite::Spacetime,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Quat => "quat",
            Suite::Clifford => "clifford",
            Suite::Qft => "qft",
            Suite::Qftr => "qftr",
            Suite::Gl2 => "gl2",
            Suite::Spacetime => "spacetime",
            Suite::All => "all",
        }
    }

    pub fn topics(self) -> &'static [Topic] {
        use Topic::*;
        match self {
            Suite::Quat => &[QuatAlgebra],
            Suite::Clifford => &[CliffordFoundations],
            Suite::Qft => &[QftRoundTrip, QftOracle, QftEnergy, QftPlancherelControl, QftLatticeLaws],
            Suite::Qftr => &[QftrRoundTrip, QftrOracle, QftrEnergy, QftrLatticeLaws, QftrContinuousConditions],
            Suite::Gl2 => &[Automorphisms, Gl2Continuous, DerivativeLaws],
            Suite::Spacetime => &[SpacetimeRoundTrip, SpacetimeOracle, SpacetimeLaws],
            Suite::All => &Topic::ALL,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s)
            .ok_or(Error::Precondition("unknown suite name"))
    }
}

/// A group of related checks with its own random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topic {
    QuatAlgebra,
    CliffordFoundations,
    QftRoundTrip,
    QftrRoundTrip,
    SpacetimeRoundTrip,
    QftOracle,
    QftrOracle,
    SpacetimeOracle,
    QftEnergy,
    QftrEnergy,
    QftPlancherelControl,
    QftLatticeLaws,
    QftrLatticeLaws,
    QftrContinuousConditions,
    Automorphisms,
    Gl2Continuous,
    DerivativeLaws,
    SpacetimeLaws,
}

impl Topic {
    pub const ALL: [Topic; 18] = [
        Topic::QuatAlgebra,
        Topic::CliffordFoundations,
        Topic::QftRoundTrip,
        Topic::QftrRoundTrip,
        Topic::SpacetimeRoundTrip,
        Topic::QftOracle,
        Topic::QftrOracle,
        Topic::SpacetimeOracle,
        Topic::QftEnergy,
        Topic::QftrEnergy,
        Topic::QftPlancherelControl,
        Topic::QftLatticeLaws,
        Topic::QftrLatticeLaws,
        Topic::QftrContinuousConditions,
        Topic::Automorphisms,
        Topic::Gl2Continuous,
        Topic::DerivativeLaws,
        Topic::SpacetimeLaws,
    ];

    /// Runs the topic's checks with a random stream derived from `seed`.
    pub fn run(self, seed: u64) -> Result<Vec<Check>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(self as u64);
        let rng = &mut rng;
        match self {
            Topic::QuatAlgebra => quat_algebra(rng),
            Topic::CliffordFoundations => clifford_foundations(rng),
            Topic::QftRoundTrip => qft_round_trip(rng),
            Topic::QftrRoundTrip => qftr_round_trip(rng),
            Topic::SpacetimeRoundTrip => spacetime_round_trip(rng),
            Topic::QftOracle => qft_oracle(rng),
            Topic::QftrOracle => qftr_oracle(rng),
            Topic::SpacetimeOracle => spacetime_oracle(rng),
            Topic::QftEnergy => qft_energy(rng),
            Topic::QftrEnergy => qftr_energy(rng),
            Topic::QftPlancherelControl => qft_plancherel_control(rng),
            Topic::QftLatticeLaws => qft_lattice_laws(rng),
            Topic::QftrLatticeLaws => qftr_lattice_laws(rng),
            Topic::QftrContinuousConditions => qftr_continuous_conditions(),
            Topic::Automorphisms => automorphisms(rng),
            Topic::Gl2Continuous => gl2_continuous(rng),
            Topic::DerivativeLaws => derivative_laws(),
            Topic::SpacetimeLaws => spacetime_laws(rng),
        }
    }
}

/// All checks of `suite`, deterministic in `seed`.
pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for topic in suite.topics() {
        out.extend(topic.run(seed)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// random inputs

pub fn random_quaternion(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

pub fn random_field(rng: &mut impl Rng, m: usize, n: usize) -> QuaternionField2D {
    QuaternionField2D::from_fn(m, n, |_, _| random_quaternion(rng)).expect("positive dimensions")
}

fn random_complex_i(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), 0.0, 0.0)
}

fn random_complex_j(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(rng.gen_range(-1.0..1.0), 0.0, rng.gen_range(-1.0..1.0), 0.0)
}

/// Random multivector supported on blades whose mask lies within `allowed`.
pub fn random_multivector(rng: &mut impl Rng, sig: Signature, allowed: usize) -> Multivector {
    let mut m = Multivector::zero(sig);
    for mask in 0..sig.blade_count() {
        if mask & !allowed == 0 {
            m.set(mask, rng.gen_range(-1.0..1.0));
        }
    }
    m
}

pub fn random_spacetime(rng: &mut impl Rng, dims: [usize; 4], vt_only: bool) -> SpacetimeField4D {
    SpacetimeField4D::from_fn(dims, |_| {
        if vt_only {
            clifford::iso_h_to_vt(random_quaternion(rng)).into_multivector()
        } else {
            random_multivector(rng, Signature::CL31, 0b1111)
        }
    })
    .expect("positive dimensions")
}

fn as_spectrum(f: &QuaternionField2D) -> QSpectrum2D {
    let (dx, dy) = f.spacing();
    QSpectrum2D::with_spacing(f.width(), f.height(), dx, dy, f.data().to_vec()).expect("valid shape")
}

fn rel(a: &[Quaternion], b: &[Quaternion]) -> f64 {
    qft2d::relative_frobenius(a, b)
}

fn combine(f: &QuaternionField2D, g: &QuaternionField2D, op: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Vec<Quaternion> {
    f.data().iter().zip(g.data()).map(|(&a, &b)| op(a, b)).collect()
}

fn with_data(f: &QuaternionField2D, data: Vec<Quaternion>) -> QuaternionField2D {
    QuaternionField2D::new(f.width(), f.height(), data).expect("same shape")
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |a, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
}

// ---------------------------------------------------------------------------
// quaternions and Clifford algebras

fn quat_algebra(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (mut assoc, mut conj, mut norm, mut split, mut ideal, mut ij, mut cyc) = (0f64, 0f64, 0f64, 0f64, 0f64, 0f64, 0f64);
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    for _ in 0..10_000 {
        let (p, q, r) = (random_quaternion(rng), random_quaternion(rng), random_quaternion(rng));
        assoc = assoc.max(((p * q) * r).max_abs_diff(p * (q * r)));
        conj = conj.max((p * q).conj().max_abs_diff(q.conj() * p.conj()));
        norm = norm.max(math::abs((p * q).norm() - p.norm() * q.norm()));
        let (qp, qm) = q.split_pm();
        split = split
            .max((qp + qm).max_abs_diff(q))
            .max((i * qp * j).max_abs_diff(qp))
            .max((i * qm * j).max_abs_diff(-qm));
        let cp = Quaternion::new(q.r + q.k, q.i - q.j, 0.0, 0.0);
        let cm = Quaternion::new(q.r - q.k, q.i + q.j, 0.0, 0.0);
        ideal = ideal
            .max(qp.max_abs_diff(cp * (Quaternion::ONE + k) * 0.5))
            .max(qm.max_abs_diff(cm * (Quaternion::ONE - k) * 0.5));
        let [a, b, c, d] = q.to_array();
        let form = Quaternion::real(a) + i * b + Quaternion::real(c) * j + i * Quaternion::real(d) * j;
        ij = ij.max(Quaternion::from_ij_form(a, b, c, d).max_abs_diff(form));
        cyc = cyc.max(math::abs((p * q * r).scalar_part() - (q * r * p).scalar_part()));
    }
    let basis = max_of([
        (i * i).max_abs_diff(-Quaternion::ONE),
        (j * j).max_abs_diff(-Quaternion::ONE),
        (k * k).max_abs_diff(-Quaternion::ONE),
        (i * j).max_abs_diff(k),
        (j * k).max_abs_diff(i),
        (k * i).max_abs_diff(j),
        (i * j * k).max_abs_diff(-Quaternion::ONE),
    ]);
    Ok(vec_of([
        Check::at_most("quat: basis products", basis, 0.0),
        Check::at_most("quat: associativity (1e4 triples)", assoc, 1e-14),
        Check::at_most("quat: conjugate reverses products", conj, 1e-14),
        Check::at_most("quat: norm is multiplicative", norm, 1e-14),
        Check::at_most("quat: split sums back, i q± j = ±q±", split, 1e-15),
        Check::at_most("quat: split halves in (1±k)/2 ideals", ideal, 1e-15),
        Check::at_most("quat: ij-form normal order", ij, 1e-15),
        Check::at_most("quat: cyclic scalar part", cyc, 1e-14),
    ]))
}

fn vec_of<const N: usize>(checks: [Check; N]) -> Vec<Check> {
    checks.into_iter().collect()
}

fn clifford_foundations(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    const CASES: usize = 1000;
    let sigs = [Signature::CL02, Signature::CL20, Signature::CL30, Signature::CL31, Signature::new(2, 2)?, Signature::new(1, 3)?];
    let (mut assoc, mut rev) = (0f64, 0f64);
    for _ in 0..10 * CASES {
        for &sig in &sigs {
            let all = sig.blade_count() - 1;
            let (a, b, c) = (random_multivector(rng, sig, all), random_multivector(rng, sig, all), random_multivector(rng, sig, all));
            assoc = assoc.max(((a * b) * c).max_abs_diff(&(a * (b * c))));
            rev = rev.max((a * b).reverse().max_abs_diff(&(b.reverse() * a.reverse())));
        }
    }
    let minus_one = sta::scalar(-1.0);
    let squares = max_of([
        (sta::e0() * sta::e0()).max_abs_diff(&minus_one),
        (sta::i3() * sta::i3()).max_abs_diff(&minus_one),
        (sta::i4() * sta::i4()).max_abs_diff(&minus_one),
    ]);
    let mut comm = 0f64;
    for _ in 0..CASES {
        // Arbitrary element of the spatial subalgebra Cl(3,0) ⊂ Cl(3,1).
        let s = random_multivector(rng, Signature::CL31, 0b0111);
        comm = comm.max((sta::i3() * s).max_abs_diff(&(s * sta::i3())));
    }
    for k in 1..=3 {
        comm = comm.max((sta::i3() * sta::e(k)).max_abs_diff(&(sta::e(k) * sta::i3())));
    }
    let dual = sta::e0().dual()?.max_abs_diff(&sta::i3());
    let anti = (sta::e0() * sta::i3()).max_abs_diff(&-(sta::i3() * sta::e0()));

    let (mut h02, mut h30, mut hvt, mut inv, mut closure) = (0f64, 0f64, 0f64, 0f64, 0f64);
    for _ in 0..CASES {
        let (p, q) = (random_quaternion(rng), random_quaternion(rng));
        h02 = h02.max(clifford::iso_h_to_cl02(p * q).max_abs_diff(&(clifford::iso_h_to_cl02(p) * clifford::iso_h_to_cl02(q))));
        h30 = h30.max(
            clifford::iso_h_to_cl30plus(p * q)
                .max_abs_diff(&(clifford::iso_h_to_cl30plus(p) * clifford::iso_h_to_cl30plus(q))),
        );
        let prod: VtElement = clifford::iso_h_to_vt(p) * clifford::iso_h_to_vt(q);
        if !prod.as_multivector().supported_on(&clifford::VT_MASKS, 1e-12) {
            closure = 1.0;
        }
        hvt = hvt.max(clifford::iso_h_to_vt(p * q).as_multivector().max_abs_diff(prod.as_multivector()));
        inv = inv
            .max(clifford::iso_cl02_to_h(&clifford::iso_h_to_cl02(p))?.max_abs_diff(p))
            .max(clifford::iso_cl30plus_to_h(&clifford::iso_h_to_cl30plus(p))?.max_abs_diff(p))
            .max(clifford::iso_vt_to_h(&clifford::iso_h_to_vt(p)).max_abs_diff(p));
    }
    Ok(vec_of([
        Check::at_most("clifford: associativity (1e4 per signature)", assoc, 1e-11),
        Check::at_most("clifford: reversion reverses products", rev, 1e-11),
        Check::at_most("clifford: e0² = i3² = i4² = −1", squares, 1e-11),
        Check::at_most("clifford: i3 commutes with Cl(3,0)", comm, 1e-11),
        Check::at_most("clifford: dual(e0) = i3", dual, 1e-11),
        Check::at_most("clifford: e0 i3 = −i3 e0", anti, 1e-11),
        Check::at_most("clifford: V_t closed under products", closure, 0.0),
        Check::at_most("clifford: H → Cl(0,2) homomorphism", h02, 1e-11),
        Check::at_most("clifford: H → Cl+(3,0) homomorphism", h30, 1e-11),
        Check::at_most("clifford: H → V_t homomorphism", hvt, 1e-11),
        Check::at_most("clifford: isomorphism inverses", inv, 1e-15),
    ]))
}

// ---------------------------------------------------------------------------
// round trips and oracles

fn qft_round_trip(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let f = random_field(rng, 64, 64);
    let fast = qft2d::qft_inverse(&qft2d::qft_forward(&f, TransformPath::Fast)?, TransformPath::Fast)?;
    let g = random_field(rng, 16, 12);
    let direct = qft2d::qft_inverse_direct(&qft2d::qft_forward_direct(&g));
    Ok(vec_of([
        Check::at_most("roundtrip: QFT fast 64x64", fast.relative_error(&f)?, 1e-10),
        Check::at_most("roundtrip: QFT direct 16x12", direct.relative_error(&g)?, 1e-10),
    ]))
}

fn qftr_round_trip(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let f = random_field(rng, 64, 64);
    let fast = qft2d::qftr_inverse(&qft2d::qftr_forward(&f, TransformPath::Fast)?, TransformPath::Fast)?;
    let g = random_field(rng, 16, 12);
    let direct = qft2d::qftr_inverse_direct(&qft2d::qftr_forward_direct(&g));
    Ok(vec_of([
        Check::at_most("roundtrip: QFTr fast 64x64", fast.relative_error(&f)?, 1e-10),
        Check::at_most("roundtrip: QFTr direct 16x12", direct.relative_error(&g)?, 1e-10),
    ]))
}

fn spacetime_round_trip(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let dims = [8, 8, 8, 8];
    let v = random_spacetime(rng, dims, true);
    let vt = spacetime::vtft_inverse(&spacetime::vtft_forward(&v, TransformPath::Fast)?, TransformPath::Fast)?;
    let f = random_spacetime(rng, dims, false);
    let st = spacetime::sft_inverse(&spacetime::sft_forward(&f, TransformPath::Fast)?, TransformPath::Fast)?;
    Ok(vec_of([
        Check::at_most("roundtrip: VtFT fast 8^4", vt.relative_error(&v)?, 1e-10),
        Check::at_most("roundtrip: SFT fast 8^4", st.relative_error(&f)?, 1e-10),
    ]))
}

fn qft_oracle(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let f = random_field(rng, 16, 16);
    let direct = qft2d::qft_forward_direct(&f);
    let fast = qft2d::qft_forward_fast(&f)?;
    let comps = qft2d::qft_via_components(&f, TransformPath::Fast)?;
    let s = as_spectrum(&f);
    let inv = qft2d::qft_inverse_fast(&s)?.relative_error(&qft2d::qft_inverse_direct(&s))?;
    Ok(vec_of([
        Check::at_most("oracle: QFT fast vs direct 16x16", fast.relative_error(&direct)?, 1e-9),
        Check::at_most("oracle: QFT inverse fast vs direct 16x16", inv, 1e-9),
        Check::at_most("oracle: QFT real-component route 16x16", comps.relative_error(&direct)?, 1e-9),
    ]))
}

fn qftr_oracle(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let f = random_field(rng, 16, 16);
    let fast = qft2d::qftr_forward_fast(&f)?.relative_error(&qft2d::qftr_forward_direct(&f))?;
    let s = as_spectrum(&f);
    let inv = qft2d::qftr_inverse_fast(&s)?.relative_error(&qft2d::qftr_inverse_direct(&s))?;
    Ok(vec_of([
        Check::at_most("oracle: QFTr fast vs direct 16x16", fast, 1e-9),
        Check::at_most("oracle: QFTr inverse fast vs direct 16x16", inv, 1e-9),
    ]))
}

fn spacetime_oracle(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let dims = [4, 4, 4, 4];
    let v = random_spacetime(rng, dims, true);
    let vt = spacetime::vtft_forward(&v, TransformPath::Fast)?
        .relative_error(&spacetime::vtft_forward(&v, TransformPath::Direct)?)?;
    let f = random_spacetime(rng, dims, false);
    let direct = spacetime::sft_forward_direct(&f);
    let st = spacetime::sft_forward(&f, TransformPath::Fast)?.relative_error(&direct)?;
    let inv = spacetime::sft_inverse(&direct, TransformPath::Fast)?
        .relative_error(&spacetime::sft_inverse_direct(&direct))?;
    Ok(vec_of([
        Check::at_most("oracle: VtFT fast vs direct 4^4", vt, 1e-9),
        Check::at_most("oracle: SFT decomposition vs Clifford sum 4^4", st, 1e-9),
        Check::at_most("oracle: SFT inverse vs Clifford sum 4^4", inv, 1e-9),
    ]))
}

// ---------------------------------------------------------------------------
// Plancherel and Parseval

const PAIRS: usize = 100;

fn qft_energy(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (mut planch, mut pars) = (0f64, 0f64);
    for _ in 0..PAIRS {
        let (f, g) = (random_field(rng, 16, 16), random_field(rng, 16, 16));
        let (ff, gg) = (qft2d::qft_forward(&f, TransformPath::Fast)?, qft2d::qft_forward(&g, TransformPath::Fast)?);
        let n = 256.0;
        let lhs = qft2d::scalar_inner(f.data(), g.data());
        let rhs = qft2d::scalar_inner(ff.data(), gg.data()) / n;
        planch = planch.max(math::abs(lhs - rhs) / math::sqrt(f.energy() * g.energy()));
        pars = pars.max(math::abs(f.energy() - ff.energy() / n) / f.energy());
    }
    Ok(vec_of([
        Check::at_most("energy: QFT scalar Plancherel (100 pairs)", planch, 1e-9),
        Check::at_most("energy: QFT Parseval (100 fields)", pars, 1e-10),
    ]))
}

fn qftr_energy(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (mut qplanch, mut splanch, mut pars, mut same) = (0f64, 0f64, 0f64, 0f64);
    for _ in 0..PAIRS {
        let (f, g) = (random_field(rng, 16, 16), random_field(rng, 16, 16));
        let (ff, gg) = (qft2d::qftr_forward(&f, TransformPath::Fast)?, qft2d::qftr_forward(&g, TransformPath::Fast)?);
        let n = 256.0;
        let scale = math::sqrt(f.energy() * g.energy());
        let lhs = qft2d::quaternion_inner(f.data(), g.data());
        let rhs = qft2d::quaternion_inner(ff.data(), gg.data()) / n;
        qplanch = qplanch.max((lhs - rhs).norm() / scale);
        splanch = splanch.max(math::abs(lhs.r - rhs.r) / scale);
        pars = pars.max(math::abs(f.energy() - ff.energy() / n) / f.energy());
        let two = qft2d::qft_forward(&f, TransformPath::Fast)?;
        same = same.max(math::abs(math::sqrt(two.energy()) - math::sqrt(ff.energy())) / math::sqrt(ff.energy()));
    }
    Ok(vec_of([
        Check::at_most("energy: QFTr quaternion Plancherel (100 pairs)", qplanch, 1e-9),
        Check::at_most("energy: QFTr scalar Plancherel (100 pairs)", splanch, 1e-9),
        Check::at_most("energy: QFTr Parseval (100 fields)", pars, 1e-10),
        Check::at_most("energy: |F_QFT| = |F_QFTr|", same, 1e-10),
    ]))
}

/// Worst violation of the quaternion-valued Plancherel identity for the
/// two-sided transform over a few random pairs.
fn qft_plancherel_control(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut worst = 0f64;
    for _ in 0..4 {
        let (f, g) = (random_field(rng, 8, 8), random_field(rng, 8, 8));
        let (ff, gg) = (qft2d::qft_forward_direct(&f), qft2d::qft_forward_direct(&g));
        let lhs = qft2d::quaternion_inner(f.data(), g.data());
        let rhs = qft2d::quaternion_inner(ff.data(), gg.data()) / 64.0;
        worst = worst.max((lhs - rhs).norm() / math::sqrt(f.energy() * g.energy()));
    }
    Ok(vec_of([Check::exceeds("control: QFT quaternion Plancherel fails", worst, 1e-3)]))
}

// ---------------------------------------------------------------------------
// lattice transform laws

const TRIALS: usize = 50;

fn qft_lattice_laws(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let path = TransformPath::Fast;
    let (mut shift, mut modu, mut powers, mut left, mut right, mut split) = (0f64, 0f64, 0f64, 0f64, 0f64, 0f64);
    let unit_powers = |q: Quaternion, e: usize| (0..e).fold(Quaternion::ONE, |acc, _| acc * q);
    for _ in 0..TRIALS {
        let f = random_field(rng, 8, 8);
        let g = random_field(rng, 8, 8);
        let ff = qft2d::qft_forward(&f, path)?;
        let gg = qft2d::qft_forward(&g, path)?;
        let (x0, y0) = (rng.gen_range(-8..8), rng.gen_range(-8..8));
        let lhs = qft2d::qft_forward(&qft2d::circular_shift(&f, x0, y0), path)?;
        shift = shift.max(lhs.relative_error(&qft2d::shifted_spectrum(&ff, x0, y0))?);
        let (m0, n0) = (rng.gen_range(-8..8), rng.gen_range(-8..8));
        let lhs = qft2d::qft_forward(&qft2d::modulate(&f, m0, n0), path)?;
        modu = modu.max(lhs.relative_error(&qft2d::modulated_spectrum(&ff, m0, n0))?);
        for m in 0..4 {
            for n in 0..4 {
                let (im, jn) = (unit_powers(Quaternion::I, m), unit_powers(Quaternion::J, n));
                let lhs = qft2d::qft_forward(&f.map(|q| im * q * jn), path)?;
                powers = powers.max(lhs.relative_error(&ff.map(|q| im * q * jn))?);
            }
        }
        let (a, b) = (random_complex_i(rng), random_complex_i(rng));
        let lhs = qft2d::qft_forward(&with_data(&f, combine(&f, &g, |p, q| a * p + b * q)), path)?;
        left = left.max(rel(lhs.data(), &combine_spec(&ff, &gg, |p, q| a * p + b * q)));
        let (a, b) = (random_complex_j(rng), random_complex_j(rng));
        let lhs = qft2d::qft_forward(&with_data(&f, combine(&f, &g, |p, q| p * a + q * b)), path)?;
        right = right.max(rel(lhs.data(), &combine_spec(&ff, &gg, |p, q| p * a + q * b)));
        let (fp, fm) = qft2d::split_field_pm(&f);
        let (sp, sm) = qft2d::split_spectrum_pm(&ff);
        split = split
            .max(qft2d::qft_forward(&fp, path)?.relative_error(&sp)?)
            .max(qft2d::qft_forward(&fm, path)?.relative_error(&sm)?);
    }
    Ok(vec_of([
        Check::at_most("lattice: QFT shift law (50 trials)", shift, 1e-10),
        Check::at_most("lattice: QFT modulation law", modu, 1e-10),
        Check::at_most("lattice: QFT powers of i, j (m,n <= 3)", powers, 1e-12),
        Check::at_most("lattice: QFT left linearity, span{1,i}", left, 1e-10),
        Check::at_most("lattice: QFT right linearity, span{1,j}", right, 1e-10),
        Check::at_most("lattice: QFT commutes with the ± split", split, 1e-10),
    ]))
}

fn combine_spec(f: &QSpectrum2D, g: &QSpectrum2D, op: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Vec<Quaternion> {
    f.data().iter().zip(g.data()).map(|(&a, &b)| op(a, b)).collect()
}

fn qftr_lattice_laws(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let path = TransformPath::Fast;
    let (mut left, mut powers, mut shift_ok, mut shift_bad) = (0f64, 0f64, 0f64, 0f64);
    for _ in 0..TRIALS {
        let f = random_field(rng, 8, 8);
        let g = random_field(rng, 8, 8);
        let ff = qft2d::qftr_forward(&f, path)?;
        let gg = qft2d::qftr_forward(&g, path)?;
        let (a, b) = (random_quaternion(rng), random_quaternion(rng));
        let lhs = qft2d::qftr_forward(&with_data(&f, combine(&f, &g, |p, q| a * p + b * q)), path)?;
        left = left.max(rel(lhs.data(), &combine_spec(&ff, &gg, |p, q| a * p + b * q)));
        for m in 0..4 {
            for n in 0..4 {
                let c = (0..m).fold(Quaternion::ONE, |acc, _| acc * Quaternion::I)
                    * (0..n).fold(Quaternion::ONE, |acc, _| acc * Quaternion::J);
                let lhs = qft2d::qftr_forward(&f.map(|q| c * q), path)?;
                powers = powers.max(lhs.relative_error(&ff.map(|q| c * q))?);
            }
        }
        let (x0, y0) = (rng.gen_range(1..8), rng.gen_range(1..8));
        let commuting = f.map(|q| Quaternion::new(q.r, q.i, 0.0, 0.0));
        let cf = qft2d::qftr_forward(&commuting, path)?;
        let lhs = qft2d::qftr_forward(&qft2d::circular_shift(&commuting, x0, y0), path)?;
        shift_ok = shift_ok.max(lhs.relative_error(&qft2d::shifted_spectrum(&cf, x0, y0))?);
        let lhs = qft2d::qftr_forward(&qft2d::circular_shift(&f, x0, y0), path)?;
        shift_bad = shift_bad.max(lhs.relative_error(&qft2d::shifted_spectrum(&ff, x0, y0))?);
    }
    Ok(vec_of([
        Check::at_most("lattice: QFTr left linearity, any quaternions", left, 1e-10),
        Check::at_most("lattice: QFTr powers of i, j on the left", powers, 1e-10),
        Check::at_most("lattice: QFTr shift law when i f = f i", shift_ok, 1e-10),
        Check::exceeds("control: QFTr shift law for generic f", shift_bad, 1e-3),
    ]))
}

fn generic_gaussian() -> AnalyticTestFunction {
    AnalyticTestFunction::gaussian(Quaternion::new(0.3, 0.5, -0.7, 0.4), (0.4, -0.3), (1.0, 0.8))
        .expect("positive widths")
}

fn qftr_continuous_conditions() -> Result<Vec<Check>> {
    let spec = QuadratureSpec::default();
    let generic = generic_gaussian();
    let commuting = generic.with_coeff(Quaternion::new(0.6, -0.8, 0.0, 0.0));
    Ok(vec_of([
        Check::at_most(
            "continuous: QFTr derivative law when i f = f i",
            contin::verify_partial_deriv_right(&commuting, 1, 1, &spec)?.deviation,
            1e-3,
        ),
        Check::exceeds(
            "control: QFTr derivative law for generic f",
            contin::verify_partial_deriv_right(&generic, 1, 1, &spec)?.deviation,
            1e-1,
        ),
        Check::at_most(
            "continuous: QFTr powers law when i f = f i",
            contin::verify_powers_xy_right(&commuting, 1, 1, &spec)?.deviation,
            1e-3,
        ),
        Check::exceeds(
            "control: QFTr powers law for generic f",
            contin::verify_powers_xy_right(&generic, 1, 1, &spec)?.deviation,
            1e-1,
        ),
    ]))
}

// ---------------------------------------------------------------------------
// automorphisms and the continuous GL(R²) law

fn random_map(rng: &mut ChaCha8Rng) -> LinearMap2 {
    loop {
        let e: [f64; 4] = core::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        if let Ok(a) = LinearMap2::new(e[0], e[1], e[2], e[3]) {
            if math::abs(a.det()) > 0.1 {
                return a;
            }
        }
    }
}

fn automorphisms(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    const CASES: usize = 1000;
    let (mut polar, mut orth, mut sym, mut eig, mut bcons) = (0f64, 0f64, 0f64, 0f64, 0f64);
    let (mut iso, mut invol, mut route, mut dets) = (0f64, 0f64, 0f64, 0f64);
    for _ in 0..CASES {
        let a = random_map(rng);
        let (r, s) = autom::polar_decompose(&a)?;
        polar = polar.max((r * s).max_abs_diff(&a));
        orth = orth.max((r.adjoint() * r).max_abs_diff(&LinearMap2::IDENTITY));
        sym = sym.max(math::abs(s.entry(0, 1) - s.entry(1, 0)));
        let (ev, sv) = (s.symmetric_eigenvalues(), a.singular_values());
        eig = eig.max(math::abs(ev[0] - sv[0])).max(math::abs(ev[1] - sv[1]));
        let (bp, bm, _) = autom::b_matrices(&a)?;
        bcons = bcons
            .max(bp.max_abs_diff(&a.inverse().adjoint()))
            .max(bp.conj_by_axis_reflection(0).max_abs_diff(&bm));

        let n = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let y = autom::reflect(n, x)?;
        iso = iso.max(math::abs(math::hypot(y[0], y[1]) - math::hypot(x[0], x[1])));
        let back = autom::reflect(n, y)?;
        invol = invol.max(math::abs(back[0] - x[0])).max(math::abs(back[1] - x[1]));
        let by_matrix = autom::reflection_matrix(n)?.apply(x);
        route = route.max(math::abs(by_matrix[0] - y[0])).max(math::abs(by_matrix[1] - y[1]));
        let b = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        dets = dets
            .max(math::abs(autom::reflection_matrix(n)?.det() + 1.0))
            .max(math::abs(math::abs(autom::rotation_from_reflections(n, b)?.det()) - 1.0));
    }
    let a = [1.0, 0.0];
    let b = [core::f64::consts::FRAC_1_SQRT_2, core::f64::consts::FRAC_1_SQRT_2];
    let quarter = autom::rotation_from_reflections(a, b)?
        .max_abs_diff(&LinearMap2::rotation(core::f64::consts::FRAC_PI_2));
    let (m4r, m4s) = autom::polar_decompose4(&LinearMap4::from_rows([
        [2.0, 0.3, 0.0, 0.1],
        [0.0, 1.0, 0.4, 0.0],
        [0.2, 0.0, 1.5, 0.0],
        [0.0, -0.3, 0.0, 0.8],
    ])?)?;
    let polar4 = (m4r.adjoint() * m4r).max_abs_diff(&LinearMap4::IDENTITY).max(
        (m4r * m4s).max_abs_diff(&LinearMap4::from_rows([
            [2.0, 0.3, 0.0, 0.1],
            [0.0, 1.0, 0.4, 0.0],
            [0.2, 0.0, 1.5, 0.0],
            [0.0, -0.3, 0.0, 0.8],
        ])?),
    );
    Ok(vec_of([
        Check::at_most("autom: polar A = R S (1e3 maps)", polar, 1e-11),
        Check::at_most("autom: polar R orthogonal", orth, 1e-11),
        Check::at_most("autom: polar S symmetric", sym, 1e-11),
        Check::at_most("autom: eig(S) = singular values of A", eig, 1e-11),
        Check::at_most("autom: B+ = adj(A^-1), U B+ U = B-", bcons, 1e-12),
        Check::at_most("autom: reflection is an isometry", iso, 1e-12),
        Check::at_most("autom: reflection is an involution", invol, 1e-12),
        Check::at_most("autom: Clifford reflection = matrix reflection", route, 1e-12),
        Check::at_most("autom: det U = −1, |det R_ab| = 1", dets, 1e-12),
        Check::at_most("autom: R_ab for 45° normals is a quarter turn", quarter, 1e-15),
        Check::at_most("autom: 4x4 Newton polar", polar4, 1e-12),
    ]))
}

fn gl2_continuous(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let spec = QuadratureSpec::default();
    let maps = [
        ("identity", LinearMap2::IDENTITY),
        ("stretch diag(2,1)", LinearMap2::diag(2.0, 1.0)?),
        ("axis reflection U_e1", LinearMap2::diag(-1.0, 1.0)?),
        ("rotation pi/6", LinearMap2::rotation(core::f64::consts::FRAC_PI_6)),
    ];
    let mut out = Vec::new();
    for (fname, f) in [("unit Gaussian", AnalyticTestFunction::unit_gaussian()), ("generic Gaussian", generic_gaussian())] {
        for (mname, a) in &maps {
            let r = contin::verify_gl_law(a, &f, &spec)?;
            out.push(Check::at_most(format!("gl2: {mname}, {fname}"), r.deviation, 1e-3));
            out.push(Check::at_most(format!("gl2: matrix vs geometric, {mname}, {fname}"), r.matrix_vs_geometric, 1e-10));
        }
    }
    let f = generic_gaussian();
    let rot = contin::verify_gl_law(&maps[3].1, &f, &spec)?;
    out.push(Check::exceeds("control: f+/f- fed B+/B- respectively", rot.swapped_halves_deviation, 1e-1));
    let rl = contin::verify_rotation_law(core::f64::consts::FRAC_PI_6, &f, &spec)?;
    out.push(Check::at_most("gl2: rotation f-(Ru) + f+(R^-1 u)", rl.deviation, 1e-3));
    out.push(Check::exceeds("control: rotation f-(R^-1 u) + f+(Ru)", rl.control_deviation, 1e-1));
    let neg = contin::verify_gl_law(&LinearMap2::diag(-2.0, 1.0)?, &f, &spec)?;
    out.push(Check::at_most("gl2: stretch diag(-2,1) with |det|", neg.deviation, 1e-3));
    out.push(Check::exceeds("control: stretch diag(-2,1) with signed det", neg.signed_determinant_deviation, 1e-1));
    out.push(Check::at_most("gl2: reflection law U_a, a = (1,2)", contin::verify_reflection_law([1.0, 2.0], &f, &spec)?, 1e-3));
    let mut worst = 0f64;
    let mut cross = 0f64;
    let mut drawn = 0;
    while drawn < 3 {
        let a = random_map(rng);
        let sv = a.singular_values();
        if sv[1] < 0.5 || sv[0] > 2.0 {
            continue;
        }
        drawn += 1;
        let r = contin::verify_gl_law(&a, &f, &spec)?;
        worst = worst.max(r.deviation);
        cross = cross.max(r.matrix_vs_geometric);
    }
    out.push(Check::at_most("gl2: random well-conditioned maps (3)", worst, 1e-3));
    out.push(Check::at_most("gl2: matrix vs geometric, random maps", cross, 1e-10));
    let (s, m) = contin::verify_shift_modulation(&f, (0.7, -1.2), (0.5, 1.5), &spec)?;
    out.push(Check::at_most("continuous: shift row", s, 1e-4));
    out.push(Check::at_most("continuous: modulation row", m, 1e-4));
    Ok(out)
}

fn derivative_laws() -> Result<Vec<Check>> {
    let spec = QuadratureSpec::default();
    let f = generic_gaussian();
    let mut out = Vec::new();
    for m in 0..=2 {
        for n in 0..=2 {
            let p = contin::verify_powers_xy(&f, m, n, &spec)?;
            let d = contin::verify_partial_deriv(&f, m, n, &spec)?;
            out.push(Check::at_most(format!("deriv: powers x^{m} y^{n}"), p.deviation, 1e-3));
            out.push(Check::at_most(format!("deriv: partial d^{m}x d^{n}y"), d.deviation, 1e-3));
            // Even powers of i or j are real, so placement only matters
            // when an odd power is present.
            if m % 2 == 1 || n % 2 == 1 {
                out.push(Check::exceeds(format!("control: powers x^{m} y^{n}, sides swapped"), p.control_deviation, 1e-1));
                out.push(Check::exceeds(format!("control: partial d^{m}x d^{n}y, sides swapped"), d.control_deviation, 1e-1));
            }
        }
    }
    let unit = AnalyticTestFunction::unit_gaussian();
    out.push(Check::at_most(
        "deriv: powers x^1 on unit Gaussian",
        contin::verify_powers_xy(&unit, 1, 0, &spec)?.deviation,
        1e-3,
    ));
    out.push(Check::at_most(
        "deriv: partial d/dx on unit Gaussian",
        contin::verify_partial_deriv(&unit, 1, 0, &spec)?.deviation,
        1e-4,
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// spacetime

fn spacetime_laws(rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let path = TransformPath::Fast;
    let dims = [4, 4, 4, 4];
    let n = 256.0;
    let f = random_spacetime(rng, dims, false);
    let spec = spacetime::sft_forward(&f, path)?;

    let (mut lin, mut ilin) = (0f64, 0f64);
    for _ in 0..100 {
        let alpha = random_multivector(rng, Signature::CL31, 0b0111);
        let lhs = spacetime::sft_forward(&f.map(|m| *m * alpha), path)?;
        lin = lin.max(lhs.relative_error(&spec.map(|m| *m * alpha))?);
        let lhs = spacetime::sft_inverse(&spec.map(|m| *m * alpha), path)?;
        ilin = ilin.max(lhs.relative_error(&f.map(|m| *m * alpha))?);
    }

    let parts = spacetime::decompose_vt(&f);
    let recon = spacetime::recompose_vt(&parts)?.max_abs_diff(&f)?;
    let parts_vt = parts.iter().all(|p| p.first_non_vt().is_none());

    let v = random_spacetime(rng, dims, true);
    let vspec = spacetime::vtft_forward(&v, path)?;
    let (vp, _) = spacetime::split_spectrum_pm(&vspec);
    let (mp, _) = spacetime::minkowski_split_transform(&v);
    let mink = mp.relative_error(&vp)?;

    let (fp, fm) = spacetime::minkowski_split_transform(&f);
    let sum = STSpectrum4D::new(dims, fp.data().iter().zip(fm.data()).map(|(a, b)| *a + *b).collect())?;
    let recomb = sum.relative_error(&spec)?;

    let pars = math::abs(f.energy() - spec.energy() / n) / f.energy();
    let g = random_spacetime(rng, dims, false);
    let gspec = spacetime::sft_forward(&g, path)?;
    let planch = math::abs(
        spacetime::coefficient_inner(f.data(), g.data()) - spacetime::coefficient_inner(spec.data(), gspec.data()) / n,
    ) / math::sqrt(f.energy() * g.energy());

    let (sp, sm) = spacetime::split_spacetime_pm(&f);
    let (tp, tm) = spacetime::split_spectrum_pm(&spec);
    let commute = spacetime::sft_forward(&sp, path)?
        .relative_error(&tp)?
        .max(spacetime::sft_forward(&sm, path)?.relative_error(&tm)?);

    let (ep, em) = spacetime::wave_packet_energy_split(&f);
    let energy_split = math::abs(ep + em - f.energy()) / f.energy();

    let mut gl = 0f64;
    for a in [
        LinearMap4::IDENTITY,
        LinearMap4::axis_reflection(0),
        LinearMap4::axis_reflection(1),
        LinearMap4::axis_reflection(3),
        LinearMap4::axis_swap(2, 3),
        LinearMap4::axis_swap(1, 2) * LinearMap4::axis_reflection(2),
    ] {
        gl = gl.max(spacetime::verify_sft_gl(&a, &f, path)?);
    }
    let vgl = spacetime::verify_sft_gl(&LinearMap4::axis_swap(1, 3), &v, path)?;

    Ok(vec_of([
        Check::at_most("spacetime: right linearity, 100 Cl(3,0) constants", lin, 1e-11),
        Check::at_most("spacetime: inverse right linearity", ilin, 1e-11),
        Check::at_most("spacetime: four-part V_t decomposition", recon, 0.0),
        Check::at_most("spacetime: decomposition parts are V_t", if parts_vt { 0.0 } else { 1.0 }, 0.0),
        Check::at_most("spacetime: Minkowski kernel form of F+", mink, 1e-10),
        Check::at_most("spacetime: F = F+(x.u - ts) + F-(x.u + ts)", recomb, 1e-10),
        Check::at_most("spacetime: Parseval (coefficient norm)", pars, 1e-9),
        Check::at_most("spacetime: Plancherel (coefficient inner product)", planch, 1e-9),
        Check::at_most("spacetime: split commutes with SFT", commute, 1e-10),
        Check::at_most("spacetime: E+ + E- = E", energy_split, 1e-10),
        Check::at_most("spacetime: lattice GL law, reflections and swaps", gl, 1e-9),
        Check::at_most("spacetime: lattice GL law on V_t field", vgl, 1e-9),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn nan_never_passes() {
        assert!(!Check::at_most("x", f64::NAN, 1.0).passed());
        assert!(!Check::exceeds("x", f64::NAN, 1.0).passed());
        assert!(Check::exceeds("x", 2.0, 1.0).passed());
    }

    #[test]
    fn quick_suites_pass_and_are_deterministic() {
        let a = run_suite(Suite::Quat, 42).unwrap();
        assert!(a.iter().all(Check::passed), "{a:?}");
        assert_eq!(a, run_suite(Suite::Quat, 42).unwrap());
        let c = run_suite(Suite::Clifford, 42).unwrap();
        assert!(c.iter().all(Check::passed), "{c:?}");
    }
}
