use std::fmt;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use hyperfourier::fft::is_power_of_two;
use hyperfourier::qft2d::{self, QuaternionField2D};
use hyperfourier::spacetime;
use hyperfourier::verify::{self, Check, Suite};
use hyperfourier::TransformPath;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::format::{self, Grid};
use crate::text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InputKind {
    Csv,
    Image,
    Qf2d,
    St4d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Transform {
    Qft,
    Iqft,
    Qftr,
    Iqftr,
    Vtft,
    Ivtft,
    Sft,
    Isft,
}

impl Transform {
    fn dims(self) -> usize {
        match self {
            Transform::Qft | Transform::Iqft | Transform::Qftr | Transform::Iqftr => 2,
            _ => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PathArg {
    Auto,
    Direct,
    Fast,
}

impl From<PathArg> for TransformPath {
    fn from(p: PathArg) -> Self {
        match p {
            PathArg::Auto => TransformPath::Auto,
            PathArg::Direct => TransformPath::Direct,
            PathArg::Fast => TransformPath::Fast,
        }
    }
}

/// Reads `input` as `kind` and writes it in the paired format: CSV and images
/// become grid files, grid files become CSV.
pub fn convert(input: &Path, kind: InputKind, output: &Path) -> Result<()> {
    let ctx = || format!("reading {}", input.display());
    match kind {
        InputKind::Csv => format::write_grid(output, &text::read_csv(input).with_context(ctx)?)?,
        InputKind::Image => format::write_grid(output, &text::read_image(input).with_context(ctx)?)?,
        InputKind::Qf2d | InputKind::St4d => {
            let grid = format::read_grid(input).with_context(ctx)?;
            let expected = if kind == InputKind::Qf2d { "qf2d" } else { "st4d" };
            if grid.kind() != expected {
                bail!("{} holds a {} grid, not {expected}", input.display(), grid.kind());
            }
            text::write_csv(output, &grid)?
        }
    }
    Ok(())
}

/// Whether `path` runs the fast path on a grid of the given sizes.
fn falls_back(path: TransformPath, sizes: &[usize]) -> bool {
    path == TransformPath::Auto && !sizes.iter().all(|&s| is_power_of_two(s))
}

pub fn apply(transform: Transform, grid: &Grid, path: TransformPath) -> Result<Grid> {
    let out = match (transform, grid) {
        (Transform::Qft, Grid::Q2(f)) => qft2d::qft_forward(f, path)?.into(),
        (Transform::Qftr, Grid::Q2(f)) => qft2d::qftr_forward(f, path)?.into(),
        (Transform::Iqft, Grid::Q2(f)) => Grid::Q2(qft2d::qft_inverse(&format::to_q2_spectrum(f), path)?),
        (Transform::Iqftr, Grid::Q2(f)) => Grid::Q2(qft2d::qftr_inverse(&format::to_q2_spectrum(f), path)?),
        (Transform::Vtft, Grid::S4(f)) => spacetime::vtft_forward(f, path)?.into(),
        (Transform::Sft, Grid::S4(f)) => spacetime::sft_forward(f, path)?.into(),
        (Transform::Ivtft, Grid::S4(f)) => Grid::S4(spacetime::vtft_inverse(&format::to_s4_spectrum(f), path)?),
        (Transform::Isft, Grid::S4(f)) => Grid::S4(spacetime::sft_inverse(&format::to_s4_spectrum(f), path)?),
        (t, g) => bail!("{t:?} needs a {}D grid, input is {}", t.dims(), g.kind()),
    };
    Ok(out)
}

pub fn transform(
    transform: Transform,
    input: &Path,
    path: TransformPath,
    output: &Path,
    magnitude: Option<&Path>,
) -> Result<()> {
    let grid = format::read_grid(input).with_context(|| format!("reading {}", input.display()))?;
    let sizes = match &grid {
        Grid::Q2(f) => vec![f.width(), f.height()],
        Grid::S4(f) => f.dims().to_vec(),
    };
    if falls_back(path, &sizes) {
        eprintln!("warning: sizes {sizes:?} are not powers of two; using direct summation");
    }
    let out = apply(transform, &grid, path)?;
    format::write_grid(output, &out)?;
    if let Some(mag) = magnitude {
        match &out {
            Grid::Q2(f) => text::write_magnitude_csv(mag, f)?,
            Grid::S4(_) => bail!("magnitude CSV is only available for 2D grids"),
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub check: Check,
    /// Wall time of the topic that produced the check.
    pub topic_time: Duration,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub rows: Vec<ReportRow>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.check.passed())
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.check.passed()).count()
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<4} {:<52} {:>11}    {:<7} {:>9}", "", "check", "deviation", "tol", "topic ms")?;
        for r in &self.rows {
            writeln!(f, "{}  {:>9.1}", r.check, r.topic_time.as_secs_f64() * 1e3)?;
        }
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status}: {} checks, {} failed", self.rows.len(), self.failures())
    }
}

pub fn verify(suite: Suite, seed: u64) -> Result<RunReport> {
    let mut rows = Vec::new();
    for topic in suite.topics() {
        let start = Instant::now();
        let checks = topic.run(seed)?;
        let topic_time = start.elapsed();
        rows.extend(checks.into_iter().map(|check| ReportRow { check, topic_time }));
    }
    Ok(RunReport { rows })
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub transform: &'static str,
    pub size: usize,
    pub direct: Duration,
    pub fast: Duration,
    /// Relative difference between the two outputs.
    pub deviation: f64,
}

impl BenchRow {
    pub fn speedup(&self) -> f64 {
        self.direct.as_secs_f64() / self.fast.as_secs_f64().max(1e-12)
    }
}

pub const BENCH_TOLERANCE: f64 = 1e-9;

type Direct = fn(&QuaternionField2D) -> qft2d::QSpectrum2D;
type Fast = fn(&QuaternionField2D) -> hyperfourier::Result<qft2d::QSpectrum2D>;

fn best_of<T>(runs: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut out = None;
    for _ in 0..runs {
        let start = Instant::now();
        let v = f();
        best = best.min(start.elapsed());
        out = Some(v);
    }
    (out.expect("at least one run"), best)
}

/// Times direct and fast QFT and QFTr on random `n×n` fields, after checking
/// that both paths agree.
pub fn bench(sizes: &[usize], seed: u64) -> Result<Vec<BenchRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let transforms: [(&'static str, Direct, Fast); 2] = [
        ("qft", qft2d::qft_forward_direct, qft2d::qft_forward_fast),
        ("qftr", qft2d::qftr_forward_direct, qft2d::qftr_forward_fast),
    ];
    for &n in sizes {
        if !is_power_of_two(n) {
            bail!("bench size {n} is not a power of two");
        }
        let f = verify::random_field(&mut rng, n, n);
        for (name, direct, fast) in transforms {
            let (d, mut direct_time) = best_of(1, || direct(&f));
            let deviation = fast(&f)?.relative_error(&d)?;
            if !(deviation <= BENCH_TOLERANCE) {
                bail!("{name} {n}x{n}: fast and direct differ by {deviation:e}");
            }
            if n < 64 {
                direct_time = direct_time.min(best_of(3, || direct(&f)).1);
            }
            let (_, fast_time) = best_of(10, || fast(&f));
            rows.push(BenchRow { transform: name, size: n, direct: direct_time, fast: fast_time, deviation });
        }
    }
    Ok(rows)
}

pub fn format_bench(rows: &[BenchRow]) -> String {
    let mut s = format!("{:<5} {:>9} {:>12} {:>12} {:>9} {:>10}\n", "", "size", "direct ms", "fast ms", "speedup", "deviation");
    for r in rows {
        s += &format!(
            "{:<5} {:>9} {:>12.3} {:>12.3} {:>8.1}x {:>10.2e}\n",
            r.transform,
            format!("{0}x{0}", r.size),
            r.direct.as_secs_f64() * 1e3,
            r.fast.as_secs_f64() * 1e3,
            r.speedup(),
            r.deviation
        );
    }
    s
}
