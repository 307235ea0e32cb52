//! Radix-2 complex FFT over the axes of a dense N-d array, and the
//! split-based engine that reduces a two-sided quaternion transform to two
//! complex transforms.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::math;
use crate::quat::Quaternion;
use crate::{Error, Result};

pub type C64 = Complex<f64>;

#[inline]
pub fn is_power_of_two(n: usize) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// Errors with [`Error::UnsupportedSize`] unless every entry of `dims` is a
/// power of two.
pub fn require_power_of_two(dims: &[usize]) -> Result<()> {
    if dims.iter().all(|&n| is_power_of_two(n)) {
        Ok(())
    } else {
        Err(Error::UnsupportedSize(dims.to_vec()))
    }
}

/// Precomputed plan for an in-place iterative radix-2 transform of length `n`.
#[derive(Debug, Clone)]
pub struct Radix2 {
    n: usize,
    twiddles: Vec<C64>,
    bitrev: Vec<usize>,
}

impl Radix2 {
    pub fn new(n: usize) -> Result<Self> {
        require_power_of_two(&[n])?;
        let twiddles = (0..n / 2)
            .map(|k| {
                let (c, s) = math::unit_root(k as i64, n);
                C64::new(c, -s)
            })
            .collect();
        let bits = n.trailing_zeros();
        let bitrev = (0..n)
            .map(|i| if bits == 0 { 0 } else { i.reverse_bits() >> (usize::BITS - bits) })
            .collect();
        Ok(Self { n, twiddles, bitrev })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Unnormalized DFT in place: `X[k] = Σ x[t] e^{∓2πi kt/n}`, with the
    /// `+` sign when `inverse` is set.
    pub fn process(&self, buf: &mut [C64], inverse: bool) {
        assert_eq!(buf.len(), self.n, "buffer length does not match plan");
        for i in 0..self.n {
            let r = self.bitrev[i];
            if i < r {
                buf.swap(i, r);
            }
        }
        let mut half = 1;
        while half < self.n {
            let step = self.n / (2 * half);
            for start in (0..self.n).step_by(2 * half) {
                for k in 0..half {
                    let mut w = self.twiddles[k * step];
                    if inverse {
                        w = w.conj();
                    }
                    let a = buf[start + k];
                    let b = buf[start + k + half] * w;
                    buf[start + k] = a + b;
                    buf[start + k + half] = a - b;
                }
            }
            half *= 2;
        }
    }
}

/// Transforms every line of `data` along `axis`. `shape` lists the extents in
/// memory order, slowest axis first.
pub fn fft_axis(data: &mut [C64], shape: &[usize], axis: usize, inverse: bool) -> Result<()> {
    let n = shape[axis];
    let plan = Radix2::new(n)?;
    let inner: usize = shape[axis + 1..].iter().product();
    let block = n * inner;
    debug_assert_eq!(data.len() % block.max(1), 0);

    let run_block = |chunk: &mut [C64]| {
        if inner == 1 {
            plan.process(chunk, inverse);
            return;
        }
        let mut line = vec![C64::new(0.0, 0.0); n];
        for offset in 0..inner {
            for (t, v) in line.iter_mut().enumerate() {
                *v = chunk[t * inner + offset];
            }
            plan.process(&mut line, inverse);
            for (t, v) in line.iter().enumerate() {
                chunk[t * inner + offset] = *v;
            }
        }
    };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        data.par_chunks_mut(block).for_each(run_block);
    }
    #[cfg(not(feature = "parallel"))]
    data.chunks_mut(block).for_each(run_block);
    Ok(())
}

/// Unnormalized N-d DFT over every axis.
pub fn fft_nd(data: &mut [C64], shape: &[usize], inverse: bool) -> Result<()> {
    require_power_of_two(shape)?;
    for axis in 0..shape.len() {
        fft_axis(data, shape, axis, inverse)?;
    }
    Ok(())
}

/// Strides (in elements) for a dense array with `shape` in memory order.
pub fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for a in (0..shape.len().saturating_sub(1)).rev() {
        s[a] = s[a + 1] * shape[a + 1];
    }
    s
}

/// Flat index map `out[i] = in[reflect(i)]`, where `reflect` negates (modulo
/// the extent) the multi-index components on the axes flagged in `negate`.
pub fn negated_index_map(shape: &[usize], negate: &[bool]) -> Vec<usize> {
    let st = strides(shape);
    let total: usize = shape.iter().product();
    let mut map = Vec::with_capacity(total);
    let mut idx = vec![0usize; shape.len()];
    for _ in 0..total {
        let src = idx
            .iter()
            .zip(shape)
            .zip(&st)
            .zip(negate)
            .map(|(((&k, &n), &s), &neg)| if neg { ((n - k) % n) * s } else { k * s })
            .sum();
        map.push(src);
        for a in (0..shape.len()).rev() {
            idx[a] += 1;
            if idx[a] < shape[a] {
                break;
            }
            idx[a] = 0;
        }
    }
    map
}

/// Two-sided quaternion transform through the `±` split.
///
/// `left_axis` carries the kernel `e^{∓𝒊·θ}` on the left of each sample; all
/// other axes share one combined phase in `e^{∓𝒋·φ}` on the right. Each split
/// half `c±(1±𝒌)/2` is transformed as a complex array in the `𝒊`-plane: the
/// `−` half with the plain phase `θ + φ`, the `+` half with `θ − φ`, which
/// amounts to reversing the right-axis indices of its output. The inverse
/// uses positive exponents and divides by the sample count.
pub fn two_sided_split(
    data: &[Quaternion],
    shape: &[usize],
    left_axis: usize,
    inverse: bool,
) -> Result<Vec<Quaternion>> {
    require_power_of_two(shape)?;
    let total: usize = shape.iter().product();
    if data.len() != total {
        return Err(Error::InvalidGrid("sample count does not match shape"));
    }
    let mut plus = Vec::with_capacity(total);
    let mut minus = Vec::with_capacity(total);
    for q in data {
        let ((a, b), (c, d)) = q.split_complex();
        plus.push(C64::new(a, b));
        minus.push(C64::new(c, d));
    }
    fft_nd(&mut plus, shape, inverse)?;
    fft_nd(&mut minus, shape, inverse)?;

    let negate: Vec<bool> = (0..shape.len()).map(|a| a != left_axis).collect();
    let map = negated_index_map(shape, &negate);
    let scale = if inverse { 1.0 / total as f64 } else { 1.0 };
    Ok(map
        .iter()
        .zip(&minus)
        .map(|(&src, m)| {
            let p = plus[src];
            Quaternion::from_split_complex((p.re, p.im), (m.re, m.im)) * scale
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft(x: &[C64], inverse: bool) -> Vec<C64> {
        let n = x.len();
        let sign = if inverse { 1.0 } else { -1.0 };
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(t, v)| {
                        let ang = sign * 2.0 * core::f64::consts::PI * ((k * t) % n) as f64 / n as f64;
                        v * C64::new(ang.cos(), ang.sin())
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn radix2_matches_naive() {
        for n in [1usize, 2, 4, 8, 32] {
            let x: Vec<C64> = (0..n)
                .map(|t| C64::new((t as f64 * 0.37).sin(), (t as f64 * 1.3).cos()))
                .collect();
            for inverse in [false, true] {
                let mut y = x.clone();
                Radix2::new(n).unwrap().process(&mut y, inverse);
                let want = naive_dft(&x, inverse);
                for (a, b) in y.iter().zip(&want) {
                    assert!((a - b).norm_sqr() < 1e-24);
                }
            }
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert_eq!(Radix2::new(6).unwrap_err(), Error::UnsupportedSize(vec![6]));
        assert!(require_power_of_two(&[4, 12]).is_err());
    }

    #[test]
    fn nd_round_trip() {
        let shape = [2, 4, 8];
        let x: Vec<C64> = (0..64).map(|t| C64::new(t as f64, -(t as f64) * 0.5)).collect();
        let mut y = x.clone();
        fft_nd(&mut y, &shape, false).unwrap();
        fft_nd(&mut y, &shape, true).unwrap();
        for (a, b) in y.iter().zip(&x) {
            assert!((a / 64.0 - b).norm_sqr() < 1e-24);
        }
    }

    #[test]
    fn negation_map() {
        let map = negated_index_map(&[2, 4], &[false, true]);
        assert_eq!(map, vec![0, 3, 2, 1, 4, 7, 6, 5]);
        assert_eq!(strides(&[3, 4, 5]), vec![20, 5, 1]);
    }
}
