//! Minimal in-place radix-2 transform used for circulant products and grid
//! evaluation. All lengths handled here are powers of two by construction.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

/// Smallest power of two `>= n`.
pub fn next_pow2(n: usize) -> usize {
    n.next_power_of_two()
}

/// Unit phasor `e^{2 pi i theta}` with the argument reduced modulo one
/// before scaling, which keeps large multiples of the circle accurate.
pub fn unit_phase(turns: f64) -> Complex64 {
    let (s, c) = libm::sincos(2.0 * PI * libm::modf(turns).0);
    Complex64::new(c, s)
}

fn bit_reverse_permute(data: &mut [Complex64]) {
    let n = data.len();
    let mut j = 0usize;
    for i in 0..n - 1 {
        if i < j {
            data.swap(i, j);
        }
        let mut mask = n >> 1;
        while j & mask != 0 {
            j &= !mask;
            mask >>= 1;
        }
        j |= mask;
    }
}

/// In-place transform; `inverse` selects the `e^{+2 pi i ...}` kernel.
/// No normalization is applied in either direction.
pub fn fft_pow2(data: &mut [Complex64], inverse: bool) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }
    bit_reverse_permute(data);

    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * PI / len as f64;
        let wlen = Complex64::new(libm::cos(ang), libm::sin(ang));
        let mut start = 0;
        while start < n {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let u = data[start + k];
                let v = data[start + k + len / 2] * w;
                data[start + k] = u + v;
                data[start + k + len / 2] = u - v;
                w *= wlen;
            }
            start += len;
        }
        len <<= 1;
    }
}

/// Transform of one fixed power-of-two length with a precomputed twiddle
/// table, for call sites that run many transforms of the same size.
#[derive(Debug, Clone)]
pub struct Radix2Plan {
    len: usize,
    twiddles: Vec<Complex64>, // e^{-2 pi i k / len} for k < len / 2
}

impl Radix2Plan {
    pub fn new(len: usize) -> Self {
        debug_assert!(len.is_power_of_two());
        let twiddles = (0..len / 2)
            .map(|k| unit_phase(-(k as f64) / len as f64))
            .collect();
        Self { len, twiddles }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn process(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.len;
        debug_assert_eq!(data.len(), n);
        if n <= 1 {
            return;
        }
        bit_reverse_permute(data);
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            let mut start = 0;
            while start < n {
                for k in 0..half {
                    let mut w = self.twiddles[k * stride];
                    if inverse {
                        w = w.conj();
                    }
                    let u = data[start + k];
                    let v = data[start + k + half] * w;
                    data[start + k] = u + v;
                    data[start + k + half] = u - v;
                }
                start += len;
            }
            len <<= 1;
        }
    }
}

/// Pointwise product of two spectra into a fresh vector.
pub fn spectrum_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_matches_plain_transform() {
        let x: Vec<Complex64> = (0..64)
            .map(|i| Complex64::new((i as f64 * 0.9).sin(), (i as f64 * 0.4).cos()))
            .collect();
        let plan = Radix2Plan::new(64);
        for inverse in [false, true] {
            let mut a = x.clone();
            let mut b = x.clone();
            fft_pow2(&mut a, inverse);
            plan.process(&mut b, inverse);
            for (u, v) in a.iter().zip(&b) {
                assert!((u - v).norm() < 1e-12);
            }
        }
    }

    fn dft_direct(x: &[Complex64], inverse: bool) -> Vec<Complex64> {
        let n = x.len();
        let sign = if inverse { 1.0 } else { -1.0 };
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| x[j] * unit_phase(sign * (k * j) as f64 / n as f64))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_direct_dft() {
        let x: Vec<Complex64> = (0..16)
            .map(|i| Complex64::new((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos()))
            .collect();
        for inverse in [false, true] {
            let mut fast = x.clone();
            fft_pow2(&mut fast, inverse);
            let slow = dft_direct(&x, inverse);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn forward_then_inverse_scales_by_n() {
        let x: Vec<Complex64> = (0..32).map(|i| Complex64::new(i as f64, -1.0)).collect();
        let mut buf = x.clone();
        fft_pow2(&mut buf, false);
        fft_pow2(&mut buf, true);
        for (a, b) in buf.iter().zip(&x) {
            assert!((a / 32.0 - b).norm() < 1e-12);
        }
    }
}
