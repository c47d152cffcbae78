//! Counter-based pseudorandom generator for reproducible fixtures.
//!
//! Every random draw in the crate comes from the splitmix64 finalizer applied
//! to an incrementing counter, so a stream is a pure function of `(seed, n)`
//! and alternate implementations can reproduce fixtures exactly:
//!
//! ```text
//! state_n = seed + (n + 1) * 0x9E3779B97F4A7C15          (wrapping)
//! z = state_n
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9               (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB               (wrapping)
//! output_n = z ^ (z >> 31)
//! ```
//!
//! Uniform doubles take the top 53 bits of `output_n` scaled by 2^-53.
//! Gaussians use the Box-Muller transform on two consecutive uniforms, with
//! the first mapped into (0, 1] so the logarithm is finite.

use num_complex::Complex64;

/// Deterministic 64-bit counter generator (splitmix64 stream).
#[derive(Clone, Debug)]
pub struct Counter64 {
    seed: u64,
    count: u64,
}

impl Counter64 {
    pub fn new(seed: u64) -> Self {
        Counter64 { seed, count: 0 }
    }

    /// Next raw 64-bit word of the stream.
    pub fn next_u64(&mut self) -> u64 {
        self.count += 1;
        let state = self.seed.wrapping_add(self.count.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1): top 53 bits scaled by 2^-53.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller; u1 shifted into (0, 1].
    pub fn gaussian(&mut self) -> f64 {
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Complex standard normal: independent N(0,1) real and imaginary parts.
    pub fn gaussian_c64(&mut self) -> Complex64 {
        let re = self.gaussian();
        let im = self.gaussian();
        Complex64::new(re, im)
    }
}
