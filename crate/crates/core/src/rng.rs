//! Reproducible random streams and the variate algorithms built on them.
//!
//! The generator is xoshiro256** seeded through splitmix64. Variates use
//! fixed algorithms so a stream is reproducible on any platform:
//!
//! * uniforms take the top 53 bits of a 64-bit draw,
//! * normals use the Box-Muller transform (both outputs of each pair are
//!   consumed, cosine branch first),
//! * log-normals exponentiate a normal,
//! * gammas use Marsaglia-Tsang, with the `U^(1/k)` boost for shape < 1.
//!
//! Changing any of these changes every seeded result in the crate.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

const TWO_POW_NEG_53: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Debug, Clone)]
pub struct SimRng {
    inner: Xoshiro256StarStar,
    spare_normal: Option<f64>,
}

impl SimRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Xoshiro256StarStar::seed_from_u64(seed),
            spare_normal: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * TWO_POW_NEG_53
    }

    /// Uniform on `(0, 1]`, safe to take the logarithm of.
    pub fn uniform_open0(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * TWO_POW_NEG_53
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform_open0();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare_normal = Some(radius * angle.sin());
        radius * angle.cos()
    }

    pub fn normal(&mut self, mean: f64, std_dev: f64) -> f64 {
        mean + std_dev * self.standard_normal()
    }

    pub fn log_normal(&mut self, mean_log: f64, sigma_log: f64) -> f64 {
        self.normal(mean_log, sigma_log).exp()
    }

    /// Gamma with shape `k` and scale `theta`; both must be positive.
    pub fn gamma(&mut self, k: f64, theta: f64) -> f64 {
        debug_assert!(k > 0.0 && theta > 0.0);
        if k < 1.0 {
            let boost = self.uniform_open0().powf(1.0 / k);
            return self.gamma(k + 1.0, theta) * boost;
        }
        let d = k - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.standard_normal();
            let v = 1.0 + c * x;
            if v <= 0.0 {
                continue;
            }
            let v = v * v * v;
            let u = self.uniform_open0();
            let x2 = x * x;
            if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
                return d * v * theta;
            }
        }
    }
}
