use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rand_distr::{Distribution, StandardNormal, UnitCircle};
use serde::{Deserialize, Serialize};

/// Identifies one independent random stream: ChaCha keyed by the master seed,
/// with the stream index selecting the nonce. Output depends only on the pair
/// and the number of draws taken, never on which thread consumes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub const fn new(master_seed: u64, stream_index: u64) -> Self {
        RngStream {
            master_seed,
            stream_index,
        }
    }

    pub fn rng(&self) -> WalkRng {
        let mut inner = ChaCha8Rng::seed_from_u64(self.master_seed);
        inner.set_stream(self.stream_index);
        WalkRng { inner }
    }
}

pub struct WalkRng {
    inner: ChaCha8Rng,
}

impl WalkRng {
    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `(0, 1]`.
    #[inline]
    pub fn uniform_open0(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform index in `0..n` (Lemire's widening multiply; bias below 2^-64 * n).
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        ((self.inner.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Two independent standard normals.
    #[inline]
    pub fn normal_pair(&mut self) -> (f64, f64) {
        (self.normal(), self.normal())
    }

    /// Standard normal (ziggurat).
    #[inline]
    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    /// Uniformly distributed point on the unit circle.
    #[inline]
    pub fn unit_circle(&mut self) -> (f64, f64) {
        let [c, s]: [f64; 2] = UnitCircle.sample(&mut self.inner);
        (c, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_pair_same_output() {
        let mut a = RngStream::new(42, 7).rng();
        let mut b = RngStream::new(42, 7).rng();
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn streams_differ() {
        let mut a = RngStream::new(42, 7).rng();
        let mut b = RngStream::new(42, 8).rng();
        let mut c = RngStream::new(43, 7).rng();
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        let zs: Vec<u64> = (0..8).map(|_| c.next_u64()).collect();
        assert_ne!(xs, ys);
        assert_ne!(xs, zs);
    }

    #[test]
    fn uniform_ranges() {
        let mut r = RngStream::new(1, 0).rng();
        for _ in 0..10_000 {
            let u = r.uniform();
            assert!((0.0..1.0).contains(&u));
            let v = r.uniform_open0();
            assert!(v > 0.0 && v <= 1.0);
            assert!(r.index(6) < 6);
        }
    }

    #[test]
    fn normal_moments() {
        let mut r = RngStream::new(3, 1).rng();
        let n = 200_000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let z = r.normal();
            s1 += z;
            s2 += z * z;
        }
        let mean = s1 / n as f64;
        let var = s2 / n as f64 - mean * mean;
        assert!(mean.abs() < 5.0 / (n as f64).sqrt());
        assert!((var - 1.0).abs() < 5.0 * (2.0 / n as f64).sqrt());
    }
}
