use serde::{Deserialize, Serialize};

/// Count, mean and central moment sums up to order four. Two accumulators
/// merge exactly (up to rounding) into the accumulator of the union, so a
/// fixed reduction tree gives results independent of scheduling.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Moments {
    pub count: u64,
    pub mean: f64,
    m2: f64,
    m3: f64,
    m4: f64,
}

impl Moments {
    pub fn single(x: f64) -> Self {
        Moments {
            count: 1,
            mean: x,
            m2: 0.0,
            m3: 0.0,
            m4: 0.0,
        }
    }

    pub fn merge(&self, other: &Moments) -> Moments {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let na = self.count as f64;
        let nb = other.count as f64;
        let n = na + nb;
        let delta = other.mean - self.mean;
        let d_n = delta / n;
        let d2 = delta * delta;
        let mean = self.mean + nb * d_n;
        let m2 = self.m2 + other.m2 + d2 * na * nb / n;
        let m3 = self.m3
            + other.m3
            + d2 * delta * na * nb * (na - nb) / (n * n)
            + 3.0 * delta * (na * other.m2 - nb * self.m2) / n;
        let m4 = self.m4
            + other.m4
            + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n)
            + 6.0 * d2 * (na * na * other.m2 + nb * nb * self.m2) / (n * n)
            + 4.0 * delta * (na * other.m3 - nb * self.m3) / n;
        Moments {
            count: self.count + other.count,
            mean,
            m2,
            m3,
            m4,
        }
    }

    /// Pairwise reduction over the slice in index order.
    pub fn from_slice(xs: &[f64]) -> Moments {
        match xs.len() {
            0 => Moments::default(),
            1 => Moments::single(xs[0]),
            n => {
                let (a, b) = xs.split_at(n / 2);
                Moments::from_slice(a).merge(&Moments::from_slice(b))
            }
        }
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        self.m2 / (self.count - 1) as f64
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }

    /// Fourth central sample moment `(1/n) sum (x - mean)^4`.
    pub fn central4(&self) -> f64 {
        self.m4 / self.count as f64
    }

    pub fn skewness(&self) -> f64 {
        let n = self.count as f64;
        (self.m3 / n) / (self.m2 / n).powf(1.5)
    }

    /// Standard error of the sample variance,
    /// `sqrt((m4 - s^4 (n-3)/(n-1)) / n)`.
    pub fn variance_std_error(&self) -> f64 {
        if self.count < 4 {
            return f64::NAN;
        }
        let n = self.count as f64;
        let s2 = self.variance();
        ((self.central4() - s2 * s2 * (n - 3.0) / (n - 1.0)) / n)
            .max(0.0)
            .sqrt()
    }
}

/// Pearson correlation of two equally long samples.
pub fn correlation(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    sab / (saa * sbb).sqrt()
}
