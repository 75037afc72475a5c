/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CiMethod {
    Normal,
    Wilson,
}

/// Binomial rate with a 95% confidence interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateEstimate {
    pub errors: u64,
    pub trials: u64,
    pub rate: f64,
    pub lo: f64,
    pub hi: f64,
    pub method: CiMethod,
}

impl RateEstimate {
    pub fn half_width(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }

    /// True when the two intervals share no point.
    pub fn separated_from(&self, other: &RateEstimate) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }
}

/// Normal-approximation interval, or Wilson's when fewer than 30 errors or
/// 30 successes were seen.
pub fn rate_ci(errors: u64, trials: u64) -> RateEstimate {
    assert!(trials > 0 && errors <= trials);
    let n = trials as f64;
    let rate = errors as f64 / n;
    let z = Z95;
    if errors < 30 || trials - errors < 30 {
        let denom = 1.0 + z * z / n;
        let centre = (rate + z * z / (2.0 * n)) / denom;
        let half = z * (rate * (1.0 - rate) / n + z * z / (4.0 * n * n)).sqrt() / denom;
        RateEstimate {
            errors,
            trials,
            rate,
            lo: if errors == 0 { 0.0 } else { (centre - half).max(0.0) },
            hi: if errors == trials { 1.0 } else { (centre + half).min(1.0) },
            method: CiMethod::Wilson,
        }
    } else {
        let half = z * (rate * (1.0 - rate) / n).sqrt();
        RateEstimate {
            errors,
            trials,
            rate,
            lo: (rate - half).max(0.0),
            hi: (rate + half).min(1.0),
            method: CiMethod::Normal,
        }
    }
}

/// Power sums of `d = z - 1` for mean and variance with standard errors.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Moments {
    pub count: u64,
    s1: f64,
    s2: f64,
    s3: f64,
    s4: f64,
}

impl Moments {
    #[inline]
    pub fn push(&mut self, z: f64) {
        let d = z - 1.0;
        let d2 = d * d;
        self.count += 1;
        self.s1 += d;
        self.s2 += d2;
        self.s3 += d2 * d;
        self.s4 += d2 * d2;
    }

    pub fn merge(&mut self, other: &Moments) {
        self.count += other.count;
        self.s1 += other.s1;
        self.s2 += other.s2;
        self.s3 += other.s3;
        self.s4 += other.s4;
    }

    pub fn mean(&self) -> f64 {
        1.0 + self.s1 / self.count as f64
    }

    /// Second moment about 1, the quantity the variance recursion tracks.
    pub fn second_moment(&self) -> f64 {
        self.s2 / self.count as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        let n = self.count as f64;
        let m = self.s1 / n;
        (self.s2 / n - m * m) * n / (n - 1.0)
    }

    /// Standard error of the mean.
    pub fn mean_se(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }

    /// Large-sample standard error of the variance, `sqrt((m4 - m2^2)/n)`.
    pub fn variance_se(&self) -> f64 {
        let n = self.count as f64;
        let m = self.s1 / n;
        let (r2, r3, r4) = (self.s2 / n, self.s3 / n, self.s4 / n);
        let m2 = r2 - m * m;
        let m4 = r4 - 4.0 * m * r3 + 6.0 * m * m * r2 - 3.0 * m.powi(4);
        ((m4 - m2 * m2).max(0.0) / n).sqrt()
    }
}
