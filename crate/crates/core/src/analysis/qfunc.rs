use statrs::function::erf::{erfc, erfc_inv};

/// Gaussian tail `Q(x) = P(N(0,1) > x)`.
pub fn q(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Inverse of [`q`] on `(0, 1)`: the library inverse refined by Newton steps.
pub fn q_inv(p: f64) -> f64 {
    let mut x = std::f64::consts::SQRT_2 * erfc_inv(2.0 * p);
    if !x.is_finite() {
        return x;
    }
    for _ in 0..2 {
        let density = (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
        if density == 0.0 {
            break;
        }
        x += (q(x) - p) / density;
    }
    x
}
