//! Thin wrappers over `libm` so the rest of the crate stays `no_std`.

pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}


/// Logistic function, numerically stable for large |x|.
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + exp(-x))
    } else {
        let e = exp(x);
        e / (1.0 + e)
    }
}

/// Binary cross-entropy for a single example, via log-sum-exp on the margin.
pub fn logistic_loss(margin: f64, label: bool) -> f64 {
    // -[y ln p + (1-y) ln(1-p)] = ln(1 + e^-m) + (1-y) m, rearranged stably
    let z = if label { margin } else { -margin };
    if z > 0.0 {
        ln(1.0 + exp(-z))
    } else {
        -z + ln(1.0 + exp(z))
    }
}
