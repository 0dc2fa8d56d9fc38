//! Logistic link helpers shared by every model family.

/// Numerically stable logistic function.
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        let z = (-x).exp();
        1.0 / (1.0 + z)
    } else {
        let z = x.exp();
        z / (1.0 + z)
    }
}

/// Inverse of [`sigmoid`]; `p` must lie in (0, 1).
pub fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// ln(1 + e^x) without overflow.
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Mean logistic loss of margins `f` against 0/1 labels.
pub fn mean_log_loss(margins: &[f64], labels: &[u8]) -> f64 {
    debug_assert_eq!(margins.len(), labels.len());
    let total: f64 = margins
        .iter()
        .zip(labels)
        .map(|(&f, &y)| softplus(f) - (y as f64) * f)
        .sum();
    total / margins.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sigmoid_midpoint_and_tails() {
        assert_abs_diff_eq!(sigmoid(0.0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(sigmoid(10.0), 0.9999546021312976, epsilon = 1e-12);
        assert!(sigmoid(-745.0) > 0.0);
        assert!(sigmoid(745.0) < 1.0);
    }

    #[test]
    fn logit_inverts_sigmoid() {
        for &x in &[-3.0, -0.5, 0.0, 1.25, 6.0] {
            assert_abs_diff_eq!(logit(sigmoid(x)), x, epsilon = 1e-9);
        }
    }

    #[test]
    fn log_loss_matches_direct_formula() {
        let margins = [0.3, -1.2, 2.0];
        let labels = [1u8, 0, 1];
        let direct: f64 = margins
            .iter()
            .zip(&labels)
            .map(|(&f, &y)| {
                let p = sigmoid(f);
                if y == 1 {
                    -p.ln()
                } else {
                    -(1.0 - p).ln()
                }
            })
            .sum::<f64>()
            / 3.0;
        assert_abs_diff_eq!(mean_log_loss(&margins, &labels), direct, epsilon = 1e-12);
    }
}
