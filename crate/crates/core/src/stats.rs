//! Small descriptive statistics for sweep aggregation.

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeanSd {
    pub mean: f64,
    pub sd: f64,
    pub count: usize,
}

/// Mean and sample standard deviation (n - 1 denominator; 0 for one sample).
pub fn mean_sd(values: &[f64]) -> MeanSd {
    let count = values.len();
    if count == 0 {
        return MeanSd { mean: f64::NAN, sd: f64::NAN, count };
    }
    let mean = values.iter().sum::<f64>() / count as f64;
    let sd = if count > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
    } else {
        0.0
    };
    MeanSd { mean, sd, count }
}

/// Ranks starting at 1, ties sharing their average rank.
fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation; NaN when either side is constant.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let (rx, ry) = (ranks(x), ranks(y));
    let (mx, my) = (mean_sd(&rx).mean, mean_sd(&ry).mean);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_sd() {
        let s = mean_sd(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.sd - 1.2909944487358056).abs() < 1e-15);
        assert_eq!(mean_sd(&[7.0]).sd, 0.0);
        assert!(mean_sd(&[]).mean.is_nan());
    }

    #[test]
    fn spearman_values() {
        assert!((spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]) - 1.0).abs() < 1e-15);
        assert!((spearman(&[1.0, 2.0, 3.0], &[3.0, 1.0, 0.0]) + 1.0).abs() < 1e-15);
        // x = 1..5, y = [1, 3, 2, 5, 4]: Σd² = 4, ρ = 1 - 6·4/(5·24) = 0.8
        assert!((spearman(&[1.0, 2.0, 3.0, 4.0, 5.0], &[1.0, 3.0, 2.0, 5.0, 4.0]) - 0.8).abs() < 1e-12);
        assert_eq!(ranks(&[2.0, 1.0, 2.0]), vec![2.5, 1.0, 2.5]);
    }
}
