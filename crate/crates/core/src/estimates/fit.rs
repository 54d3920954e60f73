use crate::error::{Error, Result};

/// Ordinary least squares slope of `log value` against `log t`, with its
/// standard error.
pub fn fit_decay_exponent(series: &[(f64, f64)]) -> Result<(f64, f64)> {
    let good = series.iter().filter(|(t, v)| *t > 0.0 && *v > 0.0 && v.is_finite()).count();
    if good != series.len() || series.len() < 4 {
        return Err(Error::BadSeries { needed: 4, got: good.min(series.len()) });
    }
    let pts: Vec<(f64, f64)> = series.iter().map(|&(t, v)| (t.ln(), v.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::BadSeries { needed: 2, got: 1 });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let stderr = (ssr / (n - 2.0) / sxx).sqrt();
    Ok((slope, stderr))
}
