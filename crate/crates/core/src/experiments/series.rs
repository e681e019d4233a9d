use super::ExperimentError;

/// A per-level series together with its centered moving average.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedSeries {
    pub raw: Vec<Option<f64>>,
    pub window: usize,
    pub smoothed: Vec<Option<f64>>,
}

impl SmoothedSeries {
    pub fn new(raw: Vec<Option<f64>>, window: usize) -> Result<Self, ExperimentError> {
        let smoothed = smooth_present(&raw, window)?;
        Ok(Self { raw, window, smoothed })
    }
}

fn check_window(w: usize) -> Result<(), ExperimentError> {
    if w == 0 || w.is_multiple_of(2) {
        return Err(ExperimentError::Config(format!(
            "smoothing window must be odd and positive, got {w}"
        )));
    }
    Ok(())
}

/// Centered moving average with odd window `w`. Near the ends the window
/// shrinks symmetrically, so entry `i` averages `i-r..=i+r` with
/// `r = min(w/2, i, len-1-i)`.
pub fn smooth(series: &[f64], w: usize) -> Result<Vec<f64>, ExperimentError> {
    check_window(w)?;
    let len = series.len();
    Ok((0..len)
        .map(|i| {
            let r = (w / 2).min(i).min(len - 1 - i);
            mean(&series[i - r..=i + r])
        })
        .collect())
}

/// [`smooth`] for series with absent entries: each output averages the present
/// values inside the (symmetrically shrunk) window, and stays absent where
/// the raw entry is absent.
pub fn smooth_present(series: &[Option<f64>], w: usize) -> Result<Vec<Option<f64>>, ExperimentError> {
    check_window(w)?;
    let len = series.len();
    Ok((0..len)
        .map(|i| {
            series[i]?;
            let r = (w / 2).min(i).min(len - 1 - i);
            let present: Vec<f64> = series[i - r..=i + r].iter().flatten().copied().collect();
            Some(mean(&present))
        })
        .collect())
}

/// Plain mean, except that a window of equal values returns that value
/// unrounded.
fn mean(xs: &[f64]) -> f64 {
    let first = xs[0];
    if xs.iter().all(|&v| v == first) {
        return first;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Divides by the sum.
pub fn normalize(series: &[f64]) -> Result<Vec<f64>, ExperimentError> {
    let total: f64 = series.iter().sum();
    if !total.is_finite() || total <= 0.0 {
        return Err(ExperimentError::Domain(format!("cannot normalize a series with sum {total}")));
    }
    Ok(series.iter().map(|v| v / total).collect())
}
