use serde::{Deserialize, Serialize};

use super::progress::ProgressReport;

/// Constant in the asymptotic query floor `√(c·N / 4h)`.
pub const ASYMPTOTIC_C: f64 = 0.17;

/// How success of a run is judged at step `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuccessMode {
    /// Every marked item is found with probability at least ½.
    PerItem,
    /// The average success probability is at least ½.
    Averaged,
}

/// `(√(2(N − √N)) − √N)²`: the displacement any run reaching success ½ must have.
pub fn finite_n_lower_threshold(n: usize) -> f64 {
    let n = n as f64;
    let r = n.sqrt();
    let gap = (2.0 * (n - r)).sqrt() - r;
    gap * gap
}

/// `√(c·N / 4h)`.
pub fn asymptotic_floor(n: usize, h: usize) -> f64 {
    (ASYMPTOTIC_C * n as f64 / (4.0 * h as f64)).sqrt()
}

/// `⌈(π/4)√N⌉`.
pub fn grover_count(n: usize) -> usize {
    (std::f64::consts::FRAC_PI_4 * (n as f64).sqrt()).ceil() as usize
}

fn succeeded(value: f64) -> bool {
    value >= 0.5
}

/// First `k` whose success (per `mode`) is at least ½.
pub fn first_success_k(report: &ProgressReport, mode: SuccessMode) -> Option<usize> {
    report
        .steps
        .iter()
        .find(|s| {
            succeeded(match mode {
                SuccessMode::PerItem => s.success_min,
                SuccessMode::Averaged => s.success_mean,
            })
        })
        .map(|s| s.k)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperBoundCheck {
    /// `max_{k≥1} (D_k − 4hk²)`; nonpositive when the bound holds.
    pub worst_margin: f64,
    pub first_violation: Option<usize>,
    pub tol: f64,
    pub passed: bool,
}

/// `D_k ≤ 4hk²` at every step.
pub fn upper_bound_check(report: &ProgressReport, tol: f64) -> UpperBoundCheck {
    let mut worst = f64::NEG_INFINITY;
    let mut first_violation = None;
    // k = 0 is 0 ≤ 0 and would mask the margins that matter
    for s in report.steps.iter().filter(|s| s.k > 0) {
        let margin = s.d - s.upper;
        worst = worst.max(margin);
        if margin > tol && first_violation.is_none() {
            first_violation = Some(s.k);
        }
    }
    if worst == f64::NEG_INFINITY {
        worst = 0.0;
    }
    UpperBoundCheck {
        worst_margin: worst,
        first_violation,
        tol,
        passed: first_violation.is_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundCheck {
    pub mode: SuccessMode,
    /// First step reaching success ½, if any.
    pub crossing: Option<usize>,
    pub d_at_crossing: Option<f64>,
    pub threshold: f64,
    pub tol: f64,
    /// Vacuously true when the run never reaches success ½.
    pub passed: bool,
}

/// `D_k* ≥ (√(2(N − √N)) − √N)²` at the first successful step `k*`.
pub fn lower_bound_check(report: &ProgressReport, mode: SuccessMode, tol: f64) -> LowerBoundCheck {
    let threshold = finite_n_lower_threshold(report.n());
    let crossing = first_success_k(report, mode);
    let d_at_crossing = crossing.map(|k| report.steps[k].d);
    LowerBoundCheck {
        mode,
        crossing,
        d_at_crossing,
        threshold,
        tol,
        passed: d_at_crossing.is_none_or(|d| d >= threshold - tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert_eq!(finite_n_lower_threshold(4), 0.0);
        let cases = [(16, 0.808), (64, 6.672), (256, 34.915), (1024, 157.305)];
        for (n, want) in cases {
            assert!((finite_n_lower_threshold(n) - want).abs() < 1e-3, "N = {n}");
        }
    }

    #[test]
    fn grover_counts() {
        let got: Vec<usize> = [4, 16, 64, 256, 1024]
            .iter()
            .map(|&n| grover_count(n))
            .collect();
        assert_eq!(got, [2, 4, 7, 13, 26]);
    }

    #[test]
    fn floor_values() {
        assert!((asymptotic_floor(1024, 2) - (0.17f64 * 128.0).sqrt()).abs() < 1e-12);
    }
}
