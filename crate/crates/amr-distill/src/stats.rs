//! One-sample t-test machinery for entropy-based concept selection.
//!
//! For each document, the per-concept entropies form a population with mean
//! `H̄` and sample standard deviation `s` (n−1 denominator). Each concept is
//! tested against that population:
//!
//! ```text
//! t = (H(v) − H̄) / (s / √n)
//! p = 2 · (1 − F_t(|t|, n−1))
//! ```
//!
//! and survives when `p < α` — by default only on the high side (`t > 0`),
//! since the point is to keep concepts that are *harder* to predict than the
//! document average; the literal two-sided rule is available behind
//! [`SelectionMode::TwoSided`]. `F_t` is the Student-t CDF, evaluated
//! through the regularized incomplete beta function (modified Lentz
//! continued fraction, Lanczos log-gamma) with no external dependencies.
//!
//! Degenerate populations — fewer than two concepts, or zero spread — leave
//! the test undefined; every concept is then retained and flagged rather
//! than silently dropped.

use crate::entropy::ConceptEntropy;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors produced by population statistics and the t-test numerics.
#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    /// No values to build a population from.
    #[error("empty population")]
    EmptyPopulation,
    /// t-statistics are undefined when s = 0 or n < 2.
    #[error("degenerate population: n = {n}, sample_std = {sample_std}")]
    DegeneratePopulation { n: usize, sample_std: f64 },
    /// An argument fell outside the mathematical domain.
    #[error("domain error: {0}")]
    DomainError(&'static str),
    /// The continued fraction failed to converge within the iteration cap.
    #[error("incomplete beta continued fraction did not converge")]
    NoConvergence,
}

/// Which side(s) of the distribution count as significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionMode {
    /// Keep only concepts with entropy significantly *above* the mean
    /// (p < α and t > 0). The default.
    #[default]
    HighOnly,
    /// Keep concepts significantly far from the mean on either side
    /// (p < α regardless of sign).
    TwoSided,
}

impl std::str::FromStr for SelectionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "high-only" => Ok(SelectionMode::HighOnly),
            "two-sided" => Ok(SelectionMode::TwoSided),
            other => Err(format!(
                "unknown selection mode `{other}` (expected `high-only` or `two-sided`)"
            )),
        }
    }
}

impl std::fmt::Display for SelectionMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SelectionMode::HighOnly => "high-only",
            SelectionMode::TwoSided => "two-sided",
        })
    }
}

/// Denominator convention for the standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StdDenominator {
    /// Sample standard deviation, n−1. The default everywhere.
    NMinusOne,
    /// Population standard deviation, n. Exposed for comparison runs.
    N,
}

/// A document's entropy population: the values plus cached statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyPopulation {
    pub values: Vec<f64>,
    pub mean: f64,
    /// Standard deviation with the chosen denominator; 0 when n = 1.
    pub sample_std: f64,
    pub n: usize,
}

/// Outcome of testing one concept against its document population.
#[derive(Debug, Clone, PartialEq)]
pub struct SignificanceResult {
    pub concept_label: String,
    /// Variable of the concept's node, when the entropy came from a graph.
    pub variable: Option<String>,
    pub entropy: f64,
    pub t_stat: f64,
    /// Two-sided p-value in [0, 1]; 1 for degenerate populations.
    pub p_value: f64,
    pub selected: bool,
    /// True when the population was degenerate (n < 2 or s = 0) and the
    /// concept was retained without testing.
    pub degenerate: bool,
}

/// Builds a population with the sample (n−1) standard deviation.
pub fn population(values: &[f64]) -> Result<EntropyPopulation, StatsError> {
    population_with_denominator(values, StdDenominator::NMinusOne)
}

/// Builds a population with an explicit denominator convention.
pub fn population_with_denominator(
    values: &[f64],
    denominator: StdDenominator,
) -> Result<EntropyPopulation, StatsError> {
    if values.is_empty() {
        return Err(StatsError::EmptyPopulation);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    let sample_std = match denominator {
        StdDenominator::NMinusOne if n > 1 => (ss / (n - 1) as f64).sqrt(),
        StdDenominator::NMinusOne => 0.0,
        StdDenominator::N => (ss / n as f64).sqrt(),
    };
    Ok(EntropyPopulation {
        values: values.to_vec(),
        mean,
        sample_std,
        n,
    })
}

/// t-statistic of one entropy against the population:
/// `(h − mean) / (s / √n)`.
pub fn t_statistic(h: f64, pop: &EntropyPopulation) -> Result<f64, StatsError> {
    if pop.n < 2 || pop.sample_std == 0.0 {
        return Err(StatsError::DegeneratePopulation {
            n: pop.n,
            sample_std: pop.sample_std,
        });
    }
    Ok((h - pop.mean) / (pop.sample_std / (pop.n as f64).sqrt()))
}

/// Natural log of the gamma function (Lanczos approximation, g = 7, 9
/// terms; accurate to ~1e-13 over the positive reals).
fn ln_gamma(x: f64) -> f64 {
    // Coefficients quoted at published precision.
    #[allow(clippy::excessive_precision)]
    const G: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection for the left half-plane.
        return (std::f64::consts::PI / (std::f64::consts::PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = G[0];
    for (i, g) in G.iter().enumerate().skip(1) {
        acc += g / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Continued-fraction core of the incomplete beta function (modified Lentz).
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> Result<f64, StatsError> {
    const MAX_ITER: usize = 300;
    const EPS: f64 = 1e-15;
    const FPMIN: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let mf = m as f64;
        let m2 = 2.0 * mf;
        // Even step.
        let aa = mf * (b - mf) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        // Odd step.
        let aa = -(a + mf) * (qab + mf) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(StatsError::NoConvergence)
}

/// Regularized incomplete beta function I_x(a, b). Uses the symmetry
/// `I_x(a,b) = 1 − I_{1−x}(b,a)` to keep the continued fraction in its
/// fast-converging region.
pub fn incomplete_beta(x: f64, a: f64, b: f64) -> Result<f64, StatsError> {
    if !(0.0..=1.0).contains(&x) || x.is_nan() {
        return Err(StatsError::DomainError("x must lie in [0, 1]"));
    }
    if a <= 0.0 || b <= 0.0 {
        return Err(StatsError::DomainError("a and b must be positive"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
        + a * x.ln()
        + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok(front * beta_continued_fraction(a, b, x)? / a)
    } else {
        Ok(1.0 - front * beta_continued_fraction(b, a, 1.0 - x)? / b)
    }
}

/// Student-t cumulative distribution function with `df` degrees of freedom:
/// `F(t) = 1 − ½·I_{df/(df+t²)}(df/2, ½)` for t ≥ 0, reflected for t < 0.
pub fn student_t_cdf(t: f64, df: u64) -> Result<f64, StatsError> {
    if df == 0 {
        return Err(StatsError::DomainError("df must be at least 1"));
    }
    if t.is_nan() {
        return Err(StatsError::DomainError("t must not be NaN"));
    }
    if t < 0.0 {
        return Ok(1.0 - student_t_cdf(-t, df)?);
    }
    let dff = df as f64;
    let x = dff / (dff + t * t);
    Ok(1.0 - 0.5 * incomplete_beta(x, dff / 2.0, 0.5)?)
}

/// Two-sided p-value: `2 · (1 − F_t(|t|, df))`.
pub fn p_value(t: f64, df: u64) -> Result<f64, StatsError> {
    let p = 2.0 * (1.0 - student_t_cdf(t.abs(), df)?);
    Ok(p.clamp(0.0, 1.0))
}

/// Tests every concept against the population formed by all of them and
/// marks the survivors. `alpha` is the significance threshold (default 0.3
/// upstream); `mode` picks high-only (default) or two-sided selection. A
/// degenerate population (n < 2 or zero spread) retains everything, with
/// `degenerate` set on every entry.
pub fn select_significant(
    entropies: &[ConceptEntropy],
    alpha: f64,
    mode: SelectionMode,
) -> Result<Vec<SignificanceResult>, StatsError> {
    if entropies.is_empty() {
        return Err(StatsError::EmptyPopulation);
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(StatsError::DomainError("alpha must lie in (0, 1]"));
    }
    let values: Vec<f64> = entropies.iter().map(|c| c.entropy).collect();
    let pop = population(&values)?;

    if pop.n < 2 || pop.sample_std == 0.0 {
        return Ok(entropies
            .iter()
            .map(|c| SignificanceResult {
                concept_label: c.concept_label.clone(),
                variable: c.variable.clone(),
                entropy: c.entropy,
                t_stat: 0.0,
                p_value: 1.0,
                selected: true,
                degenerate: true,
            })
            .collect());
    }

    let df = (pop.n - 1) as u64;
    entropies
        .iter()
        .map(|c| {
            let t = t_statistic(c.entropy, &pop)?;
            let p = p_value(t, df)?;
            let selected = p < alpha
                && match mode {
                    SelectionMode::HighOnly => t > 0.0,
                    SelectionMode::TwoSided => true,
                };
            Ok(SignificanceResult {
                concept_label: c.concept_label.clone(),
                variable: c.variable.clone(),
                entropy: c.entropy,
                t_stat: t,
                p_value: p,
                selected,
                degenerate: false,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn concept(label: &str, entropy: f64) -> ConceptEntropy {
        ConceptEntropy {
            concept_label: label.to_string(),
            variable: None,
            entropy,
            subword_count: 1,
        }
    }

    #[test]
    fn population_statistics() {
        let p = population(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(p.n, 3);
        assert!((p.mean - 2.0).abs() < 1e-12);
        assert!((p.sample_std - 1.0).abs() < 1e-12);

        let p = population(&[5.0]).unwrap();
        assert_eq!((p.n, p.mean, p.sample_std), (1, 5.0, 0.0));

        let p = population(&[2.0, 2.0, 2.0, 2.0]).unwrap();
        assert_eq!(p.sample_std, 0.0);

        assert_eq!(population(&[]), Err(StatsError::EmptyPopulation));
    }

    #[test]
    fn population_statistics_recomputable() {
        let values = [0.3, 1.9, 4.2, 2.8, 0.05, 7.7];
        let p = population(&values).unwrap();
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (values.len() - 1) as f64;
        assert!((p.mean - mean).abs() <= 1e-12 * mean.abs());
        assert!((p.sample_std - var.sqrt()).abs() <= 1e-12 * var.sqrt());
    }

    #[test]
    fn population_n_denominator_variant() {
        let p = population_with_denominator(&[1.0, 2.0, 3.0], StdDenominator::N).unwrap();
        assert!((p.sample_std - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn t_statistic_hand_arithmetic() {
        let pop = population(&[1.0, 2.0, 3.0]).unwrap();
        let t = t_statistic(3.0, &pop).unwrap();
        assert!((t - 3.0f64.sqrt()).abs() < 1e-12);
        assert_eq!(t_statistic(2.0, &pop).unwrap(), 0.0);
        let t = t_statistic(1.0, &pop).unwrap();
        assert!((t + 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn t_statistic_rejects_degenerate_populations() {
        let pop = population(&[5.0]).unwrap();
        assert!(matches!(
            t_statistic(1.0, &pop),
            Err(StatsError::DegeneratePopulation { n: 1, .. })
        ));
        let pop = population(&[2.0, 2.0]).unwrap();
        assert!(matches!(
            t_statistic(2.0, &pop),
            Err(StatsError::DegeneratePopulation { n: 2, .. })
        ));
    }

    #[test]
    fn incomplete_beta_boundaries_and_closed_forms() {
        assert_eq!(incomplete_beta(0.0, 3.0, 4.0).unwrap(), 0.0);
        assert_eq!(incomplete_beta(1.0, 3.0, 4.0).unwrap(), 1.0);
        // I_x(1, 1) = x.
        assert!((incomplete_beta(0.25, 1.0, 1.0).unwrap() - 0.25).abs() < 1e-12);
        // Beta(2, 2) is symmetric around 1/2.
        assert!((incomplete_beta(0.5, 2.0, 2.0).unwrap() - 0.5).abs() < 1e-12);
        // I_x(1, b) = 1 − (1 − x)^b and I_x(a, 1) = x^a.
        for x in [0.05, 0.3, 0.62, 0.97] {
            for p in [0.5, 1.0, 2.5, 7.0] {
                let lhs = incomplete_beta(x, 1.0, p).unwrap();
                assert!((lhs - (1.0 - (1.0 - x).powf(p))).abs() < 1e-12, "x={x} b={p}");
                let lhs = incomplete_beta(x, p, 1.0).unwrap();
                assert!((lhs - x.powf(p)).abs() < 1e-12, "x={x} a={p}");
            }
        }
    }

    #[test]
    fn incomplete_beta_symmetry_identity() {
        for x in [0.01, 0.2, 0.5, 0.8, 0.99] {
            for (a, b) in [(0.5, 0.5), (2.0, 5.0), (10.0, 1.5), (40.0, 40.0)] {
                let lhs = incomplete_beta(x, a, b).unwrap();
                let rhs = 1.0 - incomplete_beta(1.0 - x, b, a).unwrap();
                assert!((lhs - rhs).abs() < 1e-12, "x={x} a={a} b={b}");
            }
        }
    }

    #[test]
    fn incomplete_beta_domain_errors() {
        assert!(matches!(
            incomplete_beta(-0.1, 1.0, 1.0),
            Err(StatsError::DomainError(_))
        ));
        assert!(matches!(
            incomplete_beta(1.1, 1.0, 1.0),
            Err(StatsError::DomainError(_))
        ));
        assert!(matches!(
            incomplete_beta(0.5, 0.0, 1.0),
            Err(StatsError::DomainError(_))
        ));
        assert!(matches!(
            incomplete_beta(0.5, 1.0, -2.0),
            Err(StatsError::DomainError(_))
        ));
    }

    #[test]
    fn t_cdf_is_half_at_zero() {
        for df in 1..=100 {
            let f = student_t_cdf(0.0, df).unwrap();
            assert!((f - 0.5).abs() < 1e-12, "df={df}: {f}");
        }
    }

    #[test]
    fn t_cdf_matches_cauchy_for_df_1() {
        // df = 1 is the Cauchy distribution: F(t) = ½ + arctan(t)/π.
        for i in 0..=100 {
            let t = -10.0 + 0.2 * i as f64;
            let f = student_t_cdf(t, 1).unwrap();
            let exact = 0.5 + t.atan() / std::f64::consts::PI;
            assert!((f - exact).abs() < 1e-10, "t={t}: {f} vs {exact}");
        }
    }

    #[test]
    fn t_cdf_matches_closed_form_for_df_2() {
        // F(t) = ½ + t / (2√2 · √(1 + t²/2)).
        for i in 0..=100 {
            let t = -10.0 + 0.2 * i as f64;
            let f = student_t_cdf(t, 2).unwrap();
            let exact = 0.5 + t / (2.0 * 2.0f64.sqrt() * (1.0 + t * t / 2.0).sqrt());
            assert!((f - exact).abs() < 1e-10, "t={t}: {f} vs {exact}");
        }
        let f = student_t_cdf(3.0f64.sqrt(), 2).unwrap();
        assert!((f - 0.8872983346207417).abs() < 1e-10);
    }

    #[test]
    fn t_cdf_symmetry_and_monotonicity() {
        for df in [1, 2, 5, 29, 400] {
            let mut prev = 0.0;
            for i in 0..=80 {
                let t = -8.0 + 0.2 * i as f64;
                let f = student_t_cdf(t, df).unwrap();
                let g = student_t_cdf(-t, df).unwrap();
                assert!((f + g - 1.0).abs() < 1e-12, "df={df} t={t}");
                assert!(f >= prev, "df={df} t={t}: not monotone");
                prev = f;
            }
        }
    }

    #[test]
    fn t_cdf_approaches_normal_for_large_df() {
        // At df = 10⁶ the t distribution is the standard normal to ~1e-6.
        let f = student_t_cdf(1.959964, 1_000_000).unwrap();
        assert!((f - 0.975).abs() < 1e-4, "{f}");
    }

    #[test]
    fn t_cdf_rejects_zero_df() {
        assert!(matches!(
            student_t_cdf(1.0, 0),
            Err(StatsError::DomainError(_))
        ));
    }

    #[test]
    fn p_value_examples() {
        assert!((p_value(0.0, 5).unwrap() - 1.0).abs() < 1e-12);
        // Closed form at df = 2: p = 2·(1 − F(√3)) with F as above.
        let exact = 2.0 * (1.0 - (0.5 + 3.0f64.sqrt() / (2.0 * 2.0f64.sqrt() * (1.0f64 + 1.5).sqrt())));
        let p = p_value(3.0f64.sqrt(), 2).unwrap();
        assert!((p - exact).abs() < 1e-10);
        assert!((p - 0.2254033).abs() < 1e-6);
        for t in [0.3, 1.7, 4.2] {
            let a = p_value(t, 7).unwrap();
            let b = p_value(-t, 7).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn p_value_antitone_in_magnitude() {
        let mut prev = 1.0 + 1e-9;
        for i in 0..40 {
            let t = 0.25 * i as f64;
            let p = p_value(t, 9).unwrap();
            assert!(p < prev || (p - prev).abs() < 1e-15, "t={t}");
            prev = p;
        }
    }

    #[test]
    fn selects_only_high_entropy_concept() {
        let concepts = vec![concept("a", 1.0), concept("b", 2.0), concept("c", 3.0)];
        let results = select_significant(&concepts, 0.3, SelectionMode::HighOnly).unwrap();
        assert_eq!(results.len(), 3);
        let selected: Vec<&str> = results
            .iter()
            .filter(|r| r.selected)
            .map(|r| r.concept_label.as_str())
            .collect();
        assert_eq!(selected, vec!["c"]);
        // H = 1 has the same p-value but a negative t.
        assert!((results[0].p_value - results[2].p_value).abs() < 1e-12);
        assert!(results[0].t_stat < 0.0);
        assert!(!results.iter().any(|r| r.degenerate));
    }

    #[test]
    fn two_sided_mode_selects_both_tails() {
        let concepts = vec![concept("a", 1.0), concept("b", 2.0), concept("c", 3.0)];
        let results = select_significant(&concepts, 0.3, SelectionMode::TwoSided).unwrap();
        let selected: Vec<&str> = results
            .iter()
            .filter(|r| r.selected)
            .map(|r| r.concept_label.as_str())
            .collect();
        assert_eq!(selected, vec!["a", "c"]);
    }

    #[test]
    fn vanishing_alpha_selects_nothing() {
        let concepts = vec![concept("a", 1.0), concept("b", 2.0), concept("c", 3.0)];
        let results = select_significant(&concepts, 1e-12, SelectionMode::HighOnly).unwrap();
        assert!(results.iter().all(|r| !r.selected));
    }

    #[test]
    fn degenerate_population_keeps_everything() {
        for concepts in [
            vec![concept("only", 4.0)],
            vec![concept("a", 2.0), concept("b", 2.0), concept("c", 2.0)],
        ] {
            let results = select_significant(&concepts, 0.3, SelectionMode::HighOnly).unwrap();
            assert_eq!(results.len(), concepts.len());
            for r in &results {
                assert!(r.selected && r.degenerate);
                assert_eq!(r.t_stat, 0.0);
                assert_eq!(r.p_value, 1.0);
            }
        }
    }

    #[test]
    fn selection_invariant_under_affine_rescale() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let n = rng.gen_range(3..20);
            let values: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..50.0)).collect();
            let scale: f64 = rng.gen_range(0.1..10.0);
            let shift: f64 = rng.gen_range(-5.0..5.0);
            let base: Vec<ConceptEntropy> = values
                .iter()
                .enumerate()
                .map(|(i, v)| concept(&format!("c{i}"), *v))
                .collect();
            let moved: Vec<ConceptEntropy> = values
                .iter()
                .enumerate()
                .map(|(i, v)| concept(&format!("c{i}"), scale * v + shift))
                .collect();
            let a = select_significant(&base, 0.3, SelectionMode::HighOnly).unwrap();
            let b = select_significant(&moved, 0.3, SelectionMode::HighOnly).unwrap();
            let sa: Vec<bool> = a.iter().map(|r| r.selected).collect();
            let sb: Vec<bool> = b.iter().map(|r| r.selected).collect();
            assert_eq!(sa, sb);
        }
    }

    #[test]
    fn rejects_empty_input_and_bad_alpha() {
        assert_eq!(
            select_significant(&[], 0.3, SelectionMode::HighOnly),
            Err(StatsError::EmptyPopulation)
        );
        let concepts = vec![concept("a", 1.0), concept("b", 2.0)];
        assert!(matches!(
            select_significant(&concepts, 0.0, SelectionMode::HighOnly),
            Err(StatsError::DomainError(_))
        ));
        assert!(matches!(
            select_significant(&concepts, 1.5, SelectionMode::HighOnly),
            Err(StatsError::DomainError(_))
        ));
    }

    #[test]
    fn p_value_consistency_invariant() {
        // p = 2·(1 − F(|t|, n−1)) must hold on every non-degenerate result.
        let concepts = vec![
            concept("a", 1.3),
            concept("b", 5.9),
            concept("c", 2.2),
            concept("d", 9.4),
        ];
        let results = select_significant(&concepts, 0.3, SelectionMode::HighOnly).unwrap();
        for r in &results {
            let expected = 2.0 * (1.0 - student_t_cdf(r.t_stat.abs(), 3).unwrap());
            assert!((r.p_value - expected).abs() < 1e-10);
        }
    }
}
