//! Estimators and closed-form term weights for the binary-independence
//! relevance model.
//!
//! The generic log-odds weight of a term is
//!
//! ```text
//! w = log( p (1 - q) / ( q (1 - p) ) )
//! ```
//!
//! where `p` is the probability that the term occurs in a relevant document
//! and `q` the probability that it occurs in a non-relevant one. Without
//! relevance judgments, `q` is estimated from document frequency (`q = n/N`)
//! and `p` by one of several strategies, each collapsing the weight to a
//! closed form:
//!
//! | estimate of `p`                      | closed-form weight      |
//! |--------------------------------------|-------------------------|
//! | constant `pi`                        | `pi' + log((N - n)/n)`  |
//! | hyperbolic `pi/(pi + (1-pi)(N-n)/N)` | `pi' + log(N/n)`        |
//! | lifted frequency `(n + L)/(N + L)`   | `log(1 + L/n)`          |
//!
//! with `pi' = log(pi/(1 - pi))`. Setting `L = N` in the lift scheme gives
//! `log(1 + N/n)`, the usual IDF. All functions here are pure; the closed
//! forms are checked against the generic weight by [`crate::analysis`].

use std::fmt;

/// Errors from weight computation and parameter validation.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum WeightError {
    /// `p` or `q` is exactly 0 or 1; the log-odds weight is infinite.
    #[error("probability {value} makes the log-odds weight infinite")]
    DegenerateProbability { value: f64 },
    /// The scheme's closed form has no finite value at this document
    /// frequency (`df = 0` everywhere; `df = N` under the constant-`pi`
    /// scheme).
    #[error("document frequency {df} of {corpus_size} has no finite weight under this scheme")]
    DegenerateDocFreq { df: u64, corpus_size: u64 },
    /// A lift function returned a value that is not strictly positive.
    #[error("lift function produced a nonpositive value {value}")]
    NonpositiveLift { value: f64 },
    #[error("probability {value} is outside [0, 1]")]
    InvalidProbability { value: f64 },
    #[error("pi must lie strictly between 0 and 1, got {value}")]
    InvalidPi { value: f64 },
    #[error("lift constant must be positive and finite, got {value}")]
    InvalidLift { value: f64 },
    #[error("invalid term statistics: df {df} with corpus size {corpus_size}")]
    InvalidTermStats { df: u64, corpus_size: u64 },
}

/// Logarithm base used for weights. The base only rescales weights by a
/// positive constant, so rankings are identical across bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LogBase {
    #[default]
    E,
    Two,
    Ten,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::E => x.ln(),
            LogBase::Two => x.log2(),
            LogBase::Ten => x.log10(),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogBase::E => f.write_str("e"),
            LogBase::Two => f.write_str("2"),
            LogBase::Ten => f.write_str("10"),
        }
    }
}

/// Document-frequency statistics for one term: `df` of the `corpus_size`
/// documents contain it. Guarantees `df <= corpus_size` and
/// `corpus_size >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TermStats {
    df: u64,
    corpus_size: u64,
}

impl TermStats {
    pub fn new(df: u64, corpus_size: u64) -> Result<Self, WeightError> {
        if corpus_size == 0 || df > corpus_size {
            return Err(WeightError::InvalidTermStats { df, corpus_size });
        }
        Ok(Self { df, corpus_size })
    }

    pub fn df(&self) -> u64 {
        self.df
    }

    pub fn corpus_size(&self) -> u64 {
        self.corpus_size
    }

    fn df_f(&self) -> f64 {
        self.df as f64
    }

    fn corpus_f(&self) -> f64 {
        self.corpus_size as f64
    }

    /// `N - n` computed in integers, so it is exact even when `n` is close
    /// to `N`.
    fn absent_f(&self) -> f64 {
        (self.corpus_size - self.df) as f64
    }
}

/// A probability carried together with its complement.
///
/// The log-odds weight divides by `1 - p`. Recomputing the complement from
/// a rounded `p` loses nearly all precision as `p` approaches 1, while every
/// estimator here can produce the complement from a direct formula (for
/// example `(N - n)/(N + L)` for the lift estimate), so both are kept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probability {
    value: f64,
    complement: f64,
}

impl Probability {
    /// Builds from a bare value; the complement is `1 - value`. The
    /// estimators construct their probabilities with exact complements
    /// instead, so values near 1 keep full precision.
    pub fn new(value: f64) -> Result<Self, WeightError> {
        if !(0.0..=1.0).contains(&value) {
            return Err(WeightError::InvalidProbability { value });
        }
        Ok(Self {
            value,
            complement: 1.0 - value,
        })
    }

    pub(crate) fn from_parts(value: f64, complement: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&value), "value {value} out of range");
        debug_assert!(
            (0.0..=1.0).contains(&complement),
            "complement {complement} out of range"
        );
        Self { value, complement }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn complement(&self) -> f64 {
        self.complement
    }

    /// True when the log-odds of this probability is infinite.
    pub fn is_degenerate(&self) -> bool {
        self.value == 0.0 || self.complement == 0.0
    }
}

/// Shared estimator parameters: the constant `pi` used by the constant and
/// hyperbolic estimates, the lift constant `L`, and the logarithm base.
/// Guarantees `0 < pi < 1` and `L > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorParams {
    pi: Probability,
    lift: f64,
    log_base: LogBase,
}

impl EstimatorParams {
    pub fn new(pi: f64, lift: f64, log_base: LogBase) -> Result<Self, WeightError> {
        if !(pi > 0.0 && pi < 1.0) {
            return Err(WeightError::InvalidPi { value: pi });
        }
        if !(lift > 0.0 && lift.is_finite()) {
            return Err(WeightError::InvalidLift { value: lift });
        }
        Ok(Self {
            pi: Probability::new(pi).expect("pi lies strictly inside (0, 1)"),
            lift,
            log_base,
        })
    }

    pub fn pi(&self) -> Probability {
        self.pi
    }

    pub fn lift(&self) -> f64 {
        self.lift
    }

    pub fn log_base(&self) -> LogBase {
        self.log_base
    }

    pub fn with_log_base(mut self, log_base: LogBase) -> Self {
        self.log_base = log_base;
        self
    }
}

impl Default for EstimatorParams {
    /// `pi = 0.5`, `L = 1`, natural log.
    fn default() -> Self {
        Self::new(0.5, 1.0, LogBase::E).expect("defaults are valid")
    }
}

/// Generic log-odds term weight `log(p(1-q) / (q(1-p)))`.
pub fn rsj_weight(p: Probability, q: Probability, base: LogBase) -> Result<f64, WeightError> {
    if p.is_degenerate() {
        return Err(WeightError::DegenerateProbability { value: p.value() });
    }
    if q.is_degenerate() {
        return Err(WeightError::DegenerateProbability { value: q.value() });
    }
    Ok(base.log((p.value() * q.complement()) / (q.value() * p.complement())))
}

/// Document-frequency estimate of the non-relevant occurrence probability:
/// with nearly every document non-relevant, `q = n/N`.
pub fn estimate_q_ch1(stats: TermStats) -> Probability {
    Probability::from_parts(
        stats.df_f() / stats.corpus_f(),
        stats.absent_f() / stats.corpus_f(),
    )
}

/// Constant estimate of the relevant occurrence probability: every query
/// term gets the same `pi`, regardless of document frequency.
pub fn estimate_p_ch2(params: &EstimatorParams) -> Probability {
    params.pi()
}

/// Hyperbolic estimate `pi / (pi + (1-pi)(N-n)/N)`: equals `pi` for an
/// unseen term and climbs to 1 as the term approaches ubiquity, staying
/// inside `[pi, 1]` throughout.
pub fn estimate_p_rw(stats: TermStats, params: &EstimatorParams) -> Probability {
    // n = 0 is the anchor of the curve; return pi itself rather than let
    // the division wobble off it by an ulp.
    if stats.df() == 0 {
        return params.pi();
    }
    let pi = params.pi();
    let absent_frac = stats.absent_f() / stats.corpus_f();
    let scaled = pi.complement() * absent_frac;
    let denom = pi.value() + scaled;
    Probability::from_parts(pi.value() / denom, scaled / denom)
}

/// Lifted-frequency estimate `(n + L)/(N + L)`: the corpus-wide occurrence
/// rate pulled up toward 1, so query terms are deemed likelier in relevant
/// documents than in arbitrary ones.
pub fn estimate_p_lift(stats: TermStats, lift: f64) -> Probability {
    assert!(lift > 0.0 && lift.is_finite(), "lift must be positive, got {lift}");
    let denom = stats.corpus_f() + lift;
    Probability::from_parts((stats.df_f() + lift) / denom, stats.absent_f() / denom)
}

/// Closed form of the constant-`pi` scheme: `pi' + log((N-n)/n)`.
/// Undefined at `df = 0` and `df = N`, and negative whenever `df > N/2`
/// at `pi = 0.5`.
pub fn weight_ch(stats: TermStats, params: &EstimatorParams) -> Result<f64, WeightError> {
    if stats.df() == 0 || stats.df() == stats.corpus_size() {
        return Err(WeightError::DegenerateDocFreq {
            df: stats.df(),
            corpus_size: stats.corpus_size(),
        });
    }
    Ok(pi_prime(params) + params.log_base().log(stats.absent_f() / stats.df_f()))
}

/// Closed form of the hyperbolic scheme: `pi' + log(N/n)`. Finite at
/// `df = N` (where it equals `pi'`), undefined at `df = 0`, and nonnegative
/// for `pi >= 0.5`.
pub fn weight_rw(stats: TermStats, params: &EstimatorParams) -> Result<f64, WeightError> {
    if stats.df() == 0 {
        return Err(WeightError::DegenerateDocFreq {
            df: stats.df(),
            corpus_size: stats.corpus_size(),
        });
    }
    Ok(pi_prime(params) + params.log_base().log(stats.corpus_f() / stats.df_f()))
}

/// Closed form of the lift scheme: `log(1 + L/n)`. Strictly positive and
/// strictly decreasing in `df`; finite at `df = N`, undefined at `df = 0`.
pub fn weight_lift(stats: TermStats, lift: f64, base: LogBase) -> Result<f64, WeightError> {
    assert!(lift > 0.0 && lift.is_finite(), "lift must be positive, got {lift}");
    if stats.df() == 0 {
        return Err(WeightError::DegenerateDocFreq {
            df: stats.df(),
            corpus_size: stats.corpus_size(),
        });
    }
    Ok(base.log(1.0 + lift / stats.df_f()))
}

/// Lift-function weight `log(1 + f(n)/n)`: the lift scheme with the
/// constant replaced pointwise by `f`. Errors if `f(n)` is not strictly
/// positive.
pub fn weight_lift_fn(
    stats: TermStats,
    f: &crate::scheme::LiftFunction,
    base: LogBase,
) -> Result<f64, WeightError> {
    if stats.df() == 0 {
        return Err(WeightError::DegenerateDocFreq {
            df: stats.df(),
            corpus_size: stats.corpus_size(),
        });
    }
    let lift = f.value(stats.df(), stats.corpus_size());
    if !(lift > 0.0 && lift.is_finite()) {
        return Err(WeightError::NonpositiveLift { value: lift });
    }
    Ok(base.log(1.0 + lift / stats.df_f()))
}

/// The additive constant `pi' = log(pi/(1-pi))`; zero at `pi = 0.5`.
pub fn pi_prime(params: &EstimatorParams) -> f64 {
    params
        .log_base()
        .log(params.pi().value() / params.pi().complement())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::LiftFunction;

    const TOL: f64 = 1e-12;

    fn stats(df: u64, n: u64) -> TermStats {
        TermStats::new(df, n).unwrap()
    }

    fn params(pi: f64) -> EstimatorParams {
        EstimatorParams::new(pi, 1.0, LogBase::E).unwrap()
    }

    #[test]
    fn rsj_weight_is_zero_at_even_odds() {
        let half = Probability::new(0.5).unwrap();
        assert_eq!(rsj_weight(half, half, LogBase::E).unwrap(), 0.0);
    }

    #[test]
    fn rsj_weight_matches_known_value() {
        // log(0.9 * 0.9 / (0.1 * 0.1)) = log 81
        let p = Probability::new(0.9).unwrap();
        let q = Probability::new(0.1).unwrap();
        let w = rsj_weight(p, q, LogBase::E).unwrap();
        assert!((w - 4.394449154672439).abs() < TOL);
    }

    #[test]
    fn rsj_weight_is_antisymmetric() {
        for &(a, b) in &[(0.3, 0.7), (0.01, 0.99), (0.5, 0.25), (0.9, 0.2)] {
            let p = Probability::new(a).unwrap();
            let q = Probability::new(b).unwrap();
            let fwd = rsj_weight(p, q, LogBase::E).unwrap();
            let rev = rsj_weight(q, p, LogBase::E).unwrap();
            assert!((fwd + rev).abs() < TOL, "{a} {b}: {fwd} vs {rev}");
        }
    }

    #[test]
    fn rsj_weight_rejects_degenerate_probabilities() {
        let zero = Probability::new(0.0).unwrap();
        let one = Probability::new(1.0).unwrap();
        let half = Probability::new(0.5).unwrap();
        assert_eq!(
            rsj_weight(zero, half, LogBase::E),
            Err(WeightError::DegenerateProbability { value: 0.0 })
        );
        assert_eq!(
            rsj_weight(half, one, LogBase::E),
            Err(WeightError::DegenerateProbability { value: 1.0 })
        );
    }

    #[test]
    fn probability_rejects_out_of_range_values() {
        assert!(matches!(
            Probability::new(-0.1),
            Err(WeightError::InvalidProbability { .. })
        ));
        assert!(matches!(
            Probability::new(1.5),
            Err(WeightError::InvalidProbability { .. })
        ));
        assert!(matches!(
            Probability::new(f64::NAN),
            Err(WeightError::InvalidProbability { .. })
        ));
    }

    #[test]
    fn term_stats_rejects_impossible_counts() {
        assert!(matches!(
            TermStats::new(5, 4),
            Err(WeightError::InvalidTermStats { .. })
        ));
        assert!(matches!(
            TermStats::new(0, 0),
            Err(WeightError::InvalidTermStats { .. })
        ));
    }

    #[test]
    fn estimator_params_validate_pi_and_lift() {
        assert!(matches!(
            EstimatorParams::new(0.0, 1.0, LogBase::E),
            Err(WeightError::InvalidPi { .. })
        ));
        assert!(matches!(
            EstimatorParams::new(1.0, 1.0, LogBase::E),
            Err(WeightError::InvalidPi { .. })
        ));
        assert!(matches!(
            EstimatorParams::new(f64::NAN, 1.0, LogBase::E),
            Err(WeightError::InvalidPi { .. })
        ));
        assert!(matches!(
            EstimatorParams::new(0.5, 0.0, LogBase::E),
            Err(WeightError::InvalidLift { .. })
        ));
        assert!(matches!(
            EstimatorParams::new(0.5, -3.0, LogBase::E),
            Err(WeightError::InvalidLift { .. })
        ));
    }

    #[test]
    fn q_estimate_is_document_frequency_rate() {
        assert_eq!(estimate_q_ch1(stats(10, 100)).value(), 0.1);
        assert_eq!(estimate_q_ch1(stats(0, 100)).value(), 0.0);
        assert_eq!(estimate_q_ch1(stats(100, 100)).value(), 1.0);
        assert_eq!(estimate_q_ch1(stats(100, 100)).complement(), 0.0);
    }

    #[test]
    fn constant_p_estimate_ignores_document_frequency() {
        let params = params(0.7);
        assert_eq!(estimate_p_ch2(&params).value(), 0.7);
        assert_eq!(estimate_p_ch2(&params).value(), params.pi().value());
    }

    #[test]
    fn hyperbolic_estimate_hits_its_anchor_points() {
        let p = params(0.5);
        assert_eq!(estimate_p_rw(stats(0, 100), &p).value(), 0.5);
        assert_eq!(estimate_p_rw(stats(100, 100), &p).value(), 1.0);
        let mid = estimate_p_rw(stats(50, 100), &p).value();
        assert!((mid - 2.0 / 3.0).abs() < 1e-15, "got {mid}");
    }

    #[test]
    fn lift_estimate_hits_its_anchor_points() {
        let p = estimate_p_lift(stats(0, 100), 100.0);
        assert_eq!(p.value(), 0.5);
        assert_eq!(estimate_p_lift(stats(100, 100), 100.0).value(), 1.0);
        assert_eq!(estimate_p_lift(stats(10, 100), 100.0).value(), 0.55);
    }

    #[test]
    fn lift_estimate_dominates_frequency_rate() {
        for df in 0..100 {
            let s = stats(df, 100);
            let lifted = estimate_p_lift(s, 25.0).value();
            let rate = estimate_q_ch1(s).value();
            assert!(lifted > rate, "df={df}: {lifted} <= {rate}");
        }
        assert_eq!(estimate_p_lift(stats(100, 100), 25.0).value(), 1.0);
    }

    #[test]
    fn constant_pi_weight_matches_frozen_values() {
        // pi = 0.5: pi' = 0, so the weight is log((N-n)/n).
        assert_eq!(weight_ch(stats(50, 100), &params(0.5)).unwrap(), 0.0);
        let w = weight_ch(stats(10, 100), &params(0.5)).unwrap();
        assert!((w - 2.1972245773362196).abs() < TOL); // log 9
        let w = weight_ch(stats(60, 100), &params(0.5)).unwrap();
        assert!((w - -0.40546510810816444).abs() < TOL); // log(2/3) < 0
    }

    #[test]
    fn constant_pi_weight_matches_generic_weight() {
        for &(df, n, pi) in &[(1u64, 2u64, 0.5), (10, 100, 0.3), (99, 100, 0.7), (333, 1000, 0.5)] {
            let s = stats(df, n);
            let p = params(pi);
            let closed = weight_ch(s, &p).unwrap();
            let generic = rsj_weight(estimate_p_ch2(&p), estimate_q_ch1(s), LogBase::E).unwrap();
            assert!((closed - generic).abs() < TOL, "df={df} n={n} pi={pi}");
        }
    }

    #[test]
    fn constant_pi_weight_is_undefined_at_extremes() {
        assert_eq!(
            weight_ch(stats(0, 100), &params(0.5)),
            Err(WeightError::DegenerateDocFreq { df: 0, corpus_size: 100 })
        );
        assert_eq!(
            weight_ch(stats(100, 100), &params(0.5)),
            Err(WeightError::DegenerateDocFreq { df: 100, corpus_size: 100 })
        );
    }

    #[test]
    fn hyperbolic_weight_matches_frozen_values() {
        let w = weight_rw(stats(10, 100), &params(0.5)).unwrap();
        assert!((w - std::f64::consts::LN_10).abs() < TOL); // log 10
        let w = weight_rw(stats(10, 100), &params(0.75)).unwrap();
        assert!((w - 3.401197381662156).abs() < TOL); // log 3 + log 10
        assert_eq!(weight_rw(stats(100, 100), &params(0.5)).unwrap(), 0.0);
    }

    #[test]
    fn hyperbolic_weight_matches_generic_weight() {
        for &(df, n, pi) in &[(1u64, 2u64, 0.5), (10, 100, 0.3), (50, 100, 0.7), (999, 1000, 0.5)] {
            let s = stats(df, n);
            let p = params(pi);
            let closed = weight_rw(s, &p).unwrap();
            let generic = rsj_weight(estimate_p_rw(s, &p), estimate_q_ch1(s), LogBase::E).unwrap();
            assert!((closed - generic).abs() < TOL, "df={df} n={n} pi={pi}");
        }
        // At df = N the estimate is exactly 1: the generic log-odds route is
        // 0/0 and must refuse, while the closed form stays finite.
        let s = stats(100, 100);
        let p = params(0.7);
        assert!(weight_rw(s, &p).unwrap().is_finite());
        assert_eq!(
            rsj_weight(estimate_p_rw(s, &p), estimate_q_ch1(s), LogBase::E),
            Err(WeightError::DegenerateProbability { value: 1.0 })
        );
    }

    #[test]
    fn hyperbolic_weight_is_undefined_for_unseen_terms() {
        assert_eq!(
            weight_rw(stats(0, 100), &params(0.5)),
            Err(WeightError::DegenerateDocFreq { df: 0, corpus_size: 100 })
        );
    }

    #[test]
    fn lift_weight_matches_frozen_values() {
        let w = weight_lift(stats(10, 100), 100.0, LogBase::E).unwrap();
        assert!((w - 2.3978952727983707).abs() < TOL); // log 11
        let w = weight_lift(stats(100, 100), 100.0, LogBase::E).unwrap();
        assert!((w - std::f64::consts::LN_2).abs() < TOL); // log 2
    }

    #[test]
    fn lift_weight_matches_generic_weight() {
        for &(df, n, lift) in &[(1u64, 2u64, 1.0), (10, 100, 50.0), (50, 100, 100.0), (999, 1000, 2000.0)] {
            let s = stats(df, n);
            let closed = weight_lift(s, lift, LogBase::E).unwrap();
            let generic =
                rsj_weight(estimate_p_lift(s, lift), estimate_q_ch1(s), LogBase::E).unwrap();
            assert!((closed - generic).abs() < TOL, "df={df} n={n} lift={lift}");
        }
        // df = N pins the estimate to 1; only the closed form survives there.
        let s = stats(100, 100);
        assert!(weight_lift(s, 100.0, LogBase::E).unwrap().is_finite());
        assert_eq!(
            rsj_weight(estimate_p_lift(s, 100.0), estimate_q_ch1(s), LogBase::E),
            Err(WeightError::DegenerateProbability { value: 1.0 })
        );
    }

    #[test]
    fn corpus_sized_lift_is_the_usual_idf_bit_for_bit() {
        for n in 1..=200u64 {
            for df in 1..=n {
                let w = weight_lift(stats(df, n), n as f64, LogBase::E).unwrap();
                let idf = (1.0 + n as f64 / df as f64).ln();
                assert_eq!(w.to_bits(), idf.to_bits(), "df={df} n={n}");
            }
        }
    }

    #[test]
    fn constant_lift_function_matches_plain_lift_bit_for_bit() {
        let f = LiftFunction::Constant(100.0);
        for &(df, n) in &[(1u64, 2u64), (10, 100), (100, 100), (7, 1000)] {
            let a = weight_lift_fn(stats(df, n), &f, LogBase::E).unwrap();
            let b = weight_lift(stats(df, n), 100.0, LogBase::E).unwrap();
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn proportional_lift_weights_every_term_equally() {
        let f = LiftFunction::Proportional(1.0);
        for df in 1..=100u64 {
            let w = weight_lift_fn(stats(df, 100), &f, LogBase::E).unwrap();
            assert_eq!(w, std::f64::consts::LN_2, "df={df}");
        }
    }

    #[test]
    fn power_lift_function_matches_frozen_value() {
        let f = LiftFunction::Power { coefficient: 1.0, exponent: 0.5 };
        // f(4) = 2, weight = log(1 + 2/4) = log 1.5
        let w = weight_lift_fn(stats(4, 100), &f, LogBase::E).unwrap();
        assert!((w - 0.4054651081081644).abs() < TOL);
    }

    #[test]
    fn lift_function_weight_rejects_nonpositive_lifts() {
        let f = LiftFunction::Constant(-1.0);
        assert_eq!(
            weight_lift_fn(stats(10, 100), &f, LogBase::E),
            Err(WeightError::NonpositiveLift { value: -1.0 })
        );
    }

    #[test]
    fn pi_prime_matches_frozen_values() {
        assert_eq!(pi_prime(&params(0.5)), 0.0);
        let v = pi_prime(&params(0.75));
        assert!((v - 1.0986122886681098).abs() < TOL); // log 3
        let v = pi_prime(&params(0.25));
        assert!((v + 1.0986122886681098).abs() < TOL);
    }

    #[test]
    fn log_bases_rescale_consistently() {
        assert!((LogBase::Two.log(8.0) - 3.0).abs() < 1e-15);
        assert!((LogBase::Ten.log(1000.0) - 3.0).abs() < 1e-15);
        let s = stats(10, 100);
        let e = weight_lift(s, 100.0, LogBase::E).unwrap();
        let two = weight_lift(s, 100.0, LogBase::Two).unwrap();
        let ten = weight_lift(s, 100.0, LogBase::Ten).unwrap();
        assert!((two - e / std::f64::consts::LN_2).abs() < TOL);
        assert!((ten - e / std::f64::consts::LN_10).abs() < TOL);
    }

    #[test]
    fn complements_stay_exact_near_one() {
        // (N-1) of N documents: the complement must be 1/N to full
        // precision, which `1.0 - value` cannot deliver at this scale.
        let n = 1_000_000u64;
        let s = stats(n - 1, n);
        let q = estimate_q_ch1(s);
        assert_eq!(q.complement(), 1.0 / n as f64);
        let p = estimate_p_lift(s, 1.0);
        assert_eq!(p.complement(), 1.0 / (n as f64 + 1.0));
    }
}
