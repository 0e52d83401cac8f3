//! Weight tables, estimator curves, and the self-verification suite that
//! recomputes every closed form against the generic log-odds weight over
//! exhaustive and randomized grids.

use std::borrow::Cow;
use std::io::{self, Write};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::index::{Document, InvertedIndex};
use crate::retrieval::{self, Query, RankedEntry, RankedList, ScoreError};
use crate::scheme::{LiftFunction, WeightingScheme};
use crate::weighting::{
    self, estimate_p_ch2, estimate_p_lift, estimate_p_rw, estimate_q_ch1, rsj_weight,
    EstimatorParams, LogBase, TermStats, WeightError,
};

/// Tolerance for the closed-form identity and constancy checks.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

/// Number of checks [`verify`] runs; the report always has this many rows.
pub const CHECK_COUNT: usize = 13;

/// Default seed for the randomized verification grids.
pub const DEFAULT_VERIFY_SEED: u64 = 0x1DF5EED;

/// Deviation between two floats: relative for large magnitudes, absolute
/// near zero. A purely relative measure is meaningless where weights cross
/// zero, and a purely absolute one is too lax for large weights.
pub fn deviation(a: f64, b: f64) -> f64 {
    let diff = (a - b).abs();
    if diff == 0.0 {
        0.0
    } else {
        diff / a.abs().max(b.abs()).max(1.0)
    }
}

// ---------------------------------------------------------------------------
// weight tables

/// One table row: a term, its document frequency, and one weight per
/// scheme. A cell is `None` where the scheme has no finite weight (unseen
/// terms everywhere; ubiquitous terms under the constant-`pi` scheme).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightRow {
    pub term: String,
    pub df: u64,
    pub cells: Vec<Option<f64>>,
}

/// Per-term weights under several schemes side by side, ordered by
/// descending document frequency, then term.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    pub corpus_size: u64,
    pub labels: Vec<String>,
    pub rows: Vec<WeightRow>,
}

/// Builds a weight table over `terms` (deduplicated; unseen terms get
/// all-empty rows) or over the whole vocabulary when `terms` is `None`.
pub fn weight_table(
    index: &InvertedIndex,
    schemes: &[WeightingScheme],
    terms: Option<&[String]>,
) -> WeightTable {
    let labels = schemes.iter().map(WeightingScheme::to_string).collect();
    let selected: Vec<String> = match terms {
        Some(list) => {
            let set: std::collections::BTreeSet<&str> =
                list.iter().map(String::as_str).collect();
            set.into_iter().map(str::to_string).collect()
        }
        None => index.terms().map(str::to_string).collect(),
    };
    let corpus_size = index.corpus_size();
    let mut rows: Vec<WeightRow> = selected
        .into_iter()
        .map(|term| {
            let df = index.df(&term);
            let cells = schemes
                .iter()
                .map(|scheme| {
                    if df == 0 {
                        None
                    } else {
                        let stats = TermStats::new(df, corpus_size)
                            .expect("df comes from the index");
                        scheme.weight(stats).ok()
                    }
                })
                .collect();
            WeightRow { term, df, cells }
        })
        .collect();
    rows.sort_by(|a, b| b.df.cmp(&a.df).then_with(|| a.term.cmp(&b.term)));
    WeightTable { corpus_size, labels, rows }
}

impl WeightTable {
    /// CSV with header `term,df,N,<label>...`; absent cells are empty,
    /// weights have six decimals, fields with commas are quoted.
    pub fn to_csv(&self, w: &mut impl Write) -> io::Result<()> {
        write!(w, "term,df,N")?;
        for label in &self.labels {
            write!(w, ",{}", csv_field(label))?;
        }
        writeln!(w)?;
        for row in &self.rows {
            write!(w, "{},{},{}", csv_field(&row.term), row.df, self.corpus_size)?;
            for cell in &row.cells {
                match cell {
                    Some(value) => write!(w, ",{value:.6}")?,
                    None => write!(w, ",")?,
                }
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

fn csv_field(s: &str) -> Cow<'_, str> {
    if s.contains([',', '"', '\n']) {
        Cow::Owned(format!("\"{}\"", s.replace('"', "\"\"")))
    } else {
        Cow::Borrowed(s)
    }
}

// ---------------------------------------------------------------------------
// estimator curves

/// The scheme's relevance-probability estimate at each document frequency
/// in `dfs`, for a corpus of `corpus_size` documents.
///
/// Panics if a document frequency exceeds `corpus_size`.
pub fn estimator_curve(
    corpus_size: u64,
    scheme: &WeightingScheme,
    dfs: impl IntoIterator<Item = u64>,
) -> Vec<(u64, f64)> {
    dfs.into_iter()
        .map(|df| {
            let stats = TermStats::new(df, corpus_size)
                .expect("df must lie in 0..=corpus_size");
            (df, scheme.estimate_p(stats).value())
        })
        .collect()
}

/// CSV with header `n,p_estimate`, probabilities with six decimals.
pub fn curve_to_csv(points: &[(u64, f64)], w: &mut impl Write) -> io::Result<()> {
    writeln!(w, "n,p_estimate")?;
    for (df, p) in points {
        writeln!(w, "{df},{p:.6}")?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verification

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub grid: String,
    pub passed: bool,
    pub worst_deviation: f64,
}

/// Results of the full verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn worst_deviation(&self) -> f64 {
        self.checks.iter().fold(0.0, |worst, c| {
            if c.worst_deviation.is_nan() {
                f64::NAN
            } else {
                worst.max(c.worst_deviation)
            }
        })
    }

    /// `VERIFY <pass|fail> <num checks> <worst deviation>`.
    pub fn summary_line(&self) -> String {
        format!(
            "VERIFY {} {} {:.3e}",
            if self.passed() { "pass" } else { "fail" },
            self.checks.len(),
            self.worst_deviation()
        )
    }

    /// One line per check, then the summary line.
    pub fn write_text(&self, w: &mut impl Write) -> io::Result<()> {
        for c in &self.checks {
            writeln!(
                w,
                "CHECK {} {:<36} dev={:<10.3e} grid: {}",
                if c.passed { "pass" } else { "fail" },
                c.name,
                c.worst_deviation,
                c.grid
            )?;
        }
        writeln!(w, "{}", self.summary_line())
    }
}

/// Grid sizes for [`verify`]. `identity_max_n` must be at least 2.
#[derive(Debug, Clone)]
pub struct VerifyGrid {
    /// Exhaustive sweeps cover every `(df, N)` with `N` up to this bound.
    pub exhaustive_max_n: u64,
    /// Number of random `(df, N, params)` tuples per identity check.
    pub identity_tuples: usize,
    /// Upper bound on `N` for the random identity tuples.
    pub identity_max_n: u64,
    /// Number of random corpora for the retrieval cross-check.
    pub retrieval_corpora: usize,
    /// Seed for all randomized grids; fixed so reports are reproducible.
    pub seed: u64,
}

impl Default for VerifyGrid {
    fn default() -> Self {
        Self {
            exhaustive_max_n: 200,
            identity_tuples: 1000,
            identity_max_n: 1_000_000,
            retrieval_corpora: 100,
            seed: DEFAULT_VERIFY_SEED,
        }
    }
}

impl VerifyGrid {
    /// A deterministic stream per check, so checks stay independent of one
    /// another and of their ordering.
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(salt))
    }
}

/// The closed-form weight functions under verification. Defaults to this
/// crate's implementations; substituting a deliberately broken formula is
/// how the test suite proves the checks can fail.
#[derive(Clone, Copy)]
pub struct FormulaSet {
    pub ch: fn(TermStats, &EstimatorParams) -> Result<f64, WeightError>,
    pub rw: fn(TermStats, &EstimatorParams) -> Result<f64, WeightError>,
    pub lift: fn(TermStats, f64, LogBase) -> Result<f64, WeightError>,
}

impl Default for FormulaSet {
    fn default() -> Self {
        Self {
            ch: weighting::weight_ch,
            rw: weighting::weight_rw,
            lift: weighting::weight_lift,
        }
    }
}

/// Runs every check against this crate's own formulas.
pub fn verify(grid: &VerifyGrid) -> VerificationReport {
    verify_formulas(grid, &FormulaSet::default())
}

/// Runs every check against the given formulas.
pub fn verify_formulas(grid: &VerifyGrid, formulas: &FormulaSet) -> VerificationReport {
    let checks = vec![
        check_identity_ch(grid, formulas),
        check_identity_rw(grid, formulas),
        check_identity_lift(grid, formulas),
        check_ch_anomaly(grid, formulas),
        check_rw_nonnegative(grid, formulas),
        check_lift_positive(grid, formulas),
        check_lift_dominance(grid),
        check_monotonicity(grid, formulas),
        check_bounds(grid),
        check_usual_idf(grid, formulas),
        check_proportional_constancy(grid),
        check_log_base_coherence(grid),
        check_retrieval_oracle(grid),
    ];
    // the check list must cover the whole property catalog
    assert_eq!(checks.len(), CHECK_COUNT);
    VerificationReport { checks }
}

const PI_GRID: [f64; 3] = [0.3, 0.5, 0.7];
const PI_NONNEGATIVE_GRID: [f64; 3] = [0.5, 0.6, 0.75];

fn lift_grid(n: u64) -> [f64; 4] {
    [1.0, n as f64 / 2.0, n as f64, 2.0 * n as f64]
}

fn stats(df: u64, n: u64) -> TermStats {
    TermStats::new(df, n).expect("grids stay within 0 <= df <= N, N >= 1")
}

fn params(pi: f64) -> EstimatorParams {
    EstimatorParams::new(pi, 1.0, LogBase::E).expect("grid pi values are valid")
}

fn value_or_nan(r: Result<f64, WeightError>) -> f64 {
    r.unwrap_or(f64::NAN)
}

/// Tracks the worst deviation and the violation count for one check.
/// A NaN (a formula that errored where it must not) is sticky and fails.
struct Accumulator {
    worst: f64,
    violations: u64,
}

impl Accumulator {
    fn new() -> Self {
        Self { worst: 0.0, violations: 0 }
    }

    fn dev(&mut self, d: f64) {
        if d.is_nan() || self.worst.is_nan() {
            self.worst = f64::NAN;
        } else {
            self.worst = self.worst.max(d);
        }
    }

    fn violation(&mut self, magnitude: f64) {
        self.violations += 1;
        self.dev(magnitude);
    }

    /// Pass iff no violations and, when a tolerance applies, the worst
    /// deviation stays within it.
    fn into_result(self, name: &'static str, grid: String, tol: Option<f64>) -> CheckResult {
        let within_tol = match tol {
            Some(t) => self.worst <= t, // false for NaN
            None => !self.worst.is_nan(),
        };
        CheckResult {
            name,
            grid,
            passed: self.violations == 0 && within_tol,
            worst_deviation: self.worst,
        }
    }
}

fn identity_grid_label(grid: &VerifyGrid) -> String {
    format!(
        "N=2..{} exhaustive + {} random tuples with N<={}",
        grid.exhaustive_max_n, grid.identity_tuples, grid.identity_max_n
    )
}

fn check_identity_ch(grid: &VerifyGrid, formulas: &FormulaSet) -> CheckResult {
    let mut acc = Accumulator::new();
    let mut eval = |df: u64, n: u64, pi: f64| {
        let s = stats(df, n);
        let p = params(pi);
        let closed = value_or_nan((formulas.ch)(s, &p));
        let generic =
            value_or_nan(rsj_weight(estimate_p_ch2(&p), estimate_q_ch1(s), LogBase::E));
        acc.dev(deviation(closed, generic));
    };
    for n in 2..=grid.exhaustive_max_n {
        for df in 1..n {
            for &pi in &PI_GRID {
                eval(df, n, pi);
            }
        }
    }
    let mut rng = grid.rng(1);
    for _ in 0..grid.identity_tuples {
        let n = rng.random_range(2..=grid.identity_max_n);
        let df = rng.random_range(1..n);
        eval(df, n, PI_GRID[rng.random_range(0..PI_GRID.len())]);
    }
    acc.into_result(
        "closed-form identity (ch)",
        identity_grid_label(grid),
        Some(IDENTITY_TOLERANCE),
    )
}

fn check_identity_rw(grid: &VerifyGrid, formulas: &FormulaSet) -> CheckResult {
    let mut acc = Accumulator::new();
    let eval = |acc: &mut Accumulator, df: u64, n: u64, pi: f64| {
        let s = stats(df, n);
        let p = params(pi);
        let closed = value_or_nan((formulas.rw)(s, &p));
        let generic =
            value_or_nan(rsj_weight(estimate_p_rw(s, &p), estimate_q_ch1(s), LogBase::E));
        acc.dev(deviation(closed, generic));
    };
    // At df = N the estimate reaches 1 and the log-odds route is 0/0; the
    // closed form must stay finite while the generic route reports it.
    let boundary = |acc: &mut Accumulator, n: u64, pi: f64| {
        let s = stats(n, n);
        let p = params(pi);
        let closed_finite = matches!((formulas.rw)(s, &p), Ok(w) if w.is_finite());
        let generic_degenerate =
            rsj_weight(estimate_p_rw(s, &p), estimate_q_ch1(s), LogBase::E).is_err();
        if !(closed_finite && generic_degenerate) {
            acc.violation(0.0);
        }
    };
    for n in 2..=grid.exhaustive_max_n {
        for df in 1..n {
            for &pi in &PI_GRID {
                eval(&mut acc, df, n, pi);
            }
        }
        for &pi in &PI_GRID {
            boundary(&mut acc, n, pi);
        }
    }
    let mut rng = grid.rng(2);
    for _ in 0..grid.identity_tuples {
        let n = rng.random_range(2..=grid.identity_max_n);
        let df = rng.random_range(1..n);
        eval(&mut acc, df, n, PI_GRID[rng.random_range(0..PI_GRID.len())]);
    }
    acc.into_result(
        "closed-form identity (rw)",
        identity_grid_label(grid),
        Some(IDENTITY_TOLERANCE),
    )
}

fn check_identity_lift(grid: &VerifyGrid, formulas: &FormulaSet) -> CheckResult {
    let mut acc = Accumulator::new();
    let eval = |acc: &mut Accumulator, df: u64, n: u64, lift: f64| {
        let s = stats(df, n);
        let closed = value_or_nan((formulas.lift)(s, lift, LogBase::E));
        let generic =
            value_or_nan(rsj_weight(estimate_p_lift(s, lift), estimate_q_ch1(s), LogBase::E));
        acc.dev(deviation(closed, generic));
    };
    // Same boundary situation as rw: p(N, N) = 1 exactly.
    let boundary = |acc: &mut Accumulator, n: u64, lift: f64| {
        let s = stats(n, n);
        let closed_finite = matches!((formulas.lift)(s, lift, LogBase::E), Ok(w) if w.is_finite());
        let generic_degenerate =
            rsj_weight(estimate_p_lift(s, lift), estimate_q_ch1(s), LogBase::E).is_err();
        if !(closed_finite && generic_degenerate) {
            acc.violation(0.0);
        }
    };
    for n in 2..=grid.exhaustive_max_n {
        for df in 1..n {
            for lift in lift_grid(n) {
                eval(&mut acc, df, n, lift);
            }
        }
        for lift in lift_grid(n) {
            boundary(&mut acc, n, lift);
        }
    }
    let mut rng = grid.rng(3);
    for _ in 0..grid.identity_tuples {
        let n = rng.random_range(2..=grid.identity_max_n);
        let df = rng.random_range(1..n);
        let lift = lift_grid(n)[rng.random_range(0..4)];
        eval(&mut acc, df, n, lift);
    }
    acc.into_result(
        "closed-form identity (lift)",
        identity_grid_label(grid),
        Some(IDENTITY_TOLERANCE),
    )
}

/// At `pi = 0.5` the constant-`pi` weight is negative exactly for terms in
/// more than half the corpus.
fn check_ch_anomaly(grid: &VerifyGrid, formulas: &FormulaSet) -> CheckResult {
    let mut acc = Accumulator::new();
    for n in 2..=grid.exhaustive_max_n {
        for df in 1..n {
            let w = value_or_nan((formulas.ch)(stats(df, n), &params(0.5)));
            let majority = 2 * df > n;
            if w.is_nan() || (w < 0.0) != majority {
                acc.violation(w.abs());
            }
        }
    }
    acc.into_result(
        "ch weight negative iff df > N/2 (pi = 0.5)",
        format!("N=2..{} exhaustive, df=1..N-1", grid.exhaustive_max_n),
        None,
    )
}

fn check_rw_nonnegative(grid: &VerifyGrid, formulas: &FormulaSet) -> CheckResult {
    let mut acc = Accumulator::new();
    for n in 1..=grid.exhaustive_max_n {
        for df in 1..=n {
            for &pi in &PI_NONNEGATIVE_GRID {
                let w = value_or_nan((formulas.rw)(stats(df, n), &params(pi)));
                if w.is_nan() || w < 0.0 {
                    acc.violation(-w);
                }
            }
        }
    }
    acc.into_result(
        "rw weight nonnegative (pi >= 0.5)",
        format!(
            "N=1..{} exhaustive, df=1..N, pi in {{0.5, 0.6, 0.75}}",
            grid.exhaustive_max_n
        ),
        None,
    )
}

fn check_lift_positive(grid: &VerifyGrid, formulas: &FormulaSet) -> CheckResult {
    let mut acc = Accumulator::new();
    for n in 1..=grid.exhaustive_max_n {
        for df in 1..=n {
            for lift in [1.0, n as f64, 2.0 * n as f64] {
                let w = value_or_nan((formulas.lift)(stats(df, n), lift, LogBase::E));
                if w.is_nan() || w <= 0.0 {
                    acc.violation(if w.is_nan() { f64::NAN } else { -w });
                }
            }
        }
    }
    acc.into_result(
        "lift weight strictly positive",
        format!(
            "N=1..{} exhaustive, df=1..N, L in {{1, N, 2N}}",
            grid.exhaustive_max_n
        ),
        None,
    )
}

/// The lift estimate exceeds the raw frequency rate `n/N` for every
/// `n < N` and equals 1 at `n = N`.
fn check_lift_dominance(grid: &VerifyGrid) -> CheckResult {
    let mut acc = Accumulator::new();
    for n in 1..=grid.exhaustive_max_n {
        for df in 0..=n {
            for lift in lift_grid(n) {
                let p = estimate_p_lift(stats(df, n), lift).value();
                let rate = df as f64 / n as f64;
                if df < n {
                    if p <= rate {
                        acc.violation((rate - p).abs());
                    }
                } else if p != 1.0 {
                    acc.violation((p - 1.0).abs());
                }
            }
        }
    }
    acc.into_result(
        "lift estimate dominates df rate",
        format!(
            "N=1..{} exhaustive, df=0..N, L in {{1, N/2, N, 2N}}",
            grid.exhaustive_max_n
        ),
        None,
    )
}

/// The estimators grow strictly with document frequency and the lift
/// weight strictly shrinks.
fn check_monotonicity(grid: &VerifyGrid, formulas: &FormulaSet) -> CheckResult {
    let mut acc = Accumulator::new();
    for n in 1..=grid.exhaustive_max_n {
        for &pi in &PI_GRID {
            let p = params(pi);
            let mut prev = estimate_p_rw(stats(0, n), &p).value();
            for df in 1..=n {
                let cur = estimate_p_rw(stats(df, n), &p).value();
                if cur <= prev {
                    acc.violation((prev - cur).abs());
                }
                prev = cur;
            }
        }
        for lift in lift_grid(n) {
            let mut prev = estimate_p_lift(stats(0, n), lift).value();
            for df in 1..=n {
                let cur = estimate_p_lift(stats(df, n), lift).value();
                if cur <= prev {
                    acc.violation((prev - cur).abs());
                }
                prev = cur;
            }
            let mut prev_w = value_or_nan((formulas.lift)(stats(1, n), lift, LogBase::E));
            for df in 2..=n {
                let w = value_or_nan((formulas.lift)(stats(df, n), lift, LogBase::E));
                if w.is_nan() || prev_w.is_nan() || w >= prev_w {
                    acc.violation((w - prev_w).abs());
                }
                prev_w = w;
            }
        }
    }
    acc.into_result(
        "estimates rise, lift weight falls with df",
        format!(
            "N=1..{} exhaustive, pi in {{0.3, 0.5, 0.7}}, L in {{1, N/2, N, 2N}}",
            grid.exhaustive_max_n
        ),
        None,
    )
}

/// The hyperbolic estimate stays in `[pi, 1]`, the lift estimate in
/// `[L/(N+L), 1]`, the frequency rate in `[0, 1]`.
fn check_bounds(grid: &VerifyGrid) -> CheckResult {
    let mut acc = Accumulator::new();
    let mut check_range = |value: f64, low: f64, high: f64| {
        if !(value >= low && value <= high) {
            acc.violation((low - value).max(value - high));
        }
    };
    for n in 1..=grid.exhaustive_max_n {
        for df in 0..=n {
            let s = stats(df, n);
            for &pi in &PI_GRID {
                check_range(estimate_p_rw(s, &params(pi)).value(), pi, 1.0);
            }
            for lift in lift_grid(n) {
                let low = estimate_p_lift(stats(0, n), lift).value();
                check_range(estimate_p_lift(s, lift).value(), low, 1.0);
            }
            check_range(estimate_q_ch1(s).value(), 0.0, 1.0);
        }
    }
    acc.into_result(
        "estimates stay inside their ranges",
        format!(
            "N=1..{} exhaustive, df=0..N, pi in {{0.3, 0.5, 0.7}}, L in {{1, N/2, N, 2N}}",
            grid.exhaustive_max_n
        ),
        None,
    )
}

/// The lift weight at `L = N` reproduces `log(1 + N/n)` bit for bit, both
/// through the raw formula and through the scheme dispatch.
fn check_usual_idf(grid: &VerifyGrid, formulas: &FormulaSet) -> CheckResult {
    let mut acc = Accumulator::new();
    for n in 1..=grid.exhaustive_max_n {
        let usual = WeightingScheme::UsualIdf(LogBase::E);
        let lift_scheme = WeightingScheme::Lift(
            EstimatorParams::new(0.5, n as f64, LogBase::E).expect("N >= 1 is a valid lift"),
        );
        for df in 1..=n {
            let s = stats(df, n);
            let w = value_or_nan((formulas.lift)(s, n as f64, LogBase::E));
            let reference = (1.0 + n as f64 / df as f64).ln();
            if w.to_bits() != reference.to_bits() {
                acc.violation((w - reference).abs());
            }
            let via_usual = value_or_nan(usual.weight(s));
            let via_lift = value_or_nan(lift_scheme.weight(s));
            if via_usual.to_bits() != via_lift.to_bits() {
                acc.violation((via_usual - via_lift).abs());
            }
        }
    }
    acc.into_result(
        "usual idf equals lift at L = N, bitwise",
        format!("N=1..{} exhaustive, df=1..N", grid.exhaustive_max_n),
        None,
    )
}

/// A lift proportional to `n` weights every term identically.
fn check_proportional_constancy(grid: &VerifyGrid) -> CheckResult {
    let mut acc = Accumulator::new();
    for c in [0.5, 1.0, 2.0, 7.0] {
        let f = LiftFunction::Proportional(c);
        let expected = (1.0 + c).ln();
        for n in 1..=grid.exhaustive_max_n {
            for df in 1..=n {
                let w = value_or_nan(weighting::weight_lift_fn(stats(df, n), &f, LogBase::E));
                acc.dev(deviation(w, expected));
            }
        }
    }
    acc.into_result(
        "proportional lift weights all terms equally",
        format!(
            "N=1..{} exhaustive, df=1..N, c in {{0.5, 1, 2, 7}}",
            grid.exhaustive_max_n
        ),
        Some(IDENTITY_TOLERANCE),
    )
}

/// Weights in base 2 and 10 are the natural-log weights divided by `ln 2`
/// and `ln 10`.
fn check_log_base_coherence(grid: &VerifyGrid) -> CheckResult {
    let mut acc = Accumulator::new();
    let sample_ns: Vec<u64> = [2u64, 3, 10, 50, 100, 200]
        .into_iter()
        .filter(|&n| n <= grid.exhaustive_max_n.max(2))
        .collect();
    for &n in &sample_ns {
        for df in 1..=n {
            let s = stats(df, n);
            let mut schemes = vec![
                WeightingScheme::RobertsonWalker(params(0.7)),
                WeightingScheme::Lift(
                    EstimatorParams::new(0.5, n as f64 / 2.0, LogBase::E).expect("valid lift"),
                ),
                WeightingScheme::LiftFn(
                    LiftFunction::Power { coefficient: 1.0, exponent: 0.5 },
                    EstimatorParams::default(),
                ),
                WeightingScheme::UsualIdf(LogBase::E),
            ];
            if df < n {
                schemes.push(WeightingScheme::CroftHarper(params(0.3)));
            }
            for scheme in schemes {
                let natural = value_or_nan(scheme.weight(s));
                let base2 = value_or_nan(scheme.with_log_base(LogBase::Two).weight(s));
                let base10 = value_or_nan(scheme.with_log_base(LogBase::Ten).weight(s));
                acc.dev(deviation(base2, natural / std::f64::consts::LN_2));
                acc.dev(deviation(base10, natural / std::f64::consts::LN_10));
            }
        }
    }
    acc.into_result(
        "base-2 and base-10 weights rescale base e",
        format!("N in {sample_ns:?}, df=1..N, all scheme families"),
        Some(IDENTITY_TOLERANCE),
    )
}

/// Scheme menu for the retrieval cross-check: every family, two bases.
fn oracle_schemes() -> Vec<WeightingScheme> {
    vec![
        WeightingScheme::CroftHarper(params(0.3)),
        WeightingScheme::CroftHarper(params(0.5)),
        WeightingScheme::RobertsonWalker(params(0.5)),
        WeightingScheme::RobertsonWalker(params(0.75)),
        WeightingScheme::Lift(EstimatorParams::new(0.5, 1.0, LogBase::E).unwrap()),
        WeightingScheme::Lift(EstimatorParams::new(0.5, 25.0, LogBase::E).unwrap()),
        WeightingScheme::LiftFn(LiftFunction::Constant(7.0), EstimatorParams::default()),
        WeightingScheme::LiftFn(LiftFunction::Proportional(1.0), EstimatorParams::default()),
        WeightingScheme::LiftFn(
            LiftFunction::Power { coefficient: 1.0, exponent: 0.5 },
            EstimatorParams::default(),
        ),
        WeightingScheme::LiftFn(LiftFunction::ScaledCorpus(0.5), EstimatorParams::default()),
        WeightingScheme::UsualIdf(LogBase::E),
        WeightingScheme::RobertsonWalker(params(0.5)).with_log_base(LogBase::Two),
    ]
}

/// Random small corpus: ids `d0..`, words drawn from a tiny vocabulary.
pub fn random_corpus(rng: &mut ChaCha8Rng) -> Vec<Document> {
    let n_docs = rng.random_range(1..=50);
    let vocab = rng.random_range(1..=20u32);
    (0..n_docs)
        .map(|i| {
            let len = rng.random_range(1..=8);
            let words: Vec<String> = (0..len)
                .map(|_| format!("t{}", rng.random_range(0..vocab)))
                .collect();
            Document::new(format!("d{i}"), words.join(" "))
        })
        .collect()
}

/// Scores every document, filters nonpositive scores, sorts by score then
/// id: the specification [`retrieval::rank`] must match.
pub fn brute_force_rank(
    index: &InvertedIndex,
    query: &Query,
    scheme: &WeightingScheme,
    k: usize,
) -> Result<RankedList, ScoreError> {
    let mut scored: Vec<(String, f64)> = Vec::new();
    for ordinal in 0..index.corpus_size() as u32 {
        let score = retrieval::score_document(index, ordinal, query, scheme)?;
        if score > 0.0 {
            scored.push((index.doc_id(ordinal).to_string(), score));
        }
    }
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    scored.truncate(k);
    let entries = scored
        .into_iter()
        .enumerate()
        .map(|(i, (doc_id, score))| RankedEntry { doc_id, score, rank: i as u32 + 1 })
        .collect();
    Ok(RankedList { query_id: query.query_id().to_string(), entries })
}

fn check_retrieval_oracle(grid: &VerifyGrid) -> CheckResult {
    let mut acc = Accumulator::new();
    let mut rng = grid.rng(4);
    let schemes = oracle_schemes();
    for _ in 0..grid.retrieval_corpora {
        let corpus = random_corpus(&mut rng);
        let index = InvertedIndex::build(&corpus).expect("generated ids are unique");
        for qi in 0..3 {
            let len = rng.random_range(1..=4);
            let text: Vec<String> = (0..len)
                .map(|_| format!("t{}", rng.random_range(0..24u32)))
                .collect();
            let query = Query::new(format!("q{qi}"), text.join(" "));
            let k = [1usize, 3, 10][rng.random_range(0..3)];
            for scheme in &schemes {
                let fast = retrieval::rank(&index, &query, scheme, k);
                let brute = brute_force_rank(&index, &query, scheme, k);
                match (fast, brute) {
                    (Ok(a), Ok(b)) => {
                        let mut rendered_a = Vec::new();
                        let mut rendered_b = Vec::new();
                        retrieval::write_run(std::slice::from_ref(&a), "oracle", &mut rendered_a)
                            .expect("writing to memory cannot fail");
                        retrieval::write_run(std::slice::from_ref(&b), "oracle", &mut rendered_b)
                            .expect("writing to memory cannot fail");
                        if a != b || rendered_a != rendered_b {
                            acc.violation(1.0);
                        }
                    }
                    (Err(a), Err(b)) => {
                        if a != b {
                            acc.violation(1.0);
                        }
                    }
                    _ => acc.violation(1.0),
                }
            }
        }
    }
    acc.into_result(
        "rank matches scoring every document",
        format!(
            "{} random corpora (<=50 docs, <=20 terms), 3 queries each, {} schemes",
            grid.retrieval_corpora,
            schemes.len()
        ),
        None,
    )
}
