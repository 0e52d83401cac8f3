//! Weighting scheme selection: lift functions, the scheme enum, and the
//! textual grammar used on the command line (`lift:L=100`, `ch:pi=0.5`,
//! `liftfn:prop,c=1`, `usualidf`).

use std::fmt;

use crate::weighting::{
    self, estimate_p_ch2, estimate_p_lift, estimate_p_rw, estimate_q_ch1, EstimatorParams,
    LogBase, Probability, TermStats, WeightError,
};

/// A lift that may depend on document frequency, generalizing the constant
/// lift. The choice changes the weighting scheme wholesale: a lift
/// proportional to `n` collapses every weight to the same constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LiftFunction {
    /// `f(n) = L`; reduces to the constant-lift scheme.
    Constant(f64),
    /// `f(n) = c n`; the weight is `log(1 + c)` for every term.
    Proportional(f64),
    /// `f(n) = c n^beta`.
    Power { coefficient: f64, exponent: f64 },
    /// `f(n) = alpha N`, a constant lift expressed as a corpus fraction;
    /// `alpha = 1` reproduces the usual IDF.
    ScaledCorpus(f64),
}

impl LiftFunction {
    /// The lift at document frequency `df` in a corpus of `corpus_size`.
    pub fn value(&self, df: u64, corpus_size: u64) -> f64 {
        match *self {
            LiftFunction::Constant(l) => l,
            LiftFunction::Proportional(c) => c * df as f64,
            LiftFunction::Power { coefficient, exponent } => {
                coefficient * (df as f64).powf(exponent)
            }
            LiftFunction::ScaledCorpus(alpha) => alpha * corpus_size as f64,
        }
    }

    /// Checks that the parameters make the lift strictly positive for every
    /// `df >= 1`. Weight evaluation re-checks the produced value.
    pub fn validate(&self) -> Result<(), WeightError> {
        let param = match *self {
            LiftFunction::Constant(l) => l,
            LiftFunction::Proportional(c) => c,
            LiftFunction::Power { coefficient, .. } => coefficient,
            LiftFunction::ScaledCorpus(alpha) => alpha,
        };
        if !(param > 0.0 && param.is_finite()) {
            return Err(WeightError::InvalidLift { value: param });
        }
        if let LiftFunction::Power { exponent, .. } = *self {
            if !exponent.is_finite() {
                return Err(WeightError::InvalidLift { value: exponent });
            }
        }
        Ok(())
    }
}

/// A weighting scheme with its parameters. Weights come from the closed
/// forms in [`crate::weighting`]; [`WeightingScheme::estimate_p`] exposes
/// the relevance-probability estimate behind each one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightingScheme {
    /// Constant-`pi` estimate; weight `pi' + log((N-n)/n)`.
    CroftHarper(EstimatorParams),
    /// Hyperbolic estimate; weight `pi' + log(N/n)`.
    RobertsonWalker(EstimatorParams),
    /// Constant lift `L`; weight `log(1 + L/n)`.
    Lift(EstimatorParams),
    /// Frequency-dependent lift; weight `log(1 + f(n)/n)`.
    LiftFn(LiftFunction, EstimatorParams),
    /// The lift scheme at `L = N`: the usual IDF `log(1 + N/n)`.
    UsualIdf(LogBase),
}

impl Default for WeightingScheme {
    fn default() -> Self {
        WeightingScheme::UsualIdf(LogBase::E)
    }
}

impl WeightingScheme {
    pub fn log_base(&self) -> LogBase {
        match self {
            WeightingScheme::CroftHarper(p)
            | WeightingScheme::RobertsonWalker(p)
            | WeightingScheme::Lift(p)
            | WeightingScheme::LiftFn(_, p) => p.log_base(),
            WeightingScheme::UsualIdf(base) => *base,
        }
    }

    pub fn with_log_base(self, base: LogBase) -> Self {
        match self {
            WeightingScheme::CroftHarper(p) => WeightingScheme::CroftHarper(p.with_log_base(base)),
            WeightingScheme::RobertsonWalker(p) => {
                WeightingScheme::RobertsonWalker(p.with_log_base(base))
            }
            WeightingScheme::Lift(p) => WeightingScheme::Lift(p.with_log_base(base)),
            WeightingScheme::LiftFn(f, p) => WeightingScheme::LiftFn(f, p.with_log_base(base)),
            WeightingScheme::UsualIdf(_) => WeightingScheme::UsualIdf(base),
        }
    }

    /// The term weight under this scheme.
    pub fn weight(&self, stats: TermStats) -> Result<f64, WeightError> {
        match self {
            WeightingScheme::CroftHarper(p) => weighting::weight_ch(stats, p),
            WeightingScheme::RobertsonWalker(p) => weighting::weight_rw(stats, p),
            WeightingScheme::Lift(p) => weighting::weight_lift(stats, p.lift(), p.log_base()),
            WeightingScheme::LiftFn(f, p) => weighting::weight_lift_fn(stats, f, p.log_base()),
            WeightingScheme::UsualIdf(base) => {
                weighting::weight_lift(stats, stats.corpus_size() as f64, *base)
            }
        }
    }

    /// The relevance-probability estimate this scheme's weight comes from.
    pub fn estimate_p(&self, stats: TermStats) -> Probability {
        match self {
            WeightingScheme::CroftHarper(p) => estimate_p_ch2(p),
            WeightingScheme::RobertsonWalker(p) => estimate_p_rw(stats, p),
            WeightingScheme::Lift(p) => estimate_p_lift(stats, p.lift()),
            WeightingScheme::LiftFn(f, _) => {
                let lift = f.value(stats.df(), stats.corpus_size());
                if lift > 0.0 {
                    estimate_p_lift(stats, lift)
                } else {
                    // zero lift (proportional/power at df = 0) degenerates
                    // to the plain frequency rate
                    estimate_q_ch1(stats)
                }
            }
            WeightingScheme::UsualIdf(_) => estimate_p_lift(stats, stats.corpus_size() as f64),
        }
    }
}

/// Canonical label, accepted back by [`WeightingScheme::parse`]. Used as
/// the default run tag and as CSV column headers.
impl fmt::Display for WeightingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightingScheme::CroftHarper(p) => write!(f, "ch(pi={})", p.pi().value()),
            WeightingScheme::RobertsonWalker(p) => write!(f, "rw(pi={})", p.pi().value()),
            WeightingScheme::Lift(p) => write!(f, "lift(L={})", p.lift()),
            WeightingScheme::LiftFn(func, _) => match *func {
                LiftFunction::Constant(l) => write!(f, "liftfn(const,L={l})"),
                LiftFunction::Proportional(c) => write!(f, "liftfn(prop,c={c})"),
                LiftFunction::Power { coefficient, exponent } => {
                    write!(f, "liftfn(power,c={coefficient},beta={exponent})")
                }
                LiftFunction::ScaledCorpus(alpha) => write!(f, "liftfn(scaled,alpha={alpha})"),
            },
            WeightingScheme::UsualIdf(_) => f.write_str("usualidf"),
        }
    }
}

/// Errors from parsing a scheme expression.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SchemeParseError {
    #[error("unknown scheme family {family:?} (expected ch, rw, lift, liftfn, or usualidf)")]
    UnknownFamily { family: String },
    #[error("unknown lift function kind {kind:?} (expected const, prop, power, or scaled)")]
    UnknownLiftKind { kind: String },
    #[error("scheme {family:?} does not accept parameter {name:?}")]
    UnknownParameter { family: String, name: String },
    #[error("scheme {family:?} requires parameter {name:?}")]
    MissingParameter { family: String, name: String },
    #[error("parameter {name:?} has invalid number {value:?}")]
    InvalidNumber { name: String, value: String },
    #[error("parameter {name:?} value {value} is out of range: {reason}")]
    OutOfRange { name: String, value: f64, reason: String },
    #[error("malformed scheme expression {text:?}")]
    Malformed { text: String },
}

impl WeightingScheme {
    /// Parses `family[:param=value,...]`; the label form
    /// `family(param=value,...)` is accepted too, so labels round-trip.
    pub fn parse(text: &str) -> Result<Self, SchemeParseError> {
        let text = text.trim();
        let (family, args) = split_expression(text)?;
        let mut parser = ArgParser::new(family, args);
        let scheme = match family {
            "usualidf" => WeightingScheme::UsualIdf(LogBase::E),
            "ch" | "rw" => {
                let pi = parser.take_f64("pi")?.unwrap_or(0.5);
                let params = EstimatorParams::new(pi, 1.0, LogBase::E).map_err(|_| {
                    out_of_range("pi", pi, "pi must lie strictly between 0 and 1")
                })?;
                if family == "ch" {
                    WeightingScheme::CroftHarper(params)
                } else {
                    WeightingScheme::RobertsonWalker(params)
                }
            }
            "lift" => {
                let lift = parser.require_f64("L")?;
                let params = EstimatorParams::new(0.5, lift, LogBase::E)
                    .map_err(|_| out_of_range("L", lift, "lift must be positive and finite"))?;
                WeightingScheme::Lift(params)
            }
            "liftfn" => {
                let kind = parser.take_kind()?;
                let func = match kind.as_str() {
                    "const" => LiftFunction::Constant(parser.require_f64("L")?),
                    "prop" => LiftFunction::Proportional(parser.require_f64("c")?),
                    "power" => LiftFunction::Power {
                        coefficient: parser.require_f64("c")?,
                        exponent: parser.require_f64("beta")?,
                    },
                    "scaled" => LiftFunction::ScaledCorpus(parser.require_f64("alpha")?),
                    _ => return Err(SchemeParseError::UnknownLiftKind { kind }),
                };
                func.validate().map_err(|e| match e {
                    WeightError::InvalidLift { value } => {
                        out_of_range("lift function parameter", value, "must be positive and finite")
                    }
                    _ => SchemeParseError::Malformed { text: text.to_string() },
                })?;
                WeightingScheme::LiftFn(func, EstimatorParams::default())
            }
            other => {
                return Err(SchemeParseError::UnknownFamily { family: other.to_string() });
            }
        };
        parser.finish()?;
        Ok(scheme)
    }
}

fn out_of_range(name: &str, value: f64, reason: &str) -> SchemeParseError {
    SchemeParseError::OutOfRange {
        name: name.to_string(),
        value,
        reason: reason.to_string(),
    }
}

/// Splits `family:args`, `family(args)`, or a bare family name.
fn split_expression(text: &str) -> Result<(&str, &str), SchemeParseError> {
    if text.is_empty() {
        return Err(SchemeParseError::Malformed { text: text.to_string() });
    }
    match text.find([':', '(']) {
        None => Ok((text, "")),
        Some(idx) if text.as_bytes()[idx] == b':' => Ok((&text[..idx], &text[idx + 1..])),
        Some(idx) => match text.strip_suffix(')') {
            Some(inner) => Ok((&text[..idx], &inner[idx + 1..])),
            None => Err(SchemeParseError::Malformed { text: text.to_string() }),
        },
    }
}

/// Comma-separated `key=value` arguments, with an optional leading bare
/// token for the lift function kind.
struct ArgParser<'a> {
    family: &'a str,
    pieces: Vec<&'a str>,
}

impl<'a> ArgParser<'a> {
    fn new(family: &'a str, args: &'a str) -> Self {
        let pieces = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',').collect()
        };
        Self { family, pieces }
    }

    /// The leading bare token (the lift function kind).
    fn take_kind(&mut self) -> Result<String, SchemeParseError> {
        if self.pieces.is_empty() || self.pieces[0].contains('=') {
            return Err(SchemeParseError::MissingParameter {
                family: self.family.to_string(),
                name: "kind".to_string(),
            });
        }
        Ok(self.pieces.remove(0).trim().to_string())
    }

    fn take_f64(&mut self, name: &str) -> Result<Option<f64>, SchemeParseError> {
        for (i, piece) in self.pieces.iter().enumerate() {
            let Some((key, value)) = piece.split_once('=') else {
                return Err(SchemeParseError::Malformed { text: piece.to_string() });
            };
            if key.trim() == name {
                let value = value.trim();
                let parsed = value.parse::<f64>().map_err(|_| SchemeParseError::InvalidNumber {
                    name: name.to_string(),
                    value: value.to_string(),
                })?;
                self.pieces.remove(i);
                return Ok(Some(parsed));
            }
        }
        Ok(None)
    }

    fn require_f64(&mut self, name: &str) -> Result<f64, SchemeParseError> {
        self.take_f64(name)?.ok_or_else(|| SchemeParseError::MissingParameter {
            family: self.family.to_string(),
            name: name.to_string(),
        })
    }

    /// Errors if any argument was left unconsumed.
    fn finish(self) -> Result<(), SchemeParseError> {
        match self.pieces.first() {
            None => Ok(()),
            Some(piece) => {
                let name = piece.split('=').next().unwrap_or(piece).trim();
                Err(SchemeParseError::UnknownParameter {
                    family: self.family.to_string(),
                    name: name.to_string(),
                })
            }
        }
    }
}
