//! Conversions between score scales and polarity labels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ScaleError {
    #[error("degenerate scale: need min < max on both sides")]
    Degenerate,
    #[error("{what} {value} outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("unknown polarity label '{0}'")]
    UnknownLabel(String),
}

/// Affine map from `[min_in, max_in]` to `[min_out, max_out]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleSpec {
    min_in: f64,
    max_in: f64,
    min_out: f64,
    max_out: f64,
}

impl ScaleSpec {
    pub fn new(min_in: f64, max_in: f64, min_out: f64, max_out: f64) -> Result<Self, ScaleError> {
        if !(max_in > min_in && max_out > min_out) {
            return Err(ScaleError::Degenerate);
        }
        Ok(ScaleSpec {
            min_in,
            max_in,
            min_out,
            max_out,
        })
    }

    /// Sentiment scores [-5, 5] to the five-point scale [1, 5].
    pub fn five_point() -> Self {
        ScaleSpec::new(-5.0, 5.0, 1.0, 5.0).expect("valid scale")
    }

    pub fn input_range(&self) -> (f64, f64) {
        (self.min_in, self.max_in)
    }

    pub fn output_range(&self) -> (f64, f64) {
        (self.min_out, self.max_out)
    }
}

/// Clamps `value` to the input range, then maps it affinely onto the
/// output range.
pub fn normalize(value: f64, spec: &ScaleSpec) -> f64 {
    let clamped = value.clamp(spec.min_in, spec.max_in);
    let p = (clamped - spec.min_in) / (spec.max_in - spec.min_in) * (spec.max_out - spec.min_out)
        + spec.min_out;
    p.clamp(spec.min_out, spec.max_out)
}

fn check(what: &'static str, value: f64, min: f64, max: f64) -> Result<f64, ScaleError> {
    if (min..=max).contains(&value) {
        Ok(value)
    } else {
        Err(ScaleError::OutOfRange {
            what,
            value,
            min,
            max,
        })
    }
}

/// Buckets a [-5, 5] score into stars: [-5,-3) → 1, [-3,-1) → 2,
/// [-1,1) → 3, [1,3) → 4, [3,5] → 5.
pub fn socal_to_five(value: f64) -> Result<u8, ScaleError> {
    let value = check("score", value, -5.0, 5.0)?;
    Ok(if value < -3.0 {
        1
    } else if value < -1.0 {
        2
    } else if value < 1.0 {
        3
    } else if value < 3.0 {
        4
    } else {
        5
    })
}

/// Ternary polarity, ordered Negative < Neutral < Positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    Negative,
    Neutral,
    Positive,
}

impl Polarity {
    pub const ALL: [Polarity; 3] = [Polarity::Negative, Polarity::Neutral, Polarity::Positive];

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Negative => "Negative",
            Polarity::Neutral => "Neutral",
            Polarity::Positive => "Positive",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Polarity {
    type Err = ScaleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "negative" | "neg" => Ok(Polarity::Negative),
            "neutral" | "neu" => Ok(Polarity::Neutral),
            "positive" | "pos" => Ok(Polarity::Positive),
            _ => Err(ScaleError::UnknownLabel(s.to_owned())),
        }
    }
}

/// Negative on [0, 2), Neutral on [2, 3], Positive on (3, 5].
pub fn label_of_five_scale(p: f64) -> Result<Polarity, ScaleError> {
    let p = check("five-point value", p, 0.0, 5.0)?;
    Ok(if p < 2.0 {
        Polarity::Negative
    } else if p <= 3.0 {
        Polarity::Neutral
    } else {
        Polarity::Positive
    })
}

/// 1–2 stars Negative, 3 Neutral, 4–5 Positive.
pub fn label_of_stars(stars: u8) -> Result<Polarity, ScaleError> {
    match stars {
        1 | 2 => Ok(Polarity::Negative),
        3 => Ok(Polarity::Neutral),
        4 | 5 => Ok(Polarity::Positive),
        _ => Err(ScaleError::OutOfRange {
            what: "stars",
            value: f64::from(stars),
            min: 1.0,
            max: 5.0,
        }),
    }
}

/// Compound scores at or beyond ±0.05 are polar, anything strictly
/// between is Neutral.
pub fn label_of_vader_compound(compound: f64) -> Result<Polarity, ScaleError> {
    let c = check("compound score", compound, -1.0, 1.0)?;
    Ok(if c <= -0.05 {
        Polarity::Negative
    } else if c < 0.05 {
        Polarity::Neutral
    } else {
        Polarity::Positive
    })
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("majority of an empty list")]
pub struct EmptyList;

/// The label whose count beats every other label's count, Neutral when
/// there is no such label.
pub fn majority_label(labels: &[Polarity]) -> Result<Polarity, EmptyList> {
    if labels.is_empty() {
        return Err(EmptyList);
    }
    let count = |p| labels.iter().filter(|&&l| l == p).count();
    let counts = Polarity::ALL.map(|p| (p, count(p)));
    Ok(counts
        .iter()
        .find(|&&(p, c)| counts.iter().all(|&(q, d)| q == p || c > d))
        .map_or(Polarity::Neutral, |&(p, _)| p))
}
