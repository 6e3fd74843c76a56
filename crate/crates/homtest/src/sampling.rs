//! Seeded data generation and sufficient statistics.
//!
//! Samples are drawn under the null (standard normal), under a fixed
//! two-component mixture, or under the alternative's prior on the mixture
//! parameters. All randomness flows from a [`StreamKey`]: a `(seed,
//! stream)` pair that selects an independent ChaCha12 stream, so Monte
//! Carlo replication `r` can use `stream = r` and results never depend on
//! scheduling. Every variate is produced by the inverse-CDF transform from
//! exactly one 64-bit draw, keeping stream accounting deterministic.

use std::fmt::Write as _;
use std::path::Path;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::asymptotics::CaseSpec;
use crate::numerics::{normal_quantile_raw, CompensatedSum, SQRT_2};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Random streams
// ---------------------------------------------------------------------------

/// Key identifying one reproducible random stream.
///
/// Distinct `(seed, stream)` pairs give statistically independent
/// generator states; a Monte Carlo run uses one `seed` and one `stream`
/// per replication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StreamKey {
    pub seed: u64,
    pub stream: u64,
}

impl StreamKey {
    pub fn new(seed: u64, stream: u64) -> Self {
        StreamKey { seed, stream }
    }

    pub(crate) fn rng(&self) -> StreamRng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        StreamRng { rng }
    }
}

/// Thin wrapper around the stream cipher generator producing the two
/// primitive variates the crate needs.
pub(crate) struct StreamRng {
    rng: ChaCha12Rng,
}

impl StreamRng {
    /// Uniform variate in the open interval (0, 1), consuming exactly one
    /// 64-bit word: the top 53 bits centered on the representable grid.
    pub(crate) fn uniform_open01(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Standard normal variate by the inverse-CDF transform (one 64-bit
    /// word per variate, monotone in the underlying uniform).
    pub(crate) fn standard_normal(&mut self) -> f64 {
        normal_quantile_raw(self.uniform_open01())
    }
}

// ---------------------------------------------------------------------------
// Samples and statistics
// ---------------------------------------------------------------------------

/// An ordered collection of finite real observations, never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    /// Validate and wrap a vector of observations.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain(
                "a sample must contain at least one observation".to_string(),
            ));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "sample values must be finite, found {bad}"
            )));
        }
        Ok(Sample { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty samples
    }
}

/// The normalized first/second-moment statistics that drive every
/// asymptotic form: `xi = n^{-1/2} sum x_i`,
/// `eta = (2n)^{-1/2} sum (x_i^2 - 1)`, `big_xi = sqrt(xi^2 + eta^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SufficientStats {
    pub n: usize,
    pub xi: f64,
    pub eta: f64,
    #[serde(rename = "Xi")]
    pub big_xi: f64,
}

/// Compute the sufficient statistics with compensated summation (the raw
/// sums cancel heavily under the null, and naive accumulation visibly
/// shifts thresholds at large `n`).
pub fn sufficient_stats(sample: &Sample) -> SufficientStats {
    let n = sample.len();
    let mut sum = CompensatedSum::default();
    let mut sum_sq = CompensatedSum::default();
    for &x in sample.values() {
        sum.add(x);
        sum_sq.add(x * x - 1.0);
    }
    let sqrt_n = (n as f64).sqrt();
    let xi = sum.value() / sqrt_n;
    let eta = sum_sq.value() / (2.0 * n as f64).sqrt();
    SufficientStats {
        n,
        xi,
        eta,
        big_xi: (xi * xi + eta * eta).sqrt(),
    }
}

// ---------------------------------------------------------------------------
// Mixture parameters
// ---------------------------------------------------------------------------

/// Parameters of the two-component alternative
/// `(1 - a) N(0, 1) + a N(b, 1/c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureParams {
    /// Mixing weight of the contaminating component, in `[0, 1]`.
    pub a: f64,
    /// Mean of the contaminating component.
    pub b: f64,
    /// Precision (inverse variance) of the contaminating component, `> 0`.
    pub c: f64,
}

impl MixtureParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let p = MixtureParams { a, b, c };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() || !(0.0..=1.0).contains(&self.a) {
            return Err(Error::Domain(format!(
                "mixing weight a must lie in [0, 1], got {}",
                self.a
            )));
        }
        if !self.b.is_finite() {
            return Err(Error::Domain(format!("mean b must be finite, got {}", self.b)));
        }
        if !self.c.is_finite() || self.c <= 0.0 {
            return Err(Error::Domain(format!(
                "precision c must be positive, got {}",
                self.c
            )));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

fn require_positive_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain(
            "sample size n must be at least 1".to_string(),
        ))
    } else {
        Ok(())
    }
}

/// Draw `n` i.i.d. standard normal observations.
pub fn sample_null(n: usize, key: StreamKey) -> Result<Sample> {
    require_positive_n(n)?;
    let mut rng = key.rng();
    let values = (0..n).map(|_| rng.standard_normal()).collect();
    Ok(Sample { values })
}

/// Draw `n` i.i.d. observations from the two-component mixture.
///
/// Each observation consumes exactly two 64-bit words — one component
/// coin, one normal variate — even in the degenerate cases `a = 0` and
/// `a = 1`, so draw counts never depend on parameter values.
pub fn sample_mixture(n: usize, params: MixtureParams, key: StreamKey) -> Result<Sample> {
    require_positive_n(n)?;
    params.validate()?;
    let mut rng = key.rng();
    let values = (0..n).map(|_| mixture_draw(&mut rng, &params)).collect();
    Ok(Sample { values })
}

fn mixture_draw(rng: &mut StreamRng, params: &MixtureParams) -> f64 {
    let coin = rng.uniform_open01();
    let z = rng.standard_normal();
    if coin < params.a {
        params.b + z / params.c.sqrt()
    } else {
        z
    }
}

/// Draw one set of mixture parameters from the alternative's prior for
/// sample size `n`.
///
/// * ratio (`Case1`): `a ~ U(0,1)`, `b = beta0 / sqrt(n)`, `c = 1`;
/// * ratio-mean (`Case2`): `a ~ U(0,1)`, `b ~ U(0, B0 / sqrt(n))`, `c = 1`;
/// * full (`Case3`): `a ~ U(0,1)`, `(b, c - 1)` area-uniform on the
///   ellipse `b^2 + (c-1)^2/2 <= R0^2 / n`, drawn by the exact polar map
///   `r = (R0/sqrt(n)) sqrt(u)`, `theta = 2 pi v`, `b = r cos(theta)`,
///   `c = 1 + sqrt(2) r sin(theta)` (no rejections).
///
/// The draw order is fixed (`a` first, then the location draws), so the
/// stream position after this call is a function of the case alone.
pub fn sample_alternative_prior(case: &CaseSpec, n: usize, key: StreamKey) -> Result<MixtureParams> {
    require_positive_n(n)?;
    case.validate()?;
    let mut rng = key.rng();
    let a = rng.uniform_open01();
    let sqrt_n = (n as f64).sqrt();
    let params = match *case {
        CaseSpec::Case1 { beta0 } => MixtureParams {
            a,
            b: beta0 / sqrt_n,
            c: 1.0,
        },
        CaseSpec::Case2 { b0 } => {
            let u = rng.uniform_open01();
            MixtureParams {
                a,
                b: u * b0 / sqrt_n,
                c: 1.0,
            }
        }
        CaseSpec::Case3 { r0 } => {
            let radius = r0 / sqrt_n;
            if SQRT_2 * radius >= 1.0 {
                return Err(Error::Domain(format!(
                    "full-case prior needs sqrt(2) * R0 / sqrt(n) < 1 so that c > 0 \
                     (got R0 = {r0}, n = {n})"
                )));
            }
            let u = rng.uniform_open01();
            let v = rng.uniform_open01();
            let r = radius * u.sqrt();
            let theta = 2.0 * std::f64::consts::PI * v;
            MixtureParams {
                a,
                b: r * theta.cos(),
                c: 1.0 + SQRT_2 * r * theta.sin(),
            }
        }
    };
    Ok(params)
}

// ---------------------------------------------------------------------------
// Sample files
// ---------------------------------------------------------------------------

/// Read a sample from a newline-delimited decimal file.
///
/// Blank lines are ignored, an optional header line `x` may precede the
/// data, and every parsed value must be finite. Parse failures report the
/// 1-based line number.
pub fn read_sample(path: &Path) -> Result<Sample> {
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::new();
    let mut seen_content = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        if !seen_content && line == "x" {
            seen_content = true;
            continue; // header row
        }
        seen_content = true;
        let value: f64 = line.parse().map_err(|e| Error::Parse {
            line: idx + 1,
            message: format!("cannot parse {line:?} as a number: {e}"),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("non-finite value {line:?} is not a valid observation"),
            });
        }
        values.push(value);
    }
    if values.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: "file contains no observations".to_string(),
        });
    }
    Ok(Sample { values })
}

/// Write a sample in the same newline-delimited format (no header), with
/// shortest round-trip decimal formatting.
pub fn write_sample(path: &Path, sample: &Sample) -> Result<()> {
    let mut out = String::with_capacity(sample.len() * 20);
    for v in sample.values() {
        writeln!(out, "{v}").expect("string write cannot fail");
    }
    std::fs::write(path, out)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
