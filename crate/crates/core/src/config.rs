//! Run configuration shared by every subcommand. Values resolve in three
//! layers: built-in defaults, then ZETAGAPS_* environment variables, then
//! command-line flags.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub const DEFAULT_PRECISION_BITS: usize = 160;
pub const DEFAULT_QUAD_POINTS: u32 = 15;
pub const DEFAULT_SIEVE_LIMIT: u64 = 10_000_000;
pub const DEFAULT_ZERO_RADIUS: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<OutputFormat, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown output format {other:?}, want json or csv")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub precision_bits: usize,
    pub quad_points: u32,
    pub sieve_limit: u64,
    pub zero_radius: f64,
    pub output_format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            precision_bits: DEFAULT_PRECISION_BITS,
            quad_points: DEFAULT_QUAD_POINTS,
            sieve_limit: DEFAULT_SIEVE_LIMIT,
            zero_radius: DEFAULT_ZERO_RADIUS,
            output_format: OutputFormat::Json,
            seed: 0,
        }
    }
}

/// One override layer; None leaves the lower layer's value in place.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub precision_bits: Option<usize>,
    pub quad_points: Option<u32>,
    pub sieve_limit: Option<u64>,
    pub zero_radius: Option<f64>,
    pub output_format: Option<OutputFormat>,
    pub seed: Option<u64>,
}

impl Overrides {
    /// Reads the ZETAGAPS_* environment variables through the supplied
    /// lookup, so tests can inject an environment.
    pub fn from_env(get: impl Fn(&str) -> Option<String>) -> Result<Overrides, String> {
        fn parse<T: FromStr>(name: &str, v: Option<String>) -> Result<Option<T>, String>
        where
            T::Err: fmt::Display,
        {
            match v {
                None => Ok(None),
                Some(s) => s
                    .parse()
                    .map(Some)
                    .map_err(|e| format!("{name}={s:?}: {e}")),
            }
        }
        Ok(Overrides {
            precision_bits: parse("ZETAGAPS_PRECISION_BITS", get("ZETAGAPS_PRECISION_BITS"))?,
            quad_points: parse("ZETAGAPS_QUAD_POINTS", get("ZETAGAPS_QUAD_POINTS"))?,
            sieve_limit: parse("ZETAGAPS_SIEVE_LIMIT", get("ZETAGAPS_SIEVE_LIMIT"))?,
            zero_radius: parse("ZETAGAPS_ZERO_RADIUS", get("ZETAGAPS_ZERO_RADIUS"))?,
            output_format: parse("ZETAGAPS_OUTPUT_FORMAT", get("ZETAGAPS_OUTPUT_FORMAT"))?,
            seed: parse("ZETAGAPS_SEED", get("ZETAGAPS_SEED"))?,
        })
    }

    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.precision_bits {
            cfg.precision_bits = v;
        }
        if let Some(v) = self.quad_points {
            cfg.quad_points = v;
        }
        if let Some(v) = self.sieve_limit {
            cfg.sieve_limit = v;
        }
        if let Some(v) = self.zero_radius {
            cfg.zero_radius = v;
        }
        if let Some(v) = self.output_format {
            cfg.output_format = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
    }
}

impl RunConfig {
    /// Defaults, overlaid by env, overlaid by flags; then validated.
    pub fn resolve(env: &Overrides, flags: &Overrides) -> Result<RunConfig, String> {
        let mut cfg = RunConfig::default();
        env.apply(&mut cfg);
        flags.apply(&mut cfg);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.precision_bits < 128 {
            return Err(format!(
                "precision_bits = {} below the floor of 128",
                self.precision_bits
            ));
        }
        if self.quad_points != 15 {
            return Err(format!(
                "quad_points = {}: only the embedded 15-point rule is built in",
                self.quad_points
            ));
        }
        if !(1e-12..=1e-3).contains(&self.zero_radius) {
            return Err(format!(
                "zero_radius = {:e} outside [1e-12, 1e-3]",
                self.zero_radius
            ));
        }
        if self.sieve_limit < 2 {
            return Err("sieve_limit below 2".into());
        }
        Ok(())
    }
}
