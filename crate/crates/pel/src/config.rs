use std::num::NonZeroUsize;

use clap::{Args, ValueEnum};
use pel_core::Limits;

pub const ENV_ENUM_CAP: &str = "PEL_ENUM_CAP";
pub const ENV_PAIR_CAP: &str = "PEL_PAIR_CAP";
pub const ENV_SEED: &str = "PEL_SEED";

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Flags shared by every command.
#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest group or coset listed element by element [env: PEL_ENUM_CAP].
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub enum_cap: Option<u64>,
    /// Largest group for pair statistics [env: PEL_PAIR_CAP].
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub pair_cap: Option<u64>,
    /// Largest quotient index realized as a coset action.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub quotient_cap: Option<u64>,
    /// Root seed for sampling [env: PEL_SEED].
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for the verification suite.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub limits: Limits,
    pub seed: u64,
    pub format: Format,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            limits: Limits::default(),
            seed: DEFAULT_SEED,
            format: Format::Json,
            jobs: std::thread::available_parallelism().map_or(1, NonZeroUsize::get),
        }
    }
}

fn env_u64(env: &dyn Fn(&str) -> Option<String>, key: &str, positive: bool) -> Result<Option<u64>, String> {
    let Some(raw) = env(key) else {
        return Ok(None);
    };
    match raw.trim().parse::<u64>() {
        Ok(v) if !positive || v > 0 => Ok(Some(v)),
        _ => Err(format!("{key} must be a {}integer, got '{raw}'", if positive { "positive " } else { "" })),
    }
}

impl RunConfig {
    /// Flags win over environment variables, which win over defaults.
    pub fn resolve(args: &GlobalArgs, env: &dyn Fn(&str) -> Option<String>) -> Result<Self, String> {
        let mut c = RunConfig::default();
        if let Some(v) = args.enum_cap.or(env_u64(env, ENV_ENUM_CAP, true)?) {
            c.limits.enumeration = v;
        }
        if let Some(v) = args.pair_cap.or(env_u64(env, ENV_PAIR_CAP, true)?) {
            c.limits.pairs = v;
        }
        if let Some(v) = args.quotient_cap {
            c.limits.quotient_index = v;
        }
        if let Some(v) = args.seed.or(env_u64(env, ENV_SEED, false)?) {
            c.seed = v;
        }
        if let Some(v) = args.format {
            c.format = v;
        }
        if let Some(v) = args.jobs {
            c.jobs = v as usize;
        }
        Ok(c)
    }
}
