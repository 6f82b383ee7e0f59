//! Command-line driver for `pel-core`: group specs, reports in JSON, CSV or
//! text, and the verification suite.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use pel_core::census::{
    baer_intersection, coset_p_census, gamma_simple, mc_estimate, omega_pair_set, p_census,
    p_census_by_cosets, pair_probability, sn_two_proportion, sylow_bound, SampleTarget,
};
use pel_core::classical::{m10, outer_coset};
use pel_core::constructions::TowerFamily;
use pel_core::verify::verify_towers;
use pel_core::{GroupHandle, LabeledCoset, OuterKind, Perm};
use serde_json::Value;

pub mod config;
pub mod corpus;
pub mod report;
pub mod spec;
pub mod suite;

use config::{GlobalArgs, RunConfig};
use corpus::Corpus;
use report::{big, emit, float, frac, outcome_record, Record};
pub use spec::{GroupSpec, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pel", version, about = "Exact p-element statistics for permutation groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// An outer coset of `PSL(2,q)`, written `KIND:Q` with an optional `^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSpec {
    pub kind: OuterKind,
    pub q: u64,
    pub power: u32,
}

impl FromStr for CosetSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| format!("expected KIND:Q, got '{s}'"))?;
        let kind = match kind {
            "diag" => OuterKind::Diag,
            "frob" => OuterKind::Frob,
            "diagfrob" => OuterKind::DiagFrob,
            other => return Err(format!("unknown coset kind '{other}' (diag, frob, diagfrob)")),
        };
        let (q, power) = match rest.split_once('^') {
            Some((q, i)) => (q, i.parse().map_err(|_| format!("bad power '{i}'"))?),
            None => (rest, 1),
        };
        let q = q.parse().map_err(|_| format!("bad field size '{q}'"))?;
        if power == 0 {
            return Err("power must be positive".into());
        }
        Ok(CosetSpec { kind, q, power })
    }
}

impl fmt::Display for CosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            OuterKind::Diag => "diag",
            OuterKind::Frob => "frob",
            OuterKind::DiagFrob => "diagfrob",
        };
        write!(f, "{kind}:{}", self.q)?;
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

impl CosetSpec {
    pub fn build(&self) -> pel_core::Result<LabeledCoset> {
        let c = outer_coset(self.kind, self.q)?;
        let rep = c.rep.pow(self.power as u64);
        LabeledCoset::new(c.ambient, c.socle, rep)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Gt,
    Yt,
    Xu,
    Meta,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the p-elements of a group.
    Census {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        prime: u64,
        /// Break the count down over the cosets of this normal subgroup.
        #[arg(long, conflicts_with = "normal_gens")]
        normal: Option<GroupSpec>,
        /// Normal subgroup generators in cycle notation.
        #[arg(long, num_args = 1..)]
        normal_gens: Vec<String>,
    },
    /// Count the p-elements of a coset `rep * S`.
    Coset {
        /// An outer coset of PSL(2,q), e.g. `frob:27` or `frob:27^2`.
        #[arg(long, conflicts_with_all = ["group", "normal", "rep"])]
        outer: Option<CosetSpec>,
        /// Ambient group; `m10` alone selects its outer coset.
        #[arg(long)]
        group: Option<GroupSpec>,
        #[arg(long, requires = "rep")]
        normal: Option<GroupSpec>,
        #[arg(long, requires = "normal")]
        rep: Option<String>,
        #[arg(long)]
        prime: u64,
    },
    /// Sylow subgroup, its normalizer and the resulting bound.
    Sylow {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        prime: u64,
    },
    /// Partners generating a p-group with an element, or all such pairs.
    Pairs {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        element: Option<String>,
    },
    /// Intersection of all partner sets, compared with O_p.
    Baer {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        prime: u64,
    },
    /// 2-element ratios of the cosets of a normal simple subgroup.
    Gamma {
        #[arg(long)]
        socle: GroupSpec,
        #[arg(long)]
        group: GroupSpec,
    },
    /// Exact and closed-form values along a tower of groups.
    Tower {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value_t = 1)]
        u: u32,
        #[arg(long, default_value_t = 3)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Run the verification suite or one claim of it.
    Verify {
        #[arg(long)]
        claim: Option<String>,
        /// Instance file replacing the shipped corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Report 0 ms for every outcome so runs are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Monte Carlo estimate of the p-element proportion.
    Estimate {
        #[arg(long, conflicts_with = "coset", required_unless_present = "coset")]
        group: Option<GroupSpec>,
        #[arg(long)]
        coset: Option<CosetSpec>,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
    /// Exact 2-element proportions in S_n, A_n and S_n \ A_n.
    Snprop {
        #[arg(long)]
        n: u32,
        /// Emit one row per degree from `n` to this value.
        #[arg(long)]
        to: Option<u32>,
    },
}

/// A failure that prevents any report from being produced.
#[derive(Debug)]
struct UsageError(String);

impl<E: fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn parse_perm(degree: usize, s: &str) -> Result<Perm, UsageError> {
    Perm::parse_cycles(degree, s).map_err(|e| UsageError(format!("'{s}': {e}")))
}

fn record(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Record {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn census(
    spec: &GroupSpec,
    prime: u64,
    normal: Option<&GroupSpec>,
    normal_gens: &[String],
    cfg: &RunConfig,
) -> Result<Record, UsageError> {
    let g = spec.build()?;
    let n = match normal {
        Some(n) => Some(GroupHandle::new(
            n.build()?
                .generators()
                .iter()
                .map(|x| x.pad(g.degree()))
                .collect::<Result<_, _>>()?,
        )?),
        None if !normal_gens.is_empty() => Some(GroupHandle::new(
            normal_gens
                .iter()
                .map(|s| parse_perm(g.degree(), s))
                .collect::<Result<_, _>>()?,
        )?),
        None => None,
    };
    let report = match &n {
        Some(n) => p_census_by_cosets(&g, n, prime, &cfg.limits)?,
        None => p_census(&g, prime, &cfg.limits)?,
    };
    let mut r = record([
        ("group", spec.to_string().into()),
        ("prime", prime.into()),
        ("order", big(&report.order)),
        ("count", big(&report.count)),
        ("probability", frac(&report.probability)),
    ]);
    if let Some(cosets) = &report.cosets {
        let rows: Vec<Value> = cosets
            .iter()
            .map(|(rep, c)| Value::Object(record([("rep", rep.to_string().into()), ("count", big(c))])))
            .collect();
        r.insert("cosets".into(), rows.into());
    }
    Ok(r)
}

fn coset_command(
    outer: Option<&CosetSpec>,
    group: Option<&GroupSpec>,
    normal: Option<&GroupSpec>,
    rep: Option<&str>,
    prime: u64,
    cfg: &RunConfig,
) -> Result<Record, UsageError> {
    let (label, c) = match (outer, group, normal, rep) {
        (Some(o), ..) => (o.to_string(), o.build()?),
        (None, Some(GroupSpec::M10), None, None) => {
            let m = m10()?;
            ("m10".to_string(), LabeledCoset::new(m.group, m.socle, m.outer)?)
        }
        (None, Some(g), Some(n), Some(rep)) => {
            let ambient = g.build()?;
            let socle = GroupHandle::new(
                n.build()?
                    .generators()
                    .iter()
                    .map(|x| x.pad(ambient.degree()))
                    .collect::<Result<_, _>>()?,
            )?;
            let rep = parse_perm(ambient.degree(), rep)?;
            (g.to_string(), LabeledCoset::new(ambient, socle, rep)?)
        }
        _ => {
            return Err(UsageError(
                "give --outer KIND:Q, --group m10, or --group with --normal and --rep".into(),
            ))
        }
    };
    let report = coset_p_census(&c, prime, &cfg.limits)?;
    Ok(record([
        ("coset", label.into()),
        ("rep", c.rep.to_string().into()),
        ("prime", prime.into()),
        ("order", big(&report.order)),
        ("count", big(&report.count)),
        ("probability", frac(&report.probability)),
    ]))
}

fn tower(family: Family, depth: u32, u: u32, q: u64, p: u64, n: u32, cfg: &RunConfig) -> Result<(Record, bool), UsageError> {
    let label = match family {
        Family::Gt => "gt".to_string(),
        Family::Yt => "yt".to_string(),
        Family::Xu => format!("xu:{u}"),
        Family::Meta => format!("meta:{q},{p},{n}"),
    };
    let family = match family {
        Family::Gt => TowerFamily::Gt,
        Family::Yt => TowerFamily::Yt,
        Family::Xu => TowerFamily::Xu { u },
        Family::Meta => {
            // the same hypotheses as the `meta:` spec
            GroupSpec::parse(&format!("meta:{q},1,{p},{n}"))?;
            TowerFamily::Metacyclic { q, p, n }
        }
    };
    let e = verify_towers(family, depth, &cfg.limits)?;
    let series = |xs: &[(u32, pel_core::Rational)]| -> Value {
        Value::Object(xs.iter().map(|(d, v)| (d.to_string(), frac(v))).collect())
    };
    let r = record([
        ("family", label.into()),
        ("depth", depth.into()),
        ("exact", series(&e.exact)),
        ("closed", series(&e.closed_forms)),
        ("limit", e.limit.as_ref().map_or(Value::Null, frac)),
        ("gap", e.gap.as_ref().map_or(Value::Null, frac)),
        ("monotone", e.monotone.into()),
        ("pass", e.pass.into()),
    ]);
    Ok((r, e.pass))
}

fn execute(cli: Cli, cfg: &RunConfig) -> Result<(Vec<Record>, bool), UsageError> {
    let lim = &cfg.limits;
    let one = |r: Record| Ok((vec![r], true));
    match cli.command {
        Command::Census {
            group,
            prime,
            normal,
            normal_gens,
        } => one(census(&group, prime, normal.as_ref(), &normal_gens, cfg)?),
        Command::Coset {
            outer,
            group,
            normal,
            rep,
            prime,
        } => one(coset_command(
            outer.as_ref(),
            group.as_ref(),
            normal.as_ref(),
            rep.as_deref(),
            prime,
            cfg,
        )?),
        Command::Sylow { group, prime } => {
            let b = sylow_bound(&group.build()?, prime, lim)?;
            one(record([
                ("group", group.to_string().into()),
                ("prime", prime.into()),
                ("probability", frac(&b.census.probability)),
                ("sylow_order", big(&b.sylow_order)),
                ("normalizer_order", big(&b.normalizer_order)),
                ("bound", frac(&b.bound)),
                ("holds", b.holds.into()),
            ]))
        }
        Command::Pairs {
            group,
            prime,
            element,
        } => {
            let g = group.build()?;
            let r = match element {
                Some(e) => omega_pair_set(&g, &parse_perm(g.degree(), &e)?, prime, lim)?,
                None => pair_probability(&g, prime, lim)?,
            };
            let mut rec = record([
                ("group", group.to_string().into()),
                ("prime", prime.into()),
                ("count", big(&r.count)),
                ("total", big(&r.total)),
                ("probability", frac(&r.probability)),
            ]);
            if let Some(x) = &r.element {
                rec.insert("element".into(), x.to_string().into());
            }
            one(rec)
        }
        Command::Baer { group, prime } => {
            let b = baer_intersection(&group.build()?, prime, lim)?;
            one(record([
                ("group", group.to_string().into()),
                ("prime", prime.into()),
                ("intersection_order", big(b.intersection.order())),
                ("o_p_order", big(b.o_p.order())),
                ("equals_o_p", b.equals_o_p.into()),
                ("measure", frac(&b.measure)),
            ]))
        }
        Command::Gamma { socle, group } => {
            let g = group.build()?;
            let s = GroupHandle::new(
                socle
                    .build()?
                    .generators()
                    .iter()
                    .map(|x| x.pad(g.degree()))
                    .collect::<Result<_, _>>()?,
            )?;
            let r = gamma_simple(&s, &g, lim)?;
            let cosets: Vec<Value> = r
                .outer
                .iter()
                .map(|(rep, v)| Value::Object(record([("rep", rep.to_string().into()), ("ratio", frac(v))])))
                .collect();
            one(record([
                ("socle", socle.to_string().into()),
                ("group", group.to_string().into()),
                ("identity_ratio", frac(&r.identity_ratio)),
                ("outer_max", r.outer_max.as_ref().map_or(Value::Null, frac)),
                ("cosets", cosets.into()),
            ]))
        }
        Command::Tower {
            family,
            depth,
            u,
            q,
            p,
            n,
        } => {
            let (r, pass) = tower(family, depth, u, q, p, n, cfg)?;
            Ok((vec![r], pass))
        }
        Command::Verify {
            claim,
            corpus,
            no_timing,
        } => {
            let corpus = match corpus {
                Some(path) => Corpus::parse(
                    &std::fs::read_to_string(&path)
                        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
                )?,
                None => Corpus::default_corpus(),
            };
            let jobs = suite::default_jobs(corpus, cfg.seed);
            if let Some(c) = &claim {
                let names = suite::claim_names(&jobs);
                if !names.contains(&c.as_str()) {
                    return Err(UsageError(format!(
                        "unknown claim '{c}'; known: {}",
                        names.join(", ")
                    )));
                }
            }
            let outcomes = suite::run_suite(&jobs, claim.as_deref(), lim, cfg.jobs, !no_timing);
            let pass = outcomes.iter().all(|o| !o.failed());
            Ok((outcomes.iter().map(outcome_record).collect(), pass))
        }
        Command::Estimate {
            group,
            coset,
            prime,
            samples,
        } => {
            let (label, e) = match (group, coset) {
                (Some(g), _) => {
                    let h = g.build()?;
                    (g.to_string(), mc_estimate(SampleTarget::Group(&h), prime, samples, cfg.seed)?)
                }
                (None, Some(c)) => {
                    let lc = c.build()?;
                    (c.to_string(), mc_estimate(SampleTarget::Coset(&lc), prime, samples, cfg.seed)?)
                }
                (None, None) => return Err(UsageError("give --group or --coset".into())),
            };
            one(record([
                ("target", label.into()),
                ("prime", prime.into()),
                ("samples", e.samples.into()),
                ("hits", e.hits.into()),
                ("seed", e.seed.into()),
                ("estimate", float(e.estimate)),
                ("low", float(e.low)),
                ("high", float(e.high)),
            ]))
        }
        Command::Snprop { n, to } => {
            let rows = (n..=to.unwrap_or(n))
                .map(|k| {
                    let s = sn_two_proportion(k)?;
                    Ok(record([
                        ("n", k.into()),
                        ("symmetric", frac(&s.symmetric)),
                        ("alternating", frac(&s.alternating)),
                        ("odd_coset", frac(&s.odd_coset)),
                        ("even_count", big(&s.even_count)),
                        ("odd_count", big(&s.odd_count)),
                    ]))
                })
                .collect::<Result<Vec<_>, UsageError>>()?;
            if rows.is_empty() {
                return Err(UsageError("--to must be at least --n".into()));
            }
            Ok((rows, true))
        }
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out`. Returns the process exit code: 0 on success, 1 when a
/// verification failed, 2 on a usage error. Nothing is written to `out`
/// unless the command completes.
pub fn run<I, T>(
    args: I,
    env: &dyn Fn(&str) -> Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                return EXIT_USAGE;
            }
            let _ = out.write_all(text.as_bytes());
            return EXIT_OK;
        }
    };
    let cfg = match RunConfig::resolve(&cli.global, env) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match execute(cli, &cfg) {
        Ok((records, pass)) => {
            let mut buf = Vec::new();
            if let Err(e) = emit(&records, cfg.format, &mut buf).and_then(|_| out.write_all(&buf)) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if pass {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
