//! Command-line front end. Every command prints JSON lines on stdout; errors
//! go to stderr as `{"error": ...}` with exit code 2, or 3 when a period has
//! no dominant eigenvalue.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebraic::{periodic_to_cubic, periodic_to_rational, PeriodicSpec};
use crate::bary::bary_expand;
use crate::delta::{delta, delta_inverse, delta_inverse_n, delta_n};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, PlanePoint, Rational};
use crate::farey;
use crate::render::{max_render_depth, render_partition_with_max, PartitionKind, DEFAULT_SCALE};
use crate::sequence::{ExpansionSequence, Termination};
use crate::singular::{lemma_inequality_check, log3_ratio, monte_carlo, ratio_series};

#[derive(Parser, Debug)]
#[command(name = "farey-bary", version, about = "Farey and barycentric triangle partitions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expansion sequence of a point.
    Expand {
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "farey")]
        kind: String,
        #[arg(long, default_value_t = 64)]
        max_depth: u64,
    },
    /// Image of a point under the Farey-Bary map.
    Delta(Target),
    /// Preimage of a point under the Farey-Bary map.
    Inverse(Target),
    /// Cubic point of an eventually periodic Farey sequence.
    PeriodicCubic(Periodic),
    /// Rational point of an eventually periodic barycentric sequence.
    PeriodicRational(Periodic),
    /// Area ratios along a sequence, one line per compressed prefix.
    Ratio {
        #[arg(long)]
        sequence: String,
    },
    /// Monte Carlo statistics of s_n/n and log3 area ratio.
    Mc {
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        depth: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// File of key=value lines (samples, depth, seed); flags win.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Checks the corner-triangle inequality for tuples `x,y,z,L`.
    Lemma {
        #[arg(required = true)]
        tuples: Vec<String>,
    },
    /// Writes an SVG of a partition.
    Render {
        #[arg(long, default_value = "farey")]
        kind: String,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SCALE)]
        scale: u32,
    },
}

#[derive(Args, Debug)]
pub struct Target {
    #[arg(long)]
    point: String,
    /// Taxicab tolerance as a rational, e.g. 1/1000000.
    #[arg(long, conflicts_with = "depth", required_unless_present = "depth")]
    tol: Option<String>,
    /// Fixed raw depth n, giving delta_n.
    #[arg(long)]
    depth: Option<u64>,
}

#[derive(Args, Debug)]
pub struct Periodic {
    #[arg(long)]
    period: String,
    #[arg(long, default_value = "")]
    preperiod: String,
}

fn termination_json(t: Termination) -> Value {
    match t {
        Termination::Running => json!({"kind": "running"}),
        Termination::VertexHit(d) => json!({"kind": "vertex_hit", "depth": d}),
        Termination::DepthLimit => json!({"kind": "depth_limit"}),
    }
}

fn run_target(t: &Target, forward: bool) -> Result<Vec<Value>> {
    let p = PlanePoint::parse(&t.point)?;
    if let Some(n) = t.depth {
        let v = if forward { delta_n(&p, n)? } else { delta_inverse_n(&p, n)? };
        return Ok(vec![json!({"value": v, "depth_used": n, "exact": true})]);
    }
    let tol = parse_rational(t.tol.as_deref().unwrap_or_default())?;
    let r = if forward { delta(&p, &tol)? } else { delta_inverse(&p, &tol)? };
    let mut v = serde_json::to_value(&r).map_err(|e| Error::Io(e.to_string()))?;
    let (x, y) = r.value.to_f64();
    v["approx"] = json!([x, y]);
    Ok(vec![v])
}

fn read_config(path: &PathBuf) -> Result<BTreeMap<String, u64>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", i + 1)))?;
        let key = k.trim().to_string();
        if !matches!(key.as_str(), "samples" | "depth" | "seed") {
            return Err(Error::Parse(format!("config line {}: unknown key {key:?}", i + 1)));
        }
        let val = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("config line {}: bad integer", i + 1)))?;
        out.insert(key, val);
    }
    Ok(out)
}

fn parse_tuple(s: &str) -> Result<(BigInt, BigInt, BigInt, Rational)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("expected x,y,z,L, got {s:?}")));
    }
    let int = |t: &str| -> Result<BigInt> {
        t.parse().map_err(|_| Error::Parse(format!("bad integer {t:?}")))
    };
    Ok((int(parts[0])?, int(parts[1])?, int(parts[2])?, parse_rational(parts[3])?))
}

fn execute(cmd: &Command) -> Result<Vec<Value>> {
    match cmd {
        Command::Expand { point, kind, max_depth } => {
            let p = PlanePoint::parse(point)?;
            let kind: PartitionKind = kind.parse()?;
            let s = match kind {
                PartitionKind::Farey => farey::expand(&p, *max_depth)?,
                PartitionKind::Bary => bary_expand(&p, *max_depth)?,
            };
            Ok(vec![json!({
                "point": p,
                "kind": kind.as_str(),
                "sequence": s,
                "raw_depth": s.raw_len(),
                "termination": termination_json(s.termination),
            })])
        }
        Command::Delta(t) => run_target(t, true),
        Command::Inverse(t) => run_target(t, false),
        Command::PeriodicCubic(p) => {
            let spec = PeriodicSpec::parse(&p.preperiod, &p.period)?;
            let c = periodic_to_cubic(&spec)?;
            let mut v = c.to_json();
            v["spec"] = json!(spec.to_string());
            let (x, y) = c.point.to_f64();
            v["approx"] = json!([x, y]);
            Ok(vec![v])
        }
        Command::PeriodicRational(p) => {
            let spec = PeriodicSpec::parse(&p.preperiod, &p.period)?;
            let q = periodic_to_rational(&spec)?;
            Ok(vec![json!({"point": q, "spec": spec.to_string()})])
        }
        Command::Ratio { sequence } => {
            let s = ExpansionSequence::parse(sequence)?;
            ratio_series(&s)
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).map_err(|e| Error::Io(e.to_string()))?;
                    v["log3_ratio"] = json!(log3_ratio(r));
                    Ok(v)
                })
                .collect()
        }
        Command::Mc { samples, depth, seed, config } => {
            let cfg = match config {
                Some(path) => read_config(path)?,
                None => BTreeMap::new(),
            };
            let pick = |flag: &Option<u64>, key: &str, default: u64| {
                flag.or_else(|| cfg.get(key).copied()).unwrap_or(default)
            };
            let summary = monte_carlo(
                pick(samples, "samples", 1000),
                pick(depth, "depth", 60),
                pick(seed, "seed", 42),
            )?;
            Ok(vec![serde_json::to_value(&summary).map_err(|e| Error::Io(e.to_string()))?])
        }
        Command::Lemma { tuples } => tuples
            .iter()
            .map(|t| {
                let (x, y, z, l) = parse_tuple(t)?;
                let holds = lemma_inequality_check(&x, &y, &z, &l);
                Ok(json!({"x": x.to_string(), "y": y.to_string(), "z": z.to_string(), "L": l.to_string(), "holds": holds}))
            })
            .collect(),
        Command::Render { kind, depth, out, scale } => {
            let kind: PartitionKind = kind.parse()?;
            let svg = render_partition_with_max(kind, *depth, *scale, max_render_depth())?;
            match out {
                Some(path) => {
                    std::fs::write(path, &svg)?;
                    Ok(vec![json!({
                        "kind": kind.as_str(),
                        "depth": depth,
                        "triangles": 3u64.pow(*depth),
                        "out": path.display().to_string(),
                    })])
                }
                None => Ok(vec![Value::String(svg)]),
            }
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(lines) => {
            for line in lines {
                let written = match line {
                    Value::String(raw) => out.write_all(raw.as_bytes()),
                    v => writeln!(out, "{v}"),
                };
                if written.is_err() {
                    return 2;
                }
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "{}", json!({"error": e.to_string()}));
            e.exit_code()
        }
    }
}
