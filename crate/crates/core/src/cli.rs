//! The `horn-cone` command line. [`run`] never exits the process; it returns the exit status:
//! 0 on success (including non-member verdicts), 2 on usage or input errors, 3 when a numeric
//! routine fails to converge.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::apqcone::{
    apq_inequalities, apq_membership, apq_system, audit_withdrawal, Method, SpectrumPair, Variant,
};
use crate::horncone::{horn_membership, lr_triples, RatTuple};
use crate::json::{self as js, to_canonical_string};
use crate::numerics::{realize_with_seed, soundness_scan, FloatPair, RealizeOutcome};
use crate::polyhedra::rational::{parse_rational, parse_rational_list, to_f64};
use crate::polyhedra::{cone_equal, prune_background, ConeSystem};
use crate::{par, Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "horn-cone",
    version,
    about = "Horn cone and A(p,q) computations"
)]
struct Cli {
    /// Cap on worker threads (results do not depend on it).
    #[arg(long, global = true, env = "HORN_CONE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List LR^n_r, one `I;J;K` line per triple.
    LrList {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exact membership of (x, y, z) in Horn(n).
    HornCheck {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Emit an inequality system for A(p,q).
    ApqSystem {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value = "full")]
        variant: String,
        /// Remove redundant forms, keeping the background ones.
        #[arg(long)]
        pruned: bool,
        /// Human-readable inequalities instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Exact membership of (λ, s) in A(p,q).
    ApqCheck {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "direct")]
        method: String,
        /// Also run the other method and report whether they agree.
        #[arg(long)]
        verify: bool,
    },
    /// Remove redundant forms from a JSON system.
    Prune {
        #[arg(long)]
        input: PathBuf,
        /// Write the pruned system here and print a summary instead.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide whether two JSON systems define the same cone.
    ConeEqual {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Evaluate a system on random Hermitian matrices.
    Sample {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// JSON system to test; defaults to the full system for (p, q).
        #[arg(long)]
        system: Option<PathBuf>,
    },
    /// Search for a Hermitian matrix with spectrum λ and block singular values s.
    Realize {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 10_000)]
        iters: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Check the disputed A(3,3) inequalities at the disputed point.
    Audit,
}

/// Parses `args` (program name first), runs the command and writes its output to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let text = e.render().to_string();
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("usage error");
            let _ = writeln!(err, "{}", line.trim());
            return 2;
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return 2;
        }
        par::set_thread_cap(t);
    }
    match execute(cli.command) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.to_string().replace('\n', " "));
            match e {
                Error::Numeric(_) => 3,
                _ => 2,
            }
        }
    }
}

fn positive(name: &str, v: usize) -> Result<usize> {
    if v == 0 {
        Err(Error::arg(format!("--{name} must be positive")))
    } else {
        Ok(v)
    }
}

fn shape(p: usize, q: usize) -> Result<()> {
    positive("q", q)?;
    if p < q {
        return Err(Error::arg(format!("need p >= q, got p={p}, q={q}")));
    }
    Ok(())
}

fn line(v: &Value) -> String {
    let mut s = to_canonical_string(v);
    s.push('\n');
    s
}

fn read_system(path: &Path) -> Result<ConeSystem> {
    let text = std::fs::read_to_string(path)?;
    js::system_from_json(&serde_json::from_str(&text)?)
}

/// Float tokens for the numeric commands; `num/den` fractions are accepted too.
fn parse_float_list(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok.contains('/') {
                parse_rational(tok).map(|r| to_f64(&r))
            } else {
                tok.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("malformed number {tok:?}")))
            }
        })
        .collect()
}

fn execute(cmd: Command) -> Result<String> {
    match cmd {
        Command::LrList { n, r, json } => {
            positive("n", n)?;
            positive("r", r)?;
            if r > n {
                return Err(Error::arg(format!("need r <= n, got r={r}, n={n}")));
            }
            let triples = lr_triples(n, r)?;
            if json {
                let list: Vec<Value> = triples.iter().map(|t| t.to_json()).collect();
                Ok(line(&Value::Array(list)))
            } else {
                Ok(triples.iter().map(|t| format!("{t}\n")).collect())
            }
        }
        Command::HornCheck { x, y, z } => {
            let x = RatTuple::new(parse_rational_list(&x)?)?;
            let y = RatTuple::new(parse_rational_list(&y)?)?;
            let z = RatTuple::new(parse_rational_list(&z)?)?;
            let verdict = horn_membership(&x, &y, &z)?;
            Ok(line(&js::verdict_to_json(&verdict)))
        }
        Command::ApqSystem {
            p,
            q,
            variant,
            pruned,
            text,
        } => {
            shape(p, q)?;
            let variant = Variant::parse(&variant)?;
            let mut system = apq_system(p, q, variant)?;
            if pruned {
                system = prune_background(&system)?.system;
            }
            if text {
                if !pruned {
                    return Ok(apq_inequalities(p, q, variant)?
                        .iter()
                        .map(|f| format!("{}\n", f.describe()))
                        .collect());
                }
                return Ok(system
                    .forms
                    .iter()
                    .map(|f| format!("{}\n", system.describe(f)))
                    .collect());
            }
            Ok(line(&js::system_to_json(&system)))
        }
        Command::ApqCheck {
            p,
            q,
            lambda,
            s,
            method,
            verify,
        } => {
            shape(p, q)?;
            let method = Method::parse(&method)?;
            let sp = SpectrumPair::new(
                p,
                q,
                RatTuple::new(parse_rational_list(&lambda)?)?,
                RatTuple::new(parse_rational_list(&s)?)?,
            )?;
            let verdict = apq_membership(&sp, method)?;
            let mut v = js::verdict_to_json(&verdict);
            v["method"] = json!(method.as_str());
            v["point"] = sp.to_json();
            if verify {
                let other = match method {
                    Method::Direct => Method::Reduction,
                    Method::Reduction => Method::Direct,
                };
                let second = apq_membership(&sp, other)?;
                v["verify"] = json!({
                    "method": other.as_str(),
                    "member": second.member,
                    "certificate": js::verdict_to_json(&second)["certificate"].clone(),
                    "agree": second.member == verdict.member,
                });
            }
            Ok(line(&v))
        }
        Command::Prune { input, output } => {
            let system = read_system(&input)?;
            let report = prune_background(&system)?;
            let pruned = line(&js::system_to_json(&report.system));
            match output {
                Some(path) => {
                    std::fs::write(path, pruned)?;
                    Ok(line(&js::prune_summary_to_json(
                        system.forms.len(),
                        &report,
                    )))
                }
                None => Ok(pruned),
            }
        }
        Command::ConeEqual { a, b } => {
            let cmp = cone_equal(&read_system(&a)?, &read_system(&b)?)?;
            Ok(line(&js::comparison_to_json(&cmp)))
        }
        Command::Sample {
            p,
            q,
            count,
            seed,
            system,
        } => {
            shape(p, q)?;
            let system = match system {
                Some(path) => read_system(&path)?,
                None => apq_system(p, q, Variant::Full)?,
            };
            let report = soundness_scan(p, q, count, seed, &system)?;
            Ok(line(&js::sample_report_to_json(&report)))
        }
        Command::Realize {
            p,
            q,
            lambda,
            s,
            iters,
            tol,
            seed,
        } => {
            shape(p, q)?;
            let target = FloatPair::new(p, q, parse_float_list(&lambda)?, parse_float_list(&s)?)?;
            let v = match realize_with_seed(&target, iters, tol, seed)? {
                RealizeOutcome::Witness {
                    matrix,
                    iterations,
                    residual,
                } => json!({
                    "outcome": "witness",
                    "iterations": iterations,
                    "residual": js::float(residual),
                    "matrix": matrix.to_json(),
                }),
                RealizeOutcome::Unknown {
                    iterations,
                    residual,
                } => json!({
                    "outcome": "unknown",
                    "iterations": iterations,
                    "residual": js::float(residual),
                }),
            };
            Ok(line(&v))
        }
        Command::Audit => Ok(line(&js::audit_to_json(&audit_withdrawal()?))),
    }
}
