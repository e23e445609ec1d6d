//! Command-line surface for `nonein`.
//!
//! [`run`] takes the full argument vector and returns the exit code together
//! with everything that would be written to stdout and stderr, so the binary
//! is a thin wrapper and tests can drive the commands in-process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use nonein::geography::PlotFormat;
use nonein::obstruction::kahler_decomposition;
use nonein::{
    blow_up, block_invariants, c1plus_sq_lower_bound, canonical_spinc_of_kahler,
    connected_sum_invariants, evaluate_all, format, parse, s1s3_sum, solve, BigInt, BigRational,
    ChenParams, ManifoldExpr, Region, SpinCDescriptor, Verdict,
};
use serde_json::{json, Value};

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for domain errors (not admissible, hypothesis unmet, search exhausted).
pub const EXIT_DOMAIN: i32 = 1;
/// Exit code for usage and parse errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nonein", version, about = "Einstein-metric obstructions for closed 4-manifolds")]
struct Cli {
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct RegionArgs {
    /// Threshold C of the geography region (only x > C is used).
    #[arg(long = "chen-C", default_value = "1")]
    chen_c: BigInt,
    /// Starting interval-arithmetic precision in bits.
    #[arg(long, default_value_t = 64)]
    precision_bits: u32,
    /// Maximum precision in bits.
    #[arg(long, default_value_t = 4096)]
    precision_cap: u32,
}

impl RegionArgs {
    fn params(&self) -> Result<ChenParams, Failure> {
        ChenParams::new(self.chen_c.clone(), self.precision_bits, self.precision_cap)
            .map_err(|e| Failure::usage(e.to_string()))
    }

    fn echo(&self) -> Value {
        json!({
            "chen_C": num(&self.chen_c),
            "precision_bits": self.precision_bits,
            "precision_cap": self.precision_cap,
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Euler characteristic, signature and b1 of an expression.
    Invariants { expr: String },
    /// Canonical spin^c class of the base pushed through blow-ups and S1xS3 sums.
    Spinc {
        expr: String,
        /// The base is Kahler with deg K > 0.
        #[arg(long = "deg-K-positive")]
        deg_k_positive: bool,
    },
    /// Evaluate every obstruction rule.
    Obstructions {
        expr: String,
        /// Simplicial volume as an exact rational P/Q.
        #[arg(long)]
        simplicial_volume: Option<BigRational>,
        /// The base is Kahler with deg K > 0.
        #[arg(long = "deg-K-positive")]
        deg_k_positive: bool,
    },
    /// Construct certified non-Einstein manifolds with e = M and sigma = N.
    Construct {
        #[arg(short = 'e', allow_negative_numbers = true)]
        euler: BigInt,
        #[arg(short = 's', allow_negative_numbers = true)]
        signature: BigInt,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[command(flatten)]
        region: RegionArgs,
    },
    /// Write the geography region as CSV or SVG.
    Geography {
        #[arg(long)]
        x_min: BigInt,
        #[arg(long)]
        x_max: BigInt,
        #[arg(long, default_value = "1")]
        step: BigInt,
        #[arg(long, value_parser = parse_format)]
        format: PlotFormat,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[command(flatten)]
        region: RegionArgs,
    },
}

fn parse_format(s: &str) -> Result<PlotFormat, String> {
    s.parse()
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }
}

fn num(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("decimal integer is a JSON number"))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn parse_expr(src: &str) -> Result<ManifoldExpr, Failure> {
    parse(src).map_err(|e| Failure::usage(e.to_string()))
}

fn render(json_mode: bool, value: Value, text: String) -> String {
    if json_mode {
        let mut s = serde_json::to_string_pretty(&value).expect("json");
        s.push('\n');
        s
    } else {
        text
    }
}

fn dispatch(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Invariants { expr } => cmd_invariants(cli.json, expr),
        Command::Spinc {
            expr,
            deg_k_positive,
        } => cmd_spinc(cli.json, expr, *deg_k_positive),
        Command::Obstructions {
            expr,
            simplicial_volume,
            deg_k_positive,
        } => cmd_obstructions(cli.json, expr, simplicial_volume.as_ref(), *deg_k_positive),
        Command::Construct {
            euler,
            signature,
            count,
            region,
        } => cmd_construct(cli.json, euler, signature, *count as usize, region),
        Command::Geography {
            x_min,
            x_max,
            step,
            format,
            output,
            region,
        } => cmd_geography(cli.json, x_min, x_max, step, *format, output, region),
    }
}

fn cmd_invariants(json_mode: bool, src: &str) -> Result<String, Failure> {
    let expr = parse_expr(src)?;
    let inv = connected_sum_invariants(&expr);
    let b2 = expr.b2_split();
    let value = json!({
        "command": "invariants",
        "expr": format(&expr),
        "invariants": to_json(&inv),
        "b2_plus": b2.as_ref().map(|(p, _)| num(p)),
        "b2_minus": b2.as_ref().map(|(_, m)| num(m)),
    });
    let mut text = String::new();
    let _ = writeln!(text, "expression   {}", format(&expr));
    let _ = writeln!(text, "e            {}", inv.e());
    let _ = writeln!(text, "sigma        {}", inv.sigma());
    let _ = writeln!(text, "b1           {}", inv.b1());
    let _ = writeln!(text, "2e+3sigma    {}", inv.two_e_plus_3sigma());
    let _ = writeln!(text, "chi_h        {}", inv.chi_h());
    match b2 {
        Some((p, m)) => {
            let _ = writeln!(text, "b2+ / b2-    {p} / {m}");
        }
        None => {
            let _ = writeln!(text, "b2+ / b2-    not computed");
        }
    }
    Ok(render(json_mode, value, text))
}

struct SpincChain {
    base: String,
    k: u64,
    l: u64,
    canonical: SpinCDescriptor,
    result: SpinCDescriptor,
    lower_bound: BigInt,
}

fn spinc_chain(expr: &ManifoldExpr, deg_k_positive: bool) -> Result<SpincChain, Failure> {
    let (base, k, l) = kahler_decomposition(expr).ok_or_else(|| {
        Failure::domain(
            "sw_structures: expression is not of the form M # k*~CP2 # l*S1xS3 with a single base block",
        )
    })?;
    let base_inv = block_invariants(&base);
    let canonical = canonical_spinc_of_kahler(&base_inv, &base_inv.two_e_plus_3sigma(), deg_k_positive)
        .map_err(|e| Failure::domain(e.to_string()))?;
    let (blown, blown_inv) = blow_up(&canonical, &base_inv, k);
    let (result, _) = s1s3_sum(&blown, &blown_inv, l);
    Ok(SpincChain {
        base: base.to_string(),
        k,
        l,
        lower_bound: c1plus_sq_lower_bound(&base_inv),
        canonical,
        result,
    })
}

fn cmd_spinc(json_mode: bool, src: &str, deg_k_positive: bool) -> Result<String, Failure> {
    let expr = parse_expr(src)?;
    let chain = spinc_chain(&expr, deg_k_positive)?;
    let value = json!({
        "command": "spinc",
        "expr": format(&expr),
        "deg_K_positive": deg_k_positive,
        "base": chain.base,
        "k": chain.k,
        "l": chain.l,
        "base_descriptor": to_json(&chain.canonical),
        "descriptor": to_json(&chain.result),
        "c1plus_sq_lower_bound": num(&chain.lower_bound),
    });
    let d = &chain.result;
    let mut text = String::new();
    let _ = writeln!(text, "expression   {}", format(&expr));
    let _ = writeln!(text, "base         {} (k = {}, l = {})", chain.base, chain.k, chain.l);
    let _ = writeln!(text, "c1^2         {}", d.c1_sq());
    let _ = writeln!(text, "d            {}", d.dimension());
    let _ = writeln!(text, "status       {}", d.status());
    if let Some(h) = d.holonomy_count() {
        let _ = writeln!(text, "SW_theta     {h}");
    }
    let _ = writeln!(text, "(c1+)^2     >= {}", chain.lower_bound);
    let _ = writeln!(text, "provenance");
    for p in d.provenance() {
        let _ = writeln!(text, "  - {p}");
    }
    Ok(render(json_mode, value, text))
}

fn verdict_rows(verdicts: &[Verdict]) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "{:<18} {:<20} certificate", "rule", "status");
    for v in verdicts {
        let cert = v
            .certificate
            .as_ref()
            .map(|c| c.to_string())
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(text, "{:<18} {:<20} {}", v.rule.to_string(), v.status.to_string(), cert);
        let _ = writeln!(text, "{:<18} {:<20} {}", "", "", v.notes);
    }
    text
}

fn cmd_obstructions(
    json_mode: bool,
    src: &str,
    volume: Option<&BigRational>,
    deg_k_positive: bool,
) -> Result<String, Failure> {
    let expr = parse_expr(src)?;
    let descriptor = if deg_k_positive {
        Some(spinc_chain(&expr, true)?.canonical)
    } else {
        None
    };
    let verdicts = evaluate_all(&expr, descriptor.as_ref(), volume);
    let inv = connected_sum_invariants(&expr);
    let value = json!({
        "command": "obstructions",
        "expr": format(&expr),
        "simplicial_volume": volume.map(|v| if v.is_integer() { num(v.numer()) } else { Value::String(v.to_string()) }),
        "deg_K_positive": deg_k_positive,
        "invariants": to_json(&inv),
        "verdicts": to_json(&verdicts),
    });
    let mut text = String::new();
    let _ = writeln!(text, "expression   {}", format(&expr));
    let _ = writeln!(text, "invariants   {inv}");
    text.push('\n');
    text.push_str(&verdict_rows(&verdicts));
    Ok(render(json_mode, value, text))
}

fn cmd_construct(
    json_mode: bool,
    m: &BigInt,
    n: &BigInt,
    count: usize,
    region: &RegionArgs,
) -> Result<String, Failure> {
    let params = region.params()?;
    let witnesses = solve(m, n, count, &params).map_err(|e| Failure::domain(e.to_string()))?;
    let value = json!({
        "command": "construct",
        "e": num(m),
        "sigma": num(n),
        "count": count,
        "params": region.echo(),
        "witnesses": to_json(&witnesses),
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "target e = {m}, sigma = {n}; {} witness(es), valid for the geography region at C = {}",
        witnesses.len(),
        params.threshold()
    );
    for (i, w) in witnesses.iter().enumerate() {
        text.push('\n');
        let _ = writeln!(text, "[{}] {}", i + 1, format(&w.expr));
        let _ = writeln!(text, "    Chen surface  chi_h = {}, c1^2 = {}", w.chen_x, w.chen_y);
        let _ = writeln!(text, "    k = {}, l = {}   ({})", w.k, w.l, w.distinctness());
        let _ = writeln!(text, "    invariants    {}", w.invariants);
        for v in &w.verdicts {
            let cert = v.certificate.as_ref().map(|c| c.to_string()).unwrap_or_default();
            let _ = writeln!(text, "    {:<18} {:<20} {}", v.rule.to_string(), v.status.to_string(), cert);
        }
    }
    Ok(render(json_mode, value, text))
}

fn cmd_geography(
    json_mode: bool,
    x_min: &BigInt,
    x_max: &BigInt,
    step: &BigInt,
    format: PlotFormat,
    output: &PathBuf,
    region: &RegionArgs,
) -> Result<String, Failure> {
    let params = region.params()?;
    let doc = Region::chen()
        .emit_geography(x_min, x_max, step, format, &params)
        .map_err(|e| Failure::usage(e.to_string()))?;
    std::fs::write(output, &doc).map_err(|e| {
        Failure::domain(format!("chen_geography: cannot write {}: {e}", output.display()))
    })?;
    let kind = match format {
        PlotFormat::Csv => "csv",
        PlotFormat::Svg => "svg",
    };
    let value = json!({
        "command": "geography",
        "x_min": num(x_min),
        "x_max": num(x_max),
        "step": num(step),
        "format": kind,
        "output": output.display().to_string(),
        "bytes": doc.len(),
        "params": region.echo(),
    });
    let text = format!("wrote {} ({kind}, {} bytes)\n", output.display(), doc.len());
    Ok(render(json_mode, value, text))
}
