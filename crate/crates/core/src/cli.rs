//! The `octobil` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification run finds a property
//! violation, 2 on usage errors (bad flags, unknown maps, malformed patterns,
//! unwritable output).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{self, Registry, VerifyPolicy};
use crate::error::{Error, Result};
use crate::maps::{self, BilinearMap, Construction, Tensor};
use crate::restriction::{self, SubspacePattern};
use crate::scalar::{self, Scalar};
use crate::verify::{self, Side, Strategy, VerificationReport};

pub const DEFAULT_SEED: u64 = 0xC0DA;

pub const THREADS_ENV: &str = "OCTOBIL_THREADS";

#[derive(Parser, Debug)]
#[command(name = "octobil", version, about = "Exact workbench for nonsingular bilinear maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; reports default to json, tables and values to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Also write the output to this file.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

/// A map given either by id or by a tensor file.
#[derive(clap::Args, Debug, Clone)]
pub struct MapArg {
    /// Catalog id (`main_f`, `poly_mul(2,3)`, `newnbl:r1`, `f1^T`,
    /// `main_f|a=o,o,o,0|b=o,o,o,o`).
    #[arg(long, required_unless_present = "tensor", conflicts_with = "tensor")]
    pub map: Option<String>,

    /// Tensor JSON file.
    #[arg(long)]
    pub tensor: Option<PathBuf>,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Sampling {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Integer entries are drawn from [-B, B].
    #[arg(long, default_value_t = verify::DEFAULT_BOUND, value_parser = clap::value_parser!(i64).range(1..=1_000_000))]
    pub bound: i64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List catalog maps.
    List,
    /// Evaluate f(x, y).
    Eval {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Export the structure-constant tensor.
    Tensor {
        #[command(flatten)]
        map: MapArg,
    },
    /// Random nonsingularity fuzzing.
    Fuzz {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Exact rank of the frozen linear maps at random points.
    Rank {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Search for a kernel pair f(x, y) = 0 with x, y nonzero.
    Witness {
        #[command(flatten)]
        map: MapArg,
        /// diagonal, random or randomized-kernel.
        #[arg(long, default_value = "randomized-kernel")]
        strategy: String,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Floating-point estimate of min |f(x, y)| on unit spheres.
    Margin {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        restarts: u64,
        #[arg(long, default_value_t = 300, value_parser = clap::value_parser!(u64).range(1..))]
        max_iters: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Restrict to coordinate subspaces and compress the codomain.
    Restrict {
        #[command(flatten)]
        map: MapArg,
        /// Slot patterns for the first argument, e.g. `rq,o,o,0`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Restriction table of main_f.
    TableNewnbl,
    /// Best known upper bounds on r#s.
    Bounds {
        #[arg(long, requires = "s")]
        r: Option<usize>,
        #[arg(long, requires = "r")]
        s: Option<usize>,
        /// Table of all r <= s <= max.
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..=64))]
        max: u64,
    },
    /// Section counts of multiples of the canonical line bundle.
    Sections,
    /// Project the codomain along z and fuzz the quotient map.
    Quotient {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Catalog map to match by an invertible codomain change of basis.
        #[arg(long)]
        compare: Option<String>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Check that z is never a nonzero multiple of a value f(x, y).
    Avoid {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[command(flatten)]
        sampling: Sampling,
    },
}

struct Output {
    text: String,
    json: serde_json::Value,
    default: Format,
    violation: bool,
}

impl Output {
    fn report(r: &VerificationReport) -> Result<Output> {
        Ok(Output {
            text: report_text(r),
            json: serde_json::to_value(r)?,
            default: Format::Json,
            violation: !r.passed,
        })
    }

    fn text(text: String, json: impl Serialize) -> Result<Output> {
        Ok(Output {
            text,
            json: serde_json::to_value(json)?,
            default: Format::Text,
            violation: false,
        })
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut out = format!(
        "{} {:?}: {} ({} failures, trials {}, seed {:#x}, bound {})\n",
        r.map_id,
        r.mode,
        if r.passed { "PASS" } else { "FAIL" },
        r.failure_count,
        r.trials,
        r.seed,
        r.bound
    );
    if let Some(k) = r.min_rank_observed {
        out += &format!("min rank {k} (expected {})\n", r.expected_rank.unwrap_or(0));
    }
    if let Some(m) = r.margin_value {
        out += &format!("margin {m:.12e}\n");
    }
    if let Some(w) = r.failures.first() {
        out += &format!(
            "witness {:?}#{}: x = {}  y = {}\n",
            w.stage,
            w.index,
            scalar::format_vector(&w.x),
            scalar::format_vector(&w.y)
        );
    }
    out += &r.claim;
    out.push('\n');
    out
}

/// Resolves a map id. Besides catalog ids this accepts registry ids
/// (`newnbl:r1`), a trailing `^T` for the transpose and `|a=..|b=..`
/// restrictions.
pub fn resolve_map(id: &str) -> Result<Arc<BilinearMap>> {
    if let Some((base, rest)) = id.split_once('|') {
        let parent = resolve_map(base)?;
        let mut a = None;
        let mut b = None;
        for part in rest.split('|') {
            match part.split_once('=') {
                Some(("a", p)) => a = Some(p.parse::<SubspacePattern>()?),
                Some(("b", p)) => b = Some(p.parse::<SubspacePattern>()?),
                _ => return Err(Error::UnknownMap(id.into())),
            }
        }
        let (a, b) = a.zip(b).ok_or_else(|| Error::UnknownMap(id.into()))?;
        return Ok(Arc::clone(restriction::restrict(&parent, &a, &b)?.map()));
    }
    if let Some(base) = id.strip_suffix("^T") {
        return Ok(Arc::new(resolve_map(base)?.transpose()));
    }
    match maps::builtin(id) {
        Ok(m) => Ok(Arc::new(m)),
        Err(Error::UnknownMap(_)) if id.starts_with("newnbl:") => Registry::unverified()?
            .map(id)
            .cloned()
            .ok_or_else(|| Error::UnknownMap(id.into())),
        Err(e) => Err(e),
    }
}

fn load(arg: &MapArg) -> Result<Arc<BilinearMap>> {
    match (&arg.map, &arg.tensor) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let id = path.display().to_string();
            Ok(Arc::new(BilinearMap::from_tensor(Tensor::from_json(&text)?).with_id(id)))
        }
        (Some(id), None) => resolve_map(id),
        (None, None) => Err(Error::UnknownMap(String::new())),
    }
}

fn vector(s: &str) -> Result<Vec<Scalar>> {
    scalar::parse_vector(s)
}

fn execute(command: &Command) -> Result<Output> {
    match command {
        Command::List => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for c in Construction::FIXED {
                let m = BilinearMap::from_construction(c)?;
                let (r, s, k) = m.dims();
                text += &format!("{:<16} {:>3} x {:>3} -> {:>3}  {}\n", c.id(), r, s, k, c.description());
                rows.push(json!({"id": c.id(), "r": r, "s": s, "k": k, "description": c.description()}));
            }
            for (id, dims, desc) in [
                ("poly_mul(r,s)", "r x s -> r+s-1", "product of real polynomials"),
                ("complex_poly_mul(r,s)", "r x s -> r+s-2", "product of complex polynomials, r and s even"),
            ] {
                text += &format!("{id:<22} {dims:<20} {desc}\n");
                rows.push(json!({"id": id, "dims": dims, "description": desc}));
            }
            Output::text(text, rows)
        }
        Command::Eval { map, x, y } => {
            let m = load(map)?;
            let v = m.evaluate(&vector(x)?, &vector(y)?)?;
            let strings: Vec<String> = v.iter().map(scalar::format_scalar).collect();
            Output::text(
                format!("{}\n", scalar::format_vector(&v)),
                json!({"map": m.id(), "value": strings}),
            )
        }
        Command::Tensor { map } => {
            let m = load(map)?;
            let t = m.as_tensor();
            let text = t.to_json()?;
            Ok(Output {
                json: serde_json::from_str(&text)?,
                text: text + "\n",
                default: Format::Json,
                violation: false,
            })
        }
        Command::Fuzz { map, trials, sampling } => {
            let m = load(map)?;
            Output::report(&verify::fuzz_nonsingularity(&m, *trials, sampling.seed, sampling.bound)?)
        }
        Command::Rank { map, side, samples, sampling } => {
            let m = load(map)?;
            Output::report(&verify::rank_profile(&m, (*side).into(), *samples, sampling.seed, sampling.bound)?)
        }
        Command::Witness { map, strategy, budget, sampling } => {
            let m = load(map)?;
            let strategy: Strategy = strategy.parse()?;
            let found = verify::find_kernel_pair(&m, strategy, *budget, sampling.seed, sampling.bound)?;
            let text = match &found {
                Some(w) => format!(
                    "{}: kernel pair at {:?}#{}\nx = {}\ny = {}\n",
                    m.id(),
                    w.stage,
                    w.index,
                    scalar::format_vector(&w.x),
                    scalar::format_vector(&w.y)
                ),
                None => format!("{}: no kernel pair within budget {budget}\n", m.id()),
            };
            Ok(Output {
                text,
                json: json!({
                    "map_id": m.id(),
                    "strategy": strategy,
                    "budget": budget,
                    "seed": sampling.seed,
                    "bound": sampling.bound,
                    "witness": found,
                }),
                default: Format::Json,
                violation: found.is_some(),
            })
        }
        Command::Margin { map, restarts, max_iters, tol, seed } => {
            if !(*tol > 0.0) {
                return Err(Error::NonPositive("tol"));
            }
            let m = load(map)?;
            Output::report(&verify::margin_estimate(&m, *restarts, *max_iters, *tol, *seed)?)
        }
        Command::Restrict { map, a, b } => {
            let m = load(map)?;
            let rm = restriction::restrict(&m, &a.parse()?, &b.parse()?)?;
            let (r, s, k) = rm.dims();
            let raw = m.dims().2;
            Output::text(
                format!("{}: {r} x {s} -> {k} (raw codomain {raw})\n", rm.map().id()),
                json!({"id": rm.map().id(), "r": r, "s": s, "k": k, "raw_k": raw}),
            )
        }
        Command::TableNewnbl => {
            let rows = restriction::newnbl_table()?;
            Output::text(restriction::format_newnbl_table(&rows), &rows)
        }
        Command::Bounds { r, s, max } => {
            let reg = Registry::verified(VerifyPolicy::default())?;
            match r.zip(*s) {
                Some((r, s)) => {
                    let e = reg.best_upper_bound(r, s)?;
                    let mut text = bounds::format_bounds(std::slice::from_ref(&e));
                    for n in &e.notes {
                        text += &format!("note: {n}\n");
                    }
                    Output::text(text, &e)
                }
                None => {
                    let t = bounds::bounds_table(&reg, *max as usize)?;
                    Output::text(bounds::format_bounds(&t), &t)
                }
            }
        }
        Command::Sections => {
            let reg = Registry::verified(VerifyPolicy::default())?;
            let rows = bounds::corollary_sections(&reg)?;
            let json: Vec<_> = rows
                .iter()
                .map(|e| json!({"k": e.k, "n": e.n, "sections": e.s, "source": e.source, "text": e.to_string()}))
                .collect();
            Output::text(bounds::format_sections(&rows), json)
        }
        Command::Quotient { map, z, trials, compare, sampling } => {
            let m = load(map)?;
            let q = Arc::new(m.quotient_project(&vector(z)?)?);
            let report = verify::fuzz_nonsingularity(&q, *trials, sampling.seed, sampling.bound)?;
            let mut out = Output::report(&report)?;
            let (r, s, k) = q.dims();
            out.text = format!("{}: {r} x {s} -> {k}\n", q.id()) + &out.text;
            out.json["dims"] = json!([r, s, k]);
            if let Some(target) = compare {
                let t = resolve_map(target)?;
                let c = maps::codomain_change_of_basis(q.as_tensor(), t.as_tensor());
                let rows = c.as_ref().map(|c| {
                    c.to_rows()
                        .iter()
                        .map(|row| row.iter().map(scalar::format_scalar).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                });
                out.text += &match &c {
                    Some(c) => format!(
                        "codomain change of basis onto {target}: {}\n",
                        c.to_rows().iter().map(|r| scalar::format_vector(r)).collect::<Vec<_>>().join("; ")
                    ),
                    None => format!("no invertible codomain change of basis onto {target}\n"),
                };
                out.json["change_of_basis"] = json!({"target": target, "matrix": rows});
                out.violation |= c.is_none();
            }
            Ok(out)
        }
        Command::Avoid { map, z, trials, sampling } => {
            let m = load(map)?;
            Output::report(&verify::verify_not_in_image(&m, &vector(z)?, *trials, sampling.seed, sampling.bound)?)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    configure_threads();
    let result = execute(&cli.command).and_then(|o| {
        let body = match cli.format.unwrap_or(o.default) {
            Format::Text => o.text.clone(),
            Format::Json => serde_json::to_string_pretty(&o.json)? + "\n",
        };
        if let Some(path) = &cli.output {
            std::fs::write(path, &body)?;
        }
        Ok((body, o.violation))
    });
    match result {
        Ok((body, violation)) => {
            let _ = out.write_all(body.as_bytes());
            u8::from(violation)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
