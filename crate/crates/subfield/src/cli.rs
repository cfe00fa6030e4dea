//! Command-line front end. `run` is the whole program minus process IO, so
//! tests drive it directly.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use subfield_core::census::{convergence_table, ConvergenceMode};
use subfield_core::monoid::{enumerate_monoid, DEFAULT_BOUND};
use subfield_core::poly::{compose_polys, func_from_poly, interpolate};
use subfield_core::{CensusReport, Error, FieldCtx, MonoidElem, MonoidShape, OrbitTable, PolyRep};

use crate::checks::{verify, VerifyOptions};
use crate::format::{format_element, format_poly, parse_poly, pretty_poly, FieldSpec};
use crate::json::{census_json, convergence_csv, convergence_json, field_json, monoid_elem_json, orbit_table_json};

#[derive(Debug, Parser)]
#[command(name = "subfield", version, about = "Canonical subfield-preserving polynomials over finite fields")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest search space walked exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: u64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field parameters and modulus.
    Field { spec: FieldSpec },
    /// Frobenius orbits grouped by cycle length.
    Orbits { spec: FieldSpec },
    /// Exact sizes of T, its units and L.
    Count { spec: FieldSpec },
    /// Densities for one field, or a CSV sweep along one direction.
    Density(DensityArgs),
    /// Every member of T (or its units) as a polynomial.
    Enumerate {
        spec: FieldSpec,
        #[arg(long)]
        units: bool,
    },
    /// Oracle and property checks; exhaustive where the bound allows.
    Verify {
        spec: FieldSpec,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// The monoid element behind a member polynomial.
    Decompose { spec: FieldSpec, poly: String },
    /// f∘g as a reduced polynomial.
    Compose { spec: FieldSpec, f: String, g: String },
    /// Inverse of a unit of T.
    Invert { spec: FieldSpec, poly: String },
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Field for a single report (not needed for sweeps).
    pub spec: Option<FieldSpec>,
    /// Sweep q = p over the primes of LO..HI.
    #[arg(long, value_name = "LO..HI", conflicts_with_all = ["fixed_q", "fixed_p"])]
    pub diagonal: Option<String>,
    /// Sweep p over primes with q fixed.
    #[arg(long, value_name = "Q", requires = "range", conflicts_with = "fixed_p")]
    pub fixed_q: Option<u64>,
    /// Sweep q over prime powers with p fixed.
    #[arg(long, value_name = "P", requires = "range")]
    pub fixed_p: Option<u64>,
    /// Inclusive range for --fixed-q / --fixed-p.
    #[arg(long, value_name = "LO..HI")]
    pub range: Option<String>,
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(&cli) {
        Ok((stdout, ok)) => Outcome { stdout, stderr: String::new(), code: if ok { 0 } else { 1 } },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e:#}\n"), code: 1 },
    }
}

fn render(cli: &Cli, value: Value, text: String) -> String {
    if cli.json {
        let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

/// Returns the output and whether every check passed.
pub fn execute(cli: &Cli) -> anyhow::Result<(String, bool)> {
    let out = match &cli.command {
        Command::Field { spec } => cmd_field(cli, spec)?,
        Command::Orbits { spec } => cmd_orbits(cli, spec)?,
        Command::Count { spec } => cmd_count(cli, spec)?,
        Command::Density(args) => cmd_density(cli, args)?,
        Command::Enumerate { spec, units } => cmd_enumerate(cli, spec, *units)?,
        Command::Verify { spec, samples } => return cmd_verify(cli, spec, *samples),
        Command::Decompose { spec, poly } => cmd_decompose(cli, spec, poly)?,
        Command::Compose { spec, f, g } => cmd_compose(cli, spec, f, g)?,
        Command::Invert { spec, poly } => cmd_invert(cli, spec, poly)?,
    };
    Ok((out, true))
}

fn field(spec: &FieldSpec) -> anyhow::Result<FieldCtx> {
    spec.build().with_context(|| format!("invalid field {spec}"))
}

fn poly(ctx: &FieldCtx, text: &str) -> anyhow::Result<PolyRep> {
    parse_poly(ctx, text).with_context(|| format!("invalid polynomial {text:?}"))
}

fn canonical_spec(spec: &FieldSpec, ctx: &FieldCtx) -> String {
    FieldSpec { modulus: Some(ctx.modulus().clone()), ..spec.clone() }.to_string()
}

fn cmd_field(cli: &Cli, spec: &FieldSpec) -> anyhow::Result<String> {
    let ctx = field(spec)?;
    let text = format!(
        "field F_{}^{} over F_{}\np = {}, e = {}, q = {}, m = {}\ndegree over F_p: {}\nmodulus: {} ({})\nelements: {}\n",
        ctx.q(),
        ctx.m(),
        ctx.q(),
        ctx.characteristic(),
        ctx.e(),
        ctx.q(),
        ctx.m(),
        ctx.degree(),
        pretty_modulus(&ctx),
        crate::format::format_prime_poly(ctx.modulus()),
        ctx.order(),
    );
    Ok(render(cli, field_json(&canonical_spec(spec, &ctx), &ctx), text))
}

fn pretty_modulus(ctx: &FieldCtx) -> String {
    let terms: Vec<String> = ctx
        .modulus()
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|&(_, &c)| c != 0)
        .map(|(d, &c)| {
            let mono = match d {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{d}"),
            };
            match (c, d) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            }
        })
        .collect();
    terms.join("+")
}

fn cmd_orbits(cli: &Cli, spec: &FieldSpec) -> anyhow::Result<String> {
    let ctx = field(spec)?;
    let table = OrbitTable::new(&ctx);
    let mut text = String::new();
    for stratum in table.strata() {
        text.push_str(&format!("k = {} ({} orbits)\n", stratum.k(), stratum.orbit_count()));
        for (i, orbit) in stratum.orbits().enumerate() {
            let elems: Vec<String> = orbit.iter().map(|&a| format!("({})", format_element(&ctx, a))).collect();
            text.push_str(&format!("  {}: {}\n", i + 1, elems.join(" -> ")));
        }
    }
    Ok(render(cli, orbit_table_json(&ctx, &table), text))
}

fn cmd_count(cli: &Cli, spec: &FieldSpec) -> anyhow::Result<String> {
    let report = CensusReport::compute(spec.q(), spec.m)?;
    let mut text = format!("q = {}, m = {}\n", report.q, report.m);
    for d in &report.divisors {
        text.push_str(&format!("pi({}) = {}\n", d.k, d.pi));
    }
    text.push_str(&format!("|T| = {}\n|units| = {}\n|L| = {}\n", report.count_t, report.count_units, report.count_l));
    Ok(render(cli, census_json(&report), text))
}

fn parse_range(s: &str) -> anyhow::Result<(u64, u64)> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| anyhow!("range {s:?} is not LO..HI"))?;
    let lo: u64 = lo.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
    let hi: u64 = hi.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end in {s:?}"))?;
    if lo > hi {
        bail!("empty range {s:?}");
    }
    Ok((lo, hi))
}

fn cmd_density(cli: &Cli, args: &DensityArgs) -> anyhow::Result<String> {
    let sweep = match (&args.diagonal, args.fixed_q, args.fixed_p) {
        (Some(r), _, _) => Some((ConvergenceMode::Diagonal, r)),
        (None, Some(q), _) => Some((ConvergenceMode::FixedQ(q), args.range.as_ref().expect("clap requires range"))),
        (None, None, Some(p)) => Some((ConvergenceMode::FixedP(p), args.range.as_ref().expect("clap requires range"))),
        _ => None,
    };
    if let Some((mode, range)) = sweep {
        let (lo, hi) = parse_range(range)?;
        let rows = convergence_table(mode, lo, hi)?;
        return Ok(render(cli, convergence_json(&rows), convergence_csv(&rows)));
    }
    let spec = args.spec.as_ref().ok_or_else(|| anyhow!("density needs a field spec or a sweep flag"))?;
    let report = CensusReport::compute(spec.q(), spec.m)?;
    let mut text = format!("q = {}, m = {}\n", report.q, report.m);
    text.push_str(&format!(
        "density_T = {} ~ {:.12e}\n",
        report.density_t.as_ref().map_or("(too large)".to_string(), ToString::to_string),
        report.density_t_float
    ));
    text.push_str(&format!(
        "density_units = {} ~ {:.12e}\n",
        report.density_units.as_ref().map_or("(too large)".to_string(), ToString::to_string),
        report.density_units_float
    ));
    if let Some(l) = report.log_density_t {
        text.push_str(&format!("log density_T (stable) = {l:.12}\n"));
    }
    Ok(render(cli, census_json(&report), text))
}

fn cmd_enumerate(cli: &Cli, spec: &FieldSpec, units: bool) -> anyhow::Result<String> {
    let ctx = field(spec)?;
    let table = OrbitTable::new(&ctx);
    let shape = MonoidShape::from_table(&table);
    let mut text = String::new();
    let mut rows = Vec::new();
    for a in enumerate_monoid(&shape, cli.bound)? {
        if units && !a.is_invertible() {
            continue;
        }
        let p = interpolate(&ctx, &a.delta(&table)?);
        let (plain, pretty) = (format_poly(&ctx, &p), pretty_poly(&ctx, &p));
        text.push_str(&format!("{plain}\t{pretty}\n"));
        rows.push(json!({ "poly": plain, "pretty": pretty, "element": monoid_elem_json(&a) }));
    }
    Ok(render(cli, Value::Array(rows), text))
}

fn cmd_verify(cli: &Cli, spec: &FieldSpec, samples: u64) -> anyhow::Result<(String, bool)> {
    let ctx = field(spec)?;
    let report = verify(&ctx, VerifyOptions { bound: cli.bound, samples, seed: cli.seed });
    let mut value = report.to_json();
    value["spec"] = Value::String(canonical_spec(spec, &ctx));
    Ok((render(cli, value, report.to_text()), report.passed()))
}

fn elem_text(a: &MonoidElem) -> String {
    a.components()
        .iter()
        .map(|c| format!("k = {}: sigma = {:?}, shifts = {:?}\n", c.k(), c.sigma().to_one_based(), c.shifts().values()))
        .collect()
}

fn decompose(ctx: &FieldCtx, table: &OrbitTable, p: &PolyRep) -> Result<MonoidElem, Error> {
    MonoidElem::delta_inv(&func_from_poly(ctx, p), table)
}

fn cmd_decompose(cli: &Cli, spec: &FieldSpec, text: &str) -> anyhow::Result<String> {
    let ctx = field(spec)?;
    let table = OrbitTable::new(&ctx);
    let p = poly(&ctx, text)?;
    let a = decompose(&ctx, &table, &p).with_context(|| format!("{} is not in T", pretty_poly(&ctx, &p)))?;
    let value =
        json!({ "poly": format_poly(&ctx, &p), "element": monoid_elem_json(&a), "invertible": a.is_invertible() });
    Ok(render(cli, value, elem_text(&a)))
}

fn poly_output(cli: &Cli, ctx: &FieldCtx, p: &PolyRep) -> String {
    let (plain, pretty) = (format_poly(ctx, p), pretty_poly(ctx, p));
    render(cli, json!({ "poly": plain, "pretty": pretty }), format!("{plain}\t{pretty}\n"))
}

fn cmd_compose(cli: &Cli, spec: &FieldSpec, f: &str, g: &str) -> anyhow::Result<String> {
    let ctx = field(spec)?;
    let (f, g) = (poly(&ctx, f)?, poly(&ctx, g)?);
    Ok(poly_output(cli, &ctx, &compose_polys(&ctx, &f, &g)))
}

fn cmd_invert(cli: &Cli, spec: &FieldSpec, text: &str) -> anyhow::Result<String> {
    let ctx = field(spec)?;
    let table = OrbitTable::new(&ctx);
    let p = poly(&ctx, text)?;
    let pretty = pretty_poly(&ctx, &p);
    let a = decompose(&ctx, &table, &p)
        .map_err(|cause| anyhow!(Error::NotInvertible).context(format!("{pretty} is not in T ({cause})")))?;
    let inv = a.invert().with_context(|| format!("{pretty} is not a unit of T"))?;
    Ok(poly_output(cli, &ctx, &interpolate(&ctx, &inv.delta(&table)?)))
}
