//! Command-line front end. [`run`] parses arguments, dispatches and returns
//! the process exit code: 0 for success or a true certificate, 2 for a false
//! certificate or a failed identity, 1 for usage and input errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde_json::json;

use crate::certify::{self, InterlaceCertificate, RealRootCertificate};
use crate::engine::{self, AugmentedMethod, ChowMethod, EngineConfig, Identity};
use crate::oracle;
use crate::polynomial::IntPolynomial;
use crate::poset::{self, GradedPoset, IntervalHandle};
use crate::sequences;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FALSE: i32 = 2;

const DEFAULT_MAX_ELEMENTS: usize = 1 << 16;

#[derive(Debug, Parser)]
#[command(name = "chowlab", version, about = "Chow polynomials of bounded graded posets")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for commands that sample random posets.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Refuse posets with more elements than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chow polynomial H_P.
    Chow(ChowArgs),
    /// Augmented Chow polynomial G_P.
    Augchow(AugchowArgs),
    /// Eulerian, derangement and binomial-sum sequences.
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Exact real-rootedness and interlacing certificates.
    #[command(subcommand)]
    Certify(CertifyCommand),
    /// Check a structural identity on a poset.
    Verify(VerifyArgs),
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Time every method on a built-in family and print CSV.
    Bench(BenchArgs),
    /// Build, validate and transform poset files.
    #[command(subcommand)]
    Poset(PosetCommand),
}

#[derive(Debug, Args)]
struct ChowArgs {
    /// Poset file or built-in spec such as boolean:3, uniform:2,4, maxrank:3,3, chain:4.
    #[arg(long)]
    poset: String,
    #[arg(long, default_value = "definition")]
    method: String,
    /// Compute G_P instead of H_P.
    #[arg(long)]
    augmented: bool,
    /// Enable rank shortcuts for Boolean and uniform lattices.
    #[arg(long)]
    shortcuts: bool,
}

#[derive(Debug, Args)]
struct AugchowArgs {
    #[arg(long)]
    poset: String,
    /// sum-definition or augment-then-chow.
    #[arg(long, default_value = "sum-definition")]
    method: String,
    #[arg(long)]
    shortcuts: bool,
}

#[derive(Debug, Subcommand)]
enum SeqCommand {
    Eulerian { n: usize },
    Derangement { n: usize },
    #[command(name = "Dnk")]
    Dnk { n: usize, k: usize },
    #[command(name = "Ank")]
    Ank { n: usize, k: usize },
}

#[derive(Debug, Subcommand)]
enum CertifyCommand {
    RealRooted {
        /// JSON coefficient array or expression such as "1 + 4t + t^2".
        #[arg(long)]
        poly: String,
    },
    Interlace {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Real-rootedness of mu*f + lambda*g.
    Combination {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Identity name, or "all".
    #[arg(long)]
    identity: String,
    #[arg(long)]
    poset: String,
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    Eulerian { n: usize },
    Derangement { n: usize },
    Mobius {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        y: Option<usize>,
    },
    Chow {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        y: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchFamily {
    Boolean,
    Uniform,
    Maxrank,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    family: BenchFamily,
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    #[arg(long)]
    shortcuts: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PosetOp {
    Truncate,
    DualTruncate,
    Augment,
    Dual,
    Canonical,
}

#[derive(Debug, Subcommand)]
enum PosetCommand {
    /// Print the JSON form of a built-in spec.
    Build { spec: String },
    /// Parse a poset file or spec and report its shape.
    Validate { poset: String },
    /// Apply transformations in order and print the result as JSON.
    Convert {
        poset: String,
        #[arg(long = "op", value_enum)]
        ops: Vec<PosetOp>,
        /// Restrict to the interval [x, y] after the other operations.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        interval: Option<Vec<usize>>,
    },
    /// Sample a random poset with the given middle level sizes; needs --seed.
    Random {
        #[arg(long, value_delimiter = ',')]
        levels: Vec<usize>,
        /// Cover density as a fraction such as 3/10.
        #[arg(long, default_value = "1")]
        density: String,
    },
}

/// Built-in poset families addressable as `family:params`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuiltinSpec {
    Boolean(usize),
    Uniform { k: usize, n: usize },
    MaxRanked(Vec<usize>),
    Chain(usize),
}

impl FromStr for BuiltinSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, params) = s.split_once(':').ok_or_else(|| anyhow!("expected family:params, got {s:?}"))?;
        let nums = if params.trim().is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| p.trim().parse::<usize>().with_context(|| format!("bad parameter {p:?} in {s:?}")))
                .collect::<Result<Vec<_>>>()?
        };
        let one = |name: &str| match nums[..] {
            [n] => Ok(n),
            _ => Err(anyhow!("{name} takes one parameter, got {}", nums.len())),
        };
        match family {
            "boolean" => Ok(BuiltinSpec::Boolean(one("boolean")?)),
            "chain" => Ok(BuiltinSpec::Chain(one("chain")?)),
            "uniform" => match nums[..] {
                [k, n] => Ok(BuiltinSpec::Uniform { k, n }),
                _ => bail!("uniform takes k,n"),
            },
            "maxrank" => Ok(BuiltinSpec::MaxRanked(nums)),
            _ => bail!("unknown family {family:?}"),
        }
    }
}

impl BuiltinSpec {
    /// Element count, computed before construction so oversized requests
    /// fail fast.
    fn size(&self) -> Option<u128> {
        match self {
            BuiltinSpec::Boolean(n) => 1u128.checked_shl(*n as u32),
            BuiltinSpec::Uniform { k, n } => Some(
                (0..*k)
                    .map(|j| sequences::binomial(*n, j).try_into().unwrap_or(u128::MAX))
                    .fold(1u128, u128::saturating_add),
            ),
            BuiltinSpec::MaxRanked(c) => Some(c.iter().map(|&x| x as u128).sum::<u128>() + 2),
            BuiltinSpec::Chain(r) => Some(*r as u128 + 1),
        }
    }

    pub fn build(&self) -> Result<GradedPoset> {
        let p = match self {
            BuiltinSpec::Boolean(n) => poset::build_boolean(*n)?,
            BuiltinSpec::Uniform { k, n } => poset::build_uniform(*k, *n)?,
            BuiltinSpec::MaxRanked(c) => poset::build_max_ranked(c)?,
            BuiltinSpec::Chain(r) => poset::build_chain(*r),
        };
        Ok(p)
    }
}

/// Resolves a built-in spec or reads a poset file.
pub fn load_poset(spec: &str, max_elements: usize) -> Result<GradedPoset> {
    let looks_builtin = spec
        .split_once(':')
        .is_some_and(|(f, _)| ["boolean", "uniform", "maxrank", "chain"].contains(&f));
    let p = if looks_builtin && !Path::new(spec).exists() {
        let b: BuiltinSpec = spec.parse()?;
        if b.size().is_none_or(|s| s > max_elements as u128) {
            bail!("{spec} exceeds the element cap {max_elements}");
        }
        b.build()?
    } else {
        let text = std::fs::read_to_string(spec).with_context(|| format!("cannot read poset file {spec:?}"))?;
        GradedPoset::from_json(&text).with_context(|| format!("invalid poset file {spec:?}"))?
    };
    if p.len() > max_elements {
        bail!("poset has {} elements, cap is {max_elements}", p.len());
    }
    Ok(p)
}

fn parse_poly(s: &str) -> Result<IntPolynomial> {
    s.parse::<IntPolynomial>().map_err(|e| anyhow!("cannot parse polynomial {s:?}: {e}"))
}

fn parse_density(s: &str) -> Result<Ratio<u64>> {
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
            if b == 0 {
                bail!("density denominator is zero");
            }
            Ok(Ratio::new(a, b))
        }
        None => Ok(Ratio::from_integer(s.trim().parse()?)),
    }
}

/// Runs the CLI with `args` (including the program name) against stdout and
/// stderr.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    run_with(args, &mut out, &mut err)
}

/// [`run`] with explicit output streams.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let chain: Vec<String> = e.chain().map(|c| c.to_string()).collect();
            let _ = writeln!(err, "error: {}", chain.join(": "));
            EXIT_ERROR
        }
    }
}

fn verdict_code(v: bool) -> i32 {
    if v {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn json_line(v: serde_json::Value) -> String {
    format!("{v}\n")
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    let cap = cli.max_elements;
    match &cli.command {
        Command::Chow(a) => {
            let p = load_poset(&a.poset, cap)?;
            let config = EngineConfig { family_shortcuts: a.shortcuts };
            let (h, label) = if a.augmented {
                let m = if a.method == "definition" { "sum-definition" } else { a.method.as_str() };
                let method: AugmentedMethod = m.parse()?;
                (engine::augmented_chow_with_config(&p, method, config)?, "G")
            } else {
                let method: ChowMethod = a.method.parse()?;
                (engine::chow_with_config(&p, method, config)?, "H")
            };
            Ok((poly_output(cli.json, label, &a.method, &h), EXIT_OK))
        }
        Command::Augchow(a) => {
            let p = load_poset(&a.poset, cap)?;
            let method: AugmentedMethod = a.method.parse()?;
            let config = EngineConfig { family_shortcuts: a.shortcuts };
            let g = engine::augmented_chow_with_config(&p, method, config)?;
            Ok((poly_output(cli.json, "G", &a.method, &g), EXIT_OK))
        }
        Command::Seq(s) => {
            let (name, p) = match *s {
                SeqCommand::Eulerian { n } => (format!("A_{n}"), sequences::eulerian(n)),
                SeqCommand::Derangement { n } => (format!("d_{n}"), sequences::derangement(n)),
                SeqCommand::Dnk { n, k } => (format!("D_{n},{k}"), sequences::d_nk(n, k)?),
                SeqCommand::Ank { n, k } => (format!("A_{n},{k}"), sequences::a_nk(n, k)?),
            };
            Ok((poly_output(cli.json, &name, "sequence", &p), EXIT_OK))
        }
        Command::Certify(CertifyCommand::RealRooted { poly }) => {
            let cert = certify::is_real_rooted(&parse_poly(poly)?)?;
            let text = if cli.json { json_line(serde_json::to_value(&cert)?) } else { real_root_text(&cert) };
            Ok((text, verdict_code(cert.verdict)))
        }
        Command::Certify(CertifyCommand::Interlace { f, g }) => {
            let cert = certify::interlaces(&parse_poly(f)?, &parse_poly(g)?)?;
            let text = if cli.json { json_line(serde_json::to_value(&cert)?) } else { interlace_text(&cert) };
            Ok((text, verdict_code(cert.verdict)))
        }
        Command::Certify(CertifyCommand::Combination { f, g, lambda, mu }) => {
            let cert = certify::check_obreshkoff_combination(
                &parse_poly(f)?,
                &parse_poly(g)?,
                &parse_rational(lambda)?,
                &parse_rational(mu)?,
            )?;
            let text = if cli.json { json_line(serde_json::to_value(&cert)?) } else { real_root_text(&cert) };
            Ok((text, verdict_code(cert.verdict)))
        }
        Command::Verify(a) => {
            let p = load_poset(&a.poset, cap)?;
            let ids: Vec<Identity> = if a.identity == "all" {
                Identity::ALL.into_iter().filter(|i| p.rank() >= i.min_rank()).collect()
            } else {
                vec![a.identity.parse()?]
            };
            let reports = ids.iter().map(|&id| engine::verify_identity(&p, id)).collect::<Result<Vec<_>, _>>()?;
            let pass = reports.iter().all(|r| r.pass);
            let text = if cli.json {
                json_line(serde_json::to_value(&reports)?)
            } else {
                let mut s = String::new();
                for r in &reports {
                    let _ = writeln!(s, "{}: {}", r.identity, if r.pass { "PASS" } else { "FAIL" });
                    let _ = writeln!(s, "  lhs = {}", r.lhs);
                    let _ = writeln!(s, "  rhs = {}", r.rhs);
                }
                s
            };
            Ok((text, verdict_code(pass)))
        }
        Command::Oracle(o) => oracle_command(cli, o),
        Command::Bench(b) => Ok((bench_csv(b.family, b.min_n, b.max_n, EngineConfig { family_shortcuts: b.shortcuts })?, EXIT_OK)),
        Command::Poset(pc) => poset_command(cli, pc),
    }
}

fn poly_output(json: bool, label: &str, method: &str, p: &IntPolynomial) -> String {
    if json {
        json_line(json!({ "name": label, "method": method, "coefficients": p, "text": p.to_string() }))
    } else {
        format!("{p}\n")
    }
}

fn real_root_text(c: &RealRootCertificate) -> String {
    format!(
        "real-rooted: {}\nsquarefree part: {}\ndistinct real roots: {}\n",
        c.verdict, c.squarefree_part, c.real_root_count
    )
}

fn interlace_text(c: &InterlaceCertificate) -> String {
    let list = |roots: &[certify::IsolatedRoot]| {
        roots
            .iter()
            .map(|r| if r.multiplicity > 1 { format!("{}^{}", r.enclosure, r.multiplicity) } else { r.enclosure.to_string() })
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "interlaces: {}\npattern: {}\nroots of f: [{}]\nroots of g: [{}]\n",
        c.verdict,
        c.pattern,
        list(&c.f_roots),
        list(&c.g_roots)
    )
}

fn endpoints(p: &GradedPoset, x: Option<usize>, y: Option<usize>) -> (usize, usize) {
    (x.unwrap_or(p.bottom()), y.unwrap_or(p.top()))
}

fn oracle_command(cli: &Cli, o: &OracleCommand) -> Result<(String, i32)> {
    let (label, poly) = match o {
        OracleCommand::Eulerian { n } => (format!("A_{n}"), oracle::eulerian_bruteforce(*n)?),
        OracleCommand::Derangement { n } => (format!("d_{n}"), oracle::derangement_bruteforce(*n)?),
        OracleCommand::Mobius { poset, x, y } => {
            let p = load_poset(poset, cli.max_elements)?;
            let (x, y) = endpoints(&p, *x, *y);
            let mu = oracle::mobius_hall(&p, x, y)?;
            let text = if cli.json { json_line(json!({ "x": x, "y": y, "mobius": mu })) } else { format!("{mu}\n") };
            return Ok((text, EXIT_OK));
        }
        OracleCommand::Chow { poset, x, y } => {
            let p = load_poset(poset, cli.max_elements)?;
            let (x, y) = endpoints(&p, *x, *y);
            let table = oracle::chow_matrix_inverse(&p)?;
            let h = table.get(x, y).ok_or_else(|| anyhow!("elements {x} and {y} do not form an interval"))?;
            ("H".to_string(), h.clone())
        }
    };
    Ok((poly_output(cli.json, &label, "oracle", &poly), EXIT_OK))
}

fn bench_poset(family: BenchFamily, n: usize) -> Result<Option<GradedPoset>> {
    Ok(match family {
        BenchFamily::Boolean => Some(poset::build_boolean(n)?),
        BenchFamily::Uniform if n >= 2 => Some(poset::build_uniform(n - 1, n)?),
        BenchFamily::Uniform => None,
        BenchFamily::Maxrank => Some(poset::build_max_ranked(&vec![3; n])?),
    })
}

/// CSV rows `family,n,method,wall_ms,memo_entries,coeff_bits_peak`. Every
/// method must produce the same polynomial before any row is emitted for
/// that `n`. Uniform rows use `U_{n-1,n}`, maxrank rows use `c = (3, ..., 3)`.
fn bench_csv(family: BenchFamily, min_n: usize, max_n: usize, config: EngineConfig) -> Result<String> {
    let name = format!("{family:?}").to_lowercase();
    let mut methods = vec![ChowMethod::Definition, ChowMethod::Truncation, ChowMethod::Ncd];
    if family != BenchFamily::Maxrank {
        methods.push(ChowMethod::ClosedForm);
    }
    let mut s = String::from("family,n,method,wall_ms,memo_entries,coeff_bits_peak\n");
    for n in min_n..=max_n {
        let Some(p) = bench_poset(family, n)? else { continue };
        let mut rows = Vec::new();
        let mut reference: Option<IntPolynomial> = None;
        for &m in &methods {
            let start = Instant::now();
            let (h, stats) = engine::chow_with_stats(&p, m, config)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            match &reference {
                Some(r) if *r != h => bail!("{name} n={n}: method {m} disagrees ({h} vs {r})"),
                Some(_) => {}
                None => reference = Some(h),
            }
            rows.push(format!("{name},{n},{m},{ms:.3},{},{}", stats.memo_entries, stats.coeff_bits_peak));
        }
        for r in rows {
            s.push_str(&r);
            s.push('\n');
        }
    }
    Ok(s)
}

fn poset_summary(p: &GradedPoset) -> String {
    let family = p.family().map_or("none".to_string(), |f| format!("{f:?}"));
    format!(
        "elements: {}\nrank: {}\nlevels: {:?}\ncovers: {}\nfamily: {family}\n",
        p.len(),
        p.rank(),
        p.level_sizes(),
        p.cover_count()
    )
}

fn poset_command(cli: &Cli, pc: &PosetCommand) -> Result<(String, i32)> {
    let cap = cli.max_elements;
    let p = match pc {
        PosetCommand::Build { spec } => {
            spec.parse::<BuiltinSpec>()?;
            load_poset(spec, cap)?
        }
        PosetCommand::Validate { poset } => {
            let p = load_poset(poset, cap)?;
            let text = if cli.json {
                json_line(json!({
                    "valid": true,
                    "elements": p.len(),
                    "rank": p.rank(),
                    "levels": p.level_sizes(),
                    "covers": p.cover_count(),
                }))
            } else {
                poset_summary(&p)
            };
            return Ok((text, EXIT_OK));
        }
        PosetCommand::Convert { poset, ops, interval } => {
            let mut p = load_poset(poset, cap)?;
            for op in ops {
                p = match op {
                    PosetOp::Truncate => p.truncate()?,
                    PosetOp::DualTruncate => p.dual_truncate()?,
                    PosetOp::Augment => p.augment(),
                    PosetOp::Dual => p.dual(),
                    PosetOp::Canonical => p.canonical(),
                };
            }
            if let Some(xy) = interval {
                p = p.interval(IntervalHandle { lower: xy[0], upper: xy[1] })?;
            }
            p
        }
        PosetCommand::Random { levels, density } => {
            let seed = cli.seed.ok_or_else(|| anyhow!("poset random needs an explicit --seed"))?;
            let p = poset::random_level_poset(levels, parse_density(density)?, seed)?;
            if p.len() > cap {
                bail!("poset has {} elements, cap is {cap}", p.len());
            }
            p
        }
    };
    Ok((format!("{}\n", p.to_json()), EXIT_OK))
}

/// Parses a rational such as `-3/4` or `2`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse()?;
            if d == BigInt::from(0) {
                bail!("zero denominator in {s:?}");
            }
            BigRational::new(a.trim().parse()?, d)
        }
        None => BigRational::from_integer(s.trim().parse()?),
    };
    Ok(r)
}
