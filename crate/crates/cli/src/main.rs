use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use accordion_tau::accordion::accordion_complex;
use accordion_tau::complexes::{dual_graph, LabeledComplex};
use accordion_tau::geometry::{validate_dissection, Dissection, DissectionJson};
use accordion_tau::quiver::{
    algebra_basis, check_gentle, quiver_of_dissection, GentleQuiver, QuiverJson,
};
use accordion_tau::rigidity::silting_complex;
use accordion_tau::verify::{self, CheckOutcome, Selection, Summary, Theorem};
use accordion_tau::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

const DEFAULT_MAX_M: usize = 9;
const SPOT_CHECK_SAMPLES: usize = 16;

#[derive(Parser)]
#[command(
    name = "accordion-tau",
    version,
    about = "Accordion complexes of dissections and 2-term silting complexes of their gentle algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Accordion complex of a dissection and its exchange graph.
    Accordion {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// 2-term silting complex of a gentle quiver or of a dissection's quiver.
    Silting {
        #[command(flatten)]
        input: Input,
        /// Build the quiver of the given dissection.
        #[arg(long)]
        from_dissection: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Quiver, gentleness report and path-algebra basis.
    Quiver {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Check the isomorphisms between accordion and silting complexes.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = TheoremArg::All)]
        theorem: TheoremArg,
        /// Run over every nonempty dissection of the m-gon.
        #[arg(long, value_name = "M")]
        exhaustive: Option<usize>,
        /// Comma-separated quiver vertices J for the idempotent check.
        #[arg(long)]
        subset: Option<String>,
        /// Seed for randomized direct-sum spot checks.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Input {
    /// Number of polygon vertices.
    #[arg(long)]
    m: Option<usize>,
    /// Inline diagonals, e.g. `0-2,0-3`.
    #[arg(long, requires = "m")]
    diagonals: Option<String>,
    /// Dissection JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Quiver JSON file.
    #[arg(long)]
    quiver: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Main,
    Idempotent,
    Nested,
    All,
}

impl TheoremArg {
    fn selection(self) -> Selection {
        match self {
            TheoremArg::Main => Selection::only(Theorem::Main),
            TheoremArg::Idempotent => Selection::only(Theorem::Idempotent),
            TheoremArg::Nested => Selection::only(Theorem::Nested),
            TheoremArg::All => Selection::ALL,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(
                Error::BandDetected { .. }
                | Error::InfiniteDimensional { .. }
                | Error::NotGentle(_),
            ) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(s) | Failure::Io(s) => f.write_str(s),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

enum Source {
    Dissection(Dissection),
    Quiver(GentleQuiver),
}

fn max_m() -> CliResult<usize> {
    match std::env::var("ACCORDION_TAU_MAX_M") {
        Ok(v) => v.parse().map_err(|_| {
            Failure::Usage(format!("ACCORDION_TAU_MAX_M must be an integer, got {v:?}"))
        }),
        Err(_) => Ok(DEFAULT_MAX_M),
    }
}

fn check_cap(m: usize) -> CliResult<()> {
    let limit = max_m()?;
    if m > limit {
        return Err(Error::SizeLimit {
            what: "polygon size m",
            size: m,
            limit,
        }
        .into());
    }
    Ok(())
}

fn read(path: &PathBuf) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_diagonals(s: &str) -> CliResult<Vec<(usize, usize)>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (a, b) = t
                .split_once('-')
                .ok_or_else(|| Failure::Usage(format!("diagonal {t:?} is not of the form a-b")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::Usage(format!("bad vertex {x:?} in diagonal {t:?}")))
            };
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

impl Input {
    fn source(&self) -> CliResult<Option<Source>> {
        let given = [
            self.diagonals.is_some() || self.m.is_some(),
            self.input.is_some(),
            self.quiver.is_some(),
        ];
        if given.iter().filter(|&&g| g).count() > 1 {
            return Err(Failure::Usage(
                "give exactly one of --m/--diagonals, --input, --quiver".into(),
            ));
        }
        if let Some(m) = self.m {
            check_cap(m)?;
            let pairs = parse_diagonals(self.diagonals.as_deref().unwrap_or(""))?;
            return Ok(Some(Source::Dissection(validate_dissection(m, &pairs)?)));
        }
        if let Some(path) = &self.input {
            let dj: DissectionJson = serde_json::from_str(&read(path)?).map_err(Error::from)?;
            check_cap(dj.m)?;
            return Ok(Some(Source::Dissection(dj.validate()?)));
        }
        if let Some(path) = &self.quiver {
            let qj: QuiverJson = serde_json::from_str(&read(path)?).map_err(Error::from)?;
            return Ok(Some(Source::Quiver(qj.build()?)));
        }
        Ok(None)
    }

    fn require(&self) -> CliResult<Source> {
        self.source()?.ok_or_else(|| {
            Failure::Usage("no input: give --m/--diagonals, --input or --quiver".into())
        })
    }

    fn dissection(&self) -> CliResult<Dissection> {
        match self.require()? {
            Source::Dissection(d) => Ok(d),
            Source::Quiver(_) => Err(Failure::Usage(
                "this command needs a dissection, not a quiver".into(),
            )),
        }
    }
}

fn complex_output(
    c: &LabeledComplex,
    name: &str,
    header: Value,
    format: Format,
) -> CliResult<String> {
    let g = dual_graph(c)?;
    Ok(match format {
        Format::Json => {
            let mut v = header;
            v["complex"] = c.to_json();
            v["exchange_graph"] = json!({"nodes": g.nodes, "edges": g.edges});
            pretty(&v)
        }
        Format::Dot => {
            let labels: Vec<String> = c.vertices().iter().map(|v| v.payload.describe()).collect();
            g.to_dot(name, &labels)
        }
        Format::Text => format!(
            "{name}\n{}exchange graph: {} nodes, {} edges\n",
            c.to_text(),
            g.nodes.len(),
            g.edges.len()
        ),
    })
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_accordion(input: &Input, format: Format) -> CliResult<String> {
    let d = input.dissection()?;
    let c = accordion_complex(&d)?;
    complex_output(
        &c,
        &d.to_string(),
        json!({"dissection": d.to_json()}),
        format,
    )
}

fn cmd_silting(input: &Input, from_dissection: bool, format: Format) -> CliResult<String> {
    let (q, mut header) = match input.require()? {
        Source::Quiver(_) if from_dissection => {
            return Err(Failure::Usage(
                "--from-dissection needs a dissection input".into(),
            ));
        }
        Source::Quiver(q) => (q, json!({})),
        Source::Dissection(d) if from_dissection => (
            quiver_of_dissection(&d)?,
            json!({"dissection": d.to_json()}),
        ),
        Source::Dissection(_) => {
            return Err(Failure::Usage(
                "a dissection input needs --from-dissection (or pass --quiver)".into(),
            ))
        }
    };
    header["quiver"] = serde_json::to_value(q.to_json()).map_err(Error::from)?;
    let c = silting_complex(&q)?;
    complex_output(&c, "silting complex", header, format)
}

fn cmd_quiver(input: &Input, format: Format) -> CliResult<String> {
    let q = match input.require()? {
        Source::Dissection(d) => quiver_of_dissection(&d)?,
        Source::Quiver(q) => q,
    };
    let violations = check_gentle(&q);
    if !violations.is_empty() {
        return Err(Error::NotGentle(violations.join("; ")).into());
    }
    let alg = algebra_basis(&q)?;
    Ok(match format {
        Format::Json => pretty(&json!({"quiver": q.to_json(), "algebra": alg.to_json()})),
        Format::Text => {
            let mut s = format!(
                "{} vertices: {}\n",
                q.num_vertices(),
                q.vertices().join(" ")
            );
            for a in q.arrows() {
                s += &format!(
                    "  {}: {} -> {}\n",
                    a.id,
                    q.vertices()[a.src],
                    q.vertices()[a.tgt]
                );
            }
            for &(a, b) in q.relations() {
                s += &format!("  {}.{} = 0\n", q.arrows()[a].id, q.arrows()[b].id);
            }
            s += &format!("algebra dimension {}\n", alg.dim());
            for p in alg.paths() {
                s += &format!("  {}\n", p.describe(&q));
            }
            s
        }
        Format::Dot => {
            return Err(Failure::Usage(
                "quiver supports --format json or text".into(),
            ))
        }
    })
}

fn parse_subset(q: &GentleQuiver, s: &str) -> CliResult<Vec<usize>> {
    let mut j: Vec<usize> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            q.vertex_index(t)
                .ok_or_else(|| Failure::Usage(format!("unknown quiver vertex {t:?} in --subset")))
        })
        .collect::<CliResult<_>>()?;
    j.sort_unstable();
    j.dedup();
    if j.is_empty() {
        return Err(Error::EmptySubset.into());
    }
    Ok(j)
}

#[derive(Serialize)]
struct SpotChecks {
    seed: u64,
    samples: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct VerifyReport {
    pass: bool,
    summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    spot_checks: Option<SpotChecks>,
}

fn single_checks(
    source: Source,
    theorem: TheoremArg,
    subset: Option<&str>,
) -> CliResult<(Vec<CheckOutcome>, GentleQuiver)> {
    match source {
        Source::Dissection(d) => {
            let q = quiver_of_dissection(&d)?;
            let outcomes = match subset {
                Some(s) => {
                    if theorem != TheoremArg::Idempotent {
                        return Err(Failure::Usage("--subset needs --theorem idempotent".into()));
                    }
                    let j = parse_subset(&q, s)?;
                    let full = silting_complex(&q)?;
                    vec![verify::check_idempotent(&q, &full, &j, &d.to_string())?]
                }
                None => verify::checks_for_dissection(&d, theorem.selection())?,
            };
            Ok((outcomes, q))
        }
        Source::Quiver(q) => {
            if theorem != TheoremArg::Idempotent {
                return Err(Failure::Usage(
                    "a quiver input supports only --theorem idempotent".into(),
                ));
            }
            let outcomes = match subset {
                Some(s) => {
                    let j = parse_subset(&q, s)?;
                    vec![verify::check_idempotent(
                        &q,
                        &silting_complex(&q)?,
                        &j,
                        "quiver",
                    )?]
                }
                None => verify::idempotent_all(&q, "quiver")?,
            };
            Ok((outcomes, q))
        }
    }
}

fn cmd_verify(
    input: &Input,
    theorem: TheoremArg,
    exhaustive: Option<usize>,
    subset: Option<&str>,
    seed: Option<u64>,
    format: Format,
) -> CliResult<(String, bool)> {
    let mut summary = Summary::default();
    let mut quivers = Vec::new();
    match exhaustive {
        Some(m) => {
            if input.source()?.is_some() || subset.is_some() {
                return Err(Failure::Usage(
                    "--exhaustive takes no input or --subset".into(),
                ));
            }
            check_cap(m)?;
            summary = verify::exhaustive(m, theorem.selection(), |_| true)?;
            if seed.is_some() {
                for d in accordion_tau::geometry::enumerate_dissections(m)? {
                    if !d.is_empty() {
                        quivers.push(quiver_of_dissection(&d)?);
                    }
                }
            }
        }
        None => {
            let (outcomes, q) = single_checks(input.require()?, theorem, subset)?;
            summary.absorb(outcomes);
            quivers.push(q);
        }
    }
    let spot_checks = match seed {
        Some(seed) => {
            let mut failures = Vec::new();
            for (i, q) in quivers.iter().enumerate() {
                let found = verify::direct_sum_spot_checks(
                    q,
                    seed.wrapping_add(i as u64),
                    SPOT_CHECK_SAMPLES,
                )?;
                failures.extend(found.into_iter().map(|f| format!("quiver {i}: {f}")));
            }
            Some(SpotChecks {
                seed,
                samples: SPOT_CHECK_SAMPLES * quivers.len(),
                failures,
            })
        }
        None => None,
    };
    let pass = summary.pass() && spot_checks.as_ref().is_none_or(|s| s.failures.is_empty());
    let report = VerifyReport {
        pass,
        summary,
        spot_checks,
    };
    let text = match format {
        Format::Json => pretty(&report),
        Format::Text => verify_text(&report),
        Format::Dot => {
            return Err(Failure::Usage(
                "verify supports --format json or text".into(),
            ))
        }
    };
    Ok((text, pass))
}

fn verify_text(r: &VerifyReport) -> String {
    let s = &r.summary;
    let mut out = format!(
        "{}: {} instances, {} checks, {} passed\n",
        if r.pass { "PASS" } else { "FAIL" },
        s.instances,
        s.checks,
        s.passed
    );
    for (t, n) in &s.by_theorem {
        out += &format!("  {t}: {n} checks\n");
    }
    for f in &s.failures {
        out += &format!("  failed {} {}: {:?}\n", f.theorem, f.instance, f.status);
        for line in f.failures.iter().chain(&f.structure) {
            out += &format!("    {line}\n");
        }
    }
    if let Some(sc) = &r.spot_checks {
        out += &format!(
            "spot checks (seed {}): {} samples, {} failures\n",
            sc.seed,
            sc.samples,
            sc.failures.len()
        );
        for f in &sc.failures {
            out += &format!("    {f}\n");
        }
    }
    out
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let (text, pass, out) = match &cli.command {
        Command::Accordion { input, output } => {
            (cmd_accordion(input, output.format)?, true, output)
        }
        Command::Silting {
            input,
            from_dissection,
            output,
        } => (
            cmd_silting(input, *from_dissection, output.format)?,
            true,
            output,
        ),
        Command::Quiver { input, output } => (cmd_quiver(input, output.format)?, true, output),
        Command::Verify {
            input,
            theorem,
            exhaustive,
            subset,
            seed,
            output,
        } => {
            let (text, pass) = cmd_verify(
                input,
                *theorem,
                *exhaustive,
                subset.as_deref(),
                *seed,
                output.format,
            )?;
            (text, pass, output)
        }
    };
    emit(&text, out.out.as_ref())?;
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
