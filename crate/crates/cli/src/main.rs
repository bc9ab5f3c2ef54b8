//! `hgpb`: build hypergraph products, compute exact barriers and run the
//! checks from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage/parse/IO error,
//! 3 a state cap was exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hgpb_core::barrier::{classical_barrier, quantum_barrier, SectorField};
use hgpb_core::codes::{emit_dense_matrix, parse_auto, InputFormat};
use hgpb_core::logicals::{all_canonical_ops, canonical_basis_ops};
use hgpb_core::verify::{self, Caps, VerifyReport};
use hgpb_core::{BitMatrix, ClassicalCode, Error, HgpCode, PauliKind, Sector};

#[derive(Parser, Debug)]
#[command(
    name = "hgpb",
    version,
    about = "Hypergraph product codes and exact energy barriers"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// log2 of the state cap for sector searches.
    #[arg(long, global = true, default_value_t = 24, value_parser = clap::value_parser!(u32).range(1..=40))]
    max_dim: u32,

    /// log2 of the state cap for full Pauli searches.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=40))]
    pauli_max_dim: u32,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = SectorArg::Both)]
    sector: SectorArg,

    /// Input format; sniffed from the first line when omitted.
    #[arg(long, global = true, value_enum)]
    fmt: Option<FmtArg>,

    /// Add `elapsed_ms` to verify reports. Makes output nondeterministic.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parameters of a classical code.
    Info { path: PathBuf },
    /// Build the product and write `PREFIX.hx`, `PREFIX.hz`, `PREFIX.params.json`.
    Hgp {
        h1: PathBuf,
        h2: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact energy barriers.
    Barrier {
        #[command(subcommand)]
        kind: BarrierCmd,
    },
    /// Canonical logical basis of the product, one record per line.
    Logicals { h1: PathBuf, h2: PathBuf },
    /// Run one check, or every check on the built-in instances.
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        paths: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum BarrierCmd {
    /// Barrier of a classical code.
    Classical { path: PathBuf },
    /// Barrier of the product code.
    Quantum { h1: PathBuf, h2: PathBuf },
    /// Smallest barrier over nontrivial canonical operators.
    Canonical { h1: PathBuf, h2: PathBuf },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SectorArg {
    Z,
    X,
    Both,
}

impl SectorArg {
    fn sector(self) -> Sector {
        match self {
            SectorArg::Z => Sector::Z,
            SectorArg::X => Sector::X,
            SectorArg::Both => Sector::Both,
        }
    }

    fn kinds(self) -> &'static [PauliKind] {
        match self {
            SectorArg::Z => &[PauliKind::Z],
            SectorArg::X => &[PauliKind::X],
            SectorArg::Both => &[PauliKind::Z, PauliKind::X],
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FmtArg {
    Alist,
    Dense,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Claim {
    Css,
    Lemma1,
    Thm1,
    Lemma2,
    Lemma3,
    Lemma4,
    Prop1,
    Main,
    CssRestriction,
    Deform,
    All,
}

enum Failure {
    Usage(String),
    Io(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::CapExceeded { .. }) => 3,
            _ => 2,
        }
    }

    fn to_json(&self) -> Value {
        let (error, detail) = match self {
            Failure::Usage(d) => ("UsageError", d.clone()),
            Failure::Io(d) => ("IoError", d.clone()),
            Failure::Core(e) => (e.kind(), e.to_string()),
        };
        json!({ "error": error, "detail": detail })
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Lines to print and whether every check passed.
struct Outcome {
    values: Vec<Value>,
    passed: bool,
}

impl Outcome {
    fn one(v: Value) -> Self {
        Self {
            values: vec![v],
            passed: true,
        }
    }
}

struct Ctx {
    caps: Caps,
    seed: u64,
    sector: SectorArg,
    fmt: Option<InputFormat>,
    timing: bool,
}

impl Ctx {
    fn read_code(&self, path: &Path) -> Result<ClassicalCode, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        Ok(parse_auto(&text, self.fmt)?)
    }

    fn read_pair(&self, h1: &Path, h2: &Path) -> Result<(ClassicalCode, ClassicalCode), Failure> {
        Ok((self.read_code(h1)?, self.read_code(h2)?))
    }
}

fn stem(p: &Path) -> String {
    p.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| p.display().to_string())
}

fn matrix_json(m: &BitMatrix) -> Value {
    let rows: Vec<Vec<u8>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j) as u8).collect())
        .collect();
    json!(rows)
}

fn kind_name(kind: PauliKind) -> &'static str {
    match kind {
        PauliKind::X => "X",
        PauliKind::Z => "Z",
    }
}

fn cmd_info(ctx: &Ctx, path: &Path) -> CmdResult {
    let c = ctx.read_code(path)?;
    let p = c.parameters(ctx.caps.sector)?;
    Ok(Outcome::one(json!({
        "n": c.n(),
        "r": c.r(),
        "rank": c.rank(),
        "k": c.k(),
        "d": p.d,
        "w_c": c.max_row_weight(),
        "w_q": c.max_col_weight(),
    })))
}

fn cmd_hgp(ctx: &Ctx, h1: &Path, h2: &Path, out: &Path) -> CmdResult {
    let (c1, c2) = ctx.read_pair(h1, h2)?;
    let code = HgpCode::build(&c1, &c2);
    let (w_c, w_q) = code.sparsity();
    let d = match code.parameters(ctx.caps.sector) {
        Ok(p) => json!(p.d),
        Err(Error::NoLogicals) => json!("inf"),
        Err(e) => return Err(e.into()),
    };
    let prefix = out.display().to_string();
    let hx_path = format!("{prefix}.hx");
    let hz_path = format!("{prefix}.hz");
    let params_path = format!("{prefix}.params.json");
    let params = json!({
        "n": code.num_qubits(),
        "k": code.num_logicals(),
        "d": d,
        "w_c": w_c,
        "w_q": w_q,
        "hx_shape": [code.hx().rows(), code.hx().cols()],
        "hz_shape": [code.hz().rows(), code.hz().cols()],
        "css": code.css_check(),
    });
    let write = |path: &str, body: String| {
        fs::write(path, body).map_err(|e| Failure::Io(format!("{path}: {e}")))
    };
    write(&hx_path, emit_dense_matrix(code.hx()))?;
    write(&hz_path, emit_dense_matrix(code.hz()))?;
    write(&params_path, format!("{params}\n"))?;
    Ok(Outcome::one(json!({
        "params": params,
        "files": [hx_path, hz_path, params_path],
    })))
}

fn cmd_barrier(ctx: &Ctx, kind: &BarrierCmd) -> CmdResult {
    match kind {
        BarrierCmd::Classical { path } => {
            let c = ctx.read_code(path)?;
            let r = classical_barrier(&c, ctx.caps.sector)?;
            Ok(Outcome::one(serde_json::to_value(&r).expect("plain data")))
        }
        BarrierCmd::Quantum { h1, h2 } => {
            let (c1, c2) = ctx.read_pair(h1, h2)?;
            let code = HgpCode::build(&c1, &c2);
            let r = quantum_barrier(&code, ctx.sector.sector(), ctx.caps.sector)?;
            let mut v = serde_json::to_value(&r).expect("plain data");
            v["sector"] = json!(ctx.sector.sector());
            Ok(Outcome::one(v))
        }
        BarrierCmd::Canonical { h1, h2 } => {
            let (c1, c2) = ctx.read_pair(h1, h2)?;
            let code = HgpCode::build(&c1, &c2);
            if code.num_logicals() == 0 {
                return Err(Error::NoLogicals.into());
            }
            let mut out = Map::new();
            let mut best = usize::MAX;
            for &kind in ctx.sector.kinds() {
                let field = SectorField::new(&code, kind, ctx.caps.sector)?;
                let mut min: Option<(usize, _)> = None;
                for op in all_canonical_ops(&code, kind, ctx.caps.sector)? {
                    let v = field.value(op.realized.part(kind))?;
                    if !matches!(&min, Some((m, _)) if *m <= v) {
                        min = Some((v, op));
                    }
                }
                let (value, op) = min.expect("k > 0 gives canonical operators");
                let r = field.barrier_to(op.realized.part(kind))?;
                best = best.min(value);
                out.insert(
                    kind_name(kind).to_lowercase(),
                    json!({
                        "value": value,
                        "lambda": matrix_json(&op.lambda),
                        "kappa": matrix_json(&op.kappa),
                        "barrier": r,
                    }),
                );
            }
            out.insert("value".into(), json!(best));
            out.insert("sector".into(), json!(ctx.sector.sector()));
            Ok(Outcome::one(Value::Object(out)))
        }
    }
}

fn cmd_logicals(ctx: &Ctx, h1: &Path, h2: &Path) -> CmdResult {
    let (c1, c2) = ctx.read_pair(h1, h2)?;
    let code = HgpCode::build(&c1, &c2);
    let mut values = Vec::new();
    for &kind in ctx.sector.kinds() {
        for op in canonical_basis_ops(&code, kind)? {
            values.push(json!({
                "type": kind_name(kind),
                "lambda": matrix_json(&op.lambda),
                "kappa": matrix_json(&op.kappa),
                "support": op.realized.support(),
                "weight": op.realized.weight(),
            }));
        }
    }
    Ok(Outcome {
        values,
        passed: true,
    })
}

fn report_outcome(reports: Vec<VerifyReport>, with_summary: bool) -> Outcome {
    let passed = reports.iter().all(|r| r.passed());
    let mut values: Vec<Value> = reports
        .iter()
        .map(|r| serde_json::to_value(r).expect("plain data"))
        .collect();
    if with_summary {
        values.push(verify::summary(&reports));
    }
    Outcome { values, passed }
}

fn cmd_verify(ctx: &Ctx, claim: Claim, paths: &[PathBuf]) -> CmdResult {
    let no_inputs = matches!(claim, Claim::Lemma4 | Claim::All);
    if no_inputs && !paths.is_empty() {
        return Err(Failure::Usage(
            format!("{claim:?} takes no input files").to_lowercase(),
        ));
    }
    if no_inputs {
        let reports = match claim {
            Claim::All => verify::run_suite(ctx.seed, ctx.caps, ctx.timing)?,
            _ => vec![timed(ctx, || {
                Ok(verify::check_lemma4(&verify::lemma4_family()))
            })?],
        };
        return Ok(report_outcome(reports, claim == Claim::All));
    }
    let [p1, p2] = paths else {
        return Err(Failure::Usage("expected two parity-check files".into()));
    };
    let (c1, c2) = ctx.read_pair(p1, p2)?;
    let code = HgpCode::build(&c1, &c2);
    let name = format!("{}x{}", stem(p1), stem(p2));
    let (cap, seed) = (ctx.caps.sector, ctx.seed);
    let report = timed(ctx, || match claim {
        Claim::Css => Ok(verify::check_css(&code, &name)),
        Claim::Lemma1 => verify::check_lemma1(&code, &name, cap),
        Claim::Thm1 => verify::check_theorem1(&code, &name, verify::THEOREM1_SAMPLES, seed, cap),
        Claim::Lemma2 => verify::check_lemma2(&code, &name, cap),
        Claim::Lemma3 => verify::check_lemma3(&code, &name, cap),
        Claim::Prop1 => verify::check_proposition1(&code, &name, cap),
        Claim::Main => verify::check_main_equality(&c1, &c2, &name, cap),
        Claim::CssRestriction => verify::check_css_restriction(&code, &name, ctx.caps.pauli),
        Claim::Deform => {
            verify::check_deformation(&code, &name, verify::DEFORMATION_SAMPLES, seed, cap)
        }
        Claim::Lemma4 | Claim::All => unreachable!("handled above"),
    })?;
    Ok(report_outcome(vec![report], false))
}

fn timed(
    ctx: &Ctx,
    f: impl FnOnce() -> hgpb_core::Result<VerifyReport>,
) -> hgpb_core::Result<VerifyReport> {
    let start = std::time::Instant::now();
    let mut r = f()?;
    if ctx.timing {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

fn render_text(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn emit(values: &[Value], format: OutputFormat) -> io::Result<()> {
    let mut out = io::stdout().lock();
    for (i, v) in values.iter().enumerate() {
        match format {
            OutputFormat::Json => writeln!(out, "{v}")?,
            OutputFormat::Text => {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "{}", render_text(v))?;
            }
        }
    }
    out.flush()
}

fn run(cli: &Cli) -> CmdResult {
    let ctx = Ctx {
        caps: Caps {
            sector: 1u64 << cli.max_dim,
            pauli: 1u64 << cli.pauli_max_dim,
        },
        seed: cli.seed,
        sector: cli.sector,
        fmt: cli.fmt.map(|f| match f {
            FmtArg::Alist => InputFormat::Alist,
            FmtArg::Dense => InputFormat::Dense,
        }),
        timing: cli.timing,
    };
    match &cli.command {
        Command::Info { path } => cmd_info(&ctx, path),
        Command::Hgp { h1, h2, out } => cmd_hgp(&ctx, h1, h2, out),
        Command::Barrier { kind } => cmd_barrier(&ctx, kind),
        Command::Logicals { h1, h2 } => cmd_logicals(&ctx, h1, h2),
        Command::Verify { claim, paths } => cmd_verify(&ctx, *claim, paths),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let f = Failure::Usage(e.to_string().trim_end().to_string());
            eprintln!("{}", f.to_json());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            // A closed pipe (e.g. `| head`) just ends the output.
            let _ = emit(&outcome.values, cli.format);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.exit_code())
        }
    }
}
