use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;
use topovertex::hierarchy::{
    general_generating_function, hirota_check, tau_coefficients, verify_hirota_suite, GeneratingFunction,
};
use topovertex::qalgebra::parse_rational;
use topovertex::schur::{skew_schur_spec, verify_cauchy, CauchyIdentity, QScale, Spec, SpecInput};
use topovertex::vertex::{topological_vertex, verify_cyclic};
use topovertex::waves::{mirror_curve, verify_waves, wave_coefficients, WaveKind};
use topovertex::web::{
    closed_partition_function_with, glued_partition_function_with, verify_conifold, verify_strip_oracle, BoundaryData,
    Limits, StripDiagram,
};
use topovertex::vertex::VertexCache;
use topovertex::{Error, Partition, Report};

#[derive(Parser)]
#[command(name = "topovertex", version, about = "Topological vertex computations on strip geometries")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for randomly chosen test strips.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Skew Schur function s_{λ/μ} at q^ρ or q^{β+ρ}.
    Schur {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "[]")]
        mu: String,
        /// Shift partition β (empty gives q^ρ).
        #[arg(long, default_value = "[]")]
        shift: String,
    },
    /// Topological vertex C_{αβγ}.
    Vertex {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
    },
    /// Closed product formula for Z^{∅∅}_{β_1⋯β_N}.
    Zclosed {
        #[command(flatten)]
        strip: StripArg,
        /// JSON list of vertical partitions (default all empty).
        #[arg(long)]
        betas: Option<String>,
        #[arg(long, default_value_t = 2)]
        qdeg: u32,
    },
    /// Gluing sum for Z^{α_0 α_N}_{β_1⋯β_N}.
    Zglue {
        #[command(flatten)]
        strip: StripArg,
        #[arg(long)]
        betas: Option<String>,
        #[arg(long, default_value = "[]")]
        alpha0: String,
        #[arg(long = "alphaN", default_value = "[]")]
        alpha_n: String,
        #[arg(long, default_value_t = 2)]
        qdeg: u32,
    },
    /// Brute-force generating functions in explicit variables.
    Zgen {
        #[command(flatten)]
        strip: StripArg,
        #[arg(long, value_enum, default_value_t = GenKind::Z00)]
        which: GenKind,
        /// Vertical partitions for the z-alpha function.
        #[arg(long)]
        betas: Option<String>,
        #[arg(long, default_value_t = 2)]
        nvars: usize,
        #[arg(long, default_value_t = 2)]
        weight_cap: u32,
        #[arg(long, default_value_t = 1)]
        qdeg: u32,
    },
    /// Schur coefficients of Z_n(x) and their Hirota check.
    Tau {
        #[command(subcommand)]
        action: TauAction,
    },
    /// Wave-function coefficients.
    Wave {
        #[command(flatten)]
        strip: StripArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value = "phi")]
        kind: String,
        #[arg(long = "K", default_value_t = 4)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        qdeg: u32,
    },
    /// Mirror curve x = (1 - y^-1) B(y) / C(y) with its classical check.
    Mirror {
        #[command(flatten)]
        strip: StripArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Verification suites; exit status 1 on any mismatch.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Z00,
    ZAlpha,
}

#[derive(Subcommand)]
enum TauAction {
    Coeffs {
        #[command(flatten)]
        strip: StripArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        weight_cap: u32,
        #[arg(long, default_value_t = 2)]
        qdeg: u32,
    },
    Hirota {
        #[command(flatten)]
        strip: StripArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        t_degree: u32,
        #[arg(long, default_value_t = 1)]
        qdeg: u32,
    },
}

#[derive(Subcommand)]
enum Suite {
    Cauchy {
        #[arg(long, value_enum, default_value_t = IdentityKind::Plain)]
        identity: IdentityKind,
        #[arg(long, default_value = "[]")]
        mu: String,
        #[arg(long, default_value = "[]")]
        nu: String,
        /// `formal:N`, `rho` or `shifted:[..]`.
        #[arg(long, default_value = "formal:2")]
        x: String,
        #[arg(long, default_value = "formal:2")]
        y: String,
        /// `formal` or a rational number.
        #[arg(long, default_value = "formal")]
        q: String,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    Cyclic {
        #[arg(long, default_value_t = 2)]
        weight_max: u32,
    },
    StripOracle {
        #[command(flatten)]
        strip: OptionalStrip,
        #[arg(long, default_value_t = 2)]
        qdeg: u32,
        #[arg(long, default_value_t = 2)]
        beta_total: u32,
    },
    ConifoldIdentity {
        #[arg(long, default_value_t = 2)]
        beta_max: u32,
        #[arg(long, default_value_t = 3)]
        qdeg: u32,
        #[arg(long, default_value_t = 3)]
        identity_qdeg: u32,
    },
    Hirota {
        #[arg(long, default_value_t = 4)]
        t_degree: u32,
        #[arg(long, default_value_t = 1)]
        qdeg: u32,
    },
    Wave {
        #[command(flatten)]
        strip: OptionalStrip,
        #[arg(long = "K", default_value_t = 4)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        qdeg: u32,
    },
    Mirror {
        #[command(flatten)]
        strip: StripArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityKind {
    Plain,
    Dual,
    Skew,
    SkewDual,
}

#[derive(Args)]
struct StripArg {
    /// `conifold`, inline JSON or a path to a JSON file.
    #[arg(long, default_value = "conifold")]
    strip: String,
}

#[derive(Args)]
struct OptionalStrip {
    /// `conifold`, inline JSON or a path; a seeded random strip if omitted.
    #[arg(long)]
    strip: Option<String>,
    /// Vertex count of the random strip.
    #[arg(long, default_value_t = 3)]
    vertices: usize,
}

struct Output {
    json: Value,
    text: String,
    passed: bool,
}

impl Output {
    fn value(json: Value, text: String) -> Self {
        Output { json, text, passed: true }
    }

    fn reports(reports: Vec<Report>, extra: Option<(&str, Value, String)>) -> Self {
        let passed = reports.iter().all(Report::passed);
        let list: Vec<Value> = reports
            .iter()
            .map(|r| json!({"name": r.name, "passed": r.passed(), "checks": r.checks, "failures": r.failures}))
            .collect();
        let mut text: Vec<String> = Vec::new();
        let mut obj = serde_json::Map::new();
        if let Some((key, v, t)) = extra {
            obj.insert(key.into(), v);
            text.push(t);
        }
        text.extend(reports.iter().map(Report::to_string));
        obj.insert("passed".into(), Value::Bool(passed));
        obj.insert("reports".into(), Value::Array(list));
        Output { json: Value::Object(obj), text: text.join("\n"), passed }
    }
}

fn partition(s: &str) -> Result<Partition, Error> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("partition {s:?}: {e}")))
}

fn partitions_list(s: &str) -> Result<Vec<Partition>, Error> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("partition list {s:?}: {e}")))
}

fn load_strip(s: &str) -> Result<StripDiagram, Error> {
    if s == "conifold" {
        return Ok(StripDiagram::conifold());
    }
    let text = if s.trim_start().starts_with('{') {
        s.to_string()
    } else {
        std::fs::read_to_string(s).map_err(|e| Error::Parse(format!("cannot read {s}: {e}")))?
    };
    StripDiagram::from_json(&text)
}

fn random_strip(seed: u64, vertices: usize) -> Result<StripDiagram, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    StripDiagram::new((0..vertices.max(1)).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect())
}

fn pick_strip(arg: &OptionalStrip, seed: u64) -> Result<StripDiagram, Error> {
    match &arg.strip {
        Some(s) => load_strip(s),
        None => random_strip(seed, arg.vertices),
    }
}

fn betas_or_empty(strip: &StripDiagram, betas: &Option<String>) -> Result<Vec<Partition>, Error> {
    match betas {
        Some(s) => partitions_list(s),
        None => Ok(vec![Partition::empty(); strip.vertices()]),
    }
}

fn spec_input(s: &str) -> Result<SpecInput, Error> {
    if s == "rho" {
        return Ok(SpecInput::Exact(Spec::rho()));
    }
    if let Some(n) = s.strip_prefix("formal:") {
        return n.parse().map(SpecInput::Formal).map_err(|_| Error::Parse(format!("bad variable count in {s:?}")));
    }
    if let Some(p) = s.strip_prefix("shifted:") {
        return Ok(SpecInput::Exact(Spec::shifted(&partition(p)?)));
    }
    Err(Error::Parse(format!("unknown specialization {s:?}")))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let limits = Limits::from_env();
    let cache = VertexCache::new();
    Ok(match &cli.command {
        Command::Schur { lambda, mu, shift } => {
            let (lam, mu, shift) = (partition(lambda)?, partition(mu)?, partition(shift)?);
            limits.check_weight(lam.weight())?;
            let spec = if shift.is_empty() { Spec::rho() } else { Spec::shifted(&shift) };
            let v = skew_schur_spec(&lam, &mu, &spec);
            Output::value(json!({ "value": to_json(&v) }), v.to_string())
        }
        Command::Vertex { alpha, beta, gamma } => {
            let (a, b, c) = (partition(alpha)?, partition(beta)?, partition(gamma)?);
            for p in [&a, &b, &c] {
                limits.check_weight(p.weight())?;
            }
            let v = topological_vertex(&a, &b, &c);
            Output::value(json!({ "value": to_json(&v) }), v.to_string())
        }
        Command::Zclosed { strip, betas, qdeg } => {
            let strip = load_strip(&strip.strip)?;
            let betas = betas_or_empty(&strip, betas)?;
            let z = closed_partition_function_with(&strip, &betas, *qdeg, &limits)?;
            Output::value(json!({ "series": to_json(&z) }), z.to_string())
        }
        Command::Zglue { strip, betas, alpha0, alpha_n, qdeg } => {
            let strip = load_strip(&strip.strip)?;
            let boundary =
                BoundaryData { alpha0: partition(alpha0)?, alpha_n: partition(alpha_n)?, betas: betas_or_empty(&strip, betas)? };
            let z = glued_partition_function_with(&strip, &boundary, *qdeg, &limits, &cache)?;
            Output::value(json!({ "series": to_json(&z), "framing": strip.framings() }), z.to_string())
        }
        Command::Zgen { strip, which, betas, nvars, weight_cap, qdeg } => {
            let strip = load_strip(&strip.strip)?;
            let which = match which {
                GenKind::Z00 => GeneratingFunction::Z00Multi,
                GenKind::ZAlpha => GeneratingFunction::ZAlpha { betas: betas_or_empty(&strip, betas)? },
            };
            limits.check_qdeg(*qdeg)?;
            let z = general_generating_function(&strip, &which, *nvars, *weight_cap, *qdeg, &limits)?;
            Output::value(json!({ "series": to_json(&z) }), z.to_string())
        }
        Command::Tau { action } => match action {
            TauAction::Coeffs { strip, n, weight_cap, qdeg } => {
                let strip = load_strip(&strip.strip)?;
                limits.check_weight(*weight_cap)?;
                limits.check_qdeg(*qdeg)?;
                let tau = tau_coefficients(&strip, *n, *weight_cap, *qdeg)?;
                let list: Vec<Value> = tau.coeffs.iter().map(|(l, a)| json!({"lambda": to_json(l), "a": to_json(a)})).collect();
                let text = tau.coeffs.iter().map(|(l, a)| format!("a{l} = {a}")).collect::<Vec<_>>().join("\n");
                Output::value(json!({ "coefficients": list }), text)
            }
            TauAction::Hirota { strip, n, t_degree, qdeg } => {
                let strip = load_strip(&strip.strip)?;
                limits.check_weight(t_degree + 4)?;
                limits.check_qdeg(*qdeg)?;
                let tau = tau_coefficients(&strip, *n, t_degree + 4, *qdeg)?;
                Output::reports(vec![hirota_check(&tau, *t_degree)], None)
            }
        },
        Command::Wave { strip, n, kind, k, qdeg } => {
            let strip = load_strip(&strip.strip)?;
            let kind: WaveKind = kind.parse()?;
            limits.check_qdeg(*qdeg)?;
            let w = wave_coefficients(&strip, *n, kind, *k, *qdeg)?;
            let text = w.coeffs.iter().enumerate().map(|(i, c)| format!("c{i} = {c}")).collect::<Vec<_>>().join("\n");
            Output::value(json!({ "kind": kind.to_string(), "n": n, "coefficients": to_json(&w.coeffs) }), text)
        }
        Command::Mirror { strip, n } => {
            let strip = load_strip(&strip.strip)?;
            let (curve, report) = mirror_curve(&strip, *n)?;
            let text = curve.to_string();
            Output::reports(vec![report], Some(("curve", json!({"B": to_json(&curve.b), "C": to_json(&curve.c), "text": text.clone()}), text)))
        }
        Command::Verify { suite } => verify(suite, cli.seed, &limits)?,
    })
}

fn verify(suite: &Suite, seed: u64, limits: &Limits) -> Result<Output, Error> {
    Ok(match suite {
        Suite::Cauchy { identity, mu, nu, x, y, q, degree } => {
            let (mu, nu) = (partition(mu)?, partition(nu)?);
            let id = match identity {
                IdentityKind::Plain => CauchyIdentity::Plain,
                IdentityKind::Dual => CauchyIdentity::Dual,
                IdentityKind::Skew => CauchyIdentity::Skew { mu, nu },
                IdentityKind::SkewDual => CauchyIdentity::SkewDual { mu, nu },
            };
            let q = if q == "formal" { QScale::Formal } else { QScale::Numeric(parse_rational(q).ok_or_else(|| Error::Parse(format!("bad rational {q:?}")))?) };
            Output::reports(vec![verify_cauchy(&id, &spec_input(x)?, &spec_input(y)?, &q, *degree)], None)
        }
        Suite::Cyclic { weight_max } => {
            limits.check_weight(*weight_max)?;
            Output::reports(vec![verify_cyclic(*weight_max)], None)
        }
        Suite::StripOracle { strip, qdeg, beta_total } => {
            let strip = pick_strip(strip, seed)?;
            limits.check_qdeg(*qdeg)?;
            Output::reports(vec![verify_strip_oracle(&strip, *qdeg, *beta_total, limits)], None)
        }
        Suite::ConifoldIdentity { beta_max, qdeg, identity_qdeg } => {
            limits.check_qdeg((*qdeg).max(*identity_qdeg))?;
            Output::reports(vec![verify_conifold(*beta_max, *qdeg, *identity_qdeg, limits)], None)
        }
        Suite::Hirota { t_degree, qdeg } => {
            limits.check_qdeg(*qdeg)?;
            Output::reports(vec![verify_hirota_suite(*t_degree, *qdeg)], None)
        }
        Suite::Wave { strip, k, qdeg } => {
            let strip = pick_strip(strip, seed)?;
            limits.check_qdeg(*qdeg)?;
            let mut reports = Vec::new();
            for n in 1..=strip.vertices() {
                for kind in [WaveKind::Phi, WaveKind::Psi] {
                    reports.push(verify_waves(&strip, n, kind, *k, *qdeg));
                }
            }
            Output::reports(reports, None)
        }
        Suite::Mirror { strip, n } => {
            let strip = load_strip(&strip.strip)?;
            let (curve, report) = mirror_curve(&strip, *n)?;
            Output::reports(vec![report], Some(("curve", Value::String(curve.to_string()), curve.to_string())))
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BlowUp(_) => 3,
        Error::RouteMismatch(_) => 1,
        _ => 2,
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => emit(&serde_json::to_string_pretty(&out.json).expect("valid JSON")),
                Format::Text => emit(&out.text),
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            match cli.format {
                Format::Json => emit(&json!({"error": e.to_string(), "exit": code}).to_string()),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(code)
        }
    }
}
