//! Command-line front end: reads algebra and metric documents, prints one JSON report.

mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use solvlie::derivations::{derivation_algebra, skew_derivations};
use solvlie::exactlin::{Matrix, FLOAT_TOL, Q};
use solvlie::fixtures::run_corpus;
use solvlie::geometry::{
    einstein_check, einstein_extension, heber_properties, pre_einstein, ricci_operator,
    ricci_oracle_koszul, soliton_solve, InnerProduct,
};
use solvlie::io::{AlgebraDocument, CertificateDocument, MetricDocument};
use solvlie::lie::{invariant_profile, nilradical, verify_declared_nilradical, LieAlgebra};
use solvlie::modification::{
    equivalence_check, sigma, standard_modification, standard_position_algebra, EquivalenceWitness,
};
use solvlie::Error;

use render::Render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl ModeArg {
    fn as_str(self) -> &'static str {
        match self {
            ModeArg::Exact => "exact",
            ModeArg::Float => "float",
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "solvlie", version, about = "Solvable Lie algebras, solitons and Einstein extensions")]
struct Cli {
    /// Arithmetic mode; defaults to $SOLVLIE_MODE, then exact.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Verdict tolerance in float mode.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct AlgebraArg {
    algebra: PathBuf,
}

#[derive(Args, Debug)]
struct MetricArgs {
    algebra: PathBuf,
    /// Metric document; the identity Gram matrix when omitted.
    #[arg(long)]
    metric: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Jacobi identity (and a declared nilradical, if present).
    Validate(AlgebraArg),
    /// Isomorphism invariants.
    Profile(AlgebraArg),
    /// Basis of the nilradical.
    Nilradical(AlgebraArg),
    /// Basis of the derivation algebra.
    Derivations(AlgebraArg),
    /// Basis of the skew-adjoint derivations.
    SkewDerivations(MetricArgs),
    /// Completely solvable representative of the modification class.
    Sigma(AlgebraArg),
    /// One step of the standard modification.
    StdMod(MetricArgs),
    /// Iterated standard modification.
    StdPosition(MetricArgs),
    /// Modification equivalence of two algebras.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        /// Candidate isomorphism between the sigma images.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Ricci operator, checked against an independent Koszul computation.
    Ricci(MetricArgs),
    /// Algebraic Ricci soliton certificate.
    Soliton(MetricArgs),
    /// Pre-Einstein derivation of a nilpotent algebra.
    PreEinstein(AlgebraArg),
    /// Whether the metric is Einstein.
    EinsteinCheck(MetricArgs),
    /// Einstein extension of a solvsoliton by its pre-Einstein derivation.
    ExtendEinstein(MetricArgs),
    /// Run the embedded example corpus.
    Fixtures,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Profile(_) => "profile",
            Command::Nilradical(_) => "nilradical",
            Command::Derivations(_) => "derivations",
            Command::SkewDerivations(_) => "skew-derivations",
            Command::Sigma(_) => "sigma",
            Command::StdMod(_) => "std-mod",
            Command::StdPosition(_) => "std-position",
            Command::Equiv { .. } => "equiv",
            Command::Ricci(_) => "ricci",
            Command::Soliton(_) => "soliton",
            Command::PreEinstein(_) => "pre-einstein",
            Command::EinsteinCheck(_) => "einstein-check",
            Command::ExtendEinstein(_) => "extend-einstein",
            Command::Fixtures => "fixtures",
        }
    }
}

/// Failure of a command, with its exit code.
struct Failure {
    code: String,
    detail: String,
    exit: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
        Failure {
            code: e.code().to_string(),
            detail: e.to_string(),
            exit,
        }
    }
}

type Outcome = Result<Map<String, Value>, Failure>;

/// Inputs loaded on the exact path before any conversion.
struct Inputs {
    algebras: Vec<(LieAlgebra<Q>, AlgebraDocument)>,
    metric: Option<InnerProduct<Q>>,
    certificate: Option<Matrix<Q>>,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: "IoError".into(),
        detail: format!("{}: {e}", path.display()),
        exit: 2,
    })
}

fn load_algebra(path: &Path) -> Result<(LieAlgebra<Q>, AlgebraDocument), Failure> {
    let doc = AlgebraDocument::from_json(&read(path)?)?;
    Ok((doc.to_algebra()?, doc))
}

fn load(cmd: &Command) -> Result<Inputs, Failure> {
    let mut inputs = Inputs {
        algebras: Vec::new(),
        metric: None,
        certificate: None,
    };
    match cmd {
        Command::Validate(a)
        | Command::Profile(a)
        | Command::Nilradical(a)
        | Command::Derivations(a)
        | Command::Sigma(a)
        | Command::PreEinstein(a) => inputs.algebras.push(load_algebra(&a.algebra)?),
        Command::SkewDerivations(m)
        | Command::StdMod(m)
        | Command::StdPosition(m)
        | Command::Ricci(m)
        | Command::Soliton(m)
        | Command::EinsteinCheck(m)
        | Command::ExtendEinstein(m) => {
            let (alg, doc) = load_algebra(&m.algebra)?;
            let ip = match &m.metric {
                Some(p) => MetricDocument::from_json(&read(p)?)?.to_inner_product(alg.dim())?,
                None => InnerProduct::identity(alg.dim()),
            };
            inputs.metric = Some(ip);
            inputs.algebras.push((alg, doc));
        }
        Command::Equiv {
            left,
            right,
            certificate,
        } => {
            inputs.algebras.push(load_algebra(left)?);
            inputs.algebras.push(load_algebra(right)?);
            if let Some(p) = certificate {
                let dim = inputs.algebras[0].0.dim();
                inputs.certificate = Some(CertificateDocument::from_json(&read(p)?)?.to_matrix(dim)?);
            }
        }
        Command::Fixtures => {}
    }
    Ok(inputs)
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports are objects"),
    }
}

/// Runs `cmd` on inputs converted to the field `F`.
fn execute<F: Render>(cmd: &Command, inputs: &Inputs, tol: f64) -> Outcome {
    let convert = |a: &LieAlgebra<Q>| a.map_field(F::from_q);
    let alg = inputs.algebras.first().map(|(a, _)| convert(a));
    let alg = || alg.as_ref().expect("command has an algebra");
    let ip = inputs.metric.as_ref().map(|g| g.map_field(F::from_q));
    let ip = || ip.as_ref().expect("command has a metric");
    let report = match cmd {
        Command::Validate(_) => {
            let v = alg().validate()?;
            let mut out = json!({"valid": true, "dim": v.dim, "triples_checked": v.triples_checked});
            if let Some(vectors) = inputs.algebras[0].1.declared_nilradical_vectors()? {
                let vectors: Vec<Vec<F>> = vectors.iter().map(|v| v.iter().map(F::from_q).collect()).collect();
                let sub = verify_declared_nilradical(alg(), &vectors)?;
                out["declared_nilradical"] = render::subspace(&sub);
            }
            out
        }
        Command::Profile(_) => json!({"profile": invariant_profile(alg())?}),
        Command::Nilradical(_) => json!({"nilradical": render::subspace(&nilradical(alg())?)}),
        Command::Derivations(_) => {
            let der = derivation_algebra(alg());
            json!({"dim": der.dim(), "basis": der.basis.iter().map(render::matrix).collect::<Vec<_>>()})
        }
        Command::SkewDerivations(_) => {
            let der = skew_derivations(alg(), ip())?;
            json!({"dim": der.dim(), "basis": der.basis.iter().map(render::matrix).collect::<Vec<_>>()})
        }
        Command::Sigma(_) => {
            let (s, map) = sigma(alg())?;
            json!({
                "algebra": render::algebra(&s),
                "modification": {
                    "phi": render::matrix(&map.phi),
                    "closed": map.closed,
                    "compact_imaginary": map.compact_imaginary,
                    "preserves_source": map.preserves_source,
                    "normal": map.normal,
                },
            })
        }
        Command::StdMod(_) => {
            let s = standard_modification(alg(), ip())?;
            json!({"algebra": render::algebra(&s), "changed": !s.same_structure(alg())})
        }
        Command::StdPosition(_) => {
            let (s, steps) = standard_position_algebra(alg(), ip())?;
            json!({"algebra": render::algebra(&s), "steps": steps})
        }
        Command::Equiv { .. } => {
            let right = convert(&inputs.algebras[1].0);
            let cert = inputs.certificate.as_ref().map(|m| m.map(F::from_q));
            let verdict = equivalence_check(alg(), &right, cert.as_ref())?;
            let witness = match &verdict.witness {
                EquivalenceWitness::Isomorphism(m) => json!({"isomorphism": render::matrix(m)}),
                EquivalenceWitness::Invariant { field, left, right } => {
                    json!({"invariant": field, "left": left, "right": right})
                }
                EquivalenceWitness::Reason(r) => json!({"reason": r}),
            };
            json!({"status": verdict.status.as_str(), "witness": witness})
        }
        Command::Ricci(_) => {
            let ric = ricci_operator(alg(), ip())?;
            let oracle = ricci_oracle_koszul(alg(), ip())?;
            let scale = 1.0 + ric.max_magnitude();
            let agrees = (0..ric.rows())
                .all(|r| (0..ric.cols()).all(|c| (ric[(r, c)].clone() - oracle[(r, c)].clone()).within(tol, scale)));
            json!({"ricci": render::matrix(&ric), "oracle_agrees": agrees})
        }
        Command::Soliton(_) => {
            let cert = soliton_solve(alg(), ip())?;
            let scale = 1.0 + cert.d.max_magnitude() + cert.c.magnitude();
            let soliton = cert.residual_sq.within(tol, scale * scale);
            let kind = if !soliton {
                "none"
            } else if cert.flat {
                "flat/steady"
            } else if cert.c.within(tol, scale) {
                "steady"
            } else if cert.c.to_f64() < 0.0 {
                "expanding"
            } else {
                "shrinking"
            };
            json!({
                "c": cert.c.render(),
                "D": render::matrix(&cert.d),
                "residual": cert.residual_sq.render(),
                "algebraic": cert.algebraic && soliton,
                "soliton": soliton,
                "flat": cert.flat,
                "classification": kind,
            })
        }
        Command::PreEinstein(_) => {
            let p = pre_einstein(alg())?;
            json!({"phi": render::matrix(&p.phi), "eigenvalues": render::spectrum(&p.eigenvalues)})
        }
        Command::EinsteinCheck(_) => {
            let r = einstein_check(alg(), ip())?;
            let scale = 1.0 + r.c.magnitude();
            json!({
                "is_einstein": r.residual_sq.within(tol, scale * scale),
                "c": r.c.render(),
                "residual": r.residual_sq.render(),
            })
        }
        Command::ExtendEinstein(_) => {
            let cert = soliton_solve(alg(), ip())?;
            let ext = einstein_extension(alg(), ip(), &cert)?;
            let heber = heber_properties(&ext.algebra, &ext.metric)?;
            let scale = 1.0 + ext.check.c.magnitude();
            json!({
                "algebra": render::algebra(&ext.algebra),
                "gram": render::matrix(ext.metric.gram()),
                "t": ext.t.render(),
                "derivation": render::matrix(&ext.derivation),
                "pre_einstein": render::matrix(&ext.pre_einstein.phi),
                "is_einstein": ext.check.residual_sq.within(tol, scale * scale),
                "c": ext.check.c.render(),
                "residual": ext.check.residual_sq.render(),
                "heber": {
                    "complement_abelian": heber.complement_abelian,
                    "complement_semisimple": heber.complement_semisimple,
                    "spectrum": heber.spectrum.as_deref().map(render::spectrum),
                    "scaling": heber.scaling.as_ref().map(Render::render),
                    "passes": heber.passes(),
                },
            })
        }
        Command::Fixtures => {
            let checks = run_corpus();
            let failed = checks.iter().filter(|c| !c.passed).count();
            let table: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            if failed > 0 {
                return Err(Failure {
                    code: "FixtureFailed".into(),
                    detail: serde_json::to_string(&table).expect("table serializes"),
                    exit: 1,
                });
            }
            json!({"checks": table, "passed": checks.len(), "failed": 0})
        }
    };
    Ok(obj(report))
}

fn mode_from_env() -> Result<Option<ModeArg>, Failure> {
    match std::env::var("SOLVLIE_MODE") {
        Ok(v) if !v.is_empty() => ModeArg::from_str(&v, true).map(Some).map_err(|_| Failure {
            code: "UsageError".into(),
            detail: format!("SOLVLIE_MODE must be `exact` or `float`, got `{v}`"),
            exit: 2,
        }),
        _ => Ok(None),
    }
}

fn run(cli: &Cli) -> (Map<String, Value>, u8) {
    let mut head = Map::new();
    head.insert("command".into(), json!(cli.command.name()));
    let mode = match cli.mode.map(Ok).or_else(|| mode_from_env().transpose()) {
        Some(Ok(m)) => m,
        None => ModeArg::Exact,
        Some(Err(f)) => return (failure(head, f), 2),
    };
    let tol = cli.tol.unwrap_or(FLOAT_TOL);
    if cli.tol.is_some() && mode == ModeArg::Exact {
        let f = Failure {
            code: "UsageError".into(),
            detail: "--tol applies to float mode only".into(),
            exit: 2,
        };
        return (failure(head, f), 2);
    }
    if !(tol.is_finite() && tol > 0.0) {
        let f = Failure {
            code: "UsageError".into(),
            detail: format!("--tol must be positive, got {tol}"),
            exit: 2,
        };
        return (failure(head, f), 2);
    }
    let inputs = match load(&cli.command) {
        Ok(i) => i,
        Err(f) => {
            let exit = f.exit;
            return (failure(with_mode(head, mode, tol), f), exit);
        }
    };
    let (outcome, mode) = match mode {
        ModeArg::Exact => match execute::<Q>(&cli.command, &inputs, tol) {
            Err(f) if f.code == "IrrationalSpectrum" => {
                head.insert("fallback".into(), json!("IrrationalSpectrum"));
                (execute::<f64>(&cli.command, &inputs, tol), ModeArg::Float)
            }
            other => (other, ModeArg::Exact),
        },
        ModeArg::Float => (execute::<f64>(&cli.command, &inputs, tol), ModeArg::Float),
    };
    let head = with_mode(head, mode, tol);
    match outcome {
        Ok(body) => {
            let mut out = head;
            out.extend(body);
            (out, 0)
        }
        Err(f) => {
            let exit = f.exit;
            (failure(head, f), exit)
        }
    }
}

fn with_mode(mut head: Map<String, Value>, mode: ModeArg, tol: f64) -> Map<String, Value> {
    head.insert("mode".into(), json!(mode.as_str()));
    if mode == ModeArg::Float {
        head.insert("tol".into(), json!(tol));
    }
    head
}

fn failure(mut head: Map<String, Value>, f: Failure) -> Map<String, Value> {
    head.insert("error".into(), json!(f.code));
    head.insert("detail".into(), json!(f.detail));
    head
}

fn emit(report: &Map<String, Value>, pretty: bool, out: Option<&Path>) -> Result<(), String> {
    let text = if pretty {
        serde_json::to_string_pretty(report)
    } else {
        serde_json::to_string(report)
    }
    .expect("report serializes");
    match out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("{}: {e}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let report = json!({"error": "UsageError", "detail": e.kind().to_string(), "usage": e.to_string()});
            println!("{report}");
            return ExitCode::from(2);
        }
    };
    let (report, code) = run(&cli);
    if let Err(e) = emit(&report, cli.pretty, cli.out.as_deref()) {
        println!("{}", json!({"error": "IoError", "detail": e}));
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
