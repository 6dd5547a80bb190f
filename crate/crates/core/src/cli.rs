//! Command-line front end. Parsing validates every numeric input; execution
//! dispatches to the library and renders text, CSV or JSON.
//!
//! Exit codes: 0 success, 1 verification failure or a non-symplectic factor,
//! 2 input or I/O error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{is_prime, primes_up_to};
use crate::error::{Error, Result};
use crate::heckechar::{induced_factor, AntiCycChar, ImagQuadField};
use crate::localfactor::{format_rational, LocalFactor};
use crate::modform::{read_eigenfile, CurveData, Gl2Source};
use crate::predictor::{
    dirichlet_coeffs, eval_partial, predict_siegel, transfer_object, verify_range, Construction, Identity,
    LObject, PiLocal, SiegelPrediction, Status, Transfer, VerifyInputs, VerifyReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "siegel-lift", version, about = "Local data of Siegel forms from GL(2) transfers")]
struct Cli {
    #[command(subcommand)]
    command: Sub,

    /// Output format [default: from the --out extension, else text].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args, Debug, Clone, Default)]
struct InputArgs {
    /// Weierstrass coefficients `a1,a2,a3,a4,a6`.
    #[arg(long, allow_hyphen_values = true)]
    curve: Option<String>,
    /// Conductor of the curve (inferred when every bad prime is multiplicative).
    #[arg(long)]
    conductor: Option<u64>,
    /// Hecke eigenvalue table.
    #[arg(long)]
    eigenfile: Option<PathBuf>,
    /// Discriminant of the imaginary quadratic field.
    #[arg(long = "D", allow_negative_numbers = true)]
    disc: Option<i64>,
    /// Half-weight of the Hecke character.
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Table of a_p.
    Ap {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 100)]
        pmax: u64,
    },
    /// GL(2) Euler factor at one prime.
    Factor {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        p: u64,
    },
    /// Symmetric-cube factor at one prime.
    Sym3 {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        p: u64,
    },
    /// Euler factor of an induced Hecke character.
    Induce {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        p: u64,
    },
    /// Check identities prime by prime.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Identity names, comma separated, or `all`.
        #[arg(long, default_value = "all", value_delimiter = ',')]
        identity: Vec<String>,
        #[arg(long, default_value_t = 100)]
        pmax: u64,
    },
    /// Predicted Siegel form.
    Predict {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 100)]
        pmax: u64,
    },
    /// Dirichlet coefficients a_1..a_X.
    Lcoeffs {
        #[command(flatten)]
        input: InputArgs,
        /// gl2, sym3, tensor, ext2, std or zeta.
        #[arg(long, default_value = "gl2")]
        transfer: String,
        #[arg(long = "X")]
        x: usize,
    },
    /// Partial sum of the Dirichlet series.
    Eval {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "gl2")]
        transfer: String,
        #[arg(long = "X")]
        x: usize,
        #[arg(long)]
        s: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Ap,
    Factor,
    Sym3,
    Induce,
    Verify,
    Predict,
    Lcoeffs,
    Eval,
}

/// Where the GL(2) datum comes from. Eigenvalue files are read at execution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gl2Input {
    Curve(CurveData),
    Eigenfile(PathBuf),
}

/// L-object selected by `--transfer`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Zeta,
    Transfer(Transfer),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandPlan {
    pub command: CommandKind,
    pub gl2: Option<Gl2Input>,
    pub chi: Option<AntiCycChar>,
    pub pmax: Option<u64>,
    pub prime: Option<u64>,
    pub identities: Vec<Identity>,
    pub target: Option<Target>,
    pub x: Option<usize>,
    pub s: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

fn format_for(out: Option<&Path>) -> Format {
    match out.and_then(Path::extension).and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        _ => Format::Text,
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn check_prime(p: u64) -> Result<u64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(usage(format!("--p {p}: {p} is not prime")))
    }
}

impl InputArgs {
    fn gl2(&self) -> Result<Option<Gl2Input>> {
        match (&self.curve, &self.eigenfile) {
            (Some(_), Some(_)) => Err(usage("--curve and --eigenfile are mutually exclusive")),
            (Some(s), None) => {
                let mut c = CurveData::parse(s).map_err(|e| usage(format!("--curve: {e}")))?;
                if let Some(n) = self.conductor {
                    if n == 0 {
                        return Err(usage("--conductor must be positive"));
                    }
                    c = c.with_conductor(n);
                }
                Ok(Some(Gl2Input::Curve(c)))
            }
            (None, Some(path)) => {
                if self.conductor.is_some() {
                    return Err(usage("--conductor applies to --curve only"));
                }
                Ok(Some(Gl2Input::Eigenfile(path.clone())))
            }
            (None, None) => {
                if self.conductor.is_some() {
                    return Err(usage("--conductor given without --curve"));
                }
                Ok(None)
            }
        }
    }

    fn chi(&self) -> Result<Option<AntiCycChar>> {
        match (self.disc, self.m) {
            (None, None) => Ok(None),
            (Some(d), Some(m)) => {
                let field = ImagQuadField::new(d).map_err(|e| usage(format!("--D: {e}")))?;
                AntiCycChar::new(field, m).map(Some).map_err(|e| usage(format!("--m: {e}")))
            }
            (Some(_), None) => Err(usage("--D needs --m")),
            (None, Some(_)) => Err(usage("--m needs --D")),
        }
    }
}

fn parse_target(s: &str) -> Result<Target> {
    if s == "zeta" {
        return Ok(Target::Zeta);
    }
    Transfer::from_name(s)
        .map(Target::Transfer)
        .ok_or_else(|| usage(format!("--transfer: unknown transfer {s:?}")))
}

fn parse_identities(names: &[String]) -> Result<Vec<Identity>> {
    let mut out = Vec::new();
    for name in names {
        if name == "all" {
            return Ok(Vec::new());
        }
        let id = Identity::from_name(name).ok_or_else(|| usage(format!("--identity: unknown identity {name:?}")))?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    Ok(out)
}

fn plan_from(cli: Cli) -> Result<CommandPlan> {
    let mut plan = CommandPlan {
        command: CommandKind::Ap,
        gl2: None,
        chi: None,
        pmax: None,
        prime: None,
        identities: Vec::new(),
        target: None,
        x: None,
        s: None,
        format: cli.format.unwrap_or_else(|| format_for(cli.out.as_deref())),
        out: cli.out,
        jobs: cli.jobs,
    };
    if plan.jobs == Some(0) {
        return Err(usage("--jobs must be positive"));
    }
    let input = match cli.command {
        Sub::Ap { input, pmax } => {
            plan.command = CommandKind::Ap;
            plan.pmax = Some(pmax);
            input
        }
        Sub::Factor { input, p } => {
            plan.command = CommandKind::Factor;
            plan.prime = Some(check_prime(p)?);
            input
        }
        Sub::Sym3 { input, p } => {
            plan.command = CommandKind::Sym3;
            plan.prime = Some(check_prime(p)?);
            input
        }
        Sub::Induce { input, p } => {
            plan.command = CommandKind::Induce;
            plan.prime = Some(check_prime(p)?);
            input
        }
        Sub::Verify { input, identity, pmax } => {
            plan.command = CommandKind::Verify;
            plan.identities = parse_identities(&identity)?;
            plan.pmax = Some(pmax);
            input
        }
        Sub::Predict { input, pmax } => {
            plan.command = CommandKind::Predict;
            plan.pmax = Some(pmax);
            input
        }
        Sub::Lcoeffs { input, transfer, x } => {
            plan.command = CommandKind::Lcoeffs;
            plan.target = Some(parse_target(&transfer)?);
            plan.x = Some(x);
            input
        }
        Sub::Eval { input, transfer, x, s } => {
            plan.command = CommandKind::Eval;
            plan.target = Some(parse_target(&transfer)?);
            plan.x = Some(x);
            if !s.is_finite() {
                return Err(usage("--s must be finite"));
            }
            plan.s = Some(s);
            input
        }
    };
    plan.gl2 = input.gl2()?;
    plan.chi = input.chi()?;

    let needs_gl2 = match plan.command {
        CommandKind::Induce => false,
        CommandKind::Verify => plan.identities.iter().any(|&id| id != Identity::Sym2Ind),
        CommandKind::Lcoeffs | CommandKind::Eval => plan.target != Some(Target::Zeta),
        _ => true,
    };
    if needs_gl2 && plan.gl2.is_none() && !(plan.command == CommandKind::Verify && plan.chi.is_some()) {
        return Err(usage("a GL(2) input is required: --curve or --eigenfile"));
    }
    if plan.command == CommandKind::Verify && plan.gl2.is_none() && plan.chi.is_none() {
        return Err(usage("verify needs --curve, --eigenfile or --D/--m"));
    }
    if plan.command == CommandKind::Induce && plan.chi.is_none() {
        return Err(usage("induce needs --D and --m"));
    }
    Ok(plan)
}

/// Parse a full argument vector (program name first).
pub fn parse<I, T>(argv: I) -> Result<CommandPlan>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| usage(e.render().to_string().trim_end()))?;
    plan_from(cli)
}

fn load_gl2(input: &Gl2Input) -> Result<Gl2Source> {
    Ok(match input {
        Gl2Input::Curve(c) => Gl2Source::Curve(c.clone()),
        Gl2Input::Eigenfile(path) => Gl2Source::Newform(read_eigenfile(path)?),
    })
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn coeff_list(f: &LocalFactor) -> String {
    f.coeffs().iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct ApRow {
    p: u64,
    reduction: String,
    ap: String,
}

fn render_ap(eta: &Gl2Source, pmax: u64, format: Format) -> Result<String> {
    let rows = primes_up_to(pmax)
        .into_iter()
        .map(|p| {
            eta.local(p).map(|l| ApRow {
                p,
                reduction: l.kind.to_string(),
                ap: l.ap.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("p,reduction,ap\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{}", r.p, r.reduction, r.ap);
            }
            s
        }
        Format::Text => {
            let mut s = format!("# {}\n{:>6}  {:<9}  {}\n", eta.label(), "p", "reduction", "a_p");
            for r in &rows {
                let _ = writeln!(s, "{:>6}  {:<9}  {}", r.p, r.reduction, r.ap);
            }
            s
        }
    })
}

#[derive(Serialize)]
struct FactorOut<'a> {
    label: String,
    kind: &'a str,
    factor: &'a LocalFactor,
}

fn render_factor(label: String, kind: &str, f: &LocalFactor, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => to_json(&FactorOut { label, kind, factor: f })?,
        Format::Csv => format!(
            "label,kind,p,weight,coeffs\n{},{},{},{},{}\n",
            csv_field(&label),
            kind,
            f.prime(),
            f.weight(),
            coeff_list(f)
        ),
        Format::Text => format!("{label} at p = {} ({kind}, weight {}): {f}\n", f.prime(), f.weight()),
    })
}

fn render_report(report: &VerifyReport, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => to_json(report)?,
        Format::Text => report.to_table(),
        Format::Csv => {
            let mut s = String::from("p,identity,status,reason,lhs,rhs\n");
            for e in &report.entries {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    e.prime,
                    e.identity,
                    e.status,
                    csv_field(e.reason.as_deref().unwrap_or("")),
                    e.lhs.as_ref().map(coeff_list).unwrap_or_default(),
                    e.rhs.as_ref().map(coeff_list).unwrap_or_default()
                );
            }
            s
        }
    })
}

fn render_prediction(pred: &SiegelPrediction, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => to_json(pred)?,
        Format::Csv => {
            let mut s = String::from("p,spin,std\n");
            for (p, spin) in &pred.spin_factors {
                let std = pred.std_factors.get(p).map(coeff_list).unwrap_or_default();
                let _ = writeln!(s, "{p},{},{std}", coeff_list(spin));
            }
            s
        }
        Format::Text => {
            let c = &pred.arch.classification;
            let exps: Vec<String> = pred.arch.exponents.iter().map(u64::to_string).collect();
            let mut s = String::new();
            let _ = writeln!(s, "form:          {}", pred.label);
            let _ = writeln!(s, "level:         {}", pred.level);
            let _ = writeln!(
                s,
                "archimedean:   {{{}}} (weight {}), {}, {}",
                exps.join(", "),
                pred.arch.weight,
                if c.regular { "regular" } else { "not regular" },
                if c.algebraic { "algebraic" } else { "not algebraic" }
            );
            let _ = writeln!(
                s,
                "siegel weight: {}",
                c.siegel.map_or("none".to_string(), |w| w.to_string())
            );
            let _ = writeln!(s, "cap: {}, endoscopic: {}", pred.flags.cap, pred.flags.endoscopic);
            for note in &pred.iwahori_note {
                let _ = writeln!(s, "level structure: {note}");
            }
            let _ = writeln!(s, "\n{:>6}  spin / standard", "p");
            for (p, spin) in &pred.spin_factors {
                let _ = writeln!(s, "{p:>6}  {spin}");
                if let Some(std) = pred.std_factors.get(p) {
                    let _ = writeln!(s, "{:>6}  {std}", "");
                }
            }
            for note in &pred.notes {
                let _ = writeln!(s, "note: {note}");
            }
            let _ = writeln!(
                s,
                "verification: {} ok, {} failed, {} skipped",
                pred.verification.count(Status::Ok),
                pred.verification.count(Status::Fail),
                pred.verification.count(Status::Skipped)
            );
            s
        }
    })
}

fn build_object(plan: &CommandPlan, eta: Option<&Gl2Source>, x: usize) -> Result<LObject> {
    match plan.target.expect("lcoeffs and eval carry a target") {
        Target::Zeta => Ok(LObject::zeta(x as u64)),
        Target::Transfer(t) => transfer_object(
            eta.expect("checked at parse time"),
            plan.chi.as_ref(),
            t,
            x as u64,
        ),
    }
}

/// Identities for `verify`: the requested ones, or every applicable one, plus
/// the Ramanujan check when eigenvalues come from a file.
fn verify_identities(plan: &CommandPlan) -> Vec<Identity> {
    let mut ids = if plan.identities.is_empty() {
        match (plan.gl2.is_some(), plan.chi.is_some()) {
            (true, false) => vec![Identity::TensorSq, Identity::Sym3Ext2, Identity::Ramanujan],
            (true, true) => vec![
                Identity::TensorSq,
                Identity::Sym2Ind,
                Identity::ThmbExt2,
                Identity::Ramanujan,
            ],
            (false, _) => vec![Identity::Sym2Ind],
        }
    } else {
        plan.identities.clone()
    };
    if matches!(plan.gl2, Some(Gl2Input::Eigenfile(_))) && !ids.contains(&Identity::Ramanujan) {
        ids.push(Identity::Ramanujan);
    }
    ids.sort();
    ids
}

/// Rendered output and exit code, or an error.
fn run_plan(plan: &CommandPlan) -> Result<(String, i32)> {
    let eta = plan.gl2.as_ref().map(load_gl2).transpose()?;
    let format = plan.format;
    match plan.command {
        CommandKind::Ap => Ok((render_ap(eta.as_ref().unwrap(), plan.pmax.unwrap(), format)?, 0)),
        CommandKind::Factor => {
            let eta = eta.as_ref().unwrap();
            let local = eta.local(plan.prime.unwrap())?;
            Ok((render_factor(eta.label(), &local.kind.to_string(), &local.factor, format)?, 0))
        }
        CommandKind::Sym3 => {
            let construction = Construction::sym3(eta.unwrap())?;
            let p = plan.prime.unwrap();
            match construction.local(p)? {
                PiLocal::Good(f) => Ok((render_factor(construction.label(), "good", &f, format)?, 0)),
                PiLocal::Steinberg(f) => {
                    Ok((render_factor(construction.label(), "steinberg", &f, format)?, 0))
                }
                PiLocal::Skipped(reason) => Err(Error::Input(format!("p = {p}: {reason}"))),
            }
        }
        CommandKind::Induce => {
            let chi = plan.chi.as_ref().unwrap();
            let p = plan.prime.unwrap();
            let f = induced_factor(chi, p)?;
            let kind = format!("{:?}", chi.field().splitting(p)).to_lowercase();
            Ok((render_factor(format!("Ind {}", chi.label()), &kind, &f, format)?, 0))
        }
        CommandKind::Verify => {
            let inputs = VerifyInputs {
                eta: eta.as_ref(),
                chi: plan.chi.as_ref(),
            };
            let primes = primes_up_to(plan.pmax.unwrap());
            let report = verify_range(&verify_identities(plan), inputs, &primes)?;
            let code = if report.is_ok() { 0 } else { 1 };
            Ok((render_report(&report, format)?, code))
        }
        CommandKind::Predict => {
            let eta = eta.unwrap();
            let construction = match &plan.chi {
                None => Construction::sym3(eta)?,
                Some(chi) => Construction::tensor(eta, *chi)?,
            };
            let pred = predict_siegel(&construction, plan.pmax.unwrap())?;
            let code = if pred.verification.is_ok() { 0 } else { 1 };
            Ok((render_prediction(&pred, format)?, code))
        }
        CommandKind::Lcoeffs => {
            let x = plan.x.unwrap();
            let obj = build_object(plan, eta.as_ref(), x)?;
            let coeffs = dirichlet_coeffs(&obj, x)?;
            let out = match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        label: &'a str,
                        weight: i64,
                        unsupported: &'a [u64],
                        coeffs: Vec<String>,
                    }
                    to_json(&Out {
                        label: &obj.label,
                        weight: obj.weight(),
                        unsupported: &obj.unsupported,
                        coeffs: coeffs.iter().map(ToString::to_string).collect(),
                    })?
                }
                Format::Csv => {
                    let mut s = String::from("n,a_n\n");
                    for (i, a) in coeffs.iter().enumerate() {
                        let _ = writeln!(s, "{},{a}", i + 1);
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("# {} (weight {})\n", obj.label, obj.weight());
                    if !obj.unsupported.is_empty() {
                        let _ = writeln!(s, "# factor 1 at unsupported primes {:?}", obj.unsupported);
                    }
                    for (i, a) in coeffs.iter().enumerate() {
                        let _ = writeln!(s, "{:>6}  {a}", i + 1);
                    }
                    s
                }
            };
            Ok((out, 0))
        }
        CommandKind::Eval => {
            let x = plan.x.unwrap();
            let obj = build_object(plan, eta.as_ref(), x)?;
            let r = eval_partial(&obj, plan.s.unwrap(), x)?;
            let out = match format {
                Format::Json => to_json(&r)?,
                Format::Csv => format!("s,X,value,tail_bound\n{},{},{:.12e},{:.6e}\n", r.s, r.x, r.value, r.tail_bound),
                Format::Text => format!(
                    "{} at s = {}: {:.12} (X = {}, |tail| <= {:.3e})\n",
                    obj.label, r.s, r.value, r.x, r.tail_bound
                ),
            };
            Ok((out, 0))
        }
    }
}

fn write_out(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotSymplectic(_) => 1,
        _ => 2,
    }
}

/// Run a validated plan, writing the rendered output to `stdout` (or the
/// `--out` file) and diagnostics to stderr.
pub fn execute(plan: &CommandPlan, stdout: &mut dyn Write) -> i32 {
    let result = match plan.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Input(format!("--jobs: {e}")))
            .and_then(|pool| pool.install(|| run_plan(plan))),
        None => run_plan(plan),
    };
    match result.and_then(|(text, code)| write_out(plan.out.as_deref(), &text, stdout).map(|()| code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Parse and execute; `--help` and `--version` print and return 0.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            eprintln!("{}", e.render().to_string().trim_end());
            return 2;
        }
    };
    match plan_from(cli) {
        Ok(plan) => execute(&plan, stdout),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
