//! Command-line front end: argument model, input loading and report
//! rendering. `main.rs` only wires [`run`] to the process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use quiverlab_core::forms::enumerate_roots;
use quiverlab_core::lab::{verify, LabError};
use quiverlab_core::necklace::{bracket, NecklaceError};
use quiverlab_core::quiver::{document_from_json, format_rational, parse_document, parse_rational, ParseError};
use quiverlab_core::sigma::{
    decide, enumerate_sigma, enumerate_types, int_json, local_quiver, rep_type_json, SigmaError,
};
use quiverlab_core::{
    DimVector, FormsContext, NecklaceWord, Quiver, QuiverDocument, RepType, RootKind, SigmaQuery, Weights,
};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "quiverlab",
    version,
    about = "Exact computations for deformed preprojective algebras of quivers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euler and Tits matrices; chi and p of alpha when given
    Forms(Common),
    /// Positive roots inside a box (default: alpha)
    Roots(Common),
    /// Necklace bracket of two closed words
    Bracket(BracketArgs),
    /// Dimension vectors of simple representations inside a box
    Sigma(Common),
    /// Representation types of semisimple representations of dimension alpha
    Types(Common),
    /// Local quiver settings of representation types
    Local(LocalArgs),
    /// Minimality of alpha and the equivalent smoothness conditions
    Decide(Common),
    /// Numerical witness of the decision from sampled fibre points
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Quiver file, in the text format or JSON
    pub input: PathBuf,
    /// Dimension vector, e.g. `v0=2,vinf=1` or `2,1`; overrides the file
    #[arg(long)]
    pub alpha: Option<String>,
    /// Weights, e.g. `v0=1,vinf=-2` or `1/2,-1/2`; overrides the file
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Search box, same syntax as `--alpha`
    #[arg(long = "box")]
    pub bound: Option<String>,
    /// Emit JSON
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    /// Emit human-readable text (default)
    #[arg(long)]
    pub text: bool,
}

#[derive(Debug, Args)]
pub struct BracketArgs {
    #[command(flatten)]
    pub common: Common,
    /// First necklace word, arrows separated by spaces (`a a*`) or `e_<vertex>`
    #[arg(long)]
    pub w1: String,
    /// Second necklace word
    #[arg(long)]
    pub w2: String,
}

#[derive(Debug, Args)]
pub struct LocalArgs {
    #[command(flatten)]
    pub common: Common,
    /// Representation type such as `(1,(1);1,(1))`; default: every type
    #[arg(long = "type")]
    pub rep_type: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled points
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    /// Residual and singular-value tolerance
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

/// Failure of an invocation, split by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: the input is well formed but the question has no answer.
    Domain { kind: &'static str, message: String },
    /// Exit 2: unreadable file, malformed input or flag values.
    Usage { kind: &'static str, message: String },
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Domain { .. } => 1,
            Failure::Usage { .. } => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Domain { kind, .. } | Failure::Usage { kind, .. } => kind,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Domain { message, .. } | Failure::Usage { message, .. } => message,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "message": self.message() } })
    }
}

fn usage(kind: &'static str, message: impl Into<String>) -> Failure {
    Failure::Usage {
        kind,
        message: message.into(),
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        usage("parse", e.to_string())
    }
}

impl From<SigmaError> for Failure {
    fn from(e: SigmaError) -> Self {
        let kind = match e {
            SigmaError::TraceObstruction => "traceObstruction",
            SigmaError::ZeroAlpha => "zeroAlpha",
            SigmaError::NotInSigma(_) => "notInSigma",
            SigmaError::InvalidType(_) => "invalidType",
            SigmaError::Quiver(_) => return usage("dimension", e.to_string()),
        };
        Failure::Domain {
            kind,
            message: e.to_string(),
        }
    }
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        match e {
            LabError::Sigma(s) => s.into(),
            LabError::TraceObstruction => SigmaError::TraceObstruction.into(),
            LabError::NoConvergence { .. } => Failure::Domain {
                kind: "noConvergence",
                message: e.to_string(),
            },
            other => Failure::Domain {
                kind: "lab",
                message: other.to_string(),
            },
        }
    }
}

/// A finished report in both renderings.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

/// Output of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Forms(c) | Command::Roots(c) | Command::Sigma(c) | Command::Types(c) | Command::Decide(c) => c,
            Command::Bracket(b) => &b.common,
            Command::Local(l) => &l.common,
            Command::Verify(v) => &v.common,
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let json_mode = cli.command.common().json;
    match execute(&cli.command) {
        Ok(report) => Outcome {
            code: 0,
            stdout: if json_mode {
                render_json(&report.json)
            } else {
                report.text
            },
            stderr: String::new(),
        },
        Err(failure) => Outcome {
            code: failure.exit_code(),
            stdout: if json_mode {
                render_json(&failure.to_json())
            } else {
                String::new()
            },
            stderr: format!("error: {}\n", failure.message()),
        },
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn execute(command: &Command) -> Result<Report, Failure> {
    let common = command.common();
    let input = Input::load(common)?;
    match command {
        Command::Forms(_) => forms(&input),
        Command::Roots(_) => roots(&input),
        Command::Bracket(b) => bracket_report(&input, &b.w1, &b.w2),
        Command::Sigma(_) => sigma(&input),
        Command::Types(_) => types(&input),
        Command::Local(l) => local(&input, l.rep_type.as_deref()),
        Command::Decide(_) => decide_report(&input),
        Command::Verify(v) => verify_report(&input, v),
    }
}

/// The quiver file after applying command-line overrides.
#[derive(Debug)]
pub struct Input {
    pub quiver: Quiver,
    pub alpha: Option<DimVector>,
    pub lambda: Option<Weights>,
    pub bound: Option<DimVector>,
}

impl Input {
    pub fn load(common: &Common) -> Result<Input, Failure> {
        let src = std::fs::read_to_string(&common.input)
            .map_err(|e| usage("io", format!("{}: {e}", common.input.display())))?;
        let doc = parse_input(&src)?;
        let QuiverDocument { quiver, alpha, lambda } = doc;
        let alpha = match &common.alpha {
            Some(text) => Some(parse_dim_flag(&quiver, "--alpha", text)?),
            None => alpha,
        };
        let lambda = match &common.lambda {
            Some(text) => Some(parse_weight_flag(&quiver, text)?),
            None => lambda,
        };
        let bound = match &common.bound {
            Some(text) => Some(parse_dim_flag(&quiver, "--box", text)?),
            None => None,
        };
        Ok(Input {
            quiver,
            alpha,
            lambda,
            bound,
        })
    }

    fn alpha(&self) -> Result<&DimVector, Failure> {
        self.alpha
            .as_ref()
            .ok_or_else(|| usage("missingAlpha", "no dimension vector: give --alpha or an alpha block"))
    }

    fn lambda(&self) -> Weights {
        self.lambda
            .clone()
            .unwrap_or_else(|| Weights::zero(self.quiver.vertex_count()))
    }

    /// `--box`, else alpha.
    fn bound(&self) -> Result<DimVector, Failure> {
        match (&self.bound, &self.alpha) {
            (Some(b), _) | (None, Some(b)) => Ok(b.clone()),
            (None, None) => Err(usage("missingBox", "no search box: give --box or --alpha")),
        }
    }

    fn query(&self) -> Result<SigmaQuery, Failure> {
        let q = SigmaQuery::new(self.quiver.clone(), self.lambda(), self.alpha()?.clone())?;
        Ok(match &self.bound {
            Some(b) => q.with_box(b.clone())?,
            None => q,
        })
    }
}

/// JSON when the first non-blank character is `{`, the text format otherwise.
pub fn parse_input(src: &str) -> Result<QuiverDocument, ParseError> {
    if src.trim_start().starts_with('{') {
        document_from_json(src)
    } else {
        parse_document(src)
    }
}

/// Splits `v0=2,vinf=1` into per-vertex entries (unnamed vertices are 0) or
/// reads a positional list `2,1`.
fn flag_entries<'a>(quiver: &Quiver, flag: &str, text: &'a str) -> Result<Vec<&'a str>, Failure> {
    let n = quiver.vertex_count();
    let items: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.iter().all(|s| !s.contains('=')) {
        if items.len() != n {
            return Err(usage(
                "flag",
                format!("{flag}: expected {n} entries, found {}", items.len()),
            ));
        }
        return Ok(items);
    }
    let mut out = vec![None; n];
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| usage("flag", format!("{flag}: expected vertex=value, found {item:?}")))?;
        let i = quiver
            .vertex_index(name.trim())
            .ok_or_else(|| usage("flag", format!("{flag}: unknown vertex {}", name.trim())))?;
        if out[i].replace(value.trim()).is_some() {
            return Err(usage("flag", format!("{flag}: vertex {} given twice", name.trim())));
        }
    }
    Ok(out.into_iter().map(|v| v.unwrap_or("0")).collect())
}

fn parse_dim_flag(quiver: &Quiver, flag: &str, text: &str) -> Result<DimVector, Failure> {
    flag_entries(quiver, flag, text)?
        .into_iter()
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| usage("flag", format!("{flag}: {s:?} is not a nonnegative integer")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(DimVector)
}

fn parse_weight_flag(quiver: &Quiver, text: &str) -> Result<Weights, Failure> {
    flag_entries(quiver, "--lambda", text)?
        .into_iter()
        .map(|s| parse_rational(s).ok_or_else(|| usage("flag", format!("--lambda: {s:?} is not a rational"))))
        .collect::<Result<Vec<_>, _>>()
        .map(Weights)
}

fn vertex_map(quiver: &Quiver, values: impl IntoIterator<Item = Value>) -> Value {
    Value::Object(quiver.vertices().iter().cloned().zip(values).collect())
}

fn dim_json(quiver: &Quiver, v: &DimVector) -> Value {
    vertex_map(quiver, v.iter().map(|&x| json!(x)))
}

fn weights_json(quiver: &Quiver, w: &Weights) -> Value {
    vertex_map(quiver, w.0.iter().map(|x| json!(format_rational(x))))
}

fn matrix_text(m: &[Vec<i64>]) -> String {
    let width = m.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    m.iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            format!("  [{}]\n", cells.join(" "))
        })
        .collect()
}

fn forms(input: &Input) -> Result<Report, Failure> {
    let q = &input.quiver;
    let ctx = FormsContext::new(q);
    let loop_free: Vec<bool> = (0..q.vertex_count()).map(|i| ctx.is_loop_free(i)).collect();
    let mut json = json!({
        "vertices": q.vertices(),
        "euler": ctx.euler_matrix(),
        "tits": ctx.tits_matrix(),
        "loopFree": loop_free,
    });
    let mut text = format!(
        "vertices: {}\neuler:\n{}tits:\n{}",
        q.vertices().join(" "),
        matrix_text(ctx.euler_matrix()),
        matrix_text(ctx.tits_matrix())
    );
    if let Some(alpha) = &input.alpha {
        let chi: BigInt = ctx.chi(alpha, alpha).map_err(|e| usage("dimension", e.to_string()))?;
        let p = ctx.p(alpha).map_err(|e| usage("dimension", e.to_string()))?;
        json["alpha"] = dim_json(q, alpha);
        json["chi"] = int_json(&chi);
        json["p"] = int_json(&p);
        let _ = writeln!(text, "alpha = {alpha}\nchi(alpha, alpha) = {chi}\np(alpha) = {p}");
    }
    Ok(Report { json, text })
}

fn kind_name(k: RootKind) -> &'static str {
    match k {
        RootKind::Real => "real",
        RootKind::Imaginary => "imaginary",
    }
}

fn roots(input: &Input) -> Result<Report, Failure> {
    let q = &input.quiver;
    let bound = input.bound()?;
    bound
        .check_len(q.vertex_count())
        .map_err(|e| usage("dimension", e.to_string()))?;
    let ctx = FormsContext::new(q);
    let set = enumerate_roots(&ctx, &bound);
    let mut text = format!("positive roots in box {bound}: {}\n", set.len());
    let mut list = Vec::new();
    for (beta, kind) in set.iter() {
        let p = ctx.p(beta).expect("roots have the quiver's length");
        let _ = writeln!(text, "  {beta} {} p={p}", kind_name(kind));
        list.push(json!({ "beta": beta.0, "kind": kind_name(kind), "p": int_json(&p) }));
    }
    Ok(Report {
        json: json!({ "box": dim_json(q, &bound), "count": set.len(), "roots": list }),
        text,
    })
}

fn necklace_failure(which: &str, e: NecklaceError) -> Failure {
    usage("necklace", format!("{which}: {e}"))
}

fn bracket_report(input: &Input, w1: &str, w2: &str) -> Result<Report, Failure> {
    let dq = input.quiver.double();
    let x = NecklaceWord::parse(&dq, w1).map_err(|e| necklace_failure("--w1", e))?;
    let y = NecklaceWord::parse(&dq, w2).map_err(|e| necklace_failure("--w2", e))?;
    let result = bracket(&dq, &x, &y);
    let terms: Vec<Value> = result
        .iter()
        .map(|(w, c)| json!({ "coefficient": format_rational(c), "necklace": w.to_text(&dq), "length": w.len() }))
        .collect();
    let rendered = result.to_text(&dq);
    Ok(Report {
        json: json!({
            "w1": x.to_text(&dq),
            "w2": y.to_text(&dq),
            "terms": terms,
            "text": rendered,
        }),
        text: format!("{rendered}\n"),
    })
}

fn sigma(input: &Input) -> Result<Report, Failure> {
    let q = &input.quiver;
    let bound = input.bound()?;
    let alpha = input.alpha.clone().unwrap_or_else(|| bound.clone());
    let query = SigmaQuery::new(q.clone(), input.lambda(), alpha)?.with_box(bound.clone())?;
    let members = enumerate_sigma(&query);
    let mut text = format!("Sigma_lambda in box {bound}: {}\n", members.len());
    for b in &members {
        let _ = writeln!(text, "  {b}");
    }
    Ok(Report {
        json: json!({
            "box": dim_json(q, &bound),
            "lambda": weights_json(q, query.lambda()),
            "sigma": members.iter().map(|b| json!(b.0)).collect::<Vec<_>>(),
        }),
        text,
    })
}

fn types(input: &Input) -> Result<Report, Failure> {
    let query = input.query()?;
    let q = query.quiver();
    let list = enumerate_types(&query);
    let mut text = format!("representation types of {}: {}\n", query.alpha(), list.len());
    for (t, d) in &list {
        let _ = writeln!(text, "  {t}  dim {d}");
    }
    Ok(Report {
        json: json!({
            "alpha": dim_json(q, query.alpha()),
            "lambda": weights_json(q, query.lambda()),
            "types": list.iter().map(|(t, d)| json!({
                "type": rep_type_json(t),
                "label": t.to_string(),
                "dimension": int_json(d),
            })).collect::<Vec<_>>(),
        }),
        text,
    })
}

fn local(input: &Input, tau: Option<&str>) -> Result<Report, Failure> {
    let query = input.query()?;
    let q = query.quiver();
    let ctx = FormsContext::new(q);
    let p_alpha = ctx.p(query.alpha()).map_err(|e| usage("dimension", e.to_string()))?;
    let chosen: Vec<RepType> = match tau {
        Some(text) => vec![text.parse::<RepType>()?],
        None => enumerate_types(&query).into_iter().map(|(t, _)| t).collect(),
    };
    let mut text = String::new();
    let mut settings = Vec::new();
    for t in &chosen {
        let setting = local_quiver(&query, t)?;
        let base = setting.gamma.base();
        let local_ctx = FormsContext::new(base);
        let p_local = local_ctx.p(&setting.alpha).expect("alpha_tau has one entry per part");
        let loops: Vec<usize> = (0..base.vertex_count()).map(|i| base.loops_at(i)).collect();
        let arrows: Vec<Value> = base
            .arrows()
            .iter()
            .map(|a| json!({ "id": a.id, "tail": base.vertices()[a.tail], "head": base.vertices()[a.head] }))
            .collect();
        let _ = writeln!(
            text,
            "{t}: vertices {}, loops {:?}, {} arrows, alpha_tau {}, p' = {p_local}, p = {p_alpha}",
            base.vertex_count(),
            loops,
            base.arrow_count(),
            setting.alpha
        );
        settings.push(json!({
            "type": rep_type_json(t),
            "label": t.to_string(),
            "vertices": base.vertices(),
            "loops": loops,
            "arrows": arrows,
            "alphaTau": setting.alpha.0,
            "pLocal": int_json(&p_local),
            "p": int_json(&p_alpha),
        }));
    }
    Ok(Report {
        json: json!({ "alpha": dim_json(q, query.alpha()), "settings": settings }),
        text,
    })
}

fn decide_report(input: &Input) -> Result<Report, Failure> {
    let query = input.query()?;
    let r = decide(&query)?;
    let mut text = String::new();
    let flags = [
        ("in Sigma_lambda", r.in_sigma),
        ("minimal", r.minimal),
        ("coadjoint orbit", r.coadjoint_orbit),
        ("smooth quotient", r.smooth_quotient),
        ("Azumaya everywhere", r.azumaya),
        ("alpha-smooth", r.alpha_smooth),
    ];
    for (name, value) in flags {
        let _ = writeln!(text, "{name:<20} {}", if value { "yes" } else { "no" });
    }
    let dim = r.dimension.as_ref().map_or("-".to_string(), BigInt::to_string);
    let _ = writeln!(text, "{:<20} {dim}", "dimension");
    let _ = writeln!(text, "strata:");
    for s in &r.strata {
        let _ = writeln!(
            text,
            "  {}  dim {}{}",
            s.rep_type,
            s.dimension,
            if s.smooth { "  smooth" } else { "" }
        );
    }
    for w in &r.warnings {
        let _ = writeln!(text, "warning: {w}");
    }
    Ok(Report {
        json: r.to_json(),
        text,
    })
}

fn verify_report(input: &Input, args: &VerifyArgs) -> Result<Report, Failure> {
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(usage("flag", "--tol must be a positive number"));
    }
    if args.trials == 0 {
        return Err(usage("flag", "--trials must be at least 1"));
    }
    let query = input.query()?;
    let r = verify(&query, args.seed, args.trials, args.tol)?;
    let expected = r
        .expected_quotient_dimension
        .as_ref()
        .map_or("-".to_string(), BigInt::to_string);
    let consistent = match r.consistent {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    };
    let text = format!(
        "samples {} (failures {}), residual {:.3e}\n\
         jacobian rank {} of {}, ambient {}, fibre {}\n\
         endomorphisms {}, simple {}\n\
         quotient estimate {}, expected {expected}, consistent {consistent}\n",
        r.samples,
        r.failures,
        r.residual,
        r.jacobian_rank,
        r.expected_rank,
        r.ambient_dimension,
        r.fiber_dimension,
        r.endomorphism_dimension,
        if r.simple { "yes" } else { "no" },
        r.quotient_dimension_estimate,
    );
    Ok(Report {
        json: r.to_json(),
        text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm() -> Quiver {
        Quiver::new(["v0", "vinf"], [("x", "v0", "v0"), ("v", "vinf", "v0")]).unwrap()
    }

    #[test]
    fn named_and_positional_flags() {
        let q = cm();
        assert_eq!(
            parse_dim_flag(&q, "--alpha", "v0=2,vinf=1").unwrap(),
            DimVector(vec![2, 1])
        );
        assert_eq!(parse_dim_flag(&q, "--alpha", "vinf=1").unwrap(), DimVector(vec![0, 1]));
        assert_eq!(parse_dim_flag(&q, "--alpha", "3, 1").unwrap(), DimVector(vec![3, 1]));
        assert_eq!(
            parse_weight_flag(&q, "v0=1/2,vinf=-1").unwrap().0[0],
            parse_rational("1/2").unwrap()
        );
        for bad in ["v0=2,v0=1", "w=1", "2", "v0=-1", "v0=x"] {
            assert_eq!(parse_dim_flag(&q, "--alpha", bad).unwrap_err().exit_code(), 2, "{bad}");
        }
    }

    #[test]
    fn trace_obstruction_is_a_domain_error() {
        let f: Failure = SigmaError::TraceObstruction.into();
        assert_eq!(f.exit_code(), 1);
        assert_eq!(f.message(), "lambda·alpha ≠ 0");
        assert_eq!(f.to_json()["error"]["kind"], "traceObstruction");
    }

    #[test]
    fn input_format_detection() {
        let text = "quiver { vertices u }";
        let doc = parse_input(text).unwrap();
        assert_eq!(doc.quiver.vertex_count(), 1);
        let json = quiverlab_core::quiver::serialize(&doc.quiver, None, None).unwrap();
        assert_eq!(parse_input(&format!("\n  {json}")).unwrap(), doc);
    }
}
