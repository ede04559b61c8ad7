mod specfile;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use paralift::connection::{corrected_connection, covariant_derivative_endo, nijenhuis_table, torsion};
use paralift::geometry::{lie_bracket, nijenhuis, para_structure};
use paralift::lift::{
    clift_endo, clift_oneform, clift_para, clift_scalar, clift_vector, vlift_oneform, vlift_scalar,
    vlift_vector,
};
use paralift::verify::{
    coverage_text, verify_all, verify_corollary, verify_theorem1, CaseSpec, IdentityReport, VerifyError,
};
use paralift::{Chart, EndoField, Expr, GeometryError, SplitComplex, VectorField};
use serde_json::json;
use thiserror::Error;

use specfile::{Field, SpecError, SpecFile};

#[derive(Parser)]
#[command(name = "paralift", version, about = "Lifts of paracomplex structures to the tangent bundle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Vertical,
    Complete,
}

#[derive(Args)]
struct Common {
    /// Spec file with manifold, fields, connection and verify sections.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Vertical or complete lift of a named field.
    Lift {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        field: String,
        #[arg(long, value_enum, default_value = "complete")]
        kind: Kind,
    },
    /// Lie bracket of two named vector fields.
    Bracket {
        #[command(flatten)]
        common: Common,
        x: String,
        y: String,
    },
    /// Nijenhuis tensor of a named (1,1)-field on two vector fields;
    /// `J` names the paracomplex structure unless a field of that name exists.
    Nijenhuis {
        #[command(flatten)]
        common: Common,
        f: String,
        x: String,
        y: String,
    },
    /// Torsion table of the spec's connection.
    Torsion {
        #[command(flatten)]
        common: Common,
    },
    /// Corrected-connection suite; with a spec connection, also checks it.
    Theorem1 {
        #[command(flatten)]
        common: Common,
    },
    /// The tangent-bundle pipeline suite.
    Corollary {
        #[command(flatten)]
        common: Common,
    },
    /// All suites, with the anchor coverage map.
    VerifyAll {
        #[command(flatten)]
        common: Common,
    },
    /// The derived J^c table beside the +j display form.
    PrintJc {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Spec {
        path: String,
        #[source]
        source: SpecError,
    },
    #[error("{0} requires --spec")]
    NeedsSpec(&'static str),
    #[error("--m {flag} disagrees with m = {file} in the spec file")]
    DimensionConflict { flag: usize, file: usize },
    #[error("no field named `{0}`")]
    UnknownField(String),
    #[error("`{name}` is a {found} field, expected {expected}")]
    WrongKind { name: String, found: &'static str, expected: &'static str },
    #[error("the spec file has no [connection] section")]
    NoConnection,
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// Output and whether every check in scope passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

struct Context {
    spec: Option<SpecFile>,
    chart: Chart,
    cases: CaseSpec,
    format: Format,
}

impl Context {
    fn load(common: &Common) -> Result<Self, CliError> {
        let spec = match &common.spec {
            Some(path) => {
                let shown = path.display().to_string();
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
                    path: shown.clone(),
                    source,
                })?;
                Some(SpecFile::parse(&text).map_err(|source| CliError::Spec { path: shown, source })?)
            }
            None => None,
        };
        let m = match (&spec, common.m) {
            (Some(s), Some(flag)) if flag != s.chart.m() => {
                return Err(CliError::DimensionConflict { flag, file: s.chart.m() })
            }
            (Some(s), _) => s.chart.m(),
            (None, Some(flag)) => flag,
            (None, None) => 1,
        };
        let from_file = spec.as_ref().map(|s| s.verify.clone()).unwrap_or_default();
        let defaults = CaseSpec::default();
        let cases = CaseSpec {
            m,
            seed: common.seed.or(from_file.seed).unwrap_or(defaults.seed),
            cases: common.cases.or(from_file.cases).unwrap_or(defaults.cases),
            max_degree: common.max_degree.or(from_file.max_degree).unwrap_or(defaults.max_degree),
            max_terms: common.max_terms.or(from_file.max_terms).unwrap_or(defaults.max_terms),
        };
        cases.validate()?;
        Ok(Self {
            spec,
            chart: Chart::base(m),
            cases,
            format: common.format,
        })
    }

    fn spec(&self, command: &'static str) -> Result<&SpecFile, CliError> {
        self.spec.as_ref().ok_or(CliError::NeedsSpec(command))
    }

    fn field(&self, command: &'static str, name: &str) -> Result<&Field, CliError> {
        self.spec(command)?
            .fields
            .get(name)
            .ok_or_else(|| CliError::UnknownField(name.to_string()))
    }

    fn vector(&self, command: &'static str, name: &str) -> Result<&VectorField, CliError> {
        match self.field(command, name)? {
            Field::Vector(v) => Ok(v),
            other => Err(CliError::WrongKind {
                name: name.to_string(),
                found: other.kind(),
                expected: "vector",
            }),
        }
    }

    fn endo(&self, command: &'static str, name: &str) -> Result<EndoField, CliError> {
        let spec = self.spec(command)?;
        match spec.fields.get(name) {
            Some(Field::Endo(f)) => Ok(f.clone()),
            Some(other) => Err(CliError::WrongKind {
                name: name.to_string(),
                found: other.kind(),
                expected: "endo",
            }),
            None if name == "J" => Ok(para_structure(&spec.chart)?),
            None => Err(CliError::UnknownField(name.to_string())),
        }
    }
}

fn components_json(chart: &Chart, kind: &str, comps: &[&Expr]) -> String {
    json!({
        "chart": chart.to_string(),
        "kind": kind,
        "components": comps.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    })
    .to_string()
}

fn render_field(field: &Field, format: Format) -> String {
    match format {
        Format::Text => match field {
            Field::Scalar(f) => f.to_string(),
            Field::Vector(v) => v.to_string(),
            Field::OneForm(w) => w.to_string(),
            Field::Endo(e) => e.to_string(),
        },
        Format::Machine => match field {
            Field::Scalar(f) => components_json(&f.chart(), "scalar", &[f.value()]),
            Field::Vector(v) => components_json(&v.chart(), "vector", &v.components().iter().collect::<Vec<_>>()),
            Field::OneForm(w) => components_json(&w.chart(), "oneform", &w.components().iter().collect::<Vec<_>>()),
            Field::Endo(e) => components_json(&e.chart(), "endo", &e.entries().collect::<Vec<_>>()),
        },
    }
}

fn lift(ctx: &Context, name: &str, kind: Kind) -> Result<Outcome, CliError> {
    let lifted = match (ctx.field("lift", name)?, kind) {
        (Field::Scalar(f), Kind::Vertical) => Field::Scalar(vlift_scalar(f)?),
        (Field::Scalar(f), Kind::Complete) => Field::Scalar(clift_scalar(f)?),
        (Field::Vector(v), Kind::Vertical) => Field::Vector(vlift_vector(v)?),
        (Field::Vector(v), Kind::Complete) => Field::Vector(clift_vector(v)?),
        (Field::OneForm(w), Kind::Vertical) => Field::OneForm(vlift_oneform(w)?),
        (Field::OneForm(w), Kind::Complete) => Field::OneForm(clift_oneform(w)?),
        (Field::Endo(f), Kind::Complete) => Field::Endo(clift_endo(f)?),
        (Field::Endo(_), Kind::Vertical) => {
            return Err(CliError::Unsupported("only the complete lift of an endo field is available".into()))
        }
    };
    Ok(Outcome::ok(render_field(&lifted, ctx.format)))
}

fn torsion_table(ctx: &Context) -> Result<Outcome, CliError> {
    let nabla = ctx.spec("torsion")?.connection.as_ref().ok_or(CliError::NoConnection)?;
    let t = torsion(nabla);
    let text = match ctx.format {
        Format::Text => t.to_string(),
        Format::Machine => json!({
            "chart": t.chart().to_string(),
            "torsion": t.table.entries().map(|((c, a, b), e)| json!([c + 1, a + 1, b + 1, e.to_string()])).collect::<Vec<_>>(),
            "zero": t.is_zero(),
        })
        .to_string(),
    };
    Ok(Outcome::ok(text))
}

fn report_output(reports: &[IdentityReport], format: Format, with_coverage: bool) -> Outcome {
    let passed = reports.iter().all(|r| r.passed() && r.consistency_failures == 0);
    let text = match format {
        Format::Text => {
            let mut out = String::new();
            if with_coverage {
                out.push_str(&coverage_text(reports));
            }
            for r in reports {
                out.push_str(&r.to_text());
            }
            let total: usize = reports.iter().map(|r| r.results.len()).sum();
            let failed = reports
                .iter()
                .flat_map(|r| &r.results)
                .filter(|r| r.status != paralift::verify::Status::Pass)
                .count();
            let consistency: usize = reports.iter().map(|r| r.consistency_failures).sum();
            let _ = write!(
                out,
                "{} of {total} identities passed, {consistency} internal-consistency failures",
                total - failed
            );
            out
        }
        Format::Machine => reports.iter().map(|r| r.to_machine()).collect::<String>().trim_end().to_string(),
    };
    Outcome { text, passed }
}

/// Checks the corrected connection built from the spec's own connection.
fn check_given_connection(ctx: &Context) -> Result<Option<Outcome>, CliError> {
    let Some(nabla) = ctx.spec.as_ref().and_then(|s| s.connection.as_ref()) else {
        return Ok(None);
    };
    let j = para_structure(&ctx.chart)?;
    let fixed = corrected_connection(nabla, &j)?;
    let chart = fixed.chart();
    let parallel = (0..chart.dim()).try_fold(true, |ok, a| {
        covariant_derivative_endo(&fixed, &VectorField::frame(chart, a), &j).map(|d| ok && d.is_zero())
    })?;
    let four_t = torsion(&fixed).table.scale_const(&SplitComplex::from_ints(4, 0));
    let minus_n = nijenhuis_table(&j)?.table.scale_const(&SplitComplex::from_ints(-1, 0));
    let relation = four_t == minus_n;
    let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
    let text = match ctx.format {
        Format::Text => format!(
            "corrected spec connection\n{fixed}\n  {:<5} corrected connection parallelizes J\n  {:<5} 4T = -N_J\n",
            mark(parallel),
            mark(relation)
        ),
        Format::Machine => json!({
            "suite": "given-connection",
            "parallel": parallel,
            "torsion_nijenhuis": relation,
            "corrected": fixed.christoffels().entries().filter(|(_, e)| !e.is_zero()).map(|((c, a, b), e)| json!([c + 1, a + 1, b + 1, e.to_string()])).collect::<Vec<_>>(),
        })
        .to_string(),
    };
    Ok(Some(Outcome {
        text,
        passed: parallel && relation,
    }))
}

fn theorem1(ctx: &Context) -> Result<Outcome, CliError> {
    let given = check_given_connection(ctx)?;
    let report = verify_theorem1(&ctx.cases)?;
    let mut out = report_output(std::slice::from_ref(&report), ctx.format, false);
    if let Some(g) = given {
        out.text = format!("{}\n{}", g.text.trim_end(), out.text);
        out.passed &= g.passed;
    }
    Ok(out)
}

fn displayed_jc(tm: Chart) -> EndoField {
    EndoField::from_fn(tm, |b, a| {
        if a != b {
            Expr::zero()
        } else if tm.is_holomorphic_slot(a) {
            Expr::j()
        } else {
            Expr::constant(SplitComplex::from_ints(0, -1))
        }
    })
}

fn print_jc(ctx: &Context) -> Result<Outcome, CliError> {
    let derived = clift_para(&ctx.chart)?;
    let tm = derived.chart();
    let shown = displayed_jc(tm);
    let relation = if shown == derived {
        "identical"
    } else if shown == derived.scale_const(&SplitComplex::from_ints(-1, 0)) {
        "opposite sign"
    } else {
        "different"
    };
    let squares = shown.compose(&shown)? == EndoField::identity(tm);
    let text = match ctx.format {
        Format::Text => format!(
            "J^c on {tm}, derived from F^c(Z^c) = (FZ)^c with J(d/dz^a) = -j d/dz^a\n{derived}\n\n\
             displayed form: +j on d/dz^a (x) dz^a and d/du^a (x) du^a, -j on the conjugates\n{shown}\n\n\
             relation: {relation}; displayed form squares to I: {squares}"
        ),
        Format::Machine => {
            let rows = |f: &EndoField| {
                f.rows()
                    .iter()
                    .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            };
            json!({
                "chart": tm.to_string(),
                "derived": rows(&derived),
                "displayed": rows(&shown),
                "relation": relation,
                "displayed_squares_to_identity": squares,
            })
            .to_string()
        }
    };
    Ok(Outcome::ok(text))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Lift { common, field, kind } => lift(&Context::load(&common)?, &field, kind),
        Command::Bracket { common, x, y } => {
            let ctx = Context::load(&common)?;
            let b = lie_bracket(ctx.vector("bracket", &x)?, ctx.vector("bracket", &y)?)?;
            Ok(Outcome::ok(render_field(&Field::Vector(b), ctx.format)))
        }
        Command::Nijenhuis { common, f, x, y } => {
            let ctx = Context::load(&common)?;
            let n = nijenhuis(&ctx.endo("nijenhuis", &f)?, ctx.vector("nijenhuis", &x)?, ctx.vector("nijenhuis", &y)?)?;
            Ok(Outcome::ok(render_field(&Field::Vector(n), ctx.format)))
        }
        Command::Torsion { common } => torsion_table(&Context::load(&common)?),
        Command::Theorem1 { common } => theorem1(&Context::load(&common)?),
        Command::Corollary { common } => {
            let ctx = Context::load(&common)?;
            Ok(report_output(&[verify_corollary(&ctx.cases)?], ctx.format, false))
        }
        Command::VerifyAll { common } => {
            let ctx = Context::load(&common)?;
            Ok(report_output(&verify_all(&ctx.cases)?, ctx.format, true))
        }
        Command::PrintJc { common } => print_jc(&Context::load(&common)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
