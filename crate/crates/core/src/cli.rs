//! Command-line front end. Every subcommand builds a [`Report`]; the exit
//! code is 0 when all checks pass, 1 when one fails, 2 on invalid input.

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cones::SubspaceCategory;
use crate::crossconn::{classify_crossconnections, formula_semigroup, recover_theta, CrossConn};
use crate::dual::build_normal_dual;
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::report::{Params, Report};
use crate::semigroup::{idempotents, singular_endos, Endo};
use crate::subspace::{enumerate_subspaces_on, Side, SubspaceFilter, MAX_DIM};
use crate::variant::VariantContext;
use crate::verify;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "singcxn", about = "Cross-connection checks for Sing(V) and its variants over GF(p)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Field size, a prime up to 7.
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Dimension of V. Taken from --theta when omitted there.
    #[arg(long)]
    pub n: Option<usize>,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Worker threads; the output does not depend on this.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Record elapsed time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the subspaces of V and check the lattice counts.
    Lattice(Common),
    /// Sing(V): order, idempotents, Green's relations against the ideal oracle.
    Semigroup(Common),
    /// Normal cones of the subspace category and their semigroup.
    Cones {
        #[command(flatten)]
        common: Common,
        /// List every normal cone found by brute force (GF(2), n <= 2).
        #[arg(long)]
        census: bool,
    },
    /// The normal dual and the annihilator category.
    Dual(Common),
    /// Cross-connections induced by an automorphism.
    Crossconn {
        #[command(flatten)]
        common: Common,
        /// Automorphism as rows, e.g. "0,1;1,0". All of GL(V) (or a sample) when omitted.
        #[arg(long)]
        theta: Option<String>,
        /// Run the census of all cross-connections (n = 2, p <= 3).
        #[arg(long)]
        classify: bool,
    },
    /// The variant with sandwich element θ.
    Variant {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        theta: String,
        /// Report the regular elements and their witnesses.
        #[arg(long)]
        reg: bool,
        /// Report the carriers, the induced functors and the isomorphism.
        #[arg(long)]
        cxn: bool,
        /// Report the carrier elements that are not principal.
        #[arg(long)]
        census: bool,
    },
    /// Every check at one field and dimension (default GF(2)^2).
    VerifyAll(Common),
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Lattice(c) | Command::Semigroup(c) | Command::Dual(c) | Command::VerifyAll(c) => c,
            Command::Cones { common, .. } | Command::Crossconn { common, .. } | Command::Variant { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Lattice(_) => "lattice",
            Command::Semigroup(_) => "semigroup",
            Command::Cones { .. } => "cones",
            Command::Dual(_) => "dual",
            Command::Crossconn { .. } => "crossconn",
            Command::Variant { .. } => "variant",
            Command::VerifyAll(_) => "verify-all",
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    execute(&cli.command)
}

pub fn execute(command: &Command) -> Outcome {
    let common = command.common();
    let result = match common.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
            Ok(pool) => pool.install(|| timed(command)),
            Err(e) => Err(Error::Parse(format!("thread pool: {e}"))),
        },
        None => timed(command),
    };
    match result {
        Ok(report) => Outcome {
            code: if report.all_pass() { EXIT_PASS } else { EXIT_FAIL },
            stdout: if common.json { report.to_json() } else { report.to_text() },
            stderr: String::new(),
        },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Errors caused by the arguments are invalid input; anything else means a
/// construction that should have succeeded did not.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPrime(_)
        | Error::UnsupportedModulus(_)
        | Error::EntryOutOfRange { .. }
        | Error::ShapeError(_)
        | Error::TooLarge(_)
        | Error::Parse(_)
        | Error::NotInvertible => EXIT_INVALID,
        _ => EXIT_FAIL,
    }
}

fn timed(command: &Command) -> Result<Report> {
    let start = Instant::now();
    let mut report = dispatch(command)?;
    if command.common().timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn dimension(common: &Common, theta: Option<&Endo>) -> Result<usize> {
    let n = match (common.n, theta) {
        (Some(n), Some(t)) if n != t.n() => {
            return Err(Error::ShapeError(format!("--n {n} but θ is {}x{}", t.n(), t.n())));
        }
        (Some(n), _) => n,
        (None, Some(t)) => t.n(),
        (None, None) => 2,
    };
    if n == 0 || n > MAX_DIM {
        return Err(Error::ShapeError(format!("dimension {n} is outside 1..={MAX_DIM}")));
    }
    Ok(n)
}

fn parse_theta(s: &str, p: Prime) -> Result<Endo> {
    let theta = Endo::parse(s, p)?;
    if !theta.mat().is_square() {
        return Err(Error::ShapeError(format!("θ = {s} is not square")));
    }
    Ok(theta)
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(items.into_iter().map(|x| Value::String(x.to_string())).collect())
}

fn dispatch(command: &Command) -> Result<Report> {
    let common = command.common();
    let p = Prime::new(common.p)?;
    let theta = match command {
        Command::Crossconn { theta: Some(t), .. } | Command::Variant { theta: t, .. } => Some(parse_theta(t, p)?),
        _ => None,
    };
    let n = dimension(common, theta.as_ref())?;
    let params = Params { p: Some(p.get() as u32), n: Some(n), theta: theta.as_ref().map(|t| t.to_string()) };
    let mut report = Report::new(command.name(), params);

    match command {
        Command::Lattice(_) => {
            let all = enumerate_subspaces_on(n, p, Side::Primal, SubspaceFilter::All)?;
            report.value("subspaces", strings(&all));
            report.extend(verify::lattice_checks(n, p)?);
        }
        Command::Semigroup(_) => {
            verify::check_size(n, p)?;
            report.value("sing_order", singular_endos(n, p)?.len());
            report.value("idempotents", idempotents(n, p, true)?.len());
            report.extend(verify::semigroup_checks(n, p)?);
        }
        Command::Cones { census, .. } => {
            verify::check_size(n, p)?;
            if *census {
                let cat = SubspaceCategory::new(n, p, Side::Primal)?;
                let cones = cat.census()?;
                let maps: Vec<String> = cones.iter().map(|c| cat.cone_to_map(c).map(|m| m.to_string())).collect::<Result<_>>()?;
                report.value("census", maps);
                report.value("cones", Value::Array(cones.iter().map(|c| c.to_json()).collect()));
            }
            report.extend(verify::cone_checks(n, p)?);
        }
        Command::Dual(_) => {
            verify::check_size(n, p)?;
            report.value("objects", strings(&build_normal_dual(n, p)?.objects));
            report.extend(verify::dual_checks(n, p)?);
        }
        Command::Crossconn { classify, .. } => {
            verify::check_size(n, p)?;
            let census = if *classify { Some(classify_crossconnections(n, p)?) } else { None };
            let thetas = match &theta {
                Some(t) => {
                    t.invert()?;
                    vec![t.clone()]
                }
                None => verify::automorphism_sample(n, p)?,
            };
            if let Some(t) = &theta {
                report.value("recovered_theta", recover_theta(&CrossConn::delta(t)?)?.to_string());
                report.value("isomorphism", formula_semigroup(t)?.isomorphism.map_or(Value::Null, |m| json!(m)));
            }
            report.extend(verify::crossconn_checks(n, p, &thetas)?);
            if let Some(c) = census {
                report.value("census", strings(c.members.iter().map(|m| &m.theta)));
                report.push(verify::census_check(&c));
            }
        }
        Command::Variant { reg, cxn, census, .. } => {
            let theta = theta.expect("parsed above");
            let ctx = VariantContext::new(&theta)?;
            let everything = !(*reg || *cxn || *census);
            if *reg || everything {
                let found = ctx.reg_variant();
                report.value("reg_size", found.len());
                report.value("reg", strings(found.iter().map(|(a, w)| format!("{a} via {w}"))));
            }
            if *cxn || everything {
                let cats = ctx.variant_categories()?;
                let v = ctx.variant_crossconnection()?;
                report.value("complement", ctx.complement().to_string());
                report.value("image_carrier_size", cats.image_carrier.len());
                report.value("kernel_carrier_size", cats.kernel_carrier.len());
                report.value("image_carrier_regular", cats.image_regular.len());
                report.value("kernel_carrier_regular", cats.kernel_regular.len());
                report.value("r_objects", strings(&cats.r_objects));
                report.value("b_objects", strings(&cats.b_objects));
                report.value("delta", v.delta_failure.as_ref().map_or("local isomorphism".to_string(), |f| f.to_string()));
                report.value("gamma", v.gamma_failure.as_ref().map_or("local isomorphism".to_string(), |f| f.to_string()));
                report.value("delta_object_surjective", v.delta_object_surjective);
                report.value("gamma_object_surjective", v.gamma_object_surjective);
                report.value("isomorphism", v.isomorphism.map_or(Value::Null, |m| json!(m)));
            }
            if *census || everything {
                let np = ctx.nonprincipal_cones();
                report.value("excess_count", np.image_side.excess.len());
                report.value("excess", strings(&np.image_side.excess));
                report.value("kernel_excess_count", np.kernel_side.excess.len());
                report.value("kernel_excess", strings(&np.kernel_side.excess));
            }
            report.extend(verify::variant_checks(std::slice::from_ref(&theta))?);
        }
        Command::VerifyAll(_) => {
            report.extend(verify::verify_all(n, p)?);
        }
    }
    Ok(report)
}
