//! Command dispatch. [`run`] returns the exit status and the report text so
//! that tests can drive it without a process.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use symfan::classify::{
    catalog_for, enumerate_picard_one, supported_types, verify_against_catalog, ClassifyOptions, Strategy,
};
use symfan::colored::{
    ample_report, completeness, picard_rank, picard_rank_general, validate_colored_fan, ColoredError, ColoredFan,
    DivisorId, SphericalDatum,
};
use symfan::cones::Coverage;
use symfan::exactlin::{rat, Rational};
use symfan::rootsys::TypeLabel;
use symfan::symmcheck::is_smooth;

use crate::scf::{from_fan, parse_scf, print_scf, to_datum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "symfan", version, about = "Colored fans of symmetric varieties: checks and the Picard-one classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the fan and decide smoothness of every maximal colored cone.
    Check { file: PathBuf },
    /// Decide whether the fan covers the valuation cone.
    Complete { file: PathBuf },
    /// Picard rank of a complete fan with simplicial maximal cones.
    Picard { file: PathBuf },
    /// Ampleness of a divisor given by its coefficients, e.g. `--coeff D1=1 --coeff E1=0`.
    Ample {
        file: PathBuf,
        #[arg(long = "coeff", value_name = "DIVISOR=INT", required = true)]
        coeff: Vec<String>,
    },
    /// Enumerate smooth complete Picard-one varieties of a restricted type.
    Enumerate {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Print the reference catalog of a restricted type.
    Catalog {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        /// Print every row as an `.scf` document.
        #[arg(long)]
        scf: bool,
    },
    /// Compare the enumeration with the catalog.
    Verify {
        #[arg(long = "type", value_name = "TYPE", conflicts_with = "all", required_unless_present = "all")]
        ty: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long = "max-rank", default_value_t = 8, requires = "all")]
        max_rank: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct SearchArgs {
    /// Bound on the fundamental-coweight coefficients of the invariant ray
    /// (default: rank + 2).
    #[arg(long)]
    bound: Option<usize>,
    /// Search the whole coefficient box instead of the pruned candidates.
    #[arg(long)]
    exhaustive: bool,
}

impl SearchArgs {
    fn options(&self) -> ClassifyOptions {
        ClassifyOptions {
            bound: self.bound,
            strategy: if self.exhaustive { Strategy::Exhaustive } else { Strategy::Pruned },
        }
    }
}

/// Failure to produce a report: the message and the exit status.
struct Failure(i32, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

/// Runs a command line (program name first).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(code) => (code, out),
        Err(Failure(code, msg)) => {
            out.push_str(&msg);
            if !msg.ends_with('\n') {
                out.push('\n');
            }
            (code, out)
        }
    }
}

fn parse_type(s: &str) -> Result<TypeLabel, Failure> {
    s.parse().map_err(|e| usage(format!("error: {e}")))
}

fn load(file: &PathBuf) -> Result<(SphericalDatum, ColoredFan), Failure> {
    let text =
        std::fs::read_to_string(file).map_err(|e| usage(format!("error: cannot read {}: {e}", file.display())))?;
    let doc = parse_scf(&text).map_err(|e| usage(format!("error: {}: {e}", file.display())))?;
    let (datum, cones) = to_datum(&doc).map_err(|e| usage(format!("error: {}: {e}", file.display())))?;
    let fan = ColoredFan::from_maximal(&datum, &cones);
    Ok((datum, fan))
}

fn dispatch(cmd: Command, out: &mut String) -> Result<i32, Failure> {
    match cmd {
        Command::Check { file } => check(&file, out),
        Command::Complete { file } => {
            let (datum, fan) = load(&file)?;
            match completeness(&datum, &fan) {
                Coverage::Covered => {
                    out.push_str("complete\n");
                    Ok(EXIT_OK)
                }
                Coverage::Uncovered(p) => {
                    let rs = datum.system();
                    let _ = writeln!(out, "not complete: {} ({}) is not covered", rs.describe_coweight(&p), rs.realize(&p));
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::Picard { file } => {
            let (datum, fan) = load(&file)?;
            match picard_rank(&datum, &fan) {
                Ok(r) => {
                    let _ = writeln!(out, "picard rank {r}");
                    if let Ok(g) = picard_rank_general(&datum, &fan) {
                        if g != r {
                            let _ = writeln!(out, "note: gluing rank gives {g}");
                        }
                    }
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    let _ = writeln!(out, "picard rank undefined: {}", describe_error(&datum, &e));
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::Ample { file, coeff } => ample(&file, &coeff, out),
        Command::Enumerate { ty, search } => {
            let t = parse_type(&ty)?;
            let found = enumerate_picard_one(&t, &search.options()).map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
            for e in &found {
                let _ = writeln!(out, "{e}");
            }
            let _ = writeln!(out, "{} {}", found.len(), if found.len() == 1 { "entry" } else { "entries" });
            Ok(EXIT_OK)
        }
        Command::Catalog { ty, scf } => {
            let t = parse_type(&ty)?;
            let rows = catalog_for(&t).map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
            for (i, e) in rows.iter().enumerate() {
                if scf {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&print_scf(&from_fan(&e.datum, &e.fan, vec![e.label.clone()])));
                } else {
                    let _ = writeln!(out, "{e}");
                }
            }
            if !scf {
                let _ = writeln!(out, "{} {}", rows.len(), if rows.len() == 1 { "entry" } else { "entries" });
            }
            Ok(EXIT_OK)
        }
        Command::Verify { ty, all, max_rank, search } => {
            let types = if all { supported_types(max_rank) } else { vec![parse_type(ty.as_deref().unwrap_or(""))?] };
            let mut ok = true;
            for t in types {
                let r = verify_against_catalog(&t, &search.options()).map_err(|e| Failure(EXIT_FAIL, e.to_string()))?;
                ok &= r.matches();
                let _ = writeln!(out, "{r}");
            }
            Ok(if ok { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn describe_error(datum: &SphericalDatum, e: &ColoredError) -> String {
    match e {
        ColoredError::Incomplete(p) => {
            format!("fan is not complete ({} is not covered)", datum.system().describe_coweight(p))
        }
        other => other.to_string(),
    }
}

fn check(file: &PathBuf, out: &mut String) -> Result<i32, Failure> {
    let (datum, fan) = load(file)?;
    if fan.maximal_cones().is_empty() {
        out.push_str("fan has no cones\n");
        return Ok(EXIT_FAIL);
    }
    if let Err(v) = validate_colored_fan(&datum, &fan) {
        let _ = writeln!(out, "invalid fan, axiom {} fails: {v}", v.axiom());
        return Ok(EXIT_FAIL);
    }
    let _ = writeln!(out, "fan valid: {} maximal cones, {} members", fan.maximal_cones().len(), fan.members().len());
    let mut ok = true;
    for (k, cc) in fan.maximal_cones().iter().enumerate() {
        let name = symfan::classify::describe_cone(&datum, cc);
        match is_smooth(&datum, cc) {
            Ok(r) if r.smooth => {
                let _ = writeln!(
                    out,
                    "cone {}: {name}: smooth (Levi type {}, {} indexing{})",
                    k + 1,
                    r.levi_type,
                    r.accepted_indexings,
                    if r.accepted_indexings == 1 { "" } else { "s" }
                );
            }
            Ok(r) => {
                ok = false;
                let cond = r.failed.map(|c| c.to_string()).unwrap_or_default();
                let what = if cond == "exceptional" {
                    "exceptional obstruction".to_string()
                } else {
                    format!("condition {cond} fails")
                };
                let _ = writeln!(out, "cone {}: {name}: not smooth, {what}: {}", k + 1, r.witness);
            }
            Err(e) => {
                ok = false;
                let _ = writeln!(out, "cone {}: {name}: {e}", k + 1);
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}

fn ample(file: &PathBuf, coeff: &[String], out: &mut String) -> Result<i32, Failure> {
    let (datum, fan) = load(file)?;
    let mut coeffs: BTreeMap<DivisorId, Rational> = BTreeMap::new();
    for c in coeff {
        let (d, v) = c.split_once('=').ok_or_else(|| usage(format!("error: expected DIVISOR=INT, got {c}")))?;
        let id: DivisorId = d.trim().parse().map_err(|_| usage(format!("error: unknown divisor {d}")))?;
        let x: i64 = v.trim().parse().map_err(|_| usage(format!("error: not an integer: {v}")))?;
        coeffs.insert(id, rat(x));
    }
    let report = match ample_report(&datum, &fan, &coeffs) {
        Ok(r) => r,
        Err(e @ (ColoredError::MissingCoefficient(_) | ColoredError::UnknownDivisor(_))) => {
            return Err(usage(format!("error: {e}")));
        }
        Err(e) => {
            let _ = writeln!(out, "not ample: {}", describe_error(&datum, &e));
            return Ok(EXIT_FAIL);
        }
    };
    let rs = datum.system();
    for (i, j, g, li, phi) in &report.inequalities {
        let rel = if li < phi { "<" } else { ">=" };
        let _ = writeln!(out, "l{}({g}) = {li} {rel} {phi} = phi({g}), g a ray of cone {}", i + 1, j + 1, g = rs.describe_coweight(g));
    }
    if !report.colors_complete {
        out.push_str("some color is not in the fan\n");
    }
    out.push_str(if report.ample { "ample\n" } else { "not ample\n" });
    Ok(if report.ample { EXIT_OK } else { EXIT_FAIL })
}
