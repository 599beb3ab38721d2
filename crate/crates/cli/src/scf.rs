//! The `.scf` colored-fan file format.
//!
//! ```text
//! # leading comment lines are kept
//! rootsystem B2
//! lattice basis
//! row 1 0
//! row 0 1/2
//! hermitian false
//! exceptional 2
//! fiber 2 2
//!
//! cone
//!   ray coroot 1
//!   ray vec -1 0
//!   colors 1 2:2
//! end
//! ```
//!
//! Indices are 1-based. Vectors are written in the realization of the root
//! system: `Q^{l+1}` with coordinate sum zero for each `A_l` factor, and the
//! working coordinates of the library otherwise. `lattice` is `root`,
//! `weight` or `basis` followed by `row` lines. `ray coweight c_1 ... c_l`
//! is accepted as shorthand for `Σ c_i ω_i^∨`.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use symfan::colored::{ColorId, ColoredCone, ColoredFan, SphericalDatum};
use symfan::cones::Cone;
use symfan::exactlin::{Lattice, Rational, RationalVector};
use symfan::rootsys::{RootSystem, TypeLabel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScfError {
    Parse { line: usize, message: String },
    Datum(String),
}

impl fmt::Display for ScfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScfError::Parse { line, message } => write!(f, "line {line}: {message}"),
            ScfError::Datum(m) => write!(f, "invalid datum: {m}"),
        }
    }
}

impl std::error::Error for ScfError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeDecl {
    Root,
    Weight,
    /// Basis rows in realization coordinates.
    Basis(Vec<RationalVector>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayDecl {
    /// 0-based simple coroot index.
    Coroot(usize),
    /// Realization coordinates.
    Vec(RationalVector),
    /// Fundamental-coweight coefficients.
    Coweight(Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDecl {
    pub rays: Vec<RayDecl>,
    pub colors: Vec<ColorId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScfDocument {
    /// Leading comment lines without the `#`.
    pub comments: Vec<String>,
    pub label: TypeLabel,
    pub lattice: LatticeDecl,
    pub hermitian: bool,
    /// 0-based.
    pub exceptional: BTreeSet<usize>,
    pub fibers: Vec<u8>,
    pub cones: Vec<ConeDecl>,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ScfError> {
    Err(ScfError::Parse { line, message: message.into() })
}

fn parse_rationals(line: usize, words: &[&str], dim: usize) -> Result<RationalVector, ScfError> {
    if words.len() != dim {
        return err(line, format!("expected {dim} coordinates, found {}", words.len()));
    }
    let mut out = Vec::with_capacity(dim);
    for w in words {
        match w.parse::<Rational>() {
            Ok(x) => out.push(x),
            Err(_) => return err(line, format!("not a rational number: {w}")),
        }
    }
    Ok(RationalVector::new(out))
}

fn parse_index(line: usize, w: &str, rank: usize) -> Result<usize, ScfError> {
    match w.parse::<usize>() {
        Ok(i) if (1..=rank).contains(&i) => Ok(i - 1),
        _ => err(line, format!("index {w} is not in 1..{rank}")),
    }
}

/// Parses a document; the header must precede the first `cone` block.
pub fn parse_scf(text: &str) -> Result<ScfDocument, ScfError> {
    let mut comments = Vec::new();
    let mut in_header_comments = true;
    let mut system: Option<RootSystem> = None;
    let mut lattice: Option<LatticeDecl> = None;
    let mut hermitian = false;
    let mut exceptional = BTreeSet::new();
    let mut fibers: Vec<u8> = Vec::new();
    let mut cones = Vec::new();
    let mut current: Option<(ConeDecl, bool)> = None;
    let mut last = 0;

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last = line;
        let t = raw.trim();
        if let Some(c) = t.strip_prefix('#') {
            if in_header_comments {
                comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            }
            continue;
        }
        in_header_comments = false;
        let body = t.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        let key = words[0];
        let args = &words[1..];

        if let Some((cone, has_colors)) = current.as_mut() {
            let rs = system.as_ref().expect("cone after header");
            match key {
                "ray" => match args.first().copied() {
                    Some("coroot") if args.len() == 2 => {
                        cone.rays.push(RayDecl::Coroot(parse_index(line, args[1], rs.rank())?));
                    }
                    Some("vec") => {
                        cone.rays.push(RayDecl::Vec(parse_rationals(line, &args[1..], rs.realization_dim())?));
                    }
                    Some("coweight") => {
                        let v = parse_rationals(line, &args[1..], rs.rank())?;
                        cone.rays.push(RayDecl::Coweight(v.into_coords()));
                    }
                    _ => return err(line, "expected `ray coroot <i>`, `ray vec <coords>` or `ray coweight <coeffs>`"),
                },
                "colors" => {
                    if *has_colors {
                        return err(line, "a cone has a single `colors` line");
                    }
                    *has_colors = true;
                    for a in args {
                        let (i, s) = match a.split_once(':') {
                            Some((i, s)) => (i, s),
                            None => (*a, "1"),
                        };
                        let index = parse_index(line, i, rs.rank())?;
                        let slot: u8 = match s.parse() {
                            Ok(x) if x >= 1 && x <= fibers[index] => x,
                            _ => return err(line, format!("unknown color {a}")),
                        };
                        cone.colors.push(ColorId::new(index, slot));
                    }
                }
                "end" => {
                    let (cone, _) = current.take().expect("open cone");
                    cones.push(cone);
                }
                _ => return err(line, format!("unexpected `{key}` inside a cone block")),
            }
            continue;
        }

        match key {
            "rootsystem" => {
                if system.is_some() {
                    return err(line, "duplicate `rootsystem`");
                }
                if args.len() != 1 {
                    return err(line, "expected `rootsystem <TYPE>`");
                }
                let label: TypeLabel = match args[0].parse() {
                    Ok(l) => l,
                    Err(e) => return err(line, e.to_string()),
                };
                let rs = match RootSystem::build(&label) {
                    Ok(r) => r,
                    Err(e) => return err(line, e.to_string()),
                };
                fibers = vec![1; rs.rank()];
                system = Some(rs);
            }
            _ if system.is_none() => return err(line, "the file must start with `rootsystem <TYPE>`"),
            "lattice" => {
                lattice = Some(match args {
                    ["root"] => LatticeDecl::Root,
                    ["weight"] => LatticeDecl::Weight,
                    ["basis"] => LatticeDecl::Basis(Vec::new()),
                    _ => return err(line, "expected `lattice root|weight|basis`"),
                });
            }
            "row" => {
                let rs = system.as_ref().expect("header");
                let v = parse_rationals(line, args, rs.realization_dim())?;
                match lattice.as_mut() {
                    Some(LatticeDecl::Basis(rows)) => rows.push(v),
                    _ => return err(line, "`row` must follow `lattice basis`"),
                }
            }
            "hermitian" => {
                hermitian = match args {
                    ["true"] => true,
                    ["false"] => false,
                    _ => return err(line, "expected `hermitian true|false`"),
                };
            }
            "exceptional" => {
                let rs = system.as_ref().expect("header");
                for a in args {
                    exceptional.insert(parse_index(line, a, rs.rank())?);
                }
            }
            "fiber" => {
                let rs = system.as_ref().expect("header");
                if args.len() != 2 {
                    return err(line, "expected `fiber <index> 1|2`");
                }
                let i = parse_index(line, args[0], rs.rank())?;
                fibers[i] = match args[1] {
                    "1" => 1,
                    "2" => 2,
                    _ => return err(line, "a fiber holds 1 or 2 colors"),
                };
            }
            "cone" => {
                if !args.is_empty() {
                    return err(line, "`cone` takes no arguments");
                }
                current = Some((ConeDecl { rays: Vec::new(), colors: Vec::new() }, false));
            }
            "end" => return err(line, "`end` without `cone`"),
            _ => return err(line, format!("unknown directive `{key}`")),
        }
    }
    if current.is_some() {
        return err(last, "unterminated cone block");
    }
    let Some(rs) = system else {
        return err(last.max(1), "missing `rootsystem`");
    };
    let lattice = lattice.unwrap_or(LatticeDecl::Root);
    if let LatticeDecl::Basis(rows) = &lattice {
        if rows.len() != rs.rank() {
            return err(last.max(1), format!("lattice basis needs {} rows, found {}", rs.rank(), rows.len()));
        }
    }
    Ok(ScfDocument { comments, label: rs.label().clone(), lattice, hermitian, exceptional, fibers, cones })
}

fn write_vec(out: &mut String, v: &[Rational]) {
    for x in v {
        let _ = write!(out, " {x}");
    }
}

/// Canonical text of a document.
pub fn print_scf(doc: &ScfDocument) -> String {
    let mut out = String::new();
    for c in &doc.comments {
        if c.is_empty() {
            out.push_str("#\n");
        } else {
            let _ = writeln!(out, "# {c}");
        }
    }
    let _ = writeln!(out, "rootsystem {}", doc.label);
    match &doc.lattice {
        LatticeDecl::Root => out.push_str("lattice root\n"),
        LatticeDecl::Weight => out.push_str("lattice weight\n"),
        LatticeDecl::Basis(rows) => {
            out.push_str("lattice basis\n");
            for r in rows {
                out.push_str("row");
                write_vec(&mut out, r.coords());
                out.push('\n');
            }
        }
    }
    let _ = writeln!(out, "hermitian {}", doc.hermitian);
    if !doc.exceptional.is_empty() {
        out.push_str("exceptional");
        for i in &doc.exceptional {
            let _ = write!(out, " {}", i + 1);
        }
        out.push('\n');
    }
    for (i, &f) in doc.fibers.iter().enumerate() {
        if f != 1 {
            let _ = writeln!(out, "fiber {} {f}", i + 1);
        }
    }
    for c in &doc.cones {
        out.push_str("\ncone\n");
        for r in &c.rays {
            match r {
                RayDecl::Coroot(i) => {
                    let _ = writeln!(out, "  ray coroot {}", i + 1);
                }
                RayDecl::Vec(v) => {
                    out.push_str("  ray vec");
                    write_vec(&mut out, v.coords());
                    out.push('\n');
                }
                RayDecl::Coweight(v) => {
                    out.push_str("  ray coweight");
                    write_vec(&mut out, v);
                    out.push('\n');
                }
            }
        }
        out.push_str("  colors");
        for c in &c.colors {
            if c.slot == 1 {
                let _ = write!(out, " {}", c.index + 1);
            } else {
                let _ = write!(out, " {}:{}", c.index + 1, c.slot);
            }
        }
        out.push_str("\nend\n");
    }
    out
}

/// The datum and the maximal colored cones declared by a document.
pub fn to_datum(doc: &ScfDocument) -> Result<(SphericalDatum, Vec<ColoredCone>), ScfError> {
    let rs = Arc::new(RootSystem::build(&doc.label).map_err(|e| ScfError::Datum(e.to_string()))?);
    let l = rs.rank();
    let chi = match &doc.lattice {
        LatticeDecl::Root => rs.root_lattice(),
        LatticeDecl::Weight => rs.weight_lattice(),
        LatticeDecl::Basis(rows) => {
            let mut gens = Vec::new();
            for r in rows {
                gens.push(rs.unrealize(r).ok_or_else(|| {
                    ScfError::Datum(format!("lattice row {r} is off the sum-zero hyperplane"))
                })?);
            }
            Lattice::from_generators(l, &gens).map_err(|e| ScfError::Datum(e.to_string()))?
        }
    };
    let datum = SphericalDatum::new(rs.clone(), chi, doc.fibers.clone(), doc.exceptional.clone(), doc.hermitian)
        .map_err(|e| ScfError::Datum(e.to_string()))?;
    let mut cones = Vec::new();
    for c in &doc.cones {
        let mut gens = Vec::new();
        for r in &c.rays {
            gens.push(match r {
                RayDecl::Coroot(i) => rs.simple_coroot(*i).clone(),
                RayDecl::Vec(v) => rs
                    .unrealize(v)
                    .ok_or_else(|| ScfError::Datum(format!("ray {v} is off the sum-zero hyperplane")))?,
                RayDecl::Coweight(cs) => cs
                    .iter()
                    .zip(rs.fundamental_coweights())
                    .fold(RationalVector::zeros(l), |acc, (c, w)| acc.axpy(c, w)),
            });
        }
        cones.push(ColoredCone::new(Cone::from_generators(l, &gens), c.colors.iter().copied()));
    }
    Ok((datum, cones))
}

/// A document describing a fan by its maximal cones; rays carried by a
/// color of the cone are written as coroots, the others in fundamental
/// coweights.
pub fn from_fan(datum: &SphericalDatum, fan: &ColoredFan, comments: Vec<String>) -> ScfDocument {
    let rs = datum.system();
    let lattice = if *datum.chi() == rs.root_lattice() {
        LatticeDecl::Root
    } else if *datum.chi() == rs.weight_lattice() {
        LatticeDecl::Weight
    } else {
        LatticeDecl::Basis(datum.chi().basis().iter().map(|b| rs.realize(b)).collect())
    };
    let cones = fan
        .maximal_cones()
        .iter()
        .map(|cc| {
            let rays = cc
                .cone
                .rays()
                .into_iter()
                .map(|r| {
                    let p = datum.primitive(&r).unwrap_or(r);
                    match cc.colors.iter().find(|c| datum.primitive(datum.rho(**c)).as_ref() == Some(&p)) {
                        Some(c) => RayDecl::Coroot(c.index),
                        None => RayDecl::Coweight(rs.coweight_coordinates(&p)),
                    }
                })
                .collect::<BTreeSet<_>>();
            ConeDecl { rays: rays.into_iter().collect(), colors: cc.colors.iter().copied().collect() }
        })
        .collect();
    ScfDocument {
        comments,
        label: rs.label().clone(),
        lattice,
        hermitian: datum.is_hermitian(),
        exceptional: datum.exceptional().clone(),
        fibers: datum.fibers().to_vec(),
        cones,
    }
}

impl PartialOrd for RayDecl {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RayDecl {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let rank = |r: &RayDecl| match r {
            RayDecl::Coroot(_) => 0,
            RayDecl::Coweight(_) => 1,
            RayDecl::Vec(_) => 2,
        };
        rank(self).cmp(&rank(other)).then_with(|| match (self, other) {
            (RayDecl::Coroot(a), RayDecl::Coroot(b)) => a.cmp(b),
            (RayDecl::Coweight(a), RayDecl::Coweight(b)) => a.cmp(b),
            (RayDecl::Vec(a), RayDecl::Vec(b)) => a.cmp(b),
            _ => std::cmp::Ordering::Equal,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G2: &str = "rootsystem G2\nlattice root\nhermitian false\n\ncone\n  ray coroot 2\n  ray coweight 0 -1\n  colors 2\nend\n";

    #[test]
    fn round_trip() {
        let d = parse_scf(G2).unwrap();
        assert_eq!(print_scf(&d), G2);
        let (datum, cones) = to_datum(&d).unwrap();
        assert_eq!(datum.rank(), 2);
        assert_eq!(cones.len(), 1);
        assert_eq!(cones[0].cone.dimension(), 2);
    }

    #[test]
    fn empty_cone_list_parses() {
        let d = parse_scf("rootsystem A2\nlattice weight\n").unwrap();
        assert!(d.cones.is_empty());
    }

    #[test]
    fn dimension_error_has_line() {
        let e = parse_scf("rootsystem B3\ncone\n  ray vec 1/2 1/3\n  colors\nend\n").unwrap_err();
        assert_eq!(e, ScfError::Parse { line: 3, message: "expected 3 coordinates, found 2".into() });
    }

    #[test]
    fn unknown_color() {
        let e = parse_scf("rootsystem A2\ncone\n  ray coroot 1\n  colors 1:2\nend\n").unwrap_err();
        assert!(matches!(e, ScfError::Parse { line: 4, .. }));
        let e = parse_scf("rootsystem A2\ncone\n  colors 3\nend\n").unwrap_err();
        assert!(matches!(e, ScfError::Parse { line: 3, .. }));
    }

    #[test]
    fn header_errors() {
        assert!(matches!(parse_scf("lattice root\n"), Err(ScfError::Parse { line: 1, .. })));
        assert!(matches!(parse_scf("rootsystem Q7\n"), Err(ScfError::Parse { line: 1, .. })));
        assert!(matches!(parse_scf("rootsystem A2\ncone\n"), Err(ScfError::Parse { line: 2, .. })));
        assert!(matches!(parse_scf("rootsystem A2\nrow 1 0 -1\n"), Err(ScfError::Parse { line: 2, .. })));
    }

    #[test]
    fn a_type_vectors_live_in_sum_zero_space() {
        let d = parse_scf("rootsystem A2\ncone\n  ray vec 1 1 1\n  colors\nend\n").unwrap();
        assert!(matches!(to_datum(&d), Err(ScfError::Datum(_))));
    }
}
