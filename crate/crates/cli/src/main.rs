use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use ogpkit::graycat::interpret;
use ogpkit::io::json::{
    parse_diag, parse_labelled, serialize_diag, serialize_expr, serialize_labelled,
    serialize_molecule, to_pretty,
};
use ogpkit::io::{export_dot, export_maxd_dot, export_svg_2diagram, fixture_complex, serialize_complex};
use ogpkit::molecule::{cell_to, compos, paste, Molecule};
use ogpkit::order::{k_order, maxd};
use ogpkit::products::{gray_labelled, gray_product, smash_collapse, LabelledComplex};
use ogpkit::regular::validate_complex;
use ogpkit::theories::{builtin, presentation_of_smash, tensor_pros, Builtin, DiagPresentation, Presentation};
use ogpkit::{Ogp, Sign};

/// Oriented graded posets, molecules, Gray products and presented theories.
///
/// Inputs are JSON files, `fixture:NAME` (O<n>, I<n>, U<n>,<m>, power, frob)
/// or `builtin:NAME` (N, Mon, coMon, MonComplex, coMonComplex, BialgExpected).
/// Exit status: 0 success, 1 semantic failure, 2 usage or parse error.
#[derive(Parser, Debug)]
#[command(name = "ogp", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    #[value(name = "-", alias = "minus")]
    Minus,
    #[value(name = "+", alias = "plus")]
    Plus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Minus => Sign::Minus,
            SignArg::Plus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check that every element has spherical, molecular, globular boundary.
    Validate {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// The n-boundary of a closed subset (the whole complex by default).
    Boundary {
        input: String,
        #[arg(long, short = 'n')]
        dim: i64,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<SignArg>,
        /// Comma-separated ids; their closure is used.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Paste two molecules along the k-boundary.
    Paste {
        left: String,
        right: String,
        #[arg(long, short)]
        k: usize,
    },
    /// The atom with input boundary `input` and output boundary `output`.
    Atom { input: String, output: String },
    /// The atom with the same boundary as a molecule.
    Compos { input: String },
    /// Gray product of two complexes, or of two labelled complexes.
    Gray { left: String, right: String },
    /// Smash product of labelled complexes or of presented complexes.
    Smash { left: String, right: String },
    /// Tensor product of two presented pros.
    Tensor { left: String, right: String },
    /// Interpret a 3-molecule as a composite of interchangers and generators.
    Interpret {
        input: String,
        /// Comma-separated ids of the 3-cells in the order to apply them.
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The graph Maxd_n of a closed subset.
    Maxd {
        input: String,
        #[arg(long, short = 'n')]
        dim: i64,
        #[arg(long)]
        subset: Option<String>,
    },
    /// Export a complex as canonical JSON, DOT or an SVG string diagram.
    Export {
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List shipped fixtures, print one, or write them all to a directory.
    Fixtures {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

enum Input {
    Complex(Ogp),
    Labelled(LabelledComplex),
    Pro(Presentation),
    Diag(DiagPresentation),
}

fn load(arg: &str) -> Result<Input, CliError> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return Ok(match builtin(name).map_err(usage)? {
            Builtin::Pro(p) => Input::Pro(p),
            Builtin::Complex(d) => Input::Diag(d),
        });
    }
    if let Some(name) = arg.strip_prefix("fixture:") {
        return Ok(Input::Complex(fixture_complex(name).map_err(usage)?));
    }
    let text = fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{arg}: parse error: {e}")))?;
    let ctx = |e: &dyn std::fmt::Display| usage(format!("{arg}: {e}"));
    if v.get("cells").is_some() {
        parse_diag(&text).map(Input::Diag).map_err(|e| ctx(&e))
    } else if v.get("generators").is_some() {
        serde_json::from_value(v).map(Input::Pro).map_err(|e| ctx(&e))
    } else if v.get("labels").is_some() {
        parse_labelled(&text).map(Input::Labelled).map_err(|e| ctx(&e))
    } else {
        ogpkit::io::parse_complex(&text).map(Input::Complex).map_err(|e| ctx(&e))
    }
}

fn complex(arg: &str) -> Result<Ogp, CliError> {
    match load(arg)? {
        Input::Complex(p) => Ok(p),
        Input::Labelled(l) => Ok(l.shape),
        _ => Err(usage(format!("{arg}: expected a complex"))),
    }
}

fn labelled(arg: &str) -> Result<LabelledComplex, CliError> {
    match load(arg)? {
        Input::Complex(p) => Ok(LabelledComplex::by_ids(p)),
        Input::Labelled(l) => Ok(l),
        _ => Err(usage(format!("{arg}: expected a complex"))),
    }
}

fn molecule(arg: &str) -> Result<Molecule, CliError> {
    Molecule::from_ogp(complex(arg)?).map_err(|e| failed(format!("{arg}: {e}")))
}

fn subset(p: &Ogp, ids: Option<&str>) -> Result<ogpkit::ElemSet, CliError> {
    match ids {
        None => Ok(p.full()),
        Some(s) => {
            let ids: Vec<&str> = s.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            Ok(p.closure(&p.set_from_ids(&ids).map_err(usage)?))
        }
    }
}

fn run(cmd: Cmd) -> Result<String, CliError> {
    match cmd {
        Cmd::Validate { input, json } => {
            let p = complex(&input)?;
            let r = validate_complex(&p);
            let text = if json {
                to_pretty(&r)
            } else {
                let mut s = String::new();
                for e in &r.elements {
                    s.push_str(&format!(
                        "{} (dim {}): {:?}\n",
                        e.id,
                        e.dim,
                        e.overall()
                    ));
                }
                s.push_str(&format!("{}: {:?}\n", r.name, r.status()));
                s
            };
            if r.passed() {
                Ok(text)
            } else {
                print!("{text}");
                Err(failed(format!("{} is not a regular directed complex", r.name)))
            }
        }
        Cmd::Boundary {
            input,
            dim,
            sign,
            subset: ids,
        } => {
            let p = complex(&input)?;
            let u = subset(&p, ids.as_deref())?;
            let b = p.boundary(&u, dim, sign.map(Sign::from));
            let suffix = match sign {
                Some(SignArg::Minus) => "-",
                Some(SignArg::Plus) => "+",
                None => "",
            };
            Ok(serialize_complex(&p.restrict(&b, format!("∂{dim}{suffix}{}", p.name()))))
        }
        Cmd::Paste { left, right, k } => {
            let m = paste(&molecule(&left)?, &molecule(&right)?, k).map_err(failed)?;
            Ok(serialize_molecule(&m))
        }
        Cmd::Atom { input, output } => {
            let m = cell_to(&molecule(&input)?, &molecule(&output)?).map_err(failed)?;
            Ok(serialize_molecule(&m))
        }
        Cmd::Compos { input } => {
            let m = compos(&molecule(&input)?).map_err(failed)?;
            Ok(serialize_molecule(&m))
        }
        Cmd::Gray { left, right } => match (load(&left)?, load(&right)?) {
            (Input::Complex(p), Input::Complex(q)) => Ok(serialize_complex(&gray_product(&p, &q))),
            _ => Ok(serialize_labelled(&gray_labelled(&labelled(&left)?, &labelled(&right)?))),
        },
        Cmd::Smash { left, right } => match (load(&left)?, load(&right)?) {
            (Input::Diag(x), Input::Diag(y)) => Ok(serialize_diag(&presentation_of_smash(&x, &y))),
            _ => Ok(serialize_labelled(&smash_collapse(&gray_labelled(
                &labelled(&left)?,
                &labelled(&right)?,
            )))),
        },
        Cmd::Tensor { left, right } => match (load(&left)?, load(&right)?) {
            (Input::Pro(t), Input::Pro(s)) => Ok(to_pretty(&tensor_pros(&t, &s).map_err(failed)?)),
            _ => Err(usage("tensor expects two presented pros")),
        },
        Cmd::Interpret { input, order, json } => {
            let p = complex(&input)?;
            let full = p.full();
            let order = match order {
                Some(s) => {
                    let mut xs = Vec::new();
                    for id in s.split(',').map(str::trim) {
                        xs.push(p.index_of(id).ok_or_else(|| usage(format!("unknown element id {id:?}")))?);
                    }
                    xs
                }
                None => k_order(&p, &full, 2).ok_or_else(|| failed("no 2-order exists"))?,
            };
            let e = interpret(&p, &full, Some(&order)).map_err(failed)?;
            if json {
                Ok(serialize_expr(&p, &e))
            } else {
                Ok(format!("{}\n", e.display(&p)))
            }
        }
        Cmd::Maxd {
            input,
            dim,
            subset: ids,
        } => {
            let p = complex(&input)?;
            let u = subset(&p, ids.as_deref())?;
            Ok(export_maxd_dot(&p, &maxd(&p, &u, dim), &[]))
        }
        Cmd::Export { input, format } => match (format, load(&input)?) {
            (Format::Json, Input::Complex(p)) => Ok(serialize_complex(&p)),
            (Format::Json, Input::Labelled(l)) => Ok(serialize_labelled(&l)),
            (Format::Json, Input::Pro(p)) => Ok(to_pretty(&p)),
            (Format::Json, Input::Diag(d)) => Ok(serialize_diag(&d)),
            (Format::Dot, _) => {
                let p = complex(&input)?;
                Ok(export_dot(&p, &p.full()))
            }
            (Format::Svg, _) => export_svg_2diagram(&labelled(&input)?).map_err(failed),
        },
        Cmd::Fixtures { name, out } => fixtures(name.as_deref(), out),
    }
}

const SHAPES: [&str; 4] = ["O2", "U2,1", "power", "frob"];

fn fixture_text(name: &str) -> Result<String, CliError> {
    match builtin(name) {
        Ok(Builtin::Pro(p)) => Ok(to_pretty(&p)),
        Ok(Builtin::Complex(d)) => Ok(serialize_diag(&d)),
        Err(_) => fixture_complex(name).map(|p| serialize_complex(&p)).map_err(usage),
    }
}

fn fixtures(name: Option<&str>, out: Option<PathBuf>) -> Result<String, CliError> {
    if let Some(name) = name {
        return fixture_text(name);
    }
    let names: Vec<&str> = SHAPES
        .iter()
        .chain(ogpkit::theories::builtin::BUILTIN_NAMES.iter())
        .copied()
        .collect();
    match out {
        None => Ok(format!(
            "shapes: O<n>, I<n>, U<n>,<m>, power, frob\nbuiltins: {}\n",
            ogpkit::theories::builtin::BUILTIN_NAMES.join(", ")
        )),
        Some(dir) => {
            fs::create_dir_all(&dir).map_err(usage)?;
            let mut log = String::new();
            for n in names {
                let path = dir.join(format!("{}.json", n.replace(',', "_")));
                fs::write(&path, fixture_text(n)?).map_err(usage)?;
                log.push_str(&format!("{}\n", path.display()));
            }
            Ok(log)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (CliError::Usage(m) | CliError::Failed(m)) = &e;
            eprintln!("error: {m}");
            ExitCode::from(e.code())
        }
    }
}
