//! Command-line front end: parse manifold/link files, run classification
//! and replay queries, and emit line-oriented `key=value` reports.
//!
//! The CLI is a thin shell — every result is the corresponding library
//! call's result. Exit codes: 0 success, 2 invalid input (file format or
//! a violated manifold hypothesis, with a diagnostic naming it), 64
//! unknown verb, 66 unreadable file.

#![forbid(unsafe_code)]

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use framelink::{
    classify, degree_map_behavior, divisibility, euler_class, fiber, replay_injectivity,
    replay_well_definedness, torus_classification, FramedLinkClass, HomologyClass, ImmersedSurface,
    IntegerMatrix, LinkFile, Manifold, W2Pairings,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_UNKNOWN_VERB: i32 = 64;
pub const EXIT_UNREADABLE_FILE: i32 = 66;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Record,
}

#[derive(Debug, Parser)]
#[command(
    name = "framelink",
    about = "Classification of framed links in closed oriented 3-manifolds",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Args)]
struct FormatArg {
    /// Output mode: `record` is strictly line-oriented key=value
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Homology groups of a manifold in all degrees
    Homology {
        /// `builtin:<name>` or a triangulation / chain-complex file
        #[arg(long)]
        manifold: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Classification table: H_1 and the fiber over each class
    Classify {
        #[arg(long)]
        manifold: String,
        /// Enumeration radius for free coordinates
        #[arg(long, default_value_t = 5)]
        bound: i64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Divisibility and fiber group of one class
    Fiber {
        #[arg(long)]
        manifold: String,
        /// Class coordinates `csv[/t:csv]` (`0` is the zero class)
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Link file to ingest instead of coordinates
        #[arg(long)]
        link: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Closed-form answer for maps from the 3-torus
    Torus {
        /// Degrees of the restrictions to the coordinate 2-subtori
        #[arg(long, allow_hyphen_values = true)]
        pqr: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Stable-range criterion from w2 pairing evaluations
    Theorem2 {
        /// Comma-separated 0/1 values of the pairings (empty for rank 0)
        #[arg(long, allow_hyphen_values = true)]
        w2: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Normal Euler class of an immersed surface
    Euler {
        /// `product` or a matrix text file with the intersection form
        #[arg(long)]
        form: String,
        /// Surface class coordinates (csv), for the closed-4-manifold case
        #[arg(long, allow_hyphen_values = true)]
        coords: Option<String>,
        /// Signed self-intersection count
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        sigma: i64,
        /// Emit the derivation transcript
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Decide framed cobordance of two normal forms
    Cobordant {
        #[arg(long)]
        manifold: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        twist: i64,
        #[arg(long)]
        link: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        alpha2: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        twist2: i64,
        #[arg(long)]
        link2: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Replay the well-definedness or injectivity Euler arithmetic
    Replay {
        /// Divisibility d(alpha) >= 0
        #[arg(long)]
        d: i64,
        /// Euler class of the first cobordism (well-definedness mode)
        #[arg(long, allow_hyphen_values = true)]
        el: Option<i64>,
        /// Euler class of the second cobordism (well-definedness mode)
        #[arg(long, allow_hyphen_values = true)]
        elprime: Option<i64>,
        /// Pairing [pK].alpha (well-definedness mode)
        #[arg(long, allow_hyphen_values = true)]
        pk: Option<i64>,
        /// Euler-class difference (injectivity mode)
        #[arg(long, allow_hyphen_values = true)]
        ediff: Option<i64>,
        /// Emit the derivation transcript
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        format: FormatArg,
    },
}

/// A failure to report: exit code plus diagnostic.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Display) -> Failure {
        Failure {
            code: EXIT_INVALID_INPUT,
            message: message.to_string(),
        }
    }

    fn unreadable(path: &Path, err: impl Display) -> Failure {
        Failure {
            code: EXIT_UNREADABLE_FILE,
            message: format!("cannot read {}: {err}", path.display()),
        }
    }
}

/// Run the CLI on `argv` (without the binary name), writing the report to
/// `out` and diagnostics to `err`; returns the exit status.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut full = vec!["framelink".to_string()];
    full.extend(argv.iter().cloned());
    let cli = match Cli::try_parse_from(&full) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                ErrorKind::InvalidSubcommand => {
                    let _ = writeln!(err, "{e}");
                    EXIT_UNKNOWN_VERB
                }
                _ => {
                    let _ = writeln!(err, "{e}");
                    EXIT_INVALID_INPUT
                }
            };
        }
    };
    match dispatch(cli.verb) {
        Ok(lines) => {
            for line in lines {
                let _ = writeln!(out, "{line}");
            }
            EXIT_OK
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(verb: Verb) -> Result<Vec<String>, Failure> {
    match verb {
        Verb::Homology { manifold, .. } => run_homology(&manifold),
        Verb::Classify {
            manifold, bound, ..
        } => run_classify(&manifold, bound),
        Verb::Fiber {
            manifold,
            alpha,
            link,
            ..
        } => run_fiber(&manifold, alpha.as_deref(), link.as_deref()),
        Verb::Torus { pqr, format } => run_torus(&pqr, format.format),
        Verb::Theorem2 { w2, .. } => run_theorem2(&w2),
        Verb::Euler {
            form,
            coords,
            sigma,
            trace,
            ..
        } => run_euler(&form, coords.as_deref(), sigma, trace),
        Verb::Cobordant {
            manifold,
            alpha,
            twist,
            link,
            alpha2,
            twist2,
            link2,
            ..
        } => run_cobordant(
            &manifold,
            alpha.as_deref(),
            twist,
            link.as_deref(),
            alpha2.as_deref(),
            twist2,
            link2.as_deref(),
        ),
        Verb::Replay {
            d,
            el,
            elprime,
            pk,
            ediff,
            trace,
            ..
        } => run_replay(d, el, elprime, pk, ediff, trace),
    }
}

// ---- input loading -------------------------------------------------------

/// Resolve `builtin:` URIs or load a manifold file (triangulation or
/// chain complex, told apart by the header line).
fn load_manifold(uri: &str) -> Result<Manifold, Failure> {
    if let Some(name) = uri.strip_prefix("builtin:") {
        return builtin_manifold(name)
            .ok_or_else(|| Failure::invalid(format!("unknown builtin manifold `{uri}`")));
    }
    let path = Path::new(uri);
    let text = std::fs::read_to_string(path).map_err(|e| Failure::unreadable(path, e))?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let presentation = if first.starts_with("dim") {
        framelink::complex::parse_triangulation(&text).map_err(Failure::invalid)?
    } else if first.starts_with("chain") {
        framelink::complex::parse_chain_complex(&text).map_err(Failure::invalid)?
    } else {
        return Err(Failure::invalid(format!(
            "{}: expected a `dim 3` or `chain dim D` header",
            path.display()
        )));
    };
    Ok(Manifold::new(presentation)
        .map_err(Failure::invalid)?
        .with_label(uri))
}

fn builtin_manifold(name: &str) -> Option<Manifold> {
    match name {
        "s3" => Some(Manifold::sphere3()),
        "t3" => Some(Manifold::torus3()),
        "s1xs2" => Some(Manifold::s1_x_s2()),
        _ => {
            let rest = name.strip_prefix("lens:")?;
            let (p, q) = rest.split_once(':')?;
            Manifold::lens(p.parse().ok()?, q.parse().ok()?).ok()
        }
    }
}

fn parse_csv(text: &str) -> Result<Vec<BigInt>, Failure> {
    if text.trim().is_empty() {
        return Ok(vec![]);
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::invalid(format!("invalid integer `{}`", t.trim())))
        })
        .collect()
}

/// `csv[/t:csv]`, with `0` accepted as the zero class of any group.
fn parse_alpha(m: &Manifold, text: &str) -> Result<HomologyClass, Failure> {
    let h1 = m.h1();
    if text.trim() == "0" {
        return Ok(h1.zero_class());
    }
    let (free_text, torsion_text) = match text.split_once("/t:") {
        Some((f, t)) => (f, t),
        None => (text, ""),
    };
    let free = parse_csv(free_text)?;
    let torsion = parse_csv(torsion_text)?;
    h1.class(free, torsion).map_err(|e| {
        Failure::invalid(format!(
            "alpha `{text}` does not fit H_1 = {}: {e}",
            h1.describe()
        ))
    })
}

fn load_link(m: &Manifold, path: &Path) -> Result<FramedLinkClass, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::unreadable(path, e))?;
    let file = LinkFile::parse(&text).map_err(Failure::invalid)?;
    file.ingest(m).map_err(Failure::invalid)
}

// ---- verbs ---------------------------------------------------------------

fn run_homology(uri: &str) -> Result<Vec<String>, Failure> {
    let m = load_manifold(uri)?;
    let mut lines = vec![format!("manifold={}", m.label())];
    for k in 0..=m.dimension() {
        let h = m.homology(k).map_err(Failure::invalid)?;
        lines.push(format!("h{k}={}", h.describe()));
    }
    Ok(lines)
}

fn run_classify(uri: &str, bound: i64) -> Result<Vec<String>, Failure> {
    if bound < 0 {
        return Err(Failure::invalid("bound must be nonnegative"));
    }
    let m = load_manifold(uri)?;
    let table = classify(&m);
    let mut lines = vec![
        format!("manifold={}", table.manifold()),
        format!("h1={}", table.h1().describe()),
    ];
    for alpha in table.enumerate_classes(bound) {
        let f = table.fiber_of(&alpha).map_err(Failure::invalid)?;
        lines.push(format!(
            "alpha={alpha} d={} fiber={f}",
            divisibility(&alpha)
        ));
    }
    Ok(lines)
}

fn run_fiber(uri: &str, alpha: Option<&str>, link: Option<&Path>) -> Result<Vec<String>, Failure> {
    let m = load_manifold(uri)?;
    match (alpha, link) {
        (Some(text), None) => {
            let alpha = parse_alpha(&m, text)?;
            let f = fiber(&alpha);
            Ok(vec![format!("d={} fiber={f}", divisibility(&alpha))])
        }
        (None, Some(path)) => {
            let l = load_link(&m, path)?;
            let f = fiber(l.degree());
            Ok(vec![
                format!("alpha={}", l.degree()),
                format!("d={} fiber={f}", divisibility(l.degree())),
                format!("h={}", l.h_invariant()),
            ])
        }
        _ => Err(Failure::invalid(
            "fiber needs exactly one of --alpha or --link",
        )),
    }
}

fn run_torus(pqr: &str, format: Format) -> Result<Vec<String>, Failure> {
    let values = parse_csv(pqr)?;
    let [p, q, r] = values.as_slice() else {
        return Err(Failure::invalid("--pqr expects exactly three integers"));
    };
    let to_i64 = |v: &BigInt| -> Result<i64, Failure> {
        v.try_into()
            .map_err(|_| Failure::invalid(format!("degree {v} out of range")))
    };
    let result = torus_classification(to_i64(p)?, to_i64(q)?, to_i64(r)?);
    let mut lines = Vec::new();
    if format == Format::Text {
        lines.push(format!("description={}", result.description));
    }
    lines.push(format!("fiber={}", result.fiber));
    Ok(lines)
}

fn run_theorem2(w2: &str) -> Result<Vec<String>, Failure> {
    let entries: Vec<u8> = parse_csv(w2)?
        .iter()
        .map(|v| {
            u8::try_from(v).map_err(|_| Failure::invalid(format!("w2 entry {v} must be 0 or 1")))
        })
        .collect::<Result<_, _>>()?;
    let pairings = W2Pairings::new(entries).map_err(Failure::invalid)?;
    Ok(vec![format!(
        "degree_map={}",
        degree_map_behavior(&pairings)
    )])
}

fn run_euler(
    form: &str,
    coords: Option<&str>,
    sigma: i64,
    trace: bool,
) -> Result<Vec<String>, Failure> {
    let surface = if form == "product" {
        if coords.is_some_and(|c| !c.trim().is_empty()) {
            return Err(Failure::invalid(
                "--coords is meaningless for the product ambient",
            ));
        }
        ImmersedSurface::product(sigma)
    } else {
        let path = Path::new(form);
        let text = std::fs::read_to_string(path).map_err(|e| Failure::unreadable(path, e))?;
        let q = IntegerMatrix::parse_text(&text).map_err(Failure::invalid)?;
        let coords = parse_csv(coords.unwrap_or_default())?;
        ImmersedSurface::closed4(coords, q, sigma)
    };
    let e = euler_class(&surface).map_err(Failure::invalid)?;
    let mut lines = Vec::new();
    if trace {
        lines.push(format!(
            "step=1 rule=\"pairing term minus 2*sigma\" before=0 after={e}"
        ));
    }
    lines.push(format!("euler={e}"));
    Ok(lines)
}

#[allow(clippy::too_many_arguments)]
fn run_cobordant(
    uri: &str,
    alpha: Option<&str>,
    twist: i64,
    link: Option<&Path>,
    alpha2: Option<&str>,
    twist2: i64,
    link2: Option<&Path>,
) -> Result<Vec<String>, Failure> {
    let m = load_manifold(uri)?;
    let side = |alpha: Option<&str>,
                twist: i64,
                link: Option<&Path>,
                which: &str|
     -> Result<FramedLinkClass, Failure> {
        match (alpha, link) {
            (Some(text), None) => Ok(FramedLinkClass::new(parse_alpha(&m, text)?, twist)),
            (None, Some(path)) => load_link(&m, path),
            _ => Err(Failure::invalid(format!(
                "{which} side needs exactly one of --alpha{0}/--link{0}",
                if which == "second" { "2" } else { "" }
            ))),
        }
    };
    let left = side(alpha, twist, link, "first")?;
    let right = side(alpha2, twist2, link2, "second")?;
    let verdict = left.framed_cobordant(&right).map_err(Failure::invalid)?;
    Ok(vec![
        format!("alpha_left={}", left.degree()),
        format!("alpha_right={}", right.degree()),
        format!("h_left={}", left.h_invariant()),
        format!("h_right={}", right.h_invariant()),
        format!("cobordant={verdict}"),
    ])
}

fn run_replay(
    d: i64,
    el: Option<i64>,
    elprime: Option<i64>,
    pk: Option<i64>,
    ediff: Option<i64>,
    trace: bool,
) -> Result<Vec<String>, Failure> {
    if d < 0 {
        return Err(Failure::invalid("--d must be nonnegative"));
    }
    let d = BigInt::from(d);
    match (el, elprime, pk, ediff) {
        (Some(el), Some(elprime), Some(pk), None) => {
            let report = replay_well_definedness(
                &d,
                &BigInt::from(el),
                &BigInt::from(elprime),
                &BigInt::from(pk),
            )
            .map_err(Failure::invalid)?;
            let mut lines = vec![
                "mode=well-definedness".to_string(),
                format!("euler_k={}", report.euler_k),
                format!("sigma={}", report.sigma),
                format!("modulus={}", report.modulus),
            ];
            if trace {
                lines.extend(report.trace.iter().map(ToString::to_string));
            }
            lines.push("verdict=consistent".to_string());
            Ok(lines)
        }
        (None, None, None, Some(ediff)) => {
            let report = replay_injectivity(&d, &BigInt::from(ediff)).map_err(Failure::invalid)?;
            let mut lines = vec![
                "mode=injectivity".to_string(),
                format!("y={}", report.y),
                format!("moves={}", report.moves),
                format!("final_euler={}", report.final_euler),
            ];
            if trace {
                lines.extend(report.trace.iter().map(ToString::to_string));
            }
            lines.push("verdict=framed-cobordant".to_string());
            Ok(lines)
        }
        _ => Err(Failure::invalid(
            "replay needs either --el/--elprime/--pk (well-definedness) or --ediff (injectivity)",
        )),
    }
}
