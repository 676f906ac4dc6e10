use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use montesinos::catalog::{
    load_catalog, verify_catalog, PinnedMismatches, SHIPPED_CATALOG,
};
use montesinos::enumerate::{full_candidate_list, AllowedSlopes};
use montesinos::seifert::{double_branched_cover, SeifertInvariants};
use montesinos::slope::Slope;
use montesinos::surgery::{quotient_tangle_slope, twisted_slope};
use montesinos::tangle::MontesinosLink;

#[derive(Parser)]
#[command(
    name = "montesinos",
    version,
    about = "Exact-arithmetic toolkit for Dehn surgery on Montesinos knots"
)]
struct Cli {
    /// Output format: human-readable text or tab-separated records
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Audit a surgery catalog: |H1| of each claimed manifold against |H1|
    /// read from the slope. Exits 0 when the mismatch set equals the pinned
    /// baseline, 1 otherwise.
    VerifyTable {
        /// Catalog file; defaults to the compiled-in copy
        path: Option<PathBuf>,
        /// Pinned-mismatch baseline file; defaults to the compiled-in copy
        #[arg(long)]
        pinned: Option<PathBuf>,
    },
    /// Print the candidate knots for small Seifert fibered surgeries with
    /// their slope constraints
    Enumerate {
        /// Cap for the conjecturally bounded K(-1/2,2/5,1/(2n+1)) family
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u32).range(1..))]
        cap3: u32,
    },
    /// |H1| of a Seifert fibered space, e.g. "M(-1/2,1/3,-2/5)"; 0 means
    /// infinite
    #[command(name = "h1")]
    H1 { sfs: String },
    /// Seifert invariants of the double branched cover of a Montesinos link,
    /// e.g. "K(-1/2,1/3,1/7)" or "P(3,3,4;-1)"
    Dbc { knot: String },
    /// Normal form of Seifert invariants
    SfsNormalize { sfs: String },
    /// Minimal geometric intersection number of two slopes
    SlopeDistance {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// The slope r carried over by n twists along a circle the knot crosses
    /// with the given winding number
    Twist {
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 2)]
        winding: u32,
    },
    /// The replacement-tangle slope r0 - r of a surgery seen in the
    /// strong-inversion quotient
    TrickSlope {
        #[arg(allow_hyphen_values = true)]
        r0: String,
        #[arg(allow_hyphen_values = true)]
        r: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    };
    // One write keeps machine output atomic; a reader hanging up early
    // (e.g. `| head`) is not an error.
    if let Err(e) = io::stdout().lock().write_all(out.as_bytes()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(2);
        }
    }
    code
}

fn read(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn parse_slope(text: &str) -> Result<Slope, String> {
    text.parse().map_err(|e| format!("{e}"))
}

fn run(cli: Cli, out: &mut String) -> Result<ExitCode, String> {
    match cli.command {
        Command::VerifyTable { path, pinned } => {
            let source = match &path {
                Some(p) => read(p)?,
                None => SHIPPED_CATALOG.to_string(),
            };
            let catalog = load_catalog(&source).map_err(|e| e.to_string())?;
            let report = verify_catalog(&catalog);
            let baseline = match &pinned {
                Some(p) => PinnedMismatches::parse(&read(p)?).map_err(|e| e.to_string())?,
                None => PinnedMismatches::shipped(),
            };
            let ok = report.matches_pinned(&baseline);
            match cli.format {
                Format::Records => out.push_str(&report.render_records()),
                Format::Text => {
                    out.push_str(&report.render_text());
                    let verdict = if ok { "match" } else { "DIFFERS" };
                    let _ = writeln!(out, "pinned baseline: {verdict}");
                }
            }
            if ok {
                Ok(ExitCode::SUCCESS)
            } else {
                let observed = report.mismatches();
                for id in observed.keys() {
                    if !baseline.0.contains_key(id) {
                        eprintln!("unexpected mismatch: {id}");
                    }
                }
                for id in baseline.0.keys() {
                    if !observed.contains_key(id) {
                        eprintln!("pinned mismatch not observed: {id}");
                    }
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Enumerate { cap3 } => {
            let list = full_candidate_list(cap3);
            for (candidate, constraint) in &list {
                let _ = match cli.format {
                    Format::Records => {
                        let flag = if candidate.known_non_hyperbolic {
                            "non-hyperbolic"
                        } else {
                            "-"
                        };
                        writeln!(out, "{}\t{}\t{flag}", candidate.link, constraint_token(constraint))
                    }
                    Format::Text => {
                        let flag = if candidate.known_non_hyperbolic {
                            " [known non-hyperbolic]"
                        } else {
                            ""
                        };
                        writeln!(out, "{:<28} {constraint}{flag}", candidate.link.to_string())
                    }
                };
            }
            if cli.format == Format::Text {
                let _ = writeln!(
                    out,
                    "total: {} candidate knots (case-3 cap {cap3}, conjectural)",
                    list.len()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::H1 { sfs } => {
            let m: SeifertInvariants = sfs.parse().map_err(|e| format!("{e}"))?;
            let _ = writeln!(out, "{}", m.h1_order());
            Ok(ExitCode::SUCCESS)
        }
        Command::Dbc { knot } => {
            let k: MontesinosLink = knot.parse().map_err(|e| format!("{e}"))?;
            let _ = writeln!(out, "{}", double_branched_cover(&k));
            Ok(ExitCode::SUCCESS)
        }
        Command::SfsNormalize { sfs } => {
            let m: SeifertInvariants = sfs.parse().map_err(|e| format!("{e}"))?;
            let _ = writeln!(out, "{}", m.normalize());
            Ok(ExitCode::SUCCESS)
        }
        Command::SlopeDistance { a, b } => {
            let a = parse_slope(&a)?;
            let b = parse_slope(&b)?;
            let _ = writeln!(out, "{}", a.distance(&b));
            Ok(ExitCode::SUCCESS)
        }
        Command::Twist { r, n, winding } => {
            let r = parse_slope(&r)?;
            let _ = writeln!(out, "{}", twisted_slope(&r, n, winding));
            Ok(ExitCode::SUCCESS)
        }
        Command::TrickSlope { r0, r } => {
            let r0 = parse_slope(&r0)?;
            let r = parse_slope(&r)?;
            let tangle = quotient_tangle_slope(&r0, &r).map_err(|e| format!("{e}"))?;
            let _ = writeln!(out, "{tangle}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn constraint_token(constraint: &AllowedSlopes) -> &'static str {
    match constraint {
        AllowedSlopes::All => "all",
        AllowedSlopes::IntegralOnly => "integral-only",
        AllowedSlopes::IntegralWithNumeratorAtMost(3) => "integral-abs-p-le-3",
        AllowedSlopes::IntegralWithNumeratorAtMost(_) => "integral-bounded",
    }
}
