use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use mdk::render::{self, Format};
use mdk::report;
use mdk::source;
use mdk::verify::{self, Suite};
use mdk::words;
use mdk_core::dyck::{self, ReducedForm, Token};
use mdk_core::{lambda, tower};

/// Exact-arithmetic tools for topological Markov-Dyck shifts.
#[derive(Parser)]
#[command(name = "mdk", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the per-level transition matrices (symbolic, incidence,
    /// and their integer difference).
    Matrices {
        /// Builtin name (`fibonacci`, `full:N`) or matrix file path.
        #[arg(long, default_value = "fibonacci")]
        matrix: String,
        /// Highest graph level to build.
        #[arg(long = "max-level", default_value_t = 8)]
        max_level: usize,
        /// Output format: pretty, json, or latex.
        #[arg(long, default_value = "pretty")]
        format: Format,
        /// Write output to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a bracket word is admissible.
    CheckWord {
        /// The word, e.g. "a1 b1 a2" or "(1 )1 (2".
        word: String,
        #[arg(long, default_value = "fibonacci")]
        matrix: String,
        /// Cross-check the verdict against the labeled-path oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the level-wise K-theory report (JSON).
    Ktheory {
        #[arg(long, default_value = "fibonacci")]
        matrix: String,
        #[arg(long = "max-level", default_value_t = 8)]
        max_level: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the reproduction battery.
    VerifyPaper {
        /// Which battery: fibonacci, dyck2, or all.
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn reduced_form_text(form: &ReducedForm) -> String {
    match form {
        ReducedForm::Zero => "0".into(),
        ReducedForm::Word(tokens) if tokens.is_empty() => "1".into(),
        ReducedForm::Word(tokens) => tokens
            .iter()
            .map(|t| match t {
                Token::Alpha(i) => format!("a{i}"),
                Token::Beta(i) => format!("b{i}"),
                Token::Proj(s) => {
                    let members: Vec<String> =
                        s.members().map(|j| j.to_string()).collect();
                    format!("P{{{}}}", members.join(","))
                }
            })
            .collect::<Vec<_>>()
            .join(" "),
    }
}

fn cmd_matrices(
    matrix: &str,
    max_level: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<bool, String> {
    let src = source::resolve(matrix).map_err(|e| e.to_string())?;
    let system =
        lambda::build_cantor_horizon(&src.matrix, max_level).map_err(|e| e.to_string())?;
    let mut text = String::new();
    if format == Format::Json {
        let mut levels = Vec::new();
        for l in 0..max_level {
            let (m, i) = system.symbolic_matrix_pair(l).map_err(|e| e.to_string())?;
            let a = tower::level_map(&system, l).map_err(|e| e.to_string())?;
            levels.push(json!({
                "l": l,
                "symbolic": render::symbolic_json(&m),
                "incidence": render::int_json(&i),
                "difference": render::int_json(&a),
            }));
        }
        let doc = json!({ "matrix": src.name, "levels": levels });
        text = serde_json::to_string_pretty(&doc).expect("matrix dump serializes");
        text.push('\n');
    } else {
        for l in 0..max_level {
            let (m, i) = system.symbolic_matrix_pair(l).map_err(|e| e.to_string())?;
            let a = tower::level_map(&system, l).map_err(|e| e.to_string())?;
            text.push_str(&format!("M_{{{},{}}}:\n", l, l + 1));
            text.push_str(&render::render_symbolic(&m, format));
            text.push_str(&format!("\nI_{{{},{}}}:\n", l, l + 1));
            text.push_str(&render::render_int(&i, format));
            text.push_str(&format!("\nA_{{{},{}}} = M^t - I^t:\n", l + 1, l));
            text.push_str(&render::render_int(&a, format));
            text.push('\n');
        }
    }
    emit(out, &text)?;
    Ok(true)
}

fn cmd_check_word(
    word: &str,
    matrix: &str,
    oracle: bool,
    out: &Option<PathBuf>,
) -> Result<bool, String> {
    let src = source::resolve(matrix).map_err(|e| e.to_string())?;
    let w = words::parse_word(word).map_err(|e| e.to_string())?;
    let form = dyck::reduce(&src.matrix, &w).map_err(|e| format!("{e:?}"))?;
    let admissible = !form.is_zero();
    let mut text = format!(
        "{}: {}\nreduced form: {}\n",
        words::format_word(&w),
        if admissible { "admissible" } else { "forbidden" },
        reduced_form_text(&form),
    );
    let mut agree = true;
    if oracle {
        let bound = w.len().max(1);
        let by_path = dyck::oracle_is_admissible(&src.matrix, &w, bound)
            .map_err(|e| e.to_string())?;
        agree = by_path == admissible;
        text.push_str(&format!(
            "path oracle: {} ({})\n",
            if by_path { "admissible" } else { "forbidden" },
            if agree { "agrees" } else { "DISAGREES" },
        ));
    }
    emit(out, &text)?;
    Ok(agree)
}

fn cmd_ktheory(matrix: &str, max_level: usize, out: &Option<PathBuf>) -> Result<bool, String> {
    let src = source::resolve(matrix).map_err(|e| e.to_string())?;
    let report =
        report::build_report(&src.name, &src.matrix, max_level).map_err(|e| e.to_string())?;
    emit(out, &report.to_json())?;
    Ok(report.all_checks_pass())
}

fn cmd_verify_paper(suite: Suite, out: &Option<PathBuf>) -> Result<bool, String> {
    let result = verify::run_suite(suite);
    emit(out, &result.render())?;
    Ok(result.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Matrices { matrix, max_level, format, out } => {
            cmd_matrices(matrix, *max_level, *format, out)
        }
        Command::CheckWord { word, matrix, oracle, out } => {
            cmd_check_word(word, matrix, *oracle, out)
        }
        Command::Ktheory { matrix, max_level, out } => cmd_ktheory(matrix, *max_level, out),
        Command::VerifyPaper { suite, out } => cmd_verify_paper(*suite, out),
    };
    match outcome {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
