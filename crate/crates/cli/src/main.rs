use std::collections::BTreeMap;
use std::error::Error;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hecke::oracle::table_at_q;
use hecke::{
    classify, enumerate_reps, format_element, mul, parse_element, parse_matrix, product_counts, run_suite, BasisIndex,
    Format, Sheet, Suite, SuiteParams, Table,
};

/// Exact computations in the Iwahori-Hecke algebra of SL_2 over a
/// two-dimensional local field.
#[derive(Parser)]
#[command(name = "hecke", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Latex,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
            OutputFormat::Latex => Format::Latex,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the product of two element expressions.
    #[command(allow_negative_numbers = true)]
    Mul {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Print one coefficient of an element expression.
    #[command(allow_negative_numbers = true)]
    Coeff {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Basis label as a,i,j.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Print the double coset label of a matrix such as "[[1,1],[t1,1+t1]]".
    Classify {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        q: u64,
    },
    /// Print right-coset representatives of chi(a,i,0).
    #[command(allow_negative_numbers = true)]
    Reps {
        a: i64,
        i: i64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        count_only: bool,
    },
    /// Compare coset counting with the product table for chi(a,i,0) * chi(b,k,0).
    #[command(allow_negative_numbers = true)]
    Oracle {
        /// First factor as a,i.
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Second factor as b,k.
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        q: u64,
    },
    /// Run a verification suite, or "all".
    Verify {
        suite: String,
        #[arg(long)]
        range: Option<i64>,
        /// Residue field sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<u64>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn ints(text: &str, want: usize) -> Result<Vec<i64>, String> {
    let v: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad integer {t:?} in {text:?}")))
        .collect::<Result<_, _>>()?;
    if v.len() != want {
        return Err(format!("expected {want} comma-separated integers, got {text:?}"));
    }
    Ok(v)
}

fn entry<V: ToString>(m: &BTreeMap<BasisIndex, V>, k: &BasisIndex) -> String {
    m.get(k).map_or_else(|| "0".to_string(), V::to_string)
}

fn level_zero_label(text: &str) -> Result<BasisIndex, Box<dyn Error>> {
    let v = ints(text, 2)?;
    Ok(BasisIndex::new(v[0], v[1], 0)?)
}

/// Runs a command; `Ok(false)` means a check ran and failed.
fn run(cli: Cli) -> Result<bool, Box<dyn Error>> {
    match cli.command {
        Command::Mul { left, right, json, format } => {
            let x = parse_element(&left)?;
            let y = parse_element(&right)?;
            let mode = if json { Format::Json } else { format.into() };
            println!("{}", format_element(&mul(&x, &y)?, mode));
        }
        Command::Coeff { expr, at } => {
            let v = ints(&at, 3)?;
            let target = BasisIndex::new(v[0], v[1], v[2])?;
            println!("{}", parse_element(&expr)?.coefficient(target));
        }
        Command::Classify { matrix, q } => {
            println!("{}", classify(&parse_matrix(&matrix, q)?)?);
        }
        Command::Reps { a, i, q, count_only } => {
            let reps = enumerate_reps(Sheet::from_index(a)?, i, q)?;
            if count_only {
                println!("{}", reps.len());
            } else {
                let mut out = io::stdout().lock();
                for z in reps {
                    if writeln!(out, "{z}").is_err() {
                        break;
                    }
                }
            }
        }
        Command::Oracle { x, y, q } => {
            let (x, y) = (level_zero_label(&x)?, level_zero_label(&y)?);
            let counted = product_counts(x, y, q)?;
            let predicted = table_at_q(Table::Standard, x, y, q)?;
            println!("chi{x} * chi{y} at q = {q}");
            println!("{:<12} {:>12} {:>12}", "target", "counted", "table");
            let mut keys: Vec<&BasisIndex> = counted.keys().chain(predicted.keys()).collect();
            keys.sort();
            keys.dedup();
            for k in keys {
                println!("{:<12} {:>12} {:>12}", k.to_string(), entry(&counted, k), entry(&predicted, k));
            }
            let agree = counted == predicted;
            println!("{}", if agree { "agree" } else { "DISAGREE" });
            return Ok(agree);
        }
        Command::Verify { suite, range, q, seed, json } => {
            let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
            let mut params = SuiteParams { range, seed, ..SuiteParams::default() };
            if let Some(qs) = q {
                params.qs = qs;
            }
            let mut reports = Vec::new();
            for s in suites {
                let report = run_suite(s, &params)?;
                if !json {
                    print!("{report}");
                }
                reports.push(report);
            }
            if json {
                let value = if reports.len() == 1 {
                    serde_json::to_value(&reports[0])?
                } else {
                    serde_json::to_value(&reports)?
                };
                println!("{}", serde_json::to_string_pretty(&value)?);
            }
            return Ok(reports.iter().all(|r| r.passed()));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
