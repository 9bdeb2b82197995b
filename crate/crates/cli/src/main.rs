//! `ncx`: command-line access to the ncomplex toolkit.
//!
//! Exit codes: 0 when the answer is "true" (or the command just produced
//! output), 1 when it is "false" or a verification suite failed, 2 on bad
//! input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ncomplex::classes::{self, ClassSpec};
use ncomplex::complex::{ExactnessMode, NComplex};
use ncomplex::document::{complex_to_string, load_complex, load_map};
use ncomplex::homotopy;
use ncomplex::triangle;
use ncomplex::verify::{self, Suite};
use ncomplex::Error;

#[derive(Parser)]
#[command(name = "ncx", version, about = "Exact computations with N-complexes")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct One {
    /// Input document.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(clap::Args)]
struct Two {
    /// First input document.
    #[arg(long = "in")]
    input: PathBuf,
    /// Second input document.
    #[arg(long = "in2")]
    input2: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check that d^N = 0.
    Validate(One),
    /// List the nonzero amplitude homology H^i_r.
    Homology(One),
    /// Decide N-exactness. Mode: `all` or an amplitude r.
    Exact {
        #[command(flatten)]
        io: One,
        #[arg(long, default_value = "all")]
        mode: String,
    },
    /// Mapping cone of the chain map in `--in`.
    Cone(One),
    /// Suspension.
    Susp(One),
    /// Inverse suspension.
    Isusp(One),
    /// Hull I(X).
    Hull(One),
    /// Whether two chain maps are homotopic.
    Homotopic(Two),
    /// Dimensions of Hom in the homotopy category, from `--in` to `--in2`.
    Homk(Two),
    /// dim Ext^1_dw(Y, X) with Y from `--in` and X from `--in2`.
    Extdw(Two),
    /// Class membership. Mode: `base:variant`, e.g. `all:ex`.
    Classcheck {
        #[command(flatten)]
        io: One,
        #[arg(long, default_value = "all:ex")]
        mode: String,
    },
    /// Disc-extension criterion for N-exactness.
    Prop31(One),
    /// Run a seeded verification suite.
    Verify {
        suite: String,
        #[arg(long, env = "NCOMPLEX_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
}

struct Answer {
    ok: bool,
    text: String,
    json: Value,
}

impl Answer {
    fn verdict(ok: bool, json: Value) -> Self {
        Answer { ok, text: ok.to_string(), json }
    }

    fn complex(x: &NComplex) -> Self {
        let text = complex_to_string(x);
        let json = serde_json::from_str(&text).expect("documents are JSON");
        Answer { ok: true, text: text.trim_end().to_string(), json }
    }
}

fn parse_mode(mode: &str) -> Result<ExactnessMode, Error> {
    if mode == "all" {
        return Ok(ExactnessMode::AllAmplitudes);
    }
    mode.parse()
        .map(ExactnessMode::SingleAmplitude)
        .map_err(|_| Error::Parse(format!("mode must be `all` or an amplitude, got {mode:?}")))
}

fn run(cmd: Command) -> Result<Answer, Error> {
    Ok(match cmd {
        Command::Validate(a) => {
            let text = std::fs::read_to_string(&a.input).map_err(|e| Error::Io(format!("{}: {e}", a.input.display())))?;
            match ncomplex::document::parse_complex(&text) {
                Ok(_) => Answer::verdict(true, json!({ "valid": true })),
                Err(Error::NotNilpotent { degree, n }) => Answer {
                    ok: false,
                    text: format!("false\nd^{n} is nonzero starting at degree {degree}"),
                    json: json!({ "valid": false, "degree": degree }),
                },
                Err(e) => return Err(e),
            }
        }
        Command::Homology(a) => {
            let x = load_complex(&a.input)?;
            let rows: Vec<_> = x.homology_table().into_iter().filter(|h| !h.is_zero()).collect();
            let text = rows
                .iter()
                .map(|h| {
                    let torsion: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
                    format!("{} {} {} [{}]", h.degree, h.amplitude, h.free_rank, torsion.join(", "))
                })
                .collect::<Vec<_>>()
                .join("\n");
            let json = rows
                .iter()
                .map(|h| {
                    let torsion: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
                    json!({ "i": h.degree, "r": h.amplitude, "free_rank": h.free_rank, "torsion": torsion })
                })
                .collect();
            Answer { ok: true, text, json: Value::Array(json) }
        }
        Command::Exact { io, mode } => {
            let x = load_complex(&io.input)?;
            let first = x.first_nonvanishing(parse_mode(&mode)?)?;
            let mut ans = Answer::verdict(first.is_none(), json!({ "exact": first.is_none() }));
            if let Some((i, r)) = first {
                ans.text = format!("false\nH^{i}_{r} is nonzero");
                ans.json = json!({ "exact": false, "i": i, "r": r });
            }
            ans
        }
        Command::Cone(a) => Answer::complex(&triangle::cone(&load_map(&a.input)?)?.0),
        Command::Susp(a) => Answer::complex(&triangle::suspension(&load_complex(&a.input)?)),
        Command::Isusp(a) => Answer::complex(&triangle::inv_suspension(&load_complex(&a.input)?)),
        Command::Hull(a) => Answer::complex(&triangle::hull(&load_complex(&a.input)?)?.0),
        Command::Homotopic(a) => {
            let yes = homotopy::homotopic(&load_map(&a.input)?, &load_map(&a.input2)?)?;
            Answer::verdict(yes, json!({ "homotopic": yes }))
        }
        Command::Homk(a) => {
            let h = homotopy::hom_k(&load_complex(&a.input)?, &load_complex(&a.input2)?)?;
            Answer {
                ok: true,
                text: format!("{} {} {}", h.dim_chain_maps, h.dim_null_homotopic, h.dim_homotopy_classes),
                json: json!({
                    "dim_chain_maps": h.dim_chain_maps,
                    "dim_null_homotopic": h.dim_null_homotopic,
                    "dim_homotopy_classes": h.dim_homotopy_classes,
                }),
            }
        }
        Command::Extdw(a) => {
            let d = classes::ext_dw_dim(&load_complex(&a.input)?, &load_complex(&a.input2)?)?;
            Answer { ok: true, text: d.to_string(), json: json!({ "ext_dw_dim": d }) }
        }
        Command::Classcheck { io, mode } => {
            let spec: ClassSpec = mode.parse()?;
            let yes = classes::class_membership(&load_complex(&io.input)?, spec)?;
            Answer::verdict(yes, json!({ "class": spec.to_string(), "member": yes }))
        }
        Command::Prop31(a) => {
            let failure = classes::prop31_failure(&load_complex(&a.input)?)?;
            let mut ans = Answer::verdict(failure.is_none(), json!({ "criterion": failure.is_none() }));
            if let Some((e, r)) = failure {
                ans.text = format!("false\na map to D^{e}_{r} does not extend");
                ans.json = json!({ "criterion": false, "end_degree": e, "r": r });
            }
            ans
        }
        Command::Verify { suite, seed, trials } => {
            let suite: Suite = suite.parse()?;
            let report = verify::run_suite(suite, seed, trials);
            let json = serde_json::to_value(&report).expect("reports serialize");
            let mut text = format!(
                "{}: seed {} trials {} failures {} ({} ms)",
                report.suite,
                report.seed,
                report.trials,
                report.failures.len(),
                report.elapsed_ms
            );
            for f in &report.failures {
                text.push_str(&format!("\n-- trial {}\n{}", f.trial, f.counterexample.trim_end()));
            }
            Answer { ok: report.passed(), text, json }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    std::panic::set_hook(Box::new(|info| eprintln!("error: internal failure: {info}")));
    let json = cli.json;
    match std::panic::catch_unwind(|| run(cli.command)) {
        Ok(Ok(ans)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&ans.json).expect("values serialize"));
            } else {
                println!("{}", ans.text);
            }
            ExitCode::from(if ans.ok { 0 } else { 1 })
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(2),
    }
}
