use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use picard_cy::verifier::{self, RunOptions};
use picard_cy::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "verify", version, about = "Exact verification report for the picard-cy computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks and print a report
    Run {
        /// Comma-separated check ids, or "all"
        #[arg(long, value_delimiter = ',', default_value = "all")]
        checks: Vec<String>,
        #[arg(long, default_value_t = verifier::DEFAULT_SEED)]
        seed: u64,
        /// Tolerance for numeric checks; exact checks ignore it
        #[arg(long, default_value_t = verifier::DEFAULT_TOL)]
        tol: f64,
        /// Sample count for numeric checks
        #[arg(long, default_value_t = verifier::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Also write the exported tables here
        #[arg(long)]
        export_dir: Option<PathBuf>,
    },
    /// List check ids
    List,
    /// Table utilities
    Tables {
        #[command(subcommand)]
        command: TablesCommand,
    },
}

#[derive(Subcommand)]
enum TablesCommand {
    /// Write group, node, mirror and form tables
    Export {
        #[arg(long, default_value = "tables")]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Default)]
struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn fail(mut self, code: u8, msg: impl AsRef<str>) -> Self {
        self.code = code;
        self.stderr.push_str(msg.as_ref());
        self.stderr.push('\n');
        self
    }
}

fn export(dir: &Path, out: &mut Outcome) -> bool {
    match verifier::export_tables(dir) {
        Ok(names) => {
            for n in names {
                let _ = writeln!(out.stderr, "wrote {}", dir.join(n).display());
            }
            true
        }
        Err(e) => {
            let _ = writeln!(out.stderr, "export failed: {e}");
            out.code = EXIT_IO;
            false
        }
    }
}

fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = Outcome::default();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            if e.use_stderr() {
                return out.fail(code, e.render().to_string().trim_end());
            }
            out.stdout = e.render().to_string();
            out.code = code;
            return out;
        }
    };
    match cli.command {
        Command::List => {
            for c in &verifier::CHECKS {
                let kind = if c.numeric { "numeric" } else { "exact" };
                let _ = writeln!(out.stdout, "{:<28} {:<8} {}", c.id, kind, c.citation);
            }
        }
        Command::Tables { command: TablesCommand::Export { dir } } => {
            export(&dir, &mut out);
        }
        Command::Run { checks, seed, tol, samples, format, export_dir } => {
            if !(tol.is_finite() && tol >= 0.0) {
                return out.fail(EXIT_USAGE, "error: --tol must be a finite nonnegative number");
            }
            let opts = RunOptions { seed, tol, samples };
            let report = match verifier::run(&checks, &opts) {
                Ok(r) => r,
                Err(Error::UnknownCheck(id)) => {
                    return out.fail(EXIT_USAGE, format!("error: unknown check id '{id}' (see `verify list`)"));
                }
                Err(e) => return out.fail(EXIT_FAIL, format!("error: {e}")),
            };
            out.stdout = match format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            if let Some(dir) = export_dir {
                if !export(&dir, &mut out) {
                    return out;
                }
            }
            if !report.all_passed() {
                out.code = EXIT_FAIL;
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let out = execute(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn verify(args: &[&str]) -> Outcome {
        execute(std::iter::once("verify").chain(args.iter().copied()))
    }

    fn json(out: &Outcome) -> Value {
        serde_json::from_str(&out.stdout).expect("json report")
    }

    fn strip_runtimes(mut v: Value) -> Value {
        for r in v["results"].as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("runtime_ms");
        }
        v
    }

    #[test]
    fn list_names_every_check() {
        let out = verify(&["list"]);
        assert_eq!(out.code, 0);
        for id in ["group-order-486", "nodes-108", "jacobian-lemma", "mirror-norms", "chi-pullback-agree"] {
            assert!(out.stdout.contains(id), "{id} missing");
        }
        assert_eq!(out.stdout.lines().count(), 19);
    }

    #[test]
    fn unknown_check_is_a_usage_error() {
        let out = verify(&["run", "--checks", "nonexistent"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains("nonexistent"));
    }

    #[test]
    fn malformed_arguments_are_usage_errors() {
        assert_eq!(verify(&["run", "--checks", "jacobian-lemma", "--tol", "-1"]).code, EXIT_USAGE);
        assert_eq!(verify(&["run", "--seed", "minus-one"]).code, EXIT_USAGE);
        assert_eq!(verify(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(verify(&["--help"]).code, 0);
    }

    #[test]
    fn single_group_order_check() {
        let out = verify(&["run", "--checks", "group-order-486"]);
        let report = json(&out);
        assert_eq!(report["schema_version"], 1);
        assert_eq!(report["seed"], 1);
        let results = report["results"].as_array().unwrap();
        assert_eq!(results.len(), 1);
        let r = &results[0];
        assert_eq!(r["check_id"], "group-order-486");
        assert_eq!(r["expected"], "486");
        assert!(!r["citation"].as_str().unwrap().is_empty());
        // the six reduced triflections generate 243 elements, so this fails
        assert_eq!(r["actual"], "243");
        assert_eq!(r["status"], "fail");
        assert_eq!(out.code, EXIT_FAIL);
    }

    #[test]
    fn passing_selection_exits_zero() {
        let out = verify(&["run", "--checks", "degree-243,mirror-norms,divisor-c1-support", "--format", "text"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("3 checks: 3 pass, 0 fail, 0 error"));
    }

    #[test]
    fn report_is_deterministic_modulo_runtime() {
        let args = ["run", "--checks", "jacobian-lemma,chi-homomorphism,dim-table", "--seed", "7", "--samples", "20"];
        let a = strip_runtimes(json(&verify(&args)));
        let b = strip_runtimes(json(&verify(&args)));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a["seed"], 7);
        let ids: Vec<&str> = a["results"].as_array().unwrap().iter().map(|r| r["check_id"].as_str().unwrap()).collect();
        assert_eq!(ids, ["chi-homomorphism", "dim-table", "jacobian-lemma"]);
    }

    #[test]
    fn tolerance_does_not_touch_exact_checks() {
        let out = verify(&["run", "--checks", "dim-integrality,jacobian-lemma", "--tol", "1e-30", "--samples", "5"]);
        let report = json(&out);
        assert_eq!(report["results"][0]["status"], "pass");
        assert_eq!(report["results"][1]["status"], "fail");
    }

    #[test]
    fn tables_export_writes_files() {
        let dir = std::env::temp_dir().join(format!("picard-cy-tables-{}", std::process::id()));
        let out = verify(&["tables", "export", "--dir", dir.to_str().unwrap()]);
        assert_eq!(out.code, 0);
        let nodes = std::fs::read_to_string(dir.join("nodes.txt")).unwrap();
        assert_eq!(nodes.lines().filter(|l| !l.starts_with('#')).count(), 108);
        let group = std::fs::read_to_string(dir.join("group_mod3.txt")).unwrap();
        assert_eq!(group.lines().filter(|l| !l.starts_with('#')).count(), 243);
        let text = std::fs::read_to_string(dir.join("mirrors.txt")).unwrap();
        assert_eq!(picard_cy::MirrorTable::parse(&text).unwrap(), picard_cy::hermitian::mirror_table());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
