use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use desitter_core::suites::Suite;
use desitter_lab::commands::{self, CurveRun};
use desitter_lab::config::RunConfig;
use desitter_lab::{threads_from_env, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "desitter-lab", version, about = "Checks and data exports for the de Sitter workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Overrides,
}

/// Settings shared by every command. Command-line values beat the config file.
#[derive(Args, Default)]
struct Overrides {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Any configuration key, as key=value; may repeat.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    #[arg(long, global = true)]
    ell: Option<String>,
    #[arg(long, global = true)]
    m: Option<String>,
    #[arg(long, global = true)]
    interior: Option<String>,
    #[arg(long, global = true)]
    radius: Option<String>,
    #[arg(long, global = true)]
    grid: Option<String>,
    #[arg(long, global = true)]
    samples: Option<String>,
    #[arg(long, global = true)]
    points: Option<String>,
    #[arg(long, global = true)]
    h: Option<String>,
    #[arg(long = "s-max", global = true)]
    s_max: Option<String>,
    #[arg(long, global = true)]
    chart: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    x0: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    u0: Option<String>,
    #[arg(long = "t-min", global = true, allow_hyphen_values = true)]
    t_min: Option<String>,
    #[arg(long = "t-max", global = true, allow_hyphen_values = true)]
    t_max: Option<String>,
    #[arg(long = "x-min", global = true, allow_hyphen_values = true)]
    x_min: Option<String>,
    #[arg(long = "x-max", global = true, allow_hyphen_values = true)]
    x_max: Option<String>,
    #[arg(long, global = true)]
    nt: Option<String>,
    #[arg(long, global = true)]
    nx: Option<String>,
    #[arg(long = "out-dir", global = true)]
    out_dir: Option<String>,
    /// Record wall-clock times in the reports (reruns are then not byte-identical).
    #[arg(long, global = true)]
    timing: bool,
}

impl Overrides {
    fn pairs(&self) -> Result<Vec<(String, String)>, String> {
        let mut out = Vec::new();
        for s in &self.set {
            let (k, v) = s.split_once('=').ok_or_else(|| format!("--set {s:?}: expected key=value"))?;
            out.push((k.trim().to_string(), v.trim().to_string()));
        }
        let named = [
            ("seed", &self.seed),
            ("ell", &self.ell),
            ("m", &self.m),
            ("interior", &self.interior),
            ("radius", &self.radius),
            ("grid", &self.grid),
            ("samples", &self.samples),
            ("points", &self.points),
            ("h", &self.h),
            ("s_max", &self.s_max),
            ("chart", &self.chart),
            ("x0", &self.x0),
            ("u0", &self.u0),
            ("t_min", &self.t_min),
            ("t_max", &self.t_max),
            ("x_min", &self.x_min),
            ("x_max", &self.x_max),
            ("nt", &self.nt),
            ("nx", &self.nx),
            ("out_dir", &self.out_dir),
        ];
        for (k, v) in named {
            if let Some(v) = v {
                out.push((k.to_string(), v.clone()));
            }
        }
        if self.timing {
            out.push(("timing".into(), "true".into()));
        }
        Ok(out)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites and print one JSON report per line.
    Verify {
        /// Run every suite (the default when no --suite is given).
        #[arg(long, conflicts_with = "suite")]
        all: bool,
        /// clifford, geometry, desitter, komar, algebra or dynamics; may repeat.
        #[arg(long)]
        suite: Vec<String>,
    },
    /// Integrate a geodesic and write CSV plus a JSON summary.
    Geodesic {
        /// Also integrate the constrained-variation curve from the same data.
        #[arg(long)]
        compare_constrained: bool,
    },
    /// Integrate the constrained-variation curve and its separation from the geodesic.
    Constrained,
    /// Komar energy on a sphere.
    KomarMass {
        #[arg(long, default_value = "schwarzschild")]
        metric: String,
    },
    /// CSV grid of the Killing determinant on y = z = 0.
    DetMap {
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Commutator table and Casimir results as JSON.
    AlgebraReport,
}

fn run<W: Write>(cli: Cli, out: &mut W) -> Result<bool, String> {
    let pairs = cli.common.pairs()?;
    let cfg = RunConfig::layered(cli.common.config.as_deref(), &pairs).map_err(|e| e.to_string())?;
    let res = match cli.command {
        Command::Verify { all: _, suite } => {
            let list: Vec<Suite> = if suite.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suite.iter().map(|s| s.parse()).collect::<Result<_, _>>().map_err(|e: desitter_core::Error| e.to_string())?
            };
            commands::verify(&cfg, &list, out)
        }
        Command::Geodesic { compare_constrained } => commands::trajectories(&cfg, CurveRun::Geodesic { compare_constrained }, out),
        Command::Constrained => commands::trajectories(&cfg, CurveRun::Constrained, out),
        Command::KomarMass { metric } => commands::komar_mass(&cfg, &metric, out),
        Command::DetMap { out: Some(path) } => {
            let file = std::fs::File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let mut w = io::BufWriter::new(file);
            commands::det_map(&cfg, &mut w).and_then(|ok| w.flush().map(|_| ok).map_err(|e| desitter_core::Error::InvalidInput(e.to_string())))
        }
        Command::DetMap { out: None } => commands::det_map(&cfg, out),
        Command::AlgebraReport => commands::algebra_report(&cfg, out),
    };
    let ok = res.map_err(|e| e.to_string())?;
    out.flush().map_err(|e| e.to_string())?;
    Ok(ok)
}

fn exit_code(res: &Result<bool, String>) -> i32 {
    match res {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAIL,
        Err(_) => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match threads_from_env() {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("desitter-lab: {e}");
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        Ok(None) => {}
        Err(e) => {
            eprintln!("desitter-lab: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let res = run(cli, &mut out);
    if let Err(e) = &res {
        eprintln!("desitter-lab: {e}");
    }
    ExitCode::from(exit_code(&res) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    struct Out {
        code: i32,
        stdout: Vec<u8>,
    }

    fn lab(args: &[&str]) -> Out {
        match Cli::try_parse_from(std::iter::once("desitter-lab").chain(args.iter().copied())) {
            Err(e) => Out { code: e.exit_code(), stdout: Vec::new() },
            Ok(cli) => {
                let mut stdout = Vec::new();
                let res = run(cli, &mut stdout);
                Out { code: exit_code(&res), stdout }
            }
        }
    }

    fn json(out: &Out) -> serde_json::Value {
        serde_json::from_slice(&out.stdout).expect("stdout is JSON")
    }

    #[test]
    fn clifford_suite_reruns_identically() {
        let a = lab(&["verify", "--suite", "clifford", "--seed", "7"]);
        let b = lab(&["verify", "--suite", "clifford", "--seed", "7"]);
        assert_eq!(a.stdout, b.stdout);
        let lines: Vec<serde_json::Value> =
            String::from_utf8(a.stdout.clone()).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert!(lines.len() > 15);
        assert!(lines.iter().all(|v| v["suite"] == "clifford" && v["paper_anchor"].is_string()));
        let names: Vec<&str> = lines.iter().map(|v| v["name"].as_str().unwrap()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn algebra_suite_lists_all_commutators() {
        let out = lab(&["verify", "--suite", "algebra"]);
        let text = String::from_utf8(out.stdout).unwrap();
        let commutators: Vec<serde_json::Value> = text
            .lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
            .filter(|v| v["name"].as_str().unwrap().starts_with("commutator-"))
            .collect();
        assert_eq!(commutators.len(), 45);
        let failing = commutators.iter().filter(|v| v["status"] == "fail").count();
        assert_eq!(out.code, if failing == 0 { 0 } else { 1 });
    }

    #[test]
    fn komar_suite_reports_the_mass() {
        let out = lab(&["verify", "--suite", "komar", "--m", "1", "--radius", "10"]);
        let text = String::from_utf8(out.stdout).unwrap();
        let mass = text
            .lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
            .find(|v| v["name"] == "komar-mass")
            .expect("komar-mass report");
        assert!(mass["residual"].as_f64().unwrap() <= 1e-6);
    }

    #[test]
    fn komar_mass_record() {
        let out = lab(&["komar-mass", "--metric", "schwarzschild", "--m", "2", "--radius", "20", "--grid", "32"]);
        assert_eq!(out.code, 0);
        let v = json(&out);
        assert!((v["energy"].as_f64().unwrap() - 2.0).abs() < 1e-6);
        assert!(v["refinement_error"].as_f64().unwrap() < 1e-6);
        assert_eq!(v["orientation"], "outward-future");
    }

    #[test]
    fn komar_mass_rejects_bad_input() {
        assert_eq!(lab(&["komar-mass", "--metric", "kerr"]).code, 2);
        assert_eq!(lab(&["komar-mass", "--radius", "1.5"]).code, 2);
        assert_eq!(lab(&["komar-mass", "--grid", "3"]).code, 2);
    }

    #[test]
    fn det_map_grid() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("det.csv");
        let out = lab(&["det-map", "--nt", "5", "--nx", "7", "--t-min", "-2", "--t-max", "2", "--out", path.to_str().unwrap()]);
        assert_eq!(out.code, 0);
        let mut rd = csv::Reader::from_path(&path).unwrap();
        assert_eq!(rd.headers().unwrap(), vec!["t", "x1", "det", "reduced", "factorised"]);
        let rows: Vec<Vec<f64>> = rd.records().map(|r| r.unwrap().iter().map(|c| c.parse().unwrap()).collect()).collect();
        assert_eq!(rows.len(), 35);
        let absolute = rows.iter().find(|r| r[0] == 2.0 && r[1] == 0.0).unwrap();
        assert!(absolute[2].abs() < 1e-12);
        assert!(rows.iter().all(|r| (r[2] - r[4]).abs() < 1e-12));
    }

    #[test]
    fn det_map_rejects_empty_bounds() {
        assert_eq!(lab(&["det-map", "--t-min", "1", "--t-max", "1"]).code, 2);
        assert_eq!(lab(&["det-map", "--nx", "1"]).code, 2);
    }

    #[test]
    fn geodesic_benchmark_summary() {
        let dir = tempfile::tempdir().unwrap();
        let out = lab(&["geodesic", "--out-dir", dir.path().to_str().unwrap()]);
        assert_eq!(out.code, 0);
        let v = json(&out);
        let c = &v["curves"][0];
        assert!(c["norm_drift"].as_f64().unwrap() < 1e-8);
        assert!(c["charge_drift"].as_f64().unwrap() < 1e-8);
        let csv = fs::read_to_string(dir.path().join("geodesic.csv")).unwrap();
        assert_eq!(csv.lines().count(), 2002);
    }

    #[test]
    fn constrained_comparison_separates() {
        let dir = tempfile::tempdir().unwrap();
        let out = lab(&["geodesic", "--compare-constrained", "--s-max", "1", "--out-dir", dir.path().to_str().unwrap()]);
        assert_eq!(out.code, 0);
        let v = json(&out);
        let sep = v["curves"][1]["final_separation"].as_f64().unwrap();
        assert!(sep > 1e-3, "separation {sep}");
        assert!(dir.path().join("separation.csv").exists());
        let again = lab(&["constrained", "--s-max", "1", "--out-dir", dir.path().to_str().unwrap()]);
        assert_eq!(json(&again)["curves"][0]["final_separation"].as_f64().unwrap(), sep);
    }

    #[test]
    fn minkowski_geodesic_is_straight() {
        let dir = tempfile::tempdir().unwrap();
        let out = lab(&["geodesic", "--chart", "minkowski", "--x0", "0.1,-0.2,0.3,0", "--u0", "1,0.2,0,0", "--out-dir", dir.path().to_str().unwrap()]);
        let v = json(&out);
        assert!(v["curves"][0]["straight_line_error"].as_f64().unwrap() < 1e-12);
        assert!(v["curves"][0]["norm_drift"].as_f64().unwrap() < 1e-12);
    }

    #[test]
    fn domain_exit_is_a_warning() {
        let dir = tempfile::tempdir().unwrap();
        let out = lab(&["geodesic", "--u0", "1,0.9,0,0", "--s-max", "50", "--h", "0.01", "--out-dir", dir.path().to_str().unwrap()]);
        assert_eq!(out.code, 0);
        let v = json(&out);
        assert_eq!(v["status"], "warn");
        assert!(v["curves"][0]["exit"]["s"].as_f64().unwrap() < 50.0);
    }

    #[test]
    fn config_file_and_overrides() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("lab.cfg");
        fs::write(&cfg, "m = 3\nradius = 40\ngrid = 16\n").unwrap();
        let from_file = json(&lab(&["komar-mass", "--config", cfg.to_str().unwrap()]));
        assert_eq!(from_file["m"], 3.0);
        assert_eq!(from_file["radius"], 40.0);
        let overridden = json(&lab(&["komar-mass", "--config", cfg.to_str().unwrap(), "--radius", "50"]));
        assert_eq!(overridden["radius"], 50.0);
        assert_eq!(overridden["m"], 3.0);
        fs::write(&cfg, "colour = red\n").unwrap();
        assert_eq!(lab(&["komar-mass", "--config", cfg.to_str().unwrap()]).code, 2);
    }

    #[test]
    fn algebra_report_shape() {
        let v = json(&lab(&["algebra-report"]));
        assert_eq!(v["commutators"].as_array().unwrap().len(), 45);
        assert_eq!(v["casimirs"].as_array().unwrap().len(), 2);
        assert!(v["casimirs"].as_array().unwrap().iter().all(|c| c["i1_central"] == true && c["i2_central"] == true));
    }
}
