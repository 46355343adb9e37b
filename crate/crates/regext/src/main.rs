//! Command-line front end: compute invariants, Ext data and homological
//! degrees of presented modules, generate corpora, and run the bound
//! verification suite.
//!
//! Exit codes: 0 when every check passes (or nothing was checked), 1 when
//! some non-vacuous check failed, 2 on usage or parse errors.

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use regext::analysis::ModuleData;
use regext::bounds::{verify_instance, verify_pair, InstanceAnalysis, VerifyOptions};
use regext::cohomology::{ext_module, ext_ring_family};
use regext::corpus::{generate_corpus, CorpusParams};
use regext::degrees::{hdeg, HdegContext};
use regext::presentation::Presentation;
use regext::report::{BoundReport, ConfigSnapshot, InstanceReport, ReportDocument};
use regext::textio::{emit_presentation, parse_presentation};
use regext::ExtInt;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "regext", version, about = "graded module invariants and bound verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SeedArg {
    /// Seed for all randomized choices; falls back to REGEXT_SEED, then 1.
    #[arg(long)]
    seed: Option<u64>,
}

impl SeedArg {
    fn resolve(&self) -> u64 {
        self.seed
            .or_else(|| std::env::var("REGEXT_SEED").ok().and_then(|s| s.parse().ok()))
            .unwrap_or(1)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, Hilbert data and the Betti table of one module.
    Compute { file: PathBuf },
    /// A single Ext module, against the ring or a second module.
    Ext {
        file: PathBuf,
        #[arg(long)]
        i: i64,
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Homological degree with its recursion breakdown.
    Hdeg {
        file: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Run every applicable bound check on one module.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
        /// Degree window `a..b` for the Hilbert/local-cohomology identities.
        #[arg(long)]
        window: Option<String>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also write a CSV flattening of the reports.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Generate a deterministic corpus of presentation files.
    Corpus {
        #[arg(long)]
        n: usize,
        #[arg(long = "max-deg")]
        max_deg: u32,
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        out: PathBuf,
        /// Generator count ceiling per instance.
        #[arg(long, default_value_t = 2)]
        gens: usize,
        /// Relation count ceiling per instance.
        #[arg(long, default_value_t = 3)]
        rels: usize,
    },
    /// Verify every presentation file in a directory; consecutive files are
    /// also paired for the two-module bounds.
    VerifyCorpus {
        dir: PathBuf,
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Presentation, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_presentation(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn ext_to_value(e: ExtInt) -> Value {
    match e {
        ExtInt::Fin(v) => json!(v),
        other => json!(other.to_string()),
    }
}

fn big_to_value(v: &num_bigint::BigInt) -> Value {
    match v.to_i64() {
        Some(small) => json!(small),
        None => json!(v.to_string()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Compute { file } => {
            let pres = load(&file)?;
            let opts = VerifyOptions { seed: 1, window: None };
            let ia = InstanceAnalysis::build(&pres, &opts);
            let inv = ia.invariants_summary();
            let mut hilbert = serde_json::Map::new();
            let (lo, hi) = ia.window;
            for t in lo..=hi {
                hilbert.insert(t.to_string(), json!(ia.md.hilbert_fn(t)));
            }
            let out = json!({
                "file": file.display().to_string(),
                "reg": ext_to_value(ia.md.inv.reg),
                "indeg": ext_to_value(ia.md.inv.indeg),
                "pd": ia.md.inv.pd,
                "depth": ext_to_value_from_str(&inv.depth),
                "dim": ia.md.inv.dim,
                "mu": ia.md.inv.mu,
                "gen": ext_to_value(ia.md.inv.gen),
                "degree": big_to_value(&ia.md.inv.degree),
                "hdeg": big_to_value(&ia.hdeg_value),
                "h0_length": ia.sat.h0_length,
                "hilbert_coeffs": inv.hilbert_coeffs,
                "betti": inv.betti,
                "hilbert": Value::Object(hilbert),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Ext { file, i, against } => {
            let pres = load(&file)?;
            let md = ModuleData::analyze(&pres);
            let ext = match against {
                Some(path) => {
                    let other = load(&path)?;
                    if other.ring.p() != pres.ring.p() || other.ring.n() != pres.ring.n() {
                        return Err("the two modules live over different rings".into());
                    }
                    ext_module(&md, &ModuleData::analyze(&other), i)
                }
                None => {
                    if i < 0 || i > md.n() as i64 {
                        Presentation::zero(pres.ring.clone())
                    } else {
                        ext_ring_family(&md)[i as usize].pres.clone()
                    }
                }
            };
            let emd = ModuleData::analyze(&ext);
            let mut hilbert = serde_json::Map::new();
            if !emd.is_zero() {
                let lo = emd.inv.indeg.expect_fin("indeg") - 2;
                let hi = emd.inv.reg.expect_fin("reg") + 2;
                for t in lo..=hi {
                    hilbert.insert(t.to_string(), json!(emd.hilbert_fn(t)));
                }
            }
            let out = json!({
                "i": i,
                "zero": emd.is_zero(),
                "gens": emd.pres.gens.twists(),
                "reg": ext_to_value(emd.inv.reg),
                "indeg": ext_to_value(emd.inv.indeg),
                "dim": emd.inv.dim,
                "hilbert": Value::Object(hilbert),
                "presentation": emit_presentation(&emd.pres),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Hdeg { file, seed } => {
            let pres = load(&file)?;
            let md = ModuleData::analyze(&pres);
            let mut ctx = HdegContext::default();
            let result = hdeg(&md, &mut ctx);
            let out = json!({
                "hdeg": big_to_value(&result.value),
                "breakdown": result
                    .breakdown
                    .iter()
                    .map(|(k, v)| json!({"term": k, "value": big_to_value(v)}))
                    .collect::<Vec<_>>(),
                "seed": seed.resolve(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            file,
            seed,
            window,
            report,
            csv,
        } => {
            let pres = load(&file)?;
            let seed = seed.resolve();
            let window = match window {
                Some(w) => Some(parse_window(&w)?),
                None => None,
            };
            let opts = VerifyOptions { seed, window };
            let id = instance_id_of(&file);
            let (ia, mut reports) = verify_instance(&pres, &id, &opts);
            reports.extend(verify_pair(&ia.md, &ia.md, &format!("{id}|{id}")));
            let doc = ReportDocument::new(
                seed,
                ConfigSnapshot {
                    prime: pres.ring.p(),
                    window,
                    jobs: 1,
                },
                vec![InstanceReport {
                    id: id.clone(),
                    invariants: ia.invariants_summary(),
                    reports,
                }],
            );
            emit_report(&doc, report.as_deref(), csv.as_deref())?;
            Ok(exit_for(&doc))
        }
        Command::Corpus {
            n,
            max_deg,
            count,
            seed,
            out,
            gens,
            rels,
        } => {
            if !(1..=4).contains(&n) {
                return Err("corpus generation supports n in 1..=4".into());
            }
            let mut params = CorpusParams::new(n, max_deg, count);
            params.num_gens = gens;
            params.num_rels = rels;
            let seed = seed.resolve();
            let corpus = generate_corpus(&params, seed);
            std::fs::create_dir_all(&out).map_err(|e| e.to_string())?;
            for (k, pres) in corpus.iter().enumerate() {
                let path = out.join(format!("inst_{k:04}.pres"));
                std::fs::write(&path, emit_presentation(pres)).map_err(|e| e.to_string())?;
            }
            eprintln!("wrote {} presentations to {}", corpus.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyCorpus {
            dir,
            report,
            jobs,
            seed,
            csv,
        } => {
            let seed = seed.resolve();
            let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
                .map_err(|e| format!("{}: {e}", dir.display()))?
                .filter_map(|e| e.ok())
                .map(|e| e.path())
                .filter(|p| p.extension().map(|e| e == "pres").unwrap_or(false))
                .collect();
            files.sort();
            if files.is_empty() {
                return Err(format!("no .pres files in {}", dir.display()));
            }
            let mut presentations = Vec::new();
            for f in &files {
                presentations.push((instance_id_of(f), load(f)?));
            }
            let opts = VerifyOptions { seed, window: None };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| e.to_string())?;
            let results: Vec<(InstanceAnalysis, Vec<BoundReport>)> = pool.install(|| {
                use rayon::prelude::*;
                presentations
                    .par_iter()
                    .map(|(id, pres)| verify_instance(pres, id, &opts))
                    .collect()
            });
            // pair consecutive same-ring instances for the two-module bounds
            let pair_reports: Vec<Vec<BoundReport>> = pool.install(|| {
                use rayon::prelude::*;
                (0..results.len() / 2)
                    .into_par_iter()
                    .map(|k| {
                        let (a, b) = (&results[2 * k], &results[2 * k + 1]);
                        if a.0.md.ring() == b.0.md.ring() {
                            verify_pair(
                                &a.0.md,
                                &b.0.md,
                                &format!("{}|{}", presentations[2 * k].0, presentations[2 * k + 1].0),
                            )
                        } else {
                            Vec::new()
                        }
                    })
                    .collect()
            });
            let mut instances = Vec::new();
            for (k, ((id, _), (ia, mut reports))) in
                presentations.iter().zip(results.into_iter()).enumerate()
            {
                if k % 2 == 0 {
                    if let Some(extra) = pair_reports.get(k / 2) {
                        reports.extend(extra.iter().cloned());
                    }
                }
                instances.push(InstanceReport {
                    id: id.clone(),
                    invariants: ia.invariants_summary(),
                    reports,
                });
            }
            let doc = ReportDocument::new(
                seed,
                ConfigSnapshot {
                    prime: presentations[0].1.ring.p(),
                    window: None,
                    jobs,
                },
                instances,
            );
            emit_report(&doc, Some(&report), csv.as_deref())?;
            eprintln!(
                "{} checks, {} failed, {} vacuous",
                doc.total_checks, doc.failed_checks, doc.vacuous_checks
            );
            Ok(exit_for(&doc))
        }
    }
}

fn ext_to_value_from_str(s: &str) -> Value {
    match s.parse::<i64>() {
        Ok(v) => json!(v),
        Err(_) => json!(s),
    }
}

fn instance_id_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let Some((a, b)) = s.split_once("..") else {
        return Err(format!("window `{s}` must look like a..b"));
    };
    let lo = a.trim().parse().map_err(|_| format!("bad window start `{a}`"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad window end `{b}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn emit_report(
    doc: &ReportDocument,
    path: Option<&Path>,
    csv: Option<&Path>,
) -> Result<(), String> {
    let json = doc.to_json();
    match path {
        Some(p) => std::fs::write(p, json.as_bytes()).map_err(|e| e.to_string())?,
        None => println!("{json}"),
    }
    if let Some(p) = csv {
        std::fs::write(p, doc.to_csv().as_bytes()).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn exit_for(doc: &ReportDocument) -> ExitCode {
    if doc.any_failure() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
