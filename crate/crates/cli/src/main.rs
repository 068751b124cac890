use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dmcut::io::{self, CspDoc, DmcDoc, WdmcDoc};
use dmcut::matrixgrid::{self, Axis, Division, GridOutcome, MatrixContraction, ZeroOneMatrix};
use dmcut::multicut::{self, DmcInstance, Guard};
use dmcut::permcsp;
use dmcut::pipeline::{self, IrrelevantVertexConfig, PipelineConfig};
use dmcut::reductions::{self, CliqueInstance, PsiInstance};
use dmcut::shadowrm::{self, Strategy, DEFAULT_ROUNDS};
use dmcut::{flowaug, gen, Error};

#[derive(Parser)]
#[command(
    name = "dmcut",
    version,
    about = "Exact solvers, reductions and matrix tools for directed multicut"
)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a three-pair multicut instance.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Solver::Pipeline)]
        strategy: Solver,
        /// Shadow removal used by the pipeline.
        #[arg(long, value_enum, default_value_t = ShadowStrategy::Oracle)]
        shadow: ShadowStrategy,
        /// Required with `--shadow randomized`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_ROUNDS)]
        rounds: usize,
        /// Half the number of rows and columns a monochromatic division needs.
        #[arg(long, default_value_t = 2)]
        zeta: usize,
        /// Size of the grid minor looked for by the irrelevant-vertex rule.
        #[arg(long, default_value_t = 8)]
        rho: usize,
        /// Skip the brute-force confirmation of irrelevant vertices.
        #[arg(long)]
        no_brute_check: bool,
    },
    /// Brute-force a multicut instance.
    Oracle {
        input: PathBuf,
        /// Read a two-pair weighted instance.
        #[arg(long)]
        weighted: bool,
    },
    /// Shadow removal: print the family of bypassed instances.
    Shadowrm {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ShadowStrategy::Oracle)]
        strategy: ShadowStrategy,
        /// Required with `--strategy randomized`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_ROUNDS)]
        rounds: usize,
    },
    #[command(subcommand)]
    Reduce(ReduceCommand),
    #[command(subcommand)]
    Matrix(MatrixCommand),
    #[command(subcommand)]
    Csp(CspCommand),
    #[command(subcommand)]
    Gen(GenCommand),
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    Pipeline,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShadowStrategy {
    Oracle,
    Randomized,
}

/// Hardness gadgets.
#[derive(Subcommand)]
enum ReduceCommand {
    /// Partitioned subgraph isomorphism to two-pair weighted multicut.
    Psi2wdmc { input: PathBuf },
    /// Multicolored clique to permutation CSP.
    Clique2csp { input: PathBuf },
}

/// 0-1 matrix tools; input is one line of '0'/'1' per row.
#[derive(Subcommand)]
enum MatrixCommand {
    Analyze {
        input: PathBuf,
        /// Look for a k-grid minor; exit 1 when there is none.
        #[arg(long)]
        grid_minor: Option<usize>,
        #[arg(long)]
        grid_rank: bool,
        /// Run the grid-minor-or-contraction procedure with this density bound.
        #[arg(long)]
        contract: Option<usize>,
        /// Grid size for `--contract`.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

/// Permutation CSP with downclosed and permutation constraints.
#[derive(Subcommand)]
enum CspCommand {
    /// Find a satisfying valuation; exit 1 when there is none.
    Solve {
        input: PathBuf,
        /// Use plain enumeration instead of propagation.
        #[arg(long)]
        brute: bool,
    },
}

/// Seeded random instances.
#[derive(Subcommand)]
enum GenCommand {
    Dmc {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0.22)]
        arc_prob: f64,
        #[arg(long, default_value_t = 0.1)]
        undeletable_prob: f64,
    },
    Psi {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 0.4)]
        edge_prob: f64,
    },
    /// Prints the matrix text format.
    Matrix {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        rows: usize,
        #[arg(long, default_value_t = 8)]
        cols: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
    },
    Clique {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
    },
    Csp {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        vars: usize,
        #[arg(long, default_value_t = 8)]
        domain: usize,
        #[arg(long, default_value_t = 6)]
        constraints: usize,
    },
}

/// Check a claim against its predicate; exit 0 when it holds, 1 when not.
#[derive(Subcommand)]
enum VerifyCommand {
    /// `{"solution": [names]}`, e.g. the output of `solve`.
    Solution {
        instance: PathBuf,
        solution: PathBuf,
        #[arg(long)]
        weighted: bool,
    },
    /// `{"rows": [bounds], "cols": [bounds]}`: a grid minor, or a rank division with `--rank`.
    Division {
        matrix: PathBuf,
        division: PathBuf,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// `{"pair": i, "separator": [names], "added_arcs": [[u, v]]}`.
    Augmentation { instance: PathBuf, claim: PathBuf },
    /// Brute-force both sides of the PSI reduction and compare.
    Reduction { input: PathBuf },
}

struct Output {
    body: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let result = run(&cli.command, &args).and_then(|out| {
        match &cli.output {
            Some(p) => std::fs::write(p, &out.body).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?,
            None => print!("{}", out.body),
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("dmcut: {e}");
            ExitCode::from(match e {
                Error::Capacity { .. } => 2,
                _ => 3,
            })
        }
    }
}

fn read(path: &Path) -> dmcut::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// Instance files are either the bare document or a command output carrying it under
/// "instance".
fn read_doc<T: serde::de::DeserializeOwned>(path: &Path) -> dmcut::Result<T> {
    let mut v: Value = serde_json::from_str(&read(path)?)?;
    if let Some(inner) = v.get_mut("instance") {
        v = inner.take();
    }
    Ok(serde_json::from_value(v)?)
}

fn emit(command: &str, seed: Option<u64>, args: &[String], body: Value, code: u8) -> dmcut::Result<Output> {
    let mut doc = json!({
        "provenance": {
            "tool": "dmcut",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "seed": seed,
            "args": args,
        }
    });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    Ok(Output {
        body: serde_json::to_string_pretty(&doc)? + "\n",
        code,
    })
}

fn strategy(s: ShadowStrategy, seed: Option<u64>) -> dmcut::Result<(Strategy, u64)> {
    match (s, seed) {
        (ShadowStrategy::Oracle, seed) => Ok((Strategy::Oracle, seed.unwrap_or(0))),
        (ShadowStrategy::Randomized, Some(seed)) => Ok((Strategy::Randomized, seed)),
        (ShadowStrategy::Randomized, None) => Err(Error::Input("the randomized strategy needs --seed".into())),
    }
}

fn verdict(found: bool) -> u8 {
    if found {
        0
    } else {
        1
    }
}

fn run(command: &Command, args: &[String]) -> dmcut::Result<Output> {
    match command {
        Command::Solve {
            input,
            strategy: solver,
            shadow,
            seed,
            rounds,
            zeta,
            rho,
            no_brute_check,
        } => {
            let inst = io::dmc_from_doc(&read_doc::<DmcDoc>(input)?)?;
            match solver {
                Solver::Brute => {
                    let sol = multicut::brute_force_dmc(&inst)?;
                    let names = sol.as_ref().map(|s| io::names(&inst.g, s));
                    emit(
                        "solve",
                        *seed,
                        args,
                        json!({ "solution": names }),
                        verdict(sol.is_some()),
                    )
                }
                Solver::Pipeline => {
                    let (strategy, seed_used) = strategy(*shadow, *seed)?;
                    let cfg = PipelineConfig {
                        strategy,
                        rounds: *rounds,
                        irrelevant: IrrelevantVertexConfig {
                            zeta: *zeta,
                            rho: *rho,
                            brute_check: !no_brute_check,
                        },
                        ..PipelineConfig::default()
                    };
                    let report = pipeline::run_pipeline(&inst, &cfg, seed_used)?;
                    let names = report.solution.as_ref().map(|s| io::names(&inst.g, s));
                    let removed: Vec<&str> = report.irrelevant_removed.iter().map(|&v| inst.g.name(v)).collect();
                    let body = json!({
                        "solution": names,
                        "stats": {
                            "bypassed_instances": report.bypassed_instances,
                            "separator_triples": report.separator_triples,
                            "partitions": report.partitions,
                            "candidates_checked": report.candidates_checked,
                            "candidates_rejected": report.candidates_rejected,
                            "irrelevant_removed": removed,
                            "skipped_branches": report.skipped_branches,
                        }
                    });
                    emit("solve", *seed, args, body, verdict(report.solution.is_some()))
                }
            }
        }
        Command::Oracle { input, weighted } => {
            if *weighted {
                let inst = io::wdmc_from_doc(&read_doc::<WdmcDoc>(input)?)?;
                let sol = multicut::brute_force_wdmc(&inst)?;
                let body = json!({
                    "solution": sol.as_ref().map(|s| io::names(&inst.g, s)),
                    "weight": sol.as_ref().map(|s| inst.weight_of(s)),
                });
                emit("oracle", None, args, body, verdict(sol.is_some()))
            } else {
                let inst = io::dmc_from_doc(&read_doc::<DmcDoc>(input)?)?;
                let sol = multicut::brute_force_dmc(&inst)?;
                let body = json!({ "solution": sol.as_ref().map(|s| io::names(&inst.g, s)) });
                emit("oracle", None, args, body, verdict(sol.is_some()))
            }
        }
        Command::Shadowrm {
            input,
            strategy: s,
            seed,
            rounds,
        } => {
            let inst = io::dmc_from_doc(&read_doc::<DmcDoc>(input)?)?;
            let family = match strategy(*s, *seed)? {
                (Strategy::Oracle, _) => shadowrm::oracle_family(&inst, &Guard::default())?,
                (Strategy::Randomized, seed) => shadowrm::randomized_family(&inst, seed, *rounds),
            };
            let instances: Vec<DmcDoc> = shadowrm::apply_family(&inst, &family)?
                .iter()
                .map(io::dmc_doc)
                .collect();
            let sets: Vec<Vec<String>> = family.sets.iter().map(|w| io::names(&inst.g, w)).collect();
            emit(
                "shadowrm",
                *seed,
                args,
                json!({ "family": sets, "instances": instances }),
                0,
            )
        }
        Command::Reduce(ReduceCommand::Psi2wdmc { input }) => {
            let psi: PsiInstance = read_doc(input)?;
            let red = reductions::psi_to_wdmc(&psi)?;
            let body = json!({
                "instance": io::wdmc_doc(&red.wdmc),
                "parameters": { "n": red.n, "k": red.k, "h": red.h, "M": red.m, "W": red.w, "k_prime": red.k_prime },
            });
            emit("reduce psi2wdmc", None, args, body, 0)
        }
        Command::Reduce(ReduceCommand::Clique2csp { input }) => {
            let cl: CliqueInstance = read_doc(input)?;
            let enc = reductions::clique_to_permcsp(&cl)?;
            emit(
                "reduce clique2csp",
                None,
                args,
                json!({ "instance": io::csp_doc(&enc.csp) }),
                0,
            )
        }
        Command::Matrix(MatrixCommand::Analyze {
            input,
            grid_minor,
            grid_rank,
            contract,
            k,
        }) => {
            let m = ZeroOneMatrix::parse(&read(input)?)?;
            let mut body = json!({ "rows": m.rows(), "cols": m.cols(), "ones": m.count_ones() });
            let mut code = 0;
            if let Some(gk) = grid_minor {
                let d = matrixgrid::find_grid_minor(&m, *gk)?;
                code = verdict(d.is_some());
                body["grid_minor"] = json!({ "k": gk, "division": d });
            }
            if *grid_rank || (grid_minor.is_none() && contract.is_none()) {
                body["grid_rank"] = json!(matrixgrid::grid_rank(&m)?);
            }
            if let Some(c) = contract {
                body["contraction"] = contraction_json(&m, *k, *c)?;
            }
            emit("matrix analyze", None, args, body, code)
        }
        Command::Csp(CspCommand::Solve { input, brute }) => {
            let inst = io::csp_from_doc(&read_doc::<CspDoc>(input)?)?;
            let sol = if *brute {
                permcsp::brute_force_csp(&inst)?
            } else {
                permcsp::solve(&inst)
            };
            let valuation = sol.as_ref().map(|a| {
                inst.names
                    .iter()
                    .cloned()
                    .zip(a.iter().copied())
                    .collect::<std::collections::BTreeMap<_, _>>()
            });
            emit(
                "csp solve",
                None,
                args,
                json!({ "valuation": valuation }),
                verdict(sol.is_some()),
            )
        }
        Command::Gen(g) => generate(g, args),
        Command::Verify(v) => verify(v, args),
    }
}

fn contraction_json(m: &ZeroOneMatrix, k: usize, c: usize) -> dmcut::Result<Value> {
    let steps = |seq: &MatrixContraction| -> Vec<Value> {
        seq.steps
            .iter()
            .map(|s| {
                let axis = match s.axis {
                    Axis::Row => "row",
                    Axis::Col => "col",
                };
                json!([axis, s.index])
            })
            .collect()
    };
    Ok(match matrixgrid::gridminor_or_contraction(m, k, c)? {
        GridOutcome::GridMinor(d) => json!({ "k": k, "c": c, "outcome": "grid_minor", "division": d }),
        GridOutcome::Contraction(seq) => {
            let checked = matrixgrid::verify_matrix_contraction(m, &seq, c)?;
            json!({
                "k": k, "c": c, "outcome": "contraction",
                "steps": steps(&seq), "width": seq.width, "max_pair_load": seq.max_pair_load,
                "verified_width": checked,
            })
        }
        GridOutcome::ThresholdTooLow(seq) => json!({
            "k": k, "c": c, "outcome": "threshold_too_low",
            "steps": steps(&seq), "width": seq.width, "max_pair_load": seq.max_pair_load,
        }),
    })
}

fn generate(g: &GenCommand, args: &[String]) -> dmcut::Result<Output> {
    let (seed, instance) = match *g {
        GenCommand::Dmc {
            seed,
            n,
            k,
            arc_prob,
            undeletable_prob,
        } => {
            let params = gen::DmcParams {
                n,
                k,
                arc_prob,
                undeletable_prob,
            };
            (seed, serde_json::to_value(io::dmc_doc(&gen::random_dmc(seed, params)))?)
        }
        GenCommand::Psi { seed, max_n, edge_prob } => {
            (seed, serde_json::to_value(gen::random_psi(seed, max_n, edge_prob))?)
        }
        GenCommand::Clique { seed, k, n, edge_prob } => {
            (seed, serde_json::to_value(gen::random_clique(seed, k, n, edge_prob))?)
        }
        GenCommand::Csp {
            seed,
            vars,
            domain,
            constraints,
        } => (
            seed,
            serde_json::to_value(io::csp_doc(&gen::random_csp(seed, vars, domain, constraints)))?,
        ),
        GenCommand::Matrix {
            seed,
            rows,
            cols,
            density,
        } => {
            return Ok(Output {
                body: gen::random_matrix(seed, rows, cols, density).to_string(),
                code: 0,
            })
        }
    };
    emit("gen", Some(seed), args, json!({ "instance": instance }), 0)
}

#[derive(serde::Deserialize)]
struct SolutionDoc {
    solution: Option<Vec<String>>,
}

#[derive(serde::Deserialize)]
struct AugmentationClaim {
    pair: usize,
    separator: Vec<String>,
    added_arcs: Vec<(String, String)>,
}

fn verify(v: &VerifyCommand, args: &[String]) -> dmcut::Result<Output> {
    match v {
        VerifyCommand::Solution {
            instance,
            solution,
            weighted,
        } => {
            let names = serde_json::from_str::<SolutionDoc>(&read(solution)?)?
                .solution
                .ok_or_else(|| Error::Input("no solution to verify".into()))?;
            let (ok, detail) = if *weighted {
                let inst = io::wdmc_from_doc(&read_doc::<WdmcDoc>(instance)?)?;
                let s = io::vertex_set(&inst.g, &names)?;
                (
                    inst.is_solution(&s)?,
                    json!({ "size": s.len(), "weight": inst.weight_of(&s) }),
                )
            } else {
                let inst: DmcInstance = io::dmc_from_doc(&read_doc::<DmcDoc>(instance)?)?;
                let s = io::vertex_set(&inst.g, &names)?;
                (multicut::is_solution(&inst, &s)?, json!({ "size": s.len() }))
            };
            emit(
                "verify solution",
                None,
                args,
                json!({ "valid": ok, "detail": detail }),
                verdict(ok),
            )
        }
        VerifyCommand::Division { matrix, division, rank } => {
            let m = ZeroOneMatrix::parse(&read(matrix)?)?;
            let d: Division = serde_json::from_str(&read(division)?)?;
            let ok = match rank {
                Some(r) => matrixgrid::is_rank_division(&m, &d, *r),
                None => matrixgrid::is_grid_minor(&m, &d),
            };
            emit("verify division", None, args, json!({ "valid": ok }), verdict(ok))
        }
        VerifyCommand::Augmentation { instance, claim } => {
            let inst = io::dmc_from_doc(&read_doc::<DmcDoc>(instance)?)?;
            let c: AugmentationClaim = serde_json::from_str(&read(claim)?)?;
            let &(s, t) = inst
                .pairs
                .get(c.pair)
                .ok_or_else(|| Error::Input(format!("pair {} out of range", c.pair)))?;
            let z = io::vertex_set(&inst.g, &c.separator)?;
            let arcs = c
                .added_arcs
                .iter()
                .map(|(u, v)| Ok((inst.g.require(u)?, inst.g.require(v)?)))
                .collect::<dmcut::Result<Vec<_>>>()?;
            let res = flowaug::verify_claimed_arcs(&inst.g, s, t, &z, &arcs)?;
            let body = json!({ "valid": res.is_ok(), "reason": res.as_ref().err() });
            emit("verify augmentation", None, args, body, verdict(res.is_ok()))
        }
        VerifyCommand::Reduction { input } => {
            let psi: PsiInstance = read_doc(input)?;
            let red = reductions::psi_to_wdmc(&psi)?;
            let phi = reductions::brute_force_psi(&psi)?;
            let cut = multicut::brute_force_wdmc_guarded(&red.wdmc, &Guard::unlimited())?;
            let round_trip = match &phi {
                Some(phi) => Some(red.extract_solution(&red.map_solution(phi)?)? == *phi),
                None => None,
            };
            let agree = phi.is_some() == cut.is_some() && round_trip != Some(false);
            let body = json!({
                "psi_yes": phi.is_some(),
                "wdmc_yes": cut.is_some(),
                "round_trip": round_trip,
                "agree": agree,
            });
            emit("verify reduction", None, args, body, verdict(agree))
        }
    }
}
