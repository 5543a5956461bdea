//! File-driven command-line front end: parse weight systems and graphs, run
//! the analyses, and emit reports with a stable exit-code contract
//! (0 pass, 1 mathematical failure, 2 malformed input, 3 budget exceeded).

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;
use toruskel::gkm::{self, vandermonde, ModelKind};
use toruskel::io::{self, ParsedGraph};
use toruskel::lattice::{IntVector, Sublattice};
use toruskel::report::{Report, Verdict};
use toruskel::weights::{self, WeightSystem};
use toruskel::z2::{self, SearchBudget};
use toruskel::z2graph;

#[derive(Parser)]
#[command(name = "toruskel", version, about = "Exact analysis of torus-representation weight systems and labeled one-skeleton graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input file (single JSON object; integer numerics only)
    #[arg(long, global = true, default_value = "")]
    input: String,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed fixing all randomness (identity-testing trials)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for the parallel paths (never changes verdicts)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Search cutoff in seconds for enumerations; exceeding it exits 3
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Faithfulness, finite-isotropy witnesses, and the mod-2 bridge
    WeightsAnalyze,
    /// The circle-splitting construction with its certified lattices
    WeightsSplit,
    /// The d(d+1)/2 bound and extremal basis recovery
    WeightsTheoremE,
    /// Maximum sparse generating sets with the codimension-three property
    Z2MaxSparse,
    /// Splitting witnesses for a GF(2) set with the property
    Z2Split,
    /// Structural validation of a skeleton graph (multiplicity, Euler formula)
    GkmValidate,
    /// Linear placement model recovery from edge labels
    GkmFit,
    /// Confluent Vandermonde freeness certificate
    GkmVandermonde,
    /// Coset structure of the GF(2) edge labels
    Z2graphValidate,
    /// Fixed-set components and dimensions of an involution
    Z2graphInvolution,
    /// The half-sum model for four parallel edges
    Z2graphM4,
}

fn main() {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = cli.jobs;

    let report = run(&cli).unwrap_or_else(|e| e);
    match cli.format {
        Format::Text => print!("{}", report.text()),
        Format::Machine => println!("{}", report.machine()),
    }
    std::process::exit(report.exit_code);
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::WeightsAnalyze => "weights-analyze",
        Command::WeightsSplit => "weights-split",
        Command::WeightsTheoremE => "weights-theorem-e",
        Command::Z2MaxSparse => "z2-max-sparse",
        Command::Z2Split => "z2-split",
        Command::GkmValidate => "gkm-validate",
        Command::GkmFit => "gkm-fit",
        Command::GkmVandermonde => "gkm-vandermonde",
        Command::Z2graphValidate => "z2graph-validate",
        Command::Z2graphInvolution => "z2graph-involution",
        Command::Z2graphM4 => "z2graph-m4",
    }
}

fn parse_error(cli: &Cli, claim: &'static str, e: impl std::fmt::Display) -> Report {
    Report::new(command_name(&cli.command), Verdict::Error, claim)
        .with_details(json!({ "error": e.to_string() }))
        .with_seed(cli.seed)
}

fn vec_json(v: &IntVector) -> serde_json::Value {
    json!(v
        .0
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<String>>())
}

fn vecs_json(vs: &[IntVector]) -> serde_json::Value {
    json!(vs.iter().map(vec_json).collect::<Vec<_>>())
}

fn lattice_json(l: &Sublattice) -> serde_json::Value {
    vecs_json(l.basis())
}

fn bits_json(bits: u32, d: usize) -> serde_json::Value {
    let s: String = (0..d)
        .map(|k| if bits >> k & 1 == 1 { '1' } else { '0' })
        .collect();
    json!(s)
}

fn system_json(w: &WeightSystem) -> serde_json::Value {
    json!({
        "rank": w.rank(),
        "weights": w.entries().iter().map(|(v, _)| vec_json(v)).collect::<Vec<_>>(),
        "multiplicities": w.entries().iter().map(|(_, m)| m).collect::<Vec<_>>(),
        "trivial": w.trivial_multiplicity(),
    })
}

fn witness_json(w: &weights::IsotropyWitness) -> serde_json::Value {
    json!({
        "weight_indices": w.indices,
        "divisors": w.divisors.iter().map(BigInt::to_string).collect::<Vec<_>>(),
    })
}

fn run(cli: &Cli) -> Result<Report, Report> {
    let name = command_name(&cli.command);
    match &cli.command {
        Command::WeightsAnalyze => {
            let claim = "weight span, isotropy connectedness, and the mod-2 sparseness bridge";
            let (w, notes) = io::parse_weight_file(&cli.input)
                .map_err(|e| parse_error(cli, claim, e))?;
            let warnings: Vec<String> = notes
                .iter()
                .map(|n| {
                    format!(
                        "merged sign-equivalent weights into {:?} with multiplicity {}",
                        n.weight, n.total_multiplicity
                    )
                })
                .collect();
            let witness = weights::finite_isotropy_witness(&w);
            let mut details = json!({
                "rank": w.rank(),
                "class_count": w.class_count(),
                "faithful": w.is_faithful(),
                "finite_kernel": w.has_finite_kernel(),
                "connected_isotropy": witness.is_none(),
            });
            if let Some(wit) = &witness {
                details["finite_isotropy_witness"] = witness_json(wit);
            }
            if witness.is_none() && w.is_faithful() {
                let s = weights::mod2_weights(&w).expect("bridge holds for connected isotropy");
                details["mod2_image"] = json!(s
                    .members()
                    .iter()
                    .map(|&m| bits_json(m, w.rank()))
                    .collect::<Vec<_>>());
                details["codim3_property"] =
                    json!(z2::has_codim3_property(&s).expect("image generates"));
            }
            Ok(Report::new(name, Verdict::Pass, claim)
                .with_details(details)
                .with_seed(cli.seed)
                .with_warnings(warnings))
        }
        Command::WeightsSplit => {
            let claim = "existence of a circle-splitting subgroup with product structure";
            let (w, _) = io::parse_weight_file(&cli.input)
                .map_err(|e| parse_error(cli, claim, e))?;
            match weights::s1_split(&w) {
                Ok(res) => {
                    weights::verify_split_result(&w, &res)
                        .expect("construction satisfies its own contract");
                    let mut details = json!({
                        "l1": lattice_json(&res.l1),
                        "l2": lattice_json(&res.l2),
                        "subgroup_annihilator": lattice_json(res.subgroup.annihilator()),
                        "subgroup_dim": res.subgroup.dim(),
                        "circle_weight": vec_json(&res.circle_weight.0),
                        "circle_multiplicity": res.circle_weight.1,
                        "fixed_weights": system_json(&res.fixed_weights),
                        "complement": system_json(&res.complement),
                        "verified": true,
                    });
                    if let Some(red) = &res.reduction {
                        details["reduction_lattice"] = lattice_json(&red.lattice);
                        details["reduction_component_group"] = json!(red
                            .finite_group
                            .component_group()
                            .iter()
                            .map(BigInt::to_string)
                            .collect::<Vec<_>>());
                    }
                    Ok(Report::new(name, Verdict::Pass, claim)
                        .with_details(details)
                        .with_seed(cli.seed))
                }
                Err(e) => Err(Report::new(name, Verdict::Fail, claim)
                    .with_details(json!({ "failure": e.to_string() }))
                    .with_seed(cli.seed)),
            }
        }
        Command::WeightsTheoremE => {
            let claim = "weight-class count bound d(d+1)/2 with extremal classification";
            let (w, _) = io::parse_weight_file(&cli.input)
                .map_err(|e| parse_error(cli, claim, e))?;
            match weights::extremal_classification(&w) {
                Ok(rep) => {
                    let mut details = json!({
                        "count": rep.count,
                        "bound": rep.bound,
                        "extremal": rep.extremal_basis.is_some(),
                    });
                    if let Some(basis) = &rep.extremal_basis {
                        assert!(weights::regenerates_weights(&w, basis));
                        details["basis"] = vecs_json(basis);
                    }
                    Ok(Report::new(name, Verdict::Pass, claim)
                        .with_details(details)
                        .with_seed(cli.seed))
                }
                Err(weights::WeightError::DisconnectedIsotropy { witness }) => {
                    Err(Report::new(name, Verdict::Fail, claim)
                        .with_details(json!({
                            "failure": "input has disconnected isotropy",
                            "witness_indices": witness,
                        }))
                        .with_seed(cli.seed))
                }
                Err(e) => Err(Report::new(name, Verdict::Fail, claim)
                    .with_details(json!({ "failure": e.to_string() }))
                    .with_seed(cli.seed)),
            }
        }
        Command::Z2MaxSparse => {
            let claim = "maximum size and classification of sparse generating sets";
            let d = io::parse_dimension_file(&cli.input)
                .map_err(|e| parse_error(cli, claim, e))?;
            let budget = SearchBudget {
                deadline: cli
                    .budget
                    .map(|s| std::time::Instant::now() + std::time::Duration::from_secs(s)),
            };
            match z2::enumerate_max_sparse(d, budget) {
                Ok(res) => Ok(Report::new(name, Verdict::Pass, claim)
                    .with_details(json!({
                        "d": d,
                        "max_nonzero": res.max_nonzero,
                        "expected_bound": d * (d + 1) / 2,
                        "class_count": res.witnesses.len(),
                        "witnesses": res
                            .witnesses
                            .iter()
                            .map(|s| s
                                .members()
                                .iter()
                                .map(|&m| bits_json(m, d))
                                .collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    }))
                    .with_seed(cli.seed)),
                Err(z2::Z2Error::BudgetExceeded) => {
                    Err(Report::new(name, Verdict::Inconclusive, claim)
                        .with_details(json!({ "error": "search budget exceeded" }))
                        .with_seed(cli.seed))
                }
                Err(e) => Err(parse_error(cli, claim, e)),
            }
        }
        Command::Z2Split => {
            let claim = "splitting witnesses for sparse generating sets";
            let s = io::parse_z2_set_file(&cli.input)
                .map_err(|e| parse_error(cli, claim, e))?;
            let d = s.dim();
            match (z2::find_split(&s), z2::find_codim1_independent(&s)) {
                (Ok(split), Ok(hyper)) => {
                    assert!(z2::verify_split(&s, &split));
                    assert!(z2::verify_codim1(&s, &hyper));
                    Ok(Report::new(name, Verdict::Pass, claim)
                        .with_details(json!({
                            "split_subspace": split
                                .subspace_basis
                                .iter()
                                .map(|&b| bits_json(b, d))
                                .collect::<Vec<_>>(),
                            "split_element": bits_json(split.lonely, d),
                            "hyperplane": hyper
                                .iter()
                                .map(|&b| bits_json(b, d))
                                .collect::<Vec<_>>(),
                            "verified": true,
                        }))
                        .with_seed(cli.seed))
                }
                (Err(e), _) | (_, Err(e)) => Err(Report::new(name, Verdict::Fail, claim)
                    .with_details(json!({ "failure": e.to_string() }))
                    .with_seed(cli.seed)),
            }
        }
        Command::GkmValidate => {
            let claim = "uniform edge multiplicity and the Euler-characteristic formula";
            let g = io::parse_graph_file(&cli.input)
                .map_err(|e| parse_error(cli, claim, e))?;
            let base = match &g {
                ParsedGraph::Plain(g) => g.clone(),
                ParsedGraph::Labeled(g) => g.base(),
            };
            match gkm::validate_skeleton(&base) {
                Ok(rep) => Ok(Report::new(name, Verdict::Pass, claim)
                    .with_details(json!({ "m": rep.m, "chi": rep.chi, "n": base.n }))
                    .with_seed(cli.seed)),
                Err(e) => Err(Report::new(name, Verdict::Fail, claim)
                    .with_details(json!({ "violation": e.to_string() }))
                    .with_seed(cli.seed)),
            }
        }
        Command::GkmFit => {
            let claim = "existence of a linear placement model for the edge labels";
            let g = io::parse_graph_file(&cli.input)
                .map_err(|e| parse_error(cli, claim, e))?;
            let base = match &g {
                ParsedGraph::Plain(g) => g.clone(),
                ParsedGraph::Labeled(g) => g.base(),
            };
            let rep = gkm::validate_skeleton(&base).map_err(|e| {
                Report::new(name, Verdict::Fail, claim)
                    .with_details(json!({ "violation": e.to_string() }))
                    .with_seed(cli.seed)
            })?;
            let kind = match rep.m {
                1 => ModelKind::Cp,
                2 => ModelKind::Hp,
                m => {
                    return Err(Report::new(name, Verdict::Fail, claim)
                        .with_details(json!({
                            "failure": format!("no label model is defined for multiplicity {m}"),
                        }))
                        .with_seed(cli.seed))
                }
            };
            match gkm::fit_linear_model(&base, kind) {
                Ok(model) => Ok(Report::new(name, Verdict::Pass, claim)
                    .with_details(json!({
                        "kind": match kind { ModelKind::Cp => "cp", ModelKind::Hp => "hp" },
                        "u": vecs_json(&model.u),
                        "verified": true,
                    }))
                    .with_seed(cli.seed)),
                Err(gkm::FitError::Inconsistent { triangle, reason }) => {
                    Err(Report::new(name, Verdict::Fail, claim)
                        .with_details(json!({
                            "failure": reason,
                            "violating_triangle": triangle,
                        }))
                        .with_seed(cli.seed))
                }
                Err(e) => Err(Report::new(name, Verdict::Fail, claim)
                    .with_details(json!({ "failure": e.to_string() }))
                    .with_seed(cli.seed)),
            }
        }
        Command::GkmVandermonde => {
            let claim = "confluent Vandermonde determinant freeness";
            let (u, betti) = io::parse_vandermonde_file(&cli.input)
                .map_err(|e| parse_error(cli, claim, e))?;
            let seed = cli.seed.unwrap_or(0);
            match vandermonde::vandermonde_free_check(&u, &betti, seed) {
                Ok(rep) => {
                    let mut details = json!({
                        "free": rep.free,
                        "identity_route": if rep.symbolic { "symbolic" } else { "evaluation" },
                        "trials": rep.trials,
                    });
                    if let Some((i, j)) = rep.collision {
                        details["collision"] = json!([i, j]);
                    }
                    if let Some((num, den)) = &rep.error_bound {
                        details["error_probability_bound"] =
                            json!([num.to_string(), den.to_string()]);
                    }
                    let verdict = if rep.free { Verdict::Pass } else { Verdict::Fail };
                    let report = Report::new(name, verdict, claim)
                        .with_details(details)
                        .with_seed(cli.seed);
                    if rep.free {
                        Ok(report)
                    } else {
                        Err(report)
                    }
                }
                Err(e) => Err(parse_error(cli, claim, e)),
            }
        }
        Command::Z2graphValidate => {
            let claim = "coset structure of the GF(2) edge labels";
            let g = io::parse_graph_file(&cli.input)
                .map_err(|e| parse_error(cli, claim, e))?;
            let ParsedGraph::Labeled(g) = g else {
                return Err(parse_error(cli, claim, "graph carries no GF(2) labels"));
            };
            match z2graph::validate_z2_structure(&g) {
                Ok(cs) => Ok(Report::new(name, Verdict::Pass, claim)
                    .with_details(json!({
                        "subspace_basis": cs
                            .subspace_basis
                            .iter()
                            .map(|&b| bits_json(b, g.rank))
                            .collect::<Vec<_>>(),
                        "representatives": cs
                            .representatives
                            .iter()
                            .map(|(&(i, j), &a)| json!({
                                "pair": [i, j],
                                "label": bits_json(a, g.rank),
                            }))
                            .collect::<Vec<_>>(),
                        "m2": cs.m2,
                    }))
                    .with_seed(cli.seed)),
                Err(e) => Err(Report::new(name, Verdict::Fail, claim)
                    .with_details(json!({ "violation": e.to_string() }))
                    .with_seed(cli.seed)),
            }
        }
        Command::Z2graphInvolution => {
            let claim = "fixed-set dichotomy and dimension sum for an involution";
            let g = io::parse_graph_file(&cli.input)
                .map_err(|e| parse_error(cli, claim, e))?;
            let ParsedGraph::Labeled(g) = g else {
                return Err(parse_error(cli, claim, "graph carries no GF(2) labels"));
            };
            let iota = io::parse_involution(&cli.input, g.rank)
                .map_err(|e| parse_error(cli, claim, e))?;
            match z2graph::involution_fixed_analysis(&g, iota) {
                Ok(rep) => Ok(Report::new(name, Verdict::Pass, claim)
                    .with_details(json!({
                        "components": rep
                            .components
                            .iter()
                            .map(|c| json!({ "vertices": c.vertices, "dim": c.dim }))
                            .collect::<Vec<_>>(),
                        "halved": rep.halved,
                        "verified_sum": rep.verified_sum,
                        "flagged_unverified": rep.flagged_unverified,
                    }))
                    .with_seed(cli.seed)),
                Err(e) => Err(Report::new(name, Verdict::Fail, claim)
                    .with_details(json!({ "violation": e.to_string() }))
                    .with_seed(cli.seed)),
            }
        }
        Command::Z2graphM4 => {
            let claim = "reflection half-sum model for four parallel edges";
            let (r, s1, s2) = io::parse_m4_file(&cli.input)
                .map_err(|e| parse_error(cli, claim, e))?;
            match z2graph::fit_m4_model(&r, &s1, &s2) {
                Ok(model) => Ok(Report::new(name, Verdict::Pass, claim)
                    .with_details(json!({
                        "u": vecs_json(&model.u),
                        "r_order": model.r_order,
                        "span_rank": 4,
                    }))
                    .with_seed(cli.seed)),
                Err(e) => Err(Report::new(name, Verdict::Fail, claim)
                    .with_details(json!({ "failure": e.to_string() }))
                    .with_seed(cli.seed)),
            }
        }
    }
}
