//! Batch command-line interface: instance parsing, relation, eggbox and
//! ideal reports, constructive witnesses, and the full verification
//! matrix with machine-readable output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input or
//! violated precondition, 3 element cap exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use restricted_range::semigroup::DEFAULT_CAP;
use restricted_range::{
    corpus, exgreens, greens, ideals, oracle, semigroup, verify, witness, AlgebraInstance, Endo,
    Error, InstanceClass, RelKind, RelationPartition, SemigroupTable,
};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "restricted-range",
    version,
    about = "Endomorphism semigroups with restricted range: relations, ideals, witnesses, verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the semigroup and emit the table summary
    Enumerate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Report the monoid/regularity classification, optionally with the
    /// abundance flags
    Classify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        abundance: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Compute one of the thirteen relations
    Relations {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        rel: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Build the eggbox diagram of the classical D-classes
    Eggbox {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Enumerate the ideal lattice and run the structural ideal checks
    Ideals {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        check_theorem: bool,
        #[arg(long)]
        incomparable: bool,
        #[arg(long, default_value_t = 16)]
        max_principal: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run a constructive witness operation on table indices
    Witness {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        op: String,
        /// Comma-separated operation arguments (element indices, and the
        /// target rank for rank-drop)
        #[arg(long)]
        args: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run the verification matrix on one or more instances
    Verify {
        #[arg(long = "instance", required = true)]
        instances: Vec<PathBuf>,
        /// Restrict conformance to a comma-separated relation list, or
        /// "all" (the default). A restriction also drops the ideal
        /// checks unless --ideals is passed.
        #[arg(long)]
        relations: Option<String>,
        /// Force the ideal lattice checks when --relations is given
        #[arg(long)]
        ideals: bool,
        #[arg(long)]
        skip_oracle: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        max_principal: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Write the bundled instance corpus as JSON files
    Corpus {
        #[arg(long, default_value = "instances")]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } => ExitCode::from(3),
                Error::Malformed(_) | Error::Precondition(_) | Error::InstanceMismatch => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}

fn load_instance(path: &Path) -> Result<Arc<AlgebraInstance>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    Ok(Arc::new(AlgebraInstance::from_json(&text)?))
}

fn load_table(path: &Path, cap: usize) -> Result<SemigroupTable, Error> {
    SemigroupTable::enumerate(load_instance(path)?, cap)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Malformed(format!("{}: {e}", path.display()))),
        None => {
            if content.ends_with('\n') {
                print!("{content}");
            } else {
                println!("{content}");
            }
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

/// The structural relation suite only applies under the standing
/// assumptions.
fn require_non_regular(table: &SemigroupTable) -> Result<(), Error> {
    if table.classification.class != InstanceClass::NonRegular {
        return Err(Error::Precondition(
            "this command needs a non-regular instance; the relation and ideal \
             characterisations do not apply to regular ones"
                .into(),
        ));
    }
    Ok(())
}

fn compute_relation(table: &SemigroupTable, kind: RelKind) -> RelationPartition {
    match kind {
        RelKind::R => greens::rel_r(table),
        RelKind::L => greens::rel_l(table),
        RelKind::H => greens::rel_h(table),
        RelKind::D => greens::rel_d(table),
        RelKind::J => greens::rel_j(table),
        RelKind::LStar => exgreens::rel_lstar(table),
        RelKind::RStar => exgreens::rel_rstar(table),
        RelKind::LTilde => exgreens::rel_ltilde(table),
        RelKind::RTilde => exgreens::rel_rtilde(table),
        RelKind::DStar => exgreens::rel_dstar(table),
        RelKind::JStar => exgreens::rel_jstar(table),
        RelKind::DTilde => exgreens::rel_dtilde_jtilde(table, RelKind::DTilde),
        RelKind::JTilde => exgreens::rel_dtilde_jtilde(table, RelKind::JTilde),
    }
}

#[derive(Serialize)]
struct RelationJson<'a> {
    schema: &'static str,
    instance: String,
    relation: &'a str,
    class_count: usize,
    classes: &'a [Vec<u32>],
    elements: Vec<String>,
}

#[derive(Serialize)]
struct ClassifyJson {
    schema: &'static str,
    instance: String,
    element_count: usize,
    classification: semigroup::Classification,
    q_size: usize,
    idempotent_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    abundance: Option<exgreens::AbundanceReport>,
}

#[derive(Serialize)]
struct EggboxJson {
    schema: &'static str,
    instance: String,
    d_classes: Vec<greens::DClassBox>,
}

#[derive(Serialize)]
struct IdealsJson {
    schema: &'static str,
    instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    ideals: Option<Vec<Vec<u32>>>,
    /// covering pairs (i, j): ideal i is directly below ideal j
    #[serde(skip_serializing_if = "Option::is_none")]
    hasse_edges: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theorem_forms: Option<Vec<ideals::TheoremFormReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_chain: Option<Vec<ideals::QChainStep>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    incomparable: Option<ideals::IncomparableOutcome>,
}

#[derive(Serialize)]
struct WitnessJson {
    schema: &'static str,
    op: String,
    args: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    second: Option<serde_json::Value>,
    postcondition: &'static str,
}

#[derive(Serialize)]
struct VerifyBundle {
    schema: &'static str,
    pass: bool,
    reports: Vec<verify::VerifyReport>,
}

fn run(cmd: Cmd) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Enumerate { instance, out, cap } => {
            let table = load_table(&instance, cap)?;
            emit(&out, &json(&table.to_json()))?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Classify {
            instance,
            abundance,
            out,
            cap,
        } => {
            let table = load_table(&instance, cap)?;
            let abundance_report = if abundance {
                require_non_regular(&table)?;
                Some(exgreens::abundance(&table))
            } else {
                None
            };
            let report = ClassifyJson {
                schema: restricted_range::SCHEMA,
                instance: table.instance.to_string(),
                element_count: table.len(),
                classification: table.classification,
                q_size: table.q_indices().len(),
                idempotent_count: table.idempotent_indices().len(),
                abundance: abundance_report,
            };
            emit(&out, &json(&report))?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Relations {
            instance,
            rel,
            format,
            out,
            cap,
        } => {
            let table = load_table(&instance, cap)?;
            require_non_regular(&table)?;
            let kind = RelKind::from_str(&rel)?;
            let part = compute_relation(&table, kind);
            let content = match format {
                Format::Json => json(&RelationJson {
                    schema: restricted_range::SCHEMA,
                    instance: table.instance.to_string(),
                    relation: kind.name(),
                    class_count: part.class_count(),
                    classes: &part.blocks,
                    elements: table.elements.iter().map(Endo::label).collect(),
                }),
                Format::Dot => part.to_dot(&table),
                Format::Csv => part.to_csv(&table),
                Format::Text => {
                    let mut s = format!("{}: {} classes\n", kind.name(), part.class_count());
                    for (i, b) in part.blocks.iter().enumerate() {
                        let labels: Vec<String> = b
                            .iter()
                            .map(|&x| table.elements[x as usize].label())
                            .collect();
                        s.push_str(&format!("  class {i}: {}\n", labels.join(" ")));
                    }
                    s
                }
            };
            emit(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Eggbox {
            instance,
            format,
            out,
            cap,
        } => {
            let table = load_table(&instance, cap)?;
            require_non_regular(&table)?;
            let diagram = greens::eggbox(&table);
            let content = match format {
                Format::Dot => diagram.to_dot(&table),
                _ => json(&EggboxJson {
                    schema: restricted_range::SCHEMA,
                    instance: table.instance.to_string(),
                    d_classes: diagram.d_classes,
                }),
            };
            emit(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Ideals {
            instance,
            enumerate,
            check_theorem,
            incomparable,
            max_principal,
            format,
            out,
            cap,
        } => {
            let table = load_table(&instance, cap)?;
            let run_all = !enumerate && !check_theorem && !incomparable;
            let mut report = IdealsJson {
                schema: restricted_range::SCHEMA,
                instance: table.instance.to_string(),
                ideals: None,
                hasse_edges: None,
                theorem_forms: None,
                q_chain: None,
                incomparable: None,
            };
            if enumerate || check_theorem || run_all {
                let lattice = oracle::oracle_ideals(&table, max_principal)?;
                report.hasse_edges = Some(hasse_edges(&lattice));
                if check_theorem || run_all {
                    require_non_regular(&table)?;
                    let mut forms = Vec::new();
                    for ideal in &lattice {
                        forms.push(ideals::theorem_form_check(&table, ideal)?);
                    }
                    report.theorem_forms = Some(forms);
                    report.q_chain = Some(ideals::q_ideal_chain(&table)?);
                }
                report.ideals = Some(lattice);
            }
            if incomparable || run_all {
                require_non_regular(&table)?;
                report.incomparable = Some(ideals::incomparable_pair(&table)?);
            }
            let content = match format {
                Format::Dot => {
                    let lattice = report.ideals.as_ref().ok_or_else(|| {
                        Error::Precondition("dot output needs --enumerate".into())
                    })?;
                    ideal_poset_dot(lattice, report.hasse_edges.as_deref().unwrap_or(&[]))
                }
                _ => json(&report),
            };
            emit(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Witness {
            instance,
            op,
            args,
            out,
            cap,
        } => {
            let table = load_table(&instance, cap)?;
            let parsed: Vec<usize> = args
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Malformed(format!("bad argument {s:?}")))
                })
                .collect::<Result<_, _>>()?;
            let report = run_witness(&table, &op, &parsed)?;
            emit(&out, &json(&report))?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Verify {
            instances,
            relations,
            ideals,
            skip_oracle,
            jobs,
            seed,
            max_principal,
            out,
            cap,
        } => {
            let relation_filter = match relations.as_deref() {
                None | Some("all") => None,
                Some(list) => Some(
                    list.split(',')
                        .map(|s| RelKind::from_str(s.trim()))
                        .collect::<Result<Vec<_>, _>>()?,
                ),
            };
            let check_ideals = relation_filter.is_none() || ideals;
            let cfg = verify::VerifyConfig {
                cap,
                max_principal,
                seed,
                skip_oracle,
                relation_filter,
                check_ideals,
            };
            let loaded: Vec<Arc<AlgebraInstance>> = instances
                .iter()
                .map(|p| load_instance(p))
                .collect::<Result<_, _>>()?;
            let reports = run_verify_jobs(loaded, cfg, jobs.max(1))?;
            let pass = reports.iter().all(|r| r.pass);
            let bundle = VerifyBundle {
                schema: restricted_range::SCHEMA,
                pass,
                reports,
            };
            emit(&out, &json(&bundle))?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Cmd::Corpus { out_dir } => {
            std::fs::create_dir_all(&out_dir)
                .map_err(|e| Error::Malformed(format!("{}: {e}", out_dir.display())))?;
            let mut names = Vec::new();
            for entry in corpus::corpus() {
                let path = out_dir.join(format!("{}.json", entry.name));
                std::fs::write(&path, entry.instance.to_json())
                    .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
                names.push(entry.name);
            }
            println!("wrote {} instances to {}", names.len(), out_dir.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_verify_jobs(
    instances: Vec<Arc<AlgebraInstance>>,
    cfg: verify::VerifyConfig,
    jobs: usize,
) -> Result<Vec<verify::VerifyReport>, Error> {
    if jobs <= 1 || instances.len() <= 1 {
        return instances
            .into_iter()
            .map(|i| verify::verify_instance(i, &cfg))
            .collect();
    }
    let mut slots: Vec<Option<Result<verify::VerifyReport, Error>>> =
        (0..instances.len()).map(|_| None).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots_mutex = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(instances.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= instances.len() {
                    break;
                }
                let report = verify::verify_instance(Arc::clone(&instances[i]), &cfg);
                slots_mutex.lock().unwrap()[i] = Some(report);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every slot filled"))
        .collect()
}

fn endo_value(e: &Endo) -> serde_json::Value {
    serde_json::from_str(&e.to_json()).expect("endo json is valid")
}

fn run_witness(table: &SemigroupTable, op: &str, args: &[usize]) -> Result<WitnessJson, Error> {
    let need = |n: usize| -> Result<(), Error> {
        if args.len() != n {
            return Err(Error::Malformed(format!("{op} expects {n} argument(s)")));
        }
        Ok(())
    };
    // positional element-index arguments; the rank argument of rank-drop
    // is taken raw
    let idx = |i: usize| -> Result<u32, Error> {
        if args[i] >= table.len() {
            return Err(Error::Malformed(format!(
                "element index {} out of range",
                args[i]
            )));
        }
        Ok(args[i] as u32)
    };
    let mut report = WitnessJson {
        schema: restricted_range::SCHEMA,
        op: op.to_string(),
        args: args.to_vec(),
        result: None,
        second: None,
        postcondition: "verified",
    };
    match op {
        "regularize" => {
            need(1)?;
            report.result = Some(endo_value(&witness::regularize(table, idx(0)?)?));
        }
        "deregularize" => {
            need(1)?;
            report.result = Some(endo_value(&witness::deregularize(table, idx(0)?)?));
        }
        "divide-right" => {
            need(2)?;
            report.result = Some(endo_value(&witness::divide_right(table, idx(0)?, idx(1)?)?));
        }
        "divide-left" => {
            need(2)?;
            report.result = Some(endo_value(&witness::divide_left(table, idx(0)?, idx(1)?)?));
        }
        "factorize-through" => {
            need(2)?;
            let (lambda, mu) = witness::factorize_through(table, idx(0)?, idx(1)?)?;
            report.result = Some(endo_value(&lambda));
            report.second = mu.as_ref().map(endo_value);
        }
        "iso-transfer" => {
            need(2)?;
            let (gamma, mu) = witness::iso_transfer(table, idx(0)?, idx(1)?)?;
            report.result = Some(endo_value(&gamma));
            report.second = Some(endo_value(&mu));
        }
        "rank-drop" => {
            need(2)?;
            report.result = Some(endo_value(&witness::rank_drop_multiplier(
                table,
                idx(0)?,
                args[1],
            )?));
        }
        "composite-search" => {
            need(2)?;
            match witness::composite_witness_search(table, idx(0)?, idx(1)?) {
                Some(g) => report.result = Some(endo_value(&table.elements[g as usize])),
                None => report.postcondition = "no witness exists",
            }
        }
        "composite-search-reversed" => {
            need(2)?;
            match witness::composite_witness_search_reversed(table, idx(0)?, idx(1)?) {
                Some(g) => report.result = Some(endo_value(&table.elements[g as usize])),
                None => report.postcondition = "no witness exists",
            }
        }
        other => {
            return Err(Error::Malformed(format!(
                "unknown witness operation {other:?}; expected one of regularize, deregularize, \
                 divide-right, divide-left, factorize-through, iso-transfer, rank-drop, \
                 composite-search, composite-search-reversed"
            )))
        }
    }
    Ok(report)
}

fn hasse_edges(lattice: &[Vec<u32>]) -> Vec<(usize, usize)> {
    let subset = |a: &[u32], b: &[u32]| a.iter().all(|x| b.binary_search(x).is_ok());
    let mut edges = Vec::new();
    for (i, a) in lattice.iter().enumerate() {
        for (j, b) in lattice.iter().enumerate() {
            if i == j || !subset(a, b) || a.len() == b.len() {
                continue;
            }
            let covered = lattice.iter().enumerate().any(|(k, c)| {
                k != i
                    && k != j
                    && subset(a, c)
                    && subset(c, b)
                    && c.len() != a.len()
                    && c.len() != b.len()
            });
            if !covered {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn ideal_poset_dot(lattice: &[Vec<u32>], edges: &[(usize, usize)]) -> String {
    let mut s = String::from("digraph ideals {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, ideal) in lattice.iter().enumerate() {
        s.push_str(&format!("  i{i} [label=\"{} elements\"];\n", ideal.len()));
    }
    for (a, b) in edges {
        s.push_str(&format!("  i{a} -> i{b};\n"));
    }
    s.push_str("}\n");
    s
}
