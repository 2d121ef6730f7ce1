use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fuzzrel::closure::{consistent_closure, transitive_closure_detailed, ClosureVariant};
use fuzzrel::extension::{
    consistency_violation, extend_consistent, is_compatible_extension_asym,
    star_compatibility_violation, totalize_with_order, ArcOrder, ExtensionReport, RelationClassId,
};
use fuzzrel::io::{read_document, RelationDocument};
use fuzzrel::oracle::{
    verify_adjunction_grid, verify_consistency_equivalence, verify_crisp_duggan_intersection,
    verify_least_consistent_closure, GridSpec, OracleReport,
};
use fuzzrel::{FuzzyRelation, TNormId};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "fuzzrel",
    version,
    about = "Closures, consistency and compatible extensions of fuzzy relations"
)]
struct Cli {
    /// T-norm; defaults to the input file's `tnorm`, then to godel
    #[arg(long, global = true, value_enum)]
    tnorm: Option<TNormArg>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the transitive closure T(R)
    Closure { input: PathBuf },
    /// Print a consistent closure
    Cclosure {
        #[arg(long, value_enum)]
        variant: VariantArg,
        input: PathBuf,
    },
    /// Check a structural property
    Check {
        #[arg(long, value_enum)]
        property: PropertyArg,
        input: PathBuf,
    },
    /// Is Q a compatible extension of R?
    Compat {
        #[arg(long, value_enum, default_value_t = SenseArg::Star)]
        sense: SenseArg,
        r: PathBuf,
        q: PathBuf,
    },
    /// Extend a transitive relation to a total one within a class
    Extend {
        #[arg(long, value_enum, default_value_t = ClassArg::R3)]
        class: ClassArg,
        /// Accept any consistent relation: close it first, then extend
        #[arg(long)]
        via_closure: bool,
        /// Scan candidate arcs in a seeded random order instead of row-major
        #[arg(long)]
        seed: Option<u64>,
        input: PathBuf,
    },
    /// Run an exhaustive verification sweep
    Oracle {
        #[arg(long, value_enum)]
        property: OracleArg,
        /// Universe size for grid sweeps (2 or 3)
        #[arg(long, default_value_t = 2)]
        size: usize,
        /// Comma-separated grid values
        #[arg(long, value_delimiter = ',', default_value = "0,0.5,1")]
        values: Vec<f64>,
        /// Grid step for the adjunction sweep
        #[arg(long, default_value_t = 0.25)]
        step: f64,
        /// Relation class for the crisp intersection sweep
        #[arg(long, value_enum, default_value_t = ClassArg::R3)]
        class: ClassArg,
        /// Maximum number of enumerated relations
        #[arg(long)]
        cap: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TNormArg {
    Godel,
    Lukasiewicz,
    Product,
}

impl From<TNormArg> for TNormId {
    fn from(t: TNormArg) -> Self {
        match t {
            TNormArg::Godel => TNormId::Godel,
            TNormArg::Lukasiewicz => TNormId::Lukasiewicz,
            TNormArg::Product => TNormId::Product,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Delta,
    Nabla,
    Star,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PropertyArg {
    Reflexive,
    Irreflexive,
    Transitive,
    Total,
    StronglyTotal,
    Consistent,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SenseArg {
    Star,
    Asym,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    R1,
    R2,
    R3,
    Any,
}

impl From<ClassArg> for RelationClassId {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::R1 => RelationClassId::StrictPartialOrder,
            ClassArg::R2 => RelationClassId::Preorder,
            ClassArg::R3 => RelationClassId::Transitive,
            ClassArg::Any => RelationClassId::Unrestricted,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleArg {
    LeastClosure,
    DugganCrisp,
    ConsistencyEquiv,
    Adjunction,
}

/// Printed output plus whether the verdict was positive.
struct Outcome {
    text: String,
    verdict: bool,
}

fn load(path: &Path) -> Result<(FuzzyRelation, Option<TNormId>)> {
    let doc = read_document(path)
        .with_context(|| format!("cannot load relation from {}", path.display()))?;
    let r = doc.to_relation()?;
    Ok((r, doc.tnorm))
}

fn pick_tnorm(flag: Option<TNormArg>, from_files: &[Option<TNormId>]) -> TNormId {
    flag.map(TNormId::from)
        .or_else(|| from_files.iter().flatten().next().copied())
        .unwrap_or(TNormId::Godel)
}

fn relation_output(title: &str, r: &FuzzyRelation, t: TNormId, format: Format) -> Result<String> {
    Ok(match format {
        Format::Table => format!("{title} ({t})\n{r}"),
        Format::Json => serde_json::to_string_pretty(&RelationDocument::from_relation(r, Some(t)))?,
    })
}

fn run(cli: Cli) -> Result<Outcome> {
    let format = cli.format;
    match cli.command {
        Command::Closure { input } => {
            let (r, file_t) = load(&input)?;
            let t = pick_tnorm(cli.tnorm, &[file_t]);
            let out = transitive_closure_detailed(&r, t);
            if !out.converged {
                eprintln!("warning: iteration cap reached before an exact fixpoint");
            }
            Ok(Outcome {
                text: relation_output("T(R)", &out.relation, t, format)?,
                verdict: true,
            })
        }
        Command::Cclosure { variant, input } => {
            let (r, file_t) = load(&input)?;
            let t = pick_tnorm(cli.tnorm, &[file_t]);
            let variant = match variant {
                VariantArg::Delta => ClosureVariant::Delta,
                VariantArg::Nabla => ClosureVariant::Nabla,
                VariantArg::Star => ClosureVariant::GodelStar,
            };
            if variant == ClosureVariant::GodelStar && t != TNormId::Godel {
                bail!("--variant star requires --tnorm godel (got {t})");
            }
            let c = consistent_closure(&r, t, variant)?;
            Ok(Outcome {
                text: relation_output(&format!("{variant} closure"), &c, t, format)?,
                verdict: true,
            })
        }
        Command::Check { property, input } => {
            let (r, file_t) = load(&input)?;
            let t = pick_tnorm(cli.tnorm, &[file_t]);
            let mut violation = None;
            let (name, verdict) = match property {
                PropertyArg::Reflexive => ("reflexive", r.is_reflexive()),
                PropertyArg::Irreflexive => ("irreflexive", r.is_irreflexive()),
                PropertyArg::Transitive => ("transitive", r.is_transitive(t)),
                PropertyArg::Total => ("total", r.is_total()),
                PropertyArg::StronglyTotal => ("strongly-total", r.is_strongly_total()),
                PropertyArg::Consistent => {
                    violation = consistency_violation(&r, t);
                    ("consistent", violation.is_none())
                }
            };
            let text = match format {
                Format::Table => {
                    let mut s = format!("{name} ({t}): {verdict}");
                    if let Some(v) = &violation {
                        s.push_str(&format!("\n  T(R) violates: {v}"));
                    }
                    s
                }
                Format::Json => serde_json::to_string_pretty(&json!({
                    "property": name,
                    "tnorm": t,
                    "verdict": verdict,
                    "violation": violation,
                }))?,
            };
            Ok(Outcome { text, verdict })
        }
        Command::Compat { sense, r, q } => {
            let (r, rt) = load(&r)?;
            let (q, qt) = load(&q)?;
            let t = pick_tnorm(cli.tnorm, &[rt, qt]);
            if r.universe() != q.universe() {
                bail!("R and Q are defined over different universes");
            }
            let (name, verdict, violation) = match sense {
                SenseArg::Star => {
                    let v = star_compatibility_violation(&r, &q, t)?;
                    ("star", v.is_none(), v)
                }
                SenseArg::Asym => ("asym", is_compatible_extension_asym(&r, &q, t)?, None),
            };
            let text = match format {
                Format::Table => {
                    let mut s = format!("{name}-compatible extension ({t}): {verdict}");
                    if let Some(v) = &violation {
                        s.push_str(&format!("\n  violated: {v}"));
                    }
                    s
                }
                Format::Json => serde_json::to_string_pretty(&json!({
                    "sense": name,
                    "tnorm": t,
                    "verdict": verdict,
                    "violation": violation,
                }))?,
            };
            Ok(Outcome { text, verdict })
        }
        Command::Extend {
            class,
            via_closure,
            seed,
            input,
        } => {
            let (r, file_t) = load(&input)?;
            let t = pick_tnorm(cli.tnorm, &[file_t]);
            let class = RelationClassId::from(class);
            let report = if via_closure {
                if class != RelationClassId::Transitive && class != RelationClassId::Unrestricted {
                    bail!("--via-closure only supports --class r3 or --class any");
                }
                extend_consistent(&r, t)?
                    .ok_or_else(|| anyhow!("input relation is not {t}-consistent"))?
            } else {
                let order = seed.map_or(ArcOrder::Lexicographic, ArcOrder::Shuffled);
                totalize_with_order(&r, t, class, order)?
            };
            let verdict = report.all_verified();
            let text = match format {
                Format::Table => extension_table(&report),
                Format::Json => serde_json::to_string_pretty(&report)?,
            };
            Ok(Outcome { text, verdict })
        }
        Command::Oracle {
            property,
            size,
            values,
            step,
            class,
            cap,
        } => {
            let t = pick_tnorm(cli.tnorm, &[]);
            let grid = || -> Result<GridSpec> {
                let g = GridSpec::new(size, &values)?;
                Ok(match cap {
                    Some(c) => g.with_cap(c),
                    None => g,
                })
            };
            let report = match property {
                OracleArg::LeastClosure => {
                    if t != TNormId::Godel {
                        bail!("--property least-closure requires --tnorm godel (got {t})");
                    }
                    verify_least_consistent_closure(&grid()?)?
                }
                OracleArg::DugganCrisp => verify_crisp_duggan_intersection(class.into()),
                OracleArg::ConsistencyEquiv => verify_consistency_equivalence(&grid()?, t)?,
                OracleArg::Adjunction => verify_adjunction_grid(t, step)?,
            };
            let verdict = report.passed();
            let text = match format {
                Format::Table => oracle_table(&report),
                Format::Json => serde_json::to_string_pretty(&report)?,
            };
            Ok(Outcome { text, verdict })
        }
    }
}

fn extension_table(report: &ExtensionReport) -> String {
    let arcs: Vec<String> = report
        .inserted_arcs
        .iter()
        .map(|(a, b)| format!("({a}, {b})"))
        .collect();
    let t = report.tnorm.map_or("custom".to_string(), |t| t.to_string());
    format!(
        "extension in class {} ({t})\n{}\ninserted arcs: {}\niterations: {}\n\
         total: {}\ntransitive: {}\nstar-compatible: {}\nclass member: {}\nconverged: {}",
        report.class,
        report.result,
        if arcs.is_empty() {
            "none".to_string()
        } else {
            arcs.join(" ")
        },
        report.iterations,
        report.verified_total,
        report.verified_transitive,
        report.verified_star_compatible,
        report.verified_class_member,
        report.converged,
    )
}

fn oracle_table(report: &OracleReport) -> String {
    let mut s = format!(
        "{}: {} instances checked, {} violations",
        report.property, report.instances_checked, report.violations
    );
    if let Some(c) = &report.first_counterexample {
        s.push_str(&format!(
            "\nfirst counterexample (#{}): {}",
            c.index, c.detail
        ));
        if let Some(r) = &c.relation {
            s.push_str(&format!("\nR =\n{r}"));
        }
        if let Some(w) = &c.witness {
            s.push_str(&format!("witness =\n{w}"));
        }
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out.text.trim_end());
            if out.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
