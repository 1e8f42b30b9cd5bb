//! Command-line front end: census construction, family enumeration,
//! verification runs and count tables, with JSON output for harnesses and a
//! terse human summary on stdout.
//!
//! Exit codes: 0 success (and verification passed), 1 verification failure
//! or internal error, 2 usage or input error.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use tiltlab::biject::{Lab, SetKind};
use tiltlab::census::{Census, CensusError};
use tiltlab::families::family_quiver;
use tiltlab::linalg::FieldSpec;
use tiltlab::oracle::{
    all_thick_subcategories, all_torsion_classes, all_torsionfree_classes, cover_witness,
    OracleConfig, OracleError,
};
use tiltlab::quiver::Quiver;
use tiltlab::roots::RootPoset;

#[derive(Parser)]
#[command(
    name = "tiltlab",
    about = "Indecomposables, tilting combinatorics and cross-checked enumeration for Dynkin quivers over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the census of indecomposables with Hom/Ext tables
    Census(QuiverArgs),
    /// Enumerate one of the seven families of classification data
    Enumerate {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// antichains | thick | normal | support-tilting | torsion | conormal | torsionfree
        #[arg(long)]
        set: String,
        /// Keep only full-support entries
        #[arg(long)]
        sincere: bool,
    },
    /// Enumerate all seven families, verify every roundtrip, compare with
    /// the closure oracle and the root-poset antichain count
    Verify {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// on | off | auto (auto skips the oracle when it would not scale)
        #[arg(long, default_value = "auto")]
        oracle: String,
        /// Total-dimension bound for the oracle's subrepresentation scans
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
    },
    /// Support-tilting counts by support rank across a Dynkin family
    Table {
        /// A or D
        #[arg(long)]
        family: String,
        /// Largest rank to tabulate (A: up to 6, D: up to 5)
        #[arg(long)]
        max_n: usize,
        /// Prime field modulus
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Write machine-readable JSON here
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct QuiverArgs {
    /// Built-in family tag with optional orientation, e.g. A3 or D4:<<>
    #[arg(long)]
    family: Option<String>,
    /// Path to a quiver JSON file: {"vertices": n, "arrows": [[s,t], ...]}
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Prime field modulus
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Write machine-readable JSON here
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Failures routed to exit codes. Input failures carry the machine-readable
/// diagnostic, printed as one JSON line on stderr.
enum Failure {
    Input(Value),
    Internal(String),
    VerificationFailed,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Failure {
        Failure::Input(json!({"error": msg.into(), "witness": Value::Null}))
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Failure {
        match e {
            CensusError::Quiver(q) => Failure::Input(q.to_diagnostic()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<tiltlab::biject::LabError> for Failure {
    fn from(e: tiltlab::biject::LabError) -> Failure {
        match e {
            tiltlab::biject::LabError::Census(c) => c.into(),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(diag)) => {
            eprintln!("{diag}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::VerificationFailed) => ExitCode::from(1),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Census(args) => cmd_census(&args),
        Command::Enumerate {
            quiver,
            set,
            sincere,
        } => cmd_enumerate(&quiver, &set, sincere),
        Command::Verify {
            quiver,
            oracle,
            max_dim,
        } => cmd_verify(&quiver, &oracle, max_dim),
        Command::Table {
            family,
            max_n,
            p,
            json,
        } => cmd_table(&family, max_n, p, json.as_deref()),
    }
}

fn load_quiver(args: &QuiverArgs) -> Result<(Quiver, String), Failure> {
    match (&args.family, &args.quiver) {
        (Some(tag), None) => {
            let q = family_quiver(tag)
                .map_err(|e| Failure::Input(json!({"error": e.to_string(), "witness": tag})))?;
            Ok((q, tag.clone()))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::Input(json!({
                    "error": format!("cannot read quiver file: {e}"),
                    "witness": path.display().to_string(),
                }))
            })?;
            let value: Value = serde_json::from_str(&text).map_err(|e| {
                Failure::Input(json!({
                    "error": format!("malformed JSON: {e}"),
                    "witness": path.display().to_string(),
                }))
            })?;
            let q = Quiver::from_json(&value).map_err(|e| Failure::Input(e.to_diagnostic()))?;
            Ok((q, path.display().to_string()))
        }
        _ => Err(Failure::input(
            "exactly one of --family and --quiver is required",
        )),
    }
}

fn field(p: u32) -> Result<FieldSpec, Failure> {
    FieldSpec::new(p).map_err(|e| Failure::Input(json!({"error": e.to_string(), "witness": p})))
}

fn build_lab(args: &QuiverArgs) -> Result<(Lab, String), Failure> {
    let (q, name) = load_quiver(args)?;
    let f = field(args.p)?;
    // surface quiver rejections as input diagnostics before any heavy work
    q.validate()
        .map_err(|e| Failure::Input(e.to_diagnostic()))?;
    let census = Census::build(&q, f)?;
    Ok((Lab::new(census), name))
}

fn write_json(path: Option<&Path>, value: &Value) -> Result<(), Failure> {
    if let Some(path) = path {
        let mut text =
            serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
        text.push('\n');
        std::fs::write(path, text).map_err(|e| {
            Failure::Input(json!({
                "error": format!("cannot write output: {e}"),
                "witness": path.display().to_string(),
            }))
        })?;
    }
    Ok(())
}

fn cmd_census(args: &QuiverArgs) -> Result<(), Failure> {
    let (lab, name) = build_lab(args)?;
    let census = lab.census();
    println!(
        "census of {name} over F_{}: {} indecomposables",
        args.p,
        census.len()
    );
    for i in 0..census.len() {
        let root: Vec<i64> = census.root(i).0.clone();
        println!("  [{i}] root {root:?}");
    }
    println!("hom table:");
    print_table(census, |i, j| census.hom(i, j));
    println!("ext table:");
    print_table(census, |i, j| census.ext(i, j));
    write_json(args.json.as_deref(), &census.to_json())
}

fn print_table(census: &Census, entry: impl Fn(usize, usize) -> usize) {
    for i in 0..census.len() {
        let row: Vec<String> = (0..census.len()).map(|j| entry(i, j).to_string()).collect();
        println!("  {}", row.join(" "));
    }
}

fn cmd_enumerate(args: &QuiverArgs, set: &str, sincere: bool) -> Result<(), Failure> {
    let kind = SetKind::from_name(set).ok_or_else(|| {
        Failure::Input(json!({
            "error": "unknown set name",
            "witness": set,
            "expected": SetKind::ALL.iter().map(|k| k.name()).collect::<Vec<_>>(),
        }))
    })?;
    let (lab, name) = build_lab(args)?;
    let mut family = lab.enumerate_set(kind)?;
    if sincere {
        family.retain(|s| lab.is_sincere(s));
    }
    let suffix = if sincere { " (sincere)" } else { "" };
    println!(
        "{} of {name} over F_{}{suffix}: {} entries",
        kind.name(),
        args.p,
        family.len()
    );
    for s in &family {
        println!("  {:?}", s.iter().copied().collect::<Vec<_>>());
    }
    let listed: Vec<Vec<usize>> = family.iter().map(|s| s.iter().copied().collect()).collect();
    write_json(
        args.json.as_deref(),
        &json!({
            "set": kind.name(),
            "sincere": sincere,
            "count": listed.len(),
            "entries": listed,
        }),
    )
}

/// Oracle scheduling for `verify`: `on` forces it (input error if out of
/// bounds), `off` skips it, `auto` runs it exactly when the bounds allow.
fn oracle_plan(mode: &str, census: &Census, cfg: &OracleConfig) -> Result<bool, Failure> {
    let within = census.len() <= cfg.max_indecs
        && (0..census.len()).all(|i| census.rep(i).total_dim() <= cfg.sub_dim_bound);
    match mode {
        "on" => {
            if !within {
                return Err(Failure::Input(json!({
                    "error": "oracle bounds exceeded; raise --max-dim or use --oracle off",
                    "witness": {"indecomposables": census.len(), "maxDim": cfg.sub_dim_bound},
                })));
            }
            Ok(true)
        }
        "off" => Ok(false),
        "auto" => Ok(within),
        other => Err(Failure::Input(json!({
            "error": "invalid --oracle value; expected on, off or auto",
            "witness": other,
        }))),
    }
}

fn cmd_verify(args: &QuiverArgs, oracle_mode: &str, max_dim: usize) -> Result<(), Failure> {
    let (lab, name) = build_lab(args)?;
    let report = lab.verify_bijections()?;
    let mut pass = report.passed();

    println!("verify {name} over F_{}", args.p);
    let counts: Vec<String> = report
        .counts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    println!("  counts: {}", counts.join(" "));
    for check in &report.roundtrips {
        if check.pass {
            println!("  {}: pass", check.name);
        } else {
            println!("  {}: FAIL witness={:?}", check.name, check.witness);
        }
    }
    for (k, v) in &report.supplements {
        println!("  {k}: {}", if *v { "pass" } else { "FAIL" });
    }
    println!(
        "  sincere counts: {} ({})",
        report
            .sincere
            .counts
            .values()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" "),
        if report.sincere.pass { "pass" } else { "FAIL" }
    );

    // root-poset antichains against module antichains
    let poset_count = RootPoset::from_quiver(lab.quiver())
        .map_err(|e| Failure::Input(e.to_diagnostic()))?
        .antichain_count();
    let module_count = lab.antichains().len() as u64;
    let poset_pass = poset_count == module_count;
    pass &= poset_pass;
    println!(
        "  root poset: {poset_count} antichains vs {module_count} module antichains: {}",
        if poset_pass { "pass" } else { "FAIL" }
    );

    // closure oracle
    let cfg = OracleConfig {
        sub_dim_bound: max_dim,
        ..OracleConfig::default()
    };
    let run_oracle = oracle_plan(oracle_mode, lab.census(), &cfg)?;
    let oracle_json = if run_oracle {
        let (oracle_pass, detail) = run_oracle_checks(&lab, &cfg).map_err(|e| match e {
            OracleError::Census(c) => Failure::from(c),
            bound => Failure::Input(json!({"error": bound.to_string(), "witness": Value::Null})),
        })?;
        pass &= oracle_pass;
        println!("  oracle: {}", if oracle_pass { "pass" } else { "FAIL" });
        detail
    } else {
        println!("  oracle: skipped");
        json!({"ran": false})
    };

    let mut out = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
    out["rootPoset"] = json!({
        "rootPosetAntichains": poset_count,
        "moduleAntichains": module_count,
        "pass": poset_pass,
    });
    out["oracle"] = oracle_json;
    write_json(args.json.as_deref(), &out)?;

    println!("{}", if pass { "PASS" } else { "FAIL" });
    if pass {
        Ok(())
    } else {
        Err(Failure::VerificationFailed)
    }
}

fn run_oracle_checks(lab: &Lab, cfg: &OracleConfig) -> Result<(bool, Value), OracleError> {
    let census = lab.census();
    type Sets = BTreeSet<BTreeSet<usize>>;

    let oracle_torsion: Sets = all_torsion_classes(census, cfg)?.into_iter().collect();
    let constructed_torsion: Sets = lab
        .support_tilting_census()
        .iter()
        .map(|t| lab.gen_class(t))
        .collect();
    let torsion_match = oracle_torsion == constructed_torsion;

    let oracle_thick: Sets = all_thick_subcategories(census, cfg)?.into_iter().collect();
    let constructed_thick: Sets = lab
        .enumerate_set(SetKind::Thick)
        .map_err(|_| OracleError::Census(CensusError::Internal("thick enumeration failed".into())))?
        .into_iter()
        .collect();
    let thick_match = oracle_thick == constructed_thick;

    let oracle_torsionfree: Sets = all_torsionfree_classes(census, cfg)?.into_iter().collect();
    let constructed_torsionfree: Sets = lab
        .enumerate_set(SetKind::Torsionfree)
        .map_err(|_| {
            OracleError::Census(CensusError::Internal(
                "torsionfree enumeration failed".into(),
            ))
        })?
        .into_iter()
        .collect();
    let torsionfree_match = oracle_torsionfree == constructed_torsionfree;

    let mut covers = true;
    for class in oracle_torsion.iter().chain(oracle_thick.iter()) {
        covers &= cover_witness(census, class)?;
    }

    let pass = torsion_match && thick_match && torsionfree_match && covers;
    Ok((
        pass,
        json!({
            "ran": true,
            "torsionClasses": oracle_torsion.len(),
            "torsionMatch": torsion_match,
            "thickSubcategories": oracle_thick.len(),
            "thickMatch": thick_match,
            "torsionfreeClasses": oracle_torsionfree.len(),
            "torsionfreeMatch": torsionfree_match,
            "coverWitnesses": covers,
        }),
    ))
}

fn cmd_table(family: &str, max_n: usize, p: u32, json_path: Option<&Path>) -> Result<(), Failure> {
    let f = field(p)?;
    let (letter, start, budget) = match family {
        "A" | "a" => ('A', 1usize, 6usize),
        "D" | "d" => ('D', 4, 5),
        other => {
            return Err(Failure::Input(json!({
                "error": "table family must be A or D",
                "witness": other,
            })))
        }
    };
    if max_n > budget || max_n < start {
        return Err(Failure::Input(json!({
            "error": format!("family {letter} is tabulated for {start} <= n <= {budget}"),
            "witness": max_n,
        })));
    }
    println!("support-tilting classes by support rank, family {letter}, F_{p}");
    let mut rows = Vec::new();
    for n in start..=max_n {
        let q = family_quiver(&format!("{letter}{n}")).expect("within budget");
        let lab = Lab::new(Census::build(&q, f)?);
        let mut by_rank = vec![0usize; n + 1];
        for t in lab.support_tilting_census() {
            by_rank[lab.support_rank(&t)] += 1;
        }
        let total: usize = by_rank.iter().sum();
        println!(
            "  n={n}: {} | total {total}",
            by_rank
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        rows.push(json!({"n": n, "byRank": by_rank, "total": total}));
    }
    write_json(
        json_path,
        &json!({"family": letter.to_string(), "p": p, "rows": rows}),
    )
}
