//! `dtk`: check morphism/covering properties of digital maps, lift paths,
//! search for separating witnesses, and adjudicate the published claims.
//!
//! Exit codes: 0 holds/success, 1 property fails or witness absent (details
//! printed as JSON), 2 usage or document error, 3 claim mismatch found,
//! 4 inconclusive (search budget exhausted).

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dtk_core::doc;
use dtk_core::{
    check_unique_lifting, exists_dt_embedding, is_covering_eps, lift_path, Budget, Error, Point,
    Reading,
};
use dtk_harness::{
    claims, find_separating_witness, fixtures, implication_matrix, run_paper_claims, CorpusSpec,
    Prop, SweepSpec,
};

#[derive(Parser)]
#[command(name = "dtk", version, about = "Digital topology verification toolkit")]
struct Cli {
    /// Render human-readable tables instead of JSON lines.
    #[arg(long, global = true)]
    human: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of the map in MAP.json.
    Check(CheckArgs),
    /// Enumerate all lifts of a codomain path from a start point.
    Lift(LiftArgs),
    /// Report every short codomain path whose lift count is not one.
    UniqueLifting(UniqueLiftingArgs),
    /// Search exhaustively for a map with one property but not another.
    Witness(WitnessArgs),
    /// Build the full implication matrix over a small corpus plus fixtures.
    Matrix(MatrixArgs),
    /// Adjudicate the published covering-space claims against the fixtures.
    Claims(ClaimsArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// continuous|iso|l-iso|r2-l-iso|wl|pl|cover1|cover-eps|cover-r2|pseudo-v1|pseudo-v2|embed
    #[arg(long)]
    prop: String,
    /// Slice-restriction reading for the pseudo-covering conditions.
    #[arg(long, default_value = "onto-image")]
    reading: Reading,
    /// Bound for the existential radius of cover-eps (default: the
    /// codomain's largest eccentricity).
    #[arg(long)]
    eps_max: Option<u32>,
    map: PathBuf,
}

#[derive(Args)]
struct LiftArgs {
    map: PathBuf,
    path: PathBuf,
    /// Start point upstairs, e.g. "0" or "1,2".
    #[arg(long)]
    start: String,
}

#[derive(Args)]
struct UniqueLiftingArgs {
    map: PathBuf,
    #[arg(long, default_value_t = 4)]
    max_len: usize,
}

#[derive(Args)]
struct WitnessArgs {
    /// Property pair "P,Q": search for a map with P and not Q.
    #[arg(long)]
    sep: String,
    #[arg(long, default_value_t = 4)]
    max_points: usize,
    /// Box extents, e.g. "3x3".
    #[arg(long, default_value = "3x3", value_name = "WxH")]
    r#box: String,
    #[arg(long, default_value = "onto-image")]
    reading: Reading,
}

#[derive(Args)]
struct MatrixArgs {
    /// Fixture directory whose maps join the swept corpus.
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, default_value_t = 4)]
    max_points: usize,
    #[arg(long, default_value = "3x3", value_name = "WxH")]
    r#box: String,
    #[arg(long, default_value_t = 2)]
    eps_max: u32,
}

#[derive(Args)]
struct ClaimsArgs {
    /// Fixture directory.
    #[arg(long)]
    corpus: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let human = cli.human;
    let outcome = match cli.command {
        Command::Check(args) => run_check(args, human),
        Command::Lift(args) => run_lift(args, human),
        Command::UniqueLifting(args) => run_unique_lifting(args, human),
        Command::Witness(args) => run_witness(args, human),
        Command::Matrix(args) => run_matrix(args, human),
        Command::Claims(args) => run_claims(args, human),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = if err
                .downcast_ref::<Error>()
                .map_or(false, |e| matches!(e, Error::BudgetExceeded { .. }))
            {
                4
            } else {
                2
            };
            ExitCode::from(code)
        }
    }
}

fn parse_box(text: &str) -> anyhow::Result<Vec<i64>> {
    text.split(['x', 'X'])
        .map(|part| part.trim().parse::<i64>().map_err(Into::into))
        .collect()
}

fn run_check(args: CheckArgs, human: bool) -> anyhow::Result<u8> {
    if args.prop == "embed" {
        let (domain, codomain) = doc::load_map_images(&args.map)?;
        let mut budget = Budget::default();
        let found = exists_dt_embedding(&domain, &codomain, &mut budget)?;
        let exists = found.is_some();
        let payload = json!({
            "prop": "embed",
            "exists": exists,
            "map": found.as_ref().map(|m| m.domain.points().iter().map(|p| {
                (p.coords().to_vec(), m.apply(p).coords().to_vec())
            }).collect::<Vec<_>>()),
            "search_steps": budget.spent(),
        });
        if human {
            match &found {
                Some(m) => {
                    println!("embedding exists:");
                    for p in m.domain.points() {
                        println!("  {p} -> {}", m.apply(&p));
                    }
                }
                None => println!("no embedding exists (search exhaustive)"),
            }
        } else {
            println!("{payload}");
        }
        return Ok(if exists { 0 } else { 1 });
    }

    let prop = Prop::from_str(&args.prop).map_err(anyhow::Error::msg)?;
    let map = doc::load_map(&args.map)?;
    if prop == Prop::CoverEps {
        let eps_max = args.eps_max.unwrap_or_else(|| map.codomain.max_eccentricity().max(1));
        let verdict = is_covering_eps(&map, eps_max, args.reading)?;
        if human {
            println!("cover-eps (eps_max {}): {}", eps_max, verdict.verdict);
            for (b, eps) in &verdict.min_eps {
                println!("  base {b}: minimal radius {eps}");
            }
        } else {
            println!("{}", serde_json::to_string(&verdict)?);
        }
        return Ok(if verdict.verdict.holds { 0 } else { 1 });
    }
    let eps_max = args.eps_max.unwrap_or(2);
    let verdict = prop.eval(&map, args.reading, eps_max)?;
    if human {
        println!("{prop}: {verdict}");
    } else {
        println!("{}", serde_json::to_string(&verdict)?);
    }
    Ok(if verdict.holds { 0 } else { 1 })
}

fn run_lift(args: LiftArgs, human: bool) -> anyhow::Result<u8> {
    let map = doc::load_map(&args.map)?;
    let path = doc::load_path(&args.path)?;
    let start = Point::from_str(args.start.trim())?;
    let mut budget = Budget::default();
    let lifts = lift_path(&map, &path, &start, &mut budget)?;
    if human {
        println!("{} lift(s) of the path from {start}:", lifts.len());
        for lift in &lifts {
            let coords: Vec<String> = lift.points.iter().map(|p| p.to_string()).collect();
            println!("  {}", coords.join(" "));
        }
    } else {
        let payload = json!({
            "start": start.coords().to_vec(),
            "lift_count": lifts.len(),
            "lifts": lifts.iter().map(|l| {
                l.points.iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        });
        println!("{payload}");
    }
    Ok(0)
}

fn run_unique_lifting(args: UniqueLiftingArgs, human: bool) -> anyhow::Result<u8> {
    let map = doc::load_map(&args.map)?;
    let mut budget = Budget::default();
    let report = check_unique_lifting(&map, args.max_len, &mut budget)?;
    if human {
        println!(
            "checked {} paths / {} (path, start) pairs up to length {}",
            report.paths_checked, report.pairs_checked, report.max_len
        );
        for a in &report.anomalies {
            let coords: Vec<String> = a.path.iter().map(|p| p.to_string()).collect();
            println!("  path {} from {}: {} lifts", coords.join(" "), a.start, a.lift_count);
        }
        if report.unique_lifting_holds() {
            println!("unique lifting holds at this scale");
        }
    } else {
        println!("{}", serde_json::to_string(&report)?);
    }
    Ok(if report.unique_lifting_holds() { 0 } else { 1 })
}

fn run_witness(args: WitnessArgs, human: bool) -> anyhow::Result<u8> {
    let (p, q) = args
        .sep
        .split_once(',')
        .ok_or_else(|| anyhow::anyhow!("--sep expects two property names like pl,wl"))?;
    let p = Prop::from_str(p.trim()).map_err(anyhow::Error::msg)?;
    let q = Prop::from_str(q.trim()).map_err(anyhow::Error::msg)?;
    let extents = parse_box(&args.r#box)?;
    let spec = SweepSpec::new(CorpusSpec::new(extents, args.max_points));
    let result = find_separating_witness(p, q, &spec, args.reading);
    let found = result.witness.is_some();
    if human {
        match &result.witness {
            Some(w) => {
                println!("{p} does not imply {q}; minimal witness:");
                for (from, to) in &w.map.pairs {
                    println!("  {from:?} -> {to:?}");
                }
            }
            None => println!(
                "no witness for {p} and not {q} within {} ({} maps swept)",
                result.bounds, result.maps_swept
            ),
        }
    } else {
        println!("{}", serde_json::to_string(&result)?);
    }
    Ok(if found { 0 } else { 1 })
}

fn run_matrix(args: MatrixArgs, human: bool) -> anyhow::Result<u8> {
    let fixtures = fixtures::load_dir(&args.corpus)?;
    let extents = parse_box(&args.r#box)?;
    let mut spec = SweepSpec::new(CorpusSpec::new(extents, args.max_points))
        .with_extra_maps(fixtures.maps.values().cloned().collect());
    spec.eps_max = args.eps_max;
    let entries = implication_matrix(&spec, &Prop::ALL, &Reading::BOTH);
    if human {
        for e in &entries {
            let status = match &e.counterexample {
                None => "no counterexample".to_string(),
                Some(w) => format!(
                    "counterexample: {} ({} + {} points)",
                    w.map.name,
                    w.map.domain_points.len(),
                    w.map.codomain_points.len()
                ),
            };
            println!("[{}] {} => {}: {}", e.reading, e.p, e.q, status);
        }
    } else {
        for e in &entries {
            println!("{}", serde_json::to_string(e)?);
        }
    }
    Ok(0)
}

fn run_claims(args: ClaimsArgs, human: bool) -> anyhow::Result<u8> {
    let fixtures = fixtures::load_dir(&args.corpus)?;
    let reports = run_paper_claims(&fixtures)?;
    if human {
        for r in &reports {
            println!(
                "[{}] {} {} - computed {} / asserted {}: {}",
                r.reading,
                r.claim,
                r.detail,
                r.computed,
                r.asserted,
                if r.agree { "agree" } else { "MISMATCH" }
            );
        }
    } else {
        for r in &reports {
            println!("{}", serde_json::to_string(r)?);
        }
    }
    let mismatches: Vec<&dtk_harness::ClaimReport> = reports.iter().filter(|r| !r.agree).collect();
    if !mismatches.is_empty() {
        eprintln!("{} claim row(s) disagree with the literature:", mismatches.len());
        for r in &mismatches {
            eprintln!(
                "  [{}] {} - {} (computed {}, asserted {})",
                r.reading, r.claim, r.detail, r.computed, r.asserted
            );
        }
    }
    Ok(claims::exit_code(&reports) as u8)
}
