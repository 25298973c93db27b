use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lgcy_core::ade::AdeType;
use lgcy_core::cy::compare_ginzburg;
use lgcy_core::io::{read_mf, read_quiver, Config, MfFile};
use lgcy_core::mf::{
    algebra_from_adjunction, decompose, find_iso, hom_rank, qdim, reduce_with_multiplier, tensor, LgSpace,
    MatrixFactorisation, Parity,
};
use lgcy_core::quiver::{GinzburgAlgebra, Letter, LetterCaps, PathAlgebra, Quiver};
use lgcy_core::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(name = "lgcy", version, about = "Matrix factorisations, Ginzburg algebras and Calabi-Yau completions")]
struct Cli {
    /// flat `key = value` configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// directory for the on-disk Groebner basis cache
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// cap on starred letters / tensor level for quiver comparisons
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// tensor level of the truncated completion used by the lift
    #[arg(long, global = true)]
    level: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix factorisations
    Mf {
        #[command(subcommand)]
        command: MfCommand,
    },
    /// Quivers, Ginzburg algebras and completions
    Quiver {
        #[command(subcommand)]
        command: QuiverCommand,
    },
    /// Run a verification suite: ade, residues, lift, spectra or all
    Verify { suite: String },
}

#[derive(Subcommand)]
enum MfCommand {
    /// Unit factorisation of a potential, e.g. "x^4+y^2+z^2"
    BuildUnit { potential: String },
    /// Permutation factorisation P_S of u'^d - u^d
    BuildPerm {
        #[arg(long)]
        d: u32,
        /// comma separated residues mod d
        #[arg(long)]
        subset: String,
    },
    /// Unreduced tensor product
    Tensor {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Finite-rank reduction of a tensor product
    Reduce {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Left and right quantum dimensions
    Qdim {
        /// potential whose unit factorisation is used
        #[arg(long, conflicts_with = "input")]
        unit: Option<String>,
        /// factorisation spec or mf.v1 file
        #[arg(long = "in")]
        input: Option<String>,
    },
    /// Multiplicities of atlas members
    Decompose {
        #[arg(long = "in")]
        input: String,
        /// `a<k>`: T_j = P_{0..j-1} over u^{k+1}
        #[arg(long)]
        atlas: String,
    },
    /// Frobenius algebra X^dagger X of a factorisation
    Algebra {
        #[arg(long = "in")]
        input: String,
    },
}

#[derive(Subcommand)]
enum QuiverCommand {
    /// Differentials of the Ginzburg algebra
    Ginzburg {
        quiver: String,
        #[arg(long)]
        n: u32,
        /// run the d^2 and Leibniz checks
        #[arg(long)]
        check: bool,
    },
    /// Dimension of a cohomological degree of the Ginzburg algebra within caps
    Dims {
        quiver: String,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Cohomology of the truncated completion against the Ginzburg algebra
    Compare {
        quiver: String,
        #[arg(long)]
        n: u32,
    },
}

fn load_config(cli: &Cli) -> Result<Config> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path).with_context(|| format!("reading {}", path.display()))?,
        None => Config::default(),
    };
    if let Some(dir) = &cli.cache {
        config.cache_dir = Some(dir.clone());
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(cap) = cli.cap {
        config.quiver_cap = cap;
    }
    if let Some(level) = cli.level {
        config.cy_level = level;
    }
    if config.quiver_cap == 0 || config.cy_level == 0 {
        bail!("--cap and --level must be positive");
    }
    Ok(config)
}

/// `{a,b}` or `a,b`; negative residues allowed.
fn parse_subset(text: &str) -> Result<Vec<i64>> {
    text.trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().with_context(|| format!("bad residue `{s}`")))
        .collect()
}

struct PermSpec {
    d: u32,
    subset: Vec<u32>,
}

fn perm_spec(spec: &str) -> Result<Option<PermSpec>> {
    let Some(rest) = spec.strip_prefix("perm:") else { return Ok(None) };
    let (d, subset) = rest.split_once(':').ok_or_else(|| anyhow!("expected perm:<d>:{{...}}"))?;
    let d: u32 = d.parse().with_context(|| format!("bad d in `{spec}`"))?;
    Ok(Some(PermSpec { d, subset: residues_mod(d, parse_subset(subset)?) }))
}

fn residues_mod(d: u32, subset: Vec<i64>) -> Vec<u32> {
    let d = d.max(1);
    let mut s: Vec<u32> = subset.into_iter().map(|l| l.rem_euclid(i64::from(d)) as u32).collect();
    s.sort_unstable();
    s.dedup();
    s
}

/// `perm:d:{a,b}`, `unit:<potential>` or a path to an mf.v1 file.
fn load_factorisation(spec: &str) -> Result<MatrixFactorisation> {
    if let Some(p) = perm_spec(spec)? {
        return Ok(MatrixFactorisation::permutation(p.d, &p.subset)?);
    }
    if let Some(w) = spec.strip_prefix("unit:") {
        return Ok(MatrixFactorisation::unit(&LgSpace::parse(w)?)?);
    }
    read_mf(&PathBuf::from(spec)).with_context(|| format!("reading factorisation `{spec}`"))
}

fn format_subset(s: &[u32]) -> String {
    format!("{{{}}}", s.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

/// Nonempty proper subsets of `Z_d`, smallest first.
fn proper_subsets(d: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (1u32..(1 << d) - 1).map(|m| (0..d).filter(|l| m & (1 << l) != 0).collect()).collect();
    out.sort_by_key(|s| s.len());
    out
}

fn run_mf(command: &MfCommand, config: &Config) -> Result<Value> {
    match command {
        MfCommand::BuildUnit { potential } => {
            let unit = MatrixFactorisation::unit(&LgSpace::parse(potential)?)?;
            Ok(serde_json::to_value(MfFile::from_mf(&unit))?)
        }
        MfCommand::BuildPerm { d, subset } => {
            let s = residues_mod(*d, parse_subset(subset)?);
            Ok(serde_json::to_value(MfFile::from_mf(&MatrixFactorisation::permutation(*d, &s)?))?)
        }
        MfCommand::Tensor { lhs, rhs } => {
            let raw = tensor(&load_factorisation(lhs)?, &load_factorisation(rhs)?)?;
            Ok(json!({ "rank": raw.rank(), "squares_to_potential": raw.check_square() }))
        }
        MfCommand::Reduce { lhs, rhs } => {
            let raw = tensor(&load_factorisation(lhs)?, &load_factorisation(rhs)?)?;
            let reduced = reduce_with_multiplier(&raw, config.reduce_multiplier)?;
            let mut out = json!({ "rank": reduced.mf().rank(), "mf": MfFile::from_mf(reduced.mf()) });
            if let (Some(a), Some(b)) = (perm_spec(lhs)?, perm_spec(rhs)?) {
                if a.d == b.d {
                    for s in proper_subsets(a.d) {
                        let candidate = MatrixFactorisation::permutation(a.d, &s)?;
                        if hom_rank(reduced.mf(), &candidate, Parity::Even, &Default::default())? == 0 {
                            continue;
                        }
                        if find_iso(reduced.mf(), &candidate, config.seed).is_ok() {
                            out["isomorphic_to"] = json!(format!("perm:{}:{}", a.d, format_subset(&s)));
                            break;
                        }
                    }
                }
            }
            Ok(out)
        }
        MfCommand::Qdim { unit, input } => {
            let x = match (unit, input) {
                (Some(w), None) => MatrixFactorisation::unit(&LgSpace::parse(w)?)?,
                (None, Some(spec)) => load_factorisation(spec)?,
                _ => bail!("give exactly one of --unit or --in"),
            };
            if !x.is_ambidextrous() {
                return Err(lgcy_core::Error::NotAmbidextrous(format!(
                    "central charges {} and {}, {} and {} variables",
                    x.inner().central_charge(),
                    x.outer().central_charge(),
                    x.inner().nvars(),
                    x.outer().nvars()
                ))
                .into());
            }
            let q = qdim(&x)?;
            Ok(json!({
                "left": q.left.to_string(),
                "right": q.right.to_string(),
                "ambidextrous": true,
                "central_charge": x.inner().central_charge().to_string(),
            }))
        }
        MfCommand::Decompose { input, atlas } => {
            let x = load_factorisation(input)?;
            let k: u32 = atlas
                .strip_prefix('a')
                .or_else(|| atlas.strip_prefix('A'))
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| anyhow!("atlas must be a<k>"))?;
            let members = (1..=k)
                .map(|j| Ok((format!("T{j}"), MatrixFactorisation::permutation(k + 1, &(0..j).collect::<Vec<_>>())?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(serde_json::to_value(decompose(&x, &members, config.seed)?)?)
        }
        MfCommand::Algebra { input } => {
            let x = load_factorisation(input)?;
            let alg = algebra_from_adjunction(&x, config.seed)?;
            let checks: serde_json::Map<String, Value> = alg.checks.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
            Ok(json!({
                "algebra": MfFile::from_mf(&alg.algebra),
                "qdim": { "left": alg.qdims.left.to_string(), "right": alg.qdims.right.to_string() },
                "loop_scalar": alg.loop_scalar.to_string(),
                "checks": checks,
                "all_pass": alg.all_pass(),
            }))
        }
    }
}

fn load_quiver(spec: &str) -> Result<Quiver> {
    match AdeType::from_str(spec) {
        Ok(t) => Ok(Quiver::dynkin(t)?),
        Err(_) => read_quiver(&PathBuf::from(spec)).with_context(|| format!("reading quiver `{spec}`")),
    }
}

fn run_quiver(command: &QuiverCommand, config: &Config) -> Result<(Value, bool)> {
    let caps = LetterCaps::uniform(config.quiver_cap);
    match command {
        QuiverCommand::Ginzburg { quiver, n, check } => {
            let g = GinzburgAlgebra::new(load_quiver(quiver)?, *n)?;
            let differentials: serde_json::Map<String, Value> = g
                .letters()
                .into_iter()
                .filter(|l| matches!(l, Letter::Loop(_)))
                .map(|l| (format!("d {}", g.format_letter(l)), json!(g.format_chain(&g.letter_differential(l)))))
                .collect();
            let mut out = json!({ "algebra": g.to_string(), "differentials": differentials });
            let mut ok = true;
            if *check {
                let result = g.check_structure(100, config.seed);
                ok = result.is_ok();
                out["check"] = json!(match result {
                    Ok(()) => "pass".to_string(),
                    Err(e) => format!("fail: {e}"),
                });
            }
            Ok((out, ok))
        }
        QuiverCommand::Dims { quiver, n, degree } => {
            let g = GinzburgAlgebra::new(load_quiver(quiver)?, *n)?;
            let dim = g.graded_dimension(*degree, caps)?;
            Ok((json!({ "degree": degree, "dim": dim, "complete": g.is_complete(*degree, caps) }), true))
        }
        QuiverCommand::Compare { quiver, n } => {
            let alg = PathAlgebra::new(load_quiver(quiver)?)?;
            let rows = compare_ginzburg(&alg, *n, config.quiver_cap)?;
            let ok = rows.iter().filter(|r| r.certified).all(|r| r.agrees());
            Ok((json!({ "cap": config.quiver_cap, "all_certified_agree": ok, "rows": rows }), ok))
        }
    }
}

fn print_value(value: &Value, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(value).expect("values serialise"));
        return;
    }
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::String(s) => println!("{k}: {s}"),
                    other => println!("{k}: {other}"),
                }
            }
        }
        other => println!("{other}"),
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let config = load_config(cli)?;
    lgcy_core::groebner::set_cache_dir(config.cache_dir.clone());
    match &cli.command {
        Command::Mf { command } => {
            print_value(&run_mf(command, &config)?, cli.json);
            Ok(true)
        }
        Command::Quiver { command } => {
            let (value, ok) = run_quiver(command, &config)?;
            print_value(&value, cli.json);
            Ok(ok)
        }
        Command::Verify { suite } => {
            let report = run_suite(Suite::from_str(suite)?, &config);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{report}");
            }
            Ok(!report.failed())
        }
    }
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::from_default_env())
        .with_writer(std::io::stderr)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
