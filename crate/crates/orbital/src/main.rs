//! Command-line interface: catalog queries, decay gates, subsystem
//! enumeration, and the rank-one numerical checks.
//!
//! Exit codes: 0 on success, 2 on usage or domain errors, 3 when a
//! verification command finds a mismatch.

use clap::{Args, Parser, Subcommand};
use orbital::catalog::{self, CartanClass, SpaceDescriptor};
use orbital::decay;
use orbital::rank1;
use orbital::rootsys::Rat;
use orbital::subsystems;

#[derive(Parser)]
#[command(name = "orbital", version, about = "Decay data of orbital measures on symmetric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct SpaceArgs {
    /// Cartan class label (AI, AII, AIII, BDI, CI, CII, DIII-even,
    /// DIII-odd, EI..EIX, FI, FII, G)
    #[arg(long)]
    class: String,
    /// Restricted rank of the space (optional for the exceptional rows)
    #[arg(long)]
    rank: Option<usize>,
    /// Parameter p of the classes AIII, CII, BDI (p >= rank)
    #[arg(long)]
    p: Option<usize>,
}

impl SpaceArgs {
    fn resolve(&self) -> Result<SpaceDescriptor, CliError> {
        let class = CartanClass::parse(&self.class)
            .ok_or_else(|| CliError::usage(format!("unknown class {:?}", self.class)))?;
        catalog::lookup_by_rank(class, self.rank, self.p)
            .map_err(|e| CliError::usage(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the catalog of symmetric spaces up to a rank bound
    Catalog {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Minimal weighted root count of a space
    Rho(SpaceArgs),
    /// Uniform square-integrability gate (exact rational)
    Kgate(SpaceArgs),
    /// Square-integrability threshold for regular base points
    Threshold(SpaceArgs),
    /// Square-integrability verdict of the k-fold convolution power
    L2gate {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        k: u32,
        /// Restrict to regular base points
        #[arg(long)]
        regular: bool,
    },
    /// Guaranteed differentiability order of the k-fold power (k even)
    Diff {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        regular: bool,
    },
    /// Maximal proper full subsystems of the restricted root system
    Subsystems {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Verify the closed-form rho against probe minimization
    VerifyCounts {
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
        /// Pairing threshold c_G as a rational p/q (defaults per family)
        #[arg(long)]
        cg: Option<String>,
        #[arg(long, default_value_t = decay::DEFAULT_SEED)]
        seed: u64,
        /// Number of random probes per space
        #[arg(long, default_value_t = 10_000)]
        probes: usize,
    },
    /// Sample the rank-one spherical function on a lambda grid (CSV)
    Rank1Phi {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 100.0)]
        lambda_max: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Truncated Plancherel integral and its divergence classification
    Rank1Plancherel {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: f64,
    },
    /// Run the full verification battery
    VerifyAll,
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }
    fn verification(message: impl Into<String>) -> CliError {
        CliError { code: 3, message: message.into() }
    }
}

fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<Rat, CliError> {
    let parse_int =
        |x: &str| x.trim().parse::<i64>().map_err(|e| CliError::usage(format!("bad rational: {e}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == 0 {
                return Err(CliError::usage("bad rational: zero denominator"));
            }
            Ok(Rat::new(parse_int(n)?, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

fn catalog_row_line(row: &SpaceDescriptor) -> String {
    format!(
        "{:<10} {:<6} {:>4} {:>4} {:>5}  ({}, {}, {})",
        row.cartan_class.to_string(),
        row.lie_type.to_string(),
        row.p.map(|p| p.to_string()).unwrap_or_else(|| "-".into()),
        row.lie_type.rank,
        row.dim,
        row.mults.eta[0],
        row.mults.eta[1],
        row.mults.eta[2],
    )
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Catalog { max_rank, format } => {
            let rows = catalog::all_spaces(max_rank);
            match format {
                Format::Table => {
                    println!(
                        "{:<10} {:<6} {:>4} {:>4} {:>5}  mults",
                        "class", "roots", "p", "rank", "dim"
                    );
                    for row in &rows {
                        println!("{}", catalog_row_line(row));
                    }
                }
                Format::Json => {
                    let doc: Vec<_> = rows.iter().map(|r| r.to_json()).collect();
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Csv => {
                    println!("class,roots,p,rank,dim,eta0,eta1,eta2");
                    for r in &rows {
                        println!(
                            "{},{},{},{},{},{},{},{}",
                            r.cartan_class,
                            r.lie_type,
                            r.p.map(|p| p.to_string()).unwrap_or_default(),
                            r.lie_type.rank,
                            r.dim,
                            r.mults.eta[0],
                            r.mults.eta[1],
                            r.mults.eta[2]
                        );
                    }
                }
            }
        }
        Command::Rho(args) => {
            let space = args.resolve()?;
            let rho = decay::rho_total(&space).map_err(|e| CliError::usage(e.to_string()))?;
            println!("{rho}");
        }
        Command::Kgate(args) => {
            let space = args.resolve()?;
            println!("{}", rat_str(&decay::k_gate(&space)));
        }
        Command::Threshold(args) => {
            let space = args.resolve()?;
            println!("{}", decay::regular_threshold(&space));
        }
        Command::L2gate { space, k, regular } => {
            let space = space.resolve()?;
            if k == 0 {
                return Err(CliError::usage("k must be positive"));
            }
            let (verdict, rule) = decay::l2_gate(&space, k, regular);
            println!("{verdict} ({rule})");
        }
        Command::Diff { space, k, regular } => {
            let space = space.resolve()?;
            let order = decay::diff_order(&space, k, regular)
                .map_err(|e| CliError::usage(e.to_string()))?;
            println!("{order}");
        }
        Command::Subsystems { space, format } => {
            let space = space.resolve()?;
            let maxi = subsystems::maximal_subsystems(space.lie_type)
                .map_err(|e| CliError::usage(e.to_string()))?;
            match format {
                Format::Json => {
                    let doc: Vec<_> = maxi.iter().map(|m| m.to_json()).collect();
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                _ => {
                    println!("{} maximal subsystems of {}", maxi.len(), space.lie_type);
                    for m in &maxi {
                        let roots: Vec<String> =
                            m.roots.iter().map(|r| format!("{:?}", r.coords)).collect();
                        println!("  {:?}: {}", m.witness, roots.join(" "));
                    }
                }
            }
        }
        Command::VerifyCounts { max_rank, cg, seed, probes } => {
            let cg = cg.map(|s| parse_rat(&s)).transpose()?;
            let mut failures = 0;
            for row in catalog::all_spaces(max_rank) {
                if !row.lie_type.family.is_classical() {
                    continue;
                }
                let c_g = cg.unwrap_or_else(|| decay::default_cg(row.lie_type.family));
                match decay::rho_oracle(&row, c_g, seed, probes) {
                    Ok(min) => println!(
                        "ok   {:<10} {:<6} rho = {min}",
                        row.cartan_class.to_string(),
                        row.lie_type.to_string()
                    ),
                    Err(e) => {
                        failures += 1;
                        println!(
                            "FAIL {:<10} {:<6} {e}",
                            row.cartan_class.to_string(),
                            row.lie_type.to_string()
                        );
                    }
                }
            }
            if failures > 0 {
                return Err(CliError::verification(format!("{failures} spaces failed")));
            }
        }
        Command::Rank1Phi { t, lambda_max, samples } => {
            if t < 0.0 || lambda_max <= 0.0 || samples < 2 {
                return Err(CliError::usage("need t >= 0, lambda_max > 0, samples >= 2"));
            }
            println!("lambda,phi");
            for i in 0..samples {
                let lambda = lambda_max * i as f64 / (samples - 1) as f64;
                let p = rank1::phi(lambda, t).map_err(|e| CliError::usage(e.to_string()))?;
                println!("{lambda},{p:.15e}");
            }
        }
        Command::Rank1Plancherel { k, t } => {
            let report =
                rank1::classify_divergence(k, t).map_err(|e| CliError::usage(e.to_string()))?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        Command::VerifyAll => {
            let mut failures: Vec<String> = Vec::new();
            // Dimension identity over the whole catalog.
            for row in catalog::all_spaces(8) {
                if !row.dimension_identity_holds() {
                    failures.push(format!("dimension identity fails for {}", row.lie_type));
                }
            }
            println!("dimension identity: checked {} rows", catalog::all_spaces(8).len());
            // Probe minimization at small rank.
            for row in catalog::all_spaces(4) {
                if !row.lie_type.family.is_classical() {
                    continue;
                }
                let c_g = decay::default_cg(row.lie_type.family);
                if let Err(e) = decay::rho_oracle(&row, c_g, decay::DEFAULT_SEED, 1000) {
                    failures.push(format!("rho oracle: {e}"));
                }
            }
            println!("rho probe minimization: rank <= 4 verified");
            // Subsystem enumeration against brute force.
            for ty in [
                orbital::rootsys::LieType::new(orbital::rootsys::Family::BC, 2).unwrap(),
                orbital::rootsys::LieType::new(orbital::rootsys::Family::A, 3).unwrap(),
            ] {
                let a = subsystems::maximal_subsystems(ty).unwrap().len();
                let b = subsystems::brute_force_maximal(ty).unwrap().len();
                if a != b {
                    failures.push(format!("subsystem count mismatch for {ty}: {a} vs {b}"));
                }
            }
            println!("maximal subsystems: cross-checked against brute force");
            // Spherical function spot checks.
            for (lambda, t) in [(1.0, 0.5), (20.0, 1.0), (200.0, 2.0)] {
                let p = rank1::phi(lambda, t).unwrap();
                let o = rank1::phi_oracle(lambda, t).unwrap();
                if (p - o).abs() >= 1e-8 {
                    failures.push(format!("phi({lambda},{t}) = {p} vs oracle {o}"));
                }
            }
            println!("spherical function: spot-checked against the integral formula");
            if !failures.is_empty() {
                return Err(CliError::verification(failures.join("; ")));
            }
            println!("all checks passed");
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}
