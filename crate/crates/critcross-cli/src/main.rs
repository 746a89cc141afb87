//! Command-line surface of the construction kit: derive parameters, build
//! and export family graphs, verify constraints, run the exact crossing
//! oracle, count twisted pairs, and evaluate the bound function.
//!
//! Exit codes: 0 success / all checks pass, 1 constraint or domain failure,
//! 2 usage error, 3 oracle budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{pow::Pow, Zero};

use critcross::census::{average_degree, DegreeCensus3456, Rational};
use critcross::family::{
    build_gamma, build_h, build_r, build_s, census_gamma, census_h, census_r, census_s,
    constraint_gamma, constraint_h, constraint_r, constraint_s, CheckReport, FamilyError,
    GammaParams, ThickSelection, DEFAULT_SIZE_CAP,
};
use critcross::graph::{degree_census, from_edge_list, is_planar, to_dot, to_edge_list, Multigraph};
use critcross::oracle::{
    crossing_number_exact, euler_lower_bound, OracleOutcome, DEFAULT_BUDGET,
};
use critcross::pairs::{pair_counts, pair_validity};
use critcross::solver::{bound_f, bound_n, derive_params, interval_threshold, sample_bound_csv};

const EXIT_CONSTRAINT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "critcross", version, about = "Construction kit and verifier for crossing-critical graph families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Derive family parameters for crossing number k and degree 3 + a/b
    Derive {
        #[arg(long)]
        a: BigInt,
        #[arg(long)]
        b: BigInt,
        /// Target crossing number; omit to only compute the threshold N
        #[arg(long)]
        k: Option<BigInt>,
        /// Free parameter t > k (default: k + 1)
        #[arg(long)]
        t: Option<BigInt>,
    },
    /// Build a family graph; the census is always printed
    Build {
        #[command(subcommand)]
        family: BuildFamily,
    },
    /// Verify family constraints, or inspect a graph file
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Exact crossing number of a graph file
    Oracle {
        file: PathBuf,
        /// Deepest crossing level to search
        #[arg(long, default_value_t = 5)]
        max_k: u32,
        /// Time budget in seconds (default 600; CRITCROSS_BUDGET_SECS overrides)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Twisted-pair counts of the band tile for a given w
    Pairs {
        #[arg(long)]
        w: u32,
    },
    /// Bound function: value at a point, interval threshold, or CSV samples
    Bound {
        /// Evaluate f at a rational point ("7/2" or "3.5")
        #[arg(long)]
        x: Option<String>,
        /// Interval threshold: left endpoint
        #[arg(long)]
        r1: Option<String>,
        /// Interval threshold: right endpoint
        #[arg(long)]
        r2: Option<String>,
        /// Emit CSV rows "x,f(x)" at this rational step
        #[arg(long)]
        sample: Option<String>,
        /// Sampling start (default 3 + step)
        #[arg(long)]
        from: Option<String>,
        /// Sampling end (default 6 - step)
        #[arg(long)]
        to: Option<String>,
        /// Write CSV to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BuildFamily {
    /// S(n, m, c): staircase band with contracted thick edges
    S {
        #[arg(long)]
        n: BigInt,
        #[arg(long)]
        m: BigInt,
        #[arg(long)]
        c: BigInt,
        #[command(flatten)]
        opts: BuildOpts,
        /// Thick-edge selection strategy
        #[arg(long, value_enum, default_value_t = SelectionArg::Canonical)]
        selection: SelectionArg,
        /// Seed for the seeded selection
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// H(w, s): dense band
    H {
        #[arg(long)]
        w: BigInt,
        #[arg(long)]
        s: BigInt,
        #[command(flatten)]
        opts: BuildOpts,
    },
    /// R(p, q): adapting graph
    R {
        #[arg(long)]
        p: BigInt,
        #[arg(long)]
        q: BigInt,
        #[command(flatten)]
        opts: BuildOpts,
    },
    /// Γ for a target degree and crossing number (derives parameters first)
    Gamma {
        #[arg(long)]
        a: BigInt,
        #[arg(long)]
        b: BigInt,
        #[arg(long)]
        k: BigInt,
        #[arg(long)]
        t: Option<BigInt>,
        #[command(flatten)]
        opts: BuildOpts,
        #[arg(long, value_enum, default_value_t = SelectionArg::Canonical)]
        selection: SelectionArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct BuildOpts {
    /// Write the graph to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::EdgeList)]
    format: FormatArg,
    /// Vertex-count cap for explicit builds
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    EdgeList,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum SelectionArg {
    Canonical,
    Seeded,
}

impl SelectionArg {
    fn resolve(self, seed: u64) -> ThickSelection {
        match self {
            SelectionArg::Canonical => ThickSelection::Canonical,
            SelectionArg::Seeded => ThickSelection::Seeded(seed),
        }
    }
}

#[derive(Subcommand)]
enum VerifyTarget {
    S {
        #[arg(long)]
        n: BigInt,
        #[arg(long)]
        m: BigInt,
        #[arg(long)]
        c: BigInt,
    },
    H {
        #[arg(long)]
        w: BigInt,
        #[arg(long)]
        s: BigInt,
    },
    R {
        #[arg(long)]
        p: BigInt,
        #[arg(long)]
        q: BigInt,
    },
    Gamma {
        #[arg(long)]
        n: BigInt,
        #[arg(long)]
        m: BigInt,
        #[arg(long)]
        c: BigInt,
        #[arg(long)]
        w: BigInt,
        #[arg(long)]
        s: BigInt,
        #[arg(long)]
        p: BigInt,
        #[arg(long)]
        q: BigInt,
    },
    /// Inspect a graph file: counts, simplicity, degree census, planarity
    Graph { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Derive { a, b, k, t } => {
            let k = match k {
                Some(k) => k,
                None => {
                    // Threshold-only mode: the domain checks still apply.
                    return match bound_n(&a, &b) {
                        Ok(n) => {
                            println!("N = {n}; any --k > {n} admits a derivation");
                            Ok(ExitCode::SUCCESS)
                        }
                        Err(e) => {
                            eprintln!("derivation failed: {e}");
                            Ok(ExitCode::from(EXIT_CONSTRAINT))
                        }
                    };
                }
            };
            let t = t.unwrap_or_else(|| &k + 1);
            match derive_params(&a, &b, &k, &t) {
                Ok(report) => {
                    if cli.json {
                        println!("{}", serde_json::to_string_pretty(&report.to_json())?);
                    } else {
                        print!("{report}");
                    }
                    Ok(exit_all_pass(report.all_pass()))
                }
                Err(e) => {
                    eprintln!("derivation failed: {e}");
                    Ok(ExitCode::from(EXIT_CONSTRAINT))
                }
            }
        }
        Command::Build { family } => build_command(family, cli.json),
        Command::Verify { target } => verify_command(target, cli.json),
        Command::Oracle {
            file,
            max_k,
            budget,
        } => oracle_command(&file, max_k, budget, cli.json),
        Command::Pairs { w } => {
            let fam = pair_validity(w);
            let closed = pair_counts(&BigInt::from(w));
            let counts = fam.counts_by_letter();
            if cli.json {
                let letters: serde_json::Map<String, serde_json::Value> = counts
                    .iter()
                    .map(|(l, c)| (l.to_string(), serde_json::json!(c)))
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({ "w": w, "letters": letters, "total": fam.total() })
                );
            } else {
                println!("pair counts for w = {w}");
                for (letter, count) in &counts {
                    println!("  {letter}: {count}");
                }
                println!("total {}", fam.total());
            }
            // The enumeration and the closed forms must agree.
            if BigInt::from(fam.total()) != closed.total {
                eprintln!("enumeration disagrees with the closed form");
                return Ok(ExitCode::from(EXIT_CONSTRAINT));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound {
            x,
            r1,
            r2,
            sample,
            from,
            to,
            out,
        } => bound_command(x, r1, r2, sample, from, to, out, cli.json),
    }
}

fn exit_all_pass(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CONSTRAINT)
    }
}

fn census_line(census: &DegreeCensus3456) -> String {
    let avg = average_degree(census)
        .map(|r| r.to_string())
        .unwrap_or_else(|_| "undefined".into());
    let vertices = census.total();
    let edges = census.degree_sum() / 2;
    format!("census {census}: {vertices} vertices, {edges} edges, average degree {avg}")
}

fn build_command(family: BuildFamily, json: bool) -> anyhow::Result<ExitCode> {
    // Census first; it is printed even when the explicit build is blocked.
    let (census, opts, builder): (
        _,
        _,
        Box<dyn FnOnce() -> Result<Multigraph, FamilyError>>,
    ) = match family {
        BuildFamily::S {
            n,
            m,
            c,
            opts,
            selection,
            seed,
        } => {
            let report = constraint_s(&n, &m, &c);
            if !report.all_pass() {
                return fail_constraints(&report, json);
            }
            let census = census_s(&n, &m, &c)?;
            let sel = selection.resolve(seed);
            (
                census,
                opts,
                Box::new(move || build_s(&n, &m, &c, sel)) as Box<_>,
            )
        }
        BuildFamily::H { w, s, opts } => {
            let report = constraint_h(&w, &s);
            if !report.all_pass() {
                return fail_constraints(&report, json);
            }
            let census = census_h(&w, &s)?;
            (census, opts, Box::new(move || build_h(&w, &s)) as Box<_>)
        }
        BuildFamily::R { p, q, opts } => {
            let census = match census_r(&p, &q) {
                Ok(c) => c,
                Err(FamilyError::Constraint(report)) => return fail_constraints(&report, json),
                Err(e) => return Err(e.into()),
            };
            (census, opts, Box::new(move || build_r(&p, &q)) as Box<_>)
        }
        BuildFamily::Gamma {
            a,
            b,
            k,
            t,
            opts,
            selection,
            seed,
        } => {
            let t = t.unwrap_or_else(|| &k + 1);
            let report = match derive_params(&a, &b, &k, &t) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("derivation failed: {e}");
                    return Ok(ExitCode::from(EXIT_CONSTRAINT));
                }
            };
            let params = report.params.clone();
            let census = census_gamma(&params)?;
            println!(
                "derived parameters: n={} m={} c={} w={} s={} p={} q={}",
                params.n, params.m, params.c, params.w, params.s, params.p, params.q
            );
            let cap = opts.size_cap;
            let sel = selection.resolve(seed);
            (
                census,
                opts,
                Box::new(move || build_gamma(&params, cap, sel)) as Box<_>,
            )
        }
    };

    println!("{}", census_line(&census));

    let over_cap = census.total() > BigInt::from(opts.size_cap);
    if opts.out.is_none() {
        if over_cap {
            println!(
                "explicit build skipped: {} vertices exceed the size cap {}",
                census.total(),
                opts.size_cap
            );
        }
        return Ok(ExitCode::SUCCESS);
    }
    if over_cap {
        eprintln!(
            "cannot write {}: {} vertices exceed the size cap {}",
            opts.out.unwrap().display(),
            census.total(),
            opts.size_cap
        );
        return Ok(ExitCode::from(EXIT_CONSTRAINT));
    }

    let graph = builder()?;
    let extracted = degree_census(&graph).map_err(FamilyError::from)?;
    anyhow::ensure!(
        extracted == census,
        "extracted census {extracted} disagrees with the formula {census}"
    );
    let path = opts.out.unwrap();
    let payload = match opts.format {
        FormatArg::EdgeList => to_edge_list(&graph),
        FormatArg::Dot => to_dot(&graph, "g"),
    };
    std::fs::write(&path, payload)?;
    println!(
        "wrote {} ({} vertices, {} edges)",
        path.display(),
        graph.vertex_count(),
        graph.edge_count()
    );
    Ok(ExitCode::SUCCESS)
}

fn fail_constraints(report: &CheckReport, json: bool) -> anyhow::Result<ExitCode> {
    print_report(report, json)?;
    Ok(ExitCode::from(EXIT_CONSTRAINT))
}

fn print_report(report: &CheckReport, json: bool) -> anyhow::Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print!("{report}");
    }
    Ok(())
}

fn verify_command(target: VerifyTarget, json: bool) -> anyhow::Result<ExitCode> {
    let report = match target {
        VerifyTarget::S { n, m, c } => constraint_s(&n, &m, &c),
        VerifyTarget::H { w, s } => constraint_h(&w, &s),
        VerifyTarget::R { p, q } => constraint_r(&p, &q),
        VerifyTarget::Gamma {
            n,
            m,
            c,
            w,
            s,
            p,
            q,
        } => constraint_gamma(&GammaParams { n, m, c, w, s, p, q }),
        VerifyTarget::Graph { file } => {
            let text = std::fs::read_to_string(&file)?;
            let graph = from_edge_list(&text)?;
            let planar = is_planar(&graph);
            let census = degree_census(&graph);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "vertices": graph.vertex_count(),
                        "edges": graph.edge_count(),
                        "simple": graph.is_simple(),
                        "planar": planar,
                        "euler_lower_bound": euler_lower_bound(&graph),
                        "census": census.as_ref().map(|c| c.to_string()).ok(),
                    })
                );
            } else {
                println!(
                    "{} vertices, {} edges, simple: {}, planar: {}, crossing lower bound: {}",
                    graph.vertex_count(),
                    graph.edge_count(),
                    graph.is_simple(),
                    planar,
                    euler_lower_bound(&graph)
                );
            }
            return match census {
                Ok(c) => {
                    if !json {
                        println!("{}", census_line(&c));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("degree census: {e}");
                    Ok(ExitCode::from(EXIT_CONSTRAINT))
                }
            };
        }
    };
    print_report(&report, json)?;
    Ok(exit_all_pass(report.all_pass()))
}

fn oracle_command(
    file: &PathBuf,
    max_k: u32,
    budget: Option<u64>,
    json: bool,
) -> anyhow::Result<ExitCode> {
    let text = std::fs::read_to_string(file)?;
    let graph = from_edge_list(&text)?;
    let budget = budget
        .map(Duration::from_secs)
        .or_else(|| {
            std::env::var("CRITCROSS_BUDGET_SECS")
                .ok()
                .and_then(|v| v.parse().ok())
                .map(Duration::from_secs)
        })
        .unwrap_or(DEFAULT_BUDGET);
    match crossing_number_exact(&graph, max_k, budget) {
        Ok(OracleOutcome::Exact(cert)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&cert.to_json())?);
            } else if cert.value == 0 {
                println!("cr = 0 (planar)");
            } else {
                println!("cr = {} (exhausted k <= {})", cert.value, cert.value - 1);
            }
            Ok(ExitCode::SUCCESS)
        }
        Ok(OracleOutcome::Exceeded { exhausted }) => {
            match exhausted {
                Some(level) => eprintln!("search stopped: cr > {level} (budget or max-k reached)"),
                None => eprintln!("search stopped before any level was exhausted"),
            }
            Ok(ExitCode::from(EXIT_BUDGET))
        }
        Err(e) => {
            eprintln!("oracle: {e}");
            Ok(ExitCode::from(EXIT_CONSTRAINT))
        }
    }
}

/// Parses "a/b", decimal ("3.5"), or integer strings into exact rationals.
fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())?;
        let d = BigInt::from_str(den.trim())?;
        anyhow::ensure!(!d.is_zero(), "zero denominator in {s:?}");
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = frac.len() as u32;
        let int: BigInt = if int.is_empty() { BigInt::zero() } else { BigInt::from_str(int)? };
        let frac_val = BigInt::from_str(frac)?;
        let denom = BigInt::from(10).pow(digits);
        let sign = if s.starts_with('-') { -1 } else { 1 };
        let numer = &int * &denom + sign * frac_val;
        return Ok(BigRational::new(numer, denom));
    }
    Ok(BigRational::from_integer(BigInt::from_str(s)?))
}

#[allow(clippy::too_many_arguments)]
fn bound_command(
    x: Option<String>,
    r1: Option<String>,
    r2: Option<String>,
    sample: Option<String>,
    from: Option<String>,
    to: Option<String>,
    out: Option<PathBuf>,
    json: bool,
) -> anyhow::Result<ExitCode> {
    if let Some(x) = x {
        let x = parse_rational(&x)?;
        return match bound_f(&x) {
            Ok(v) => {
                if json {
                    println!("{}", serde_json::json!({ "x": x.to_string(), "f": v.to_string() }));
                } else {
                    println!("f({x}) = {v}");
                }
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => {
                eprintln!("{e}");
                Ok(ExitCode::from(EXIT_CONSTRAINT))
            }
        };
    }
    if let (Some(r1), Some(r2)) = (&r1, &r2) {
        let r1 = parse_rational(r1)?;
        let r2 = parse_rational(r2)?;
        return match interval_threshold(&r1, &r2) {
            Ok(n) => {
                if json {
                    println!("{}", serde_json::json!({ "N_I": n.to_string() }));
                } else {
                    println!("N_I = {n}");
                }
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => {
                eprintln!("{e}");
                Ok(ExitCode::from(EXIT_CONSTRAINT))
            }
        };
    }
    if let Some(step) = sample {
        let step = parse_rational(&step)?;
        let three = BigRational::from_integer(3.into());
        let six = BigRational::from_integer(6.into());
        let from = match from {
            Some(f) => parse_rational(&f)?,
            None => &three + &step,
        };
        let to = match to {
            Some(t) => parse_rational(&t)?,
            None => &six - &step,
        };
        let csv = sample_bound_csv(&from, &to, &step)?;
        match out {
            Some(path) => {
                std::fs::write(&path, csv)?;
                println!("wrote {}", path.display());
            }
            None => print!("{csv}"),
        }
        return Ok(ExitCode::SUCCESS);
    }
    anyhow::bail!("bound needs one of --x, --r1/--r2, or --sample");
}
