use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pnil_core::adjoint::adjoint_group;
use pnil_core::corpus::{parse_additive_type, CorpusManifest, RingFilter};
use pnil_core::group::{builtin_group, load_group, FiniteGroup, Subgroup, DEFAULT_SUBGROUP_BOUND};
use pnil_core::morphisms::{
    aut_group, aut_n, check_laue, der_ring, der_subring_trivial_on_omega, hom_ring, DEFAULT_AUT_BOUND,
    DEFAULT_AUT_COUNT_BOUND,
};
use pnil_core::ring::{
    builtin_ring, count_candidates, enumerate_rings, load_ring, FiniteRing, DEFAULT_ENUMERATION_BUDGET,
};
use pnil_core::runner::{parse_checks, run, to_json_lines, RunOptions, Summary};
use pnil_core::verify::{GroupProfile, RingProfile, VerifyConfig};
use pnil_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "pnil",
    version,
    about = "Finite p-nil rings, adjoint groups and automorphisms of p-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Profile of a ring and its adjoint group.
    RingInfo {
        /// Builtin ring spec or JSON file.
        ring: String,
    },
    /// Profile of a p-group.
    GroupInfo {
        /// Builtin group spec or JSON file.
        group: String,
        #[arg(long, default_value_t = DEFAULT_SUBGROUP_BOUND)]
        subgroup_bound: usize,
    },
    /// Writes every ring on an additive type that passes a filter.
    EnumerateRings {
        #[arg(long)]
        p: u64,
        /// Comma list of cyclic exponents, e.g. `1,1`.
        #[arg(long)]
        exps: String,
        /// any, left-p-nil, right-p-nil, p-nil or not-p-nil.
        #[arg(long, default_value = "any")]
        filter: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Runs checks over a corpus and writes a JSON-lines report.
    Verify(VerifyArgs),
    /// Structure constants of `Hom(G, S)` for central `S`.
    HomRing {
        group: String,
        /// center, s, or a comma list of elements.
        #[arg(long, default_value = "s")]
        target: String,
    },
    /// Structure constants of `Der(G, N)`.
    DerRing {
        group: String,
        /// whole, center, s, p, frattini, derived, trivial, or a comma list.
        #[arg(long, default_value = "center")]
        module: String,
        /// Keep only derivations vanishing on `Omega(N)`.
        #[arg(long)]
        omega_trivial: bool,
    },
    /// `Aut_N(G)` as image lists.
    AutN {
        group: String,
        #[arg(long, default_value = "center")]
        module: String,
    },
    /// `Aut(G)` by backtracking.
    Aut {
        group: String,
        #[arg(long, default_value_t = DEFAULT_AUT_BOUND)]
        aut_bound: usize,
        /// Print every automorphism as an image list.
        #[arg(long)]
        list: bool,
    },
    /// The `End_N(G) -> Der(G, N)` correspondence as one report line.
    CheckLaue {
        group: String,
        #[arg(long, default_value = "center")]
        module: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Manifest file; the builtin corpus when absent.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Comma list of check names, or `all`.
    #[arg(long, default_value = "all")]
    checks: String,
    /// JSON-lines report path; printed to standard output when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Omega level of `U` scored for p = 2.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
    lemma24_omega: u32,
    #[arg(long, default_value_t = DEFAULT_AUT_BOUND)]
    aut_bound: usize,
    #[arg(long, default_value_t = DEFAULT_SUBGROUP_BOUND)]
    subgroup_bound: usize,
}

fn load_ring_arg(s: &str) -> Result<FiniteRing> {
    if Path::new(s).is_file() {
        load_ring(s)
    } else {
        builtin_ring(s)
    }
}

fn load_group_arg(s: &str) -> Result<FiniteGroup> {
    if Path::new(s).is_file() {
        load_group(Path::new(s))
    } else {
        builtin_group(s)
    }
}

fn select_subgroup(g: &FiniteGroup, name: &str) -> Result<Subgroup> {
    Ok(match name {
        "whole" => g.whole(),
        "center" => g.center(),
        "s" => g.s_subgroup()?,
        "p" => g.p_subgroup()?,
        "frattini" => g.frattini(),
        "derived" => g.commutator_subgroup(),
        "trivial" => g.trivial_subgroup(),
        list => {
            let elems = list
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad subgroup {name:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            g.subgroup(&elems)?
        }
    })
}

fn images_json(maps: &[Vec<usize>]) -> String {
    serde_json::to_string(maps).expect("image lists serialize")
}

fn ring_info(spec: &str) -> Result<()> {
    let r = load_ring_arg(spec)?;
    let pr = RingProfile::of(&r);
    println!("order        {}", pr.order);
    println!("p            {}", pr.p);
    println!("additive     {:?}", r.atype().exps());
    println!("m            {}", pr.m);
    println!("d(R+)        {}", pr.d_plus);
    println!("left p-nil   {}", pr.left_p_nil);
    println!("right p-nil  {}", pr.right_p_nil);
    match pr.class {
        Some(c) => println!("class        {c}"),
        None => println!("class        not nilpotent"),
    }
    let a = adjoint_group(&r);
    println!("adjoint      order {}, exponent {}", a.order(), a.group.exponent());
    match a.group.nilpotency_class() {
        Some(c) => println!("adjoint class {c}"),
        None => println!("adjoint class not nilpotent"),
    }
    Ok(())
}

fn group_info(spec: &str, subgroup_bound: usize) -> Result<()> {
    let g = load_group_arg(spec)?;
    let pr = GroupProfile::of(&g, subgroup_bound)?;
    println!("order  {}", pr.order);
    if let Some(p) = pr.p {
        println!("p      {p}");
    }
    for (k, v) in [
        ("c", pr.c),
        ("r", pr.r),
        ("s", pr.s),
        ("t", pr.t),
        ("d", pr.d),
        ("d'", pr.d_prime),
        ("r1", pr.r1),
        ("s1", pr.s1),
    ] {
        println!("{k:<6} {v}");
    }
    println!("lower central orders {:?}", pr.lower_central_orders);
    println!("upper central orders {:?}", pr.upper_central_orders);
    Ok(())
}

fn enumerate(p: u64, exps: &str, filter: &str, out: &Path) -> Result<()> {
    let atype = parse_additive_type(&p.to_string(), exps)?;
    let filter = RingFilter::parse(filter)?;
    let candidates = count_candidates(&atype);
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    let mut associative = 0usize;
    let mut written = 0usize;
    let rings = enumerate_rings(&atype, DEFAULT_ENUMERATION_BUDGET, |r| {
        associative += 1;
        filter.accepts(r)
    })?;
    for ring in rings {
        let path = out.join(format!("ring-{written:05}.json"));
        std::fs::write(&path, ring.to_json() + "\n").map_err(|e| Error::io(&path, e))?;
        written += 1;
    }
    println!("candidates   {candidates}");
    println!("associative  {associative}");
    println!("written      {written}");
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let manifest = match &args.corpus {
        Some(path) => CorpusManifest::load(path)?,
        None => CorpusManifest::default_corpus(),
    };
    let checks = parse_checks(&args.checks)?;
    let instances = manifest.instances()?;
    let opts = RunOptions {
        checks,
        config: VerifyConfig {
            lemma24_omega: args.lemma24_omega,
            aut_bound: args.aut_bound,
            subgroup_bound: args.subgroup_bound,
            ..VerifyConfig::default()
        },
        jobs: args.jobs,
    };
    let reports = run(&instances, &opts)?;
    let lines = to_json_lines(&reports);
    let summary = Summary::of(&reports);
    match &args.report {
        Some(path) => {
            std::fs::write(path, lines).map_err(|e| Error::io(path, e))?;
            print!("{}", summary.table());
        }
        None => {
            print!("{lines}");
            eprint!("{}", summary.table());
        }
    }
    Ok(summary.failures() == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Result<bool> = match &cli.command {
        Command::RingInfo { ring } => ring_info(ring).map(|_| true),
        Command::GroupInfo { group, subgroup_bound } => group_info(group, *subgroup_bound).map(|_| true),
        Command::EnumerateRings { p, exps, filter, out } => enumerate(*p, exps, filter, out).map(|_| true),
        Command::Verify(args) => verify(args),
        Command::HomRing { group, target } => (|| {
            let g = load_group_arg(group)?;
            let p = g.prime().unwrap_or(2);
            let (ring, _) = hom_ring(&g, &select_subgroup(&g, target)?, false)?.to_finite_ring(p)?;
            println!("{}", ring.to_json());
            Ok(true)
        })(),
        Command::DerRing {
            group,
            module,
            omega_trivial,
        } => (|| {
            let g = load_group_arg(group)?;
            let p = g.prime().unwrap_or(2);
            let n = select_subgroup(&g, module)?;
            let table = if *omega_trivial {
                der_subring_trivial_on_omega(&g, &n)?
            } else {
                der_ring(&g, &n)?
            };
            println!("{}", table.to_finite_ring(p)?.0.to_json());
            Ok(true)
        })(),
        Command::AutN { group, module } => (|| {
            let g = load_group_arg(group)?;
            let (a, units) = aut_n(&g, &select_subgroup(&g, module)?);
            eprintln!("order {}", a.order());
            println!("{}", images_json(&units));
            Ok(true)
        })(),
        Command::Aut { group, aut_bound, list } => (|| {
            let g = load_group_arg(group)?;
            let a = aut_group(&g, *aut_bound, DEFAULT_AUT_COUNT_BOUND)?;
            println!("order {}", a.order());
            if *list {
                println!("{}", images_json(&a.members));
            }
            Ok(true)
        })(),
        Command::CheckLaue { group, module } => (|| {
            let g = load_group_arg(group)?;
            let report = check_laue(&g, &select_subgroup(&g, module)?, group);
            println!("{}", report.to_json_line());
            Ok(report.verdict != pnil_core::report::Verdict::Fail)
        })(),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
