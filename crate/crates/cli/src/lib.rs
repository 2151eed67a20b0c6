//! Argument parsing and report rendering for the `bianchi` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use bianchi_core::buildings::{alpha_report, lemma_oracle, tits_building, truncated_b2_components};
use bianchi_core::persist::{perfect_forms_stage, run_pipeline, to_json, Cache, CACHE_ENV, DEFAULT_CACHE_DIR};
use bianchi_core::QuadField;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] bianchi_core::Error),
    #[error("could not start worker threads: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
    #[error("--what {what} needs {missing}")]
    MissingArg { what: &'static str, missing: &'static str },
    #[error("single-support formula failed on trials {0:?}")]
    LemmaDisagreement(Vec<usize>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    SteinbergRank,
    AlphaRank,
    LemmaOracle,
}

#[derive(Debug, Parser)]
#[command(name = "bianchi", version, about = "Perfect forms, Voronoi homology and finite buildings")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Stage cache, one subdirectory per discriminant.
    #[arg(long, env = CACHE_ENV, default_value = DEFAULT_CACHE_DIR, global = true)]
    pub cache_dir: PathBuf,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate perfect forms up to GL2(O_d)-equivalence.
    PerfectForms {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Homology of the Voronoi complex.
    VoronoiHomology {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        /// One degree; all of 1..=3 when omitted.
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Tits building computations over F_q.
    Building {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Component census of a finite truncation of B_2(O_d).
    ExploreB2 {
        #[arg(long, allow_negative_numbers = true, default_value_t = -43)]
        d: i64,
        #[arg(long, default_value_t = 5)]
        radius: u64,
    },
}

#[derive(Serialize)]
struct HomologyReport {
    schema_version: u32,
    d: i64,
    ranks: [usize; 3],
    groups: Vec<DegreeGroup>,
}

#[derive(Serialize)]
struct DegreeGroup {
    degree: i64,
    group: String,
}

#[derive(Serialize)]
struct SteinbergReport {
    n: usize,
    q: u32,
    reduced_homology: Vec<String>,
    steinberg_rank: usize,
}

/// Run a parsed command and return what should go to stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let pool = match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build()?,
        None => rayon::ThreadPoolBuilder::new().build()?,
    };
    pool.install(|| execute(cli))
}

fn need<T>(x: Option<T>, what: &'static str, missing: &'static str) -> Result<T, CliError> {
    x.ok_or(CliError::MissingArg { what, missing })
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let json = cli.format == Format::Json;
    let cache = Cache::new(&cli.cache_dir);
    let mut out = String::new();
    match cli.command {
        Command::PerfectForms { d } => {
            let doc = perfect_forms_stage(QuadField::new(d)?, Some(&cache))?;
            if json {
                return Ok(to_json(&doc)?);
            }
            let shapes: Vec<&str> = doc.classes.iter().map(|c| c.shape.as_str()).collect();
            writeln!(out, "{} classes: {}", doc.classes.len(), shapes.join(", ")).unwrap();
            for c in &doc.classes {
                let [v, e, f] = c.face_counts;
                writeln!(
                    out,
                    "  class {}: {} minimal vectors, {} ({v} vertices, {e} edges, {f} faces)",
                    c.label,
                    c.min_vectors.len(),
                    c.shape
                )
                .unwrap();
            }
        }
        Command::VoronoiHomology { d, degree } => {
            let p = run_pipeline(QuadField::new(d)?, Some(&cache))?;
            let degrees: Vec<i64> = degree.map_or_else(|| vec![1, 2, 3], |k| vec![k]);
            let groups: Vec<DegreeGroup> = degrees
                .iter()
                .map(|&k| {
                    let group = if (1..=3).contains(&k) { p.complex.homology[k as usize - 1].clone() } else { "0".into() };
                    DegreeGroup { degree: k, group }
                })
                .collect();
            if json {
                let r = HomologyReport { schema_version: p.complex.schema_version, d, ranks: p.complex.ranks, groups };
                return Ok(to_json(&r)?);
            }
            if let [g] = groups.as_slice() {
                writeln!(out, "{}", g.group).unwrap();
            } else {
                let [c1, c2, c3] = p.complex.ranks;
                let [a1, a2, a3] = [0, 1, 2].map(|i| p.orbits.cells[i].len());
                writeln!(out, "d = {d}: cell orbits (edges, 2-faces, 3-cells) = ({a1}, {a2}, {a3}), orientable ({c1}, {c2}, {c3})")
                    .unwrap();
                for g in &groups {
                    writeln!(out, "H_{} = {}", g.degree, g.group).unwrap();
                }
            }
        }
        Command::Building { n, q, what, trials, seed } => match what {
            What::SteinbergRank => {
                let (n, q) = (need(n, "steinberg-rank", "--n")?, need(q, "steinberg-rank", "--q")?);
                let b = tits_building(n, q)?;
                let c = b.order_complex();
                let reduced: Vec<String> = (0..n as i64).map(|k| c.reduced_homology(k).to_string()).collect();
                let r = SteinbergReport { n, q, steinberg_rank: b.steinberg_rank(), reduced_homology: reduced };
                if json {
                    return Ok(to_json(&r)?);
                }
                writeln!(out, "{}", r.steinberg_rank).unwrap();
                for (k, g) in r.reduced_homology.iter().enumerate() {
                    writeln!(out, "  reduced H_{k}(T_{n}(F_{q})) = {g}").unwrap();
                }
            }
            What::AlphaRank => {
                let r = alpha_report(need(n, "alpha-rank", "--n")?, need(q, "alpha-rank", "--q")?)?;
                if json {
                    return Ok(to_json(&r)?);
                }
                writeln!(out, "{}", r.image_rank).unwrap();
                writeln!(
                    out,
                    "  {} frames, Steinberg rank {}, cokernel {}",
                    r.frames, r.steinberg_rank, r.cokernel
                )
                .unwrap();
            }
            What::LemmaOracle => {
                let r = lemma_oracle(trials, seed)?;
                if !r.all_agree() {
                    return Err(CliError::LemmaDisagreement(r.failures));
                }
                if json {
                    return Ok(to_json(&r)?);
                }
                writeln!(out, "{}/{} agree", r.agreements, r.trials).unwrap();
            }
        },
        Command::ExploreB2 { d, radius } => {
            let c = truncated_b2_components(QuadField::new(d)?, radius);
            if json {
                return Ok(to_json(&c)?);
            }
            writeln!(out, "{c}").unwrap();
        }
    }
    Ok(out)
}
