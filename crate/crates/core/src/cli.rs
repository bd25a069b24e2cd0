//! Command-line front end: construction, verification, enumeration,
//! classification, orbit analysis, scheme reports, and the regression
//! catalog. The only module with I/O side effects.
//!
//! Exit codes: 0 success, 2 verification failure, 1 usage or format error.

use crate::classify::{
    automorphism_group, canonical_form, classify_family, orbits_under_point_relabeling,
    recognize_group,
};
use crate::construct1::{
    b1_choices_from_index, b1_relaxed_space, build_c1_a1, build_c1_b1_relaxed,
    build_c1_general, build_c1_general_from, default_pi, B1Choices, C1Mode,
};
use crate::construct2::{blow_up, build_d1, build_d2, C2Variant};
use crate::designs::{projective_plane_family, chunked_pointwise_family, PartitionFamilySpace};
use crate::fixtures;
use crate::graphs::{verify_dsrg, verify_srg, Digraph, DsrgParams};
use crate::io;
use crate::schemes::{orbital_scheme, AssociationScheme, DecompositionOutcome, FuseOutcome};
use crate::{Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const JOBS_ENV: &str = "ANTIFLAG_JOBS";

#[derive(Parser)]
#[command(
    name = "antiflag",
    version,
    about = "Construct, verify and classify directed strongly regular graphs \
             built on antiflags of tactical configurations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph with Construction I or II
    Construct {
        #[command(subcommand)]
        which: ConstructCmd,
    },
    /// Check the defining identity of a digraph01 file exactly
    Verify { file: PathBuf },
    /// Stream graphs or families from an enumeration space
    Enumerate {
        #[command(subcommand)]
        which: EnumerateCmd,
    },
    /// Group a directory or stream of digraph01 graphs into isomorphism classes
    Classify {
        /// directory of .d01 files, a multi-graph file, or `-` for stdin
        input: String,
        /// worker threads for certificate computation (default from ANTIFLAG_JOBS)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orbit analysis of the full d=1 family space under point relabeling
    Orbits {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Automorphism group, orbital scheme and fusions of a graph
    Scheme {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the regression catalog against the published tables
    Catalog {
        /// directory for report artifacts
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    General,
    B1,
    A1,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum PairingArg {
    #[default]
    Strict,
    Relaxed,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    D1,
    D2,
}

impl From<VariantArg> for C2Variant {
    fn from(v: VariantArg) -> C2Variant {
        match v {
            VariantArg::D1 => C2Variant::D1,
            VariantArg::D2 => C2Variant::D2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum FormatArg {
    #[default]
    Digraph01,
    Json,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Construction I (general, b=1, a=1)
    C1 {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// pairing of the other groups' blocks in b=1 mode
        #[arg(long, value_enum, default_value_t)]
        pairing: PairingArg,
        /// index of the relaxed choice vector (b=1 relaxed mode)
        #[arg(long)]
        choices: Option<u128>,
        /// part map for a=1 mode: comma-separated 1-based parts, one per point
        #[arg(long)]
        pi: Option<String>,
        /// explicit grouped design JSON (general mode)
        #[arg(long)]
        input: Option<PathBuf>,
        /// stream every graph of the b=1 relaxed choice space to stdout
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        /// also write a (point, block) label sidecar next to --out
        #[arg(long)]
        labels: bool,
    },
    /// Construction II (variants D1/D2, m-copy blow-ups)
    C2 {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// use the projective plane of this prime order as the family
        #[arg(long)]
        plane: Option<usize>,
        /// explicit pointwise family JSON
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        #[arg(long)]
        labels: bool,
    },
}

#[derive(Subcommand)]
enum EnumerateCmd {
    /// All (or a seeded sample of) d=1 partition families, optionally built
    /// into graphs
    C2Families {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        l: usize,
        /// sample this many families instead of exhausting the space
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// keep the first point's partition fixed while sampling; every
        /// isomorphism class still has representatives in the reduced space
        #[arg(long)]
        fix_first: bool,
        /// build each family into a graph instead of emitting family JSON
        #[arg(long, value_enum)]
        build: Option<VariantArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All graphs of the b=1 relaxed choice space
    C1Relaxed {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Entry point used by `main` and by tests; returns the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // keep clap's rendered help/usage, but exit 1 on usage errors
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { 0 } else { 1 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Construct { which } => construct(which),
        Command::Verify { file } => verify_file(&file),
        Command::Enumerate { which } => enumerate(which),
        Command::Classify { input, jobs, out } => classify_cmd(&input, jobs, out.as_deref()),
        Command::Orbits { n, s, l, out } => orbits_cmd(n, s, l, out.as_deref()),
        Command::Scheme { file, out } => scheme_cmd(&file, out.as_deref()),
        Command::Catalog { out } => catalog(out.as_deref()),
    }
}

fn default_jobs() -> usize {
    std::env::var(JOBS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&j| j >= 1)
        .unwrap_or(1)
}

fn write_or_print(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Format(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    parameters: serde_json::Value,
    verification: serde_json::Value,
    certificate: Option<String>,
    aut_order: Option<u64>,
    aut_name: Option<String>,
    warnings: Vec<String>,
    elapsed_ms: u128,
    digraph01: String,
    labels: Option<serde_json::Value>,
}

struct EmitTarget<'a> {
    out: Option<&'a Path>,
    format: FormatArg,
    labels: bool,
}

/// Verify, report, and emit a constructed graph. Exit 2 when verification
/// fails.
fn emit_graph(
    command: String,
    parameters: serde_json::Value,
    graph: &Digraph,
    warnings: Vec<String>,
    started: Instant,
    target: EmitTarget<'_>,
) -> Result<i32> {
    let EmitTarget { out, format, labels } = target;
    let verification = verify_dsrg(graph);
    let ok = verification.is_ok();
    let verification_json = match &verification {
        Ok(v) => json!({"ok": true, "params": v.params, "degeneracy": v.degeneracy}),
        Err(w) => json!({"ok": false, "witness": w.to_string()}),
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    match format {
        FormatArg::Digraph01 => {
            write_or_print(out, &graph.to_digraph01())?;
            if labels {
                if let (Some(path), Some(labs)) = (out, graph.labels()) {
                    let sidecar = path.with_extension("labels.json");
                    std::fs::write(&sidecar, io::labels_to_json(labs))
                        .map_err(|e| Error::Format(format!("writing labels: {e}")))?;
                }
            }
            match &verification {
                Ok(v) => eprintln!(
                    "verified {}{}",
                    v.params,
                    match v.degeneracy {
                        Some(d) => format!(" [degenerate: {d:?}]"),
                        None => String::new(),
                    }
                ),
                Err(w) => eprintln!("verification failed: {w}"),
            }
        }
        FormatArg::Json => {
            let cert = canonical_form(graph);
            let aut = automorphism_group(graph);
            let report = RunReport {
                command,
                parameters,
                verification: verification_json,
                certificate: Some(io::hex_encode(&cert.certificate)),
                aut_order: Some(aut.order() as u64),
                aut_name: Some(recognize_group(&aut)),
                warnings,
                elapsed_ms: started.elapsed().as_millis(),
                digraph01: graph.to_digraph01(),
                labels: graph
                    .labels()
                    .map(|l| serde_json::to_value(l).expect("labels serialize")),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            write_or_print(out, &(text + "\n"))?;
        }
    }
    Ok(if ok { 0 } else { 2 })
}

fn parse_pi(text: &str, rq: usize) -> Result<Vec<usize>> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parameter(format!("bad π entry {tok:?}")))
        })
        .collect::<Result<_>>()?;
    if parts.len() != rq {
        return Err(Error::Parameter(format!(
            "π needs one entry per point ({rq}), got {}",
            parts.len()
        )));
    }
    // CLI takes the 1-based convention; internals are 0-based
    parts
        .iter()
        .map(|&p| {
            p.checked_sub(1)
                .ok_or_else(|| Error::Parameter("π entries are 1-based".into()))
        })
        .collect()
}

fn construct(which: ConstructCmd) -> Result<i32> {
    let started = Instant::now();
    match which {
        ConstructCmd::C1 {
            mode,
            r,
            q,
            a,
            b,
            pairing,
            choices,
            pi,
            input,
            enumerate,
            out,
            format,
            labels,
        } => {
            if enumerate {
                return enumerate_b1_stream(r, q, out.as_deref());
            }
            let mut warnings = Vec::new();
            let graph = match mode {
                ModeArg::General => {
                    if let Some(path) = input {
                        let text = std::fs::read_to_string(&path)
                            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
                        build_c1_general_from(&io::design_from_json(&text)?)?
                    } else {
                        let a = a.ok_or_else(|| {
                            Error::Parameter("general mode needs --a (with q-1 = a·b)".into())
                        })?;
                        let b = b.unwrap_or_else(|| (q - 1) / a.max(1));
                        build_c1_general(r, q, a, b)?
                    }
                }
                ModeArg::B1 => {
                    let choice_vec = match (pairing, choices) {
                        (PairingArg::Strict, None) => B1Choices::strict(r, q),
                        (PairingArg::Strict, Some(_)) => {
                            return Err(Error::Parameter(
                                "--choices only applies to --pairing relaxed".into(),
                            ))
                        }
                        (PairingArg::Relaxed, idx) => {
                            b1_choices_from_index(r, q, idx.unwrap_or(0))
                        }
                    };
                    build_c1_b1_relaxed(r, q, &choice_vec)?
                }
                ModeArg::A1 => {
                    let pi_vec = match pi {
                        Some(text) => parse_pi(&text, r * q)?,
                        None => default_pi(r, q),
                    };
                    let built = build_c1_a1(r, q, &pi_vec)?;
                    if let Some(w) = built.warning {
                        warnings.push(w);
                    }
                    built.graph
                }
            };
            let params = json!({"mode": match mode {
                ModeArg::General => "general", ModeArg::B1 => "b1", ModeArg::A1 => "a1"
            }, "r": r, "q": q, "a": a, "b": b});
            emit_graph(
                "construct c1".into(),
                params,
                &graph,
                warnings,
                started,
                EmitTarget {
                    out: out.as_deref(),
                    format,
                    labels,
                },
            )
        }
        ConstructCmd::C2 {
            n,
            s,
            l,
            d,
            plane,
            input,
            variant,
            m,
            out,
            format,
            labels,
        } => {
            let family = if let Some(path) = input {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
                io::family_from_json(&text)?
            } else if let Some(order) = plane {
                projective_plane_family(order)?
            } else {
                let (n, s, l, d) = match (n, s, l, d) {
                    (Some(n), Some(s), Some(l), Some(d)) => (n, s, l, d),
                    _ => {
                        return Err(Error::Parameter(
                            "construct c2 needs --n --s --l --d, or --plane, or --input".into(),
                        ))
                    }
                };
                chunked_pointwise_family(n, s, l, d)?
            };
            let variant: C2Variant = variant.into();
            let base = match variant {
                C2Variant::D1 => build_d1(&family)?,
                C2Variant::D2 => build_d2(&family)?,
            };
            let graph = if m > 1 { blow_up(&base, variant, m)? } else { base };
            let params = json!({"variant": format!("{variant:?}"), "m": m,
                "n": n, "s": s, "l": l, "d": d, "plane": plane});
            emit_graph(
                "construct c2".into(),
                params,
                &graph,
                Vec::new(),
                started,
                EmitTarget {
                    out: out.as_deref(),
                    format,
                    labels,
                },
            )
        }
    }
}

fn verify_file(path: &Path) -> Result<i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    let graph = Digraph::parse_digraph01(&text)?;
    match verify_dsrg(&graph) {
        Ok(v) => {
            print!("DSRG {}", v.params);
            if let Some(d) = v.degeneracy {
                print!(" [degenerate: {d:?}]");
            }
            println!();
            if graph.is_symmetric() {
                if let Ok(srg) = verify_srg(&graph) {
                    println!("SRG {srg}");
                }
            }
            Ok(0)
        }
        Err(witness) => {
            println!("not a DSRG: {witness}");
            Ok(2)
        }
    }
}

fn enumerate_b1_stream(r: usize, q: usize, out: Option<&Path>) -> Result<i32> {
    let total = b1_relaxed_space(r, q)?;
    const LIMIT: u128 = 1 << 20;
    if total > LIMIT {
        return Err(Error::Parameter(format!(
            "choice space has {total} vectors; use enumerate c1-relaxed --sample"
        )));
    }
    let mut stream = String::new();
    for idx in 0..total {
        let g = build_c1_b1_relaxed(r, q, &b1_choices_from_index(r, q, idx))?;
        stream.push_str(&g.to_digraph01());
    }
    write_or_print(out, &stream)?;
    Ok(0)
}

fn enumerate(which: EnumerateCmd) -> Result<i32> {
    match which {
        EnumerateCmd::C2Families {
            n,
            s,
            l,
            sample,
            seed,
            fix_first,
            build,
            out,
        } => {
            let space = PartitionFamilySpace::new(n, s, l)?;
            let indices: Vec<u128> = match sample {
                Some(count) => sample_indices(&space, seed, count, fix_first),
                None => {
                    const LIMIT: u128 = 1 << 20;
                    if space.len() > LIMIT {
                        return Err(Error::Parameter(format!(
                            "family space has {} members; use --sample",
                            space.len()
                        )));
                    }
                    (0..space.len()).collect()
                }
            };
            let mut stream = String::new();
            for idx in indices {
                let family = space.family(idx);
                match build {
                    None => {
                        stream.push_str(&io::family_to_json(&family));
                        stream.push('\n');
                    }
                    Some(v) => {
                        let g = match C2Variant::from(v) {
                            C2Variant::D1 => build_d1(&family)?,
                            C2Variant::D2 => build_d2(&family)?,
                        };
                        stream.push_str(&g.to_digraph01());
                    }
                }
            }
            write_or_print(out.as_deref(), &stream)?;
            Ok(0)
        }
        EnumerateCmd::C1Relaxed {
            r,
            q,
            sample,
            seed,
            out,
        } => {
            let total = b1_relaxed_space(r, q)?;
            let indices: Vec<u128> = match sample {
                Some(count) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..count).map(|_| rng.random_range(0..total)).collect()
                }
                None => {
                    const LIMIT: u128 = 1 << 20;
                    if total > LIMIT {
                        return Err(Error::Parameter(format!(
                            "choice space has {total} vectors; use --sample"
                        )));
                    }
                    (0..total).collect()
                }
            };
            let mut stream = String::new();
            for idx in indices {
                let g = build_c1_b1_relaxed(r, q, &b1_choices_from_index(r, q, idx))?;
                stream.push_str(&g.to_digraph01());
            }
            write_or_print(out.as_deref(), &stream)?;
            Ok(0)
        }
    }
}

/// Seeded family sampling. With `fix_first` the first point's partition is
/// pinned to shape 0; every relabeling class keeps a representative in that
/// slice, so certificate counts over it are still valid lower bounds.
pub fn sample_indices(
    space: &PartitionFamilySpace,
    seed: u64,
    count: usize,
    fix_first: bool,
) -> Vec<u128> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = space.choices_per_point() as u128;
    let total = space.len();
    (0..count)
        .map(|_| {
            if fix_first {
                rng.random_range(0..total / c) * c
            } else {
                rng.random_range(0..total)
            }
        })
        .collect()
}

/// Parse a stream of concatenated digraph01 blocks.
pub fn parse_digraph01_stream(text: &str) -> Result<Vec<Digraph>> {
    let mut graphs = Vec::new();
    let mut lines = text.lines().peekable();
    while let Some(header) = lines.next() {
        if header.trim().is_empty() {
            continue;
        }
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("bad vertex count line {header:?}")))?;
        let mut block = String::new();
        block.push_str(header);
        block.push('\n');
        for _ in 0..n {
            let row = lines
                .next()
                .ok_or_else(|| Error::Format("truncated digraph01 stream".into()))?;
            block.push_str(row);
            block.push('\n');
        }
        graphs.push(Digraph::parse_digraph01(&block)?);
    }
    Ok(graphs)
}

fn classify_cmd(input: &str, jobs: Option<usize>, out: Option<&Path>) -> Result<i32> {
    let jobs = jobs.unwrap_or_else(default_jobs);
    let graphs = if input == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Format(format!("reading stdin: {e}")))?;
        parse_digraph01_stream(&text)?
    } else {
        let path = Path::new(input);
        if path.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(path)
                .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|ext| ext == "d01"))
                .collect();
            files.sort();
            let mut graphs = Vec::new();
            for file in files {
                let text = std::fs::read_to_string(&file)
                    .map_err(|e| Error::Format(format!("{}: {e}", file.display())))?;
                graphs.extend(parse_digraph01_stream(&text)?);
            }
            graphs
        } else {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
            parse_digraph01_stream(&text)?
        }
    };
    if graphs.is_empty() {
        return Err(Error::Parameter("no graphs to classify".into()));
    }
    let report = classify_family(graphs, jobs);
    write_or_print(out, &(io::iso_report_to_json(&report) + "\n"))?;
    Ok(0)
}

fn orbits_cmd(n: usize, s: usize, l: usize, out: Option<&Path>) -> Result<i32> {
    let space = PartitionFamilySpace::new(n, s, l)?;
    const LIMIT: u128 = 1 << 20;
    if space.len() > LIMIT {
        return Err(Error::Parameter(format!(
            "family space has {} members; orbit analysis is for exhaustive desk-scale runs",
            space.len()
        )));
    }
    let families: Vec<_> = space.iter().collect();
    let orbits = orbits_under_point_relabeling(&families, n)?;
    write_or_print(out, &(io::orbits_to_json(&orbits) + "\n"))?;
    Ok(0)
}

fn scheme_cmd(file: &Path, out: Option<&Path>) -> Result<i32> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::Format(format!("{}: {e}", file.display())))?;
    let graph = Digraph::parse_digraph01(&text)?;
    let aut = automorphism_group(&graph);
    let name = recognize_group(&aut);
    if !aut.is_transitive() {
        println!(
            "automorphism group has order {} ({name}) but is not vertex-transitive; \
             no orbital scheme",
            aut.order()
        );
        return Ok(2);
    }
    let scheme = orbital_scheme(&aut)?;
    let mut fusion_lines = Vec::new();
    let c = scheme.class_count();
    if c <= 6 {
        for grouping in partitions_of_classes(c) {
            if grouping.len() == 1 || grouping.len() == c {
                continue;
            }
            if let FuseOutcome::Scheme(fused) = scheme.fuse(&grouping)? {
                fusion_lines.push(format!(
                    "feasible fusion {:?} -> {} classes",
                    grouping,
                    fused.class_count()
                ));
            }
        }
    }
    let mut report = String::new();
    let _ = writeln!(report, "automorphism group: order {} ({name})", aut.order());
    let _ = writeln!(
        report,
        "orbital scheme: {} nondiagonal classes, commutative: {}",
        c,
        scheme.is_commutative()
    );
    let _ = writeln!(
        report,
        "valencies: {:?}",
        (1..=c).map(|k| scheme.valency(k)).collect::<Vec<_>>()
    );
    report.push_str(&io::relation_grid_to_text(&scheme));
    for line in &fusion_lines {
        let _ = writeln!(report, "{line}");
    }
    write_or_print(out, &report)?;
    Ok(0)
}

/// All partitions of `{1..c}` into nonempty groups.
pub fn partitions_of_classes(c: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    fn rec(next: usize, c: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if next > c {
            out.push(current.clone());
            return;
        }
        for i in 0..current.len() {
            current[i].push(next);
            rec(next + 1, c, current, out);
            current[i].pop();
        }
        current.push(vec![next]);
        rec(next + 1, c, current, out);
        current.pop();
    }
    rec(1, c, &mut current, &mut out);
    out
}

struct Check {
    name: String,
    outcome: std::result::Result<String, String>,
}

fn check(name: &str, outcome: std::result::Result<String, String>) -> Check {
    Check {
        name: name.to_string(),
        outcome,
    }
}

fn expect_params(graph: &Digraph, expected: DsrgParams) -> std::result::Result<String, String> {
    match verify_dsrg(graph) {
        Ok(v) if v.params == expected => Ok(format!("verified {}", v.params)),
        Ok(v) => Err(format!("verified {} but expected {expected}", v.params)),
        Err(w) => Err(format!("verification failed: {w}")),
    }
}

/// The paper regression catalog: fixtures, worked examples, parameter
/// sweeps, the 243-family classification, and the scheme suite. Deterministic
/// across runs. Artifacts are written under `--out` when given.
fn catalog(out: Option<&Path>) -> Result<i32> {
    use crate::classify::are_isomorphic;

    let started = Instant::now();
    let mut checks: Vec<Check> = Vec::new();

    // fixture verification
    for (names, expected) in [
        (
            vec!["N1", "N2", "N3", "N4", "N5", "N6", "N7"],
            DsrgParams::new(12, 6, 4, 2, 4),
        ),
        (
            vec!["T1", "T2", "T3", "T4", "T5", "T6", "T7", "J8", "J9"],
            DsrgParams::new(10, 4, 2, 1, 2),
        ),
    ] {
        for name in names {
            let outcome = fixtures::load_fixture(name)
                .map_err(|e| e.to_string())
                .and_then(|g| expect_params(&g, expected));
            checks.push(check(&format!("fixture {name}"), outcome));
        }
    }

    // fixture automorphism groups
    let aut_expect: [(&str, u64, &str); 9] = [
        ("N1", 12, "D12"),
        ("N2", 8, "D8"),
        ("N3", 4, "C2×C2"),
        ("N4", 4, "C2×C2"),
        ("N5", 12, "D12"),
        ("N6", 24, "S4"),
        ("N7", 2, "C2"),
        ("T4", 20, "C5⋊C4"),
        ("J9", 1, "C1"),
    ];
    for (name, order, group_name) in aut_expect {
        let outcome = fixtures::load_fixture(name)
            .map_err(|e| e.to_string())
            .and_then(|g| {
                let aut = automorphism_group(&g);
                let recognized = recognize_group(&aut);
                if aut.order() == order as u128 && recognized == group_name {
                    Ok(format!("Aut order {order} ({group_name})"))
                } else {
                    Err(format!(
                        "Aut order {} ({recognized}), expected {order} ({group_name})",
                        aut.order()
                    ))
                }
            });
        checks.push(check(&format!("automorphisms of {name}"), outcome));
    }

    // Construction I, general mode
    checks.push(check(
        "construction I general defaults (r=2,q=5,a=2,b=2)",
        build_c1_general(2, 5, 2, 2)
            .map_err(|e| e.to_string())
            .and_then(|g| expect_params(&g, DsrgParams::new(100, 40, 18, 13, 18))),
    ));
    checks.push(check(
        "construction I general from the published 10-point design",
        build_c1_general_from(&fixtures::ten_point_design())
            .map_err(|e| e.to_string())
            .and_then(|g| expect_params(&g, DsrgParams::new(100, 40, 18, 13, 18))),
    ));

    // the b=1 parameter sweep (q, r) rows
    for (q, r) in [(3, 5), (3, 6), (3, 8), (3, 9), (3, 11), (3, 12), (5, 3), (6, 3)] {
        let expected =
            crate::construct1::expected_params_c1(C1Mode::B1, r, q, q - 1, 1).expect("params");
        let outcome = crate::construct1::build_c1_b1(r, q)
            .map_err(|e| e.to_string())
            .and_then(|g| expect_params(&g, expected));
        checks.push(check(&format!("construction I b=1 (q={q}, r={r})"), outcome));
    }
    // m = 2 blow-ups of two sweep rows
    for (q, r, expected) in [
        (3, 5, DsrgParams::new(90, 60, 44, 38, 44)),
        (3, 6, DsrgParams::new(108, 72, 52, 46, 52)),
    ] {
        let outcome = crate::construct1::build_c1_b1(r, q)
            .and_then(|g| blow_up(&g, C2Variant::D1, 2))
            .map_err(|e| e.to_string())
            .and_then(|g| expect_params(&g, expected));
        checks.push(check(
            &format!("construction I b=1 (q={q}, r={r}) m=2 blow-up"),
            outcome,
        ));
    }

    // orientation asymmetry of the 18-vertex example
    checks.push(check(
        "b=1 (r=2,q=3) graph is not isomorphic to its transpose",
        crate::construct1::build_c1_b1(2, 3)
            .map_err(|e| e.to_string())
            .and_then(|g| {
                expect_params(&g, DsrgParams::new(18, 12, 10, 7, 10))?;
                if are_isomorphic(&g, &g.transpose()).is_none() {
                    Ok("distinct from its transpose".into())
                } else {
                    Err("isomorphic to its transpose".into())
                }
            }),
    ));

    // a = 1 rows
    for (r, q, expected) in [
        (3, 2, DsrgParams::new(12, 6, 4, 2, 4)),
        (5, 2, DsrgParams::new(20, 10, 6, 4, 6)),
        (5, 3, DsrgParams::new(90, 30, 11, 8, 11)),
        (6, 3, DsrgParams::new(108, 36, 13, 10, 13)),
    ] {
        let outcome = build_c1_a1(r, q, &default_pi(r, q))
            .map_err(|e| e.to_string())
            .and_then(|built| expect_params(&built.graph, expected));
        checks.push(check(&format!("construction I a=1 (r={r}, q={q})"), outcome));
    }

    // the 64 relaxed six-point configurations and their classes
    checks.push(check("b=1 relaxed enumeration (r=3,q=2)", {
        (|| -> std::result::Result<String, String> {
            let total = b1_relaxed_space(3, 2).map_err(|e| e.to_string())?;
            if total != 64 {
                return Err(format!("{total} choice vectors, expected 64"));
            }
            let mut graphs = Vec::new();
            for idx in 0..total {
                let g = build_c1_b1_relaxed(3, 2, &b1_choices_from_index(3, 2, idx))
                    .map_err(|e| e.to_string())?;
                expect_params(&g, DsrgParams::new(12, 6, 4, 2, 4))?;
                graphs.push(g);
            }
            let report = classify_family(graphs, default_jobs());
            let mut sizes: Vec<usize> = report.classes.iter().map(|c| c.size()).collect();
            sizes.sort_unstable();
            if report.classes.len() != 7 {
                return Err(format!("{} classes, expected 7", report.classes.len()));
            }
            if sizes != vec![2, 4, 4, 6, 12, 12, 24] {
                return Err(format!("class sizes {sizes:?}"));
            }
            // the published closure count is 14, but one class (the one
            // matching the fifth published matrix) is self-transpose, so the
            // computed closure has 13 classes; see the acceptance suite
            if report.classes_with_transposes != 13 {
                return Err(format!(
                    "{} classes with transposes, computed closure should be 13",
                    report.classes_with_transposes
                ));
            }
            // every class representative is one of the published matrices
            for class in &report.classes {
                let matched = (1..=7).any(|i| {
                    let fixture = fixtures::load_fixture(&format!("N{i}")).expect("fixture");
                    are_isomorphic(&class.representative, &fixture).is_some()
                });
                if !matched {
                    return Err("class representative matches no published matrix".into());
                }
            }
            Ok("7 classes, sizes {4,6,12,12,4,2,24}, 13 with transposes \
                (one class is self-transpose; the published count 14 is not \
                reproducible)"
                .into())
        })()
    }));

    // the 243 five-point families and their classification
    checks.push(check("d=1 classification on 5 points", {
        (|| -> std::result::Result<String, String> {
            let space = PartitionFamilySpace::new(5, 2, 2).map_err(|e| e.to_string())?;
            if space.len() != 243 {
                return Err(format!("{} families, expected 243", space.len()));
            }
            let families: Vec<_> = space.iter().collect();
            let orbits =
                orbits_under_point_relabeling(&families, 5).map_err(|e| e.to_string())?;
            if orbits.len() != 7 {
                return Err(format!("{} orbits, expected 7", orbits.len()));
            }
            let mut graphs = Vec::new();
            for f in &families {
                let g = build_d1(f).map_err(|e| e.to_string())?;
                expect_params(&g, DsrgParams::new(10, 4, 2, 1, 2))?;
                graphs.push(g);
            }
            let report = classify_family(graphs, default_jobs());
            if report.classes.len() != 7 || report.classes_with_transposes != 13 {
                return Err(format!(
                    "{} classes / {} with transposes, expected 7 / 13",
                    report.classes.len(),
                    report.classes_with_transposes
                ));
            }
            Ok("243 families, 7 orbits, 13 graphs with transposes".into())
        })()
    }));

    // Construction II rows
    checks.push(check(
        "construction II D1 (n=5,s=2,l=2,d=1)",
        chunked_pointwise_family(5, 2, 2, 1)
            .and_then(|f| build_d1(&f))
            .map_err(|e| e.to_string())
            .and_then(|g| expect_params(&g, DsrgParams::new(10, 4, 2, 1, 2))),
    ));
    checks.push(check(
        "construction II D2 (n=5,s=2,l=2,d=1)",
        chunked_pointwise_family(5, 2, 2, 1)
            .and_then(|f| build_d2(&f))
            .map_err(|e| e.to_string())
            .and_then(|g| expect_params(&g, DsrgParams::new(10, 5, 3, 2, 3))),
    ));
    for (order, d1, d2) in [
        (2usize, DsrgParams::new(21, 6, 2, 1, 2), DsrgParams::new(21, 8, 4, 3, 3)),
        (3, DsrgParams::new(52, 12, 3, 2, 3), DsrgParams::new(52, 15, 6, 5, 4)),
    ] {
        let outcome = projective_plane_family(order)
            .map_err(|e| e.to_string())
            .and_then(|f| {
                let g1 = build_d1(&f).map_err(|e| e.to_string())?;
                expect_params(&g1, d1)?;
                let g2 = build_d2(&f).map_err(|e| e.to_string())?;
                expect_params(&g2, d2)?;
                Ok(format!("verified {d1} and {d2}"))
            });
        checks.push(check(&format!("projective plane order {order}"), outcome));
    }

    // scheme suite
    checks.push(check("orbital scheme of the vertex-transitive 10-vertex graph", {
        (|| -> std::result::Result<String, String> {
            let t4 = fixtures::load_fixture("T4").map_err(|e| e.to_string())?;
            let aut = automorphism_group(&t4);
            if aut.order() != 20 || !aut.is_transitive() {
                return Err(format!(
                    "Aut order {} transitive {}",
                    aut.order(),
                    aut.is_transitive()
                ));
            }
            let scheme = orbital_scheme(&aut).map_err(|e| e.to_string())?;
            if scheme.class_count() != 5 || scheme.is_commutative() {
                return Err("expected 5 noncommutative classes".into());
            }
            let (n, flat) = fixtures::t4_relation_table();
            let published =
                AssociationScheme::from_relation_matrix(n, &flat).map_err(|e| e.to_string())?;
            if !scheme.matches_up_to_relabeling(&published) {
                return Err("scheme differs from the published relation table".into());
            }
            let fused = published
                .fuse(&[vec![1, 3, 4], vec![2, 5]])
                .map_err(|e| e.to_string())?;
            match fused {
                FuseOutcome::Scheme(f) => {
                    let srg = verify_srg(&f.relation_digraph(1).symmetrize())
                        .map_err(|e| e.to_string())?;
                    if (srg.v, srg.k, srg.lambda, srg.mu) != (10, 6, 3, 4) {
                        return Err(format!("fused relation graph is SRG {srg}"));
                    }
                }
                FuseOutcome::Infeasible { witness, .. } => {
                    return Err(format!("published fusion infeasible at {witness:?}"))
                }
            }
            match published
                .relation_decomposition(&t4)
                .map_err(|e| e.to_string())?
            {
                DecompositionOutcome::Classes(set) => {
                    let classes: Vec<usize> = set.into_iter().collect();
                    if classes != vec![1, 3] {
                        return Err(format!("edge set decomposes as {classes:?}"));
                    }
                }
                DecompositionOutcome::Mismatch { detail, .. } => return Err(detail),
            }
            Ok("5-class non-commutative scheme matching the published table".into())
        })()
    }));

    // report
    let mut failures = 0;
    let mut artifact = String::new();
    for c in &checks {
        match &c.outcome {
            Ok(detail) => {
                println!("ok   {} — {detail}", c.name);
                let _ = writeln!(artifact, "ok   {} — {detail}", c.name);
            }
            Err(detail) => {
                failures += 1;
                println!("FAIL {} — {detail}", c.name);
                let _ = writeln!(artifact, "FAIL {} — {detail}", c.name);
            }
        }
    }
    println!(
        "{} checks, {} failures, {:.1}s",
        checks.len(),
        failures,
        started.elapsed().as_secs_f64()
    );
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Format(format!("{}: {e}", dir.display())))?;
        std::fs::write(dir.join("catalog.txt"), artifact)
            .map_err(|e| Error::Format(format!("writing catalog report: {e}")))?;
    }
    Ok(if failures == 0 { 0 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_partitions_count_is_bell() {
        assert_eq!(partitions_of_classes(3).len(), 5);
        assert_eq!(partitions_of_classes(5).len(), 52);
    }

    #[test]
    fn pi_parsing_is_one_based() {
        assert_eq!(parse_pi("1,2,1,2", 4).unwrap(), vec![0, 1, 0, 1]);
        assert!(parse_pi("0,1,1,1", 4).is_err());
        assert!(parse_pi("1,2", 4).is_err());
    }

    #[test]
    fn stream_parsing_handles_multiple_blocks() {
        let g = Digraph::from_matrix(2, &[0, 1, 1, 0]).unwrap();
        let mut text = g.to_digraph01();
        text.push_str(&g.to_digraph01());
        let graphs = parse_digraph01_stream(&text).unwrap();
        assert_eq!(graphs.len(), 2);
    }
}
