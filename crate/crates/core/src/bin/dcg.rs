//! Command-line front end: build groups and digraphs, recognize wreath
//! structure, compute automorphism groups, test isomorphism, and run the
//! verification suites. Output is deterministic given the arguments,
//! input files, and seed.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dcg_core::autiso::{
    aut_bruteforce_limited, aut_coset_structural_limited, coset_iso_limited, SearchLimits,
};
use dcg_core::construct::{
    cayley, coset_digraph, coset_via_quotient, enumerate_correspondence, validate_connection,
    CayleySpec, CensusMode, CosetSpec,
};
use dcg_core::digraph::{to_dot, Digraph, VertexPartition};
use dcg_core::error::Error;
use dcg_core::genwreath::{generalized_witnesses, genwreath_lower_bound};
use dcg_core::group::{subgroups, Group, Subgroup};
use dcg_core::recognize::{maximal_witness, wreath_witnesses};
use dcg_core::sampling::DEFAULT_SEED;
use dcg_core::{fixtures, json, verify};

/// Print a line, treating a closed pipe as a normal early exit.
fn out_line(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if writeln!(stdout, "{args}").is_err() {
        std::process::exit(0);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { out_line(format_args!($($arg)*)) };
}

#[derive(Parser)]
#[command(
    name = "dcg",
    about = "Double coset digraphs and Cayley digraphs of finite groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AutChoice {
    Brute,
    Structural,
    Both,
}

#[derive(Args)]
struct GroupInput {
    /// Path to a group JSON file, or the name of a bundled fixture
    /// (trivial, z2..z12, z2xz2, z4xz2, z2xz2xz2, s3, d4, d5, d6, q8, a4).
    #[arg(short = 'g', long = "group")]
    group: String,
}

#[derive(Args)]
struct Caps {
    /// Vertex cap for the exhaustive searches.
    #[arg(long, default_value_t = 64)]
    max_vertices: usize,
    /// Node budget for backtracking searches.
    #[arg(long, default_value_t = 50_000_000)]
    node_budget: u64,
}

impl Caps {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_vertices: self.max_vertices,
            node_budget: self.node_budget,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate and inspect a group; print it in canonical form.
    Group {
        #[command(flatten)]
        group: GroupInput,
        #[arg(short = 'o', long = "out", value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
        /// Also list all subgroups (small groups only).
        #[arg(long)]
        subgroups: bool,
    },
    /// Build the Cayley digraph Cay(G, S).
    Cayley {
        #[command(flatten)]
        group: GroupInput,
        /// Connection set, comma-separated element indices (may be empty).
        #[arg(long = "S", default_value = "")]
        conn: String,
        #[arg(short = 'o', long = "out", value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
    },
    /// Build the double coset digraph Cos(G, H, S).
    Coset {
        #[command(flatten)]
        group: GroupInput,
        /// Subgroup H, comma-separated element indices.
        #[arg(long = "H", default_value = "0")]
        subgroup: String,
        #[arg(long = "S", default_value = "")]
        conn: String,
        #[arg(short = 'o', long = "out", value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
        /// Also check the quotient realization and report the diagnostics.
        #[arg(long)]
        diagnostics: bool,
    },
    /// Find wreath witnesses and the maximal decomposition of Cos(G,H,S).
    Recognize {
        #[command(flatten)]
        group: GroupInput,
        #[arg(long = "H", default_value = "0")]
        subgroup: String,
        #[arg(long = "S", default_value = "")]
        conn: String,
    },
    /// Automorphism group of Cos(G,H,S) (Cayley digraph when H = {0}).
    Aut {
        #[command(flatten)]
        group: GroupInput,
        #[arg(long = "H", default_value = "0")]
        subgroup: String,
        #[arg(long = "S", default_value = "")]
        conn: String,
        #[arg(long, value_enum, default_value_t = AutChoice::Both)]
        method: AutChoice,
        #[command(flatten)]
        caps: Caps,
    },
    /// Isomorphism test between two specification files (coset specs with
    /// fields group/H/S, or raw digraphs with fields n/arcs).
    Iso {
        first: String,
        second: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Generalized wreath witnesses and the certified automorphism bound.
    Genwreath {
        #[command(flatten)]
        group: GroupInput,
        #[arg(long = "H", default_value = "0")]
        subgroup: String,
        #[arg(long = "S", default_value = "")]
        conn: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Census of connection sets: reducibility, stabilizers, and the
    /// unique-representative pairing. One JSON record per line.
    Census {
        #[command(flatten)]
        group: GroupInput,
        /// Sample size for groups with more than 8 elements.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run a verification suite and print one pass/fail line per criterion.
    Verify {
        /// Suite name or "all".
        #[arg(long)]
        suite: String,
        /// Restrict the suite to one fixture group by name.
        #[arg(short = 'g', long = "group")]
        group: Option<String>,
    },
}

fn load_group(arg: &str) -> Result<Group, Error> {
    if std::path::Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).map_err(|e| Error::ParseError {
            detail: format!("{arg}: {e}"),
        })?;
        return json::group_from_json(&text).map(|(g, _)| g);
    }
    fixtures::by_name(arg).ok_or_else(|| Error::ParseError {
        detail: format!("{arg}: not a file and not a fixture name"),
    })
}

fn parse_indices(text: &str) -> Result<Vec<usize>, Error> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(part.parse::<usize>().map_err(|e| Error::ParseError {
            detail: format!("bad element index '{part}': {e}"),
        })?);
    }
    Ok(out)
}

fn make_spec(group: &str, subgroup: &str, conn: &str) -> Result<CosetSpec, Error> {
    let g = load_group(group)?;
    let h = Subgroup::new(&g, &parse_indices(subgroup)?)?;
    CosetSpec::new(g, h, &parse_indices(conn)?)
}

fn emit_digraph(d: &Digraph, out: OutputFormat, clusters: Option<&VertexPartition>, name: &str) {
    match out {
        OutputFormat::Json => out!("{}", json::digraph_to_json(d)),
        OutputFormat::Dot => out!("{}", to_dot(d, clusters, name).trim_end()),
        OutputFormat::Table => {
            out!("vertices: {}", d.vertex_count());
            out!("arcs: {}", d.arc_count());
            for (u, v) in d.arcs() {
                out!("{u} -> {v}");
            }
        }
    }
}

#[derive(Serialize)]
struct AutOut {
    order: String,
    method: String,
    degree: usize,
    generators: Vec<Vec<usize>>,
    derivation: Vec<String>,
}

fn aut_to_out(r: &dcg_core::autiso::AutResult) -> AutOut {
    AutOut {
        order: r.group.order().to_string(),
        method: match r.method {
            dcg_core::autiso::AutMethod::Brute => "brute".into(),
            dcg_core::autiso::AutMethod::Structural => "structural".into(),
        },
        degree: r.group.degree(),
        generators: r
            .group
            .generators()
            .iter()
            .map(|p| p.images().to_vec())
            .collect(),
        derivation: r.derivation.clone(),
    }
}

/// Accept a fixture name directly, or a group file whose table matches a
/// bundled fixture (up to isomorphism), and return the fixture name the
/// verification suites filter on.
fn resolve_fixture_name(arg: &str) -> Result<String, Error> {
    if fixtures::by_name(arg).is_some() {
        return Ok(arg.to_string());
    }
    let loaded = load_group(arg)?;
    for (name, g) in fixtures::all() {
        if g == loaded || dcg_core::group::group_isomorphism(&g, &loaded).is_some() {
            return Ok(name.to_string());
        }
    }
    Err(Error::ParseError {
        detail: format!("{arg}: group does not match any bundled fixture"),
    })
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Group {
            group,
            out,
            subgroups: list_subgroups,
        } => {
            let g = load_group(&group.group)?;
            match out {
                OutputFormat::Json => out!("{}", json::group_to_json(&g)),
                OutputFormat::Dot => {
                    return Err(Error::ParseError {
                        detail: "groups have no DOT form; use -o json or -o table".into(),
                    })
                }
                OutputFormat::Table => {
                    out!("order: {}", g.order());
                    for row in g.table_rows() {
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        out!("{}", cells.join(" "));
                    }
                    if let Some(labels) = g.labels() {
                        out!("labels: {}", labels.join(", "));
                    }
                }
            }
            if list_subgroups {
                for s in subgroups(&g)? {
                    out!("subgroup: {:?}", s.members());
                }
            }
            Ok(())
        }
        Command::Cayley { group, conn, out } => {
            let g = load_group(&group.group)?;
            let spec = CayleySpec::new(g, &parse_indices(&conn)?)?;
            emit_digraph(&cayley(&spec), out, None, "cayley");
            Ok(())
        }
        Command::Coset {
            group,
            subgroup,
            conn,
            out,
            diagnostics,
        } => {
            let spec = make_spec(&group.group, &subgroup, &conn)?;
            let d = coset_digraph(&spec);
            if diagnostics {
                let report = validate_connection(&spec.group, &spec.subgroup, &spec.conn)?;
                let (via_quotient, refines) = coset_via_quotient(&spec)?;
                #[derive(Serialize)]
                struct Diag {
                    connection: dcg_core::construct::ConnectionReport,
                    quotient_matches: bool,
                    cosets_refine_twins: bool,
                }
                out!(
                    "{}",
                    serde_json::to_string(&Diag {
                        connection: report,
                        quotient_matches: via_quotient == d,
                        cosets_refine_twins: refines,
                    })
                    .unwrap()
                );
            }
            emit_digraph(&d, out, None, "coset");
            Ok(())
        }
        Command::Recognize {
            group,
            subgroup,
            conn,
        } => {
            let spec = make_spec(&group.group, &subgroup, &conn)?;
            let witnesses = wreath_witnesses(&spec.group, &spec.subgroup, &spec.conn)?;
            let report = maximal_witness(&spec.group, &spec.subgroup, &spec.conn)?;
            #[derive(Serialize)]
            struct RecognizeOut {
                witnesses: Vec<Vec<usize>>,
                ambiguous_maximal: bool,
                decomposition: Option<DecompositionOut>,
            }
            #[derive(Serialize)]
            struct DecompositionOut {
                witness: Vec<usize>,
                head_group_order: usize,
                head_conn: Vec<usize>,
                tail_group_order: usize,
                tail_conn: Vec<usize>,
                alignment: Vec<usize>,
            }
            let out = RecognizeOut {
                witnesses: witnesses.iter().map(|w| w.members().to_vec()).collect(),
                ambiguous_maximal: report.ambiguous,
                decomposition: report.decomposition.map(|dec| DecompositionOut {
                    witness: dec.witness.members().to_vec(),
                    head_group_order: dec.head.group.order(),
                    head_conn: dec.head.conn.clone(),
                    tail_group_order: dec.tail.group.order(),
                    tail_conn: dec.tail.conn.clone(),
                    alignment: dec.alignment,
                }),
            };
            out!("{}", serde_json::to_string(&out).unwrap());
            Ok(())
        }
        Command::Aut {
            group,
            subgroup,
            conn,
            method,
            caps,
        } => {
            let spec = make_spec(&group.group, &subgroup, &conn)?;
            let limits = caps.limits();
            let d = coset_digraph(&spec);
            #[derive(Serialize)]
            struct Out {
                brute: Option<AutOut>,
                structural: Option<AutOut>,
                orders_match: Option<bool>,
            }
            let brute = match method {
                AutChoice::Brute | AutChoice::Both => Some(aut_bruteforce_limited(&d, &limits)?),
                AutChoice::Structural => None,
            };
            let structural = match method {
                AutChoice::Structural | AutChoice::Both => Some(aut_coset_structural_limited(
                    &spec.group,
                    &spec.subgroup,
                    &spec.conn,
                    &limits,
                )?),
                AutChoice::Brute => None,
            };
            let orders_match = match (&brute, &structural) {
                (Some(b), Some(s)) => Some(b.group.order() == s.group.order()),
                _ => None,
            };
            let out = Out {
                brute: brute.as_ref().map(aut_to_out),
                structural: structural.as_ref().map(aut_to_out),
                orders_match,
            };
            out!("{}", serde_json::to_string(&out).unwrap());
            if orders_match == Some(false) {
                return Err(Error::internal("brute and structural orders differ"));
            }
            Ok(())
        }
        Command::Iso {
            first,
            second,
            caps,
        } => {
            let limits = caps.limits();
            let read = |path: &str| -> Result<String, Error> {
                std::fs::read_to_string(path).map_err(|e| Error::ParseError {
                    detail: format!("{path}: {e}"),
                })
            };
            let a = read(&first)?;
            let b = read(&second)?;
            #[derive(Serialize)]
            struct IsoOut {
                isomorphic: bool,
                route: String,
                mapping: Option<Vec<usize>>,
            }
            let out = if a.contains("\"arcs\"") && b.contains("\"arcs\"") {
                let d1 = json::digraph_from_json(&a)?;
                let d2 = json::digraph_from_json(&b)?;
                let cert = dcg_core::autiso::iso_bruteforce_limited(&d1, &d2, &limits)?;
                IsoOut {
                    isomorphic: cert.is_some(),
                    route: "digraph backtracking".into(),
                    mapping: cert.map(|c| c.mapping),
                }
            } else {
                let spec1 = json::coset_spec_from_json(&a)?;
                let spec2 = json::coset_spec_from_json(&b)?;
                let result = coset_iso_limited(&spec1, &spec2, &limits)?;
                IsoOut {
                    isomorphic: result.certificate.is_some(),
                    route: result.route,
                    mapping: result.certificate.map(|c| c.mapping),
                }
            };
            out!("{}", serde_json::to_string(&out).unwrap());
            Ok(())
        }
        Command::Genwreath {
            group,
            subgroup,
            conn,
            caps,
        } => {
            let spec = make_spec(&group.group, &subgroup, &conn)?;
            let limits = caps.limits();
            let witnesses = generalized_witnesses(&spec.group, &spec.subgroup, &spec.conn)?;
            #[derive(Serialize)]
            struct WitnessOut {
                k: Vec<usize>,
                l: Vec<usize>,
                plain_wreath: bool,
                inner_conn: Vec<usize>,
                outer_conn: Vec<usize>,
                bound: Option<dcg_core::genwreath::BoundReport>,
            }
            let mut outs = Vec::new();
            let mut seen_l = std::collections::BTreeSet::new();
            for w in &witnesses {
                let bound = if seen_l.insert(w.l.members().to_vec()) {
                    Some(
                        genwreath_lower_bound(
                            &spec.group,
                            &spec.subgroup,
                            &spec.conn,
                            w,
                            &limits,
                            200_000,
                        )?
                        .1,
                    )
                } else {
                    None
                };
                outs.push(WitnessOut {
                    k: w.k.members().to_vec(),
                    l: w.l.members().to_vec(),
                    plain_wreath: w.plain_wreath,
                    inner_conn: w.inner.conn.clone(),
                    outer_conn: w.outer.conn.clone(),
                    bound,
                });
            }
            out!("{}", serde_json::to_string(&outs).unwrap());
            Ok(())
        }
        Command::Census {
            group,
            samples,
            seed,
        } => {
            let g = load_group(&group.group)?;
            let mode = if g.order() <= 8 {
                CensusMode::Exhaustive
            } else {
                CensusMode::Sampled {
                    count: samples,
                    seed,
                    symmetric_closures: true,
                }
            };
            let census = enumerate_correspondence(&g, &mode)?;
            for record in &census.records {
                out!("{}", serde_json::to_string(record).unwrap());
            }
            #[derive(Serialize)]
            struct Summary {
                group_order: usize,
                records: usize,
                injective: bool,
                image_equals_reducible: bool,
            }
            out!(
                "{}",
                serde_json::to_string(&Summary {
                    group_order: census.group_order,
                    records: census.records.len(),
                    injective: census.injective,
                    image_equals_reducible: census.image_equals_reducible,
                })
                .unwrap()
            );
            Ok(())
        }
        Command::Verify { suite, group } => {
            let filter = group.map(|arg| resolve_fixture_name(&arg)).transpose()?;
            let Some(reports) = verify::run_suite(&suite, filter.as_deref()) else {
                return Err(Error::ParseError {
                    detail: format!(
                        "unknown suite '{suite}'; available: {}, all",
                        verify::suite_names().join(", ")
                    ),
                });
            };
            let mut all_pass = true;
            for r in &reports {
                all_pass &= r.pass;
                out!("{}", serde_json::to_string(r).unwrap());
            }
            if !all_pass {
                return Err(Error::internal("verification suite failed"));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(1))
        }
    }
}
