//! Command-line front door: classification queries, word problems, twist
//! actions and orbits, the built-in D4/A3 verification suites, Lambda_k
//! reports and Picard arithmetic.
//!
//! Exit codes: 0 success or a true answer, 1 false answer or refutation,
//! 2 usage error, 3 computational error (insufficient window, invalid
//! input data and the like).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sphtwist::groups::{self, GroupSpec, GroupWord, NormalBody};
use sphtwist::lambda;
use sphtwist::mesh::{build_mesh, Diagram, MeshModel, Vertex, Window};
use sphtwist::picard;
use sphtwist::suites;
use sphtwist::twist::{self, QuiverAutomorphism};
use sphtwist::{Document, MeshConfig};

#[derive(Parser)]
#[command(name = "sphtwist", version, about = "Spherical twist group toolkit")]
struct Cli {
    /// Output mode: human text or a machine-readable key-value dump.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the group generated by two twists from (k, m, k', m', hom).
    Classify(ClassifyArgs),
    /// Word problems: normal forms and equality.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Mesh category queries.
    Mesh {
        #[command(subcommand)]
        cmd: MeshCmd,
    },
    /// Twist actions over a config file.
    Twist {
        #[command(subcommand)]
        cmd: TwistCmd,
    },
    /// Run a built-in example suite.
    Verify(VerifyArgs),
    /// Algebra reports.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Derived Picard group arithmetic for Lambda_k.
    Picard {
        #[command(subcommand)]
        cmd: PicardCmd,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    /// Length of the first sequence.
    #[arg(long)]
    k: u64,
    /// Sphericity of the first sequence.
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    /// Length of the second sequence.
    #[arg(long)]
    kp: u64,
    /// Sphericity of the second sequence.
    #[arg(long, allow_hyphen_values = true)]
    mp: i64,
    /// Total hom dimension between the sequences.
    #[arg(long)]
    hom: u64,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Canonical normal form of a word.
    Nf { spec: String, word: String },
    /// Equality of two words (exit 0 when equal, 1 otherwise).
    Eq {
        spec: String,
        left: String,
        right: String,
    },
}

#[derive(Subcommand)]
enum MeshCmd {
    /// Hom dimension between two vertices of the mesh category.
    Hom {
        /// Diagram: d4 or a<N>.
        #[arg(long)]
        diagram: String,
        /// Window bounds.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        window: Vec<i64>,
        /// Source vertex "(row,pos)".
        x: String,
        /// Target vertex "(row,pos)".
        y: String,
        /// Also run the path-space oracle and cross-check.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Args)]
struct ConfigArgs {
    /// Path to a structured text config (diagram, window, sequences).
    #[arg(long)]
    config: std::path::PathBuf,
    /// Sequence names bound to the generators s1, s2, ... (defaults to the
    /// config order).
    #[arg(long, num_args = 1..)]
    gens: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum TwistCmd {
    /// Apply a word in the twists to a vertex.
    Act {
        #[command(flatten)]
        config: ConfigArgs,
        /// Word over s1, s2, ...
        #[arg(long)]
        word: String,
        /// Vertex "(row,pos)" to act on.
        #[arg(long)]
        on: String,
    },
    /// Explore the orbit of the sequence classes.
    Orbit {
        #[command(flatten)]
        config: ConfigArgs,
        /// Exploration depth.
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Check whether two words act identically on the window.
    VerifyRelation {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite: d4 or a3.
    which: String,
    /// Window bounds (defaults to [-12, 12]).
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
    window: Option<Vec<i64>>,
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Report on the selfinjective algebra Lambda_k.
    Lambda {
        #[arg(long)]
        k: u64,
        /// Action: info.
        action: String,
    },
}

#[derive(Subcommand)]
enum PicardCmd {
    /// Canonical form of one element "[word ; shift ; nak ; unit]".
    Nf {
        #[arg(long)]
        k: u64,
        element: String,
    },
    /// Equality of two elements (exit 0 when equal, 1 otherwise).
    Eq {
        #[arg(long)]
        k: u64,
        left: String,
        right: String,
    },
}

/// A false answer or a refutation: exit code 1.
struct Negative;

enum Failure {
    /// Computational error: exit code 3.
    Computational(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Computational(e.to_string())
    }
}

type Outcome = Result<Result<String, Negative>, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Ok(report)) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Ok(Err(Negative)) => ExitCode::from(1),
        Err(Failure::Computational(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify(args) => classify(cli.format, args),
        Command::Group { cmd } => group(cli.format, cmd),
        Command::Mesh { cmd } => mesh(cli.format, cmd),
        Command::Twist { cmd } => twist_cmd(cli.format, cmd),
        Command::Verify(args) => verify(cli.format, args),
        Command::Algebra { cmd } => algebra(cli.format, cmd),
        Command::Picard { cmd } => picard_cmd(cli.format, cmd),
    }
}

fn classify(format: Format, args: &ClassifyArgs) -> Outcome {
    let desc = groups::classify_twist_group(args.k, args.m, args.kp, args.mp, args.hom)?;
    let out = match format {
        Format::Text => format!("{desc}\n{}\n", desc.notes()),
        Format::Structured => {
            let mut doc = Document::new();
            doc.push_value("result", &desc);
            doc.push("notes", desc.notes().split_whitespace().map(String::from));
            doc.to_text()
        }
    };
    Ok(Ok(out))
}

fn group(format: Format, cmd: &GroupCmd) -> Outcome {
    match cmd {
        GroupCmd::Nf { spec, word } => {
            let spec: GroupSpec = spec.parse()?;
            let word: GroupWord = word.parse()?;
            let nf = groups::normal_form(&word, spec)?;
            let out = match format {
                Format::Text => format!("{nf}\nlift: {}\n", nf.lift()),
                Format::Structured => {
                    let mut doc = Document::new();
                    doc.push_value("spec", spec);
                    doc.push_value("center_exponent", nf.center_exponent);
                    match &nf.body {
                        NormalBody::Free(_) | NormalBody::Syllables(_) | NormalBody::Coset(_) => {
                            doc.push("body", format!("{nf}").split_whitespace().map(String::from));
                        }
                        NormalBody::Pair(a, b) => {
                            doc.push("body", [a.to_string(), b.to_string()]);
                        }
                    }
                    doc.push("lift", nf.lift().to_string().split_whitespace().map(String::from));
                    doc.to_text()
                }
            };
            Ok(Ok(out))
        }
        GroupCmd::Eq { spec, left, right } => {
            let spec: GroupSpec = spec.parse()?;
            let l: GroupWord = left.parse()?;
            let r: GroupWord = right.parse()?;
            if groups::are_equal(&l, &r, spec)? {
                Ok(Ok(match format {
                    Format::Text => "equal\n".to_string(),
                    Format::Structured => "equal = true\n".to_string(),
                }))
            } else {
                Ok(Err(Negative))
            }
        }
    }
}

fn parse_window(tokens: &[i64]) -> Window {
    Window::new(tokens[0], tokens[1])
}

fn mesh(format: Format, cmd: &MeshCmd) -> Outcome {
    match cmd {
        MeshCmd::Hom {
            diagram,
            window,
            x,
            y,
            oracle,
        } => {
            let diagram: Diagram = diagram.parse()?;
            let model = build_mesh(diagram, parse_window(window))?;
            let x: Vertex = x.parse()?;
            let y: Vertex = y.parse()?;
            let dim = model.hom_dim(x, y)?;
            let mut oracle_line = String::new();
            if *oracle {
                let od = model.hom_dim_oracle(x, y)?;
                if od != dim {
                    return Err(Failure::Computational(format!(
                        "knitting gives {dim} but the path-space oracle gives {od}"
                    )));
                }
                oracle_line = match format {
                    Format::Text => format!("oracle agrees: {od}\n"),
                    Format::Structured => format!("oracle = {od}\n"),
                };
            }
            let out = match format {
                Format::Text => format!("dim Hom({x}, {y}) = {dim}\n{oracle_line}"),
                Format::Structured => format!("dim = {dim}\n{oracle_line}"),
            };
            Ok(Ok(out))
        }
    }
}

struct TwistSetup {
    config: MeshConfig,
    model: MeshModel,
    gens: BTreeMap<u8, QuiverAutomorphism>,
    labels: Vec<String>,
}

fn load_setup(args: &ConfigArgs) -> Result<TwistSetup, Failure> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Failure::Computational(format!("{}: {e}", args.config.display())))?;
    let config = MeshConfig::parse(&text)?;
    let model = config.build_model()?;
    let names: Vec<String> = match &args.gens {
        Some(list) => list.clone(),
        None => config.sequences.iter().map(|(n, _)| n.clone()).collect(),
    };
    if names.is_empty() {
        return Err(Failure::Computational(
            "config declares no sequences".to_string(),
        ));
    }
    if names.len() > 3 {
        return Err(Failure::Computational(
            "at most three generators are supported".to_string(),
        ));
    }
    let mut gens = BTreeMap::new();
    for (i, name) in names.iter().enumerate() {
        let spec = config
            .sequence(name)
            .ok_or_else(|| Failure::Computational(format!("no sequence named {name:?}")))?;
        let auto = twist::derive_automorphism(&model, spec)?;
        gens.insert((i + 1) as u8, auto);
    }
    Ok(TwistSetup {
        config,
        model,
        gens,
        labels: names,
    })
}

fn twist_cmd(format: Format, cmd: &TwistCmd) -> Outcome {
    match cmd {
        TwistCmd::Act { config, word, on } => {
            let setup = load_setup(config)?;
            let word: GroupWord = word.parse()?;
            let vertex: Vertex = on.parse()?;
            let action = twist::word_action(&setup.model, &word, &setup.gens)?;
            let image = action.apply(vertex).ok_or_else(|| {
                Failure::Computational(format!(
                    "vertex {vertex} left the window under this word"
                ))
            })?;
            let out = match format {
                Format::Text => format!("{word} . {vertex} = {image}\n"),
                Format::Structured => format!("image = {image}\n"),
            };
            Ok(Ok(out))
        }
        TwistCmd::Orbit { config, depth } => {
            let setup = load_setup(config)?;
            let seeds: Vec<twist::SphClass> = setup
                .labels
                .iter()
                .map(|name| {
                    let spec = setup.config.sequence(name).expect("validated in load_setup");
                    twist::sph_class(&setup.model, &spec.members)
                })
                .collect();
            let labeled: Vec<(String, QuiverAutomorphism)> = setup
                .gens
                .iter()
                .map(|(i, a)| (format!("s{i}"), a.clone()))
                .collect();
            let orbit = twist::orbit_sph(&setup.model, &labeled, &seeds, *depth)?;
            let out = match format {
                Format::Text => {
                    let mut s = String::new();
                    for (i, class) in orbit.classes.iter().enumerate() {
                        writeln!(s, "class {i}: {class} (depth {})", orbit.depths[i]).unwrap();
                    }
                    for e in &orbit.edges {
                        let dir = if e.direction > 0 { "" } else { "^-1" };
                        writeln!(s, "  {} --{}{dir}--> {}", e.from, e.generator, e.to).unwrap();
                    }
                    writeln!(s, "{} classes, {} edges", orbit.len(), orbit.edges.len()).unwrap();
                    s
                }
                Format::Structured => {
                    let mut doc = Document::new();
                    doc.push_value("classes", orbit.len());
                    for (i, class) in orbit.classes.iter().enumerate() {
                        doc.push(
                            &format!("class.{i}"),
                            class.residues.iter().map(|(r, p)| format!("({r},{p})")),
                        );
                        doc.push_value(&format!("class.{i}.depth"), orbit.depths[i]);
                    }
                    for e in &orbit.edges {
                        doc.push(
                            "edge",
                            [
                                e.from.to_string(),
                                e.generator.clone(),
                                e.direction.to_string(),
                                e.to.to_string(),
                            ],
                        );
                    }
                    doc.to_text()
                }
            };
            Ok(Ok(out))
        }
        TwistCmd::VerifyRelation { config, lhs, rhs } => {
            let setup = load_setup(config)?;
            let lhs: GroupWord = lhs.parse()?;
            let rhs: GroupWord = rhs.parse()?;
            let min = twist::default_min_domain(&setup.model);
            if twist::verify_relation(&setup.model, &lhs, &rhs, &setup.gens, min)? {
                Ok(Ok(match format {
                    Format::Text => "relation holds on the window\n".to_string(),
                    Format::Structured => "holds = true\n".to_string(),
                }))
            } else {
                Ok(Err(Negative))
            }
        }
    }
}

fn verify(format: Format, args: &VerifyArgs) -> Outcome {
    let window = match &args.window {
        Some(w) => parse_window(w),
        None => Window::new(-12, 12),
    };
    let report = match args.which.as_str() {
        "d4" => suites::verify_d4(window),
        "a3" => suites::verify_a3(window),
        other => {
            return Err(Failure::Computational(format!(
                "unknown suite {other:?}: expected d4 or a3"
            )))
        }
    };
    let out = match format {
        Format::Text => format!("{report}\n"),
        Format::Structured => {
            let mut doc = Document::new();
            doc.push_value("suite", &args.which);
            doc.push_value("passed", report.passed());
            for c in &report.checks {
                doc.push(
                    "check",
                    [if c.passed { "pass" } else { "fail" }.to_string()]
                        .into_iter()
                        .chain(c.name.split_whitespace().map(String::from)),
                );
            }
            doc.to_text()
        }
    };
    if report.passed() {
        Ok(Ok(out))
    } else {
        print!("{out}");
        Ok(Err(Negative))
    }
}

fn algebra(format: Format, cmd: &AlgebraCmd) -> Outcome {
    match cmd {
        AlgebraCmd::Lambda { k, action } => {
            if action != "info" {
                return Err(Failure::Computational(format!(
                    "unknown action {action:?}: expected info"
                )));
            }
            let model = lambda::build_lambda(*k)?;
            let nu = lambda::nakayama(&model)?;
            let data = lambda::spherical_data(&model)?;
            let cartan = model.cartan_matrix();
            let vertices = model.vertices();
            let out = match format {
                Format::Text => {
                    let mut s = String::new();
                    writeln!(s, "Lambda_{k}: dimension {}", model.dimension()).unwrap();
                    writeln!(s, "Nakayama automorphism order: {}", nu.order()).unwrap();
                    writeln!(s, "relations vanish: {}", model.relations_vanish()).unwrap();
                    writeln!(
                        s,
                        "spherical sequences: E of length {} and E' of length {}, (a, a') = ({}, {})",
                        data.e.length(),
                        data.ep.length(),
                        data.a_e_ep,
                        data.a_ep_e
                    )
                    .unwrap();
                    writeln!(s, "Cartan matrix (rows bar0..bar{}, 0..{}):", k - 1, 3 * k - 1)
                        .unwrap();
                    for (i, row) in cartan.iter().enumerate() {
                        let cells: Vec<String> = row.iter().map(|d| d.to_string()).collect();
                        writeln!(s, "  {:>6} | {}", vertices[i].to_string(), cells.join(" "))
                            .unwrap();
                    }
                    s
                }
                Format::Structured => {
                    let mut doc = Document::new();
                    doc.push_value("k", k);
                    doc.push_value("dimension", model.dimension());
                    doc.push_value("nakayama_order", nu.order());
                    doc.push_value("a_e_ep", data.a_e_ep);
                    doc.push_value("a_ep_e", data.a_ep_e);
                    for (i, row) in cartan.iter().enumerate() {
                        doc.push(
                            &format!("cartan.{}", vertices[i]),
                            row.iter().map(|d| d.to_string()),
                        );
                    }
                    doc.to_text()
                }
            };
            Ok(Ok(out))
        }
    }
}

fn picard_cmd(format: Format, cmd: &PicardCmd) -> Outcome {
    match cmd {
        PicardCmd::Nf { k, element } => {
            let el = picard::parse_element(*k, element)?;
            let nf = picard::pic_normal_form(&el)?;
            let out = match format {
                Format::Text => format!("{nf}\n"),
                Format::Structured => {
                    let mut doc = Document::new();
                    doc.push_value("k", k);
                    doc.push(
                        "braid",
                        nf.braid.to_string().split_whitespace().map(String::from),
                    );
                    doc.push_value("shift", nf.shift);
                    doc.push_value("nakayama", nf.nakayama);
                    doc.push(
                        "unit",
                        nf.unit.to_string().split_whitespace().map(String::from),
                    );
                    doc.to_text()
                }
            };
            Ok(Ok(out))
        }
        PicardCmd::Eq { k, left, right } => {
            let l = picard::parse_element(*k, left)?;
            let r = picard::parse_element(*k, right)?;
            if picard::pic_equal(&l, &r)? {
                Ok(Ok(match format {
                    Format::Text => "equal\n".to_string(),
                    Format::Structured => "equal = true\n".to_string(),
                }))
            } else {
                Ok(Err(Negative))
            }
        }
    }
}
