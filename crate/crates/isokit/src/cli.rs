//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 positive verdict or success, 1 negative verdict, 2 usage
//! or IO error, 3 unknown (budget exhausted). Reports are `key: value` lines
//! on stdout; `--witness FILE` also writes the witness on its own.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use isokit_core::designs::{
    affine_to_projective, derived_design, net_iso, DesignsError, projective_to_affine, steiner_t_iso, sts_iso,
};
use isokit_core::isotopy::{isotopy, quasigroup_iso, IsotopyError, IsotopyMethod};
use isokit_core::recover::{
    block_graph, latin_square_graph, lsg_iso, net_graph, pseudo_thresholds, recover_latin_square, recover_net,
    recover_steiner2, PseudoFamily,
};
use isokit_core::refine::{
    color_refine, conference_iso_with, default_target, find_distinguishing_set, is_distinguishing, two_round_sequence,
    Coloring, ConferenceOptions, Rounds,
};
use isokit_core::structures::{srg_check, srg_complement_params, Conjugate};
use isokit_core::{gen, oracle, Budget, Isotopy, Verdict};

use crate::bench::{self, Suite};
use crate::formats::{self, join, Structure};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "isokit", version, about = "Isotopy and isomorphism tests for Latin squares, nets, Steiner designs and strongly regular graphs")]
pub struct Cli {
    /// Worker threads for parallel enumeration (defaults to all cores)
    #[arg(long, global = true, env = "ISOKIT_JOBS")]
    pub jobs: Option<usize>,
    /// Also write the witness to this file
    #[arg(long, global = true, value_name = "FILE")]
    pub witness: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct BudgetArgs {
    /// Seed for every random choice
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random restarts and sampling rounds
    #[arg(long, default_value_t = 64)]
    pub trials: u32,
    /// Search-tree nodes before giving up with "unknown"
    #[arg(long, default_value_t = 20_000_000)]
    pub nodes: u64,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        Budget {
            seed: self.seed,
            trials: self.trials,
            node_limit: self.nodes,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a structure and print it in its file format
    #[command(subcommand)]
    Gen(GenCmd),
    /// Validate a file and describe it
    Check { file: PathBuf },
    /// Quasigroup isomorphism of two Latin squares
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Isotopy (or main-class equivalence) of two Latin squares
    Isotopy {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Normal)]
        method: MethodArg,
        /// Also try the six conjugates of the first square
        #[arg(long)]
        main_class: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Strongly regular graph constructions and recovery
    #[command(subcommand, alias = "recover")]
    Graph(GraphCmd),
    /// Steiner design isomorphism and derived designs
    #[command(subcommand)]
    Design(DesignCmd),
    /// Net isomorphism
    #[command(subcommand)]
    Net(NetCmd),
    /// Affine and projective plane conversions
    #[command(subcommand)]
    Plane(PlaneCmd),
    /// Color refinement
    Refine {
        file: PathBuf,
        /// A round count or "stable"
        #[arg(long, default_value = "stable", value_parser = parse_rounds)]
        rounds: Rounds,
        /// Use neighbour color sets instead of multisets
        #[arg(long)]
        count_free: bool,
        /// Start from vertex degrees instead of a uniform coloring
        #[arg(long, conflicts_with = "individualize")]
        by_degree: bool,
        /// Give these vertices colors 1, 2, ... before refining
        #[arg(long, value_delimiter = ',')]
        individualize: Vec<usize>,
    },
    /// Isomorphism from a conference graph to another graph
    ConfIso {
        a: PathBuf,
        b: PathBuf,
        /// Size of the sampled distinguishing sets
        #[arg(long)]
        size: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Find a distinguishing set
    Distinguish {
        file: PathBuf,
        #[arg(long)]
        size: Option<usize>,
        /// Shrink the set while two count-free rounds still make it discrete
        #[arg(long)]
        shrink: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Brute-force reference searches
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        a: PathBuf,
        b: PathBuf,
    },
    /// Time a suite over seeded instances and print CSV
    Bench {
        #[arg(value_enum)]
        suite: Suite,
        /// Instance sizes (Paley orders for refine and conf-iso)
        #[arg(long = "n", value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCmd {
    /// Random Latin square
    Ls {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cayley table of a group such as Z4, D4, Q8 or Z2xZ2
    Group {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Steiner triple system
    Sts {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Paley conference graph
    Paley {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Affine plane AG(2, q) as a net, or its projective completion
    Plane {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        projective: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A named design: fano, s348, sts13, sts13-switched
    Named {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GraphCmd {
    /// Latin square graph of a square
    FromLs {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Net graph of a net
    FromNet {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Block-intersection graph of a design
    FromDesign {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover a Latin square from its Latin square graph
    RecoverLs {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover a net from its net graph
    RecoverNet {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover a Steiner 2-design from its block graph
    RecoverDesign {
        file: PathBuf,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Strongly regular parameters and the families they match
    Classify { file: PathBuf },
    /// Isomorphism of two Latin square graphs
    LsgIso {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum DesignCmd {
    /// Isomorphism of Steiner triple systems or Steiner (t, t+1)-designs
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Derived design at a set of points
    Derive {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum NetCmd {
    /// Isomorphism of two nets
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum PlaneCmd {
    /// Projective completion of an affine plane
    Complete {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Affine restriction of a projective plane at a line
    Restrict {
        file: PathBuf,
        #[arg(long)]
        line: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Cube,
    Normal,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Isotopy,
    Graph,
    Design,
}

fn parse_rounds(s: &str) -> Result<Rounds, String> {
    if s == "stable" {
        return Ok(Rounds::Stable);
    }
    s.parse().map(Rounds::Fixed).map_err(|_| format!("expected a number or \"stable\", got {s:?}"))
}

/// Output collected by a command.
#[derive(Debug, Default)]
struct Report {
    text: String,
    witness: Option<String>,
}

impl Report {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.text.push_str(&format!("{key}: {value}\n"));
    }

    fn raw(&mut self, s: &str) {
        self.text.push_str(s);
    }
}

type Outcome = Result<i32, String>;

fn verdict_code<W>(v: &Verdict<W>) -> i32 {
    match v {
        Verdict::Found(_) => EXIT_POSITIVE,
        Verdict::Absent => EXIT_NEGATIVE,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn verdict_word<W>(v: &Verdict<W>, yes: &'static str, no: &'static str) -> &'static str {
    match v {
        Verdict::Found(_) => yes,
        Verdict::Absent => no,
        Verdict::Unknown => "unknown",
    }
}

fn isotopy_lines(iso: &Isotopy) -> String {
    format!("{}\n{}\n{}\n", join(&iso.alpha), join(&iso.beta), join(&iso.gamma))
}

fn report_map(r: &mut Report, v: &Verdict<Vec<usize>>, yes: &'static str, no: &'static str) -> i32 {
    r.kv("verdict", verdict_word(v, yes, no));
    if let Verdict::Found(map) = v {
        r.kv("map", join(map));
        r.witness = Some(format!("{}\n", join(map)));
    }
    verdict_code(v)
}

fn emit(r: &mut Report, out: &Option<PathBuf>, text: String) -> Outcome {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?;
            r.kv("written", p.display());
        }
        None => r.raw(&text),
    }
    Ok(EXIT_POSITIVE)
}

fn load(p: &Path) -> Result<Structure, String> {
    formats::load(p).map_err(|e| e.to_string())
}

fn latin(p: &Path) -> Result<isokit_core::LatinSquare, String> {
    formats::load_latin(p).map_err(|e| e.to_string())
}

fn graph(p: &Path) -> Result<isokit_core::Graph, String> {
    formats::load_graph(p).map_err(|e| e.to_string())
}

fn design(p: &Path) -> Result<isokit_core::SteinerDesign, String> {
    formats::load_design(p).map_err(|e| e.to_string())
}

fn net(p: &Path) -> Result<isokit_core::Net, String> {
    formats::load_net(p).map_err(|e| e.to_string())
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Structures of different sizes are simply not isomorphic.
fn mismatch_is_absent<W, E: std::fmt::Display>(
    res: Result<Verdict<W>, E>,
    is_mismatch: impl Fn(&E) -> bool,
) -> Result<Verdict<W>, String> {
    match res {
        Err(e) if is_mismatch(&e) => Ok(Verdict::Absent),
        other => other.map_err(s),
    }
}

/// Parses `args` and runs the command, writing the report to `out` and
/// errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_POSITIVE };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let mut report = Report::default();
    let result = pool.install(|| dispatch(&cli.command, &mut report));
    let code = match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_ERROR;
        }
    };
    if let (Some(path), Some(w)) = (&cli.witness, &report.witness) {
        if let Err(e) = std::fs::write(path, w) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_ERROR;
        }
    }
    let _ = out.write_all(report.text.as_bytes());
    code
}

fn dispatch(cmd: &Command, r: &mut Report) -> Outcome {
    match cmd {
        Command::Gen(g) => run_gen(g, r),
        Command::Check { file } => run_check(file, r),
        Command::Iso { a, b, budget } => {
            let v = mismatch_is_absent(quasigroup_iso(&latin(a)?, &latin(b)?, &budget.budget()), |e| {
                matches!(e, IsotopyError::OrderMismatch { .. })
            })?;
            Ok(report_map(r, &v, "isomorphic", "non-isomorphic"))
        }
        Command::Isotopy {
            a,
            b,
            method,
            main_class,
            budget,
        } => run_isotopy(&latin(a)?, &latin(b)?, *method, *main_class, budget.budget(), r),
        Command::Graph(g) => run_graph(g, r),
        Command::Design(d) => run_design(d, r),
        Command::Net(NetCmd::Iso { a, b, budget }) => {
            let v = mismatch_is_absent(net_iso(&net(a)?, &net(b)?, &budget.budget()), |e| {
                matches!(e, DesignsError::ParamMismatch)
            })?;
            Ok(report_map(r, &v, "isomorphic", "non-isomorphic"))
        }
        Command::Plane(PlaneCmd::Complete { file, out }) => {
            let d = affine_to_projective(&net(file)?).map_err(s)?;
            emit(r, out, formats::write_design(&d))
        }
        Command::Plane(PlaneCmd::Restrict { file, line, out }) => {
            let n = projective_to_affine(&design(file)?, *line).map_err(s)?;
            emit(r, out, formats::write_net(&n))
        }
        Command::Refine {
            file,
            rounds,
            count_free,
            by_degree,
            individualize,
        } => {
            let g = graph(file)?;
            if let Some(&bad) = individualize.iter().find(|&&u| u >= g.order()) {
                return Err(format!("vertex {bad} is outside 0..{}", g.order()));
            }
            let start = if *by_degree {
                Coloring::by_degree(&g)
            } else {
                Coloring::individualized(g.order(), individualize)
            };
            let c = color_refine(&g, &start, *rounds, !count_free).map_err(s)?;
            let history: Vec<usize> = c.history.iter().map(|h| Coloring::from_colors(h).class_count()).collect();
            r.kv("rounds", c.round);
            r.kv("classes", c.class_count());
            r.kv("class-history", join(&history));
            r.kv("discrete", c.is_discrete());
            r.kv("colors", join(&c.colors));
            Ok(EXIT_POSITIVE)
        }
        Command::ConfIso { a, b, size, budget } => {
            let opts = ConferenceOptions {
                target: *size,
                ..ConferenceOptions::default()
            };
            let v = conference_iso_with(&graph(a)?, &graph(b)?, &budget.budget(), opts).map_err(s)?;
            Ok(report_map(r, &v, "isomorphic", "non-isomorphic"))
        }
        Command::Distinguish {
            file,
            size,
            shrink,
            budget,
        } => {
            let g = graph(file)?;
            let target = size.unwrap_or_else(|| default_target(g.order()));
            let set = if *shrink {
                two_round_sequence(&g, target, &budget.budget())
            } else {
                find_distinguishing_set(&g, target, &budget.budget())
            };
            let two = color_refine(&g, &Coloring::individualized(g.order(), &set), Rounds::Fixed(2), false).map_err(s)?;
            r.kv("size", set.len());
            r.kv("set", join(&set));
            r.kv("distinguishing", is_distinguishing(&g, &set));
            r.kv("two-round-discrete", two.is_discrete());
            r.witness = Some(format!("{}\n", join(&set)));
            Ok(EXIT_POSITIVE)
        }
        Command::Oracle { kind, a, b } => run_oracle(*kind, a, b, r),
        Command::Bench {
            suite,
            sizes,
            count,
            seed,
        } => {
            let sizes = if sizes.is_empty() { suite.default_sizes() } else { sizes.clone() };
            r.raw(&bench::run(*suite, &sizes, *count, *seed)?);
            Ok(EXIT_POSITIVE)
        }
    }
}

fn run_gen(cmd: &GenCmd, r: &mut Report) -> Outcome {
    match cmd {
        GenCmd::Ls { n, seed, out } => {
            if *n == 0 || *n > gen::MAX_ORDER {
                return Err(format!("order must be in 1..={}", gen::MAX_ORDER));
            }
            emit(r, out, formats::write_latin(&gen::random_latin_square(*n, *seed)))
        }
        GenCmd::Group { spec, out } => emit(r, out, formats::write_latin(&gen::group_square(spec).map_err(s)?)),
        GenCmd::Sts { v, out } => emit(r, out, formats::write_design(&gen::sts(*v).map_err(s)?)),
        GenCmd::Paley { q, out } => emit(r, out, formats::write_graph(&gen::paley_conference(*q).map_err(s)?)),
        GenCmd::Plane { q, projective, out } => {
            let ag = gen::affine_plane(*q).map_err(s)?;
            if *projective {
                emit(r, out, formats::write_design(&affine_to_projective(&ag).map_err(s)?))
            } else {
                emit(r, out, formats::write_net(&ag))
            }
        }
        GenCmd::Named { name, out } => {
            let d = match name.as_str() {
                "fano" => gen::fano(),
                "s348" => gen::s348(),
                "sts13" => gen::cyclic_sts13(),
                "sts13-switched" => gen::pasch_switch(&gen::cyclic_sts13()).ok_or("no Pasch configuration")?,
                _ => return Err(format!("unknown design {name:?} (try fano, s348, sts13, sts13-switched)")),
            };
            emit(r, out, formats::write_design(&d))
        }
    }
}

fn run_check(file: &Path, r: &mut Report) -> Outcome {
    match load(file)? {
        Structure::Latin(l) => {
            r.kv("latin", format!("n={}", l.order()));
            r.kv("idempotent", l.is_idempotent());
            r.kv("commutative", l.is_commutative());
            r.kv("associative", l.is_associative());
        }
        Structure::Graph(g) => {
            r.kv("graph", format!("n={} m={}", g.order(), g.edge_count()));
            match g.is_regular() {
                Some(k) => r.kv("regular", k),
                None => r.kv("regular", "no"),
            }
            match srg_check(&g) {
                Some(p) => r.kv("srg", format!("{} {} {} {}", p.n, p.k, p.lambda, p.mu)),
                None => r.kv("srg", "none"),
            }
        }
        Structure::Design(d) => {
            r.kv("steiner", format!("t={} k={} v={}", d.strength(), d.block_size(), d.points()));
            r.kv("blocks", d.blocks().len());
        }
        Structure::Net(n) => {
            r.kv("net", format!("n={} k={}", n.order(), n.degree()));
            r.kv("affine-plane", n.degree() == n.order() + 1);
        }
    }
    Ok(EXIT_POSITIVE)
}

fn run_isotopy(
    l1: &isokit_core::LatinSquare,
    l2: &isokit_core::LatinSquare,
    method: MethodArg,
    main_class: bool,
    budget: Budget,
    r: &mut Report,
) -> Outcome {
    let methods: &[IsotopyMethod] = match method {
        MethodArg::Cube => &[IsotopyMethod::Cube],
        MethodArg::Normal => &[IsotopyMethod::NormalForm],
        MethodArg::Both => &[IsotopyMethod::Cube, IsotopyMethod::NormalForm],
    };
    let conjugates: &[Conjugate] = if main_class { &Conjugate::ALL } else { &[Conjugate::IDENTITY] };
    let mut kinds = Vec::new();
    let mut result: Option<(Verdict<Isotopy>, Conjugate)> = None;
    for &m in methods {
        // Conjugates run in parallel; the first match in the fixed order wins.
        let all: Vec<Verdict<Isotopy>> = conjugates
            .par_iter()
            .map(|&c| {
                mismatch_is_absent(isotopy(&l1.conjugate(c), l2, m, &budget), |e| {
                    matches!(e, IsotopyError::OrderMismatch { .. })
                })
            })
            .collect::<Result<_, _>>()?;
        let (v, c) = match all.iter().position(|v| v.is_found()) {
            Some(i) => (all[i].clone(), conjugates[i]),
            None if all.iter().any(|v| v.is_unknown()) => (Verdict::Unknown, Conjugate::IDENTITY),
            None => (Verdict::Absent, Conjugate::IDENTITY),
        };
        kinds.push(v.kind());
        if result.as_ref().is_none_or(|(old, _)| !old.is_found()) {
            result = Some((v, c));
        }
    }
    if kinds.contains(&Verdict::Found(())) && kinds.contains(&Verdict::Absent) {
        return Err("cube and normal-form methods disagree".into());
    }
    let (v, conj) = result.expect("at least one method ran");
    r.kv(
        "method",
        match method {
            MethodArg::Cube => "cube",
            MethodArg::Normal => "normal",
            MethodArg::Both => "both",
        },
    );
    let yes = if main_class { "main-class-equivalent" } else { "isotopic" };
    let no = if main_class { "not-main-class-equivalent" } else { "non-isotopic" };
    r.kv("verdict", verdict_word(&v, yes, no));
    if let Verdict::Found(iso) = &v {
        if main_class {
            r.kv("conjugate", conj);
        }
        r.kv("alpha", join(&iso.alpha));
        r.kv("beta", join(&iso.beta));
        r.kv("gamma", join(&iso.gamma));
        r.witness = Some(isotopy_lines(iso));
    }
    Ok(verdict_code(&v))
}

fn family_line(f: &PseudoFamily) -> String {
    match *f {
        PseudoFamily::LatinSquare { m, genuine } => format!("latin-square-graph m={m} genuine={genuine}"),
        PseudoFamily::Net { m, d, genuine } => format!("net-graph m={m} k={d} genuine={genuine}"),
        PseudoFamily::SteinerTriple { v, genuine } => format!("sts-block-graph v={v} genuine={genuine}"),
        PseudoFamily::Conference { n } => format!("conference n={n}"),
    }
}

fn run_graph(cmd: &GraphCmd, r: &mut Report) -> Outcome {
    match cmd {
        GraphCmd::FromLs { file, out } => emit(r, out, formats::write_graph(&latin_square_graph(&latin(file)?))),
        GraphCmd::FromNet { file, out } => emit(r, out, formats::write_graph(&net_graph(&net(file)?))),
        GraphCmd::FromDesign { file, out } => emit(r, out, formats::write_graph(&block_graph(&design(file)?))),
        GraphCmd::RecoverLs { file, out } => match recover_latin_square(&graph(file)?) {
            Ok(l) => emit(r, out, formats::write_latin(&l)),
            Err(e) => negative(r, e),
        },
        GraphCmd::RecoverNet { file, n, k, out } => match recover_net(&graph(file)?, *n, *k) {
            Ok(x) => emit(r, out, formats::write_net(&x)),
            Err(e) => negative(r, e),
        },
        GraphCmd::RecoverDesign { file, v, k, out } => match recover_steiner2(&graph(file)?, *v, *k) {
            Ok(d) => emit(r, out, formats::write_design(&d)),
            Err(e) => negative(r, e),
        },
        GraphCmd::Classify { file } => {
            let g = graph(file)?;
            let Some(p) = srg_check(&g) else {
                r.kv("srg", "none");
                return Ok(EXIT_NEGATIVE);
            };
            r.kv("srg", format!("{} {} {} {}", p.n, p.k, p.lambda, p.mu));
            if let Ok(c) = srg_complement_params(p) {
                r.kv("complement", format!("{} {} {} {}", c.n, c.k, c.lambda, c.mu));
            }
            let fams = pseudo_thresholds(p);
            if fams.is_empty() {
                r.kv("family", "other");
            }
            for f in &fams {
                r.kv("family", family_line(f));
            }
            Ok(EXIT_POSITIVE)
        }
        GraphCmd::LsgIso { a, b, budget } => {
            let v = lsg_iso(&graph(a)?, &graph(b)?, &budget.budget()).map_err(s)?;
            Ok(report_map(r, &v, "isomorphic", "non-isomorphic"))
        }
    }
}

/// A recovery that failed because the input lacks the structure.
fn negative(r: &mut Report, e: impl std::fmt::Display) -> Outcome {
    r.kv("verdict", "not-recovered");
    r.kv("reason", e);
    Ok(EXIT_NEGATIVE)
}

fn run_design(cmd: &DesignCmd, r: &mut Report) -> Outcome {
    match cmd {
        DesignCmd::Iso { a, b, budget } => {
            let (d1, d2) = (design(a)?, design(b)?);
            let v = if d1.is_sts() && d2.is_sts() {
                sts_iso(&d1, &d2, &budget.budget())
            } else {
                steiner_t_iso(&d1, &d2, &budget.budget())
            };
            let v = mismatch_is_absent(v, |e| matches!(e, DesignsError::SizeMismatch))?;
            Ok(report_map(r, &v, "isomorphic", "non-isomorphic"))
        }
        DesignCmd::Derive { file, points, out } => {
            let d = derived_design(&design(file)?, points).map_err(s)?;
            if out.is_some() {
                r.kv("original-points", join(&d.original));
            }
            emit(r, out, formats::write_design(&d.design))
        }
    }
}

fn run_oracle(kind: OracleKind, a: &Path, b: &Path, r: &mut Report) -> Outcome {
    match kind {
        OracleKind::Isotopy => {
            let found = oracle::isotopy_brute(&latin(a)?, &latin(b)?).map_err(s)?;
            r.kv("verdict", if found.is_some() { "isotopic" } else { "non-isotopic" });
            if let Some(iso) = &found {
                r.kv("alpha", join(&iso.alpha));
                r.kv("beta", join(&iso.beta));
                r.kv("gamma", join(&iso.gamma));
                r.witness = Some(isotopy_lines(iso));
            }
            Ok(if found.is_some() { EXIT_POSITIVE } else { EXIT_NEGATIVE })
        }
        OracleKind::Graph => {
            let found = oracle::graph_iso_brute(&graph(a)?, &graph(b)?).map_err(s)?;
            Ok(report_map(r, &found.map_or(Verdict::Absent, Verdict::Found), "isomorphic", "non-isomorphic"))
        }
        OracleKind::Design => {
            let found = oracle::design_iso_brute(&design(a)?, &design(b)?).map_err(s)?;
            Ok(report_map(r, &found.map_or(Verdict::Absent, Verdict::Found), "isomorphic", "non-isomorphic"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("isokit").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn rounds_values() {
        assert_eq!(parse_rounds("stable"), Ok(Rounds::Stable));
        assert_eq!(parse_rounds("2"), Ok(Rounds::Fixed(2)));
        assert!(parse_rounds("two").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&[]).0, EXIT_ERROR);
        assert_eq!(run_str(&["isotopy", "only-one.ls"]).0, EXIT_ERROR);
        assert_eq!(run_str(&["check", "missing.ls"]).0, EXIT_ERROR);
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_POSITIVE);
        assert!(out.contains("isotopy"));
    }

    #[test]
    fn gen_to_stdout() {
        let (code, out, _) = run_str(&["gen", "group", "--spec", "Z3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "3\n0 1 2\n1 2 0\n2 0 1\n");
        assert_eq!(run_str(&["gen", "sts", "--v", "8"]).0, EXIT_ERROR);
        assert_eq!(run_str(&["gen", "named", "nope"]).0, EXIT_ERROR);
    }

    #[test]
    fn verdict_codes() {
        assert_eq!(verdict_code(&Verdict::Found(())), 0);
        assert_eq!(verdict_code::<()>(&Verdict::Absent), 1);
        assert_eq!(verdict_code::<()>(&Verdict::Unknown), 3);
    }
}
