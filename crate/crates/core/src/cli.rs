//! The `udg` command line. Documents go through stdin/stdout unless a path is given.
//!
//! Exit codes: 0 success, 1 a negative result (FAIL, NOT_REALIZABLE, nothing found),
//! 2 usage or I/O error.

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::audit::{faithful_dim_audit_with, AuditConfig, Verdict};
use crate::census::{census, ramsey_exact, ramsey_fd_lower, zero_pattern_bound, OraclePolicy};
use crate::construct::{embed_bipartite_faithful_with, embed_colorable, BipartiteParams};
use crate::embedding::Embedding;
use crate::graph::{
    complete, exact_coloring_small, greedy_coloring, make_complete_multipartite, make_kdoubleprime,
    make_kprime, make_remark_graph, Graph,
};
use crate::solver::{solve_distance, solve_faithful, SolverConfig};
use crate::verify::{verify, Mode};

/// Largest graph coloured exactly before falling back to greedy colouring.
const EXACT_COLORING_MAX_N: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "udg",
    version,
    about = "Unit-distance and faithful unit-distance graph toolkit"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the solver and census.
    #[arg(long, global = true, env = "UDG_JOBS", default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a named graph as JSON.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Embed a graph.
    Realize {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_enum)]
        method: RealizeMethod,
        /// Target relation for the numeric method.
        #[arg(long, value_enum, default_value_t = ModeArg::Faithful)]
        mode: ModeArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an embedding against a graph.
    Verify {
        /// Defaults to the graph stored inside the embedding document.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        embedding: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Faithful)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Decide or bound faithful realisability of a bipartite graph in `R^dim`.
    Audit {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        dim: usize,
    },
    /// Classify every labelled graph on `n` vertices.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Faithful)]
        mode: ModeArg,
        /// Refuse to fall back to the numeric solver.
        #[arg(long)]
        exact_only: bool,
        /// Also write the per-graph CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Counting bounds.
    Bound {
        #[command(subcommand)]
        which: BoundKind,
    },
    /// Ramsey-type calculators.
    Ramsey {
        #[command(subcommand)]
        which: RamseyKind,
    },
    /// Draw an embedding as SVG.
    Plot {
        #[arg(long)]
        embedding: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Family {
    Kprime {
        d: usize,
    },
    Kdoubleprime {
        d: usize,
    },
    Remark {
        d: usize,
    },
    Multipartite {
        #[arg(required = true)]
        sizes: Vec<usize>,
    },
    Complete {
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundKind {
    ZeroPattern {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum RamseyKind {
    Lower(RamseyArgs),
    Exact {
        #[command(flatten)]
        args: RamseyArgs,
        #[arg(long)]
        max_m: usize,
    },
}

#[derive(Args, Debug)]
pub struct RamseyArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    dim: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RealizeMethod {
    Colorable,
    Bipartite,
    Numeric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Faithful,
    Distance,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Faithful => Mode::Faithful,
            ModeArg::Distance => Mode::Distance,
        }
    }
}

#[derive(Debug)]
enum Outcome {
    Ok,
    Negative,
}

#[derive(Debug)]
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    stdin_taken: bool,
}

impl Io<'_> {
    fn read(&mut self, path: Option<&PathBuf>) -> Result<String, Usage> {
        match path {
            Some(p) if p.as_os_str() != "-" => {
                fs::read_to_string(p).map_err(|e| Usage(format!("{}: {e}", p.display())))
            }
            _ => {
                if self.stdin_taken {
                    return Err(Usage("stdin can feed only one input".into()));
                }
                self.stdin_taken = true;
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }

    fn write(&mut self, path: Option<&PathBuf>, text: &str) -> Result<(), Usage> {
        match path {
            Some(p) if p.as_os_str() != "-" => fs::write(p, format!("{text}\n"))
                .map_err(|e| Usage(format!("{}: {e}", p.display()))),
            _ => Ok(writeln!(self.stdout, "{text}")?),
        }
    }

    fn note(&mut self, msg: &str) {
        let _ = writeln!(self.stderr, "udg: {msg}");
    }
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        stderr,
        stdin_taken: false,
    };
    match execute(cli, &mut io) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Negative) => 1,
        Err(Usage(msg)) => {
            io.note(&msg);
            2
        }
    }
}

fn read_graph(io: &mut Io, path: Option<&PathBuf>) -> Result<Graph, Usage> {
    let text = io.read(path)?;
    Graph::from_json(&text).map_err(|e| Usage(format!("graph: {e}")))
}

fn solver_config(seed: u64, jobs: usize) -> SolverConfig {
    SolverConfig {
        seed,
        jobs: jobs.max(1),
        ..SolverConfig::default()
    }
}

fn execute(cli: Cli, io: &mut Io) -> Result<Outcome, Usage> {
    let (seed, jobs) = (cli.seed, cli.jobs);
    match cli.command {
        Command::Gen { family, output } => {
            let g = match family {
                Family::Kprime { d } => make_kprime(d)?,
                Family::Kdoubleprime { d } => make_kdoubleprime(d)?,
                Family::Remark { d } => make_remark_graph(d)?,
                Family::Multipartite { sizes } => make_complete_multipartite(&sizes)?,
                Family::Complete { n } => complete(n),
            };
            io.write(output.as_ref(), &g.to_json())?;
            Ok(Outcome::Ok)
        }
        Command::Realize {
            graph,
            dim,
            method,
            mode,
            output,
        } => {
            let g = read_graph(io, graph.as_ref())?;
            let embedding = match method {
                RealizeMethod::Colorable => {
                    let coloring = if g.n() <= EXACT_COLORING_MAX_N {
                        exact_coloring_small(&g, EXACT_COLORING_MAX_N)?
                    } else {
                        greedy_coloring(&g)
                    };
                    let e = embed_colorable(&g, &coloring)?;
                    match dim {
                        Some(d) if d < e.dim => {
                            return Err(Usage(format!(
                                "colouring needs dimension {}, asked for {d}",
                                e.dim
                            )))
                        }
                        Some(d) => e.padded(d),
                        None => e,
                    }
                }
                RealizeMethod::Bipartite => {
                    let d = dim.ok_or_else(|| Usage("--dim is required".into()))?;
                    let params = BipartiteParams {
                        d,
                        seed,
                        ..BipartiteParams::default()
                    };
                    match embed_bipartite_faithful_with(&g, &params) {
                        Ok(e) => e,
                        Err(e @ crate::construct::EmbedError::ConstructionFailed { .. }) => {
                            io.note(&e.to_string());
                            return Ok(Outcome::Negative);
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
                RealizeMethod::Numeric => {
                    let d = dim.ok_or_else(|| Usage("--dim is required".into()))?;
                    let cfg = solver_config(seed, jobs);
                    let r = match mode {
                        ModeArg::Faithful => solve_faithful(&g, d, &cfg),
                        ModeArg::Distance => solve_distance(&g, d, &cfg),
                    };
                    match r.embedding {
                        Some(e) => e,
                        None => {
                            io.write(output.as_ref(), &r.to_json())?;
                            return Ok(Outcome::Negative);
                        }
                    }
                }
            };
            io.write(output.as_ref(), &embedding.to_json_with_graph(Some(&g)))?;
            Ok(Outcome::Ok)
        }
        Command::Verify {
            graph,
            embedding,
            mode,
            tol,
        } => {
            let given = match &graph {
                Some(p) => Some(read_graph(io, Some(p))?),
                None => None,
            };
            let text = io.read(embedding.as_ref())?;
            let (e, stored) = Embedding::from_json(&text)?;
            let g = given.or(stored).ok_or_else(|| {
                Usage("no graph: pass --graph or embed one in the document".into())
            })?;
            let report = verify(&g, &e, mode.into(), tol)?;
            io.write(None, &report.to_json())?;
            Ok(if report.pass {
                Outcome::Ok
            } else {
                Outcome::Negative
            })
        }
        Command::Audit { graph, dim } => {
            let g = read_graph(io, graph.as_ref())?;
            let cfg = AuditConfig {
                seed,
                solver: solver_config(seed, jobs),
                ..AuditConfig::default()
            };
            let report = faithful_dim_audit_with(&g, dim, &cfg)?;
            io.write(None, &report.to_json())?;
            Ok(match report.verdict {
                Verdict::NotRealizable => Outcome::Negative,
                _ => Outcome::Ok,
            })
        }
        Command::Census {
            n,
            dim,
            mode,
            exact_only,
            csv,
            restarts,
        } => {
            let mut cfg = solver_config(seed, jobs);
            if let Some(r) = restarts {
                cfg.restarts = r;
            }
            let policy = if exact_only {
                OraclePolicy::ExactOnly
            } else {
                OraclePolicy::Auto
            };
            let report = census(n, dim, mode.into(), &cfg, policy)?;
            if let Some(p) = csv {
                fs::write(&p, report.to_csv())
                    .map_err(|e| Usage(format!("{}: {e}", p.display())))?;
            }
            io.write(None, &report.to_json())?;
            Ok(Outcome::Ok)
        }
        Command::Bound {
            which: BoundKind::ZeroPattern { n, dim },
        } => {
            let b = zero_pattern_bound(n, dim)?;
            io.write(None, &b.to_json())?;
            if b.proposition_applies {
                Ok(Outcome::Ok)
            } else {
                io.note("fewer equations than unknowns: the value is not a proven bound");
                Ok(Outcome::Negative)
            }
        }
        Command::Ramsey { which } => match which {
            RamseyKind::Lower(a) => {
                let r = ramsey_fd_lower(a.s, a.dim)?;
                io.write(None, &r.to_json())?;
                Ok(Outcome::Ok)
            }
            RamseyKind::Exact { args, max_m } => {
                let r = ramsey_exact(args.s, args.dim, max_m, &solver_config(seed, jobs))?;
                let m = r.map_or("null".to_string(), |m| m.to_string());
                let status = if r.is_some() { "FOUND" } else { "UNKNOWN" };
                io.write(
                    None,
                    &format!(
                        "{{\"s\":{},\"d\":{},\"max_m\":{max_m},\"m\":{m},\"status\":\"{status}\"}}",
                        args.s, args.dim
                    ),
                )?;
                Ok(if r.is_some() {
                    Outcome::Ok
                } else {
                    Outcome::Negative
                })
            }
        },
        Command::Plot { embedding, output } => {
            let text = io.read(embedding.as_ref())?;
            let (e, g) = Embedding::from_json(&text)?;
            io.write(output.as_ref(), &render_svg(&e, g.as_ref()))?;
            Ok(Outcome::Ok)
        }
    }
}

/// Orthographic view of the first three coordinates, edges drawn when a graph is known.
pub fn render_svg(e: &Embedding, g: Option<&Graph>) -> String {
    const SIZE: f64 = 480.0;
    const PAD: f64 = 24.0;
    // fixed oblique view direction so 3-d layouts do not collapse
    let (ca, sa) = (0.6f64.cos(), 0.6f64.sin());
    let (cb, sb) = (0.4f64.cos(), 0.4f64.sin());
    let flat: Vec<(f64, f64)> = e
        .points
        .iter()
        .map(|p| {
            let c = p.coords();
            let at = |i: usize| c.get(i).copied().unwrap_or(0.0);
            let (x, y, z) = (at(0), at(1), at(2));
            if e.dim <= 2 {
                (x, y)
            } else {
                let x1 = ca * x - sa * y;
                let y1 = sa * x + ca * y;
                (x1, cb * y1 - sb * z)
            }
        })
        .collect();
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &flat {
        lo_x = lo_x.min(x);
        hi_x = hi_x.max(x);
        lo_y = lo_y.min(y);
        hi_y = hi_y.max(y);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-12);
    let scale = (SIZE - 2.0 * PAD) / span;
    let px = |(x, y): (f64, f64)| (PAD + (x - lo_x) * scale, SIZE - PAD - (y - lo_y) * scale);

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    if let Some(g) = g {
        for (u, v) in g.edges() {
            let (x1, y1) = px(flat[u]);
            let (x2, y2) = px(flat[v]);
            let _ = writeln!(
                out,
                "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"#555\" stroke-width=\"1\"/>"
            );
        }
    }
    for (i, &p) in flat.iter().enumerate() {
        let (x, y) = px(p);
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"#1f5fa8\"/>"
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" font-family=\"sans-serif\">{i}</text>",
            x + 5.0,
            y - 5.0
        );
    }
    out.push_str("</svg>");
    out
}
