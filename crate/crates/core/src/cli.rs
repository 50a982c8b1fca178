//! Command-line front end. `dispatch` parses an argument vector, runs
//! one subcommand and returns the exit status with the report text.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::cayley::{build_cayley, chromatic_number, independence_number, lattice_quotient, tetrakis};
use crate::disjoint_cycles::{find_disjoint, schrijver_check};
use crate::error::Error;
use crate::four_color::{check_transcript, four_color, verify_coloring, Options, Transcript};
use crate::homotopy::Homotopy;
use crate::lattice::{Mat2, Vec2};
use crate::planar_color::{three_color, SphereMap};
use crate::schrijver_geometry::{
    fmt_q, four_class_select, lambda_pair, lemma1_select, parse_q, truncated_pg, RationalPolygon, SelectionMode, Q,
};
use crate::torus_map::TorusMap;
use crate::walk_types::{bad_vertices, phi, walk_type};

pub const VERSION: &str = "tcolor 0.1.0";

/// Default node budget of the exact solvers behind `alpha` and `chromatic`.
const SOLVER_BUDGET: u64 = 50_000_000;

/// Exit status for success, domain failure and input error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "tcolor", version = "0.1.0", about = "Four-coloring Eulerian triangulations of the torus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Auto,
    Proof,
    Enumeration,
}

impl From<ModeArg> for SelectionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => SelectionMode::Auto,
            ModeArg::Proof => SelectionMode::Proof,
            ModeArg::Enumeration => SelectionMode::Enumeration,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Counts, parity, triangulation check and representativity.
    Analyze {
        file: PathBuf,
    },
    /// Representativity with a witness cycle and the search certificate.
    Repr {
        file: PathBuf,
    },
    /// Shortest closed walk in the class (m, n).
    #[command(allow_negative_numbers = true)]
    ShortestCycle {
        file: PathBuf,
        #[arg(short)]
        m: i64,
        #[arg(short)]
        n: i64,
    },
    /// The truncated Schrijver polygon as half-planes and vertices.
    Polytope {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Pick a certified quadruple inside the hull of the witness points.
    Lemma1 {
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Four classes h1, h2, h1+h2, h1-h2 each carrying four disjoint cycles.
    Classes {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// K pairwise vertex-disjoint cycles in the class (m, n).
    #[command(allow_negative_numbers = true)]
    Disjoint {
        file: PathBuf,
        #[arg(short)]
        m: i64,
        #[arg(short)]
        n: i64,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// φ sequence, bad positions and type of a closed walk.
    WalkType {
        file: PathBuf,
        /// Comma-separated vertices; the closing vertex may be repeated.
        #[arg(long)]
        walk: String,
    },
    /// 3-coloring of a plane Eulerian triangulation.
    ThreeColor {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Proper 4-coloring of an Eulerian torus triangulation.
    Color4 {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        transcript: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Verify a coloring file, and optionally replay a transcript.
    Check {
        file: PathBuf,
        coloring: PathBuf,
        #[arg(long, default_value_t = 4)]
        colors: u8,
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Write Γ(ℤₙ, {s1, s2, s1+s2}).
    #[command(allow_negative_numbers = true)]
    Cayley {
        n: usize,
        s1: i64,
        s2: i64,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Write the triangular lattice modulo the rows (a, b), (c, d).
    #[command(allow_negative_numbers = true)]
    Lattice {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Write the tetrakis square tiling of an m × n torus.
    Tetrakis {
        m: usize,
        n: usize,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Exact independence number.
    Alpha {
        file: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Exact chromatic number up to K colors.
    Chromatic {
        file: PathBuf,
        #[arg(long = "max-k", default_value_t = 6)]
        max_k: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if is_input_error(&e) {
            CliError::Input(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

/// Errors caused by malformed files or arguments rather than by the
/// mathematics of a well-formed instance.
pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. }
            | Error::BrokenInvolution(_)
            | Error::LabelAntisymmetry { .. }
            | Error::NonContractibleFace { .. }
            | Error::EulerCharacteristic { .. }
            | Error::DegenerateLattice
            | Error::Disconnected
            | Error::InvalidMap(_)
            | Error::InvalidWalk(_)
            | Error::Precondition(_)
    )
}

type Out = std::result::Result<(i32, String), CliError>;

/// Run one command. `argv[0]` is the program name.
pub fn dispatch<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match run(cli.cmd) {
        Ok(r) => r,
        Err(CliError::Input(m)) => (EXIT_INPUT, format!("error: {m}\n")),
        Err(CliError::Domain(m)) => (EXIT_DOMAIN, format!("error: {m}\n")),
    }
}

/// `TCOLOR_BUDGET` replaces the built-in default; an explicit flag wins.
fn budget(flag: Option<u64>, default: u64) -> std::result::Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("TCOLOR_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("TCOLOR_BUDGET={v} is not an integer"))),
        Err(_) => Ok(default),
    }
}

fn read(path: &Path) -> std::result::Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_torus(path: &Path) -> std::result::Result<TorusMap, CliError> {
    Ok(TorusMap::load(&read(path)?)?)
}

fn rational(name: &str, s: &str) -> std::result::Result<Q, CliError> {
    parse_q(s).ok_or_else(|| CliError::Input(format!("--{name} {s} is not an integer or p/q")))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Parse "<vid> <color>" lines; `#` starts a comment.
pub fn parse_coloring(text: &str, n: usize) -> std::result::Result<Vec<u8>, String> {
    let mut col: Vec<Option<u8>> = vec![None; n];
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(v), Some(c), None) = (it.next(), it.next(), it.next()) else {
            return Err(format!("line {}: expected \"<vid> <color>\"", i + 1));
        };
        let v: usize = v.parse().map_err(|_| format!("line {}: bad vertex id {v}", i + 1))?;
        let c: u8 = c.parse().map_err(|_| format!("line {}: bad color {c}", i + 1))?;
        if v >= n {
            return Err(format!("line {}: vertex {v} out of range", i + 1));
        }
        if col[v].replace(c).is_some() {
            return Err(format!("line {}: vertex {v} colored twice", i + 1));
        }
    }
    col.into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| format!("vertex {v} has no color")))
        .collect()
}

pub fn write_coloring(col: &[u8]) -> String {
    col.iter().enumerate().map(|(v, c)| format!("{v} {c}\n")).collect()
}

fn emit_map(g: &TorusMap, o: Option<PathBuf>) -> Out {
    let text = g.to_text();
    match o {
        Some(p) => {
            write(&p, &text)?;
            Ok((EXIT_OK, format!("V={} E={} F={} written to {}\n", g.num_vertices(), g.num_edges(), g.num_faces(), p.display())))
        }
        None => Ok((EXIT_OK, text)),
    }
}

fn polygon_svg(p: &RationalPolygon, marks: &[Vec2]) -> String {
    let f = |v: &Q| *v.numer() as f64 / *v.denom() as f64;
    let pts: Vec<(f64, f64)> = p.vertices().iter().map(|v| (f(&v.x), f(&v.y))).collect();
    let r = pts.iter().fold(1.0f64, |a, &(x, y)| a.max(x.abs()).max(y.abs())) * 1.1;
    let mut s = String::new();
    let _ = writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">", -r, -r, 2.0 * r, 2.0 * r);
    let _ = writeln!(s, "<g transform=\"scale(1,-1)\">");
    let poly = join(pts.iter().map(|(x, y)| format!("{x},{y}")), " ");
    let _ = writeln!(s, "<polygon points=\"{poly}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>", r / 200.0);
    for m in marks {
        let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"red\"/>", m.x, m.y, r / 80.0);
    }
    s.push_str("</g>\n</svg>\n");
    s
}

fn run(cmd: Cmd) -> Out {
    let mut out = String::new();
    match cmd {
        Cmd::Analyze { file } => {
            let g = load_torus(&file)?;
            let r = Homotopy::new(&g)?.representativity();
            let _ = writeln!(
                out,
                "V={} E={} F={} eulerian={} triangulation={} representativity={}",
                g.num_vertices(),
                g.num_edges(),
                g.num_faces(),
                yes(g.is_eulerian()),
                yes(g.is_triangulation()),
                r.r
            );
        }
        Cmd::Repr { file } => {
            let g = load_torus(&file)?;
            let r = Homotopy::new(&g)?.representativity();
            let _ = writeln!(out, "representativity {}", r.r);
            let _ = writeln!(out, "class {}", r.class);
            let _ = writeln!(out, "cycle {}", join(&r.crossed, " "));
            let _ = writeln!(out, "certificate {} classes", r.certificate.len());
            for (h, d) in &r.certificate {
                let _ = writeln!(out, "  {h} {d}");
            }
        }
        Cmd::ShortestCycle { file, m, n } => {
            let g = load_torus(&file)?;
            let hom = Homotopy::new(&g)?;
            let w = hom.shortest_cycle_in_class(Vec2::new(m, n))?;
            let _ = writeln!(out, "class {}", hom.class_of(&w));
            let _ = writeln!(out, "length {}", w.len());
            let _ = writeln!(out, "cycle {}", join(w.vertices(g.embedding()), " "));
        }
        Cmd::Polytope { file, bound, jobs, svg } => {
            let g = load_torus(&file)?;
            let hom = Homotopy::new(&g)?;
            let pg = truncated_pg(&hom, bound, jobs)?;
            let lam = lambda_pair(&pg.polygon)?;
            let facets = pg.polygon.facets();
            let _ = writeln!(out, "bound {bound}");
            let _ = writeln!(out, "halfplanes {}", facets.len());
            for h in &facets {
                let _ = writeln!(out, "  {h}");
            }
            let _ = writeln!(out, "vertices {}", pg.polygon.vertices().len());
            for v in pg.polygon.vertices() {
                let _ = writeln!(out, "  {v}");
            }
            let _ = writeln!(out, "lambda {} witness {}", fmt_q(&lam.lambda), lam.witness);
            let _ = writeln!(out, "lambda_polar {} witness {}", fmt_q(&lam.lambda_polar), lam.witness_polar);
            if let Some(p) = svg {
                write(&p, &polygon_svg(&pg.polygon, &[lam.witness, -lam.witness]))?;
            }
        }
        Cmd::Lemma1 { y, x, t } => {
            let (y, x, t) = (rational("y", &y)?, rational("x", &x)?, rational("t", &t)?);
            let c = lemma1_select(y, x, t)?;
            let _ = writeln!(out, "{} quadruple", c.tag);
            let _ = writeln!(out, "case {}", c.case);
            let _ = writeln!(out, "hull {}", join(&c.hull, " "));
            let _ = writeln!(out, "certificates");
            for (p, comb) in &c.certificates {
                let terms = join(comb.iter().map(|(l, v)| format!("{}*{v}", fmt_q(l))), " + ");
                let _ = writeln!(out, "  {p} = {terms}");
            }
            let _ = writeln!(out, "verified {}", yes(c.verify()));
        }
        Cmd::Classes { file, mode, budget: b, jobs } => {
            let g = load_torus(&file)?;
            let hom = Homotopy::new(&g)?;
            let sel = four_class_select(&hom, mode.into(), budget(b, Options::default().budget)?, jobs)?;
            let _ = writeln!(out, "mode {}", sel.mode);
            if let Some(l) = &sel.lemma {
                let _ = writeln!(out, "quadruple {} case {}", l.tag, l.case);
            }
            let _ = writeln!(out, "h1 {} h2 {}", sel.h1, sel.h2);
            for fam in &sel.families {
                let _ = writeln!(out, "class {} c={}", fam.class, hom.crossing_number(fam.class));
                for vs in fam.vertex_lists(&g) {
                    let _ = writeln!(out, "  {}", join(vs, " "));
                }
            }
        }
        Cmd::Disjoint { file, m, n, k, budget: b } => {
            let g = load_torus(&file)?;
            let hom = Homotopy::new(&g)?;
            let h = Vec2::new(m, n);
            match find_disjoint(&hom, h, k, budget(b, Options::default().budget)?) {
                Ok(fam) => {
                    let _ = writeln!(out, "found {} disjoint cycles in class {}", fam.len(), fam.class);
                    for vs in fam.vertex_lists(&g) {
                        let _ = writeln!(out, "  {}", join(vs, " "));
                    }
                }
                Err(e) => {
                    let verdict = schrijver_check(&hom, h, k as i64, 3, 1);
                    let _ = writeln!(out, "no family of {k} disjoint cycles in class {h}: {e}");
                    let _ = writeln!(out, "schrijver {verdict}");
                    return Ok((EXIT_DOMAIN, out));
                }
            }
        }
        Cmd::WalkType { file, walk } => {
            let g = load_torus(&file)?;
            let mut vs = Vec::new();
            for s in walk.split(',') {
                let v: usize = s.trim().parse().map_err(|_| CliError::Input(format!("bad vertex {s:?} in --walk")))?;
                vs.push(v);
            }
            if vs.len() > 1 && vs.first() == vs.last() {
                vs.pop();
            }
            let w = g.walk_from_vertices(&vs)?;
            let f = phi(&g, &w)?;
            let bad = bad_vertices(&g, &w)?;
            let t = walk_type(&g, &w)?;
            let _ = writeln!(out, "phi {}", join(&f, " "));
            let _ = writeln!(out, "bad {}", join((0..bad.len()).filter(|&i| bad[i]), " "));
            let _ = writeln!(out, "type {t}");
        }
        Cmd::ThreeColor { file, o } => {
            let s = SphereMap::load(&read(&file)?)?;
            let c = three_color(&s)?;
            let text = write_coloring(&c);
            match o {
                Some(p) => {
                    write(&p, &text)?;
                    let _ = writeln!(out, "3-colored {} vertices, written to {}", c.len(), p.display());
                }
                None => out = text,
            }
        }
        Cmd::Color4 { file, o, force, transcript, mode, budget: b, jobs } => {
            let g = load_torus(&file)?;
            let opts = Options { force, budget: budget(b, Options::default().budget)?, jobs, mode: mode.into() };
            let res = four_color(&g, &opts)?;
            let t = &res.transcript;
            let used = res.coloring.iter().max().map_or(0, |&c| c + 1);
            let _ = writeln!(out, "representativity {}", t.representativity);
            let _ = writeln!(out, "mode {} h1 {} h2 {} h0 {}", t.selection_mode, t.h1, t.h2, t.h0);
            let _ = writeln!(out, "pi {} sigma {}", join(t.pi, " "), join(t.sigma, " "));
            let _ = writeln!(out, "colors {used} verified yes");
            match o {
                Some(p) => write(&p, &write_coloring(&res.coloring))?,
                None => out.push_str(&write_coloring(&res.coloring)),
            }
            if let Some(p) = transcript {
                let json = serde_json::to_string_pretty(t).map_err(|e| CliError::Domain(e.to_string()))?;
                write(&p, &(json + "\n"))?;
            }
        }
        Cmd::Check { file, coloring, colors, transcript } => {
            let g = load_torus(&file)?;
            let col = parse_coloring(&read(&coloring)?, g.num_vertices()).map_err(CliError::Input)?;
            let ok = verify_coloring(&g, &col, colors)?;
            let _ = writeln!(out, "proper {colors}-coloring: {}", yes(ok));
            if let Some(p) = transcript {
                let t: Transcript = serde_json::from_str(&read(&p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
                check_transcript(&g, &t)?;
                let same = t.coloring == col;
                let _ = writeln!(out, "transcript replays: yes, matches coloring: {}", yes(same));
                if !same {
                    return Ok((EXIT_DOMAIN, out));
                }
            }
            if !ok {
                return Ok((EXIT_DOMAIN, out));
            }
        }
        Cmd::Cayley { n, s1, s2, o } => return emit_map(&build_cayley(n, s1, s2)?, o),
        Cmd::Lattice { a, b, c, d, o } => {
            return emit_map(&lattice_quotient(&Mat2::from_rows(Vec2::new(a, b), Vec2::new(c, d)))?, o)
        }
        Cmd::Tetrakis { m, n, o } => return emit_map(&tetrakis(m, n)?, o),
        Cmd::Alpha { file, budget: b } => {
            let g = load_torus(&file)?;
            let s = independence_number(&g.embedding().adjacency(), budget(b, SOLVER_BUDGET)?)?;
            let _ = writeln!(out, "alpha {}", s.size);
            let _ = writeln!(out, "witness {}", join(&s.witness, " "));
        }
        Cmd::Chromatic { file, max_k, budget: b } => {
            let g = load_torus(&file)?;
            let r = chromatic_number(&g.embedding().adjacency(), max_k, budget(b, SOLVER_BUDGET)?)?;
            let refuted = join(&r.refuted, ",");
            match r.chi {
                Some(chi) => {
                    let _ = writeln!(out, "chromatic {chi}");
                    let _ = writeln!(out, "refuted {refuted}");
                    let _ = writeln!(out, "witness {}", join(&r.witness, " "));
                }
                None => {
                    let _ = writeln!(out, "chromatic > {max_k}");
                    let _ = writeln!(out, "refuted {refuted}");
                    return Ok((EXIT_DOMAIN, out));
                }
            }
        }
    }
    Ok((EXIT_OK, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma37_file(dir: &Path) -> PathBuf {
        let p = dir.join("g37.map");
        let (code, _) = dispatch(["tcolor", "cayley", "37", "1", "10", "-o", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        p
    }

    #[test]
    fn analyze_and_refusal() {
        let dir = tempfile::tempdir().unwrap();
        let p = gamma37_file(dir.path());
        let (code, out) = dispatch(["tcolor", "analyze", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out, "V=37 E=111 F=74 eulerian=yes triangulation=yes representativity=7\n");
        let (code, out) = dispatch(["tcolor", "color4", p.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(out.contains("representativity 7 < 10"), "{out}");
    }

    #[test]
    fn lemma1_example() {
        let (code, out) = dispatch(["tcolor", "lemma1", "--y", "3", "--x", "2", "--t", "-1/2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("SECOND quadruple\n"), "{out}");
        assert!(out.ends_with("verified yes\n"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(dispatch(["tcolor", "frobnicate"]).0, 2);
        assert_eq!(dispatch(["tcolor", "analyze"]).0, 2);
        assert_eq!(dispatch(["tcolor", "analyze", "/nonexistent/map"]).0, 2);
        assert_eq!(dispatch(["tcolor", "lemma1", "--y", "1/0", "--x", "0", "--t", "0"]).0, 2);
        assert_eq!(dispatch(["tcolor", "--help"]).0, 0);
    }

    #[test]
    fn coloring_files() {
        assert_eq!(parse_coloring("0 1\n# c\n1 0\n", 2), Ok(vec![1, 0]));
        assert!(parse_coloring("0 1\n", 2).is_err());
        assert!(parse_coloring("0 1\n0 2\n1 0\n", 2).is_err());
        assert_eq!(parse_coloring(&write_coloring(&[2, 0, 1]), 3), Ok(vec![2, 0, 1]));
    }
}
