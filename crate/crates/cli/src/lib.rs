//! `knotclock` command line: parse, states, lattice, clocknum, verify, gen, alex.
//!
//! Exit codes: 0 success, 1 verification failures (or a lattice invariant
//! broke), 2 input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use knotclock_core::alexpoly::alexander_det;
use knotclock_core::clocknum::{clock_height, clock_number_of_diagram};
use knotclock_core::generators::{connected_sum, gen_two_bridge, parse_table, ClosureForm, KnotTableEntry, TwoBridgeSpec};
use knotclock_core::lattice::{build_lattice, ExportFormat};
use knotclock_core::states::{enumerate_states, find_clocked, find_counterclocked};
use knotclock_core::suites::{run_suites, Suite, DEFAULT_SEED};
use knotclock_core::verdict::Outcome;
use knotclock_core::{parse_diagram, Diagram, Properness, StarPlacement, Universe};

pub const TABLE_ENV: &str = "KNOTCLOCK_TABLE";
const TABLE_FILE: &str = "knots_le8.pdtab";

#[derive(Debug, Parser)]
#[command(name = "knotclock", version, about = "Clock lattices of knot universes")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the main output to this file.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Summarize a diagram: counts, faces, properness.
    Parse { file: PathBuf },
    /// Count (and optionally list) the states of a star placement.
    States {
        file: PathBuf,
        #[arg(long)]
        stars: String,
        #[arg(long)]
        list: bool,
    },
    /// Export the clock lattice as DOT or JSON.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        stars: String,
        /// dot or json (json when --json is given).
        #[arg(long)]
        format: Option<String>,
    },
    /// Lattice heights for one placement or all of them.
    Clocknum(ClocknumArgs),
    /// Run a verification suite over the knot table.
    Verify {
        /// clock-theorem, thm41, lemma42, lemma43, lemma51, lemma52, prop53,
        /// main, example-nonprime, oracle, alexander, or all.
        suite: String,
        /// Directory holding knots_le8.pdtab, or the table file itself.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Generate diagrams.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Alexander polynomial from the region matrix.
    Alex {
        file: PathBuf,
        #[arg(long)]
        stars: String,
    },
}

#[derive(Debug, Args)]
struct ClocknumArgs {
    file: PathBuf,
    #[arg(long, conflicts_with = "all_stars")]
    stars: Option<String>,
    #[arg(long)]
    all_stars: bool,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Standard 4-plat from comma-separated box twists, e.g. 2,3.
    TwoBridge {
        spec: String,
        /// Rewrite the spec to an odd number of boxes.
        #[arg(long, conflicts_with = "even_form")]
        odd_form: bool,
        /// Rewrite the spec to an even number of boxes.
        #[arg(long)]
        even_form: bool,
    },
    /// Connected sum of two diagrams.
    Sum { a: PathBuf, b: PathBuf },
}

/// Failure categories, mapped to exit codes.
enum Failure {
    Input(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Check(m) => m,
        }
    }
}

fn input<E: ToString>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn check<E: ToString>(e: E) -> Failure {
    Failure::Check(e.to_string())
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// Runs the CLI with `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            let text = if out.text.ends_with('\n') { out.text } else { out.text + "\n" };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        let _ = writeln!(stderr, "error: writing {}: {e}", path.display());
                        return 2;
                    }
                }
                None => {
                    let _ = stdout.write_all(text.as_bytes());
                }
            }
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Parse { file } => parse_cmd(&load_diagram(file)?, cli.json),
        Command::States { file, stars, list } => states_cmd(&load_diagram(file)?, stars, *list, cli.json),
        Command::Lattice { file, stars, format } => {
            let d = load_diagram(file)?;
            let stars = parse_stars(&d.universe, stars)?;
            let format = match format {
                Some(f) => f.parse::<ExportFormat>().map_err(input)?,
                None if cli.json => ExportFormat::Json,
                None => ExportFormat::Dot,
            };
            let lattice = build_lattice(&d.universe, stars).map_err(check)?;
            Ok(Output::ok(lattice.export(format)))
        }
        Command::Clocknum(args) => clocknum_cmd(args, cli.json),
        Command::Verify { suite, table } => verify_cmd(suite, table.as_deref(), cli.seed, cli.json),
        Command::Gen(GenCommand::TwoBridge {
            spec,
            odd_form,
            even_form,
        }) => gen_two_bridge_cmd(spec, *odd_form, *even_form, cli.json),
        Command::Gen(GenCommand::Sum { a, b }) => {
            let sum = connected_sum(&load_diagram(a)?, &load_diagram(b)?).map_err(input)?;
            let code = sum.diagram.to_text();
            Ok(Output::ok(if cli.json {
                pretty(&json!({
                    "code": code,
                    "parts": [sum.parts.0, sum.parts.1],
                    "splice_edges": [sum.splice_edges.0, sum.splice_edges.1],
                }))
            } else {
                format!(
                    "# connected sum; parts {:?} | {:?}; splice edges {} {}\n{code}",
                    sum.parts.0, sum.parts.1, sum.splice_edges.0, sum.splice_edges.1
                )
            }))
        }
        Command::Alex { file, stars } => {
            let d = load_diagram(file)?;
            let stars = parse_stars(&d.universe, stars)?;
            let p = alexander_det(&d, stars).map_err(input)?;
            Ok(Output::ok(if cli.json {
                pretty(&json!({ "stars": stars.to_string(), "coefficients": p.coeffs, "polynomial": p.to_string() }))
            } else {
                p.to_string()
            }))
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap_or_default()
}

fn load_diagram(path: &Path) -> Result<Diagram, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_diagram(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_stars(u: &Universe, text: &str) -> Result<StarPlacement, Failure> {
    StarPlacement::parse(u, text).map_err(input)
}

fn parse_cmd(d: &Diagram, as_json: bool) -> Result<Output, Failure> {
    let u = &d.universe;
    let faces: Vec<Value> = u
        .faces()
        .map(|f| {
            let s = u.face_stats(f).expect("face from universe");
            json!({ "id": f.to_string(), "vertices": s.distinct_vertices, "corners": s.corners })
        })
        .collect();
    let witness = match u.properness() {
        Properness::Proper => None,
        Properness::NonProper(w) => Some(w),
    };
    let pairs: Vec<String> = u.adjacent_pairs().iter().map(ToString::to_string).collect();
    if as_json {
        return Ok(Output::ok(pretty(&json!({
            "vertices": u.vertex_count(),
            "edges": u.edge_count(),
            "faces": faces,
            "proper": witness.is_none(),
            "witness": witness.as_ref().map(|w| json!({
                "edges": [w.edges.0, w.edges.1],
                "sides": [w.sides.0, w.sides.1],
            })),
            "adjacent_pairs": pairs,
            "over_info": d.over_strand.is_some(),
        }))));
    }
    let mut s = String::new();
    let _ = writeln!(s, "vertices: {}", u.vertex_count());
    let _ = writeln!(s, "edges:    {}", u.edge_count());
    let _ = writeln!(s, "faces:    {}", u.face_count());
    for f in u.faces() {
        let st = u.face_stats(f).expect("face from universe");
        let _ = writeln!(s, "  {f}: {} vertices, {} corners", st.distinct_vertices, st.corners);
    }
    match witness {
        None => {
            let _ = writeln!(s, "proper:   yes");
        }
        Some(w) => {
            let _ = writeln!(
                s,
                "proper:   no (edges {} and {} split off {:?} from {:?})",
                w.edges.0, w.edges.1, w.sides.0, w.sides.1
            );
        }
    }
    let _ = writeln!(s, "adjacent face pairs: {}", pairs.join(" "));
    Ok(Output::ok(s))
}

fn states_cmd(d: &Diagram, stars: &str, list: bool, as_json: bool) -> Result<Output, Failure> {
    let u = &d.universe;
    let stars = parse_stars(u, stars)?;
    let states = enumerate_states(u, stars);
    let (clocked, counterclocked) = if states.is_empty() {
        (None, None)
    } else {
        (
            Some(find_clocked(u, stars).map_err(check)?),
            Some(find_counterclocked(u, stars).map_err(check)?),
        )
    };
    if as_json {
        let mut v = json!({
            "stars": stars.to_string(),
            "count": states.len(),
            "clocked": clocked.as_ref().map(|s| s.to_string()),
            "counterclocked": counterclocked.as_ref().map(|s| s.to_string()),
        });
        if list {
            v["states"] = json!(states.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        }
        return Ok(Output::ok(pretty(&v)));
    }
    let mut s = format!("states for stars {stars}: {}\n", states.len());
    if let (Some(c), Some(cc)) = (&clocked, &counterclocked) {
        let _ = writeln!(s, "clocked:        {c}");
        let _ = writeln!(s, "counterclocked: {cc}");
    }
    if list {
        for st in &states {
            let _ = writeln!(s, "{st}");
        }
    }
    Ok(Output::ok(s))
}

fn clocknum_cmd(args: &ClocknumArgs, as_json: bool) -> Result<Output, Failure> {
    let d = load_diagram(&args.file)?;
    let u = &d.universe;
    if let Some(stars) = &args.stars {
        let p = clock_height(u, parse_stars(u, stars)?).map_err(check)?;
        return Ok(Output::ok(if as_json {
            serde_json::to_string_pretty(&p).unwrap_or_default()
        } else {
            format!(
                "stars {}: height {} (clockwise-only {}), {} states",
                p.stars, p.height, p.directed_height, p.states
            )
        }));
    }
    let report = clock_number_of_diagram(u, None).map_err(check)?;
    if as_json {
        return Ok(Output::ok(serde_json::to_string_pretty(&report).unwrap_or_default()));
    }
    let mut s = String::new();
    if args.all_stars {
        for p in &report.placements {
            let _ = writeln!(
                s,
                "{:<10} r={}+{}  states {:>4}  height {}{}",
                p.stars.to_string(),
                p.r.0,
                p.r.1,
                p.states,
                p.height,
                if p.directed_height != p.height {
                    format!(" (clockwise-only {})", p.directed_height)
                } else {
                    String::new()
                }
            );
        }
    }
    match (report.min_placement(), report.min_over_stars) {
        (Some(p), Some(m)) => {
            let _ = writeln!(s, "min over stars: {m} at {}", p.stars);
        }
        _ => {
            let _ = writeln!(s, "min over stars: none (no adjacent faces)");
        }
    }
    let _ = writeln!(s, "crossings: {}  proper: {}", report.crossing_count, report.proper);
    Ok(Output::ok(s))
}

fn load_table(path: Option<&Path>) -> Result<Vec<KnotTableEntry>, Failure> {
    let env = std::env::var_os(TABLE_ENV).map(PathBuf::from);
    let Some(path) = path.map(Path::to_path_buf).or(env) else {
        return knotclock_core::generators::load_table().map_err(input);
    };
    let file = if path.is_dir() { path.join(TABLE_FILE) } else { path };
    let text = std::fs::read_to_string(&file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    parse_table(&text).map_err(input)
}

fn verify_cmd(suite: &str, table: Option<&Path>, seed: u64, as_json: bool) -> Result<Output, Failure> {
    let suites = Suite::parse_selection(suite).ok_or_else(|| Failure::Input(format!("unknown suite {suite:?}")))?;
    let table = load_table(table)?;
    let records = run_suites(&suites, &table, seed);
    let count = |o: Outcome| records.iter().filter(|r| r.outcome == o).count();
    let (pass, fail, unmet) = (count(Outcome::Pass), count(Outcome::Fail), count(Outcome::HypothesisUnmet));
    let code = i32::from(fail > 0);
    let text = if as_json {
        pretty(&json!({
            "seed": seed,
            "summary": { "pass": pass, "fail": fail, "hypothesis_unmet": unmet },
            "records": records,
        }))
    } else {
        let mut s = format!("seed: {seed}\n");
        for r in &records {
            let _ = writeln!(s, "{r}");
        }
        let _ = writeln!(s, "{pass} pass, {fail} fail, {unmet} hypothesis-unmet");
        s
    };
    Ok(Output { text, code })
}

fn gen_two_bridge_cmd(spec: &str, odd: bool, even: bool, as_json: bool) -> Result<Output, Failure> {
    let mut spec: TwoBridgeSpec = spec.parse().map_err(input)?;
    if odd {
        spec = spec.with_form(ClosureForm::Odd).map_err(input)?;
    } else if even {
        spec = spec.with_form(ClosureForm::Even).map_err(input)?;
    }
    let g = gen_two_bridge(&spec).map_err(input)?;
    let (p, q) = spec.fraction();
    let code = g.diagram.to_text();
    Ok(Output::ok(if as_json {
        pretty(&json!({
            "spec": spec.0,
            "form": spec.form().to_string(),
            "fraction": [p, q],
            "knotted": g.knotted,
            "stars": g.stars.to_string(),
            "code": code,
        }))
    } else {
        format!(
            "# two-bridge {spec} ({} form), p/q = {p}/{q}{}; recommended stars {}\n{code}",
            spec.form(),
            if g.knotted { "" } else { ", unknotted" },
            g.stars
        )
    }))
}
