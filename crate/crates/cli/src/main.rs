use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use netiso::enumeration::{
    classify_double_lattice_topologies, cross_check, disconnected_reference_rows, enumerate_double_lattice,
    lattice_census, EdgeWord, LatticeCensus, ReferenceRow,
};
use netiso::freespace::{count_components, export_grid, scan_free_region, Adjacency};
use netiso::geometry::{export_knot, find_impropriety, linear_graph_knot, KnotFormat, ModelNet};
use netiso::invariants::{fingerprint, Fingerprint};
use netiso::lqg::{
    check_multiplicity_bounds, component_structure, dimension_type, is_indivisible, parse_lqg, ParsedLqg,
};
use netiso::orbits::{alpha_closed_form, beta, beta_t, rho};
use netiso::superlattices::beta_tt;
use netiso::Error;

#[derive(Parser, Debug)]
#[command(name = "netiso", version, about = "Embedded 3-periodic nets: analysis, censuses and grid counts")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Table to verify the result against; a mismatch exits with status 1.
    #[arg(long, global = true)]
    expect: Option<PathBuf>,
    /// Directory for written artifacts; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CensusKind {
    Lattice,
    DoubleLattice,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum GridMode {
    Alpha,
    Beta,
    BetaT,
    BetaTt,
    Rho,
}

impl GridMode {
    fn name(self) -> &'static str {
        match self {
            GridMode::Alpha => "alpha",
            GridMode::Beta => "beta",
            GridMode::BetaT => "beta-t",
            GridMode::BetaTt => "beta-tt",
            GridMode::Rho => "rho",
        }
    }

    /// Largest n computed without `--force`.
    fn envelope(self) -> usize {
        match self {
            GridMode::Alpha => 30,
            GridMode::Beta => 6,
            GridMode::BetaT => 7,
            GridMode::BetaTt => 12,
            GridMode::Rho => 6,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Depth, bounds, indivisibility, components and fingerprint of an LQG file.
    Analyze {
        file: PathBuf,
        /// Also write the graph knot to this path (`.obj` or JSON).
        #[arg(long)]
        knot: Option<PathBuf>,
    },
    /// Lattice or double-lattice census.
    Census {
        #[arg(value_enum)]
        kind: CensusKind,
        /// Degree for the double-lattice census; all of 1..=8 when absent.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Isotopy-class counts of n-grids.
    Grids {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: GridMode,
        /// Run outside the documented size envelope.
        #[arg(long)]
        force: bool,
    },
    /// Translation-transitive grids from index-n superlattices.
    Superlattices {
        #[arg(long)]
        n: i64,
    },
    /// Components of the proper positions of one mobile vertex.
    Freespace {
        file: PathBuf,
        #[arg(long)]
        mobile: String,
        #[arg(long, default_value_t = 32)]
        resolution: usize,
        /// Join cells across opposite faces of the cell.
        #[arg(long)]
        torus: bool,
        #[arg(long)]
        emit_grid: Option<PathBuf>,
    },
    /// Linear graph knot of a positioned LQG file.
    Knot {
        file: PathBuf,
        #[arg(long, default_value = "json")]
        knot_format: String,
    },
}

/// Input problems exit with 2, wrong results with 1.
enum Failure {
    Input(anyhow::Error),
    Mismatch(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    format: OutputFormat,
    expect: Option<PathBuf>,
    out: Option<PathBuf>,
}

impl Ctx {
    /// Write an artifact into `--out`, or print it.
    fn emit(&self, name: &str, body: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(dir) => {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                let path = dir.join(name);
                fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
                eprintln!("wrote {}", path.display());
            }
            None => print!("{body}"),
        }
        Ok(())
    }

    fn expect_table(&self) -> anyhow::Result<Option<String>> {
        self.expect
            .as_ref()
            .map(|p| fs::read_to_string(p).with_context(|| format!("reading {}", p.display())))
            .transpose()
    }
}

fn read_lqg(path: &Path) -> anyhow::Result<ParsedLqg> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_lqg(&text).with_context(|| format!("parsing {}", path.display()))
}

fn model_net(parsed: &ParsedLqg) -> anyhow::Result<ModelNet> {
    let positions = parsed.complete_positions().ok_or_else(|| anyhow!("every vertex needs a `pos` line"))?;
    Ok(ModelNet::new(parsed.graph.clone(), positions)?)
}

fn knot_format_for(path: &Path) -> KnotFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("obj") => KnotFormat::Obj,
        _ => KnotFormat::Json,
    }
}

fn cmd_analyze(ctx: &Ctx, file: &Path, knot: Option<&Path>) -> Outcome {
    let parsed = read_lqg(file)?;
    let g = &parsed.graph;
    let bounds = match check_multiplicity_bounds(g) {
        Ok(v) if v.is_empty() => "ok".to_string(),
        Ok(v) => format!("{v:?}"),
        Err(e) => format!("not checked ({e})"),
    };
    let indivisible = is_indivisible(g);
    let dims = dimension_type(g);
    let components = component_structure(g);
    let net = parsed.complete_positions().map(|p| ModelNet::new(g.clone(), p)).transpose().map_err(anyhow::Error::from)?;
    let proper = net.as_ref().map(|m| find_impropriety(m).map_or("yes".to_string(), |w| format!("no ({w})")));
    let print: Option<Fingerprint> = net.as_ref().map(fingerprint);

    let text = match ctx.format {
        OutputFormat::Json => {
            let value = json!({
                "vertices": g.vertex_count(),
                "edges": g.edges().len(),
                "depth": g.depth(),
                "bounds": bounds,
                "indivisibility": indivisible,
                "dimension_type": dims.to_string(),
                "voltage_span_rank": dims.voltage_span_rank,
                "components": components,
                "proper": proper,
                "fingerprint": print,
            });
            serde_json::to_string_pretty(&value).map_err(anyhow::Error::from)? + "\n"
        }
        OutputFormat::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "vertices,{}", g.vertex_count());
            let _ = writeln!(s, "edges,{}", g.edges().len());
            let _ = writeln!(s, "depth,{}", g.depth());
            let _ = writeln!(s, "bounds,{bounds}");
            let _ = writeln!(s, "indivisible,{}", indivisible.is_indivisible());
            let _ = writeln!(s, "dimension_type,\"{dims}\"");
            let _ = writeln!(s, "components,{}", components.components.len());
            let _ = writeln!(s, "multiplicity,{}", components.total_multiplicity());
            if let Some(p) = &proper {
                let _ = writeln!(s, "proper,{p}");
            }
            if let Some(f) = &print {
                let coord: Vec<String> = f.coordination.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(s, "coordination,{}", coord.join(";"));
                let _ = writeln!(s, "td10,{}", f.td10);
                if let Some(h) = f.hxl {
                    let _ = writeln!(s, "hxl,{h}");
                }
                if let Some(p) = f.penetration {
                    let _ = writeln!(s, "penetration,\"{p}\"");
                }
            }
            s
        }
    };
    print!("{text}");

    if let Some(path) = knot {
        let m = net.ok_or_else(|| anyhow!("a knot needs positions for every vertex"))?;
        let k = linear_graph_knot(&m).map_err(anyhow::Error::from)?;
        let body = export_knot(&k, knot_format_for(path)).map_err(anyhow::Error::from)?;
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn lattice_csv(census: &LatticeCensus, names: &BTreeMap<EdgeWord, String>) -> String {
    let mut s = String::from(Fingerprint::CSV_HEADER);
    s.push('\n');
    for (i, c) in census.connected.iter().chain(&census.disconnected).enumerate() {
        let name = names.get(&c.canonical).cloned().unwrap_or_else(|| format!("class{}", i + 1));
        s += &c.fingerprint.csv_row(&name, &c.canonical.to_string());
        s.push('\n');
    }
    s
}

fn cmd_census_lattice(ctx: &Ctx) -> Outcome {
    let census = match lattice_census() {
        Ok(c) => c,
        Err(Error::Census(msg)) => return Err(Failure::Mismatch(format!("class count: {msg}"))),
        Err(e) => return Err(Failure::Input(e.into())),
    };
    let mut names = BTreeMap::new();
    for row in netiso::enumeration::reference_rows() {
        if let Some(c) = census.class_of(row.word) {
            names.insert(c.canonical, row.topology.clone());
        }
    }
    for row in disconnected_reference_rows() {
        if let Some(c) = census.class_of(row.word) {
            names.insert(c.canonical, format!("{}-c", row.topology));
        }
    }
    let body = match ctx.format {
        OutputFormat::Csv => lattice_csv(&census, &names),
        OutputFormat::Json => serde_json::to_string_pretty(&census).map_err(anyhow::Error::from)? + "\n",
    };
    let ext = if ctx.format == OutputFormat::Json { "json" } else { "csv" };
    ctx.emit(&format!("census.{ext}"), &body)?;
    eprintln!("connected {} disconnected {}", census.connected.len(), census.disconnected.len());

    if let Some(table) = ctx.expect_table()? {
        let rows: Vec<ReferenceRow> = csv_rows(&table)?;
        let mut report = String::new();
        for row in rows {
            let f = fingerprint(&row.word.model_net());
            let got = (
                f.coordination[0],
                f.hxl.unwrap_or(0),
                f.penetration.map_or_else(|| "-".to_string(), |p| p.to_string()),
                f.td10,
            );
            let want = (row.coordination, row.hxl, row.penetration.clone(), row.td10);
            if got != want || census.class_of(row.word).is_none_or(|c| !c.is_connected()) {
                let _ = writeln!(report, "{}: expected {:?}, got {:?}", row.word, want, got);
            }
        }
        if !report.is_empty() {
            return Err(Failure::Mismatch(report));
        }
    } else {
        for m in cross_check(&census) {
            eprintln!("note: {} {} expected {} got {}", m.word, m.field, m.expected, m.got);
        }
    }
    Ok(())
}

fn csv_rows<T: serde::de::DeserializeOwned>(text: &str) -> anyhow::Result<Vec<T>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<Vec<T>, _>>()
        .context("reading expectation table")
}

#[derive(serde::Deserialize)]
struct DegreeCount {
    m: usize,
    classes: usize,
}

fn cmd_census_double(ctx: &Ctx, m: Option<usize>) -> Outcome {
    let degrees: Vec<usize> = match m {
        Some(m) if (1..=8).contains(&m) => vec![m],
        Some(m) => return Err(Failure::Input(anyhow!("--m must lie in 1..=8, got {m}"))),
        None => (1..=8).collect(),
    };
    let mut counts = BTreeMap::new();
    for &m in &degrees {
        let census = classify_double_lattice_topologies(&enumerate_double_lattice(m));
        counts.insert(m, census.classes.len());
        for &(i, j) in &census.collisions {
            eprintln!("note: m={m} classes {} and {} share a coordination sequence", i + 1, j + 1);
        }
        let body = match ctx.format {
            OutputFormat::Json => serde_json::to_string_pretty(&census).map_err(anyhow::Error::from)? + "\n",
            OutputFormat::Csv => {
                let mut s = String::from("m,class,size,labels,td10,cs1,cs2,cs3,cs4,cs5,cs6,cs7,cs8,cs9,cs10\n");
                for (i, c) in census.classes.iter().enumerate() {
                    let labels: Vec<String> =
                        c.representative.labels().iter().map(|k| format!("{} {} {}", k.x(), k.y(), k.z())).collect();
                    let cs: Vec<String> = c.cs.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(s, "{m},{},{},{},{},{}", i + 1, c.size, labels.join(";"), c.td10, cs.join(","));
                }
                s
            }
        };
        let ext = if ctx.format == OutputFormat::Json { "json" } else { "csv" };
        if ctx.out.is_some() {
            ctx.emit(&format!("double_lattice_m{m}.{ext}"), &body)?;
        }
        println!("m={m} classes={}", census.classes.len());
    }
    if m.is_none() {
        println!("total={}", counts.values().sum::<usize>());
    }
    if let Some(table) = ctx.expect_table()? {
        let rows: Vec<DegreeCount> = csv_rows(&table)?;
        let mut report = String::new();
        for row in rows.iter().filter(|r| counts.contains_key(&r.m)) {
            if counts[&row.m] != row.classes {
                let _ = writeln!(report, "m={}: expected {}, got {}", row.m, row.classes, counts[&row.m]);
            }
        }
        if !report.is_empty() {
            return Err(Failure::Mismatch(report));
        }
    }
    Ok(())
}

#[derive(serde::Deserialize)]
struct GridCount {
    mode: String,
    n: usize,
    count: String,
}

fn check_grid_count(ctx: &Ctx, mode: &str, n: usize, got: &str) -> Outcome {
    let Some(table) = ctx.expect_table()? else { return Ok(()) };
    let rows: Vec<GridCount> = csv_rows(&table)?;
    match rows.iter().find(|r| r.mode == mode && r.n == n) {
        Some(r) if r.count != got => Err(Failure::Mismatch(format!("{mode}({n}): expected {}, got {got}", r.count))),
        Some(_) => Ok(()),
        None => {
            eprintln!("note: no expected value for {mode}({n})");
            Ok(())
        }
    }
}

fn cmd_grids(ctx: &Ctx, n: usize, mode: GridMode, force: bool) -> Outcome {
    if n == 0 {
        return Err(Failure::Input(anyhow!("--n must be positive")));
    }
    if n > mode.envelope() && !force {
        return Err(Failure::Input(anyhow!(
            "{}({n}) is outside the envelope n <= {}; pass --force to run anyway",
            mode.name(),
            mode.envelope()
        )));
    }
    let (count, extra) = match mode {
        GridMode::Alpha => (alpha_closed_form(n).to_string(), None),
        GridMode::Beta => (beta(n).to_string(), None),
        GridMode::Rho => (rho(n).to_string(), None),
        GridMode::BetaTt => (beta_tt(n as i64).beta_tt().to_string(), None),
        GridMode::BetaT => {
            let t = beta_t(n);
            let reps: Vec<Vec<[u8; 3]>> = t.transitive.iter().map(|p| p.points().to_vec()).collect();
            (t.transitive.len().to_string(), Some(json!(reps)))
        }
    };
    match ctx.format {
        OutputFormat::Csv => println!("mode,n,count\n{},{n},{count}", mode.name()),
        OutputFormat::Json => {
            let v = json!({"mode": mode.name(), "n": n, "count": count, "representatives": extra});
            println!("{}", serde_json::to_string_pretty(&v).map_err(anyhow::Error::from)?);
        }
    }
    check_grid_count(ctx, mode.name(), n, &count)
}

fn cmd_superlattices(ctx: &Ctx, n: i64) -> Outcome {
    if n < 1 {
        return Err(Failure::Input(anyhow!("--n must be positive")));
    }
    let t = beta_tt(n);
    let reps: Vec<Vec<String>> =
        t.classes.iter().map(|s| s.representatives().iter().map(|r| r.to_string()).collect()).collect();
    let body = match ctx.format {
        OutputFormat::Json => {
            let v = json!({
                "n": n, "hnf": t.hnf_count, "proper": t.proper_count, "beta_tt": t.beta_tt(), "classes": reps,
            });
            serde_json::to_string_pretty(&v).map_err(anyhow::Error::from)? + "\n"
        }
        OutputFormat::Csv => {
            let mut s = format!("n,hnf,proper,beta_tt\n{n},{},{},{}\n", t.hnf_count, t.proper_count, t.beta_tt());
            for (i, r) in reps.iter().enumerate() {
                let _ = writeln!(s, "# class {}: {}", i + 1, r.join(" "));
            }
            s
        }
    };
    ctx.emit(&format!("superlattices_n{n}.{}", if ctx.format == OutputFormat::Json { "json" } else { "csv" }), &body)?;
    check_grid_count(ctx, "beta-tt", n as usize, &t.beta_tt().to_string())
}

fn cmd_freespace(
    ctx: &Ctx,
    file: &Path,
    mobile: &str,
    resolution: usize,
    torus: bool,
    emit_grid: Option<&Path>,
) -> Outcome {
    let parsed = read_lqg(file)?;
    let v = parsed
        .graph
        .vertex_index(mobile)
        .ok_or_else(|| anyhow!("no vertex named `{mobile}`"))?;
    if resolution == 0 {
        return Err(Failure::Input(anyhow!("--resolution must be positive")));
    }
    let scan = scan_free_region(&parsed.graph, &parsed.positions, v, resolution).map_err(anyhow::Error::from)?;
    let adjacency = if torus { Adjacency::Torus } else { Adjacency::Cube };
    let comps = count_components(&scan, adjacency);
    if scan.degenerate {
        eprintln!("warning: `{mobile}` has no link to another vertex; the scan is degenerate");
    }
    let reps: Vec<String> = comps.representatives.iter().map(|&c| scan.centre(c).to_string()).collect();
    match ctx.format {
        OutputFormat::Csv => {
            println!("resolution,admissible,components,degenerate");
            println!("{resolution},{},{},{}", scan.admissible_count(), comps.count(), scan.degenerate);
            for (i, r) in reps.iter().enumerate() {
                println!("# component {}: {r}", i + 1);
            }
        }
        OutputFormat::Json => {
            let v = json!({
                "resolution": resolution,
                "admissible": scan.admissible_count(),
                "components": comps.count(),
                "degenerate": scan.degenerate,
                "representatives": reps,
            });
            println!("{}", serde_json::to_string_pretty(&v).map_err(anyhow::Error::from)?);
        }
    }
    if let Some(path) = emit_grid {
        let body = serde_json::to_string(&export_grid(&scan, &comps)).map_err(anyhow::Error::from)?;
        fs::write(path, body + "\n").with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote {}", path.display());
    }
    if let Some(table) = ctx.expect_table()? {
        let want: usize = table.trim().parse().context("expectation file must hold a component count")?;
        if want != comps.count() {
            return Err(Failure::Mismatch(format!("components: expected {want}, got {}", comps.count())));
        }
    }
    Ok(())
}

fn cmd_knot(ctx: &Ctx, file: &Path, knot_format: &str) -> Outcome {
    let parsed = read_lqg(file)?;
    let format: KnotFormat = knot_format.parse().map_err(anyhow::Error::from)?;
    let k = linear_graph_knot(&model_net(&parsed)?).map_err(anyhow::Error::from)?;
    let body = export_knot(&k, format).map_err(anyhow::Error::from)?;
    let ext = if format == KnotFormat::Obj { "obj" } else { "json" };
    ctx.emit(&format!("knot.{ext}"), &body)?;
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring threads")?;
    }
    let ctx = Ctx { format: cli.format, expect: cli.expect, out: cli.out };
    match cli.command {
        Command::Analyze { file, knot } => cmd_analyze(&ctx, &file, knot.as_deref()),
        Command::Census { kind: CensusKind::Lattice, m: None } => cmd_census_lattice(&ctx),
        Command::Census { kind: CensusKind::Lattice, m: Some(_) } => {
            Err(Failure::Input(anyhow!("--m applies to the double-lattice census only")))
        }
        Command::Census { kind: CensusKind::DoubleLattice, m } => cmd_census_double(&ctx, m),
        Command::Grids { n, mode, force } => cmd_grids(&ctx, n, mode, force),
        Command::Superlattices { n } => cmd_superlattices(&ctx, n),
        Command::Freespace { file, mobile, resolution, torus, emit_grid } => {
            cmd_freespace(&ctx, &file, &mobile, resolution, torus, emit_grid.as_deref())
        }
        Command::Knot { file, knot_format } => cmd_knot(&ctx, &file, &knot_format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(report)) => {
            eprintln!("mismatch:\n{}", report.trim_end());
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
