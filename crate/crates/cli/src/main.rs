use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lamplighter::graphs::{cayley_ball, cube_graph, finite_cayley_graph};
use lamplighter::groups::{FiniteGroup, GroupModel, GroupSpec};
use lamplighter::hamiltonian::{
    hamiltonian_difference, qh_certificate, qh_refutation, verify_certificate, QhStrategy,
};
use lamplighter::wreath::{
    classify_abelian_free_product, depth_profile, theorem_b_verdict, Lamplighter, LamplighterSpec,
    MetricBackend, WordMetric,
};
use lamplighter::{Error, Limits};

#[derive(Parser)]
#[command(
    name = "lamplighter",
    version,
    about = "Word metrics and dead ends of lamplighter groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Word length of one element of A wr B.
    Wordlen(WordlenArgs),
    /// Hamiltonian difference table of finite groups.
    Hamdiff(HamdiffArgs),
    /// Depth verdict for A wr (H * K).
    Verdict(VerdictArgs),
    /// Depth of every element up to a radius.
    DepthProfile(ProfileArgs),
    /// Quasi-Hamiltonian certificate or refutation table.
    Qh(QhArgs),
    /// Cayley graph, ball or grid as DOT.
    ExportGraph(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WordlenArgs {
    /// Lamplighter spec, or a base group spec (lamps default to Z/2).
    #[arg(long)]
    group: PathBuf,
    /// Element as JSON text or a path to a JSON file.
    #[arg(long)]
    element: String,
    #[arg(long)]
    backend: Option<String>,
    /// Also print an optimal walk of the lamplighter.
    #[arg(long)]
    walk: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Recheck the printed walk.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct HamdiffArgs {
    /// Finite group spec; repeatable.
    #[arg(long)]
    group: Vec<PathBuf>,
    /// Cycles Z/n with generator 1, as `a-b` or a comma list.
    #[arg(long)]
    cyclic: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerdictArgs {
    #[arg(long = "H")]
    h: PathBuf,
    #[arg(long = "K")]
    k: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    group: PathBuf,
    #[arg(long, default_value_t = 6)]
    radius: u64,
    #[arg(long, default_value_t = 8)]
    kmax: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Keep only this many rows, chosen with `--seed`.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cross-check every row's length with the word-length formula.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    backend: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct QhArgs {
    #[arg(long)]
    group: PathBuf,
    #[arg(long, default_value_t = 2)]
    nmax: u32,
    #[arg(long = "M", default_value_t = 2)]
    m: u64,
    /// abelian-box, exact-ball, cube-of-ball or refute.
    #[arg(long, default_value = "abelian-box")]
    strategy: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    group: Option<PathBuf>,
    /// Ball radius; required for infinite groups.
    #[arg(long)]
    radius: Option<u32>,
    /// Grid sides such as `4,3`, instead of a group.
    #[arg(long)]
    cube: Option<String>,
    #[command(flatten)]
    output: Output,
}

/// Exit 0 success, 2 usage, 3 resource cap, 4 verification failure.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::ModelMismatch(_) => 2,
            Error::Resource { .. } | Error::BoundExceeded { .. } => 3,
            Error::Verification(_) => 4,
            Error::Internal(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    let result = match cli.command {
        Command::Wordlen(a) => wordlen(a, &limits),
        Command::Hamdiff(a) => hamdiff(a),
        Command::Verdict(a) => verdict(a),
        Command::DepthProfile(a) => profile(a, &limits),
        Command::Qh(a) => qh(a, &limits),
        Command::ExportGraph(a) => export(a, &limits),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_json(text: &str, what: &str) -> Result<serde_json::Value, Failure> {
    serde_json::from_str(text).map_err(|e| usage(format!("{what}: {e}")))
}

fn group_spec(path: &Path) -> Result<GroupSpec, Failure> {
    Ok(
        GroupSpec::from_json(&read(path)?)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?,
    )
}

fn finite_group(path: &Path) -> Result<FiniteGroup, Failure> {
    Ok(group_spec(path)?.build_finite()?)
}

/// A lamplighter spec, or a plain base spec with Z/2 lamps.
fn lamplighter(path: &Path) -> Result<Lamplighter, Failure> {
    let text = read(path)?;
    let value = parse_json(&text, &path.display().to_string())?;
    if value.get("base").is_some() {
        let spec: LamplighterSpec =
            serde_json::from_value(value).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        Ok(spec.build()?)
    } else {
        let base =
            GroupSpec::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        Ok(Lamplighter::over(base.build()?)?)
    }
}

fn metric(
    group: &Lamplighter,
    backend: Option<&str>,
    limits: &Limits,
) -> Result<WordMetric, Failure> {
    let backend = match backend {
        Some(name) => MetricBackend::parse(name)?,
        None => MetricBackend::default_for(group.base()),
    };
    Ok(WordMetric::new(group, backend, *limits)?)
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| usage(format!("stdout: {e}")))
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

fn wordlen(a: WordlenArgs, limits: &Limits) -> CmdResult {
    let group = lamplighter(&a.group)?;
    let m = metric(&group, a.backend.as_deref(), limits)?;
    let text = if Path::new(&a.element).is_file() {
        read(Path::new(&a.element))?
    } else {
        a.element.clone()
    };
    let value = parse_json(&text, "element")?;
    let g = group.element_from_json(&value)?;
    let len = m.word_length(&g)?;
    let walk = if a.walk || a.verify {
        Some(m.ts_walk(&g)?)
    } else {
        None
    };
    if a.verify {
        let w = walk.as_ref().unwrap();
        let base = group.base();
        let steps_ok = w
            .windows(2)
            .all(|p| base.distance(&p[0], &p[1]).map_or(false, |d| d == 1));
        let covers = g.lamps.keys().all(|y| w.contains(y));
        let ends = w.first() == Some(&base.identity()) && w.last() == Some(&g.position);
        if !(steps_ok && covers && ends) {
            return Err(Error::Verification("walk does not replay".into()).into());
        }
    }
    let names: Option<Vec<String>> =
        walk.map(|w| w.iter().map(|x| group.base().format(x)).collect());
    let out = match a.format {
        Format::Json => pretty(&serde_json::json!({
            "group": group.name(),
            "element": group.format(&g),
            "length": len.value,
            "exact": len.exact,
            "backend": m.backend(),
            "walk": names,
        })),
        _ => {
            let mut s = if len.exact {
                format!("{} exact\n", len.value)
            } else {
                format!("<= {} upper-bound\n", len.value)
            };
            if let Some(n) = names {
                s.push_str(&format!("walk: {}\n", n.join(" ")));
            }
            s
        }
    };
    emit(&a.output, &out)?;
    Ok(0)
}

fn parse_cyclic(list: &str) -> Result<Vec<usize>, Failure> {
    let bad = || {
        usage(format!(
            "--cyclic expects `a-b` or a comma list, got {list:?}"
        ))
    };
    if let Some((lo, hi)) = list.split_once('-') {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    list.split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}

fn hamdiff(a: HamdiffArgs) -> CmdResult {
    let mut groups: Vec<FiniteGroup> = Vec::new();
    for p in &a.group {
        groups.push(finite_group(p)?);
    }
    if let Some(list) = &a.cyclic {
        for n in parse_cyclic(list)? {
            groups.push(FiniteGroup::cycle(n)?);
        }
    }
    if groups.is_empty() {
        return Err(usage("give at least one --group or --cyclic"));
    }
    let mut rows = Vec::new();
    for g in &groups {
        let d = hamiltonian_difference(g)?;
        let gens: Vec<String> = g.gens().iter().map(|s| s.to_string()).collect();
        rows.push((g.table().name().to_string(), gens.join(";"), d));
    }
    let out = match a.format {
        Format::Json => pretty(&serde_json::json!(rows
            .iter()
            .map(|(name, gens, d)| serde_json::json!({
                "group": name, "gens": gens, "hamiltonian_difference": d.value,
                "closed_ts": d.closed, "argmax": d.argmax,
            }))
            .collect::<Vec<_>>())),
        _ => {
            let mut s = String::from("group,gens,hamiltonian_difference,closed_ts,argmax\n");
            for (name, gens, d) in &rows {
                s.push_str(&format!(
                    "{name},{gens},{},{},{}\n",
                    d.value, d.closed, d.argmax
                ));
            }
            s
        }
    };
    emit(&a.output, &out)?;
    Ok(0)
}

fn verdict(a: VerdictArgs) -> CmdResult {
    let h = finite_group(&a.h)?;
    let k = finite_group(&a.k)?;
    let v = theorem_b_verdict(&h, &k)?;
    let case = if h.table().is_abelian() && k.table().is_abelian() {
        Some(classify_abelian_free_product(&h, &k)?)
    } else {
        None
    };
    if let Some(c) = &case {
        if c.verdict != v.verdict {
            return Err(Error::Verification(format!(
                "case {} disagrees with the difference test",
                c.case
            ))
            .into());
        }
    }
    let out = pretty(&serde_json::json!({
        "H": v.h,
        "K": v.k,
        "hamiltonian_difference_H": v.h_difference,
        "hamiltonian_difference_K": v.k_difference,
        "sum": v.sum,
        "verdict": v.verdict.as_str(),
        "depth_constant": v.depth_constant,
        "case": case.map(|c| c.case),
    }));
    emit(&a.output, &out)?;
    Ok(0)
}

fn profile(a: ProfileArgs, limits: &Limits) -> CmdResult {
    let group = lamplighter(&a.group)?;
    let mut p = depth_profile(&group, a.radius, a.kmax, limits)?;
    if a.verify {
        let m = metric(&group, a.backend.as_deref(), limits)?;
        for row in &p.rows {
            let g = group.parse(&row.element)?;
            let len = m.word_length(&g)?;
            if len.value != row.word_length {
                return Err(Error::Verification(format!(
                    "{}: formula gives {}, enumeration {}",
                    row.element, len.value, row.word_length
                ))
                .into());
            }
        }
    }
    if let Some(n) = a.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let mut picked: Vec<usize> = (0..p.rows.len()).collect::<Vec<_>>();
        picked.shuffle(&mut rng);
        picked.truncate(n);
        picked.sort_unstable();
        p.rows = picked.into_iter().map(|i| p.rows[i].clone()).collect();
    }
    let out = match a.format {
        Format::Json => pretty(&serde_json::to_value(&p).expect("profiles serialize")),
        _ => format!("{}\n# summary\n{}", p.to_csv(), p.summary_csv()),
    };
    emit(&a.output, &out)?;
    if p.partial {
        eprintln!(
            "warning: profile is partial (reached radius {} of {})",
            p.radius, a.radius
        );
        return Ok(3);
    }
    Ok(0)
}

fn qh(a: QhArgs, limits: &Limits) -> CmdResult {
    let model = group_spec(&a.group)?.build()?;
    if a.strategy == "refute" {
        let rows = qh_refutation(&model, a.nmax, limits)?;
        let out = match a.format {
            Format::Json => pretty(&serde_json::to_value(&rows).expect("rows serialize")),
            _ => {
                let mut s = String::from(
                    "n,ball_size,closed_ts_edges,closed_excess,min_open_vertices,min_open_excess,tree_bound\n",
                );
                for r in &rows {
                    s.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        r.n,
                        r.ball_size,
                        r.closed_ts_edges,
                        r.closed_excess,
                        r.min_open_vertices,
                        r.min_open_excess,
                        r.tree_bound
                    ));
                }
                s
            }
        };
        emit(&a.output, &out)?;
        return Ok(0);
    }
    let strategy = QhStrategy::parse(&a.strategy)?;
    let cert = qh_certificate(&model, a.nmax, a.m, strategy, limits)?;
    if a.verify {
        verify_certificate(&model, &cert, limits)?;
    }
    emit(&a.output, &pretty(&cert.to_json(&model)))?;
    Ok(0)
}

fn export(a: ExportArgs, limits: &Limits) -> CmdResult {
    if let Some(sides) = &a.cube {
        let dims: Vec<usize> = sides
            .split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| usage(format!("bad --cube {sides:?}")))
            })
            .collect::<Result<_, _>>()?;
        let g = cube_graph(&dims)?;
        let name = format!("Cube({sides})");
        let dot = g.to_dot(&name, |v| {
            let c = lamplighter::graphs::cube_coords(&dims, v);
            format!(
                "({})",
                c.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        });
        emit(&a.output, &dot)?;
        return Ok(0);
    }
    let path = a
        .group
        .as_ref()
        .ok_or_else(|| usage("give --group or --cube"))?;
    let model = group_spec(path)?.build()?;
    let dot = match (&model, a.radius) {
        (GroupModel::Finite(f), None) => {
            let g = finite_cayley_graph(f);
            g.to_dot(&model.name(), |v| v.to_string())
        }
        (_, Some(r)) => {
            let ball = cayley_ball(&model, r, limits)?;
            ball.graph
                .to_dot(&format!("{} ball {r}", model.name()), |v| {
                    model.format(ball.element_of(v))
                })
        }
        (_, None) => return Err(usage("infinite groups need --radius")),
    };
    emit(&a.output, &dot)?;
    Ok(0)
}
